"""Reading observations and specs, writing JSON documents and CSV tables.

Floats are written with ``repr``, the shortest string that reads back to the
same double. CSV uses ``,`` separators, ``.`` decimals and ``\\n`` line ends.
Files are written atomically through a temporary file in the target directory.
"""

import json
import logging
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np

from sparse_ddm.errors import InputError
from sparse_ddm.types.ddm_params import DDMParams
from sparse_ddm.types.model_config import ModelConfig

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_observations(path: PathLike) -> np.ndarray:
    """Reads a single column of reals, one per line.

    The first line may be a non-numeric header. Blank trailing lines are ignored.

    Args:
        path (PathLike): file to read.

    Returns:
        np.ndarray: the observations.

    Raises:
        InputError: if the file is unreadable, empty, has more than one column,
            or holds a value that is not a finite real. Messages carry the line number.
    """
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc

    while lines and not lines[-1].strip():
        lines.pop()

    values = []
    for number, line in enumerate(lines, start=1):
        cell = line.strip()
        if "," in cell:
            raise InputError(f"expected a single column, got {cell!r}", line=number)
        try:
            value = float(cell)
        except ValueError:
            if number == 1 and cell:
                logger.debug("treating %r as a header", cell)
                continue
            raise InputError(f"cannot parse {cell!r} as a real number", line=number)
        if not math.isfinite(value):
            raise InputError(f"value {cell!r} is not finite", line=number)
        values.append(value)

    if not values:
        raise InputError(f"{path} holds no observations")
    return np.array(values, dtype=np.float64)


def read_json(path: PathLike) -> Dict[str, Any]:
    """Reads a JSON document.

    Raises:
        InputError: if the file is unreadable or not valid JSON.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc


def params_from_record(record: Dict[str, Any]) -> DDMParams:
    """Rebuilds a measure from the record written by :attr:`DDMParams.record`."""
    try:
        config = ModelConfig.from_options(record)
        return DDMParams.from_weights(record["mu"], record["phi"], config)
    except KeyError as exc:
        raise InputError(f"measure record lacks {exc}") from exc


def _jsonable(value: Any) -> Any:
    # JSON has no NaN or infinity; they are written as null
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def dumps(document: Dict[str, Any]) -> str:
    """Serialises a document as strict JSON, indented, with a trailing newline.

    Non-finite floats become ``null``.
    """
    return json.dumps(_jsonable(document), indent=2, allow_nan=False) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def format_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Formats a header and rows as CSV text."""
    lines = [",".join(columns)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def atomic_write(path: PathLike, text: str):
    """Writes ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", newline="", dir=directory, prefix=f".{path.name}.", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise
    logger.info("wrote %s", path)


def write_output(text: str, path: Optional[PathLike] = None):
    """Writes to ``path`` atomically, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        atomic_write(path, text)
