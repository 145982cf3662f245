import json
import math

import numpy as np
import pytest

from sparse_ddm.ddm_core import fit
from sparse_ddm.errors import InputError
from sparse_ddm.serialization import (
    atomic_write,
    dumps,
    format_csv,
    params_from_record,
    read_json,
    read_observations,
)
from sparse_ddm.types.model_config import ModelConfig


class TestReadObservations:
    def test_plain_column(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("1.5\n-2\n3e-1\n\n\n")
        np.testing.assert_array_equal(read_observations(path), [1.5, -2.0, 0.3])

    def test_header(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("y\n0.0\n1.0\n")
        np.testing.assert_array_equal(read_observations(path), [0.0, 1.0])

    @pytest.mark.parametrize(
        "text, line",
        [
            ("1.0\n2.0\nabc\n", 3),
            ("1.0\n2.0,3.0\n", 2),
            ("1.0\ninf\n", 2),
            ("y\nnan\n", 2),
        ],
    )
    def test_reports_the_line(self, tmp_path, text, line):
        path = tmp_path / "y.csv"
        path.write_text(text)
        with pytest.raises(InputError, match=f"line {line}") as excinfo:
            read_observations(path)
        assert excinfo.value.line == line

    def test_empty(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("")
        with pytest.raises(InputError, match="no observations"):
            read_observations(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            read_observations(tmp_path / "absent.csv")


def test_read_json_reports_line(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text('{\n  "truth": \n}\n')
    with pytest.raises(InputError, match="line 3"):
        read_json(path)


def test_params_round_trip_exactly(rng):
    config = ModelConfig(n=25, alpha=0.3, gamma=2.0)
    params = fit(rng.normal(0, 4, 25), config)
    restored = params_from_record(json.loads(dumps({"params": params.record}))["params"])
    np.testing.assert_array_equal(restored.phi, params.phi)
    np.testing.assert_array_equal(restored.mu, params.mu)
    assert restored.config == config
    assert restored.tau2 == params.tau2


def test_params_from_record_needs_weights():
    with pytest.raises(InputError):
        params_from_record({"n": 1, "mu": [0.0]})


def _reject_constant(token):
    raise ValueError(f"non-standard JSON token {token}")


def test_format_csv():
    text = format_csv(("a", "b", "c", "d"), [(1, 0.1, True, None), (2, math.nan, False, "x")])
    assert text == "a,b,c,d\n1,0.1,1,\n2,nan,0,x\n"


def test_dumps_numpy(rng):
    document = json.loads(dumps({"x": np.arange(3.0), "y": np.float64(0.5), "z": (1, 2)}))
    assert document == {"x": [0.0, 1.0, 2.0], "y": 0.5, "z": [1, 2]}


def test_dumps_writes_non_finite_as_null():
    text = dumps({"a": math.nan, "b": np.array([1.0, np.inf]), "c": np.float64("-inf")})
    document = json.loads(text, parse_constant=_reject_constant)
    assert document == {"a": None, "b": [1.0, None], "c": None}


def test_atomic_write_leaves_no_temporaries(tmp_path):
    target = tmp_path / "out.json"
    atomic_write(target, "first\n")
    atomic_write(target, "second\n")
    assert target.read_text() == "second\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
