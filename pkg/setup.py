#!/usr/bin/env python
from setuptools import setup

setup(
    name="sparse_ddm",
    version="0.1.0",
    description="Closed-form data-dependent measure for sparse normal-means inference",
    packages=[
        "sparse_ddm",
        "sparse_ddm.types",
        "sparse_ddm.laws",
        "sparse_ddm.sim",
        "sparse_ddm.experiments",
    ],
    python_requires=">=3.10",
    install_requires=["numpy>=1.24", "scipy>=1.10", "tqdm>=4.65"],
    entry_points={"console_scripts": ["sparse-ddm=sparse_ddm.cli:main"]},
    include_package_data=True,
    zip_safe=False,
)
