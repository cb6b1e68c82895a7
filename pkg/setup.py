#!/usr/bin/env python
from setuptools import setup, find_packages

setup(
    name="geodesic_kernel",
    version="0.1.0",
    description="Geodesic center, diameter and shortest paths in simple polygons",
    author="Geodesic Kernel Team",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.22",
        "shapely>=2.0",
        "pydantic>=2.0",
        "python-dotenv>=1.0",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "geodesic=geodesic_kernel.cli.main:main",
        ],
    },
    python_requires=">=3.9",
)
