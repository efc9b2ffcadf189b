"""Toolkit for spin-1 chains assembled from two-site ground-state data.

The package builds parameter families of 9x9 two-site density matrices,
scores their entanglement (PPT, realignment, covariance criterion,
concurrence bound), constructs the 3-local parent Hamiltonian whose ground
state reproduces them on a closed chain, verifies that claim by exact
diagonalization on small rings, and scans ground-state fidelity for
criticality signatures.
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    matcore,
    entmeasures,
    families,
    parenth,
    edverify,
    criticality,
)

__all__ = [
    "matcore",
    "entmeasures",
    "families",
    "parenth",
    "edverify",
    "criticality",
    "__version__",
]
