"""Bipartite entanglement criteria for finite-dimensional states.

Four scores plus the PPT flag.  All of them need to know where the cut
sits, so every entry point insists on a DensityMatrix carrying a split tag.
Raw (possibly negative) values are returned by the individual functions;
only the bundled MeasureReport clamps noise-level negatives to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DensityMatrix, kron, partial_trace, partial_transpose, realign, trace_norm

PPT_TOL = 1e-10
_CLAMP = 1e-12


@dataclass(frozen=True)
class MeasureReport:
    """The five headline quantities for one state.

    negativity and concurrence_lb are clamped at zero (values above -1e-12
    count as zero); n_r and n_sr keep their sign, negative values carry
    meaning for both.
    """

    negativity: float
    n_r: float
    n_sr: float
    concurrence_lb: float
    is_ppt: bool


def negativity(rho: DensityMatrix) -> float:
    """(trace norm of the partial transpose - 1)/2, noise clamped to 0."""
    val = (trace_norm(partial_transpose(rho)) - 1.0) / 2.0
    if -_CLAMP < val < 0.0:
        return 0.0
    return val


def realignment_measure(rho: DensityMatrix) -> float:
    """(trace norm of the realigned matrix - 1)/2.  May be negative."""
    return (trace_norm(realign(rho)) - 1.0) / 2.0


def n_sr(rho: DensityMatrix) -> float:
    """Covariance-style realignment score.

    Realigns rho minus the product of its marginals and subtracts the
    purity term sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2)).  Separable states
    land at or below zero; a positive value certifies entanglement.
    """
    da, db = rho.require_split()
    ra = partial_trace(rho.matrix, [da, db], [0])
    rb = partial_trace(rho.matrix, [da, db], [1])
    diff = rho.matrix - kron(ra, rb)
    # realign() wants a DensityMatrix; reuse the index shuffle directly
    t = diff.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)
    pa = min(float(np.trace(ra @ ra).real), 1.0)
    pb = min(float(np.trace(rb @ rb).real), 1.0)
    return float(trace_norm(t) - np.sqrt((1.0 - pa) * (1.0 - pb)))


def concurrence_lower_bound(rho: DensityMatrix) -> float:
    """max(0, 2 c_M max(negativity, realignment)) with c_M = sqrt(2/(M(M-1))).

    M is the smaller local dimension and must be at least 2.
    """
    da, db = rho.require_split()
    m1 = min(da, db)
    if m1 < 2:
        raise ValueError(f"concurrence bound needs local dimension >= 2, got {m1}")
    c = np.sqrt(2.0 / (m1 * (m1 - 1)))
    return float(max(0.0, 2.0 * c * max(negativity(rho),
                                        realignment_measure(rho))))


def is_ppt(rho: DensityMatrix, tol: float = PPT_TOL) -> bool:
    """True iff the partial transpose has no eigenvalue below -tol."""
    lam_min = float(np.linalg.eigvalsh(partial_transpose(rho))[0])
    return lam_min >= -tol


def report(rho: DensityMatrix, tol: float = PPT_TOL) -> MeasureReport:
    """Bundle all five quantities for presentation."""
    neg = negativity(rho)
    return MeasureReport(
        negativity=max(0.0, neg) if neg > -_CLAMP else neg,
        n_r=realignment_measure(rho),
        n_sr=n_sr(rho),
        concurrence_lb=concurrence_lower_bound(rho),
        is_ppt=is_ppt(rho, tol),
    )
