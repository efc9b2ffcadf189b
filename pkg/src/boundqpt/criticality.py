"""Ground-state fidelity, susceptibility, scans, and critical-point flags.

The fidelity between chains at a-delta and a+delta reduces to a K x K
overlap sum because both states are pair products; entrywise N-th powers
are taken in the log domain so N may be 1e9 without overflow.

Two reflection rules keep the closed form usable on the whole domain:
a displaced endpoint is mirrored back across the domain edge, and when
the center sits on a weight-flip point the + side is mirrored across it.
Mirrored evaluations fold in the sign gauge of the original point so the
eigenvector branch stays the one the displaced parameter would have had.
Away from edges and flip points nothing is mirrored; straddling grid
points report the honest (spiky) value.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from . import entmeasures
from .families import get_family
from .matcore import DensityMatrix

_CENTER_TOL = 1e-9
_LOG_FLOOR = -745.0  # exp underflows to subnormal-zero past this

CSV_HEADER = "a,F,S_over_N,negativity,n_r,n_sr,parity_gap"


def _pow_n(o: np.ndarray, n: int) -> np.ndarray:
    """Elementwise o**n for real o, exact-zero on underflow."""
    out = np.zeros_like(o)
    nz = np.abs(o) > 0.0
    ln = n * np.log(np.abs(o[nz]))
    mag = np.where(ln < _LOG_FLOOR, 0.0, np.exp(np.maximum(ln, _LOG_FLOOR)))
    sgn = np.where(o[nz] < 0.0, (-1.0) ** (n % 2), 1.0)
    out[nz] = sgn * mag
    return out


def gsf(fam_id, a_c: float, delta: float, n_pairs: int) -> float:
    """|<Psi(a_c - delta)|Psi(a_c + delta)>| for N-pair chains."""
    if n_pairs < 1:
        raise ValueError(f"need n_pairs >= 1, got {n_pairs}")
    fam = get_family(fam_id)
    fam.check_domain(a_c)
    lo, hi = fam.domain
    am, ap = a_c - delta, a_c + delta
    refl_right = refl_left = None
    if ap > hi:
        refl_right = hi
    if am < lo:
        refl_left = lo
    for fp in fam.flip_points:
        if abs(a_c - fp) <= _CENTER_TOL:
            refl_right = fp
    s_m = np.ones(fam.K)
    s_p = np.ones(fam.K)
    if refl_right is not None:
        ap_new = 2.0 * refl_right - ap
        s_p = fam.sigma(ap) * fam.sigma(ap_new)
        ap = ap_new
    if refl_left is not None:
        am_new = 2.0 * refl_left - am
        s_m = fam.sigma(am) * fam.sigma(am_new)
        am = am_new
    if not (lo <= am <= hi and lo <= ap <= hi):
        raise ValueError(
            f"displacement {delta!r} at a_c={a_c!r} leaves the certified "
            f"domain [{lo}, {hi}] even after mirroring"
        )
    evm = fam.eval(am)
    evp = fam.eval(ap)
    o = (evm.eigenvectors * s_m).T @ (evp.eigenvectors * s_p)
    w = np.sqrt(np.outer(evm.eigenvalues, evp.eigenvalues))
    f = abs(float((w * _pow_n(o, int(n_pairs))).sum()))
    return min(f, 1.0 + 1e-12)


def fidelity_susceptibility(fam_id, a: float, n_pairs: int,
                            fd_step: float = 1e-7) -> float:
    """Second derivative of the fidelity in delta at delta=0.

    Central difference collapses to 2(F(fd) - 1)/fd^2 because F(0) = 1 and
    F is even in delta.  Signed as computed; curvature at a maximum makes
    it typically negative.
    """
    if fd_step <= 0.0:
        raise ValueError(f"fd_step must be positive, got {fd_step!r}")
    return 2.0 * (gsf(fam_id, a, fd_step, n_pairs) - 1.0) / fd_step ** 2


def parity_gap(fam_id, a: float, delta: float, n_pairs: int) -> float:
    """|F at even N - F at the next odd N|, nonzero near parity-split points."""
    n_even = n_pairs if n_pairs % 2 == 0 else n_pairs + 1
    return abs(gsf(fam_id, a, delta, n_even) - gsf(fam_id, a, delta, n_even + 1))


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    lam, vec = np.linalg.eigh(rho)
    if lam[0] < -1e-10:
        raise ValueError(f"matrix is not PSD: eigenvalue {lam[0]:.3e}")
    return (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T


def reduced_fidelity(rho1, rho2) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(r1) r2 sqrt(r1)) of two states."""
    m1 = rho1.matrix if isinstance(rho1, DensityMatrix) else np.asarray(rho1)
    m2 = rho2.matrix if isinstance(rho2, DensityMatrix) else np.asarray(rho2)
    if m1.shape != m2.shape:
        raise ValueError(f"shape mismatch {m1.shape} vs {m2.shape}")
    r = _psd_sqrt(m1)
    inner = r @ m2 @ r
    lam = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    if lam[0] < -1e-10:
        raise ValueError(f"matrix is not PSD: eigenvalue {lam[0]:.3e}")
    f = float(np.sqrt(np.clip(lam, 0.0, None)).sum())
    return min(f, 1.0 + 1e-12)


@dataclass(frozen=True)
class ScanConfig:
    family: object
    a_min: float
    a_max: float
    steps: int
    delta: float
    n_pairs: int
    fd_step: float = 1e-7

    def __post_init__(self):
        if not self.a_min < self.a_max:
            raise ValueError(f"empty grid: a_min={self.a_min!r} a_max={self.a_max!r}")
        if self.steps < 2:
            raise ValueError(f"need at least 2 grid points, got {self.steps}")
        if self.delta <= 0.0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")
        if self.fd_step <= 0.0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step!r}")
        fam = get_family(self.family)
        fam.check_domain(self.a_min)
        fam.check_domain(self.a_max)
        width = fam.domain[1] - fam.domain[0]
        if max(self.delta, self.fd_step) > width / 2.0:
            raise ValueError("displacement exceeds half the domain width; "
                             "mirrored points would leave the domain")


@dataclass(frozen=True)
class ScanRecord:
    a: float
    F: float
    S_over_N: float
    negativity: float
    n_r: float
    n_sr: float
    parity_gap: float

    def __post_init__(self):
        if not 0.0 <= self.F <= 1.0 + 1e-12:
            raise ValueError(f"fidelity {self.F!r} outside [0, 1]")


def _scan_point(fam, cfg: ScanConfig, a: float) -> ScanRecord:
    f = gsf(fam, a, cfg.delta, cfg.n_pairs)
    s = fidelity_susceptibility(fam, a, cfg.n_pairs, cfg.fd_step)
    rho = fam.eval(a).rho_pair
    return ScanRecord(
        a=a,
        F=f,
        S_over_N=abs(s) / cfg.n_pairs,
        negativity=entmeasures.negativity(rho),
        n_r=entmeasures.realignment_measure(rho),
        n_sr=entmeasures.n_sr(rho),
        parity_gap=parity_gap(fam, a, cfg.delta, cfg.n_pairs),
    )


def scan(config: ScanConfig):
    """One record per grid point, ordered by grid index."""
    fam = get_family(config.family)
    grid = np.linspace(config.a_min, config.a_max, config.steps)

    def at(i):
        try:
            return _scan_point(fam, config, float(grid[i]))
        except ValueError as exc:
            raise ValueError(f"grid index {i} (a={grid[i]!r}): {exc}") from exc

    workers = int(os.environ.get("QPT_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(at, range(len(grid))))
    return [at(i) for i in range(len(grid))]


@dataclass(frozen=True)
class DetectionThresholds:
    derivative_factor: float = 10.0
    parity_gap: float = 1e-3


@dataclass(frozen=True)
class Candidate:
    a: float
    rule: str
    value: float


def detect_critical_points(records, thresholds: DetectionThresholds = None):
    """Flag grid points that look critical; labels name the firing rule.

    Rules: strict local minimum of F; local maximum of |dF/da| above
    derivative_factor times its median; parity gap above threshold.
    """
    if thresholds is None:
        thresholds = DetectionThresholds()
    n = len(records)
    if n < 5:
        raise ValueError(f"need at least 5 records to detect anything, got {n}")
    a = np.array([r.a for r in records])
    f = np.array([r.F for r in records])
    out = []
    for i in range(1, n - 1):
        if f[i] < f[i - 1] and f[i] < f[i + 1]:
            out.append(Candidate(a=float(a[i]), rule="local_min_F",
                                 value=float(f[i])))
    g = np.abs(np.diff(f) / np.diff(a))
    med = float(np.median(g))
    bar = thresholds.derivative_factor * med
    for j in range(len(g)):
        left_ok = j == 0 or g[j] > g[j - 1]
        right_ok = j == len(g) - 1 or g[j] > g[j + 1]
        if left_ok and right_ok and g[j] > bar and med > 0.0:
            mid = float((a[j] + a[j + 1]) / 2.0)
            out.append(Candidate(a=mid, rule="derivative_spike", value=float(g[j])))
    for r in records:
        if r.parity_gap > thresholds.parity_gap:
            out.append(Candidate(a=float(r.a), rule="parity_gap",
                                 value=float(r.parity_gap)))
    out.sort(key=lambda c: (c.a, c.rule))
    return out


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join(
            f"{getattr(r, name):.16e}" for name in CSV_HEADER.split(",")))
    return "\n".join(lines) + "\n"


def records_to_json(records) -> str:
    return json.dumps([asdict(r) for r in records], indent=1)
