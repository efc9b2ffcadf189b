"""Dense exact-diagonalization oracle for small closed chains.

Everything here is brute force on purpose: expand the paired state into its
full 3^sites amplitude vector, sum the embedded local terms over the odd
anchors of the ring, and diagonalize.  The closed forms in ``parenth`` are
then checked against these numbers instead of against themselves.

Dense storage caps the chain at 10 sites.  Spectra at 8+ sites take a
while; the verification workflow only needs 4 and 6.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .matcore import DensityMatrix, partial_trace
from .parenth import PairedGlobalState, RingHamiltonian

MAX_SITES = 10


@dataclass
class FullState:
    sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (3 ** self.sites,):
            raise ValueError(
                f"amplitude vector has length {self.amplitudes.shape}, "
                f"expected 3^{self.sites}"
            )
        n = np.linalg.norm(self.amplitudes)
        if abs(n - 1.0) >= 1e-12:
            raise ValueError(f"state norm {n!r} is not 1")


@dataclass
class FullHamiltonian:
    sites: int
    matrix: np.ndarray
    _eigs: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        dim = 3 ** self.sites
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {self.matrix.shape} != ({dim}, {dim})")
        dev = np.abs(self.matrix - self.matrix.conj().T).max()
        if dev >= 1e-12:
            raise ValueError(f"matrix not Hermitian, deviation {dev:.3e}")

    def eigenvalues(self) -> np.ndarray:
        """Cached ascending spectrum; enforces positivity on first use."""
        if self._eigs is None:
            self._eigs = np.linalg.eigvalsh(self.matrix)
            if self._eigs[0] < -1e-9:
                raise ValueError(
                    f"assembled operator has eigenvalue {self._eigs[0]:.3e} < -1e-9"
                )
        return self._eigs


def expand(state: PairedGlobalState) -> FullState:
    """Amplitudes of sum_k sqrt(w_k) |v_k>^(tensor n_pairs)."""
    sites = 2 * state.n_pairs
    if sites > MAX_SITES:
        raise ValueError(f"{sites} sites exceeds the dense cap of {MAX_SITES}")
    psi = np.zeros(3 ** sites, dtype=complex)
    for w, v in zip(state.weights, state.pair_vectors.T):
        block = np.array([1.0], dtype=complex)
        for _ in range(state.n_pairs):
            block = np.kron(block, v)
        psi += np.sqrt(w) * block
    return FullState(sites=sites, amplitudes=psi)


def _embed(local: np.ndarray, where, sites: int) -> np.ndarray:
    """Place an operator on the given 0-based sites of a 3^sites space."""
    k = len(where)
    rest = [s for s in range(sites) if s not in where]
    order = list(where) + rest
    op = np.kron(local, np.eye(3 ** (sites - k), dtype=complex))
    inv = np.argsort(order)
    op = op.reshape([3] * (2 * sites))
    op = op.transpose(list(inv) + [sites + i for i in inv])
    return op.reshape(3 ** sites, 3 ** sites)


def assemble(ring: RingHamiltonian, sites: int) -> FullHamiltonian:
    """Sum the ring's local term over the odd anchors of a closed chain."""
    if sites % 2 != 0:
        raise ValueError(f"closed chain needs an even site count, got {sites}")
    if sites > MAX_SITES:
        raise ValueError(f"{sites} sites exceeds the dense cap of {MAX_SITES}")
    if ring.local.arity != 3:
        raise ValueError("assembly expects an arity-3 local term")
    h = np.zeros((3 ** sites, 3 ** sites), dtype=complex)
    for anchor in range(1, sites, 2):
        s0 = anchor - 1  # 1-based anchor to 0-based site
        triple = (s0, (s0 + 1) % sites, (s0 + 2) % sites)
        h += _embed(ring.local.matrix, triple, sites)
    return FullHamiltonian(sites=sites, matrix=h)


@dataclass(frozen=True)
class GroundReport:
    energy: float
    residual: float
    min_eigenvalue: float
    ground_space_dim: int
    runtime: float


def ground_check(h: FullHamiltonian, psi: FullState) -> GroundReport:
    """Energy, residual norm, spectrum floor, and zero-space dimension."""
    if h.sites != psi.sites:
        raise ValueError(f"{h.sites}-site operator vs {psi.sites}-site state")
    t0 = time.perf_counter()
    hp = h.matrix @ psi.amplitudes
    energy = float(np.vdot(psi.amplitudes, hp).real)
    residual = float(np.linalg.norm(hp))
    eigs = h.eigenvalues()
    dim0 = int(np.count_nonzero(eigs < 1e-9))
    return GroundReport(
        energy=energy,
        residual=residual,
        min_eigenvalue=float(eigs[0]),
        ground_space_dim=dim0,
        runtime=time.perf_counter() - t0,
    )


def numeric_rdm(psi: FullState, keep) -> DensityMatrix:
    """Partial trace of |psi><psi| keeping the 1-based sites in ``keep``."""
    keep = sorted(set(int(s) for s in keep))
    if len(keep) > 3:
        raise ValueError(f"keeping {len(keep)} sites; the dense path stops at 3")
    if not keep or keep[0] < 1 or keep[-1] > psi.sites:
        raise ValueError(f"keep set {keep} outside sites 1..{psi.sites}")
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    out = partial_trace(rho, [3] * psi.sites, tuple(s - 1 for s in keep))
    split = (3 ** (len(keep) - 1), 3) if len(keep) > 1 else None
    return DensityMatrix(out, split=split)
