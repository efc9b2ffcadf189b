"""Paired global states and their 3-local parent Hamiltonians.

The chain state lives on 2N sites grouped into N adjacent pairs; each pair
carries the same two-site eigenbasis, weighted by the square roots of the
two-site eigenvalues.  The parent Hamiltonian is one 27x27 PSD local term
(projectors onto selected null vectors) anchored at every odd site of the
closed ring.  Site numbering is 1-based where anchors appear.

The published spin-operator expressions are rebuilt verbatim as a
cross-check; the projector construction is the source of truth and the
proportionality between the two is measured, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DensityMatrix
from . import families as _fam

_I3 = np.eye(3, dtype=complex)


def spin1_operators():
    """Standard spin-1 matrices (Sx, Sy, Sz) with Sz = diag(1, 0, -1)."""
    sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / np.sqrt(2.0)
    sy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / np.sqrt(2.0)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return sx, sy, sz


@dataclass
class PairedGlobalState:
    """N pairs, each in the same weighted two-site eigenbasis.

    weights sum to 1; pair_vectors is 9xK with orthonormal columns.
    """

    n_pairs: int
    weights: np.ndarray
    pair_vectors: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.pair_vectors = np.asarray(self.pair_vectors)
        if abs(self.weights.sum() - 1.0) >= 1e-12:
            raise ValueError(f"weights sum to {self.weights.sum()!r}, not 1")
        gram = self.pair_vectors.conj().T @ self.pair_vectors
        dev = np.abs(gram - np.eye(gram.shape[0])).max()
        if dev >= 1e-10:
            raise ValueError(f"pair vectors not orthonormal, deviation {dev:.3e}")


@dataclass
class LocalTerm:
    """Hermitian PSD operator on ``arity`` adjacent sites.

    matrix equals sum_j couplings[j] |w_j><w_j| over the stored normalized
    generating vectors.
    """

    arity: int
    matrix: np.ndarray
    generating_vectors: list
    couplings: list

    def __post_init__(self):
        dim = self.matrix.shape[0]
        if 3 ** self.arity != dim:
            raise ValueError(f"arity {self.arity} does not match dim {dim}")


@dataclass
class RingHamiltonian:
    """One local term repeated at every odd anchor of a closed 2N-site ring."""

    local: LocalTerm
    sites: int
    anchors: tuple
    periodic: bool = True


def ring_hamiltonian(local: LocalTerm, sites: int) -> RingHamiltonian:
    """Anchor ``local`` at sites 1, 3, ..., sites-1 with periodic wrap."""
    if sites % 2 != 0 or sites < 4:
        raise ValueError(f"need an even site count >= 4, got {sites}")
    return RingHamiltonian(local=local, sites=sites,
                           anchors=tuple(range(1, sites, 2)), periodic=True)


def paired_state(fam, n_pairs: int) -> PairedGlobalState:
    """Tile a family evaluation over n_pairs >= 2 pairs."""
    if n_pairs < 2:
        raise ValueError(f"need at least 2 pairs, got {n_pairs}")
    return PairedGlobalState(
        n_pairs=int(n_pairs),
        weights=np.array(fam.eigenvalues, dtype=float),
        pair_vectors=np.array(fam.eigenvectors),
    )


def _marg_first(v9: np.ndarray) -> np.ndarray:
    # first-site marginal of a pure pair vector
    m = v9.reshape(3, 3)
    return m @ m.conj().T


def _marg_second(v9: np.ndarray) -> np.ndarray:
    m = v9.reshape(3, 3)
    return m.T @ m.conj()


def rdm_pair_odd(state: PairedGlobalState) -> DensityMatrix:
    """Reduced state of any in-pair (odd, odd+1) site pair."""
    v = state.pair_vectors
    return DensityMatrix((v * state.weights) @ v.conj().T, split=(3, 3))


def rdm_pair_even(state: PairedGlobalState) -> DensityMatrix:
    """Reduced state of a cross-pair (even, even+1) site pair.

    Orthonormality kills the cross terms only when at least one full pair
    separates the two sites from the rest, hence the n_pairs >= 3 floor.
    The result is a convex mixture of products, separable by construction.
    """
    if state.n_pairs < 3:
        raise ValueError("cross-pair reduced state needs n_pairs >= 3")
    out = np.zeros((9, 9), dtype=complex)
    for lam, v in zip(state.weights, state.pair_vectors.T):
        out += lam * np.kron(_marg_second(v), _marg_first(v))
    return DensityMatrix(out, split=(3, 3))


def rdm_triple(state: PairedGlobalState) -> DensityMatrix:
    """Reduced state of (odd, odd+1, odd+2) site triples."""
    if state.n_pairs < 3:
        raise ValueError("triple reduced state needs n_pairs >= 3")
    out = np.zeros((27, 27), dtype=complex)
    for lam, v in zip(state.weights, state.pair_vectors.T):
        out += lam * np.kron(np.outer(v, v.conj()), _marg_first(v))
    return DensityMatrix(out, split=(9, 3))


def build_local_term(vectors, couplings=None) -> LocalTerm:
    """PSD sum of scaled projectors onto the given (normalized) vectors."""
    vecs = [np.asarray(v, dtype=complex) for v in vectors]
    if not vecs:
        raise ValueError("need at least one generating vector")
    dim = vecs[0].shape[0]
    if couplings is None:
        couplings = [1.0] * len(vecs)
    couplings = [float(h) for h in couplings]
    if len(couplings) != len(vecs):
        raise ValueError("one coupling per vector required")
    if any(h < 0 for h in couplings):
        raise ValueError("couplings must be nonnegative")
    arity = round(np.log(dim) / np.log(3))
    if 3 ** arity != dim:
        raise ValueError(f"vector dimension {dim} is not a power of 3")
    mat = np.zeros((dim, dim), dtype=complex)
    norm_vecs = []
    for v, h in zip(vecs, couplings):
        if v.shape[0] != dim:
            raise ValueError("generating vectors differ in dimension")
        n = np.linalg.norm(v)
        if n < 1e-14:
            raise ValueError("zero generating vector")
        v = v / n
        norm_vecs.append(v)
        mat += h * np.outer(v, v.conj())
    return LocalTerm(arity=arity, matrix=mat,
                     generating_vectors=norm_vecs, couplings=couplings)


def energy_via_rdm(state: PairedGlobalState, ring: RingHamiltonian) -> float:
    """Chain energy from translation symmetry: anchors x Tr[H_loc rho_triple]."""
    if ring.local.arity != 3:
        raise ValueError("energy contraction is defined for arity-3 terms")
    if any(s % 2 == 0 for s in ring.anchors):
        raise ValueError("anchors must be odd sites")
    if ring.sites != 2 * state.n_pairs:
        raise ValueError(
            f"ring has {ring.sites} sites but the state spans {2 * state.n_pairs}"
        )
    rho3 = rdm_triple(state).matrix
    per_anchor = np.trace(ring.local.matrix @ rho3).real
    return float(len(ring.anchors) * per_anchor)


# ---------------------------------------------------------------------------
# published spin-operator forms


def _h2_horodecki(a: float) -> np.ndarray:
    sx, sy, sz = spin1_operators()
    sz2, sy2 = sz @ sz, sy @ sy
    axy = sx @ sy + sy @ sx
    ss = sum(np.kron(w, w) for w in (sx, sy, sz))
    zz = np.kron(sz, sz)
    g = np.sqrt((1.0 - a) / (1.0 + a))
    j1, j2 = 4.0 * (g + 1.0), 4.0 * (g - 1.0)
    j3, j4 = -g * (2.0 - g), -g * (2.0 + g)
    h = 8.0 * np.eye(9, dtype=complex)
    h += 4.0 * (ss @ zz + zz @ ss) - 4.0 * ss @ ss
    h += -j1 * np.kron(sz2, _I3) + j2 * np.kron(_I3, sz2)
    h += j3 * np.kron(sz2, sz) + j4 * np.kron(sz, sz2)
    h += g * g * (np.kron(sz2, sz2) - zz)
    h += 4.0 * g * (np.kron(_I3, sz) + np.kron(sz, _I3))
    h += 4.0 * (np.kron(axy, axy)
                + g * (np.kron(sz2 - sz, sy2) - np.kron(sy2, sz2 + sz)))
    return h


def _h2_chi(mu: float, nu: float) -> np.ndarray:
    sx, sy, sz = spin1_operators()
    sz2 = sz @ sz
    ss = sum(np.kron(w, w) for w in (sx, sy, sz))
    zz = np.kron(sz, sz)
    j1 = 2.0 * mu * nu
    j2 = -2.0 * (mu + nu) ** 2
    j3 = mu * mu - nu * nu
    h = j1 * (ss + (ss @ zz + zz @ ss) - zz)
    h += j2 * np.kron(sz2, sz2)
    h += j3 * (np.kron(sz2, sz) - np.kron(sz, sz2)
               + np.kron(sz, _I3) - np.kron(_I3, sz))
    h += np.kron(sz2, _I3) + np.kron(_I3, sz2)
    return h


def _h2_ex3(a: float) -> np.ndarray:
    ap = 1.0 / (1.0 + a)
    t = 1.0 - ap * ap
    if t < 0.0:
        raise ValueError(
            "spin expression needs (1+a)^2 >= 1; it is complex for -2 < a < 0"
        )
    app = np.sqrt(t)
    sx, sy, sz = spin1_operators()
    sz2 = sz @ sz
    axy = sx @ sy + sy @ sx
    ss = sum(np.kron(w, w) for w in (sx, sy, sz))
    zz = np.kron(sz, sz)
    j1 = -4.0 * ap * app
    j2 = (ap + app) ** 2
    j3 = 2.0 * ap * ap - 1.0
    h = j1 * (2.0 * np.eye(9, dtype=complex) + (ss @ zz + zz @ ss) - ss @ ss
              - np.kron(sz2, _I3) - np.kron(_I3, sz2) + np.kron(axy, axy))
    h += j2 * (np.kron(sz2, sz2) + zz)
    h += j3 * (np.kron(sz2, sz) + np.kron(sz, sz2))
    return h


def _local_term_from_matrix(mat: np.ndarray) -> LocalTerm:
    # decompose a PSD matrix into generating vectors for the LocalTerm fields
    lam, vec = np.linalg.eigh(mat)
    cut = 1e-10 * max(1.0, float(lam[-1]))
    if lam[0] < -cut:
        raise ValueError(f"spin expression is not PSD: eigenvalue {lam[0]:.3e}")
    sel = lam > cut
    arity = round(np.log(mat.shape[0]) / np.log(3))
    return LocalTerm(arity=arity, matrix=mat,
                     generating_vectors=[vec[:, i] for i in np.nonzero(sel)[0]],
                     couplings=[float(h) for h in lam[sel]])


def spin_form_hamiltonian(fam_id, a: float) -> LocalTerm:
    """The published two-site spin expression, embedded as the 27x27 term.

    The third-site factor is Sz^2 for the PPT family and (1 - Sz^2) for the
    chi and constant-spectrum families.
    """
    fam = _fam.get_family(fam_id)
    fam.check_domain(a)
    _, _, sz = spin1_operators()
    sz2 = sz @ sz
    if fam.tag == "horodecki_ex1":
        mat = np.kron(_h2_horodecki(a), sz2)
    elif fam.tag in ("chi_ex2a", "chi_ex2b"):
        al, be, eps, sqd, w, q = fam._core(a)
        s = 1.0 if q >= 0 else -1.0
        b_null = np.inf if eps == 0.0 else (a - s * sqd) / eps
        mu, nu = _fam._mu_nu(b_null)
        mat = np.kron(_h2_chi(mu, nu), _I3 - sz2)
    elif fam.tag == "ex3":
        mat = np.kron(_h2_ex3(a), _I3 - sz2)
    else:
        raise ValueError(f"no published spin expression for family {fam_id!r}")
    return _local_term_from_matrix(mat)


def proportionality_check(h_spin: LocalTerm, h_proj: LocalTerm):
    """Least-squares scalar c for h_spin ~ c h_proj, plus relative residual."""
    a = np.asarray(h_spin.matrix)
    b = np.asarray(h_proj.matrix)
    if a.shape != b.shape:
        raise ValueError("terms differ in dimension")
    den = float(np.sum(np.conj(b) * b).real)
    if den < 1e-300:
        raise ValueError("reference term is zero")
    c = float(np.sum(np.conj(b) * a).real) / den
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return 0.0, 0.0
    rel = float(np.linalg.norm(a - c * b)) / norm_a
    return c, rel


def parent_local_term(fam_id, a: float) -> LocalTerm:
    """Projector construction from the family's selected null vectors."""
    fam = _fam.get_family(fam_id)
    ev = fam.eval(a)
    return build_local_term(ev.triple_null_selected)


# ---------------------------------------------------------------------------
# plain-text export of local terms


def local_term_to_text(term: LocalTerm, header=None) -> str:
    """Serialize row-major with "re im" pairs; '#' lines carry metadata."""
    dim = term.matrix.shape[0]
    lines = ["# local term export"]
    for key, val in (header or {}).items():
        lines.append(f"# {key}: {val}")
    lines.append(f"# arity: {term.arity}")
    lines.append(f"# dim: {dim}")
    lines.append("# couplings: " + " ".join(f"{h:.17g}" for h in term.couplings))
    for k, v in enumerate(term.generating_vectors):
        flat = " ".join(f"{x.real:.17g} {x.imag:.17g}" for x in v)
        lines.append(f"# vector {k}: {flat}")
    for row in term.matrix:
        lines.append(" ".join(f"{x.real:.17g} {x.imag:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def local_term_from_text(text: str):
    """Inverse of local_term_to_text: returns (matrix, metadata dict)."""
    meta = {}
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, val = body.split(":", 1)
                meta[key.strip()] = val.strip()
            continue
        nums = [float(t) for t in line.split()]
        if len(nums) % 2 != 0:
            raise ValueError("matrix rows must hold re/im pairs")
        rows.append([complex(nums[i], nums[i + 1]) for i in range(0, len(nums), 2)])
    mat = np.array(rows, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return mat, meta
