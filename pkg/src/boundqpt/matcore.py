"""Dense complex linear algebra for small multi-site systems.

Plain numpy arrays in double precision do the actual work.  The two wrapper
classes only add the validation the rest of the package leans on; their
fields are exposed directly and nothing here mutates its inputs.

Composite indexing is row-major throughout: the pair basis index is
3*(first site digit) + (second site digit), with digits 0,1,2 standing for
the Sz eigenstates +1, 0, -1.
"""

from __future__ import annotations

import numpy as np

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NULL_TOL = 1e-10


def _as_array(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=complex)


class DensityMatrix:
    """Validated density matrix, optionally tagged with a bipartite split.

    Construction raises ValueError unless the matrix is Hermitian within
    1e-12, has unit trace within 1e-12, and its smallest eigenvalue is
    >= -1e-10.  ``split`` records (dA, dB) with dA*dB = dim for the partial
    operations that need to know where the cut sits.
    """

    __slots__ = ("matrix", "dim", "split")

    def __init__(self, matrix, split=None):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be a square matrix")
        herm = np.abs(m - m.conj().T).max()
        if herm >= HERM_TOL:
            raise ValueError(f"not Hermitian: max deviation {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) >= TRACE_TOL:
            raise ValueError(f"trace is {tr.real!r}, not 1")
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < -PSD_TOL:
            raise ValueError(f"negative eigenvalue {lam_min:.3e}")
        if split is not None:
            da, db = int(split[0]), int(split[1])
            if da * db != m.shape[0]:
                raise ValueError(f"split {da}x{db} does not factor dim {m.shape[0]}")
            split = (da, db)
        self.matrix = m
        self.dim = m.shape[0]
        self.split = split

    def require_split(self):
        if self.split is None:
            raise ValueError("operation needs a DensityMatrix with a split tag")
        return self.split


class SpectralData:
    """Hermitian eigendecomposition, eigenvalues sorted descending.

    ``eigenvalues``/``eigenvectors`` hold the full system (so the spectral
    reconstruction is exact); ``null_basis`` is the subset of eigenvectors
    whose eigenvalue fell below ``tolerance``.
    """

    __slots__ = ("eigenvalues", "eigenvectors", "null_basis", "tolerance")

    def __init__(self, eigenvalues, eigenvectors, null_basis, tolerance):
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)
        self.eigenvectors = np.asarray(eigenvectors, dtype=complex)
        self.null_basis = np.asarray(null_basis, dtype=complex)
        self.tolerance = float(tolerance)

    @property
    def nullity(self) -> int:
        return self.null_basis.shape[1] if self.null_basis.size else 0


def kron(a, b) -> np.ndarray:
    """Tensor product; dimensions multiply."""
    return np.kron(_as_array(a), _as_array(b))


def fix_phases(vecs) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    v = np.array(vecs, dtype=complex)
    if v.ndim == 1:
        v = v[:, None]
        squeeze = True
    else:
        squeeze = False
    for k in range(v.shape[1]):
        i = int(np.argmax(np.abs(v[:, k])))
        z = v[i, k]
        if abs(z) > 0.0:
            v[:, k] *= np.conj(z) / abs(z)
    return v[:, 0] if squeeze else v


def partial_trace(rho, dims, keep):
    """Trace out every tensor factor not listed in ``keep``.

    Parameters
    ----------
    rho : DensityMatrix or array, square with dim = prod(dims).
    dims : sizes of the tensor factors, in order.
    keep : iterable of 0-based positions into ``dims`` to retain.

    Returns a DensityMatrix when given one, else a raw array (the raw path
    places no trace-1 requirement on the input, which the product-state
    oracle tests rely on).
    """
    m = _as_array(rho)
    dims = [int(d) for d in dims]
    n = len(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise ValueError(f"dims {dims} do not factor dim {m.shape[0]}")
    keep = sorted(int(k) for k in keep)
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep {keep} out of range for {n} factors")
    drop = [i for i in range(n) if i not in keep]
    t = m.reshape(dims + dims)
    perm = keep + drop
    t = t.transpose(perm + [p + n for p in perm])
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    dd = int(np.prod([dims[i] for i in drop])) if drop else 1
    out = np.einsum("aibi->ab", t.reshape(dk, dd, dk, dd))
    if isinstance(rho, DensityMatrix):
        return DensityMatrix(out)
    return out


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    """Transpose the first tensor factor.  Involutive, trace preserving."""
    da, db = rho.require_split()
    t = rho.matrix.reshape(da, db, da, db)
    return t.transpose(2, 1, 0, 3).reshape(da * db, da * db)


def realign(rho: DensityMatrix) -> np.ndarray:
    """Block realignment; result has shape (dA*dA) x (dB*dB).

    Element map: row (a,b), column (c,d) picks up the original entry at
    row (a,c), column (b,d).  For dA = dB the map is an involution.
    """
    da, db = rho.require_split()
    t = rho.matrix.reshape(da, db, da, db)
    return t.transpose(0, 2, 1, 3).reshape(da * da, db * db)


def trace_norm(m) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(_as_array(m), compute_uv=False).sum())


def herm_eigendecomp(rho, tol: float = NULL_TOL) -> SpectralData:
    """Eigendecompose a Hermitian matrix into SpectralData.

    The null cut is ``tol * max(1, largest eigenvalue)``; family spectra sit
    at O(0.1) so true zeros clear that line by many orders.
    """
    m = _as_array(rho)
    herm = np.abs(m - m.conj().T).max()
    if herm >= HERM_TOL:
        raise ValueError(f"not Hermitian: max deviation {herm:.3e}")
    lam, vec = np.linalg.eigh(m)
    lam, vec = lam[::-1], vec[:, ::-1]
    vec = fix_phases(vec)
    cut = tol * max(1.0, float(lam[0])) if lam.size else tol
    null = vec[:, np.abs(lam) < cut]
    return SpectralData(lam, vec, null, cut)


def null_space(rho, tol=None):
    """Orthonormal eigenvectors with |eigenvalue| below the cut.

    ``tol`` overrides the default cut of 1e-10 * max(1, largest eigenvalue).
    Returns a list of 1-d arrays; empty when the matrix has full rank.
    """
    m = _as_array(rho)
    herm = np.abs(m - m.conj().T).max()
    if herm >= HERM_TOL:
        raise ValueError(f"not Hermitian: max deviation {herm:.3e}")
    lam, vec = np.linalg.eigh(m)
    cut = NULL_TOL * max(1.0, float(lam[-1])) if tol is None else float(tol)
    sel = np.abs(lam) < cut
    return [fix_phases(vec[:, i]) for i in np.nonzero(sel)[0]]
