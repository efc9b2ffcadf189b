"""Parameter families of 9x9 two-site states with closed-form eigensystems.

Three named families plus a raw chi-construction form.  Each evaluation
returns the density matrix together with its analytic eigenpairs, the null
vectors of the pair state, and the selected 27-dim null vectors that the
parent-Hamiltonian construction uses.

Basis convention everywhere: single-site labels (|1>, |0>, |-1>) map to
indices (0, 1, 2); the pair basis index is 3*i + j.

Eigenvector gauge: the closed-form vectors are kept continuous in the
parameter, and the component that crosses zero at a transition point has
its sign pinned (multiplying the whole vector by a +-1 gauge factor).
Fidelity values across those points depend on this choice; a numeric
largest-component phase fix would instead flip vectors at arbitrary
interior points and fake transitions.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass

import numpy as np

from .matcore import DensityMatrix, kron

PSD_SCAN_POINTS = 301
_domain_lock = threading.Lock()
_domain_ok: dict = {}


def _sgn(x: float) -> float:
    # sign with sign(0) := +1, so gauge factors are never zero
    return 1.0 if x >= 0 else -1.0


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _basis9(i: int, j: int) -> np.ndarray:
    v = np.zeros(9)
    v[3 * i + j] = 1.0
    return v


# ---------------------------------------------------------------------------
# generalized shift/phase unitaries and the Bell basis


@dataclass(frozen=True)
class GeneralizedPauli:
    """3x3 unitary U_{m m'}; (0,0) is the identity."""

    m: int
    m_prime: int
    matrix: np.ndarray


def gen_pauli(m: int, m_prime: int) -> GeneralizedPauli:
    """U_{mm'} = sum_k exp(2 pi i m k / 3) |k><(m'+k) mod 3|."""
    if not (0 <= m <= 2 and 0 <= m_prime <= 2):
        raise ValueError(f"indices ({m},{m_prime}) out of range 0..2")
    u = np.zeros((3, 3), dtype=complex)
    for k in range(3):
        u[k, (m_prime + k) % 3] = np.exp(2j * np.pi * m * k / 3.0)
    return GeneralizedPauli(m, m_prime, u)


PHI_PLUS = np.zeros(9)
PHI_PLUS[[0, 4, 8]] = 1.0 / np.sqrt(3.0)


def bell_projector(m: int, m_prime: int) -> DensityMatrix:
    """Rank-1 projector onto (U_{mm'} (x) 1)|Phi+>."""
    vec = kron(gen_pauli(m, m_prime).matrix, np.eye(3)) @ PHI_PLUS.astype(complex)
    return DensityMatrix(np.outer(vec, vec.conj()), split=(3, 3))


def chi_state(alpha: float, beta: float, a: float) -> DensityMatrix:
    """Three-parameter Bell-diagonal-plus-identity mixture.

    (1-alpha-beta-a)/9 * I + alpha P00 + beta/2 (P10 + P20)
    + a/3 (P01 + P11 + P21).  Raises when the combination is not PSD.
    """
    m = _chi_matrix(alpha, beta, a)
    lam_min = float(np.linalg.eigvalsh(m)[0])
    if lam_min < -1e-10:
        raise ValueError(
            f"chi({alpha!r},{beta!r},{a!r}) is not a state: min eigenvalue {lam_min:.6e}"
        )
    return DensityMatrix(m, split=(3, 3))


def _chi_matrix(alpha: float, beta: float, a: float) -> np.ndarray:
    # raw construction, no PSD gate; the modified family mixes the partial
    # transpose of this even where chi itself has negative weight
    out = (1.0 - alpha - beta - a) / 9.0 * np.eye(9, dtype=complex)
    for m in range(3):
        for mp in range(3):
            if m == 0 and mp == 0:
                w = alpha
            elif mp == 0:
                w = beta / 2.0
            elif mp == 1:
                w = a / 3.0
            else:
                continue
            out += w * bell_projector(m, mp).matrix
    return out


# ---------------------------------------------------------------------------
# FamilyEval container


@dataclass
class FamilyEval:
    """One family evaluated at one parameter value.

    eigenvalues has the K closed-form weights (zeros allowed at edge
    points); eigenvectors is 9xK with gauged columns.  pair_null holds the
    null vectors of rho_pair, triple_null_selected the chosen 27-dim null
    vectors for the 3-local Hamiltonian.  metadata maps the family's
    derived constants by name.
    """

    a: float
    rho_pair: DensityMatrix
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    pair_null: list
    triple_null_selected: list
    domain: tuple
    metadata: dict


_E3 = np.eye(3)


# ---------------------------------------------------------------------------
# family implementations


class Family:
    """Shared surface: closed-form weights/vectors, gauge, certified domain."""

    tag = ""
    cli_name = ""
    domain = (0.0, 1.0)
    flip_points: tuple = ()
    K = 0

    def weights_vectors(self, a):
        """Fast path for fidelity work: (weights, gauged 9xK vectors)."""
        raise NotImplementedError

    def sigma(self, a) -> np.ndarray:
        """Per-column gauge signs at parameter a."""
        return np.ones(self.K)

    def eval(self, a: float) -> FamilyEval:
        raise NotImplementedError

    def check_domain(self, a: float):
        lo, hi = self.domain
        if not (lo <= a <= hi):
            raise ValueError(
                f"{self.cli_name}: parameter {a!r} outside certified domain [{lo}, {hi}]"
            )
        self._certify_once()

    def _certify_once(self):
        key = (self.tag, self.domain)
        with _domain_lock:
            if _domain_ok.get(key):
                return
            lo, hi = self.domain
            worst = 0.0
            for x in np.linspace(lo, hi, PSD_SCAN_POINTS):
                lam, vec = self.weights_vectors(x)
                worst = min(worst, float(lam.min()))
            if worst < -1e-10:
                raise RuntimeError(
                    f"{self.cli_name}: domain certification failed, weight {worst:.3e}"
                )
            _domain_ok[key] = True


class _Horodecki(Family):
    tag = "horodecki_ex1"
    cli_name = "horodecki"
    domain = (0.0, 1.0)
    flip_points = (1.0 / 3.0, 1.0)
    K = 7

    def sigma(self, a):
        s = np.ones(7)
        s[5] = _sgn((1.0 - a) * (1.0 - 3.0 * a))  # sign of the gamma- entry of v6
        return s

    def _parts(self, a):
        disc = 1.0 - 4.0 * a + 7.0 * a * a
        sq = np.sqrt(disc)
        # delta+- = sq +- (1-3a) and gamma- = sq - 2a, each written to avoid
        # cancellation on the side where the difference goes to zero
        dp = 2.0 * a * (1.0 - a) / (sq + 3.0 * a - 1.0) if 3.0 * a - 1.0 > 0 else sq + 1.0 - 3.0 * a
        dm = 2.0 * a * (1.0 - a) / (sq + 1.0 - 3.0 * a) if 3.0 * a - 1.0 < 0 else sq - 1.0 + 3.0 * a
        gp = sq + 2.0 * a
        gm = (1.0 - a) * (1.0 - 3.0 * a) / (sq + 2.0 * a)
        s = np.sqrt(max(0.0, 1.0 - a * a))
        return disc, sq, dp, dm, gp, gm, s

    def weights_vectors(self, a):
        z = 1.0 + 8.0 * a
        disc, sq, dp, dm, gp, gm, s = self._parts(a)
        lams = np.array(
            [a / z] * 5 + [(1.0 + 3.0 * a - sq) / (2.0 * z), (1.0 + 3.0 * a + sq) / (2.0 * z)]
        )
        v6 = np.zeros(9)
        v6[0] = dp; v6[4] = dp; v6[6] = -s; v6[8] = gm
        n6 = np.linalg.norm(v6)
        if n6 < 1e-12:
            v6[:] = 0.0
            v6[6] = -1.0  # a=1 collapses the parametrization; left-limit direction
        else:
            v6 /= n6
        v7 = np.zeros(9)
        v7[0] = dm; v7[4] = dm; v7[6] = s; v7[8] = gp
        v7 = _unit(v7)
        vecs = np.zeros((9, 7))
        for k, idx in enumerate((1, 2, 3, 5, 7)):
            vecs[idx, k] = 1.0
        vecs[:, 5] = v6
        vecs[:, 6] = v7
        return lams, vecs * self.sigma(a)

    def rho_matrix(self, a):
        m = np.zeros((9, 9))
        for i in (1, 2, 3, 5, 7):
            m[i, i] = a
        for i in (0, 4, 8):
            for j in (0, 4, 8):
                m[i, j] = a
        m[6, 6] = (1.0 + a) / 2.0
        m[8, 8] = (1.0 + a) / 2.0
        m[6, 8] = m[8, 6] = np.sqrt(max(0.0, 1.0 - a * a)) / 2.0
        return m / (1.0 + 8.0 * a)

    def eval(self, a):
        self.check_domain(a)
        lams, vecs = self.weights_vectors(a)
        disc, sq, dp, dm, gp, gm, s = self._parts(a)
        g = np.sqrt((1.0 - a) / (1.0 + a))
        gpr = -2.0 / (3.0 + a)
        gdp = np.sqrt(max(0.0, 1.0 - a * a)) / (3.0 + a)
        w1 = np.zeros(9)
        w1[0] = 1.0; w1[6] = g; w1[8] = -1.0
        w2 = np.zeros(9)
        w2[0] = gpr; w2[4] = 1.0; w2[6] = gdp; w2[8] = -(1.0 + gpr)
        w1, w2 = _unit(w1), _unit(w2)
        e1 = _E3[:, 0]
        e1bar = _E3[:, 2]
        meta = {
            "g": g,
            "g_prime": gpr,
            "g_dprime": gdp,
            "delta_plus": dp,
            "delta_minus": dm,
            "gamma_plus": gp,
            "gamma_minus": gm,
            # normalizers of v6 and v7, rebuilt from the constants as a
            # transcription check against the stored vector norms
            "Z": (2.0 * dp * dp + (1.0 - a * a) + gm * gm,
                  2.0 * dm * dm + (1.0 - a * a) + gp * gp),
        }
        return FamilyEval(
            a=a,
            rho_pair=DensityMatrix(self.rho_matrix(a), split=(3, 3)),
            eigenvalues=lams,
            eigenvectors=vecs,
            pair_null=[w1, w2],
            triple_null_selected=[np.kron(w1, e1), np.kron(w1, e1bar)],
            domain=self.domain,
            metadata=meta,
        )


def _mu_nu(b: float):
    """Components of the unit vector along (b, 1), stable for any b."""
    if not np.isfinite(b):
        return (1.0 if b > 0 else -1.0), 0.0
    if abs(b) > 1.0:
        r = 1.0 / b
        h = np.hypot(r, 1.0)
        return _sgn(b) / h, abs(r) / h
    h = np.hypot(b, 1.0)
    return b / h, 1.0 / h


_PAIRS = ((1, 3), (6, 2), (5, 7))  # (shifted-triple member, its partner)
_EPS_LIMIT = 1e-9


class _ChiFamily(Family):
    """Modified chi construction; subclasses pin (alpha, beta)(a), p, branch."""

    K = 6
    p = 0.75
    branch = +1

    def params(self, a):
        raise NotImplementedError

    def _core(self, a):
        al, be = self.params(a)
        eps = 2.0 * al - be
        d = eps * eps + a * a
        sqd = np.sqrt(d)
        w = 2.0 * (al + be) - a
        den = w + self.branch * 3.0 * sqd
        if abs(den) < 1e-30:
            raise ValueError(f"{self.cli_name}: q pole at a={a!r}")
        q = 2.0 / den
        return al, be, eps, sqd, w, q

    def sigma(self, a):
        s = np.ones(6)
        s[:3] = _sgn(self._core(a)[2])  # live pair-component sign tracks 2*alpha-beta
        return s

    def _live_component(self, a):
        """(t1, partner) components of the live unit vector, pre-gauge."""
        al, be, eps, sqd, w, q = self._core(a)
        if abs(eps) < _EPS_LIMIT:
            return 0.0, 1.0
        s = _sgn(q)
        if s * a > 0.0:
            bl = (a + s * sqd) / eps  # same-sign sum, no cancellation
        else:
            bl = eps / (s * sqd - a)  # rationalized form for the canceling side
        h = np.hypot(bl, 1.0)
        return bl / h, 1.0 / h

    def weights_vectors(self, a):
        al, be, eps, sqd, w, q = self._core(a)
        p = self.p
        lam_live = p * (q * (a - 2.0 * (al + be)) + 2.0 + 3.0 * abs(q) * sqd) / 18.0
        c_d = p * (q * w + 1.0) / 9.0
        lam4 = c_d + 1.0 - p
        c0, c1 = self._live_component(a)
        vecs = np.zeros((9, 6))
        for k, (t1, pr) in enumerate(_PAIRS):
            vecs[t1, k] = c0
            vecs[pr, k] = c1
        vecs[[0, 4, 8], 3] = 1.0 / np.sqrt(3.0)
        vecs[0, 4] = -1.0 / np.sqrt(2.0)
        vecs[8, 4] = 1.0 / np.sqrt(2.0)
        vecs[0, 5] = -1.0 / np.sqrt(6.0)
        vecs[4, 5] = 2.0 / np.sqrt(6.0)
        vecs[8, 5] = -1.0 / np.sqrt(6.0)
        lams = np.array([lam_live] * 3 + [lam4, c_d, c_d])
        return lams, vecs * self.sigma(a)

    def null_vectors(self, a):
        """The three null vectors; orthogonal complements of the live trio."""
        c0, c1 = self._live_component(a)
        out = []
        for (t1, pr) in _PAIRS:
            v = np.zeros(9)
            v[t1] = c1
            v[pr] = -c0
            out.append(v)
        return out

    def rho_matrix(self, a):
        al, be, eps, sqd, w, q = self._core(a)
        chi = _chi_matrix(al, be, a)
        chi_ta = chi.reshape(3, 3, 3, 3).transpose(2, 1, 0, 3).reshape(9, 9)
        p00 = np.outer(PHI_PLUS, PHI_PLUS)
        p = self.p
        return p * (q * chi_ta + (1.0 - q) / 9.0 * np.eye(9)) + (1.0 - p) * p00

    def eval(self, a):
        self.check_domain(a)
        return self._eval_inner(a, self.domain)

    def _eval_inner(self, a, domain):
        al, be, eps, sqd, w, q = self._core(a)
        p = self.p
        if not 0.0 < p < 1.0:
            raise ValueError(f"mixing weight p={p!r} must sit strictly inside (0, 1)")
        if sqd < 1e-15:
            raise ValueError("degenerate construction: 2*alpha-beta and a both vanish")
        rho = self.rho_matrix(a)
        lam_min = float(np.linalg.eigvalsh(rho)[0])
        if lam_min < -1e-10:
            raise ValueError(
                f"chi family at a={a!r} is not a state: min eigenvalue {lam_min:.6e}"
            )
        lams, vecs = self.weights_vectors(a)
        if min(lams[3], lams[4], lams[5]) <= 0.0:
            raise ValueError(f"flat-sector eigenvalue vanished at a={a!r}")
        nulls = self.null_vectors(a)
        e0 = _E3[:, 1]  # third-site |0>
        s = _sgn(q)
        b1p = np.inf if eps == 0.0 else (a - s * sqd) / eps
        b1m = np.inf if eps == 0.0 else (a + s * sqd) / eps
        b2p = np.inf if eps == 0.0 else (-a - s * sqd) / eps
        b2m = np.inf if eps == 0.0 else (-a + s * sqd) / eps
        mu1p, nu1p = _mu_nu(b1p)
        mu1m, nu1m = _mu_nu(b1m)
        meta = {
            "alpha": al,
            "beta": be,
            "p": p,
            "q": q,
            "b1_plus": b1p,
            "b1_minus": b1m,
            "b2_plus": b2p,
            "b2_minus": b2m,
            "mu1_plus": mu1p,
            "mu1_minus": mu1m,
            "nu1_plus": nu1p,
            "nu1_minus": nu1m,
        }
        return FamilyEval(
            a=a,
            rho_pair=DensityMatrix(rho, split=(3, 3)),
            eigenvalues=lams,
            eigenvectors=vecs,
            pair_null=nulls,
            triple_null_selected=[np.kron(nulls[0], e0), np.kron(nulls[2], e0)],
            domain=domain,
            metadata=meta,
        )


class _Chi2a(_ChiFamily):
    tag = "chi_ex2a"
    cli_name = "chi2a"
    domain = (-1.0, 1.0)
    flip_points = ()
    p = 0.75
    branch = +1

    def params(self, a):
        return (1.0 + a) / 6.0, (-5.0 + 7.0 * a) / 21.0


class _Chi2b(_ChiFamily):
    tag = "chi_ex2b"
    cli_name = "chi2b"
    domain = (-1.0, 2.0)
    flip_points = (5.0 / 6.0,)
    p = 0.76027256  # quoted to 8 digits; taken as exact
    branch = -1

    def params(self, a):
        return (-1.0 + 3.0 * a) / 6.0, (1.0 + 3.0 * a) / 7.0


class _ChiRaw(_ChiFamily):
    """Raw chi construction with fixed (alpha, beta, p, branch); a varies."""

    flip_points = ()

    def __init__(self, alpha, beta, a0, p, branch):
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.a0 = float(a0)
        self.p = float(p)
        self.branch = int(branch)
        sign = "+" if branch > 0 else "-"
        self.tag = "chi_ex2a" if branch > 0 else "chi_ex2b"
        self.cli_name = f"chi:{alpha},{beta},{a0},{p},q{sign}"
        self.domain = self._probe_domain()

    def params(self, a):
        return self.alpha, self.beta

    def _probe_domain(self):
        # widest contiguous PSD window around the anchor, probed on a coarse
        # grid; refuses construction when the anchor itself fails
        step = 0.01
        if not self._psd_at(self.a0):
            raise ValueError(
                f"chi family is not a state at its anchor a={self.a0!r}"
            )
        lo = hi = self.a0
        while lo - step >= self.a0 - 3.0 and self._psd_at(lo - step):
            lo -= step
        while hi + step <= self.a0 + 3.0 and self._psd_at(hi + step):
            hi += step
        return (lo, hi)

    def _psd_at(self, a):
        try:
            lam_min = float(np.linalg.eigvalsh(self.rho_matrix(a))[0])
            lams, _ = self.weights_vectors(a)
        except (ValueError, FloatingPointError):
            return False
        return lam_min >= -1e-10 and min(lams[3:]) > 0.0


class _Example3(Family):
    tag = "ex3"
    cli_name = "example3"
    domain = (-4.0, 4.0)
    flip_points = (-1.0,)
    K = 8

    def sigma(self, a):
        s = np.ones(8)
        s[0] = s[1] = _sgn(1.0 + a)  # v1, v2 carry a (1+a) component
        return s

    def weights_vectors(self, a):
        b2 = (1.0 + a) ** 2 + 1.0
        b = np.sqrt(b2)
        v1 = np.zeros(9)
        v1[0] = 1.0; v1[1] = b; v1[8] = 1.0 + a
        v2 = np.zeros(9)
        v2[0] = 1.0; v2[1] = -b; v2[8] = 1.0 + a
        v3 = np.zeros(9)
        v3[0] = a * (a + 1.0); v3[4] = b2; v3[8] = -a
        vecs = np.zeros((9, 8))
        vecs[:, 0] = _unit(v1)
        vecs[:, 1] = _unit(v2)
        vecs[:, 2] = _unit(v3)
        for k, idx in enumerate((2, 3, 5, 6, 7)):
            vecs[idx, 3 + k] = 1.0
        lams = np.array([0.3] + [0.1] * 7)
        return lams, vecs * self.sigma(a)

    def rho_matrix(self, a):
        g = 1.0 + a + a * a
        b2 = (1.0 + a) ** 2 + 1.0
        b = np.sqrt(b2)
        gam = (1.0 + g) ** 2
        om = 2.0 * g * b
        sig = b2 * (g - 1.0)
        mu = (1.0 + a) * (1.0 + 3.0 * g + a)
        nu = 2.0 * g * b2
        bet = om * (1.0 + a)
        eta = -b2 * a
        epsl = (2.0 * g + a) ** 2
        m = np.zeros((9, 9))
        m[0, 0] = gam
        m[0, 1] = m[1, 0] = om
        m[0, 4] = m[4, 0] = sig
        m[0, 8] = m[8, 0] = mu
        m[1, 1] = 2.0 * nu
        m[1, 8] = m[8, 1] = bet
        m[4, 4] = b2 * b2
        m[4, 8] = m[8, 4] = eta
        m[8, 8] = epsl
        for i in (2, 3, 5, 6, 7):
            m[i, i] = nu
        return m / (20.0 * g * b2)

    def eval(self, a):
        self.check_domain(a)
        lams, vecs = self.weights_vectors(a)
        g = 1.0 + a + a * a
        b2 = (1.0 + a) ** 2 + 1.0
        b = np.sqrt(b2)
        w = np.zeros(9)
        w[0] = -(1.0 + a); w[4] = a; w[8] = 1.0
        w = _unit(w)
        # H vector (a'|11> + |-1-1>) (x) |0>, stored as the regular multiple
        # (|11> + (1+a)|-1-1>) so a=-1 stays finite
        u9 = np.zeros(9)
        u9[0] = 1.0; u9[8] = 1.0 + a
        u = np.kron(_unit(u9), _E3[:, 1])
        ap = np.inf if a == -1.0 else 1.0 / (1.0 + a)
        if np.isfinite(ap):
            t = 1.0 - ap * ap
            adp = np.sqrt(t) if t >= 0.0 else np.sqrt(complex(t))
        else:
            adp = np.nan
        meta = {
            "g": g,
            "b": b,
            "gamma": (1.0 + g) ** 2,
            "omega": 2.0 * g * b,
            "sigma": b2 * (g - 1.0),
            "mu": (1.0 + a) * (1.0 + 3.0 * g + a),
            "nu": 2.0 * g * b2,
            "beta": 2.0 * g * b * (1.0 + a),
            "eta": -b2 * a,
            "epsilon": (2.0 * g + a) ** 2,
            "a_prime": ap,
            "a_dprime": adp,
        }
        return FamilyEval(
            a=a,
            rho_pair=DensityMatrix(self.rho_matrix(a), split=(3, 3)),
            eigenvalues=lams,
            eigenvectors=vecs,
            pair_null=[w],
            triple_null_selected=[u],
            domain=self.domain,
            metadata=meta,
        )


# ---------------------------------------------------------------------------
# public constructors and the registry


_HORODECKI = _Horodecki()
_CHI2A = _Chi2a()
_CHI2B = _Chi2b()
_EX3 = _Example3()

FAMILIES = {
    "horodecki": _HORODECKI,
    "horodecki_ex1": _HORODECKI,
    "chi2a": _CHI2A,
    "chi_ex2a": _CHI2A,
    "chi2b": _CHI2B,
    "chi_ex2b": _CHI2B,
    "example3": _EX3,
    "ex3": _EX3,
}

_CHI_RE = re.compile(r"^chi:(?P<body>.+)$")


def get_family(name) -> Family:
    """Resolve a family tag, CLI name, or raw chi:<...> string."""
    if isinstance(name, Family):
        return name
    fam = FAMILIES.get(name)
    if fam is not None:
        return fam
    m = _CHI_RE.match(str(name))
    if m:
        parts = [s.strip() for s in m.group("body").split(",")]
        if len(parts) != 5 or parts[4] not in ("q+", "q-"):
            raise ValueError(
                "raw chi form is chi:<alpha>,<beta>,<a>,<p>,<q+|q-> "
                f"(got {name!r})"
            )
        alpha, beta, a0, p = (float(s) for s in parts[:4])
        return _ChiRaw(alpha, beta, a0, p, +1 if parts[4] == "q+" else -1)
    raise ValueError(
        f"unknown family {name!r}; expected one of "
        "horodecki, chi2a, chi2b, example3, or chi:<alpha>,<beta>,<a>,<p>,<q+|q->"
    )


def horodecki_state(a: float) -> FamilyEval:
    """One-parameter PPT family on [0, 1]."""
    return _HORODECKI.eval(a)


def modified_chi_eval(alpha: float, beta: float, a: float, p: float,
                      q_branch: int) -> FamilyEval:
    """Chi construction mixed through its partial transpose.

    q_branch is +1 or -1 and picks the root of the nullity condition.  The
    returned domain is the single certified point; use the registry
    families for interval-certified variants.
    """
    if q_branch not in (+1, -1):
        raise ValueError(f"q_branch must be +1 or -1, got {q_branch!r}")
    fam = _ChiRaw.__new__(_ChiRaw)
    fam.alpha = float(alpha)
    fam.beta = float(beta)
    fam.a0 = float(a)
    fam.p = float(p)
    fam.branch = int(q_branch)
    fam.tag = "chi_ex2a" if q_branch > 0 else "chi_ex2b"
    fam.cli_name = "chi(raw)"
    fam.domain = (a, a)
    return fam._eval_inner(a, (a, a))


def example2a_eval(a: float) -> FamilyEval:
    """Chi family on the alpha=(1+a)/6, beta=(-5+7a)/21 line, p=3/4, q+."""
    return _CHI2A.eval(a)


def example2b_eval(a: float) -> FamilyEval:
    """Chi family on the alpha=(-1+3a)/6, beta=(1+3a)/7 line, p=0.76027256, q-."""
    return _CHI2B.eval(a)


def example3_eval(a: float) -> FamilyEval:
    """Constant-spectrum family, eigenvalues {3/10, 1/10 x7, 0}."""
    return _EX3.eval(a)
