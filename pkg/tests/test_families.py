"""Family states against independently coded oracle routes.

Every closed-form matrix here is written out from scratch rather than
imported from the package, so agreement is a two-path check.
"""

import numpy as np
import pytest

from boundqpt import families
from boundqpt.matcore import DensityMatrix


def basis_pair(i, j):
    v = np.zeros(9)
    v[3 * i + j] = 1.0
    return v


# oracle: PPT family density matrix, element by element
def oracle_ex1_rho(a):
    m = np.zeros((9, 9))
    for i in (1, 2, 3, 5, 7):
        m[i, i] = a
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = a
    m[6, 6] = (1 + a) / 2
    m[8, 8] = (1 + a) / 2
    m[6, 8] = m[8, 6] = np.sqrt(1 - a * a) / 2
    return m / (1 + 8 * a)


def oracle_ex1_lams(a):
    sq = np.sqrt(1 - 4 * a + 7 * a * a)
    lam = [a / (1 + 8 * a)] * 5
    lam += [(1 + 3 * a - sq) / (2 * (1 + 8 * a)),
            (1 + 3 * a + sq) / (2 * (1 + 8 * a))]
    return np.array(lam)


# oracle: generalized-Pauli mixture built by the direct diagonal route
def oracle_chi_direct(alpha, beta, a):
    phi = np.zeros(9)
    phi[[0, 4, 8]] = 1 / np.sqrt(3)
    p00 = np.outer(phi, phi)
    d3 = np.zeros((9, 9))
    d3[[0, 4, 8], [0, 4, 8]] = 1
    t1 = np.zeros((9, 9))
    t1[[1, 5, 6], [1, 5, 6]] = 1
    return ((1 - alpha - beta - a) / 9 * np.eye(9)
            + (alpha - beta / 2) * p00 + beta / 2 * d3 + a / 3 * t1)


def oracle_ex2_q(alpha, beta, a, branch):
    d = (beta - 2 * alpha) ** 2 + a * a
    return 2 / (2 * (alpha + beta) - a + branch * 3 * np.sqrt(d))


def oracle_ex2_rho(alpha, beta, a, p, q):
    chi = oracle_chi_direct(alpha, beta, a)
    chi_ta = chi.reshape(3, 3, 3, 3).transpose(2, 1, 0, 3).reshape(9, 9)
    phi = np.zeros(9)
    phi[[0, 4, 8]] = 1 / np.sqrt(3)
    return (p * (q * chi_ta + (1 - q) / 9 * np.eye(9))
            + (1 - p) * np.outer(phi, phi))


def oracle_ex2_flat_lams(alpha, beta, a, p, q):
    lam4 = ((2 * q * (alpha + beta) - q * a - 8) * p + 9) / 9
    lam56 = p * (2 * q * (alpha + beta) - q * a + 1) / 9
    return lam4, lam56


# oracle: constant-spectrum family
def oracle_ex3_rho(a):
    g = 1 + a + a * a
    b2 = (1 + a) ** 2 + 1
    b = np.sqrt(b2)
    m = np.zeros((9, 9))
    m[0, 0] = (1 + g) ** 2
    m[0, 1] = m[1, 0] = 2 * g * b
    m[0, 4] = m[4, 0] = b2 * (g - 1)
    m[0, 8] = m[8, 0] = (1 + a) * (1 + 3 * g + a)
    m[1, 1] = 2 * (2 * g * b2)
    m[1, 8] = m[8, 1] = 2 * g * b * (1 + a)
    for i in (2, 3, 5, 6, 7):
        m[i, i] = 2 * g * b2
    m[4, 4] = b2 * b2
    m[4, 8] = m[8, 4] = -b2 * a
    m[8, 8] = (2 * g + a) ** 2
    return m / (20 * g * b2)


class TestHorodecki:
    FAM = families.get_family("horodecki")

    @pytest.mark.parametrize("a", [0.05, 0.1, 0.35, 0.5, 0.9, 1.0])
    def test_matrix_matches_oracle(self, a):
        ev = self.FAM.eval(a)
        assert np.abs(ev.rho_pair.matrix - oracle_ex1_rho(a)).max() < 1e-14

    @pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
    def test_eigenvalues_closed_form(self, a):
        ev = self.FAM.eval(a)
        want = np.sort(oracle_ex1_lams(a))
        assert np.abs(np.sort(ev.eigenvalues) - want).max() < 1e-14

    @pytest.mark.parametrize("a", [0.1, 0.4, 0.8, 1.0])
    def test_spectral_reconstruction(self, a):
        ev = self.FAM.eval(a)
        v = ev.eigenvectors
        rec = (v * ev.eigenvalues) @ v.T
        assert np.abs(rec - ev.rho_pair.matrix).max() < 1e-13
        gram = v.T @ v
        assert np.abs(gram - np.eye(7)).max() < 1e-12

    @pytest.mark.parametrize("a", [0.2, 0.6, 0.95])
    def test_pair_null_annihilates(self, a):
        ev = self.FAM.eval(a)
        assert len(ev.pair_null) == 2
        rho = ev.rho_pair.matrix
        for w in ev.pair_null:
            assert abs(np.linalg.norm(w) - 1) < 1e-12
            assert np.linalg.norm(rho @ w) < 1e-13
        assert abs(np.vdot(ev.pair_null[0], ev.pair_null[1])) < 1e-13

    def test_triple_null_structure(self):
        # w1 tensor |1> and w1 tensor |-1>
        ev = self.FAM.eval(0.5)
        w1 = ev.pair_null[0]
        e1, e1bar = np.eye(3)[0], np.eye(3)[2]
        got = ev.triple_null_selected
        assert np.abs(got[0] - np.kron(w1, e1)).max() < 1e-14
        assert np.abs(got[1] - np.kron(w1, e1bar)).max() < 1e-14

    def test_rank_one_at_zero(self):
        ev = self.FAM.eval(0.0)
        assert np.abs(np.sort(ev.eigenvalues)
                      - np.array([0, 0, 0, 0, 0, 0, 1])).max() < 1e-14

    def test_degenerate_vector_fallback_at_one(self):
        # both closed-form components of the small eigenvector vanish at a=1
        ev = self.FAM.eval(1.0)
        v = ev.eigenvectors
        assert np.abs(v.T @ v - np.eye(7)).max() < 1e-12

    def test_metadata(self):
        ev = self.FAM.eval(0.0)
        assert ev.metadata["g"] == 1.0
        assert ev.metadata["Z"] == (10.0, 2.0)
        ev1 = self.FAM.eval(1.0)
        assert ev1.metadata["Z"] == (0.0, 48.0)
        for key in ("g_prime", "g_dprime", "delta_plus", "delta_minus",
                    "gamma_plus", "gamma_minus"):
            assert key in ev.metadata

    def test_sigma_tracks_gamma_minus_sign(self):
        assert self.FAM.sigma(0.2)[5] == 1.0
        assert self.FAM.sigma(0.5)[5] == -1.0
        assert self.FAM.sigma(0.999)[5] == -1.0

    def test_gauge_branch_cut_at_one_third(self):
        # gauged small-eigenvector flips orientation across the flip point,
        # while nearby same-side evaluations stay aligned
        va = self.FAM.eval(1 / 3 - 1e-4).eigenvectors[:, 5]
        vb = self.FAM.eval(1 / 3 + 1e-4).eigenvectors[:, 5]
        assert np.vdot(va, vb).real < -0.999
        vc = self.FAM.eval(0.40).eigenvectors[:, 5]
        vd = self.FAM.eval(0.41).eigenvectors[:, 5]
        assert np.vdot(vc, vd).real > 0.999

    def test_domain_error_names_interval(self):
        with pytest.raises(ValueError, match=r"\[0\.0, 1\.0\]"):
            self.FAM.eval(1.2)
        with pytest.raises(ValueError):
            self.FAM.eval(-0.01)

    def test_public_helper(self):
        ev = families.horodecki_state(0.3)
        assert isinstance(ev.rho_pair, DensityMatrix)
        assert np.abs(ev.rho_pair.matrix - oracle_ex1_rho(0.3)).max() < 1e-14


class TestChiConstruction:
    def test_projector_route_equals_diagonal_route(self):
        for args in ((0.2, 0.1, 0.05), (0.05, 0.02, -0.01)):
            got = families.chi_state(*args).matrix
            assert np.abs(got - oracle_chi_direct(*args)).max() < 1e-15

    def test_rejects_nonpositive_mixture(self):
        with pytest.raises(ValueError, match="eigenvalue"):
            families.chi_state(0.9, 0.5, 0.5)

    def test_gen_pauli_unitary_and_range(self):
        for m in range(3):
            for mp in range(3):
                u = families.gen_pauli(m, mp).matrix
                assert np.abs(u @ u.conj().T - np.eye(3)).max() < 1e-14
        with pytest.raises(ValueError):
            families.gen_pauli(3, 0)

    def test_bell_projectors_complete_and_orthogonal(self):
        ps = [families.bell_projector(m, mp).matrix
              for m in range(3) for mp in range(3)]
        assert np.abs(sum(ps) - np.eye(9)).max() < 1e-14
        for i in range(9):
            for j in range(9):
                want = 1.0 if i == j else 0.0
                assert abs(np.trace(ps[i] @ ps[j]).real - want) < 1e-13

    def test_worked_mixture_weights_sit_on_swapped_triples(self):
        # chi(5/42, -1/3, -2/7) decomposes over P00 and the two shifted
        # triples; the larger weight lands on {|0 1bar>,|1bar 1>,|1 0>}
        got = families.chi_state(5 / 42, -1 / 3, -2 / 7).matrix
        phi = np.zeros(9)
        phi[[0, 4, 8]] = 1 / np.sqrt(3)
        p00 = np.outer(phi, phi)
        tri_a = np.zeros((9, 9))
        tri_a[[1, 5, 6], [1, 5, 6]] = 1 / 3  # |10>,|0 1bar>,|1bar 1>
        tri_b = np.zeros((9, 9))
        tri_b[[2, 3, 7], [2, 3, 7]] = 1 / 3  # |1 1bar>,|01>,|1bar 0>
        swapped = (2 * p00 + 3.5 * tri_b + 1.5 * tri_a) / 7
        printed = (2 * p00 + 3.5 * tri_a + 1.5 * tri_b) / 7
        assert np.abs(got - swapped).max() < 1e-15
        assert np.abs(got - printed).max() > 0.09


class TestChiFamilies:
    A = families.get_family("chi2a")
    B = families.get_family("chi2b")

    def params_a(self, a):
        return (1 + a) / 6, (-5 + 7 * a) / 21

    def params_b(self, a):
        return (-1 + 3 * a) / 6, (1 + 3 * a) / 7

    def test_q_rational_anchors(self):
        assert abs(self.A.eval(0.0).metadata["q"] - 14 / 11) < 1e-14
        assert abs(self.B.eval(5 / 6).metadata["q"] - (-12 / 11)) < 1e-12

    @pytest.mark.parametrize("a", [-0.2, 0.0, 0.2, 0.7])
    def test_q_matches_oracle_branch_plus(self, a):
        al, be = self.params_a(a)
        want = oracle_ex2_q(al, be, a, +1)
        assert abs(self.A.eval(a).metadata["q"] - want) < 1e-13

    @pytest.mark.parametrize("a", [0.1, 0.5, 0.95, 1.8])
    def test_q_matches_oracle_branch_minus(self, a):
        al, be = self.params_b(a)
        want = oracle_ex2_q(al, be, a, -1)
        assert abs(self.B.eval(a).metadata["q"] - want) < 1e-13

    def test_mixing_weight_constants(self):
        assert self.A.p == 0.75
        assert self.B.p == 0.76027256

    @pytest.mark.parametrize("fam,pts", [(A, (-0.6, 0.0, 0.35, 0.9)),
                                         (B, (0.1, 0.9, 1.5, 1.99))])
    def test_matrix_matches_oracle(self, fam, pts):
        get = self.params_a if fam is self.A else self.params_b
        for a in pts:
            al, be = get(a)
            q = oracle_ex2_q(al, be, a, fam.branch)
            want = oracle_ex2_rho(al, be, a, fam.p, q)
            got = fam.eval(a).rho_pair.matrix
            assert np.abs(got - want).max() < 1e-14, f"a={a}"

    @pytest.mark.parametrize("fam,a", [(A, 0.4), (A, -0.3), (B, 0.6), (B, 1.3)])
    def test_flat_sector_eigenvalues(self, fam, a):
        get = self.params_a if fam is self.A else self.params_b
        al, be = get(a)
        ev = fam.eval(a)
        lam4, lam56 = oracle_ex2_flat_lams(al, be, a, fam.p,
                                           ev.metadata["q"])
        assert abs(ev.eigenvalues[3] - lam4) < 1e-13
        assert abs(ev.eigenvalues[4] - lam56) < 1e-13
        assert abs(ev.eigenvalues[5] - lam56) < 1e-13

    @pytest.mark.parametrize("fam,a", [(A, 0.5), (A, -0.8), (B, 0.3), (B, 1.9)])
    def test_reconstruction_and_nulls(self, fam, a):
        ev = fam.eval(a)
        v = ev.eigenvectors
        rec = (v * ev.eigenvalues) @ v.T
        rho = ev.rho_pair.matrix
        assert np.abs(rec - rho).max() < 1e-14
        assert len(ev.pair_null) == 3
        for w in ev.pair_null:
            assert np.linalg.norm(rho @ w) < 1e-13
        assert abs(sum(ev.eigenvalues) - 1) < 1e-13

    def test_null_b_is_b1_plus(self):
        # roots multiply to -1, so the null component ratio is 1/b1_plus
        for fam, a in ((self.A, 0.3), (self.B, 0.7)):
            ev = fam.eval(a)
            m = ev.metadata
            assert abs(m["b1_plus"] * m["b1_minus"] + 1) < 1e-12
            w = ev.pair_null[0]
            t1, pr = 1, 3
            assert abs(w[pr] / w[t1] - 1 / m["b1_plus"]) < 1e-12

    def test_reciprocal_root_metadata(self):
        ev = self.B.eval(0.4)
        m = ev.metadata
        assert abs(m["b2_plus"] - 1 / m["b1_plus"]) < 1e-10
        assert abs(m["b2_minus"] - 1 / m["b1_minus"]) < 1e-10
        assert abs(np.hypot(m["mu1_plus"], m["nu1_plus"]) - 1) < 1e-14

    def test_epsilon_zero_limit(self):
        # 2*alpha - beta is constant 4/7 for the plus family but crosses
        # zero for the minus family at 5/6, where the roots blow up and the
        # live vector degenerates onto the partner slot
        for a in (-0.9, 0.0, 0.9):
            al, be = self.params_a(a)
            assert abs((2 * al - be) - 4 / 7) < 1e-15
        a0 = 5 / 6
        al, be = self.params_b(a0)
        assert abs(2 * al - be) < 1e-15
        ev = self.B.eval(a0)
        assert ev.metadata["b1_plus"] == np.inf
        col = ev.eigenvectors[:, 0]
        assert abs(abs(col[3]) - 1) < 1e-12  # all weight on the partner index
        assert abs(ev.pair_null[0][1]) == 1.0  # null sits on the triple slot

    def test_triple_null_uses_middle_zero(self):
        ev = self.B.eval(1.0)
        e0 = np.eye(3)[1]
        assert np.abs(ev.triple_null_selected[0]
                      - np.kron(ev.pair_null[0], e0)).max() < 1e-14
        assert np.abs(ev.triple_null_selected[1]
                      - np.kron(ev.pair_null[2], e0)).max() < 1e-14

    def test_sigma_flip_at_five_sixths(self):
        assert self.B.sigma(0.83)[0] == -1.0
        assert self.B.sigma(0.84)[0] == 1.0
        assert np.all(self.B.sigma(0.83)[3:] == 1.0)

    def test_domains(self):
        assert self.A.domain == (-1.0, 1.0)
        assert self.B.domain == (-1.0, 2.0)
        with pytest.raises(ValueError, match="certified"):
            self.A.eval(1.01)
        with pytest.raises(ValueError, match="certified"):
            self.B.eval(-1.2)

    def test_no_q_pole_on_grids(self):
        for fam in (self.A, self.B):
            lo, hi = fam.domain
            for a in np.linspace(lo, hi, 101):
                fam.eval(float(a))  # must not raise


class TestRawChi:
    def test_string_form_roundtrip(self):
        fam = families.get_family("chi:0.2,0.1,0.2,0.6,q+")
        ev = fam.eval(0.2)
        assert abs(sum(ev.eigenvalues) - 1) < 1e-12
        lo, hi = fam.domain
        assert lo <= 0.2 <= hi

    def test_malformed_string(self):
        with pytest.raises(ValueError):
            families.get_family("chi:1,2,3")
        with pytest.raises(ValueError):
            families.get_family("chi:0.2,0.1,0.2,0.6,qq")

    def test_point_eval_helper(self):
        ev = families.modified_chi_eval(0.2, 0.1, 0.2, 0.6, +1)
        q = oracle_ex2_q(0.2, 0.1, 0.2, +1)
        want = oracle_ex2_rho(0.2, 0.1, 0.2, 0.6, q)
        assert np.abs(ev.rho_pair.matrix - want).max() < 1e-14
        with pytest.raises(ValueError):
            families.modified_chi_eval(0.2, 0.1, 0.2, 0.6, 2)


class TestExample3:
    FAM = families.get_family("example3")

    @pytest.mark.parametrize("a", [-4.0, -2.5, -1.0, -0.3, 0.0, 1.0, 3.3, 4.0])
    def test_matrix_matches_oracle(self, a):
        got = self.FAM.eval(a).rho_pair.matrix
        assert np.abs(got - oracle_ex3_rho(a)).max() < 1e-14

    @pytest.mark.parametrize("a", np.linspace(-4, 4, 10).tolist())
    def test_constant_spectrum(self, a):
        ev = self.FAM.eval(a)
        want = np.array([0.1] * 7 + [0.3])
        assert np.abs(np.sort(ev.eigenvalues) - want).max() < 1e-13
        numeric = np.linalg.eigvalsh(ev.rho_pair.matrix)
        assert np.abs(numeric[-1] - 0.3) < 1e-12
        assert np.abs(numeric[1:8] - 0.1).max() < 1e-12
        assert abs(numeric[0]) < 1e-12

    @pytest.mark.parametrize("a", [-3.0, -1.0, 0.5, 2.0])
    def test_reconstruction_and_null(self, a):
        ev = self.FAM.eval(a)
        v = ev.eigenvectors
        rec = (v * ev.eigenvalues) @ v.T
        rho = ev.rho_pair.matrix
        assert np.abs(rec - rho).max() < 1e-13
        (w,) = ev.pair_null
        assert np.linalg.norm(rho @ w) < 1e-13
        # null direction proportional to (-(1+a), a, 1) on the diagonal slots
        raw = np.zeros(9)
        raw[0], raw[4], raw[8] = -(1 + a), a, 1.0
        raw /= np.linalg.norm(raw)
        assert min(np.abs(w - raw).max(), np.abs(w + raw).max()) < 1e-13

    def test_triple_null_vector(self):
        a = 1.0
        ev = self.FAM.eval(a)
        u = np.zeros(9)
        u[0], u[8] = 1.0, 1 + a
        u /= np.linalg.norm(u)
        want = np.kron(u, np.eye(3)[1])
        assert np.abs(ev.triple_null_selected[0] - want).max() < 1e-14

    def test_metadata_guards(self):
        ev = self.FAM.eval(-1.0)
        assert ev.metadata["a_prime"] == np.inf
        assert np.isnan(ev.metadata["a_dprime"])
        ev2 = self.FAM.eval(-0.5)
        adp = ev2.metadata["a_dprime"]  # complex inside -2 < a < 0
        assert np.iscomplexobj(adp) and abs(adp.imag - np.sqrt(3)) < 1e-14
        ev3 = self.FAM.eval(1.0)
        assert abs(ev3.metadata["a_prime"] - 0.5) < 1e-15
        assert abs(ev3.metadata["a_dprime"] - np.sqrt(0.75)) < 1e-15

    def test_sigma_flip_at_minus_one(self):
        assert self.FAM.sigma(-1.01)[0] == -1.0
        assert self.FAM.sigma(-0.99)[0] == 1.0

    def test_domain(self):
        assert self.FAM.domain == (-4.0, 4.0)
        with pytest.raises(ValueError, match="certified"):
            self.FAM.eval(4.5)


class TestRegistry:
    def test_lookup_by_name_tag_instance(self):
        fam = families.get_family("horodecki")
        assert families.get_family("horodecki_ex1") is fam
        assert families.get_family(fam) is fam

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="horodecki"):
            families.get_family("nope")

    def test_eval_helpers_match_registry(self):
        a = 0.25
        for helper, name in ((families.example2a_eval, "chi2a"),
                             (families.example2b_eval, "chi2b"),
                             (families.example3_eval, "example3")):
            got = helper(a).rho_pair.matrix
            want = families.get_family(name).eval(a).rho_pair.matrix
            assert np.abs(got - want).max() == 0.0
