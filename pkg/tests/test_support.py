import numpy as np
import pytest
from hypothesis import given, strategies as st

from entwit.exceptions import InvalidParamError
from entwit.measures import negativity
from entwit.oracles import brute_force_support, random_density, random_state_with_negativity_cap
from entwit.states import generalized_werner, isotropic, parse_state_spec, werner
from entwit.support import (SupportQuery, gwer_coefficients, gwer_feasible_vertices, gwer_optimizer,
                            gwer_overlap, h_generalized_werner, h_isotropic, h_werner,
                            isotropic_optimizer, support, werner_optimizer)

cp = pytest.importorskip("cvxpy")


def sdp_support(tau, c):
    """max Tr[gamma tau] over all states with N(gamma) <= c.

    N(gamma) <= c iff gamma^Gamma = P - Q with P, Q >= 0 and Tr Q <= c. The
    targets here are real, so a real symmetric gamma suffices.
    """
    n = tau.n
    d = tau.dims
    t = np.real(tau.matrix)
    g = cp.Variable((n, n), symmetric=True)
    p = cp.Variable((n, n), symmetric=True)
    q = cp.Variable((n, n), symmetric=True)
    cons = [g >> 0, p >> 0, q >> 0, cp.trace(g) == 1, cp.trace(q) <= c,
            cp.partial_transpose(g, list(d), axis=1) == p - q]
    prob = cp.Problem(cp.Maximize(cp.trace(g @ t)), cons)
    prob.solve(solver="CLARABEL")
    return prob.value


class TestWerner:
    def test_branch_boundary_value(self):
        for d in (2, 3, 5):
            for c in (0.0, 0.1, 1.0):
                assert h_werner(d, 1 / d, c) == pytest.approx(1 / d**2, abs=1e-12)

    def test_c_zero_is_ppt_max(self):
        # best PPT Werner partner is beta = 0
        for d, a in ((2, -0.5), (3, -1.0), (4, 0.1)):
            want = (d - a) / (d * (d * d - 1))
            assert h_werner(d, a, 0.0) == pytest.approx(want, abs=1e-12)

    def test_three_qutrit_example(self):
        # 1-D maximization over the Werner line gives 0.26667, not a negative
        # number; a support function of a set of states is never below zero here
        val = h_werner(3, -1, 0.2)
        assert val == pytest.approx((3 + 1 + 0.6 * 4) / 24, abs=1e-12)
        assert brute_force_support(werner(3, -1), 0.2, "werner") == pytest.approx(val, abs=1e-4)

    @given(st.sampled_from([2, 3, 4]), st.floats(-1, 1), st.floats(0, 1.2))
    def test_against_brute_force(self, d, alpha, c):
        bf = brute_force_support(werner(d, alpha), c, "werner")
        assert h_werner(d, alpha, c) == pytest.approx(bf, abs=1e-4)

    def test_continuity(self):
        for d in (2, 3, 4):
            for a in np.linspace(-1, 1 / d, 7):
                lo = h_werner(d, a, 1 / d - 1e-12)
                assert lo == pytest.approx(h_werner(d, a, 1 / d), abs=1e-9)
            c = 0.05
            left = h_werner(d, 1 / d - 1e-12, c)
            assert left == pytest.approx(h_werner(d, 1 / d, c), abs=1e-9)

    def test_optimizer_attains(self):
        for d, a, c in ((3, -1, 0.2), (2, -0.3, 0.1), (4, 0.5, 0.0), (3, 0.0, 0.9)):
            beta = werner_optimizer(d, a, c)
            g = werner(d, beta)
            assert negativity(g) <= c + 1e-10
            overlap = np.real(np.trace(g.matrix @ werner(d, a).matrix))
            assert overlap == pytest.approx(h_werner(d, a, c), abs=1e-10)


class TestIsotropic:
    def test_examples(self):
        for d in (2, 3):
            assert h_isotropic(d, 1 / d**2, 0.3) == pytest.approx(1 / d**2)
        assert h_isotropic(2, 1.0, 0.5) == 1.0
        assert h_isotropic(2, 1.0, 3.0) == 1.0
        assert h_isotropic(3, 0.9, 0.5) == pytest.approx(0.9 - 7.1 / 24, abs=1e-12)
        assert brute_force_support(isotropic(3, 0.9), 0.5, "isotropic") == pytest.approx(0.9 - 7.1 / 24, abs=1e-4)

    @given(st.sampled_from([2, 3, 4]), st.floats(0, 1), st.floats(0, 2))
    def test_against_brute_force(self, d, beta, c):
        bf = brute_force_support(isotropic(d, beta), c, "isotropic")
        assert h_isotropic(d, beta, c) == pytest.approx(bf, abs=1e-4)

    def test_continuity(self):
        for d in (2, 3, 4):
            for b in np.linspace(1 / d**2, 1, 6):
                cc = (d - 1) / 2
                assert h_isotropic(d, b, cc - 1e-12) == pytest.approx(h_isotropic(d, b, cc), abs=1e-9)
            assert h_isotropic(d, 1 / d**2 + 1e-13, 0.2) == pytest.approx(h_isotropic(d, 1 / d**2, 0.2), abs=1e-9)

    def test_optimizer_attains(self):
        for d, b, c in ((3, 0.9, 0.5), (2, 0.1, 0.2), (4, 0.01, 0.3), (2, 0.7, 1.0)):
            g = isotropic(d, isotropic_optimizer(d, b, c))
            assert negativity(g) <= c + 1e-10
            overlap = np.real(np.trace(g.matrix @ isotropic(d, b).matrix))
            assert overlap == pytest.approx(h_isotropic(d, b, c), abs=1e-10)


class TestGeneralizedWerner:
    def test_both_slopes_negative(self):
        A, B = gwer_coefficients(3, 0.2, 0.2)
        assert A <= 0 and B <= 0
        assert h_generalized_werner(3, 0.2, 0.2, 0.1) == pytest.approx(0.2)

    def test_overlap_formula(self, rng):
        for _ in range(10):
            d = int(rng.integers(2, 5))
            a, b = rng.dirichlet([1, 1, 1])[:2]
            a2, b2 = rng.dirichlet([1, 1, 1])[:2]
            direct = np.real(np.trace(generalized_werner(d, a, b).matrix @ generalized_werner(d, a2, b2).matrix))
            assert gwer_overlap(d, a, b, a2, b2) == pytest.approx(direct, abs=1e-12)

    def test_vertices_feasible(self):
        for d in (2, 3, 4):
            for c in (0.0, 0.05, 0.2, 1 / d, 1.0):
                for a2, b2 in gwer_feasible_vertices(d, c):
                    assert negativity(generalized_werner(d, a2, b2)) <= min(c, 1 / d) + 1e-10

    def test_werner_line(self):
        # Werner states spread the symmetric weight evenly over P and P_plus
        for d in (2, 3, 4):
            for alpha in np.linspace(-1, 1, 9):
                a, b = (1 - alpha) / 2, (1 + alpha) * (d - 1) / (2 * (d + 1))
                w = werner(d, alpha).matrix
                assert np.allclose(generalized_werner(d, a, b).matrix, w, atol=1e-12)
                for c in (0.0, 0.1, 0.5):
                    beta = werner_optimizer(d, alpha, c)
                    ref = np.real(np.trace(werner(d, beta).matrix @ w))
                    assert h_generalized_werner(d, a, b, c) >= ref - 1e-9

    @given(st.sampled_from([2, 3, 4]), st.floats(0, 1), st.floats(0, 1), st.floats(0, 0.6))
    def test_vertex_enumeration(self, d, u, v, c):
        a, b = u * (1 - v), v * u
        verts = gwer_feasible_vertices(d, c)
        tau = generalized_werner(d, a, b).matrix
        best = max(np.real(np.trace(tau @ generalized_werner(d, *p).matrix)) for p in verts)
        assert h_generalized_werner(d, a, b, c) == pytest.approx(best, abs=1e-12)
        g = generalized_werner(d, *gwer_optimizer(d, a, b, c))
        assert np.real(np.trace(g.matrix @ tau)) == pytest.approx(best, abs=1e-10)

    @pytest.mark.parametrize("d,a,b,c", [(2, 0.6, 0.1, 0.2), (3, 0.1, 0.7, 0.1),
                                         (3, 0.5, 0.4, 0.05), (2, 0.0, 0.0, 0.3)])
    def test_against_brute_force(self, d, a, b, c):
        bf = brute_force_support(generalized_werner(d, a, b), c, "generalized_werner")
        assert h_generalized_werner(d, a, b, c) == pytest.approx(bf, abs=1e-4)

    def test_rejects_outside_simplex(self):
        with pytest.raises(InvalidParamError):
            h_generalized_werner(3, 0.7, 0.7, 0.1)


@pytest.mark.parametrize("desc,c", [
    ("werner d=3 alpha=-1", 0.2), ("werner d=2 alpha=-0.4", 0.1), ("werner d=3 alpha=0.6", 0.05),
    ("isotropic d=3 beta=0.9", 0.5), ("isotropic d=2 beta=0.05", 0.1),
    ("generalized_werner d=3 a=0.5 b=0.2", 0.1), ("generalized_werner d=2 a=0.1 b=0.8", 0.3),
])
def test_against_sdp(desc, c):
    spec = parse_state_spec(desc)
    h = support(SupportQuery(spec, c))
    assert h == pytest.approx(sdp_support(spec.build(), c), abs=1e-6)


def test_dispatch_and_errors():
    assert support(SupportQuery(parse_state_spec("werner d=2 alpha=0"), 0.1)) == h_werner(2, 0, 0.1)
    with pytest.raises(InvalidParamError):
        support(SupportQuery(parse_state_spec("rhoq q=0.5"), 0.1))
    with pytest.raises(InvalidParamError):
        h_werner(2, 0.0, -0.1)


@given(st.sampled_from(["werner", "isotropic", "gw"]), st.sampled_from([2, 3]),
       st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
def test_monotone_in_c(kind, d, x, c1, c2):
    c1, c2 = sorted((c1, c2))
    if kind == "werner":
        f = lambda c: h_werner(d, 2 * x - 1, c)
    elif kind == "isotropic":
        f = lambda c: h_isotropic(d, x, c)
    else:
        f = lambda c: h_generalized_werner(d, x / 2, x / 3, c)
    assert f(c1) <= f(c2) + 1e-12


def test_sampling_upper_bound():
    r = np.random.default_rng(314)
    taus = [werner(3, -0.8), isotropic(3, 0.8), generalized_werner(3, 0.6, 0.1),
            werner(2, -1), isotropic(2, 0.95)]
    hs = [lambda c: h_werner(3, -0.8, c), lambda c: h_isotropic(3, 0.8, c),
          lambda c: h_generalized_werner(3, 0.6, 0.1, c), lambda c: h_werner(2, -1, c),
          lambda c: h_isotropic(2, 0.95, c)]
    for _ in range(100):
        k = int(r.integers(len(taus)))
        tau = taus[k]
        c = float(r.uniform(0, 0.5))
        g, _ = random_state_with_negativity_cap(random_density(tau.n, int(r.integers(1, 3)), r, dims=tau.dims), c)
        assert negativity(g) <= c + 1e-9
        assert np.real(np.trace(g.matrix @ tau.matrix)) <= hs[k](c) + 1e-8
