import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from entwit.exceptions import InvalidDimsError, InvalidParamError, NotPureError, PPTInputError
from entwit.linalg import BipartiteState, HermitianOperator, partial_transpose, trace_norm
from entwit.measures import (binary_entropy, concurrence, entanglement_of_formation,
                             f_l_monotone, majorization_convertible, negativity,
                             negativity_profile, rho_tilde, schmidt_coefficients)
from entwit.oracles import random_density, random_local_channel, random_unitary
from entwit.states import flip_parts, max_entangled, pure_schmidt, rho_q, werner

from conftest import rand_state

R2 = np.sqrt(2)
SY = np.array([[0, -1j], [1j, 0]])


def wootters_oracle(m):
    # original non-Hermitian eigenvalue route
    r = m @ np.kron(SY, SY) @ m.conj() @ np.kron(SY, SY)
    mu = np.sort(np.clip(np.linalg.eigvals(r).real, 0, None))[::-1]
    s = np.sqrt(mu)
    return max(0.0, s[0] - s[1] - s[2] - s[3])


class TestNegativity:
    def test_pure_qubits(self):
        for l0 in (0.5, 0.7, 0.99):
            assert negativity(pure_schmidt([l0, 1 - l0])) == pytest.approx(np.sqrt(l0 * (1 - l0)), abs=1e-12)

    def test_pure_qutrits(self):
        lam = np.array([0.6, 0.3, 0.1])
        want = np.sqrt(lam[0] * lam[1]) + np.sqrt(lam[0] * lam[2]) + np.sqrt(lam[1] * lam[2])
        assert negativity(pure_schmidt(lam)) == pytest.approx(want, abs=1e-12)

    def test_product(self):
        assert negativity(pure_schmidt([1, 0, 0])) == 0

    @given(st.integers(0, 2**32 - 1), st.floats(0.1, 10))
    def test_trace_norm_identity_and_scaling(self, seed, k):
        r = rand_state(np.random.default_rng(seed), 9)
        s = BipartiteState(r, (3, 3))
        n = negativity(s)
        assert n == pytest.approx((trace_norm(partial_transpose(s)) - 1) / 2, abs=1e-9)
        scaled = HermitianOperator(k * r, (3, 3))
        assert negativity(scaled) == pytest.approx(k * n, rel=1e-9, abs=1e-12)

    @given(st.integers(0, 2**32 - 1))
    def test_local_unitary_invariance(self, seed):
        r = np.random.default_rng(seed)
        s = random_density(4, None, r)
        k = np.kron(random_unitary(2, r), random_unitary(2, r))
        moved = s.conjugate_by(k)
        assert negativity(moved) == pytest.approx(negativity(s), abs=1e-9)
        assert concurrence(moved) == pytest.approx(concurrence(s), abs=1e-9)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(0, 1))
    def test_local_channel_monotone(self, seed, k, side):
        r = np.random.default_rng(seed)
        s = random_density(4, int(r.integers(1, 5)), r)
        ch = random_local_channel(2, k, r, side=side)
        assert ch.completeness_error() <= 1e-10
        assert negativity(ch.apply(s)) <= negativity(s) + 1e-9


class TestRhoTilde:
    def test_pure_qubits(self):
        t = rho_tilde(pure_schmidt([0.8, 0.2]))
        pm = flip_parts(2)[2].matrix
        assert_allclose(t.matrix, pm, atol=1e-12)
        assert negativity(t) == pytest.approx(0.5)

    def test_werner_tilde(self):
        w = werner(2, (1 - R2) / 2)
        p = negativity_profile(w)
        assert p.gamma_minus_trace_sq == pytest.approx((R2 - 1) / 8, abs=1e-12)
        assert p.N_tilde == pytest.approx(0.5, abs=1e-12)
        assert negativity(rho_tilde(w)) == pytest.approx(0.5, abs=1e-12)

    def test_ppt_raises(self):
        with pytest.raises(PPTInputError):
            rho_tilde(werner(2, 0.3))
        assert not negativity_profile(werner(2, 0.3)).tilde_defined

    def test_qutrit_example(self):
        p = negativity_profile(pure_schmidt([0.9, 0.05, 0.05]))
        assert p.gamma_minus_trace_sq == pytest.approx((1 + np.sqrt(145)) / 80, abs=1e-12)

    @given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
    def test_profile_identities(self, seed, d):
        r = np.random.default_rng(seed)
        s = random_density(d * d, int(r.integers(1, 3)), r)
        p = negativity_profile(s)
        if p.tilde_defined:
            assert p.N_tilde == pytest.approx(p.gamma_minus_trace_sq / p.N, rel=1e-12)
            assert 0 <= p.N_tilde <= (d - 1) / 2 + 1e-12
            assert rho_tilde(s).trace() == pytest.approx(1.0)

    def test_rho_q_profile(self):
        p = negativity_profile(rho_q(0.3))
        assert p.gamma_minus_trace_sq == pytest.approx(p.N * p.N_tilde, abs=1e-15)


class TestSchmidt:
    def test_values(self):
        assert_allclose(schmidt_coefficients(max_entangled(3)), [1 / 3] * 3, atol=1e-12)
        assert_allclose(schmidt_coefficients(pure_schmidt([1, 0])), [1, 0], atol=1e-12)
        assert_allclose(schmidt_coefficients(pure_schmidt([0.8, 0.2])), [0.8, 0.2], atol=1e-12)
        # order of input is irrelevant
        assert_allclose(schmidt_coefficients(pure_schmidt([0.2, 0.8])), [0.8, 0.2], atol=1e-12)

    def test_mixed_rejected(self):
        with pytest.raises(NotPureError):
            schmidt_coefficients(werner(2, -0.5))

    def test_majorization(self):
        psi, phi = pure_schmidt([0.6, 0.4]), pure_schmidt([0.9, 0.1])
        assert majorization_convertible(psi, phi)
        assert not majorization_convertible(phi, psi)
        assert majorization_convertible(max_entangled(3), pure_schmidt([0.7, 0.2, 0.1]))
        # padding: a qubit Bell pair reaches a qutrit product-like vector
        assert majorization_convertible([0.5, 0.5], [1.0, 0.0, 0.0])
        assert not majorization_convertible([1.0, 0.0], [1 / 3] * 3)

    def test_f_l(self):
        assert f_l_monotone(max_entangled(2), 2) == pytest.approx(0.5)
        assert f_l_monotone(pure_schmidt([1, 0]), 2) == pytest.approx(0)
        with pytest.raises(InvalidParamError):
            f_l_monotone([0.5, 0.5], 3)

    @given(st.integers(2, 5), st.integers(0, 2**32 - 1))
    def test_majorization_equals_f_l(self, d, seed):
        r = np.random.default_rng(seed)
        a, b = np.sort(r.dirichlet(np.ones(d)))[::-1], np.sort(r.dirichlet(np.ones(d)))[::-1]
        # independent oracle: partial sums by explicit loop
        direct = all(sum(a[:k]) <= sum(b[:k]) + 1e-10 for k in range(1, d + 1))
        assert majorization_convertible(a, b) == direct
        assert direct == all(f_l_monotone(a, l) >= f_l_monotone(b, l) - 1e-10 for l in range(2, d + 1))


class TestConcurrence:
    def test_known(self):
        assert concurrence(max_entangled(2)) == pytest.approx(1.0, abs=1e-12)
        assert concurrence(werner(2, (1 - R2) / 2)) == pytest.approx((R2 - 1) / 2, abs=1e-12)
        assert concurrence(werner(2, 0.2)) == 0.0

    def test_dims(self):
        with pytest.raises(InvalidDimsError):
            concurrence(werner(3, -1))

    @given(st.floats(0.5, 1.0))
    def test_pure_formula(self, l0):
        s = pure_schmidt([l0, 1 - l0])
        assert concurrence(s) == pytest.approx(2 * np.sqrt(l0 * (1 - l0)), abs=1e-10)
        assert concurrence(s) == pytest.approx(2 * negativity(s), abs=1e-10)

    @given(st.integers(0, 2**32 - 1))
    def test_against_wootters(self, seed):
        r = np.random.default_rng(seed)
        m = rand_state(r, 4, int(r.integers(1, 5)))
        assert concurrence(BipartiteState(m, (2, 2))) == pytest.approx(wootters_oracle(m), abs=1e-6)


class TestEoF:
    def test_endpoints(self):
        assert entanglement_of_formation(pure_schmidt([1, 0])) == 0
        assert entanglement_of_formation(max_entangled(2)) == pytest.approx(1.0)
        assert binary_entropy(0.5) == pytest.approx(1.0)

    def test_monotone_in_c(self, rng):
        states = [BipartiteState(rand_state(rng, 4, 2), (2, 2)) for _ in range(30)]
        pairs = [(concurrence(s), entanglement_of_formation(s)) for s in states]
        pairs.sort()
        for (c1, e1), (c2, e2) in zip(pairs, pairs[1:]):
            if c2 > c1 + 1e-9:
                assert e2 > e1
            assert 0 <= e1 <= 1
