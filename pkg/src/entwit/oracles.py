"""Randomized ensembles, brute-force oracles and verification suites.

Every suite is a pure function of ``(trials, seed)``. Trial ``i`` draws from
its own child of ``SeedSequence(seed)`` so results do not depend on how many
trials run before it. The bit generator is PCG64 and its name is written into
every report line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import InvalidParamError
from .linalg import (BipartiteState, HermitianOperator, _neg_matrix, _parts_matrix, _pt_matrix,
                     min_eigenvalue)
from .measures import (PPT_TOL, f_l_monotone, majorization_convertible, negativity,
                       negativity_profile)
from .states import StateFamilySpec, generalized_werner, isotropic, pure_schmidt, werner
from .support import h_generalized_werner, h_isotropic, h_werner
from .witnesses import (FIRE_TOL, LocalUnitarySearchConfig, Verdict, base_value,
                        gwer_vertex_points, rotate_local, witness_gamma, witness_gwer_vertices,
                        witness_lu_min)

RNG_NAME = "PCG64"


def make_rng(seed) -> np.random.Generator:
    """``Generator(PCG64(seed))``; a ``Generator`` passes through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(trials)]


def _square_dims(n: int) -> tuple[int, int]:
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise InvalidParamError(f"total dimension {n} is not a square; pass dims explicitly")
    return d, d


# --------------------------------------------------------------------------- ensembles

def random_density(n: int, rank: int | None = None, seed=0, dims=None) -> BipartiteState:
    """``G G^dagger / Tr[G G^dagger]`` for a seeded ``n x rank`` complex Gaussian ``G``.

    Full rank (``rank = n``) gives the Hilbert-Schmidt ensemble. ``dims``
    defaults to ``(sqrt(n), sqrt(n))``.
    """
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise InvalidParamError(f"rank must lie in [1, {n}], got {rank}")
    dims = _square_dims(n) if dims is None else tuple(dims)
    rng = make_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    m = g @ g.conj().T
    return BipartiteState._wrap(m / np.trace(m).real, dims)


def random_pure(dims, seed=0) -> BipartiteState:
    rng = make_rng(seed)
    n = dims[0] * dims[1]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return BipartiteState.from_vector(v / np.linalg.norm(v), tuple(dims))


def random_unitary(d: int, seed=0) -> np.ndarray:
    """Haar-random unitary via QR with the phase fix on ``R``'s diagonal."""
    rng = make_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_schmidt(d: int, seed=0) -> np.ndarray:
    """Descending Schmidt vector drawn uniformly from the simplex."""
    lam = make_rng(seed).dirichlet(np.ones(d))
    return np.sort(lam)[::-1]


@dataclass(frozen=True)
class LocalChannel:
    """``E_A (x) id`` (``side=0``) or ``id (x) E_B`` (``side=1``) from Kraus operators."""

    kraus: tuple
    dims: tuple
    side: int = 1

    def _lift(self, k: np.ndarray) -> np.ndarray:
        d_a, d_b = self.dims
        return np.kron(k, np.eye(d_b)) if self.side == 0 else np.kron(np.eye(d_a), k)

    def completeness_error(self) -> float:
        d = self.kraus[0].shape[1]
        s = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(s - np.eye(d))))

    def apply_matrix(self, m: np.ndarray) -> np.ndarray:
        out = np.zeros_like(m, dtype=complex)
        for k in self.kraus:
            kk = self._lift(k)
            out += kk @ m @ kk.conj().T
        return out

    def apply(self, rho: HermitianOperator) -> HermitianOperator:
        cls = BipartiteState if isinstance(rho, BipartiteState) else HermitianOperator
        return cls._wrap(self.apply_matrix(rho.matrix), rho.dims)

    def apply_gamma_matrix(self, m: np.ndarray) -> np.ndarray:
        """``E^Gamma(X) = [E(X^Gamma)]^Gamma``."""
        return _pt_matrix(self.apply_matrix(_pt_matrix(m, self.dims)), self.dims)


def random_local_channel(d: int, kraus_count: int = 2, seed=0, side: int = 1,
                         dims=None) -> LocalChannel:
    """Random local CPTP map from a Haar-like isometry ``C^d -> C^{k d}``."""
    if kraus_count < 1:
        raise InvalidParamError(f"kraus_count must be >= 1, got {kraus_count}")
    rng = make_rng(seed)
    z = rng.standard_normal((kraus_count * d, d)) + 1j * rng.standard_normal((kraus_count * d, d))
    q, _ = np.linalg.qr(z)
    kraus = tuple(q[i * d:(i + 1) * d] for i in range(kraus_count))
    return LocalChannel(kraus, tuple(dims) if dims else (d, d), side)


def random_state_with_negativity_cap(gamma: HermitianOperator, c: float, iters: int = 60):
    """Mix ``gamma`` toward ``I/n`` until ``N <= c`` (bisection on the weight).

    Returns the mixed state and the weight ``t`` of ``I/n``.
    """
    if negativity(gamma) <= c:
        return gamma, 0.0
    n = gamma.n
    eye = np.eye(n) / n

    def mix(t):
        return BipartiteState._wrap((1 - t) * gamma.matrix + t * eye, gamma.dims)

    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if negativity(mix(mid)) <= c:
            hi = mid
        else:
            lo = mid
    return mix(hi), hi


# --------------------------------------------------------------------------- support function oracle

def _affine_family(spec_family: str, d: int):
    """Matrices ``A0, A1[, A2]`` with ``gamma(t) = A0 + sum t_i A_i`` and a parameter box."""
    if spec_family == "werner":
        # w_b is affine in b; take two members and difference them
        a0 = werner(d, 0.0).matrix
        return a0, [werner(d, 1.0).matrix - a0], [(-1.0, 1.0)]
    if spec_family == "isotropic":
        a0 = isotropic(d, 0.0).matrix
        return a0, [isotropic(d, 1.0).matrix - a0], [(0.0, 1.0)]
    if spec_family == "generalized_werner":
        a0 = generalized_werner(d, 0.0, 0.0).matrix
        return (a0, [generalized_werner(d, 1.0, 0.0).matrix - a0,
                     generalized_werner(d, 0.0, 1.0).matrix - a0], [(0.0, 1.0), (0.0, 1.0)])
    raise InvalidParamError(f"no brute-force support oracle for family {spec_family}")


def _joint_spectra(mats: list[np.ndarray], dims) -> np.ndarray:
    # partial transposes of the family members commute; diagonalize a generic
    # combination and read off each one's eigenvalues in the shared basis
    pts = [_pt_matrix(m, dims) for m in mats]
    weights = np.linspace(1.0, 2.0, len(pts)) * np.pi / 3
    _, v = np.linalg.eigh(sum(w * m for w, m in zip(weights, pts)))
    return np.array([np.real(np.einsum("ij,ik,kj->j", v.conj(), m, v)) for m in pts])


def brute_force_support(tau: HermitianOperator | StateFamilySpec, c: float, family: str,
                        grid_step: float = 1e-5, zoom_rounds: int = 8) -> float:
    """Maximize ``Tr[gamma tau]`` over ``gamma`` in ``family`` with ``N(gamma) <= c`` by grid search.

    Negativities come from numerically diagonalized partial transposes, not
    from closed forms. One-parameter families use a uniform grid of step
    ``grid_step``; the two-parameter family uses a zooming grid on the simplex
    ``a + b <= 1`` until the cell size drops below ``grid_step``.
    """
    if isinstance(tau, StateFamilySpec):
        tau = tau.build()
    d = tau.dims[0]
    a0, dirs, box = _affine_family(family, d)
    spec = _joint_spectra([a0] + dirs, tau.dims)
    base = float(np.real(np.trace(a0 @ tau.matrix)))
    slopes = [float(np.real(np.trace(a @ tau.matrix))) for a in dirs]

    def evaluate(pts: np.ndarray):
        eig = spec[0][None, :] + pts @ spec[1:]
        neg = -np.minimum(eig, 0.0).sum(axis=1)
        val = base + pts @ np.array(slopes)
        return np.where(neg <= c + 1e-12, val, -np.inf)

    if len(dirs) == 1:
        lo, hi = box[0]
        grid = np.linspace(lo, hi, int(round((hi - lo) / grid_step)) + 1)[:, None]
        return float(np.max(evaluate(grid)))

    best_val, center, half = -np.inf, np.array([0.5, 0.5]), 0.5
    n_side = 201
    for _ in range(zoom_rounds):
        ax = np.linspace(-half, half, n_side)
        aa, bb = np.meshgrid(center[0] + ax, center[1] + ax, indexing="ij")
        pts = np.column_stack([aa.ravel(), bb.ravel()])
        keep = (pts[:, 0] >= 0) & (pts[:, 1] >= 0) & (pts.sum(axis=1) <= 1 + 1e-15)
        pts = pts[keep]
        vals = evaluate(pts)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, center = float(vals[i]), pts[i]
        step = 2 * half / (n_side - 1)
        if step <= grid_step:
            break
        half = 4 * step
    return best_val


def closed_form_support(family: str, d: int, params: dict, c: float) -> float:
    if family == "werner":
        return h_werner(d, params["alpha"], c)
    if family == "isotropic":
        return h_isotropic(d, params["beta"], c)
    return h_generalized_werner(d, params["a"], params["b"], c)


# --------------------------------------------------------------------------- suites

@dataclass
class SuiteReport:
    suite: str
    trials: int
    violations: int
    max_residual: float
    seed: int
    rng: str = RNG_NAME

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def line(self) -> str:
        return (f"suite={self.suite} trials={self.trials} violations={self.violations} "
                f"max_residual={self.max_residual:.3e} seed={self.seed} rng={self.rng}")


class _Tally:
    def __init__(self):
        self.violations = 0
        self.max_residual = 0.0

    def check(self, ok: bool, residual: float = 0.0):
        self.violations += 0 if ok else 1
        if np.isfinite(residual):
            self.max_residual = max(self.max_residual, float(residual))


def _random_psd(n: int, rng) -> np.ndarray:
    r = int(rng.integers(1, n + 1))
    g = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    return g @ g.conj().T * rng.uniform(0.1, 2.0)


def verify_operator_inequalities(seed: int, trials: int) -> SuiteReport:
    """``(A-B)_+ <= A`` and ``(A-B)_- <= B`` for random PSD pairs, plus the chain
    inequality ``E(rho)^{Gamma-} <= E^Gamma(rho^{Gamma-})`` for random local
    channels on two qubits.

    ``n`` alternates between 4 and 9. Residuals are the most negative
    eigenvalue of each difference, reported as a positive number.
    """
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        n = (4, 9)[i % 2]
        a, b = _random_psd(n, rng), _random_psd(n, rng)
        pos, neg = _parts_matrix(a - b)
        for lhs, rhs in ((pos, a), (neg, b)):
            r = -min_eigenvalue(rhs - lhs)
            t.check(r <= 1e-9 * max(1.0, np.abs(rhs).max()), r)
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        ch = random_local_channel(2, int(rng.integers(1, 5)), rng, side=int(rng.integers(0, 2)))
        out_neg = _neg_matrix(_pt_matrix(ch.apply_matrix(rho.matrix), rho.dims))
        mapped = ch.apply_gamma_matrix(_neg_matrix(_pt_matrix(rho.matrix, rho.dims)))
        r = -min_eigenvalue(mapped - out_neg)
        t.check(r <= 1e-9, r)
    return SuiteReport("opineq", trials, t.violations, t.max_residual, seed)


def verify_trace_inequalities(seed: int, trials: int) -> SuiteReport:
    """Trace forms of the same statements: ``Tr[(A-B)_+] <= Tr[A]``,
    ``Tr[(A-B)_-] <= Tr[B]`` and ``N(E(rho)) <= Tr[E^Gamma(rho^{Gamma-})]``.

    Unlike the Loewner-order versions these hold for every PSD pair; the
    monotonicity of the negativity only needs the trace form.
    """
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        n = (4, 9)[i % 2]
        a, b = _random_psd(n, rng), _random_psd(n, rng)
        pos, neg = _parts_matrix(a - b)
        for lhs, rhs in ((pos, a), (neg, b)):
            r = float(np.trace(lhs).real - np.trace(rhs).real)
            t.check(r <= 1e-9 * max(1.0, np.abs(rhs).max()), max(r, 0.0))
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        ch = random_local_channel(2, int(rng.integers(1, 5)), rng, side=int(rng.integers(0, 2)))
        out_neg = _neg_matrix(_pt_matrix(ch.apply_matrix(rho.matrix), rho.dims))
        mapped = ch.apply_gamma_matrix(_neg_matrix(_pt_matrix(rho.matrix, rho.dims)))
        r = float(np.trace(out_neg).real - np.trace(mapped).real)
        t.check(r <= 1e-9, max(r, 0.0))
    return SuiteReport("opineq_trace", trials, t.violations, t.max_residual, seed)


def suite_monotonicity(seed: int, trials: int) -> SuiteReport:
    """``N(E(rho)) <= N(rho)`` for random local channels on random two-qubit states."""
    t = _Tally()
    for rng in trial_rngs(seed, trials):
        rho = random_density(4, int(rng.integers(1, 5)), rng)
        ch = random_local_channel(2, int(rng.integers(1, 5)), rng, side=int(rng.integers(0, 2)))
        diff = negativity(ch.apply(rho)) - negativity(rho)
        t.check(diff <= 1e-9, max(diff, 0.0))
    return SuiteReport("monotonicity", trials, t.violations, t.max_residual, seed)


def suite_support_oracle(seed: int, trials: int, grid_step: float = 1e-5) -> SuiteReport:
    """Closed-form support functions against :func:`brute_force_support`.

    ``trials`` cases per family (Werner, isotropic, generalized Werner), with
    ``d`` in 2..4 and ``c`` drawn past each family's largest negativity.
    """
    t = _Tally()
    rngs = trial_rngs(seed, 3 * trials)
    for k, rng in enumerate(rngs):
        family = ("werner", "isotropic", "generalized_werner")[k % 3]
        d = int(rng.integers(2, 5))
        if family == "werner":
            params = {"alpha": float(rng.uniform(-1, 1))}
            tau = werner(d, params["alpha"])
            c = float(rng.uniform(0, 0.6))
        elif family == "isotropic":
            params = {"beta": float(rng.uniform(0, 1))}
            tau = isotropic(d, params["beta"])
            c = float(rng.uniform(0, (d - 1) / 2 * 1.2))
        else:
            a, b = rng.dirichlet(np.ones(3))[:2]
            params = {"a": float(a), "b": float(b)}
            tau = generalized_werner(d, a, b)
            c = float(rng.uniform(0, 1.2 / d))
        r = abs(brute_force_support(tau, c, family, grid_step) - closed_form_support(family, d, params, c))
        t.check(r <= 1e-4, r)
    return SuiteReport("support_oracle", 3 * trials, t.violations, t.max_residual, seed)


def _doubly_stochastic(d: int, rng) -> np.ndarray:
    k = int(rng.integers(1, d + 2))
    w = rng.dirichlet(np.ones(k))
    return sum(wi * np.eye(d)[rng.permutation(d)] for wi in w)


def suite_majorization_f_l(seed: int, trials: int) -> SuiteReport:
    """Majorization agrees with the tail-sum monotones ``f_l`` (l = 2..d).

    Half the pairs are built as ``psi = D phi`` with ``D`` doubly stochastic,
    so that ``psi -> phi`` is known to be possible; those pairs must also be
    reported convertible.
    """
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        d = int(rng.integers(2, 6))
        phi = random_schmidt(d, rng)
        psi = np.sort(_doubly_stochastic(d, rng) @ phi)[::-1] if i % 2 == 0 else random_schmidt(d, rng)
        conv = majorization_convertible(psi, phi)
        f_ok = all(f_l_monotone(psi, l) >= f_l_monotone(phi, l) - 1e-10 for l in range(2, d + 1))
        t.check(conv == f_ok)
        if i % 2 == 0:
            t.check(conv)
    return SuiteReport("majorization_f_l", trials, t.violations, 0.0, seed)


def _random_pair(rng, d: int | None = None):
    d = int(rng.integers(2, 5)) if d is None else d
    rho = random_density(d * d, int(rng.integers(1, d * d + 1)), rng)
    while negativity(rho) <= 1e-6:
        rho = random_density(d * d, int(rng.integers(1, 3)), rng)
    sigma = random_density(d * d, int(rng.integers(1, d * d + 1)), rng)
    return rho, sigma


def suite_gwer_vertices(seed: int, trials: int) -> SuiteReport:
    """Vertex witnesses of the generalized-Werner family.

    Two checks per pair: each vertex value matches a direct evaluation
    ``h(rho_ab) N(rho) - Tr[rho_ab sigma^{Gamma-}]`` built from explicit
    matrices, and at every vertex other than L a negative value implies
    ``W_N < 0``.
    """
    t = _Tally()
    for rng in trial_rngs(seed, trials):
        rho, sigma = _random_pair(rng)
        d = sigma.dims[0]
        vals = witness_gwer_vertices(rho, sigma)
        src = negativity_profile(rho)
        s = _neg_matrix(_pt_matrix(sigma.matrix, sigma.dims))
        c = min(1.0 / d, src.N_tilde)
        w_n = src.N - float(np.trace(s).real)
        for label, (a, b) in gwer_vertex_points(d).items():
            direct = h_generalized_werner(d, a, b, c) * src.N - float(
                np.real(np.trace(generalized_werner(d, a, b).matrix @ s)))
            r = abs(direct - vals[label])
            t.check(r <= 1e-10, r)
            if label != "L" and vals[label] < -FIRE_TOL:
                t.check(w_n < -FIRE_TOL)
    return SuiteReport("gwer_vertices", trials, t.violations, t.max_residual, seed)


def suite_lu_orbit(seed: int, trials: int, cfg: LocalUnitarySearchConfig | None = None) -> SuiteReport:
    """Local-unitary search: never above the unrotated value, unitary outputs,
    and the same value on a randomly rotated copy of the target."""
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        d = (2, 3)[i % 2]
        rho, sigma = _random_pair(rng, d)
        base = ("W_gamma", "W_iso", "W_wer", "W_2q" if d == 2 else "W_gamma")[i % 4]
        c = cfg or LocalUnitarySearchConfig(seed=int(rng.integers(2**32)))
        res = witness_lu_min(rho, sigma, base, c)
        t.check(res.value <= base_value(base, rho, sigma) + 1e-12)
        for u in (res.U, res.V):
            t.check(float(np.max(np.abs(u.conj().T @ u - np.eye(d)))) <= 1e-9)
        moved = rotate_local(sigma, random_unitary(d, rng), random_unitary(d, rng))
        r = abs(witness_lu_min(rho, moved, base, c).value - res.value)
        t.check(r <= 1e-6, r)
    return SuiteReport("lu_orbit", trials, t.violations, t.max_residual, seed)


def suite_blindness(seed: int, trials: int) -> SuiteReport:
    """``W'_wer`` is never negative on Werner targets, ``W'_iso`` never on isotropic ones."""
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        d = int(rng.integers(2, 5))
        rho, _ = _random_pair(rng, int(rng.integers(2, 5)))
        rep = (witness_gamma(rho, werner(d, rng.uniform(-1, 1))) if i % 2 == 0
               else witness_gamma(rho, isotropic(d, rng.uniform(0, 1))))
        v = rep.W_wer_prime if i % 2 == 0 else rep.W_iso_prime
        t.check(v >= -FIRE_TOL, max(-v, 0.0))
    return SuiteReport("blindness", trials, t.violations, t.max_residual, seed)


def suite_trigger_bounds(seed: int, trials: int) -> SuiteReport:
    """If ``W_iso`` fires with ``W_N`` silent then ``N(rho_tilde) < (d-1)/2``;
    if ``W_wer`` fires with ``W_N`` silent then ``N(rho_tilde) < 1/d``.

    Targets are mixed toward the identity until ``N(sigma) <= N(rho)`` so that
    ``W_N`` is silent and the implication is actually exercised.
    """
    t = _Tally()
    for rng in trial_rngs(seed, trials):
        rho, sigma = _random_pair(rng)
        d = sigma.dims[0]
        sigma, _ = random_state_with_negativity_cap(sigma, negativity(rho) * rng.uniform(0.5, 1.0))
        rep = witness_gamma(rho, sigma)
        if rep.verdicts["W_N"] is Verdict.SILENT:
            if rep.verdicts["W_iso"] is Verdict.FIRED:
                t.check(rep.N_tilde_rho < (d - 1) / 2)
            if rep.verdicts["W_wer"] is Verdict.FIRED:
                t.check(rep.N_tilde_rho < 1.0 / d)
    return SuiteReport("trigger_bounds", trials, t.violations, t.max_residual, seed)


def suite_abstract_claim(seed: int, trials: int) -> SuiteReport:
    """Pure two-qubit ``rho`` with ``N < 1/3`` against the Werner state of equal
    negativity in ``d = 3, 4, 5`` (whenever ``d N <= 1``): ``W'_iso < 0``."""
    t = _Tally()
    for rng in trial_rngs(seed, trials):
        n_target = rng.uniform(1e-3, 1.0 / 3)
        l0 = 0.5 + np.sqrt(0.25 - n_target**2)
        rho = pure_schmidt([l0, 1 - l0])
        n_rho = negativity(rho)
        for d in (3, 4, 5):
            if d * n_rho > 1:
                continue
            rep = witness_gamma(rho, werner(d, -d * n_rho))
            t.check(rep.W_iso_prime < 0, max(rep.W_iso_prime, 0.0))
    return SuiteReport("abstract_claim", trials, t.violations, t.max_residual, seed)


def _all_no_go_values(rho, sigma) -> list[float]:
    rep = witness_gamma(rho, sigma)
    vals = [rep.W_N, rep.W_gamma, rep.W_wer, rep.W_iso]
    if rep.W_C is not None:
        vals.append(rep.W_C)
    if rep.W_wer_prime is not None:
        vals += [rep.W_wer_prime, rep.W_iso_prime]
        if rep.W_2q is not None:
            vals.append(rep.W_2q)
        vals += list(witness_gwer_vertices(rho, sigma).values())
    return vals


def suite_soundness(seed: int, trials: int) -> SuiteReport:
    """No witness may fire on a conversion known to be possible.

    Even trials: pure pairs ``psi -> phi`` with ``psi = D phi`` (majorization
    holds), ``d <= 4``. Odd trials: ``rho -> E(rho)`` for a random local channel.
    """
    t = _Tally()
    for i, rng in enumerate(trial_rngs(seed, trials)):
        d = int(rng.integers(2, 5))
        if i % 2 == 0:
            phi = random_schmidt(d, rng)
            psi = np.sort(_doubly_stochastic(d, rng) @ phi)[::-1]
            if not majorization_convertible(psi, phi):
                continue
            rho, sigma = pure_schmidt(psi / psi.sum()), pure_schmidt(phi)
        else:
            rho, _ = _random_pair(rng, d)
            ch = random_local_channel(d, int(rng.integers(1, 4)), rng, side=int(rng.integers(0, 2)))
            sigma = ch.apply(rho)
        if negativity(rho) <= PPT_TOL:
            continue
        worst = min(_all_no_go_values(rho, sigma))
        t.check(worst >= -FIRE_TOL, max(-worst, 0.0))
    return SuiteReport("soundness", trials, t.violations, t.max_residual, seed)


SUITES: dict[str, Callable[[int, int], SuiteReport]] = {
    "opineq": verify_operator_inequalities,
    "opineq_trace": verify_trace_inequalities,
    "monotonicity": suite_monotonicity,
    "support_oracle": suite_support_oracle,
    "majorization_f_l": suite_majorization_f_l,
    "gwer_vertices": suite_gwer_vertices,
    "lu_orbit": suite_lu_orbit,
    "blindness": suite_blindness,
    "trigger_bounds": suite_trigger_bounds,
    "abstract_claim": suite_abstract_claim,
    "soundness": suite_soundness,
}


def run_suite(name: str, seed: int, trials: int) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    if trials < 1:
        raise InvalidParamError(f"trials must be >= 1, got {trials}")
    return SUITES[name](seed, trials)
