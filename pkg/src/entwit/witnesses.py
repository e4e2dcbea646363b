"""No-go conversion witnesses built from the negativity.

A witness ``W(rho, sigma) < 0`` certifies that ``sigma`` cannot be reached
from ``rho`` by PPT (hence LOCC) operations. Non-negative values carry no
claim.

Cross-dimension pairs are allowed: the dimension ``d`` entering ``F_-`` and
``|Phi>`` is the target's local dimension, while the source contributes only
``N(rho)`` and ``N(rho_tilde)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .exceptions import InvalidDimsError, PPTInputError, WitnessConfigError
from .linalg import HermitianOperator, _neg_matrix, _pt_matrix
from .measures import PPT_TOL, NegativityProfile, concurrence, negativity, negativity_profile
from .states import flip_parts, phi_vector
from .support import h_generalized_werner
from .unitary import n_params, unitary_from_params

FIRE_TOL = 1e-9


class Verdict(str, enum.Enum):
    FIRED = "fired"
    SILENT = "silent"


def verdict(value: float | None, tol: float = FIRE_TOL) -> Verdict:
    """``FIRED`` iff ``value < -tol``; undefined values are silent."""
    if value is None:
        return Verdict.SILENT
    return Verdict.FIRED if value < -tol else Verdict.SILENT


@dataclass(frozen=True)
class TargetProfile:
    """Overlaps of the target's ``sigma^{Gamma-}`` with the fixed symmetric operators."""

    d: int
    N: float
    tr_p: float
    tr_p_plus: float
    tr_p_minus: float
    phi_overlap: float

    @property
    def tr_f_minus(self) -> float:
        return self.tr_p_minus


def _square_d(op: HermitianOperator) -> int:
    d_a, d_b = op.dims
    if d_a != d_b:
        raise InvalidDimsError(f"target must be a d x d system, got dims {op.dims}")
    return d_a


def _target_from_matrix(s: np.ndarray, d: int) -> TargetProfile:
    p, pp, pm = flip_parts(d)
    phi = phi_vector(d)
    return TargetProfile(
        d=d,
        N=float(np.trace(s).real),
        tr_p=p.overlap(s),
        tr_p_plus=pp.overlap(s),
        tr_p_minus=pm.overlap(s),
        phi_overlap=float(np.vdot(phi, s @ phi).real),
    )


def target_profile(sigma: HermitianOperator) -> TargetProfile:
    d = _square_d(sigma)
    return _target_from_matrix(_neg_matrix(_pt_matrix(sigma.matrix, sigma.dims)), d)


def _require_npt(src: NegativityProfile, tol: float) -> None:
    if src.N <= tol:
        raise PPTInputError(f"source negativity {src.N:.3e} <= {tol:.1e}; sub-witness undefined")


def wer_prime_from_profiles(src: NegativityProfile, tgt: TargetProfile) -> float:
    return (tgt.d * src.N_tilde + 1) / 2 * src.N - tgt.tr_f_minus


def iso_prime_from_profiles(src: NegativityProfile, tgt: TargetProfile) -> float:
    return (2 * src.N_tilde + 1) / tgt.d * src.N - tgt.phi_overlap


def witness_N(rho: HermitianOperator, sigma: HermitianOperator) -> float:
    """Difference of negativities ``N(rho) - N(sigma)``."""
    return negativity(rho) - negativity(sigma)


def witness_wer_prime(rho, sigma, tol: float = PPT_TOL) -> float:
    """``(d N(rho_tilde) + 1)/2 * N(rho) - Tr[F_- sigma^{Gamma-}]``.

    Equivalently ``(d Tr[rho^{Gamma-Gamma-}] + N(rho)) / 2 - Tr[F_- sigma^{Gamma-}]``.
    """
    src = negativity_profile(rho)
    _require_npt(src, tol)
    return wer_prime_from_profiles(src, target_profile(sigma))


def witness_iso_prime(rho, sigma, tol: float = PPT_TOL) -> float:
    """``(2 N(rho_tilde) + 1)/d * N(rho) - <Phi| sigma^{Gamma-} |Phi>``."""
    src = negativity_profile(rho)
    _require_npt(src, tol)
    return iso_prime_from_profiles(src, target_profile(sigma))


def witness_two_qubit(rho, sigma, tol: float = PPT_TOL) -> float:
    """``Tr[rho^{Gamma-Gamma-}] + N(rho)/2 - Tr[F_- sigma^{Gamma-}]`` for two qubits."""
    for x in (rho, sigma):
        if tuple(x.dims) != (2, 2):
            raise InvalidDimsError(f"two-qubit witness needs dims (2, 2), got {x.dims}")
    src = negativity_profile(rho)
    _require_npt(src, tol)
    return src.gamma_minus_trace_sq + 0.5 * src.N - target_profile(sigma).tr_f_minus


@dataclass
class WitnessReport:
    """All witness values for one ``(rho, sigma)`` pair.

    Sub-witness fields are ``None`` when the source is PPT. ``W_wer`` scales
    ``W_wer_prime`` by ``2/(d(d-1))``; ``W_wer_alt`` uses ``2d/(d+1)`` instead.
    Both factors are positive, so the verdicts agree.
    """

    N_rho: float
    N_sigma: float
    N_tilde_rho: float | None
    W_N: float
    W_wer_prime: float | None
    W_iso_prime: float | None
    W_wer: float
    W_wer_alt: float
    W_iso: float
    W_gamma: float
    W_2q: float | None = None
    C_rho: float | None = None
    C_sigma: float | None = None
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def W_C(self) -> float | None:
        if self.C_rho is None or self.C_sigma is None:
            return None
        return self.C_rho - self.C_sigma

    @property
    def any_fired(self) -> bool:
        return any(v is Verdict.FIRED for v in self.verdicts.values())

    def values(self) -> dict:
        keys = ("N_rho", "N_sigma", "N_tilde_rho", "W_N", "W_wer_prime", "W_iso_prime",
                "W_wer", "W_wer_alt", "W_iso", "W_gamma", "W_2q", "C_rho", "C_sigma")
        return {k: getattr(self, k) for k in keys}


def report_from_profiles(src: NegativityProfile, tgt: TargetProfile | None, n_sigma: float,
                         two_qubit: bool = False, c_rho=None, c_sigma=None,
                         fire_tol: float = FIRE_TOL, ppt_tol: float = PPT_TOL) -> WitnessReport:
    """Assemble a :class:`WitnessReport` from precomputed source/target scalars."""
    w_n = src.N - n_sigma
    notes = []
    if src.N > ppt_tol and tgt is not None:
        d = tgt.d
        wer = wer_prime_from_profiles(src, tgt)
        iso = iso_prime_from_profiles(src, tgt)
        w_wer = min(w_n, 2.0 / (d * (d - 1)) * wer)
        w_wer_alt = min(w_n, 2.0 * d / (d + 1) * wer)
        w_iso = min(w_n, iso)
        w_gamma = min(w_n, wer, iso)
        n_tilde = src.N_tilde
        w_2q = src.gamma_minus_trace_sq + 0.5 * src.N - tgt.tr_f_minus if two_qubit else None
    else:
        wer = iso = n_tilde = w_2q = None
        w_wer = w_wer_alt = w_iso = w_gamma = w_n
        if src.N <= ppt_tol:
            notes.append("source is PPT: rho_tilde undefined, verdict rests on W_N")
        else:
            notes.append("target is not a d x d system: sub-witnesses skipped")
    rep = WitnessReport(src.N, n_sigma, n_tilde, w_n, wer, iso, w_wer, w_wer_alt, w_iso,
                        w_gamma, w_2q, c_rho, c_sigma, notes=notes)
    fired = {k: verdict(v, fire_tol) for k, v in (
        ("W_N", w_n), ("W_wer_prime", wer), ("W_iso_prime", iso), ("W_wer", w_wer),
        ("W_wer_alt", w_wer_alt), ("W_iso", w_iso), ("W_gamma", w_gamma))}
    if two_qubit:
        fired["W_2q"] = verdict(w_2q, fire_tol)
    if rep.W_C is not None:
        fired["W_C"] = verdict(rep.W_C, fire_tol)
    rep.verdicts = fired
    return rep


def witness_gamma(rho: HermitianOperator, sigma: HermitianOperator,
                  fire_tol: float = FIRE_TOL, ppt_tol: float = PPT_TOL) -> WitnessReport:
    """Evaluate every witness on ``(rho, sigma)``; ``W_gamma = min(W_N, W'_wer, W'_iso)``."""
    src = negativity_profile(rho, ppt_tol)
    square = sigma.dims[0] == sigma.dims[1]
    tgt = target_profile(sigma) if square else None
    n_sigma = tgt.N if tgt is not None else negativity(sigma)
    two_qubit = tuple(rho.dims) == (2, 2) and tuple(sigma.dims) == (2, 2)
    c_rho = concurrence(rho) if two_qubit else None
    c_sigma = concurrence(sigma) if two_qubit else None
    return report_from_profiles(src, tgt, n_sigma, two_qubit and src.N > ppt_tol, c_rho, c_sigma,
                                fire_tol, ppt_tol)


# --------------------------------------------------------------------------- generalized Werner

GWER_VERTEX_LABELS = ("G", "H", "J", "K", "L", "M", "N")


def gwer_vertex_points(d: int) -> dict[str, tuple[float, float]]:
    """``(a, b)`` coordinates of the linearity-region vertices G..N for ``rho_ab``."""
    w = (d - 1) / (d + 1)
    m = (d - 1) / (2 * d)
    return {"G": (0.0, 0.0), "H": (0.0, w), "J": (0.0, 1.0), "K": (w, 0.0),
            "L": (1.0, 0.0), "M": (m, m), "N": (0.5, 0.5)}


def gwer_vertex_values(src: NegativityProfile, tgt: TargetProfile) -> dict[str, float]:
    """``h(rho_ab) N(rho) - Tr[rho_ab sigma^{Gamma-}]`` at each vertex.

    The negativity cap is ``c = min(1/d, N(rho_tilde))``.
    """
    d = tgt.d
    c = min(1.0 / d, src.N_tilde)
    k = 2.0 / (d * (d - 1))
    out = {}
    for label, (a, b) in gwer_vertex_points(d).items():
        overlap = (1 - a - b) / d * tgt.tr_p + a * k * tgt.tr_p_minus + b * k * tgt.tr_p_plus
        out[label] = h_generalized_werner(d, a, b, c) * src.N - overlap
    return out


def witness_gwer_vertices(rho, sigma, tol: float = PPT_TOL) -> dict[str, float]:
    """Generalized-Werner witnesses ``W_{rho_ab}`` at the vertices G..N (ordered)."""
    src = negativity_profile(rho)
    _require_npt(src, tol)
    return gwer_vertex_values(src, target_profile(sigma))


# --------------------------------------------------------------------------- local-unitary search

LU_BASES = ("W_wer", "W_iso", "W_gamma", "W_2q")


@dataclass(frozen=True)
class LocalUnitarySearchConfig:
    restarts: int = 4
    max_iters: int = 60
    seed: int = 0
    step_scale: float = 0.5

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1 or self.step_scale <= 0:
            raise WitnessConfigError(f"invalid search configuration {self}")


class LUResult(NamedTuple):
    value: float
    U: np.ndarray
    V: np.ndarray


def rotate_local(sigma: HermitianOperator, u: np.ndarray, v: np.ndarray) -> HermitianOperator:
    """``(U x V) sigma (U x V)^dagger``."""
    return sigma.conjugate_by(np.kron(u, v))


def _base_components(base: str, d: int) -> list[tuple[str, float]]:
    # (sub-witness, positive prefactor) pairs entering min{W_N, ...}
    if base == "W_wer":
        return [("wer", 2.0 / (d * (d - 1)))]
    if base == "W_iso":
        return [("iso", 1.0)]
    if base == "W_gamma":
        return [("wer", 1.0), ("iso", 1.0)]
    return [("wer", 1.0)]


def base_value(base: str, rho, sigma, tol: float = PPT_TOL) -> float:
    """Evaluate one of :data:`LU_BASES` on the unrotated pair."""
    rep = witness_gamma(rho, sigma, ppt_tol=tol)
    if base == "W_2q":
        return witness_two_qubit(rho, sigma, tol)
    return getattr(rep, base)


def _maximize_overlap(x: np.ndarray, s: np.ndarray, d: int, cfg: LocalUnitarySearchConfig,
                      rng: np.random.Generator) -> tuple[float, np.ndarray]:
    """Maximize ``Tr[X (I x W) S (I x W)^dagger]`` over one-sided unitaries ``W``.

    Restarted coordinate search with step halving, each restart polished by
    BFGS. Restart 0 starts at ``W = I``. Returns the best value and ``W``.
    """
    m = n_params(d)
    # Tr[X K S K^dag] with K = I x W, reshaped so W acts on the last index
    x4 = x.reshape(d, d, d, d)
    s4 = s.reshape(d, d, d, d)

    def objective(p):
        w = unitary_from_params(p, d)
        ks = np.einsum("bj,ajck,dk->abcd", w, s4, w.conj())
        return -float(np.einsum("abcd,cdab->", x4, ks).real)

    best_p = np.zeros(m)
    best_f = objective(best_p)
    for r in range(cfg.restarts):
        p = np.zeros(m) if r == 0 else rng.uniform(-np.pi, np.pi, m)
        f = objective(p)
        step = cfg.step_scale
        for _ in range(cfg.max_iters):
            improved = False
            for i in range(m):
                for sgn in (1.0, -1.0):
                    q = p.copy()
                    q[i] += sgn * step
                    fq = objective(q)
                    if fq < f - 1e-15:
                        p, f, improved = q, fq, True
                        break
            if not improved:
                step *= 0.5
                if step < 0.05:
                    break
        res = minimize(objective, p, method="BFGS", options={"gtol": 1e-10})
        if res.fun < f:
            p, f = res.x, float(res.fun)
        if f < best_f:
            best_p, best_f = p, f
    return -best_f, unitary_from_params(best_p, d)


def witness_lu_min(rho: HermitianOperator, sigma: HermitianOperator, base: str = "W_gamma",
                   cfg: LocalUnitarySearchConfig | None = None, tol: float = PPT_TOL) -> LUResult:
    """Minimize a witness over the local-unitary orbit of the target.

    ``(U x V) sigma (U x V)^dagger`` has negative partial-transpose part
    ``(U x conj V) sigma^{Gamma-} (U x conj V)^dagger``. Both ``F_-`` and
    ``|Phi><Phi|`` have orbits under ``U x W`` that are already swept out by
    ``I x W``, so a single unitary on the second factor suffices and the
    returned ``U`` is the identity. Each sub-witness is minimized on its own:
    ``W_N`` is orbit invariant and the minimum of a minimum is the minimum of
    the individual minima. The identity is always the first restart, so the
    result never exceeds the unrotated value.

    Returns
    -------
    LUResult
        ``value`` and unitaries ``U, V`` with
        ``value = base(rho, (U x V) sigma (U x V)^dagger)``.
    """
    if base not in LU_BASES:
        raise WitnessConfigError(f"unknown base witness {base!r}; expected one of {LU_BASES}")
    cfg = cfg or LocalUnitarySearchConfig()
    d = _square_d(sigma)
    if base == "W_2q" and (tuple(rho.dims) != (2, 2) or d != 2):
        raise WitnessConfigError("W_2q requires two-qubit source and target")
    src = negativity_profile(rho, tol)
    eye = np.eye(d, dtype=complex)
    s = _neg_matrix(_pt_matrix(sigma.matrix, sigma.dims))
    n_sigma = float(np.trace(s).real)
    if src.N <= tol:
        if base == "W_2q":
            raise PPTInputError("W_2q undefined for a PPT source")
        return LUResult(src.N - n_sigma, eye, eye.copy())

    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    phi = phi_vector(d)
    ops = {"wer": flip_parts(d)[2].matrix, "iso": np.outer(phi, phi).astype(complex)}
    consts = {"wer": (d * src.N_tilde + 1) / 2 * src.N, "iso": (2 * src.N_tilde + 1) / d * src.N}

    candidates = [eye]
    for name, _ in _base_components(base, d):
        candidates.append(_maximize_overlap(ops[name], s, d, cfg, rng)[1])

    def evaluate(w):
        k = np.kron(eye, w)
        tgt = _target_from_matrix(k @ s @ k.conj().T, d)
        vals = [] if base == "W_2q" else [src.N - n_sigma]
        for name, factor in _base_components(base, d):
            overlap = tgt.tr_p_minus if name == "wer" else tgt.phi_overlap
            vals.append(factor * (consts[name] - overlap))
        return min(vals)

    value, i = min((evaluate(w), i) for i, w in enumerate(candidates))
    return LUResult(float(value), eye, candidates[i].conj())
