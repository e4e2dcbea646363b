"""Entanglement monotones and pure-state convertibility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidDimsError, InvalidParamError, NotPureError, PPTInputError
from .linalg import BipartiteState, HermitianOperator, _clamped_eigh, _neg_matrix, _pt_matrix

# negativities at or below this are treated as exactly zero (PPT)
PPT_TOL = 1e-12
PURE_TOL = 1e-9
MAJORIZATION_TOL = 1e-10

_SY_SY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def gamma_minus(rho: HermitianOperator) -> HermitianOperator:
    """``rho^{Gamma-}``, the negative part of the partial transpose."""
    return HermitianOperator._wrap(_neg_matrix(_pt_matrix(rho.matrix, rho.dims)), rho.dims, rho.herm_tol)


def negativity(rho: HermitianOperator) -> float:
    """``Tr[rho^{Gamma-}]``.

    Linear under positive rescaling of ``rho``; for unit-trace states this is
    ``(||rho^Gamma||_1 - 1) / 2``.
    """
    w, _ = _clamped_eigh(_pt_matrix(rho.matrix, rho.dims))
    return float(-w[w < 0].sum())


def rho_tilde(rho: HermitianOperator, tol: float = PPT_TOL) -> BipartiteState:
    """Normalized negative part of the partial transpose, ``rho^{Gamma-} / N(rho)``.

    Raises
    ------
    PPTInputError
        If ``N(rho) <= tol``.
    """
    s = _neg_matrix(_pt_matrix(rho.matrix, rho.dims))
    n = float(np.trace(s).real)
    if n <= tol:
        raise PPTInputError(f"negativity {n:.3e} <= {tol:.1e}: rho_tilde undefined for PPT input")
    return BipartiteState._wrap(s / n, rho.dims, rho.herm_tol)


@dataclass(frozen=True)
class NegativityProfile:
    """Scalars a source state contributes to every witness.

    ``gamma_minus_trace_sq`` is ``Tr[rho^{Gamma- Gamma-}]``, the negativity of the
    unnormalized operator ``rho^{Gamma-}``; it equals ``N * N_tilde``.
    """

    N: float
    N_tilde: float
    gamma_minus_trace_sq: float
    tilde_defined: bool


def negativity_profile(rho: HermitianOperator, tol: float = PPT_TOL) -> NegativityProfile:
    s = _neg_matrix(_pt_matrix(rho.matrix, rho.dims))
    n = float(np.trace(s).real)
    if n <= tol:
        return NegativityProfile(max(n, 0.0), 0.0, 0.0, False)
    w, _ = _clamped_eigh(_pt_matrix(s, rho.dims))
    gg = float(-w[w < 0].sum())
    return NegativityProfile(n, gg / n, gg, True)


def _reduced_a(m: np.ndarray, dims) -> np.ndarray:
    d_a, d_b = dims
    return np.einsum("ijkj->ik", m.reshape(d_a, d_b, d_a, d_b))


def schmidt_coefficients(pure: HermitianOperator) -> np.ndarray:
    """Descending Schmidt coefficients of a pure bipartite state.

    Computed as the spectrum of the reduced state on subsystem A.

    Raises
    ------
    NotPureError
        If the largest eigenvalue of the normalized input is below ``1 - 1e-9``.
    """
    m = pure.matrix / pure.trace()
    top = float(np.linalg.eigvalsh(m)[-1])
    if top < 1.0 - PURE_TOL:
        raise NotPureError(f"largest eigenvalue {top:.12g} < 1 - {PURE_TOL:g}")
    lam = np.linalg.eigvalsh(_reduced_a(m, pure.dims))[::-1]
    lam = np.clip(lam.real, 0.0, None)
    return lam / lam.sum()


def _schmidt_vector(x) -> np.ndarray:
    if isinstance(x, HermitianOperator):
        return schmidt_coefficients(x)
    lam = np.sort(np.asarray(x, dtype=float))[::-1]
    return lam


def _pad(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = max(a.size, b.size)
    return np.pad(a, (0, n - a.size)), np.pad(b, (0, n - b.size))


def majorization_convertible(psi, phi, tol: float = MAJORIZATION_TOL) -> bool:
    """Pure-state LOCC convertibility ``psi -> phi`` via majorization.

    True iff every partial sum of the descending Schmidt vector of ``psi`` is at
    most the matching partial sum for ``phi``. Accepts states or raw Schmidt
    vectors; the shorter vector is zero-padded.
    """
    a, b = _pad(_schmidt_vector(psi), _schmidt_vector(phi))
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + tol))


def f_l_monotone(psi, l: int) -> float:
    """Tail sum ``sum_{i >= l} lambda_i`` of descending Schmidt coefficients (1-based ``l``)."""
    lam = _schmidt_vector(psi)
    if not 2 <= l <= lam.size:
        raise InvalidParamError(f"l must lie in [2, {lam.size}], got {l}")
    return float(lam[l - 1:].sum())


def _require_two_qubit(rho: HermitianOperator) -> None:
    if tuple(rho.dims) != (2, 2):
        raise InvalidDimsError(f"two-qubit input required, got dims {rho.dims}")


def _psd_factor(m: np.ndarray) -> np.ndarray:
    # X with X X^dagger = m; eigenvalues below 1e-14 * max are dropped so that
    # a rank-deficient input does not pick up sqrt(eps)-sized columns
    w, v = np.linalg.eigh(m)
    w = np.where(w > 1e-14 * max(w[-1], 0.0), w, 0.0)
    return v * np.sqrt(w)


def concurrence(rho: HermitianOperator) -> float:
    """Wootters concurrence ``max(0, s1 - s2 - s3 - s4)`` of a two-qubit state.

    ``s_i`` are the square roots (descending) of the eigenvalues of
    ``rho (sy x sy) conj(rho) (sy x sy)``. With ``rho = X X^dagger`` they are
    the singular values of ``X^T (sy x sy) X``, which is how they are computed
    here (singular values of a 4x4 matrix are accurate to machine precision).
    """
    _require_two_qubit(rho)
    x = _psd_factor(rho.matrix)
    s = np.linalg.svd(x.T @ _SY_SY @ x, compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def entanglement_of_formation(rho: HermitianOperator) -> float:
    """Two-qubit entanglement of formation ``H((1 + sqrt(1 - C^2)) / 2)``."""
    c = concurrence(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)
