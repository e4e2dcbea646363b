"""Dense Hermitian linear algebra on bipartite operators.

Operators live on C^{d_A} (x) C^{d_B} in the product basis |i>|j> with linear
index ``i * d_B + j``. The partial transpose always acts on the second factor.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import EigensolverError, InvalidDimsError, NotAStateError, NotHermitianError

HERM_TOL = 1e-10
EIG_TOL = 1e-10
# relative threshold below which an eigenvalue is treated as an exact zero
CLAMP_REL = 1e-12


class HermitianOperator:
    """Immutable Hermitian matrix tagged with bipartite dimensions.

    The input is symmetrized as ``(A + A^dagger) / 2`` when its entrywise
    deviation from Hermiticity is at most ``herm_tol``; larger deviations are
    rejected.

    Parameters
    ----------
    entries : array_like
        Square complex matrix of size ``d_A * d_B``.
    dims : tuple of int
        Local dimensions ``(d_A, d_B)``.
    herm_tol : float
        Maximum allowed ``|A_ij - conj(A_ji)|``.
    """

    __slots__ = ("_m", "dims", "herm_tol")

    def __init__(self, entries, dims: tuple[int, int], herm_tol: float = HERM_TOL):
        m = np.array(entries, dtype=complex)
        dims = _check_dims(m, dims)
        dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if dev > herm_tol:
            raise NotHermitianError(f"max |A - A^dagger| = {dev:.3e} exceeds herm_tol = {herm_tol:.1e}")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        self._m = m
        self.dims = dims
        self.herm_tol = herm_tol

    @classmethod
    def _wrap(cls, m: np.ndarray, dims: tuple[int, int], herm_tol: float = HERM_TOL):
        # trusted constructor: m is already Hermitian up to rounding
        obj = object.__new__(cls)
        m = np.array(0.5 * (m + m.conj().T), dtype=complex)
        m.setflags(write=False)
        obj._m = m
        obj.dims = dims
        obj.herm_tol = herm_tol
        return obj

    @property
    def matrix(self) -> np.ndarray:
        """Read-only view of the underlying matrix."""
        return self._m

    @property
    def n(self) -> int:
        return self._m.shape[0]

    def trace(self) -> float:
        return float(np.trace(self._m).real)

    def overlap(self, other: HermitianOperator | np.ndarray) -> float:
        """Hilbert-Schmidt inner product ``Tr[self @ other]`` (real for Hermitian pairs)."""
        b = other.matrix if isinstance(other, HermitianOperator) else np.asarray(other)
        return float(np.einsum("ij,ji->", self._m, b).real)

    def expectation(self, vec) -> float:
        v = np.asarray(vec, dtype=complex)
        return float(np.vdot(v, self._m @ v).real)

    def conjugate_by(self, unitary) -> HermitianOperator:
        """Return ``U A U^dagger``."""
        u = np.asarray(unitary, dtype=complex)
        return HermitianOperator._wrap(u @ self._m @ u.conj().T, self.dims, self.herm_tol)

    def _binop(self, other, op):
        if isinstance(other, HermitianOperator):
            if other.dims != self.dims:
                raise InvalidDimsError(f"dims differ: {self.dims} vs {other.dims}")
            other = other._m
        return HermitianOperator._wrap(op(self._m, other), self.dims, self.herm_tol)

    def __add__(self, other):
        return self._binop(other, np.add)

    def __sub__(self, other):
        return self._binop(other, np.subtract)

    def __mul__(self, k):
        if np.iscomplexobj(k) and np.imag(k) != 0:
            raise TypeError("only real scalars preserve Hermiticity")
        return HermitianOperator._wrap(self._m * float(np.real(k)), self.dims, self.herm_tol)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1.0 / k)

    def __neg__(self):
        return self * -1.0

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, dims={self.dims})"


class BipartiteState(HermitianOperator):
    """Positive semidefinite, unit-trace operator.

    ``normalized=False`` relaxes the unit-trace contract for operators such as
    the negative part of a partial transpose. In that case only positivity is
    checked.
    """

    __slots__ = ("normalized",)

    def __init__(self, entries, dims, herm_tol: float = HERM_TOL, psd_tol: float = 1e-10,
                 normalized: bool = True):
        super().__init__(entries, dims, herm_tol)
        lam_min = float(np.linalg.eigvalsh(self._m)[0])
        if lam_min < -psd_tol:
            raise NotAStateError(f"minimum eigenvalue {lam_min:.3e} below -{psd_tol:.1e}")
        if normalized and abs(self.trace() - 1.0) > 1e-10:
            raise NotAStateError(f"trace {self.trace():.12g} is not 1")
        self.normalized = normalized

    @classmethod
    def _wrap(cls, m, dims, herm_tol=HERM_TOL, normalized=True):
        obj = super()._wrap(m, dims, herm_tol)
        obj.normalized = normalized
        return obj

    @classmethod
    def from_vector(cls, vec, dims) -> BipartiteState:
        v = np.asarray(vec, dtype=complex).ravel()
        v = v / np.linalg.norm(v)
        return cls._wrap(np.outer(v, v.conj()), _check_dims(np.empty((v.size, v.size)), dims))

    def conjugate_by(self, unitary) -> BipartiteState:
        u = np.asarray(unitary, dtype=complex)
        return BipartiteState._wrap(u @ self._m @ u.conj().T, self.dims, self.herm_tol, self.normalized)


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _check_dims(m: np.ndarray, dims) -> tuple[int, int]:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidDimsError(f"expected a square matrix, got shape {m.shape}")
    try:
        d_a, d_b = (int(x) for x in dims)
    except (TypeError, ValueError):
        raise InvalidDimsError(f"dims must be a pair of integers, got {dims!r}") from None
    if d_a < 1 or d_b < 1 or d_a * d_b != m.shape[0]:
        raise InvalidDimsError(f"dims {dims} incompatible with matrix size {m.shape[0]}")
    return d_a, d_b


def as_operator(a, dims=None) -> HermitianOperator:
    """Coerce ``a`` to a :class:`HermitianOperator`; square dims are inferred when omitted."""
    if isinstance(a, HermitianOperator):
        return a
    m = np.asarray(a, dtype=complex)
    if dims is None:
        d = int(round(np.sqrt(m.shape[0])))
        dims = (d, d)
    return HermitianOperator(m, dims)


def _pt_matrix(m: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    d_a, d_b = dims
    return m.reshape(d_a, d_b, d_a, d_b).transpose(0, 3, 2, 1).reshape(d_a * d_b, d_a * d_b)


def partial_transpose(a: HermitianOperator) -> HermitianOperator:
    """Transpose the second tensor factor: ``((i,j),(k,l)) -> ((i,l),(k,j))``.

    Examples
    --------
    >>> import numpy as np
    >>> from entwit.linalg import HermitianOperator, partial_transpose
    >>> partial_transpose(HermitianOperator(np.eye(4), (2, 2))).matrix.real.diagonal()
    array([1., 1., 1., 1.])
    """
    if not isinstance(a, HermitianOperator):
        raise TypeError("partial_transpose expects a HermitianOperator")
    return HermitianOperator._wrap(_pt_matrix(a.matrix, a.dims), a.dims, a.herm_tol)


def _eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigh failed: {exc}") from exc
    return w[::-1], v[:, ::-1]


def eig_hermitian(a: HermitianOperator) -> EigenDecomposition:
    """Full spectral decomposition with the residual checked against ``EIG_TOL``.

    Raises
    ------
    EigensolverError
        If LAPACK fails to converge or the reconstruction residual exceeds
        ``EIG_TOL`` scaled by the operator magnitude.
    """
    m = a.matrix
    w, v = _eigh(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    residual = float(np.max(np.abs((v * w) @ v.conj().T - m))) if m.size else 0.0
    if residual > EIG_TOL * scale:
        raise EigensolverError(f"reconstruction residual {residual:.3e} too large", residual)
    return EigenDecomposition(w, v)


def _clamped_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = _eigh(m)
    cut = CLAMP_REL * (float(np.max(np.abs(m))) if m.size else 0.0)
    w = np.where(np.abs(w) <= cut, 0.0, w)
    return w, v


def _parts_matrix(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = _clamped_eigh(m)
    pos = (v * np.maximum(w, 0.0)) @ v.conj().T
    neg = (v * np.maximum(-w, 0.0)) @ v.conj().T
    return pos, neg


def _neg_matrix(m: np.ndarray) -> np.ndarray:
    w, v = _clamped_eigh(m)
    mask = w < 0
    if not mask.any():
        return np.zeros_like(m)
    vn = v[:, mask]
    return (vn * -w[mask]) @ vn.conj().T


def positive_part(a: HermitianOperator) -> HermitianOperator:
    """``A_+``: the projection of ``A`` onto its positive eigenspace."""
    pos, _ = _parts_matrix(a.matrix)
    return HermitianOperator._wrap(pos, a.dims, a.herm_tol)


def negative_part(a: HermitianOperator) -> HermitianOperator:
    """``A_-`` with ``A = A_+ - A_-``; both parts are positive semidefinite."""
    return HermitianOperator._wrap(_neg_matrix(a.matrix), a.dims, a.herm_tol)


def trace_norm(a: HermitianOperator) -> float:
    """Sum of absolute eigenvalues."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(a.matrix))))


def min_eigenvalue(a: HermitianOperator | np.ndarray) -> float:
    m = a.matrix if isinstance(a, HermitianOperator) else np.asarray(a)
    return float(np.linalg.eigvalsh(m)[0])


def is_psd(a: HermitianOperator, tol: float = 0.0) -> bool:
    """True iff the smallest eigenvalue is at least ``-tol``."""
    return min_eigenvalue(a) >= -tol


def op_leq(a: HermitianOperator, b: HermitianOperator, tol: float = 0.0) -> bool:
    """Loewner order test ``A <= B``, i.e. ``B - A`` is PSD within ``tol``."""
    if a.dims != b.dims or a.n != b.n:
        raise InvalidDimsError(f"dims differ: {a.dims} vs {b.dims}")
    return min_eigenvalue(b.matrix - a.matrix) >= -tol


def kron(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    """Tensor product with dims ``(n_a, n_b)``."""
    return HermitianOperator._wrap(np.kron(a.matrix, b.matrix), (a.n, b.n))


def projector(vec, dims) -> HermitianOperator:
    """Rank-one projector onto the normalized ``vec``."""
    v = np.asarray(vec, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return HermitianOperator._wrap(np.outer(v, v.conj()), _check_dims(np.empty((v.size, v.size)), dims))
