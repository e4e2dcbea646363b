"""Closed-form support functions ``h(tau) = max {Tr[gamma tau] : N(gamma) <= c}``.

For symmetric ``tau`` the maximization reduces to the same symmetric family,
where the overlap is affine in the family parameter. The optimum then sits at
an endpoint (Werner, isotropic) or at a vertex of the feasible polygon
(generalized Werner).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParamError
from .states import StateFamilySpec, _check_d, _check_range


def _check_c(c: float) -> float:
    c = float(c)
    if not c >= 0.0:
        raise InvalidParamError(f"negativity cap c must be >= 0, got {c}")
    return c


def werner_overlap(d: int, alpha: float, beta: float) -> float:
    """``Tr[w_alpha w_beta]`` for two Werner states of the same dimension."""
    return (d * (alpha * beta + 1) - alpha - beta) / (d * (d * d - 1))


def isotropic_overlap(d: int, a: float, beta: float) -> float:
    """``Tr[eta_a eta_beta]``."""
    return (d * d * a * beta - a - beta + 1) / (d * d - 1)


def h_werner(d: int, alpha: float, c: float) -> float:
    """Support function of the negativity-``c`` set at a Werner state ``w_alpha``.

    Three branches: ``alpha < 1/d`` with ``c < 1/d`` (optimizer ``beta = -cd``),
    ``alpha < 1/d`` with ``c >= 1/d`` (``beta = -1``), and ``alpha >= 1/d``
    (``beta = 1``).
    """
    d = _check_d(d)
    alpha = _check_range("alpha", alpha, -1.0, 1.0)
    c = _check_c(c)
    den = d * (d * d - 1)
    if alpha < 1.0 / d:
        if c < 1.0 / d:
            return (d - alpha - c * d * (d * alpha - 1)) / den
        return (1 - alpha) / (d * (d - 1))
    return (alpha + 1) / (d * (d + 1))


def werner_optimizer(d: int, alpha: float, c: float) -> float:
    """Werner parameter ``beta`` of a maximizer for :func:`h_werner`."""
    d = _check_d(d)
    if alpha >= 1.0 / d:
        return 1.0
    return -min(_check_c(c) * d, 1.0)


def h_isotropic(d: int, beta: float, c: float) -> float:
    """Support function at an isotropic state ``eta_beta``.

    Branches: ``beta > 1/d^2`` with ``c < (d-1)/2`` (optimizer fidelity
    ``(2c+1)/d``), ``beta > 1/d^2`` with ``c >= (d-1)/2`` (fidelity 1), and
    ``beta <= 1/d^2`` (fidelity 0).
    """
    d = _check_d(d)
    beta = _check_range("beta", beta, 0.0, 1.0)
    c = _check_c(c)
    if beta > 1.0 / d**2:
        if c < (d - 1) / 2:
            return beta + (1 + 2 * c - d) * (d * d * beta - 1) / (d * (d * d - 1))
        return beta
    return (1 - beta) / (d * d - 1)


def isotropic_optimizer(d: int, beta: float, c: float) -> float:
    d = _check_d(d)
    if beta <= 1.0 / d**2:
        return 0.0
    return min((2 * _check_c(c) + 1) / d, 1.0)


def gwer_coefficients(d: int, a: float, b: float) -> tuple[float, float]:
    """Slopes ``(A, B)`` with ``Tr[rho_ab rho_a'b'] = (a' A + b' B + 1 - a - b) / d``."""
    return (d + 1) / (d - 1) * a + b - 1, (d + 1) / (d - 1) * b + a - 1


def gwer_overlap(d: int, a: float, b: float, a2: float, b2: float) -> float:
    A, B = gwer_coefficients(d, a, b)
    return (a2 * A + b2 * B + 1 - a - b) / d


def gwer_feasible_vertices(d: int, c: float) -> list[tuple[float, float]]:
    """Vertices of ``{(a', b') : N(rho_a'b') <= c}``; ``c`` is capped at ``1/d``.

    At ``c = 1/d`` the polygon is the whole simplex (some vertices coincide).
    """
    d = _check_d(d)
    c = min(_check_c(c), 1.0 / d)
    cd = c * d
    return [
        (0.0, 0.0),
        (0.0, (d * (c + 1) - 1) / d),
        ((1 + cd) / 2, 0.0),
        ((1 + cd) / 2, (1 - cd) / 2),
        ((1 - cd) / 2, (1 + cd) / 2),
    ]


def gwer_optimizer(d: int, a: float, b: float, c: float) -> tuple[float, float]:
    """Maximizing vertex ``(a', b')`` for :func:`h_generalized_werner` (first on ties)."""
    verts = gwer_feasible_vertices(d, c)
    vals = [gwer_overlap(d, a, b, *v) for v in verts]
    return verts[int(np.argmax(vals))]


def h_generalized_werner(d: int, a: float, b: float, c: float) -> float:
    """Support function at ``rho_ab``: the best vertex of the feasible polygon.

    The objective is affine in ``(a', b')``, so enumerating the five polygon
    vertices is exact.
    """
    d = _check_d(d)
    a = _check_range("a", a, 0.0, 1.0)
    b = _check_range("b", b, 0.0, 1.0)
    if a + b > 1.0 + 1e-12:
        raise InvalidParamError(f"a + b = {a + b} exceeds 1")
    return max(gwer_overlap(d, a, b, *v) for v in gwer_feasible_vertices(d, c))


@dataclass(frozen=True)
class SupportQuery:
    tau_spec: StateFamilySpec
    c: float


def support(query: SupportQuery) -> float:
    """Dispatch a :class:`SupportQuery` to the matching closed form."""
    spec, c = query.tau_spec, query.c
    p = spec.params
    if spec.family == "werner":
        return h_werner(spec.d, p["alpha"], c)
    if spec.family == "isotropic":
        return h_isotropic(spec.d, p["beta"], c)
    if spec.family == "generalized_werner":
        return h_generalized_werner(spec.d, p["a"], p["b"], c)
    raise InvalidParamError(f"no closed-form support function for family {spec.family}")
