"""Unitary matrices from real angle vectors (complex Givens rotations and phases)."""

from __future__ import annotations

import numpy as np


def n_params(d: int) -> int:
    """Angles needed for one ``d x d`` unitary: two per rotation plane plus ``d`` phases."""
    return d * d


def unitary_from_params(params, d: int) -> np.ndarray:
    """Build ``U = (prod_{j<k} G_jk(theta, phi)) diag(exp(i delta))``.

    ``params`` holds ``theta_jk, phi_jk`` pairs for the ``d(d-1)/2`` planes in
    row-major ``(j, k)`` order, followed by the ``d`` phases. All-zero angles
    give the identity.
    """
    p = np.asarray(params, dtype=float)
    if p.size != d * d:
        raise ValueError(f"expected {d * d} angles for d={d}, got {p.size}")
    u = np.diag(np.exp(1j * p[d * (d - 1):]))
    # apply rotations right-to-left so the product reads in (j, k) order
    planes = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for n, (j, k) in reversed(list(enumerate(planes))):
        theta, phi = p[2 * n], p[2 * n + 1]
        c, s = np.cos(theta), np.sin(theta)
        e = np.exp(1j * phi)
        rj, rk = u[j].copy(), u[k].copy()
        u[j] = c * rj - e * s * rk
        u[k] = np.conj(e) * s * rj + c * rk
    return u


def unitarity_error(u: np.ndarray) -> float:
    """``max |U^dagger U - I|`` entrywise."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
