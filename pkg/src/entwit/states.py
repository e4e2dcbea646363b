"""Named bipartite state families and the textual descriptors used by the CLI.

Descriptor grammar (whitespace separated, ``=`` or ``:`` between key and value)::

    <family> [d=<int>] [<key>=<real> ...]

    werner d=3 alpha=-1
    isotropic d=2 beta=0.95
    pure d=2 l0=0.8 l1=0.2          # Schmidt coefficients, one may be omitted
    gwer d=3 a=0.6 b=0.1            # generalized Werner rho_ab
    rhoq q=0.5
    maxent d=3
    flip_pm d=3 sign=-1             # normalized antisymmetric (or symmetric) projector
    named sigma_phi01

Family aliases: ``pure``/``pure_schmidt``, ``iso``/``isotropic``,
``gwer``/``generalized_werner``, ``rhoq``/``rho_q``, ``maxent``/``max_entangled``,
``named``/``fixed_named``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import InvalidParamError, StateSpecError
from .linalg import BipartiteState, HermitianOperator

_SLACK = 1e-12


def _basis_index(i: int, j: int, d: int) -> int:
    return i * d + j


def _check_d(d) -> int:
    if int(d) != d or d < 2:
        raise InvalidParamError(f"subsystem dimension must be an integer >= 2, got {d}")
    return int(d)


def _check_range(name: str, x: float, lo: float, hi: float) -> float:
    x = float(x)
    if not (lo - _SLACK <= x <= hi + _SLACK) or np.isnan(x):
        raise InvalidParamError(f"{name}={x} outside [{lo}, {hi}]")
    return min(max(x, lo), hi)


@lru_cache(maxsize=None)
def _phi_vector(d: int) -> np.ndarray:
    v = np.zeros(d * d)
    v[[_basis_index(j, j, d) for j in range(d)]] = 1.0 / np.sqrt(d)
    v.setflags(write=False)
    return v


def phi_vector(d: int) -> np.ndarray:
    """Maximally entangled vector ``(1/sqrt d) sum_j |jj>``."""
    return _phi_vector(_check_d(d))


@lru_cache(maxsize=None)
def _flip_parts(d: int):
    n = d * d
    p = np.zeros((n, n))
    p_plus = np.zeros((n, n))
    p_minus = np.zeros((n, n))
    for i in range(d):
        ii = _basis_index(i, i, d)
        p[ii, ii] = 1.0
        for j in range(i + 1, d):
            ij, ji = _basis_index(i, j, d), _basis_index(j, i, d)
            for m, s in ((p_plus, 1.0), (p_minus, -1.0)):
                m[ij, ij] += 0.5
                m[ji, ji] += 0.5
                m[ij, ji] += 0.5 * s
                m[ji, ij] += 0.5 * s
    return tuple(HermitianOperator._wrap(m, (d, d)) for m in (p, p_plus, p_minus))


def flip_parts(d: int) -> tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
    """Return ``(P, P_plus, P_minus)`` with ``F = P + P_plus - P_minus``.

    ``P`` projects onto span{|ii>}, ``P_plus``/``P_minus`` onto the symmetric and
    antisymmetric combinations ``(|ij> +- |ji>)/sqrt 2`` for ``i < j``.
    """
    return _flip_parts(_check_d(d))


def flip(d: int) -> HermitianOperator:
    """Swap operator ``F |a>|b> = |b>|a>``."""
    p, pp, pm = flip_parts(d)
    return p + pp - pm


def flip_minus(d: int) -> HermitianOperator:
    """Negative part of the flip operator (the antisymmetric projector)."""
    return flip_parts(d)[2]


def max_entangled(d: int) -> BipartiteState:
    """``|Phi><Phi|`` on a ``d x d`` system."""
    d = _check_d(d)
    return BipartiteState.from_vector(phi_vector(d), (d, d))


def pure_schmidt(lambdas) -> BipartiteState:
    """Pure state ``sum_i sqrt(l_i) |ii>`` from a Schmidt coefficient vector.

    The coefficients are used in the given order; they must be nonnegative and
    sum to one within 1e-12.
    """
    lam = np.asarray(lambdas, dtype=float).ravel()
    if lam.size < 2:
        raise InvalidParamError("need at least two Schmidt coefficients")
    if np.any(lam < -_SLACK) or np.any(~np.isfinite(lam)):
        raise InvalidParamError(f"Schmidt coefficients must be nonnegative, got {lam.tolist()}")
    if abs(lam.sum() - 1.0) > _SLACK:
        raise InvalidParamError(f"Schmidt coefficients sum to {lam.sum():.15g}, not 1")
    lam = np.clip(lam, 0.0, None)
    d = lam.size
    v = np.zeros(d * d)
    v[[_basis_index(i, i, d) for i in range(d)]] = np.sqrt(lam)
    return BipartiteState.from_vector(v, (d, d))


def werner(d: int, alpha: float) -> BipartiteState:
    """Werner state with flip overlap ``Tr[w F] = alpha``, ``-1 <= alpha <= 1``."""
    d = _check_d(d)
    alpha = _check_range("alpha", alpha, -1.0, 1.0)
    den = d * (d * d - 1)
    m = (d * alpha - 1) / den * flip(d).matrix + (d - alpha) / den * np.eye(d * d)
    return BipartiteState._wrap(m, (d, d))


def isotropic(d: int, beta: float) -> BipartiteState:
    """Isotropic state with fidelity ``<Phi|eta|Phi> = beta``, ``0 <= beta <= 1``."""
    d = _check_d(d)
    beta = _check_range("beta", beta, 0.0, 1.0)
    phi = max_entangled(d).matrix
    m = beta * phi + (1 - beta) / (d * d - 1) * (np.eye(d * d) - phi)
    return BipartiteState._wrap(m, (d, d))


def generalized_werner(d: int, a: float, b: float) -> BipartiteState:
    """``rho_ab = (1-a-b) P/d + a (2/(d(d-1))) P_minus + b (2/(d(d-1))) P_plus``.

    Invariant under ``U (x) U`` for diagonal-phase unitaries ``U``. The Werner
    family is the line ``b = (d-1)/(d+1) (1-a)`` with ``alpha = 1 - 2a``.
    """
    d = _check_d(d)
    a = _check_range("a", a, 0.0, 1.0)
    b = _check_range("b", b, 0.0, 1.0)
    if a + b > 1.0 + _SLACK:
        raise InvalidParamError(f"a + b = {a + b} exceeds 1")
    p, pp, pm = flip_parts(d)
    k = 2.0 / (d * (d - 1))
    m = max(1.0 - a - b, 0.0) / d * p.matrix + a * k * pm.matrix + b * k * pp.matrix
    return BipartiteState._wrap(m, (d, d))


def flip_state(d: int, sign: int) -> BipartiteState:
    """Normalized symmetric (``sign=+1``) or antisymmetric (``sign=-1``) projector."""
    d = _check_d(d)
    p, pp, pm = flip_parts(d)
    if sign > 0:
        m = (p.matrix + pp.matrix) * (2.0 / (d * (d + 1)))
    elif sign < 0:
        m = pm.matrix * (2.0 / (d * (d - 1)))
    else:
        raise InvalidParamError("sign must be +1 or -1")
    return BipartiteState._wrap(m, (d, d))


def rho_q(q: float) -> BipartiteState:
    """Two-qubit mixture ``(|Phi><Phi| + |psi_q><psi_q|)/2``, ``|psi_q> = sqrt(q)|00> + sqrt(1-q)|10>``."""
    q = _check_range("q", q, 0.0, 1.0)
    psi = np.array([np.sqrt(q), 0.0, np.sqrt(1.0 - q), 0.0])
    m = 0.5 * (max_entangled(2).matrix + np.outer(psi, psi))
    return BipartiteState._wrap(m, (2, 2))


def named_sigma_phi01() -> BipartiteState:
    """Fixed two-qubit state ``|Phi><Phi|/2 + |01><01|/2``."""
    e01 = np.zeros((4, 4))
    e01[1, 1] = 1.0
    return BipartiteState._wrap(0.5 * (max_entangled(2).matrix + e01), (2, 2))


NAMED_STATES = {"sigma_phi01": named_sigma_phi01}

# --------------------------------------------------------------------------- descriptors

FAMILIES = {
    "pure_schmidt": ("pure", "pure_schmidt"),
    "werner": ("werner",),
    "isotropic": ("isotropic", "iso"),
    "generalized_werner": ("generalized_werner", "gwer"),
    "rho_q": ("rho_q", "rhoq"),
    "max_entangled": ("max_entangled", "maxent"),
    "flip_pm": ("flip_pm",),
    "fixed_named": ("fixed_named", "named"),
}
_ALIASES = {alias: fam for fam, names in FAMILIES.items() for alias in names}

_REQUIRED = {
    "werner": ("alpha",),
    "isotropic": ("beta",),
    "generalized_werner": ("a", "b"),
    "rho_q": ("q",),
    "max_entangled": (),
    "flip_pm": ("sign",),
    "fixed_named": (),
}

_FIXED_D = {"rho_q": 2, "fixed_named": 2}


@dataclass(frozen=True)
class StateFamilySpec:
    """Parsed state descriptor.

    ``params`` may be partial: a missing parameter is *free* and must be bound
    with :meth:`bind` (e.g. by a scan axis) before :meth:`build` succeeds. For
    ``pure_schmidt`` one Schmidt coefficient may stay unbound and is filled in
    so the vector sums to one.
    """

    family: str
    d: int
    params: dict = field(default_factory=dict)
    name: str = ""

    def allowed_params(self) -> tuple[str, ...]:
        if self.family == "pure_schmidt":
            return tuple(f"l{i}" for i in range(self.d))
        return _REQUIRED[self.family]

    def free_params(self) -> tuple[str, ...]:
        return tuple(p for p in self.allowed_params() if p not in self.params)

    def bind(self, name: str, value: float) -> StateFamilySpec:
        if name not in self.allowed_params():
            raise InvalidParamError(f"family {self.family} has no parameter {name!r}")
        return StateFamilySpec(self.family, self.d, {**self.params, name: float(value)}, self.name)

    def schmidt_vector(self) -> np.ndarray:
        keys = self.allowed_params()
        missing = [k for k in keys if k not in self.params]
        if len(missing) > 1:
            raise InvalidParamError(f"unbound Schmidt coefficients {missing}")
        lam = np.array([self.params.get(k, 0.0) for k in keys])
        if missing:
            rest = 1.0 - lam.sum()
            lam[keys.index(missing[0])] = 0.0 if abs(rest) <= _SLACK else rest
        return lam

    def build(self) -> BipartiteState:
        fam, p = self.family, self.params
        if fam == "pure_schmidt":
            return pure_schmidt(self.schmidt_vector())
        missing = self.free_params()
        if missing:
            raise InvalidParamError(f"unbound parameters {list(missing)} for family {fam}")
        if fam == "werner":
            return werner(self.d, p["alpha"])
        if fam == "isotropic":
            return isotropic(self.d, p["beta"])
        if fam == "generalized_werner":
            return generalized_werner(self.d, p["a"], p["b"])
        if fam == "rho_q":
            return rho_q(p["q"])
        if fam == "max_entangled":
            return max_entangled(self.d)
        if fam == "flip_pm":
            return flip_state(self.d, int(np.sign(p["sign"])))
        return NAMED_STATES[self.name]()

    def __str__(self):
        head = f"named {self.name}" if self.family == "fixed_named" else f"{self.family} d={self.d}"
        return " ".join([head] + [f"{k}={v!r}" for k, v in self.params.items()])


_TOKEN = re.compile(r"\S+")
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_state_spec(text: str) -> StateFamilySpec:
    """Parse a descriptor string into a :class:`StateFamilySpec`.

    Raises
    ------
    StateSpecError
        On unknown family, malformed token, duplicate or unknown key, or a
        value outside the family's admissible range; the error carries the
        offending token and its character offset.
    """
    tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text)]
    if not tokens:
        raise StateSpecError("empty state descriptor")
    head, pos0 = tokens[0]
    if head.startswith(("family=", "family:")):
        head = head[7:]
    fam = _ALIASES.get(head.lower())
    if fam is None:
        raise StateSpecError(f"unknown family {head!r}", tokens[0][0], pos0)

    rest = tokens[1:]
    name = ""
    if fam == "fixed_named":
        if not rest:
            raise StateSpecError("named family requires a state name", "", len(text))
        tok, pos = rest[0]
        name = tok.split("=", 1)[1] if tok.startswith("name=") else tok
        if name not in NAMED_STATES:
            raise StateSpecError(f"unknown named state {name!r}; known: {sorted(NAMED_STATES)}", tok, pos)
        rest = rest[1:]

    d = None
    raw: dict[str, tuple[float, str, int]] = {}
    for tok, pos in rest:
        key, sep, val = _split_kv(tok)
        if not sep:
            raise StateSpecError("expected key=value", tok, pos)
        key = key.lower()
        if key == "d":
            if not val.isdigit():
                raise StateSpecError("d must be a positive integer", tok, pos)
            d = int(val)
            continue
        if not _NUMBER.match(val):
            raise StateSpecError(f"value for {key!r} is not a number", tok, pos)
        if key in raw:
            raise StateSpecError(f"duplicate parameter {key!r}", tok, pos)
        raw[key] = (float(val), tok, pos)

    if fam in _FIXED_D:
        if d is not None and d != _FIXED_D[fam]:
            raise StateSpecError(f"family {fam} is fixed to d={_FIXED_D[fam]}", f"d={d}", pos0)
        d = _FIXED_D[fam]
    elif d is None:
        if fam == "pure_schmidt" and raw:
            d = len(raw)
        else:
            raise StateSpecError(f"family {fam} requires d=<int>", head, pos0)
    if d < 2:
        raise StateSpecError("d must be at least 2", f"d={d}", pos0)

    spec = StateFamilySpec(fam, d, {}, name)
    allowed = spec.allowed_params()
    params = {}
    for key, (val, tok, pos) in raw.items():
        if key not in allowed:
            raise StateSpecError(f"unknown parameter {key!r} for family {fam}; expected {list(allowed)}", tok, pos)
        try:
            _validate_param(fam, key, val)
        except InvalidParamError as exc:
            raise StateSpecError(str(exc), tok, pos) from None
        params[key] = val
    return StateFamilySpec(fam, d, params, name)


def _split_kv(tok: str) -> tuple[str, str, str]:
    for sep in ("=", ":"):
        if sep in tok:
            k, _, v = tok.partition(sep)
            return k, sep, v
    return tok, "", ""


_RANGES = {
    "alpha": (-1.0, 1.0),
    "beta": (0.0, 1.0),
    "a": (0.0, 1.0),
    "b": (0.0, 1.0),
    "q": (0.0, 1.0),
    "sign": (-1.0, 1.0),
}


def _validate_param(fam: str, key: str, val: float) -> None:
    if fam == "pure_schmidt":
        _check_range(key, val, 0.0, 1.0)
        return
    lo, hi = _RANGES[key]
    _check_range(key, val, lo, hi)
    if key == "sign" and val == 0:
        raise InvalidParamError("sign must be +1 or -1")
