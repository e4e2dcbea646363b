"""Two-parameter scans over a source family (x axis) and a target family (y axis)."""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import EntwitError, InvalidParamError
from .measures import concurrence, negativity, negativity_profile
from .states import StateFamilySpec
from .witnesses import (FIRE_TOL, Verdict, WitnessReport, report_from_profiles, target_profile,
                        verdict)

CSV_HEADER = ("x", "y", "W_N", "W_iso_prime", "W_wer_prime", "W_gamma", "W_2q", "C_rho",
              "C_sigma", "region")
REGIONS = ("none", "both", "new_only", "mono_only")


class GridError(EntwitError, ValueError):
    pass


class Axis(NamedTuple):
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


_AXIS = re.compile(r"^\s*([xy])\s*=\s*([A-Za-z_]\w*)\s*:([^:]+):([^:]+):([^:,]+)\s*$")


def parse_grid(text: str) -> tuple[Axis, Axis]:
    """Parse ``x=<name>:<lo>:<hi>:<n>,y=<name>:<lo>:<hi>:<n>``."""
    axes = {}
    for part in text.split(","):
        m = _AXIS.match(part)
        if not m:
            raise GridError(f"malformed axis {part.strip()!r}; expected x=<name>:<lo>:<hi>:<n>")
        key, name, lo, hi, n = m.groups()
        if key in axes:
            raise GridError(f"axis {key} given twice")
        try:
            lo_f, hi_f, steps = float(lo), float(hi), int(n)
        except ValueError:
            raise GridError(f"non-numeric bound or step count in {part.strip()!r}") from None
        if steps < 2:
            raise GridError(f"axis {key}: need at least 2 steps, got {steps}")
        if not lo_f < hi_f:
            raise GridError(f"axis {key}: lo must be < hi, got {lo_f} >= {hi_f}")
        axes[key] = Axis(name, lo_f, hi_f, steps)
    if set(axes) != {"x", "y"}:
        raise GridError("grid needs exactly one x axis and one y axis")
    return axes["x"], axes["y"]


@dataclass
class ScanGrid:
    """``x`` binds the source's free parameter and ``y`` the target's."""

    x_param: Axis
    y_param: Axis
    rho_spec: StateFamilySpec
    sigma_spec: StateFamilySpec
    cells: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        for axis, spec, role in ((self.x_param, self.rho_spec, "rho"),
                                 (self.y_param, self.sigma_spec, "sigma")):
            if axis.name not in spec.free_params():
                raise GridError(f"axis {axis.name!r} is not a free parameter of {role} "
                                f"({spec.family}); free: {list(spec.free_params())}")
            try:
                spec.bind(axis.name, axis.lo).build()
            except EntwitError as exc:
                raise GridError(f"{role} not buildable once {axis.name} is bound: {exc}") from exc


def classify(rep: WitnessReport, fire_tol: float = FIRE_TOL) -> str:
    """Region label. ``new`` means ``W_gamma`` (or ``W_2q``) fires, ``mono`` means
    ``W_N`` fires or, for two qubits, the concurrence difference does."""
    new = verdict(rep.W_gamma, fire_tol) is Verdict.FIRED or verdict(rep.W_2q, fire_tol) is Verdict.FIRED
    mono = verdict(rep.W_N, fire_tol) is Verdict.FIRED or verdict(rep.W_C, fire_tol) is Verdict.FIRED
    if new and mono:
        return "both"
    if new:
        return "new_only"
    return "mono_only" if mono else "none"


def run_scan(grid: ScanGrid, fire_tol: float = FIRE_TOL) -> list[tuple[float, float, WitnessReport, str]]:
    """Evaluate every cell, x-major. Source and target quantities are computed
    once per row and once per column."""
    xs, ys = grid.x_param.values(), grid.y_param.values()
    try:
        rhos = [grid.rho_spec.bind(grid.x_param.name, x).build() for x in xs]
        sigmas = [grid.sigma_spec.bind(grid.y_param.name, y).build() for y in ys]
    except InvalidParamError as exc:
        raise GridError(f"grid leaves the admissible parameter range: {exc}") from exc
    two_qubit = rhos[0].dims == (2, 2) and sigmas[0].dims == (2, 2)
    square = sigmas[0].dims[0] == sigmas[0].dims[1]
    src = [negativity_profile(r) for r in rhos]
    tgt = [target_profile(s) if square else None for s in sigmas]
    n_sig = [t.N if t is not None else negativity(s) for t, s in zip(tgt, sigmas)]
    c_rho = [concurrence(r) if two_qubit else None for r in rhos]
    c_sig = [concurrence(s) if two_qubit else None for s in sigmas]
    out = []
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            rep = report_from_profiles(src[i], tgt[j], n_sig[j], two_qubit, c_rho[i], c_sig[j],
                                       fire_tol)
            out.append((float(x), float(y), rep, classify(rep, fire_tol)))
    grid.cells = out
    return out


def fmt(v) -> str:
    """10 significant digits, empty for undefined, no negative zero."""
    if v is None:
        return ""
    s = f"{float(v):.10g}"
    return "0" if s in ("-0", "0") else s


def scan_csv(cells) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for x, y, rep, region in cells:
        row = [x, y, rep.W_N, rep.W_iso_prime, rep.W_wer_prime, rep.W_gamma, rep.W_2q,
               rep.C_rho, rep.C_sigma]
        buf.write(",".join(fmt(v) for v in row) + f",{region}\n")
    return buf.getvalue()


def region_matrix(cells, nx: int, ny: int) -> np.ndarray:
    """Region labels reshaped to ``(nx, ny)``."""
    return np.array([c[3] for c in cells], dtype=object).reshape(nx, ny)
