"""Leave-one-out DFBETA diagnostics.

dfbeta = alpha(full data) - alpha(data with one unit or coder removed),
computed by exact refitting. Indices are 0-based here; the CLI converts to
and from the 1-based numbering users see.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import alpha_point
from .data import ReliabilityMatrix
from .errors import AlphaError, InvalidMatrix
from .metrics import DistanceSpec, as_spec


@dataclass(frozen=True)
class DfBetaReport:
    base_alpha: float
    unit_dfbetas: dict = field(default_factory=dict)
    coder_dfbetas: dict = field(default_factory=dict)


def _relabel(exc: AlphaError, what: str) -> AlphaError:
    # Refit failures all use the plain message constructor.
    return type(exc)(f"{what}: {exc}")


def dfbeta_units(m: ReliabilityMatrix, d: DistanceSpec | str, units: Iterable[int]) -> DfBetaReport:
    d = as_spec(d)
    base = alpha_point(m, d).alpha
    out = {}
    for i in units:
        if m.n_units < 2:
            raise InvalidMatrix(f"cannot drop unit {i}: it is the only unit")
        try:
            out[i] = base - alpha_point(m.drop_unit(i), d).alpha
        except AlphaError as exc:
            raise _relabel(exc, f"without unit {i}") from exc
    return DfBetaReport(base, unit_dfbetas=out)


def dfbeta_coders(m: ReliabilityMatrix, d: DistanceSpec | str, coders: Iterable[int]) -> DfBetaReport:
    d = as_spec(d)
    base = alpha_point(m, d).alpha
    out = {}
    for j in coders:
        try:
            out[j] = base - alpha_point(m.drop_coder(j), d).alpha
        except AlphaError as exc:
            raise _relabel(exc, f"without coder {j}") from exc
    return DfBetaReport(base, coder_dfbetas=out)


def influence(
    m: ReliabilityMatrix,
    d: DistanceSpec | str,
    units: Iterable[int] = (),
    coders: Iterable[int] = (),
) -> DfBetaReport:
    """Unit and coder DFBETAs in one report."""
    u = dfbeta_units(m, d, units)
    c = dfbeta_coders(m, d, coders)
    return DfBetaReport(u.base_alpha, u.unit_dfbetas, c.coder_dfbetas)
