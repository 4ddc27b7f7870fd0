"""Parameter thresholds at which properties of parametric measures flip.

Two flavors of bracketed bisection:

* ``find_threshold`` bisects the boolean oracle "the property holds on the
  exhaustive resolution-n grid at this parameter value".  It requires the
  property region to be a half-line within the bracket, guarded by a
  coarse pre-scan plus an interior probe that rejects isolated-point
  properties (e.g. F_beta error-type symmetry, which holds only at
  beta = 1).
* ``rank_flip_threshold`` bisects the continuous difference
  g(p) = m(cmA; p) - m(cmB; p) to the parameter where the measure's
  ordering of two confusion matrices reverses.

The continuous-domain reference for the IBA family is also provided:
``(1 + a*(TPR-TNR)) * G^e`` stops being transfer-monotone on the unit
square exactly above a = e/(e+2) (directional derivative in TNR turns
negative near TPR -> 0+, TNR = 1), which is the value the grid estimates
converge to as n grows.
"""

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np

from .confusion import ConfusionMatrix
from .errors import BracketError, OracleShapeError, ParameterError, UndefinedValueError
from .measures import get_measure
from .properties import PropertyReport, get_property_check

__all__ = [
    "ThresholdResult",
    "property_phase_scan",
    "find_threshold",
    "rank_flip_threshold",
    "iba_monotonicity_limit",
]


def iba_monotonicity_limit(exponent: float) -> float:
    """Continuous-domain alpha above which IBA(G-mean^e) loses monotonicity."""
    if exponent <= 0:
        raise ValueError("exponent must be positive")
    return exponent / (exponent + 2.0)


@dataclass(frozen=True)
class ThresholdResult:
    measure_id: str
    param_name: str
    property_id: str
    lo: float
    hi: float
    estimate: float
    tol: float
    n: int
    evidence_lo: PropertyReport
    evidence_hi: PropertyReport

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure_id,
            "param": self.param_name,
            "property": self.property_id,
            "lo": self.lo,
            "hi": self.hi,
            "estimate": self.estimate,
            "tol": self.tol,
            "n": self.n,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _oracle(measure_id, param_name, base_params, property_id, n):
    desc = get_measure(measure_id)
    check = get_property_check(property_id)
    base = dict(base_params or {})
    if not any(p.name == param_name for p in desc.params):
        raise ParameterError(f"measure {desc.id!r} has no parameter {param_name!r}")
    desc.resolve_params(base)  # surface bad base parameters before scanning

    def run(value: float) -> PropertyReport:
        params = dict(base)
        params[param_name] = value
        return check(desc, params, n)

    return desc, run


def property_phase_scan(measure_id: str, param_name: str, values: Sequence[float],
                        property_id: str, n: int,
                        params: Optional[Mapping] = None) -> list:
    """Run the named check at each parameter value; returns (value, verdict) pairs."""
    _, run = _oracle(measure_id, param_name, params, property_id, n)
    return [(float(v), run(float(v)).verdict) for v in values]


def find_threshold(measure_id: str, param_name: str, property_id: str,
                   bracket: Tuple[float, float], tol: float = 1e-3, n: int = 40,
                   params: Optional[Mapping] = None,
                   prescan_points: int = 9) -> ThresholdResult:
    """Bisect the parameter value where a property verdict flips.

    Preconditions checked here: the verdicts differ at the bracket
    endpoints, a ``prescan_points``-point scan sees a single monotone flip,
    and the holds region extends at least ``tol`` into the bracket interior
    (rejecting isolated-point properties).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    _, run = _oracle(measure_id, param_name, params, property_id, n)

    report_lo = run(lo)
    report_hi = run(hi)
    holds_lo = report_lo.holds()
    holds_hi = report_hi.holds()
    if holds_lo == holds_hi:
        raise BracketError(
            f"property {property_id!r} is {report_lo.verdict!r} at both bracket "
            f"endpoints ({lo:g}, {hi:g}); nothing to bisect")

    scan = np.linspace(lo, hi, max(3, prescan_points))
    verdicts = [holds_lo] + [run(float(v)).holds() for v in scan[1:-1]] + [holds_hi]
    flips = sum(a != b for a, b in zip(verdicts, verdicts[1:]))
    if flips != 1:
        raise OracleShapeError(
            f"pre-scan saw {flips} verdict flips across {len(scan)} points; "
            f"property is not monotone in {param_name!r} over ({lo:g}, {hi:g})")

    # isolated-point guard: the holds side must extend into the interior
    holds_end = lo if holds_lo else hi
    probe = holds_end + tol if holds_lo else holds_end - tol
    if lo < probe < hi and not run(probe).holds():
        raise OracleShapeError(
            f"property {property_id!r} holds at {holds_end:g} but already fails "
            f"{tol:g} inside the bracket; it holds only at an isolated point, "
            f"not on a half-line")

    while hi - lo > 2.0 * tol:
        mid = 0.5 * (lo + hi)
        if run(mid).holds() == holds_lo:
            lo = mid
        else:
            hi = mid

    # re-check, never assume: final evidence comes from fresh oracle runs
    evidence_lo = run(lo)
    evidence_hi = run(hi)
    if evidence_lo.holds() == evidence_hi.holds():
        raise OracleShapeError(
            f"final bracket ({lo!r}, {hi!r}) no longer straddles a verdict flip")

    return ThresholdResult(
        measure_id=get_measure(measure_id).id,
        param_name=param_name,
        property_id=evidence_lo.property_id,
        lo=lo,
        hi=hi,
        estimate=0.5 * (lo + hi),
        tol=tol,
        n=n,
        evidence_lo=evidence_lo,
        evidence_hi=evidence_hi,
    )


def rank_flip_threshold(measure_id: str, param_name: str,
                        cm_a: ConfusionMatrix, cm_b: ConfusionMatrix,
                        bracket: Tuple[float, float], tol: float = 1e-6,
                        params: Optional[Mapping] = None,
                        g_tol: float = 1e-6, max_iter: int = 200) -> float:
    """Parameter value where the measure's ordering of cm_a and cm_b flips.

    Bisects g(p) = m(cm_a; p) - m(cm_b; p); both evaluations must stay
    Defined at every probed parameter value.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    desc = get_measure(measure_id)
    base = dict(params or {})

    def g(p: float) -> float:
        merged = dict(base)
        merged[param_name] = p
        va = desc.evaluate(cm_a, merged)
        vb = desc.evaluate(cm_b, merged)
        if va is None or vb is None:
            raise UndefinedValueError(
                f"{desc.id} is Undefined at {param_name}={p:g} for "
                f"{cm_a.as_tuple() if va is None else cm_b.as_tuple()}")
        return va - vb

    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    g_lo = g(lo)
    g_hi = g(hi)
    if g_lo == 0.0 and g_hi == 0.0:
        raise BracketError("difference is zero at both endpoints; no ordering flip")
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise BracketError(
            f"m(cm_a)-m(cm_b) has the same sign at both endpoints "
            f"({g_lo:g} at {lo:g}, {g_hi:g} at {hi:g})")

    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
        # mid is now an endpoint, so |mid - root| <= hi - lo
        if hi - lo <= tol and abs(g_mid) <= g_tol:
            return mid
        new_mid = 0.5 * (lo + hi)
        if new_mid <= lo or new_mid >= hi:
            return mid  # float resolution exhausted
        mid = new_mid
    return mid
