"""Registry of 22 binary classification performance measures.

Every measure is a pure function of the four confusion-matrix counts,
evaluated in vectorized form over int64 count arrays.  Undefined values
(0/0 or zero-product denominators) are represented as NaN in array results
and as ``None`` at the scalar API boundary; they are legitimate outputs,
not errors.  Each descriptor also carries an explicit undefinedness
predicate so "value is NaN" and "predicate holds" can be checked against
each other exhaustively.

Conventions used by the kernels below, with P = tp+fn, N = tn+fp,
PP = tp+fp (predicted positive), PN = tn+fn (predicted negative):

    tpr = tp/P    tnr = tn/N    ppv = tp/PP    npv = tn/PN

Scalar evaluation routes through the same kernels on length-1 arrays, so
replaying any reported value reproduces it bit-for-bit.
"""

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

import numpy as np

from .confusion import ConfusionMatrix
from .errors import EmptyGamutError, ParameterError, UnknownMeasureError
from .grid import grid_counts

__all__ = [
    "MeasureValue",
    "ParamSpec",
    "MeasureDescriptor",
    "Gamut",
    "list_measures",
    "measure_ids",
    "get_measure",
    "evaluate",
    "gamut",
]

# A measure value is either a float (Defined) or None (Undefined).
MeasureValue = Optional[float]


@dataclass(frozen=True)
class ParamSpec:
    """One named parameter with a default and a validity interval."""

    name: str
    default: float
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, value: float) -> bool:
        if not math.isfinite(value):
            return False
        if value < self.lo or (self.lo_open and value == self.lo):
            return False
        if value > self.hi or (self.hi_open and value == self.hi):
            return False
        return True

    def interval_str(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        hi = "inf" if math.isinf(self.hi) else f"{self.hi:g}"
        return f"{left}{self.lo:g}, {hi}{right}"


@dataclass(frozen=True)
class MeasureDescriptor:
    """Registry entry: identity, parameter schema, range and evaluation rule."""

    id: str
    display_name: str
    formula: str
    params: tuple = ()
    range: tuple = (0.0, 1.0)  # closed interval at default parameters
    kernel: Callable = None
    undef: Callable = None
    # optional parameter-dependent range; falls back to `range`
    range_fn: Optional[Callable] = None

    def resolve_params(self, params: Optional[Mapping] = None) -> dict:
        """Validate a parameter mapping and fill in defaults."""
        given = dict(params) if params else {}
        known = {p.name for p in self.params}
        for name in given:
            if name not in known:
                raise ParameterError(
                    f"measure {self.id!r} has no parameter {name!r}"
                    + (f"; expected one of {sorted(known)}" if known else "")
                )
        resolved = {}
        for spec in self.params:
            value = given.get(spec.name, spec.default)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(
                    f"parameter {spec.name}={value!r} is not a number"
                ) from None
            if not spec.contains(value):
                raise ParameterError(
                    f"parameter {spec.name}={value:g} outside {spec.interval_str()}"
                )
            resolved[spec.name] = value
        return resolved

    def value_range(self, params: Optional[Mapping] = None) -> tuple:
        """Closed interval containing every Defined value at these parameters."""
        if self.range_fn is None:
            return self.range
        return self.range_fn(self.resolve_params(params))

    def evaluate_arrays(self, tp, fn_, fp, tn, params: Optional[Mapping] = None):
        """Vectorized evaluation; NaN marks Undefined points."""
        resolved = self.resolve_params(params)
        tp, fn_, fp, tn = (np.asarray(a, dtype=np.int64) for a in (tp, fn_, fp, tn))
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.kernel(tp, fn_, fp, tn, **resolved)

    def undefined_mask(self, tp, fn_, fp, tn, params: Optional[Mapping] = None):
        """Vectorized undefinedness predicate."""
        resolved = self.resolve_params(params)
        tp, fn_, fp, tn = (np.asarray(a, dtype=np.int64) for a in (tp, fn_, fp, tn))
        return self.undef(tp, fn_, fp, tn, **resolved)

    def evaluate(self, cm: ConfusionMatrix, params: Optional[Mapping] = None) -> MeasureValue:
        """Scalar evaluation; returns None where the measure is Undefined."""
        out = self.evaluate_arrays(
            np.array([cm.tp]), np.array([cm.fn_]), np.array([cm.fp]), np.array([cm.tn]),
            params,
        )
        v = float(out[0])
        return None if math.isnan(v) else v


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def _rate(num, den):
    out = np.full(np.broadcast(num, den).shape, np.nan)
    np.divide(num, den, out=out, where=den != 0)
    return out


def _tpr(tp, fn_):
    return _rate(tp, tp + fn_)


def _tnr(fp, tn):
    return _rate(tn, tn + fp)


def _ppv(tp, fp):
    return _rate(tp, tp + fp)


def _npv(fn_, tn):
    return _rate(tn, tn + fn_)


def _k_accuracy(tp, fn_, fp, tn):
    return (tp + tn) / (tp + fn_ + fp + tn)


def _k_error_rate(tp, fn_, fp, tn):
    return (fn_ + fp) / (tp + fn_ + fp + tn)


def _k_recall(tp, fn_, fp, tn):
    return _tpr(tp, fn_)


def _k_specificity(tp, fn_, fp, tn):
    return _tnr(fp, tn)


def _k_precision(tp, fn_, fp, tn):
    return _ppv(tp, fp)


def _k_npv(tp, fn_, fp, tn):
    return _npv(fn_, tn)


def _k_f_beta(tp, fn_, fp, tn, beta=1.0):
    b2 = beta * beta
    num = (1.0 + b2) * tp
    return _rate(num, num + b2 * fn_ + fp)


def _k_f1(tp, fn_, fp, tn):
    return _k_f_beta(tp, fn_, fp, tn, beta=1.0)


def _k_g_mean(tp, fn_, fp, tn):
    return np.sqrt(_tpr(tp, fn_) * _tnr(fp, tn))


def _k_fowlkes_mallows(tp, fn_, fp, tn):
    return np.sqrt(_tpr(tp, fn_) * _ppv(tp, fp))


def _k_balanced_accuracy(tp, fn_, fp, tn):
    return 0.5 * (_tpr(tp, fn_) + _tnr(fp, tn))


def _k_youden_j(tp, fn_, fp, tn):
    return _tpr(tp, fn_) + _tnr(fp, tn) - 1.0


def _k_mcc(tp, fn_, fp, tn):
    # marginal sums exact in int64, then float64 to avoid overflow in the product
    pp = (tp + fp).astype(np.float64)
    p = (tp + fn_).astype(np.float64)
    n = (tn + fp).astype(np.float64)
    pn = (tn + fn_).astype(np.float64)
    num = (tp * tn - fp * fn_).astype(np.float64)
    return _rate(num, np.sqrt(pp * p * n * pn))


def _k_kappa(tp, fn_, fp, tn):
    num = 2.0 * (tp * tn - fn_ * fp)
    den = (tp + fp) * (fp + tn) + (tp + fn_) * (fn_ + tn)
    return _rate(num, den.astype(np.float64))


def _k_jaccard(tp, fn_, fp, tn):
    return _rate(tp, tp + fp + fn_)


def _k_kulczynski(tp, fn_, fp, tn):
    return 0.5 * (_ppv(tp, fp) + _tpr(tp, fn_))


def _k_optimized_precision(tp, fn_, fp, tn):
    tpr = _tpr(tp, fn_)
    tnr = _tnr(fp, tn)
    acc = _k_accuracy(tp, fn_, fp, tn)
    return acc - _rate(np.abs(tnr - tpr), tnr + tpr)


def _k_iba_gmean(tp, fn_, fp, tn, alpha=0.1, exponent=1.0):
    tpr = _tpr(tp, fn_)
    tnr = _tnr(fp, tn)
    base = np.sqrt(tpr * tnr) ** exponent
    return (1.0 + alpha * (tpr - tnr)) * base


def _k_class_balance_accuracy(tp, fn_, fp, tn):
    first = _rate(tp, np.maximum(tp + fn_, tp + fp))
    second = _rate(tn, np.maximum(tn + fp, tn + fn_))
    return 0.5 * (first + second)


def _k_markedness(tp, fn_, fp, tn):
    return _ppv(tp, fp) + _npv(fn_, tn) - 1.0


def _k_g_mean_pv(tp, fn_, fp, tn):
    return np.sqrt(_ppv(tp, fp) * _npv(fn_, tn))


def _k_weighted_accuracy(tp, fn_, fp, tn, w=0.5):
    return w * _tpr(tp, fn_) + (1.0 - w) * _tnr(fp, tn)


# ---------------------------------------------------------------------------
# undefinedness predicates
# ---------------------------------------------------------------------------

def _never(tp, fn_, fp, tn, **_):
    return np.zeros(np.broadcast(tp, tn).shape, dtype=bool)


def _no_pos(tp, fn_, fp, tn, **_):
    return tp + fn_ == 0


def _no_neg(tp, fn_, fp, tn, **_):
    return tn + fp == 0


def _no_pred_pos(tp, fn_, fp, tn, **_):
    return tp + fp == 0


def _no_pred_neg(tp, fn_, fp, tn, **_):
    return tn + fn_ == 0


def _u_rates(tp, fn_, fp, tn, **_):
    return _no_pos(tp, fn_, fp, tn) | _no_neg(tp, fn_, fp, tn)


def _u_f_beta(tp, fn_, fp, tn, **_):
    return (tp + fn_ + fp) == 0


def _u_fowlkes(tp, fn_, fp, tn, **_):
    return _no_pos(tp, fn_, fp, tn) | _no_pred_pos(tp, fn_, fp, tn)


def _u_any_marginal(tp, fn_, fp, tn, **_):
    return (_no_pos(tp, fn_, fp, tn) | _no_neg(tp, fn_, fp, tn)
            | _no_pred_pos(tp, fn_, fp, tn) | _no_pred_neg(tp, fn_, fp, tn))


def _u_kappa(tp, fn_, fp, tn, **_):
    return ((tp + fp) * (fp + tn) + (tp + fn_) * (fn_ + tn)) == 0


def _u_optimized_precision(tp, fn_, fp, tn, **_):
    return _u_rates(tp, fn_, fp, tn) | ((tp == 0) & (tn == 0))


def _u_predictive(tp, fn_, fp, tn, **_):
    return _no_pred_pos(tp, fn_, fp, tn) | _no_pred_neg(tp, fn_, fp, tn)


def _u_cba(tp, fn_, fp, tn, **_):
    return (np.maximum(tp + fn_, tp + fp) == 0) | (np.maximum(tn + fp, tn + fn_) == 0)


def _iba_range(params: dict) -> tuple:
    # (1 + alpha*dom) in [1-alpha, 1+alpha] and base in [0, 1]
    a = params["alpha"]
    return (min(0.0, 1.0 - a), 1.0 + a)


def _build_registry() -> tuple:
    d = MeasureDescriptor
    return (
        d("accuracy", "Accuracy", "(TP+TN)/n",
          kernel=_k_accuracy, undef=_never),
        d("error_rate", "Error rate", "(FN+FP)/n",
          kernel=_k_error_rate, undef=_never),
        d("recall", "Sensitivity (recall, TPR)", "TP/(TP+FN)",
          kernel=_k_recall, undef=_no_pos),
        d("specificity", "Specificity (TNR)", "TN/(TN+FP)",
          kernel=_k_specificity, undef=_no_neg),
        d("precision", "Precision (PPV)", "TP/(TP+FP)",
          kernel=_k_precision, undef=_no_pred_pos),
        d("npv", "Negative predictive value", "TN/(TN+FN)",
          kernel=_k_npv, undef=_no_pred_neg),
        d("f1", "F1 score", "2TP/(2TP+FN+FP)",
          kernel=_k_f1, undef=_u_f_beta),
        d("f_beta", "F-beta score", "(1+b^2)TP/((1+b^2)TP+b^2*FN+FP)",
          params=(ParamSpec("beta", 1.0, 0.0, math.inf, lo_open=True),),
          kernel=_k_f_beta, undef=_u_f_beta),
        d("g_mean", "G-mean", "sqrt(TPR*TNR)",
          kernel=_k_g_mean, undef=_u_rates),
        d("fowlkes_mallows", "Fowlkes-Mallows (G-mean of TPR and PPV)",
          "sqrt(TPR*PPV)",
          kernel=_k_fowlkes_mallows, undef=_u_fowlkes),
        d("balanced_accuracy", "Balanced accuracy", "(TPR+TNR)/2",
          kernel=_k_balanced_accuracy, undef=_u_rates),
        d("youden_j", "Youden's J", "TPR+TNR-1", range=(-1.0, 1.0),
          kernel=_k_youden_j, undef=_u_rates),
        d("mcc", "Matthews correlation coefficient",
          "(TP*TN-FP*FN)/sqrt((TP+FP)(TP+FN)(TN+FP)(TN+FN))", range=(-1.0, 1.0),
          kernel=_k_mcc, undef=_u_any_marginal),
        d("kappa", "Cohen's kappa",
          "2(TP*TN-FN*FP)/((TP+FP)(FP+TN)+(TP+FN)(FN+TN))", range=(-1.0, 1.0),
          kernel=_k_kappa, undef=_u_kappa),
        d("jaccard", "Jaccard index", "TP/(TP+FP+FN)",
          kernel=_k_jaccard, undef=_u_f_beta),
        d("kulczynski", "Kulczynski measure", "(PPV+TPR)/2",
          kernel=_k_kulczynski, undef=_u_fowlkes),
        d("optimized_precision", "Optimized precision",
          "Acc - |TNR-TPR|/(TNR+TPR)", range=(-1.0, 1.0),
          kernel=_k_optimized_precision, undef=_u_optimized_precision),
        d("iba_gmean", "Index of balanced accuracy of the G-mean",
          "(1+alpha*(TPR-TNR)) * G-mean^exponent",
          params=(ParamSpec("alpha", 0.1, 0.0, 10.0),
                  ParamSpec("exponent", 1.0, 1.0, 2.0)),
          range=(0.0, 1.1), range_fn=_iba_range,
          kernel=_k_iba_gmean, undef=_u_rates),
        d("class_balance_accuracy", "Class balance accuracy",
          "(TP/max(TP+FN,TP+FP) + TN/max(TN+FP,TN+FN))/2",
          kernel=_k_class_balance_accuracy, undef=_u_cba),
        d("markedness", "Markedness", "PPV+NPV-1", range=(-1.0, 1.0),
          kernel=_k_markedness, undef=_u_predictive),
        d("g_mean_pv", "G-mean of predictive values", "sqrt(PPV*NPV)",
          kernel=_k_g_mean_pv, undef=_u_predictive),
        d("weighted_accuracy", "Weighted accuracy", "w*TPR+(1-w)*TNR",
          params=(ParamSpec("w", 0.5, 0.0, 1.0),),
          kernel=_k_weighted_accuracy, undef=_u_rates),
    )


_REGISTRY: tuple = _build_registry()
_BY_ID: dict = {m.id: m for m in _REGISTRY}

_ALIASES = {
    "sensitivity": "recall",
    "tpr": "recall",
    "tnr": "specificity",
    "ppv": "precision",
}


def _normalize(measure_id: str) -> str:
    return str(measure_id).casefold().replace("-", "").replace("_", "").replace(" ", "")


_LOOKUP: dict = {}
for _m in _REGISTRY:
    _LOOKUP[_normalize(_m.id)] = _m.id
for _alias, _target in _ALIASES.items():
    _LOOKUP.setdefault(_normalize(_alias), _target)

assert len(_BY_ID) == len(_REGISTRY), "duplicate measure id in registry"


def list_measures() -> list:
    """All 22 built-in descriptors, in stable registry order."""
    return list(_REGISTRY)


def measure_ids() -> list:
    return [m.id for m in _REGISTRY]


def get_measure(measure_id: str) -> MeasureDescriptor:
    """Look up a descriptor; tolerant of case and -/_ separators."""
    key = _normalize(measure_id)
    if key not in _LOOKUP:
        raise UnknownMeasureError(measure_id)
    return _BY_ID[_LOOKUP[key]]


def evaluate(measure_id: str, params: Optional[Mapping], cm: ConfusionMatrix) -> MeasureValue:
    """Evaluate one measure at one confusion matrix.

    Returns a float within the measure's declared range, or None exactly
    where the undefinedness predicate holds.
    """
    return get_measure(measure_id).evaluate(cm, params)


@dataclass(frozen=True)
class Gamut:
    """Observed extremes of the Defined values over a sampled grid."""

    min: float
    max: float
    undefined_count: int


def gamut(measure_id: str, params: Optional[Mapping] = None, n: int = 25) -> Gamut:
    """Min/max over all Defined values on the exhaustive resolution-n grid."""
    desc = get_measure(measure_id)
    counts = grid_counts(n)
    values = desc.evaluate_arrays(counts[:, 0], counts[:, 1], counts[:, 2], counts[:, 3], params)
    undefined = int(np.isnan(values).sum())
    if undefined == len(values):
        raise EmptyGamutError(
            f"{desc.id} is Undefined at every grid point for n={n}"
        )
    return Gamut(float(np.nanmin(values)), float(np.nanmax(values)), undefined)
