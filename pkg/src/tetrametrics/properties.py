"""Exhaustive verification of measure properties over the simplex grid.

Each check visits every one of the C(n+3,3) grid points and compares pairs
of evaluations, so a "holds" verdict is a finite proof at that resolution,
and every "fails" verdict ships integer witnesses that can be replayed
through ``evaluate`` to reproduce the recorded values exactly.

Monotonicity uses count-preserving improving transfers (FN->TP, FP->TN):
on the fixed-n simplex these are the only moves that keep the total while
strictly improving the classification.  Value comparisons skip Undefined
pairs, but a Defined-to-Undefined step under an improving transfer is
retained as a separate "definedness" witness category; for the symmetry
checks the analogous category is one-sided undefinedness.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np

from .confusion import ConfusionMatrix
from .errors import ParameterError, ResolutionError, UnknownMeasureError
from .grid import grid_counts, grid_size
from .measures import MeasureDescriptor, MeasureValue, get_measure, measure_ids

__all__ = [
    "TOLERANCE",
    "DEFAULT_WITNESS_CAP",
    "Witness",
    "PropertyReport",
    "UndefinedRegion",
    "UndefinedSummary",
    "ProfileEntry",
    "ImbalanceProfile",
    "PropertyMatrix",
    "check_monotonicity",
    "check_class_swap_symmetry",
    "check_error_type_symmetry",
    "detect_undefined_regions",
    "imbalance_profile",
    "property_matrix",
    "property_checks",
    "get_property_check",
    "property_matrix_markdown",
    "property_matrix_csv",
]

TOLERANCE = 1e-12
DEFAULT_WITNESS_CAP = 32

COUNT_NAMES = ("tp", "fn", "fp", "tn")


@dataclass(frozen=True)
class Witness:
    """One replayable comparison: exact matrices plus the observed values."""

    before: ConfusionMatrix
    after: ConfusionMatrix
    value_before: MeasureValue
    value_after: MeasureValue
    kind: str     # "value" | "definedness"
    context: str  # "fn_to_tp" | "fp_to_tn" | "class_swap" | "error_type_swap"


@dataclass
class PropertyReport:
    measure_id: str
    params: dict
    property_id: str
    n: int
    verdict: str                      # "holds" | "fails" | "vacuous"
    violations: int                   # value violations (exact count)
    witnesses: List[Witness]          # value witnesses, capped
    undefined_pairs_skipped: int      # legal pairs with any Undefined value
    definedness_violations: int       # regressions / one-sided undefinedness
    definedness_witnesses: List[Witness] = field(default_factory=list)
    comparisons: int = 0              # value comparisons actually made
    legal_pairs: int = 0
    points_visited: int = 0
    witness_cap: int = DEFAULT_WITNESS_CAP
    embedding_verified: bool = True   # doubled witnesses still violate at 2n

    def holds(self) -> bool:
        return self.verdict == "holds"


def _resolve(measure) -> MeasureDescriptor:
    if isinstance(measure, MeasureDescriptor):
        return measure
    return get_measure(measure)


def _eval_counts(desc: MeasureDescriptor, params, counts: np.ndarray) -> np.ndarray:
    return desc.evaluate_arrays(counts[:, 0], counts[:, 1], counts[:, 2], counts[:, 3], params)


def _cm(row) -> ConfusionMatrix:
    return ConfusionMatrix(*(int(x) for x in row))


def _scalar(v) -> MeasureValue:
    v = float(v)
    return None if np.isnan(v) else v


def _verify_embedding(desc, params, witnesses, comparator) -> bool:
    """Scale every witness by 2 and confirm the violation persists at 2n."""
    for w in witnesses:
        b2 = w.before.scaled(2)
        a2 = w.after.scaled(2)
        vb = desc.evaluate(b2, params)
        va = desc.evaluate(a2, params)
        if not comparator(vb, va, w.kind):
            return False
    return True


def _finish_pairwise(desc, resolved, property_id, n, tol, witness_cap,
                     collected, legal, skipped, compared, violations,
                     defined_violations, comparator) -> PropertyReport:
    collected.sort(key=lambda item: item[:2])
    value_ws = [w for *_k, w in collected if w.kind == "value"][:witness_cap]
    defined_ws = [w for *_k, w in collected if w.kind == "definedness"][:witness_cap]
    if compared == 0:
        verdict = "vacuous"
    elif violations > 0:
        verdict = "fails"
    else:
        verdict = "holds"
    embedding_ok = _verify_embedding(desc, resolved, value_ws + defined_ws, comparator)
    return PropertyReport(
        measure_id=desc.id,
        params=resolved,
        property_id=property_id,
        n=n,
        verdict=verdict,
        violations=violations,
        witnesses=value_ws,
        undefined_pairs_skipped=skipped,
        definedness_violations=defined_violations,
        definedness_witnesses=defined_ws,
        comparisons=compared,
        legal_pairs=legal,
        points_visited=grid_size(n),
        witness_cap=witness_cap,
        embedding_verified=embedding_ok,
    )


TRANSFERS = (
    ("fn_to_tp", np.array([1, -1, 0, 0], dtype=np.int64), 1),   # source column fn
    ("fp_to_tn", np.array([0, 0, -1, 1], dtype=np.int64), 2),   # source column fp
)


def check_monotonicity(measure, params: Optional[Mapping] = None, n: int = 25,
                       tol: float = TOLERANCE,
                       witness_cap: int = DEFAULT_WITNESS_CAP) -> PropertyReport:
    """A measure is transfer-monotone if no improving transfer lowers its value.

    Improving transfers at fixed total: FN->TP (tp+1, fn-1) and
    FP->TN (fp-1, tn+1).
    """
    desc = _resolve(measure)
    resolved = desc.resolve_params(params)
    counts = grid_counts(n)
    values = _eval_counts(desc, resolved, counts)

    legal = compared = skipped = violations = regressions = 0
    collected: list = []
    for rank, (context, delta, src_col) in enumerate(TRANSFERS):
        mask = counts[:, src_col] >= 1
        idx = np.nonzero(mask)[0]
        legal += len(idx)
        before = counts[idx]
        after = before + delta
        vb = values[idx]
        va = _eval_counts(desc, resolved, after)
        db = ~np.isnan(vb)
        da = ~np.isnan(va)
        both = db & da
        compared += int(both.sum())
        skipped += int((~both).sum())
        viol = both & (va < vb - tol)
        violations += int(viol.sum())
        regress = db & ~da
        regressions += int(regress.sum())
        for j in np.nonzero(viol)[0]:
            collected.append((int(idx[j]), rank, Witness(
                _cm(before[j]), _cm(after[j]), _scalar(vb[j]), _scalar(va[j]),
                "value", context)))
        for j in np.nonzero(regress)[0]:
            collected.append((int(idx[j]), rank, Witness(
                _cm(before[j]), _cm(after[j]), _scalar(vb[j]), None,
                "definedness", context)))

    def comparator(vb, va, kind):
        if kind == "value":
            return vb is not None and va is not None and va < vb - tol
        return vb is not None and va is None

    return _finish_pairwise(desc, resolved, "monotonicity", n, tol, witness_cap,
                            collected, legal, skipped, compared, violations,
                            regressions, comparator)


def _check_swap_symmetry(measure, params, n, tol, witness_cap,
                         property_id: str, context: str,
                         permute: Sequence[int]) -> PropertyReport:
    desc = _resolve(measure)
    resolved = desc.resolve_params(params)
    counts = grid_counts(n)
    swapped = counts[:, list(permute)]
    v = _eval_counts(desc, resolved, counts)
    vs = _eval_counts(desc, resolved, swapped)

    db = ~np.isnan(v)
    ds = ~np.isnan(vs)
    both = db & ds
    one_sided = db ^ ds
    viol = both & (np.abs(v - vs) > tol)

    collected = []
    for j in np.nonzero(viol)[0]:
        collected.append((int(j), 0, Witness(
            _cm(counts[j]), _cm(swapped[j]), _scalar(v[j]), _scalar(vs[j]),
            "value", context)))
    for j in np.nonzero(one_sided)[0]:
        collected.append((int(j), 0, Witness(
            _cm(counts[j]), _cm(swapped[j]), _scalar(v[j]), _scalar(vs[j]),
            "definedness", context)))

    def comparator(vb, va, kind):
        if kind == "value":
            return vb is not None and va is not None and abs(vb - va) > tol
        return (vb is None) != (va is None)

    return _finish_pairwise(desc, resolved, property_id, n, tol, witness_cap,
                            collected, len(counts), int((~both).sum()),
                            int(both.sum()), int(viol.sum()),
                            int(one_sided.sum()), comparator)


def check_class_swap_symmetry(measure, params: Optional[Mapping] = None, n: int = 25,
                              tol: float = TOLERANCE,
                              witness_cap: int = DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Invariance under relabeling classes: m(tp,fn,fp,tn) = m(tn,fp,fn,tp)."""
    return _check_swap_symmetry(measure, params, n, tol, witness_cap,
                                "class_swap_symmetry", "class_swap", (3, 2, 1, 0))


def check_error_type_symmetry(measure, params: Optional[Mapping] = None, n: int = 25,
                              tol: float = TOLERANCE,
                              witness_cap: int = DEFAULT_WITNESS_CAP) -> PropertyReport:
    """Invariance under exchanging the error types: FN <-> FP."""
    return _check_swap_symmetry(measure, params, n, tol, witness_cap,
                                "error_type_symmetry", "error_type_swap", (0, 2, 1, 3))


# ---------------------------------------------------------------------------
# undefined-region structure
# ---------------------------------------------------------------------------

_KINDS = {0: "interior", 1: "face", 2: "edge", 3: "vertex"}


@dataclass(frozen=True)
class UndefinedRegion:
    zero_pattern: tuple   # names of the zero counts, in tp,fn,fp,tn order
    span: tuple           # names of the counts that may be nonzero
    kind: str             # interior | face | edge | vertex
    count: int
    examples: tuple       # up to 3 ConfusionMatrix witnesses


@dataclass(frozen=True)
class UndefinedSummary:
    measure_id: str
    params: dict
    n: int
    count: int
    regions: tuple

    def boundary_labels(self) -> list:
        return [f"{r.kind} {'-'.join(r.span)}" for r in self.regions]


def detect_undefined_regions(measure, params: Optional[Mapping] = None,
                             n: int = 25) -> UndefinedSummary:
    """Count Undefined grid points and classify them by zero-count pattern."""
    desc = _resolve(measure)
    resolved = desc.resolve_params(params)
    counts = grid_counts(n)
    values = _eval_counts(desc, resolved, counts)
    undef = np.isnan(values)

    groups: Dict[tuple, list] = {}
    for row in counts[undef]:
        pattern = tuple(name for name, c in zip(COUNT_NAMES, row) if c == 0)
        groups.setdefault(pattern, []).append(row)

    regions = []
    for pattern in sorted(groups, key=lambda p: (len(p), p)):
        rows = groups[pattern]
        span = tuple(name for name in COUNT_NAMES if name not in pattern)
        regions.append(UndefinedRegion(
            zero_pattern=pattern,
            span=span,
            kind=_KINDS[len(pattern)],
            count=len(rows),
            examples=tuple(_cm(r) for r in rows[:3]),
        ))
    return UndefinedSummary(desc.id, resolved, n, int(undef.sum()), tuple(regions))


# ---------------------------------------------------------------------------
# imbalance profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileEntry:
    fraction: float
    cm: ConfusionMatrix
    value: MeasureValue


@dataclass(frozen=True)
class ImbalanceProfile:
    measure_id: str
    params: dict
    n: int
    tpr: float
    tnr: float
    entries: tuple
    max_spread: float


def _exact_int(x: float, what: str, fallback: str) -> int:
    r = round(x)
    if abs(x - r) > 1e-9:
        raise ResolutionError(
            f"{what} = {x!r} is not an integer; nearest realizable is {fallback}")
    return int(r)


def imbalance_profile(measure, params: Optional[Mapping], n: int,
                      tpr: float, tnr: float, fractions: Sequence[float]) -> ImbalanceProfile:
    """Evaluate one (tpr, tnr) operating point across positive fractions.

    Every fraction must be exactly realizable in integer counts: P = f*n,
    tp = tpr*P and tn = tnr*(n-P) all integers with 0 < P < n.
    """
    desc = _resolve(measure)
    resolved = desc.resolve_params(params)
    entries = []
    values = []
    for f in fractions:
        p = _exact_int(f * n, f"positive count f*n for f={f!r}",
                       f"f={round(f * n) / n:g}")
        if not 0 < p < n:
            raise ResolutionError(
                f"fraction {f!r} leaves an empty class at n={n}; need 0 < f < 1 "
                f"with integer f*n")
        neg = n - p
        tp = _exact_int(tpr * p, f"tp = tpr*P for f={f!r}",
                        f"tpr={round(tpr * p) / p:g}")
        tn = _exact_int(tnr * neg, f"tn = tnr*(n-P) for f={f!r}",
                        f"tnr={round(tnr * neg) / neg:g}")
        cm = ConfusionMatrix(tp, p - tp, neg - tn, tn)
        v = desc.evaluate(cm, resolved)
        entries.append(ProfileEntry(p / n, cm, v))
        if v is not None:
            values.append(v)
    spread = (max(values) - min(values)) if len(values) >= 2 else 0.0
    return ImbalanceProfile(desc.id, resolved, n, tpr, tnr, tuple(entries), spread)


# ---------------------------------------------------------------------------
# the measure x property matrix
# ---------------------------------------------------------------------------

_CHECKS = {
    "monotonicity": check_monotonicity,
    "class_swap_symmetry": check_class_swap_symmetry,
    "error_type_symmetry": check_error_type_symmetry,
}

_CHECK_ALIASES = {
    "monotone": "monotonicity",
    "class_swap": "class_swap_symmetry",
    "classswap": "class_swap_symmetry",
    "error_type": "error_type_symmetry",
    "errortype": "error_type_symmetry",
}


def property_checks() -> list:
    """Ids of the verdict-producing checks, in matrix column order."""
    return list(_CHECKS)


def get_property_check(property_id: str) -> Callable:
    key = str(property_id).casefold().replace("-", "_").replace(" ", "_")
    key = _CHECK_ALIASES.get(key, key)
    if key not in _CHECKS:
        raise ParameterError(
            f"unknown property {property_id!r}; expected one of {list(_CHECKS)}")
    return _CHECKS[key]


@dataclass
class MatrixCell:
    verdict: str = ""
    violations: int = 0
    undefined_pairs_skipped: int = 0
    definedness_violations: int = 0
    error: Optional[str] = None


@dataclass
class MatrixRow:
    measure_id: str
    cells: dict             # property_id -> MatrixCell
    undefined_points: Optional[int] = None
    undefined_error: Optional[str] = None


@dataclass
class PropertyMatrix:
    n: int
    rows: list


def _matrix_row(measure_id: str, params: Optional[Mapping], n: int) -> MatrixRow:
    cells = {}
    for pid, check in _CHECKS.items():
        cell = MatrixCell()
        try:
            report = check(measure_id, params, n)
            cell.verdict = report.verdict
            cell.violations = report.violations
            cell.undefined_pairs_skipped = report.undefined_pairs_skipped
            cell.definedness_violations = report.definedness_violations
        except Exception as exc:  # per-cell aggregation must not abort the table
            cell.error = f"{type(exc).__name__}: {exc}"
        cells[pid] = cell
    row = MatrixRow(measure_id=measure_id, cells=cells)
    try:
        row.undefined_points = detect_undefined_regions(measure_id, params, n).count
    except Exception as exc:
        row.undefined_error = f"{type(exc).__name__}: {exc}"
    return row


def _thread_count() -> int:
    raw = os.environ.get("TETRAMETRICS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def property_matrix(measures=None, params_defaults: Optional[Mapping] = None,
                    n: int = 25) -> PropertyMatrix:
    """Run every check for each measure; rows follow registry order.

    ``params_defaults`` maps measure id to a parameter override dict.
    Per-cell failures are recorded in the cell, never raised.
    """
    if measures is None:
        ids = measure_ids()
    else:
        wanted = {(_resolve(m).id) for m in measures}
        ids = [mid for mid in measure_ids() if mid in wanted]
        missing = wanted - set(ids)
        if missing:
            raise UnknownMeasureError(sorted(missing)[0])
    overrides = dict(params_defaults or {})
    workers = _thread_count()
    if workers > 1 and len(ids) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_matrix_row, mid, overrides.get(mid), n) for mid in ids]
            rows = [f.result() for f in futures]
    else:
        rows = [_matrix_row(mid, overrides.get(mid), n) for mid in ids]
    return PropertyMatrix(n=n, rows=rows)


def _cell_text(cell: MatrixCell) -> str:
    if cell.error:
        return f"error: {cell.error}"
    if cell.verdict == "fails":
        return f"fails ({cell.violations})"
    return cell.verdict


def property_matrix_markdown(matrix: PropertyMatrix) -> str:
    cols = property_checks()
    header = "| measure | " + " | ".join(cols) + " | undefined_points |"
    sep = "|" + "---|" * (len(cols) + 2)
    lines = [header, sep]
    for row in matrix.rows:
        undef = row.undefined_points if row.undefined_error is None else f"error: {row.undefined_error}"
        cells = " | ".join(_cell_text(row.cells[c]) for c in cols)
        lines.append(f"| {row.measure_id} | {cells} | {undef} |")
    return "\n".join(lines) + "\n"


def property_matrix_csv(matrix: PropertyMatrix) -> str:
    lines = ["measure,property,verdict,violations,undefined_skipped"]
    for row in matrix.rows:
        for pid in property_checks():
            cell = row.cells[pid]
            verdict = cell.verdict if cell.error is None else "error"
            lines.append(f"{row.measure_id},{pid},{verdict},{cell.violations},"
                         f"{cell.undefined_pairs_skipped}")
        undef = "" if row.undefined_points is None else row.undefined_points
        lines.append(f"{row.measure_id},undefined_points,counted,{undef},")
    return "\n".join(lines) + "\n"
