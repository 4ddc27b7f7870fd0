"""Barycentric embedding of the confusion-matrix simplex into 3D.

Confusion matrices with total n form a 3-simplex; normalized counts are
barycentric coordinates over the four vertices TP, FN, FP, TN, embedded
here into a regular tetrahedron centered at the origin.  Also provides
exhaustive measure fields over the grid, fixed-imbalance cross-sections,
the edge skeleton, and value-to-color mapping.
"""

import math
from dataclasses import dataclass
from typing import List, Mapping, Optional

import numpy as np

from .confusion import ConfusionMatrix
from .errors import ColormapError, ResolutionError
from .grid import grid_counts
from .measures import Gamut, MeasureValue, get_measure

__all__ = [
    "BarycentricPoint",
    "TetraVertexSet",
    "CANONICAL_TETRAHEDRON",
    "FieldSample",
    "Field",
    "CrossSection",
    "Colormap",
    "DEFAULT_COLORMAP",
    "SENTINEL_GRAY",
    "to_cartesian",
    "sample_field",
    "field_arrays",
    "cross_section",
    "skeleton",
    "colorize",
]


@dataclass(frozen=True)
class BarycentricPoint:
    """Non-negative weights (a, b, c, d) over (TP, FN, FP, TN), summing to 1."""

    a: float
    b: float
    c: float
    d: float

    _TOL = 1e-12

    def __post_init__(self):
        coords = (self.a, self.b, self.c, self.d)
        if min(coords) < -self._TOL:
            raise ValueError(f"negative barycentric coordinate in {coords}")
        if abs(sum(coords) - 1.0) > self._TOL:
            raise ValueError(f"barycentric coordinates must sum to 1, got {sum(coords)!r}")

    @classmethod
    def from_counts(cls, cm: ConfusionMatrix) -> "BarycentricPoint":
        t = cm.total()
        return cls(cm.tp / t, cm.fn_ / t, cm.fp / t, cm.tn / t)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


@dataclass(frozen=True)
class TetraVertexSet:
    """Four 3D vertices labeled by confusion-matrix corner.

    Must form a regular tetrahedron with centroid at the origin; checked
    at construction.
    """

    v_tp: tuple
    v_fn: tuple
    v_fp: tuple
    v_tn: tuple

    def __post_init__(self):
        m = self.as_matrix()
        centroid = m.mean(axis=0)
        if not np.allclose(centroid, 0.0, atol=1e-9):
            raise ValueError(f"tetrahedron centroid must be the origin, got {centroid}")
        dists = [np.linalg.norm(m[i] - m[j]) for i in range(4) for j in range(i + 1, 4)]
        if max(dists) - min(dists) > 1e-9 or min(dists) <= 0:
            raise ValueError("vertices do not form a regular tetrahedron")

    def as_matrix(self) -> np.ndarray:
        return np.array([self.v_tp, self.v_fn, self.v_fp, self.v_tn], dtype=float)

    def labels(self) -> tuple:
        return ("TP", "FN", "FP", "TN")


# Unit-cube alternate-corner embedding scaled to unit circumradius.  The
# TP and TN vertices sit on a common face diagonal, which keeps the
# "good classifier" TP-TN edge visually prominent.
_S = 1.0 / math.sqrt(3.0)
CANONICAL_TETRAHEDRON = TetraVertexSet(
    v_tp=(_S, _S, _S),
    v_fn=(_S, -_S, -_S),
    v_fp=(-_S, _S, -_S),
    v_tn=(-_S, -_S, _S),
)


def to_cartesian(bary: BarycentricPoint, verts: TetraVertexSet = CANONICAL_TETRAHEDRON) -> np.ndarray:
    """Affine combination a*V_TP + b*V_FN + c*V_FP + d*V_TN."""
    return bary.as_array() @ verts.as_matrix()


@dataclass(frozen=True)
class FieldSample:
    """One evaluated grid point: counts, barycentric/Cartesian position, value."""

    cm: ConfusionMatrix
    bary: BarycentricPoint
    xyz: tuple
    value: MeasureValue


@dataclass(frozen=True)
class Field:
    """Bulk form of a sampled field; arrays share the enumeration order."""

    measure_id: str
    params: dict
    n: int
    counts: np.ndarray   # (M, 4) int64
    xyz: np.ndarray      # (M, 3) float64
    values: np.ndarray   # (M,) float64, NaN = Undefined
    vertices: TetraVertexSet

    def gamut(self) -> Optional[Gamut]:
        """Observed gamut, or None when every point is Undefined."""
        undefined = int(np.isnan(self.values).sum())
        if undefined == len(self.values):
            return None
        return Gamut(float(np.nanmin(self.values)), float(np.nanmax(self.values)), undefined)

    def samples(self) -> List[FieldSample]:
        return _to_samples(self.counts, self.xyz, self.values)


def _embed_counts(counts: np.ndarray, verts: TetraVertexSet) -> np.ndarray:
    bary = counts / counts.sum(axis=1, keepdims=True)
    return bary @ verts.as_matrix()


def _to_samples(counts, xyz, values) -> List[FieldSample]:
    out = []
    for row, pos, v in zip(counts, xyz, values):
        cm = ConfusionMatrix(*(int(x) for x in row))
        out.append(FieldSample(
            cm=cm,
            bary=BarycentricPoint.from_counts(cm),
            xyz=tuple(float(x) for x in pos),
            value=None if math.isnan(v) else float(v),
        ))
    return out


def field_arrays(measure_id: str, params: Optional[Mapping] = None, n: int = 25,
                 verts: TetraVertexSet = CANONICAL_TETRAHEDRON) -> Field:
    """Evaluate a measure over the whole resolution-n grid (array form)."""
    desc = get_measure(measure_id)
    resolved = desc.resolve_params(params)
    counts = grid_counts(n)
    values = desc.evaluate_arrays(counts[:, 0], counts[:, 1], counts[:, 2], counts[:, 3], resolved)
    return Field(
        measure_id=desc.id,
        params=resolved,
        n=n,
        counts=counts,
        xyz=_embed_counts(counts, verts),
        values=values,
        vertices=verts,
    )


def sample_field(measure_id: str, params: Optional[Mapping] = None, n: int = 25,
                 verts: TetraVertexSet = CANONICAL_TETRAHEDRON) -> List[FieldSample]:
    """One FieldSample per grid point, in enumeration order."""
    return field_arrays(measure_id, params, n, verts).samples()


@dataclass(frozen=True)
class CrossSection:
    """Fixed positive-fraction slice of the simplex.

    ``values[row, col]`` has TNR ascending with ``row`` and TPR ascending
    with ``col``: row r is tn = r (of n-P), column c is tp = c (of P).
    Degenerate slices (P = 0 or P = n) collapse the corresponding axis to
    a single step whose rate is undefined (None).
    """

    measure_id: str
    params: dict
    n: int
    pos_count: int
    pos_fraction: float
    counts: np.ndarray        # (rows, cols, 4) int64
    values: np.ndarray        # (rows, cols) float64, NaN = Undefined
    tpr_steps: tuple          # length cols; entries None when P = 0
    tnr_steps: tuple          # length rows; entries None when P = n

    @property
    def shape(self) -> tuple:
        return self.values.shape

    def gamut(self) -> Optional[Gamut]:
        undefined = int(np.isnan(self.values).sum())
        if undefined == self.values.size:
            return None
        return Gamut(float(np.nanmin(self.values)), float(np.nanmax(self.values)), undefined)

    def samples(self) -> List[List[FieldSample]]:
        rows = []
        for r in range(self.values.shape[0]):
            rows.append(_to_samples(
                self.counts[r], _embed_counts(self.counts[r], CANONICAL_TETRAHEDRON),
                self.values[r]))
        return rows


def _positive_count(n: int, f: float) -> int:
    p_real = f * n
    p = round(p_real)
    if abs(p_real - p) > 1e-9 or not (0 <= p <= n):
        lo = max(0, min(n, math.floor(p_real))) / n
        hi = max(0, min(n, math.ceil(p_real))) / n
        raise ResolutionError(
            f"pos_fraction {f!r} gives non-integer positive count {p_real!r} at n={n}; "
            f"nearest realizable fractions are {lo:g} (P={round(lo*n)}) and {hi:g} (P={round(hi*n)})",
            suggestions=(lo, hi),
        )
    return int(p)


def cross_section(measure_id: str, params: Optional[Mapping], n: int, f: float) -> CrossSection:
    """Raster of the slice (tp+fn)/n = f with TPR/TNR axes."""
    desc = get_measure(measure_id)
    resolved = desc.resolve_params(params)
    p = _positive_count(n, f)
    neg = n - p
    tp = np.arange(p + 1)
    tn = np.arange(neg + 1)
    tp_grid, tn_grid = np.meshgrid(tp, tn, indexing="xy")  # rows = tn, cols = tp
    counts = np.stack(
        [tp_grid, p - tp_grid, neg - tn_grid, tn_grid], axis=-1
    ).astype(np.int64)
    values = desc.evaluate_arrays(
        counts[..., 0], counts[..., 1], counts[..., 2], counts[..., 3], resolved
    )
    tpr_steps = tuple(c / p for c in range(p + 1)) if p > 0 else (None,)
    tnr_steps = tuple(r / neg for r in range(neg + 1)) if neg > 0 else (None,)
    return CrossSection(
        measure_id=desc.id,
        params=resolved,
        n=n,
        pos_count=p,
        pos_fraction=p / n,
        counts=counts,
        values=values,
        tpr_steps=tpr_steps,
        tnr_steps=tnr_steps,
    )


def skeleton(measure_id: str, params: Optional[Mapping] = None, n: int = 25,
             verts: TetraVertexSet = CANONICAL_TETRAHEDRON) -> List[FieldSample]:
    """Grid points on the six tetrahedron edges (at least two zero counts).

    Count is 6(n-1) + 4: the four vertices plus n-1 interior points per edge.
    """
    field = field_arrays(measure_id, params, n, verts)
    zeros = (field.counts == 0).sum(axis=1)
    mask = zeros >= 2
    return _to_samples(field.counts[mask], field.xyz[mask], field.values[mask])


SENTINEL_GRAY = (128, 128, 128)


@dataclass(frozen=True)
class Colormap:
    """Piecewise-linear RGB map over [0, 1] plus a sentinel for Undefined."""

    stops: tuple  # ((position, (r, g, b)), ...)
    sentinel: tuple = SENTINEL_GRAY

    def __post_init__(self):
        if len(self.stops) < 2:
            raise ColormapError("colormap needs at least two stops")
        positions = [s[0] for s in self.stops]
        if positions[0] != 0.0 or positions[-1] != 1.0:
            raise ColormapError("colormap stops must start at 0 and end at 1")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ColormapError("colormap stop positions must be strictly increasing")
        for _, rgb in self.stops:
            if len(rgb) != 3 or any((not 0 <= int(c) <= 255) or int(c) != c for c in rgb):
                raise ColormapError(f"invalid RGB triple {rgb!r}")
        if len(self.sentinel) != 3:
            raise ColormapError(f"invalid sentinel color {self.sentinel!r}")

    def positions(self) -> np.ndarray:
        return np.array([s[0] for s in self.stops])

    def channels(self) -> np.ndarray:
        return np.array([s[1] for s in self.stops], dtype=float)


# Diverging default: blue through white to red, gray sentinel.
DEFAULT_COLORMAP = Colormap(stops=(
    (0.0, (59, 76, 192)),
    (0.5, (255, 255, 255)),
    (1.0, (180, 4, 38)),
))


def _values_of(samples) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return samples.astype(float).ravel()  # rasters flatten row-major
    out = np.empty(len(samples))
    for i, s in enumerate(samples):
        v = s.value if isinstance(s, FieldSample) else s
        out[i] = np.nan if v is None else v
    return out


def colorize(samples, colormap: Colormap = DEFAULT_COLORMAP,
             gamut: Gamut = None) -> np.ndarray:
    """Map values to uint8 RGB rows through the colormap.

    Defined values are normalized linearly over the gamut (clipped to
    [0, 1]), then interpolated through the stops; Undefined points get the
    sentinel color.  Requires gamut.min < gamut.max.
    """
    if not isinstance(colormap, Colormap):
        raise ColormapError(f"expected a Colormap, got {type(colormap).__name__}")
    if gamut is None or not (gamut.min < gamut.max):
        raise ValueError("colorize requires a gamut with min < max")
    values = _values_of(samples)
    undefined = np.isnan(values)
    t = np.clip((values - gamut.min) / (gamut.max - gamut.min), 0.0, 1.0)
    t[undefined] = 0.0  # placeholder; overwritten by sentinel below
    pos = colormap.positions()
    chan = colormap.channels()
    rgb = np.empty((len(values), 3))
    for c in range(3):
        rgb[:, c] = np.interp(t, pos, chan[:, c])
    out = np.rint(rgb).astype(np.uint8)
    out[undefined] = np.array(colormap.sentinel, dtype=np.uint8)
    return out
