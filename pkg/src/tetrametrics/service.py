"""HTTP JSON API over fields, slices, property reports and thresholds.

Every endpoint is a pure GET: identical query strings yield byte-identical
bodies (fixed key order, repr-based float formatting, Undefined encoded as
null).  An ETag derived from the path, canonical query and registry
version makes the responses cache-safe, and a small LRU memo of rendered
field bodies may serve repeats without recomputation (observably
identical either way).
"""

import hashlib
import json
import math
from collections import OrderedDict
from threading import Lock
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import __version__
from .errors import (
    BracketError,
    EmptyGamutError,
    OracleShapeError,
    ParameterError,
    ResolutionError,
    TetrametricsError,
    UndefinedValueError,
    UnknownMeasureError,
)
from .geometry import CANONICAL_TETRAHEDRON, cross_section, field_arrays
from .grid import grid_size
from .measures import get_measure, list_measures
from .properties import detect_undefined_regions, property_checks, property_matrix
from .thresholds import find_threshold

DEFAULT_MAX_N = 120
# crude work estimate cap for props/threshold requests: measures x points x evals
DEFAULT_BUDGET = 5_000_000

CODE_ARGUMENT = 2
CODE_RESOLUTION = 3
CODE_BRACKET = 4


class ApiError(Exception):
    def __init__(self, status: int, code: int, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _json_bytes(payload) -> bytes:
    # fixed separators + insertion order => byte determinism; NaN must never leak
    return json.dumps(payload, separators=(",", ":"), allow_nan=False).encode()


def _none_if_nan(x: float) -> Optional[float]:
    x = float(x)
    return None if math.isnan(x) else x


class _LruMemo:
    """Bounded query-string -> rendered-body memo; purely an optimization."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self._lock = Lock()

    def get(self, key):
        if self.capacity <= 0:
            return None
        with self._lock:
            if key not in self._data:
                return None
            self._data.move_to_end(key)
            return self._data[key]

    def put(self, key, value):
        if self.capacity <= 0:
            return
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)


def _canonical_query(request: Request) -> str:
    items = sorted(request.query_params.multi_items())
    return "&".join(f"{k}={v}" for k, v in items)


def _collect_params(request: Request) -> dict:
    params = {}
    for key, value in request.query_params.multi_items():
        if key.startswith("param."):
            name = key[len("param."):]
            try:
                params[name] = float(value)
            except ValueError:
                raise ApiError(400, CODE_ARGUMENT,
                               f"parameter {name!r} has non-numeric value {value!r}")
    return params


def _int_arg(request: Request, name: str, default=None) -> int:
    raw = request.query_params.get(name)
    if raw is None:
        if default is None:
            raise ApiError(400, CODE_ARGUMENT, f"missing required query field {name!r}")
        return default
    try:
        return int(raw)
    except ValueError:
        raise ApiError(400, CODE_ARGUMENT, f"query field {name!r} must be an integer, got {raw!r}")


def _float_arg(request: Request, name: str, default=None) -> float:
    raw = request.query_params.get(name)
    if raw is None:
        if default is None:
            raise ApiError(400, CODE_ARGUMENT, f"missing required query field {name!r}")
        return default
    try:
        return float(raw)
    except ValueError:
        raise ApiError(400, CODE_ARGUMENT, f"query field {name!r} must be a number, got {raw!r}")


def _lookup(measure_id: Optional[str]):
    if not measure_id:
        raise ApiError(400, CODE_ARGUMENT, "missing required query field 'measure'")
    try:
        return get_measure(measure_id)
    except UnknownMeasureError as exc:
        raise ApiError(404, CODE_ARGUMENT, str(exc))


def create_app(max_n: int = DEFAULT_MAX_N, budget: int = DEFAULT_BUDGET,
               memo_capacity: int = 64) -> FastAPI:
    app = FastAPI(title="tetrametrics", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    memo = _LruMemo(memo_capacity)

    def reply(request: Request, payload_bytes: bytes, status: int = 200) -> Response:
        etag = '"' + hashlib.sha256(
            (request.url.path + "?" + _canonical_query(request) + "#" + __version__).encode()
        ).hexdigest()[:32] + '"'
        if status == 200 and request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return Response(content=payload_bytes, status_code=status,
                        media_type="application/json", headers={"ETag": etag})

    def fail(request: Request, exc: ApiError) -> Response:
        body = _json_bytes({"error": True, "code": exc.code, "message": exc.message})
        return reply(request, body, status=exc.status)

    @app.exception_handler(ApiError)
    async def _api_error_handler(request: Request, exc: ApiError):
        return fail(request, exc)

    @app.exception_handler(TetrametricsError)
    async def _lib_error_handler(request: Request, exc: TetrametricsError):
        return fail(request, _to_api_error(exc))

    def _to_api_error(exc: TetrametricsError) -> ApiError:
        if isinstance(exc, UnknownMeasureError):
            return ApiError(404, CODE_ARGUMENT, str(exc))
        if isinstance(exc, (ResolutionError, EmptyGamutError)):
            return ApiError(422, CODE_RESOLUTION, str(exc))
        if isinstance(exc, (BracketError, OracleShapeError, UndefinedValueError)):
            return ApiError(422, CODE_BRACKET, str(exc))
        return ApiError(422, CODE_ARGUMENT, str(exc))

    def _cap_n(n: int) -> int:
        if n < 1:
            raise ApiError(422, CODE_ARGUMENT, f"n must be >= 1, got {n}")
        if n > max_n:
            raise ApiError(422, CODE_RESOLUTION,
                           f"n={n} exceeds the server cap of {max_n}; lower n")
        return n

    def _guard_budget(cost: int) -> None:
        if cost > budget:
            raise ApiError(422, CODE_RESOLUTION,
                           f"request estimated at {cost} point evaluations exceeds the "
                           f"budget of {budget}; lower n or the measure count")

    @app.get("/healthz")
    def healthz():
        return Response(content=f"tetrametrics {__version__}\n", media_type="text/plain")

    @app.get("/api/measures")
    def measures(request: Request):
        entries = []
        for m in list_measures():
            entries.append({
                "id": m.id,
                "name": m.display_name,
                "formula": m.formula,
                "params": [
                    {"name": p.name, "default": p.default,
                     "lo": None if math.isinf(p.lo) else p.lo,
                     "hi": None if math.isinf(p.hi) else p.hi,
                     "lo_open": p.lo_open, "hi_open": p.hi_open}
                    for p in m.params
                ],
                "range": list(m.range),
            })
        return reply(request, _json_bytes(entries))

    @app.get("/api/field")
    def field(request: Request):
        key = _canonical_query(request)
        cached = memo.get(key)
        if cached is not None:
            return reply(request, cached)
        desc = _lookup(request.query_params.get("measure"))
        n = _cap_n(_int_arg(request, "n"))
        try:
            params = desc.resolve_params(_collect_params(request))
        except ParameterError as exc:
            raise ApiError(422, CODE_ARGUMENT, str(exc))
        f = field_arrays(desc.id, params, n)
        g = f.gamut()
        payload = {
            "measure": desc.id,
            "params": params,
            "n": n,
            "vertices": {
                "tp": list(CANONICAL_TETRAHEDRON.v_tp),
                "fn": list(CANONICAL_TETRAHEDRON.v_fn),
                "fp": list(CANONICAL_TETRAHEDRON.v_fp),
                "tn": list(CANONICAL_TETRAHEDRON.v_tn),
            },
            "points": f.counts.tolist(),
            "xyz": [float(x) for x in f.xyz.ravel()],
            "values": [_none_if_nan(v) for v in f.values],
            "gamut": {
                "min": None if g is None else g.min,
                "max": None if g is None else g.max,
                "undefined": int(len(f.values)) if g is None else g.undefined_count,
            },
        }
        body = _json_bytes(payload)
        memo.put(key, body)
        return reply(request, body)

    @app.get("/api/slice")
    def slice_endpoint(request: Request):
        desc = _lookup(request.query_params.get("measure"))
        n = _cap_n(_int_arg(request, "n"))
        fraction = _float_arg(request, "pos_fraction")
        try:
            params = desc.resolve_params(_collect_params(request))
        except ParameterError as exc:
            raise ApiError(422, CODE_ARGUMENT, str(exc))
        section = cross_section(desc.id, params, n, fraction)
        g = section.gamut()
        payload = {
            "measure": desc.id,
            "params": params,
            "n": n,
            "pos_fraction": section.pos_fraction,
            "pos_count": section.pos_count,
            "tpr_steps": list(section.tpr_steps),
            "tnr_steps": list(section.tnr_steps),
            # row-major with TNR rows ascending
            "values": [_none_if_nan(v) for v in section.values.ravel()],
            "gamut": {
                "min": None if g is None else g.min,
                "max": None if g is None else g.max,
                "undefined": int(section.values.size) if g is None else g.undefined_count,
            },
        }
        return reply(request, _json_bytes(payload))

    @app.get("/api/props")
    def props(request: Request):
        raw = request.query_params.get("measures", "all")
        if raw.strip() == "all":
            ids = None
            count = len(list_measures())
        else:
            ids = [_lookup(tok.strip()).id for tok in raw.split(",") if tok.strip()]
            count = len(ids)
        n = _cap_n(_int_arg(request, "n"))
        _guard_budget(count * grid_size(n) * 9)
        params = _collect_params(request)
        overrides = {mid: params for mid in (ids or [])} if params else None
        if params and ids is None:
            raise ApiError(422, CODE_ARGUMENT,
                           "param.* overrides require an explicit measure list")
        matrix = property_matrix(ids, overrides, n)
        rows = []
        for row in matrix.rows:
            entry = {"measure": row.measure_id}
            for pid in property_checks():
                cell = row.cells[pid]
                entry[pid] = {
                    "verdict": cell.verdict if cell.error is None else "error",
                    "violations": cell.violations,
                    "undefined_skipped": cell.undefined_pairs_skipped,
                    "definedness_violations": cell.definedness_violations,
                }
            entry["undefined_points"] = row.undefined_points
            rows.append(entry)
        return reply(request, _json_bytes({"n": n, "rows": rows}))

    @app.get("/api/threshold")
    def threshold(request: Request):
        desc = _lookup(request.query_params.get("measure"))
        param = request.query_params.get("param")
        prop = request.query_params.get("property")
        if not param or not prop:
            raise ApiError(400, CODE_ARGUMENT,
                           "query fields 'param' and 'property' are required")
        lo = _float_arg(request, "lo")
        hi = _float_arg(request, "hi")
        tol = _float_arg(request, "tol", 1e-3)
        n = _cap_n(_int_arg(request, "n", 40))
        # bisection depth + scan, 3 evaluations per point per check
        steps = 14 + max(0, math.ceil(math.log2(max(2.0, (hi - lo) / max(tol, 1e-12)))))
        _guard_budget(grid_size(n) * 3 * steps)
        base = _collect_params(request)
        base.pop(param, None)
        result = find_threshold(desc.id, param, prop, (lo, hi), tol, n, params=base)
        return reply(request, _json_bytes(result.to_json_dict()))

    @app.get("/api/undefined")
    def undefined(request: Request):
        desc = _lookup(request.query_params.get("measure"))
        n = _cap_n(_int_arg(request, "n"))
        try:
            params = desc.resolve_params(_collect_params(request))
        except ParameterError as exc:
            raise ApiError(422, CODE_ARGUMENT, str(exc))
        summary = detect_undefined_regions(desc.id, params, n)
        payload = {
            "measure": desc.id,
            "n": n,
            "count": summary.count,
            "regions": [
                {"kind": r.kind, "zero": list(r.zero_pattern), "span": list(r.span),
                 "count": r.count,
                 "examples": [list(cm.as_tuple()) for cm in r.examples]}
                for r in summary.regions
            ],
        }
        return reply(request, _json_bytes(payload))

    return app
