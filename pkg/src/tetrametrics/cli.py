"""Command-line front end for batch sampling, exports, checks and thresholds.

Exit codes: 0 success, 2 argument error, 3 resolution/realizability error,
4 bracket/oracle-shape error, 5 I/O error.  All file output is
byte-deterministic.  A JSON config file (--config) can pre-set any long
option, with explicit flags winning; keys match the option names with
dashes or underscores.  TETRAMETRICS_THREADS caps worker threads for the
property matrix.
"""

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .confusion import ConfusionMatrix
from .errors import (
    BracketError,
    ColormapError,
    EmptyGamutError,
    OracleShapeError,
    ParameterError,
    ResolutionError,
    TetrametricsError,
    UndefinedValueError,
    UnknownMeasureError,
)
from .exports import (
    format_float,
    write_field_csv,
    write_field_ply,
    write_slice_csv,
    write_slice_ppm,
)
from .geometry import Colormap, DEFAULT_COLORMAP, cross_section, field_arrays, skeleton
from .measures import get_measure, list_measures
from .properties import property_matrix, property_matrix_csv, property_matrix_markdown
from .thresholds import find_threshold, rank_flip_threshold

DEFAULT_MAX_N = 300

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_RESOLUTION = 3
EXIT_BRACKET = 4
EXIT_IO = 5


def _parse_params(pairs: Optional[List[str]]) -> dict:
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ParameterError(f"--param expects name=value, got {pair!r}")
        name, _, raw = pair.partition("=")
        try:
            params[name.strip()] = float(raw)
        except ValueError:
            raise ParameterError(
                f"parameter {name.strip()!r} has non-numeric value {raw!r}") from None
    return params


def _parse_cm(text: str) -> ConfusionMatrix:
    parts = str(text).split(",")
    if len(parts) != 4:
        raise ParameterError(f"expected tp,fn,fp,tn, got {text!r}")
    try:
        return ConfusionMatrix(*(int(p) for p in parts))
    except ValueError as exc:
        raise ParameterError(str(exc)) from None


def _load_colormap(path: Optional[str]) -> Colormap:
    if not path:
        return DEFAULT_COLORMAP
    with open(path) as f:
        spec = json.load(f)
    try:
        stops = tuple((float(p), tuple(int(c) for c in rgb)) for p, rgb in spec["stops"])
        sentinel = tuple(int(c) for c in spec.get("sentinel", (128, 128, 128)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ColormapError(f"malformed colormap file {path}: {exc}") from None
    return Colormap(stops=stops, sentinel=sentinel)


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            flag = "--" + name.replace("_", "-")
            raise ParameterError(f"{flag} is required for {args.command!r}")


def _check_cap(n, cap) -> None:
    n, cap = int(n), int(cap)
    if n < 1:
        raise ParameterError(f"--n must be >= 1, got {n}")
    if n > cap:
        raise ParameterError(
            f"--n {n} exceeds the cap of {cap} "
            f"(~{(cap + 3) * (cap + 2) * (cap + 1) // 6} grid points); "
            f"raise --max-n explicitly if you mean it")


def _out_stream(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


def _write_text(path: Optional[str], text: str) -> None:
    stream, owned = _out_stream(path)
    try:
        stream.write(text)
    finally:
        if owned:
            stream.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetrametrics",
        description="Classification-measure analysis over the confusion-matrix simplex.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="registry inspection")
    p.add_argument("action", choices=["list"])

    p = sub.add_parser("field", help="evaluate a measure over the whole simplex grid")
    p.add_argument("--measure")
    p.add_argument("--n", type=int)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "ply"], default="csv")
    p.add_argument("--colormap", help="JSON colormap spec (PLY color scale)")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("slice", help="fixed positive-fraction cross-section (PPM + CSV)")
    p.add_argument("--measure")
    p.add_argument("--n", type=int)
    p.add_argument("--pos-fraction", type=float)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--out", metavar="PREFIX")
    p.add_argument("--colormap")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("skeleton", help="measure values on the six tetrahedron edges")
    p.add_argument("--measure")
    p.add_argument("--n", type=int)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--out")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("props", help="property matrix for a set of measures")
    p.add_argument("--measures", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["md", "csv"], default="md")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("threshold", help="bisect a property flip over a parameter bracket")
    p.add_argument("--measure")
    p.add_argument("--param", metavar="NAME")
    p.add_argument("--property", dest="property_id")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--base-param", action="append", metavar="NAME=VALUE",
                   help="fixed values for the measure's other parameters")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    p = sub.add_parser("rankflip", help="parameter value where two matrices tie")
    p.add_argument("--measure")
    p.add_argument("--param", metavar="NAME")
    p.add_argument("--cm-a", metavar="TP,FN,FP,TN")
    p.add_argument("--cm-b", metavar="TP,FN,FP,TN")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--base-param", action="append", metavar="NAME=VALUE")

    p = sub.add_parser("serve", help="start the HTTP field service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--max-n", type=int, default=120)

    return parser


def _config_path(argv: List[str]) -> Optional[str]:
    for i, token in enumerate(argv):
        if token == "--config":
            if i + 1 >= len(argv):
                raise ParameterError("--config expects a path")
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def parse_args(argv: List[str]) -> argparse.Namespace:
    """Parse argv with optional config-file defaults (flags win)."""
    parser = build_parser()
    path = _config_path(argv)
    if path:
        with open(path) as f:
            config = json.load(f)
        if not isinstance(config, dict):
            raise ParameterError("config file must hold a JSON object")
        defaults = {k.replace("-", "_"): v for k, v in config.items()}
        if "property" in defaults:
            defaults["property_id"] = defaults.pop("property")
        # parser-level defaults override argument defaults but not flags
        parser.set_defaults(**defaults)
        for action in parser._actions:  # noqa: SLF001 - argparse offers no public walk
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _cmd_measures(args) -> int:
    rows = []
    for m in list_measures():
        params = "; ".join(
            f"{p.name}={p.default:g} in {p.interval_str()}" for p in m.params) or "-"
        rows.append((m.id, m.display_name, f"[{m.range[0]:g}, {m.range[1]:g}]", params))
    header = ("id", "name", "range", "parameters")
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    print(line)
    print("-" * len(line))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return EXIT_OK


def _cmd_field(args) -> int:
    _require(args, "measure", "n")
    _check_cap(args.n, args.max_n)
    field = field_arrays(args.measure, _parse_params(args.param), int(args.n))
    stream, owned = _out_stream(args.out)
    try:
        if args.format == "csv":
            write_field_csv(stream, field)
        else:
            write_field_ply(stream, field, _load_colormap(args.colormap))
    finally:
        if owned:
            stream.close()
    return EXIT_OK


def _cmd_slice(args) -> int:
    _require(args, "measure", "n", "pos_fraction", "out")
    _check_cap(args.n, args.max_n)
    section = cross_section(args.measure, _parse_params(args.param), int(args.n),
                            float(args.pos_fraction))
    write_slice_ppm(args.out + ".ppm", section, _load_colormap(args.colormap))
    write_slice_csv(args.out + ".csv", section)
    rows, cols = section.shape
    print(f"wrote {args.out}.ppm ({cols}x{rows}) and {args.out}.csv "
          f"(P={section.pos_count})", file=sys.stderr)
    return EXIT_OK


def _cmd_skeleton(args) -> int:
    _require(args, "measure", "n")
    _check_cap(args.n, args.max_n)
    samples = skeleton(args.measure, _parse_params(args.param), int(args.n))
    lines = ["tp,fn,fp,tn,x,y,z,value"]
    for s in samples:
        val = "" if s.value is None else format_float(s.value)
        lines.append("%d,%d,%d,%d,%s,%s,%s,%s" % (
            s.cm.tp, s.cm.fn_, s.cm.fp, s.cm.tn,
            format_float(s.xyz[0]), format_float(s.xyz[1]), format_float(s.xyz[2]), val))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_props(args) -> int:
    _require(args, "n")
    _check_cap(args.n, args.max_n)
    if str(args.measures).strip() == "all":
        ids = None
    else:
        ids = [get_measure(m.strip()).id
               for m in str(args.measures).split(",") if m.strip()]
    matrix = property_matrix(ids, None, int(args.n))
    text = (property_matrix_markdown(matrix) if args.format == "md"
            else property_matrix_csv(matrix))
    _write_text(args.out, text)
    return EXIT_OK


def _cmd_threshold(args) -> int:
    _require(args, "measure", "param", "property_id", "lo", "hi")
    _check_cap(args.n, args.max_n)
    result = find_threshold(args.measure, args.param, args.property_id,
                            (float(args.lo), float(args.hi)), float(args.tol),
                            int(args.n), params=_parse_params(args.base_param))
    print(result.to_json())
    return EXIT_OK


def _cmd_rankflip(args) -> int:
    _require(args, "measure", "param", "cm_a", "cm_b", "lo", "hi")
    cm_a = _parse_cm(args.cm_a)
    cm_b = _parse_cm(args.cm_b)
    estimate = rank_flip_threshold(args.measure, args.param, cm_a, cm_b,
                                   (float(args.lo), float(args.hi)), float(args.tol),
                                   params=_parse_params(args.base_param))
    print(json.dumps({
        "measure": get_measure(args.measure).id,
        "param": args.param,
        "cm_a": list(cm_a.as_tuple()),
        "cm_b": list(cm_b.as_tuple()),
        "lo": float(args.lo),
        "hi": float(args.hi),
        "estimate": estimate,
        "tol": float(args.tol),
    }))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(max_n=int(args.max_n))
    uvicorn.run(app, host=args.host, port=int(args.port))
    return EXIT_OK


_COMMANDS = {
    "measures": _cmd_measures,
    "field": _cmd_field,
    "slice": _cmd_slice,
    "skeleton": _cmd_skeleton,
    "props": _cmd_props,
    "threshold": _cmd_threshold,
    "rankflip": _cmd_rankflip,
    "serve": _cmd_serve,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv and execute; returns the exit code instead of exiting."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except SystemExit as exc:  # argparse reports its own errors with code 2
        return int(exc.code or 0)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT

    try:
        return _COMMANDS[args.command](args)
    except (UnknownMeasureError, ParameterError, ColormapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except (ResolutionError, EmptyGamutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOLUTION
    except (BracketError, OracleShapeError, UndefinedValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TetrametricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
