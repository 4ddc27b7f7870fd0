"""Deterministic file exports: field CSV, point-cloud PLY, slice PPM/CSV.

All floats are written with 9 significant digits (%.9g) and all text uses
LF line endings, so identical inputs always produce byte-identical files.
"""

import math
from typing import Optional

import numpy as np

from .geometry import Colormap, CrossSection, DEFAULT_COLORMAP, Field, colorize
from .measures import Gamut

__all__ = [
    "format_float",
    "write_field_csv",
    "read_field_csv",
    "write_ply",
    "colors_for_values",
    "write_slice_ppm",
    "write_slice_csv",
]


def format_float(x: float) -> str:
    return "%.9g" % x


def _open_text(path_or_file, mode="w"):
    if hasattr(path_or_file, "write") or hasattr(path_or_file, "read"):
        return path_or_file, False
    return open(path_or_file, mode, newline="\n"), True


FIELD_CSV_HEADER = "tp,fn,fp,tn,x,y,z,value"


def write_field_csv(path_or_file, field: Field) -> None:
    """Header tp,fn,fp,tn,x,y,z,value; empty value column marks Undefined."""
    f, owned = _open_text(path_or_file)
    try:
        f.write(FIELD_CSV_HEADER + "\n")
        for row, pos, v in zip(field.counts, field.xyz, field.values):
            val = "" if math.isnan(v) else format_float(v)
            f.write("%d,%d,%d,%d,%s,%s,%s,%s\n" % (
                row[0], row[1], row[2], row[3],
                format_float(pos[0]), format_float(pos[1]), format_float(pos[2]),
                val,
            ))
    finally:
        if owned:
            f.close()


def read_field_csv(path_or_file):
    """Parse a field CSV back into (counts, xyz, values) arrays."""
    f, owned = _open_text(path_or_file, "r")
    try:
        header = f.readline().strip()
        if header != FIELD_CSV_HEADER:
            raise ValueError(f"unexpected field CSV header: {header!r}")
        counts, xyz, values = [], [], []
        for line in f:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            counts.append([int(p) for p in parts[:4]])
            xyz.append([float(p) for p in parts[4:7]])
            values.append(float("nan") if parts[7] == "" else float(parts[7]))
        return (np.array(counts, dtype=np.int64),
                np.array(xyz, dtype=float),
                np.array(values, dtype=float))
    finally:
        if owned:
            f.close()


def colors_for_values(values: np.ndarray, colormap: Colormap = DEFAULT_COLORMAP,
                      gamut: Optional[Gamut] = None) -> np.ndarray:
    """Colorize with graceful handling of degenerate gamuts.

    All-Undefined data maps everything to the sentinel; a constant field
    maps every Defined value to the colormap midpoint.
    """
    values = np.asarray(values, dtype=float).ravel()
    if gamut is None:
        undefined = np.isnan(values)
        if undefined.all():
            return np.tile(np.array(colormap.sentinel, dtype=np.uint8), (len(values), 1))
        gamut = Gamut(float(np.nanmin(values)), float(np.nanmax(values)),
                      int(undefined.sum()))
    if gamut.min == gamut.max:
        # constant field: normalized position is conventionally the midpoint
        shifted = Gamut(gamut.min - 0.5, gamut.min + 0.5, gamut.undefined_count)
        return colorize(values, colormap, shifted)
    return colorize(values, colormap, gamut)


def write_ply(path_or_file, xyz: np.ndarray, colors: np.ndarray) -> None:
    """ASCII PLY point cloud with per-vertex position and uchar color."""
    xyz = np.asarray(xyz, dtype=float)
    colors = np.asarray(colors)
    if len(xyz) != len(colors):
        raise ValueError("xyz and colors must have the same length")
    f, owned = _open_text(path_or_file)
    try:
        f.write("ply\n")
        f.write("format ascii 1.0\n")
        f.write("element vertex %d\n" % len(xyz))
        for axis in ("x", "y", "z"):
            f.write("property float %s\n" % axis)
        for chan in ("red", "green", "blue"):
            f.write("property uchar %s\n" % chan)
        f.write("end_header\n")
        for pos, rgb in zip(xyz, colors):
            f.write("%s %s %s %d %d %d\n" % (
                format_float(pos[0]), format_float(pos[1]), format_float(pos[2]),
                rgb[0], rgb[1], rgb[2],
            ))
    finally:
        if owned:
            f.close()


def write_field_ply(path_or_file, field: Field,
                    colormap: Colormap = DEFAULT_COLORMAP) -> None:
    colors = colors_for_values(field.values, colormap, field.gamut())
    write_ply(path_or_file, field.xyz, colors)


def write_slice_ppm(path_or_file, section: CrossSection,
                    colormap: Colormap = DEFAULT_COLORMAP) -> None:
    """Binary PPM (P6); image rows top-to-bottom means TNR descending."""
    rows, cols = section.values.shape
    colors = colors_for_values(section.values, colormap, section.gamut())
    raster = colors.reshape(rows, cols, 3)[::-1]  # top image row = highest TNR
    header = ("P6\n%d %d\n255\n" % (cols, rows)).encode("ascii")
    payload = header + raster.tobytes()
    if hasattr(path_or_file, "write"):
        path_or_file.write(payload)
    else:
        with open(path_or_file, "wb") as f:
            f.write(payload)


def write_slice_csv(path_or_file, section: CrossSection) -> None:
    """Sidecar CSV tpr,tnr,tp,fn,fp,tn,value; rows bottom-to-top (TNR ascending).

    Degenerate axes (P = 0 or P = n) leave the corresponding rate column
    empty, like Undefined values.
    """
    f, owned = _open_text(path_or_file)
    try:
        f.write("tpr,tnr,tp,fn,fp,tn,value\n")
        rows, cols = section.values.shape
        for r in range(rows):
            tnr = section.tnr_steps[r]
            tnr_s = "" if tnr is None else format_float(tnr)
            for c in range(cols):
                tpr = section.tpr_steps[c]
                tpr_s = "" if tpr is None else format_float(tpr)
                v = section.values[r, c]
                val = "" if math.isnan(v) else format_float(v)
                cnt = section.counts[r, c]
                f.write("%s,%s,%d,%d,%d,%d,%s\n" % (
                    tpr_s, tnr_s, cnt[0], cnt[1], cnt[2], cnt[3], val,
                ))
    finally:
        if owned:
            f.close()
