"""Exhaustive fields over the tetrahedron and their file exports.

Samples a measure at every confusion matrix with total n, embeds the
points in the canonical tetrahedron, and writes the CSV/PLY exports that
feed external viewers (the PLY opens in MeshLab, CloudCompare, etc.).
"""

from pathlib import Path

import numpy as np

from tetrametrics import field_arrays, grid_size, skeleton
from tetrametrics.exports import write_field_csv, write_field_ply

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

n = 40
for measure in ("accuracy", "mcc", "precision"):
    field = field_arrays(measure, {}, n)
    g = field.gamut()
    undef = np.isnan(field.values).sum()
    print(f"{measure}: {len(field.counts)} points at n={n} "
          f"(expected {grid_size(n)}), gamut [{g.min:+.3f}, {g.max:+.3f}], "
          f"{undef} undefined")
    write_field_csv(OUT / f"{measure}_n{n}.csv", field)
    write_field_ply(OUT / f"{measure}_n{n}.ply", field)

print(f"\nwrote CSV + PLY exports to {OUT}/")

edge = skeleton("mcc", {}, 20)
print(f"\nskeleton of mcc at n=20: {len(edge)} points on the 6 edges "
      f"(6*(n-1)+4 = {6 * 19 + 4})")
perfect_edge = [s for s in edge if s.cm.fn_ == 0 and s.cm.fp == 0]
print("values along the TP-TN edge (every classification correct):")
for s in perfect_edge:
    v = "undefined" if s.value is None else f"{s.value:+.3f}"
    print(f"  tp={s.cm.tp:>2} tn={s.cm.tn:>2} -> {v}")
