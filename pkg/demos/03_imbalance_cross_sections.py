"""Fixed-imbalance cross-sections and prevalence profiles.

A cross-section pins the positive fraction P/n and rasterizes the measure
over (TPR, TNR).  Rate-only measures give the same picture at every
fraction; estimate-based measures like precision deform heavily as the
positive class becomes rare.
"""

from pathlib import Path

from tetrametrics import cross_section, imbalance_profile
from tetrametrics.exports import write_slice_csv, write_slice_ppm

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

n = 100
for measure in ("g_mean", "precision"):
    for fraction in (0.1, 0.5):
        sec = cross_section(measure, {}, n, fraction)
        rows, cols = sec.shape
        stem = f"{measure}_f{int(fraction * 100):03d}"
        write_slice_ppm(OUT / f"{stem}.ppm", sec)
        write_slice_csv(OUT / f"{stem}.csv", sec)
        print(f"{measure} at f={fraction}: raster {cols} TPR steps x {rows} TNR steps"
              f" -> {stem}.ppm/.csv")

print(f"\nwrote slice rasters to {OUT}/")

print("\nSame (TPR=0.8, TNR=0.8) classifier at different prevalences:")
profile = imbalance_profile("precision", {}, n, 0.8, 0.8, [0.1, 0.25, 0.5])
for entry in profile.entries:
    print(f"  f={entry.fraction:<5} cm={entry.cm.as_tuple()}  precision={entry.value:.5f}")
print(f"  max spread: {profile.max_spread:.5f}")

print("\nRate-only measures do not move at all:")
for measure in ("g_mean", "balanced_accuracy", "youden_j"):
    p = imbalance_profile(measure, {}, n, 0.8, 0.6, [0.1, 0.25, 0.5])
    print(f"  {measure:<18} values {[round(e.value, 6) for e in p.entries]} "
          f"spread {p.max_spread}")
