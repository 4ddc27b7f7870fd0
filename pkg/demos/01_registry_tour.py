"""Tour of the measure registry.

Walks the 22 built-in measures, evaluates them at one moderately
imbalanced confusion matrix, and shows how Undefined values and observed
gamuts behave.
"""

from tetrametrics import ConfusionMatrix, evaluate, gamut, list_measures

cm = ConfusionMatrix(tp=40, fn_=10, fp=20, tn=30)
print(f"Evaluation point: {cm.as_tuple()}  "
      f"(TPR={cm.tpr:.2f}, TNR={cm.tnr:.2f}, PPV={cm.ppv:.3f})\n")

print(f"{'id':<24} {'value at cm':>12}   {'gamut at n=15 (min, max, #undef)'}")
print("-" * 78)
for m in list_measures():
    v = evaluate(m.id, {}, cm)
    value = "undefined" if v is None else f"{v:.6f}"
    g = gamut(m.id, {}, 15)
    print(f"{m.id:<24} {value:>12}   ({g.min:+.3f}, {g.max:+.3f}, {g.undefined_count})")

print("\nParametric families take named parameters:")
for beta in (0.5, 1.0, 2.0):
    print(f"  f_beta(beta={beta}): {evaluate('f_beta', {'beta': beta}, cm):.6f}")
for alpha in (0.0, 0.1, 1.0):
    print(f"  iba_gmean(alpha={alpha}): {evaluate('iba_gmean', {'alpha': alpha}, cm):.6f}")

print("\nUndefined is a value, not an error: precision with no predicted positives")
empty = ConfusionMatrix(0, 5, 0, 95)
print(f"  precision{empty.as_tuple()} -> {evaluate('precision', {}, empty)}")
