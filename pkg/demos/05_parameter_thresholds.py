"""Where parametric measures change their behavior.

IBA_alpha(G-mean) is transfer-monotone only for small alpha; the exact
boundary is found by bisecting the exhaustive-grid verdict and matches the
continuous-domain limit alpha* = e/(e+2).  F_beta never loses
monotonicity, but the preference between a precision-favoring and a
recall-favoring classifier flips at a computable beta.
"""

import math

from tetrametrics import (
    ConfusionMatrix,
    evaluate,
    find_threshold,
    iba_monotonicity_limit,
    property_phase_scan,
    rank_flip_threshold,
)

scan = property_phase_scan("iba_gmean", "alpha", [0, 0.2, 0.4, 0.8, 1.6], "monotonicity", 40)
print("IBA monotonicity phase scan at n=40:")
for alpha, verdict in scan:
    print(f"  alpha={alpha:<4} {verdict}")

for exponent in (1.0, 2.0):
    result = find_threshold("iba_gmean", "alpha", "monotonicity", (0.0, 4.0),
                            tol=1e-3, n=40, params={"exponent": exponent})
    limit = iba_monotonicity_limit(exponent)
    print(f"\nexponent={exponent}: grid threshold alpha* = {result.estimate:.4f} "
          f"(bracket [{result.lo:.4f}, {result.hi:.4f}])")
    print(f"  continuous-domain limit e/(e+2) = {limit:.4f}; "
          f"gap {abs(result.estimate - limit):.4f} shrinks as n grows")

a = ConfusionMatrix(8, 2, 0, 10)    # precise, misses some positives
b = ConfusionMatrix(10, 0, 5, 5)    # catches everything, noisy
beta_star = rank_flip_threshold("f_beta", "beta", a, b, (0.1, 10.0), tol=1e-6)
print(f"\nF_beta preference reversal between {a.as_tuple()} and {b.as_tuple()}:")
print(f"  beta* = {beta_star:.6f} (algebra gives sqrt(2) = {math.sqrt(2):.6f})")
for beta in (1.0, beta_star, 2.0):
    va = evaluate("f_beta", {"beta": beta}, a)
    vb = evaluate("f_beta", {"beta": beta}, b)
    lead = "A" if va > vb else ("B" if vb > va else "tie")
    print(f"  beta={beta:.4f}: F(A)={va:.6f} F(B)={vb:.6f} -> {lead}")
