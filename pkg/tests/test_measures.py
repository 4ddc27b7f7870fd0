"""Registry, evaluation and gamut behavior of the 22 measures."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tetrametrics import (
    ConfusionMatrix,
    EmptyGamutError,
    ParameterError,
    UnknownMeasureError,
    evaluate,
    gamut,
    get_measure,
    grid_counts,
    list_measures,
    measure_ids,
)

CM = ConfusionMatrix


def _field_values(measure_id, params, n):
    counts = grid_counts(n)
    desc = get_measure(measure_id)
    return counts, desc.evaluate_arrays(
        counts[:, 0], counts[:, 1], counts[:, 2], counts[:, 3], params)


class TestRegistry:
    def test_exactly_22_measures(self):
        assert len(list_measures()) == 22

    def test_ids_unique(self):
        assert len(set(measure_ids())) == 22

    def test_parametric_families_present_once(self):
        fb = get_measure("f_beta")
        [beta] = [p for p in fb.params if p.name == "beta"]
        assert beta.default == 1.0
        assert beta.lo == 0.0 and beta.lo_open and math.isinf(beta.hi)
        iba = get_measure("iba_gmean")
        names = {p.name for p in iba.params}
        assert names == {"alpha", "exponent"}
        assert measure_ids().count("f_beta") == 1
        assert measure_ids().count("iba_gmean") == 1

    def test_lookup_tolerates_spelling(self):
        assert get_measure("gmean").id == "g_mean"
        assert get_measure("F-Beta").id == "f_beta"
        assert get_measure("sensitivity").id == "recall"
        assert get_measure("TNR").id == "specificity"

    def test_unknown_measure_raises(self):
        with pytest.raises(UnknownMeasureError):
            get_measure("auc")

    def test_registry_order_is_stable(self):
        assert measure_ids() == [m.id for m in list_measures()]
        assert measure_ids()[0] == "accuracy"


class TestEvaluate:
    def test_perfect_classifier_accuracy(self):
        assert evaluate("accuracy", {}, CM(50, 0, 0, 50)) == 1.0

    def test_precision_undefined_without_predicted_positives(self):
        assert evaluate("precision", {}, CM(0, 0, 0, 100)) is None

    def test_mcc_perfect_inversion(self):
        assert evaluate("mcc", {}, CM(0, 50, 50, 0)) == -1.0

    def test_f_beta_arithmetic(self):
        # (1+1)*40 / ((1+1)*40 + 10 + 20) = 80/110
        assert evaluate("f_beta", {"beta": 1}, CM(40, 10, 20, 30)) == pytest.approx(
            80 / 110, abs=1e-15)

    def test_g_mean_arithmetic(self):
        assert evaluate("g_mean", {}, CM(40, 10, 20, 30)) == pytest.approx(
            math.sqrt(0.8 * 0.6), abs=1e-15)

    def test_iba_alpha_zero_is_its_base(self):
        cm = CM(40, 10, 20, 30)
        assert evaluate("iba_gmean", {"alpha": 0}, cm) == evaluate("g_mean", {}, cm)

    def test_unknown_parameter_rejected(self):
        with pytest.raises(ParameterError):
            evaluate("f_beta", {"gamma": 1}, CM(1, 1, 1, 1))

    def test_out_of_interval_parameter_rejected(self):
        with pytest.raises(ParameterError):
            evaluate("f_beta", {"beta": 0.0}, CM(1, 1, 1, 1))
        with pytest.raises(ParameterError):
            evaluate("weighted_accuracy", {"w": 1.5}, CM(1, 1, 1, 1))

    def test_evaluation_is_pure(self):
        cm = CM(3, 2, 5, 7)
        first = evaluate("kappa", {}, cm)
        assert all(evaluate("kappa", {}, cm) == first for _ in range(5))


class TestConfusionMatrix:
    def test_rejects_negative_counts(self):
        with pytest.raises(ValueError):
            CM(-1, 0, 0, 5)

    def test_rejects_empty_matrix(self):
        with pytest.raises(ValueError):
            CM(0, 0, 0, 0)

    def test_rejects_non_integer(self):
        with pytest.raises(ValueError):
            CM(1.5, 0, 0, 5)

    def test_rates(self):
        cm = CM(40, 10, 20, 30)
        assert cm.tpr == 0.8 and cm.tnr == 0.6
        assert cm.ppv == pytest.approx(40 / 60)
        assert CM(0, 0, 1, 1).tpr is None

    def test_swaps(self):
        cm = CM(1, 2, 3, 4)
        assert cm.class_swapped().as_tuple() == (4, 3, 2, 1)
        assert cm.error_swapped().as_tuple() == (1, 3, 2, 4)
        assert cm.scaled(2).as_tuple() == (2, 4, 6, 8)


class TestGamut:
    def test_accuracy_full_range_no_undefined(self):
        g = gamut("accuracy", {}, 10)
        assert (g.min, g.max, g.undefined_count) == (0.0, 1.0, 0)

    def test_precision_undefined_count(self):
        # undefined iff tp = fp = 0, i.e. fn + tn = 10: 11 integer solutions
        g = gamut("precision", {}, 10)
        assert (g.min, g.max, g.undefined_count) == (0.0, 1.0, 11)

    def test_mcc_gamut_matches_enumeration_oracle(self):
        # brute-force count of points with any zero marginal
        k = 0
        attains = set()
        for tp in range(11):
            for fn in range(11 - tp):
                for fp in range(11 - tp - fn):
                    tn = 10 - tp - fn - fp
                    if (tp + fn == 0 or tn + fp == 0 or tp + fp == 0 or tn + fn == 0):
                        k += 1
        g = gamut("mcc", {}, 10)
        assert g == gamut("mcc", {}, 10)  # deterministic
        assert (g.min, g.max) == (-1.0, 1.0)
        assert g.undefined_count == k == 40

    def test_empty_gamut_raises(self):
        # at n=1 every vertex leaves one class empty
        with pytest.raises(EmptyGamutError):
            gamut("g_mean", {}, 1)


class TestGridInvariants:
    N = 25

    @pytest.mark.parametrize("measure_id", measure_ids())
    def test_range_containment(self, measure_id):
        desc = get_measure(measure_id)
        _, values = _field_values(measure_id, None, self.N)
        lo, hi = desc.value_range(None)
        defined = values[~np.isnan(values)]
        assert defined.size > 0
        assert defined.min() >= lo and defined.max() <= hi

    @pytest.mark.parametrize("measure_id", measure_ids())
    def test_undefinedness_exactness(self, measure_id):
        desc = get_measure(measure_id)
        counts, values = _field_values(measure_id, None, self.N)
        mask = desc.undefined_mask(counts[:, 0], counts[:, 1], counts[:, 2], counts[:, 3])
        assert np.array_equal(np.isnan(values), mask)

    def test_f1_equals_f_beta_at_one(self):
        _, f1 = _field_values("f1", None, self.N)
        _, fb = _field_values("f_beta", {"beta": 1.0}, self.N)
        assert np.array_equal(f1, fb, equal_nan=True)

    def test_balanced_accuracy_is_mean_of_rates(self):
        counts, ba = _field_values("balanced_accuracy", None, self.N)
        _, se = _field_values("recall", None, self.N)
        _, sp = _field_values("specificity", None, self.N)
        both = ~np.isnan(se) & ~np.isnan(sp)
        assert both.any()
        assert np.allclose(ba[both], (se[both] + sp[both]) / 2, atol=1e-12, rtol=0)

    def test_iba_alpha_zero_reduces_to_base(self):
        _, g = _field_values("g_mean", None, self.N)
        _, i1 = _field_values("iba_gmean", {"alpha": 0.0, "exponent": 1.0}, self.N)
        assert np.array_equal(g, i1, equal_nan=True)
        _, i2 = _field_values("iba_gmean", {"alpha": 0.0, "exponent": 2.0}, self.N)
        defined = ~np.isnan(g)
        assert np.allclose(i2[defined], g[defined] ** 2, atol=1e-12, rtol=0)
        assert np.array_equal(np.isnan(i2), ~defined)

    def test_mcc_sign_symmetry(self):
        counts, v = _field_values("mcc", None, self.N)
        swapped = counts[:, [1, 0, 3, 2]]  # (fn, tp, tn, fp)
        desc = get_measure("mcc")
        vs = desc.evaluate_arrays(swapped[:, 0], swapped[:, 1], swapped[:, 2], swapped[:, 3])
        both = ~np.isnan(v) & ~np.isnan(vs)
        assert both.any()
        assert np.allclose(v[both], -vs[both], atol=1e-12, rtol=0)


@given(tp=st.integers(0, 40), fn=st.integers(0, 40),
       fp=st.integers(0, 40), tn=st.integers(0, 40))
@settings(max_examples=300, deadline=None)
def test_every_measure_defined_value_in_range_or_none(tp, fn, fp, tn):
    if tp + fn + fp + tn == 0:
        return
    cm = CM(tp, fn, fp, tn)
    for desc in list_measures():
        v = desc.evaluate(cm)
        if v is not None:
            lo, hi = desc.value_range(None)
            assert lo <= v <= hi


@given(tp=st.integers(0, 25), fn=st.integers(0, 25),
       fp=st.integers(0, 25), tn=st.integers(0, 25),
       k=st.integers(2, 5))
@settings(max_examples=200, deadline=None)
def test_measures_are_scale_invariant(tp, fn, fp, tn, k):
    """All 22 measures depend only on the normalized matrix."""
    if tp + fn + fp + tn == 0:
        return
    cm = CM(tp, fn, fp, tn)
    big = cm.scaled(k)
    for desc in list_measures():
        a = desc.evaluate(cm)
        b = desc.evaluate(big)
        assert (a is None) == (b is None)
        if a is not None:
            assert a == pytest.approx(b, abs=1e-12)
