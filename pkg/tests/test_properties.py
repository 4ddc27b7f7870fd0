"""Exhaustive property checks: verdicts, witnesses, accounting, profiles."""

import numpy as np
import pytest

from tetrametrics import (
    ConfusionMatrix,
    ResolutionError,
    check_class_swap_symmetry,
    check_error_type_symmetry,
    check_monotonicity,
    detect_undefined_regions,
    evaluate,
    grid_size,
    imbalance_profile,
    property_matrix,
    property_matrix_csv,
    property_matrix_markdown,
)
from tetrametrics.measures import MeasureDescriptor

CM = ConfusionMatrix


def _replay(report):
    """Witness validity: evaluate must reproduce recorded values exactly."""
    for w in report.witnesses + report.definedness_witnesses:
        assert evaluate(report.measure_id, report.params, w.before) == w.value_before
        assert evaluate(report.measure_id, report.params, w.after) == w.value_after


def _accounting(report):
    """violations + ok comparisons + undefined skips == legal pairs."""
    ok = report.comparisons - report.violations
    assert report.violations + ok + report.undefined_pairs_skipped == report.legal_pairs
    assert report.points_visited == grid_size(report.n)


class TestMonotonicity:
    def test_accuracy_holds(self):
        r = check_monotonicity("accuracy", {}, 20)
        assert r.verdict == "holds" and r.violations == 0
        assert r.undefined_pairs_skipped == 0
        _accounting(r)

    def test_error_rate_fails_everywhere(self):
        r = check_monotonicity("error_rate", {}, 10)
        assert r.verdict == "fails"
        # every legal transfer strictly lowers accuracy's complement
        assert r.violations == r.comparisons == r.legal_pairs == 2 * grid_size(9)
        assert len(r.witnesses) == r.witness_cap == 32
        assert r.embedding_verified
        _replay(r)
        _accounting(r)

    def test_iba_alpha5_fails_on_fp_to_tn_where_tnr_exceeds_tpr(self):
        r = check_monotonicity("iba_gmean", {"alpha": 5}, 40, witness_cap=10 ** 6)
        assert r.verdict == "fails"
        t2 = [w for w in r.witnesses if w.context == "fp_to_tn"]
        assert t2, "expected violations under the FP->TN transfer"
        # the dominance factor drives the value down where TNR far exceeds TPR
        assert any(w.before.tnr - w.before.tpr > 0.5 for w in t2)
        _replay(r)
        _accounting(r)

    def test_precision_monotone_with_definedness_regressions(self):
        r = check_monotonicity("precision", {}, 12)
        assert r.verdict == "holds" and r.violations == 0
        # tp=0, fp=1 -> FP->TN leaves no predicted positives
        assert r.definedness_violations > 0
        assert all(w.kind == "definedness" for w in r.definedness_witnesses)
        assert all(w.value_after is None for w in r.definedness_witnesses)
        _replay(r)

    def test_witness_order_is_enumeration_order(self):
        r = check_monotonicity("error_rate", {}, 6)
        keys = [(w.before.as_tuple(), w.context) for w in r.witnesses]
        assert keys == sorted(keys, key=lambda k: (k[0], k[1] != "fn_to_tp"))

    def test_determinism(self):
        a = check_monotonicity("optimized_precision", {}, 9)
        b = check_monotonicity("optimized_precision", {}, 9)
        assert a == b

    def test_failure_persists_at_doubled_resolution(self):
        for measure, params in (("error_rate", {}), ("optimized_precision", {})):
            low = check_monotonicity(measure, params, 6)
            high = check_monotonicity(measure, params, 12)
            assert low.verdict == "fails"
            assert high.verdict == "fails"
            assert low.embedding_verified


class TestClassSwapSymmetry:
    @pytest.mark.parametrize("measure", ["accuracy", "g_mean", "balanced_accuracy",
                                         "mcc", "kappa"])
    def test_symmetric_measures_hold(self, measure):
        r = check_class_swap_symmetry(measure, {}, 15)
        assert r.verdict == "holds" and r.violations == 0
        _accounting(r)

    def test_precision_fails_at_n15(self):
        r = check_class_swap_symmetry("precision", {}, 15)
        assert r.verdict == "fails"
        _replay(r)
        _accounting(r)

    def test_precision_witness_pair_from_unit_example(self):
        # the canonical counterexample lives on the n=4 grid
        r = check_class_swap_symmetry("precision", {}, 4, witness_cap=10 ** 6)
        pairs = {(w.before.as_tuple(), w.after.as_tuple()) for w in r.witnesses}
        assert ((2, 1, 1, 0), (0, 1, 1, 2)) in pairs
        assert evaluate("precision", {}, CM(2, 1, 1, 0)) == pytest.approx(2 / 3)
        assert evaluate("precision", {}, CM(0, 1, 1, 2)) == 0.0

    def test_one_sided_undefinedness_is_separate(self):
        r = check_class_swap_symmetry("precision", {}, 15)
        assert r.definedness_violations == 32  # tp=fp=0 (16 pts) xor tn=fn=0 (16 pts)
        assert all((w.value_before is None) != (w.value_after is None)
                   for w in r.definedness_witnesses)

    def test_swap_is_applied_correctly(self):
        r = check_class_swap_symmetry("recall", {}, 8)
        for w in r.witnesses:
            assert w.after.as_tuple() == w.before.class_swapped().as_tuple()


class TestErrorTypeSymmetry:
    def test_accuracy_holds(self):
        r = check_error_type_symmetry("accuracy", {}, 15)
        assert r.verdict == "holds"

    def test_f1_holds(self):
        r = check_error_type_symmetry("f_beta", {"beta": 1}, 15)
        assert r.verdict == "holds" and r.violations == 0

    def test_f2_fails(self):
        r = check_error_type_symmetry("f_beta", {"beta": 2}, 15)
        assert r.verdict == "fails" and r.violations > 0
        _replay(r)
        _accounting(r)
        for w in r.witnesses:
            assert w.after.as_tuple() == w.before.error_swapped().as_tuple()

    def test_failure_persists_at_doubled_resolution(self):
        assert check_error_type_symmetry("f_beta", {"beta": 2}, 5).verdict == "fails"
        assert check_error_type_symmetry("f_beta", {"beta": 2}, 10).verdict == "fails"


class TestVacuousVerdict:
    def test_always_undefined_measure_is_vacuous(self):
        nowhere = MeasureDescriptor(
            id="nowhere", display_name="Nowhere", formula="0/0",
            kernel=lambda tp, fn_, fp, tn: np.full(np.shape(tp), np.nan),
            undef=lambda tp, fn_, fp, tn, **_: np.ones(np.shape(tp), dtype=bool),
        )
        r = check_monotonicity(nowhere, {}, 4)
        assert r.verdict == "vacuous"
        assert r.comparisons == 0
        assert r.undefined_pairs_skipped == r.legal_pairs


class TestUndefinedRegions:
    def test_accuracy_none(self):
        assert detect_undefined_regions("accuracy", {}, 10).count == 0

    def test_precision_lives_on_one_closed_edge(self):
        s = detect_undefined_regions("precision", {}, 10)
        assert s.count == 11
        for region in s.regions:
            assert {"tp", "fp"} <= set(region.zero_pattern)
        kinds = {}
        for r in s.regions:
            kinds[r.kind] = kinds.get(r.kind, 0) + r.count
        assert kinds == {"edge": 9, "vertex": 2}  # two closing vertices, fn and tn
        for region in s.regions:
            for cm in region.examples:
                assert evaluate("precision", {}, cm) is None

    def test_mcc_matches_bruteforce_zero_marginal_count(self):
        expected = 0
        for tp in range(11):
            for fn in range(11 - tp):
                for fp in range(11 - tp - fn):
                    tn = 10 - tp - fn - fp
                    if tp + fn == 0 or tn + fp == 0 or tp + fp == 0 or tn + fn == 0:
                        expected += 1
        s = detect_undefined_regions("mcc", {}, 10)
        assert s.count == expected == 40

    def test_region_counts_sum(self):
        s = detect_undefined_regions("g_mean", {}, 8)
        assert sum(r.count for r in s.regions) == s.count


class TestImbalanceProfile:
    def test_g_mean_is_prevalence_free(self):
        p = imbalance_profile("g_mean", {}, 100, 0.8, 0.6, [0.1, 0.25, 0.5])
        values = [e.value for e in p.entries]
        assert values[0] == values[1] == values[2]
        assert p.max_spread == 0.0

    def test_precision_prevalence_shift(self):
        p = imbalance_profile("precision", {}, 100, 0.8, 0.8, [0.1, 0.5])
        assert p.entries[0].value == pytest.approx(8 / 26, abs=1e-12)
        assert p.entries[1].value == pytest.approx(0.8, abs=1e-12)
        assert p.max_spread == pytest.approx(0.8 - 8 / 26, abs=1e-12)

    def test_degenerate_rates_still_constant(self):
        p = imbalance_profile("balanced_accuracy", {}, 100, 1.0, 0.0, [0.1, 0.5, 0.9])
        assert all(e.value == 0.5 for e in p.entries)

    def test_entries_match_requested_rates_exactly(self):
        p = imbalance_profile("f1", {}, 40, 0.75, 0.5, [0.1, 0.2, 0.5])
        for e in p.entries:
            assert e.cm.tpr == 0.75
            assert e.cm.tnr == 0.5

    def test_unrealizable_fraction_rejected(self):
        with pytest.raises(ResolutionError):
            imbalance_profile("g_mean", {}, 100, 0.8, 0.6, [0.123])

    def test_unrealizable_rate_rejected_with_suggestion(self):
        with pytest.raises(ResolutionError) as exc:
            imbalance_profile("g_mean", {}, 100, 0.85, 0.6, [0.1])
        assert "tpr=0.8" in str(exc.value) or "tpr=0.9" in str(exc.value)

    def test_empty_class_rejected(self):
        with pytest.raises(ResolutionError):
            imbalance_profile("g_mean", {}, 100, 0.8, 0.6, [0.0])

    @pytest.mark.parametrize("measure", ["g_mean", "balanced_accuracy", "youden_j",
                                         "weighted_accuracy"])
    def test_rate_only_measures_have_zero_spread(self, measure):
        p = imbalance_profile(measure, {}, 100, 0.8, 0.6, [0.1, 0.25, 0.5])
        assert p.max_spread == 0.0


class TestPropertyMatrix:
    def test_full_matrix_has_22_rows_in_registry_order(self):
        m = property_matrix(None, None, 5)
        assert len(m.rows) == 22
        assert m.rows[0].measure_id == "accuracy"

    def test_accuracy_row_all_holds(self):
        m = property_matrix(["accuracy"], None, 5)
        row = m.rows[0]
        assert all(cell.verdict == "holds" for cell in row.cells.values())
        assert row.undefined_points == 0

    def test_precision_row_class_swap_fails(self):
        m = property_matrix(["precision"], None, 5)
        cell = m.rows[0].cells["class_swap_symmetry"]
        assert cell.verdict == "fails" and cell.violations > 0

    def test_cell_errors_do_not_abort(self):
        m = property_matrix(["f_beta"], {"f_beta": {"beta": -3}}, 4)
        row = m.rows[0]
        assert all(cell.error is not None for cell in row.cells.values())
        assert row.undefined_error is not None

    def test_row_selection_keeps_registry_order(self):
        m = property_matrix(["mcc", "accuracy"], None, 4)
        assert [r.measure_id for r in m.rows] == ["accuracy", "mcc"]

    def test_markdown_and_csv_exports(self):
        m = property_matrix(["accuracy", "precision"], None, 5)
        md = property_matrix_markdown(m)
        assert md.splitlines()[0].startswith("| measure |")
        assert "| accuracy | holds | holds | holds | 0 |" in md
        csv = property_matrix_csv(m)
        lines = csv.splitlines()
        assert lines[0] == "measure,property,verdict,violations,undefined_skipped"
        assert "precision,class_swap_symmetry,fails" in csv
        # 3 checks + undefined row per measure
        assert len(lines) == 1 + 2 * 4

    def test_thread_override_does_not_change_results(self, monkeypatch):
        sequential = property_matrix(["accuracy", "precision", "mcc"], None, 5)
        monkeypatch.setenv("TETRAMETRICS_THREADS", "4")
        threaded = property_matrix(["accuracy", "precision", "mcc"], None, 5)
        assert sequential == threaded
