"""Simplex enumeration, tetrahedron embedding, slices, skeleton, colors."""

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tetrametrics import (
    CANONICAL_TETRAHEDRON,
    BarycentricPoint,
    Colormap,
    ColormapError,
    ConfusionMatrix,
    DEFAULT_COLORMAP,
    Gamut,
    ResolutionError,
    colorize,
    cross_section,
    enumerate_grid,
    grid_counts,
    grid_size,
    sample_field,
    skeleton,
    to_cartesian,
)

CM = ConfusionMatrix
V = CANONICAL_TETRAHEDRON


class TestEnumeration:
    @pytest.mark.parametrize("n,expected", [(1, 4), (2, 10), (10, 286), (100, 176851)])
    def test_sizes_match_stars_and_bars(self, n, expected):
        assert grid_size(n) == expected == comb(n + 3, 3)
        assert len(grid_counts(n)) == expected

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 25, 60])
    def test_complete_and_distinct(self, n):
        counts = grid_counts(n)
        assert len(counts) == comb(n + 3, 3)
        assert (counts.sum(axis=1) == n).all()
        assert (counts >= 0).all()
        assert len({tuple(r) for r in counts.tolist()}) == len(counts)

    def test_lexicographic_order(self):
        counts = [cm.as_tuple() for cm in enumerate_grid(5)]
        assert counts == sorted(counts)

    def test_generator_matches_bulk(self):
        for n in (1, 2, 4, 9):
            gen = np.array([cm.as_tuple() for cm in enumerate_grid(n)])
            assert np.array_equal(gen, grid_counts(n))

    def test_rejects_non_positive_resolution(self):
        with pytest.raises(ValueError):
            grid_counts(0)
        with pytest.raises(ValueError):
            list(enumerate_grid(0))


class TestEmbedding:
    def test_vertices_regular_and_centered(self):
        m = V.as_matrix()
        assert np.allclose(m.mean(axis=0), 0.0, atol=1e-15)
        d = [np.linalg.norm(m[i] - m[j]) for i in range(4) for j in range(i + 1, 4)]
        assert max(d) - min(d) < 1e-12

    def test_vertex_identity(self):
        assert np.allclose(to_cartesian(BarycentricPoint(1, 0, 0, 0), V), V.v_tp)
        assert np.allclose(to_cartesian(BarycentricPoint(0, 0, 0, 1), V), V.v_tn)

    def test_centroid_maps_to_origin(self):
        assert np.allclose(to_cartesian(BarycentricPoint(0.25, 0.25, 0.25, 0.25), V),
                           (0, 0, 0), atol=1e-15)

    def test_edge_midpoint(self):
        mid = to_cartesian(BarycentricPoint(0.5, 0, 0, 0.5), V)
        assert np.allclose(mid, (np.array(V.v_tp) + np.array(V.v_tn)) / 2)

    def test_barycentric_validation(self):
        with pytest.raises(ValueError):
            BarycentricPoint(0.5, 0.5, 0.5, -0.5)
        with pytest.raises(ValueError):
            BarycentricPoint(0.5, 0.5, 0.5, 0.5)

    @given(st.lists(st.floats(0.001, 1.0), min_size=4, max_size=4),
           st.lists(st.floats(0.001, 1.0), min_size=4, max_size=4),
           st.floats(0.0, 1.0))
    @settings(max_examples=200, deadline=None)
    def test_embedding_is_affine(self, raw_u, raw_v, lam):
        u = np.array(raw_u) / sum(raw_u)
        v = np.array(raw_v) / sum(raw_v)
        w = lam * u + (1 - lam) * v
        w = w / w.sum()
        pu = to_cartesian(BarycentricPoint(*u), V)
        pv = to_cartesian(BarycentricPoint(*v), V)
        pw = to_cartesian(BarycentricPoint(*w), V)
        assert np.allclose(pw, lam * pu + (1 - lam) * pv, atol=1e-10)


class TestSampleField:
    def test_accuracy_unit_simplex(self):
        samples = sample_field("accuracy", {}, 1)
        by_cm = {s.cm.as_tuple(): s for s in samples}
        assert by_cm[(1, 0, 0, 0)].value == 1.0
        assert by_cm[(0, 1, 0, 0)].value == 0.0
        assert by_cm[(0, 0, 1, 0)].value == 0.0
        assert by_cm[(0, 0, 0, 1)].value == 1.0
        assert np.allclose(by_cm[(1, 0, 0, 0)].xyz, V.v_tp)

    def test_g_mean_n2_unique_perfect_point(self):
        samples = sample_field("g_mean", {}, 2)
        assert len(samples) == 10
        perfect = [s for s in samples if s.value == 1.0]
        assert [s.cm.as_tuple() for s in perfect] == [(1, 0, 0, 1)]

    def test_precision_n10_counts(self):
        samples = sample_field("precision", {}, 10)
        assert len(samples) == 286
        assert sum(s.value is None for s in samples) == 11

    def test_order_matches_enumeration(self):
        samples = sample_field("accuracy", {}, 4)
        assert [s.cm.as_tuple() for s in samples] == \
            [cm.as_tuple() for cm in enumerate_grid(4)]

    def test_bary_consistency(self):
        for s in sample_field("f1", {}, 3):
            t = s.cm.total()
            assert s.bary.a == s.cm.tp / t
            assert np.allclose(s.xyz, to_cartesian(s.bary, V))


class TestCrossSection:
    def test_balanced_slice_shape_and_corner(self):
        sec = cross_section("accuracy", {}, 100, 0.5)
        assert sec.shape == (51, 51)  # rows = TNR steps, cols = TPR steps
        # (TPR=1, TNR=1) corner: last column, last row
        assert sec.values[-1, -1] == 1.0
        assert sec.counts[-1, -1].tolist() == [50, 0, 0, 50]

    def test_imbalanced_slice_sample_count(self):
        sec = cross_section("g_mean", {}, 100, 0.1)
        assert sec.pos_count == 10
        assert sec.shape == (91, 11)
        assert sec.values.size == 1001

    def test_degenerate_slice_is_an_edge(self):
        sec = cross_section("accuracy", {}, 100, 0.0)
        assert sec.shape == (101, 1)
        assert sec.tpr_steps == (None,)
        # the FP-TN edge: tp = fn = 0 everywhere
        assert (sec.counts[..., 0] == 0).all() and (sec.counts[..., 1] == 0).all()

    def test_non_integer_positive_count_rejected_with_suggestions(self):
        with pytest.raises(ResolutionError) as exc:
            cross_section("accuracy", {}, 100, 0.303)
        assert "0.3" in str(exc.value) and "0.31" in str(exc.value)
        assert exc.value.suggestions == (0.3, 0.31)

    def test_axis_orientation(self):
        sec = cross_section("recall", {}, 10, 0.5)
        # recall depends only on the TPR axis: constant along rows
        for col in range(sec.shape[1]):
            column = sec.values[:, col]
            assert np.allclose(column, column[0])
        assert list(sec.tpr_steps) == [i / 5 for i in range(6)]
        assert list(sec.tnr_steps) == [i / 5 for i in range(6)]

    def test_partition_of_grid(self):
        n = 12
        seen = []
        for p in range(n + 1):
            sec = cross_section("accuracy", {}, n, p / n)
            seen.extend(map(tuple, sec.counts.reshape(-1, 4).tolist()))
        grid = list(map(tuple, grid_counts(n).tolist()))
        assert sorted(seen) == sorted(grid)
        assert len(seen) == len(set(seen)) == grid_size(n)


class TestSkeleton:
    @pytest.mark.parametrize("n,expected", [(1, 4), (2, 10), (10, 58)])
    def test_counts(self, n, expected):
        assert len(skeleton("accuracy", {}, n)) == expected == \
            (6 * (n - 1) + 4 if n >= 1 else None)

    def test_skeleton_points_have_two_zeros(self):
        for s in skeleton("mcc", {}, 7):
            assert sum(c == 0 for c in s.cm.as_tuple()) >= 2

    def test_skeleton_subset_of_grid(self):
        grid = {cm.as_tuple() for cm in enumerate_grid(6)}
        pts = [s.cm.as_tuple() for s in skeleton("accuracy", {}, 6)]
        assert set(pts) <= grid
        assert len(pts) == len(set(pts))


class TestColorize:
    RAMP = Colormap(stops=((0.0, (0, 0, 0)), (1.0, (255, 255, 255))))

    def test_endpoints_hit_stop_colors_exactly(self):
        g = Gamut(-1.0, 1.0, 0)
        rgb = colorize(np.array([-1.0, 1.0]), DEFAULT_COLORMAP, g)
        assert rgb[0].tolist() == [59, 76, 192]
        assert rgb[1].tolist() == [180, 4, 38]

    def test_midpoint_stop(self):
        g = Gamut(0.0, 1.0, 0)
        rgb = colorize(np.array([0.5]), DEFAULT_COLORMAP, g)
        assert rgb[0].tolist() == [255, 255, 255]

    def test_undefined_gets_sentinel(self):
        g = Gamut(0.0, 1.0, 1)
        rgb = colorize(np.array([np.nan, 0.0]), DEFAULT_COLORMAP, g)
        assert rgb[0].tolist() == [128, 128, 128]

    def test_order_preserving(self):
        g = Gamut(0.0, 1.0, 0)
        values = np.sort(np.random.default_rng(7).uniform(0, 1, 64))
        rgb = colorize(values, self.RAMP, g)
        red = rgb[:, 0].astype(int)
        assert (np.diff(red) >= 0).all()

    def test_out_of_gamut_values_clip(self):
        g = Gamut(0.0, 1.0, 0)
        rgb = colorize(np.array([-5.0, 5.0]), self.RAMP, g)
        assert rgb[0].tolist() == [0, 0, 0]
        assert rgb[1].tolist() == [255, 255, 255]

    def test_malformed_colormaps_rejected(self):
        with pytest.raises(ColormapError):
            Colormap(stops=((0.0, (0, 0, 0)),))
        with pytest.raises(ColormapError):
            Colormap(stops=((0.1, (0, 0, 0)), (1.0, (1, 1, 1))))
        with pytest.raises(ColormapError):
            Colormap(stops=((0.0, (0, 0, 0)), (0.5, (1, 1, 1)), (0.5, (2, 2, 2)), (1.0, (3, 3, 3))))
        with pytest.raises(ColormapError):
            Colormap(stops=((0.0, (0, 0, 300)), (1.0, (1, 1, 1))))

    def test_requires_nondegenerate_gamut(self):
        with pytest.raises(ValueError):
            colorize(np.array([0.5]), DEFAULT_COLORMAP, Gamut(1.0, 1.0, 0))

    def test_order_matches_input(self):
        g = Gamut(0.0, 1.0, 1)
        values = np.array([0.0, np.nan, 1.0])
        rgb = colorize(values, self.RAMP, g)
        assert rgb[0].tolist() == [0, 0, 0]
        assert rgb[1].tolist() == [128, 128, 128]
        assert rgb[2].tolist() == [255, 255, 255]
