"""Instance selection, exact distance transforms, band construction."""
import numpy as np
import pytest

import seamcut as sc
from helpers import brute_force_band, brute_force_distance


class TestSelectInstance:
    def test_click_selects_matching_ids(self):
        mask = sc.InstanceMask(np.array([[1, 1], [0, 2]]))
        got = sc.select_instance(mask, (0, 0))
        assert got.bits.tolist() == [[True, True], [False, False]]

    def test_click_on_background(self):
        mask = sc.InstanceMask(np.array([[1, 1], [0, 2]]))
        with pytest.raises(sc.NoInstanceAtPointError):
            sc.select_instance(mask, (0, 1))

    def test_click_out_of_bounds(self):
        mask = sc.InstanceMask(np.array([[1, 1], [0, 2]]))
        with pytest.raises(sc.OutOfBoundsError):
            sc.select_instance(mask, (5, 5))

    def test_click_is_x_then_y(self):
        mask = sc.InstanceMask(np.array([[0, 7], [0, 0]]))
        got = sc.select_instance(mask, (1, 0))  # column 1, row 0
        assert got.bits[0, 1] and got.bits.sum() == 1

    def test_by_id(self):
        mask = sc.InstanceMask(np.array([[1, 1], [0, 2]]))
        assert sc.select_instance_by_id(mask, 2).bits.tolist() == [
            [False, False],
            [False, True],
        ]

    def test_by_id_rejects_absent_and_nonpositive(self):
        mask = sc.InstanceMask(np.array([[1, 1], [0, 2]]))
        with pytest.raises(sc.NoInstanceAtPointError):
            sc.select_instance_by_id(mask, 9)
        with pytest.raises(sc.NoInstanceAtPointError):
            sc.select_instance_by_id(mask, 0)


class TestDistanceTransform:
    def test_single_corner_seed(self):
        bits = np.zeros((3, 3), dtype=bool)
        bits[0, 0] = True
        dist = sc.distance_transform(sc.BinaryMask(bits))
        assert dist[0, 0] == 0.0
        assert dist[2, 2] == pytest.approx(2 * np.sqrt(2.0), abs=1e-12)
        assert dist[0, 2] == pytest.approx(2.0, abs=1e-12)

    def test_all_seeded_is_zero(self):
        dist = sc.distance_transform(sc.BinaryMask(np.ones((4, 5), dtype=bool)))
        assert np.all(dist == 0.0)

    def test_empty_seeds_rejected(self):
        with pytest.raises(sc.EmptyRegionError):
            sc.distance_transform(sc.BinaryMask(np.zeros((3, 3), dtype=bool)))

    def test_matches_brute_force_on_fuzzed_seeds(self):
        rng = np.random.default_rng(101)
        for _ in range(40):
            h, w = int(rng.integers(1, 13)), int(rng.integers(1, 10))
            bits = rng.random((h, w)) < 0.2
            if not bits.any():
                bits[rng.integers(0, h), rng.integers(0, w)] = True
            got = sc.distance_transform(sc.BinaryMask(bits))
            want = brute_force_distance(bits)
            assert np.allclose(got, want, atol=1e-9)

    def test_zero_exactly_on_seeds(self):
        rng = np.random.default_rng(103)
        bits = rng.random((8, 8)) < 0.3
        bits[0, 0] = True
        dist = sc.distance_transform(sc.BinaryMask(bits))
        assert np.array_equal(dist == 0.0, bits)

    def test_lipschitz_over_neighbor_steps(self):
        rng = np.random.default_rng(107)
        bits = rng.random((10, 10)) < 0.1
        bits[5, 5] = True
        dist = sc.distance_transform(sc.BinaryMask(bits))
        assert np.all(np.abs(np.diff(dist, axis=0)) <= 1.0 + 1e-12)
        assert np.all(np.abs(np.diff(dist, axis=1)) <= 1.0 + 1e-12)
        diag = np.abs(dist[1:, 1:] - dist[:-1, :-1])
        assert np.all(diag <= np.sqrt(2.0) + 1e-12)


class TestComputeBand:
    def test_radius_zero_mirrors_mask(self):
        bits = np.array([[True, False], [False, True]])
        trimap = sc.compute_band(sc.BinaryMask(bits), 0.0)
        assert trimap.num_ambiguous == 0
        assert np.array_equal(
            trimap.state == sc.Region.FIXED_FOREGROUND, bits
        )

    def test_row_example_radius_one(self):
        # row F F T T F: both end distances make columns 1..4 ambiguous
        bits = np.array([[False, False, True, True, False]])
        trimap = sc.compute_band(sc.BinaryMask(bits), 1.0)
        assert trimap.ambiguous_pixels[:, 0].tolist() == [1, 2, 3, 4]
        assert trimap.state[0, 0] == sc.Region.FIXED_BACKGROUND

    def test_matches_brute_force_morphology(self):
        rng = np.random.default_rng(109)
        for radius in (0.0, 1.0, 2.5):
            for _ in range(6):
                bits = rng.random((9, 9)) < 0.5
                if not bits.any():
                    bits[4, 4] = True
                if bits.all():
                    bits[0, 0] = False
                trimap = sc.compute_band(sc.BinaryMask(bits), radius)
                want = brute_force_band(bits, radius)
                assert np.array_equal(trimap.state == sc.Region.AMBIGUOUS, want)

    def test_band_monotone_in_radius(self):
        rng = np.random.default_rng(113)
        bits = rng.random((12, 12)) < 0.4
        bits[6, 6], bits[0, 0] = True, False
        mask = sc.BinaryMask(bits)
        previous = np.zeros_like(bits)
        for radius in (0.0, 1.0, 2.0, 3.5, 6.0):
            ambiguous = sc.compute_band(mask, radius).state == sc.Region.AMBIGUOUS
            assert np.all(previous <= ambiguous)
            previous = ambiguous

    def test_partition_covers_every_pixel_once(self):
        rng = np.random.default_rng(127)
        bits = rng.random((10, 10)) < 0.5
        bits[5, 5], bits[0, 0] = True, False
        trimap = sc.compute_band(sc.BinaryMask(bits), 2.0)
        assert np.isin(trimap.state, (0, 1, 2)).all()

    def test_ambiguous_pixels_row_major_xy(self):
        bits = np.zeros((3, 3), dtype=bool)
        bits[1, 1] = True
        trimap = sc.compute_band(sc.BinaryMask(bits), 1.0)
        pixels = [tuple(p) for p in trimap.ambiguous_pixels]
        resorted = sorted(pixels, key=lambda p: (p[1], p[0]))
        assert pixels == resorted
        for x, y in pixels:
            assert trimap.state[y, x] == sc.Region.AMBIGUOUS

    def test_degenerate_masks_warn_and_fix_everything(self):
        for value in (True, False):
            bits = np.full((4, 4), value)
            with pytest.warns(sc.DegenerateMaskWarning):
                trimap = sc.compute_band(sc.BinaryMask(bits), 2.0)
            assert trimap.degenerate
            assert trimap.num_ambiguous == 0
            expected = (
                sc.Region.FIXED_FOREGROUND if value else sc.Region.FIXED_BACKGROUND
            )
            assert np.all(trimap.state == expected)

    def test_bad_radius_rejected(self):
        bits = np.array([[True, False]])
        with pytest.raises(ValueError):
            sc.compute_band(sc.BinaryMask(bits), -1.0)
        with pytest.raises(ValueError):
            sc.compute_band(sc.BinaryMask(bits), float("nan"))

    def test_debug_image_levels(self):
        bits = np.array([[False, False, True, True, False]])
        trimap = sc.compute_band(sc.BinaryMask(bits), 1.0)
        debug = sc.trimap_debug_image(trimap)
        assert set(np.unique(debug.ids)) <= {0, 128, 255}
        assert np.array_equal(debug.ids == 128, trimap.state == sc.Region.AMBIGUOUS)
