import math
import random

import numpy as np
import pytest

from fbeta_plot.core.curves import (
    ClassifierRecord,
    all_crossovers,
    crossover_beta,
    dominance_partition,
    evaluate_curve,
    make_beta_grid,
    mean_f_beta,
    refine_boundary,
    segment_index,
    winners_in_order,
)
from fbeta_plot.core.errors import (
    DegenerateInput,
    DuplicateName,
    EmptyPool,
    FoldCountMismatch,
    InvalidRange,
    InvalidRecord,
    NotHoldOutMode,
    TooFewPoints,
    ZeroComponent,
)
from fbeta_plot.core.metrics import PointEstimate, f_beta


class TestBetaGrid:
    def test_three_points(self):
        grid = make_beta_grid(0.1, 10.0, 3)
        assert grid.points == pytest.approx((0.1, 1.0, 10.0), rel=1e-12)

    def test_endpoints_are_exact(self):
        grid = make_beta_grid(0.01, 100.0, 1001)
        assert len(grid) == 1001
        assert grid.points[0] == 0.01
        assert grid.points[-1] == 100.0

    def test_log_uniform_and_increasing(self):
        logs = np.log(make_beta_grid(0.01, 100.0, 257).as_array())
        steps = np.diff(logs)
        assert np.all(steps > 0)
        assert steps == pytest.approx(np.full_like(steps, steps.mean()), rel=1e-9)

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (0.0, 1.0), (2.0, 1.0), (-1.0, 1.0)])
    def test_invalid_range(self, lo, hi):
        with pytest.raises(InvalidRange):
            make_beta_grid(lo, hi, 5)

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            make_beta_grid(0.1, 10.0, 1)


class TestClassifierRecord:
    def test_empty_name_rejected(self):
        with pytest.raises(InvalidRecord):
            ClassifierRecord(name="", folds=(PointEstimate(0.5, 0.5),))

    def test_no_folds_rejected(self):
        with pytest.raises(InvalidRecord):
            ClassifierRecord(name="A", folds=())


class TestEvaluateCurve:
    def test_constant_hold_out_curve(self, make_record, default_grid):
        curve = evaluate_curve(make_record("A", (0.5, 0.5)), default_grid)
        assert curve.name == "A"
        assert curve.mean == pytest.approx((0.5,) * len(default_grid), abs=1e-15)
        assert set(curve.std) == {0.0}

    def test_two_extreme_folds(self, make_record):
        grid = make_beta_grid(0.5, 2.0, 3)
        curve = evaluate_curve(make_record("A", (1.0, 1.0), (0.0, 0.0)), grid)
        assert curve.mean[1] == pytest.approx(0.5)
        assert curve.std[1] == pytest.approx(0.5)

    def test_mirrored_folds_have_no_spread_at_one(self, make_record):
        grid = make_beta_grid(0.5, 2.0, 3)
        curve = evaluate_curve(make_record("A", (0.8, 0.6), (0.6, 0.8)), grid)
        assert curve.mean[1] == pytest.approx(0.685714, abs=1e-6)
        assert curve.std[1] == pytest.approx(0.0, abs=1e-12)
        assert curve.std[0] > 0.0

    def test_single_fold_std_is_exactly_zero(self, make_record, default_grid):
        curve = evaluate_curve(make_record("A", (0.3, 0.8)), default_grid)
        assert set(curve.std) == {0.0}

    def test_mean_f_beta_off_grid(self, make_record):
        rec = make_record("A", (0.5, 0.9), (0.7, 0.4))
        expected = (f_beta(PointEstimate(0.5, 0.9), 1.7) + f_beta(PointEstimate(0.7, 0.4), 1.7)) / 2
        assert mean_f_beta(rec, 1.7)[0] == pytest.approx(expected, rel=1e-14)


class TestCrossoverBeta:
    def test_symmetric_pair_crosses_at_one(self):
        assert crossover_beta(PointEstimate(0.9, 0.6), PointEstimate(0.6, 0.9)) == pytest.approx(1.0, rel=1e-12)

    def test_dominance_gives_none(self):
        assert crossover_beta(PointEstimate(0.9, 0.9), PointEstimate(0.5, 0.5)) is None

    def test_derived_crossover(self):
        a, b = PointEstimate(0.8, 0.5), PointEstimate(0.6, 0.7)
        beta = crossover_beta(a, b)
        assert beta == pytest.approx(math.sqrt(35 / 48), rel=1e-12)
        assert beta == pytest.approx(0.853913, abs=1e-6)
        assert abs(f_beta(a, beta) - f_beta(b, beta)) < 1e-9

    def test_equal_tpr_gives_none(self):
        assert crossover_beta(PointEstimate(0.9, 0.5), PointEstimate(0.6, 0.5)) is None

    def test_identical_rejected(self):
        with pytest.raises(DegenerateInput):
            crossover_beta(PointEstimate(0.5, 0.5), PointEstimate(0.5, 0.5))

    def test_zero_component_rejected(self):
        with pytest.raises(ZeroComponent):
            crossover_beta(PointEstimate(0.0, 0.5), PointEstimate(0.5, 0.5))

    def test_curves_cross_at_most_once(self):
        rng = np.random.default_rng(11)
        betas = np.geomspace(1e-4, 1e4, 2001)
        for _ in range(200):
            (pa, ta), (pb, tb) = rng.uniform(0.05, 0.95, size=(2, 2))
            a, b = PointEstimate(float(pa), float(ta)), PointEstimate(float(pb), float(tb))
            diff = np.array([f_beta(a, x) - f_beta(b, x) for x in betas])
            signs = np.sign(diff[np.abs(diff) > 1e-12])
            assert np.count_nonzero(np.diff(signs)) <= 1

    def test_symmetric_in_arguments(self):
        a, b = PointEstimate(0.3, 0.8), PointEstimate(0.7, 0.4)
        assert crossover_beta(a, b) == crossover_beta(b, a)


class TestAllCrossovers:
    def test_sorted_by_beta(self, make_record):
        pool = [
            make_record("A", (0.9, 0.5)),
            make_record("B", (0.7, 0.7)),
            make_record("C", (0.5, 0.9)),
        ]
        points = all_crossovers(pool)
        assert [(p.name_a, p.name_b) for p in points] == [("A", "B"), ("A", "C"), ("B", "C")]
        betas = [p.beta for p in points]
        assert betas == sorted(betas)
        assert betas[1] == pytest.approx(1.0)

    def test_skips_identical_and_dominated(self, make_record):
        pool = [
            make_record("A", (0.9, 0.6)),
            make_record("B", (0.9, 0.6)),
            make_record("C", (0.1, 0.1)),
        ]
        assert all_crossovers(pool) == []

    def test_rejects_cross_validation(self, make_record):
        with pytest.raises(NotHoldOutMode):
            all_crossovers([make_record("A", (0.5, 0.5), (0.6, 0.6))])


class TestDominancePartition:
    def test_single_dominating_classifier(self, make_record, default_grid):
        pool = [make_record("A", (0.9, 0.9)), make_record("B", (0.5, 0.5))]
        segments = dominance_partition(pool, default_grid)
        assert len(segments) == 1
        seg = segments[0]
        assert (seg.beta_lo, seg.beta_hi, seg.winner) == (0.01, 100.0, "A")

    def test_symmetric_pair(self, symmetric_pool, default_grid):
        segments = dominance_partition(symmetric_pool, default_grid)
        assert [s.winner for s in segments] == ["A", "B"]
        assert segments[0].beta_lo == 0.01
        assert segments[0].beta_hi == pytest.approx(1.0, rel=1e-12)
        assert segments[1].beta_lo == segments[0].beta_hi
        assert segments[1].beta_hi == 100.0

    def test_crossover_outside_range_gives_one_segment(self, make_record):
        pool = [make_record("A", (0.9, 0.6)), make_record("B", (0.6, 0.9))]
        segments = dominance_partition(pool, make_beta_grid(2.0, 50.0, 101))
        assert [s.winner for s in segments] == ["B"]

    def test_identical_classifiers_tie_to_smaller_name(self, make_record, default_grid):
        pool = [make_record("Zeta", (0.7, 0.4)), make_record("Alpha", (0.7, 0.4))]
        segments = dominance_partition(pool, default_grid)
        assert [s.winner for s in segments] == ["Alpha"]

    def test_independent_of_pool_order(self, make_record, default_grid):
        pool = [
            make_record("A", (0.95, 0.3)),
            make_record("B", (0.8, 0.6)),
            make_record("C", (0.6, 0.8)),
            make_record("D", (0.3, 0.95)),
            make_record("E", (0.5, 0.5)),
        ]
        expected = dominance_partition(pool, default_grid)
        shuffled = list(pool)
        random.Random(3).shuffle(shuffled)
        assert dominance_partition(shuffled, default_grid) == expected
        assert dominance_partition(list(reversed(pool)), default_grid) == expected

    def test_segments_tile_the_range(self, make_record, default_grid):
        rng = np.random.default_rng(21)
        pool = [make_record(f"c{i}", tuple(rng.uniform(0.05, 0.95, 2))) for i in range(8)]
        segments = dominance_partition(pool, default_grid)
        assert segments[0].beta_lo == default_grid.beta_min
        assert segments[-1].beta_hi == default_grid.beta_max
        for left, right in zip(segments, segments[1:]):
            assert left.beta_hi == right.beta_lo
            assert left.beta_lo < left.beta_hi
            assert left.winner != right.winner

    def test_scan_agrees_with_exact_on_hold_out(self, make_record, default_grid):
        rng = np.random.default_rng(5)
        for _ in range(20):
            pool = [make_record(f"c{i}", tuple(rng.uniform(0.05, 0.95, 2))) for i in range(5)]
            exact = dominance_partition(pool, default_grid, method='exact')
            scan = dominance_partition(pool, default_grid, method='scan')
            # 扫描可能漏掉比网格步长还窄的区间，这里只比较两者都看到的边界
            if [s.winner for s in exact] != [s.winner for s in scan]:
                continue
            for e, s in zip(exact, scan):
                assert s.beta_hi == pytest.approx(e.beta_hi, rel=1e-9)

    def test_cross_validation_boundary_is_refined(self, make_record, default_grid):
        a = make_record("A", (0.9, 0.5), (0.85, 0.55), (0.95, 0.45))
        b = make_record("B", (0.55, 0.85), (0.6, 0.9), (0.5, 0.95))
        segments = dominance_partition([a, b], default_grid)
        assert [s.winner for s in segments] == ["A", "B"]
        boundary = segments[0].beta_hi
        assert abs(mean_f_beta(a, boundary)[0] - mean_f_beta(b, boundary)[0]) < 1e-9

    def test_exact_rejects_cross_validation(self, make_record, default_grid):
        pool = [make_record("A", (0.9, 0.5), (0.8, 0.6))]
        with pytest.raises(NotHoldOutMode):
            dominance_partition(pool, default_grid, method='exact')

    def test_unknown_method(self, symmetric_pool, default_grid):
        with pytest.raises(ValueError):
            dominance_partition(symmetric_pool, default_grid, method='fastest')

    def test_empty_pool(self, default_grid):
        with pytest.raises(EmptyPool):
            dominance_partition([], default_grid)

    def test_duplicate_names(self, make_record, default_grid):
        with pytest.raises(DuplicateName):
            dominance_partition([make_record("A", (0.5, 0.5)), make_record("A", (0.6, 0.6))], default_grid)

    def test_fold_count_mismatch(self, make_record, default_grid):
        pool = [make_record("A", (0.5, 0.5), (0.6, 0.6)), make_record("B", (0.6, 0.6))]
        with pytest.raises(FoldCountMismatch):
            dominance_partition(pool, default_grid)


class TestRefineBoundary:
    def test_finds_root(self, make_record):
        a, b = make_record("A", (0.8, 0.5)), make_record("B", (0.6, 0.7))
        assert refine_boundary(a, b, 0.5, 1.5) == pytest.approx(math.sqrt(35 / 48), rel=1e-9)

    def test_same_sign_returns_upper_end(self, make_record):
        a, b = make_record("A", (0.9, 0.9)), make_record("B", (0.5, 0.5))
        assert refine_boundary(a, b, 0.5, 1.5) == 1.5

    def test_returns_plain_floats_for_grid_endpoints(self, make_record):
        a, b = make_record("A", (0.9, 0.9)), make_record("B", (0.5, 0.5))
        assert type(refine_boundary(a, b, np.float64(0.5), np.float64(1.5))) is float
        c = make_record("C", (0.9, 0.9))
        assert type(refine_boundary(a, c, np.float64(0.5), np.float64(1.5))) is float

    def test_cross_validation_segments_hold_plain_floats(self, make_record, default_grid):
        pool = [make_record("A", (0.9, 0.5), (0.88, 0.52)), make_record("B", (0.5, 0.9), (0.52, 0.88))]
        for seg in dominance_partition(pool, default_grid):
            assert type(seg.beta_lo) is float
            assert type(seg.beta_hi) is float


class TestSegmentHelpers:
    def test_segment_index_boundary_goes_right(self, symmetric_pool, default_grid):
        segments = dominance_partition(symmetric_pool, default_grid)
        assert segment_index(segments, 0.01) == 0
        assert segment_index(segments, 0.5) == 0
        assert segment_index(segments, segments[0].beta_hi) == 1
        assert segment_index(segments, 100.0) == 1

    def test_winners_in_order(self, make_record, default_grid):
        pool = [make_record("A", (0.9, 0.5)), make_record("B", (0.7, 0.7)), make_record("C", (0.5, 0.9))]
        assert winners_in_order(dominance_partition(pool, default_grid)) == ["A", "B", "C"]
