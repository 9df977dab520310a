#!/usr/bin/env python

import time
import numpy as np
import pytest

from routetree.Classifier import (
    Gamma, MatchResult, scale_template, shift_grid, route_distance,
    classify_route, classify_batch, route_medoid, pair_distance,
)
from routetree.Geometry import (
    Polyline, bounding_box, translate, translate_to_origin, resample_to_count,
)
from routetree.Randomroute import SynthSpec, generate, generate_corpus
from routetree.Templates import Template, TemplateSet, builtin_route_tree
from routetree.utils import (
    RouteTreeError, ConfigError, ContractError, DegenerateRouteError, BLOCKING,
    TABLE_LABELS,
)

from conftest import make_route, dense_route_distance


TREE = builtin_route_tree()


def noiseless(name, scale=15.0, npoints=50):
    return generate(SynthSpec(name, target_scale=scale, point_count=npoints))[0]


def test_gamma_range():
    assert Gamma(1.0).value == 1.0
    assert Gamma.coerce(Gamma(0.25)) == Gamma(0.25)
    for bad in (0, -0.5, 1.5):
        with pytest.raises(ConfigError):
            Gamma(bad)



class TestScaleTemplate:

    def test_fits_inside_and_keeps_aspect(self, rng):
        for _ in range(1000):
            name = TREE.names[rng.integers(len(TREE))]
            spec = SynthSpec(
                TREE.names[rng.integers(len(TREE))],
                target_scale=rng.uniform(8, 30),
                noise_sigma=0.5, jitter_break=0.1,
                seed=int(rng.integers(1 << 30)),
            )
            game = generate(spec)[0]
            scaled = scale_template(TREE.get(name), game)
            gbox = bounding_box(translate_to_origin(game.points))
            sbox = bounding_box(scaled.points)
            assert sbox.min_x == 0 and sbox.min_y == 0
            assert gbox.contains(sbox, tol=1e-9)
            tbox = TREE.get(name).bbox
            if tbox.width and tbox.height:
                assert sbox.aspect == pytest.approx(tbox.aspect, rel=1e-9)

    def test_binding_axis(self):
        wide = make_route([(0, 0), (0, 10), (10, 10)])
        scaled = scale_template(TREE.get("post"), wide)
        assert scaled.bound_axis == "vertical"
        assert scaled.scale_factor == pytest.approx(10 / 160.)
        assert shift_grid(scaled, wide).axis == "x"

        tall = make_route([(0, 0), (0, 30), (2, 32)])
        scaled = scale_template(TREE.get("post"), tall)
        assert scaled.bound_axis == "horizontal"
        assert shift_grid(scaled, tall).axis == "y"

    def test_ties_go_to_horizontal(self):
        square = make_route([(0, 0), (0, 6), (6, 6)])
        scaled = scale_template(TREE.get("dig"), square)
        assert scaled.bound_axis == "horizontal"
        assert scaled.scale_factor == pytest.approx(0.1)

    def test_zero_width_game(self):
        straight = make_route([(0, 0), (0, 10)])
        streak = scale_template(TREE.get("streak"), straight)
        np.testing.assert_allclose(streak.points.points, [[0, 0], [0, 10]])
        post = scale_template(TREE.get("post"), straight)
        assert post.bound_axis == "vertical"
        assert bounding_box(post.points).height == pytest.approx(10)

    def test_orthogonal_lines_match_long_sides(self):
        across = make_route([(0, 0), (10, 0)])
        scaled = scale_template(TREE.get("streak"), across)
        assert bounding_box(scaled.points).height == pytest.approx(10)
        # already outside the flat game box, so it is not slid any further
        assert shift_grid(scaled, across).offsets == (0.0,)

    def test_degenerate_game(self):
        with pytest.raises(DegenerateRouteError):
            scale_template(TREE.get("post"), make_route([(1, 1), (1, 1)]))

    def test_rejected_scalings_distort_or_overflow(self):
        # scaling each axis to the game box distorts the template's shape,
        # and scaling by the smaller ratio overflows the game box
        game = make_route([(0, 0), (0, 12), (8, 20)])
        template = TREE.get("post")
        gbox = bounding_box(game.points)
        tbox = template.bbox

        stretched = template.waypoints.points * [
            gbox.width / tbox.width, gbox.height / tbox.height]
        assert bounding_box(stretched).aspect != pytest.approx(tbox.aspect)

        factor = 1. / min(tbox.width / gbox.width, tbox.height / gbox.height)
        oversized = bounding_box(template.waypoints.points * factor)
        assert not gbox.contains(oversized, tol=1e-9)

        kept = scale_template(template, game)
        assert gbox.contains(bounding_box(kept.points), tol=1e-9)



class TestShiftGrid:

    def grid(self, width, endpoint=False):
        # post bound vertically leaves 'width' yards of slack along x
        game = make_route([(0, 0), (0, 100), (width + 60, 160)])
        return shift_grid(scale_template(TREE.get("post"), game), game,
                          include_exact_endpoint=endpoint)

    def test_offsets(self):
        grid = self.grid(3.3)
        assert grid.axis == "x"
        assert grid.w == pytest.approx(3.3)
        assert grid.offsets == (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)

    def test_counts(self, rng):
        for _ in range(200):
            width = rng.uniform(0.1, 20)
            grid = self.grid(width, endpoint=True)
            ratio = grid.w / 0.5
            if abs(ratio - round(ratio)) < 1e-6:
                continue
            assert len(grid) == np.ceil(ratio) + 1
            assert len(self.grid(width)) == np.ceil(ratio)
            assert grid.offsets[-1] == grid.w

    def test_exact_multiple(self):
        grid = self.grid(5.0, endpoint=True)
        assert len(grid) == 11
        assert len(self.grid(5.0)) == 11

    def test_no_slack(self):
        game = noiseless("post")
        grid = shift_grid(scale_template(TREE.get("post"), game), game)
        assert grid.offsets == (0.0,)



class TestRouteDistance:

    def test_example(self):
        game = Polyline([(0, 0), (0, 2)])
        placed = Polyline([(1, 0), (1, 2)])
        assert route_distance(game, placed, 0.5) == (3.0, 2.0, 2.0)

    def test_parallel_lines(self):
        game = Polyline(np.column_stack([np.zeros(10), np.arange(10.)]))
        placed = Polyline(np.column_stack([np.ones(10), np.arange(10.)]))
        d_route, d_game, d_scaled = route_distance(game, placed, 1.0)
        assert d_game == pytest.approx(10)
        assert d_scaled == pytest.approx(10)
        assert d_route == pytest.approx(20)

    def test_identical_is_zero(self):
        line = Polyline([(0, 0), (0, 5), (3, 8)])
        assert route_distance(line, line, 1.0)[0] == 0

    def test_cardinality_contract(self):
        with pytest.raises(ContractError):
            route_distance(Polyline([(0, 0), (0, 1), (0, 2)]), Polyline([(0, 0), (0, 2)]))

    def test_symmetric_at_gamma_one(self, rng):
        for _ in range(20):
            a = Polyline(np.cumsum(rng.uniform(-1, 1, size=(8, 2)), axis=0))
            b = Polyline(np.cumsum(rng.uniform(-1, 1, size=(8, 2)), axis=0))
            assert route_distance(a, b, 1)[0] == pytest.approx(route_distance(b, a, 1)[0])

    def test_matches_dense_oracle(self, rng):
        for _ in range(10):
            a = np.cumsum(rng.uniform(-1, 1, size=(6, 2)), axis=0)
            b = np.cumsum(rng.uniform(-1, 1, size=(6, 2)), axis=0)
            exact = route_distance(a, b, 0.5)
            oracle = dense_route_distance(a, b, 0.5, spacing=1e-3)
            np.testing.assert_allclose(exact, oracle, atol=1e-2)



class TestClassifyRoute:

    def test_self_classification(self):
        for name in TREE.names:
            result = classify_route(noiseless(name), TREE)
            assert result.label == name
            assert result.best_distance == pytest.approx(0, abs=1e-6)

    def test_exact_match_fixture(self):
        game = noiseless("post", scale=20.0, npoints=37)
        result = classify_route(game, TREE)
        assert result.label == "post"
        assert result.best_shift[1] == 0.0
        assert result.d_game == pytest.approx(0, abs=1e-6)
        assert list(result.per_template) == TREE.names
        others = [j for (i, j) in result.per_template.items() if i != "post"]
        assert min(others) > 1.0

    def test_post_with_gradual_break(self):
        stem = [(0, float(i)) for i in range(21)]
        bend = [(0.5, 21.0)] + [(1.5 + i, 22.0 + i) for i in range(9)]
        result = classify_route(make_route(stem + bend), TREE)
        assert result.label == "post"

    def test_out_route_is_closer_to_out_than_corner(self):
        # a rounded out break partly overlaps the corner template too
        stem = [(0, float(i)) for i in range(13)]
        cut = [(-1.0, 12.3)] + [(-float(i), 12.4) for i in range(2, 9)]
        result = classify_route(make_route(stem + cut), TREE)
        assert result.per_template["corner"] > result.per_template["out"]
        assert result.label == "out"

    def test_blocking_threshold(self):
        still = make_route([(0, 0), (0, 4.0), (0.5, 3.0)])
        result = classify_route(still, TREE)
        assert result.label == BLOCKING
        assert result.best_distance is None

        moving = make_route([(0, 0), (0, 4.01)])
        result = classify_route(moving, TREE)
        assert result.label != BLOCKING
        assert result.best_distance is not None

    def test_ties_go_to_first_label(self):
        same = TemplateSet([
            Template("streak", [(0, 0), (0, 100)]),
            Template("post", [(0, 0), (0, 100)]),
        ])
        result = classify_route(make_route([(0, 0), (0, 3), (0, 10)]), same)
        assert result.label == "post"

    def test_empty_template_set(self):
        with pytest.raises(ContractError):
            classify_route(noiseless("post"), TemplateSet([]))

    def test_finer_grids_never_do_worse(self, rng):
        for _ in range(20):
            spec = SynthSpec(
                TABLE_LABELS[rng.integers(len(TABLE_LABELS))],
                target_scale=rng.uniform(8, 30), noise_sigma=0.5,
                jitter_break=0.1, seed=int(rng.integers(1 << 30)))
            game = generate(spec)[0]
            coarse = classify_route(game, TREE)
            finer = classify_route(game, TREE, include_exact_endpoint=True)
            finest = classify_route(game, TREE, step=0.25)
            for name in TREE.names:
                assert finer.per_template[name] <= coarse.per_template[name] + 1e-9
                assert finest.per_template[name] <= coarse.per_template[name] + 1e-9

    def test_distance_grows_with_gamma(self, rng):
        game = generate(SynthSpec("corner", noise_sigma=0.5, seed=3))[0]
        low = classify_route(game, TREE, gamma=0.25)
        high = classify_route(game, TREE, gamma=1.0)
        for name in TREE.names:
            assert low.per_template[name] <= high.per_template[name]

    def test_label_survives_scaling_and_translation(self, rng):
        self._check_invariance(rng, 100)

    @pytest.mark.slow
    def test_label_survives_scaling_and_translation_long(self, rng):
        self._check_invariance(rng, 500)

    def _check_invariance(self, rng, ntrials):
        for _ in range(ntrials):
            spec = SynthSpec(
                TABLE_LABELS[rng.integers(len(TABLE_LABELS))],
                target_scale=rng.uniform(10, 20), jitter_break=0.1,
                seed=int(rng.integers(1 << 30)))
            game = generate(spec)[0]
            label = classify_route(game, TREE).label
            factor = rng.uniform(0.5, 2.0)
            dx, dy = rng.uniform(-50, 50, size=2)
            moved = game.with_points(translate(game.points.points * factor, dx, dy))
            assert classify_route(moved, TREE).label == label

    def test_brute_force_labels(self, rng):
        checked = 0
        for _ in range(100):
            npoints = int(rng.integers(4, 13))
            steps = np.column_stack([
                rng.uniform(-1.5, 1.5, npoints - 1), rng.uniform(0.5, 2.0, npoints - 1)])
            game = make_route(np.vstack([[0, 0], np.cumsum(steps, axis=0)]))
            if bounding_box(game.points).height <= 4:
                continue
            names = list(rng.choice(TREE.names, size=2, replace=False))
            tset = TREE.subset(names)

            result = classify_route(game, tset)
            oracle = {}
            gpoints = translate_to_origin(game.points).points
            for template in tset:
                scaled = scale_template(template, game)
                grid = shift_grid(scaled, game)
                placed = scaled.points
                if len(placed) < npoints:
                    placed = resample_to_count(placed, npoints)
                oracle[template.name] = min(
                    dense_route_distance(gpoints, placed.points + shift, 0.5, spacing=1e-2)[0]
                    for shift in grid.shifts
                )
                assert result.per_template[template.name] == pytest.approx(
                    oracle[template.name], abs=0.1)

            # near ties are within the oracle's sampling error
            if abs(oracle[names[0]] - oracle[names[1]]) > 0.25:
                assert result.label == min(oracle, key=oracle.get)
                checked += 1
        assert checked > 50



class TestClassifyBatch:

    def test_order_and_workers(self):
        routes = [noiseless(name) for name in TREE.names]
        serial = classify_batch(routes, TREE)
        threaded = classify_batch(routes, TREE, workers=4)
        assert [i.label for i in serial] == TREE.names
        assert serial == threaded

    def test_failures_do_not_stop_the_batch(self):
        tset = TemplateSet([
            Template("streak", [(0, 0), (0, 0)]),
            Template("post", [(0, 0), (0, 100), (60, 160)]),
        ])
        routes = [noiseless("post"), make_route([(0, 0), (0, 1)])]
        results = classify_batch(routes, tset)
        assert results[0].label is None
        assert "zero extent" in results[0].error
        assert results[1].label == BLOCKING

    def test_results_dict(self):
        result = classify_route(noiseless("dig"), TREE)
        assert MatchResult.from_dict(result.to_dict()) == result
        assert result.to_dict()["label"] == "dig"



class TestMedoid:

    def test_single_and_empty(self):
        assert route_medoid([noiseless("post")]) == 0
        with pytest.raises(RouteTreeError):
            route_medoid([])

    def test_middle_route(self):
        routes = [
            make_route([(0, 0), (0, 10)]),
            make_route([(0, 0), (1, 10)]),
            make_route([(0, 0), (2, 10)]),
        ]
        assert route_medoid(routes) == 1

    def test_pair_distance_resamples(self):
        short = make_route([(0, 0), (0, 10)])
        long_ = make_route(np.column_stack([np.zeros(11), np.arange(11.)]))
        assert pair_distance(short, long_) == pytest.approx(0, abs=1e-9)



@pytest.mark.slow
def test_noisy_corpus_accuracy():
    specs = [
        SynthSpec(name, noise_sigma=0.5, jitter_break=0.1,
                  scale_range=(8, 30), seed=1000 * idx)
        for idx, name in enumerate(TABLE_LABELS)
    ]
    corpus = generate_corpus(specs, 200)
    results = classify_batch([i[0] for i in corpus], TREE, gamma=0.5)
    correct = sum(r.label == c[1] for (r, c) in zip(results, corpus))
    assert correct / float(len(corpus)) >= 0.98


@pytest.mark.slow
def test_classification_speed():
    specs = [SynthSpec(name, noise_sigma=0.5, jitter_break=0.1,
                       scale_range=(8, 30), seed=7) for name in TABLE_LABELS]
    routes = [i[0] for i in generate_corpus(specs, 28)]
    assert len(routes) == 252
    start = time.perf_counter()
    classify_batch(routes, TREE)
    assert time.perf_counter() - start < 10.0


@pytest.mark.slow
def test_time_grows_linearly_with_route_length():
    timings = {}
    classify_batch([noiseless("post", npoints=10)], TREE)
    for npoints in (10, 25, 50):
        specs = [SynthSpec(name, noise_sigma=0.5, jitter_break=0.1, point_count=npoints,
                           scale_range=(8, 30), seed=11) for name in TABLE_LABELS]
        routes = [i[0] for i in generate_corpus(specs, 28)]
        start = time.perf_counter()
        classify_batch(routes, TREE)
        timings[npoints] = time.perf_counter() - start
    # within twice of proportional to the point count
    assert timings[25] / timings[10] < 2 * 2.5
    assert timings[50] / timings[10] < 2 * 5.0
