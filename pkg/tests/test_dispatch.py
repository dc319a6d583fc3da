import numpy as np
import pytest

import permanent as P
from conftest import brute_force_permanent, random_float_matrix
from permanent.algorithms import AlgorithmId
from permanent.dispatch import (TuningParams, default_params, permanent_opt,
                                select_algorithm)
from permanent.tuner import SeparatingPlane, plane_intersection

C, R, G = AlgorithmId.COMBINATORIC, AlgorithmId.RYSER, AlgorithmId.GLYNN


def crafted(**overrides):
    base = dict(p1=1.0, p2=0.0, p3=-0.5, p4=3.0, p5=1.0, p6=0.0, p7=-0.5, p8=8.0)
    base.update(overrides)
    return TuningParams(**base)


class TestParamsValidation:
    def test_rejects_p4_above_p8(self):
        with pytest.raises(ValueError):
            crafted(p4=9.0)

    def test_rejects_tiny_p8(self):
        with pytest.raises(ValueError):
            crafted(p8=1.0, p4=1.0)

    def test_rejects_zero_normals(self):
        with pytest.raises(ValueError):
            crafted(p1=0.0, p2=0.0)
        with pytest.raises(ValueError):
            crafted(p5=0.0, p6=0.0)

    def test_rejects_unknown_source(self):
        with pytest.raises(ValueError):
            TuningParams(1, 1, 1, 3, 1, 1, 1, 8, source="guess")


class TestSelectionBranches:
    def test_tiny_squares_take_brute_force(self):
        assert select_algorithm(2, 2, crafted()) is C
        assert select_algorithm(3, 3, crafted()) is C

    def test_small_regime_line_splits_combinatoric_and_glynn(self):
        params = crafted()  # h1 = r - 0.5
        assert select_algorithm(5, 6, params) is C   # r ~ 0.83
        assert select_algorithm(1, 6, params) is G   # r ~ 0.17

    def test_boundary_goes_to_the_else_branch(self):
        params = crafted()  # h1 = h2 = r - 0.5 exactly zero at r = 1/2
        assert select_algorithm(3, 6, params) is G   # h1 = 0 -> not combinatoric
        assert select_algorithm(5, 10, params) is R  # h2 = 0 -> not glynn

    def test_large_regime_splits_glynn_and_ryser(self):
        params = crafted()
        assert select_algorithm(9, 10, params) is G
        assert select_algorithm(2, 10, params) is R

    def test_requires_normalized_shape(self):
        with pytest.raises(ValueError):
            select_algorithm(5, 3, crafted())

    def test_total_and_deterministic_over_the_domain(self):
        for params in (default_params(), crafted()):
            for n in range(1, 65):
                for m in range(1, n + 1):
                    first = select_algorithm(m, n, params)
                    assert first in AlgorithmId
                    assert select_algorithm(m, n, params) is first


class TestDefaults:
    def test_p8_anchor(self):
        assert default_params().p8 == 13.0

    def test_source_marker(self):
        assert default_params().source == "default"

    def test_published_style_examples(self):
        d = default_params()
        assert select_algorithm(3, 3, d) is C
        assert select_algorithm(20, 20, d) is G
        assert select_algorithm(4, 20, d) is R

    def test_boundaries_intersect_near_the_anchor(self):
        d = default_params()
        inter = plane_intersection(
            SeparatingPlane(d.p1, d.p2, d.p3),
            SeparatingPlane(d.p5, d.p6, d.p7))
        assert inter is not None
        r_star, n_star = inter
        assert abs(n_star - 13.0) <= 1.0
        assert abs(r_star - 0.29) <= 0.05

    def test_outcome_at_the_anchor_follows_the_line_algebra(self):
        # m = round(13 * 0.29) = 4: on/near both boundaries; the small-regime
        # line decides, and the choice must match its sign exactly
        d = default_params()
        m, n = round(13 * 0.29), 13
        h1 = d.p1 * (m / n) + d.p2 * n + d.p3
        expected = C if h1 > 0 else G
        assert select_algorithm(m, n, d) is expected

    def test_qualitative_regions(self):
        d = default_params()
        for n in range(2, int(d.p4) + 1):
            assert select_algorithm(n, n, d) is C
        for n in range(20, 65):
            assert select_algorithm(n, n, d) is G
        for n in range(20, 65):
            m = max(1, int(0.15 * n))
            assert m / n <= 0.15
            assert select_algorithm(m, n, d) is R


class TestOptEntryPoint:
    def test_sequence_example(self):
        res = permanent_opt([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert res.value == 450 and not res.overflowed

    def test_transposes_tall_inputs(self, rng):
        a = rng.integers(0, 9, (4, 2)).astype(np.int64)
        assert permanent_opt(a).value == permanent_opt(a.T).value

    def test_matches_brute_force_on_every_branch(self, rng):
        for n in range(1, 11):
            for m in range(1, n + 1):
                a = random_float_matrix(rng, m, n)
                expect = brute_force_permanent(a.tolist())
                got = permanent_opt(a).value
                assert got == pytest.approx(expect, rel=1e-10, abs=1e-12)

    def test_value_identical_across_params(self, rng):
        a = random_float_matrix(rng, 7, 7)
        v_default = permanent_opt(a).value
        v_crafted = permanent_opt(a, params=crafted()).value
        assert v_default == pytest.approx(v_crafted, rel=1e-10)
        assert P.ryser(a) == pytest.approx(v_default, rel=1e-10)

    def test_opt_accepts_a_tuning_file(self, tmp_path):
        from permanent.tuner import emit_tuning_file

        path = tmp_path / "tuning.txt"
        emit_tuning_file(crafted(), path)
        a = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
        assert P.opt(a, tuning_file=str(path)) == 450
