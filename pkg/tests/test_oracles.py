import math

import numpy as np
import pytest

import permanent as P
from conftest import brute_force_permanent
from permanent.algorithms import AlgorithmId
from permanent.core import ElementKind
from permanent.oracles import (MACHEPS, CauchySpec, borchardt_permanent,
                               det_partial_pivot, digits_lost,
                               identity_matrix, identity_permanent,
                               ones_matrix, ones_permanent, precision_csv,
                               run_precision_suite, sample_cauchy)


class TestOnesFamily:
    def test_known_values(self):
        assert ones_permanent(3, 3) == 6
        assert ones_permanent(2, 4) == 12
        assert ones_permanent(1, 1) == 1

    def test_widens_past_int64(self):
        assert isinstance(ones_permanent(20, 20), int)
        v = ones_permanent(21, 21)
        assert isinstance(v, float)
        assert v == float(math.factorial(21))

    def test_matches_brute_force_up_to_nine(self):
        for n in range(1, 10):
            for m in range(1, n + 1):
                mat = ones_matrix(m, n, ElementKind.INT64)
                assert ones_permanent(m, n) == brute_force_permanent(mat.tolist())


class TestIdentityFamily:
    def test_padding_columns_are_zero(self):
        mat = identity_matrix(2, 5, ElementKind.INT64)
        arr = np.asarray(mat.data)
        assert arr[:, 2:].sum() == 0
        assert arr[0, 0] == arr[1, 1] == 1
        assert identity_permanent(2, 5) == 1

    def test_ryser_is_exact_on_padded_identities(self):
        for n in range(1, 11):
            for m in range(1, n + 1):
                mat = identity_matrix(m, n, ElementKind.FLOAT64)
                assert P.ryser(mat.data) == 1.0


class TestCauchySampling:
    def test_single_attempt_returns_the_draw(self):
        spec = sample_cauchy(3, attempts=1, seed=5)
        rng = np.random.default_rng(5)
        assert np.allclose(spec.x, rng.uniform(0.25, 0.75, 3))
        assert np.allclose(spec.y, rng.uniform(-0.75, -0.25, 3))

    def test_deterministic_under_seed(self):
        a = sample_cauchy(4, attempts=50, seed=9)
        b = sample_cauchy(4, attempts=50, seed=9)
        assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)
        assert a.condition == b.condition

    def test_returns_the_condition_argmin(self):
        spec = sample_cauchy(3, attempts=40, seed=7)
        rng = np.random.default_rng(7)
        conds = []
        for _ in range(40):
            x = rng.uniform(0.25, 0.75, 3)
            y = rng.uniform(-0.75, -0.25, 3)
            conds.append(float(np.linalg.cond(1.0 / (x[:, None] + y[None, :]))))
        assert spec.condition == pytest.approx(min(conds))

    def test_ranges_respected(self):
        spec = sample_cauchy(6, attempts=5, seed=3)
        assert ((spec.x >= 0.25) & (spec.x <= 0.75)).all()
        assert ((spec.y >= -0.75) & (spec.y <= -0.25)).all()
        assert np.abs(spec.x[:, None] + spec.y[None, :]).min() > 0


class TestBorchardt:
    def test_one_by_one(self):
        spec = CauchySpec(1, np.array([0.5]), np.array([-0.25]), 1.0)
        assert borchardt_permanent(spec) == pytest.approx(4.0)

    def test_matches_brute_force_n2(self):
        spec = sample_cauchy(2, attempts=20, seed=11)
        expect = brute_force_permanent(spec.matrix().tolist())
        assert borchardt_permanent(spec) == pytest.approx(expect, rel=1e-10)

    def test_matches_ryser_n10(self):
        spec = sample_cauchy(10, attempts=200, seed=13)
        got = borchardt_permanent(spec)
        assert P.ryser(spec.matrix().data) == pytest.approx(got, rel=1e-6)

    def test_matches_glynn_low_condition_specs(self):
        for n in range(2, 11):
            spec = sample_cauchy(n, attempts=100, seed=100 + n)
            got = borchardt_permanent(spec)
            assert P.glynn(spec.matrix().data) == pytest.approx(got, rel=1e-8)


class TestDeterminant:
    def test_matches_numpy(self, rng):
        for n in (1, 2, 5, 8):
            a = rng.uniform(-2, 2, (n, n))
            assert det_partial_pivot(a) == pytest.approx(np.linalg.det(a), rel=1e-10)

    def test_singular_matrix_raises(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])
        with pytest.raises(ArithmeticError):
            det_partial_pivot(a)


class TestDigitsLost:
    def test_one_ulp_is_zero_digits(self):
        assert digits_lost(1.0 + MACHEPS, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_relative_error_1e6(self):
        # log10(1e-6 / macheps): the 1e-6 error costs ~9.65 of the ~15.65
        # digits available
        d = digits_lost(1.0 + 1e-6, 1.0)
        assert d == pytest.approx(math.log10(1e-6) - math.log10(MACHEPS), abs=1e-9)
        assert d == pytest.approx(9.6536, abs=1e-3)

    def test_exact_match_reports_the_floor(self):
        assert digits_lost(123.0, 123.0) == 0.0
        assert digits_lost(7, 7) == 0.0

    def test_zero_truth_rejected(self):
        with pytest.raises(ValueError):
            digits_lost(1.0, 0.0)

    def test_scale_invariance(self):
        base = digits_lost(1.0 + 1e-6, 1.0)
        for c in (3.7, 1e8, 1e-8):
            assert digits_lost(c * (1.0 + 1e-6), c) == pytest.approx(base, abs=1e-6)

    def test_complex_values_accepted(self):
        d = digits_lost(1.0 + 1e-8j, 1.0 + 0.0j)
        assert d == pytest.approx(math.log10(1e-8) - math.log10(MACHEPS), abs=1e-6)


@pytest.fixture(scope="module")
def records():
    return run_precision_suite(n_range=range(2, 11), seed=0, cauchy_attempts=50)


class TestPrecisionSuite:
    def test_identity_ryser_rows_sit_at_the_floor(self, records):
        rows = [r for r in records
                if r.family == "identity" and r.algorithm is AlgorithmId.RYSER]
        assert rows
        assert all(r.digits == 0.0 and not r.overflow for r in rows)

    def test_cauchy_rows_are_square_float_only(self, records):
        rows = [r for r in records if r.family == "cauchy"]
        assert rows
        assert all(r.m == r.n and r.kind is ElementKind.FLOAT64 for r in rows)

    def test_combinatoric_capped_at_fourteen_columns(self):
        records = run_precision_suite(n_range=range(14, 17), seed=0,
                                      families=("identity",),
                                      cauchy_attempts=1)
        comb = [r for r in records if r.algorithm is AlgorithmId.COMBINATORIC]
        assert comb and all(r.n <= 14 for r in comb)

    def test_csv_is_deterministic(self, records):
        again = run_precision_suite(n_range=range(2, 11), seed=0,
                                    cauchy_attempts=50)
        assert precision_csv(records) == precision_csv(again)

    def test_csv_schema(self, records):
        text = precision_csv(records)
        lines = text.splitlines()
        assert lines[0] == "family,algorithm,m,n,kind,digits_lost,overflow"
        assert len(lines) == len(records) + 1
        keys = [tuple(line.split(",")[:4]) for line in lines[1:]]
        assert keys == sorted(keys, key=lambda k: (k[0], k[1], int(k[3]), int(k[2])))
