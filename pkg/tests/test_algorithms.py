import numpy as np
import pytest

import permanent as P
from conftest import (brute_force_permanent, random_complex_matrix,
                      random_float_matrix, random_int_matrix)
from permanent.algorithms import (AlgorithmId, StepBudgetExceeded,
                                  permanent_combinatoric,
                                  permanent_glynn_rectangular,
                                  permanent_glynn_square,
                                  permanent_ryser_rectangular,
                                  permanent_ryser_square, run_algorithm)
from permanent.core import as_matrix
from permanent.reference import permanent_reference

ALL_FNS = (P.combinatoric, P.ryser, P.glynn, P.opt)


class TestKnownValues:
    def test_three_by_three_sequence(self):
        a = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
        for fn in ALL_FNS:
            assert fn(a) == 450

    def test_two_by_two(self):
        # brute force over the two permutations: 1*4 + 2*3
        assert brute_force_permanent([[1, 2], [3, 4]]) == 10
        for fn in ALL_FNS:
            assert fn([[1, 2], [3, 4]]) == 10

    def test_identity_is_one(self):
        for n in (3, 4):
            eye = np.eye(n, dtype=np.int64)
            for fn in ALL_FNS:
                assert fn(eye) == 1

    def test_single_row_sums_the_row(self):
        assert P.combinatoric([[2, 3, 4]]) == 9
        assert P.ryser([[2, 3, 4]]) == 9
        assert P.glynn([[5.0, -1.5]]) == pytest.approx(3.5)

    def test_rectangular_ones(self):
        ones24 = np.ones((2, 4), dtype=np.int64)
        assert P.ryser(ones24) == 12  # 4!/2!
        assert P.glynn(ones24) == 12

    def test_padded_identity_pattern(self):
        a = [[0, 1, 0], [1, 0, 0]]
        assert P.ryser(a) == 1
        assert P.glynn(a) == 1
        assert P.combinatoric(a) == 1


class TestCrossAlgorithmAgreement:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_int_matrices_agree_exactly(self, rng, n):
        for m in range(1, n + 1):
            for _ in range(20):
                a = random_int_matrix(rng, m, n)
                expect = brute_force_permanent(a.tolist())
                assert P.combinatoric(a) == expect
                assert P.ryser(a) == expect
                assert P.glynn(a) == expect

    @pytest.mark.parametrize("n", range(1, 7))
    def test_float_matrices_agree_to_1e10(self, rng, n):
        for m in range(1, n + 1):
            for _ in range(20):
                a = random_float_matrix(rng, m, n)
                expect = brute_force_permanent(a.tolist())
                scale = max(1e-300, abs(expect))
                assert abs(P.combinatoric(a) - expect) <= 1e-10 * scale
                assert abs(P.ryser(a) - expect) <= 1e-10 * scale
                assert abs(P.glynn(a) - expect) <= 1e-10 * scale

    def test_complex_matrices_agree(self, rng):
        for m, n in ((2, 2), (3, 3), (2, 4), (3, 5), (5, 5)):
            a = random_complex_matrix(rng, m, n)
            expect = brute_force_permanent(a.tolist())
            for fn in (P.combinatoric, P.ryser, P.glynn):
                assert fn(a) == pytest.approx(expect, rel=1e-10)


class TestReferenceTranscriptions:
    def test_reference_known_values(self):
        two = as_matrix([[1, 2], [3, 4]])
        assert permanent_reference(two, AlgorithmId.RYSER).value == 10
        eye3 = as_matrix(np.eye(3, dtype=np.int64))
        assert permanent_reference(eye3, AlgorithmId.GLYNN).value == 1
        ones23 = as_matrix(np.ones((2, 3), dtype=np.int64))
        assert permanent_reference(ones23, AlgorithmId.RYSER).value == 6  # 3!/1!

    @pytest.mark.parametrize("n", range(1, 7))
    def test_reference_matches_optimized_int(self, rng, n):
        for m in range(1, n + 1):
            for _ in range(5):
                a = as_matrix(random_int_matrix(rng, m, n))
                for alg in AlgorithmId:
                    ref = permanent_reference(a, alg)
                    opt = run_algorithm(a, alg)
                    assert not opt.overflowed
                    assert ref.value == opt.value

    def test_reference_matches_optimized_float(self, rng):
        for m, n in ((2, 3), (3, 3), (4, 6), (5, 5)):
            a = as_matrix(random_float_matrix(rng, m, n))
            for alg in AlgorithmId:
                ref = permanent_reference(a, alg)
                opt = run_algorithm(a, alg)
                assert opt.value == pytest.approx(ref.value, rel=1e-10)

    def test_reference_size_guard(self):
        big = as_matrix(np.ones((21, 21)))
        with pytest.raises(StepBudgetExceeded):
            permanent_reference(big, AlgorithmId.RYSER)


class TestStructuralProperties:
    def test_row_and_column_permutation_invariance(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 7))
            m = int(rng.integers(1, n + 1))
            a = random_int_matrix(rng, m, n)
            expect = P.ryser(a)
            b = a[rng.permutation(m), :][:, rng.permutation(n)]
            assert P.ryser(b) == expect
            assert P.glynn(b) == expect

    def test_linearity_in_a_single_row(self, rng):
        for _ in range(10):
            a = random_float_matrix(rng, 4, 5)
            c = float(rng.uniform(0.5, 2.0))
            scaled = a.copy()
            scaled[2, :] *= c
            for fn in (P.ryser, P.glynn, P.combinatoric):
                assert fn(scaled) == pytest.approx(c * fn(a), rel=1e-12)

    def test_zero_row_gives_zero(self, rng):
        a = random_int_matrix(rng, 4, 5)
        a[1, :] = 0
        assert P.combinatoric(a) == 0
        assert P.ryser(a) == 0
        assert P.glynn(a) == 0
        f = random_float_matrix(rng, 4, 5)
        f[2, :] = 0.0
        assert P.combinatoric(f) == 0.0
        assert P.ryser(f) == 0.0
        # the sign-vector sum cancels pairwise, so only roundoff residue survives
        assert abs(P.glynn(f)) < 1e-12

    def test_complex_conjugation_commutes(self, rng):
        a = random_complex_matrix(rng, 5, 5)
        for fn in (P.ryser, P.glynn):
            assert fn(np.conj(a)) == np.conj(fn(a))


class TestShapeContracts:
    def test_square_forms_reject_rectangles(self):
        rect = as_matrix([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(ValueError):
            permanent_ryser_square(rect)
        with pytest.raises(ValueError):
            permanent_glynn_square(rect)

    def test_glynn_rectangular_rejects_square(self):
        sq = as_matrix([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            permanent_glynn_rectangular(sq)

    def test_kernels_require_normalized_orientation(self):
        tall = as_matrix([[1, 2], [3, 4], [5, 6]])
        with pytest.raises(ValueError):
            permanent_combinatoric(tall)
        with pytest.raises(ValueError):
            permanent_ryser_rectangular(tall)

    def test_ryser_rectangular_accepts_square(self):
        sq = as_matrix([[1, 2], [3, 4]])
        assert permanent_ryser_rectangular(sq).value == 10


class TestIntegerOverflow:
    def test_overflow_is_flagged_not_wrapped(self):
        big = as_matrix(np.array([[2**62, 3], [5, 2**62]], dtype=np.int64))
        for alg in AlgorithmId:
            res = run_algorithm(big, alg)
            assert res.overflowed

    def test_wrappers_raise_overflow_error(self):
        big = np.array([[2**62, 3], [5, 2**62]], dtype=np.int64)
        for fn in ALL_FNS:
            with pytest.raises(OverflowError):
                fn(big)

    def test_values_below_the_edge_are_exact(self):
        a = as_matrix(np.array([[2**30, 1], [1, 2**30]], dtype=np.int64))
        expect = 2**60 + 1
        for alg in AlgorithmId:
            res = run_algorithm(a, alg)
            assert not res.overflowed
            assert res.value == expect

    def test_glynn_flags_on_its_accumulator_scale(self):
        # per(a) fits in int64, but the sign-vector sum is 2x the permanent
        # and does not; ryser and combinatoric still return it exactly
        a = as_matrix(np.array([[2**31, 1], [1, 2**31]], dtype=np.int64))
        assert run_algorithm(a, AlgorithmId.COMBINATORIC).value == 2**62 + 1
        assert run_algorithm(a, AlgorithmId.RYSER).value == 2**62 + 1
        assert run_algorithm(a, AlgorithmId.GLYNN).overflowed


class TestBudgetGuard:
    def test_combinatoric_refuses_oversized_runs(self):
        a = as_matrix(np.zeros((13, 13), dtype=np.int64))
        with pytest.raises(StepBudgetExceeded):
            permanent_combinatoric(a)

    def test_budget_is_configurable(self):
        a = as_matrix(np.eye(4, dtype=np.int64))
        with pytest.raises(StepBudgetExceeded):
            permanent_combinatoric(a, step_budget=10)


class TestExecutionModes:
    def test_pure_and_compiled_agree_bitwise(self, rng):
        af = as_matrix(random_float_matrix(rng, 9, 9))
        ai = as_matrix(random_int_matrix(rng, 8, 9))
        ac = as_matrix(random_complex_matrix(rng, 8, 8))
        for alg in AlgorithmId:
            assert (run_algorithm(af, alg, compiled=False).value
                    == run_algorithm(af, alg, compiled=True).value)
            assert (run_algorithm(ai, alg, compiled=False).value
                    == run_algorithm(ai, alg, compiled=True).value)
            assert (run_algorithm(ac, alg, compiled=False).value
                    == run_algorithm(ac, alg, compiled=True).value)
