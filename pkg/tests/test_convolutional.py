import unittest

import galois
import numpy as np

from agconv import consts as c
from agconv.ag_code import cl_code, curve_create
from agconv.convolutional import (ConvolutionalCode, DistanceRecord, PolyMatrix, SplitSpec,
                                  classify_defect, dump_poly_matrix, encode, free_distance_bounds,
                                  free_distance_exact, free_distance_truncated, generalized_singleton,
                                  poly_vector, record_exact, split_construction, tail_split,
                                  verify_rank_conditions, verify_reduced_basic, weight)
from agconv.exceptions import ConvolutionalParamsException, SplitRankException
from agconv.finite_field import field_for_order


def statuses(checks):
    return {ch.name: ch.status for ch in checks}


def rational_split(q, r, l=1):
    code = cl_code(curve_create(c.RATIONAL, q), r)
    return split_construction(tail_split(code.field, code.generator, l))


class TestPolyMatrix(unittest.TestCase):

    def setUp(self):
        self.F2 = field_for_order(2)
        self.G = PolyMatrix.from_entries(self.F2, [[[1], [0, 1]]])

    def test_shape_and_degrees(self):
        self.assertEqual((self.G.rows, self.G.cols, self.G.degree), (1, 2, 1))
        self.assertEqual(self.G.row_degrees(), [1])
        self.assertEqual(self.G.entry(0, 1), galois.Poly([1, 0], field=self.F2.GF))
        self.assertEqual([int(x) for x in self.G.leading_coefficient_matrix()[0]], [0, 1])

    def test_trailing_zero_coefficients_trimmed(self):
        M = PolyMatrix.from_entries(self.F2, [[[1, 0, 0], [1, 1, 0]]])
        self.assertEqual(M.degree, 1)

    def test_code_parameters(self):
        code = ConvolutionalCode(self.G)
        self.assertEqual(code.params(), (2, 1, 1, 1))
        with self.assertRaises(ConvolutionalParamsException):
            ConvolutionalCode(self.G, degree=2)
        with self.assertRaises(ConvolutionalParamsException):
            ConvolutionalCode(self.G, memory=0)
        zero_row = PolyMatrix.from_entries(self.F2, [[[1], [1]], [[0], [0]]])
        with self.assertRaises(ConvolutionalParamsException):
            ConvolutionalCode(zero_row)

    def test_dump(self):
        text = dump_poly_matrix(self.G)
        self.assertEqual(text, '2 2 1 1\n[1,0] [0,1]\n')


class TestSplit(unittest.TestCase):

    def test_identity_split(self):
        F = field_for_order(2)
        spec = SplitSpec(F, F.GF.Identity(2), (1, 1))
        code = split_construction(spec)
        self.assertEqual(code.params(), (2, 1, 1, 1))
        self.assertEqual(code.generator.describe(), [[[1, 0], [0, 1]]])

    def test_rational_split(self):
        code = rational_split(8, 2)
        self.assertEqual(code.params(), (8, 2, 1, 1))

    def test_rank_violation(self):
        F = field_for_order(2)
        spec = SplitSpec(F, F.GF([[0, 0], [1, 1]]), (1, 1))
        self.assertEqual(statuses(verify_rank_conditions(spec))['rank(H_0) = kappa'], c.FAIL)
        with self.assertRaises(SplitRankException) as ctx:
            split_construction(spec)
        self.assertEqual(ctx.exception.condition, 'rank(H_0)')

    def test_partition_checks(self):
        F = field_for_order(2)
        H = F.GF.Identity(3)
        with self.assertRaises(ConvolutionalParamsException):
            SplitSpec(F, H, (1, 1))
        with self.assertRaises(ConvolutionalParamsException):
            SplitSpec(F, H, (1, 2))
        with self.assertRaises(ConvolutionalParamsException):
            tail_split(F, H, 2)
        with self.assertRaises(ConvolutionalParamsException):
            tail_split(F, H, 0)

    def test_multi_memory_split(self):
        F = field_for_order(2)
        code = split_construction(SplitSpec(F, F.GF.Identity(3), (1, 1, 1)))
        self.assertEqual(code.params(), (3, 1, 2, 2))
        self.assertEqual(statuses(verify_reduced_basic(code)), {'reduced': c.PASS, 'basic': c.PASS})
        with self.assertRaises(ConvolutionalParamsException):
            free_distance_exact(code)
        upper, degree = free_distance_truncated(code)
        self.assertEqual((upper, degree), (3, 3))

    def test_uneven_partition_pads(self):
        F = field_for_order(2)
        H = F.GF([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
        code = split_construction(SplitSpec(F, H, (2, 1)))
        self.assertEqual(code.params(), (4, 2, 1, 1))
        self.assertEqual(code.generator.row_degrees(), [1, 0])


class TestReducedBasic(unittest.TestCase):

    def test_hand_examples(self):
        F = field_for_order(2)
        good = ConvolutionalCode(PolyMatrix.from_entries(F, [[[1], [0, 1]]]))
        self.assertEqual(statuses(verify_reduced_basic(good)), {'reduced': c.PASS, 'basic': c.PASS})
        bad = ConvolutionalCode(PolyMatrix.from_entries(F, [[[0, 1], [0, 1]]]))
        self.assertEqual(statuses(verify_reduced_basic(bad))['basic'], c.FAIL)
        self.assertEqual(statuses(verify_reduced_basic(bad, minor_limit=1))['basic'], c.INFEASIBLE)

    def test_minor_gcd_path(self):
        F = field_for_order(2)
        # [1+D, D^2] 没有常数右逆，但两项互素
        code = ConvolutionalCode(PolyMatrix.from_entries(F, [[[1, 1], [0, 0, 1]]]))
        checks = verify_reduced_basic(code)
        self.assertEqual(statuses(checks)['basic'], c.PASS)
        self.assertIn('minors', checks[1].detail)
        # [1+D, 1+D^2] 有公因子 1+D
        shared = ConvolutionalCode(PolyMatrix.from_entries(F, [[[1, 1], [1, 0, 1]]]))
        self.assertEqual(statuses(verify_reduced_basic(shared))['basic'], c.FAIL)

    def test_not_reduced(self):
        F = field_for_order(2)
        # 两行首项系数矩阵都是 [1, 1]
        code = ConvolutionalCode(PolyMatrix.from_entries(F, [[[0, 1], [1, 1]], [[1, 1], [0, 1]]]))
        self.assertEqual(statuses(verify_reduced_basic(code))['reduced'], c.FAIL)

    def test_family_codes(self):
        for q, r in ((4, 2), (8, 2), (8, 5)):
            code = rational_split(q, r)
            self.assertEqual(statuses(verify_reduced_basic(code)), {'reduced': c.PASS, 'basic': c.PASS})
        curve = curve_create(c.CURVE_A, 2)
        for m in range(2, 8):
            H = cl_code(curve, m).generator
            code = split_construction(tail_split(curve.field, H, 1))
            self.assertEqual(statuses(verify_reduced_basic(code)), {'reduced': c.PASS, 'basic': c.PASS})


class TestEncode(unittest.TestCase):

    def setUp(self):
        self.F2 = field_for_order(2)
        self.code = ConvolutionalCode(PolyMatrix.from_entries(self.F2, [[[1], [0, 1]]]))

    def test_hand_examples(self):
        self.assertEqual(weight(encode(self.code, self.F2.GF([[0]]))), 0)
        v = encode(self.code, self.F2.GF([[1]]))
        self.assertEqual([[int(x) for x in row] for row in v], [[1, 0], [0, 1]])
        u = poly_vector(self.F2, [galois.Poly([1, 1], field=self.F2.GF)])
        self.assertEqual(weight(encode(self.code, u)), 4)
        with self.assertRaises(ConvolutionalParamsException):
            encode(self.code, self.F2.GF([[1, 1]]))

    def test_linearity(self):
        code = rational_split(4, 2)
        F = code.field
        rng = np.random.default_rng(7)
        for _ in range(20):
            u = F.GF(rng.integers(0, 4, (3, code.k)))
            w = F.GF(rng.integers(0, 4, (3, code.k)))
            self.assertTrue(np.all(encode(code, u + w) == encode(code, u) + encode(code, w)))
            self.assertEqual(encode(code, u).shape, (3 + code.memory, code.n))


class TestFreeDistance(unittest.TestCase):

    def test_single_path(self):
        F = field_for_order(2)
        code = ConvolutionalCode(PolyMatrix.from_entries(F, [[[1], [0, 1]]]))
        result = free_distance_exact(code)
        self.assertEqual((result.status, result.distance), (c.EXACT, 2))

    def test_rational_instances(self):
        expected = {(8, 2): 7, (8, 5): 4}
        for (q, r), df in expected.items():
            code = rational_split(q, r)
            code.update_distance(free_distance_bounds(code, q - r))
            result = free_distance_exact(code)
            self.assertEqual(result.distance, df)
            record = record_exact(code.distance, result)
            self.assertEqual(code.update_distance(record), [])
            self.assertTrue(code.distance.df_lower <= df <= code.distance.df_upper)

    def test_cross_oracle(self):
        for q in (2, 4, 8):
            for r in range(2, min(5, q - 1) + 1):
                code = rational_split(q, r)
                exact = free_distance_exact(code)
                upper, degree = free_distance_truncated(code)
                self.assertGreaterEqual(degree, 0)
                self.assertEqual(exact.distance, upper, msg='q={} r={}'.format(q, r))
                self.assertEqual(exact.distance, q - r + 1)
                self.assertLessEqual(generalized_singleton(code.n, code.k, code.degree) - exact.distance, 2)

    def test_q2_curve_codes(self):
        curve = curve_create(c.CURVE_A, 2)
        for m in range(2, 8):
            H = cl_code(curve, m).generator
            code = split_construction(tail_split(curve.field, H, 1))
            result = free_distance_exact(code)
            self.assertEqual(result.status, c.EXACT)
            self.assertGreaterEqual(result.distance, 8 - m)

    def test_limits(self):
        code = rational_split(8, 5)
        result = free_distance_exact(code, max_states=4)
        self.assertEqual(result.status, c.INFEASIBLE)
        result = free_distance_exact(code, max_coset_enum=100)
        self.assertEqual(result.status, c.INFEASIBLE)
        self.assertIsNone(record_exact(code.distance, result).df_exact)
        self.assertEqual(free_distance_truncated(code, budget=10), (None, -1))
        with self.assertRaises(ConvolutionalParamsException):
            free_distance_truncated(code, budget=2 ** 63)
        with self.assertRaises(ConvolutionalParamsException):
            free_distance_exact(code, max_coset_enum=2 ** 63)

    def test_curve_a_q4_is_infeasible(self):
        curve = curve_create(c.CURVE_A, 4)
        H = cl_code(curve, 17).generator
        code = split_construction(tail_split(curve.field, H, 1))
        self.assertEqual(code.params(), (32, 15, 1, 1))
        record = free_distance_bounds(code, 15)
        self.assertEqual((record.df_lower, record.df_upper), (15, 19))
        self.assertEqual(free_distance_exact(code).status, c.INFEASIBLE)


class TestBounds(unittest.TestCase):

    def test_generalized_singleton(self):
        self.assertEqual(generalized_singleton(8, 2, 1), 8)
        self.assertEqual(generalized_singleton(10, 4, 0), 7)
        self.assertEqual(generalized_singleton(32, 15, 1), 19)
        with self.assertRaises(ConvolutionalParamsException):
            generalized_singleton(8, 0, 1)

    def test_defect(self):
        self.assertEqual(classify_defect(8, 7)['class'], 'near-MDS')
        self.assertEqual(classify_defect(8, 8)['class'], 'MDS')
        self.assertEqual(classify_defect(8, 6)['class'], 'almost-near-MDS')
        self.assertEqual(classify_defect(8, 3)['class'], 'defect-5')
        interval = classify_defect(8, 6, 8)
        self.assertEqual(interval['interval'], [0, 2])
        self.assertEqual(interval['class'], ['MDS', 'near-MDS', 'almost-near-MDS'])

    def test_bounds_without_classical_info(self):
        F = field_for_order(2)
        code = ConvolutionalCode(PolyMatrix.from_entries(F, [[[1], [0, 1]]]))
        record = free_distance_bounds(code)
        self.assertEqual(record.df_lower, 1)
        self.assertEqual(record.df_upper, generalized_singleton(2, 1, 1))

    def test_record_violations(self):
        self.assertEqual(DistanceRecord(2, 5, 3).violations(), [])
        self.assertEqual(len(DistanceRecord(4, 5, 3).violations()), 1)
        self.assertEqual(len(DistanceRecord(6, 5).violations()), 1)


if __name__ == '__main__':
    unittest.main()
