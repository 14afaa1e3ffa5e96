import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from qtensor.corpus.examples import example_31, example_33, example_41
from qtensor.exceptions import DimensionMismatchError, TensorValidationError
from qtensor.schemas import IndexSet
from qtensor.tensors import (
    apply,
    apply_scalar,
    component_depends_on,
    diagonal,
    from_array,
    from_entries,
    jacobian,
    monomial_form,
    principal_sub_tensor,
    restrict_form,
    zeros,
)
from qtensor.tensors.core import nonzero_entries
from qtensor.utils.search import embed


class TestConstruction(unittest.TestCase):

    def test_unlisted_coefficients_are_zero(self):
        A = from_entries(3, 2, [((1, 2, 2), 4.0)])
        self.assertEqual(A.coeffs[0, 1, 1], 4.0)
        self.assertEqual(np.count_nonzero(A.coeffs), 1)

    def test_duplicates_resolve_last_write_wins(self):
        with self.assertLogs("qtensor.tensors.core", level="WARNING") as logs:
            A = from_entries(2, 2, [((1, 1), 1.0), ((1, 1), 3.0)])
        self.assertEqual(A.coeffs[0, 0], 3.0)
        self.assertIn("(1, 1)", logs.output[0])

    def test_validation_errors(self):
        with self.assertRaises(TensorValidationError):
            from_entries(1, 2, [])
        with self.assertRaises(TensorValidationError):
            from_entries(2, 0, [])
        with self.assertRaises(TensorValidationError):
            from_entries(3, 2, [((1, 3, 1), 1.0)])
        with self.assertRaises(TensorValidationError):
            from_entries(3, 2, [((1, 1), 1.0)])
        with self.assertRaises(TensorValidationError):
            zeros(8, 10)

    def test_non_finite_coefficients_are_rejected(self):
        for value in (float("nan"), float("inf"), float("-inf")):
            with self.subTest(value=value):
                with self.assertRaises(TensorValidationError):
                    from_entries(3, 1, [((1, 1, 1), value)])
                with self.assertRaises(TensorValidationError):
                    from_array(np.full((1, 1, 1), value))

    def test_from_array_keeps_nonzeros(self):
        coeffs = np.zeros((2, 2, 2))
        coeffs[1, 0, 1] = -2.5
        A = from_array(coeffs)
        self.assertEqual(A.entries, (((2, 1, 2), -2.5),))
        self.assertEqual(A, from_entries(3, 2, [((2, 1, 2), -2.5)]))


class TestPolynomialMap(unittest.TestCase):

    def test_apply_matches_closed_form(self):
        # Ax^3 = (x1 x2^2, x2^3 - x1^2 x2)
        assert_array_equal(apply(example_31(), [2.0, 3.0]), [18.0, 15.0])

    def test_apply_scalar(self):
        self.assertEqual(apply_scalar(example_31(), [2.0, 3.0]), 81.0)

    def test_wrong_length_is_rejected(self):
        with self.assertRaises(DimensionMismatchError):
            apply(example_31(), [1.0, 2.0, 3.0])

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000), order=st.integers(min_value=2, max_value=4))
    def test_jacobian_matches_finite_differences(self, seed, order):
        rng = np.random.default_rng(seed)
        A = from_array(rng.standard_normal((3,) * order))
        x = rng.standard_normal(3)
        h = 1e-6
        numeric = np.column_stack([
            (apply(A, x + h * e) - apply(A, x - h * e)) / (2 * h) for e in np.eye(3)
        ])
        assert_allclose(jacobian(A, x), numeric, rtol=1e-5, atol=1e-5)

    def test_jacobian_of_a_matrix_is_the_matrix(self):
        M = np.array([[1.0, -2.0], [0.5, 3.0]])
        assert_array_equal(jacobian(from_array(M), [7.0, -1.0]), M)


class TestStructure(unittest.TestCase):

    def test_diagonal(self):
        assert_array_equal(diagonal(example_41()), [1.0, 1.0])
        assert_array_equal(diagonal(example_31()), [0.0, 1.0])

    def test_principal_sub_tensor_relabels(self):
        sub = principal_sub_tensor(example_33(3, 3), IndexSet.of(1, 2))
        self.assertEqual((sub.order, sub.dim), (3, 2))
        assert_array_equal(apply(sub, [5.0, 2.0]), [4.0, 0.0])
        sub = principal_sub_tensor(example_31(), IndexSet.of(2))
        assert_array_equal(sub.coeffs, [[[[1.0]]]])

    def test_principal_sub_tensor_rejects_bad_sets(self):
        with self.assertRaises(TensorValidationError):
            principal_sub_tensor(example_31(), IndexSet())
        with self.assertRaises(TensorValidationError):
            principal_sub_tensor(example_31(), IndexSet.of(1, 3))

    def test_monomial_form_aggregates_by_exponent(self):
        form = monomial_form(example_31(), 2)
        self.assertEqual(form.terms, {(0, 3): 1.0, (2, 1): -1.0})
        x = np.array([1.5, -0.5])
        self.assertAlmostEqual(form.evaluate(x), apply(example_31(), x)[1])

    def test_monomial_form_drops_cancelled_terms(self):
        A = from_entries(3, 2, [((1, 1, 2), 1.0), ((1, 2, 1), -1.0)])
        self.assertEqual(monomial_form(A, 1).terms, {})

    def test_monomial_form_of_example_33(self):
        A = example_33(4, 3)
        self.assertEqual(monomial_form(A, 1).terms, {(0, 3, 0): 1.0})
        self.assertEqual(monomial_form(A, 3).terms, {})

    def test_component_depends_on(self):
        self.assertTrue(component_depends_on(example_41(), 1, 1))
        self.assertFalse(component_depends_on(example_41(), 1, 2))
        with self.assertRaises(TensorValidationError):
            component_depends_on(example_41(), 1, 3)

    def test_restrict_form(self):
        restricted = restrict_form(monomial_form(example_31(), 2), [1])
        self.assertEqual(restricted.terms, {(0, 3): 1.0})


def _random_tensor(rng, order, dim):
    coeffs = rng.standard_normal((dim,) * order)
    coeffs[rng.random((dim,) * order) < 0.3] = 0.0
    return from_array(coeffs)


class TestIdentities(unittest.TestCase):

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=10_000),
        order=st.integers(min_value=2, max_value=4),
        dim=st.integers(min_value=1, max_value=3),
        scale=st.floats(min_value=0.1, max_value=10.0),
    )
    def test_homogeneity(self, seed, order, dim, scale):
        rng = np.random.default_rng(seed)
        A = _random_tensor(rng, order, dim)
        x = rng.standard_normal(dim)
        expected = scale ** (order - 1) * apply(A, x)
        atol = 1e-9 * (1.0 + np.linalg.norm(expected))
        assert_allclose(apply(A, scale * x), expected, rtol=1e-12, atol=atol)

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=10_000),
        order=st.integers(min_value=2, max_value=4),
        dim=st.integers(min_value=1, max_value=3),
    )
    def test_monomial_forms_evaluate_like_apply(self, seed, order, dim):
        rng = np.random.default_rng(seed)
        A = _random_tensor(rng, order, dim)
        x = rng.uniform(-2.0, 2.0, dim)
        values = apply(A, x)
        for i in range(1, dim + 1):
            assert_allclose(monomial_form(A, i).evaluate(x), values[i - 1], rtol=1e-12, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=10_000),
        order=st.integers(min_value=2, max_value=4),
        dim=st.integers(min_value=1, max_value=3),
        data=st.data(),
    )
    def test_principal_sub_tensor_matches_restricted_map(self, seed, order, dim, data):
        rng = np.random.default_rng(seed)
        A = _random_tensor(rng, order, dim)
        members = data.draw(st.lists(st.integers(min_value=1, max_value=dim), min_size=1, unique=True))
        J = IndexSet(members=sorted(members))
        xJ = rng.standard_normal(len(J))
        full = apply(A, embed(xJ, J.zero_based(), dim))
        assert_allclose(apply(principal_sub_tensor(A, J), xJ), full[J.zero_based()], rtol=1e-12, atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(min_value=0, max_value=10_000),
        order=st.integers(min_value=2, max_value=4),
        dim=st.integers(min_value=1, max_value=3),
    )
    def test_entries_round_trip(self, seed, order, dim):
        A = _random_tensor(np.random.default_rng(seed), order, dim)
        rebuilt = from_entries(order, dim, nonzero_entries(A))
        assert_array_equal(rebuilt.coeffs, A.coeffs)
        self.assertEqual(rebuilt, A)


if __name__ == "__main__":
    unittest.main()
