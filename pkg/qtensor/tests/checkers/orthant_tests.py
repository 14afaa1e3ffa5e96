import unittest

import numpy as np

from qtensor.checkers import check_copositive, check_semipositive, replay_witness
from qtensor.corpus.examples import example_31, example_32, example_35, example_41, example_42
from qtensor.corpus.generators import example51_family
from qtensor.schemas import SearchBudget, VerdictStatus
from qtensor.tensors import apply, apply_scalar, from_entries


class TestSemipositive(unittest.TestCase):

    def setUp(self):
        self.budget = SearchBudget(samples=100)

    def test_nonnegative_is_certified(self):
        verdict = check_semipositive(example_41(), self.budget)
        self.assertEqual(verdict.status, VerdictStatus.CERTIFIED_HOLDS)

    def test_unfalsified_examples(self):
        for A in (example_32(), example_35(), example51_family(3)):
            with self.subTest(order=A.order):
                self.assertEqual(check_semipositive(A, self.budget).status, VerdictStatus.UNFALSIFIED)

    def test_negative_vertex(self):
        A = from_entries(2, 1, [((1, 1), -1.0)])
        verdict = check_semipositive(A, self.budget)
        self.assertTrue(verdict.falsified)
        self.assertEqual(verdict.witness.x, (1.0,))
        self.assertEqual(verdict.witness.violation, 1.0)

    def test_interior_violation(self):
        # Ax^2 = (x2^2 - 2 x1 x2, x1^2 - 2 x1 x2): both negative near the diagonal
        A = from_entries(
            3, 2, [((1, 2, 2), 1.0), ((1, 1, 2), -2.0), ((2, 1, 1), 1.0), ((2, 1, 2), -2.0)]
        )
        verdict = check_semipositive(A, self.budget)
        self.assertTrue(verdict.falsified)
        x = np.array(verdict.witness.x)
        self.assertTrue(np.all(apply(A, x) < 0))
        self.assertGreater(replay_witness("semipositive", A, verdict.witness, self.budget), self.budget.falsify_tol)


class TestCopositive(unittest.TestCase):

    def setUp(self):
        self.budget = SearchBudget()

    def test_nonnegative_is_certified(self):
        self.assertEqual(check_copositive(example_41(), self.budget).status, VerdictStatus.CERTIFIED_HOLDS)

    def test_examples_with_nonnegative_form(self):
        # x^T Ax^3 = x2^4 and x^T Ax^2 = x2^3
        for A in (example_31(), example_32()):
            self.assertEqual(check_copositive(A, self.budget).status, VerdictStatus.UNFALSIFIED)

    def test_negative_form_is_found(self):
        # x^T Ax^3 = x2^2 (x2^2 - x1^2)
        verdict = check_copositive(example_42(), self.budget)
        self.assertTrue(verdict.falsified)
        self.assertLess(apply_scalar(example_42(), verdict.witness.x), 0.0)
        self.assertAlmostEqual(sum(verdict.witness.x), 1.0)
        self.assertGreater(replay_witness("copositive", example_42(), verdict.witness, self.budget), 0.0)

    def test_negative_vertex_comes_first(self):
        A = from_entries(3, 2, [((2, 2, 2), -1.0)])
        verdict = check_copositive(A, self.budget)
        self.assertEqual(verdict.witness.x, (0.0, 1.0))
        self.assertEqual(verdict.effort.samples, 2)


if __name__ == "__main__":
    unittest.main()
