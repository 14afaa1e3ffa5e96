import unittest

from qtensor.checkers import check_P0, check_P0prime, replay_witness
from qtensor.checkers.sign_patterns import sign_patterns
from qtensor.corpus.examples import example_31, example_33, example_34, example_35, example_36
from qtensor.schemas import SearchBudget, VerdictStatus


class TestSignPatterns(unittest.TestCase):

    def test_all_nonzero_patterns_fewest_first(self):
        patterns = sign_patterns(3)
        self.assertEqual(len(patterns), 26)
        self.assertEqual(len(set(patterns)), 26)
        counts = [sum(1 for s in p if s) for p in patterns]
        self.assertEqual(counts, sorted(counts))


class TestP0(unittest.TestCase):

    def setUp(self):
        self.budget = SearchBudget(samples=100)

    def test_p0_examples_unfalsified(self):
        for A in (example_31(), example_33(), example_34(), example_35()):
            with self.subTest(order=A.order, dim=A.dim):
                self.assertEqual(check_P0(A, self.budget).status, VerdictStatus.UNFALSIFIED)

    def test_example_36_violates_p0(self):
        # x1 x2^2 < 0 and -x2 x1^2 < 0 whenever x1 < 0 < x2
        verdict = check_P0(example_36(), self.budget)
        self.assertTrue(verdict.falsified)
        x1, x2 = verdict.witness.x
        self.assertLess(x1, 0.0)
        self.assertGreater(x2, 0.0)
        self.assertGreater(replay_witness("P0", example_36(), verdict.witness, self.budget), self.budget.falsify_tol)


class TestP0prime(unittest.TestCase):

    def setUp(self):
        self.budget = SearchBudget(samples=100)

    def test_example_35_violates_p0prime(self):
        # x1^3 x2 < 0 and -x1^2 x2^2 < 0 whenever x1 > 0 > x2
        verdict = check_P0prime(example_35(), self.budget)
        self.assertTrue(verdict.falsified)
        x1, x2 = verdict.witness.x
        self.assertGreater(x1, 0.0)
        self.assertLess(x2, 0.0)
        self.assertGreater(
            replay_witness("P0prime", example_35(), verdict.witness, self.budget), self.budget.falsify_tol
        )

    def test_example_36_is_unfalsified(self):
        self.assertEqual(check_P0prime(example_36(), self.budget).status, VerdictStatus.UNFALSIFIED)

    def test_even_order_follows_p0(self):
        p0 = check_P0(example_31(), self.budget)
        prime = check_P0prime(example_31(), self.budget)
        self.assertEqual(prime.class_name, "P0prime")
        self.assertEqual(prime.status, p0.status)
        self.assertIn("even order", prime.effort.note)


if __name__ == "__main__":
    unittest.main()
