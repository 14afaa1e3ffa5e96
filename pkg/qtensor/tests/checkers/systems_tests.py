import unittest

import numpy as np

from qtensor.checkers import check_ER, check_R, check_R0, replay_witness
from qtensor.corpus import random_nonnegative
from qtensor.corpus.examples import example_31, example_32, example_41
from qtensor.schemas import SearchBudget, VerdictStatus, Witness, WitnessKind
from qtensor.tensors import diagonal, from_entries


class TestSystemChecks(unittest.TestCase):

    def setUp(self):
        self.budget = SearchBudget()

    def test_certified_for_nonnegative_positive_diagonal(self):
        for check in (check_R0, check_R, check_ER):
            with self.subTest(check=check.__name__):
                verdict = check(example_41(), self.budget)
                self.assertEqual(verdict.status, VerdictStatus.CERTIFIED_HOLDS)

    def test_vertex_solves_tcp_with_zero_q(self):
        for A in (example_31(), example_32()):
            verdict = check_R0(A, self.budget)
            self.assertTrue(verdict.falsified)
            self.assertEqual(verdict.witness.x, (1.0, 0.0))
            self.assertGreater(replay_witness("R0", A, verdict.witness, self.budget), self.budget.falsify_tol)

    def test_r_and_er_share_the_vertex(self):
        for check, name in ((check_R, "R"), (check_ER, "ER")):
            with self.subTest(name=name):
                verdict = check(example_31(), self.budget)
                self.assertTrue(verdict.falsified)
                self.assertEqual(verdict.witness.kind, WitnessKind.POINT_SCALAR)
                self.assertEqual(verdict.witness.t, 0.0)
                self.assertGreater(replay_witness(name, example_31(), verdict.witness, self.budget), 0.0)

    def test_r_violation_with_positive_t(self):
        # Ax = -x: x = e1 with t = 1 solves (Ax)_1 + t = 0, and (Ax)_2 + t = 1 >= 0
        A = from_entries(2, 2, [((1, 1), -1.0), ((2, 2), -1.0)])
        verdict = check_R(A, self.budget)
        self.assertTrue(verdict.falsified)
        self.assertGreater(verdict.witness.t, 0.0)
        self.assertGreater(replay_witness("R", A, verdict.witness, self.budget), self.budget.falsify_tol)

    def test_hints_come_first(self):
        A = random_nonnegative(3, 3, 1, seed=4)
        j = int(np.nonzero(diagonal(A) == 0)[0][0])
        verdict = check_R0(A, self.budget, hints=[np.eye(3)[j]])
        self.assertTrue(verdict.falsified)
        self.assertEqual(verdict.effort.note, "hint")
        self.assertEqual(verdict.witness.x[j], 1.0)

    def test_interior_violation_from_least_squares(self):
        # Ax^2 = (x1^2 - x2^2, x2^2 - x1^2) vanishes at (1, 1) and at no vertex
        A = from_entries(
            3, 2, [((1, 1, 1), 1.0), ((1, 2, 2), -1.0), ((2, 2, 2), 1.0), ((2, 1, 1), -1.0)]
        )
        verdict = check_R0(A, self.budget)
        self.assertTrue(verdict.falsified)
        np.testing.assert_allclose(verdict.witness.x, (0.5, 0.5), atol=1e-6)

    def test_replay_rejects_non_solutions(self):
        witness = Witness(kind=WitnessKind.POINT, x=(0.0, 1.0), violation=1.0)
        self.assertEqual(replay_witness("R0", example_31(), witness, self.budget), 0.0)
        scalar = Witness(kind=WitnessKind.POINT_SCALAR, x=(1.0, 0.0), t=2.0, violation=1.0)
        self.assertEqual(replay_witness("R0", example_31(), scalar, self.budget), 0.0)

    def test_verdicts_are_reproducible(self):
        A = from_entries(2, 2, [((1, 1), -1.0), ((2, 2), -1.0)])
        self.assertEqual(check_ER(A, self.budget).record(), check_ER(A, self.budget).record())


if __name__ == "__main__":
    unittest.main()
