import unittest

from qtensor.exceptions import UsageError
from qtensor.harness import (
    SUITE_NAMES,
    SuiteFactory,
    run_corpus_suite,
    run_section5_suite,
    run_theorem31_suite,
    run_theorem32_suite,
    run_theorem41_suite,
)
from qtensor.schemas import CaseOutcome, SearchBudget


class TestSuiteFactory(unittest.TestCase):

    def test_every_suite_is_registered(self):
        for name in SUITE_NAMES:
            self.assertEqual(SuiteFactory.get_suite(name).name, name)

    def test_unknown_suite(self):
        with self.assertRaises(UsageError):
            SuiteFactory.get_suite("theorem99")


class TestTheorem41Suite(unittest.TestCase):

    def test_generated_trials_are_consistent(self):
        report = run_theorem41_suite(trials=8, seed=42)
        self.assertTrue(report.ok, [case for case in report.cases if case.outcome == CaseOutcome.FAIL])
        self.assertGreaterEqual(len(report.cases), 8 * 4)

    def test_positive_diagonal_only(self):
        report = run_theorem41_suite(trials=4, seed=1, zero_diagonal_count=0)
        self.assertTrue(report.ok)
        self.assertTrue(all(case.got == "CERTIFIED" for case in report.cases))

    def test_zero_diagonal_only(self):
        report = run_theorem41_suite(trials=4, m_range=(3,), n_range=(3,), seed=5, zero_diagonal_count=2)
        self.assertTrue(report.ok)
        self.assertTrue(all(case.got == "FALSIFIED" for case in report.cases))
        self.assertTrue(all(case.witness_summary for case in report.cases))

    def test_seed_reproduces_the_cases(self):
        first = run_theorem41_suite(trials=4, seed=7)
        second = run_theorem41_suite(trials=4, seed=7)
        self.assertEqual(first.cases, second.cases)


class TestCorpusSuites(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.budget = SearchBudget(samples=100)

    def test_corpus_suite(self):
        report = run_corpus_suite(self.budget)
        self.assertTrue(report.ok, [case for case in report.cases if case.outcome == CaseOutcome.FAIL])
        self.assertEqual(report.disputed, 1)
        self.assertEqual(len({case.tensor_id for case in report.cases}), 9)

    def test_section5_suite(self):
        report = run_section5_suite(self.budget)
        self.assertTrue(report.ok, [case for case in report.cases if case.outcome == CaseOutcome.FAIL])
        self.assertEqual(len(report.cases), 3 + 3 + 2)

    def test_theorem31_suite(self):
        report = run_theorem31_suite(seed=0, budget=self.budget)
        self.assertTrue(report.ok, [case for case in report.cases if case.outcome == CaseOutcome.FAIL])
        ids = {case.case_id for case in report.cases}
        self.assertIn("theorem31-example-3.3-joint", ids)
        self.assertIn("theorem31-example-3.1-divergence", ids)

    def test_theorem32_suite(self):
        report = run_theorem32_suite(self.budget)
        self.assertTrue(report.ok)
        # example-3.3 has 7 principal sub-tensors, examples 3.4 and 4.1 have 3 each
        self.assertEqual(len(report.cases), 7 + 3 + 3)


if __name__ == "__main__":
    unittest.main()
