import unittest

from qtensor.checkers import replay_witness
from qtensor.corpus import corpus, get_entry
from qtensor.engine import residual
from qtensor.exceptions import PreconditionError
from qtensor.schemas import ExpectedStatus, SearchBudget, TCPInstance
from qtensor.tensors import monomial_form

NAMES = [
    "example-3.1",
    "example-3.2",
    "example-3.3",
    "example-3.4",
    "example-3.5",
    "example-3.6",
    "example-4.1",
    "example-4.2",
    "example-5.1",
]


class TestCorpus(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.budget = SearchBudget()
        cls.entries = {entry.name: entry for entry in corpus(budget=cls.budget)}

    def test_entries(self):
        self.assertEqual(list(self.entries), NAMES)

    def test_known_solutions_pass_the_residual_tolerance(self):
        for entry in self.entries.values():
            for known in entry.known_solutions:
                with self.subTest(entry=entry.name, citation=known.citation):
                    report = residual(TCPInstance(tensor=entry.tensor, q=known.q), known.x)
                    self.assertLessEqual(report.value, 1e-8)

    def test_stored_witnesses_replay(self):
        for entry in self.entries.values():
            for class_name, witness in entry.witnesses.items():
                with self.subTest(entry=entry.name, class_name=class_name):
                    value = replay_witness(class_name, entry.tensor, witness, self.budget)
                    self.assertGreater(value, self.budget.falsify_tol)
                    self.assertAlmostEqual(value, witness.violation)

    def test_every_fails_expectation_has_a_witness(self):
        for entry in self.entries.values():
            for class_name, expectation in entry.expected.items():
                if expectation.status == ExpectedStatus.FAILS:
                    self.assertIn(class_name, entry.witnesses, entry.name)

    def test_exactly_one_disputed_expectation(self):
        disputed = [
            (entry.name, class_name)
            for entry in self.entries.values()
            for class_name, expectation in entry.expected.items()
            if expectation.status == ExpectedStatus.DISPUTED
        ]
        self.assertEqual(disputed, [("example-4.2", "SP0")])

    def test_example_31_closed_form_solution(self):
        known = self.entries["example-3.1"].known_solutions[2]
        self.assertEqual(known.q, (-1.0, -1.0))
        self.assertAlmostEqual(known.x[1] ** 3, (1 + 5 ** 0.5) / 2)

    def test_example_33_components(self):
        A = self.entries["example-3.3"].tensor
        self.assertEqual(monomial_form(A, 1).terms, {(0, 2, 0): 1.0})
        self.assertEqual(monomial_form(A, 2).terms, {})

    def test_example_41_notes_recomputed_product(self):
        self.assertIn("-25", self.entries["example-4.1"].notes)


class TestGetEntry(unittest.TestCase):

    def test_example51_order(self):
        self.assertEqual(get_entry("example-5.1", example51_order=5).tensor.order, 5)

    def test_unknown_entry(self):
        with self.assertRaises(PreconditionError):
            get_entry("example-9.9")


if __name__ == "__main__":
    unittest.main()
