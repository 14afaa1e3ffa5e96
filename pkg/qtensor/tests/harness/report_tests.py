import tempfile
import unittest
from pathlib import Path

import pandas as pd

from qtensor.harness import render_records, render_text, save_report_csv
from qtensor.harness.report import CSV_COLUMNS, build_report, make_case
from qtensor.schemas import CaseOutcome, VerdictStatus, Verdict, Witness, WitnessKind


class TestReport(unittest.TestCase):

    def setUp(self):
        witness = Witness(kind=WitnessKind.POINT, x=(1.0, 0.0), violation=1.0)
        verdict = Verdict(class_name="R0", status=VerdictStatus.FALSIFIED, witness=witness)
        self.cases = [
            make_case("b-case", "example-3.1", "R0", "FALSIFIED", "FALSIFIED", True, 0, verdict),
            make_case("a-case", "example-4.2", "SP0", "Disputed", "UNFALSIFIED", True, 0, disputed=True),
        ]
        self.report = build_report("demo", self.cases, seed=3, wall_time=0.25)

    def test_cases_sorted_and_counted(self):
        self.assertEqual([case.case_id for case in self.report.cases], ["a-case", "b-case"])
        self.assertEqual((self.report.passed, self.report.failed, self.report.disputed), (1, 0, 1))
        self.assertTrue(self.report.ok)

    def test_witness_summary_taken_from_verdict(self):
        self.assertIn("x=(1, 0)", self.cases[0].witness_summary)

    def test_failures_are_logged_with_seed(self):
        with self.assertLogs("qtensor.harness.report", level="WARNING") as logs:
            case = make_case("c", "t", "Q", "CERTIFIED", "FALSIFIED", False, 42)
        self.assertEqual(case.outcome, CaseOutcome.FAIL)
        self.assertIn("seed 42", logs.output[0])

    def test_render_text(self):
        text = render_text(self.report)
        self.assertTrue(text.startswith("suite demo (seed 3)"))
        self.assertIn("2 cases: 1 passed, 0 failed, 1 disputed", text)

    def test_render_records_one_line_per_case_without_timing(self):
        lines = render_records(self.report).splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(all(line.startswith("suite=demo ") for line in lines))
        self.assertIn("outcome=disputed", lines[0])
        self.assertNotIn("wall", "".join(lines))
        self.assertEqual(lines[-1], "suite=demo cases=2 passed=1 failed=0 disputed=1 seed=3")

    def test_save_csv(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "report.csv"
            save_report_csv(self.report, path)
            frame = pd.read_csv(path)
        self.assertEqual(list(frame.columns), CSV_COLUMNS)
        self.assertEqual(list(frame["outcome"]), ["disputed", "pass"])


if __name__ == "__main__":
    unittest.main()
