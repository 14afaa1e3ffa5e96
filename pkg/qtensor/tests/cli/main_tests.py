import io
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from qtensor.corpus.examples import example_33, example_41
from qtensor.main import format_form, main
from qtensor.schemas import MonomialForm
from qtensor.tensors.text_format import format_tensor

EXAMPLE_32_INSTANCE = """\
# Ax^2 = (x2^2, x2^2 - x1 x2)
tensor 3 2
1 2 2 1
2 2 2 1
2 1 2 -1
q -4 1
"""

ZERO_INSTANCE = """\
tensor 3 2
q -1 0
"""


class TestMain(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.root = Path(self.directory.name)

    def tearDown(self):
        self.directory.cleanup()

    def _write(self, name, text):
        path = self.root / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def _run(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = main(list(argv))
        return code, stdout.getvalue(), stderr.getvalue()

    def test_solve_reports_a_solution(self):
        code, out, _ = self._run("solve", self._write("ex32.tcp", EXAMPLE_32_INSTANCE))
        self.assertEqual(code, 0)
        self.assertIn("2.5", out)
        self.assertTrue(out.rstrip().splitlines()[-1].startswith("SOLVED"))

    def test_solve_certified_unsolvable(self):
        code, out, _ = self._run("solve", self._write("zero.tcp", ZERO_INSTANCE))
        self.assertEqual(code, 2)
        self.assertIn("NO-SOLUTION-CERTIFIED", out)

    def test_machine_output_is_reproducible(self):
        path = self._write("ex32.tcp", EXAMPLE_32_INSTANCE)
        first = self._run("solve", path, "--machine", "--seed", "11")
        second = self._run("solve", path, "--machine", "--seed", "11", "--max-workers", "1")
        self.assertEqual(first[:2], second[:2])
        self.assertTrue(first[1].startswith("status=SOLVED "))

    def test_unknown_flag_is_a_usage_error(self):
        code, _, err = self._run("solve", self._write("ex32.tcp", EXAMPLE_32_INSTANCE), "--bogus")
        self.assertEqual(code, 1)
        self.assertIn("error:", err)

    def test_invalid_budget_is_a_usage_error(self):
        code, _, err = self._run("solve", self._write("ex32.tcp", EXAMPLE_32_INSTANCE), "--samples", "0")
        self.assertEqual(code, 1)
        self.assertIn("invalid search budget", err)

    def test_missing_file(self):
        code, _, err = self._run("info", str(self.root / "absent.tensor"))
        self.assertEqual(code, 1)
        self.assertIn("cannot read", err)

    def test_undecodable_file(self):
        path = self.root / "latin.tensor"
        path.write_bytes(b"tensor 3 1\n# \xff\xfe\n1 1 1 1.0\n")
        code, _, err = self._run("info", str(path))
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error: cannot read"))

    def test_info(self):
        code, out, _ = self._run("info", self._write("ex33.tensor", format_tensor(example_33())))
        self.assertEqual(code, 0)
        self.assertIn("order 3, dimension 3, 1 nonzero entries", out)
        self.assertIn("component 1 = x2^2", out)
        self.assertIn("component 2 = 0", out)
        self.assertIn("nonnegative: yes", out)

    def test_classify(self):
        path = self._write("ex41.tensor", format_tensor(example_41()))
        code, out, _ = self._run("classify", path, "--classes", "nonnegative,Q")
        lines = out.splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].startswith("nonnegative CERTIFIED"))
        self.assertTrue(lines[1].startswith("Q CERTIFIED"))

    def test_classify_unknown_class_runs_nothing(self):
        path = self._write("ex41.tensor", format_tensor(example_41()))
        code, out, err = self._run("classify", path, "--classes", "nonnegative,Z")
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("Unsupported class: Z", err)

    def test_unknown_suite(self):
        code, _, err = self._run("harness", "theorem99")
        self.assertEqual(code, 1)
        self.assertIn("Unsupported suite", err)

    def test_corpus_export(self):
        target = self.root / "corpus"
        code, out, _ = self._run("corpus-export", str(target))
        self.assertEqual(code, 0)
        self.assertEqual(len(out.splitlines()), 10)
        self.assertTrue((target / "example-4.2.tensor").exists())


class TestFormatForm(unittest.TestCase):

    def test_terms(self):
        form = MonomialForm(component=2, degree=2, terms={(0, 2): 1.0, (1, 1): -1.0})
        self.assertEqual(format_form(form), "-x1*x2 + x2^2")

    def test_empty(self):
        self.assertEqual(format_form(MonomialForm(component=1, degree=2, terms={})), "0")

    def test_coefficient(self):
        self.assertEqual(format_form(MonomialForm(component=1, degree=3, terms={(3, 0): 2.5})), "2.5*x1^3")


if __name__ == "__main__":
    unittest.main()
