import tempfile
import unittest
from pathlib import Path

import pandas as pd

from qtensor.corpus import corpus, expected_table, export_corpus
from qtensor.corpus.export import EXPECTED_TABLE
from qtensor.tensors.text_format import read_tensor


class TestExportCorpus(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.entries = corpus()

    def test_tensor_files_reparse_to_identical_tensors(self):
        with tempfile.TemporaryDirectory() as directory:
            paths = export_corpus(Path(directory) / "out", self.entries)
            self.assertEqual(len(paths), len(self.entries) + 1)
            for entry in self.entries:
                with self.subTest(entry=entry.name):
                    self.assertEqual(read_tensor(Path(directory) / "out" / f"{entry.name}.tensor"), entry.tensor)

    def test_expected_table_sidecar(self):
        with tempfile.TemporaryDirectory() as directory:
            export_corpus(directory, self.entries)
            table = pd.read_csv(Path(directory) / EXPECTED_TABLE, sep="\t")
        self.assertEqual(list(table.columns), ["name", "class", "expected", "citation"])
        self.assertEqual(len(table), sum(len(entry.expected) for entry in self.entries))
        row = table[(table["name"] == "example-4.2") & (table["class"] == "SP0")].iloc[0]
        self.assertEqual(row["expected"], "Disputed")

    def test_expected_table_frame(self):
        frame = expected_table(self.entries[:1])
        self.assertEqual(sorted(frame["class"]), ["P0", "Q", "R0", "copositive"])


if __name__ == "__main__":
    unittest.main()
