# qtensor/corpus/export.py
import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd

from ..schemas import CorpusEntry
from ..tensors.text_format import format_tensor
from .examples import corpus

logger = logging.getLogger(__name__)

EXPECTED_TABLE = "expected.tsv"


def expected_table(entries: List[CorpusEntry]) -> pd.DataFrame:
    rows = [
        {
            "name": entry.name,
            "class": class_name,
            "expected": expectation.status.value,
            "citation": expectation.citation,
        }
        for entry in entries
        for class_name, expectation in entry.expected.items()
    ]
    return pd.DataFrame(rows, columns=["name", "class", "expected", "citation"])


def export_corpus(directory, entries: Optional[List[CorpusEntry]] = None) -> List[Path]:
    """
    Write one `<name>.tensor` file per entry plus the tab-separated
    expected-verdict table. Returns the written paths.
    """
    entries = entries if entries is not None else corpus()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    written = []
    for entry in entries:
        path = directory / f"{entry.name}.tensor"
        path.write_text(format_tensor(entry.tensor, comment=f"{entry.name}\n{entry.notes}"), encoding="utf-8")
        written.append(path)

    table_path = directory / EXPECTED_TABLE
    expected_table(entries).to_csv(table_path, sep="\t", index=False, encoding="utf-8")
    written.append(table_path)
    logger.info(f"Exported {len(entries)} corpus tensors to {directory}")
    return written
