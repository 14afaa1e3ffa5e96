# qtensor/tensors/text_format.py
"""
Plain-text tensor and TCP instance files.

    # comment lines start with '#'
    tensor <m> <n>
    <i1> <i2> ... <im> <value>      (1-based indices)
    q <v1> ... <vn>                 (instance files only, after the entries)
"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

from ..exceptions import InputParseError, TCPError
from ..schemas import TCPInstance, Tensor
from .core import from_entries, nonzero_entries

logger = logging.getLogger(__name__)


def _lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((number, stripped.split()))
    return lines


def _parse(text: str, want_q: bool) -> Tuple[Tensor, Optional[tuple]]:
    lines = _lines(text)
    if not lines:
        raise InputParseError("empty input, expected a 'tensor <m> <n>' header")

    number, header = lines[0]
    if len(header) != 3 or header[0] != "tensor":
        raise InputParseError(f"expected 'tensor <m> <n>', got {' '.join(header)!r}", line=number)
    try:
        order, dim = int(header[1]), int(header[2])
    except ValueError:
        raise InputParseError("order and dimension must be integers", line=number)

    entries = []
    q = None
    for number, tokens in lines[1:]:
        if tokens[0] == "q":
            if not want_q:
                raise InputParseError("unexpected 'q' line in a tensor file", line=number)
            if q is not None:
                raise InputParseError("duplicate 'q' line", line=number)
            if len(tokens) != dim + 1:
                raise InputParseError(
                    f"'q' line needs {dim} values, got {len(tokens) - 1}", line=number
                )
            try:
                q = tuple(float(v) for v in tokens[1:])
            except ValueError:
                raise InputParseError("non-numeric value in 'q' line", line=number)
            if not all(math.isfinite(v) for v in q):
                raise InputParseError("non-finite value in 'q' line", line=number)
            continue
        if q is not None:
            raise InputParseError("entry after the 'q' line", line=number)
        if len(tokens) != order + 1:
            raise InputParseError(
                f"entry needs {order} indices and a value, got {len(tokens)} fields",
                line=number,
            )
        try:
            index = tuple(int(t) for t in tokens[:order])
            value = float(tokens[order])
        except ValueError:
            raise InputParseError(f"malformed entry {' '.join(tokens)!r}", line=number)
        if not math.isfinite(value):
            raise InputParseError(f"non-finite value {tokens[order]!r}", line=number)
        if not all(1 <= i <= dim for i in index):
            raise InputParseError(f"index {index} out of range [1, {dim}]", line=number)
        entries.append((index, value))

    if want_q and q is None:
        raise InputParseError("instance file has no 'q' line")

    try:
        tensor = from_entries(order, dim, entries)
    except TCPError as e:
        raise InputParseError(e.detail, line=lines[0][0])
    return tensor, q


def parse_tensor_text(text: str) -> Tensor:
    tensor, _ = _parse(text, want_q=False)
    return tensor


def parse_instance_text(text: str) -> TCPInstance:
    tensor, q = _parse(text, want_q=True)
    return TCPInstance(tensor=tensor, q=q)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputParseError(f"cannot read {path}: {e.strerror}")
    except UnicodeDecodeError as e:
        raise InputParseError(f"cannot read {path}: not UTF-8 text ({e.reason} at byte {e.start})")


def read_tensor(path) -> Tensor:
    logger.info(f"Reading tensor file {path}")
    return parse_tensor_text(_read(path))


def read_instance(path) -> TCPInstance:
    logger.info(f"Reading instance file {path}")
    return parse_instance_text(_read(path))


def format_tensor(A: Tensor, comment: str = "") -> str:
    """Every nonzero coefficient, values written with round-trip exact repr."""
    lines = [f"# {line}" for line in comment.splitlines()]
    lines.append(f"tensor {A.order} {A.dim}")
    for index, value in nonzero_entries(A):
        lines.append(" ".join(str(i) for i in index) + f" {value!r}")
    return "\n".join(lines) + "\n"


def format_instance(instance: TCPInstance, comment: str = "") -> str:
    q = " ".join(repr(float(v)) for v in instance.q)
    return format_tensor(instance.tensor, comment) + f"q {q}\n"
