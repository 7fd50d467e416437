"""Sample wire formats and the JSON/CSV writers shared by every report.

Samples serialize as ``{"w1": [a, b, c], "w2": [d, e, f]}`` or as a CSV row
``w11,w12,w13,w21,w22,w23``.  Floats are always written with 17 significant
digits so values read back are bit-identical.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import HingeError, SampleFormatError
from .model import Sample, SampleSet

SCHEMA = "hinge-landscape/1"
CSV_HEADER = ("w11", "w12", "w13", "w21", "w22", "w23")


def fmt(x: float) -> str:
    """17-significant-digit decimal that still reads as a float (``2.0``, not ``2``)."""
    text = format(float(x), ".17g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


# -- JSON ----------------------------------------------------------------------


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if hasattr(obj, "tolist"):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, bool)) or v is None for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    # numpy scalars
    if hasattr(obj, "item"):
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def dumps(obj: Any, indent: int = 2) -> str:
    """``json.dumps`` replacement emitting floats with 17 significant digits."""
    return _encode(obj, indent, 0)


def with_schema(payload: dict) -> dict:
    return {"schema": SCHEMA, **payload}


# -- samples -------------------------------------------------------------------


def sample_to_dict(sample: Sample) -> dict:
    return {"w1": list(sample.w1), "w2": list(sample.w2)}


def _vector(obj: dict, key: str, where: str) -> list[float]:
    if key not in obj:
        raise SampleFormatError(f"{where}: missing field '{key}'")
    value = obj[key]
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SampleFormatError(f"{where}: field '{key}' must be a list of three numbers")
    out = []
    for k, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise SampleFormatError(f"{where}: field '{key}[{k}]' is not a number: {x!r}")
        out.append(float(x))
    return out


def sample_from_dict(obj: Any, where: str = "sample") -> Sample:
    if not isinstance(obj, dict):
        raise SampleFormatError(f"{where}: expected an object with fields 'w1' and 'w2'")
    w1 = _vector(obj, "w1", where)
    w2 = _vector(obj, "w2", where)
    try:
        return Sample.from_vectors(w1, w2)
    except HingeError as exc:
        raise SampleFormatError(f"{where}: {exc}") from None


def sample_to_csv_row(sample: Sample) -> list[str]:
    return [fmt(x) for x in sample.as_tuple()]


def sample_from_csv_row(row: Sequence[str], where: str = "row") -> Sample:
    if len(row) != 6:
        raise SampleFormatError(f"{where}: expected 6 columns {','.join(CSV_HEADER)}, got {len(row)}")
    values = []
    for name, cell in zip(CSV_HEADER, row):
        try:
            values.append(float(cell))
        except ValueError:
            raise SampleFormatError(f"{where}: field '{name}' is not a number: {cell!r}") from None
    try:
        return Sample(*values)
    except HingeError as exc:
        raise SampleFormatError(f"{where}: {exc}") from None


def samples_to_csv(samples: Iterable[Sample], header: bool = True) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for sample in samples:
        writer.writerow(sample_to_csv_row(sample))
    return buf.getvalue()


def samples_from_csv(text: str) -> SampleSet:
    rows = [r for r in csv.reader(_io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
    if rows and [c.strip() for c in rows[0]] == list(CSV_HEADER):
        rows = rows[1:]
    if not rows:
        raise SampleFormatError("no sample rows found")
    return SampleSet(sample_from_csv_row(r, where=f"row {k + 1}") for k, r in enumerate(rows))


def samples_to_json(samples: Iterable[Sample]) -> str:
    return dumps(with_schema({"samples": [sample_to_dict(s) for s in samples]}))


def samples_from_json(text: str) -> SampleSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SampleFormatError(f"invalid JSON: {exc}") from None
    if isinstance(obj, dict) and "samples" in obj:
        obj = obj["samples"]
    if isinstance(obj, dict):
        return SampleSet([sample_from_dict(obj)])
    if not isinstance(obj, list) or not obj:
        raise SampleFormatError("expected a sample object, a list of samples or {'samples': [...]}")
    return SampleSet(sample_from_dict(o, where=f"samples[{k}]") for k, o in enumerate(obj))


def read_samples(path: str | Path) -> SampleSet:
    """Load a SampleSet from a ``.json`` or ``.csv`` file (sniffed by content)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith(("{", "[")):
        return samples_from_json(text)
    return samples_from_csv(text)


def write_csv(path_or_buf, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write rows, formatting floats with :func:`fmt`."""

    def cell(x):
        if isinstance(x, bool):
            return str(x).lower()
        if isinstance(x, float) or hasattr(x, "dtype"):
            return fmt(x)
        return str(x)

    own = isinstance(path_or_buf, (str, Path))
    handle = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell(x) for x in row])
    finally:
        if own:
            handle.close()


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = _io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()
