"""CSV / JSON serialization of verdicts and flat records.

Output is byte-stable: fixed column order, floats with 17 significant
digits, LF line endings.  Non-finite floats are written as ``nan``,
``inf`` and ``-inf`` in CSV and as the strings "NaN", "Infinity",
"-Infinity" in JSON, which keeps the JSON strictly standard.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from .theorems import TheoremVerdict

__all__ = [
    "verdict_columns",
    "format_float",
    "parse_float",
    "format_records",
    "parse_records",
    "format_verdicts",
    "parse_verdicts",
]

_BASE = ("a_abs", "b", "c", "lambda", "alpha")
_JANOWSKI = ("A", "B", "tau_abs")
_TAIL = ("cond_stated", "cond_derived", "criterion_brute", "deficit", "tail_bound", "skip_reason")

_JSON_NONFINITE = {"NaN": math.nan, "Infinity": math.inf, "-Infinity": -math.inf}


def verdict_columns(which: int) -> tuple[str, ...]:
    return _BASE + (_JANOWSKI if which in (3, 4) else ()) + _TAIL


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def parse_float(text) -> float:
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    if text in _JSON_NONFINITE:
        return _JSON_NONFINITE[text]
    return float(text)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return '"NaN"'
        if math.isinf(v):
            return '"Infinity"' if v > 0 else '"-Infinity"'
        return format(v, ".17g")
    return json.dumps(str(v))


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def format_records(records: Sequence[dict], columns: Sequence[str], fmt: str) -> str:
    """Serialize flat records with a fixed column order."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_csv_value(rec.get(col)) for col in columns])
        return buf.getvalue()
    if fmt == "json":
        rows = [
            "  {" + ", ".join(f"{json.dumps(col)}: {_json_value(rec.get(col))}" for col in columns) + "}"
            for rec in records
        ]
        return "[\n" + ",\n".join(rows) + ("\n" if rows else "") + "]\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_records(text: str, fmt: str) -> list[dict]:
    """Inverse of :func:`format_records`; values come back as raw strings
    (CSV) or JSON scalars."""
    if fmt == "csv":
        return list(csv.DictReader(io.StringIO(text)))
    if fmt == "json":
        return json.loads(text)
    raise ValueError(f"unknown format {fmt!r}")


def _verdict_record(v: TheoremVerdict) -> dict:
    rec = {k: float(x) for k, x in v.params.items()}
    rec.update(
        cond_stated=v.condition_as_stated,
        cond_derived=v.condition_derived,
        criterion_brute=v.criterion_brute,
        deficit=float(v.deficit),
        tail_bound=float(v.tail_bound),
        skip_reason=v.skip_reason,
    )
    return rec


def format_verdicts(verdicts: Iterable[TheoremVerdict], which: int, fmt: str) -> str:
    return format_records([_verdict_record(v) for v in verdicts], verdict_columns(which), fmt)


def _parse_bool(v) -> bool | None:
    if v is None or v == "":
        return None
    if isinstance(v, bool):
        return v
    if v in ("true", "false"):
        return v == "true"
    raise ValueError(f"not a boolean: {v!r}")


def parse_verdicts(text: str, which: int, fmt: str) -> list[TheoremVerdict]:
    out = []
    param_cols = _BASE + (_JANOWSKI if which in (3, 4) else ())
    for rec in parse_records(text, fmt):
        out.append(
            TheoremVerdict(
                which=which,
                params={k: parse_float(rec[k]) for k in param_cols},
                condition_as_stated=_parse_bool(rec["cond_stated"]),
                condition_derived=_parse_bool(rec["cond_derived"]),
                criterion_brute=_parse_bool(rec["criterion_brute"]),
                deficit=parse_float(rec["deficit"]),
                tail_bound=parse_float(rec["tail_bound"]),
                skip_reason=rec["skip_reason"] or "",
            )
        )
    return out
