"""Per-cell report records and their JSON, CSV and markdown renderings."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .hasse import CHSS, HasseElement, reduced_word
from .rigidity import verdict
from .schubert import classify, dual_descriptor
from .schur import SchurResult, triviality_filter
from .tables import fmt_set, fmt_word

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "md")


@dataclass
class Record:
    delta_w: str  # hex bitset over the g_1 roots in the documented order
    word: str
    a: int
    J: List[int]
    dim: int
    proper: bool
    smooth: bool
    dual: Optional[Dict[str, Any]]  # {"a": a*, "J": J*} for proper cells
    h1: Optional[bool]
    h2: Optional[bool]
    h_plus: Optional[bool]
    schur: str  # "equal", "not_equal", "indeterminate", "filtered" or "not_computed"
    triviality: bool
    witnesses: Dict[str, List[List[List[int]]]] = field(default_factory=dict)

    def sort_key(self):
        return (self.dim, self.J, self.a, int(self.delta_w, 16))


@dataclass
class Report:
    schema_version: int
    chss: str
    generated_at: str
    records: List[Record]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {data.get('schema_version')!r}")
        recs = [Record(**r) for r in data["records"]]
        return cls(data["schema_version"], data["chss"], data["generated_at"], recs)


def timestamp() -> str:
    """UTC time, pinned by SOURCE_DATE_EPOCH when set so that output is reproducible."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = (_dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc) if epoch
         else _dt.datetime.now(_dt.timezone.utc))
    return t.replace(microsecond=0).isoformat()


def _roots(pairs) -> List[List[List[int]]]:
    return [[list(u), list(v)] for u, v in pairs]


def make_record(x: CHSS, w: HasseElement, schur: Optional[SchurResult] = None) -> Record:
    d = classify(x, w)
    trivial = triviality_filter(x, w)
    rec = Record(
        delta_w=w.hex(), word=fmt_word(reduced_word(x, w), x.rank), a=d.a, J=list(d.J), dim=d.dim,
        proper=d.proper, smooth=d.smooth, dual=None, h1=None, h2=None, h_plus=None,
        schur="not_computed", triviality=trivial,
    )
    if d.proper:
        ds = dual_descriptor(x, d)
        v = verdict(x, w, d)
        rec.dual = {"a": ds.a, "J": list(ds.J)}
        rec.h1, rec.h2, rec.h_plus = v.h1, v.h2, v.h_plus
        rec.witnesses = {"h1": _roots(v.h1_witnesses), "h2": _roots(v.h2_witnesses)}
    if trivial and d.proper:
        rec.schur = "filtered"
    elif schur is not None:
        rec.schur = schur.status
        rec.witnesses["schur"] = [[list(p.gamma), list(p.beta)] for p in schur.witnesses]
    return rec


def make_report(x: CHSS, records: Sequence[Record]) -> Report:
    return Report(SCHEMA_VERSION, x.label, timestamp(), sorted(records, key=Record.sort_key))


# ---------------------------------------------------------------------------
# Rendering

COLUMNS = ("delta_w", "word", "a", "J", "dim", "smooth", "dual", "h1", "h2", "h_plus", "schur", "triviality")


def _cell(rec: Record, col: str) -> str:
    v = getattr(rec, col)
    if col == "J":
        return fmt_set(v)
    if col == "dual":
        return "" if v is None else f"({v['a']},{fmt_set(v['J'])})"
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_rows(columns: Sequence[str], rows: Sequence[Sequence[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(columns)
        wr.writerows(rows)
        return buf.getvalue()
    if fmt == "md":
        out = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        out += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    rows = [[_cell(r, c) for c in COLUMNS] for r in report.records]
    return render_rows(COLUMNS, rows, fmt)


def parse_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))
