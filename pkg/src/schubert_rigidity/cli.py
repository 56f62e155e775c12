"""Command-line front end.

Exit codes: 0 success or match, 1 verified mismatch or internal assertion, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .cache import Cache, cache_key, default_dir
from .hasse import CHSS, HasseElement, delta_from_word, enumerate_hasse, get_chss
from .partitions import (
    Partition,
    aJ_from_partition,
    cell_of_partition,
    conjugate,
    dual as dual_partition,
    partition_from_aJ,
    suit,
)
from .report import FORMATS, Record, Report, make_record, make_report, parse_json, render, render_rows
from .roots import LieType
from .schubert import classify, is_realizable, schubert_from_aJ
from .schur import DEFAULT_SPAN_BOUND, MIN_SPAN_BOUND, SchurResult, schur_equal, triviality_filter
from .tables import TABLE_IDS, fmt_set, parse_word, regenerate


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing helpers


def _chss(type_text: str, node: str) -> CHSS:
    try:
        return get_chss(LieType.parse(type_text), int(node))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_aJ(text: str) -> Tuple[int, Tuple[int, ...]]:
    """"1;{1,3,7,10}" or "1;1,3,7,10"."""
    m = re.fullmatch(r"\s*(\d+)\s*;\s*\{?\s*([\d,\s]*)\}?\s*", text)
    if not m:
        raise UsageError(f"cannot parse (a, J) from {text!r}; expected e.g. \"1;{{1,3}}\"")
    J = tuple(sorted({int(t) for t in re.split(r"[,\s]+", m.group(2).strip()) if t}))
    return int(m.group(1)), J


def _span_bound(value: str) -> int:
    n = int(value)
    if n < MIN_SPAN_BOUND:
        raise argparse.ArgumentTypeError(f"span bound must be at least {MIN_SPAN_BOUND}")
    return n


def _cache(args) -> Cache:
    if args.no_cache:
        return Cache(None)
    return Cache(Path(args.cache) if args.cache else default_dir())


# ---------------------------------------------------------------------------
# Schur fan-out


def _schur_job(job: Tuple[str, int, int, int]) -> Tuple[int, SchurResult]:
    type_text, node, mask, bound = job
    x = get_chss(LieType.parse(type_text), node)
    return mask, schur_equal(x, HasseElement(mask), span_bound=bound)


def _schur_results(x: CHSS, cells: Sequence[HasseElement], bound: int, jobs: int) -> Dict[int, SchurResult]:
    work = [(str(x.lie_type), x.node, w.delta_w, bound) for w in cells]
    if jobs <= 1 or len(work) <= 1:
        return dict(map(_schur_job, work))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return dict(pool.map(_schur_job, work))


def _needs_schur(x: CHSS, w: HasseElement) -> bool:
    return classify(x, w).proper and not triviality_filter(x, w)


def build_report(x: CHSS, cells: Sequence[HasseElement], schur: bool, bound: int, jobs: int) -> Report:
    results = _schur_results(x, [w for w in cells if _needs_schur(x, w)], bound, jobs) if schur else {}
    return make_report(x, [make_record(x, w, results.get(w.delta_w)) for w in cells])


def _cached_report(args, x: CHSS, command: str, options: Dict, build) -> Report:
    cache = _cache(args)
    key = cache_key(str(x.lie_type), x.node, dict(options, command=command))
    text = cache.get(key)
    if text is not None:
        try:
            return parse_json(text)
        except (ValueError, KeyError, TypeError):
            pass
    report = build()
    cache.put(key, render(report, "json"))
    return report


# ---------------------------------------------------------------------------
# Commands


def cmd_catalog(args) -> int:
    x = _chss(args.type, args.node)
    opts = {"schur": args.schur, "span_bound": args.span_bound if args.schur else None}
    report = _cached_report(args, x, "catalog", opts,
                            lambda: build_report(x, enumerate_hasse(x), args.schur, args.span_bound, args.jobs))
    sys.stdout.write(render(report, args.format))
    return 0


def cmd_rigidity(args) -> int:
    x = _chss(args.type, args.node)
    report = _cached_report(args, x, "catalog", {"schur": False, "span_bound": None},
                            lambda: build_report(x, enumerate_hasse(x), False, args.span_bound, args.jobs))
    keep = [r for r in report.records if r.proper and (r.h_plus or not args.hplus_only)]
    sys.stdout.write(render(Report(report.schema_version, report.chss, report.generated_at, keep), args.format))
    return 0


def _select_cell(args, x: CHSS) -> Tuple[Optional[HasseElement], List[str]]:
    """The cell named by --word, --aJ or --partition, plus any notices."""
    notices: List[str] = []
    if args.word:
        try:
            return delta_from_word(x, parse_word(args.word)), notices
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.aJ:
        a, J = parse_aJ(args.aJ)
        if not J:
            if a != 0:
                raise UsageError(f"({a}, {{}}) does not name a cell: an empty J forces a = 0")
            notices.append("NotProper: J is empty, so (0, {}) names the whole space, not a proper cell")
            return schubert_from_aJ(x, 0, ()).element, notices
        if any(j not in x.I_p for j in J):
            raise UsageError(f"J must be a subset of {fmt_set(x.I_p)}")
        if not is_realizable(x, a, J):
            raise UsageError(
                f"({a}, {fmt_set(J)}) is not realizable on {x.label}: it fails the realizability "
                "table (upper bound on a and the admissible (p, q) or J patterns); run `tables bigone`")
        return schubert_from_aJ(x, a, J).element, notices
    if args.partition:
        pi = _partition(x, args.partition)
        return cell_of_partition(pi), notices
    return None, notices


def _partition(x: CHSS, text: str) -> Partition:
    if x.lie_type.family != "A":
        raise UsageError("partitions index cells of Grassmannians A_n/P_i only")
    try:
        return Partition.parse(x.node, x.rank + 1, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _grassmannian_extras(x: CHSS, w: HasseElement) -> Dict[str, str]:
    d = classify(x, w)
    n1 = x.rank + 1
    if d.proper:
        pi = partition_from_aJ(x.node, n1, d.a, d.J)
    else:
        pi = Partition(x.node, n1, ()) if w.delta_w == x.full_mask else Partition.from_parts(
            x.node, n1, [n1 - x.node] * x.node)
    conj = conjugate(pi)
    dc = aJ_from_partition(conj)
    return {"partition": str(pi), "dual_partition": str(dual_partition(pi)),
            "conjugate_partition": str(conj), "conjugate": f"({dc.a},{fmt_set(dc.J)})",
            "suit": suit(pi)}


def _single(rec: Record, extras: Dict[str, str], notices: List[str], fmt: str) -> str:
    data = asdict(rec)
    data.update(extras)
    if notices:
        data["notices"] = notices
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    rows = []
    for k, v in data.items():
        if k == "J":
            v = fmt_set(v)
        elif k == "dual" and v:
            v = f"({v['a']},{fmt_set(v['J'])})"
        rows.append([k, json.dumps(v) if isinstance(v, (list, dict, bool)) or v is None else str(v)])
    return render_rows(("field", "value"), rows, fmt)


def cmd_classify(args) -> int:
    x = _chss(args.type, args.node)
    w, notices = _select_cell(args, x)
    rec = make_record(x, w)
    extras = _grassmannian_extras(x, w) if x.lie_type.family == "A" else {}
    sys.stdout.write(_single(rec, extras, notices, args.format))
    return 0


def cmd_schur(args) -> int:
    x = _chss(args.type, args.node)
    w, notices = _select_cell(args, x)
    for note in notices:
        print(note, file=sys.stderr)
    if w is not None:
        cells = [w]
    else:
        cells = [v for v in enumerate_hasse(x) if classify(x, v).proper]
    if w is None and not args.all_proper:
        cells = [v for v in cells if make_record(x, v).h_plus]
    report = build_report(x, cells, True, args.span_bound, args.jobs)
    sys.stdout.write(render(report, args.format))
    return 0


def cmd_tables(args) -> int:
    result = regenerate(args.table)
    if args.format == "json":
        payload = {"table": result.table_id, "columns": result.columns, "rows": result.rows,
                   "ok": result.ok, "diffs": [asdict(d) for d in result.diffs]}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        rows = [[r.get(c, "") for c in result.columns] for r in result.rows]
        sys.stdout.write(render_rows(result.columns, rows, args.format))
    if result.ok:
        print(f"{args.table}: identical to golden data ({len(result.rows)} rows)", file=sys.stderr)
        return 0
    for d in result.diffs:
        print(f"DIFF {d.row} [{d.column}]: expected {d.expected!r}, got {d.got!r}", file=sys.stderr)
    return 1


def cmd_partition(args) -> int:
    i, n1 = args.i, args.n_plus_1
    x = _chss(f"A{n1 - 1}", str(i))
    if args.aJ:
        a, J = parse_aJ(args.aJ)
        try:
            pi = partition_from_aJ(i, n1, a, J)
        except ValueError as exc:
            raise UsageError(f"{exc}; see `tables bigone` for the realizability table") from exc
    elif args.parts is not None:
        pi = _partition(x, args.parts)
    else:
        raise UsageError("give a partition or --aJ")
    w = cell_of_partition(pi)
    rec = make_record(x, w)
    sys.stdout.write(_single(rec, _grassmannian_extras(x, w), [], args.format))
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="md", help="output format (default md)")
    common.add_argument("--span-bound", type=_span_bound, default=DEFAULT_SPAN_BOUND,
                        help=f"ordered-sequence bound for the Schur test (default {DEFAULT_SPAN_BOUND}, "
                             f"minimum {MIN_SPAN_BOUND})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the Schur test (default 1)")
    common.add_argument("--cache", metavar="DIR",
                        help="cache directory (default $SCHUBERT_RIGIDITY_CACHE or ~/.cache/schubert_rigidity)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")

    p = argparse.ArgumentParser(prog="schubert-rigidity",
                                description="Schubert cells of compact Hermitian symmetric spaces")
    sub = p.add_subparsers(dest="command", required=True)

    def space(sp):
        sp.add_argument("type", help="Lie type such as A4, C5, D6, E6, E7")
        sp.add_argument("node", help="marked node (Bourbaki numbering)")

    def cell_inputs(sp, required: bool):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--word", help="reduced word such as 76542 (comma separated for rank >= 10)")
        g.add_argument("--aJ", help='descriptor such as "1;{1,3}"')
        g.add_argument("--partition", help='Grassmannian partition such as "6 4^2 1^2"')

    sp = sub.add_parser("catalog", parents=[common], help="every Schubert cell with its descriptor")
    space(sp)
    sp.add_argument("--schur", action="store_true", help="also run the Schur test on proper cells")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("classify", parents=[common], help="full record of one cell")
    space(sp)
    cell_inputs(sp, True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("rigidity", parents=[common], help="H1, H2, H+ verdicts with witnesses")
    space(sp)
    sp.add_argument("--hplus-only", action="store_true")
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("schur", parents=[common], help="Schur test (all H+ cells unless one is named)")
    space(sp)
    cell_inputs(sp, False)
    sp.add_argument("--all-proper", action="store_true", help="test every proper cell, not only H+ cells")
    sp.set_defaults(func=cmd_schur)

    sp = sub.add_parser("tables", parents=[common], help="regenerate a reference table and diff it")
    sp.add_argument("table", choices=TABLE_IDS)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("partition", parents=[common], help="partition <-> (a, J) dictionary on Gr(i, n+1)")
    sp.add_argument("i", type=int)
    sp.add_argument("n_plus_1", type=int)
    sp.add_argument("parts", nargs="?", help='partition such as "6 4^2 1^2"')
    sp.add_argument("--aJ", help='descriptor such as "1;{1,3,7,10}"')
    sp.set_defaults(func=cmd_partition)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
