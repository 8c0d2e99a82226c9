"""Command-line front end: ``dkt <command> [input] [options]``.

Exit codes: 0 success, 1 bad input, 2 not p-colourable, 3 internal
inconsistency. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from . import __version__
from .band_calculus import BandPresentation, reduce
from .coloured_invariant import (
    ColouredSeifert,
    classify,
    colorable_smn_table,
    cu,
    default_colouring,
)
from .errors import DktError, InconsistencyError, NotColourableError, ParseError
from .exact_algebra import check_prime, kernel_mod_p
from .fox_coloring import count_colorings, determinant
from .knot_codec import (
    BraidWord,
    PDCode,
    SeifertDirect,
    braid_to_pd,
    catalog,
    catalog_diagram,
    format_seifert_text,
    parse_braid,
    parse_pd,
    parse_seifert_text,
    smn_pd,
)
from .seifert import SeifertData, knot_determinant, seifert_from_braid, smn

EXIT_OK, EXIT_INPUT, EXIT_NOT_COLOURABLE, EXIT_INCONSISTENT = 0, 1, 2, 3

COMMANDS = ("colorings", "det", "seifert", "cu", "classify", "reduce", "table")


class InputError(DktError):
    """Input that parses but cannot be used for the requested command."""


def _parse_smn(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("--smn expects 'm,n'", 0)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"--smn expects two integers, got {text!r}", 0) from None


def _load(kind: str, value: str):
    """Turn one input into a presentation object."""
    if kind == "braid":
        return parse_braid(value)
    if kind == "pd":
        return parse_pd(value)
    if kind == "smn":
        return _parse_smn(value)
    if kind == "knot":
        try:
            return catalog(value)
        except KeyError as e:
            raise InputError(str(e.args[0])) from None
    with open(value, encoding="utf-8") as fh:
        return parse_seifert_text(fh.read())


def _diagram(kind: str, value: str, obj) -> PDCode | None:
    if isinstance(obj, PDCode):
        return obj
    if isinstance(obj, BraidWord):
        return braid_to_pd(obj)
    if kind == "smn":
        return smn_pd(*obj)
    if kind == "knot":
        try:
            return catalog_diagram(value)
        except KeyError:
            return None
    return None


def _seifert(obj) -> SeifertData:
    if isinstance(obj, BraidWord):
        return seifert_from_braid(obj)
    if isinstance(obj, SeifertDirect):
        return SeifertData(obj.matrix, "direct")
    if isinstance(obj, tuple):
        return smn(*obj)
    raise InputError("a PD code carries no Seifert matrix here; give a braid, --smn or --seifert")


def _coloured(s: SeifertData, p: int, vector: str | None) -> ColouredSeifert:
    if vector is None:
        return default_colouring(s, p)
    try:
        v = [int(x) for x in vector.split(",")]
    except ValueError:
        raise ParseError(f"--vector expects comma-separated integers, got {vector!r}", 0) from None
    if not kernel_mod_p(s.symmetrized, p):
        raise NotColourableError(f"knot is not {p}-colourable")
    return ColouredSeifert.of(s, p, v)


def _need_p(args) -> int:
    if args.p is None:
        raise InputError(f"{args.command} needs --p")
    return check_prime(args.p)


def run_item(args, kind: str, value: str) -> dict[str, Any]:
    """Compute one result record (without the command/input envelope)."""
    cmd = args.command
    obj = _load(kind, value)
    if cmd == "colorings":
        p = _need_p(args)
        pd = _diagram(kind, value, obj)
        if pd is not None:
            total, nontrivial = count_colorings(pd, p)
            source = "diagram"
        else:
            s = _seifert(obj)
            total = p ** (1 + len(kernel_mod_p(s.symmetrized, p)))
            nontrivial = total - p
            source = "seifert"
        return {"total": total, "nontrivial": nontrivial, "colorable": nontrivial > 0, "source": source}
    if cmd == "det":
        pd = _diagram(kind, value, obj)
        if pd is not None:
            return {"det": determinant(pd), "source": "diagram"}
        return {"det": knot_determinant(_seifert(obj)), "source": "seifert"}
    if cmd == "seifert":
        s = _seifert(obj)
        return {
            "genus": s.genus,
            "matrix": s.M.tolist(),
            "text": format_seifert_text(SeifertDirect(s.M)),
            "det": knot_determinant(s),
        }
    p = _need_p(args)
    s = _seifert(obj)
    c = _coloured(s, p, args.vector)
    base = {"v": list(c.v.entries), "cu": cu(c).value}
    if cmd == "cu":
        return base
    if cmd == "classify":
        label = classify(c, args.reference)
        return {**base, "n": label.n, "reference": label.reference, "conjectural": label.conjectural}
    if cmd == "reduce":
        label, trace = reduce(BandPresentation.from_seifert(c))
        out = {**base, "n": label.n, "steps": len(trace)}
        if args.trace:
            out["trace"] = trace.to_json()
            out["trace_lines"] = trace.lines()
        return out
    raise InputError(f"unknown command {cmd}")


def run_table(args) -> dict[str, Any]:
    p = _need_p(args)
    rows = []
    for m, n in colorable_smn_table(p, args.range):
        c = default_colouring(smn(m, n), p)
        rows.append({"m": m, "n": n, "det": 4 * m * n - 1, "cu": cu(c).value, "n_class": classify(c).n})
    return {"range": args.range, "rows": rows}


def _render_text(cmd: str, rec: dict[str, Any]) -> str:
    if cmd == "table":
        lines = [f"{'m':>4} {'n':>4} {'det':>6} {'cu':>3} {'class':>5}"]
        lines += [f"{r['m']:>4} {r['n']:>4} {r['det']:>6} {r['cu']:>3} {r['n_class']:>5}" for r in rec["rows"]]
        return "\n".join(lines)
    if cmd == "seifert":
        return rec["text"]
    lines = []
    for k, v in rec.items():
        if k in ("command", "input", "trace", "trace_lines") or v is None:
            continue
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, list):
            v = ",".join(map(str, v))
        lines.append(f"{k} {v}")
    lines += rec.get("trace_lines", [])
    return "\n".join(lines)


def _guard(fn, *a) -> tuple[int, Any]:
    try:
        return EXIT_OK, fn(*a)
    except NotColourableError as e:
        return EXIT_NOT_COLOURABLE, str(e)
    except InconsistencyError as e:
        return EXIT_INCONSISTENT, str(e)
    except (DktError, ValueError, KeyError, OSError) as e:
        return EXIT_INPUT, str(e)


def _inputs(args) -> list[tuple[str, str]]:
    items = []
    for kind in ("braid", "pd", "smn", "knot"):
        val = getattr(args, kind)
        if val is not None:
            items.append((kind, val))
    items += [("seifert", f) for f in args.seifert or []]
    kinds = {k for k, _ in items}
    if len(kinds) != 1:
        raise InputError("give exactly one input: --braid, --pd, --smn, --knot or --seifert FILE")
    return items


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dkt", description="Coloured untying invariants of p-coloured knots.")
    ap.add_argument("--version", action="version", version=f"dkt {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--p", type=int, help="odd prime")
    ap.add_argument("--braid", help='braid word, e.g. "1 1 1" or "3: 1 -2 1 -2"')
    ap.add_argument("--pd", help='PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"')
    ap.add_argument("--smn", help="the knot S(m,n), as m,n")
    ap.add_argument("--knot", help="catalog name (3_1L, 4_1, 5_1R, S(2,2), ...)")
    ap.add_argument("--seifert", action="append", metavar="FILE", help="Seifert matrix file 'g; entries' (repeatable)")
    ap.add_argument("--vector", help="colouring vector v as comma-separated integers (default: first kernel vector)")
    ap.add_argument("--reference", choices=("left", "right"), default="left", help="handedness of the reference torus knot")
    ap.add_argument("--range", type=int, default=2, help="table: bound on |m| and |n|")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--trace", action="store_true", help="reduce: include the move trace")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for batches of --seifert files")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    out, err = sys.stdout, sys.stderr

    if args.command == "table":
        code, res = _guard(run_table, args)
        records = [(code, {"command": "table", "input": None, "p": args.p, **res} if code == 0 else res)]
    else:
        code, items = _guard(_inputs, args)
        if code:
            print(f"dkt: error: {items}", file=err)
            return code
        if args.jobs < 1:
            print("dkt: error: --jobs must be at least 1", file=err)
            return EXIT_INPUT

        def one(item):
            kind, value = item
            code, res = _guard(run_item, args, kind, value)
            if code:
                return code, f"{kind} {value!r}: {res}"
            return code, {"command": args.command, "input": {"kind": kind, "value": value}, "p": args.p, **res}

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(one, items))

    worst = 0
    for code, rec in records:
        if code:
            print(f"dkt: error: {rec}", file=err)
        elif args.json:
            print(json.dumps(rec, sort_keys=True, ensure_ascii=False), file=out)
        else:
            print(_render_text(args.command, rec), file=out)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
