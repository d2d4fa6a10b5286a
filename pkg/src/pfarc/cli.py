"""``pfarc`` command line front end.

Every verification subcommand prints a ``pfarc-report/1`` JSON document and
exits 0 when all cells pass, 1 when some cell fails, 2 on bad usage.  Grid
flags accept ``3``, ``2,4`` or ``2-5``; a ``--config`` file supplies defaults
as ``key = value`` lines.  ``PFARC_THREADS`` overrides the worker count.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import __version__
from .linalg import BACKEND
from .order import ESeq, JSeq, L, e_partial_le, e_total_prec, is_greater, j_prec, largest_dominating
from .pfaffian import jseq_value
from .ring import Poly, xvar

SCHEMA = "pfarc-report/1"


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------

def int_list(text) -> List[int]:
    """``"3"``, ``"2,4"``, ``"2-5"`` or a mix like ``"0,2-4"``."""
    if isinstance(text, int):
        return [text]
    out: List[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(-?\d+)\s*-\s*(\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            out.append(int(part))
        else:
            raise UsageError(f"not an integer list: {text!r}")
    if not out:
        raise UsageError(f"empty list {text!r}")
    return sorted(set(out))


def load_config(path: Optional[str]) -> Dict[str, str]:
    if not path:
        return {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        parser.read_string("[pfarc]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"bad config file: {exc}") from exc
    return {k.replace("-", "_"): v.strip() for k, v in parser["pfarc"].items()}


def threads(args) -> int:
    env = os.environ.get("PFARC_THREADS")
    value = env if env else getattr(args, "threads", None)
    n = int(value) if value not in (None, "") else 1
    if n < 1:
        raise UsageError("parallelism must be at least 1")
    return n


def even_hs(hs: Sequence[int]) -> List[int]:
    for h in hs:
        if h % 2 or h < 0:
            raise UsageError(f"h must be a non-negative even integer, got {h}")
    return list(hs)


def fan_out(fn: Callable, cells: List[tuple], workers: int) -> list:
    """Run ``fn`` on every cell, in order; a process pool when workers > 1."""
    if workers <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells, chunksize=1))


def make_report(command: str, config: dict, theorem: str, cells: list, started: float,
                workers: int, extra: Optional[dict] = None) -> dict:
    verdict = "pass" if all(c.get("verdict") == "pass" for c in cells) else "fail"
    rep = {
        "schema": SCHEMA,
        "tool": {"name": "pfarc", "version": __version__},
        "command": command,
        "config": config,
        "theorem": theorem,
        "cells": cells,
        "summary": {"cells": len(cells), "failed": sum(c.get("verdict") != "pass" for c in cells)},
        "verdict": verdict,
        # everything that may differ between runs of one config lives here
        "run": {"wall_seconds": round(time.perf_counter() - started, 6),
                "workers": workers, "backend": BACKEND},
    }
    if extra:
        rep.update(extra)
    return rep


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def emit(rep: dict, path: Optional[str]) -> int:
    text = dump(rep)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if rep["verdict"] == "pass" else 1


# -- expressions -------------------------------------------------------------

_TOKEN = re.compile(r"""
    \s*(?:
      (?P<jseq>(?:d\^(?P<jn>\d+))?\|(?P<jrows>[\d,\s]*)\|)
    | (?P<xgen>x(?:\^(?P<xk>\d+))?\(\s*(?P<xu>\d+)\s*,\s*(?P<xv>\d+)\s*\))
    | (?P<num>\d+)
    | (?P<op>[-+*^()])
    )""", re.VERBOSE)


def _tokens(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse expression at {text[pos:]!r}")
        pos = m.end()
        if m.group("jseq"):
            body = m.group("jrows").strip()
            rows = [int(t) for t in body.split(",")] if body else []
            out.append(("jseq", (rows, int(m.group("jn") or 0))))
        elif m.group("xgen"):
            out.append(("xgen", (int(m.group("xu")), int(m.group("xv")), int(m.group("xk") or 0))))
        elif m.group("num"):
            out.append(("num", int(m.group("num"))))
        else:
            out.append(("op", m.group("op")))
    return out


def expr_rows(text: str) -> int:
    """Largest row index mentioned in an expression."""
    best = 1
    for kind, val in _tokens(text):
        if kind == "jseq" and val[0]:
            best = max(best, max(val[0]))
        elif kind == "xgen":
            best = max(best, val[0], val[1])
    return best


def parse_expr(text: str, p: int) -> Poly:
    """Sums and products of integers, ``x^k(u,v)`` generators and derived
    Pfaffians ``d^n|u_h,...,u_1|`` (rows as written)."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(op):
        nonlocal pos
        if peek() != ("op", op):
            raise UsageError(f"expected {op!r} in expression")
        pos += 1

    def atom() -> Poly:
        nonlocal pos
        kind, val = peek()
        pos += 1
        if kind == "num":
            return Poly.const(val, "X", p)
        if kind == "jseq":
            rows, n = val
            if len(rows) % 2:
                raise UsageError(f"odd number of rows in {rows}")
            return jseq_value(rows, n, p)
        if kind == "xgen":
            u, v, k = val
            try:
                return xvar(u, v, k, p)
            except (IndexError, ValueError) as exc:
                raise UsageError(str(exc)) from exc
        if (kind, val) == ("op", "("):
            out = expr()
            take(")")
            return out
        raise UsageError(f"unexpected token {val!r} in expression")

    def power() -> Poly:
        nonlocal pos
        base = atom()
        if peek() == ("op", "^"):
            pos += 1
            kind, val = peek()
            if kind != "num":
                raise UsageError("exponent must be a non-negative integer")
            pos += 1
            base = base ** val
        return base

    def term() -> Poly:
        nonlocal pos
        out = power()
        while peek() == ("op", "*"):
            pos += 1
            out = out * power()
        return out

    def expr() -> Poly:
        nonlocal pos
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if peek()[1] == "-" else 1
            pos += 1
        out = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = peek()[1]
            pos += 1
            t = term()
            out = out + t if op == "+" else out - t
        return out

    if not toks:
        raise UsageError("empty expression")
    result = expr()
    if pos != len(toks):
        raise UsageError(f"trailing input in expression {text!r}")
    return result


# -- cell workers (top level so they pickle) ---------------------------------

def _basis_cell(cell):
    from .quotient import verify_standard_basis
    return verify_standard_basis(*cell).to_json()


def _leading_cell(cell):
    from .jet import verify_leading
    from .standard import enumerate_standard
    p, h, d, w = cell
    failures = []
    std = enumerate_standard(p, h, d, w)
    for sp in std:
        ok, detail = verify_leading(sp, p, h)
        if not ok:
            failures.append(detail)
    return {"cell": f"p{p}-h{h}-d{d}-w{w}", "p": p, "h": h, "d": d, "w": w,
            "n_standard": len(std), "witnesses": failures[:5],
            "verdict": "pass" if not failures else "fail"}


def _injectivity_cell(cell):
    from .jet import verify_injectivity
    p, h, d, w = cell
    out = verify_injectivity(p, h, d, w)
    out.pop("theorem", None)
    out["cell"] = f"p{p}-h{h}-d{d}-w{w}"
    return out


def _invariance_cell(cell):
    from .jet import verify_invariance
    out = verify_invariance(*cell)
    out.pop("theorem", None)
    out["cell"] = "p{}-h{}-k{}-m{}".format(*cell)
    return out


def _dimension_cell(cell):
    from .jet import invariant_dimension
    p, h, d, w = cell
    ker, img = invariant_dimension(p, h, d, w)
    return {"cell": f"p{p}-h{h}-d{d}-w{w}", "p": p, "h": h, "d": d, "w": w,
            "dim_kernel": ker, "dim_image": img,
            "verdict": "pass" if ker == img else "fail"}


def _relation_cell(cell):
    from .quotient import check_relation
    u, up, i, j, k0, m, seed, p = cell
    return check_relation(list(u), list(up), i, j, k0, m, list(seed), p).to_json()


# -- subcommands -------------------------------------------------------------

def _grid(args) -> List[tuple]:
    ps = int_list(args.p)
    hs = even_hs(int_list(args.h))
    ds = int_list(f"0-{args.deg_max}") if args.deg is None else int_list(args.deg)
    ws = int_list(f"0-{args.wt_max}") if args.wt is None else int_list(args.wt)
    if min(ps) < 1 or min(ds) < 0 or min(ws) < 0:
        raise UsageError("p must be positive, degrees and weights non-negative")
    return list(product(ps, hs, ds, ws))


def _config_echo(args, keys: Iterable[str]) -> dict:
    return {k: getattr(args, k) for k in keys}


def cmd_pfaffian(args) -> int:
    rows = int_list_ordered(args.rows)
    if len(rows) % 2:
        raise UsageError("a Pfaffian needs an even number of rows")
    p = args.p or max(rows, default=1)
    try:
        poly = jseq_value(rows, args.order, p)
    except (IndexError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(poly.dumps())
    return 0


def int_list_ordered(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad row list {text!r}") from exc


def cmd_order(args) -> int:
    try:
        if args.cmp == "j":
            a, b = JSeq.parse(args.lhs), JSeq.parse(args.rhs)
            out = {"lhs": str(a), "rhs": str(b), "precedes": j_prec(a, b),
                   "follows": j_prec(b, a), "equal": a == b}
        elif args.cmp == "e":
            a, b = ESeq.parse(args.lhs), ESeq.parse(args.rhs)
            out = {"lhs": str(a), "rhs": str(b), "precedes": e_total_prec(a, b),
                   "follows": e_total_prec(b, a), "equal": a == b,
                   "partial_le": e_partial_le(a, b), "partial_ge": e_partial_le(b, a)}
        else:
            j, e = JSeq.parse(args.lhs), ESeq.parse(args.rhs)
            best = largest_dominating(e, j)
            out = {"lhs": str(j), "rhs": str(e), "L": L(e, j), "is_greater": is_greater(j, e),
                   "largest_dominating": str(best) if best is not None else None}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(dump(out))
    return 0


def cmd_enum_standard(args) -> int:
    from .standard import enumerate_standard
    if args.h % 2:
        raise UsageError("h must be even")
    std = enumerate_standard(args.p, args.h, args.deg, args.wt)
    if args.count_only:
        print(dump({"p": args.p, "h": args.h, "deg": args.deg, "wt": args.wt, "count": len(std)}))
    else:
        print(dump([sp.to_json() for sp in std]))
    return 0


def cmd_straighten(args) -> int:
    from .quotient import IdealReducer, NonIntegralError, straightener
    if args.h % 2:
        raise UsageError("h must be even")
    p = args.p or expr_rows(args.expr)
    f = parse_expr(args.expr, p)
    degs = f.degrees()
    if len(degs) != 1:
        raise UsageError("expression must be a nonzero homogeneous polynomial")
    (d, w), = degs
    started = time.perf_counter()
    st = straightener(p, args.h, d, w)
    cell = {"cell": f"p{p}-h{args.h}-d{d}-w{w}", "input": f.to_json()}
    try:
        combo = st.straighten(f)
    except NonIntegralError as exc:
        cell.update({"verdict": "fail", "witnesses": [str(exc)]})
    else:
        back = st.evaluate(combo)
        ok = IdealReducer(p, args.h + 2, d, w).contains(f - back)
        cell.update({
            "coefficients": [{"product": str(sp), "coefficient": str(c)}
                             for sp, c in sorted(combo.items(), key=lambda t: str(t[0]))],
            "verdict": "pass" if ok else "fail",
        })
    rep = make_report("straighten", {"p": p, "h": args.h, "expr": args.expr},
                      "straightening into standard monomials (Lemma 2.6, Theorem 1.2)",
                      [cell], started, 1)
    return emit(rep, args.emit)


def _grid_command(name: str, worker: Callable, theorem: str):
    def run(args) -> int:
        cells = _grid(args)
        n = threads(args)
        started = time.perf_counter()
        results = fan_out(worker, cells, n)
        rep = make_report(name, _config_echo(args, ["p", "h", "deg_max", "wt_max", "deg", "wt"]),
                          theorem, results, started, n)
        return emit(rep, args.emit)
    return run


cmd_verify_basis = _grid_command("verify-basis", _basis_cell,
                                 "Z-basis of standard monomials (Theorem 1.2)")
cmd_verify_leading = _grid_command("verify-leading", _leading_cell,
                                   "leading tableau of standard products (Lemma 3.1)")
cmd_verify_injectivity = _grid_command("verify-injectivity", _injectivity_cell,
                                       "injectivity of the invariant map on the quotient (Theorem 3.2)")


def cmd_verify_invariance(args) -> int:
    ps = int_list(args.p)
    hs = even_hs(int_list(args.h))
    n = threads(args)
    started = time.perf_counter()
    cells = [(p, h, args.k_max, args.m_max) for p, h in product(ps, hs)]
    results = fan_out(_invariance_cell, cells, n)
    if args.deg_max is not None:
        dims = [(p, h, d, w) for p, h in product(ps, hs)
                for d in range(args.deg_max + 1) for w in range(args.wt_max + 1)]
        results += fan_out(_dimension_cell, dims, n)
    rep = make_report("verify-invariance",
                      _config_echo(args, ["p", "h", "k_max", "m_max", "deg_max", "wt_max"]),
                      "jet symplectic invariants are generated by X^(k)_{uv} (Theorem 1.4, Theorem 4.4); "
                      "checked over Q at the Lie-algebra level",
                      results, started, n)
    return emit(rep, args.emit)


def cmd_relations(args) -> int:
    from .quotient import RELATION_SUITE
    if args.u:
        u, up = int_list_ordered(args.u), int_list_ordered(args.up or "")
        seed = tuple(int_list_ordered(args.seed or ""))
        p = args.p or max(u + up)
        cells = [(tuple(u), tuple(up), args.i, args.j, args.k0, args.m, seed, p)]
    else:
        cells = list(RELATION_SUITE)
    n = threads(args)
    started = time.perf_counter()
    try:
        results = fan_out(_relation_cell, cells, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for r in results:
        r.pop("theorem", None)
        r["verdict"] = "pass" if r["in_ideal"] else "fail"
    rep = make_report("relations", {"suite": not args.u, "cells": len(cells)},
                      "alternating relations lie in the ideal (Lemma 2.5)", results, started, n)
    return emit(rep, args.emit)


def cmd_qh(args) -> int:
    from .jet import qh
    if args.h % 2:
        raise UsageError("h must be even")
    p = args.p or expr_rows(args.expr)
    print(qh(p, args.h, parse_expr(args.expr, p)).dumps())
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pfarc", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pfarc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, grid=False):
        sp.add_argument("--config", help="key = value file with default flag values")
        sp.add_argument("--threads", type=int, help="worker processes (PFARC_THREADS overrides)")
        sp.add_argument("--emit", help="also write the report to this path")
        if grid:
            sp.add_argument("--p", default="2")
            sp.add_argument("--h", default="2")
            sp.add_argument("--deg-max", type=int, default=2)
            sp.add_argument("--wt-max", type=int, default=1)
            sp.add_argument("--deg", help="explicit degree list, overrides --deg-max")
            sp.add_argument("--wt", help="explicit weight list, overrides --wt-max")

    s = sub.add_parser("pfaffian", help="derived Pfaffian as Poly JSON")
    s.add_argument("--rows", required=True, help="rows as written, e.g. 4,3,2,1")
    s.add_argument("--order", type=int, default=0)
    s.add_argument("--p", type=int)
    s.set_defaults(func=cmd_pfaffian)

    s = sub.add_parser("order", help="compare sequences")
    s.add_argument("--cmp", choices=["j", "e", "dom"], required=True)
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("enum-standard", help="list standard monomials of one bidegree")
    s.add_argument("--config")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--deg", type=int, required=True)
    s.add_argument("--wt", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enum_standard)

    s = sub.add_parser("straighten", help="expand a polynomial in standard monomials")
    common(s)
    s.add_argument("--p", type=int)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_straighten)

    for name, func, helptext in (
        ("verify-basis", cmd_verify_basis, "certify the standard monomial basis"),
        ("verify-leading", cmd_verify_leading, "check leading tableaux of images"),
        ("verify-injectivity", cmd_verify_injectivity, "rank of images of standard monomials"),
    ):
        s = sub.add_parser(name, help=helptext)
        common(s, grid=True)
        s.set_defaults(func=func)

    s = sub.add_parser("verify-invariance", help="jet symplectic invariance")
    common(s)
    s.add_argument("--p", default="2")
    s.add_argument("--h", default="2")
    s.add_argument("--k-max", type=int, default=2)
    s.add_argument("--m-max", type=int, default=2)
    s.add_argument("--deg-max", type=int, help="also compare invariant dimensions up to this a-degree")
    s.add_argument("--wt-max", type=int, default=2)
    s.set_defaults(func=cmd_verify_invariance)

    s = sub.add_parser("relations", help="check relations between pairs of derived Pfaffians")
    common(s)
    s.add_argument("--u", help="rows of the first sequence as written; omit to run the curated suite")
    s.add_argument("--up", help="rows of the second sequence")
    s.add_argument("--i", type=int, default=0)
    s.add_argument("--j", type=int, default=0)
    s.add_argument("--k0", type=int, default=0)
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--seed", help="comma separated seed coefficients")
    s.add_argument("--p", type=int)
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("qh", help="image of an x-expression in the jet ring")
    s.add_argument("--p", type=int)
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_qh)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: List[str]) -> argparse.Namespace:
    """Config values become subcommand defaults; explicit flags still win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known_args, _ = pre.parse_known_args(argv)
    conf = load_config(known_args.config)
    subparsers = ap._subparsers._group_actions[0].choices  # type: ignore[union-attr]
    command = next((a for a in argv if a in subparsers), None)
    if conf and command:
        sub = subparsers[command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, val in conf.items():
            if key not in known or key in ("config", "help"):
                raise UsageError(f"unknown config key {key!r} for {command}")
            action = known[key]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = val.lower() in ("1", "true", "yes", "on")
            elif action.type is int:
                try:
                    defaults[key] = int(val)
                except ValueError as exc:
                    raise UsageError(f"config key {key!r} needs an integer") from exc
            else:
                defaults[key] = val
        sub.set_defaults(**defaults)
        for key in defaults:
            known[key].required = False
    return ap.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        try:
            args = _apply_config(ap, argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        return args.func(args)
    except UsageError as exc:
        print(f"pfarc: error: {exc}", file=sys.stderr)
        print(ap.format_usage(), file=sys.stderr, end="")
        return 2


if __name__ == "__main__":
    sys.exit(main())
