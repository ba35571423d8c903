"""Command-line front end: ``tfab <command> ...``.

Exit codes: 0 ok, 1 property failure, 2 usage or parse error, 3 precision
indeterminacy.  ``--json`` switches the output to a machine-readable object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .characteristics import HType, format_height, htype_of, parse_characteristic, parse_htype
from .errors import (IndeterminateAtPrecision, InsufficientPrecision, ParseError, TfabError)
from .formats import Workspace, element_json, format_workspace, group_json, parse_workspace
from .groups import (FDGroup, MixedGroup, elem_char, elem_height, elem_htype,
                     elementarily_equivalent, iso1_equivalent, realizable_htypes,
                     szmielew_profile)
from .isotypy import fd_isomorphic, separable_isotypic, type_rank_profile
from .padic import (TruncatedPAdic, check_all_rungs, check_unique_dependency, extract_ladder,
                    parse_ladder, realize_ladder, verify_realization)
from .reduction import reduce_tuple
from .twotype import TwoType, classify_pair, describe_local, realize_two_type

DEFAULT_PRECISION = 64


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    text: str
    obj: object | None = None
    code: int = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_precision() -> int:
    raw = os.environ.get("TFAB_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"TFAB_PRECISION must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("TFAB_PRECISION must be positive")
    return n


# -- loading -----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _with_file(path: str, fn):
    try:
        return fn()
    except ParseError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def load_group(ws: Workspace, target: str) -> tuple[str, FDGroup | MixedGroup]:
    """``FILE`` (exactly one group) or ``FILE:NAME``."""
    if ":" in target and not Path(target).exists():
        path, _, name = target.partition(":")
    else:
        path, name = target, ""
    before = set(ws.groups)
    _with_file(path, lambda: parse_workspace(_read(path), ws))
    new = [g for g in ws.groups if g not in before]
    if name:
        return name, ws.group(name)
    if len(new) != 1:
        raise UsageError(f"{path} must define exactly one group (or use FILE:NAME)")
    return new[0], ws.groups[new[0]]


def load_elements(ws: Workspace, paths: list[str]) -> list[tuple[str, str]]:
    """Parse element files in order; returns (name, group) for each element."""
    out = []
    for path in paths:
        before = list(ws.elements)
        _with_file(path, lambda: parse_workspace(_read(path), ws))
        out += [(n, ws.elements[n][0]) for n in ws.elements if n not in before]
    return out


def _one_group(ws: Workspace, elems: list[tuple[str, str]], gname: str):
    for n, g in elems:
        if g != gname:
            raise UsageError(f"element {n} lives in {g}, not in {gname}")


def _residues(text: str, p: int, N: int) -> list[TruncatedPAdic]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    return [TruncatedPAdic(p, N, v) for v in vals]


# -- commands ----------------------------------------------------------------

def _parse_either(text: str):
    text = text.strip()
    return parse_htype(text) if text.startswith("[") else parse_characteristic(text)


def cmd_char(a) -> CommandResult:
    x = parse_characteristic(a.text)
    t = htype_of(x)
    return CommandResult(f"{x}\nh-type {t}", {"characteristic": str(x), "htype": str(t)})


def cmd_htype(a) -> CommandResult:
    x = _parse_either(a.text)
    t = x if isinstance(x, HType) else htype_of(x)
    return CommandResult(str(t), {"htype": str(t)})


def _lattice(a, op) -> CommandResult:
    x, y = _parse_either(a.x), _parse_either(a.y)
    if isinstance(x, HType) != isinstance(y, HType):
        if isinstance(x, HType):
            y = htype_of(y)
        else:
            x = htype_of(x)
    z = getattr(x, op)(y)
    key = "htype" if isinstance(z, HType) else "characteristic"
    return CommandResult(str(z), {key: str(z), "leq": x.leq(y), "geq": y.leq(x)})


def cmd_meet(a):
    return _lattice(a, "meet")


def cmd_join(a):
    return _lattice(a, "join")


def cmd_height(a) -> CommandResult:
    ws = Workspace()
    gname, G = load_group(ws, a.group)
    elems = load_elements(ws, [a.elem])
    if len(elems) != 1:
        raise UsageError("--elem must hold exactly one element")
    _one_group(ws, elems, gname)
    x = ws.elements[elems[0][0]][1]
    if a.prime is not None:
        h = elem_height(G, x, a.prime)
        return CommandResult(format_height(h), {"prime": a.prime, "height": format_height(h)})
    chi = elem_char(G, x)
    t = elem_htype(G, x)
    return CommandResult(f"characteristic {chi}\nh-type {t}",
                         {"characteristic": str(chi), "htype": str(t)})


def cmd_reduce(a) -> CommandResult:
    ws = Workspace()
    gname, G = load_group(ws, a.group)
    elems = load_elements(ws, a.elem)
    if not elems:
        raise UsageError("reduce needs at least one element")
    _one_group(ws, elems, gname)
    xs = [ws.elements[n][1] for n, _ in elems]
    res = reduce_tuple(G, xs)
    out = Workspace({gname: G})
    for i, b in enumerate(res.basis):
        out.add_element(f"b{i + 1}", gname, b)
    rows = [" ".join(f"{v:>4}" for v in row) for row in res.expression]
    text = (f"rank {len(res.basis)} of {len(xs)}\n"
            + "\n".join(f"{n} = [{r}]" for (n, _), r in zip(elems, rows)) + "\n\n"
            + format_workspace(Workspace({}, out.elements)).strip())
    obj = {"input": [n for n, _ in elems], "rank": len(res.basis),
           "basis": [element_json(b) for b in res.basis],
           "expression": [list(r) for r in res.expression]}
    return CommandResult(text, obj)


def _two_groups(a):
    # separate workspaces: the two files may reuse names, or be the same file
    _, A1 = load_group(Workspace(), a.a)
    _, A2 = load_group(Workspace(), a.b)
    for G in (A1, A2):
        if isinstance(G, MixedGroup):
            raise UsageError("this command needs fully decomposable groups (no padic lines)")
    return A1, A2


def _decision(label, fn):
    def run(a):
        A1, A2 = _two_groups(a)
        v = fn(A1, A2)
        return CommandResult(f"{label}: {str(v).lower()}", {"relation": label, "value": v})
    return run


cmd_ee = _decision("elementarily equivalent", elementarily_equivalent)
cmd_iso1 = _decision("1-isotypic", iso1_equivalent)
cmd_isotypic = _decision("separably isotypic", separable_isotypic)
cmd_iso = _decision("isomorphic", fd_isomorphic)


def cmd_profile(a) -> CommandResult:
    ws = Workspace()
    name, G = load_group(ws, a.group)
    if isinstance(G, MixedGroup):
        raise UsageError("profile needs a fully decomposable group")
    prof = szmielew_profile(G)
    trp = type_rank_profile(G)
    tf = prof.to_json()["Tf"]
    exc = ", ".join(f"{p}:{v}" for p, v in tf["exceptions"].items())
    text = (f"group {name}\nD = 0, U = 0, Exp = inf\n"
            f"Tf default {tf['default']}" + (f"; exceptions {exc}" if exc else "") + "\n"
            f"realizable h-types: {', '.join(str(t) for t in sorted(realizable_htypes(G)))}\n"
            + trp.table())
    return CommandResult(text, {"group": name, "szmielew": prof.to_json(),
                                "types": trp.to_json()})


def _digits(x: TruncatedPAdic) -> str:
    return "".join(str(d) if d < 10 else f"({d})" for d in x.digits())


def _pair_json(pair) -> dict:
    return {"p": pair.ladder.p, "N": pair.N,
            "a": [{"residue": x.residue, "digits": _digits(x)} for x in pair.a],
            "b": [{"residue": x.residue, "digits": _digits(x)} for x in pair.b],
            "ladder": str(pair.ladder), "verification": verify_realization(pair)}


def cmd_realize2(a) -> CommandResult:
    N = a.precision or default_precision()
    if a.twotype:
        try:
            tt = TwoType.from_json(json.loads(_read(a.twotype)))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"{a.twotype}: not a 2-type object ({exc})") from None
        r = realize_two_type(tt, N)
        back = classify_pair(r.carrier, r.x, r.y)
        ws = Workspace({"G": r.carrier})
        ws.add_element("x", "G", r.x)
        ws.add_element("y", "G", r.y)
        ok = back == tt
        text = format_workspace(ws) + f"\n# classification round trip: {'ok' if ok else 'MISMATCH'}"
        obj = {"N": N, "carrier": group_json(r.carrier), "x": element_json(r.x),
               "y": element_json(r.y), "roundtrip": ok, "twotype": tt.to_json()}
        return CommandResult(text, obj, 0 if ok else 1)
    if a.prime is None or a.ladder is None:
        raise UsageError("realize2 needs --prime and --ladder, or --twotype")
    L = parse_ladder(a.ladder, a.prime)
    pair = realize_ladder(L, N)
    obj = _pair_json(pair)
    lines = [f"p = {L.p}, N = {N}, ladder {L}"]
    for nm, vec in (("a", pair.a), ("b", pair.b)):
        lines.append(f"{nm} = (" + ", ".join(str(x.residue) for x in vec) + ")")
        lines.append("  digits " + " | ".join(_digits(x) for x in vec))
    for s in obj["verification"]["steps"]:
        lines.append(f"  v({s['A']}*p^(l-k)*a + {s['B']}*b) = {s['valuation']}, "
                     f"expected Exact({s['t']})")
    lines.append("verified" if obj["verification"]["ok"] else "verification FAILED")
    return CommandResult("\n".join(lines), obj)


def cmd_extract2(a) -> CommandResult:
    if a.group:
        ws = Workspace()
        gname, G = load_group(ws, a.group)
        elems = load_elements(ws, a.elem or [])
        if len(elems) != 2:
            raise UsageError("extract2 needs exactly two elements (x, y)")
        _one_group(ws, elems, gname)
        x, y = (ws.elements[n][1] for n, _ in elems)
        tt = classify_pair(G, x, y)
        if tt.rank == 1:
            text = (f"rank 1, characteristic {tt.char_single}\n"
                    f"x = {tt.expression[0][0]} w, y = {tt.expression[1][0]} w")
        else:
            E = tt.expression
            lines = [f"rank 2, x = {E[0][0]} a + {E[0][1]} b, y = {E[1][0]} a + {E[1][1]} b",
                     f"other primes: {describe_local(tt.default)}"]
            lines += [f"p = {p}: {describe_local(t)}" for p, t in tt.locals]
            text = "\n".join(lines)
        return CommandResult(text, tt.to_json())
    if a.prime is None or a.a is None or a.b is None:
        raise UsageError("extract2 needs --group with two --elem, or --prime --a --b")
    N = a.precision or default_precision()
    va, vb = _residues(a.a, a.prime, N), _residues(a.b, a.prime, N)
    level = a.max_level if a.max_level is not None else N - 1
    L = extract_ladder(va, vb, level)
    return CommandResult(f"ladder {L}", {"p": a.prime, "N": N, "max_level": level,
                                         "ladder": str(L), "steps": [list(s) for s in L.steps],
                                         "infinite": L.infinite})


def cmd_uniq(a) -> CommandResult:
    N = a.precision or default_precision()
    if a.ladder:
        if a.prime is None:
            raise UsageError("--ladder needs --prime")
        pair = realize_ladder(parse_ladder(a.ladder, a.prime), N)
        va, vb = list(pair.a), list(pair.b)
    elif a.prime is not None and a.a and a.b:
        va, vb = _residues(a.a, a.prime, N), _residues(a.b, a.prime, N)
    else:
        raise UsageError("uniq-check needs --prime with --a/--b or --ladder")
    reports = [check_unique_dependency(va, vb, a.level)] if a.level is not None \
        else check_all_rungs(va, vb)
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        state = "PASS" if r.passed else "FAIL"
        h = "unreached" if r.height is None else r.height
        lines.append(f"rung {r.rung} (height {h}): {len(r.raising)} raising pairs, "
                     f"{r.classes} classes {state}")
    return CommandResult("\n".join(lines), {"reports": [r.to_json() for r in reports],
                                            "verdict": "PASS" if ok else "FAIL"}, 0 if ok else 1)


def cmd_selftest(a) -> CommandResult:
    from .acceptance import run_all
    nums = None
    if a.criteria:
        try:
            nums = [int(t) for t in a.criteria.split(",")]
        except ValueError:
            raise UsageError("--criteria takes comma-separated numbers") from None
    results = run_all(nums)
    passed = sum(r.passed for r in results)
    partial = sum(r.passed and bool(r.unattained) for r in results)
    text = ("\n".join(r.line() for r in results) + f"\n{passed}/{len(results)} criteria passed"
            + (f" ({partial} with an unattainable part)" if partial else ""))
    obj = {"passed": passed, "failed": len(results) - passed,
           "results": [r.to_json() for r in results]}
    return CommandResult(text, obj, 0 if passed == len(results) else 1)


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tfab", description="Invariants of torsion-free Abelian groups.")
    ap.add_argument("--json", action="store_true", help="emit a JSON object")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    p = add("char", cmd_char, "canonicalize a characteristic")
    p.add_argument("text")
    p = add("htype", cmd_htype, "h-type of a characteristic")
    p.add_argument("text")
    for name, fn in (("meet", cmd_meet), ("join", cmd_join)):
        p = add(name, fn, f"{name} of two characteristics or h-types")
        p.add_argument("x")
        p.add_argument("y")
    p = add("height", cmd_height, "p-height or characteristic of an element")
    p.add_argument("--group", required=True)
    p.add_argument("--elem", required=True)
    p.add_argument("--prime", type=int)
    p = add("reduce", cmd_reduce, "rewrite elements over an independent tuple")
    p.add_argument("--group", required=True)
    p.add_argument("--elem", action="append", default=[], required=True)
    for name, fn, h in (("ee", cmd_ee, "elementary equivalence"),
                        ("iso1", cmd_iso1, "1-isotypicity"),
                        ("isotypic", cmd_isotypic, "isotypicity of separable groups"),
                        ("iso", cmd_iso, "isomorphism of fully decomposable groups")):
        p = add(name, fn, h)
        p.add_argument("a")
        p.add_argument("b")
    p = add("profile", cmd_profile, "Szmielew data and type ranks")
    p.add_argument("group")
    p = add("realize2", cmd_realize2, "realize a ladder or a 2-type")
    p.add_argument("--prime", type=int)
    p.add_argument("--ladder")
    p.add_argument("--twotype", help="JSON file with a 2-type object")
    p.add_argument("--precision", type=int)
    p = add("extract2", cmd_extract2, "classify a pair or extract a ladder")
    p.add_argument("--group")
    p.add_argument("--elem", action="append")
    p.add_argument("--prime", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--precision", type=int)
    p.add_argument("--max-level", type=int, dest="max_level")
    p = add("uniq-check", cmd_uniq, "exhaustive raising-class check")
    p.add_argument("--prime", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--ladder")
    p.add_argument("--level", type=int)
    p.add_argument("--precision", type=int)
    p = add("selftest", cmd_selftest, "run the acceptance criteria")
    p.add_argument("--criteria", help="comma-separated subset, default all")
    return ap


def run_command(argv: list[str]) -> CommandResult:
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command")
        res = args.fn(args)
    except UsageError as exc:
        res = CommandResult(f"usage error: {exc}", {"error": "usage", "message": str(exc)}, 2)
    except ParseError as exc:
        res = CommandResult(f"parse error: {exc}", {"error": type(exc).__name__,
                                                    "message": str(exc)}, 2)
    except (IndeterminateAtPrecision, InsufficientPrecision) as exc:
        res = CommandResult(f"precision: {exc}", {"error": type(exc).__name__,
                                                  "message": str(exc)}, 3)
    except TfabError as exc:
        res = CommandResult(f"error: {exc}", {"error": type(exc).__name__,
                                              "message": str(exc)}, 2)
    if not want_json:
        res.obj = None
    return res


def main(argv: list[str] | None = None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if res.code in (0, 1) else sys.stderr
    if res.obj is not None:
        print(json.dumps(res.obj, indent=2), file=out)
    else:
        print(res.text, file=out)
    return res.code
