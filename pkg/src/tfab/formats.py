"""Line-oriented text formats for groups and elements.

    group A
    summand (0;) rank=2
    summand (0; 2:inf) rank=omega
    padic p=3 precision=24 copies=2

    elem x in A
    coord 0.1 = 3/2

Blank lines and ``#`` comments are ignored.  One file may hold several
blocks; element blocks may refer to any group defined earlier in the
workspace.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .characteristics import parse_characteristic
from .errors import MembershipViolation, ParseError, SemanticError
from .groups import (OMEGA, Carrier, Element, FDGroup, MixedGroup, PadicBlock, check_element,
                     format_cardinal)
from .arith import is_prime

_NAME = r"[A-Za-z_][A-Za-z0-9_\-]*"
_GROUP_RE = re.compile(rf"^group\s+({_NAME})$")
_SUMMAND_RE = re.compile(r"^summand\s+(\(.*\))\s+rank=(\S+)$")
_PADIC_RE = re.compile(r"^padic\s+p=(\d+)\s+precision=(\d+)(?:\s+copies=(\d+))?$")
_ELEM_RE = re.compile(rf"^elem\s+({_NAME})\s+in\s+({_NAME})$")
_COORD_RE = re.compile(r"^coord\s+(\d+)\.(\d+)\s*=\s*(-?\d+)(?:/(\d+))?$")


@dataclass
class Workspace:
    groups: dict[str, Carrier] = field(default_factory=dict)
    elements: dict[str, tuple[str, Element]] = field(default_factory=dict)

    def add_group(self, name: str, G: Carrier, line: int | None = None):
        if name in self.groups or name in self.elements:
            raise SemanticError(f"name {name!r} already defined", line)
        self.groups[name] = G

    def add_element(self, name: str, group: str, e: Element, line: int | None = None):
        if name in self.groups or name in self.elements:
            raise SemanticError(f"name {name!r} already defined", line)
        if group not in self.groups:
            raise SemanticError(f"unknown group {group!r}", line)
        self.elements[name] = (group, e)

    def group(self, name: str) -> Carrier:
        try:
            return self.groups[name]
        except KeyError:
            raise SemanticError(f"unknown group {name!r}") from None

    def element(self, name: str) -> tuple[str, Element]:
        try:
            return self.elements[name]
        except KeyError:
            raise SemanticError(f"unknown element {name!r}") from None


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, raw, line


def _col(raw: str, token: str) -> int:
    i = raw.find(token)
    return i + 1 if i >= 0 else 1


def _parse_rank(tok: str, n: int, raw: str):
    if tok == "omega":
        return OMEGA
    if not tok.isdigit() or int(tok) < 1:
        raise ParseError(f"rank must be a positive integer or omega, got {tok!r}", n,
                         _col(raw, "rank="))
    return int(tok)


def _finish_group(ws: Workspace, name, summands, blocks, line):
    fd = FDGroup(tuple(summands))
    G = MixedGroup(tuple(blocks), fd) if blocks else fd
    ws.add_group(name, G, line)


def parse_workspace(text: str, ws: Workspace | None = None) -> Workspace:
    ws = ws if ws is not None else Workspace()
    cur = None  # ("group", name, summands, blocks, line) or ("elem", name, group, coords, line)

    def flush():
        if cur is None:
            return
        if cur[0] == "group":
            _finish_group(ws, cur[1], cur[2], cur[3], cur[4])
        else:
            _, name, gname, coords, line = cur
            e = Element.from_dict(coords)
            try:
                check_element(ws.group(gname), e)
            except MembershipViolation as exc:
                raise SemanticError(str(exc), line) from None
            ws.add_element(name, gname, e, line)

    for n, raw, line in _lines(text):
        if m := _GROUP_RE.match(line):
            flush()
            cur = ("group", m.group(1), [], [], n)
        elif m := _ELEM_RE.match(line):
            flush()
            if m.group(2) not in ws.groups:
                raise SemanticError(f"unknown group {m.group(2)!r}", n, _col(raw, m.group(2)))
            cur = ("elem", m.group(1), m.group(2), {}, n)
        elif m := _SUMMAND_RE.match(line):
            if cur is None or cur[0] != "group":
                raise ParseError("summand outside a group block", n, 1)
            if cur[3]:
                raise ParseError("summand lines must precede padic lines", n, 1)
            try:
                chi = parse_characteristic(m.group(1))
            except ParseError as exc:
                cls = type(exc)
                raise cls(exc.message, n, _col(raw, "(")) from None
            cur[2].append((chi, _parse_rank(m.group(2), n, raw)))
        elif m := _PADIC_RE.match(line):
            if cur is None or cur[0] != "group":
                raise ParseError("padic outside a group block", n, 1)
            p, N = int(m.group(1)), int(m.group(2))
            copies = int(m.group(3)) if m.group(3) else 2
            if not is_prime(p):
                raise SemanticError(f"{p} is not prime", n, _col(raw, "p="))
            if N < 1 or copies < 1:
                raise SemanticError("precision and copies must be positive", n, 1)
            cur[3].append(PadicBlock(p, N, copies))
        elif m := _COORD_RE.match(line):
            if cur is None or cur[0] != "elem":
                raise ParseError("coord outside an elem block", n, 1)
            i, j = int(m.group(1)), int(m.group(2))
            den = int(m.group(4)) if m.group(4) else 1
            if den == 0:
                raise SemanticError("zero denominator", n, _col(raw, "/"))
            if (i, j) in cur[3]:
                raise SemanticError(f"coordinate {i}.{j} given twice", n, 1)
            cur[3][(i, j)] = Fraction(int(m.group(3)), den)
        else:
            raise ParseError(f"unrecognized line {line!r}", n, 1)
    flush()
    return ws


def parse_group_file(text: str) -> FDGroup | MixedGroup:
    ws = parse_workspace(text)
    if len(ws.groups) != 1 or ws.elements:
        raise ParseError("a group file holds exactly one group block")
    return next(iter(ws.groups.values()))


def parse_element_file(text: str, ws: Workspace) -> Element:
    before = set(ws.elements)
    parse_workspace(text, ws)
    new = [k for k in ws.elements if k not in before]
    if len(new) != 1:
        raise ParseError("an element file holds exactly one elem block")
    return ws.elements[new[0]][1]


def format_group(name: str, G: Carrier) -> str:
    fd = G.rational if isinstance(G, MixedGroup) else G
    lines = [f"group {name}"]
    for chi, m in fd.summands:
        lines.append(f"summand {chi} rank={format_cardinal(m)}")
    if isinstance(G, MixedGroup):
        for b in G.padic_blocks:
            lines.append(f"padic p={b.p} precision={b.precision} copies={b.copies}")
    return "\n".join(lines) + "\n"


def format_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_element(name: str, group: str, e: Element) -> str:
    lines = [f"elem {name} in {group}"]
    for (i, j), v in e.coords:
        lines.append(f"coord {i}.{j} = {format_fraction(v)}")
    return "\n".join(lines) + "\n"


def format_workspace(ws: Workspace) -> str:
    parts = [format_group(n, G) for n, G in ws.groups.items()]
    parts += [format_element(n, g, e) for n, (g, e) in ws.elements.items()]
    return "\n".join(parts)


def element_json(e: Element) -> dict:
    return {f"{i}.{j}": format_fraction(v) for (i, j), v in e.coords}


def group_json(G: Carrier) -> dict:
    fd = G.rational if isinstance(G, MixedGroup) else G
    out = {"summands": [{"chi": str(chi), "rank": format_cardinal(m)} for chi, m in fd.summands]}
    if isinstance(G, MixedGroup):
        out["padic"] = [{"p": b.p, "precision": b.precision, "copies": b.copies}
                        for b in G.padic_blocks]
    return out
