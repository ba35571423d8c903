"""Characteristics (height sequences) and h-types.

A characteristic assigns to every prime an extended height in
``{0, 1, 2, ..., INF}``.  Only finitely described sequences are supported:
a default value (``0`` or ``INF``) plus finitely many exceptional primes.

    >>> x = Characteristic.parse("(0; 2:inf, 3:4)")
    >>> y = Characteristic.parse("(0; 3:1, 5:2)")
    >>> str(x & y)
    '(0; 3:1)'
    >>> str(htype_of(x))
    '[0; 2]'
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .arith import is_prime
from .errors import ParseError, SemanticError, ShiftAtInfinity, ShiftBelowZero

INF = math.inf

ExtHeight = Union[int, float]  # non-negative int, or INF


def is_inf(h: ExtHeight) -> bool:
    return h == INF


def format_height(h: ExtHeight) -> str:
    return "inf" if h == INF else str(int(h))


def parse_height(tok: str) -> ExtHeight:
    tok = tok.strip()
    if tok == "inf":
        return INF
    if not tok.isdigit():
        raise ParseError(f"bad height {tok!r}")
    return int(tok)


def _check_default(default) -> ExtHeight:
    if default == 0:
        return 0
    if default == INF:
        return INF
    raise ValueError(f"default must be 0 or INF, got {default!r}")


@dataclass(frozen=True)
class Characteristic:
    """Finitely described height sequence.

    ``exceptions`` is a sorted tuple of ``(prime, height)`` pairs whose
    height differs from ``default``.  Use :meth:`make` to build one from an
    arbitrary mapping; it drops redundant entries.
    """

    default: ExtHeight
    exceptions: tuple[tuple[int, ExtHeight], ...] = ()

    def __post_init__(self):
        _check_default(self.default)
        last = 1
        for p, h in self.exceptions:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p <= last:
                raise ValueError("exception primes must be strictly increasing")
            last = p
            if h != INF and (not isinstance(h, int) or h < 0):
                raise ValueError(f"bad height {h!r} at {p}")
            if h == self.default:
                raise ValueError(f"redundant exception {p}:{format_height(h)}")

    @classmethod
    def make(cls, default, values: Mapping[int, ExtHeight] | Iterable = ()) -> "Characteristic":
        default = _check_default(default)
        items = dict(values)
        exc = tuple(sorted((p, h if h == INF else int(h))
                           for p, h in items.items() if h != default))
        return cls(default, exc)

    @classmethod
    def zero(cls) -> "Characteristic":
        return cls(0)

    @classmethod
    def top(cls) -> "Characteristic":
        return cls(INF)

    def __call__(self, p: int) -> ExtHeight:
        for q, h in self.exceptions:
            if q == p:
                return h
            if q > p:
                break
        return self.default

    def as_dict(self) -> dict[int, ExtHeight]:
        return dict(self.exceptions)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exceptions)

    @classmethod
    def _trusted(cls, default, exceptions) -> "Characteristic":
        # inputs already validated: skip __post_init__ on the lattice hot path
        obj = object.__new__(cls)
        object.__setattr__(obj, "default", default)
        object.__setattr__(obj, "exceptions", exceptions)
        return obj

    def _pointwise(self, other: "Characteristic", op) -> "Characteristic":
        a, b = dict(self.exceptions), dict(other.exceptions)
        d = op(self.default, other.default)
        exc = []
        for p in sorted(a.keys() | b.keys()):
            h = op(a.get(p, self.default), b.get(p, other.default))
            if h != d:
                exc.append((p, h))
        return Characteristic._trusted(d, tuple(exc))

    def meet(self, other: "Characteristic") -> "Characteristic":
        return self._pointwise(other, min)

    def join(self, other: "Characteristic") -> "Characteristic":
        return self._pointwise(other, max)

    __and__ = meet
    __or__ = join

    def leq(self, other: "Characteristic") -> bool:
        if self.default > other.default:
            return False
        a, b = dict(self.exceptions), dict(other.exceptions)
        return all(a.get(p, self.default) <= b.get(p, other.default) for p in a.keys() | b.keys())

    def equiv(self, other: "Characteristic") -> bool:
        return htype_of(self) == htype_of(other)

    def shift(self, p: int, delta: int) -> "Characteristic":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        h = self(p)
        if delta == 0:
            return self
        if h == INF:
            raise ShiftAtInfinity(f"height at {p} is infinite")
        if h + delta < 0:
            raise ShiftBelowZero(f"height {h} at {p} shifted by {delta}")
        values = self.as_dict()
        values[p] = h + delta
        return Characteristic.make(self.default, values)

    def __str__(self) -> str:
        body = ", ".join(f"{p}:{format_height(h)}" for p, h in self.exceptions)
        head = format_height(self.default)
        return f"({head};{' ' + body if body else ''})"

    @classmethod
    def parse(cls, text: str) -> "Characteristic":
        return parse_characteristic(text)


def char_meet(x: Characteristic, y: Characteristic) -> Characteristic:
    return x.meet(y)


def char_join(x: Characteristic, y: Characteristic) -> Characteristic:
    return x.join(y)


def char_leq(x: Characteristic, y: Characteristic) -> bool:
    return x.leq(y)


def char_equiv(x: Characteristic, y: Characteristic) -> bool:
    return x.equiv(y)


def char_shift(x: Characteristic, p: int, delta: int) -> Characteristic:
    """Multiply (delta > 0) or divide (delta < 0) a witness by p**|delta|."""
    return x.shift(p, delta)


@dataclass(frozen=True, order=True)
class HType:
    """Canonical representative of an equivalence class of characteristics.

    ``flips`` holds the primes whose value class (finite/infinite) is
    opposite to ``base``.
    """

    base: ExtHeight
    flips: tuple[int, ...] = ()

    def __post_init__(self):
        _check_default(self.base)
        if list(self.flips) != sorted(set(self.flips)):
            raise ValueError("flips must be sorted and distinct")
        for p in self.flips:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def make(cls, base, flips: Iterable[int] = ()) -> "HType":
        return cls(_check_default(base), tuple(sorted(set(flips))))

    def representative(self) -> Characteristic:
        """The characteristic with value 0 at every finite position."""
        other = 0 if self.base == INF else INF
        return Characteristic.make(self.base, {p: other for p in self.flips})

    def is_finite_at(self, p: int) -> bool:
        return (self.base == 0) != (p in self.flips)

    def meet(self, other: "HType") -> "HType":
        return htype_of(self.representative().meet(other.representative()))

    def join(self, other: "HType") -> "HType":
        return htype_of(self.representative().join(other.representative()))

    __and__ = meet
    __or__ = join

    def leq(self, other: "HType") -> bool:
        # representatives are 0 wherever finite, so comparing them decides
        # whether any pair of representatives is comparable
        return self.representative().leq(other.representative())

    def lt(self, other: "HType") -> bool:
        return self != other and self.leq(other)

    def __str__(self) -> str:
        body = ", ".join(str(p) for p in self.flips)
        return f"[{format_height(self.base)};{' ' + body if body else ''}]"

    @classmethod
    def parse(cls, text: str) -> "HType":
        return parse_htype(text)


def htype_of(x: Characteristic) -> HType:
    flips = [p for p, h in x.exceptions if (h == INF) != (x.default == INF)]
    return HType(x.default, tuple(flips))


def htype_meet(s: HType, t: HType) -> HType:
    return s.meet(t)


def htype_leq(s: HType, t: HType) -> bool:
    return s.leq(t)


_CHAR_RE = re.compile(r"^\(\s*(0|inf)\s*;(.*)\)$")
_HTYPE_RE = re.compile(r"^\[\s*(0|inf)\s*;(.*)\]$")


def parse_characteristic(text: str) -> Characteristic:
    """Parse ``(<0|inf>; p1:v1, p2:v2, ...)`` with strictly increasing primes."""
    m = _CHAR_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed characteristic {text!r}")
    default = parse_height(m.group(1))
    body = m.group(2).strip()
    items = []
    if body:
        for part in body.split(","):
            if ":" not in part:
                raise ParseError(f"expected p:v, got {part.strip()!r}")
            ps, vs = part.split(":", 1)
            ps = ps.strip()
            if not ps.isdigit():
                raise ParseError(f"bad prime {ps!r}")
            items.append((int(ps), parse_height(vs)))
    last = 1
    for p, h in items:
        if not is_prime(p):
            raise SemanticError(f"{p} is not prime")
        if p <= last:
            raise SemanticError("primes must be strictly increasing")
        last = p
        if h == default:
            raise SemanticError(f"redundant exception {p}:{format_height(h)}")
    return Characteristic(default, tuple(items))


def parse_htype(text: str) -> HType:
    """Parse ``[<0|inf>; p1, p2, ...]``."""
    m = _HTYPE_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed h-type {text!r}")
    base = parse_height(m.group(1))
    body = m.group(2).strip()
    primes = []
    if body:
        for part in body.split(","):
            part = part.strip()
            if not part.isdigit():
                raise ParseError(f"bad prime {part!r}")
            primes.append(int(part))
    if primes != sorted(set(primes)):
        raise SemanticError("primes must be strictly increasing")
    for p in primes:
        if not is_prime(p):
            raise SemanticError(f"{p} is not prime")
    return HType(base, tuple(primes))
