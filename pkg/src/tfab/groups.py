"""Fully decomposable groups, their elements, heights and Szmielew data.

An :class:`FDGroup` is a list of rank-1 summands ``(chi, multiplicity)``;
summand ``i`` with multiplicity ``m`` contributes ``m`` copies of the
subgroup of Q generated by ``p**-k`` for ``k <= chi(p)``.  Elements are
sparse maps ``(summand, copy) -> Fraction``.

:class:`MixedGroup` adds blocks of p-adic integers.  Coordinates in such a
block are exact elements of Z_(p) (rationals with denominator prime to p),
which is a pure subgroup of J_p, so every height computed here is the height
in J_p itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

from .arith import is_prime, prime_factors, vp
from .characteristics import INF, Characteristic, ExtHeight, HType, htype_of
from .errors import MembershipViolation, ZeroElement


class _Omega:
    """The single infinite multiplicity; absorbs addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    __str__ = lambda self: "omega"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("OMEGA")

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()

Cardinal = Union[int, _Omega]


def card_sum(values: Iterable[Cardinal]) -> Cardinal:
    total: Cardinal = 0
    for v in values:
        total = total + v
    return total


def format_cardinal(c: Cardinal) -> str:
    return "omega" if c is OMEGA else str(c)


# -- rank 1 ------------------------------------------------------------------

@dataclass(frozen=True)
class RationalGroup:
    """Subgroup of Q generated by ``p**-k`` for every prime p and k <= chi(p)."""

    chi: Characteristic

    def contains(self, x) -> bool:
        return member(Fraction(x), self)

    def height(self, x, p: int) -> ExtHeight:
        return height_rank1(self, Fraction(x), p)


def member(x: Fraction, B: RationalGroup | Characteristic) -> bool:
    chi = B.chi if isinstance(B, RationalGroup) else B
    x = Fraction(x)
    for p in prime_factors(x.denominator):
        if vp(x.denominator, p) > chi(p):
            return False
    return True


def height_rank1(B: RationalGroup | Characteristic, x: Fraction, p: int) -> ExtHeight:
    chi = B.chi if isinstance(B, RationalGroup) else B
    x = Fraction(x)
    if x == 0:
        raise ZeroElement("h_p(0) is not reported")
    h = chi(p)
    if h == INF:
        return INF
    return h + vp(x, p)


# -- carriers ----------------------------------------------------------------

def _check_mult(m) -> Cardinal:
    if m is OMEGA:
        return m
    if isinstance(m, int) and m > 0:
        return m
    raise ValueError(f"multiplicity must be a positive int or OMEGA, got {m!r}")


@dataclass(frozen=True)
class FDGroup:
    """Direct sum of rank-1 groups, summand order preserved."""

    summands: tuple[tuple[Characteristic, Cardinal], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "summands",
                           tuple((chi, _check_mult(m)) for chi, m in self.summands))

    @classmethod
    def of(cls, *pairs) -> "FDGroup":
        return cls(tuple(pairs))

    # carrier protocol
    def summand_chis(self) -> list[Characteristic]:
        return [chi for chi, _ in self.summands]

    def multiplicities(self) -> list[Cardinal]:
        return [m for _, m in self.summands]

    def named_primes(self) -> set[int]:
        out = set()
        for chi, _ in self.summands:
            out.update(chi.primes)
        return out

    def direct_sum(self, other: "FDGroup") -> "FDGroup":
        return FDGroup(self.summands + other.summands)

    @property
    def rank(self) -> Cardinal:
        return card_sum(self.multiplicities())

    def htypes(self) -> list[HType]:
        return [htype_of(chi) for chi, _ in self.summands]


def padic_chi(p: int) -> Characteristic:
    """Height behaviour of Z_(p): p-height is the valuation, divisible by every other prime."""
    return Characteristic.make(INF, {p: 0})


@dataclass(frozen=True)
class PadicBlock:
    p: int
    precision: int
    copies: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1 or self.copies < 1:
            raise ValueError("precision and copies must be positive")


@dataclass(frozen=True)
class MixedGroup:
    """``rational`` summands first, then one summand per p-adic block."""

    padic_blocks: tuple[PadicBlock, ...] = ()
    rational: FDGroup = field(default_factory=FDGroup)

    def summand_chis(self) -> list[Characteristic]:
        return self.rational.summand_chis() + [padic_chi(b.p) for b in self.padic_blocks]

    def multiplicities(self) -> list[Cardinal]:
        return self.rational.multiplicities() + [b.copies for b in self.padic_blocks]

    def named_primes(self) -> set[int]:
        return self.rational.named_primes() | {b.p for b in self.padic_blocks}

    def block_index(self, i: int) -> int:
        """Summand index of the i-th p-adic block."""
        return len(self.rational.summands) + i

    def precision_at(self, p: int) -> int | None:
        ns = [b.precision for b in self.padic_blocks if b.p == p]
        return min(ns) if ns else None


Carrier = Union[FDGroup, MixedGroup]


# -- elements ----------------------------------------------------------------

Key = tuple[int, int]


@dataclass(frozen=True)
class Element:
    """Sparse exact-rational vector; zero coordinates are never stored."""

    coords: tuple[tuple[Key, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[Key, object]) -> "Element":
        items = []
        for k, v in d.items():
            v = Fraction(v)
            if v != 0:
                items.append(((int(k[0]), int(k[1])), v))
        return cls(tuple(sorted(items)))

    @classmethod
    def unit(cls, i: int, j: int = 0, value=1) -> "Element":
        return cls.from_dict({(i, j): value})

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.coords)

    def __bool__(self):
        return bool(self.coords)

    def __getitem__(self, key: Key) -> Fraction:
        return self.as_dict().get(key, Fraction(0))

    def __add__(self, other: "Element") -> "Element":
        d = self.as_dict()
        for k, v in other.coords:
            d[k] = d.get(k, 0) + v
        return Element.from_dict(d)

    def __neg__(self) -> "Element":
        return Element(tuple((k, -v) for k, v in self.coords))

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if c == 0:
            return Element()
        return Element(tuple((k, v * c) for k, v in self.coords))

    def __mul__(self, c) -> "Element":
        return self.scale(c)

    __rmul__ = __mul__

    def support(self) -> list[Key]:
        return [k for k, _ in self.coords]

    def __str__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{v}*e[{i}.{j}]" for (i, j), v in self.coords)


def combine(coeffs: Iterable, elems: Iterable[Element]) -> Element:
    out = Element()
    for c, e in zip(coeffs, elems):
        if c:
            out = out + e.scale(c)
    return out


def check_element(A: Carrier, a: Element) -> Element:
    chis = A.summand_chis()
    mults = A.multiplicities()
    for (i, j), v in a.coords:
        if not 0 <= i < len(chis):
            raise MembershipViolation(f"summand index {i} out of range")
        if mults[i] is not OMEGA and not 0 <= j < mults[i]:
            raise MembershipViolation(f"copy index {j} out of range for summand {i}")
        if j < 0:
            raise MembershipViolation(f"negative copy index {j}")
        if not member(v, chis[i]):
            raise MembershipViolation(f"coordinate {v} not in summand {i} {chis[i]}")
    return a


def is_member(A: Carrier, a: Element) -> bool:
    try:
        check_element(A, a)
    except MembershipViolation:
        return False
    return True


def divide(A: Carrier, a: Element, n: int) -> Element:
    """Exact division by a nonzero integer, checked to stay in the carrier."""
    out = a.scale(Fraction(1, n))
    try:
        check_element(A, out)
    except MembershipViolation as exc:
        raise MembershipViolation(f"{a} is not divisible by {n}: {exc}") from None
    return out


def elem_height(A: Carrier, a: Element, p: int) -> ExtHeight:
    if not a:
        raise ZeroElement("h_p(0) is not reported")
    chis = A.summand_chis()
    return min(height_rank1(chis[i], v, p) for (i, _), v in a.coords)


def relevant_primes(A: Carrier, *elems: Element) -> set[int]:
    """Primes where some height of the given elements can differ from the default."""
    out = set(A.named_primes())
    for e in elems:
        for _, v in e.coords:
            out.update(prime_factors(v.numerator))
            out.update(prime_factors(v.denominator))
    return out


def elem_char(A: Carrier, a: Element) -> Characteristic:
    if not a:
        raise ZeroElement("the zero element has no characteristic")
    chis = A.summand_chis()
    default = min(chis[i].default for (i, _), _ in a.coords)
    values = {p: elem_height(A, a, p) for p in relevant_primes(A, a)}
    return Characteristic.make(default, values)


def elem_htype(A: Carrier, a: Element) -> HType:
    return htype_of(elem_char(A, a))


# -- Szmielew invariants -----------------------------------------------------

@dataclass(frozen=True)
class SzmielewProfile:
    """Szmielew invariants of a torsion-free group.

    D and U vanish identically and Exp is infinite; only Tf carries
    information, stored as a default value plus exceptional primes.
    """

    tf_default: Cardinal
    tf_exceptions: tuple[tuple[int, Cardinal], ...] = ()

    D = 0
    U = 0
    Exp = INF

    def tf(self, p: int) -> Cardinal:
        return dict(self.tf_exceptions).get(p, self.tf_default)

    def to_json(self) -> dict:
        return {
            "D": 0,
            "U": 0,
            "Exp": "inf",
            "Tf": {
                "default": _card_json(self.tf_default),
                "exceptions": {str(p): _card_json(v) for p, v in self.tf_exceptions},
            },
        }


def _card_json(c: Cardinal):
    return "omega" if c is OMEGA else c


def tf_invariant(A: FDGroup, p: int) -> Cardinal:
    return card_sum(m for chi, m in A.summands if chi(p) != INF)


def szmielew_profile(A: FDGroup) -> SzmielewProfile:
    default = card_sum(m for chi, m in A.summands if chi.default == 0)
    exc = []
    for p in sorted(A.named_primes()):
        v = tf_invariant(A, p)
        if v != default:
            exc.append((p, v))
    return SzmielewProfile(default, tuple(exc))


def elementarily_equivalent(A1: FDGroup, A2: FDGroup) -> bool:
    P1, P2 = szmielew_profile(A1), szmielew_profile(A2)
    primes = A1.named_primes() | A2.named_primes()
    if P1.tf_default != P2.tf_default:
        return False
    return all(P1.tf(p) == P2.tf(p) for p in primes)


def meet_closure(types: Iterable[HType]) -> set[HType]:
    closure = set(types)
    frontier = set(closure)
    while frontier:
        new = set()
        for s in frontier:
            for t in closure:
                m = s.meet(t)
                if m not in closure:
                    new.add(m)
        closure |= new
        frontier = new
    return closure


def realizable_htypes(A: FDGroup) -> set[HType]:
    """h-types of the nonzero elements of A."""
    return meet_closure(A.htypes())


def iso1_equivalent(A1: FDGroup, A2: FDGroup) -> bool:
    return elementarily_equivalent(A1, A2) and realizable_htypes(A1) == realizable_htypes(A2)


def subset_meets(types: list[HType]) -> set[HType]:
    """Meets over all nonempty subsets, by enumeration (used as a cross-check)."""
    out = set()
    for r in range(1, len(types) + 1):
        for sub in combinations(types, r):
            m = sub[0]
            for t in sub[1:]:
                m = m.meet(t)
            out.add(m)
    return out
