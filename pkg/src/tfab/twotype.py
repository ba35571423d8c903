"""2-types: per-prime local data of a pair of elements, classification and realization.

A pair (x, y) is first rewritten over witnesses: one element when the pair
is dependent, otherwise the Hermite-normal-form basis of the lattice
Zx + Zy.  At each prime p the witness pair (a, b) falls into one of:

1. ``IndepWithInfinite``: a or b (or both) has infinite p-height;
2. ``IndepFinite``: finite heights and no combination raises the height;
3. ``SplitInfinite``: some alpha*p**(l-k)*a + beta*b has infinite p-height;
4. ``FiniteLadder`` / ``InfiniteLadder``: a dependency ladder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Union

from .arith import bezout_min_first, prime_factors, xgcd
from .characteristics import INF, Characteristic, format_height
from .errors import (IndeterminateAtPrecision, InsufficientPrecision, InvalidLadder,
                     InvalidTwoType, ZeroElement)
from .groups import (Carrier, Element, FDGroup, MixedGroup, PadicBlock, combine,
                     elem_char, elem_height)
from .padic import Exact, Ladder, greedy_ladder, realize_ladder
from .reduction import primitive, rational_kernel, reduce_tuple, split_infinite_dependency


# -- local types -------------------------------------------------------------

@dataclass(frozen=True)
class IndepWithInfinite:
    """``which`` of a, b ('a', 'b' or 'both') has infinite height; ``height`` is the other's."""

    which: str
    height: int | None = None
    case = 1

    def data(self) -> dict:
        return {"which": self.which, "height": self.height}


@dataclass(frozen=True)
class IndepFinite:
    k: int
    l: int
    case = 2

    def data(self) -> dict:
        return {"k": self.k, "l": self.l}


@dataclass(frozen=True)
class SplitInfinite:
    """alpha*p**(l-k)*u + beta*v has infinite height, (u, v) = (b, a) if swapped."""

    k: int
    l: int
    alpha: int
    beta: int
    swapped: bool = False
    case = 3

    def data(self) -> dict:
        return {"k": self.k, "l": self.l, "alpha": self.alpha, "beta": self.beta,
                "swapped": self.swapped}


@dataclass(frozen=True)
class FiniteLadder:
    ladder: Ladder
    swapped: bool = False
    case = 4

    def data(self) -> dict:
        return _ladder_data(self.ladder, self.swapped)


@dataclass(frozen=True)
class InfiniteLadder:
    ladder: Ladder
    swapped: bool = False
    case = 4

    def data(self) -> dict:
        return _ladder_data(self.ladder, self.swapped)


def _ladder_data(L: Ladder, swapped: bool) -> dict:
    return {"k": L.k, "l": L.l, "steps": [list(s) for s in L.steps],
            "infinite": L.infinite, "swapped": swapped}


PrimeLocalType = Union[IndepWithInfinite, IndepFinite, SplitInfinite, FiniteLadder,
                       InfiniteLadder]

_KINDS = {"IndepWithInfinite": IndepWithInfinite, "IndepFinite": IndepFinite,
          "SplitInfinite": SplitInfinite, "FiniteLadder": FiniteLadder,
          "InfiniteLadder": InfiniteLadder}


def local_to_json(t: PrimeLocalType) -> dict:
    return {"case": t.case, "kind": type(t).__name__, "data": t.data()}


def local_from_json(obj: dict, p: int | None) -> PrimeLocalType:
    kind = obj["kind"]
    d = obj["data"]
    if kind == "IndepWithInfinite":
        return IndepWithInfinite(d["which"], d.get("height"))
    if kind == "IndepFinite":
        return IndepFinite(d["k"], d["l"])
    if kind == "SplitInfinite":
        return SplitInfinite(d["k"], d["l"], d["alpha"], d["beta"], d.get("swapped", False))
    if kind in ("FiniteLadder", "InfiniteLadder"):
        if p is None:
            raise InvalidTwoType("a ladder cannot be the default local type")
        L = Ladder(p, d["k"], d["l"], tuple(tuple(s) for s in d["steps"]), d["infinite"])
        return _KINDS[kind](L, d.get("swapped", False))
    raise InvalidTwoType(f"unknown local kind {kind!r}")


# -- the invariant -----------------------------------------------------------

@dataclass(frozen=True)
class TwoType:
    rank: int
    expression: tuple[tuple[int, ...], ...]
    char_single: Characteristic | None = None
    locals: tuple[tuple[int, PrimeLocalType], ...] = ()
    default: PrimeLocalType | None = None

    @classmethod
    def make(cls, rank, expression, char_single=None, locals=None, default=None) -> "TwoType":
        """Normalize: sort primes and drop local data equal to the default."""
        expr = tuple(tuple(int(v) for v in row) for row in expression)
        items = tuple(sorted((p, t) for p, t in (locals or {}).items() if t != default))
        return cls(rank, expr, char_single, items, default)

    def local(self, p: int) -> PrimeLocalType | None:
        return dict(self.locals).get(p, self.default)

    def to_json(self) -> dict:
        out = {"rank": self.rank, "expression": [list(r) for r in self.expression]}
        if self.rank == 1:
            out["char_single"] = str(self.char_single)
        else:
            out["locals"] = {str(p): local_to_json(t) for p, t in self.locals}
            out["default"] = local_to_json(self.default)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "TwoType":
        rank = obj["rank"]
        expr = obj["expression"]
        if rank == 1:
            return cls.make(1, expr, Characteristic.parse(obj["char_single"]))
        locs = {int(p): local_from_json(v, int(p)) for p, v in obj.get("locals", {}).items()}
        return cls.make(2, expr, None, locs, local_from_json(obj["default"], None))


def _expr_ok(tt: TwoType) -> list[str]:
    out = []
    E = tt.expression
    if len(E) != 2 or any(len(r) != tt.rank for r in E):
        return [f"expression must be 2x{tt.rank}"]
    if tt.rank == 1:
        (m1,), (m2,) = E
        if m1 == 0 or m2 == 0:
            out.append("x and y must be nonzero")
        elif gcd(m1, m2) != 1:
            out.append("expression entries must be coprime")
        elif m2 < 0:
            out.append("second expression entry must be positive")
    else:
        det = E[0][0] * E[1][1] - E[0][1] * E[1][0]
        if abs(det) != 1:
            out.append(f"expression must be unimodular, determinant is {det}")
    return out


def validate_two_type(tt: TwoType) -> tuple[bool, list[str]]:
    diags = []
    if tt.rank not in (1, 2):
        return False, [f"rank must be 1 or 2, got {tt.rank}"]
    diags += _expr_ok(tt)
    if tt.rank == 1:
        if tt.char_single is None:
            diags.append("rank 1 needs char_single")
        if tt.locals:
            diags.append("rank 1 carries no local data")
        return not diags, diags
    D = tt.default
    if D not in (IndepFinite(0, 0), IndepWithInfinite("b", 0), IndepWithInfinite("both", None)):
        diags.append(f"default local type {D} is not one of IndepFinite(0,0), "
                     "IndepWithInfinite(b,0), IndepWithInfinite(both)")
    for p, t in tt.locals:
        diags += [f"p={p}: {m}" for m in _local_diags(p, t)]
    return not diags, diags


def _local_diags(p: int, t: PrimeLocalType) -> list[str]:
    out = []
    if isinstance(t, IndepWithInfinite):
        if t.which not in ("a", "b", "both"):
            out.append(f"which must be a, b or both, got {t.which!r}")
        elif t.which == "both" and t.height is not None:
            out.append("both heights infinite: no finite height to record")
        elif t.which != "both" and (t.height is None or t.height < 0):
            out.append("the finite height must be a non-negative integer")
    elif isinstance(t, IndepFinite):
        if t.k < 0 or t.l < 0:
            out.append("heights must be non-negative")
    elif isinstance(t, SplitInfinite):
        if t.k < 0 or t.l < t.k:
            out.append(f"need 0 <= k <= l, got k={t.k}, l={t.l}")
        if t.swapped and t.k == t.l:
            out.append("swapped requires k < l")
        if gcd(t.alpha, t.beta) != 1:
            out.append("alpha and beta must be coprime")
        if t.alpha <= 0:
            out.append("alpha must be positive")
        if t.alpha * t.beta % p == 0:
            out.append(f"{p} divides alpha*beta")
    elif isinstance(t, (FiniteLadder, InfiniteLadder)):
        L = t.ladder
        if L.p != p:
            out.append(f"ladder prime {L.p} differs from {p}")
        out += L.diagnostics()
        if not L.steps:
            out.append("a ladder needs at least one step (use IndepFinite)")
        if L.infinite != isinstance(t, InfiniteLadder):
            out.append("ladder infinite flag does not match the local kind")
        if t.swapped and L.k == L.l:
            out.append("swapped requires k < l")
        if not L.is_canonical() and L.is_valid():
            out.append("ladder pairs are not in greedy normal form")
    else:
        out.append(f"unknown local type {t!r}")
    return out


# -- Hermite normal form of two rows ----------------------------------------

def hnf2(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style HNF H = U * rows for a 2-row integer matrix of rank 2."""
    U = [[1, 0], [0, 1]]
    R = [list(rows[0]), list(rows[1])]
    ncol = len(R[0])

    def apply(T):
        nonlocal U, R
        U = [[T[i][0] * U[0][j] + T[i][1] * U[1][j] for j in range(2)] for i in range(2)]
        R = [[T[i][0] * R[0][j] + T[i][1] * R[1][j] for j in range(ncol)] for i in range(2)]

    c1 = next(c for c in range(ncol) if R[0][c] or R[1][c])
    g, x, y = xgcd(R[0][c1], R[1][c1])
    u, v = R[0][c1] // g, R[1][c1] // g
    apply([[x, y], [-v, u]])
    c2 = next((c for c in range(ncol) if R[1][c]), None)
    if c2 is None:
        raise ValueError("rows are dependent")
    if R[1][c2] < 0:
        apply([[1, 0], [0, -1]])
    q = R[0][c2] // R[1][c2]
    apply([[1, -q], [0, 1]])
    return R, U


def _column_order(A: Carrier, elems) -> list:
    chis = A.summand_chis()
    keys = {k for e in elems for k in e.support()}
    return sorted(keys, key=lambda k: (chis[k[0]].default != 0, k))


def canonical_witnesses(A: Carrier, x: Element, y: Element):
    """HNF basis (a, b) of Zx + Zy and the unimodular M with (x, y) = M (a, b)."""
    keys = _column_order(A, (x, y))
    D = lcm(*(v.denominator for e in (x, y) for _, v in e.coords))
    rows = [[int(e[k] * D) for k in keys] for e in (x, y)]
    H, U = hnf2(rows)
    a = Element.from_dict({k: Fraction(v, D) for k, v in zip(keys, H[0])})
    b = Element.from_dict({k: Fraction(v, D) for k, v in zip(keys, H[1])})
    det = U[0][0] * U[1][1] - U[0][1] * U[1][0]
    M = [[U[1][1] * det, -U[0][1] * det], [-U[1][0] * det, U[0][0] * det]]
    return a, b, M


# -- classification ----------------------------------------------------------

def _finite_part(A: Carrier, e: Element, p: int) -> dict:
    chis = A.summand_chis()
    return {k: v for k, v in e.coords if chis[k[0]](p) != INF}


def _default_part(A: Carrier, e: Element) -> dict:
    chis = A.summand_chis()
    return {k: v for k, v in e.coords if chis[k[0]].default == 0}


def _max_level(A: Carrier, p: int):
    if isinstance(A, MixedGroup):
        N = A.precision_at(p)
        if N is not None:
            return N - 1
    return INF


def classify_local(A: Carrier, a: Element, b: Element, p: int) -> PrimeLocalType:
    ha, hb = elem_height(A, a, p), elem_height(A, b, p)
    if ha == INF and hb == INF:
        return IndepWithInfinite("both", None)
    if ha == INF:
        return IndepWithInfinite("a", int(hb))
    if hb == INF:
        return IndepWithInfinite("b", int(ha))
    swapped = ha > hb
    u, v = (b, a) if swapped else (a, b)
    k, l = int(min(ha, hb)), int(max(ha, hb))
    s = l - k
    fu, fv = _finite_part(A, u, p), _finite_part(A, v, p)
    keys = sorted(set(fu) | set(fv))
    rows = [[Fraction(fu.get(c, 0)) * p ** s for c in keys], [Fraction(fv.get(c, 0)) for c in keys]]
    ker = rational_kernel(rows)
    if ker:
        alpha, beta = primitive(ker[0])
        split_infinite_dependency(A, u, v, alpha, beta, k, l, p)
        return SplitInfinite(k, l, alpha, beta, swapped)

    def comb_val(TA, TB):
        return Exact(elem_height(A, u.scale(TA * p ** s) + v.scale(TB), p))

    L = greedy_ladder(p, k, l, comb_val, _max_level(A, p))
    if not L.steps and not L.infinite:
        return IndepFinite(int(ha), int(hb))
    if L.infinite and not L.steps:
        raise IndeterminateAtPrecision(
            f"p={p}: the first raising combination lies beyond the modelled precision")
    return (InfiniteLadder if L.infinite else FiniteLadder)(L, swapped)


def _factor_rational(v: Fraction) -> set[int]:
    return set(prime_factors(abs(v.numerator))) | set(prime_factors(v.denominator))


def _default_and_primes(A: Carrier, a: Element, b: Element):
    fa, fb = _default_part(A, a), _default_part(A, b)
    keys = sorted(set(fa) | set(fb))
    primes = set(A.named_primes())
    for v in list(fa.values()) + list(fb.values()):
        primes |= _factor_rational(v)
    rows = [[Fraction(fa.get(c, 0)) for c in keys], [Fraction(fb.get(c, 0)) for c in keys]]
    rank = 2 - len(rational_kernel(rows)) if keys else 0
    if rank == 2:
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                m = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
                if m:
                    primes |= _factor_rational(m)
        return IndepFinite(0, 0), primes
    if rank == 1:
        if not fb:
            return IndepWithInfinite("b", 0), primes
        # HNF ordering puts default-finite columns first, so b's part vanishes
        raise InvalidTwoType("witnesses are not in canonical form")
    return IndepWithInfinite("both", None), primes


def classify_pair(A: Carrier, x: Element, y: Element) -> TwoType:
    if not x or not y:
        raise ZeroElement("classify_pair needs nonzero x and y")
    red = reduce_tuple(A, [x, y])
    if len(red.basis) == 1:
        return TwoType.make(1, red.expression, elem_char(A, red.basis[0]))
    a, b, M = canonical_witnesses(A, x, y)
    default, primes = _default_and_primes(A, a, b)
    locs = {p: classify_local(A, a, b, p) for p in sorted(primes)}
    return TwoType.make(2, M, None, locs, default)


def witness_pair(A: Carrier, x: Element, y: Element) -> tuple[Element, Element] | tuple[Element]:
    red = reduce_tuple(A, [x, y])
    if len(red.basis) == 1:
        return (red.basis[0],)
    a, b, _ = canonical_witnesses(A, x, y)
    return a, b


# -- realization -------------------------------------------------------------

@dataclass
class Realization:
    carrier: MixedGroup
    x: Element
    y: Element
    witnesses: tuple[Element, ...] = field(default_factory=tuple)


def realize_two_type(tt: TwoType, N: int) -> Realization:
    """Build J_p + J_p blocks, a free part and only the Q copies the type needs, then plant."""
    ok, diags = validate_two_type(tt)
    if not ok:
        raise InvalidTwoType("; ".join(diags))
    if tt.rank == 1:
        carrier = MixedGroup((), FDGroup(((tt.char_single, 1),)))
        w = Element.unit(0, 0)
        (m1,), (m2,) = tt.expression
        return Realization(carrier, w.scale(m1), w.scale(m2), (w,))
    P = [p for p, _ in tt.locals]
    splits = [p for p, t in tt.locals if isinstance(t, SplitInfinite)]
    free_mult = {IndepFinite(0, 0): 2, IndepWithInfinite("b", 0): 1}.get(tt.default, 0)
    # Q copies only where the default needs an infinitely divisible coordinate
    need_qa = tt.default == IndepWithInfinite("both", None)
    need_qb = free_mult < 2
    nq = int(need_qa) + int(need_qb)
    summands = []
    if free_mult:
        summands.append((Characteristic.make(0, {p: INF for p in P}), free_mult))
    qi = len(summands)
    if nq + len(splits):
        summands.append((Characteristic.top(), nq + len(splits)))
    blocks = tuple(PadicBlock(p, N, 2) for p in P)
    carrier = MixedGroup(blocks, FDGroup(tuple(summands)))
    da, db = {}, {}
    if need_qa:
        da[(qi, 0)] = 1
    if need_qb:
        db[(qi, int(need_qa))] = 1
    if free_mult >= 1:
        da[(0, 0)] = 1
    if free_mult == 2:
        db[(0, 1)] = 1
    for bi, (p, t) in enumerate(tt.locals):
        I = carrier.block_index(bi)
        ua, ub = _plant(p, t, N, I, (qi, nq + splits.index(p)) if p in splits else None)
        for key, v in ua.items():
            da[key] = da.get(key, 0) + v
        for key, v in ub.items():
            db[key] = db.get(key, 0) + v
    a, b = Element.from_dict(da), Element.from_dict(db)
    (m11, m12), (m21, m22) = tt.expression
    x = combine((m11, m12), (a, b))
    y = combine((m21, m22), (a, b))
    return Realization(carrier, x, y, (a, b))


def _plant(p, t, N, I, cq):
    """Coordinates contributed at prime p to (a, b)."""
    if isinstance(t, IndepWithInfinite):
        if t.which == "a":
            return {}, {(I, 0): p ** t.height}
        if t.which == "b":
            return {(I, 0): p ** t.height}, {}
        return {}, {}
    if isinstance(t, IndepFinite):
        return {(I, 0): p ** t.k}, {(I, 1): p ** t.l}
    if isinstance(t, SplitInfinite):
        s = t.l - t.k
        ps = p ** s
        delta, gamma = bezout_min_first(-t.beta, t.alpha * ps)
        d = p ** t.k
        u = {cq: gamma * ps, (I, 0): -t.beta * d}
        v = {cq: -delta * ps, (I, 0): t.alpha * ps * d}
        return (v, u) if t.swapped else (u, v)
    L = t.ladder
    if L.steps and N <= L.ts[-1] + 1:
        raise InsufficientPrecision(f"p={p}: need precision > {L.ts[-1] + 1}, got {N}")
    try:
        pair = realize_ladder(L, N)
    except InvalidLadder as exc:
        raise InvalidTwoType(f"p={p}: {exc}") from None
    u = {(I, 0): pair.a[0].residue, (I, 1): pair.a[1].residue}
    v = {(I, 0): pair.b[0].residue, (I, 1): pair.b[1].residue}
    if L.infinite:
        # exact lift of the empty tail: keep the pair independent beyond precision
        v[(I, 1)] = p ** (L.l + N)
    return (v, u) if t.swapped else (u, v)


def describe_local(t: PrimeLocalType) -> str:
    if isinstance(t, IndepWithInfinite):
        if t.which == "both":
            return "case 1: both heights infinite"
        return f"case 1: h({t.which}) infinite, other height {format_height(t.height)}"
    if isinstance(t, IndepFinite):
        return f"case 2: independent, heights {t.k}, {t.l}"
    if isinstance(t, SplitInfinite):
        tag = " (roles swapped)" if t.swapped else ""
        return f"case 3: k={t.k}, l={t.l}, alpha={t.alpha}, beta={t.beta}{tag}"
    tag = " (roles swapped)" if t.swapped else ""
    return f"case 4: ladder {t.ladder}{tag}"
