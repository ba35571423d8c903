"""Truncated p-adic integers and dependency ladders.

A pair ``(a, b)`` of p-adic elements with heights ``k <= l`` has a ladder
``l < t_1 < t_2 < ...`` with residue pairs ``(alpha_i, beta_i)`` when the
accumulated combination

    c_i = A_i * p**(l-k) * a + B_i * b,
    A_i = alpha_1 + alpha_2 p**(t_1 - l) + ... + alpha_i p**(t_{i-1} - l)

(and B_i likewise) has height exactly ``t_i``.  ``realize_ladder`` builds a
pair in J_p + J_p for a given ladder; ``extract_ladder`` reads the ladder
back greedily.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from math import gcd
from typing import Callable, Sequence

from .arith import is_prime
from .characteristics import INF
from .errors import (IndeterminateAtPrecision, InsufficientPrecision, InvalidLadder, ParseError,
                     MixedPrecision, MixedPrime, PreconditionViolated)


@dataclass(frozen=True)
class TruncatedPAdic:
    p: int
    N: int
    residue: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.p ** self.N)

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    def _check(self, other: "TruncatedPAdic"):
        if self.p != other.p:
            raise MixedPrime(f"{self.p} vs {other.p}")
        if self.N != other.N:
            raise MixedPrecision(f"{self.N} vs {other.N}")

    def __add__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        self._check(other)
        return TruncatedPAdic(self.p, self.N, self.residue + other.residue)

    def __sub__(self, other: "TruncatedPAdic") -> "TruncatedPAdic":
        self._check(other)
        return TruncatedPAdic(self.p, self.N, self.residue - other.residue)

    def __neg__(self) -> "TruncatedPAdic":
        return TruncatedPAdic(self.p, self.N, -self.residue)

    def scale(self, n: int) -> "TruncatedPAdic":
        return TruncatedPAdic(self.p, self.N, self.residue * n)

    def valuation(self) -> "PadicValuation":
        return valuation(self)

    def digits(self) -> list[int]:
        """Base-p digits, least significant first, exactly N of them."""
        r, out = self.residue, []
        for _ in range(self.N):
            r, d = divmod(r, self.p)
            out.append(d)
        return out


def padic_arith(x: TruncatedPAdic, y: TruncatedPAdic | int, op: str) -> TruncatedPAdic:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "scale":
        return x.scale(int(y))
    raise ValueError(f"unknown op {op!r}")


@total_ordering
@dataclass(frozen=True)
class PadicValuation:
    """``Exact(k)`` when ``exact`` else ``AtLeast(value)``.

    ``AtLeast(INF)`` is used for genuinely infinite heights coming from
    exact carriers.
    """

    value: float
    exact: bool = True

    def _key(self):
        return (self.value, 0 if self.exact else 1)

    def __lt__(self, other):
        return self._key() < other._key()

    def exceeds(self, level) -> bool | None:
        """True/False if decidable, None if the value could be on either side."""
        if self.exact or self.value > level:
            return self.value > level
        return None

    def __str__(self):
        v = "inf" if self.value == INF else str(int(self.value))
        return f"Exact({v})" if self.exact else f"AtLeast({v})"


def Exact(k: int) -> PadicValuation:
    return PadicValuation(k, True)


def AtLeast(n) -> PadicValuation:
    return PadicValuation(n, False)


def valuation(x: TruncatedPAdic) -> PadicValuation:
    r = x.residue
    if r == 0:
        return AtLeast(x.N)
    k = 0
    while r % x.p == 0:
        r //= x.p
        k += 1
    return Exact(k)


PadicVector = Sequence[TruncatedPAdic]


def vector_valuation(v: PadicVector) -> PadicValuation:
    return min(valuation(x) for x in v)


def vector_combine(A: int, a: PadicVector, B: int, b: PadicVector) -> list[TruncatedPAdic]:
    return [x.scale(A) + y.scale(B) for x, y in zip(a, b)]


def coprime_pairs(p: int) -> list[tuple[int, int]]:
    """Pairs 0 < alpha, beta < p with gcd 1, ascending lexicographically."""
    return [(a, b) for a in range(1, p) for b in range(1, p) if gcd(a, b) == 1]


def proportional_mod(x: tuple[int, int], y: tuple[int, int], m: int) -> bool:
    return (x[0] * y[1] - x[1] * y[0]) % m == 0


# -- ladders -----------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    p: int
    k: int
    l: int
    steps: tuple[tuple[int, int, int], ...] = ()
    infinite: bool = False

    @property
    def ts(self) -> list[int]:
        return [t for t, _, _ in self.steps]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for _, a, b in self.steps]

    def accumulated(self, i: int) -> tuple[int, int]:
        """(A_i, B_i) for the first i steps."""
        A = B = 0
        e = 0
        for j, (t, a, b) in enumerate(self.steps[:i]):
            A += a * self.p ** e
            B += b * self.p ** e
            e = t - self.l
        return A, B

    def diagnostics(self) -> list[str]:
        p = self.p
        out = []
        if not is_prime(p):
            out.append(f"{p} is not prime")
            return out
        if self.k < 0 or self.l < 0:
            out.append("heights must be non-negative")
        if self.l < self.k:
            out.append(f"need l >= k, got k={self.k}, l={self.l}")
        prev = self.l
        for i, (t, a, b) in enumerate(self.steps, 1):
            if t <= prev:
                out.append(f"step {i}: t={t} is not greater than {prev}")
            prev = max(prev, t)
            if not (0 < a < p and 0 < b < p):
                out.append(f"step {i}: pair ({a},{b}) not inside (0,{p})")
            elif gcd(a, b) != 1:
                out.append(f"step {i}: pair ({a},{b}) not coprime")
            if i >= 2:
                acc = self.accumulated(i - 1)
                if proportional_mod((a, b), acc, p):
                    out.append(f"step {i}: pair ({a},{b}) proportional mod {p} to "
                               f"accumulated {acc}")
        if self.infinite:
            if not self.steps:
                out.append("an infinite ladder needs at least one step")
            elif continuation_pair(self) is None:
                out.append(f"no admissible continuation pair exists mod {p}")
        return out

    def is_valid(self) -> bool:
        return not self.diagnostics()

    def is_canonical(self) -> bool:
        """Pairs are the ones greedy extraction would pick."""
        if not self.is_valid():
            return False
        for i, (_, a, b) in enumerate(self.steps):
            if i == 0:
                cands = [q for q in coprime_pairs(self.p) if proportional_mod(q, (a, b), self.p)]
            else:
                cands = coset_members(self.p, (a, b), self.pairs[0])
            if cands[0] != (a, b):
                return False
        return True

    def prefix(self, n: int) -> "Ladder":
        return Ladder(self.p, self.k, self.l, self.steps[:n], self.infinite)

    def __str__(self):
        body = "; ".join(f"{t}:{a},{b}" for t, a, b in self.steps)
        s = f"{self.k},{self.l}" + (f"; {body}" if body else "")
        return s + ("; ..." if self.infinite else "")


def coset_members(p: int, P: tuple[int, int], direction: tuple[int, int]) -> list[tuple[int, int]]:
    """Coprime pairs in (0,p)^2 congruent to P + lambda*direction mod p, ascending."""
    pts = {((P[0] + lam * direction[0]) % p, (P[1] + lam * direction[1]) % p)
           for lam in range(p)}
    return [q for q in coprime_pairs(p) if q in pts]


def canonical_pairs_after(p: int, first: tuple[int, int]) -> list[tuple[int, int]]:
    """Pairs that may follow ``first`` in a canonical ladder."""
    out = []
    for q in coprime_pairs(p):
        if proportional_mod(q, first, p):
            continue
        if coset_members(p, q, first)[0] == q:
            out.append(q)
    return out


def canonical_first_pairs(p: int) -> list[tuple[int, int]]:
    out = []
    for q in coprime_pairs(p):
        cls = [r for r in coprime_pairs(p) if proportional_mod(r, q, p)]
        if cls[0] == q:
            out.append(q)
    return out


def continuation_pair(ladder: Ladder) -> tuple[int, int] | None:
    if not ladder.steps:
        return None
    opts = canonical_pairs_after(ladder.p, ladder.pairs[0])
    return opts[0] if opts else None


def parse_ladder(text: str, p: int) -> Ladder:
    """``"k,l; t1:a1,b1; t2:a2,b2"``; a trailing ``; ...`` marks an infinite ladder."""
    parts = [s.strip() for s in text.split(";")]
    infinite = False
    if parts and parts[-1] == "...":
        infinite = True
        parts = parts[:-1]
    try:
        k, l = (int(x) for x in parts[0].split(","))
        steps = []
        for part in parts[1:]:
            if not part:
                continue
            t, pair = part.split(":")
            a, b = pair.split(",")
            steps.append((int(t), int(a), int(b)))
    except ValueError as exc:
        raise ParseError(f"malformed ladder {text!r}: {exc}") from None
    return Ladder(p, k, l, tuple(steps), infinite)


# -- realization -------------------------------------------------------------

@dataclass(frozen=True)
class RealizedPair:
    ladder: Ladder
    N: int
    a: tuple[TruncatedPAdic, TruncatedPAdic]
    b: tuple[TruncatedPAdic, TruncatedPAdic]


def realize_ladder(ladder: Ladder, N: int) -> RealizedPair:
    """Build a, b in J_p + J_p (mod p**N) carrying exactly the given ladder.

    Normalize to units a~, b~ with a = p**k a~, b = p**l b~.  Digit by digit
    the ratio x = a~/b~ must agree with q_i = -B_i/A_i to exactly s_i = t_i - l
    digits; consecutive q_i agree to exactly s_i digits because each new
    pair is not proportional to the accumulated one.  A finite ladder ends
    with x = q_n + p**s_n on copy 1 and b~ = p**s_n on copy 2, which blocks
    every further raise.  An infinite one continues with the canonical next
    pair and leaves copy 2 empty.
    """
    diags = ladder.diagnostics()
    if diags:
        raise InvalidLadder("; ".join(diags))
    p, k, l = ladder.p, ladder.k, ladder.l
    mod = p ** N
    z = TruncatedPAdic(p, N, 0)
    if not ladder.steps:
        if N <= l:
            raise InsufficientPrecision(f"need precision > {l}")
        a = (TruncatedPAdic(p, N, p ** k), z)
        b = (z, TruncatedPAdic(p, N, p ** l))
        return RealizedPair(ladder, N, a, b)
    t_last = ladder.ts[-1]
    if N <= t_last + 1:
        raise InsufficientPrecision(f"need precision > {t_last + 1}, got {N}")

    def ratio(A, B):
        return (-B * pow(A, -1, mod)) % mod

    n = len(ladder.steps)
    A, B = ladder.accumulated(n)
    s_last = t_last - l
    if ladder.infinite:
        P = continuation_pair(ladder)
        x = ratio(A + P[0] * p ** s_last, B + P[1] * p ** s_last)
        tail = 0
    else:
        x = (ratio(A, B) + p ** s_last) % mod
        tail = p ** s_last
    a = (TruncatedPAdic(p, N, p ** k * x), z)
    b = (TruncatedPAdic(p, N, p ** l), TruncatedPAdic(p, N, p ** l * tail))
    pair = RealizedPair(ladder, N, a, b)
    verify_realization(pair)
    return pair


def verify_realization(pair: RealizedPair) -> dict:
    """Recompute every valuation the ladder promises; raise if any is off."""
    L = pair.ladder
    checks = {"v(a)": str(vector_valuation(pair.a)), "v(b)": str(vector_valuation(pair.b)),
              "steps": []}
    ok = vector_valuation(pair.a) == Exact(L.k) and vector_valuation(pair.b) == Exact(L.l)
    shift = L.p ** (L.l - L.k)
    for i, (t, _, _) in enumerate(L.steps, 1):
        A, B = L.accumulated(i)
        v = vector_valuation(vector_combine(A * shift, pair.a, B, pair.b))
        checks["steps"].append({"t": t, "A": A, "B": B, "valuation": str(v),
                                "ok": v == Exact(t)})
        ok = ok and v == Exact(t)
    checks["ok"] = ok
    if not ok:
        raise InvalidLadder(f"realized pair fails verification: {checks}")
    return checks


# -- extraction --------------------------------------------------------------

ValuationOracle = Callable[[int, int], PadicValuation]


def greedy_ladder(p: int, k: int, l: int, comb_val: ValuationOracle, max_level) -> Ladder:
    """Greedy ladder from an oracle giving the valuation of A*p**(l-k)*a + B*b."""
    A = B = 0
    e = 0
    level = l
    steps = []
    while True:
        found = None
        for al, be in coprime_pairs(p):
            TA, TB = A + al * p ** e, B + be * p ** e
            v = comb_val(TA, TB)
            up = v.exceeds(level)
            if up is None:
                raise IndeterminateAtPrecision(
                    f"combination ({TA},{TB}) has valuation {v} at level {level}")
            if up:
                found = (al, be, TA, TB, v)
                break
        if found is None:
            return Ladder(p, k, l, tuple(steps), False)
        al, be, TA, TB, v = found
        if not v.exact or v.value > max_level:
            return Ladder(p, k, l, tuple(steps), True)
        t = int(v.value)
        steps.append((t, al, be))
        A, B, e, level = TA, TB, t - l, t


def _base_heights(a: PadicVector, b: PadicVector) -> tuple[int, int, int]:
    ps = {x.p for x in list(a) + list(b)}
    if len(ps) != 1:
        raise MixedPrime(f"mixed primes {sorted(ps)}")
    p = ps.pop()
    va, vb = vector_valuation(a), vector_valuation(b)
    if not (va.exact and vb.exact):
        raise IndeterminateAtPrecision(f"v(a)={va}, v(b)={vb}")
    if vb < va:
        raise PreconditionViolated("ladders are read with v(a) <= v(b); swap the pair")
    return p, int(va.value), int(vb.value)


def extract_ladder(a: PadicVector, b: PadicVector, max_level: int) -> Ladder:
    p, k, l = _base_heights(a, b)
    N = min(x.N for x in list(a) + list(b))
    if max_level >= N:
        raise PreconditionViolated(f"max_level {max_level} must be below precision {N}")
    shift = p ** (l - k)

    def comb_val(A, B):
        return vector_valuation(vector_combine(A * shift, a, B, b))

    return greedy_ladder(p, k, l, comb_val, max_level)


# -- uniqueness checker ------------------------------------------------------

@dataclass
class UniquenessReport:
    rung: int
    height: int | None
    raising: list[tuple[int, int]] = field(default_factory=list)
    classes: int = 0
    indeterminate: list[tuple[int, int]] = field(default_factory=list)
    reached: bool = True

    @property
    def passed(self) -> bool:
        return self.classes <= 1

    def to_json(self) -> dict:
        return {"rung": self.rung, "height": self.height, "reached": self.reached,
                "raising": [list(x) for x in self.raising], "classes": self.classes,
                "indeterminate": [list(x) for x in self.indeterminate],
                "verdict": "PASS" if self.passed else "FAIL"}


def check_unique_dependency(a: PadicVector, b: PadicVector, level: int) -> UniquenessReport:
    """Enumerate every coprime residue pair at rung ``level`` of the greedy ladder.

    Rung 0 tests the combinations alpha*p**(l-k)*a + beta*b themselves.  Rung i
    tests the accumulated combination of the first i greedy steps plus
    p**(t_i - l) times a residue pair.  Raising totals are grouped by
    proportionality modulo p**(t_i - l + 1); at most one class may occur.
    """
    p, k, l = _base_heights(a, b)
    shift = p ** (l - k)

    def comb_val(A, B):
        return vector_valuation(vector_combine(A * shift, a, B, b))

    A = B = 0
    e = 0
    height = l
    for r in range(level):
        nxt = None
        for al, be in coprime_pairs(p):
            TA, TB = A + al * p ** e, B + be * p ** e
            v = comb_val(TA, TB)
            if v.exceeds(height):
                nxt = (TA, TB, v)
                break
        if nxt is None:
            return UniquenessReport(level, None, reached=False)
        if not nxt[2].exact:
            return UniquenessReport(level, None, reached=False,
                                    indeterminate=[(nxt[0], nxt[1])])
        A, B = nxt[0], nxt[1]
        height = int(nxt[2].value)
        e = height - l
    report = UniquenessReport(level, height)
    totals = []
    for al, be in coprime_pairs(p):
        TA, TB = A + al * p ** e, B + be * p ** e
        up = comb_val(TA, TB).exceeds(height)
        if up is None:
            report.indeterminate.append((al, be))
        elif up:
            report.raising.append((al, be))
            totals.append((TA, TB))
    m = p ** (e + 1)
    reps = []
    for T in totals:
        if not any(proportional_mod(T, R, m) for R in reps):
            reps.append(T)
    report.classes = len(reps)
    return report


def check_all_rungs(a: PadicVector, b: PadicVector) -> list[UniquenessReport]:
    out = []
    rung = 0
    while True:
        rep = check_unique_dependency(a, b, rung)
        if not rep.reached:
            break
        out.append(rep)
        if not rep.raising:
            break
        rung += 1
    return out
