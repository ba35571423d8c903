"""Random instances for property checks and acceptance runs."""
from __future__ import annotations

import random
from fractions import Fraction

from .characteristics import INF, Characteristic
from .groups import OMEGA, Element, FDGroup
from .padic import (Ladder, TruncatedPAdic, canonical_first_pairs, canonical_pairs_after,
                    coprime_pairs)
from .twotype import (FiniteLadder, IndepFinite, IndepWithInfinite, InfiniteLadder,
                      SplitInfinite, TwoType)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def random_characteristic(rng: random.Random, primes=SMALL_PRIMES, max_h: int = 6) -> Characteristic:
    default = rng.choice((0, INF))
    vals = {}
    for p in rng.sample(primes, rng.randint(0, min(4, len(primes)))):
        vals[p] = INF if rng.random() < 0.3 else rng.randint(0, max_h)
    return Characteristic.make(default, vals)


def random_fd_group(rng: random.Random, max_summands=3, max_mult=2, omega=False,
                    primes=(2, 3, 5), max_h: int = 3) -> FDGroup:
    out = []
    for _ in range(rng.randint(1, max_summands)):
        m = OMEGA if omega and rng.random() < 0.2 else rng.randint(1, max_mult)
        out.append((random_characteristic(rng, primes, max_h), m))
    return FDGroup(tuple(out))


def bounded_rank_group(rng: random.Random, total: int, primes=(2, 3, 5), max_h=3) -> FDGroup:
    """Random description with finite multiplicities summing to ``total``."""
    out = []
    left = total
    while left:
        m = rng.randint(1, left)
        out.append((random_characteristic(rng, primes, max_h), m))
        left -= m
    return FDGroup(tuple(out))


def random_member(rng: random.Random, A: FDGroup, bound: int = 20, density=0.7) -> Element:
    """Nonzero element whose coordinates respect each summand's denominators."""
    cols = [(i, j) for i, (_, m) in enumerate(A.summands) for j in range(m if m is not OMEGA else 3)]
    while True:
        d = {}
        for (i, j) in cols:
            if rng.random() > density:
                continue
            chi = A.summands[i][0]
            den = 1
            for p, h in chi.exceptions:
                if h != 0 and rng.random() < 0.3:
                    den *= p ** (rng.randint(1, 2) if h == INF else rng.randint(1, h))
            d[(i, j)] = Fraction(rng.randint(-bound, bound), den)
        e = Element.from_dict(d)
        if e:
            return e


def random_residue_pair(rng: random.Random, p: int, N: int, copies: int = 2):
    """Random truncated pair, biased toward near-dependent pairs so ladders appear."""
    mod = p ** N

    def vec():
        return [rng.randrange(mod) * p ** rng.choice((0, 0, 0, 1, 2)) % mod for _ in range(copies)]

    a = vec()
    kind = rng.random()
    if kind < 0.4:
        b = vec()
    else:
        lam = rng.randrange(1, mod)
        s = rng.randint(1, N - 2)
        b = [(lam * x + p ** s * rng.randrange(mod)) % mod for x in a]
    a = [TruncatedPAdic(p, N, x) for x in a]
    b = [TruncatedPAdic(p, N, x) for x in b]
    return a, b


def random_canonical_ladder(rng: random.Random, p: int, max_steps=4, t_max=16,
                            k_max=3, infinite=False) -> Ladder:
    k = rng.randint(0, k_max)
    l = k + rng.randint(0, 2)
    n = rng.randint(1, max_steps)
    if p == 2:
        n = 1
    span = list(range(l + 1, t_max + 1))
    n = min(n, len(span))
    ts = sorted(rng.sample(span, n))
    first = rng.choice(canonical_first_pairs(p))
    pairs = [first]
    follow = canonical_pairs_after(p, first)
    for _ in ts[1:]:
        pairs.append(rng.choice(follow))
    steps = tuple((t, a, b) for t, (a, b) in zip(ts, pairs))
    return Ladder(p, k, l, steps, infinite and bool(follow))


def mutate_ladder(rng: random.Random, L: Ladder, how: str) -> Ladder:
    steps = [list(s) for s in L.steps]
    p = L.p
    if how == "increase":
        if len(steps) >= 2:
            steps[1][0] = steps[0][0]
        else:
            steps[0][0] = L.l
    elif how == "coprime":
        i = rng.randrange(len(steps))
        bad = [(a, b) for a in range(0, p + 1) for b in range(0, p + 1)
               if not (0 < a < p and 0 < b < p) or (a and b and (a, b) not in coprime_pairs(p))]
        steps[i][1], steps[i][2] = rng.choice(bad)
    elif how == "proportional":
        if len(steps) < 2:
            steps.append([steps[0][0] + 1, steps[0][1], steps[0][2]])
        i = rng.randrange(1, len(steps))
        A, B = L.accumulated(i) if i <= len(L.steps) else L.accumulated(len(L.steps))
        lam = rng.randrange(1, p)
        a, b = lam * A % p, lam * B % p
        steps[i][1], steps[i][2] = a, b
    else:
        raise ValueError(how)
    return Ladder(p, L.k, L.l, tuple(tuple(s) for s in steps), L.infinite)


def random_unimodular(rng: random.Random, bound: int = 4) -> list[list[int]]:
    M = [[1, 0], [0, 1]]
    for _ in range(rng.randint(0, 3)):
        q = rng.randint(-bound, bound)
        if rng.random() < 0.5:
            M = [[M[0][0] + q * M[1][0], M[0][1] + q * M[1][1]], M[1]]
        else:
            M = [M[0], [M[1][0] + q * M[0][0], M[1][1] + q * M[0][1]]]
    if rng.random() < 0.3:
        M = [M[1], M[0]]
    return M


def random_local(rng: random.Random, p: int):
    case = rng.choice((1, 2, 3, 4, 4))
    if case == 1:
        which = rng.choice(("a", "b", "both"))
        return IndepWithInfinite(which, None if which == "both" else rng.randint(0, 4))
    if case == 2:
        return IndepFinite(rng.randint(0, 5), rng.randint(0, 5))
    if case == 3:
        k = rng.randint(0, 3)
        l = k + rng.randint(0, 3)
        while True:
            alpha = rng.randint(1, 3 * p)
            beta = rng.choice((-1, 1)) * rng.randint(1, 3 * p)
            if alpha * beta % p and Fraction(alpha, beta).denominator == abs(beta):
                break
        return SplitInfinite(k, l, alpha, beta, l > k and rng.random() < 0.5)
    infinite = p > 2 and rng.random() < 0.4
    L = random_canonical_ladder(rng, p, max_steps=3, t_max=14, infinite=infinite)
    swapped = L.l > L.k and rng.random() < 0.4
    return (InfiniteLadder if L.infinite else FiniteLadder)(L, swapped)


def random_two_type(rng: random.Random, primes=SMALL_PRIMES) -> TwoType:
    if rng.random() < 0.15:
        while True:
            m1, m2 = rng.randint(-6, 6), rng.randint(1, 6)
            if m1 and Fraction(m1, m2).denominator == m2:
                break
        return TwoType.make(1, [[m1], [m2]], random_characteristic(rng, primes[:4]))
    default = rng.choice((IndepFinite(0, 0), IndepWithInfinite("b", 0),
                          IndepWithInfinite("both", None)))
    ps = rng.sample(primes, rng.randint(0, 3))
    locs = {p: random_local(rng, p) for p in ps}
    return TwoType.make(2, random_unimodular(rng), None, locs, default)
