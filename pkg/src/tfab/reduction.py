"""Independence reduction of element tuples and the infinite-height split.

``reduce_tuple`` rewrites a tuple of elements as integer combinations of a
linearly independent tuple.  Dependencies are discovered by exact kernel
computation; the basis itself is produced by the constructive recursion
(pair stripping, gcd folding of the last two coordinates of a relation).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arith import bezout_min_first, content, prime_factors, vp_int
from .characteristics import INF, ExtHeight
from .errors import (MembershipViolation, NotAPairRelation, PreconditionViolated,
                     ZeroElement)
from .groups import Carrier, Element, check_element, combine, divide, elem_height


def coordinate_matrix(elems: Sequence[Element]) -> tuple[list, list[list[Fraction]]]:
    keys = sorted({k for e in elems for k in e.support()})
    rows = []
    for e in elems:
        d = e.as_dict()
        rows.append([d.get(k, Fraction(0)) for k in keys])
    return keys, rows


def rational_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of {r : sum_i r[i] * rows[i] = 0}, one vector per free column."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    # columns of this matrix are the elements
    mat = [[Fraction(rows[i][j]) for i in range(n)] for j in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(m):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -mat[row][free]
        basis.append(v)
    return basis


def primitive(vec: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = lcm(*(Fraction(v).denominator for v in vec)) if vec else 1
    ints = [int(Fraction(v) * den) for v in vec]
    g = content(ints)
    ints = [v // g for v in ints] if g else ints
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints


def rank_of(elems: Sequence[Element]) -> int:
    return len(elems) - len(rational_kernel(coordinate_matrix(elems)[1]))


@dataclass(frozen=True)
class DependencyRelation:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coefficients):
            raise ValueError("a relation needs a nonzero coefficient")
        if content(self.coefficients) != 1:
            raise ValueError("relation coefficients must have gcd 1")


def find_dependency(A: Carrier, elems: Sequence[Element]) -> DependencyRelation | None:
    if any(not e for e in elems):
        raise ZeroElement("dependency search on a zero element")
    kernel = rational_kernel(coordinate_matrix(elems)[1])
    if not kernel:
        return None
    return DependencyRelation(tuple(primitive(kernel[0])))


def reduce_pair(A: Carrier, a1: Element, a2: Element, rel: DependencyRelation) -> Element:
    """Return c with a1 = beta*c and a2 = alpha*c, given alpha*a1 - beta*a2 = 0.

    The relation is passed as ``(r1, r2)`` with ``r1*a1 + r2*a2 = 0``;
    alpha = r1 and beta = -r2 after making alpha positive.  The prime
    powers of alpha are stripped from a2 one prime at a time, smallest
    prime first, each division checked for membership.
    """
    if len(rel.coefficients) != 2:
        raise NotAPairRelation(f"expected 2 coefficients, got {len(rel.coefficients)}")
    alpha, beta = rel.coefficients[0], -rel.coefficients[1]
    if alpha == 0 or beta == 0:
        raise NotAPairRelation("a pair relation between nonzero elements has no zero entry")
    if alpha < 0:
        alpha, beta = -alpha, -beta
    if a1.scale(alpha) != a2.scale(beta):
        raise NotAPairRelation(f"{alpha}*a1 != {beta}*a2")
    b = a2
    for p in prime_factors(alpha):
        b = divide(A, b, p ** vp_int(alpha, p))
    # now a2 = alpha*b and a1 = beta*b since alpha*a1 = beta*a2 = alpha*beta*b
    c = b
    if c.scale(beta) != a1 or c.scale(alpha) != a2:
        raise MembershipViolation("pair stripping did not reproduce the inputs")
    return c


@dataclass(frozen=True)
class ReductionResult:
    basis: tuple[Element, ...]
    expression: tuple[tuple[int, ...], ...]

    def reproduce(self) -> list[Element]:
        return [combine(row, self.basis) for row in self.expression]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _compose(outer: list[list[int]], inner: list[list[int]]) -> list[list[int]]:
    """outer expresses items through a middle tuple, inner expresses the middle tuple."""
    cols = len(inner[0]) if inner else 0
    return [[sum(row[k] * inner[k][j] for k in range(len(inner))) for j in range(cols)]
            for row in outer]


def _drop_zeros(middle: list[Element], outer: list[list[int]]):
    keep = [i for i, e in enumerate(middle) if e]
    return [middle[i] for i in keep], [[row[i] for i in keep] for row in outer]


def _pair_step(A, elems, i, j, ri, rj):
    n = len(elems)
    c = reduce_pair(A, elems[i], elems[j], DependencyRelation((ri, rj)))
    alpha, beta = (ri, -rj) if ri > 0 else (-ri, rj)
    rest = [k for k in range(n) if k not in (i, j)]
    middle = [elems[k] for k in rest] + [c]
    outer = []
    for k in range(n):
        row = [0] * len(middle)
        if k == i:
            row[-1] = beta
        elif k == j:
            row[-1] = alpha
        else:
            row[rest.index(k)] = 1
        outer.append(row)
    return middle, outer


def _reduce(A: Carrier, elems: list[Element]) -> tuple[list[Element], list[list[int]]]:
    rel = find_dependency(A, elems)
    if rel is None:
        return list(elems), _identity(len(elems))
    n = len(elems)
    r = list(rel.coefficients)
    support = [i for i in range(n) if r[i]]
    i, j = support[-2], support[-1]
    g = gcd(r[i], r[j])
    ri, rj = r[i] // g, r[j] // g
    b = combine((ri, rj), (elems[i], elems[j]))
    if len(support) == 2 or not b:
        middle, outer = _pair_step(A, elems, i, j, ri, rj)
        basis, inner = _reduce(A, middle)
        return basis, _compose(outer, inner)

    # fold the last two supported entries: r_i a_i + r_j a_j = g * b
    beta, neg_gamma = bezout_min_first(ri, rj)  # beta*ri - gamma*rj = 1
    gamma = -neg_gamma
    b2 = combine((gamma, beta), (elems[i], elems[j]))
    # a_i = beta*b - rj*b2,  a_j = ri*b2 - gamma*b
    rest = [k for k in range(n) if k not in (i, j)]
    sub_basis, sub_expr = _reduce(A, [elems[k] for k in rest] + [b])
    middle = sub_basis + [b2]
    m = len(sub_basis)
    b_row = sub_expr[-1] + [0]
    outer = []
    for k in range(n):
        if k == i:
            row = [beta * v for v in b_row]
            row[m] -= rj
        elif k == j:
            row = [-gamma * v for v in b_row]
            row[m] += ri
        else:
            row = sub_expr[rest.index(k)] + [0]
        outer.append(row)
    middle, outer = _drop_zeros(middle, outer)
    basis, inner = _reduce(A, middle)
    return basis, _compose(outer, inner)


def reduce_tuple(A: Carrier, elems: Sequence[Element]) -> ReductionResult:
    elems = list(elems)
    if any(not e for e in elems):
        raise ZeroElement("cannot reduce a tuple containing 0")
    basis, expr = _reduce(A, elems)
    result = ReductionResult(tuple(basis), tuple(tuple(row) for row in expr))
    if result.reproduce() != elems:
        raise MembershipViolation("reduction does not reproduce its input")
    return result


# -- infinite-height split ---------------------------------------------------

def split_infinite_dependency(A: Carrier, a: Element, b: Element, alpha: int, beta: int,
                              k: ExtHeight, l: ExtHeight, p: int) -> tuple[Element, Element]:
    """Rewrite (a, b) through c of infinite p-height and d of finite p-height.

    With s = l - k:  p**s * c = alpha*p**s*a + beta*b  and  d = delta*a + gamma*b
    where gamma*alpha*p**s - delta*beta = 1 (delta least non-negative).
    Then a = gamma*p**s*c - beta*d and -b = delta*p**s*c - alpha*p**s*d.
    """
    if not a or not b:
        raise PreconditionViolated("a and b must be nonzero")
    if k == INF or l == INF:
        raise PreconditionViolated("k and l must be finite")
    if l < k:
        raise PreconditionViolated("need l >= k")
    if gcd(alpha, beta) != 1:
        raise PreconditionViolated("alpha and beta must be coprime")
    if alpha * beta % p == 0:
        raise PreconditionViolated(f"{p} divides alpha*beta")
    if elem_height(A, a, p) != k or elem_height(A, b, p) != l:
        raise PreconditionViolated("heights of a, b do not match k, l")
    s = int(l - k)
    ps = p ** s
    comb = a.scale(alpha * ps) + b.scale(beta)
    if comb and elem_height(A, comb, p) != INF:
        raise PreconditionViolated("alpha*p^(l-k)*a + beta*b does not have infinite height")
    c = divide(A, comb, ps) if comb else comb
    # x*(alpha*ps) + y*beta = 1 with y = -delta; delta least non-negative
    neg_delta, gamma = bezout_min_first(-beta, alpha * ps)
    delta = neg_delta
    assert gamma * alpha * ps - delta * beta == 1
    d = a.scale(delta) + b.scale(gamma)
    check_element(A, d)
    if c.scale(gamma * ps) - d.scale(beta) != a:
        raise PreconditionViolated("first recovery identity failed")
    if c.scale(delta * ps) - d.scale(alpha * ps) != -b:
        raise PreconditionViolated("second recovery identity failed")
    return c, d


def is_p_height_independent(A: Carrier, elems: Sequence[Element], p: int, bound: int) -> bool:
    """Check h_p(sum m_i e_i) = min h_p(m_i e_i) for all |m_i| <= bound.

    Integer-only inner loop: each coordinate is written as N/D over a common
    denominator D so the height of a combination is chi(p) + v_p(sum m_i N_i) - v_p(D).
    """
    chis = A.summand_chis()
    keys = sorted({k for e in elems for k in e.support()})
    dicts = [e.as_dict() for e in elems]
    D = lcm(*(v.denominator for d in dicts for v in d.values())) if keys else 1
    vD = vp_int(D, p) if D % p == 0 else 0
    cols = []
    for key in keys:
        h = chis[key[0]](p)
        if h == INF:
            continue
        nums = [int(d.get(key, 0) * D) for d in dicts]
        cols.append((h - vD, nums))
    own = [min((h + vp_int(nums[i], p) for h, nums in cols if nums[i]), default=INF)
           for i in range(len(elems))]
    n = len(elems)

    def vint(x):
        if x == 0:
            return INF
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    def rec(prefix):
        if len(prefix) == n:
            if not any(prefix):
                return True
            lhs = min((h + vint(sum(m * x for m, x in zip(prefix, nums))) for h, nums in cols),
                      default=INF)
            rhs = min((own[i] + vint(m) if m else INF) for i, m in enumerate(prefix))
            return lhs == rhs
        lo = 0 if not any(prefix) else -bound
        return all(rec(prefix + [m]) for m in range(lo, bound + 1))

    return rec([])
