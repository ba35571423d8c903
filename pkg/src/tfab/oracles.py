"""Brute-force and linear-algebra oracles used to cross-check the closed forms."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .arith import vp_int
from .characteristics import INF, HType
from .groups import OMEGA, Element, FDGroup, elem_htype, is_member
from .reduction import coordinate_matrix


def _columns(A: FDGroup) -> list[tuple[int, int]]:
    if any(m is OMEGA for m in A.multiplicities()):
        raise ValueError("oracles need finite multiplicities")
    return [(i, j) for i, (_, m) in enumerate(A.summands) for j in range(m)]


def _lattice_log_index(gens: list[list[int]], r: int, p: int) -> int:
    """v_p of the covolume of the full-rank integer lattice spanned by gens."""
    snf = smith_normal_form(Matrix(gens), domain=ZZ)
    diag = [snf[i, i] for i in range(min(snf.shape)) if snf[i, i] != 0]
    if len(diag) != r:
        raise ValueError("generators do not span a full-rank lattice")
    return sum(vp_int(abs(int(d)), p) for d in diag)


def tf_dimension_oracle(A: FDGroup, p: int, n: int, rng: random.Random | None = None) -> int:
    """dim(p^n A / p^(n+1) A), computed on a bounded-denominator window.

    X_m = p^m A intersected with p^-K Z^r, K beyond every finite height at p.
    Candidate vectors (scaled unit vectors and random integer mixtures of
    them) are kept iff membership says they lie in p^m A; the quotient size
    is read off Smith normal forms of the surviving generators.
    """
    rng = rng or random.Random(0)
    cols = _columns(A)
    r = len(cols)
    if r == 0:
        return 0
    finite = [chi(p) for chi, _ in A.summands if chi(p) != INF]
    K = (max(finite) if finite else 0) + 1
    top = n + 2 + K
    mixes = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)]

    def in_pmA(vec: list[Fraction], m: int) -> bool:
        e = Element.from_dict({c: v / p ** m for c, v in zip(cols, vec)})
        return is_member(A, e)

    def gens(m: int) -> list[list[int]]:
        out = []
        for i in range(r):
            for e in range(-K, top + 1):
                v = [Fraction(0)] * r
                v[i] = Fraction(p) ** e
                if in_pmA(v, m):
                    out.append([int(x * p ** K) for x in v])
                    break
        for mix in mixes:
            for e in range(-K, top + 1):
                v = [Fraction(c) * Fraction(p) ** e for c in mix]
                if any(v) and in_pmA(v, m):
                    out.append([int(x * p ** K) for x in v])
                    break
        # keep the window closed: every vector of p^top Z^r belongs to X_m
        out += [[p ** (top + K) if j == i else 0 for j in range(r)] for i in range(r)]
        return out

    return _lattice_log_index(gens(n + 1), r, p) - _lattice_log_index(gens(n), r, p)


def tf_oracle_profile(A: FDGroup, p: int, depth: int = 3) -> list[int]:
    return [tf_dimension_oracle(A, p, n) for n in range(depth + 1)]


def sympy_rank(elems) -> int:
    if not elems:
        return 0
    _, rows = coordinate_matrix(elems)
    if not rows or not rows[0]:
        return 0
    return Matrix(rows).rank()


def element_types(A: FDGroup, bound: int = 5) -> dict[HType, list[list[int]]]:
    """Exact h-type of every integer-coefficient element with entries in [-bound, bound]."""
    cols = _columns(A)
    out: dict[HType, list[list[int]]] = {}
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(cols)):
        if not any(coeffs):
            continue
        e = Element.from_dict(dict(zip(cols, coeffs)))
        out.setdefault(elem_htype(A, e), []).append(list(coeffs))
    return out


def brute_independent_of_type(types: dict[HType, list[list[int]]], t: HType) -> int:
    vecs = types.get(t, [])
    return Matrix(vecs).rank() if vecs else 0
