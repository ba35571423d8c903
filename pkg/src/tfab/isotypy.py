"""A(t), A*(t), exact-type ranks and isotypicity of fully decomposable groups.

For a fully decomposable group A with summand h-types t_i, the elements of
exact h-type t exist iff t is a meet of some nonempty set of summand types,
and then any maximal independent family of them has size rank A(t).
"""
from __future__ import annotations

from dataclasses import dataclass

from .characteristics import HType, htype_of
from .groups import OMEGA, Cardinal, FDGroup, card_sum, format_cardinal, meet_closure


def _keep(A: FDGroup, pred) -> FDGroup:
    return FDGroup(tuple((chi, m) for chi, m in A.summands if pred(htype_of(chi))))


def a_of_t(A: FDGroup, t: HType) -> FDGroup:
    return _keep(A, lambda s: t.leq(s))


def a_star_of_t(A: FDGroup, t: HType) -> FDGroup:
    return _keep(A, lambda s: t.lt(s))


def rank_At(A: FDGroup, t: HType) -> Cardinal:
    return card_sum(m for chi, m in A.summands if htype_of(chi) == t)


def max_independent_of_type(A: FDGroup, t: HType) -> Cardinal:
    if t not in meet_closure(A.htypes()):
        return 0
    return a_of_t(A, t).rank


@dataclass(frozen=True)
class TypeRankProfile:
    ranks: tuple[tuple[HType, Cardinal], ...]
    counts: tuple[tuple[HType, Cardinal], ...]

    def rank(self, t: HType) -> Cardinal:
        return dict(self.ranks).get(t, 0)

    def count(self, t: HType) -> Cardinal:
        return dict(self.counts).get(t, 0)

    def table(self) -> str:
        lines = [f"{'h-type':<24} {'r(A_t)':>8} {'N(A,t)':>8}"]
        for t, n in self.counts:
            lines.append(f"{str(t):<24} {format_cardinal(self.rank(t)):>8} "
                         f"{format_cardinal(n):>8}")
        return "\n".join(lines)

    def to_json(self) -> list[dict]:
        def js(c):
            return "omega" if c is OMEGA else c
        return [{"htype": str(t), "rank": js(self.rank(t)), "independent": js(n)}
                for t, n in self.counts]


def type_rank_profile(A: FDGroup) -> TypeRankProfile:
    types = sorted(set(A.htypes()))
    ranks = tuple((t, rank_At(A, t)) for t in types)
    closure = sorted(meet_closure(types))
    counts = tuple((t, max_independent_of_type(A, t)) for t in closure)
    return TypeRankProfile(ranks, counts)


def separable_isotypic(A1: FDGroup, A2: FDGroup) -> bool:
    ts = meet_closure(A1.htypes()) | meet_closure(A2.htypes())
    return all(max_independent_of_type(A1, t) == max_independent_of_type(A2, t) for t in ts)


def fd_isomorphic(A1: FDGroup, A2: FDGroup) -> bool:
    ts = set(A1.htypes()) | set(A2.htypes())
    return all(rank_At(A1, t) == rank_At(A2, t) for t in ts)
