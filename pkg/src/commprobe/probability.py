"""Exact commuting-probability computations (all results are Fractions)."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from ._kernels import kernels
from .errors import NotNormalError
from .group import FiniteGroup, quotient_group
from .subgroups import (
    Subgroup,
    _owned,
    class_size_table,
    conjugacy_classes,
    full_subgroup,
    subgroup_from_members,
)

__all__ = [
    "format_ratio",
    "parse_ratio",
    "commuting_probability",
    "relative_commuting_probability",
    "probability_between",
    "QuotientSplitReport",
    "quotient_split_check",
    "ClassSizeProfile",
    "class_size_profile",
]


def format_ratio(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_ratio(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer) into an exact Fraction."""
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            return Fraction(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid ratio {text!r}: {exc}") from None
    raise ValueError(f"invalid ratio {text!r}")


def commuting_probability(G: FiniteGroup) -> Fraction:
    """Probability that two uniform elements commute.

    Computed as a pair count over |G|^2 and cross-checked against the
    class-count formula k(G)/|G|.
    """

    def build():
        n = G.order
        members = full_subgroup(G).member_array()
        pairs = kernels.commuting_pair_count(G.mul, members, members)
        pr = Fraction(pairs, n * n)
        k = len(conjugacy_classes(G))
        if pr != Fraction(k, n):
            raise AssertionError(
                f"pair count {pairs}/{n * n} disagrees with class count {k}/{n}"
            )
        return pr

    return G.cached("commuting_probability", build)


def relative_commuting_probability(G: FiniteGroup, K: Subgroup) -> Fraction:
    """Probability that a uniform element of K commutes with one of G.

    Cross-checked against the centralizer-sum formula over K's elements.
    """
    _owned(G, K)
    n = G.order
    members = K.member_array()
    pairs = kernels.commuting_pair_count(G.mul, members, full_subgroup(G).member_array())
    pr = Fraction(pairs, K.order * n)
    sizes = class_size_table(G)
    centralizer_sum = sum(n // int(sizes[x]) for x in K.members)
    if pr != Fraction(centralizer_sum, K.order * n):
        raise AssertionError("pair count disagrees with centralizer-size sum")
    return pr


def probability_between(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Fraction:
    """Probability that uniform elements of A and B commute (inside G)."""
    _owned(G, A)
    _owned(G, B)
    pairs = kernels.commuting_pair_count(G.mul, A.member_array(), B.member_array())
    return Fraction(pairs, A.order * B.order)


@dataclass(frozen=True)
class QuotientSplitReport:
    """Exact data for the quotient-refinement inequality on (G, K, N)."""

    whole: Fraction
    quotient_factor: Fraction
    intersection_factor: Fraction
    holds: bool

    @property
    def product(self) -> Fraction:
        return self.quotient_factor * self.intersection_factor

    def to_json_dict(self) -> dict:
        return {
            "whole": format_ratio(self.whole),
            "quotient_factor": format_ratio(self.quotient_factor),
            "intersection_factor": format_ratio(self.intersection_factor),
            "product": format_ratio(self.product),
            "holds": self.holds,
        }


def quotient_split_check(G: FiniteGroup, K: Subgroup, N: Subgroup) -> QuotientSplitReport:
    """Check Pr(K, G) <= Pr(KN/N, G/N) * Pr(K n N, N) with exact arithmetic.

    A False result signals a bug, not a mathematical possibility.
    """
    _owned(G, K)
    _owned(G, N)
    if not N.is_normal():
        raise NotNormalError("the refinement factor requires a normal subgroup")
    whole = relative_commuting_probability(G, K)
    Q, proj = quotient_group(G, N)
    image = subgroup_from_members(Q, {int(proj.mapping[x]) for x in K.members})
    quotient_factor = relative_commuting_probability(Q, image)
    intersection_factor = probability_between(G, K & N, N)
    holds = whole <= quotient_factor * intersection_factor
    return QuotientSplitReport(whole, quotient_factor, intersection_factor, holds)


@dataclass(frozen=True)
class ClassSizeProfile:
    """Multiset of ambient conjugacy class sizes over a subgroup's elements."""

    sizes: tuple[int, ...]

    def count_at_most(self, threshold: Fraction | int) -> int:
        """How many listed elements have class size <= threshold (exact compare)."""
        return bisect_right(self.sizes, Fraction(threshold))

    @property
    def max_size(self) -> int:
        return self.sizes[-1] if self.sizes else 0


def class_size_profile(G: FiniteGroup, K: Subgroup | None = None) -> ClassSizeProfile:
    """Sorted |x^G| over x in K (default: all of G)."""
    sizes = class_size_table(G)
    members = _owned(G, K).members if K is not None else range(G.order)
    return ClassSizeProfile(tuple(sorted(int(sizes[x]) for x in members)))
