"""Automorphisms, automorphism groups, and coprime-action checks."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import AutomorphismError, HypothesisError, NotNormalError
from .group import FiniteGroup, quotient_group
from .structure import prime_factors
from .subgroups import Subgroup, _owned, subgroup_from_members

__all__ = [
    "Automorphism",
    "AutomorphismGroup",
    "automorphism_from_map",
    "automorphism_from_generator_images",
    "identity_automorphism",
    "fixed_point_subgroup",
    "is_coprime_action",
    "CoprimeQuotientReport",
    "coprime_quotient_check",
    "elementary_abelian_bound_check",
]


class Automorphism:
    """A verified automorphism, stored as an image table over element indices."""

    __slots__ = ("group", "mapping", "_order")

    def __init__(self, group: FiniteGroup, mapping: tuple[int, ...]):
        self.group = group
        self.mapping = mapping
        self._order: int | None = None

    @property
    def order(self) -> int:
        if self._order is None:
            seen = [False] * len(self.mapping)
            out = 1
            for start in range(len(self.mapping)):
                if seen[start]:
                    continue
                length = 0
                point = start
                while not seen[point]:
                    seen[point] = True
                    point = self.mapping[point]
                    length += 1
                out = out * length // gcd(out, length)
            self._order = out
        return self._order

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Apply ``self`` first, then ``other``."""
        if self.group is not other.group:
            raise AutomorphismError("automorphisms of different groups")
        return Automorphism(self.group, tuple(other.mapping[i] for i in self.mapping))

    def inverse(self) -> "Automorphism":
        images = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            images[j] = i
        return Automorphism(self.group, tuple(images))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Automorphism)
            and self.group is other.group
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.mapping))

    def __repr__(self) -> str:
        return f"<Automorphism of {self.group.describe()}, order {self.order}>"


def _validate_automorphism(G: FiniteGroup, mapping: Sequence[int]) -> tuple[int, ...]:
    arr = np.asarray(mapping, dtype=np.int32)
    if arr.shape != (G.order,):
        raise AutomorphismError(f"mapping must list an image for each of {G.order} elements")
    if not np.array_equal(np.sort(arr), np.arange(G.order, dtype=np.int32)):
        raise AutomorphismError("mapping is not a bijection on element indices")
    left = arr[G.mul]
    right = G.mul[np.ix_(arr, arr)]
    if not (left == right).all():
        x, y = map(int, np.argwhere(left != right)[0])
        raise AutomorphismError(f"mapping is not multiplicative at pair ({x}, {y})")
    return tuple(int(v) for v in arr)


def automorphism_from_map(G: FiniteGroup, mapping: Iterable[int]) -> Automorphism:
    """Wrap and verify a full element mapping."""
    return Automorphism(G, _validate_automorphism(G, list(mapping)))


def automorphism_from_generator_images(G: FiniteGroup, images: Sequence[int]) -> Automorphism:
    """Extend generator images along the group's BFS derivations, then verify."""
    if len(images) != len(G.generators):
        raise AutomorphismError(
            f"need one image per generator ({len(G.generators)}), got {len(images)}"
        )
    mapping = np.full(G.order, -1, dtype=np.int64)
    mapping[G.identity] = G.identity
    for element, parent, gen_pos in G.derivations:
        mapping[element] = G.mul[mapping[parent], images[gen_pos]]
    return Automorphism(G, _validate_automorphism(G, mapping))


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, tuple(range(G.order)))


class AutomorphismGroup:
    """A finite group of automorphisms, closed under composition."""

    __slots__ = ("group", "generators", "elements")

    def __init__(self, group: FiniteGroup, generators: Sequence[Automorphism], elements: tuple[Automorphism, ...]):
        self.group = group
        self.generators = tuple(generators)
        self.elements = elements

    @staticmethod
    def from_generators(G: FiniteGroup, generators: Sequence[Automorphism]) -> "AutomorphismGroup":
        for phi in generators:
            if phi.group is not G:
                raise AutomorphismError("generator acts on a different group")
        identity = tuple(range(G.order))
        seen = {identity}
        queue = [identity]
        head = 0
        while head < len(queue):
            current = queue[head]
            head += 1
            for phi in generators:
                composed = tuple(phi.mapping[i] for i in current)
                if composed not in seen:
                    seen.add(composed)
                    queue.append(composed)
        elements = tuple(Automorphism(G, m) for m in sorted(seen))
        return AutomorphismGroup(G, generators, elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<AutomorphismGroup of {self.group.describe()}, order {self.order}>"


def _as_group(A: Automorphism | AutomorphismGroup) -> AutomorphismGroup:
    if isinstance(A, Automorphism):
        return AutomorphismGroup.from_generators(A.group, (A,))
    return A


def fixed_point_subgroup(G: FiniteGroup, A: Automorphism | AutomorphismGroup) -> Subgroup:
    """Elements fixed by every automorphism in A.

    Computed from the generators, then cross-checked against all elements.
    """
    group = _as_group(A)
    if group.group is not G:
        raise AutomorphismError("automorphisms act on a different group")
    fixed = np.ones(G.order, dtype=bool)
    for phi in group.generators or (identity_automorphism(G),):
        fixed &= np.asarray(phi.mapping, dtype=np.int64) == np.arange(G.order)
    members = np.nonzero(fixed)[0]
    full_fixed = {
        x for x in range(G.order) if all(phi.mapping[x] == x for phi in group.elements)
    }
    if full_fixed != {int(x) for x in members}:
        raise AssertionError("generator fixed points disagree with group fixed points")
    return subgroup_from_members(G, members, validate=True)


def is_coprime_action(G: FiniteGroup, A: Automorphism | AutomorphismGroup) -> bool:
    return gcd(G.order, _as_group(A).order) == 1


def _is_invariant(N: Subgroup, group: AutomorphismGroup) -> bool:
    member_set = set(N.members)
    for phi in group.elements:
        if {phi.mapping[x] for x in N.members} != member_set:
            return False
    return True


@dataclass(frozen=True)
class CoprimeQuotientReport:
    """Fixed points in a quotient versus the projected fixed points."""

    quotient_fixed: tuple[int, ...]
    projected_fixed: tuple[int, ...]
    equal: bool

    def to_json_dict(self) -> dict:
        return {
            "quotient_fixed": list(self.quotient_fixed),
            "projected_fixed": list(self.projected_fixed),
            "equal": self.equal,
        }


def coprime_quotient_check(
    G: FiniteGroup, A: Automorphism | AutomorphismGroup, N: Subgroup
) -> CoprimeQuotientReport:
    """Check C_{G/N}(A) = N C_G(A) / N for a coprime action and invariant N.

    Hypothesis violations (non-coprime action, non-invariant or non-normal N)
    raise, distinct from an inequality in the report itself.
    """
    _owned(G, N)
    group = _as_group(A)
    if group.group is not G:
        raise AutomorphismError("automorphisms act on a different group")
    if not N.is_normal():
        raise NotNormalError("the quotient check needs a normal subgroup")
    if not is_coprime_action(G, group):
        raise HypothesisError(
            f"action of order {group.order} is not coprime to |G| = {G.order}"
        )
    if not _is_invariant(N, group):
        raise HypothesisError("the normal subgroup is not invariant under the action")
    Q, proj = quotient_group(G, N)
    induced_gens = []
    for phi in group.generators:
        images = np.full(Q.order, -1, dtype=np.int64)
        for x in range(G.order):
            target = int(proj.mapping[phi.mapping[x]])
            source = int(proj.mapping[x])
            if images[source] == -1:
                images[source] = target
            elif images[source] != target:
                raise AssertionError("induced map is not well defined on cosets")
        induced_gens.append(automorphism_from_map(Q, images))
    induced = AutomorphismGroup.from_generators(Q, induced_gens)
    quotient_fixed = fixed_point_subgroup(Q, induced)
    ambient_fixed = fixed_point_subgroup(G, group)
    projected = tuple(sorted({int(proj.mapping[x]) for x in ambient_fixed.members}))
    if any(x not in set(quotient_fixed.members) for x in projected):
        raise AssertionError("projected fixed points escaped the quotient fixed points")
    return CoprimeQuotientReport(
        quotient_fixed=quotient_fixed.members,
        projected_fixed=projected,
        equal=quotient_fixed.members == projected,
    )


def elementary_abelian_bound_check(G: FiniteGroup, A: AutomorphismGroup) -> dict:
    """For a noncyclic elementary abelian coprime p-action, check |G| <= m^(p+1).

    m is the largest fixed-point-subgroup order over nontrivial elements of A.
    """
    if A.group is not G:
        raise AutomorphismError("automorphisms act on a different group")
    primes = prime_factors(A.order)
    if len(primes) != 1:
        raise HypothesisError(f"action order {A.order} is not a prime power")
    p = primes[0]
    identity = identity_automorphism(G)
    for phi in A.elements:
        if phi != identity and phi.order != p:
            raise HypothesisError("action is not elementary abelian (element order != p)")
    for phi in A.elements:
        for psi in A.elements:
            if phi.compose(psi) != psi.compose(phi):
                raise HypothesisError("action is not abelian")
    if A.order < p * p:
        raise HypothesisError("action is cyclic; need rank at least 2")
    if not is_coprime_action(G, A):
        raise HypothesisError(f"action of order {A.order} is not coprime to |G| = {G.order}")
    m = 1
    for phi in A.elements:
        if phi == identity:
            continue
        m = max(m, fixed_point_subgroup(G, phi).order)
    bound = m ** (p + 1)
    return {
        "p": p,
        "rank_order": A.order,
        "max_fixed_order": m,
        "bound": bound,
        "holds": G.order <= bound,
    }
