"""Bitset-backed subgroups and the subgroup toolkit."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import config
from ._kernels import kernels
from .errors import CapExceededError, ParentMismatchError
from .group import FiniteGroup, GroupHom

__all__ = [
    "Subgroup",
    "subgroup_from_members",
    "trivial_subgroup",
    "full_subgroup",
    "closure",
    "centralizer",
    "centralizer_of_set",
    "center",
    "conjugacy_classes",
    "conjugacy_class_of",
    "class_size",
    "relative_class",
    "relative_class_sizes",
    "normal_closure",
    "normal_core",
    "normalizer",
    "commutator_of_subgroups",
    "all_normal_subgroups",
    "normal_subgroups_of",
    "symmetric_set_power",
    "enumerate_all_subgroups",
    "as_group",
]


class Subgroup:
    """A subgroup as a value object: parent group, member bitmask, members.

    Equality and hashing use the parent's identity plus the bitmask, so equal
    member sets in *different* parent group objects are distinct values.
    """

    __slots__ = ("parent", "members", "mask", "order", "_normal")

    def __init__(self, parent: FiniteGroup, members: Sequence[int], mask: int):
        self.parent = parent
        self.members = tuple(members)
        self.mask = mask
        self.order = len(self.members)
        self._normal: bool | None = None
        if parent.order % self.order != 0:
            raise AssertionError(
                f"subgroup order {self.order} does not divide group order {parent.order}"
            )

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def member_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int32)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        _check_parent(self, other)
        return self.mask | other.mask == other.mask

    def __and__(self, other: "Subgroup") -> "Subgroup":
        _check_parent(self, other)
        return _from_mask(self.parent, self.mask & other.mask)

    def join(self, other: "Subgroup") -> "Subgroup":
        _check_parent(self, other)
        return closure(self.parent, self.members + other.members)

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.parent
        arr = G.mul[G.mul[G.inv[g], self.member_array()], g]
        return _from_members(G, np.sort(arr))

    def is_normal(self) -> bool:
        """Normality in the parent, checked by conjugating with its generators."""
        if self._normal is None:
            G = self.parent
            arr = self.member_array()
            ok = True
            for g in G.generators:
                conj = G.mul[G.mul[G.inv[g], arr], g]
                if _mask_of(conj) != self.mask:
                    ok = False
                    break
            self._normal = ok
        return self._normal

    def __repr__(self) -> str:
        return f"<Subgroup order {self.order} of {self.parent.describe()}>"


def _mask_of(members: Iterable[int]) -> int:
    mask = 0
    for m in members:
        mask |= 1 << int(m)
    return mask


def _from_members(G: FiniteGroup, members) -> Subgroup:
    members = tuple(int(m) for m in members)
    return Subgroup(G, members, _mask_of(members))


def _from_mask(G: FiniteGroup, mask: int) -> Subgroup:
    members = []
    m = mask
    while m:
        low = m & -m
        members.append(low.bit_length() - 1)
        m ^= low
    return Subgroup(G, tuple(members), mask)


def _check_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise ParentMismatchError("subgroups belong to different parent groups")


def _owned(G: FiniteGroup, S: Subgroup) -> Subgroup:
    if S.parent is not G:
        raise ParentMismatchError("subgroup belongs to a different parent group")
    return S


def subgroup_from_members(G: FiniteGroup, members: Iterable[int], *, validate: bool = True) -> Subgroup:
    """Wrap an element set as a Subgroup, optionally verifying closure."""
    arr = np.unique(np.asarray(sorted(int(m) for m in members), dtype=np.int32))
    if arr.size == 0:
        raise ValueError("a subgroup cannot be empty")
    if arr[0] < 0 or arr[-1] >= G.order:
        raise ValueError("member index out of range")
    if validate:
        if G.identity not in arr:
            raise ValueError("member set does not contain the identity")
        products = np.unique(G.mul[np.ix_(arr, arr)])
        if not np.array_equal(products, arr):
            extra = int(np.setdiff1d(products, arr)[0])
            raise ValueError(f"member set is not closed under multiplication (misses {extra})")
    return _from_members(G, arr)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return _from_members(G, (G.identity,))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return G.cached("full_subgroup", lambda: _from_members(G, range(G.order)))


def closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Subgroup generated by the seed elements."""
    seed_arr = np.asarray(sorted({int(s) for s in seed}), dtype=np.int32)
    if seed_arr.size and (seed_arr[0] < 0 or seed_arr[-1] >= G.order):
        raise ValueError("seed element out of range")
    members = kernels.mul_closure(G.mul, G.identity, seed_arr)
    return _from_members(G, members)


def centralizer(G: FiniteGroup, x: int, within: Subgroup | None = None) -> Subgroup:
    return centralizer_of_set(G, (x,), within)


def centralizer_of_set(G: FiniteGroup, elements: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    """Elements of ``within`` (default: all of G) commuting with every listed element."""
    domain = (
        _owned(G, within).member_array()
        if within is not None
        else np.arange(G.order, dtype=np.int32)
    )
    fixed = np.asarray(sorted({int(e) for e in elements}), dtype=np.int32)
    members = kernels.centralizer_members(G.mul, fixed, domain)
    return _from_members(G, members)


def center(G: FiniteGroup) -> Subgroup:
    return G.cached("center", lambda: centralizer_of_set(G, range(G.order)))


def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes as sorted tuples, ordered by least member.

    Asserts the orbit-stabilizer identity |x^G| * |C_G(x)| = |G| per element.
    """

    def build():
        labels = G.conjugacy_labels()
        classes: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            classes.setdefault(int(lab), []).append(x)
        out = tuple(tuple(classes[lab]) for lab in sorted(classes))
        commuting = (G.mul == G.mul.T).sum(axis=1)
        for cls in out:
            size = len(cls)
            for x in cls:
                if size * int(commuting[x]) != G.order:
                    raise AssertionError(
                        f"orbit-stabilizer violated at element {x}: "
                        f"{size} * {int(commuting[x])} != {G.order}"
                    )
        return out

    return G.cached("conjugacy_classes", build)


def conjugacy_class_of(G: FiniteGroup, x: int) -> tuple[int, ...]:
    labels = G.conjugacy_labels()
    target = labels[x]
    return tuple(int(i) for i in np.nonzero(labels == target)[0])


def class_size(G: FiniteGroup, x: int) -> int:
    return int(class_size_table(G)[x])


def class_size_table(G: FiniteGroup) -> np.ndarray:
    """Per element, the size of its conjugacy class."""

    def build():
        labels = G.conjugacy_labels()
        _, inverse, counts = np.unique(labels, return_inverse=True, return_counts=True)
        return counts[inverse].astype(np.int32)

    return G.cached("class_size_table", build)


def relative_class(G: FiniteGroup, H: Subgroup, x: int) -> tuple[int, ...]:
    """The orbit x^H = {h^-1 x h : h in H}, sorted."""
    arr = _owned(G, H).member_array()
    values = G.mul[G.mul[G.inv[arr], x], arr]
    return tuple(int(v) for v in np.unique(values))


def relative_class_sizes(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    """Per element x of G, the orbit size |x^H|."""
    return kernels.relative_class_sizes(G.mul, G.inv, _owned(G, H).member_array())


def normal_closure(G: FiniteGroup, seed: Subgroup | Iterable[int]) -> Subgroup:
    """Least normal subgroup of G containing the seed."""
    if isinstance(seed, Subgroup):
        current = _owned(G, seed)
    else:
        current = closure(G, seed)
    while True:
        arr = current.member_array()
        extra = []
        for g in G.generators:
            conj = G.mul[G.mul[G.inv[g], arr], g]
            fresh = conj[~np.isin(conj, arr, assume_unique=False)]
            if fresh.size:
                extra.append(fresh)
        if not extra:
            assert current.is_normal()
            return current
        current = closure(G, list(current.members) + [int(v) for e in extra for v in e])


def normal_core(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """Largest normal subgroup of G inside S: the intersection of all conjugates."""
    _owned(G, S)
    arr = S.member_array()
    mask = S.mask
    trivial_mask = 1 << G.identity
    for g in range(G.order):
        conj = G.mul[G.mul[G.inv[g], arr], g]
        mask &= _mask_of(conj)
        if mask == trivial_mask:
            break
    core = _from_mask(G, mask)
    assert core.is_normal()
    return core


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """Elements g with S^g = S."""
    _owned(G, S)
    arr = S.member_array()
    members = []
    for g in range(G.order):
        conj = np.sort(G.mul[G.mul[G.inv[g], arr], g])
        if np.array_equal(conj, arr):
            members.append(g)
    return _from_members(G, members)


def commutator_of_subgroups(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """The subgroup [A, B] generated by all commutators [a, b]."""
    _owned(G, A)
    _owned(G, B)
    values = kernels.commutator_values(G.mul, G.inv, A.member_array(), B.member_array())
    members = kernels.mul_closure(G.mul, G.identity, values)
    return _from_members(G, members)


def _join_closure(G: FiniteGroup, atoms: list[Subgroup]) -> list[Subgroup]:
    """Close a set of normal subgroups under pairwise join (= product set)."""
    found: dict[int, Subgroup] = {trivial_subgroup(G).mask: trivial_subgroup(G)}
    frontier: list[Subgroup] = []
    for atom in atoms:
        if atom.mask not in found:
            found[atom.mask] = atom
            frontier.append(atom)
    while frontier:
        current = frontier.pop()
        for other in list(found.values()):
            prod = kernels.product_set(G.mul, current.member_array(), other.member_array())
            mask = _mask_of(prod)
            if mask not in found:
                sub = _from_members(G, prod)
                found[mask] = sub
                frontier.append(sub)
    return sorted(found.values(), key=lambda s: (s.order, s.members))


def all_normal_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """Every normal subgroup, ordered by (order, member list).

    Walks the join-semilattice generated by the normal closures of single
    conjugacy classes; every normal subgroup is a join of those closures.
    """

    def build():
        cap = config.normal_subgroup_order_cap()
        if G.order > cap:
            raise CapExceededError(
                f"normal-subgroup enumeration capped at order {cap}, group has {G.order}"
            )
        labels = G.conjugacy_labels()
        atoms = []
        for rep in np.unique(labels):
            cls = np.nonzero(labels == rep)[0].astype(np.int32)
            members = kernels.mul_closure(G.mul, G.identity, cls)
            atoms.append(_from_members(G, members))
        out = tuple(_join_closure(G, atoms))
        for sub in out:
            assert sub.is_normal()
        return out

    return G.cached("all_normal_subgroups", build)


def normal_subgroups_of(H: Subgroup) -> tuple[Subgroup, ...]:
    """Normal subgroups of the subgroup H, returned as subgroups of H's parent."""
    G = H.parent
    cap = config.normal_subgroup_order_cap()
    if H.order > cap:
        raise CapExceededError(
            f"normal-subgroup enumeration capped at order {cap}, subgroup has {H.order}"
        )
    arr = H.member_array()
    seen: set[int] = set()
    atoms = []
    for x in H.members:
        if x in seen:
            continue
        orbit = np.unique(G.mul[G.mul[G.inv[arr], x], arr])
        seen.update(int(v) for v in orbit)
        members = kernels.mul_closure(G.mul, G.identity, orbit)
        atoms.append(_from_members(G, members))
    return tuple(_join_closure(G, atoms))


def symmetric_set_power(G: FiniteGroup, X: Iterable[int], r: int) -> tuple[int, ...]:
    """The r-fold product set of a symmetric, identity-containing set X.

    Because 1 is in X the powers form an increasing chain, so iteration stops
    early once the set stabilizes (later powers equal the stable set).
    """
    members = sorted({int(x) for x in X})
    arr = np.asarray(members, dtype=np.int32)
    if G.identity not in members:
        raise ValueError("set must contain the identity")
    if not np.array_equal(np.sort(G.inv[arr]), arr):
        raise ValueError("set must be symmetric (closed under inverses)")
    if r < 1:
        raise ValueError("power must be at least 1")
    current = arr
    for _ in range(r - 1):
        nxt = kernels.product_set(G.mul, current, arr)
        if nxt.size == current.size:
            break
        current = nxt
    return tuple(int(v) for v in current)


def enumerate_all_subgroups(G: FiniteGroup, limit: int = 100) -> tuple[Subgroup, ...]:
    """Every subgroup of G, by joining cyclic subgroups (test oracle, small G only)."""
    if G.order > limit:
        raise CapExceededError(f"full subgroup enumeration limited to order {limit}")
    cyclics: dict[int, Subgroup] = {}
    for x in range(G.order):
        sub = closure(G, (x,))
        cyclics.setdefault(sub.mask, sub)
    found: dict[int, Subgroup] = {trivial_subgroup(G).mask: trivial_subgroup(G)}
    frontier = list(cyclics.values())
    for sub in frontier:
        found.setdefault(sub.mask, sub)
    while frontier:
        current = frontier.pop()
        for cyc in cyclics.values():
            joined = closure(G, current.members + cyc.members)
            if joined.mask not in found:
                found[joined.mask] = joined
                frontier.append(joined)
    return tuple(sorted(found.values(), key=lambda s: (s.order, s.members)))


def as_group(S: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Materialize a subgroup as a FiniteGroup plus the embedding hom."""
    G = S.parent
    mem = S.member_array()
    table = np.searchsorted(mem, G.mul[np.ix_(mem, mem)]).astype(np.int32)
    identity = int(np.searchsorted(mem, G.identity))
    generators: list[int] = []
    covered = np.zeros(S.order, dtype=bool)
    covered[kernels.mul_closure(table, identity, np.asarray([], dtype=np.int32))] = True
    while not covered.all():
        x = int(np.nonzero(~covered)[0][0])
        generators.append(x)
        covered[:] = False
        covered[kernels.mul_closure(table, identity, np.asarray(generators, dtype=np.int32))] = True
    name = f"{G.name}.sub{S.order}" if G.name else None
    H = FiniteGroup(table, identity, generators, name=name)
    return H, GroupHom(H, G, mem)
