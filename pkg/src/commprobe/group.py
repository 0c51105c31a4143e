"""Finite groups as explicit multiplication tables over indexed elements."""
from __future__ import annotations

import re
from typing import Callable, Iterable, Sequence, TYPE_CHECKING

import numpy as np

from . import config
from ._kernels import kernels
from .errors import GroupTooLargeError, TableValidationError

if TYPE_CHECKING:
    from .subgroups import Subgroup

__all__ = [
    "Permutation",
    "FiniteGroup",
    "GroupHom",
    "group_from_generators",
    "group_from_cayley_table",
    "quotient_group",
    "direct_product",
]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A permutation of {0, ..., degree-1} stored by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        self.images = imgs

    @property
    def degree(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from disjoint cycles over 0-based points."""
        images = list(range(degree))
        touched = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise ValueError(f"point {point} outside degree {degree}")
                if point in touched:
                    raise ValueError(f"point {point} repeated across cycles")
                touched.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return Permutation(images)

    @staticmethod
    def from_cycle_string(text: str, degree: int | None = None) -> "Permutation":
        """Parse 1-based cycle notation like ``(1 2 3)(4 5)``; ``()`` is the identity."""
        compact = text.strip()
        if not compact:
            raise ValueError("empty permutation text")
        consumed = "".join(_CYCLE_RE.findall(compact))
        stripped = re.sub(r"[\s(),]", "", compact)
        if re.sub(r"[\s,]", "", consumed) != stripped:
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        max_point = 0
        for body in _CYCLE_RE.findall(compact):
            points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
            if any(p < 1 for p in points):
                raise ValueError(f"cycle points are 1-based, got {points}")
            if points:
                max_point = max(max_point, max(points))
                cycles.append([p - 1 for p in points])
        if degree is None:
            degree = max_point
        elif max_point > degree:
            raise ValueError(f"cycle uses point {max_point} beyond degree {degree}")
        return Permutation.from_cycles(cycles, degree)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        images = [0] * self.degree
        for i, j in enumerate(self.images):
            images[j] = i
        return Permutation(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, 0-based, least point first, sorted by least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_string(self) -> str:
        """1-based cycle notation; the identity prints as ``()``."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in cyc) + ")" for cyc in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def _bfs_derivations(
    mul: np.ndarray, identity: int, generators: Sequence[int]
) -> tuple[tuple[int, int, int], ...]:
    """Discovery triples (element, parent, generator position) in BFS order."""
    n = mul.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[identity] = True
    queue = [identity]
    triples = []
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for gi, g in enumerate(generators):
            y = int(mul[x, g])
            if not seen[y]:
                seen[y] = True
                queue.append(y)
                triples.append((y, x, gi))
    if not seen.all():
        missing = int(np.nonzero(~seen)[0][0])
        raise ValueError(f"generators do not generate the group (element {missing} unreached)")
    return tuple(triples)


class FiniteGroup:
    """A finite group on elements 0..order-1 with explicit tables.

    Instances are immutable once built; derived data (conjugacy classes,
    normal subgroups, series) is cached internally. Use the module factories
    rather than the constructor.
    """

    __slots__ = (
        "name",
        "order",
        "mul",
        "inv",
        "identity",
        "generators",
        "perms",
        "degree",
        "derivations",
        "assoc_validation",
        "_cache",
    )

    def __init__(
        self,
        mul: np.ndarray,
        identity: int,
        generators: Sequence[int],
        *,
        name: str | None = None,
        perms: tuple[tuple[int, ...], ...] | None = None,
        degree: int | None = None,
        assoc_validation: str = "by-construction",
    ):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        n = mul.shape[0]
        self.name = name
        self.order = n
        self.mul = mul
        self.identity = int(identity)
        self.generators = tuple(int(g) for g in generators)
        self.perms = perms
        self.degree = degree
        self.assoc_validation = assoc_validation
        rng = np.arange(n, dtype=np.int32)
        if not (mul[self.identity] == rng).all() or not (mul[:, self.identity] == rng).all():
            raise TableValidationError("identity", f"element {identity} is not a two-sided identity")
        inv = np.ascontiguousarray((mul == self.identity).argmax(axis=1), dtype=np.int32)
        if not (mul[rng, inv] == self.identity).all() or not (mul[inv, rng] == self.identity).all():
            raise TableValidationError("inverse", "inverse table is not two-sided")
        self.inv = inv
        self.derivations = _bfs_derivations(mul, self.identity, self.generators)
        mul.flags.writeable = False
        inv.flags.writeable = False
        self._cache: dict = {}

    # -- element arithmetic -------------------------------------------------

    def mul_elems(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inv_elem(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, x: int, g: int) -> int:
        """g^-1 * x * g."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def comm(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        return int(self.mul[self.mul[self.inv[a], self.inv[b]], self.mul[a, b]])

    def power(self, x: int, m: int) -> int:
        result = self.identity
        base = int(x)
        if m < 0:
            base = int(self.inv[base])
            m = -m
        while m:
            if m & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            m >>= 1
        return result

    def element_orders(self) -> np.ndarray:
        return self.cached("element_orders", lambda: kernels.element_orders(self.mul, self.identity))

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def is_abelian(self) -> bool:
        return self.cached("is_abelian", lambda: bool((self.mul == self.mul.T).all()))

    def conjugacy_labels(self) -> np.ndarray:
        """Per element, the least element index of its conjugacy class."""
        return self.cached("conj_labels", lambda: kernels.conjugacy_partition(self.mul, self.inv))

    def element_label(self, x: int) -> str:
        if self.perms is not None:
            return Permutation(self.perms[x]).cycle_string()
        return str(x)

    def describe(self) -> str:
        return f"{self.name or 'group'} (order {self.order})"

    def cached(self, key: str, builder: Callable):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.describe()}>"


class GroupHom:
    """A verified homomorphism between two finite groups."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping: Iterable[int]):
        arr = np.ascontiguousarray(list(mapping) if not isinstance(mapping, np.ndarray) else mapping, dtype=np.int32)
        if arr.shape != (source.order,):
            raise ValueError(f"mapping must list an image for each of {source.order} elements")
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= target.order:
            raise ValueError("mapping image out of range")
        left = arr[source.mul]
        right = target.mul[np.ix_(arr, arr)]
        if not (left == right).all():
            x, y = map(int, np.argwhere(left != right)[0])
            raise ValueError(f"not a homomorphism: images of {x}*{y} disagree")
        self.source = source
        self.target = target
        arr.flags.writeable = False
        self.mapping = arr

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(np.unique(self.mapping)) == self.source.order

    def kernel_members(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.nonzero(self.mapping == self.target.identity)[0])

    def image_members(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unique(self.mapping))

    def __repr__(self) -> str:
        return f"<GroupHom {self.source.describe()} -> {self.target.describe()}>"


def group_from_generators(
    generators: Sequence[Permutation],
    *,
    degree: int | None = None,
    name: str | None = None,
    max_order: int | None = None,
) -> FiniteGroup:
    """Group generated by permutations, elements in BFS discovery order.

    The identity gets index 0. An empty generator list needs an explicit
    ``degree`` and yields the trivial group.
    """
    gens = list(generators)
    if gens:
        degrees = {p.degree for p in gens}
        if len(degrees) != 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        if degree is None:
            degree = gens[0].degree
        elif degree != gens[0].degree:
            raise ValueError(f"declared degree {degree} != generator degree {gens[0].degree}")
    elif degree is None:
        raise ValueError("empty generator list needs an explicit degree")
    cap = max_order if max_order is not None else config.max_group_order()
    identity = tuple(range(degree))
    elements: list[tuple[int, ...]] = [identity]
    index = {identity: 0}
    gen_images = [p.images for p in gens]
    head = 0
    while head < len(elements):
        current = elements[head]
        head += 1
        for images in gen_images:
            composed = tuple(images[i] for i in current)
            if composed not in index:
                if len(elements) >= cap:
                    raise GroupTooLargeError(cap, len(elements))
                index[composed] = len(elements)
                elements.append(composed)
    perm_arr = np.ascontiguousarray(elements, dtype=np.int32)
    mul = kernels.perm_mul_table(perm_arr)
    generator_indices = tuple(index[p.images] for p in gens)
    return FiniteGroup(
        mul,
        0,
        generator_indices,
        name=name,
        perms=tuple(elements),
        degree=degree,
        assoc_validation="by-construction",
    )


def group_from_cayley_table(table, *, name: str | None = None) -> FiniteGroup:
    """Group from a multiplication table, with group-axiom validation.

    Associativity is checked in full for tables up to the configured size
    limit, and on a seeded random sample of 10*n^2 triples above it; the
    chosen mode is recorded in ``assoc_validation``.
    """
    mul = np.ascontiguousarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise TableValidationError("shape", f"expected a nonempty square table, got shape {mul.shape}")
    n = mul.shape[0]
    if n > config.max_group_order():
        raise GroupTooLargeError(config.max_group_order(), n)
    bad = (mul < 0) | (mul >= n)
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise TableValidationError("range", f"entry at ({i}, {j}) is {int(mul[i, j])}, outside 0..{n - 1}", (i, j))
    mul = mul.astype(np.int32)
    rng = np.arange(n, dtype=np.int32)
    row_ok = (mul == rng).all(axis=1)
    identity = None
    for e in np.nonzero(row_ok)[0]:
        if (mul[:, e] == rng).all():
            identity = int(e)
            break
    if identity is None:
        raise TableValidationError("identity", "no two-sided identity element")
    has_inverse = (mul == identity).any(axis=1)
    if not has_inverse.all():
        x = int(np.nonzero(~has_inverse)[0][0])
        raise TableValidationError("inverse", f"element {x} has no right inverse", (x,))
    if n <= config.FULL_ASSOCIATIVITY_LIMIT:
        witness = kernels.first_assoc_violation(mul)
        if witness is not None:
            a, b, c = witness
            raise TableValidationError(
                "associativity", f"(a*b)*c != a*(b*c) at (a, b, c) = ({a}, {b}, {c})", witness
            )
        assoc = "full"
    else:
        sampler = np.random.default_rng(0)
        count = config.SAMPLED_ASSOCIATIVITY_FACTOR * n * n
        triples = sampler.integers(0, n, size=(count, 3))
        a, b, c = triples[:, 0], triples[:, 1], triples[:, 2]
        bad_idx = np.nonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])[0]
        if bad_idx.size:
            k = int(bad_idx[0])
            witness = (int(a[k]), int(b[k]), int(c[k]))
            raise TableValidationError(
                "associativity",
                f"(a*b)*c != a*(b*c) at sampled (a, b, c) = {witness}",
                witness,
            )
        assoc = "sampled"
    generators: list[int] = []
    members = kernels.mul_closure(mul, identity, np.asarray(generators, dtype=np.int32))
    covered = np.zeros(n, dtype=bool)
    covered[members] = True
    while not covered.all():
        x = int(np.nonzero(~covered)[0][0])
        generators.append(x)
        members = kernels.mul_closure(mul, identity, np.asarray(generators, dtype=np.int32))
        covered[:] = False
        covered[members] = True
    return FiniteGroup(mul, identity, generators, name=name, assoc_validation=assoc)


def quotient_group(G: FiniteGroup, N: "Subgroup") -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with the projection homomorphism.

    Cosets are labeled by their least member, in ascending order.
    """
    from .errors import NotNormalError, ParentMismatchError

    if N.parent is not G:
        raise ParentMismatchError("subgroup belongs to a different parent group")
    if not N.is_normal():
        raise NotNormalError(f"subgroup of order {N.order} is not normal in {G.describe()}")
    n = G.order
    mem = np.asarray(N.members, dtype=np.int32)
    rep_of = G.mul[np.ix_(mem, np.arange(n, dtype=np.int32))].min(axis=0)
    rep_values = np.unique(rep_of)
    rep_to_q = np.zeros(n, dtype=np.int32)
    rep_to_q[rep_values] = np.arange(len(rep_values), dtype=np.int32)
    proj = rep_to_q[rep_of]
    qmul = proj[G.mul[np.ix_(rep_values, rep_values)]]
    q_identity = int(proj[G.identity])
    q_gens = tuple(dict.fromkeys(int(proj[g]) for g in G.generators))
    qname = f"{G.name}/N{N.order}" if G.name else None
    Q = FiniteGroup(qmul, q_identity, q_gens, name=qname, assoc_validation="by-construction")
    return Q, GroupHom(G, Q, proj)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product on pairs ordered lexicographically: (a, b) -> a*|H| + b."""
    ng, nh = G.order, H.order
    n = ng * nh
    cap = config.max_group_order()
    if n > cap:
        raise GroupTooLargeError(cap, n)
    mul = (
        G.mul.astype(np.int64)[:, None, :, None] * nh + H.mul.astype(np.int64)[None, :, None, :]
    ).reshape(n, n)
    identity = G.identity * nh + H.identity
    generators = tuple(g * nh + H.identity for g in G.generators) + tuple(
        G.identity * nh + h for h in H.generators
    )
    perms = None
    degree = None
    if G.perms is not None and H.perms is not None:
        dg = G.degree or 0
        degree = dg + (H.degree or 0)
        perms = tuple(
            tuple(G.perms[a]) + tuple(dg + i for i in H.perms[b])
            for a in range(ng)
            for b in range(nh)
        )
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return FiniteGroup(
        mul.astype(np.int32), identity, generators, name=name, perms=perms, degree=degree
    )
