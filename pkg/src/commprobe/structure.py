"""Structural invariants: central series, Sylow subgroups, Fitting layers."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import config
from ._kernels import kernels
from .errors import CapExceededError
from .group import FiniteGroup, quotient_group
from .subgroups import (
    Subgroup,
    _from_members,
    _owned,
    all_normal_subgroups,
    as_group,
    center,
    closure,
    commutator_of_subgroups,
    full_subgroup,
    normal_core,
    normal_subgroups_of,
    normalizer,
    trivial_subgroup,
)

__all__ = [
    "CentralSeriesReport",
    "lower_central_series",
    "upper_central_series",
    "lower_central_term",
    "hypercenter_term",
    "lower_central_term_of",
    "upper_central_term_of",
    "nilpotency_class",
    "nilpotency_class_of",
    "is_nilpotent",
    "derived_subgroup",
    "perfect_core",
    "is_prime",
    "prime_factors",
    "sylow_subgroup",
    "p_core",
    "fitting_subgroup",
    "components",
    "layer_subgroup",
    "generalized_fitting",
    "exponent",
    "exponent_of",
    "power_subgroup",
]


@dataclass(frozen=True)
class CentralSeriesReport:
    """A central series up to its stabilization point.

    ``kind`` is "lower" or "upper". ``terms`` lists the distinct terms in
    series order; ``stabilized_at`` is the 0-based position of the final
    (stable) term, so for the lower series terms[i] is the (i+1)-th term.
    """

    kind: str
    terms: tuple[Subgroup, ...]
    stabilized_at: int

    def term(self, i: int) -> Subgroup:
        """The i-th term (lower series: 1-based; upper series: 0-based), clamped."""
        pos = i - 1 if self.kind == "lower" else i
        if pos < 0:
            raise ValueError(f"series index {i} out of range")
        return self.terms[min(pos, len(self.terms) - 1)]


def lower_central_series(G: FiniteGroup) -> CentralSeriesReport:
    def build():
        whole = full_subgroup(G)
        terms = [whole]
        while True:
            nxt = commutator_of_subgroups(G, terms[-1], whole)
            if nxt.mask == terms[-1].mask:
                break
            terms.append(nxt)
        return CentralSeriesReport("lower", tuple(terms), len(terms) - 1)

    return G.cached("lower_central_series", build)


def upper_central_series(G: FiniteGroup) -> CentralSeriesReport:
    """Upper central series, each term computed as a preimage from the quotient."""

    def build():
        terms = [trivial_subgroup(G)]
        while True:
            Q, proj = quotient_group(G, terms[-1])
            zq = center(Q)
            in_zq = np.zeros(Q.order, dtype=bool)
            in_zq[list(zq.members)] = True
            members = np.nonzero(in_zq[proj.mapping])[0]
            nxt = _from_members(G, members)
            if nxt.mask == terms[-1].mask:
                break
            terms.append(nxt)
        return CentralSeriesReport("upper", tuple(terms), len(terms) - 1)

    return G.cached("upper_central_series", build)


def lower_central_term(G: FiniteGroup, i: int) -> Subgroup:
    if i < 1:
        raise ValueError("lower central series terms are 1-based")
    return lower_central_series(G).term(i)


def hypercenter_term(G: FiniteGroup, i: int) -> Subgroup:
    if i < 0:
        raise ValueError("upper central series terms are 0-based")
    return upper_central_series(G).term(i)


def lower_central_term_of(H: Subgroup, i: int) -> Subgroup:
    """Term i of the lower central series of a subgroup, inside its parent."""
    if i < 1:
        raise ValueError("lower central series terms are 1-based")
    G = H.parent
    current = H
    for _ in range(i - 1):
        nxt = commutator_of_subgroups(G, current, H)
        if nxt.mask == current.mask:
            return current
        current = nxt
    return current


def upper_central_term_of(H: Subgroup, i: int) -> Subgroup:
    """Term i of the upper central series of a subgroup, inside its parent."""
    if i < 0:
        raise ValueError("upper central series terms are 0-based")
    G = H.parent
    arr = H.member_array()
    current_mask = 1 << G.identity if G.identity in H else 0
    current = _from_members(G, (G.identity,))
    if G.identity not in H:
        raise AssertionError("subgroup misses the identity")
    for _ in range(i):
        keep = []
        for h in H.members:
            comms = G.mul[G.mul[G.inv[h], G.inv[arr]], G.mul[h, arr]]
            if all((current_mask >> int(c)) & 1 for c in comms):
                keep.append(h)
        nxt = _from_members(G, keep)
        if nxt.mask == current.mask:
            return current
        current = nxt
        current_mask = current.mask
    return current


def nilpotency_class(G: FiniteGroup) -> int | None:
    """Nilpotency class, or None when the group is not nilpotent."""
    series = lower_central_series(G)
    if series.terms[-1].order != 1:
        return None
    return len(series.terms) - 1


def nilpotency_class_of(H: Subgroup) -> int | None:
    """Nilpotency class of a subgroup via its relative lower central series."""
    G = H.parent
    current = H
    count = 0
    while current.order != 1:
        nxt = commutator_of_subgroups(G, current, H)
        if nxt.mask == current.mask:
            return None
        current = nxt
        count += 1
    return count


def is_nilpotent(G: FiniteGroup) -> bool:
    return nilpotency_class(G) is not None


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    whole = full_subgroup(G)
    return G.cached("derived_subgroup", lambda: commutator_of_subgroups(G, whole, whole))


def perfect_core(H: Subgroup) -> Subgroup:
    """Stable term of the derived series of a subgroup."""
    G = H.parent
    current = H
    while True:
        nxt = commutator_of_subgroups(G, current, current)
        if nxt.mask == current.mask:
            return current
        current = nxt


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        part *= p
        n //= p
    return part


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown deterministically through normalizers.

    While the current p-subgroup P is short of full p-power order, p divides
    [N_G(P) : P], so some g in N_G(P) \\ P has a p-power-order power outside P;
    the least such g (by index, then by its p'-power) extends P.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")

    def build():
        target = _p_part(G.order, p)
        P = trivial_subgroup(G)
        orders = G.element_orders()
        while P.order < target:
            N = normalizer(G, P)
            extended = False
            for g in N.members:
                if g in P:
                    continue
                m = int(orders[g])
                while m % p == 0:
                    m //= p
                h = G.power(g, m)
                if h not in P:
                    P = closure(G, P.members + (h,))
                    extended = True
                    break
            if not extended:
                raise AssertionError(f"sylow growth stalled at order {P.order} (p={p})")
        return P

    return G.cached(f"sylow_{p}", build)


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    """The largest normal p-subgroup: the normal core of any Sylow p-subgroup."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return G.cached(f"p_core_{p}", lambda: normal_core(G, sylow_subgroup(G, p)))


def fitting_subgroup(G: FiniteGroup) -> Subgroup:
    """The Fitting subgroup: the join of the p-cores over primes dividing |G|."""

    def build():
        out = trivial_subgroup(G)
        for p in prime_factors(G.order):
            out = out.join(p_core(G, p))
        assert out.is_normal()
        assert nilpotency_class_of(out) is not None
        return out

    return G.cached("fitting_subgroup", build)


def _is_quasisimple(H: Subgroup) -> bool:
    if H.order == 1:
        return False
    G = H.parent
    if commutator_of_subgroups(G, H, H).mask != H.mask:
        return False
    Hg, _ = as_group(H)
    Q, _ = quotient_group(Hg, center(Hg))
    if Q.order == 1 or Q.is_abelian():
        return False
    return len(all_normal_subgroups(Q)) == 2


def components(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """Subnormal quasisimple subgroups, ordered by (order, member list).

    Perfect subgroups all live inside perfect cores, so the subnormal descent
    replaces each node by the perfect core of the normal subgroup before
    recursing; solvable branches vanish immediately.
    """

    def build():
        cap = config.normal_subgroup_order_cap()
        if G.order > cap:
            raise CapExceededError(
                f"component search capped at order {cap}, group has {G.order}"
            )
        start = perfect_core(full_subgroup(G))
        seen: set[int] = set()
        found: dict[int, Subgroup] = {}
        stack = []
        if start.order > 1:
            stack.append(start)
            seen.add(start.mask)
        while stack:
            H = stack.pop()
            if _is_quasisimple(H):
                found[H.mask] = H
            for N in normal_subgroups_of(H):
                if N.mask == H.mask:
                    continue
                core = perfect_core(N)
                if core.order > 1 and core.mask not in seen:
                    seen.add(core.mask)
                    stack.append(core)
        return tuple(sorted(found.values(), key=lambda s: (s.order, s.members)))

    return G.cached("components", build)


def layer_subgroup(G: FiniteGroup) -> Subgroup:
    """The layer E(G): the join of all components."""

    def build():
        out = trivial_subgroup(G)
        for comp in components(G):
            out = out.join(comp)
        return out

    return G.cached("layer_subgroup", build)


def generalized_fitting(G: FiniteGroup) -> Subgroup:
    """F*(G) = F(G) E(G); asserts normality and that it contains F(G)."""

    def build():
        F = fitting_subgroup(G)
        out = F.join(layer_subgroup(G))
        assert out.is_normal()
        assert F <= out
        return out

    return G.cached("generalized_fitting", build)


def exponent(G: FiniteGroup) -> int:
    def build():
        out = 1
        for k in np.unique(G.element_orders()):
            k = int(k)
            out = out * k // gcd(out, k)
        return out

    return G.cached("exponent", build)


def exponent_of(H: Subgroup) -> int:
    orders = H.parent.element_orders()
    out = 1
    for x in H.members:
        k = int(orders[x])
        out = out * k // gcd(out, k)
    return out


def power_subgroup(G: FiniteGroup, e: int) -> Subgroup:
    """The subgroup generated by all e-th powers."""
    n = G.order
    current = np.arange(n, dtype=np.int32)
    result = np.full(n, G.identity, dtype=np.int32)
    m = e
    if m < 0:
        current = G.inv[current]
        m = -m
    while m:
        if m & 1:
            result = G.mul[result, current]
        current = G.mul[current, current]
        m >>= 1
    return closure(G, np.unique(result))
