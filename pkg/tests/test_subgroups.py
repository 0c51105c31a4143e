"""Subgroup arithmetic and enumeration against brute-force oracles."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commprobe.catalog import builtin_group
from commprobe.errors import CapExceededError, ParentMismatchError
from commprobe.subgroups import (
    Subgroup,
    all_normal_subgroups,
    center,
    centralizer,
    centralizer_of_set,
    closure,
    commutator_of_subgroups,
    conjugacy_class_of,
    conjugacy_classes,
    enumerate_all_subgroups,
    full_subgroup,
    normal_closure,
    normal_core,
    normal_subgroups_of,
    normalizer,
    relative_class,
    relative_class_sizes,
    subgroup_from_members,
    symmetric_set_power,
    trivial_subgroup,
    as_group,
)

from oracles import (
    inv_of,
    oracle_all_subgroups,
    oracle_center,
    oracle_closure,
    oracle_commutator_subgroup,
    oracle_conjugacy_classes,
    oracle_centralizer,
    oracle_is_normal,
    oracle_is_subgroup,
    oracle_normal_subgroups,
    oracle_symmetric_power,
    table_of,
)


def test_closure_matches_oracle(small_group, rng):
    G = small_group
    table = table_of(G)
    for _ in range(8):
        seed = rng.sample(range(G.order), k=min(2, G.order))
        assert set(closure(G, seed).members) == oracle_closure(table, G.identity, seed)


def test_lagrange(small_group, rng):
    G = small_group
    seed = rng.sample(range(G.order), k=min(2, G.order))
    S = closure(G, seed)
    assert G.order == S.order * S.index


def test_subgroup_set_operations():
    G = builtin_group("D4")
    Z = center(G)
    full = full_subgroup(G)
    one = trivial_subgroup(G)
    assert one <= Z <= full
    assert (Z & full) == Z
    assert Z.join(one) == Z
    assert len(Z) == Z.order
    assert all(x in Z for x in Z)

    other = builtin_group("S3")
    with pytest.raises(ParentMismatchError):
        Z & center(other)


def test_center_matches_oracle(small_group):
    G = small_group
    assert set(center(G).members) == oracle_center(table_of(G))


def test_centralizer_matches_oracle(small_group):
    G = small_group
    table = table_of(G)
    for x in range(min(G.order, 8)):
        got = centralizer(G, x)
        assert set(got.members) == oracle_centralizer(table, [x], range(G.order))
        assert oracle_is_subgroup(table, G.identity, got.members)


def test_centralizer_of_set_restricted(small_group):
    G = small_group
    table = table_of(G)
    Z = center(G)
    got = centralizer_of_set(G, range(G.order), within=Z)
    assert set(got.members) == set(Z.members)
    got2 = centralizer_of_set(G, [G.identity])
    assert got2.order == G.order
    assert oracle_is_subgroup(table, G.identity, got.members)


def test_conjugacy_classes_match_oracle(small_group):
    G = small_group
    got = {frozenset(c) for c in conjugacy_classes(G)}
    expect = set(oracle_conjugacy_classes(table_of(G), inv_of(G)))
    assert got == expect


def test_conjugacy_class_of_and_sizes(small_group):
    G = small_group
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == G.order
    for cls in classes:
        for x in cls:
            assert conjugacy_class_of(G, x) == cls


def test_relative_class_within_subgroup(small_group, rng):
    G = small_group
    table = table_of(G)
    inv = inv_of(G)
    H = closure(G, rng.sample(range(G.order), k=min(2, G.order)))
    sizes = relative_class_sizes(G, H)
    for x in range(G.order):
        orbit = {table[table[inv[h]][x]][h] for h in H}
        assert set(relative_class(G, H, x)) == orbit
        assert sizes[x] == len(orbit)


def test_normal_closure_matches_definition(small_group, rng):
    G = small_group
    table = table_of(G)
    inv = inv_of(G)
    seed = rng.sample(range(G.order), k=min(2, G.order))
    N = normal_closure(G, seed)
    assert oracle_is_normal(table, inv, N.members)
    assert set(seed) <= set(N.members)
    # Least: every normal subgroup containing the seed contains N.
    for M in all_normal_subgroups(G):
        if set(seed) <= set(M.members):
            assert set(N.members) <= set(M.members)


def test_normal_core_matches_definition(small_group, rng):
    G = small_group
    table = table_of(G)
    inv = inv_of(G)
    S = closure(G, rng.sample(range(G.order), k=min(2, G.order)))
    C = normal_core(G, S)
    assert oracle_is_normal(table, inv, C.members)
    assert set(C.members) <= set(S.members)
    for M in all_normal_subgroups(G):
        if set(M.members) <= set(S.members):
            assert set(M.members) <= set(C.members)


def test_normalizer_is_largest_normalizing_subgroup():
    G = builtin_group("S4")
    P = closure(G, [next(x for x in range(24) if G.element_order(x) == 4)])
    N = normalizer(G, P)
    assert P <= N
    for g in N.members:
        assert set(P.conjugate_by(g).members) == set(P.members)


def test_commutator_of_subgroups_matches_oracle(small_group):
    G = small_group
    table = table_of(G)
    inv = inv_of(G)
    full = full_subgroup(G)
    got = commutator_of_subgroups(G, full, full)
    assert set(got.members) == oracle_commutator_subgroup(
        table, inv, range(G.order), range(G.order), G.identity
    )


def test_conjugate_by_is_isomorphic_image(small_group, rng):
    G = small_group
    S = closure(G, rng.sample(range(G.order), k=min(2, G.order)))
    for g in rng.sample(range(G.order), k=min(4, G.order)):
        T = S.conjugate_by(g)
        assert T.order == S.order
        table = table_of(G)
        inv = inv_of(G)
        assert set(T.members) == {table[table[inv[g]][x]][g] for x in S.members}


@pytest.mark.parametrize("name", ["Z1", "Z6", "S3", "D4", "Q8", "E8", "Z12", "A4"])
def test_all_normal_subgroups_match_oracle(name):
    G = builtin_group(name)
    cap = max(1, int(math.log2(G.order))) if G.order > 1 else 1
    expect = oracle_normal_subgroups(table_of(G), inv_of(G), G.identity, cap)
    got = {frozenset(N.members) for N in all_normal_subgroups(G)}
    assert got == expect


@pytest.mark.parametrize("name", ["Z1", "Z6", "S3", "D4", "Q8", "E8"])
def test_enumerate_all_subgroups_matches_oracle(name):
    G = builtin_group(name)
    cap = max(1, int(math.log2(G.order))) if G.order > 1 else 1
    expect = oracle_all_subgroups(table_of(G), G.identity, cap)
    got = {frozenset(S.members) for S in enumerate_all_subgroups(G)}
    assert got == expect


def test_enumerate_all_subgroups_cap():
    with pytest.raises(CapExceededError):
        enumerate_all_subgroups(builtin_group("S4"), limit=10)


def test_normal_subgroups_of_subgroup():
    G = builtin_group("S4")
    from commprobe.structure import sylow_subgroup

    P = sylow_subgroup(G, 2)
    inside = normal_subgroups_of(P)
    # Normality here is relative to P, not to G.
    Pg, _ = as_group(P)
    expect = oracle_normal_subgroups(table_of(Pg), inv_of(Pg), Pg.identity, 3)
    assert len(inside) == len(expect)
    orders = sorted(N.order for N in inside)
    assert orders == sorted(len(s) for s in expect)


def test_as_group_embeds_faithfully(small_group, rng):
    G = small_group
    S = closure(G, rng.sample(range(G.order), k=min(2, G.order)))
    H, embed = as_group(S)
    assert H.order == S.order
    for a in range(H.order):
        for b in range(H.order):
            assert embed(H.mul_elems(a, b)) == G.mul_elems(embed(a), embed(b))


class TestSymmetricSetPower:
    def test_matches_oracle(self, small_group, rng):
        G = small_group
        table = table_of(G)
        pool = list(range(G.order))
        for _ in range(6):
            base = rng.sample(pool, k=min(3, G.order))
            xs = sorted({G.identity, *base, *(G.inv_elem(x) for x in base)})
            for r in (1, 2, 3):
                got = symmetric_set_power(G, xs, r)
                assert set(got) == oracle_symmetric_power(table, xs, r)

    def test_rejects_asymmetric(self):
        G = builtin_group("S3")
        rotation = next(x for x in range(6) if G.element_order(x) == 3)
        with pytest.raises(ValueError):
            symmetric_set_power(G, [G.identity, rotation], 2)

    def test_rejects_missing_identity(self):
        G = builtin_group("S3")
        flip = next(x for x in range(6) if G.element_order(x) == 2)
        with pytest.raises(ValueError):
            symmetric_set_power(G, [flip], 2)

    def test_rejects_zero_power(self):
        G = builtin_group("S3")
        with pytest.raises(ValueError):
            symmetric_set_power(G, [G.identity], 0)

    def test_stabilizes_at_generated_subgroup(self, small_group, rng):
        G = small_group
        base = rng.sample(range(G.order), k=min(2, G.order))
        xs = sorted({G.identity, *base, *(G.inv_elem(x) for x in base)})
        target = closure(G, xs)
        assert set(symmetric_set_power(G, xs, G.order)) == set(target.members)


@settings(max_examples=30, deadline=None)
@given(
    name=st.sampled_from(["S3", "D4", "Z12", "A4", "Q8"]),
    data=st.data(),
)
def test_join_is_least_upper_bound(name, data):
    G = builtin_group(name)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    A = closure(G, [a])
    B = closure(G, [b])
    J = A.join(B)
    assert A <= J and B <= J
    assert set(J.members) == oracle_closure(table_of(G), G.identity, [a, b])


@settings(max_examples=30, deadline=None)
@given(
    name=st.sampled_from(["S3", "D4", "Z12", "A4"]),
    data=st.data(),
)
def test_intersection_is_greatest_lower_bound(name, data):
    G = builtin_group(name)
    a = data.draw(st.integers(0, G.order - 1))
    b = data.draw(st.integers(0, G.order - 1))
    A = closure(G, [a])
    B = closure(G, [b])
    M = A & B
    assert set(M.members) == set(A.members) & set(B.members)
    assert M <= A and M <= B
