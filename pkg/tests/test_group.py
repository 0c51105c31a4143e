"""Group construction, element arithmetic, quotients, and products."""
from __future__ import annotations

import numpy as np
import pytest

from commprobe.catalog import builtin_group
from commprobe.errors import GroupTooLargeError, NotNormalError, TableValidationError
from commprobe.group import (
    FiniteGroup,
    GroupHom,
    Permutation,
    direct_product,
    group_from_cayley_table,
    group_from_generators,
    quotient_group,
)
from commprobe.subgroups import center, closure, subgroup_from_members

from oracles import oracle_element_order, oracle_exponent, oracle_inverse, table_of


class TestPermutation:
    def test_from_cycle_string_round_trip(self):
        p = Permutation.from_cycle_string("(1 2 3)(4 5)", degree=6)
        assert p.images == (1, 2, 0, 4, 3, 5)
        assert Permutation.from_cycle_string(p.cycle_string(), degree=6) == p

    def test_identity_cycle_string(self):
        assert Permutation.identity(4).cycle_string() == "()"

    def test_composition_order(self):
        a = Permutation.from_cycle_string("(1 2)", degree=3)
        b = Permutation.from_cycle_string("(2 3)", degree=3)
        # a*b means apply a first, then b.
        assert (a * b)((1 - 1)) == 2

    def test_inverse(self):
        p = Permutation.from_cycle_string("(1 2 3 4)", degree=4)
        q = p.inverse()
        assert all((p * q)(i) == i for i in range(4))

    def test_bad_cycle_rejected(self):
        with pytest.raises(ValueError):
            Permutation.from_cycles([(0, 0)], degree=3)


class TestGroupFromGenerators:
    def test_trivial_group(self):
        G = group_from_generators([], degree=1)
        assert G.order == 1
        assert G.identity == 0

    def test_symmetric_group_order(self):
        G = builtin_group("S4")
        assert G.order == 24
        assert G.identity == 0

    def test_identity_is_index_zero(self, small_group):
        assert small_group.identity == 0
        assert small_group.perms is not None
        assert small_group.perms[0] == tuple(range(small_group.degree))

    def test_generators_generate(self, small_group):
        G = small_group
        assert closure(G, G.generators).order == G.order

    def test_order_cap(self):
        gen = Permutation.from_cycle_string("(1 2 3 4 5 6 7)", degree=7)
        with pytest.raises(GroupTooLargeError):
            group_from_generators([gen], max_order=5)

    def test_mixed_degrees_rejected(self):
        a = Permutation.from_cycle_string("(1 2)", degree=2)
        b = Permutation.from_cycle_string("(1 2 3)", degree=3)
        with pytest.raises(ValueError):
            group_from_generators([a, b])


class TestTableValidation:
    def test_inverse_table_matches_oracle(self, small_group):
        G = small_group
        assert G.inv.tolist() == oracle_inverse(table_of(G), G.identity)

    def test_tables_are_frozen(self, small_group):
        with pytest.raises(ValueError):
            small_group.mul[0, 0] = 1

    def test_cayley_round_trip(self, small_group):
        G = small_group
        H = group_from_cayley_table(G.mul)
        assert np.array_equal(H.mul, G.mul)
        assert H.assoc_validation == "full"

    def test_rejects_non_square(self):
        with pytest.raises(TableValidationError):
            group_from_cayley_table([[0, 1]])

    def test_rejects_out_of_range(self):
        with pytest.raises(TableValidationError) as info:
            group_from_cayley_table([[0, 1], [1, 5]])
        assert info.value.kind == "range"

    def test_rejects_missing_identity(self):
        with pytest.raises(TableValidationError) as info:
            group_from_cayley_table([[1, 0], [0, 0]])
        assert info.value.kind == "identity"

    def test_rejects_non_associative(self):
        # Right-zero-ish patched table with identity: fails associativity.
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(TableValidationError) as info:
            group_from_cayley_table(table)
        assert info.value.kind == "associativity"


class TestElementArithmetic:
    def test_mul_inv_conj_comm(self, small_group):
        G = small_group
        table = table_of(G)
        for a in range(min(G.order, 8)):
            for b in range(min(G.order, 8)):
                assert G.mul_elems(a, b) == table[a][b]
                assert table[a][G.inv_elem(a)] == G.identity
                expect_conj = table[table[G.inv_elem(b)][a]][b]
                assert G.conj(a, b) == expect_conj
                lhs = table[a][G.comm(a, b)]
                assert lhs == table[G.inv_elem(b)][table[a][b]]

    def test_power_matches_iteration(self, small_group):
        G = small_group
        for x in range(min(G.order, 6)):
            acc = G.identity
            for m in range(1, 7):
                acc = G.mul_elems(acc, x)
                assert G.power(x, m) == acc
            assert G.power(x, 0) == G.identity
            assert G.power(x, -3) == G.inv_elem(G.power(x, 3))

    def test_element_order(self, small_group):
        G = small_group
        table = table_of(G)
        for x in range(G.order):
            assert G.element_order(x) == oracle_element_order(table, G.identity, x)

    def test_exponent(self, medium_group):
        from commprobe.structure import exponent

        G = medium_group
        assert exponent(G) == oracle_exponent(table_of(G), G.identity)


class TestQuotient:
    def test_quotient_of_s4_by_v4(self):
        G = builtin_group("S4")
        from commprobe.structure import fitting_subgroup

        V = fitting_subgroup(G)
        Q, proj = quotient_group(G, V)
        assert V.order == 4
        assert Q.order == 6
        assert proj.kernel_members() == V.members

    def test_projection_is_homomorphism(self):
        G = builtin_group("D4")
        Z = center(G)
        Q, proj = quotient_group(G, Z)
        for a in range(G.order):
            for b in range(G.order):
                assert proj(G.mul_elems(a, b)) == Q.mul_elems(proj(a), proj(b))

    def test_rejects_non_normal(self):
        G = builtin_group("S3")
        flip = next(x for x in range(6) if G.element_order(x) == 2)
        S = closure(G, [flip])
        with pytest.raises(NotNormalError):
            quotient_group(G, S)


class TestDirectProduct:
    def test_orders_multiply(self):
        A = builtin_group("S3")
        B = builtin_group("Z4")
        P = direct_product(A, B)
        assert P.order == 24

    def test_componentwise_multiplication(self):
        A = builtin_group("S3")
        B = builtin_group("Z4")
        P = direct_product(A, B)
        nb = B.order
        for a1, b1, a2, b2 in [(1, 2, 3, 1), (5, 0, 2, 3), (0, 1, 0, 2)]:
            left = P.mul_elems(a1 * nb + b1, a2 * nb + b2)
            assert left == A.mul_elems(a1, a2) * nb + B.mul_elems(b1, b2)

    def test_center_of_product(self):
        A = builtin_group("S3")
        B = builtin_group("Z4")
        P = direct_product(A, B)
        assert center(P).order == center(A).order * center(B).order


class TestGroupHom:
    def test_validates_multiplicativity(self):
        G = builtin_group("Z4")
        with pytest.raises(Exception):
            GroupHom(G, G, [0, 2, 1, 3])

    def test_identity_hom(self):
        G = builtin_group("Z4")
        h = GroupHom(G, G, list(range(4)))
        assert h.is_bijective()
        assert h.kernel_members() == (0,)


def test_subgroup_from_members_validates():
    G = builtin_group("S3")
    rotation = next(x for x in range(6) if G.element_order(x) == 3)
    with pytest.raises(Exception):
        subgroup_from_members(G, [0, rotation])


def test_describe_mentions_name_and_order():
    G = builtin_group("Q8")
    text = G.describe()
    assert "Q8" in text and "8" in text
