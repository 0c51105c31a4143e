"""The small-class decomposition pipeline and its exact bound checks."""
from __future__ import annotations

import json
from fractions import Fraction

import pytest

from commprobe.catalog import builtin_group
from commprobe.decompose import (
    commutator_bound_data,
    conjugate_closure_data,
    decompose,
    gamma_class_data,
    series_stabilizer,
    small_ambient_class_set,
    small_relative_class_set,
)
from commprobe.errors import NotNormalError, VerificationFailure
from commprobe.probability import relative_commuting_probability
from commprobe.structure import derived_subgroup, fitting_subgroup, sylow_subgroup
from commprobe.subgroups import (
    centralizer,
    closure,
    full_subgroup,
    normal_closure,
    normal_core,
    subgroup_from_members,
    trivial_subgroup,
)

from oracles import inv_of, oracle_is_normal, table_of


def brute_small_ambient(G, K, eps: Fraction):
    """X = {x in K : |x^G| <= 2/eps} by per-element conjugation."""
    table, inv = table_of(G), inv_of(G)
    out = []
    for x in K.members:
        orbit = {table[table[inv[g]][x]][g] for g in range(G.order)}
        if Fraction(len(orbit)) <= Fraction(2, 1) / eps:
            out.append(x)
    return tuple(out)


def brute_small_relative(G, K, eps: Fraction):
    """Y = {y in G : |y^K| <= 2/eps} by per-element conjugation."""
    table, inv = table_of(G), inv_of(G)
    out = []
    for y in range(G.order):
        orbit = {table[table[inv[k]][y]][k] for k in K.members}
        if Fraction(len(orbit)) <= Fraction(2, 1) / eps:
            out.append(y)
    return tuple(out)


class TestClassSets:
    @pytest.mark.parametrize("name", ["S3", "S4", "Q8", "Heis27", "A4"])
    @pytest.mark.parametrize("eps_text", ["1/8", "1/2", "3/4"])
    def test_match_brute_force(self, name, eps_text):
        G = builtin_group(name)
        eps = Fraction(eps_text)
        for K in (full_subgroup(G), derived_subgroup(G)):
            assert small_ambient_class_set(G, K, eps) == brute_small_ambient(G, K, eps)
            assert small_relative_class_set(G, K, eps) == brute_small_relative(G, K, eps)

    def test_sets_are_symmetric_and_contain_identity(self):
        G = builtin_group("S4")
        K = full_subgroup(G)
        X = small_ambient_class_set(G, K, Fraction(1, 2))
        Y = small_relative_class_set(G, K, Fraction(1, 2))
        for S in (X, Y):
            assert G.identity in S
            assert sorted(G.inv_elem(x) for x in S) == sorted(S)


class TestAnchorS3:
    """The worked half-threshold example on the 6-element symmetric group."""

    def setup_method(self):
        self.G = builtin_group("S3")
        self.report = decompose(self.G, full_subgroup(self.G), Fraction(1, 2))

    def test_hypothesis_holds(self):
        assert self.report.pr == Fraction(1, 2)
        assert self.report.hypothesis_holds

    def test_x_covers_everything_at_half(self):
        # 2/eps = 4 admits the size-3 transposition class, so X = K = G.
        assert len(self.report.x_set) == 6
        assert self.report.b.order == 6
        assert self.report.index_k_b == 1

    def test_x_shrinks_to_rotations_at_three_quarters(self):
        # 2/eps = 8/3 < 3 excludes transpositions; only rotations remain.
        report = decompose(self.G, full_subgroup(self.G), Fraction(3, 4))
        assert len(report.x_set) == 3
        assert report.b.order == 3

    def test_e_and_t_are_everything(self):
        assert self.report.e.order == 6
        assert self.report.t.order == 6
        assert self.report.index_g_e == 1
        assert self.report.index_g_t == 1

    def test_tb_commutator_is_rotation_subgroup(self):
        assert self.report.tb_commutator.order == 3
        assert self.report.n.order == 3

    def test_b0_is_whole_group(self):
        assert self.report.b0.order == 6
        assert self.report.b0_contained_in_k

    def test_stabilizer(self):
        h = series_stabilizer(self.G, full_subgroup(self.G), self.report)
        assert h.order == 3
        assert self.report.h == h

    def test_post_quotient_present(self):
        # B0 = G has a nontrivial derived subgroup, so the dual view ran.
        post = self.report.post_quotient
        assert post is not None
        assert post["derived_order"] == 3
        assert post["quotient_order"] == 2
        assert post["B_order"] == post["T_order"] == 2

    def test_json_round_trip(self):
        payload = self.report.to_json_dict()
        text = json.dumps(payload)
        back = json.loads(text)
        assert back["actual_pr"] == "1/2"
        assert back["index_K_B"] == 1
        assert sorted(back["B"]) == list(self.report.b.members)


class TestHypothesisGate:
    def test_high_threshold_never_fails(self):
        G = builtin_group("S3")
        report = decompose(G, full_subgroup(G), Fraction(9, 10))
        assert not report.hypothesis_holds
        assert report.b.order == 3
        assert report.e.order == 3
        assert report.t.order == 3

    def test_threshold_validation(self):
        G = builtin_group("S3")
        with pytest.raises(ValueError):
            decompose(G, full_subgroup(G), Fraction(0))
        with pytest.raises(ValueError):
            decompose(G, full_subgroup(G), Fraction(3, 2))

    @pytest.mark.parametrize("name", ["S3", "D4", "Q8", "S4", "Heis27", "SL23", "A4"])
    @pytest.mark.parametrize("eps_text", ["1/8", "1/4", "1/2", "5/8", "3/4"])
    def test_bounds_enforced_when_hypothesis_holds(self, name, eps_text):
        G = builtin_group(name)
        eps = Fraction(eps_text)
        for K in (full_subgroup(G), derived_subgroup(G), fitting_subgroup(G)):
            report = decompose(G, K, eps)
            if not report.hypothesis_holds:
                continue
            limit = Fraction(2, 1) / eps
            assert Fraction(report.index_k_b) <= limit
            assert Fraction(report.index_g_e) <= limit
            assert 2 * len(report.x_set) > eps * K.order
            assert 2 * len(report.y_set) > eps * G.order
            steps = -(-6 * eps.denominator // eps.numerator)
            assert Fraction(report.max_class_b_in_g) <= limit**steps


class TestChainInvariants:
    @pytest.mark.parametrize("name", ["S3", "S4", "Q8", "A4", "Heis27"])
    def test_pieces_are_normal_and_nested(self, name):
        G = builtin_group(name)
        table, inv = table_of(G), inv_of(G)
        report = decompose(G, full_subgroup(G), Fraction(1, 4))
        assert oracle_is_normal(table, inv, report.t.members)
        assert oracle_is_normal(table, inv, report.n.members)
        assert oracle_is_normal(table, inv, report.b0.members)
        assert report.b <= report.b0
        assert set(report.tb_commutator.members) <= set(report.n.members)
        assert report.t <= report.e

    def test_t_is_core_of_e(self):
        G = builtin_group("S4")
        report = decompose(G, full_subgroup(G), Fraction(1, 4))
        assert report.t == normal_core(G, report.e)

    def test_b0_is_normal_closure_of_b(self):
        G = builtin_group("S4")
        report = decompose(G, derived_subgroup(G), Fraction(1, 4))
        assert report.b0 == normal_closure(G, report.b)


class TestStabilizer:
    def test_definition_by_brute_force(self):
        G = builtin_group("S4")
        K = derived_subgroup(G)
        report = decompose(G, K, Fraction(1, 4))
        h = series_stabilizer(G, K, report)
        expect = []
        for g in report.t.members:
            centralizes = all(G.comm(n, g) == G.identity for n in report.n.members)
            pushes_in = all(G.comm(k, g) in report.b0 for k in K.members)
            if centralizes and pushes_in:
                expect.append(g)
        assert list(h.members) == expect

    def test_requires_normal_subgroup(self):
        G = builtin_group("S3")
        flip = next(x for x in range(6) if G.element_order(x) == 2)
        K = closure(G, [flip])
        report = decompose(G, K, Fraction(1, 2))
        assert report.h is None
        with pytest.raises(NotNormalError):
            series_stabilizer(G, K, report)

    @pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8", "A4", "SL23", "Heis27"])
    def test_intersection_in_third_hypercenter(self, name):
        from commprobe.structure import upper_central_term_of

        G = builtin_group(name)
        for K in (full_subgroup(G), derived_subgroup(G)):
            report = decompose(G, K, Fraction(1, 4))
            if report.h is None:
                continue
            inter = K & report.h
            assert inter <= upper_central_term_of(report.h, 3)


class TestSupportingData:
    def test_commutator_bound_data_on_s3(self):
        G = builtin_group("S3")
        A = derived_subgroup(G)
        data = commutator_bound_data(G, A, A)
        assert data.commutator_order == 1
        assert data.commutator_abelian
        assert data.m_a == data.m_b == 1
        assert data.a_normal and data.b_normal

    def test_commutator_bound_matches_direct_count(self):
        G = builtin_group("S4")
        A = fitting_subgroup(G)
        B = derived_subgroup(G)
        data = commutator_bound_data(G, A, B)
        comms = {G.comm(a, b) for a in A.members for b in B.members}
        target = closure(G, comms)
        assert data.commutator_order == target.order
        m_a = max(
            A.order // (centralizer(G, b) & A).order for b in B.members
        )
        m_b = max(
            B.order // (centralizer(G, a) & B).order for a in A.members
        )
        assert data.m_a == m_a
        assert data.m_b == m_b
        assert data.a_normal and data.b_normal
        payload = data.to_json_dict()
        assert payload["m_A"] == m_a and payload["m_B"] == m_b

    def test_conjugate_closure_data(self):
        G = builtin_group("S4")
        K = sylow_subgroup(G, 2)
        payload = conjugate_closure_data(G, K)
        assert payload["closure_order"] == normal_closure(G, K).order == 24
        assert payload["closure_derived_order"] == 12
        sizes = [len({G.conj(x, g) for g in range(G.order)}) for x in K.members]
        assert payload["max_ambient_class"] == max(sizes) == 6

    def test_gamma_class_data(self):
        G = builtin_group("D4")
        payload = gamma_class_data(G, 2)
        assert payload["gamma_order"] == 2
        assert payload["max_relative_class"] == 1
        assert payload["gamma_next_order"] == 1

    def test_gamma_class_data_rejects_zero_index(self):
        with pytest.raises(ValueError):
            gamma_class_data(builtin_group("D4"), 0)


def test_decompose_rejects_foreign_subgroup():
    G = builtin_group("S3")
    other = builtin_group("S4")
    from commprobe.errors import ParentMismatchError

    with pytest.raises(ParentMismatchError):
        decompose(G, trivial_subgroup(other), Fraction(1, 2))
