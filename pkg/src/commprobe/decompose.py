"""Bounded-class decomposition of a subgroup pair with high commuting probability.

Given K <= G and a threshold eps, the pipeline collects the elements of K
with small ambient conjugacy class (X), the elements of G with small class
under conjugation by K (Y), and derives from them a chain of subgroups:

    B = <X>, E = <Y>, T = normal core of E, N = <[T, B]^G>, B0 = <B^G>

The report always records the full chain; the index and class-size bounds
that the high-probability hypothesis guarantees are enforced only when
``hypothesis_holds`` is true. When K is normal it also records the subgroup
H = {g in T : [N, g] = 1 and [K, g] <= B0}, which pins K n H inside the
third hypercenter of H.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotNormalError, VerificationFailure
from .group import FiniteGroup, quotient_group
from .probability import format_ratio, relative_commuting_probability
from .subgroups import (
    Subgroup,
    _owned,
    centralizer_of_set,
    class_size_table,
    closure,
    commutator_of_subgroups,
    normal_closure,
    normal_core,
    relative_class_sizes,
    subgroup_from_members,
)
from .structure import lower_central_term, upper_central_term_of

__all__ = [
    "DecompositionReport",
    "small_ambient_class_set",
    "small_relative_class_set",
    "decompose",
    "series_stabilizer",
    "CommutatorBoundData",
    "commutator_bound_data",
    "conjugate_closure_data",
    "gamma_class_data",
]


def _class_threshold_ok(size: int, eps: Fraction) -> bool:
    # size <= 2/eps, in integers.
    return size * eps.numerator <= 2 * eps.denominator


def small_ambient_class_set(G: FiniteGroup, K: Subgroup, eps: Fraction) -> tuple[int, ...]:
    """X = elements of K whose ambient class satisfies |x^G| <= 2/eps."""
    _owned(G, K)
    sizes = class_size_table(G)
    members = tuple(x for x in K.members if _class_threshold_ok(int(sizes[x]), eps))
    _require_symmetric(G, members, "small-ambient-class set")
    return members


def small_relative_class_set(G: FiniteGroup, K: Subgroup, eps: Fraction) -> tuple[int, ...]:
    """Y = elements of G whose class under K satisfies |y^K| <= 2/eps."""
    _owned(G, K)
    sizes = relative_class_sizes(G, K)
    members = tuple(
        x for x in range(G.order) if _class_threshold_ok(int(sizes[x]), eps)
    )
    _require_symmetric(G, members, "small-relative-class set")
    return members


def _require_symmetric(G: FiniteGroup, members: tuple[int, ...], label: str) -> None:
    member_set = set(members)
    if G.identity not in member_set:
        raise VerificationFailure(f"{label} must contain the identity")
    if any(int(G.inv[x]) not in member_set for x in members):
        raise VerificationFailure(f"{label} must be closed under inverses")


@dataclass(frozen=True)
class DecompositionReport:
    """Pipeline output; see the module docstring for the chain's meaning."""

    epsilon: Fraction
    pr: Fraction
    hypothesis_holds: bool
    x_set: tuple[int, ...]
    b: Subgroup
    y_set: tuple[int, ...]
    e: Subgroup
    t: Subgroup
    index_k_b: int
    index_g_e: int
    index_g_t: int
    tb_commutator: Subgroup
    n: Subgroup
    b0: Subgroup
    h: Subgroup | None
    max_class_b_in_g: int
    max_class_e_under_b: int
    b0_contained_in_k: bool
    span_derived_order: int
    post_quotient: dict | None

    def to_json_dict(self) -> dict:
        return {
            "epsilon": format_ratio(self.epsilon),
            "actual_pr": format_ratio(self.pr),
            "hypothesis_holds": self.hypothesis_holds,
            "X": list(self.x_set),
            "B": list(self.b.members),
            "Y": list(self.y_set),
            "E": list(self.e.members),
            "T": list(self.t.members),
            "index_K_B": self.index_k_b,
            "index_G_E": self.index_g_e,
            "index_G_T": self.index_g_t,
            "TB_commutator": list(self.tb_commutator.members),
            "N": list(self.n.members),
            "B0": list(self.b0.members),
            "H": list(self.h.members) if self.h is not None else None,
            "max_class_b_in_G": self.max_class_b_in_g,
            "max_class_e_under_B": self.max_class_e_under_b,
            "B0_contained_in_K": self.b0_contained_in_k,
            "span_derived_order": self.span_derived_order,
            "post_quotient": self.post_quotient,
        }


def _core_chain(G: FiniteGroup, K: Subgroup, eps: Fraction):
    """X, B, Y, E, T for one ambient group."""
    x_set = small_ambient_class_set(G, K, eps)
    b = closure(G, x_set)
    y_set = small_relative_class_set(G, K, eps)
    e = closure(G, y_set)
    t = normal_core(G, e)
    return x_set, b, y_set, e, t


def _stabilizer_members(G: FiniteGroup, K: Subgroup, t: Subgroup, n: Subgroup, b0: Subgroup) -> Subgroup:
    candidates = centralizer_of_set(G, n.members, within=t)
    arr = K.member_array()
    keep = []
    for g in candidates.members:
        comms = G.mul[G.mul[G.inv[arr], G.inv[g]], G.mul[arr, g]]
        if all((b0.mask >> int(c)) & 1 for c in comms):
            keep.append(g)
    try:
        return subgroup_from_members(G, keep, validate=True)
    except ValueError as exc:
        raise VerificationFailure(f"stabilizer member set is not a subgroup: {exc}") from None


def decompose(
    G: FiniteGroup, K: Subgroup, eps: Fraction, *, _with_quotient_view: bool = True
) -> DecompositionReport:
    """Run the full pipeline; see the module docstring.

    Runs unconditionally and records whether Pr(K, G) >= eps held; the
    proof-backed index and class-size bounds are enforced only in that case.
    """
    _owned(G, K)
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"threshold must be in (0, 1], got {eps}")
    pr = relative_commuting_probability(G, K)
    hypothesis_holds = pr >= eps
    x_set, b, y_set, e, t = _core_chain(G, K, eps)
    tb = commutator_of_subgroups(G, t, b)
    n = normal_closure(G, tb)
    b0 = normal_closure(G, b)
    span_derived = commutator_of_subgroups(G, b0, b0)
    sizes = class_size_table(G)
    max_class_b = max(int(sizes[x]) for x in b.members)
    e_under_b = relative_class_sizes(G, b)
    max_class_e_under_b = max(int(e_under_b[x]) for x in e.members)

    if not b <= K:
        raise VerificationFailure("small-class span must stay inside the subgroup")
    if not t.is_normal() or not n.is_normal() or not b0.is_normal():
        raise VerificationFailure("core chain produced a non-normal piece")
    if not tb <= n:
        raise VerificationFailure("[T, B] must lie in its own normal closure")

    if hypothesis_holds:
        num, den = eps.numerator, eps.denominator
        if not eps * K.order < 2 * len(x_set):
            raise VerificationFailure(
                f"|X| = {len(x_set)} is not above (eps/2)|K| = {eps}/2 * {K.order}"
            )
        if (K.order // b.order) * num > 2 * den:
            raise VerificationFailure(f"[K : B] = {K.order // b.order} exceeds 2/eps")
        if not eps * G.order < 2 * len(y_set):
            raise VerificationFailure(
                f"|Y| = {len(y_set)} is not above (eps/2)|G| = {eps}/2 * {G.order}"
            )
        if (G.order // e.order) * num > 2 * den:
            raise VerificationFailure(f"[G : E] = {G.order // e.order} exceeds 2/eps")
        steps = (6 * den + num - 1) // num  # ceil(6/eps)
        bound = Fraction(2 * den, num) ** steps
        if Fraction(max_class_b) > bound:
            raise VerificationFailure(
                f"an element of B has ambient class {max_class_b}, over (2/eps)^{steps}"
            )

    h = None
    if K.is_normal():
        h = _stabilizer_members(G, K, t, n, b0)
        inter = K & h
        z3 = upper_central_term_of(h, 3)
        if not inter <= z3:
            raise VerificationFailure(
                "K n H escaped the third hypercenter of the stabilizer"
            )

    post_quotient = None
    if _with_quotient_view and span_derived.order > 1:
        Q, proj = quotient_group(G, span_derived)
        image = subgroup_from_members(Q, {int(proj.mapping[x]) for x in K.members})
        qx, qb, qy, qe, qt = _core_chain(Q, image, eps)
        qtb = commutator_of_subgroups(Q, qt, qb)
        post_quotient = {
            "derived_order": span_derived.order,
            "quotient_order": Q.order,
            "X_size": len(qx),
            "B_order": qb.order,
            "Y_size": len(qy),
            "E_order": qe.order,
            "T_order": qt.order,
            "TB_commutator_order": qtb.order,
        }

    return DecompositionReport(
        epsilon=eps,
        pr=pr,
        hypothesis_holds=hypothesis_holds,
        x_set=x_set,
        b=b,
        y_set=y_set,
        e=e,
        t=t,
        index_k_b=K.order // b.order,
        index_g_e=G.order // e.order,
        index_g_t=G.order // t.order,
        tb_commutator=tb,
        n=n,
        b0=b0,
        h=h,
        max_class_b_in_g=max_class_b,
        max_class_e_under_b=max_class_e_under_b,
        b0_contained_in_k=b0 <= K,
        span_derived_order=span_derived.order,
        post_quotient=post_quotient,
    )


def series_stabilizer(G: FiniteGroup, K: Subgroup, report: DecompositionReport) -> Subgroup:
    """H = {g in T : [N, g] = 1, [K, g] <= B0}; requires K normal in G.

    Recomputes H from the report's chain, checks it is a subgroup, and checks
    the containment K n H <= Z_3(H) before returning it.
    """
    _owned(G, K)
    if not K.is_normal():
        raise NotNormalError("the stabilizer construction needs a normal subgroup")
    h = _stabilizer_members(G, K, report.t, report.n, report.b0)
    inter = K & h
    z3 = upper_central_term_of(h, 3)
    if not inter <= z3:
        raise VerificationFailure("K n H escaped the third hypercenter of the stabilizer")
    return h


@dataclass(frozen=True)
class CommutatorBoundData:
    """Mutual centralizer-index data for a pair of subgroups."""

    m_a: int
    m_b: int
    commutator_order: int
    commutator_abelian: bool
    a_normal: bool
    b_normal: bool

    def to_json_dict(self) -> dict:
        return {
            "m_A": self.m_a,
            "m_B": self.m_b,
            "commutator_order": self.commutator_order,
            "commutator_abelian": self.commutator_abelian,
            "A_normal": self.a_normal,
            "B_normal": self.b_normal,
        }


def _max_centralizer_index(G: FiniteGroup, A: Subgroup, B: Subgroup) -> int:
    """max over b in B of [A : C_A(b)]."""
    arr = A.member_array()
    worst = 1
    for b in B.members:
        commuting = int((G.mul[arr, b] == G.mul[b, arr]).sum())
        worst = max(worst, A.order // commuting)
    return worst


def commutator_bound_data(G: FiniteGroup, A: Subgroup, B: Subgroup) -> CommutatorBoundData:
    """Collect the quantities tied to bounded mutual centralizer indices."""
    _owned(G, A)
    _owned(G, B)
    commutator = commutator_of_subgroups(G, A, B)
    sub_group, _ = _materialize(commutator)
    return CommutatorBoundData(
        m_a=_max_centralizer_index(G, A, B),
        m_b=_max_centralizer_index(G, B, A),
        commutator_order=commutator.order,
        commutator_abelian=sub_group.is_abelian(),
        a_normal=A.is_normal(),
        b_normal=B.is_normal(),
    )


def _materialize(S: Subgroup):
    from .subgroups import as_group

    return as_group(S)


def conjugate_closure_data(G: FiniteGroup, K: Subgroup) -> dict:
    """Max ambient class over K plus the normal closure of K and its derived order."""
    _owned(G, K)
    sizes = class_size_table(G)
    closure_of_k = normal_closure(G, K)
    derived = commutator_of_subgroups(G, closure_of_k, closure_of_k)
    return {
        "max_ambient_class": max(int(sizes[x]) for x in K.members),
        "closure_order": closure_of_k.order,
        "closure_derived_order": derived.order,
    }


def gamma_class_data(G: FiniteGroup, k: int) -> dict:
    """Largest class under the k-th lower central term, plus the next term's order."""
    if k < 1:
        raise ValueError("lower central series terms are 1-based")
    gamma_k = lower_central_term(G, k)
    gamma_next = lower_central_term(G, k + 1)
    sizes = relative_class_sizes(G, gamma_k)
    return {
        "max_relative_class": int(sizes.max()),
        "gamma_order": gamma_k.order,
        "gamma_next_order": gamma_next.order,
    }
