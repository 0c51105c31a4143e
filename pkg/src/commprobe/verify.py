"""Theorem verifiers: hypothesis measurement, witness search, re-validation."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .autos import (
    Automorphism,
    AutomorphismGroup,
    coprime_quotient_check,
    elementary_abelian_bound_check,
    fixed_point_subgroup,
    is_coprime_action,
)
from .decompose import (
    commutator_bound_data,
    conjugate_closure_data,
    decompose,
    gamma_class_data,
    small_ambient_class_set,
)
from .errors import HypothesisError, NotContainedError, UnsupportedWordError, VerificationFailure
from .group import FiniteGroup
from .probability import (
    commuting_probability,
    quotient_split_check,
    relative_commuting_probability,
)
from .reports import TheoremReport, WitnessReport
from .structure import (
    exponent_of,
    generalized_fitting,
    is_prime,
    lower_central_term,
    lower_central_term_of,
    nilpotency_class_of,
    power_subgroup,
    prime_factors,
    sylow_subgroup,
    p_core,
)
from .subgroups import (
    Subgroup,
    all_normal_subgroups,
    closure,
    commutator_of_subgroups,
    full_subgroup,
    symmetric_set_power,
    trivial_subgroup,
)
from .words import Word, recognize_word_family, verbal_subgroup, word_to_text

__all__ = [
    "verify_neumann",
    "verify_fitting",
    "verify_gamma",
    "verify_virtual_nilpotency",
    "verify_exp_theorem",
    "verify_sylow",
    "verify_all_sylow",
    "verify_auto_theorem",
    "verify_auto2_theorem",
    "verify_quotient_refinement",
    "verify_product_length",
    "verify_coprime_quotients",
    "verify_elementary_abelian_bound",
    "verify_commutator_bound",
    "verify_conjugate_closure",
    "verify_gamma_classes",
]


def _revalidate_witness(
    G: FiniteGroup,
    R: Subgroup,
    *,
    class_bound: int | None,
    p: int | None = None,
    must_contain: Subgroup | None = None,
    contained_in: Subgroup | None = None,
) -> None:
    """Re-check a witness against raw definitions; never trust the search."""
    members = set(R.members)
    for g in range(G.order):
        conjugated = {G.conj(x, g) for x in members}
        if conjugated != members:
            raise VerificationFailure(
                f"witness is not normal: conjugation by element {g} moves it"
            )
    if class_bound is not None:
        cls = nilpotency_class_of(R)
        if cls is None or cls > class_bound:
            raise VerificationFailure(
                f"witness nilpotency class {cls} exceeds the bound {class_bound}"
            )
    if p is not None:
        rem = R.order
        while rem % p == 0:
            rem //= p
        if rem != 1:
            raise VerificationFailure(f"witness order {R.order} is not a power of {p}")
    if must_contain is not None and not must_contain <= R:
        raise VerificationFailure("witness misses a required subgroup")
    if contained_in is not None and not R <= contained_in:
        raise VerificationFailure("witness escapes its required ambient subgroup")


def _witness_report(G: FiniteGroup, R: Subgroup) -> WitnessReport:
    derived = commutator_of_subgroups(G, R, R)
    return WitnessReport(
        members=R.members,
        order=R.order,
        index=G.order // R.order,
        nilpotency_class=nilpotency_class_of(R),
        derived_order=derived.order,
    )


def _best_witness(G: FiniteGroup, candidates: Sequence[Subgroup]) -> Subgroup:
    """Least index, then least derived-subgroup order, then least member list."""

    def key(R: Subgroup) -> tuple:
        derived = commutator_of_subgroups(G, R, R)
        return (-R.order, derived.order, R.members)

    if not candidates:
        raise VerificationFailure("witness search produced no candidates")
    return min(candidates, key=key)


def _class_at_most(R: Subgroup, bound: int) -> bool:
    cls = nilpotency_class_of(R)
    return cls is not None and cls <= bound


def _nilpotent_class_witness(G: FiniteGroup, class_bound: int) -> Subgroup:
    candidates = [R for R in all_normal_subgroups(G) if _class_at_most(R, class_bound)]
    return _best_witness(G, candidates)


def verify_neumann(G: FiniteGroup, eps: Fraction) -> TheoremReport:
    """Search for a class-at-most-2 nilpotent normal subgroup of least index."""
    pr = commuting_probability(G)
    R = _nilpotent_class_witness(G, 2)
    _revalidate_witness(G, R, class_bound=2)
    witness = _witness_report(G, R)
    return TheoremReport(
        theorem_id="neumann",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", pr), ("holds", pr >= eps)),
        witness=witness,
        data_points=(
            ("witness_index", witness.index),
            ("witness_derived_order", witness.derived_order),
        ),
        passed=True,
    )


def verify_fitting(G: FiniteGroup, eps: Fraction) -> TheoremReport:
    """Measure Pr(F*(G), G) and search for a class-at-most-2 normal witness."""
    fstar = generalized_fitting(G)
    pr = relative_commuting_probability(G, fstar)
    R = _nilpotent_class_witness(G, 2)
    _revalidate_witness(G, R, class_bound=2)
    witness = _witness_report(G, R)
    fstar_class = nilpotency_class_of(fstar)
    return TheoremReport(
        theorem_id="fitting",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", pr), ("holds", pr >= eps)),
        witness=witness,
        data_points=(
            ("fstar_order", fstar.order),
            ("fstar_class_at_most_2", fstar_class is not None and fstar_class <= 2),
        ),
        passed=True,
    )


def verify_gamma(
    G: FiniteGroup, i: int, eps: Fraction, K: Subgroup | None = None
) -> TheoremReport:
    """Witness search with class bound i+1, for a subgroup containing gamma_i."""
    if i < 1:
        raise ValueError("the series index must be at least 1")
    gamma_i = lower_central_term(G, i)
    if K is None:
        K = gamma_i
    if not gamma_i <= K:
        raise NotContainedError(
            "the supplied subgroup must contain the lower-central term"
        )
    pr_k = relative_commuting_probability(G, K)
    pr_gamma = relative_commuting_probability(G, gamma_i)
    if pr_gamma < pr_k:
        raise VerificationFailure(
            "probability monotonicity failed: smaller subgroup scored lower"
        )
    R = _nilpotent_class_witness(G, i + 1)
    _revalidate_witness(G, R, class_bound=i + 1)
    witness = _witness_report(G, R)
    gamma_next = lower_central_term_of(R, i + 1)
    return TheoremReport(
        theorem_id="gamma",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("epsilon", eps),
            ("pr", pr_k),
            ("pr_gamma_i", pr_gamma),
            ("holds", pr_k >= eps),
        ),
        witness=witness,
        data_points=(("i", i), ("gamma_next_order_in_witness", gamma_next.order)),
        passed=True,
    )


def _word_family(w: Word) -> tuple[str, tuple[int, ...]]:
    family = recognize_word_family(w)
    if family is None:
        raise UnsupportedWordError(
            "only iterated-commutator words of the built-in families are supported: "
            "engel words [x, y, ..., y] and power-commutator words [x^n, y1, ..., yk]"
        )
    return family


def verify_virtual_nilpotency(
    G: FiniteGroup, w: Word, eps: Fraction, K: Subgroup | None = None
) -> TheoremReport:
    """Find the least exponent e with G^e nilpotent, plus its class."""
    _word_family(w)
    wG = verbal_subgroup(G, w)
    if K is None:
        K = wG
    if not wG <= K:
        raise NotContainedError("the supplied subgroup must contain the verbal subgroup")
    pr = relative_commuting_probability(G, K)
    exp = exponent_of(full_subgroup(G))
    best: tuple[int, int] | None = None
    for e in sorted(_divisors(exp)):
        power = power_subgroup(G, e)
        cls = nilpotency_class_of(power)
        if cls is not None:
            best = (e, cls)
            break
    assert best is not None  # e = exponent gives the trivial subgroup
    e, cls = best
    return TheoremReport(
        theorem_id="virtual-nilpotency",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", pr), ("holds", pr >= eps)),
        witness=None,
        data_points=(
            ("word", word_to_text(w)),
            ("verbal_order", wG.order),
            ("e", e),
            ("class", cls),
            ("power_subgroup_order", power_subgroup(G, e).order),
        ),
        passed=True,
    )


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def verify_exp_theorem(G: FiniteGroup, w: Word, eps: Fraction) -> TheoremReport:
    """Run the decomposition at K = w(G) and measure exponents down T's series."""
    family, params = _word_family(w)
    k = params[0] if family == "engel" else params[1]
    wG = verbal_subgroup(G, w)
    report = decompose(G, wG, eps)
    t = report.t
    gamma_k4 = lower_central_term_of(t, k + 4)
    series = [t]
    while True:
        nxt = commutator_of_subgroups(G, series[-1], t)
        if nxt.mask == series[-1].mask:
            break
        series.append(nxt)
    stable_exp = exponent_of(series[-1])
    c1 = 1
    for idx, term in enumerate(series, start=1):
        if exponent_of(term) == stable_exp:
            c1 = idx
            break
    return TheoremReport(
        theorem_id="exp",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("epsilon", eps),
            ("pr", report.pr),
            ("holds", report.hypothesis_holds),
        ),
        witness=None,
        data_points=(
            ("word", word_to_text(w)),
            ("verbal_order", wG.order),
            ("T_order", t.order),
            ("gamma_k4_order", gamma_k4.order),
            ("gamma_k4_exponent", exponent_of(gamma_k4)),
            ("stable_class_index", c1),
            ("stable_exponent", stable_exp),
        ),
        passed=True,
    )


def _sylow_local_witness(G: FiniteGroup, p: int) -> Subgroup:
    """Largest class-at-most-2 normal p-subgroup (ties broken as usual)."""

    def is_p_group(R: Subgroup) -> bool:
        rem = R.order
        while rem % p == 0:
            rem //= p
        return rem == 1

    candidates = [
        R for R in all_normal_subgroups(G) if is_p_group(R) and _class_at_most(R, 2)
    ]
    return _best_witness(G, candidates)


def verify_sylow(G: FiniteGroup, p: int, eps: Fraction) -> TheoremReport:
    """Largest class-at-most-2 normal p-subgroup, compared against a Sylow subgroup."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    P = sylow_subgroup(G, p)
    pr = relative_commuting_probability(G, P)
    op = p_core(G, p)
    L = _sylow_local_witness(G, p)
    _revalidate_witness(G, L, class_bound=2, p=p, contained_in=op)
    if not op <= P:
        raise VerificationFailure("the p-core escaped the constructed Sylow subgroup")
    witness = _witness_report(G, L)
    return TheoremReport(
        theorem_id="sylow",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", pr), ("holds", pr >= eps)),
        witness=witness,
        data_points=(
            ("p", p),
            ("sylow_order", P.order),
            ("index_P_L", P.order // L.order),
            ("p_core_order", op.order),
        ),
        passed=True,
    )


def verify_all_sylow(G: FiniteGroup, eps: Fraction) -> TheoremReport:
    """Join the per-prime witnesses and check the joint class bound."""
    primes = prime_factors(G.order)
    min_pr: Fraction | None = None
    locals_: list[tuple[int, Subgroup]] = []
    data: list[tuple[str, Any]] = []
    for p in primes:
        P = sylow_subgroup(G, p)
        pr_p = relative_commuting_probability(G, P)
        min_pr = pr_p if min_pr is None else min(min_pr, pr_p)
        L = _sylow_local_witness(G, p)
        _revalidate_witness(G, L, class_bound=2, p=p, contained_in=p_core(G, p))
        locals_.append((p, L))
        data.append((f"L_{p}_order", L.order))
    for i, (p, Lp) in enumerate(locals_):
        for q, Lq in locals_[i + 1 :]:
            if commutator_of_subgroups(G, Lp, Lq).order != 1:
                raise VerificationFailure(
                    f"normal subgroups of coprime orders {Lp.order} and {Lq.order} "
                    "failed to commute"
                )
    R = trivial_subgroup(G)
    for _, Lp in locals_:
        R = R.join(Lp)
    _revalidate_witness(G, R, class_bound=2)
    witness = _witness_report(G, R)
    if min_pr is None:
        min_pr = Fraction(1)
    return TheoremReport(
        theorem_id="all-sylow",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", min_pr), ("holds", min_pr >= eps)),
        witness=witness,
        data_points=tuple(data)
        + (
            ("index_G_R", G.order // R.order),
            ("derived_order_R", witness.derived_order),
        ),
        passed=True,
    )


def verify_auto_theorem(G: FiniteGroup, phi: Automorphism, eps: Fraction) -> TheoremReport:
    """Fixed points of a coprime prime-order automorphism versus F(G)."""
    if not is_prime(phi.order):
        raise HypothesisError(f"automorphism order {phi.order} is not prime")
    if not is_coprime_action(G, phi):
        raise HypothesisError(
            f"automorphism order {phi.order} is not coprime to |G| = {G.order}"
        )
    K = fixed_point_subgroup(G, phi)
    pr = relative_commuting_probability(G, K)
    candidates = [R for R in all_normal_subgroups(G) if nilpotency_class_of(R) is not None]
    R = _best_witness(G, candidates)
    _revalidate_witness(G, R, class_bound=nilpotency_class_of(R))
    witness = _witness_report(G, R)
    return TheoremReport(
        theorem_id="auto",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("epsilon", eps),
            ("pr", pr),
            ("p", phi.order),
            ("holds", pr >= eps),
        ),
        witness=witness,
        data_points=(
            ("fixed_order", K.order),
            ("witness_is_lower_bound", True),
        ),
        passed=True,
    )


def verify_auto2_theorem(
    G: FiniteGroup, A: AutomorphismGroup, eps: Fraction
) -> TheoremReport:
    """Rank-two elementary abelian coprime action: per-line fixed points and witness."""
    primes = prime_factors(A.order)
    if len(primes) != 1:
        raise HypothesisError(f"action order {A.order} is not a prime power")
    p = primes[0]
    if A.order != p * p:
        raise HypothesisError(f"action order {A.order} is not p^2")
    identity_map = tuple(range(G.order))
    for phi in A.elements:
        if phi.mapping != identity_map and phi.order != p:
            raise HypothesisError("action is not elementary abelian")
    if not is_coprime_action(G, A):
        raise HypothesisError(f"action order {A.order} shares a factor with |G| = {G.order}")
    fixed_by_phi: dict[tuple[int, ...], Subgroup] = {}
    prs: list[Fraction] = []
    for phi in A.elements:
        if phi.mapping == identity_map:
            continue
        K = fixed_point_subgroup(G, phi)
        fixed_by_phi[phi.mapping] = K
        prs.append(relative_commuting_probability(G, K))
    lines: list[Subgroup] = []
    seen_lines: set[frozenset] = set()
    for phi in A.elements:
        if phi.mapping == identity_map:
            continue
        line = {phi.mapping}
        power = phi
        for _ in range(p - 2):
            power = power.compose(phi)
            line.add(power.mapping)
        base_mask = fixed_by_phi[phi.mapping].mask
        for other in line:
            if fixed_by_phi[other].mask != base_mask:
                raise VerificationFailure(
                    "fixed points differed across generators of the same cyclic line"
                )
        key = frozenset(line)
        if key not in seen_lines:
            seen_lines.add(key)
            group_fixed = fixed_by_phi[phi.mapping]
            for other in line:
                group_fixed = group_fixed & fixed_by_phi[other]
            lines.append(group_fixed)
    if len(lines) != p + 1:
        raise VerificationFailure(
            f"expected {p + 1} cyclic lines in the action, found {len(lines)}"
        )
    min_pr = min(prs)
    R = _nilpotent_class_witness(G, 2)
    _revalidate_witness(G, R, class_bound=2)
    witness = _witness_report(G, R)
    return TheoremReport(
        theorem_id="auto2",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("epsilon", eps),
            ("pr", min_pr),
            ("p", p),
            ("holds", min_pr >= eps),
        ),
        witness=witness,
        data_points=(
            ("line_fixed_orders", tuple(sorted(L.order for L in lines))),
            ("min_line_fixed_order", min(L.order for L in lines)),
        ),
        passed=True,
    )


def verify_quotient_refinement(
    G: FiniteGroup, K: Subgroup, normals: Sequence[Subgroup] | None = None
) -> TheoremReport:
    """Check the quotient-refinement inequality for every given normal subgroup."""
    if normals is None:
        normals = all_normal_subgroups(G)
    all_hold = True
    equality_count = 0
    for N in normals:
        rep = quotient_split_check(G, K, N)
        if not rep.holds:
            all_hold = False
        if rep.whole == rep.quotient_factor * rep.intersection_factor:
            equality_count += 1
    pr = relative_commuting_probability(G, K)
    return TheoremReport(
        theorem_id="quoti",
        group=G.name,
        group_order=G.order,
        hypothesis=(("pr", pr), ("holds", all_hold)),
        witness=None,
        data_points=(
            ("subgroup_order", K.order),
            ("normals_checked", len(list(normals))),
            ("equality_count", equality_count),
        ),
        passed=all_hold,
    )


def verify_product_length(G: FiniteGroup, K: Subgroup, eps: Fraction) -> TheoremReport:
    """Check that the small-class set generates its span in few multiplications."""
    x_set = small_ambient_class_set(G, K, eps)
    b = closure(G, x_set)
    r = K.order // len(x_set)
    power = symmetric_set_power(G, x_set, 3 * r)
    holds = set(power) == set(b.members)
    if not holds:
        raise VerificationFailure(
            "the 3r-fold product of the small-class set missed its span"
        )
    num, den = eps.numerator, eps.denominator
    length_bound = (6 * den + num - 1) // num
    pr = relative_commuting_probability(G, K)
    hypothesis_holds = pr >= eps
    within_bound = 3 * r <= length_bound
    if hypothesis_holds and 2 * len(x_set) * den > num * K.order and not within_bound:
        raise VerificationFailure("product length escaped its guaranteed bound")
    return TheoremReport(
        theorem_id="product-length",
        group=G.name,
        group_order=G.order,
        hypothesis=(("epsilon", eps), ("pr", pr), ("holds", hypothesis_holds)),
        witness=None,
        data_points=(
            ("x_size", len(x_set)),
            ("span_order", b.order),
            ("r", r),
            ("length", 3 * r),
            ("length_bound", length_bound),
            ("within_bound", within_bound),
        ),
        passed=True,
    )


def _invariant_normals(
    G: FiniteGroup, A: AutomorphismGroup
) -> list[Subgroup]:
    out = []
    for N in all_normal_subgroups(G):
        member_set = set(N.members)
        if all(
            {phi.mapping[x] for x in member_set} == member_set for phi in A.elements
        ):
            out.append(N)
    return out


def verify_coprime_quotients(
    G: FiniteGroup, A: Automorphism | AutomorphismGroup
) -> TheoremReport:
    """Fixed points pass to quotients: checked over every invariant normal subgroup."""
    group = A if isinstance(A, AutomorphismGroup) else AutomorphismGroup.from_generators(A.group, (A,))
    if not is_coprime_action(G, group):
        raise HypothesisError(
            f"action of order {group.order} is not coprime to |G| = {G.order}"
        )
    invariant = _invariant_normals(G, group)
    all_equal = True
    for N in invariant:
        rep = coprime_quotient_check(G, group, N)
        if not rep.equal:
            all_equal = False
    return TheoremReport(
        theorem_id="cc",
        group=G.name,
        group_order=G.order,
        hypothesis=(("action_order", group.order), ("holds", all_equal)),
        witness=None,
        data_points=(
            ("invariant_normals_checked", len(invariant)),
            ("fixed_order", fixed_point_subgroup(G, group).order),
        ),
        passed=all_equal,
    )


def verify_elementary_abelian_bound(G: FiniteGroup, A: AutomorphismGroup) -> TheoremReport:
    """Order bound from fixed points of a rank-two-or-more coprime p-action."""
    data = elementary_abelian_bound_check(G, A)
    if not data["holds"]:
        raise VerificationFailure(
            "the fixed-point order bound failed on a hypothesis-satisfying action"
        )
    return TheoremReport(
        theorem_id="eee",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("p", data["p"]),
            ("action_order", data["rank_order"]),
            ("holds", True),
        ),
        witness=None,
        data_points=(
            ("max_fixed_order", data["max_fixed_order"]),
            ("bound", data["bound"]),
            ("tight", data["bound"] == G.order),
        ),
        passed=True,
    )


def verify_commutator_bound(G: FiniteGroup, A: Subgroup, B: Subgroup) -> TheoremReport:
    """Record centralizer-index maxima against the commutator subgroup's order."""
    data = commutator_bound_data(G, A, B)
    return TheoremReport(
        theorem_id="normal-lemma",
        group=G.name,
        group_order=G.order,
        hypothesis=(
            ("A_normal", data.a_normal),
            ("B_normal", data.b_normal),
            ("holds", data.a_normal and data.b_normal),
        ),
        witness=None,
        data_points=(
            ("m_A", data.m_a),
            ("m_B", data.m_b),
            ("commutator_order", data.commutator_order),
            ("span_of_B_abelian", data.commutator_abelian),
        ),
        passed=True,
    )


def verify_conjugate_closure(G: FiniteGroup, K: Subgroup) -> TheoremReport:
    """Record the normal closure's derived-subgroup order against class sizes."""
    data = conjugate_closure_data(G, K)
    return TheoremReport(
        theorem_id="cristi-data",
        group=G.name,
        group_order=G.order,
        hypothesis=(("max_ambient_class", data["max_ambient_class"]), ("holds", True)),
        witness=None,
        data_points=(
            ("subgroup_order", K.order),
            ("closure_order", data["closure_order"]),
            ("closure_derived_order", data["closure_derived_order"]),
        ),
        passed=True,
    )


def verify_gamma_classes(G: FiniteGroup, k: int) -> TheoremReport:
    """Record relative class-size maxima against the next lower-central term."""
    data = gamma_class_data(G, k)
    return TheoremReport(
        theorem_id="glas-data",
        group=G.name,
        group_order=G.order,
        hypothesis=(("max_relative_class", data["max_relative_class"]), ("holds", True)),
        witness=None,
        data_points=(
            ("k", k),
            ("gamma_order", data["gamma_order"]),
            ("gamma_next_order", data["gamma_next_order"]),
        ),
        passed=True,
    )
