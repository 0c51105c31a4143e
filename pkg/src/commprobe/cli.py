"""Command-line interface: group info, probabilities, decomposition, verification, sweeps."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ._kernels import backend_name
from .autos import Automorphism, AutomorphismGroup, is_coprime_action
from .catalog import builtin_automorphisms, builtin_group, catalog_names, is_builtin_name
from .decompose import decompose
from .errors import CommprobeError, GroupFileError, HypothesisError, VerificationFailure
from .group import FiniteGroup, Permutation
from .groupfile import parse_group_file
from .probability import (
    commuting_probability,
    format_ratio,
    parse_ratio,
    relative_commuting_probability,
)
from .reports import CSV_COLUMNS, TheoremReport
from .structure import (
    derived_subgroup,
    exponent,
    fitting_subgroup,
    generalized_fitting,
    lower_central_series,
    nilpotency_class,
    prime_factors,
    sylow_subgroup,
    upper_central_series,
)
from .subgroups import (
    Subgroup,
    all_normal_subgroups,
    center,
    closure,
    conjugacy_classes,
    full_subgroup,
    subgroup_from_members,
)
from .verify import (
    verify_all_sylow,
    verify_auto2_theorem,
    verify_auto_theorem,
    verify_commutator_bound,
    verify_conjugate_closure,
    verify_coprime_quotients,
    verify_elementary_abelian_bound,
    verify_exp_theorem,
    verify_fitting,
    verify_gamma,
    verify_gamma_classes,
    verify_neumann,
    verify_product_length,
    verify_quotient_refinement,
    verify_sylow,
    verify_virtual_nilpotency,
)
from .words import engel_word, parse_word

THEOREM_IDS = (
    "neumann",
    "fitting",
    "gamma",
    "virtual-nilpotency",
    "exp",
    "sylow",
    "all-sylow",
    "auto",
    "auto2",
    "quoti",
    "product-length",
    "cc",
    "eee",
    "normal-lemma",
    "cristi-data",
    "glas-data",
)

_EPSILON_FREE = {"quoti", "cc", "eee", "normal-lemma", "cristi-data", "glas-data"}


def _resolve_group(spec: str) -> tuple[FiniteGroup, dict[str, Automorphism]]:
    if spec.startswith("builtin:"):
        name = spec[len("builtin:") :]
        if not is_builtin_name(name):
            raise GroupFileError(f"unknown builtin group {name!r}", 0)
        return builtin_group(name), builtin_automorphisms(name)
    path = Path(spec)
    if not path.is_file():
        raise GroupFileError(f"no such group file: {spec}", 0)
    return parse_group_file(path.read_text(), name=path.stem)


def _parse_subgroup(G: FiniteGroup, text: str | None) -> Subgroup:
    if text is None or text.strip() in ("", "G", "full"):
        return full_subgroup(G)
    stripped = text.strip()
    named = {
        "trivial": lambda: subgroup_from_members(G, [G.identity]),
        "center": lambda: center(G),
        "derived": lambda: derived_subgroup(G),
        "fitting": lambda: fitting_subgroup(G),
        "fstar": lambda: generalized_fitting(G),
    }
    if stripped in named:
        return named[stripped]()
    tokens = _split_top_level(stripped)
    elements = []
    for token in tokens:
        token = token.strip()
        if not token:
            raise ValueError("empty subgroup generator token")
        if token.lstrip("-").isdigit():
            idx = int(token)
            if not 0 <= idx < G.order:
                raise ValueError(f"element index {idx} out of range for order {G.order}")
            elements.append(idx)
        else:
            if G.perms is None:
                raise ValueError(
                    "cycle notation needs a permutation group; use element indices"
                )
            perm = Permutation.from_cycle_string(token, degree=G.degree)
            lookup = {p: i for i, p in enumerate(G.perms)}
            if perm.images not in lookup:
                raise ValueError(f"permutation {token} is not an element of the group")
            elements.append(lookup[perm.images])
    return closure(G, elements)


def _split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p for p in parts if p.strip()]


def _parse_epsilon(text: str) -> Fraction:
    eps = parse_ratio(text)
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must be in (0, 1], got {text}")
    return eps


def _named_auts(
    auts: dict[str, Automorphism], names_text: str | None
) -> list[tuple[str, Automorphism]]:
    if names_text is None:
        return sorted(auts.items())
    picked = []
    for name in names_text.split(","):
        name = name.strip()
        if name not in auts:
            known = ", ".join(sorted(auts)) or "none"
            raise ValueError(f"unknown automorphism {name!r} (available: {known})")
        picked.append((name, auts[name]))
    return picked


def _aut_group(G: FiniteGroup, picked: Sequence[tuple[str, Automorphism]]) -> AutomorphismGroup:
    if not picked:
        raise ValueError("this theorem needs at least one automorphism (--aut)")
    return AutomorphismGroup.from_generators(G, [phi for _, phi in picked])


def _cmd_info(args: argparse.Namespace) -> int:
    G, auts = _resolve_group(args.group)
    sizes = sorted(len(c) for c in conjugacy_classes(G))
    lower = lower_central_series(G)
    upper = upper_central_series(G)
    cls = nilpotency_class(G)
    lines = [
        f"name: {G.name}",
        f"order: {G.order}",
        f"backend: {backend_name()}",
        f"abelian: {str(G.is_abelian()).lower()}",
        f"conjugacy classes: {len(sizes)}",
        f"class sizes: {' '.join(str(s) for s in sizes)}",
        f"center order: {center(G).order}",
        f"derived order: {derived_subgroup(G).order}",
        f"lower central orders: {' '.join(str(t.order) for t in lower.terms)}",
        f"upper central orders: {' '.join(str(t.order) for t in upper.terms)}",
        f"nilpotency class: {cls if cls is not None else 'not nilpotent'}",
        f"fitting order: {fitting_subgroup(G).order}",
        f"generalized fitting order: {generalized_fitting(G).order}",
        f"exponent: {exponent(G)}",
        "sylow orders: "
        + " ".join(f"{p}:{sylow_subgroup(G, p).order}" for p in prime_factors(G.order)),
        f"normal subgroups: {len(all_normal_subgroups(G))}",
    ]
    if auts:
        lines.append("automorphisms: " + " ".join(sorted(auts)))
    print("\n".join(lines))
    return 0


def _cmd_pr(args: argparse.Namespace) -> int:
    G, _ = _resolve_group(args.group)
    if args.subgroup is None:
        value = commuting_probability(G)
    else:
        K = _parse_subgroup(G, args.subgroup)
        value = relative_commuting_probability(G, K)
    print(f"{format_ratio(value)} ({float(value):.6f})")
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    G, _ = _resolve_group(args.group)
    K = _parse_subgroup(G, args.subgroup)
    eps = _parse_epsilon(args.epsilon)
    report = decompose(G, K, eps)
    print(json.dumps(report.to_json_dict(), indent=2))
    return 0


def _run_theorem(
    theorem: str,
    G: FiniteGroup,
    auts: dict[str, Automorphism],
    *,
    eps: Fraction,
    subgroup_text: str | None,
    subgroup2_text: str | None,
    normal_text: str | None,
    aut_text: str | None,
    word_text: str | None,
    prime: int | None,
    gamma_index: int,
) -> list[TheoremReport]:
    if theorem == "neumann":
        return [verify_neumann(G, eps)]
    if theorem == "fitting":
        return [verify_fitting(G, eps)]
    if theorem == "gamma":
        K = None if subgroup_text is None else _parse_subgroup(G, subgroup_text)
        return [verify_gamma(G, gamma_index, eps, K)]
    if theorem in ("virtual-nilpotency", "exp"):
        word = engel_word(2) if word_text is None else parse_word(word_text)
        if theorem == "virtual-nilpotency":
            K = None if subgroup_text is None else _parse_subgroup(G, subgroup_text)
            return [verify_virtual_nilpotency(G, word, eps, K)]
        return [verify_exp_theorem(G, word, eps)]
    if theorem == "sylow":
        primes = [prime] if prime is not None else prime_factors(G.order)
        if not primes:
            primes = [2]
        return [verify_sylow(G, p, eps) for p in primes]
    if theorem == "all-sylow":
        return [verify_all_sylow(G, eps)]
    if theorem == "auto":
        picked = _named_auts(auts, aut_text)
        if aut_text is None:
            picked = [
                (name, phi)
                for name, phi in picked
                if is_coprime_action(G, phi) and _is_prime_order(phi)
            ]
            if not picked:
                return []
        return [verify_auto_theorem(G, phi, eps) for _, phi in picked]
    if theorem == "auto2":
        picked = _named_auts(auts, aut_text)
        if aut_text is None:
            if not picked:
                return []
            try:
                return [verify_auto2_theorem(G, _aut_group(G, picked), eps)]
            except HypothesisError:
                return []
        return [verify_auto2_theorem(G, _aut_group(G, picked), eps)]
    if theorem == "quoti":
        K = _parse_subgroup(G, subgroup_text)
        normals = None
        if normal_text is not None and normal_text != "auto":
            N = _parse_subgroup(G, normal_text)
            normals = [N]
        return [verify_quotient_refinement(G, K, normals)]
    if theorem == "product-length":
        K = _parse_subgroup(G, subgroup_text)
        return [verify_product_length(G, K, eps)]
    if theorem == "cc":
        picked = _named_auts(auts, aut_text)
        if aut_text is None:
            picked = [(n, phi) for n, phi in picked if is_coprime_action(G, phi)]
            if not picked:
                return []
        return [verify_coprime_quotients(G, phi) for _, phi in picked]
    if theorem == "eee":
        picked = _named_auts(auts, aut_text)
        if aut_text is None:
            if not picked:
                return []
            try:
                return [verify_elementary_abelian_bound(G, _aut_group(G, picked))]
            except HypothesisError:
                return []
        return [verify_elementary_abelian_bound(G, _aut_group(G, picked))]
    if theorem == "normal-lemma":
        A = _parse_subgroup(G, subgroup_text)
        B = (
            derived_subgroup(G)
            if subgroup2_text is None
            else _parse_subgroup(G, subgroup2_text)
        )
        return [verify_commutator_bound(G, A, B)]
    if theorem == "cristi-data":
        K = _parse_subgroup(G, subgroup_text)
        return [verify_conjugate_closure(G, K)]
    if theorem == "glas-data":
        return [verify_gamma_classes(G, gamma_index)]
    raise ValueError(f"unknown theorem id {theorem!r}")


def _is_prime_order(phi: Automorphism) -> bool:
    n = phi.order
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.theorem not in THEOREM_IDS:
        print(
            f"unknown theorem id {args.theorem!r}; choose from: {', '.join(THEOREM_IDS)}",
            file=sys.stderr,
        )
        return 2
    G, auts = _resolve_group(args.group)
    eps = _parse_epsilon(args.epsilon)
    reports = _run_theorem(
        args.theorem,
        G,
        auts,
        eps=eps,
        subgroup_text=args.subgroup,
        subgroup2_text=args.subgroup2,
        normal_text=args.normal,
        aut_text=args.aut,
        word_text=args.word,
        prime=args.prime,
        gamma_index=args.gamma_index,
    )
    if not reports:
        print(
            "no applicable instances (this theorem needs a suitable automorphism)",
            file=sys.stderr,
        )
        return 2
    all_passed = all(r.passed for r in reports)
    for report in reports:
        print(report.to_json())
        print(f"{'PASS' if report.passed else 'FAIL'} {report.theorem_id} on {report.group}")
    return 0 if all_passed else 1


def _expand_group_specs(text: str) -> list[str]:
    if text == "catalog":
        return [f"builtin:{name}" for name in catalog_names()]
    path = Path(text)
    if path.is_dir():
        return [str(p) for p in sorted(path.iterdir()) if p.is_file()]
    return [spec.strip() for spec in text.split(",") if spec.strip()]


def _sweep_task(task: tuple[str, str, str]) -> list[dict[str, str]]:
    spec, theorem, eps_text = task
    G, auts = _resolve_group(spec)
    reports = _run_theorem(
        theorem,
        G,
        auts,
        eps=_parse_epsilon(eps_text),
        subgroup_text=None,
        subgroup2_text=None,
        normal_text=None,
        aut_text=None,
        word_text=None,
        prime=None,
        gamma_index=1,
    )
    return [r.csv_row() for r in reports]


def _cmd_sweep(args: argparse.Namespace) -> int:
    specs = _expand_group_specs(args.groups)
    theorems = (
        list(THEOREM_IDS)
        if args.theorems == "all"
        else [t.strip() for t in args.theorems.split(",") if t.strip()]
    )
    for theorem in theorems:
        if theorem not in THEOREM_IDS:
            print(f"unknown theorem id {theorem!r}", file=sys.stderr)
            return 2
    epsilons = [e.strip() for e in args.epsilons.split(",") if e.strip()]
    for eps in epsilons:
        _parse_epsilon(eps)
    tasks = []
    for spec in specs:
        for theorem in theorems:
            if theorem in _EPSILON_FREE:
                tasks.append((spec, theorem, epsilons[0]))
            else:
                for eps in epsilons:
                    tasks.append((spec, theorem, eps))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    else:
        results = [_sweep_task(task) for task in tasks]
    rows = [row for batch in results for row in batch]

    def sort_key(row: dict[str, str]) -> tuple:
        eps_key: tuple = (2, 0, 0)
        if row["epsilon"]:
            eps = parse_ratio(row["epsilon"])
            eps_key = (1, eps.numerator, eps.denominator)
        return (
            row["group"],
            int(row["group_order"]),
            row["theorem_id"],
            eps_key,
            row["data_json"],
        )

    rows.sort(key=sort_key)
    out_path = Path(args.out)
    with out_path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    failed = sum(1 for row in rows if row["passed"] != "true")
    print(f"wrote {len(rows)} rows to {out_path}")
    if failed:
        print(f"{failed} rows failed verification", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commprobe",
        description="Exact commuting-probability computations on finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="structural summary of a group")
    p_info.add_argument("group", help="builtin:NAME or a group file path")
    p_info.set_defaults(func=_cmd_info)

    p_pr = sub.add_parser("pr", help="exact commuting probability")
    p_pr.add_argument("group")
    p_pr.add_argument("--subgroup", default=None, help="generators, indices, or a named subgroup")
    p_pr.set_defaults(func=_cmd_pr)

    p_dec = sub.add_parser("decompose", help="bounded-class decomposition report")
    p_dec.add_argument("group")
    p_dec.add_argument("--epsilon", required=True, help="threshold as p/q")
    p_dec.add_argument("--subgroup", default=None)
    p_dec.set_defaults(func=_cmd_decompose)

    p_ver = sub.add_parser("verify", help="run one theorem verifier")
    p_ver.add_argument("theorem")
    p_ver.add_argument("group")
    p_ver.add_argument("--epsilon", default="1/2")
    p_ver.add_argument("--subgroup", default=None)
    p_ver.add_argument("--subgroup2", default=None)
    p_ver.add_argument("--normal", default=None, help="a normal subgroup, or 'auto' for all")
    p_ver.add_argument("--aut", default=None, help="comma-separated automorphism names")
    p_ver.add_argument("--word", default=None, help="word expression, e.g. comm(x, y, y)")
    p_ver.add_argument("--prime", type=int, default=None)
    p_ver.add_argument("--gamma-index", type=int, default=1)
    p_ver.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run verifiers over many groups into a CSV")
    p_sweep.add_argument("--groups", required=True, help="'catalog', a comma list, or a directory")
    p_sweep.add_argument("--theorems", default="all")
    p_sweep.add_argument("--epsilons", default="1/2")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (CommprobeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
