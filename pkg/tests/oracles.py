"""Independent brute-force reference implementations used to cross-check results.

Everything here works from a raw multiplication table with plain Python loops
and sets, deliberately avoiding the library's own algorithms and kernels.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def table_of(G) -> list[list[int]]:
    """Multiplication table as plain lists, decoupled from the library arrays."""
    return [[int(v) for v in row] for row in G.mul]


def inv_of(G) -> list[int]:
    """Inverse table as a plain list."""
    return [int(v) for v in G.inv]


def oracle_inverse(mul, identity: int) -> list[int]:
    """Inverse of every element found by scanning the table."""
    n = len(mul)
    out = [-1] * n
    for a in range(n):
        for b in range(n):
            if mul[a][b] == identity and mul[b][a] == identity:
                out[a] = b
                break
    return out


def oracle_element_order(mul, identity: int, x: int) -> int:
    """Multiplicative order of x by repeated multiplication."""
    k = 1
    acc = x
    while acc != identity:
        acc = mul[acc][x]
        k += 1
    return k


def oracle_closure(mul, identity: int, seed) -> set[int]:
    """Subgroup generated by seed, via worklist closure under products."""
    members = {identity} | set(seed)
    frontier = list(members)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in members:
                for c in (mul[a][b], mul[b][a]):
                    if c not in members:
                        fresh.add(c)
        members |= fresh
        frontier = list(fresh)
    return members


def oracle_commuting_pairs(mul, aa, bb) -> int:
    """Count of pairs (a, b) with a*b = b*a by double loop."""
    return sum(1 for a in aa for b in bb if mul[a][b] == mul[b][a])


def oracle_pr(mul, kk, gg) -> Fraction:
    """Relative commuting probability of kk inside gg."""
    return Fraction(oracle_commuting_pairs(mul, kk, gg), len(kk) * len(gg))


def oracle_centralizer(mul, fixed, domain) -> set[int]:
    """Elements of domain commuting with every element of fixed."""
    return {g for g in domain if all(mul[g][f] == mul[f][g] for f in fixed)}


def oracle_conjugacy_classes(mul, inv) -> list[frozenset[int]]:
    """Conjugacy classes by conjugating every element with every element."""
    n = len(mul)
    seen = [False] * n
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        cls = {mul[inv[g]][mul[x][g]] for g in range(n)}
        for y in cls:
            seen[y] = True
        classes.append(frozenset(cls))
    return classes


def oracle_is_subgroup(mul, identity: int, members) -> bool:
    """Check closure and identity membership directly."""
    ms = set(members)
    if identity not in ms:
        return False
    return all(mul[a][b] in ms for a in ms for b in ms)


def oracle_is_normal(mul, inv, members) -> bool:
    """Check invariance under conjugation by every group element."""
    ms = set(members)
    n = len(mul)
    return all(mul[inv[g]][mul[x][g]] in ms for x in ms for g in range(n))


def oracle_all_subgroups(mul, identity: int, max_generators: int) -> set[frozenset[int]]:
    """Every subgroup, as closures of all generating sets up to a size cap.

    Valid whenever every subgroup of the group needs at most max_generators
    generators; max_generators = log2(order) always suffices.
    """
    n = len(mul)
    found = {frozenset([identity])}
    for size in range(1, max_generators + 1):
        for seed in combinations(range(n), size):
            found.add(frozenset(oracle_closure(mul, identity, seed)))
    return found


def oracle_normal_subgroups(mul, inv, identity: int, max_generators: int) -> set[frozenset[int]]:
    """Every normal subgroup, filtered from the full subgroup list."""
    return {
        s
        for s in oracle_all_subgroups(mul, identity, max_generators)
        if oracle_is_normal(mul, inv, s)
    }


def oracle_commutator_subgroup(mul, inv, aa, bb, identity: int) -> set[int]:
    """Subgroup generated by commutators [a, b] with a in aa, b in bb."""
    comms = {
        mul[mul[inv[a]][inv[b]]][mul[a][b]]
        for a in aa
        for b in bb
    }
    return oracle_closure(mul, identity, comms)


def oracle_lower_central_series(mul, inv, identity: int) -> list[set[int]]:
    """Series G = g1 >= g2 >= ... with g_{i+1} = [g_i, G], until it repeats."""
    n = len(mul)
    everything = set(range(n))
    series = [everything]
    while True:
        nxt = oracle_commutator_subgroup(mul, inv, series[-1], everything, identity)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def oracle_center(mul) -> set[int]:
    """Elements commuting with everything."""
    n = len(mul)
    return oracle_centralizer(mul, range(n), range(n))


def oracle_upper_central_series(mul, inv, identity: int) -> list[set[int]]:
    """Series 1 = z0 <= z1 <= ... with z_{i+1}/z_i = Z(G/z_i), until stable."""
    n = len(mul)
    series = [{identity}]
    while True:
        prev = series[-1]
        nxt = {
            x
            for x in range(n)
            if all(mul[inv[x]][mul[inv[g]][mul[x][g]]] in prev for g in range(n))
        }
        if nxt == prev:
            return series
        series.append(nxt)


def oracle_symmetric_power(mul, xs, r: int) -> set[int]:
    """Products of exactly r factors drawn from xs."""
    base = set(xs)
    acc = set(base)
    for _ in range(r - 1):
        acc = {mul[a][b] for a in acc for b in base}
    return acc


def oracle_exponent(mul, identity: int) -> int:
    """Least common multiple of all element orders."""
    from math import lcm

    n = len(mul)
    out = 1
    for x in range(n):
        out = lcm(out, oracle_element_order(mul, identity, x))
    return out


def oracle_power_subgroup(mul, identity: int, e: int) -> set[int]:
    """Subgroup generated by all e-th powers."""
    n = len(mul)
    powers = set()
    for x in range(n):
        acc = identity
        for _ in range(e):
            acc = mul[acc][x]
        powers.add(acc)
    return oracle_closure(mul, identity, powers)


def oracle_word_values(mul, inv, identity: int, evaluate, arity: int) -> set[int]:
    """All values of a word callable over every assignment, by brute force."""
    from itertools import product

    n = len(mul)
    return {evaluate(assignment) for assignment in product(range(n), repeat=arity)}
