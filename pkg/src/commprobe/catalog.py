"""Built-in catalog of named groups with attached automorphisms."""
from __future__ import annotations

from typing import Callable

import numpy as np

from .autos import Automorphism, automorphism_from_generator_images, automorphism_from_map
from .group import (
    FiniteGroup,
    Permutation,
    direct_product,
    group_from_cayley_table,
    group_from_generators,
    quotient_group,
)
from .subgroups import center, closure

__all__ = ["catalog_names", "builtin_group", "builtin_automorphisms", "is_builtin_name"]

_CACHE: dict[str, tuple[FiniteGroup, dict[str, Automorphism]]] = {}


def _cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_generators([], degree=1, name="Z1")
    rot = Permutation.from_cycles([tuple(range(n))], degree=n)
    return group_from_generators([rot], name=f"Z{n}")


def _elementary_abelian(p: int, k: int, name: str) -> FiniteGroup:
    gens = [
        Permutation.from_cycles([tuple(range(i * p, (i + 1) * p))], degree=p * k)
        for i in range(k)
    ]
    return group_from_generators(gens, name=name)


def _dihedral(n: int) -> FiniteGroup:
    if n == 2:
        gens = [
            Permutation.from_cycles([(0, 1)], degree=4),
            Permutation.from_cycles([(2, 3)], degree=4),
        ]
        return group_from_generators(gens, name="D2")
    rot = Permutation.from_cycles([tuple(range(n))], degree=n)
    flip = Permutation([(n - i) % n for i in range(n)])
    return group_from_generators([rot, flip], name=f"D{n}")


def _symmetric(n: int) -> FiniteGroup:
    gens = [
        Permutation.from_cycles([(0, 1)], degree=n),
        Permutation.from_cycles([tuple(range(n))], degree=n),
    ]
    return group_from_generators(gens, name=f"S{n}")


def _alternating(n: int) -> FiniteGroup:
    if n == 4:
        gens = [
            Permutation.from_cycles([(0, 1, 2)], degree=4),
            Permutation.from_cycles([(1, 2, 3)], degree=4),
        ]
    else:
        gens = [
            Permutation.from_cycles([tuple(range(n))], degree=n),
            Permutation.from_cycles([(0, 1, 2)], degree=n),
        ]
    return group_from_generators(gens, name=f"A{n}")


def _quaternion8() -> FiniteGroup:
    gens = [
        Permutation.from_cycles([(0, 1, 2, 3), (4, 5, 6, 7)], degree=8),
        Permutation.from_cycles([(0, 4, 2, 6), (1, 7, 3, 5)], degree=8),
    ]
    return group_from_generators(gens, name="Q8")


def _heisenberg27() -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over the field with three elements.

    Element (a, b, c) gets index 9a + 3b + c; the product twists the last
    coordinate by a * b'.
    """
    n = 27
    table = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        a, b, c = i // 9, (i // 3) % 3, i % 3
        for j in range(n):
            d, e, f = j // 9, (j // 3) % 3, j % 3
            table[i, j] = 9 * ((a + d) % 3) + 3 * ((b + e) % 3) + ((c + f + a * e) % 3)
    return group_from_cayley_table(table, name="Heis27")


def _sl23() -> FiniteGroup:
    vectors = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(matrix: tuple[tuple[int, int], tuple[int, int]]) -> Permutation:
        images = []
        for x, y in vectors:
            nx = (matrix[0][0] * x + matrix[0][1] * y) % 3
            ny = (matrix[1][0] * x + matrix[1][1] * y) % 3
            images.append(index[(nx, ny)])
        return Permutation(images)

    gens = [act(((1, 1), (0, 1))), act(((0, 2), (1, 0)))]
    return group_from_generators(gens, name="SL23")


def _central_product(A: FiniteGroup, B: FiniteGroup, name: str) -> FiniteGroup:
    """Quotient of A x B identifying the two (unique) central involutions."""
    prod = direct_product(A, B)
    za = next(z for z in center(A).members if z != A.identity)
    zb = next(z for z in center(B).members if z != B.identity)
    diagonal = closure(prod, [za * B.order + zb])
    Q, _ = quotient_group(prod, diagonal)
    Q.name = name
    return Q


def _extraspecial_plus() -> FiniteGroup:
    return _central_product(_dihedral(4), _dihedral(4), "ES32plus")


def _extraspecial_minus() -> FiniteGroup:
    return _central_product(_dihedral(4), _quaternion8(), "ES32minus")


def _negation_aut(G: FiniteGroup, flips: tuple[int, ...]) -> Automorphism:
    """Invert the chosen generators of an abelian group, fix the rest."""
    images = [
        int(G.inv[g]) if pos in flips else int(g) for pos, g in enumerate(G.generators)
    ]
    return automorphism_from_generator_images(G, images)


def _heis27_auts(G: FiniteGroup) -> dict[str, Automorphism]:
    def coordinate_map(sign_a: int, sign_b: int) -> Automorphism:
        images = []
        for i in range(27):
            a, b, c = i // 9, (i // 3) % 3, i % 3
            sign_c = sign_a * sign_b
            images.append(
                9 * ((sign_a * a) % 3) + 3 * ((sign_b * b) % 3) + ((sign_c * c) % 3)
            )
        return automorphism_from_map(G, images)

    return {"inva": coordinate_map(-1, 1), "invb": coordinate_map(1, -1)}


def _attach(name: str, G: FiniteGroup) -> dict[str, Automorphism]:
    gens = [int(g) for g in G.generators]
    if name == "Z5" or name == "Z7":
        doubled = G.mul_elems(gens[0], gens[0])
        return {"mul2": automorphism_from_generator_images(G, [doubled])}
    if name == "E4":
        third = G.mul_elems(gens[0], gens[1])
        return {"rot3": automorphism_from_generator_images(G, [gens[1], third])}
    if name == "E9":
        return {"swap": automorphism_from_generator_images(G, [gens[1], gens[0]])}
    if name == "E27":
        return {"nega": _negation_aut(G, (0, 1)), "negb": _negation_aut(G, (1, 2))}
    if name == "Heis27":
        return _heis27_auts(G)
    if name == "Q8":
        product = G.mul_elems(gens[0], gens[1])
        return {"rot3": automorphism_from_generator_images(G, [gens[1], product])}
    if name == "S3":
        return {
            "conj": automorphism_from_generator_images(
                G, [gens[0], int(G.inv[gens[1]])]
            )
        }
    return {}


def _builders() -> dict[str, Callable[[], FiniteGroup]]:
    out: dict[str, Callable[[], FiniteGroup]] = {}
    for n in range(1, 33):
        out[f"Z{n}"] = (lambda k: lambda: _cyclic(k))(n)
    out["E4"] = lambda: _elementary_abelian(2, 2, "E4")
    out["E8"] = lambda: _elementary_abelian(2, 3, "E8")
    out["E9"] = lambda: _elementary_abelian(3, 2, "E9")
    out["E25"] = lambda: _elementary_abelian(5, 2, "E25")
    out["E27"] = lambda: _elementary_abelian(3, 3, "E27")
    out["E125"] = lambda: _elementary_abelian(5, 3, "E125")
    for n in range(2, 17):
        out[f"D{n}"] = (lambda k: lambda: _dihedral(k))(n)
    out["Q8"] = _quaternion8
    out["S3"] = lambda: _symmetric(3)
    out["S4"] = lambda: _symmetric(4)
    out["S5"] = lambda: _symmetric(5)
    out["A4"] = lambda: _alternating(4)
    out["A5"] = lambda: _alternating(5)
    out["Heis27"] = _heisenberg27
    out["ES32plus"] = _extraspecial_plus
    out["ES32minus"] = _extraspecial_minus
    out["SL23"] = _sl23
    return out


_BUILDERS = _builders()


def catalog_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def is_builtin_name(name: str) -> bool:
    return name in _BUILDERS


def _load(name: str) -> tuple[FiniteGroup, dict[str, Automorphism]]:
    if name not in _CACHE:
        if name not in _BUILDERS:
            raise KeyError(f"unknown builtin group {name!r}")
        G = _BUILDERS[name]()
        _CACHE[name] = (G, _attach(name, G))
    return _CACHE[name]


def builtin_group(name: str) -> FiniteGroup:
    return _load(name)[0]


def builtin_automorphisms(name: str) -> dict[str, Automorphism]:
    return dict(_load(name)[1])
