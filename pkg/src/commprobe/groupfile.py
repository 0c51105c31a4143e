"""Line-based group file format: permutation or table groups plus automorphisms.

Format::

    perm <degree>            |  table <order>
    gen (1 2 3)(4 5)         |  <row of 0-based indices>
    gen (1 2)                |  ... one row per element ...
    aut <name>
    g1 -> g2
    g2 -> g1^-1 g2

Cycles are 1-based. Automorphism stanzas give, for each declared generator
g1..gk in order, its image as a word over the generators (juxtaposition,
integer exponents after ``^``, and ``1`` for the identity). Blank lines and
``#`` comments are ignored.
"""
from __future__ import annotations

import re

import numpy as np

from .autos import Automorphism, automorphism_from_generator_images
from .errors import AutomorphismError, GroupFileError
from .group import FiniteGroup, Permutation, group_from_cayley_table, group_from_generators

__all__ = ["parse_group_file", "format_group_file"]

_AUT_WORD_TOKEN = re.compile(r"\s*(?:(g(\d+))(?:\^(-?\d+))?|(1)|(\S))")


def _evaluate_generator_word(G: FiniteGroup, text: str, line_no: int) -> int:
    value = G.identity
    pos = 0
    matched_any = False
    while pos < len(text):
        match = _AUT_WORD_TOKEN.match(text, pos)
        if match is None:
            break
        pos = match.end()
        if match.group(5) is not None:
            raise GroupFileError(
                f"unexpected token {match.group(5)!r} in generator word", line_no
            )
        matched_any = True
        if match.group(4) is not None:
            continue
        gen_no = int(match.group(2))
        if not 1 <= gen_no <= len(G.generators):
            raise GroupFileError(
                f"word names g{gen_no} but only {len(G.generators)} generators exist",
                line_no,
            )
        exponent = int(match.group(3)) if match.group(3) is not None else 1
        value = G.mul_elems(value, G.power(int(G.generators[gen_no - 1]), exponent))
    if not matched_any:
        raise GroupFileError("empty generator word", line_no)
    return value


def _source_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            out.append((no, stripped))
    return out


def parse_group_file(
    text: str, *, name: str | None = None
) -> tuple[FiniteGroup, dict[str, Automorphism]]:
    """Parse a group file; returns the group and its named automorphisms."""
    lines = _source_lines(text)
    if not lines:
        raise GroupFileError("empty group file", 1)
    head_no, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] not in ("perm", "table"):
        raise GroupFileError(
            "header must be 'perm <degree>' or 'table <order>'", head_no
        )
    try:
        size = int(parts[1])
    except ValueError:
        raise GroupFileError(f"bad header size {parts[1]!r}", head_no) from None
    if size < 1:
        raise GroupFileError("header size must be positive", head_no)

    body = lines[1:]
    aut_start = next(
        (k for k, (_, line) in enumerate(body) if line.split()[0] == "aut"), len(body)
    )
    group_lines, aut_lines = body[:aut_start], body[aut_start:]

    if parts[0] == "perm":
        gens = []
        for no, line in group_lines:
            if not line.startswith("gen"):
                raise GroupFileError(f"expected 'gen <cycles>', got {line!r}", no)
            cycle_text = line[3:].strip()
            try:
                gens.append(Permutation.from_cycle_string(cycle_text, degree=size))
            except ValueError as exc:
                raise GroupFileError(str(exc), no) from None
        G = group_from_generators(gens, degree=size, name=name)
    else:
        rows = []
        for no, line in group_lines:
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise GroupFileError(f"non-integer table entry in {line!r}", no) from None
            if len(row) != size:
                raise GroupFileError(
                    f"table row has {len(row)} entries, expected {size}", no
                )
            rows.append(row)
        if len(rows) != size:
            raise GroupFileError(
                f"table has {len(rows)} rows, expected {size}", lines[0][0]
            )
        try:
            G = group_from_cayley_table(np.asarray(rows, dtype=np.int32), name=name)
        except Exception as exc:
            raise GroupFileError(f"invalid multiplication table: {exc}", lines[0][0]) from None

    auts: dict[str, Automorphism] = {}
    k = 0
    while k < len(aut_lines):
        no, line = aut_lines[k]
        fields = line.split()
        if fields[0] != "aut" or len(fields) != 2:
            raise GroupFileError(f"expected 'aut <name>', got {line!r}", no)
        aut_name = fields[1]
        if aut_name in auts:
            raise GroupFileError(f"duplicate automorphism name {aut_name!r}", no)
        k += 1
        images: list[int | None] = [None] * len(G.generators)
        while k < len(aut_lines) and aut_lines[k][1].split()[0] != "aut":
            img_no, img_line = aut_lines[k]
            if "->" not in img_line:
                raise GroupFileError(
                    f"expected 'g<i> -> <word>', got {img_line!r}", img_no
                )
            left, right = img_line.split("->", 1)
            left_match = re.fullmatch(r"g(\d+)", left.strip())
            if left_match is None:
                raise GroupFileError(
                    f"left side must name a generator, got {left.strip()!r}", img_no
                )
            gen_no = int(left_match.group(1))
            if not 1 <= gen_no <= len(G.generators):
                raise GroupFileError(
                    f"image given for g{gen_no} but only "
                    f"{len(G.generators)} generators exist",
                    img_no,
                )
            if images[gen_no - 1] is not None:
                raise GroupFileError(f"duplicate image for g{gen_no}", img_no)
            images[gen_no - 1] = _evaluate_generator_word(G, right.strip(), img_no)
            k += 1
        missing = [f"g{i + 1}" for i, img in enumerate(images) if img is None]
        if missing:
            raise GroupFileError(
                f"automorphism {aut_name!r} misses images for {', '.join(missing)}", no
            )
        try:
            auts[aut_name] = automorphism_from_generator_images(
                G, [img for img in images if img is not None]
            )
        except AutomorphismError as exc:
            raise GroupFileError(
                f"automorphism {aut_name!r} failed validation: {exc}", no
            ) from None
    return G, auts


def _element_word(G: FiniteGroup, x: int) -> str:
    """Express an element as a generator word using the BFS derivations."""
    if x == G.identity:
        return "1"
    parent_of = {element: (parent, genpos) for element, parent, genpos in G.derivations}
    factors: list[str] = []
    current = int(x)
    while current != G.identity:
        parent, genpos = parent_of[current]
        factors.append(f"g{genpos + 1}")
        current = parent
    return " ".join(reversed(factors))


def format_group_file(
    G: FiniteGroup, auts: dict[str, Automorphism] | None = None
) -> str:
    """Render a group (and automorphisms) back into the file format."""
    lines: list[str] = []
    if G.perms is not None:
        lines.append(f"perm {G.degree}")
        for g in G.generators:
            lines.append(f"gen {Permutation(G.perms[int(g)]).cycle_string()}")
    else:
        lines.append(f"table {G.order}")
        for row in G.mul:
            lines.append(" ".join(str(int(v)) for v in row))
    for aut_name in sorted(auts or {}):
        phi = auts[aut_name]
        lines.append(f"aut {aut_name}")
        for i, g in enumerate(G.generators):
            lines.append(f"g{i + 1} -> {_element_word(G, phi.mapping[int(g)])}")
    return "\n".join(lines) + "\n"
