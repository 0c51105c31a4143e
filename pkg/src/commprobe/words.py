"""Group words: expression trees, a text syntax, verbal subgroups, law checks.

Text syntax (round-trips through ``parse_word`` / ``word_to_text``):

    expr  := var | '1'
           | 'inv'  '(' expr ')'
           | 'pow'  '(' expr ',' int ')'
           | 'comm' '(' expr ',' expr {',' expr} ')'
           | 'prod' '(' expr ',' expr {',' expr} ')'
    var   := 'x' | 'y' | 'y'<digits>

``x`` is variable 1 and ``y``/``y1``, ``y2``, ... are variables 2, 3, ....
``comm`` and ``prod`` with more than two arguments associate to the left, so
``comm(x, y1, y1)`` is the left-normed commutator [[x, y1], y1].
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import config
from ._kernels import kernels
from ._wordops import OP_COMM, OP_INV, OP_MUL, OP_POW, OP_VAR
from .errors import CapExceededError, WordSyntaxError
from .group import FiniteGroup
from .subgroups import Subgroup, closure

__all__ = [
    "Word",
    "Var",
    "Inv",
    "Prod",
    "Pow",
    "Comm",
    "One",
    "arity",
    "evaluate_word",
    "compile_word",
    "verbal_subgroup",
    "is_law",
    "first_law_violation",
    "engel_word",
    "power_commutator_word",
    "recognize_word_family",
    "parse_word",
    "word_to_text",
]


class Word:
    """Base class for word expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Word):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices are 1-based")


@dataclass(frozen=True)
class One(Word):
    """The empty word (identity)."""


@dataclass(frozen=True)
class Inv(Word):
    body: Word


@dataclass(frozen=True)
class Prod(Word):
    left: Word
    right: Word


@dataclass(frozen=True)
class Pow(Word):
    body: Word
    exponent: int


@dataclass(frozen=True)
class Comm(Word):
    left: Word
    right: Word


def arity(w: Word) -> int:
    """Largest variable index appearing in the word."""
    if isinstance(w, Var):
        return w.index
    if isinstance(w, One):
        return 0
    if isinstance(w, Inv):
        return arity(w.body)
    if isinstance(w, Pow):
        return arity(w.body)
    if isinstance(w, (Prod, Comm)):
        return max(arity(w.left), arity(w.right))
    raise TypeError(f"not a word node: {w!r}")


def evaluate_word(G: FiniteGroup, w: Word, assignment: Sequence[int]) -> int:
    """Evaluate by structural recursion (the reference evaluator)."""
    if isinstance(w, Var):
        if w.index > len(assignment):
            raise ValueError(f"assignment too short for variable {w.index}")
        return int(assignment[w.index - 1])
    if isinstance(w, One):
        return G.identity
    if isinstance(w, Inv):
        return G.inv_elem(evaluate_word(G, w.body, assignment))
    if isinstance(w, Pow):
        return G.power(evaluate_word(G, w.body, assignment), w.exponent)
    if isinstance(w, Prod):
        return G.mul_elems(
            evaluate_word(G, w.left, assignment), evaluate_word(G, w.right, assignment)
        )
    if isinstance(w, Comm):
        return G.comm(
            evaluate_word(G, w.left, assignment), evaluate_word(G, w.right, assignment)
        )
    raise TypeError(f"not a word node: {w!r}")


def compile_word(w: Word) -> tuple[np.ndarray, np.ndarray]:
    """Postfix opcode program for the kernel evaluators."""
    ops: list[int] = []
    args: list[int] = []

    def walk(node: Word) -> None:
        if isinstance(node, Var):
            ops.append(OP_VAR)
            args.append(node.index - 1)
        elif isinstance(node, One):
            # 1 = x^0: push any variable and raise to 0.
            ops.append(OP_VAR)
            args.append(0)
            ops.append(OP_POW)
            args.append(0)
        elif isinstance(node, Inv):
            walk(node.body)
            ops.append(OP_INV)
            args.append(0)
        elif isinstance(node, Pow):
            walk(node.body)
            ops.append(OP_POW)
            args.append(node.exponent)
        elif isinstance(node, Prod):
            walk(node.left)
            walk(node.right)
            ops.append(OP_MUL)
            args.append(0)
        elif isinstance(node, Comm):
            walk(node.left)
            walk(node.right)
            ops.append(OP_COMM)
            args.append(0)
        else:
            raise TypeError(f"not a word node: {node!r}")

    walk(w)
    return np.asarray(ops, dtype=np.int32), np.asarray(args, dtype=np.int32)


def _check_cap(G: FiniteGroup, r: int) -> None:
    cap = config.word_tuple_cap()
    total = G.order**max(1, r)
    if total > cap:
        raise CapExceededError(
            f"exhaustive word evaluation needs {G.order}^{r} = {total} assignments, "
            f"over the cap of {cap}"
        )


def verbal_subgroup(G: FiniteGroup, w: Word) -> Subgroup:
    """Subgroup generated by all values of the word (exhaustive evaluation)."""
    r = max(1, arity(w))
    _check_cap(G, r)
    ops, args = compile_word(w)
    values = kernels.word_value_set(G.mul, G.inv, G.identity, ops, args, r)
    sub = closure(G, values)
    assert sub.is_normal(), "verbal subgroups are closed under conjugation"
    return sub


def first_law_violation(G: FiniteGroup, w: Word) -> tuple[int, ...] | None:
    """First assignment (odometer order) with non-identity value, or None."""
    r = max(1, arity(w))
    _check_cap(G, r)
    ops, args = compile_word(w)
    hit = kernels.first_word_violation(G.mul, G.inv, G.identity, ops, args, r)
    return None if hit is None else tuple(int(v) for v in hit)


def is_law(G: FiniteGroup, w: Word) -> bool:
    """Whether the word evaluates to the identity on every assignment."""
    return first_law_violation(G, w) is None


def engel_word(k: int) -> Word:
    """The left-normed commutator [x, y, y, ..., y] with k copies of y."""
    if k < 1:
        raise ValueError("need at least one trailing variable")
    out: Word = Comm(Var(1), Var(2))
    for _ in range(k - 1):
        out = Comm(out, Var(2))
    return out


def power_commutator_word(n: int, k: int) -> Word:
    """The left-normed commutator [x^n, y1, ..., yk]."""
    if k < 1:
        raise ValueError("need at least one trailing variable")
    out: Word = Pow(Var(1), n)
    for i in range(1, k + 1):
        out = Comm(out, Var(1 + i))
    return out


def recognize_word_family(w: Word) -> tuple[str, tuple[int, ...]] | None:
    """Match the two supported word families.

    Returns ("engel", (k,)) for [x, y, ..., y], ("power_commutator", (n, k))
    for [x^n, y1, ..., yk], or None.
    """
    # Peel the left-normed commutator chain.
    chain: list[Word] = []
    node = w
    while isinstance(node, Comm):
        chain.append(node.right)
        node = node.left
    chain.reverse()
    if not chain:
        return None
    if node == Var(1) and all(term == Var(2) for term in chain):
        return ("engel", (len(chain),))
    if isinstance(node, Pow) and node.body == Var(1):
        expected = [Var(1 + i) for i in range(1, len(chain) + 1)]
        if chain == expected:
            return ("power_commutator", (node.exponent, len(chain)))
    return None


_TOKEN_RE = re.compile(r"\s*([a-z]+[0-9]*|-?[0-9]+|[(),])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    return tokens


def parse_word(text: str) -> Word:
    """Parse the documented word syntax."""
    if not text.strip():
        raise WordSyntaxError("empty word expression", 0)
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos][0] if pos < len(tokens) else None

    def take(expected: str | None = None) -> tuple[str, int]:
        nonlocal pos
        if pos >= len(tokens):
            raise WordSyntaxError("unexpected end of expression", len(text))
        tok, at = tokens[pos]
        if expected is not None and tok != expected:
            raise WordSyntaxError(f"expected {expected!r}, found {tok!r}", at)
        pos += 1
        return tok, at

    def parse_expr() -> Word:
        tok, at = take()
        if tok == "1":
            return One()
        if re.fullmatch(r"-?[0-9]+", tok):
            raise WordSyntaxError(f"number {tok} is not a word", at)
        if tok == "x":
            return Var(1)
        if tok == "y":
            return Var(2)
        var = re.fullmatch(r"y([0-9]+)", tok)
        if var:
            k = int(var.group(1))
            if k < 1:
                raise WordSyntaxError("variable numbering starts at y1", at)
            return Var(k + 1)
        if tok in ("inv", "pow", "comm", "prod"):
            take("(")
            first = parse_expr()
            if tok == "inv":
                take(")")
                return Inv(first)
            if tok == "pow":
                take(",")
                num, nat = take()
                if not re.fullmatch(r"-?[0-9]+", num):
                    raise WordSyntaxError(f"pow exponent must be an integer, found {num!r}", nat)
                take(")")
                return Pow(first, int(num))
            parts = [first]
            while peek() == ",":
                take(",")
                parts.append(parse_expr())
            take(")")
            if len(parts) < 2:
                raise WordSyntaxError(f"{tok} needs at least two arguments", at)
            out = parts[0]
            for part in parts[1:]:
                out = Comm(out, part) if tok == "comm" else Prod(out, part)
            return out
        raise WordSyntaxError(f"unknown token {tok!r}", at)

    result = parse_expr()
    if pos != len(tokens):
        tok, at = tokens[pos]
        raise WordSyntaxError(f"trailing input starting at {tok!r}", at)
    return result


def word_to_text(w: Word) -> str:
    """Canonical text form; left-nested comm/prod chains print flattened."""
    if isinstance(w, Var):
        return "x" if w.index == 1 else f"y{w.index - 1}"
    if isinstance(w, One):
        return "1"
    if isinstance(w, Inv):
        return f"inv({word_to_text(w.body)})"
    if isinstance(w, Pow):
        return f"pow({word_to_text(w.body)}, {w.exponent})"
    if isinstance(w, (Comm, Prod)):
        kind = Comm if isinstance(w, Comm) else Prod
        name = "comm" if kind is Comm else "prod"
        parts = [w.right]
        node = w.left
        while isinstance(node, kind):
            parts.append(node.right)
            node = node.left
        parts.append(node)
        parts.reverse()
        return f"{name}({', '.join(word_to_text(p) for p in parts)})"
    raise TypeError(f"not a word node: {w!r}")
