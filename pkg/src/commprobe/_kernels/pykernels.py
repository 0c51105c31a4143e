"""Pure NumPy kernel backend.

Every function here has a compiled twin in ``commprobe._ckernels`` with the
same signature and bit-identical results. Contract for all kernels: ``mul`` is
a C-contiguous int32 multiplication table (``mul[a, b]`` = index of a*b),
``inv`` an int32 inverse table, and element-index arguments are int32 arrays.
Returned index arrays are sorted int32.
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "pure-python"

# Flattened fancy-index chunk size, bounds peak memory in the word evaluator.
_CHUNK = 1 << 15


def mul_closure(mul: np.ndarray, identity: int, seed: np.ndarray) -> np.ndarray:
    """Members of the subgroup generated by ``seed``, as a sorted array."""
    n = mul.shape[0]
    member = np.zeros(n, dtype=bool)
    member[identity] = True
    seed = np.unique(np.asarray(seed, dtype=np.int32))
    if seed.size == 0:
        return np.asarray([identity], dtype=np.int32)
    frontier = np.asarray([identity], dtype=np.int32)
    while frontier.size:
        products = np.unique(mul[np.ix_(frontier, seed)])
        fresh = products[~member[products]]
        member[fresh] = True
        frontier = fresh
    return np.nonzero(member)[0].astype(np.int32)


def product_set(mul: np.ndarray, aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
    """The set {a*b : a in aa, b in bb}, as a sorted array."""
    if len(aa) == 0 or len(bb) == 0:
        return np.asarray([], dtype=np.int32)
    return np.unique(mul[np.ix_(aa, bb)]).astype(np.int32)


def commuting_pair_count(mul: np.ndarray, aa: np.ndarray, bb: np.ndarray) -> int:
    """Number of pairs (a, b) in aa x bb with a*b = b*a."""
    total = 0
    step = max(1, _CHUNK // max(1, len(bb)))
    for start in range(0, len(aa), step):
        part = aa[start : start + step]
        left = mul[np.ix_(part, bb)]
        right = mul[np.ix_(bb, part)]
        total += int((left == right.T).sum())
    return total


def centralizer_members(mul: np.ndarray, fixed: np.ndarray, domain: np.ndarray) -> np.ndarray:
    """Elements of ``domain`` commuting with every element of ``fixed``."""
    keep = np.ones(len(domain), dtype=bool)
    for f in fixed:
        keep &= mul[domain, f] == mul[f, domain]
    return np.sort(domain[keep]).astype(np.int32)


def commutator_values(mul: np.ndarray, inv: np.ndarray, aa: np.ndarray, bb: np.ndarray) -> np.ndarray:
    """The value set {a^-1 b^-1 a b : a in aa, b in bb}, sorted."""
    n = mul.shape[0]
    seen = np.zeros(n, dtype=bool)
    inv_bb = inv[bb]
    for a in aa:
        t1 = mul[inv[a], inv_bb]
        t2 = mul[a, bb]
        seen[mul[t1, t2]] = True
    return np.nonzero(seen)[0].astype(np.int32)


def element_orders(mul: np.ndarray, identity: int) -> np.ndarray:
    """Multiplicative order of every element."""
    n = mul.shape[0]
    base = np.arange(n, dtype=np.int32)
    current = base.copy()
    orders = np.zeros(n, dtype=np.int32)
    k = 1
    orders[current == identity] = k
    while (orders == 0).any():
        active = orders == 0
        current[active] = mul[current[active], base[active]]
        k += 1
        orders[active & (current == identity)] = k
    return orders


def first_assoc_violation(mul: np.ndarray) -> tuple[int, int, int] | None:
    """First triple (a, b, c) with (ab)c != a(bc), scanning a-major, or None."""
    n = mul.shape[0]
    for a in range(n):
        left = mul[mul[a], :]
        right = np.take(mul[a], mul)
        bad = left != right
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return (a, int(b), int(c))
    return None


def conjugacy_partition(mul: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Per element, the least index in its conjugacy class."""
    n = mul.shape[0]
    labels = np.arange(n, dtype=np.int32)
    cols = np.arange(n, dtype=np.int32)
    step = max(1, _CHUNK // max(1, n))
    for start in range(0, n, step):
        gg = np.arange(start, min(start + step, n), dtype=np.int32)
        txg = mul[np.ix_(inv[gg], cols)]
        conj = mul[txg, gg[:, None]]
        labels = np.minimum(labels, conj.min(axis=0))
    return labels


def relative_class_sizes(mul: np.ndarray, inv: np.ndarray, hh: np.ndarray) -> np.ndarray:
    """Per element x of the parent, the size of the orbit {h^-1 x h : h in hh}."""
    n = mul.shape[0]
    cols = np.arange(n, dtype=np.int32)
    txh = mul[np.ix_(inv[hh], cols)]
    conj = mul[txh, hh[:, None]]
    conj.sort(axis=0)
    if conj.shape[0] == 1:
        return np.ones(n, dtype=np.int32)
    return ((conj[1:] != conj[:-1]).sum(axis=0) + 1).astype(np.int32)


def perm_mul_table(perms: np.ndarray) -> np.ndarray:
    """Multiplication table for a closed list of permutations.

    Product convention: (p*q)(t) = q(p(t)), i.e. apply p first.
    """
    perms = np.ascontiguousarray(perms, dtype=np.int32)
    n = perms.shape[0]
    lookup = {perms[i].tobytes(): i for i in range(n)}
    mul = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        composed = np.ascontiguousarray(perms[:, perms[i]])
        row = mul[i]
        for j in range(n):
            row[j] = lookup[composed[j].tobytes()]
    return mul


def _assignment_digits(indices: np.ndarray, n: int, arity: int) -> list[np.ndarray]:
    digits = []
    for v in range(arity):
        scale = n ** (arity - 1 - v)
        digits.append(((indices // scale) % n).astype(np.int32))
    return digits


def _pow_array(mul: np.ndarray, inv: np.ndarray, identity: int, base: np.ndarray, m: int) -> np.ndarray:
    result = np.full(base.shape, identity, dtype=np.int32)
    if m < 0:
        base = inv[base]
        m = -m
    while m:
        if m & 1:
            result = mul[result, base]
        base = mul[base, base]
        m >>= 1
    return result


def _eval_program(
    mul: np.ndarray,
    inv: np.ndarray,
    identity: int,
    ops: np.ndarray,
    args: np.ndarray,
    values: list[np.ndarray],
) -> np.ndarray:
    stack: list[np.ndarray] = []
    for op, arg in zip(ops, args):
        if op == 0:  # OP_VAR
            stack.append(values[arg])
        elif op == 1:  # OP_INV
            stack.append(inv[stack.pop()])
        elif op == 2:  # OP_MUL
            b = stack.pop()
            a = stack.pop()
            stack.append(mul[a, b])
        elif op == 3:  # OP_COMM
            b = stack.pop()
            a = stack.pop()
            stack.append(mul[mul[inv[a], inv[b]], mul[a, b]])
        elif op == 4:  # OP_POW
            stack.append(_pow_array(mul, inv, identity, stack.pop(), int(arg)))
        else:
            raise ValueError(f"unknown opcode {op}")
    if len(stack) != 1:
        raise ValueError("word program left the stack unbalanced")
    return stack[0]


def word_value_set(
    mul: np.ndarray,
    inv: np.ndarray,
    identity: int,
    ops: np.ndarray,
    args: np.ndarray,
    arity: int,
) -> np.ndarray:
    """All values of the word over every assignment, as a sorted array."""
    n = mul.shape[0]
    total = n**arity
    seen = np.zeros(n, dtype=bool)
    for start in range(0, total, _CHUNK):
        indices = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        values = _assignment_digits(indices, n, arity)
        seen[_eval_program(mul, inv, identity, ops, args, values)] = True
    return np.nonzero(seen)[0].astype(np.int32)


def first_word_violation(
    mul: np.ndarray,
    inv: np.ndarray,
    identity: int,
    ops: np.ndarray,
    args: np.ndarray,
    arity: int,
) -> tuple[int, ...] | None:
    """First assignment (odometer order) with a non-identity value, or None."""
    n = mul.shape[0]
    total = n**arity
    for start in range(0, total, _CHUNK):
        indices = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        values = _assignment_digits(indices, n, arity)
        result = _eval_program(mul, inv, identity, ops, args, values)
        bad = np.nonzero(result != identity)[0]
        if bad.size:
            flat = int(indices[bad[0]])
            out = []
            for v in range(arity):
                scale = n ** (arity - 1 - v)
                out.append((flat // scale) % n)
            return tuple(out)
    return None
