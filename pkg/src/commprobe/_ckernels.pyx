# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Twin of ``commprobe._kernels.pykernels``: same signatures, bit-identical
results. See that module for the argument contract.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


def mul_closure(mul, identity, seed):
    """Members of the subgroup generated by ``seed``, as a sorted array."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    seed_arr = np.unique(np.asarray(seed, dtype=np.int32))
    cdef const cnp.int32_t[::1] S = seed_arr
    cdef Py_ssize_t n = M.shape[0], ns = S.shape[0]
    cdef cnp.uint8_t[::1] member = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t[::1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 0, i
    cdef cnp.int32_t x, y
    member[identity] = 1
    queue[tail] = identity
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for i in range(ns):
            y = M[x, S[i]]
            if not member[y]:
                member[y] = 1
                queue[tail] = y
                tail += 1
    return np.nonzero(np.asarray(member))[0].astype(np.int32)


def product_set(mul, aa, bb):
    """The set {a*b : a in aa, b in bb}, as a sorted array."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] A = np.ascontiguousarray(aa, dtype=np.int32)
    cdef const cnp.int32_t[::1] B = np.ascontiguousarray(bb, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], i, j
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.asarray([], dtype=np.int32)
    cdef cnp.uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    for i in range(A.shape[0]):
        for j in range(B.shape[0]):
            seen[M[A[i], B[j]]] = 1
    return np.nonzero(np.asarray(seen))[0].astype(np.int32)


def commuting_pair_count(mul, aa, bb):
    """Number of pairs (a, b) in aa x bb with a*b = b*a."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] A = np.ascontiguousarray(aa, dtype=np.int32)
    cdef const cnp.int32_t[::1] B = np.ascontiguousarray(bb, dtype=np.int32)
    cdef Py_ssize_t i, j
    cdef long long total = 0
    cdef cnp.int32_t a
    for i in range(A.shape[0]):
        a = A[i]
        for j in range(B.shape[0]):
            if M[a, B[j]] == M[B[j], a]:
                total += 1
    return int(total)


def centralizer_members(mul, fixed, domain):
    """Elements of ``domain`` commuting with every element of ``fixed``."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] F = np.ascontiguousarray(fixed, dtype=np.int32)
    cdef const cnp.int32_t[::1] D = np.ascontiguousarray(domain, dtype=np.int32)
    out = np.empty(D.shape[0], dtype=np.int32)
    cdef cnp.int32_t[::1] O = out
    cdef Py_ssize_t i, j, count = 0
    cdef cnp.int32_t d
    cdef bint ok
    for i in range(D.shape[0]):
        d = D[i]
        ok = True
        for j in range(F.shape[0]):
            if M[d, F[j]] != M[F[j], d]:
                ok = False
                break
        if ok:
            O[count] = d
            count += 1
    return np.sort(out[:count])


def commutator_values(mul, inv, aa, bb):
    """The value set {a^-1 b^-1 a b : a in aa, b in bb}, sorted."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] I = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const cnp.int32_t[::1] A = np.ascontiguousarray(aa, dtype=np.int32)
    cdef const cnp.int32_t[::1] B = np.ascontiguousarray(bb, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], i, j
    cdef cnp.uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.int32_t a, b, ia
    for i in range(A.shape[0]):
        a = A[i]
        ia = I[a]
        for j in range(B.shape[0]):
            b = B[j]
            seen[M[M[ia, I[b]], M[a, b]]] = 1
    return np.nonzero(np.asarray(seen))[0].astype(np.int32)


def element_orders(mul, identity):
    """Multiplicative order of every element."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], x
    cdef cnp.int32_t e = identity, y
    cdef cnp.int32_t k
    out = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] O = out
    for x in range(n):
        y = <cnp.int32_t> x
        k = 1
        while y != e:
            y = M[y, <cnp.int32_t> x]
            k += 1
        O[x] = k
    return out


def first_assoc_violation(mul):
    """First triple (a, b, c) with (ab)c != a(bc), scanning a-major, or None."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], a, b, c
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if M[M[a, b], c] != M[a, M[b, c]]:
                    return (a, b, c)
    return None


def conjugacy_partition(mul, inv):
    """Per element, the least index in its conjugacy class."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] I = np.ascontiguousarray(inv, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], g, x
    labels = np.arange(n, dtype=np.int32)
    cdef cnp.int32_t[::1] L = labels
    cdef cnp.int32_t ig, c
    for g in range(n):
        ig = I[g]
        for x in range(n):
            c = M[M[ig, x], g]
            if c < L[x]:
                L[x] = c
    return labels


def relative_class_sizes(mul, inv, hh):
    """Per element x of the parent, the size of the orbit {h^-1 x h : h in hh}."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] I = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const cnp.int32_t[::1] H = np.ascontiguousarray(hh, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], x, j
    out = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] O = out
    cdef cnp.int32_t[::1] stamp = np.full(n, -1, dtype=np.int32)
    cdef cnp.int32_t h, c, count
    for x in range(n):
        count = 0
        for j in range(H.shape[0]):
            h = H[j]
            c = M[M[I[h], <cnp.int32_t> x], h]
            if stamp[c] != <cnp.int32_t> x:
                stamp[c] = <cnp.int32_t> x
                count += 1
        O[x] = count
    return out


def perm_mul_table(perms):
    """Multiplication table for a closed list of permutations.

    Product convention: (p*q)(t) = q(p(t)), i.e. apply p first.
    """
    arr = np.ascontiguousarray(perms, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] P = arr
    cdef Py_ssize_t n = P.shape[0], d = P.shape[1], i, j, t
    cdef dict lookup = {}
    for i in range(n):
        lookup[arr[i].tobytes()] = i
    mul_arr = np.empty((n, n), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] MT = mul_arr
    comp = np.empty(d, dtype=np.int32)
    cdef cnp.int32_t[::1] C = comp
    for i in range(n):
        for j in range(n):
            for t in range(d):
                C[t] = P[j, P[i, t]]
            MT[i, j] = lookup[comp.tobytes()]
    return mul_arr


cdef inline cnp.int32_t _pow_elem(const cnp.int32_t[:, ::1] M, const cnp.int32_t[::1] I,
                                  cnp.int32_t identity, cnp.int32_t base, long long m) noexcept:
    cdef cnp.int32_t result = identity
    if m < 0:
        base = I[base]
        m = -m
    while m:
        if m & 1:
            result = M[result, base]
        base = M[base, base]
        m >>= 1
    return result


cdef Py_ssize_t _max_stack(const cnp.int32_t[::1] ops) except -1:
    cdef Py_ssize_t depth = 0, best = 0, k
    for k in range(ops.shape[0]):
        if ops[k] == 0:
            depth += 1
            if depth > best:
                best = depth
        elif ops[k] == 2 or ops[k] == 3:
            depth -= 1
            if depth < 1:
                raise ValueError("word program underflows the stack")
    if depth != 1:
        raise ValueError("word program left the stack unbalanced")
    return best


cdef inline cnp.int32_t _eval_one(const cnp.int32_t[:, ::1] M, const cnp.int32_t[::1] I,
                                  cnp.int32_t identity,
                                  const cnp.int32_t[::1] ops, const cnp.int32_t[::1] args,
                                  const cnp.int32_t[::1] digits, cnp.int32_t[::1] stack) noexcept:
    cdef Py_ssize_t sp = 0, k
    cdef cnp.int32_t a, b, op
    for k in range(ops.shape[0]):
        op = ops[k]
        if op == 0:  # OP_VAR
            stack[sp] = digits[args[k]]
            sp += 1
        elif op == 1:  # OP_INV
            stack[sp - 1] = I[stack[sp - 1]]
        elif op == 2:  # OP_MUL
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            stack[sp - 1] = M[a, b]
        elif op == 3:  # OP_COMM
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            stack[sp - 1] = M[M[I[a], I[b]], M[a, b]]
        else:  # OP_POW
            stack[sp - 1] = _pow_elem(M, I, identity, stack[sp - 1], args[k])
    return stack[0]


def word_value_set(mul, inv, identity, ops, args, arity):
    """All values of the word over every assignment, as a sorted array."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] I = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const cnp.int32_t[::1] OPS = np.ascontiguousarray(ops, dtype=np.int32)
    cdef const cnp.int32_t[::1] ARGS = np.ascontiguousarray(args, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], r = arity
    cdef cnp.int32_t e = identity
    cdef cnp.int32_t[::1] stack = np.zeros(max(1, _max_stack(OPS)), dtype=np.int32)
    cdef cnp.int32_t[::1] digits = np.zeros(max(1, r), dtype=np.int32)
    cdef cnp.uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef long long total = 1, flat
    cdef Py_ssize_t v, pos
    for v in range(r):
        total *= n
    for flat in range(total):
        seen[_eval_one(M, I, e, OPS, ARGS, digits, stack)] = 1
        pos = r - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] == n:
                digits[pos] = 0
                pos -= 1
            else:
                break
    return np.nonzero(np.asarray(seen))[0].astype(np.int32)


def first_word_violation(mul, inv, identity, ops, args, arity):
    """First assignment (odometer order) with a non-identity value, or None."""
    cdef const cnp.int32_t[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef const cnp.int32_t[::1] I = np.ascontiguousarray(inv, dtype=np.int32)
    cdef const cnp.int32_t[::1] OPS = np.ascontiguousarray(ops, dtype=np.int32)
    cdef const cnp.int32_t[::1] ARGS = np.ascontiguousarray(args, dtype=np.int32)
    cdef Py_ssize_t n = M.shape[0], r = arity
    cdef cnp.int32_t e = identity
    cdef cnp.int32_t[::1] stack = np.zeros(max(1, _max_stack(OPS)), dtype=np.int32)
    cdef cnp.int32_t[::1] digits = np.zeros(max(1, r), dtype=np.int32)
    cdef long long total = 1, flat
    cdef Py_ssize_t v, pos
    for v in range(r):
        total *= n
    for flat in range(total):
        if _eval_one(M, I, e, OPS, ARGS, digits, stack) != e:
            return tuple(int(digits[v]) for v in range(r))
        pos = r - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] == n:
                digits[pos] = 0
                pos -= 1
            else:
                break
    return None
