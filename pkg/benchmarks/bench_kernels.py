"""Benchmark the compiled kernel backend against the pure NumPy fallback.

Runs each hot kernel on catalog groups with both backends, checks that the
results agree, and reports per-call timings plus the speedup ratio.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--groups S4,SL23,ES32+]
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from commprobe._kernels import pykernels
from commprobe.catalog import builtin_group
from commprobe.words import arity, compile_word, engel_word


def _best_time(fn, repeat: int) -> float:
    """Best wall-clock seconds for one call of fn over `repeat` tries."""
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _as_key(value):
    """Normalized comparison key for kernel outputs."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _cases(group_names: list[str]):
    """Yield (label, callable-factory) benchmark cases for both backends."""
    word = engel_word(2)
    ops, args = compile_word(word)
    word_arity = arity(word)
    for name in group_names:
        G = builtin_group(name)
        mul = G.mul
        inv = G.inv
        everything = np.arange(G.order, dtype=np.int32)
        gens = np.asarray(G.generators, dtype=np.int32)
        yield (
            f"mul_closure [{name}]",
            lambda k, m=mul, g=gens: k.mul_closure(m, 0, g),
        )
        yield (
            f"commuting_pair_count [{name}]",
            lambda k, m=mul, a=everything: k.commuting_pair_count(m, a, a),
        )
        yield (
            f"conjugacy_partition [{name}]",
            lambda k, m=mul, i=inv: k.conjugacy_partition(m, i),
        )
        yield (
            f"element_orders [{name}]",
            lambda k, m=mul: k.element_orders(m, 0),
        )
        yield (
            f"relative_class_sizes [{name}]",
            lambda k, m=mul, i=inv, a=everything: k.relative_class_sizes(m, i, a),
        )
        if G.order <= 64:
            yield (
                f"word_value_set engel2 [{name}]",
                lambda k, m=mul, i=inv, o=ops, a=args, r=word_arity: k.word_value_set(
                    m, i, 0, o, a, r
                ),
            )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions")
    parser.add_argument(
        "--groups",
        default="S4,SL23,D16,ES32plus,A5",
        help="comma-separated builtin group names",
    )
    opts = parser.parse_args(argv)

    try:
        from commprobe import _ckernels
    except ImportError:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    names = [s.strip() for s in opts.groups.split(",") if s.strip()]
    rows = []
    for label, call in _cases(names):
        got_c = call(_ckernels)
        got_py = call(pykernels)
        if _as_key(got_c) != _as_key(got_py):
            print(f"MISMATCH in {label}: {got_c!r} != {got_py!r}", file=sys.stderr)
            return 1
        t_c = _best_time(lambda: call(_ckernels), opts.repeat)
        t_py = _best_time(lambda: call(pykernels), opts.repeat)
        rows.append((label, t_c, t_py))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':{width}}  {'compiled':>12}  {'pure':>12}  {'speedup':>8}")
    for label, t_c, t_py in rows:
        ratio = t_py / t_c if t_c > 0 else float("inf")
        print(f"{label:{width}}  {t_c * 1e6:>10.1f}us  {t_py * 1e6:>10.1f}us  {ratio:>7.1f}x")
    total_c = sum(r[1] for r in rows)
    total_py = sum(r[2] for r in rows)
    print(
        f"{'TOTAL':{width}}  {total_c * 1e6:>10.1f}us  {total_py * 1e6:>10.1f}us"
        f"  {total_py / total_c:>7.1f}x"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
