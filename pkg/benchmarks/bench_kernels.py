"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Each row times the same inputs through both backends and checks that the
results agree before reporting the speedup.
"""

import argparse
import json
import random
import timeit

import numpy as np

from andreadakis import _kernels
from andreadakis.autf import random_word
from andreadakis.braid import artin_A, sample_braid
from andreadakis.magnus import compose_series


def _expand_case(rank, depth, length, count, seed):
    rng = random.Random(seed)
    words = [random_word(rank, length, rng).syllables for _ in range(count)]

    def run(backend):
        return [_kernels.expand_blocks(w, rank, depth, backend=backend) for w in words]

    def same(a, b):
        return all(np.array_equal(np.asarray(x, dtype=object), np.asarray(y, dtype=object))
                   for u, v in zip(a, b) for x, y in zip(u, v))

    return f"expand rank={rank} D={depth} len={length} x{count}", run, same


def _series_mul_case(rank, depth, count, seed):
    rng = np.random.default_rng(seed)
    size = _kernels.dense_size(rank, depth)
    pairs = [(rng.integers(-9, 9, size, dtype=np.int64), rng.integers(-9, 9, size, dtype=np.int64))
             for _ in range(count)]

    def run(backend):
        return [_kernels.series_mul(a, b, rank, depth, backend=backend) for a, b in pairs]

    def same(a, b):
        return all(np.array_equal(x.astype(object), y.astype(object)) for x, y in zip(a, b))

    return f"series_mul rank={rank} D={depth} x{count}", run, same


def _chain_case(n, steps, seed):
    rng = random.Random(seed)
    auts = [artin_A(*sorted(rng.sample(range(1, n + 1), 2)), n) for _ in range(steps)]
    chain = [([w.syllables for w in f.images], [w.inverse().syllables for w in f.images]) for f in auts]
    start = [((i, 1),) for i in range(1, n + 1)]

    def run(backend):
        return _kernels.apply_chain(start, chain, backend=backend)

    return f"apply_chain n={n} steps={steps}", run, lambda a, b: [tuple(x) for x in a] == [tuple(y) for y in b]


def _braid_series_case(n, depth, count, seed):
    rng = random.Random(seed)
    braids = [sample_braid(n, rng) for _ in range(count)]

    def run(backend):
        out = []
        for beta in braids:
            factors = []
            for (r, s), e in reversed(beta.syllables):
                g = artin_A(r, s, n)
                factors += [g if e > 0 else g.inverse()] * abs(e)
            out.append(compose_series(factors, n, depth, backend))
        return out

    def same(a, b):
        return all(np.array_equal(x.astype(object), y.astype(object)) for u, v in zip(a, b) for x, y in zip(u, v))

    return f"braid series n={n} D={depth} x{count}", run, same


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    if not _kernels.HAVE_EXTENSION:
        parser.error("compiled kernels are not built; run pip install -e . first")

    cases = [
        _expand_case(3, 6, 40, 50, 1),
        _expand_case(4, 5, 80, 50, 2),
        _series_mul_case(3, 6, 50, 3),
        _chain_case(5, 14, 4),
        _braid_series_case(4, 5, 20, 5),
    ]
    rows = []
    for name, run, same in cases:
        if not same(run("compiled"), run("python")):
            raise SystemExit(f"backends disagree on {name}")
        t_c = min(timeit.repeat(lambda: run("compiled"), number=1, repeat=args.repeat))
        t_p = min(timeit.repeat(lambda: run("python"), number=1, repeat=args.repeat))
        rows.append({"case": name, "compiled_s": t_c, "python_s": t_p, "speedup": t_p / t_c})

    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["case"]) for r in rows)
    print(f"{'case'.ljust(width)}  {'compiled':>10}  {'python':>10}  {'speedup':>8}")
    for r in rows:
        print(f"{r['case'].ljust(width)}  {r['compiled_s'] * 1e3:>8.2f}ms  {r['python_s'] * 1e3:>8.2f}ms"
              f"  {r['speedup']:>7.1f}x")


if __name__ == "__main__":
    main()
