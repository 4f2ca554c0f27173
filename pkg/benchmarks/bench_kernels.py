"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is run on identical inputs under every available backend; the
outputs are compared before timing so a speedup never hides a wrong answer.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from drincert.backend import available_backends
from drincert.extfield import irreducible_prime_poly
from drincert.gl3 import gl3_generators


def _cases(rng: np.random.Generator) -> dict:
    p = 7
    h = np.array(irreducible_prime_poly(p, 48), dtype=np.int64)
    a = rng.integers(0, p, 48, dtype=np.int64)
    b = rng.integers(0, p, 48, dtype=np.int64)
    mat = rng.integers(0, p, (60, 60), dtype=np.int64)
    return {
        "polmulmod deg 48 mod 7": (lambda m: m.polmulmod(a, b, h, p), 200),
        "rref 60x60 mod 7": (lambda m: m.rref(mat.copy(), p), 5),
        "frobmat deg 48 mod 7": (lambda m: m.frobmat(h, p), 5),
        "gl3_closure q=3": (lambda m: m.gl3_closure(gl3_generators(3), 3), 1),
    }


def _same(x, y) -> bool:
    if isinstance(x, tuple):
        return len(x) == len(y) and all(_same(u, v) for u, v in zip(x, y))
    if isinstance(x, (set, frozenset)):
        return set(x) == set(y)
    return np.array_equal(np.asarray(x), np.asarray(y))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; showing the Python fallback only")
    cases = _cases(np.random.default_rng(0))
    names = list(backends)
    print(f"{'kernel':28s}" + "".join(f"{n:>14s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, (fn, number) in cases.items():
        results = {n: fn(m) for n, m in backends.items()}
        ref = results[names[0]]
        if not all(_same(ref, r) for r in results.values()):
            raise SystemExit(f"{label}: backends disagree")
        times = {}
        for n, m in backends.items():
            best = min(timeit.repeat(lambda: fn(m), number=number, repeat=args.repeat))
            times[n] = best / number
        row = f"{label:28s}" + "".join(f"{times[n] * 1e3:12.3f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
