"""Compare the compiled and pure-Python kernels on the three hot loops.

    python benchmarks/bench_kernels.py [--repeat 5] [--quick]

Every timed call is checked against the other backend's output first, so a
speedup is only reported for identical results.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from plateau import kernels


def cases(quick: bool):
    rng = np.random.default_rng(0)
    wht_sizes = (10, 14) if quick else (10, 14, 18)
    mat_sizes = (5, 6) if quick else (5, 6, 7, 8)
    for n in wht_sizes:
        signs = 1 - 2 * rng.integers(0, 2, 1 << n)
        yield f"wht n={n}", lambda b, v=signs: kernels.wht(v, b)
    for n in wht_sizes:
        bits = rng.integers(0, 2, 1 << n, dtype=np.uint8)
        yield f"mobius n={n}", lambda b, v=bits: kernels.mobius(v, b)
    for n in mat_sizes:
        tt = rng.integers(0, 2, 1 << n)
        idx = np.arange(1 << n)
        A = tt[idx[:, None] ^ idx[None, :]].astype(np.int64)
        yield f"matmul {1 << n}x{1 << n}", lambda b, a=A: kernels.matmul_checked(a, a, b)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--quick", action="store_true", help="small sizes only")
    args = parser.parse_args(argv)

    names = kernels.available_backends()
    backends = {name: kernels.get_backend(name) for name in names}
    header = f"{'kernel':<16}" + "".join(f"{name + ' (ms)':>16}" for name in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, call in cases(args.quick):
        outputs = [call(b) for b in backends.values()]
        assert all(np.array_equal(outputs[0], o) for o in outputs[1:]), label
        best = {}
        for name, b in backends.items():
            timer = timeit.Timer(lambda: call(b))
            loops, _ = timer.autorange()
            best[name] = min(timer.repeat(args.repeat, loops)) / loops * 1e3
        row = f"{label:<16}" + "".join(f"{best[name]:>16.3f}" for name in names)
        if len(names) == 2:
            row += f"{best['python'] / best['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
