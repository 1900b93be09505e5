"""Compare the compiled and pure-Python kernels on shape enumeration.

Each run generates every rooted DAG on n vertices (optionally phylogenetic
with a leaf bound) and deduplicates by canonical form, which is the inner
loop of network enumeration.

    python benchmarks/bench_kernels.py --vertices 6 7 --repeat 3
"""

from __future__ import annotations

import argparse
import time

from mulnet import kernels


def shapes(backend, n: int, max_leaves: int, phylogenetic: bool) -> int:
    seen = set()
    for masks in backend.rooted_dags(n, max_leaves, phylogenetic, False):
        seen.add(backend.canonical_form(n, masks, (0,) * n))
    return len(seen)


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, value = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, nargs="+", default=[5, 6, 7])
    ap.add_argument("--max-leaves", type=int, default=3)
    ap.add_argument("--all-dags", action="store_true", help="drop the phylogenetic filter")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    names = kernels.available_backends()
    phylo = not args.all_dags
    print(f"backends: {', '.join(names)}; phylogenetic={phylo}, max_leaves={args.max_leaves}")
    print(f"{'n':>3} {'shapes':>8} " + " ".join(f"{name + ' s':>12}" for name in names) + f" {'speedup':>8}")
    for n in args.vertices:
        times, counts = {}, set()
        for name in names:
            backend = kernels.get_backend(name)
            t, count = best_of(lambda: shapes(backend, n, args.max_leaves, phylo), args.repeat)
            times[name] = t
            counts.add(count)
        if len(counts) != 1:
            raise SystemExit(f"backends disagree at n={n}: {sorted(counts)}")
        speedup = times["python"] / times["cython"] if "cython" in times else 1.0
        cells = " ".join(f"{times[name]:12.4f}" for name in names)
        print(f"{n:>3} {counts.pop():>8} {cells} {speedup:8.1f}x")


if __name__ == "__main__":
    main()
