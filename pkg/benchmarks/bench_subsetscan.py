"""Timing comparison of the subset-scan kernels.

Runs the compiled and pure-Python backends on the same seeded families
and prints per-case medians plus the speedup.  Sizes are chosen so the
full run stays in the seconds range; pass --events to push further.

    python3 benchmarks/bench_subsetscan.py [--events N] [--repeats R]
"""

import argparse
import statistics
import time

from exsieve.gen import random_family
from exsieve.kernel import available_backends


def time_once(impl, masks, natoms, k_max) -> float:
    start = time.perf_counter()
    impl.subset_scan(masks, natoms, k_max)
    return time.perf_counter() - start


def bench(impl, masks, natoms, k_max, repeats) -> float:
    return statistics.median(
        time_once(impl, masks, natoms, k_max) for _ in range(repeats)
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--events", type=int, default=20, help="largest family size (default 20)")
    parser.add_argument("--repeats", type=int, default=5, help="timings per case (default 5)")
    args = parser.parse_args()

    backends = available_backends()
    if "c" not in backends:
        print("compiled kernel not built; timing the python backend alone")
    cases = []
    for n in (8, 12, 16, args.events):
        # seed 4 draws a 14-atom space; family size is forced to n exactly
        fam = random_family(seed=4, max_atoms=14, max_events=n, min_events=n)
        cases.append((n, list(fam.masks), fam.space.natoms))

    header = f"{'events':>6} {'atoms':>5} {'k_max':>5}"
    for name in backends:
        header += f" {name + ' (s)':>12}"
    if "c" in backends and "python" in backends:
        header += f" {'speedup':>8}"
    print(header)

    for n, masks, natoms in cases:
        k_max = n
        row = f"{n:>6} {natoms:>5} {k_max:>5}"
        times = {}
        for name, impl in backends.items():
            times[name] = bench(impl, masks, natoms, k_max, args.repeats)
            row += f" {times[name]:>12.6f}"
        if "c" in times and "python" in times and times["c"] > 0:
            row += f" {times['python'] / times['c']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
