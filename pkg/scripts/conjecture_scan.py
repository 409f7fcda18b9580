"""Run the SPPT-separability harness over several dimensions and samplers.

    python scripts/conjecture_scan.py --count 1000 --seed 7
"""

import argparse
import time

from sppt.harness import run_conjecture

DIMS = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=7)
    args = p.parse_args()

    print(f"{'dims':>5} {'sampler':>10} {'max realign':>13} {'min eig PT':>12} {'viol':>5} {'secs':>6}")
    for m, n in DIMS:
        for sampler in ("commuting", "hermitian"):
            t0 = time.perf_counter()
            r = run_conjecture(m, n, args.count, sampler, args.seed)
            print(
                f"{m}x{n:<3} {sampler:>10} {r.max_realignment:13.10f} {r.min_eigenvalue:12.3e} "
                f"{len(r.violations):5d} {time.perf_counter() - t0:6.1f}"
            )
            for rec in r.violations:
                print(f"    violation: index {rec.index} seed {rec.seed} value {rec.realignment_value!r}")


if __name__ == "__main__":
    main()
