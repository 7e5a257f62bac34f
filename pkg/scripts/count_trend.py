"""Unlabelled rooted tree counts, successive ratios and the asymptotic estimate.

    python scripts/count_trend.py --max-n 16
"""
import argparse
from dataclasses import dataclass

from stringtree.strops import OTTER, OtterConstants, count_canonical

# Same amplitude and growth, with the exponent that applies to rooted counts.
ROOTED = OtterConstants(amplitude=0.4399, growth=2.95576528565, exponent=-1.5)


@dataclass
class TrendConfig:
    min_n: int = 1
    max_n: int = 16


def run(cfg: TrendConfig):
    rows = []
    prev = None
    for n in range(cfg.min_n, cfg.max_n + 1):
        count = count_canonical(n)
        ratio = count / prev if prev else float("nan")
        rows.append((n, count, ratio, OTTER.estimate(n), ROOTED.estimate(n)))
        prev = count
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=16)
    args = ap.parse_args()
    rows = run(TrendConfig(args.min_n, args.max_n))
    print(f"{'n':>3} {'count':>8} {'ratio':>7} {'est(-5/2)':>11} {'est(-3/2)':>11}")
    for n, count, ratio, est, rooted in rows:
        print(f"{n:>3} {count:>8} {ratio:>7.4f} {est:>11.1f} {rooted:>11.1f}")
    drops = [rows[i][0] for i in range(2, len(rows)) if rows[i][2] <= rows[i - 1][2]]
    print("ratio drops at n =", drops or "none")
    print(f"bits per node, entropy bound {OTTER.bits_per_node:.3f}, string form 2.000")


if __name__ == "__main__":
    main()
