"""Chi-square check that the random generator is uniform over ordered trees.

    python scripts/uniformity.py -n 5 --samples 20000
"""
import argparse
from collections import Counter
from dataclasses import dataclass

from scipy.stats import chisquare

from stringtree.codec import encode_bfs
from stringtree.strops import enumerate_valid
from stringtree.tree import random_ordered_tree


@dataclass
class UniformityConfig:
    n: int = 5
    samples: int = 20_000
    seed: int = 0


def run(cfg: UniformityConfig):
    support = [s.text for s in enumerate_valid(cfg.n)]
    seen = Counter(encode_bfs(random_ordered_tree(cfg.n, cfg.seed + i)).text for i in range(cfg.samples))
    observed = [seen[s] for s in support]
    assert sum(observed) == cfg.samples, "generator produced a string outside the support"
    return support, observed, chisquare(observed)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    support, observed, test = run(UniformityConfig(args.n, args.samples, args.seed))
    for s, k in zip(support, observed):
        print(f"{s:<{args.n}} {k}")
    print(f"{len(support)} shapes, chi2={test.statistic:.2f}, p={test.pvalue:.3f}")


if __name__ == "__main__":
    main()
