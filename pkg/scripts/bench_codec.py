"""Time BFS/DFS encode and decode on random trees of growing size.

    python scripts/bench_codec.py --sizes 1000 10000 100000 1000000
"""
import argparse
import time
from dataclasses import dataclass, field

from stringtree.binary import dumps, loads
from stringtree.codec import decode_bfs, decode_dfs, encode_bfs, encode_dfs
from stringtree.tree import RootedOrderedTree, random_ordered_tree


@dataclass
class BenchConfig:
    sizes: list = field(default_factory=lambda: [1_000, 10_000, 100_000, 1_000_000])
    seed: int = 0
    repeats: int = 3
    dfs: bool = True


def best(fn, repeats):
    times = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def fresh(tree):
    # Degree arrays are cached per object; time encodes without that help.
    return RootedOrderedTree._unchecked(tree.parent)


def run(cfg: BenchConfig):
    results = []
    for n in cfg.sizes:
        tree = random_ordered_tree(n, cfg.seed)
        bfs = encode_bfs(tree).text
        row = {
            "n": n,
            "encode_bfs": best(lambda: encode_bfs(fresh(tree)), cfg.repeats),
            "decode_bfs": best(lambda: decode_bfs(bfs), cfg.repeats),
            "pack": best(lambda: dumps(bfs), cfg.repeats),
        }
        blob = dumps(bfs)
        row["unpack"] = best(lambda: loads(blob), cfg.repeats)
        if cfg.dfs:
            dfs = encode_dfs(tree).text
            row["encode_dfs"] = best(lambda: encode_dfs(fresh(tree)), cfg.repeats)
            row["decode_dfs"] = best(lambda: decode_dfs(dfs), cfg.repeats)
        results.append(row)
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=BenchConfig().sizes)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--no-dfs", action="store_true")
    args = ap.parse_args()
    rows = run(BenchConfig(args.sizes, args.seed, args.repeats, not args.no_dfs))
    keys = [k for k in rows[0] if k != "n"]
    print(f"{'n':>9} " + " ".join(f"{k:>11}" for k in keys))
    for row in rows:
        print(f"{row['n']:>9} " + " ".join(f"{row[k] * 1e3:>9.2f}ms" for k in keys))


if __name__ == "__main__":
    main()
