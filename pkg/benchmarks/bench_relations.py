"""Time the relation search on both kernels.

    python3 benchmarks/bench_relations.py [--repeat N]

Cases are free (no relation found), so every word up to the given depth is
visited and both kernels do identical work.
"""

import argparse
import time

from twistlab import _backend
from twistlab.congruence import relation_search_full
from twistlab.criteria import TwistCollection

CASES = [
    ("squares x,y depth 10", TwistCollection.uniform([(1, 0), (0, 1)], 2), 10),
    ("eg7 four twists depth 6", TwistCollection.uniform([(1, 0), (1, 3), (1, 10), (3, 17)], 1), 6),
    ("s=3 x,y,z depth 7", TwistCollection.uniform([(1, 0), (0, 1), (1, 1)], 3), 7),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _backend.available()
    print(f"backends: {', '.join(backends)}")
    print(f"{'case':28} {'nodes':>9} " + " ".join(f"{b + ' s':>10}" for b in backends) + "   speedup")
    for name, c, depth in CASES:
        row, nodes = [], None
        for b in backends:
            t, res = best_of(lambda: relation_search_full(list(c), depth, 10**8, backend=b), args.repeat)
            assert res.relation is None
            nodes = res.nodes
            row.append(t)
        speed = f"{row[0] / row[-1]:8.1f}x" if len(row) > 1 else "       -"
        print(f"{name:28} {nodes:9d} " + " ".join(f"{t:10.3f}" for t in row) + "  " + speed)


if __name__ == "__main__":
    main()
