"""Write every connected graph on at most N vertices, up to isomorphism, as gzipped graph6.

Graphs on up to 7 vertices come from the networkx graph atlas.  Larger
orders are produced by adding one vertex, joined to a non-empty subset of
the previous vertices, to each connected graph of the previous order;
every connected graph arises this way because it has a vertex whose
removal keeps it connected.  Duplicates are removed by bucketing on a
Weisfeiler-Lehman hash and then testing isomorphism inside each bucket.

Usage: python scripts/gen_connected_corpus.py [--max-n 8] [--output src/pcfcolor/data/connected_upto8.g6.gz]
"""

import argparse
import gzip
from itertools import combinations

import networkx as nx


def atlas_connected(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def extend(graphs, n):
    buckets = {}
    found = []
    for base in graphs:
        for size in range(1, n):
            for nbrs in combinations(range(n - 1), size):
                g = base.copy()
                g.add_node(n - 1)
                g.add_edges_from((n - 1, x) for x in nbrs)
                key = (
                    tuple(sorted(d for _, d in g.degree())),
                    nx.weisfeiler_lehman_graph_hash(g, iterations=3),
                )
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, h) for h in bucket):
                    continue
                bucket.append(g)
                found.append(g)
    return found


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--output", default="src/pcfcolor/data/connected_upto8.g6.gz")
    args = parser.parse_args()

    by_order = {n: atlas_connected(n) for n in range(1, min(args.max_n, 7) + 1)}
    for n in range(8, args.max_n + 1):
        by_order[n] = extend(by_order[n - 1], n)
    with gzip.open(args.output, "wt") as fh:
        for n in sorted(by_order):
            for g in by_order[n]:
                fh.write(nx.to_graph6_bytes(g, header=False).decode("ascii"))
    print({n: len(gs) for n, gs in by_order.items()})


if __name__ == "__main__":
    main()
