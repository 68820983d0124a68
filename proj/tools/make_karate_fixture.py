#!/usr/bin/env python3
"""Writes the Zachary karate club fixture files used by the tests.

Outputs (in the target directory):
  edges.txt             78 undirected edges, 0-based member ids
  features.txt          node id followed by the 34-dim binary adjacency row
  labels_club.txt       node id and club faction after the split
  labels_modularity.txt node id and community in the maximum-modularity
                        4-way partition (Q = 0.4198)
"""
import sys
from pathlib import Path

import networkx as nx
from networkx.algorithms import community


def best_modularity_partition(g):
    best, best_q = None, -1.0
    for seed in range(200):
        parts = community.louvain_communities(g, weight=None, seed=seed)
        q = community.modularity(g, parts, weight=None)
        if q > best_q + 1e-12:
            best, best_q = parts, q
    return best, best_q


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/karate")
    out.mkdir(parents=True, exist_ok=True)
    g = nx.karate_club_graph()
    n = g.number_of_nodes()

    with open(out / "edges.txt", "w") as f:
        f.write("# Zachary karate club, 34 members, 78 links\n")
        for u, v in sorted(tuple(sorted(e)) for e in g.edges()):
            f.write(f"{u} {v}\n")

    with open(out / "features.txt", "w") as f:
        for i in range(n):
            row = ["1" if g.has_edge(i, j) else "0" for j in range(n)]
            f.write(f"{i} " + " ".join(row) + "\n")

    with open(out / "labels_club.txt", "w") as f:
        for i in range(n):
            club = g.nodes[i]["club"].replace(" ", "_").replace(".", "")
            f.write(f"{i} {club}\n")

    parts, q = best_modularity_partition(g)
    parts = sorted((sorted(p) for p in parts), key=lambda p: p[0])
    label = {}
    for c, members in enumerate(parts):
        for m in members:
            label[m] = c
    with open(out / "labels_modularity.txt", "w") as f:
        f.write(f"# maximum-modularity partition, {len(parts)} communities, Q = {q:.4f}\n")
        for i in range(n):
            f.write(f"{i} m{label[i]}\n")
    print(f"wrote {out}: {len(parts)} communities, Q={q:.4f}")


if __name__ == "__main__":
    main()
