"""Regenerate corpus_small.g6: 100 graphs on at most 8 vertices.

Named constructions that fit come first, then seeded random graphs.
Run from the repository root: python3 tests/data/make_corpus.py
"""

import random
from pathlib import Path

from bicayley.constructions import hypercube
from bicayley.graph import Graph, K2, complete_graph, cycle_graph, empty_graph, path_graph
from bicayley.graph6 import graph6_encode
from bicayley.cartesian import cartesian_product


def named():
    yield "K1", Graph(1)
    yield "K2", K2
    for n in range(3, 9):
        yield "C%d" % n, cycle_graph(n)
    for n in range(2, 9):
        yield "P%d" % n, path_graph(n)
    for n in range(3, 9):
        yield "K%d" % n, complete_graph(n)
    yield "E5", empty_graph(5)
    for n in (1, 2, 3):
        yield "Q%d" % n, hypercube(n)[0]
    yield "K2xC3", cartesian_product(K2, cycle_graph(3))
    yield "K2xC4", cartesian_product(K2, cycle_graph(4))
    yield "K2xP3", cartesian_product(K2, path_graph(3))
    yield "K4-minus-edge", Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    yield "K33", Graph(6, [(a, b) for a in range(3) for b in range(3, 6)])
    yield "star7", Graph(7, [(0, i) for i in range(1, 7)])


def main():
    rng = random.Random(20240611)
    rows = list(named())
    k = 0
    while len(rows) < 100:
        n = rng.randint(1, 8)
        p = rng.choice([0.2, 0.35, 0.5, 0.65, 0.8])
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        rows.append(("rand%02d" % k, Graph(n, edges)))
        k += 1
    out = Path(__file__).with_name("corpus_small.g6")
    out.write_text("".join("%s\t%s\n" % (name, graph6_encode(g)) for name, g in rows))


if __name__ == "__main__":
    main()
