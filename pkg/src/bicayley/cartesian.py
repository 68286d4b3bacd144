"""Cartesian products and prime factorization with respect to the Cartesian product.

Factorization uses Feder's characterization: the product relation on edges is
the transitive closure of the Djokovic-Winkler relation together with the
relation tau (incident edges ``xy``, ``xz`` whose ends ``y``, ``z`` are
non-adjacent and have ``x`` as their only common neighbour).  The result is
certified by reassembling the graph from the factors and coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from . import perm as P
from .aut import are_graphs_isomorphic, automorphism_group
from .errors import ParseError, PreconditionError, ResourceLimitError, VerificationError
from .graph import Graph, components, is_connected
from .graph6 import graph6_decode, graph6_encode

MAX_PRODUCT_VERTICES = 4096


def cartesian_product(x: Graph, y: Graph, max_vertices: int = MAX_PRODUCT_VERTICES) -> Graph:
    """``x □ y`` with vertex ``(u, v)`` numbered ``u * |y| + v``."""
    n = x.n * y.n
    if n > max_vertices:
        raise ResourceLimitError("product would have %d vertices (bound %d)" % (n, max_vertices))
    ny = y.n
    edges = []
    for u in range(x.n):
        for a, b in y.edges():
            edges.append((u * ny + a, u * ny + b))
    for a, b in x.edges():
        for v in range(ny):
            edges.append((a * ny + v, b * ny + v))
    return Graph(n, edges)


def product_of(graphs: Sequence[Graph]) -> Graph:
    out = Graph(1)
    for g in graphs:
        out = cartesian_product(out, g)
    return out


def product_index(coords: Sequence[int], sizes: Sequence[int]) -> int:
    """Row-major index of ``coords`` in a product with factor sizes ``sizes``."""
    idx = 0
    for c, s in zip(coords, sizes):
        idx = idx * s + c
    return idx


@dataclass
class FactorDecomposition:
    factors: list
    coordinates: list  # coordinates[v] is a tuple with one entry per factor

    @property
    def sizes(self) -> list[int]:
        return [f.n for f in self.factors]

    def vertex_of(self) -> dict:
        return {c: v for v, c in enumerate(self.coordinates)}

    def reassemble(self) -> Graph:
        """The product of the factors, relabelled back to the original vertex names."""
        prod = product_of(self.factors)
        sizes = self.sizes
        to_orig = [0] * prod.n
        for v, c in enumerate(self.coordinates):
            to_orig[product_index(c, sizes)] = v
        return prod.relabel(to_orig)

    def report(self) -> str:
        lines = ["factors %d" % len(self.factors)]
        lines.extend(graph6_encode(f) for f in self.factors)
        lines.append("coords")
        for v, c in enumerate(self.coordinates):
            lines.append("%d: (%s)" % (v, ",".join(map(str, c))))
        return "\n".join(lines) + "\n"


def read_report(text: str) -> FactorDecomposition:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        head = lines[0].split()
        if head[0] != "factors":
            raise ParseError("report must start with 'factors <k>'", offset=0)
        k = int(head[1])
        factors = [graph6_decode(s) for s in lines[1:1 + k]]
        if lines[1 + k] != "coords":
            raise ParseError("missing 'coords' line")
        coords = []
        for i, ln in enumerate(lines[2 + k:]):
            v, rest = ln.split(":", 1)
            if int(v) != i:
                raise ParseError("coordinates out of order at vertex %s" % v)
            rest = rest.strip()
            if not (rest.startswith("(") and rest.endswith(")")):
                raise ParseError("malformed coordinate tuple %r" % rest)
            coords.append(tuple(int(t) for t in rest[1:-1].split(",")))
    except (IndexError, ValueError):
        raise ParseError("malformed decomposition report") from None
    return FactorDecomposition(factors, coords)


def _distance_matrix(g: Graph) -> np.ndarray:
    n = g.n
    d = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        row = d[s]
        row[s] = 0
        frontier = [s]
        k = 0
        while frontier:
            k += 1
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if row[w] < 0:
                        row[w] = k
                        nxt.append(w)
            frontier = nxt
    return d


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def product_relation(g: Graph) -> list[list[tuple[int, int]]]:
    """Classes of the product relation on the edges of a connected graph."""
    edges = g.edges()
    m = len(edges)
    if m == 0:
        return []
    eid = {e: i for i, e in enumerate(edges)}
    parent = list(range(m))

    def union(a, b):
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    # Djokovic-Winkler: xy ~ uv iff d(x,u) - d(y,u) != d(x,v) - d(y,v)
    d = _distance_matrix(g)
    U = np.array([e[0] for e in edges])
    V = np.array([e[1] for e in edges])
    W = d[U] - d[V]
    rel = W[:, U] != W[:, V]
    for i in range(m):
        for j in np.nonzero(rel[i, i + 1:])[0]:
            union(i, i + 1 + int(j))

    masks = g.masks
    for x in range(g.n):
        for y, z in combinations(sorted(g.adj[x]), 2):
            if not masks[y] >> z & 1 and (masks[y] & masks[z]).bit_count() == 1:
                union(eid[(min(x, y), max(x, y))], eid[(min(x, z), max(x, z))])

    classes: dict[int, list] = {}
    for i, e in enumerate(edges):
        classes.setdefault(_find(parent, i), []).append(e)
    return [classes[r] for r in sorted(classes)]


def _coordinatize(g: Graph, classes):
    """Factors and coordinates for a partition of the edges into product classes.

    Returns None when the classes do not form a Cartesian product structure.
    """
    n = g.n
    k = len(classes)
    edge_class = {}
    for i, cls in enumerate(classes):
        for e in cls:
            edge_class[e] = i
    fibers, colayer = [], []
    for i, cls in enumerate(classes):
        fib = Graph(n, cls)
        base = next(c for c in components(fib) if c[0] == 0)
        rest = Graph(n, [e for j, c in enumerate(classes) if j != i for e in c])
        label = [0] * n
        comps = components(rest)
        if len(comps) != len(base):
            return None
        for idx, comp in enumerate(comps):
            for v in comp:
                label[v] = idx
        pos = {}
        for t, v in enumerate(base):
            if label[v] in pos:
                return None
            pos[label[v]] = t
        fibers.append(base)
        colayer.append([pos[label[v]] for v in range(n)])
    sizes = [len(f) for f in fibers]
    if int(np.prod(sizes)) != n:
        return None
    coords = [tuple(colayer[i][v] for i in range(k)) for v in range(n)]
    if len(set(coords)) != n:
        return None
    for (u, v), i in edge_class.items():
        diff = [j for j in range(k) if coords[u][j] != coords[v][j]]
        if diff != [i]:
            return None
    factors = [g.induced_subgraph(f) for f in fibers]
    expected = sum(g_.num_edges() * (n // g_.n) for g_ in factors)
    if expected != g.num_edges():
        return None
    return factors, coords


def prime_factorization(g: Graph) -> FactorDecomposition:
    """Decompose a connected graph into prime factors.

    Factor ``i`` is the fiber through vertex 0, with its vertices in increasing
    order; ``coordinates[v][i]`` indexes that fiber.  Factors are sorted by
    (vertex count, edge count, graph6) so the output is deterministic.
    """
    if not is_connected(g):
        raise PreconditionError("prime factorization needs a connected graph")
    if g.n == 1:
        return FactorDecomposition([], [()])
    classes = product_relation(g)
    if len(classes) == 1:
        return FactorDecomposition([g], [(v,) for v in range(g.n)])
    res = _coordinatize(g, classes)
    if res is None:
        raise VerificationError("factorization", "edge classes do not coordinatize the graph")
    factors, coords = res
    order = sorted(
        range(len(factors)),
        key=lambda i: (factors[i].n, factors[i].num_edges(), graph6_encode(factors[i]), i),
    )
    decomp = FactorDecomposition(
        [factors[i] for i in order], [tuple(c[i] for i in order) for c in coords]
    )
    if decomp.reassemble() != g:
        raise VerificationError("factorization", "reassembled product differs from input")
    return decomp


def is_prime(g: Graph) -> bool:
    return g.n > 1 and len(prime_factorization(g).factors) == 1


def relatively_prime(x: Graph, y: Graph) -> bool:
    """True iff no prime factor of ``x`` is isomorphic to a prime factor of ``y``."""
    fx = prime_factorization(x).factors
    fy = prime_factorization(y).factors
    return not any(are_graphs_isomorphic(a, b) is not None for a in fx for b in fy)


def aut_of_product(decomp: FactorDecomposition) -> P.PermGroup:
    """``Aut(G1) x ... x Aut(Gk)`` acting coordinatewise; factors must be pairwise coprime."""
    fs = decomp.factors
    for i, j in combinations(range(len(fs)), 2):
        if are_graphs_isomorphic(fs[i], fs[j]) is not None:
            raise PreconditionError("factors %d and %d are isomorphic" % (i, j))
    vertex = decomp.vertex_of()
    n = len(decomp.coordinates)
    gens, order = [], 1
    for i, f in enumerate(fs):
        A = automorphism_group(f)
        order *= A.order()
        for phi in A.generators:
            img = []
            for c in decomp.coordinates:
                c2 = list(c)
                c2[i] = phi[c[i]]
                img.append(vertex[tuple(c2)])
            gens.append(tuple(img))
    return P.PermGroup(n, gens, order=order)


def fiber_blocks(decomp: FactorDecomposition, base: int) -> list[list[int]]:
    """The sets ``V_i`` of vertices agreeing with ``base`` outside coordinate ``i``."""
    coords = decomp.coordinates
    b = coords[base]
    out = []
    for i in range(len(decomp.factors)):
        out.append(
            [v for v, c in enumerate(coords) if all(c[j] == b[j] for j in range(len(b)) if j != i)]
        )
    if not out:
        out.append([base])
    return out


def _split_once(g: Graph):
    """A pair ``(X, Y)`` with ``g`` isomorphic to ``X □ Y`` and both nontrivial, or None.

    Exhaustive backtracking over placements of the vertices in a ``p x q`` grid.
    """
    n = g.n
    adj = g.adj
    for p in range(2, n // 2 + 1):
        if n % p:
            continue
        q = n // p
        cells = [(i, j) for i in range(p) for j in range(q)]
        grid = {}
        used = [False] * n

        def ok(v, i, j):
            for (a, b), w in grid.items():
                e = w in adj[v]
                if a == i:
                    # row 0 defines the second factor; later rows must copy it
                    if i and e != (grid[(0, b)] in adj[grid[(0, j)]]):
                        return False
                elif b == j:
                    if j and e != (grid[(a, 0)] in adj[grid[(i, 0)]]):
                        return False
                elif e:
                    return False
            # keep the factor labellings in a connected order
            if i == 0 and j > 0 and not any(grid[(0, b)] in adj[v] for b in range(j)):
                return False
            if j == 0 and i > 0 and not any(grid[(a, 0)] in adj[v] for a in range(i)):
                return False
            return True

        def place(k):
            if k == len(cells):
                return True
            i, j = cells[k]
            for v in range(n):
                if used[v] or not ok(v, i, j):
                    continue
                grid[(i, j)] = v
                used[v] = True
                if place(k + 1):
                    return True
                del grid[(i, j)]
                used[v] = False
            return False

        grid[(0, 0)] = 0
        used[0] = True
        if place(1):
            X = Graph(p, [(a, b) for a in range(p) for b in range(a + 1, p) if grid[(b, 0)] in adj[grid[(a, 0)]]])
            Y = Graph(q, [(a, b) for a in range(q) for b in range(a + 1, q) if grid[(0, b)] in adj[grid[(0, a)]]])
            return X, Y
    return None


def brute_force_factorization(g: Graph, max_vertices: int = 12) -> list[Graph]:
    """Prime factors of a small connected graph by exhaustive grid placement (test oracle)."""
    if g.n > max_vertices:
        raise ResourceLimitError("brute-force factorization is limited to %d vertices" % max_vertices)
    if not is_connected(g):
        raise PreconditionError("prime factorization needs a connected graph")
    if g.n == 1:
        return []
    split = _split_once(g)
    if split is None:
        return [g]
    return brute_force_factorization(split[0], max_vertices) + brute_force_factorization(split[1], max_vertices)
