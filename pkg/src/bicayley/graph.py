"""Finite simple undirected graphs and the Cayley / bi-Cayley constructions."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import perm as P
from .errors import ParseError, ValidationError
from .groups import GroupTable, generating_set


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency is stored both as frozensets and as integer bitmasks; the
    bitmasks back the refinement code in :mod:`bicayley.aut`.
    """

    __slots__ = ("n", "adj", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        n = int(n)
        if n < 0:
            raise ValidationError("negative vertex count")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError("edge (%d, %d) out of range" % (u, v))
            if u == v:
                raise ValidationError("loop at vertex %d" % u)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        self.masks = tuple(sum(1 << w for w in a) for a in adj)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        n = len(masks)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
        return cls(n, edges)

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.num_edges())

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.masks))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def relabel(self, p: Sequence[int]) -> "Graph":
        """The graph with vertex ``v`` renamed ``p[v]``."""
        return Graph(self.n, [(p[u], p[v]) for u, v in self.edges()])

    def is_automorphism(self, p: Sequence[int]) -> bool:
        if len(p) != self.n:
            return False
        adj = self.adj
        return all(p[v] in adj[p[u]] for u, v in self.edges())

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(vertices), edges)


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


K2 = Graph(2, [(0, 1)])


def _check_connection_set(G: GroupTable, S: Iterable[int], what: str, allow_identity: bool = False) -> frozenset:
    S = frozenset(int(s) for s in S)
    if any(not 0 <= s < G.order for s in S):
        raise ValidationError("%s has elements outside the group" % what)
    if not allow_identity:
        if 0 in S:
            raise ValidationError("%s contains the identity" % what)
        if any(G.inv[s] not in S for s in S):
            raise ValidationError("%s is not inverse-closed" % what)
    return S


def cayley_graph(G: GroupTable, S: Iterable[int]) -> Graph:
    """``Cay(G, S)``: vertex ``g`` is joined to ``sg`` for every ``s`` in ``S``."""
    S = _check_connection_set(G, S, "connection set")
    m = G.mul
    return Graph(G.order, [(g, m[s][g]) for g in range(G.order) for s in S if g < m[s][g]])


def right_regular_generators(G: GroupTable, gens: Iterable[int] | None = None) -> list:
    """Permutations ``R(g): x -> xg`` for a generating set of ``G``."""
    gens = generating_set(G) if gens is None else list(gens)
    return [G.regular_permutation(g) for g in gens]


def right_regular_group(G: GroupTable) -> P.PermGroup:
    gens = right_regular_generators(G)
    return P.PermGroup(G.order, gens, order=G.order)


@dataclass(frozen=True)
class BiCayleyTriple:
    """``BiCay(H, R, L, S)``.

    Vertex ``h_0`` is index ``h`` and vertex ``h_1`` is index ``|H| + h``.
    """

    H: GroupTable
    R: frozenset
    L: frozenset
    S: frozenset

    def __post_init__(self):
        H = self.H
        object.__setattr__(self, "R", _check_connection_set(H, self.R, "R"))
        object.__setattr__(self, "L", _check_connection_set(H, self.L, "L"))
        object.__setattr__(self, "S", _check_connection_set(H, self.S, "S", allow_identity=True))
        if not self.S:
            raise ValidationError("S must be non-empty")

    @property
    def size(self) -> int:
        return len(self.R) + len(self.L) + len(self.S)


def bicayley_graph(t: BiCayleyTriple) -> Graph:
    H, n = t.H, t.H.order
    m = H.mul
    edges = []
    for h in range(n):
        for r in t.R:
            g = m[r][h]
            if h < g:
                edges.append((h, g))
        for l in t.L:
            g = m[l][h]
            if h < g:
                edges.append((n + h, n + g))
        for s in t.S:
            edges.append((h, n + m[s][h]))
    return Graph(2 * n, edges)


def br_permutation(H: GroupTable, g: int) -> P.Permutation:
    """``BR(g): h_i -> (hg)_i``."""
    n = H.order
    row = [H.mul[h][g] for h in range(n)]
    return tuple(row + [n + x for x in row])


def br_generators(t: BiCayleyTriple) -> P.PermGroup:
    H = t.H
    gens = [br_permutation(H, g) for g in generating_set(H)]
    if not gens:
        return P.PermGroup.trivial(2 * H.order)
    return P.PermGroup(2 * H.order, gens, order=H.order)


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        for u in comp:
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def distances_from(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bipartition(g: Graph):
    """``(B1, B2)`` with vertex 0's class first, or None if ``g`` has an odd cycle.

    Each component's lowest vertex goes to ``B1``.
    """
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] >= 0:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return (
        sorted(v for v in range(g.n) if side[v] == 0),
        sorted(v for v in range(g.n) if side[v] == 1),
    )


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def write_edge_list(g: Graph) -> str:
    lines = ["n %d" % g.n]
    lines.extend("%d %d" % e for e in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge list")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ParseError("first line must be 'n <count>'", offset=0)
    try:
        n = int(head[1])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError:
        raise ParseError("malformed edge line") from None
    try:
        return Graph(n, edges)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
