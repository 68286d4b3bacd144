"""Automorphism groups of small graphs and the group-action predicates built on them.

The search is a plain partition-backtrack: equitable refinement of an ordered
partition, individualization of the first non-singleton cell, and a first-path
stabilizer chain.  For each level (deepest first) we find, for every candidate
vertex of the target cell not yet known to be in the orbit, a leaf equivalent to
the first leaf.  The order of the group is the product of the orbit lengths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import perm as P
from .errors import PreconditionError, ResourceLimitError
from .graph import Graph, bipartition, is_connected

DEFAULT_MAX_VERTICES = 256


def _mask(cell: Iterable[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(masks, cells, splitters, n, ref_trace=None):
    """Refine ``cells`` to an equitable ordered partition.

    Returns ``(cells, trace)`` or ``None`` if ``ref_trace`` is given and the
    trace diverges from it.
    """
    trace = []
    queue = deque(splitters)
    pending = set(splitters)
    while queue and len(cells) < n:
        w = queue.popleft()
        if w not in pending:
            continue
        pending.discard(w)
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            counts = [(masks[v] & w).bit_count() for v in cell]
            if counts.count(counts[0]) == len(counts):
                out.append(cell)
                continue
            by_count: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                by_count.setdefault(c, []).append(v)
            keys = sorted(by_count)
            frags = [by_count[k] for k in keys]
            entry = (len(out), tuple((k, len(by_count[k])) for k in keys))
            if ref_trace is not None:
                i = len(trace)
                if i >= len(ref_trace) or ref_trace[i] != entry:
                    return None
            trace.append(entry)
            cm = _mask(cell)
            if cm in pending:
                pending.discard(cm)
                skip = -1
            else:
                skip = max(range(len(frags)), key=lambda i: (len(frags[i]), -i))
            for i, f in enumerate(frags):
                if i != skip:
                    fm = _mask(f)
                    pending.add(fm)
                    queue.append(fm)
            out.extend(frags)
        cells = out
    if ref_trace is not None and len(trace) != len(ref_trace):
        return None
    return cells, trace


def _individualize(masks, cells, pos, v, n, ref_trace=None):
    cell = cells[pos]
    rest = [x for x in cell if x != v]
    new = cells[:pos] + [[v], rest] + cells[pos + 1:]
    return _refine(masks, new, [1 << v], n, ref_trace)


def _target(cells) -> int:
    for i, c in enumerate(cells):
        if len(c) > 1:
            return i
    return -1


@dataclass
class _Node:
    cells: list
    pos: int
    vertex: int
    trace: list  # trace of the refinement after individualizing ``vertex``


def _initial_cells(g: Graph, partition) -> list[list[int]]:
    if partition is None:
        return [list(range(g.n))] if g.n else []
    cells = [sorted(int(v) for v in c) for c in partition if len(c)]
    seen = sorted(v for c in cells for v in c)
    if seen != list(range(g.n)):
        raise PreconditionError("initial partition must cover every vertex exactly once")
    return cells


def _check_size(g: Graph, max_vertices: int):
    if g.n > max_vertices:
        raise ResourceLimitError(
            "graph has %d vertices, above the bound of %d" % (g.n, max_vertices)
        )


def _first_path(masks, cells, n):
    path = []
    while len(cells) < n:
        t = _target(cells)
        v = min(cells[t])
        child, trace = _individualize(masks, cells, t, v, n)
        path.append(_Node(cells, t, v, trace))
        cells = child
    return path, [c[0] for c in cells]


def _orbit(point: int, gens: list) -> set:
    orb = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                queue.append(y)
    return orb


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes):
        self.left = nodes

    def spend(self):
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise ResourceLimitError("automorphism search exceeded its node budget")


def _match_leaf(g_masks, path, depth, cells, lab, n, is_good, budget):
    """Depth-first search below ``cells`` (at ``depth``) for a leaf accepted by ``is_good``."""
    budget.spend()
    if len(cells) == n:
        return is_good([c[0] for c in cells])
    if depth >= len(path):
        return None
    node = path[depth]
    t = _target(cells)
    if t != node.pos or len(cells[t]) != len(node.cells[node.pos]):
        return None
    for u in sorted(cells[t]):
        res = _individualize(g_masks, cells, t, u, n, node.trace)
        if res is None:
            continue
        found = _match_leaf(g_masks, path, depth + 1, res[0], lab, n, is_good, budget)
        if found is not None:
            return found
    return None


def _search(g: Graph, cells0, stop_at_first=False, node_budget=None):
    """Return ``(generators, orbit_lengths)`` of the color-preserving automorphism group."""
    n = g.n
    masks = g.masks
    budget = _Budget(node_budget)
    if n == 0:
        return [], []
    root, _ = _refine(masks, cells0, [_mask(c) for c in cells0], n)
    path, lab1 = _first_path(masks, root, n)
    gens: list = []
    lengths: list = []

    def accept(lab2):
        phi = [0] * n
        for a, b in zip(lab1, lab2):
            phi[a] = b
        phi = tuple(phi)
        return phi if g.is_automorphism(phi) else None

    for k in range(len(path) - 1, -1, -1):
        node = path[k]
        orbit = _orbit(node.vertex, gens)
        failed: set = set()
        for w in sorted(node.cells[node.pos]):
            if w in orbit or w in failed:
                continue
            res = _individualize(masks, node.cells, node.pos, w, n, node.trace)
            phi = None
            if res is not None:
                phi = _match_leaf(masks, path, k + 1, res[0], lab1, n, accept, budget)
            if phi is None:
                failed |= _orbit(w, gens)
            else:
                gens.append(phi)
                if stop_at_first:
                    return gens, None
                orbit = _orbit(node.vertex, gens)
        lengths.append(len(orbit))
    return gens, lengths


def automorphism_group(
    g: Graph, partition: Sequence[Iterable[int]] | None = None, max_vertices: int = DEFAULT_MAX_VERTICES
) -> P.PermGroup:
    """Full automorphism group of ``g`` (or of the colored graph, if ``partition`` is given).

    Colors are the cells of ``partition``; automorphisms must map each cell to itself.
    The exact order is attached to the returned group.
    """
    _check_size(g, max_vertices)
    gens, lengths = _search(g, _initial_cells(g, partition))
    order = 1
    for x in lengths:
        order *= x
    for phi in gens:
        assert g.is_automorphism(phi)
    return P.PermGroup(g.n, sorted(gens), order=order)


def has_nontrivial_automorphism(
    g: Graph, partition: Sequence[Iterable[int]] | None = None, max_vertices: int = DEFAULT_MAX_VERTICES
) -> bool:
    """True iff some non-identity automorphism preserves every cell of ``partition``.

    Stops at the first automorphism found, so it is much cheaper than computing
    the whole group when the answer is yes.
    """
    _check_size(g, max_vertices)
    gens, _ = _search(g, _initial_cells(g, partition), stop_at_first=True)
    return bool(gens)


def vertex_stabilizer_is_trivial(g: Graph, v: int = 0, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    rest = [x for x in range(g.n) if x != v]
    return not has_nontrivial_automorphism(g, [[v], rest] if rest else [[v]], max_vertices)


def are_graphs_isomorphic(a: Graph, b: Graph, max_vertices: int = DEFAULT_MAX_VERTICES):
    """An isomorphism ``a -> b`` as an image tuple, or None if there is none."""
    _check_size(a, max_vertices)
    _check_size(b, max_vertices)
    if a.n != b.n or a.num_edges() != b.num_edges():
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None
    n = a.n
    if n == 0:
        return ()
    cells = [list(range(n))]
    allm = _mask(range(n))
    ra = _refine(a.masks, cells, [allm], n)
    rb = _refine(b.masks, cells, [allm], n, ra[1])
    if rb is None:
        return None
    path, lab1 = _first_path(a.masks, ra[0], n)
    if [len(c) for c in ra[0]] != [len(c) for c in rb[0]]:
        return None

    def accept(lab2):
        phi = [0] * n
        for x, y in zip(lab1, lab2):
            phi[x] = y
        phi = tuple(phi)
        ok = all(phi[v] in b.adj[phi[u]] for u, v in a.edges())
        return phi if ok else None

    return _match_leaf(b.masks, path, 0, rb[0], lab1, n, accept, _Budget(None))


@dataclass
class ActionReport:
    group: P.PermGroup
    orbit_count: int
    semiregular: bool
    transitive: bool
    orbits: list = field(default_factory=list)


def action_report(B: P.PermGroup, points: Iterable[int] | None = None) -> ActionReport:
    orbits = B.orbits()
    if points is not None:
        keep = set(points)
        orbits = [o for o in orbits if keep.intersection(o)]
    order = B.order()
    return ActionReport(
        group=B,
        orbit_count=len(orbits),
        semiregular=all(len(o) == order for o in orbits),
        transitive=len(orbits) == 1,
        orbits=orbits,
    )


def is_vertex_transitive(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    if g.n <= 1:
        return True
    if not g.is_regular():
        return False
    return len(automorphism_group(g, max_vertices=max_vertices).orbits()) == 1


def is_normal_in_aut(g: Graph, B: P.PermGroup, aut: P.PermGroup | None = None) -> bool:
    """True iff ``B`` is normal in ``Aut(g)``; B's generators must be automorphisms."""
    if B.degree != g.n:
        raise PreconditionError("group degree %d does not match %d vertices" % (B.degree, g.n))
    for b in B.generators:
        if not g.is_automorphism(b):
            raise PreconditionError("generator %s is not an automorphism" % P.format_cycles(b))
    if aut is None:
        aut = automorphism_group(g)
    return B.is_normal_in(aut)


def bipartition_kernel(g: Graph) -> P.PermGroup:
    """Subgroup of ``Aut(g)`` fixing each side of the bipartition setwise."""
    parts = bipartition(g)
    if parts is None:
        raise PreconditionError("graph is not bipartite")
    if not is_connected(g):
        raise PreconditionError("graph is not connected")
    return automorphism_group(g, [p for p in parts if p])


def minimal_block(gens: Sequence[P.Permutation], degree: int, subset: Iterable[int]) -> list[int]:
    """Smallest block of ``<gens>`` containing ``subset`` (Atkinson's union-find)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    subset = sorted(set(subset))
    queue = []
    for x in subset[1:]:
        rx, r0 = find(x), find(subset[0])
        if rx != r0:
            parent[rx] = r0
            queue.append((subset[0], x))
    while queue:
        a, b = queue.pop()
        for s in gens:
            ra, rb = find(s[a]), find(s[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((s[a], s[b]))
    root = find(subset[0])
    return [x for x in range(degree) if find(x) == root]


def is_block(g: Graph, subset: Iterable[int], aut: P.PermGroup | None = None) -> bool:
    subset = sorted(set(subset))
    if not subset:
        raise PreconditionError("subset must be non-empty")
    if aut is None:
        aut = automorphism_group(g)
    return minimal_block(aut.generators, g.n, subset) == subset
