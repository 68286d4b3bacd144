"""Named graphs and groups used by the witness construction, and the searches behind it."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from . import perm as P
from .aut import automorphism_group, vertex_stabilizer_is_trivial
from .catalog import CLASS_E, named_group
from .errors import PreconditionError, ResourceLimitError, SearchInconclusive, ValidationError
from .graph import (
    BiCayleyTriple,
    Graph,
    bicayley_graph,
    br_generators,
    cayley_graph,
    cycle_graph,
    is_connected,
    right_regular_generators,
)
from .groups import GroupTable, find_isomorphism, generated_subgroup, is_generalized_dicyclic

MAX_HYPERCUBE_DIM = 10
MAX_BICAYLEY_SEARCH_ORDER = 16


# -- hypercubes ---------------------------------------------------------------

def hypercube(n: int):
    """``(Q_n, N, E)``: vertices are bitmasks, ``N`` the translations, ``E`` the even ones."""
    if n < 1:
        raise ValidationError("hypercube dimension must be at least 1")
    if n > MAX_HYPERCUBE_DIM:
        raise ResourceLimitError("hypercube dimension %d above bound %d" % (n, MAX_HYPERCUBE_DIM))
    size = 1 << n
    g = Graph(size, [(v, v ^ (1 << i)) for v in range(size) for i in range(n) if not v >> i & 1])

    def translation(t):
        return tuple(v ^ t for v in range(size))

    N = P.PermGroup(size, [translation(1 << i) for i in range(n)], order=size)
    E = P.PermGroup(size, [translation(1 | (1 << i)) for i in range(1, n)], order=size // 2)
    return g, N, E


# -- the Moebius-Kantor graph -------------------------------------------------

def _mk_point(label: str) -> int:
    """``'3'`` is outer vertex 3, ``"3'"`` is inner vertex 3 (index 8 + 3)."""
    return 8 + int(label[:-1]) if label.endswith("'") else int(label)


def _mk_perm(text: str) -> P.Permutation:
    cycles = []
    for chunk in text.strip().strip("()").split(")("):
        cycles.append([_mk_point(tok) for tok in chunk.split()])
    return P.from_cycles(cycles, 16)


ALPHA = "(1 3 5 7)(0 2 4 6)(1' 3' 5' 7')(0' 2' 4' 6')"
BETA = "(0 1' 2)(0' 6' 3)(4 5' 6)(7 4' 2')"
GAMMA = "(1 1')(2 6')(3 3')(4 0')(5 5')(6 2')(7 7')(0 4')"
DELTA = "(1 1')(2 4')(3 7')(4 2')(5 5')(6 0')(7 3')(0 6')"


def generalized_petersen(n: int, k: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(n, []) if n == 0 else Graph(2 * n, edges)


def moebius_kantor():
    """``(GP(8,3), alpha, beta, gamma, delta, Q8)`` with ``Q8 = <alpha, alpha^beta>``."""
    g = generalized_petersen(8, 3)
    alpha, beta, gamma, delta = (_mk_perm(t) for t in (ALPHA, BETA, GAMMA, DELTA))
    for name, p in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        if not g.is_automorphism(p):
            raise ValidationError("%s is not an automorphism of GP(8,3)" % name)
    q8 = P.PermGroup(16, [alpha, P.conjugate(alpha, beta)])
    return g, alpha, beta, gamma, delta, q8


# -- classification -------------------------------------------------------------

@dataclass(frozen=True)
class GroupClass:
    tag: str  # "HasGRR", "ClassC", "ClassD" or "ClassE"
    item: int | None = None
    member: str | None = None

    def __str__(self):
        if self.tag == "ClassE":
            return "ClassE(%d):%s" % (self.item, self.member)
        return self.tag


def class_e_match(G: GroupTable):
    """``(item, entry, isomorphism entry -> G)`` for a Class E group, else None."""
    for item, name in CLASS_E:
        entry = named_group(name)
        if entry.order != G.order:
            continue
        phi = find_isomorphism(entry.table, G)
        if phi is not None:
            return item, entry, phi
    return None


def classify_group(G: GroupTable) -> GroupClass:
    if G.is_abelian() and G.exponent() > 2:
        return GroupClass("ClassC")
    if is_generalized_dicyclic(G) is not None:
        return GroupClass("ClassD")
    match = class_e_match(G)
    if match is not None:
        return GroupClass("ClassE", match[0], match[1].name)
    return GroupClass("HasGRR")


# -- connection-set enumeration ---------------------------------------------

def inverse_closed_sets(G: GroupTable, size: int) -> Iterator[tuple]:
    """Inverse-closed identity-free subsets of the given size, as sorted tuples in lex order."""
    n = G.order
    inv = G.inv
    chosen: list[int] = []
    member = [False] * n

    def rec(x, pending):
        if len(chosen) + pending > size:
            return
        if x == n:
            if len(chosen) == size and pending == 0:
                yield tuple(chosen)
            return
        if len(chosen) + (n - x) < size:
            return
        y = inv[x]
        if y < x:
            options = (True,) if member[y] else (False,)
        else:
            options = (True, False)
        for take in options:
            if take:
                chosen.append(x)
                member[x] = True
                # a free choice of a non-involution forces its inverse later
                extra = 1 if y > x else 0
                done = 1 if y < x else 0
                yield from rec(x + 1, pending + extra - done)
                member[x] = False
                chosen.pop()
            else:
                yield from rec(x + 1, pending)

    yield from rec(1, 0)


def generating_connection_sets(G: GroupTable, min_size: int = 1, max_size: int | None = None):
    """Inverse-closed generating sets ordered by size, then lexicographically."""
    top = G.order - 1 if max_size is None else max_size
    for k in range(min_size, top + 1):
        for S in inverse_closed_sets(G, k):
            if len(generated_subgroup(G, S)) == G.order:
                yield S


def _fixed_by_group_automorphism(G: GroupTable, S) -> bool:
    """True if an inner automorphism by a non-central element, or inversion, fixes ``S``."""
    Sset = set(S)
    if G.is_abelian():
        return G.exponent() > 2
    center = set(G.center())
    for g in range(1, G.order):
        if g in center:
            continue
        if all(G.conj(s, g) in Sset for s in S):
            return True
    return False


def is_grr(G: GroupTable, S) -> bool:
    """True iff ``Cay(G, S)`` is connected and its automorphism group is exactly ``R(G)``."""
    S = tuple(sorted(S))
    if len(generated_subgroup(G, S)) != G.order:
        return False
    if G.order <= 2:
        return True
    if _fixed_by_group_automorphism(G, S):
        return False
    return vertex_stabilizer_is_trivial(cayley_graph(G, S))


def _spend(examined, budget, what):
    if budget is not None and examined > budget:
        raise SearchInconclusive("%s: budget of %d candidates exhausted" % (what, budget), examined - 1)


def grr_search(G: GroupTable, budget: int | None = None):
    """First connection set ``S`` (size, then lex order) making ``Cay(G, S)`` a GRR, or None."""
    if G.order == 1:
        return ()
    examined = 0
    abelian_big_exp = G.is_abelian() and G.exponent() > 2
    for S in generating_connection_sets(G):
        examined += 1
        _spend(examined, budget, "GRR search")
        if abelian_big_exp:
            continue
        if is_grr(G, S):
            return S
    return None


def is_normal_cayley(G: GroupTable, S, aut: P.PermGroup | None = None) -> bool:
    g = cayley_graph(G, S)
    if aut is None:
        aut = automorphism_group(g)
    R = P.PermGroup(G.order, right_regular_generators(G), order=G.order)
    return R.is_normal_in(aut)


def normal_cayley_search(G: GroupTable, budget: int | None = None):
    """First generating ``S`` with ``R(G)`` normal in ``Aut(Cay(G, S))``, or None."""
    if G.order == 1:
        return ()
    examined = 0
    for S in generating_connection_sets(G):
        examined += 1
        _spend(examined, budget, "normal Cayley search")
        if is_normal_cayley(G, S):
            return S
    return None


def _sorted_inverse_closed(G: GroupTable) -> list[tuple]:
    out = []
    for k in range(G.order):
        out.extend(inverse_closed_sets(G, k))
    out.sort()
    return out


def bicayley_triples(G: GroupTable, total: int, vertex_transitive: bool = False):
    """Triples ``(R, L, S)`` with ``|R|+|L|+|S| = total`` and identity in ``S``, in lex order."""
    sets = _sorted_inverse_closed(G)
    others = list(range(1, G.order))
    for R in sets:
        if len(R) >= total:
            continue
        for L in sets:
            s = total - len(R) - len(L)
            if s < 1 or (vertex_transitive and len(R) != len(L)):
                continue
            for rest in combinations(others, s - 1):
                yield R, L, (0,) + rest


def is_normal_bicayley(t: BiCayleyTriple, vertex_transitive: bool = False) -> bool:
    g = bicayley_graph(t)
    if not is_connected(g):
        return False
    aut = automorphism_group(g)
    if vertex_transitive and len(aut.orbits()) != 1:
        return False
    return br_generators(t).is_normal_in(aut)


def normal_bicayley_search(H: GroupTable, budget: int | None = None, vertex_transitive: bool = False):
    """First triple (by total size, then lex order) giving a connected normal bi-Cayley graph."""
    if H.order > MAX_BICAYLEY_SEARCH_ORDER:
        raise ResourceLimitError("bi-Cayley search is limited to groups of order %d" % MAX_BICAYLEY_SEARCH_ORDER)
    examined = 0
    for total in range(1, 3 * H.order):
        for R, L, S in bicayley_triples(H, total, vertex_transitive):
            examined += 1
            _spend(examined, budget, "normal bi-Cayley search")
            t = BiCayleyTriple(H, frozenset(R), frozenset(L), frozenset(S))
            if is_normal_bicayley(t, vertex_transitive):
                return t
    return None


# -- Class E connection sets --------------------------------------------------

CLASS_E_WORDS = {
    2: ["ab", "b"],
    3: ["a", "a^-1", "b", "b^-1"],
    4: ["a", "b", "c"],
    5: ["a", "a^-1", "b", "a^4", "a^4b"],
    6: ["c", "ca", "cb"],
    7: ["a", "b", "a^-1", "b^-1"],
}


@dataclass
class ClassEConstruction:
    item: int
    member: str
    group: GroupTable
    connection_set: tuple | None  # None for items 1 and 8
    partner: str  # "K2", "C<n>" or "none"
    graph: Graph | None = None


def class_e_connection_set(item: int, member: str | None = None, G: GroupTable | None = None):
    """Connection set and product partner for a Class E group.

    With ``G`` given, the set is transported into ``G``'s indexing through an
    explicit isomorphism from the stored realization.
    """
    names = [name for i, name in CLASS_E if i == item]
    if not names:
        raise ValidationError("Class E items are numbered 1 to 8")
    if member is None:
        member = names[0]
    if member not in names:
        raise ValidationError("%s is not a member of Class E(%d)" % (member, item))
    entry = named_group(member)
    phi = list(range(entry.order))
    if G is not None:
        phi = find_isomorphism(entry.table, G)
        if phi is None:
            raise PreconditionError("group is not isomorphic to %s" % member)
    target = entry.table if G is None else G
    if item == 1:
        return ClassEConstruction(item, member, target, None, "none")
    if item == 8:
        n = int(member.split("C")[-1])
        return ClassEConstruction(item, member, target, None, "C%d" % n)
    S = tuple(sorted({phi[entry.word(w)] for w in CLASS_E_WORDS[item]}))
    graph = cayley_graph(target, S)
    return ClassEConstruction(item, member, target, S, "K2", graph)


def cycle_cayley(n: int):
    """``C_n = Cay(Z_n, {1, -1})`` as a graph (``K2`` for ``n = 2``)."""
    if n == 2:
        return Graph(2, [(0, 1)])
    return cycle_graph(n)
