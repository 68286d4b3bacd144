import random
from math import factorial

import pytest

from bicayley import perm as P
from bicayley.aut import (
    action_report,
    are_graphs_isomorphic,
    automorphism_group,
    bipartition_kernel,
    has_nontrivial_automorphism,
    is_block,
    is_normal_in_aut,
    is_vertex_transitive,
    minimal_block,
    vertex_stabilizer_is_trivial,
)
from bicayley.constructions import generalized_petersen, hypercube, moebius_kantor
from bicayley.errors import PreconditionError, ResourceLimitError
from bicayley.graph import K2, Graph, complete_graph, cycle_graph, empty_graph, path_graph

from oracles import all_automorphisms_backtrack, closure, count_automorphisms_bruteforce, nx_isomorphic, random_connected


@pytest.mark.parametrize(
    "g, order",
    [
        (cycle_graph(4), 8),
        (hypercube(3)[0], 48),
        (generalized_petersen(8, 3), 96),
        (generalized_petersen(5, 2), 120),
        (complete_graph(5), 120),
        (path_graph(5), 2),
        (empty_graph(4), 24),
    ],
)
def test_orders_against_backtrack(g, order):
    assert automorphism_group(g).order() == order
    assert len(all_automorphisms_backtrack(g)) == order


def test_generators_generate_the_reported_group():
    g = generalized_petersen(8, 3)
    A = automorphism_group(g)
    elems = closure(A.generators, g.n)
    assert len(elems) == 96
    assert elems == set(all_automorphisms_backtrack(g))
    assert A.order() == P.PermGroup(g.n, A.generators).order()


def test_random_small_graphs_against_bruteforce():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 7)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45])
        assert automorphism_group(g).order() == count_automorphisms_bruteforce(g)


def test_larger_hypercubes():
    for n in range(1, 7):
        assert automorphism_group(hypercube(n)[0]).order() == 2**n * factorial(n)


def test_relabeling_invariance():
    rng = random.Random(5)
    g = generalized_petersen(8, 3)
    for _ in range(5):
        p = list(range(g.n))
        rng.shuffle(p)
        h = g.relabel(p)
        assert automorphism_group(h).order() == 96
        phi = are_graphs_isomorphic(g, h)
        assert phi is not None
        assert all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())


def test_isomorphism_agrees_with_networkx():
    rng = random.Random(11)
    for _ in range(80):
        n = rng.randint(2, 9)
        a = random_connected(rng, n, 0.4)
        b = random_connected(rng, n, 0.4)
        assert (are_graphs_isomorphic(a, b) is not None) == nx_isomorphic(a, b)


def test_non_isomorphic_same_degrees():
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert are_graphs_isomorphic(two_triangles, cycle_graph(6)) is None


def test_colored_partition():
    g = cycle_graph(4)
    assert automorphism_group(g, [[0], [1, 2, 3]]).order() == 2
    assert automorphism_group(g, [[0, 2], [1, 3]]).order() == 4
    assert automorphism_group(g, [[0, 1], [2, 3]]).order() == 2


def test_nontrivial_and_stabilizer():
    asym = Graph(6, [(0, 3), (1, 2), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)])
    assert has_nontrivial_automorphism(cycle_graph(5))
    assert count_automorphisms_bruteforce(asym) == 1
    assert not has_nontrivial_automorphism(asym)
    assert not vertex_stabilizer_is_trivial(cycle_graph(5))
    assert vertex_stabilizer_is_trivial(K2)


def test_action_report_br_on_gp83():
    g, alpha, beta, _, _, Q = moebius_kantor()
    rep = action_report(Q)
    assert rep.orbit_count == 2 and rep.semiregular and not rep.transitive
    assert is_normal_in_aut(g, Q)


def test_moebius_kantor_subgroups():
    g, alpha, beta, gamma, delta, _ = moebius_kantor()
    for p in (alpha, beta, gamma, delta):
        assert g.is_automorphism(p)
    assert P.PermGroup(16, [alpha, beta]).order() == 24
    assert not P.PermGroup(16, [alpha]).contains(beta)


def test_normality_examples():
    g, N, E = hypercube(3)
    assert is_normal_in_aut(g, N)
    reflection = P.PermGroup(8, [tuple(v ^ 1 for v in range(8))])
    assert not is_normal_in_aut(g, reflection)
    swap = tuple(((v & 1) << 1) | ((v >> 1) & 1) | (v & 4) for v in range(8))
    assert not is_normal_in_aut(g, P.PermGroup(8, [swap]))
    with pytest.raises(PreconditionError):
        is_normal_in_aut(cycle_graph(4), P.PermGroup(4, [(1, 0, 2, 3)]))


def test_vertex_transitivity():
    assert is_vertex_transitive(generalized_petersen(8, 3))
    assert is_vertex_transitive(hypercube(4)[0])
    assert not is_vertex_transitive(path_graph(4))
    assert not is_vertex_transitive(Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]))


def test_bipartition_kernel():
    assert bipartition_kernel(K2).order() == 1
    assert bipartition_kernel(hypercube(3)[0]).order() == 24
    assert bipartition_kernel(generalized_petersen(8, 3)).order() == 48
    with pytest.raises(PreconditionError):
        bipartition_kernel(cycle_graph(5))
    with pytest.raises(PreconditionError):
        bipartition_kernel(Graph(4, [(0, 1), (2, 3)]))


def test_blocks():
    g = cycle_graph(6)
    assert is_block(g, [0, 3])
    assert is_block(g, [0, 2, 4])
    assert not is_block(g, [0, 1])
    assert minimal_block([tuple((i + 1) % 6 for i in range(6))], 6, [0, 2]) == [0, 2, 4]
    q = hypercube(3)[0]
    assert is_block(q, [0, 7])
    assert not is_block(q, [0, 1])


def test_resource_bound():
    with pytest.raises(ResourceLimitError):
        automorphism_group(empty_graph(30), max_vertices=20)
