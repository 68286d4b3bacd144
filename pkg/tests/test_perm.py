import random

import pytest

from bicayley import perm as P
from bicayley.errors import ParseError, ValidationError

from oracles import closure


def test_compose_applies_left_first():
    p = P.from_cycles([(0, 1)], 3)
    q = P.from_cycles([(1, 2)], 3)
    # 0 -> 1 under p, then 1 -> 2 under q
    assert P.compose(p, q)[0] == 2


def test_inverse_and_power():
    p = P.from_cycles([(0, 1, 2, 3)], 5)
    assert P.is_identity(P.compose(p, P.inverse(p)))
    assert P.power(p, 4) == P.identity(5)
    assert P.power(p, -1) == P.inverse(p)
    assert P.perm_order(p) == 4


def test_conjugate_is_a_inverse_p_a():
    rng = random.Random(1)
    for _ in range(20):
        p = tuple(rng.sample(range(6), 6))
        a = tuple(rng.sample(range(6), 6))
        c = P.conjugate(p, a)
        # the conjugate maps x^a to x^(pa)
        for x in range(6):
            assert c[a[x]] == a[p[x]]


def test_cycles_round_trip():
    p = P.from_cycles([(0, 4, 2), (1, 3)], 6)
    assert P.to_cycles(p) == [(0, 4, 2), (1, 3)]
    assert P.format_cycles(p) == "(0 4 2)(1 3)"
    assert P.format_cycles(P.identity(3)) == "()"


def test_from_cycles_rejects_repeats():
    with pytest.raises(ValidationError):
        P.from_cycles([(0, 1), (1, 2)], 3)


def test_cyclic_group_order():
    assert P.PermGroup(4, [P.from_cycles([(0, 1, 2, 3)], 4)]).order() == 4


def test_symmetric_group_order_and_membership():
    G = P.PermGroup(5, [P.from_cycles([(0, 1, 2, 3, 4)], 5), P.from_cycles([(0, 1)], 5)])
    assert G.order() == 120
    assert P.from_cycles([(2, 4)], 5) in G


def test_alternating_group_excludes_odd():
    A = P.PermGroup(5, [P.from_cycles([(0, 1, 2)], 5), P.from_cycles([(2, 3, 4)], 5)])
    assert A.order() == 60
    assert not A.contains(P.from_cycles([(0, 1)], 5))


@pytest.mark.parametrize("seed", range(15))
def test_order_matches_closure(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    gens = [tuple(rng.sample(range(n), n)) for _ in range(rng.randint(1, 3))]
    elems = closure(gens, n)
    G = P.PermGroup(n, gens)
    assert G.order() == len(elems)
    for g in list(elems)[:30]:
        assert G.contains(g)
    others = [tuple(rng.sample(range(n), n)) for _ in range(30)]
    for g in others:
        assert G.contains(g) == (g in elems)


def test_normality():
    S4 = P.PermGroup(4, [P.from_cycles([(0, 1, 2, 3)], 4), P.from_cycles([(0, 1)], 4)])
    V4 = P.PermGroup(4, [P.from_cycles([(0, 1), (2, 3)], 4), P.from_cycles([(0, 2), (1, 3)], 4)])
    C2 = P.PermGroup(4, [P.from_cycles([(0, 1)], 4)])
    assert V4.is_normal_in(S4)
    assert not C2.is_normal_in(S4)


def test_orbits():
    G = P.PermGroup(6, [P.from_cycles([(0, 1, 2)], 6), P.from_cycles([(3, 4)], 6)])
    assert G.orbits() == [[0, 1, 2], [3, 4], [5]]


def test_product_action_row_major():
    gx = [P.from_cycles([(0, 1)], 2)]
    gy = [P.from_cycles([(0, 1, 2)], 3)]
    lifted = P.product_action(gx, 2, gy, 3)
    assert lifted[0][1] == 4  # (0,1) -> (1,1)
    assert lifted[1][3] == 4  # (1,0) -> (1,1)
    assert P.PermGroup(6, lifted).order() == 6


def test_group_file_round_trip():
    G = P.PermGroup(4, [P.from_cycles([(0, 1, 2)], 4), P.from_cycles([(0, 3)], 4)])
    H = P.read_perm_group(P.write_perm_group(G))
    assert H.generators == G.generators and H.order() == 24


@pytest.mark.parametrize("text", ["", "deg 3\n0 1 2", "degree x", "degree 3\n0 0 1", "degree 3\n0 1"])
def test_group_file_errors(text):
    with pytest.raises(ParseError):
        P.read_perm_group(text)
