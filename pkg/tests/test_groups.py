import random
from itertools import product

import pytest

from bicayley import perm as P
from bicayley.catalog import catalog_entries, dihedral_entry, named_group, quaternion_table
from bicayley.errors import PreconditionError, ResourceLimitError, ValidationError
from bicayley.groups import (
    GroupTable,
    are_isomorphic,
    check_relations,
    cyclic,
    direct_product,
    elementary_abelian_2,
    find_isomorphism,
    generated_subgroup,
    group_from_generators,
    index_two_subgroups,
    is_generalized_dicyclic,
    semidirect_by_inversion,
    split_off_elementary_abelian_2,
    structural_invariants,
)


def test_single_involution():
    T, emb = group_from_generators([(1, 0)])
    assert T.order == 2 and emb[0] == (0, 1)


def test_sym3_from_generators():
    T, _ = group_from_generators([P.from_cycles([(0, 1, 2)], 3), P.from_cycles([(0, 1)], 3)])
    assert T.order == 6 and not T.is_abelian()


def test_generator_closure_respects_bound():
    with pytest.raises(ResourceLimitError):
        group_from_generators([P.from_cycles([(0, 1, 2, 3, 4, 5, 6)], 7), P.from_cycles([(0, 1)], 7)], max_order=100)


def test_embedding_is_homomorphism():
    T, emb = group_from_generators([P.from_cycles([(0, 1, 2, 3)], 4), P.from_cycles([(0, 2)], 4)])
    for a, b in product(range(T.order), repeat=2):
        assert emb[T.mul[a][b]] == P.compose(emb[a], emb[b])


def test_table_rejects_non_group():
    with pytest.raises(ValidationError):
        GroupTable([[0, 1], [1, 1]])


def test_direct_product_basics():
    V = direct_product(cyclic(2), cyclic(2))
    inv = structural_invariants(V)
    assert V.order == 4 and inv.abelian and inv.exponent == 2
    Q3 = direct_product(quaternion_table(), cyclic(3))
    assert Q3.order == 24 and not Q3.is_abelian() and Q3.exponent() == 12
    assert are_isomorphic(direct_product(cyclic(1), dihedral_entry(8).table), dihedral_entry(8).table)


def test_semidirect_by_inversion():
    assert are_isomorphic(semidirect_by_inversion(cyclic(3)), dihedral_entry(6).table)
    assert are_isomorphic(semidirect_by_inversion(cyclic(4)), dihedral_entry(8).table)
    assert are_isomorphic(semidirect_by_inversion(elementary_abelian_2(2)), elementary_abelian_2(3))
    with pytest.raises(PreconditionError):
        semidirect_by_inversion(dihedral_entry(6).table)


@pytest.mark.parametrize("name", ["C6", "C4xC2", "C3^2", "C4xC4"])
def test_semidirect_contains_a_as_index_two(name):
    A = named_group(name).table
    H = semidirect_by_inversion(A)
    n = A.order
    assert H.order == 2 * n
    assert H.exponent() <= 2 * A.exponent()
    assert all(H.mul[a][b] == A.mul[a][b] for a in range(n) for b in range(n))
    t = n
    assert all(H.conj(a, t) == A.inv[a] for a in range(n))


def test_structural_invariants():
    inv = structural_invariants(named_group("C4xC2").table)
    assert inv.abelian and inv.exponent == 4
    q = structural_invariants(quaternion_table())
    assert not q.abelian and q.exponent == 4 and q.center_order == 2
    assert q.spectrum == ((1, 1), (2, 1), (4, 6))
    assert structural_invariants(elementary_abelian_2(3)).exponent == 2


def _check_dicyclic_witness(A, w):
    L, b = w
    L = sorted(L)
    assert not A.is_abelian()
    assert 2 * len(L) == A.order and len(generated_subgroup(A, L)) == len(L)
    assert all(A.mul[x][y] == A.mul[y][x] for x in L for y in L)
    assert b not in L and A.element_order(b) == 4
    assert all(A.conj(x, b) == A.inv[x] for x in L)


def test_q8_is_dicyclic():
    Q = quaternion_table()
    w = is_generalized_dicyclic(Q)
    assert w is not None
    _check_dicyclic_witness(Q, w)


def test_d8_and_abelian_are_not_dicyclic():
    assert is_generalized_dicyclic(dihedral_entry(8).table) is None
    assert is_generalized_dicyclic(cyclic(8)) is None


def test_dicyclic_scan_orders_agree():
    for entry in catalog_entries(16):
        A = entry.table
        fwd, rev = is_generalized_dicyclic(A), is_generalized_dicyclic(A, reverse=True)
        assert (fwd is None) == (rev is None), entry.name
        if fwd is not None:
            _check_dicyclic_witness(A, fwd)
            _check_dicyclic_witness(A, rev)


def test_index_two_subgroups_of_c2_cubed():
    subs = index_two_subgroups(elementary_abelian_2(3))
    assert len(subs) == 7 and all(len(s) == 4 for s in subs)


@pytest.mark.parametrize(
    "name,expected",
    [("Q8xC2", ("Q8", 1)), ("C2^4", ("C1", 4)), ("Q8", ("Q8", 0)), ("D8xC2", ("D8", 1)), ("C4xC2^2", ("C4", 2))],
)
def test_split_off_elementary_abelian(name, expected):
    A = named_group(name).table
    G1, r = split_off_elementary_abelian_2(A)
    assert r == expected[1]
    assert are_isomorphic(G1, named_group(expected[0]).table)
    assert are_isomorphic(direct_product(G1, elementary_abelian_2(r)), A)


def test_isomorphism_examples():
    sym3, _ = group_from_generators([P.from_cycles([(0, 1, 2)], 3), P.from_cycles([(0, 1)], 3)])
    assert are_isomorphic(dihedral_entry(6).table, sym3)
    assert not are_isomorphic(quaternion_table(), dihedral_entry(8).table)
    assert not are_isomorphic(named_group("C4xC2").table, elementary_abelian_2(3))


def test_isomorphism_map_is_exact():
    A = named_group("Dic12").table
    rng = random.Random(4)
    perm = [0] + rng.sample(range(1, A.order), A.order - 1)
    back = {p: i for i, p in enumerate(perm)}
    B = GroupTable([[perm[A.mul[back[x]][back[y]]] for y in range(A.order)] for x in range(A.order)])
    phi = find_isomorphism(A, B)
    assert phi is not None
    assert all(phi[A.mul[x][y]] == B.mul[phi[x]][phi[y]] for x in range(A.order) for y in range(A.order))


def test_isomorphism_is_an_equivalence_up_to_12():
    entries = [e for e in catalog_entries(12)]
    for i, a in enumerate(entries):
        assert are_isomorphic(a.table, a.table)
        for b in entries[i + 1:]:
            assert not are_isomorphic(a.table, b.table), (a.name, b.name)
            assert not are_isomorphic(b.table, a.table)


def test_relations_on_dihedral():
    D = dihedral_entry(10)
    assert check_relations(D.table, D.named_elements(), ["a^5=b^2=1", "b^-1ab=a^-1"], "ab") == []
    assert check_relations(D.table, D.named_elements(), ["ab=ba"], "ab") == ["ab=ba"]
