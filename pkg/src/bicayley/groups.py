"""Finite groups as dense multiplication tables.

Elements are the indices ``0..n-1`` and ``0`` is always the identity.
``mul[a][b]`` is the product ``ab``; products of permutation realizations
follow the right-action convention of :mod:`bicayley.perm` (``ab`` means
"first a, then b").
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from . import perm as P
from .errors import PreconditionError, ResourceLimitError, ValidationError

DEFAULT_MAX_ORDER = 1024
EXHAUSTIVE_CHECK_ORDER = 64


class GroupTable:
    """A finite group given by its Cayley table."""

    __slots__ = ("order", "mul", "inv", "labels", "_orders")

    def __init__(self, mul: Sequence[Sequence[int]], labels: Sequence[str] | None = None, check: bool = True):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = len(self.mul)
        if self.order < 1:
            raise ValidationError("a group has at least one element")
        if self.mul[0] != tuple(range(self.order)):
            raise ValidationError("element 0 must be the identity")
        inv = [None] * self.order
        for a, row in enumerate(self.mul):
            if len(row) != self.order:
                raise ValidationError("table is not square")
            for b, c in enumerate(row):
                if c == 0:
                    inv[a] = b
                    break
        if any(x is None for x in inv):
            raise ValidationError("some element has no inverse")
        self.inv = tuple(inv)
        self.labels = tuple(labels) if labels is not None else None
        self._orders = None
        if check:
            self.check()

    @property
    def identity(self) -> int:
        return 0

    def __repr__(self):
        return "GroupTable(order=%d)" % self.order

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def check(self, samples: int = 2000, seed: int = 0) -> None:
        """Validate closure, latin-square shape, inverses and associativity.

        Associativity is checked exhaustively up to order 64, on random triples above.
        """
        n = self.order
        full = set(range(n))
        for a in range(n):
            if set(self.mul[a]) != full or self.mul[a][0] != a:
                raise ValidationError("row %d is not a permutation of the elements" % a)
        for a in range(n):
            if set(self.mul[b][a] for b in range(n)) != full:
                raise ValidationError("column %d is not a permutation of the elements" % a)
            if self.mul[self.inv[a]][a] != 0 or self.inv[self.inv[a]] != a:
                raise ValidationError("inverse of %d is inconsistent" % a)
        m = self.mul
        if n <= EXHAUSTIVE_CHECK_ORDER:
            for a in range(n):
                ma = m[a]
                for b in range(n):
                    mab = m[ma[b]]
                    mb = m[b]
                    for c in range(n):
                        if mab[c] != ma[mb[c]]:
                            raise ValidationError("not associative at (%d, %d, %d)" % (a, b, c))
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if m[m[a][b]][c] != m[a][m[b][c]]:
                    raise ValidationError("not associative at (%d, %d, %d)" % (a, b, c))

    # element arithmetic

    def product(self, *elems: int) -> int:
        x = 0
        for e in elems:
            x = self.mul[x][e]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        x = 0
        for _ in range(k):
            x = self.mul[x][a]
        return x

    def conj(self, x: int, b: int) -> int:
        """``b^-1 x b``."""
        return self.mul[self.mul[self.inv[b]][x]][b]

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def element_orders(self) -> tuple:
        if self._orders is None:
            orders = []
            for a in range(self.order):
                k, x = 1, a
                while x != 0:
                    x = self.mul[x][a]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a + 1, self.order))

    def center(self) -> list[int]:
        m = self.mul
        return [a for a in range(self.order) if all(m[a][b] == m[b][a] for b in range(self.order))]

    def exponent(self) -> int:
        return lcm(*self.element_orders())

    def is_central(self, a: int) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for b in range(self.order))

    def regular_permutation(self, g: int) -> P.Permutation:
        """Right regular image ``R(g): x -> xg``."""
        return tuple(self.mul[x][g] for x in range(self.order))


@dataclass(frozen=True)
class Invariants:
    abelian: bool
    exponent: int
    center_order: int
    spectrum: tuple  # sorted (element order, count) pairs


def structural_invariants(A: GroupTable) -> Invariants:
    spectrum = tuple(sorted(Counter(A.element_orders()).items()))
    return Invariants(A.is_abelian(), A.exponent(), len(A.center()), spectrum)


def group_from_generators(
    gens: Sequence[Sequence[int]], max_order: int = DEFAULT_MAX_ORDER
) -> tuple[GroupTable, list]:
    """Close ``gens`` under composition.

    Returns the table together with the embedding (element index -> permutation).
    Elements are numbered in breadth-first order from the identity.
    """
    gens = [P.check_perm(g) for g in gens]
    if not gens:
        raise ValidationError("need at least one generator")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValidationError("generators have different degrees")
    ident = P.identity(degree)
    index = {ident: 0}
    elems = [ident]
    for x in elems:
        for g in gens:
            y = P.compose(x, g)
            if y not in index:
                if len(elems) >= max_order:
                    raise ResourceLimitError("generated group exceeds order bound %d" % max_order)
                index[y] = len(elems)
                elems.append(y)
    mul = [[index[P.compose(x, y)] for y in elems] for x in elems]
    return GroupTable(mul, check=len(elems) <= EXHAUSTIVE_CHECK_ORDER), elems


def table_from_function(elements: Sequence, op, labels=None) -> GroupTable:
    """Tabulate a group given concrete elements (identity first) and a product function."""
    index = {e: i for i, e in enumerate(elements)}
    mul = [[index[op(a, b)] for b in elements] for a in elements]
    return GroupTable(mul, labels=labels)


def cyclic(n: int) -> GroupTable:
    return GroupTable([[(a + b) % n for b in range(n)] for a in range(n)], check=False)


def elementary_abelian_2(r: int) -> GroupTable:
    n = 1 << r
    return GroupTable([[a ^ b for b in range(n)] for a in range(n)], check=False)


def direct_product(A: GroupTable, B: GroupTable) -> GroupTable:
    """Componentwise product; element ``(a, b)`` has index ``a*|B| + b``."""
    nb = B.order
    mul = []
    for a1, b1 in product(range(A.order), range(nb)):
        ra, rb = A.mul[a1], B.mul[b1]
        mul.append([ra[a2] * nb + rb[b2] for a2, b2 in product(range(A.order), range(nb))])
    labels = None
    if A.labels and B.labels:
        labels = ["(%s,%s)" % (x, y) for x, y in product(A.labels, B.labels)]
    return GroupTable(mul, labels=labels, check=False)


def semidirect_by_inversion(A: GroupTable) -> GroupTable:
    """``A ⋊ <t>`` with ``t`` an involution inverting every element of the abelian group ``A``.

    Element ``a t^j`` has index ``j*|A| + a``, so ``A`` occupies the first ``|A|`` indices.
    """
    if not A.is_abelian():
        raise PreconditionError("inversion is an automorphism only of abelian groups")
    n = A.order
    mul = []
    for j, a in product(range(2), range(n)):
        row = []
        for k, b in product(range(2), range(n)):
            b2 = A.inv[b] if j else b
            row.append(((j + k) % 2) * n + A.mul[a][b2])
        mul.append(row)
    return GroupTable(mul, check=False)


def generated_subgroup(A: GroupTable, elems: Iterable[int]) -> list[int]:
    gens = [g for g in set(elems) if g != 0]
    seen = {0}
    out = [0]
    for x in out:
        for g in gens:
            y = A.mul[x][g]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return sorted(out)


def generating_set(A: GroupTable) -> list[int]:
    """A small generating set, chosen greedily by decreasing element order."""
    orders = A.element_orders()
    candidates = sorted(range(1, A.order), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    sub = {0}
    for a in candidates:
        if len(sub) == A.order:
            break
        if a not in sub:
            gens.append(a)
            sub = set(generated_subgroup(A, gens))
    return gens


def subgroup_table(A: GroupTable, elements: Iterable[int]) -> tuple[GroupTable, list[int]]:
    """Re-index a subgroup as its own table; returns (table, new index -> old index)."""
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise ValidationError("a subgroup must contain the identity")
    index = {e: i for i, e in enumerate(elems)}
    try:
        mul = [[index[A.mul[a][b]] for b in elems] for a in elems]
    except KeyError:
        raise ValidationError("element set is not closed under multiplication") from None
    return GroupTable(mul, check=False), elems


def index_two_subgroups(A: GroupTable) -> list[frozenset]:
    """All subgroups of index 2, as kernels of the surjections onto C2.

    Each contains ``M = <g^2>``; they correspond to the nonzero functionals on
    the elementary abelian quotient ``A/M``.
    """
    m = A.mul
    M = generated_subgroup(A, [m[g][g] for g in range(A.order)])
    coord = {x: 0 for x in M}
    current = set(M)
    dim = 0
    for g in range(A.order):
        if g in current:
            continue
        bit = 1 << dim
        for x in list(current):
            y = m[x][g]
            coord[y] = coord[x] | bit
        current = set(coord)
        dim += 1
    out = []
    for f in range(1, 1 << dim):
        out.append(frozenset(x for x, c in coord.items() if bin(c & f).count("1") % 2 == 0))
    return out


def is_generalized_dicyclic(A: GroupTable, reverse: bool = False):
    """Return a witness ``(L, b)`` or None.

    ``L`` is an abelian subgroup of index 2 and ``b`` an element of order 4
    outside ``L`` with ``b^-1 x b = x^-1`` for every ``x`` in ``L``.
    ``reverse`` scans subgroups and candidates in the opposite order; the
    answer (witness or not) must not depend on it.
    """
    if A.is_abelian():
        return None
    orders = A.element_orders()
    subgroups = index_two_subgroups(A)
    elements = list(range(A.order))
    if reverse:
        subgroups = subgroups[::-1]
        elements = elements[::-1]
    m = A.mul
    for L in subgroups:
        Ls = sorted(L)
        if any(m[x][y] != m[y][x] for x in Ls for y in Ls):
            continue
        for b in elements:
            if b in L or orders[b] != 4:
                continue
            if all(A.conj(x, b) == A.inv[x] for x in Ls):
                return L, b
    return None


def _split_one_c2(A: GroupTable):
    involutions = [z for z in range(1, A.order) if A.element_order(z) == 2 and A.is_central(z)]
    if not involutions:
        return None
    for K in index_two_subgroups(A):
        for z in involutions:
            if z not in K:
                return K, z
    return None


def split_off_elementary_abelian_2(A: GroupTable) -> tuple[GroupTable, int]:
    """Write ``A = G1 x C2^r`` with ``r`` maximal.

    A C2 direct factor exists iff some central involution lies outside some
    index-2 subgroup; by Krull-Schmidt, peeling factors one at a time is maximal.
    """
    G, r = A, 0
    while True:
        split = _split_one_c2(G)
        if split is None:
            return G, r
        G, _ = subgroup_table(G, split[0])
        r += 1


def _element_signature(A: GroupTable) -> list:
    m = A.mul
    orders = A.element_orders()
    sig = []
    for a in range(A.order):
        centralizer = sum(1 for b in range(A.order) if m[a][b] == m[b][a])
        roots = sum(1 for b in range(A.order) if m[b][b] == a)
        sig.append((orders[a], centralizer, roots))
    return sig


def find_isomorphism(A: GroupTable, B: GroupTable, max_order: int = 256) -> list[int] | None:
    """An isomorphism as a list ``phi`` with ``phi[a]`` in B, or None.

    Invariants filter first, then a backtracking search over images of a fixed
    generating set of ``A``. Any map returned has been checked on the full table.
    """
    if A.order != B.order:
        return None
    if A.order > max_order:
        raise ResourceLimitError("isomorphism test beyond order %d" % max_order)
    if structural_invariants(A) != structural_invariants(B):
        return None
    sig_a, sig_b = _element_signature(A), _element_signature(B)
    if sorted(sig_a) != sorted(sig_b):
        return None
    gens = generating_set(A)
    candidates = [[b for b in range(B.order) if sig_b[b] == sig_a[g]] for g in gens]
    ma, mb = A.mul, B.mul

    def extend(phi, used, k):
        # close phi over right multiplication by the first k+1 generators
        queue = list(phi)
        while queue:
            x = queue.pop()
            fx = phi[x]
            for j in range(k + 1):
                g = gens[j]
                y = ma[x][g]
                fy = mb[fx][images[j]]
                known = phi.get(y)
                if known is None:
                    if fy in used:
                        return False
                    phi[y] = fy
                    used.add(fy)
                    queue.append(y)
                elif known != fy:
                    return False
        return True

    images: list[int] = [0] * len(gens)

    def search(k, phi, used):
        if k == len(gens):
            return phi
        for h in candidates[k]:
            images[k] = h
            phi2, used2 = dict(phi), set(used)
            if extend(phi2, used2, k):
                found = search(k + 1, phi2, used2)
                if found is not None:
                    return found
        return None

    phi = search(0, {0: 0}, {0})
    if phi is None:
        return None
    result = [phi[a] for a in range(A.order)]
    for a in range(A.order):
        for b in range(A.order):
            if result[ma[a][b]] != mb[result[a]][result[b]]:
                raise AssertionError("isomorphism search returned a non-homomorphism")
    return result


def are_isomorphic(A: GroupTable, B: GroupTable) -> bool:
    return find_isomorphism(A, B) is not None


def parse_word(word: str, names: str) -> list[tuple[int, int]]:
    """Parse ``a^2b^-1c`` style words into (generator position, exponent) pairs.

    Parentheses with an exponent, e.g. ``(ab)^2``, are expanded.
    """
    word = word.replace(" ", "")
    out: list[tuple[int, int]] = []
    i = 0

    def read_exponent(i):
        if i < len(word) and word[i] == "^":
            j = i + 1
            if j < len(word) and word[j] == "-":
                j += 1
            k = j
            while k < len(word) and word[k].isdigit():
                k += 1
            if k == j:
                raise ValidationError("bad exponent in %r" % word)
            return int(word[i + 1:k]), k
        return 1, i

    while i < len(word):
        ch = word[i]
        if ch == "1":
            i += 1
            continue
        if ch == "(":
            depth, j = 1, i + 1
            while j < len(word) and depth:
                depth += {"(": 1, ")": -1}.get(word[j], 0)
                j += 1
            inner = parse_word(word[i + 1:j - 1], names)
            e, i = read_exponent(j)
            if e < 0:
                inner = [(g, -x) for g, x in reversed(inner)]
                e = -e
            out.extend(inner * e)
            continue
        if ch not in names:
            raise ValidationError("unknown generator %r in %r" % (ch, word))
        e, i = read_exponent(i + 1)
        out.append((names.index(ch), e))
    return out


def evaluate_word(A: GroupTable, gens: Sequence[int], word: str, names: str) -> int:
    x = 0
    for g, e in parse_word(word, names):
        x = A.mul[x][A.power(gens[g], e)]
    return x


def check_relations(A: GroupTable, gens: Sequence[int], relations: Iterable[str], names: str) -> list[str]:
    """Return the relations (``lhs = rhs = ...`` strings) that fail in ``A``."""
    failed = []
    for rel in relations:
        values = {evaluate_word(A, gens, side, names) for side in rel.split("=")}
        if len(values) != 1:
            failed.append(rel)
    return failed
