"""Named small groups, realized by explicit permutation generators.

``catalog_small_groups(k)`` lists one representative of every isomorphism
class of order at most ``k`` (complete up to order 16).  The exceptional
groups without a GRR are stored with named generators so that their defining
relations can be checked against the realization when they are loaded.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import perm as P
from .errors import ParseError, ResourceLimitError, ValidationError
from .groups import (
    GroupTable,
    check_relations,
    cyclic,
    direct_product,
    evaluate_word,
    generating_set,
    group_from_generators,
    table_from_function,
)

COMPLETE_UP_TO = 16
GROUP_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14)


@dataclass
class CatalogEntry:
    name: str
    generators: list  # permutations
    gen_names: str = ""
    relations: tuple = ()
    aliases: tuple = ()
    _table: GroupTable | None = field(default=None, repr=False)
    _embedding: list | None = field(default=None, repr=False)

    def _load(self):
        if self._table is None:
            self._table, self._embedding = group_from_generators(self.generators)
            if self.relations:
                failed = check_relations(self._table, self.named_elements(), self.relations, self.gen_names)
                if failed:
                    raise ValidationError("%s: realization violates %s" % (self.name, failed))

    @property
    def table(self) -> GroupTable:
        self._load()
        return self._table

    @property
    def embedding(self) -> list:
        self._load()
        return self._embedding

    @property
    def order(self) -> int:
        return self.table.order

    def named_elements(self) -> list[int]:
        """Table indices of the named generators, in ``gen_names`` order."""
        index = {p: i for i, p in enumerate(self._embedding)}
        return [index[g] for g in self.generators[: len(self.gen_names)]]

    def word(self, w: str) -> int:
        return evaluate_word(self.table, self.named_elements(), w, self.gen_names)


def _regular_generators(table: GroupTable, gens=None) -> list:
    gens = generating_set(table) if gens is None else gens
    if not gens:
        return [P.identity(table.order)]
    return [table.regular_permutation(g) for g in gens]


def metacyclic(m: int, n: int, r: int, s: int) -> GroupTable:
    """``<x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r>``; ``x^i y^j`` has index ``j*m + i``."""
    elems = [(i, j) for j in range(n) for i in range(m)]
    rpow = [pow(r, j, m) for j in range(n)]
    index = {e: k for k, e in enumerate(elems)}
    mul = []
    for i, j in elems:
        row = []
        for a, b in elems:
            x = i + a * rpow[j]
            y = j + b
            if y >= n:
                y -= n
                x += s
            row.append(index[(x % m, y)])
        mul.append(row)
    return GroupTable(mul)


def semidirect_cyclic(A: GroupTable, theta, n: int) -> GroupTable:
    """``A ⋊ <y>`` with ``y^n = 1`` and ``y a y^-1 = theta(a)``; ``a y^j`` has index ``j*|A| + a``."""
    size = A.order
    powers = [list(range(size))]
    for _ in range(1, n):
        powers.append([theta[x] for x in powers[-1]])
    mul = []
    for j, a in product(range(n), range(size)):
        row = []
        for k, b in product(range(n), range(size)):
            row.append(((j + k) % n) * size + A.mul[a][powers[j][b]])
        mul.append(row)
    return GroupTable(mul)


# concrete realizations


def cyclic_entry(n: int) -> CatalogEntry:
    if n == 1:
        return CatalogEntry("C1", [(0,)])
    return CatalogEntry("C%d" % n, [tuple((x + 1) % n for x in range(n))], gen_names="a", relations=("a^%d=1" % n,))


def dihedral_entry(order: int) -> CatalogEntry:
    n = order // 2
    if order % 2 or n < 3:
        raise ValidationError("dihedral groups D_2n need n >= 3")
    rot = tuple((x + 1) % n for x in range(n))
    ref = tuple((-x) % n for x in range(n))
    return CatalogEntry(
        "D%d" % order, [rot, ref], gen_names="ab", relations=("a^%d=b^2=1" % n, "b^-1ab=a^-1")
    )


def elementary_abelian_entry(r: int) -> CatalogEntry:
    if r == 0:
        return cyclic_entry(1)
    n = 1 << r
    gens = [tuple(x ^ (1 << i) for x in range(n)) for i in range(r)]
    name = "C2" if r == 1 else "C2^%d" % r
    return CatalogEntry(name, gens)


def alt4_entry() -> CatalogEntry:
    a = P.from_cycles([(0, 1, 2)], 4)
    b = P.from_cycles([(0, 1, 3)], 4)
    return CatalogEntry("Alt4", [a, b], gen_names="ab", relations=("a^3=b^3=(ab)^2=1",), aliases=("A4", "E3"))


def quaternion_table() -> GroupTable:
    return metacyclic(4, 2, 3, 2)


def _table_entry(name, table, aliases=(), gen_names="", named=None, relations=()):
    gens = _regular_generators(table, named)
    return CatalogEntry(name, gens, gen_names=gen_names, relations=relations, aliases=aliases)


def q8_entry() -> CatalogEntry:
    T = quaternion_table()
    # x = i (index 1), y = j (index 4)
    return _table_entry("Q8", T, gen_names="ij", named=[1, 4], relations=("i^4=1", "i^2=j^2", "j^-1ij=i^-1"))


def q8_times_elementary(r: int) -> CatalogEntry:
    T = quaternion_table()
    for _ in range(r):
        T = direct_product(T, cyclic(2))
    name = "Q8" if r == 0 else ("Q8xC2" if r == 1 else "Q8xC2^%d" % r)
    return _table_entry(name, T)


def q8_times_cyclic(n: int) -> CatalogEntry:
    aliases = ("E8",) if n == 3 else ()
    return _table_entry("Q8xC%d" % n, direct_product(quaternion_table(), cyclic(n)), aliases=aliases)


def _matrix_closure(gens):
    """Close 2x2 matrices (exact Gaussian-integer entries) under multiplication, identity first."""

    def mul(a, b):
        return (
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )

    elems = [(1, 0, 0, 1)]
    seen = set(elems)
    for x in elems:
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return elems, mul


def pauli_entry() -> CatalogEntry:
    """The Pauli group C4oD8, generated by X, Y, Z; it is the Class E(4) group."""
    X, Y, Z = (0, 1, 1, 0), (0, -1j, 1j, 0), (1, 0, 0, -1)
    elems, mul = _matrix_closure([X, Y, Z])
    T = table_from_function(elems, mul)
    named = [elems.index(X), elems.index(Y), elems.index(Z)]
    return _table_entry(
        "C4oD8", T, aliases=("E4",), gen_names="abc", named=named,
        relations=("a^2=b^2=c^2=1", "abc=bca=cab"),
    )


def e5_entry() -> CatalogEntry:
    a = tuple((x + 1) % 8 for x in range(8))
    b = tuple((5 * x) % 8 for x in range(8))
    return CatalogEntry("M16", [a, b], gen_names="ab", relations=("a^8=b^2=1", "bab=a^5"), aliases=("E5",))


def e6_entry() -> CatalogEntry:
    pts = [(x, y) for x in range(3) for y in range(3)]
    idx = {p: k for k, p in enumerate(pts)}

    def affine(f):
        return tuple(idx[f(x, y)] for x, y in pts)

    a = affine(lambda x, y: ((x + 1) % 3, y))
    b = affine(lambda x, y: (x, (y + 1) % 3))
    c = affine(lambda x, y: ((-x) % 3, (-y) % 3))
    return CatalogEntry(
        "E6", [a, b, c], gen_names="abc", relations=("a^3=b^3=c^2=1", "ab=ba", "(ac)^2=(bc)^2=1")
    )


def e7_entry() -> CatalogEntry:
    # Heisenberg group mod 3: (x, y, z) ~ [[1, x, z], [0, 1, y], [0, 0, 1]], right regular action
    pts = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]
    idx = {p: k for k, p in enumerate(pts)}

    def right(g):
        gx, gy, gz = g
        return tuple(idx[((x + gx) % 3, (y + gy) % 3, (z + gz + x * gy) % 3)] for x, y, z in pts)

    a, b = right((1, 0, 0)), right((0, 1, 0))
    c = P.compose(P.compose(P.compose(P.inverse(a), P.inverse(b)), a), b)
    return CatalogEntry(
        "E7",
        [a, b, c],
        gen_names="abc",
        relations=("a^3=b^3=c^3=1", "ac=ca", "bc=cb", "c=a^-1b^-1ab"),
    )


def _order16() -> list[CatalogEntry]:
    C4xC2 = direct_product(cyclic(4), cyclic(2))
    # (i, e) has index 2*i + e
    theta3 = [2 * (k // 2) + ((k % 2) + (k // 2)) % 2 for k in range(8)]
    D8 = dihedral_entry(8).table
    return [
        cyclic_entry(16),
        _table_entry("C4xC4", direct_product(cyclic(4), cyclic(4))),
        _table_entry("C2^2:C4", semidirect_cyclic(C4xC2, theta3, 2)),
        _table_entry("C4:C4", metacyclic(4, 4, 3, 0)),
        _table_entry("C8xC2", direct_product(cyclic(8), cyclic(2))),
        e5_entry(),
        dihedral_entry(16),
        _table_entry("SD16", metacyclic(8, 2, 3, 0)),
        _table_entry("Q16", metacyclic(8, 2, 7, 4)),
        _table_entry("C4xC2^2", direct_product(C4xC2, cyclic(2))),
        _table_entry("D8xC2", direct_product(D8, cyclic(2))),
        q8_times_elementary(1),
        pauli_entry(),
        elementary_abelian_entry(4),
    ]


@lru_cache(maxsize=None)
def _all_entries() -> tuple:
    """Every stored entry: the complete list up to order 16, then larger Class E groups."""
    entries = [
        cyclic_entry(1),
        cyclic_entry(2),
        cyclic_entry(3),
        cyclic_entry(4),
        elementary_abelian_entry(2),
        cyclic_entry(5),
        cyclic_entry(6),
        dihedral_entry(6),
        cyclic_entry(7),
        cyclic_entry(8),
        _table_entry("C4xC2", direct_product(cyclic(4), cyclic(2))),
        elementary_abelian_entry(3),
        dihedral_entry(8),
        q8_entry(),
        cyclic_entry(9),
        _table_entry("C3^2", direct_product(cyclic(3), cyclic(3))),
        cyclic_entry(10),
        dihedral_entry(10),
        cyclic_entry(11),
        cyclic_entry(12),
        _table_entry("C6xC2", direct_product(cyclic(6), cyclic(2))),
        dihedral_entry(12),
        alt4_entry(),
        _table_entry("Dic12", metacyclic(6, 2, 5, 3)),
        cyclic_entry(13),
        cyclic_entry(14),
        dihedral_entry(14),
        cyclic_entry(15),
    ]
    entries.extend(_order16())
    entries.extend([e6_entry(), q8_times_cyclic(3), e7_entry(), q8_times_cyclic(4)])
    return tuple(entries)


def catalog_small_groups(max_order: int = COMPLETE_UP_TO) -> list[tuple[str, GroupTable]]:
    """One group per isomorphism class for every order up to ``max_order`` (at most 16)."""
    if max_order > COMPLETE_UP_TO:
        raise ResourceLimitError("catalog is complete only up to order %d" % COMPLETE_UP_TO)
    out = []
    for entry in _all_entries()[: sum(GROUP_COUNTS)]:
        if entry.order <= max_order:
            out.append((entry.name, entry.table))
    return out


def catalog_entries(max_order: int = COMPLETE_UP_TO) -> list[CatalogEntry]:
    if max_order > COMPLETE_UP_TO:
        raise ResourceLimitError("catalog is complete only up to order %d" % COMPLETE_UP_TO)
    return [e for e in _all_entries()[: sum(GROUP_COUNTS)] if e.order <= max_order]


# Class E of the GRR classification: (item, member name)
CLASS_E = (
    (1, "C2^2"),
    (1, "C2^3"),
    (1, "C2^4"),
    (2, "D6"),
    (2, "D8"),
    (2, "D10"),
    (3, "Alt4"),
    (4, "C4oD8"),
    (5, "M16"),
    (6, "E6"),
    (7, "E7"),
    (8, "Q8xC3"),
    (8, "Q8xC4"),
)


def class_e_entries() -> list[tuple[int, CatalogEntry]]:
    return [(item, named_group(name)) for item, name in CLASS_E]


_FAMILY_PATTERNS = [
    (re.compile(r"^C(\d+)$"), lambda k: cyclic_entry(k) if k >= 1 else None),
    (re.compile(r"^D(\d+)$"), lambda k: dihedral_entry(k) if k >= 6 and k % 2 == 0 else None),
    (re.compile(r"^C2\^(\d+)$"), lambda r: elementary_abelian_entry(r) if r <= 10 else None),
    (re.compile(r"^Q8xC2\^(\d+)$"), lambda r: q8_times_elementary(r) if r <= 5 else None),
    (re.compile(r"^Q8xC(\d+)$"), lambda n: (q8_times_elementary(1) if n == 2 else q8_times_cyclic(n)) if n >= 2 else None),
]


def named_group(name: str) -> CatalogEntry:
    """Resolve a catalog name, alias (``E5``, ``A4``...) or family name (``C7``, ``D18``, ``Q8xC2^2``)."""
    for entry in _all_entries():
        if name == entry.name or name in entry.aliases:
            return entry
    for pattern, make in _FAMILY_PATTERNS:
        m = pattern.match(name)
        if m:
            entry = make(int(m.group(1)))
            if entry is not None:
                return entry
    raise KeyError("unknown group name %r" % name)


def write_group_file(generators, degree: int | None = None) -> str:
    gens = list(generators)
    degree = len(gens[0]) if degree is None else degree
    return P.write_perm_group(P.PermGroup(degree, gens))


def read_group_file(text: str) -> CatalogEntry:
    pg = P.read_perm_group(text)
    if not pg.generators:
        raise ParseError("group file lists no generators")
    return CatalogEntry("file", list(pg.generators))


def resolve_group(source: str) -> CatalogEntry:
    """A group from a catalog/family name or from a group file path."""
    try:
        return named_group(source)
    except KeyError:
        if os.path.exists(source):
            with open(source) as fh:
                entry = read_group_file(fh.read())
            entry.name = os.path.splitext(os.path.basename(source))[0]
            return entry
        raise
