"""Permutations as image tuples, and permutation groups backed by a stabilizer chain.

A permutation of degree ``m`` is a tuple ``p`` with ``p[x]`` the image of point ``x``.
Permutations act on the right: ``compose(p, q)`` applies ``p`` first, then ``q``,
so that ``x^(pq) = (x^p)^q``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ParseError, ResourceLimitError, ValidationError

Permutation = tuple  # tuple[int, ...]


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def check_perm(p: Sequence[int]) -> Permutation:
    """Return ``p`` as a tuple, raising ValidationError if it is not a bijection."""
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise ValidationError("not a permutation: %r" % (p,))
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return tuple([q[x] for x in p])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def is_identity(p: Permutation) -> bool:
    return all(x == y for x, y in enumerate(p))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def conjugate(p: Permutation, a: Permutation) -> Permutation:
    """Return ``a^-1 p a``."""
    return compose(compose(inverse(a), p), a)


def perm_order(p: Permutation) -> int:
    from math import lcm

    result = 1
    for cycle in to_cycles(p):
        result = lcm(result, len(cycle))
    return result


def from_cycles(cycles: Iterable[Iterable[int]], degree: int) -> Permutation:
    images = list(range(degree))
    seen = set()
    for cycle in cycles:
        cycle = list(cycle)
        for x in cycle:
            if x in seen or not 0 <= x < degree:
                raise ValidationError("bad cycle point %r" % (x,))
            seen.add(x)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return tuple(images)


def to_cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles of ``p``, each starting at its least point."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(cycle))
    return out


def format_cycles(p: Permutation) -> str:
    cycles = to_cycles(p)
    if not cycles:
        return "()"
    return "".join("(%s)" % " ".join(map(str, c)) for c in cycles)


def format_images(p: Permutation) -> str:
    return " ".join(map(str, p))


def parse_images(text: str, degree: int | None = None) -> Permutation:
    try:
        p = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ParseError("non-integer token in image list: %s" % exc) from None
    if degree is not None and len(p) != degree:
        raise ParseError("expected %d images, got %d" % (degree, len(p)))
    try:
        return check_perm(p)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def first_moved(p: Permutation) -> int | None:
    for x, y in enumerate(p):
        if x != y:
            return x
    return None


def lift(p: Permutation, offset: int, degree: int) -> Permutation:
    """Extend ``p`` to ``degree`` points, acting on ``offset..offset+len(p)-1``."""
    images = list(range(degree))
    for x, y in enumerate(p):
        images[offset + x] = offset + y
    return tuple(images)


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base, gens, transversal):
        self.base = base
        self.gens = gens
        self.transversal = transversal


def _orbit_transversal(base: int, gens: list, degree: int) -> dict:
    trans = {base: identity(degree)}
    queue = [base]
    for x in queue:
        u = trans[x]
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = compose(u, g)
                queue.append(y)
    return trans


def _strip(levels: list, g: Permutation, start: int):
    for i in range(start, len(levels)):
        level = levels[i]
        u = level.transversal.get(g[level.base])
        if u is None:
            return g, i
        g = compose(g, inverse(u))
    return g, len(levels)


def _schreier_sims(degree: int, gens: list) -> list:
    """Deterministic Schreier-Sims; base points are chosen as least moved points."""
    gens = [g for g in gens if not is_identity(g)]
    base: list[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(first_moved(g))
    levels = []
    for i, b in enumerate(base):
        level_gens = [g for g in gens if all(g[c] == c for c in base[:i])]
        levels.append(_Level(b, level_gens, _orbit_transversal(b, level_gens, degree)))

    i = len(levels) - 1
    while i >= 0:
        level = levels[i]
        extended = False
        for x, u in list(level.transversal.items()):
            for s in level.gens:
                us = compose(u, s)
                v = level.transversal[s[x]]
                if us == v:
                    continue
                h, j = _strip(levels, compose(us, inverse(v)), i + 1)
                if j == len(levels):
                    if is_identity(h):
                        continue
                    b = first_moved(h)
                    levels.append(_Level(b, [], {b: identity(degree)}))
                for k in range(i + 1, j + 1):
                    levels[k].gens.append(h)
                    levels[k].transversal = _orbit_transversal(
                        levels[k].base, levels[k].gens, degree
                    )
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1
    return levels


class PermGroup:
    """A permutation group given by generators.

    Order and membership come from a stabilizer chain built on first use.
    ``order`` may be supplied when already known (e.g. from the automorphism
    search); it is then trusted for ``order()`` but membership still uses the chain.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), order: int | None = None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = check_perm(g)
            if len(g) != self.degree:
                raise ValidationError("generator degree %d != %d" % (len(g), self.degree))
            gens.append(g)
        self.generators = tuple(gens)
        self._order = order
        self._levels = None

    def __repr__(self):
        return "PermGroup(degree=%d, ngens=%d)" % (self.degree, len(self.generators))

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [], order=1)

    def _chain(self):
        if self._levels is None:
            self._levels = _schreier_sims(self.degree, list(self.generators))
        return self._levels

    def base(self) -> list[int]:
        return [level.base for level in self._chain()]

    def order(self) -> int:
        if self._order is None:
            n = 1
            for level in self._chain():
                n *= len(level.transversal)
            self._order = n
        return self._order

    def contains(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        h, j = _strip(self._chain(), p, 0)
        return j == len(self._chain()) and is_identity(h)

    __contains__ = contains

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            seen[start] = True
            orbit = [start]
            for x in orbit:
                for g in self.generators:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
            out.append(sorted(orbit))
        return out

    def orbit(self, point: int) -> list[int]:
        for orb in self.orbits():
            if point in orb:
                return orb
        raise ValueError(point)

    def elements(self, limit: int = 10**6) -> list[Permutation]:
        """All elements by breadth-first closure, identity first."""
        ident = identity(self.degree)
        seen = {ident}
        out = [ident]
        for x in out:
            for g in self.generators:
                y = compose(x, g)
                if y not in seen:
                    if len(out) >= limit:
                        raise ResourceLimitError("group has more than %d elements" % limit)
                    seen.add(y)
                    out.append(y)
        return out

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        """True iff every generator of ``self`` conjugated by every generator of ``other`` stays in ``self``."""
        return all(
            self.contains(conjugate(b, a)) for a in other.generators for b in self.generators
        )


def perm_group_order(pg: PermGroup) -> int:
    return pg.order()


def perm_group_contains(pg: PermGroup, p: Sequence[int]) -> bool:
    return pg.contains(p)


def product_action(
    gens_x: Iterable[Permutation], nx: int, gens_y: Iterable[Permutation], ny: int
) -> list[Permutation]:
    """Lift generators of groups on ``nx`` and ``ny`` points to the row-major product ``nx*ny``."""
    out = []
    for g in gens_x:
        out.append(tuple(g[u] * ny + v for u in range(nx) for v in range(ny)))
    for h in gens_y:
        out.append(tuple(u * ny + h[v] for u in range(nx) for v in range(ny)))
    return out


def write_perm_group(pg: PermGroup) -> str:
    lines = ["degree %d" % pg.degree]
    lines.extend(format_images(g) for g in pg.generators)
    return "\n".join(lines) + "\n"


def read_perm_group(text: str) -> PermGroup:
    """Parse ``degree <m>`` followed by one image list per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty permutation group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree":
        raise ParseError("first line must be 'degree <m>'", offset=0)
    try:
        degree = int(head[1])
    except ValueError:
        raise ParseError("degree is not an integer", offset=0) from None
    if degree < 1:
        raise ParseError("degree must be positive", offset=0)
    gens = [parse_images(ln, degree) for ln in lines[1:]]
    return PermGroup(degree, gens)
