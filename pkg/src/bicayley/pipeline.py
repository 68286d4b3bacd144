"""Build a vertex-transitive normal bi-Cayley graph for a finite group and certify it.

Dispatch follows the GRR classification of the group:

* groups with a GRR ``Γ``: ``Γ □ K2`` (or ``Γ1 □ Q2`` when ``Γ = Γ1 □ K2``);
* abelian groups of exponent > 2: a GRR of ``G ⋊ <inversion>``, else a direct search;
* generalized dicyclic groups: ``GP(8,3) □ Q_r`` for ``Q8 x C2^r``, else
  ``Σ □ Q_{r+1}`` with ``Σ`` a normal Cayley graph of the non-split part;
* the exceptional groups: the fixed connection sets listed in ``constructions``.

Every witness is re-checked from scratch before it is returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import perm as P
from .aut import action_report, automorphism_group
from .cartesian import cartesian_product, prime_factorization, relatively_prime
from .catalog import catalog_entries, quaternion_table
from .constructions import (
    class_e_connection_set,
    classify_group,
    cycle_cayley,
    grr_search,
    hypercube,
    moebius_kantor,
    normal_bicayley_search,
    normal_cayley_search,
)
from .errors import ParseError, ResourceLimitError, VerificationError
from .graph import K2, Graph, bicayley_graph, br_generators, cayley_graph, is_connected
from .graph6 import graph6_decode, graph6_encode
from .groups import (
    GroupTable,
    find_isomorphism,
    generated_subgroup,
    generating_set,
    group_from_generators,
    semidirect_by_inversion,
    split_off_elementary_abelian_2,
    subgroup_table,
)

DEFAULT_BUILD_MAX_ORDER = 64
DEFAULT_SWEEP_MAX_ORDER = 16

CERT_KEYS = (
    "group",
    "group-order",
    "graph-order",
    "graph6",
    "br-generator",
    "br-semiregular",
    "br-orbits",
    "aut-order",
    "br-normal",
    "vertex-transitive",
    "connected",
    "construction",
)


@dataclass
class Certificate:
    group: str
    group_order: int
    graph_order: int
    graph6: str
    br_generators: list
    semiregular: bool
    orbits: int
    aut_order: int
    normal: bool
    vertex_transitive: bool
    connected: bool
    construction: str

    @property
    def valid(self) -> bool:
        return (
            self.semiregular
            and self.orbits == 2
            and self.normal
            and self.connected
            and self.vertex_transitive
        )

    def to_text(self) -> str:
        def flag(b):
            return "true" if b else "false"

        lines = [
            "group: %s" % self.group,
            "group-order: %d" % self.group_order,
            "graph-order: %d" % self.graph_order,
            "graph6: %s" % self.graph6,
        ]
        lines += ["br-generator: %s" % P.format_images(p) for p in self.br_generators]
        lines += [
            "br-semiregular: %s" % flag(self.semiregular),
            "br-orbits: %d" % self.orbits,
            "aut-order: %d" % self.aut_order,
            "br-normal: %s" % flag(self.normal),
            "vertex-transitive: %s" % flag(self.vertex_transitive),
            "connected: %s" % flag(self.connected),
            "construction: %s" % self.construction,
        ]
        return "\n".join(lines) + "\n"


def _parse_flag(value: str, key: str) -> bool:
    if value not in ("true", "false"):
        raise ParseError("%s must be true or false, got %r" % (key, value))
    return value == "true"


def read_certificate(text: str) -> Certificate:
    fields: dict = {"br-generator": []}
    last = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("line %d is not 'key: value'" % lineno)
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in CERT_KEYS:
            raise ParseError("unknown certificate key %r on line %d" % (key, lineno))
        pos = CERT_KEYS.index(key)
        if pos < last or (pos == last and key != "br-generator"):
            raise ParseError("key %r out of order on line %d" % (key, lineno))
        last = pos
        if key == "br-generator":
            fields[key].append(value)
        else:
            fields[key] = value
    missing = [k for k in CERT_KEYS if k not in fields]
    if missing:
        raise ParseError("certificate is missing %s" % ", ".join(missing))
    try:
        n = int(fields["graph-order"])
        return Certificate(
            group=fields["group"],
            group_order=int(fields["group-order"]),
            graph_order=n,
            graph6=fields["graph6"],
            br_generators=[P.parse_images(v, n) for v in fields["br-generator"]],
            semiregular=_parse_flag(fields["br-semiregular"], "br-semiregular"),
            orbits=int(fields["br-orbits"]),
            aut_order=int(fields["aut-order"]),
            normal=_parse_flag(fields["br-normal"], "br-normal"),
            vertex_transitive=_parse_flag(fields["vertex-transitive"], "vertex-transitive"),
            connected=_parse_flag(fields["connected"], "connected"),
            construction=fields["construction"],
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def compute_certificate(g: Graph, BR: P.PermGroup, group: str, construction: str) -> Certificate:
    """Recompute every certificate field from the graph and the acting group."""
    aut = automorphism_group(g)
    report = action_report(BR)
    return Certificate(
        group=group,
        group_order=BR.order(),
        graph_order=g.n,
        graph6=graph6_encode(g),
        br_generators=list(BR.generators),
        semiregular=report.semiregular,
        orbits=report.orbit_count,
        aut_order=aut.order(),
        normal=all(g.is_automorphism(b) for b in BR.generators) and BR.is_normal_in(aut),
        vertex_transitive=len(aut.orbits()) == 1,
        connected=is_connected(g),
        construction=construction,
    )


def check_certificate(g: Graph, BR: P.PermGroup, claimed: Certificate) -> list[tuple]:
    """Itemized comparison ``(key, claimed, recomputed, ok)`` of every field."""
    actual = compute_certificate(g, BR, claimed.group, claimed.construction)
    rows = []
    for key, attr in (
        ("group-order", "group_order"),
        ("graph-order", "graph_order"),
        ("graph6", "graph6"),
        ("br-generator", "br_generators"),
        ("br-semiregular", "semiregular"),
        ("br-orbits", "orbits"),
        ("aut-order", "aut_order"),
        ("br-normal", "normal"),
        ("vertex-transitive", "vertex_transitive"),
        ("connected", "connected"),
    ):
        a, b = getattr(claimed, attr), getattr(actual, attr)
        if attr == "br_generators":
            a, b = [tuple(p) for p in a], [tuple(p) for p in b]
        rows.append((key, a, b, a == b))
    return rows


def verify_certificate(g: Graph, BR: P.PermGroup, claimed: Certificate) -> bool:
    """True iff every claimed field matches recomputation."""
    if BR.degree != g.n:
        return False
    return all(ok for *_, ok in check_certificate(g, BR, claimed))


def certificate_inputs(cert: Certificate) -> tuple[Graph, P.PermGroup]:
    """Graph and acting group as written in a certificate."""
    g = graph6_decode(cert.graph6)
    return g, P.PermGroup(g.n, cert.br_generators)


# -- construction branches ----------------------------------------------------

def _regular(G: GroupTable, elems=None) -> list:
    return [G.regular_permutation(x) for x in (generating_set(G) if elems is None else elems)]


def _times_k2(gamma: Graph, G: GroupTable):
    """``gamma □ K2`` with ``R(G) x 1``; ``(g, e)`` is vertex ``2g + e``."""
    return cartesian_product(gamma, K2), P.product_action(_regular(G), G.order, [], 2)


def _grr_branch(G: GroupTable, budget):
    S = grr_search(G, budget)
    if S is None:
        raise VerificationError("grr", "no GRR found for a group outside the exceptional classes")
    gamma = cayley_graph(G, S)
    decomp = prime_factorization(gamma)
    k2 = [i for i, f in enumerate(decomp.factors) if f.n == 2]
    if not k2:
        g, gens = _times_k2(gamma, G)
        return g, gens, "grr %s times K2" % _fmt_set(S)
    # gamma = gamma1 □ K2: the K2 edge at the identity is {1, s} with s a central involution
    i = k2[0]
    c0 = list(decomp.coordinates[0])
    c0[i] = 1 - c0[i]
    s = decomp.vertex_of()[tuple(c0)]
    G1 = generated_subgroup(G, [x for x in S if x != s])
    if not (s in S and G.element_order(s) == 2 and G.is_central(s)
            and 2 * len(G1) == G.order and s not in G1):
        raise VerificationError("grr-k2-split", "K2 factor does not split off a central involution")
    g = cartesian_product(gamma, K2)
    H1, idx = subgroup_table(G, G1)
    gens = [tuple(2 * G.mul[v // 2][idx[x]] + v % 2 for v in range(g.n)) for x in generating_set(H1)]
    gens.append(tuple(2 * G.mul[v // 2][s] + 1 - v % 2 for v in range(g.n)))
    return g, gens, "grr %s with K2 factor, times K2 over Q2 diagonal" % _fmt_set(S)


def _class_c_branch(G: GroupTable, budget):
    H = semidirect_by_inversion(G)
    cls = classify_group(H)
    if cls.tag == "HasGRR":
        S = grr_search(H, budget)
        if S is not None:
            gens = _regular(H, generating_set(G))
            return cayley_graph(H, S), gens, "grr %s of G:<inversion>" % _fmt_set(S)
    t = normal_bicayley_search(G, budget, vertex_transitive=True)
    if t is None:
        raise VerificationError("bicayley-search", "exhaustive search found no witness")
    return (
        bicayley_graph(t),
        list(br_generators(t).generators),
        "bicayley search R=%s L=%s S=%s (G:<inversion> is %s)"
        % (_fmt_set(t.R), _fmt_set(t.L), _fmt_set(t.S), cls),
    )


def _gp83_times(partner: Graph, partner_gens: list, label: str):
    g0, *_rest, q8 = moebius_kantor()
    g = cartesian_product(g0, partner)
    return g, P.product_action(q8.generators, 16, partner_gens, partner.n), label


def _class_d_branch(G: GroupTable, budget):
    G1, r = split_off_elementary_abelian_2(G)
    if find_isomorphism(G1, quaternion_table()) is not None:
        if r == 0:
            g, *_rest, q8 = moebius_kantor()
            return g, list(q8.generators), "GP(8,3) over Q8"
        Q, N, _E = hypercube(r)
        return _gp83_times(Q, list(N.generators), "GP(8,3) times Q%d over Q8 x C2^%d" % (r, r))
    S = normal_cayley_search(G1, budget)
    if S is None:
        raise VerificationError("normal-cayley", "no normal Cayley graph for the dicyclic part")
    sigma = cayley_graph(G1, S)
    if not relatively_prime(sigma, K2):
        raise VerificationError("coprime", "normal Cayley graph has a K2 factor")
    lam, _N, E = hypercube(r + 1)
    g = cartesian_product(sigma, lam)
    gens = P.product_action(_regular(G1), G1.order, list(E.generators), lam.n)
    return g, gens, "normal cayley %s times Q%d" % (_fmt_set(S), r + 1)


def _class_e_branch(G: GroupTable, item: int, member: str):
    c = class_e_connection_set(item, member, G)
    if item == 1:
        k = G.order.bit_length() - 1
        Q, _N, E = hypercube(k + 1)
        return Q, list(E.generators), "Q%d over E" % (k + 1)
    if item == 8:
        n = int(c.partner[1:])
        cyc = cycle_cayley(n)
        rot = tuple((v + 1) % n for v in range(n))
        return _gp83_times(cyc, [rot], "GP(8,3) times C%d" % n)
    g, gens = _times_k2(c.graph, G)
    return g, gens, "exceptional E(%d) cayley %s times K2" % (item, _fmt_set(c.connection_set))


def _fmt_set(S) -> str:
    return "{%s}" % ",".join(map(str, sorted(S)))


def construct_normal_bicayley(G: GroupTable, name: str = "G", budget: int | None = None,
                              max_order: int = DEFAULT_BUILD_MAX_ORDER):
    """Return ``(graph, BR, certificate)``; raises VerificationError if any check fails."""
    if G.order > max_order:
        raise ResourceLimitError("group order %d above bound %d" % (G.order, max_order))
    if G.order == 1:
        g, gens, how = K2, [], "base case K2"
    elif G.order == 2:
        g, _N, E = hypercube(2)
        gens, how = list(E.generators), "base case Q2 over diagonal"
    else:
        cls = classify_group(G)
        if cls.tag == "HasGRR":
            g, gens, how = _grr_branch(G, budget)
        elif cls.tag == "ClassC":
            g, gens, how = _class_c_branch(G, budget)
        elif cls.tag == "ClassD":
            g, gens, how = _class_d_branch(G, budget)
        else:
            g, gens, how = _class_e_branch(G, cls.item, cls.member)
        how = "%s: %s" % (cls, how)
    BR = P.PermGroup(g.n, sorted(gens)) if gens else P.PermGroup.trivial(g.n)
    _check_isomorphic(G, BR)
    cert = compute_certificate(g, BR, name, how)
    for predicate, ok in (
        ("br-semiregular", cert.semiregular),
        ("br-orbits", cert.orbits == 2),
        ("br-normal", cert.normal),
        ("connected", cert.connected),
        ("vertex-transitive", cert.vertex_transitive),
    ):
        if not ok:
            raise VerificationError(predicate, "witness for %s fails %s" % (name, predicate))
    return g, BR, cert


def _check_isomorphic(G: GroupTable, BR: P.PermGroup):
    if BR.order() != G.order:
        raise VerificationError("br-order", "BR has order %d, expected %d" % (BR.order(), G.order))
    if not BR.generators:
        return
    T, _ = group_from_generators(BR.generators, max_order=G.order)
    if find_isomorphism(G, T) is None:
        raise VerificationError("br-isomorphism", "BR is not isomorphic to the group")


# -- sweep ---------------------------------------------------------------------

@dataclass
class SweepRow:
    group: str
    order: int
    construction: str
    graph_order: int
    aut_order: int
    valid: bool
    seconds: float = field(default=0.0, compare=False)


SWEEP_HEADER = ("group", "order", "graph-order", "aut-order", "valid", "construction")


def theorem_sweep(max_order: int = DEFAULT_SWEEP_MAX_ORDER, budget: int | None = None, progress=None):
    """Certify every catalog group of order at most ``max_order``, in catalog order."""
    if max_order > DEFAULT_SWEEP_MAX_ORDER:
        raise ResourceLimitError("sweep bound is %d" % DEFAULT_SWEEP_MAX_ORDER)
    rows = []
    for entry in catalog_entries(max_order):
        start = time.perf_counter()
        try:
            g, BR, cert = construct_normal_bicayley(entry.table, entry.name, budget)
        except VerificationError as exc:
            raise VerificationError(exc.predicate, "%s: %s" % (entry.name, exc)) from exc
        row = SweepRow(entry.name, entry.order, cert.construction, g.n, cert.aut_order,
                       cert.valid and verify_certificate(g, BR, cert), time.perf_counter() - start)
        rows.append(row)
        if progress is not None:
            progress(row)
    return rows


def sweep_report(rows, timings: bool = False) -> str:
    header = list(SWEEP_HEADER) + (["seconds"] if timings else [])
    lines = ["\t".join(header)]
    for r in rows:
        cols = [r.group, str(r.order), str(r.graph_order), str(r.aut_order),
                "true" if r.valid else "false", r.construction]
        if timings:
            cols.append("%.2f" % r.seconds)
        lines.append("\t".join(cols))
    return "\n".join(lines) + "\n"
