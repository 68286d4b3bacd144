"""Command-line front end.

Exit status: 0 success, 1 a certificate or sweep failed, 2 usage or input
error, 3 inconclusive search, 4 a size bound was hit.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import perm as P
from .aut import DEFAULT_MAX_VERTICES, automorphism_group
from .cartesian import cartesian_product, prime_factorization
from .catalog import COMPLETE_UP_TO, catalog_entries, resolve_group
from .constructions import classify_group, generalized_petersen, hypercube
from .errors import (
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SearchInconclusive,
    ValidationError,
    VerificationError,
)
from .graph import K2, Graph, complete_graph, cycle_graph, path_graph, read_edge_list
from .graph6 import graph6_decode, graph6_encode
from .pipeline import (
    DEFAULT_BUILD_MAX_ORDER,
    DEFAULT_SWEEP_MAX_ORDER,
    certificate_inputs,
    check_certificate,
    construct_normal_bicayley,
    read_certificate,
    sweep_report,
    theorem_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_RESOURCE = 0, 1, 2, 3, 4

_NAMED = {
    "Q": lambda k: hypercube(k)[0],
    "C": cycle_graph,
    "K": complete_graph,
    "P": path_graph,
}


def load_graph(source: str) -> Graph:
    """A graph from a file (edge list or graph6), a name (``Qn:3``, ``Cn:5``, ``GP83``, ``K2``) or graph6."""
    if os.path.isfile(source):
        with open(source) as fh:
            text = fh.read()
        if text.lstrip().startswith("n "):
            return read_edge_list(text)
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        return graph6_decode(first)
    if source == "GP83":
        return generalized_petersen(8, 3)
    if source == "K2":
        return K2
    m = re.fullmatch(r"([QCKP])n:(\d+)", source)
    if m:
        return _NAMED[m.group(1)](int(m.group(2)))
    return graph6_decode(source)


def _cmd_build(args) -> int:
    entry = resolve_group(args.group)
    g, BR, cert = construct_normal_bicayley(entry.table, entry.name, args.budget, args.max_order)
    text = cert.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        with open(args.out + ".g6", "w") as fh:
            fh.write(graph6_encode(g) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _short(value) -> str:
    text = str(value)
    return text if len(text) <= 60 else text[:57] + "..."


def _cmd_verify(args) -> int:
    with open(args.cert) as fh:
        cert = read_certificate(fh.read())
    g, BR = certificate_inputs(cert)
    if g.n > args.max_vertices:
        raise ResourceLimitError("graph has %d vertices (bound %d)" % (g.n, args.max_vertices))
    ok = True
    for key, claimed, actual, good in check_certificate(g, BR, cert):
        if good:
            print("PASS %s" % key)
        else:
            ok = False
            print("FAIL %s: claimed %s, recomputed %s" % (key, _short(claimed), _short(actual)))
    print("%s valid" % ("PASS" if cert.valid else "FAIL"))
    ok = ok and cert.valid
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_aut(args) -> int:
    g = load_graph(args.graph)
    A = automorphism_group(g, max_vertices=args.max_vertices)
    print("order %d" % A.order())
    print("degree %d" % g.n)
    for p in A.generators:
        print(P.format_images(p))
    return EXIT_OK


def _cmd_factor(args) -> int:
    g = load_graph(args.graph)
    if g.n > args.max_vertices:
        raise ResourceLimitError("graph has %d vertices (bound %d)" % (g.n, args.max_vertices))
    sys.stdout.write(prime_factorization(g).report())
    return EXIT_OK


def _cmd_product(args) -> int:
    a, b = (load_graph(s) for s in args.graphs)
    print(graph6_encode(cartesian_product(a, b, max_vertices=args.max_vertices)))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.max_order > DEFAULT_SWEEP_MAX_ORDER:
        raise ResourceLimitError("sweep is limited to order %d" % DEFAULT_SWEEP_MAX_ORDER)
    rows = theorem_sweep(args.max_order, args.budget)
    sys.stdout.write(sweep_report(rows, timings=args.timings))
    return EXIT_OK if all(r.valid for r in rows) else EXIT_FAIL


def _cmd_catalog(args) -> int:
    if args.max_order > COMPLETE_UP_TO:
        raise ResourceLimitError("catalog is complete only up to order %d" % COMPLETE_UP_TO)
    for entry in catalog_entries(args.max_order):
        print("%s\t%d\t%s" % (entry.name, entry.order, classify_group(entry.table)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicayley",
        description="Vertex-transitive normal bi-Cayley graphs for small groups.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="construct and certify a witness for one group")
    p.add_argument("--group", required=True, help="catalog name (Q8, D12, C2^3, E5...) or group file")
    p.add_argument("--out", help="write the certificate here and the graph6 string to OUT.g6")
    p.add_argument("--max-order", type=int, default=DEFAULT_BUILD_MAX_ORDER, help="largest group order accepted")
    p.add_argument("--budget", type=int, default=None, help="cap on candidates examined by searches")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="recompute every field of a certificate")
    p.add_argument("--cert", required=True, help="certificate file written by build")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES, help="largest graph accepted")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("aut", help="automorphism group generators and order")
    p.add_argument("--graph", required=True, help="graph6 string, graph file, or name (Qn:3, Cn:5, Kn:4, Pn:3, GP83, K2)")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES, help="largest graph accepted")
    p.set_defaults(func=_cmd_aut)

    p = sub.add_parser("factor", help="prime factorization under the Cartesian product")
    p.add_argument("--graph", required=True, help="graph6 string, graph file, or name")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES, help="largest graph accepted")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("product", help="graph6 of the Cartesian product of two graphs")
    p.add_argument("--graphs", nargs=2, required=True, metavar="G", help="two graphs (graph6, file, or name)")
    p.add_argument("--max-vertices", type=int, default=4096, help="largest product accepted")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("sweep", help="certify every catalog group up to an order")
    p.add_argument("--max-order", type=int, default=DEFAULT_SWEEP_MAX_ORDER, help="largest group order (at most 16)")
    p.add_argument("--budget", type=int, default=None, help="cap on candidates examined by searches")
    p.add_argument("--timings", action="store_true", help="append a wall-time column (output is then not reproducible)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("catalog", help="list catalog groups with their class")
    p.add_argument("--max-order", type=int, default=COMPLETE_UP_TO, help="largest group order (at most 16)")
    p.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print("error: verification failed: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    except SearchInconclusive as exc:
        print("error: inconclusive: %s" % exc, file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ResourceLimitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, ValidationError, PreconditionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print("error: %s" % exc.args[0], file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
