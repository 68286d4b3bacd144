"""Normal bi-Cayley graphs: groups, graphs, automorphisms, Cartesian factorization and witnesses."""

from .errors import (
    BicayleyError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SearchInconclusive,
    ValidationError,
    VerificationError,
)
from .graph import BiCayleyTriple, Graph, bicayley_graph, cayley_graph
from .groups import GroupTable
from .perm import PermGroup
from .pipeline import Certificate, construct_normal_bicayley, theorem_sweep, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "BiCayleyTriple",
    "BicayleyError",
    "Certificate",
    "Graph",
    "GroupTable",
    "ParseError",
    "PermGroup",
    "PreconditionError",
    "ResourceLimitError",
    "SearchInconclusive",
    "ValidationError",
    "VerificationError",
    "bicayley_graph",
    "cayley_graph",
    "construct_normal_bicayley",
    "theorem_sweep",
    "verify_certificate",
]
