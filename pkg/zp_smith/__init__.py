"""
ZP-Smith: Smith Classes for Z_p-Complexes

Exact Smith classes, Smith indices and moduli sequences of finite simplicial
complexes with free Z_p-actions, certificates for torsion classes, and their
application to embeddability of joins via deleted joins.

Example:
    from zp_smith import SmithComputation, example_a, to_free_chain_complex

    computation = SmithComputation(to_free_chain_complex(example_a(1)))
    computation.index(), computation.index_mod(1), computation.moduli().values
    # (3, 2, (2, 4))
"""

__version__ = "26.10.0"
__author__ = "Nehemiah Jacob"

# Complexes and operators
from zp_smith.complex import (
    Chain,
    Cochain,
    FreeZpChainComplex,
    SimplicialComplex,
    ZpComplex,
    apply_d,
    apply_s,
    apply_sq,
    apply_t,
    boundary,
    build_complex,
    coboundary,
    make_zp_complex,
    to_free_chain_complex,
    validate_zp,
)

# Exact linear algebra
from zp_smith.linalg import IntMatrix, MemoryCapExceeded, image_membership, snf, solve

# Smith classes
from zp_smith.smith import (
    ModuliSequence,
    Resolution,
    ResolutionError,
    SmithClassReport,
    SmithComputation,
    TheoremViolation,
    build_resolution,
    moduli_sequence,
    shorten_resolution,
    smith_class,
    smith_index,
    smith_index_mod,
    validate_resolution,
)

# Certificates
from zp_smith.certificates import (
    Certificate,
    SupportViolation,
    boundary_equivariant,
    certificate_for_cocycle,
    find_boundary_equivariant_dual,
    find_certificate,
    verify_certificate_d,
    verify_certificate_s,
)

# Joins
from zp_smith.joins import (
    JoinComplex,
    JoinResolution,
    check_operator_identity,
    join,
    join_resolution,
    simplicial_join,
    tensor_join,
)

# Deleted joins and products
from zp_smith.deleted import DeletedJoin, DeletedProduct, deleted_join, deleted_product

# Embeddability
from zp_smith.embedding import ObstructionReport, Verdict, embed_verdict, van_kampen_obstruction

# Corpus
from zp_smith.corpus import (
    CORPUS,
    build,
    example_a,
    example_b,
    melikhov,
    sigma,
    skeleton,
    sphere,
)

# Response utilities
from zp_smith.response import SmithResponse

# Configuration
from zp_smith.conf import smith_settings

__all__ = [
    # Version
    "__version__",
    # Complexes
    "Chain",
    "Cochain",
    "FreeZpChainComplex",
    "SimplicialComplex",
    "ZpComplex",
    "apply_d",
    "apply_s",
    "apply_sq",
    "apply_t",
    "boundary",
    "build_complex",
    "coboundary",
    "make_zp_complex",
    "to_free_chain_complex",
    "validate_zp",
    # Linear algebra
    "IntMatrix",
    "MemoryCapExceeded",
    "image_membership",
    "snf",
    "solve",
    # Smith classes
    "ModuliSequence",
    "Resolution",
    "ResolutionError",
    "SmithClassReport",
    "SmithComputation",
    "TheoremViolation",
    "build_resolution",
    "moduli_sequence",
    "shorten_resolution",
    "smith_class",
    "smith_index",
    "smith_index_mod",
    "validate_resolution",
    # Certificates
    "Certificate",
    "SupportViolation",
    "boundary_equivariant",
    "certificate_for_cocycle",
    "find_boundary_equivariant_dual",
    "find_certificate",
    "verify_certificate_d",
    "verify_certificate_s",
    # Joins
    "JoinComplex",
    "JoinResolution",
    "check_operator_identity",
    "join",
    "join_resolution",
    "simplicial_join",
    "tensor_join",
    # Deleted joins and products
    "DeletedJoin",
    "DeletedProduct",
    "deleted_join",
    "deleted_product",
    # Embeddability
    "ObstructionReport",
    "Verdict",
    "embed_verdict",
    "van_kampen_obstruction",
    # Corpus
    "CORPUS",
    "build",
    "example_a",
    "example_b",
    "melikhov",
    "sigma",
    "skeleton",
    "sphere",
    # Response
    "SmithResponse",
    # Settings
    "smith_settings",
]
