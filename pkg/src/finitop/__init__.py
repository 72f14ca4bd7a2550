"""Finite topological spaces: envelopes, hyperspaces, limit sets and block algebras."""

from .capacity import max_size, max_size_override, set_max_size
from .cofinite import COFINITE, COFULL, CofiniteMap, SymbolicSet
from .corpus import all_posets, named_spaces, posets_up_to_iso, random_poset
from .cstar import (
    BlockAlgebra,
    BlockIdeal,
    IdealLattice,
    delta,
    min_primal,
    phi,
    prime_space,
    prim_space,
    psi,
    verify_hull_identities,
    verify_map_facts,
    verify_theorem_min,
)
from .envelope import extend_to_envelope, is_prime, sobrify
from .errors import CapacityError, FinitopError, InvalidInput, ParseError, UnknownReference
from .hyperspace import build_hyperspace, embed_point, hit_set
from .kernels import backend, set_backend, using_backend
from .limits import is_limit_set, max_limit_sets, primal_check
from .poset import (
    FinitePoset,
    PointSet,
    SpaceMap,
    closure,
    is_continuous,
    is_dense,
    is_homeomorphism_onto_image,
    product,
)
from .retraction import (
    RetractionConfig,
    build_theta,
    cfg0,
    check_hypothesis,
    search_counterexample,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "BlockAlgebra", "BlockIdeal", "COFINITE", "COFULL", "CapacityError", "CofiniteMap",
    "FinitePoset", "FinitopError", "IdealLattice", "InvalidInput", "ParseError", "PointSet",
    "RetractionConfig", "SpaceMap", "SymbolicSet", "UnknownReference",
    "all_posets", "backend", "build_hyperspace", "build_theta", "cfg0", "check_hypothesis",
    "closure", "delta", "embed_point", "extend_to_envelope", "hit_set", "is_continuous",
    "is_dense", "is_homeomorphism_onto_image", "is_limit_set", "is_prime", "max_limit_sets",
    "max_size", "max_size_override", "min_primal", "named_spaces", "phi", "posets_up_to_iso",
    "prim_space", "primal_check", "prime_space", "product", "psi", "random_poset",
    "search_counterexample", "set_backend", "set_max_size", "sobrify", "using_backend",
    "validate_config", "verify_hull_identities", "verify_map_facts", "verify_theorem_min",
]
