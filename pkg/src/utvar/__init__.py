"""Exact identity checking and free objects for upper triangular matrix
monoids over commutative semirings."""

from .semirings import (
    MINUS_INF,
    Semiring,
    SemiringMismatchError,
    from_selector,
)
from .poly import CountPoly, FormalPoly, Monomial, Var, abelianize
from .funceq import (
    EqWitness,
    FeasibilitySystem,
    StrategyUnavailableError,
    canonical_key,
    canonicalize,
    feasible,
    func_equal,
    tropical_dominated,
)
from .quiver import (
    Path,
    PathAlgebraElem,
    Quiver,
    enum_paths,
    occurrence_poly,
    occurrence_walks,
    reduce_top_vertex,
    restore_top_vertex,
    walk_monomial,
    word_image,
)
from .semidirect import SemidirectElem, from_semidirect, to_semidirect
from .variety import (
    FreeElem,
    Identity,
    UTMatrix,
    Verdict,
    all_ut_matrices,
    check_identity,
    free_elem,
    free_eq,
    free_mul,
    oracle_check,
    ut_eval,
)
from .analysis import (
    BicyclicElem,
    CayleyTable,
    EnumerationLimitError,
    TorsionWitness,
    bicyclic_embed,
    bicyclic_mul,
    enumerate_free,
    local_finiteness_report,
    prefix_abelianization_embed,
    torsion_search,
    verify_bicyclic_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "MINUS_INF", "Semiring", "SemiringMismatchError", "from_selector",
    "CountPoly", "FormalPoly", "Monomial", "Var", "abelianize",
    "EqWitness", "FeasibilitySystem", "StrategyUnavailableError",
    "canonical_key", "canonicalize", "feasible", "func_equal",
    "tropical_dominated",
    "Path", "PathAlgebraElem", "Quiver", "enum_paths", "occurrence_poly",
    "occurrence_walks", "reduce_top_vertex", "restore_top_vertex",
    "walk_monomial", "word_image",
    "SemidirectElem", "from_semidirect", "to_semidirect",
    "FreeElem", "Identity", "UTMatrix", "Verdict", "all_ut_matrices",
    "check_identity", "free_elem", "free_eq", "free_mul", "oracle_check",
    "ut_eval",
    "BicyclicElem", "CayleyTable", "EnumerationLimitError",
    "TorsionWitness", "bicyclic_embed", "bicyclic_mul", "enumerate_free",
    "local_finiteness_report", "prefix_abelianization_embed",
    "torsion_search", "verify_bicyclic_embedding",
]
