"""Thurston obstructions of combinatorially presented branched covers of the sphere.

A map is given by its wreath recursion over the free group on the marked
points (``cover``).  Curves are conjugacy classes of words (``sphere_group``),
lifted through the recursion (``curves``).  Invariant multicurves get an exact
transition matrix whose leading eigenvalue is certified against one
(``spectral``, ``obstruction``).  For cubic maps with two fixed critical
points the obstruction is sorted into the Newton-like, quadratic-like or
removable case and checked for a Levy cycle.
"""
from .build import (
    ConstructionError,
    presentation_from_constellation,
    pure_braid,
    random_pure_braid,
    twist_presentation,
)
from .corpus import CORPUS, CorpusEntry, check_entry, corpus_dir, get_entry
from .cover import (
    CoverPresentation,
    Lift,
    OrbifoldSignature,
    PreimageTopology,
    ValidationReport,
    disk_preimage_topology,
    fixed_critical_points,
    free_critical_values,
    lift_curve,
    lift_word,
    orbifold_signature,
    validate_presentation,
    wreath_apply,
)
from .curves import (
    NOT_REALIZABLE,
    Face,
    FaceTree,
    LiftCache,
    Multicurve,
    MulticurveError,
    SaturationResult,
    essential_lifts,
    face_structure,
    is_stable,
    lift_faces_contained,
    pullback_saturate,
    standard_seeds,
)
from .fuzz import FuzzSummary, analyze_instance, fuzz_cubic, fuzz_quadratic, run_fuzz
from .generate import GeneratorConfig, generate_random_cubic_two_fixed, generate_random_quadratic
from .io import (
    PresentationParseError,
    PresentationValidationError,
    dump_presentation,
    load_curves,
    load_presentation,
    parse_presentation,
    save_curves,
    save_presentation,
)
from .obstruction import (
    COUNTEREXAMPLE,
    CONFIRMED,
    NEWTON_LIKE,
    QUADRATIC_LIKE,
    REMOVABLE_LEVY,
    CaseReport,
    LevyClassification,
    LevyCycle,
    LevyReport,
    ObstructionError,
    PreconditionError,
    StructuralReport,
    TransitionMatrix,
    Verdict,
    classify_levy,
    classify_obstruction_case,
    find_levy_cycles,
    structural_checks,
    transition_matrix,
    verify_main_theorem,
)
from .spectral import (
    DEFAULT_TOL,
    GE1,
    LT1,
    UNDECIDED,
    EigenvalueBounds,
    is_irreducible,
    leading_eigenvalue_bounds,
    leading_eigenvalue_bounds_many,
)
from .sphere_group import (
    CurveClass,
    MarkedSet,
    SidePartition,
    WordError,
    canonical_curve_class,
    canonical_word,
    conjugate,
    cyclic_reduce,
    format_word,
    free_conjugate,
    free_reduce,
    inverse,
    multiply,
    parse_word,
    side_partition,
)

__version__ = "0.1.0"

__all__ = [
    "CONFIRMED",
    "CORPUS",
    "COUNTEREXAMPLE",
    "CaseReport",
    "ConstructionError",
    "CorpusEntry",
    "CoverPresentation",
    "CurveClass",
    "DEFAULT_TOL",
    "EigenvalueBounds",
    "Face",
    "FaceTree",
    "FuzzSummary",
    "GE1",
    "GeneratorConfig",
    "LT1",
    "LevyClassification",
    "LevyCycle",
    "LevyReport",
    "Lift",
    "LiftCache",
    "MarkedSet",
    "Multicurve",
    "MulticurveError",
    "NEWTON_LIKE",
    "NOT_REALIZABLE",
    "ObstructionError",
    "OrbifoldSignature",
    "PreconditionError",
    "PreimageTopology",
    "PresentationParseError",
    "PresentationValidationError",
    "QUADRATIC_LIKE",
    "REMOVABLE_LEVY",
    "SaturationResult",
    "SidePartition",
    "StructuralReport",
    "TransitionMatrix",
    "UNDECIDED",
    "ValidationReport",
    "Verdict",
    "WordError",
    "__version__",
    "analyze_instance",
    "canonical_curve_class",
    "canonical_word",
    "check_entry",
    "classify_levy",
    "classify_obstruction_case",
    "conjugate",
    "corpus_dir",
    "cyclic_reduce",
    "disk_preimage_topology",
    "dump_presentation",
    "essential_lifts",
    "face_structure",
    "find_levy_cycles",
    "fixed_critical_points",
    "format_word",
    "free_conjugate",
    "free_critical_values",
    "free_reduce",
    "fuzz_cubic",
    "fuzz_quadratic",
    "generate_random_cubic_two_fixed",
    "generate_random_quadratic",
    "get_entry",
    "inverse",
    "is_irreducible",
    "is_stable",
    "leading_eigenvalue_bounds",
    "leading_eigenvalue_bounds_many",
    "lift_curve",
    "lift_faces_contained",
    "lift_word",
    "load_curves",
    "load_presentation",
    "multiply",
    "orbifold_signature",
    "parse_presentation",
    "parse_word",
    "presentation_from_constellation",
    "pullback_saturate",
    "pure_braid",
    "random_pure_braid",
    "run_fuzz",
    "save_curves",
    "save_presentation",
    "side_partition",
    "standard_seeds",
    "structural_checks",
    "transition_matrix",
    "twist_presentation",
    "validate_presentation",
    "verify_main_theorem",
    "wreath_apply",
]
