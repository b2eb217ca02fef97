"""Two-term silting theory on small based algebras.

Algebras come with structure constants and primitive idempotents; silting
objects are lists of indecomposable two-term complexes of projectives. The
``oracle`` submodule counts support tau-tilting pairs on the module side for
cross-checking.
"""
from .algebra import (
    AlgebraError,
    BasedAlgebra,
    IdempotentsUnavailable,
    InfiniteDimensional,
    from_group_algebra,
    from_quiver,
    from_skew_coinvariant,
    path_algebra_A2,
    two_loop_algebra,
    truncated_polynomial,
    truncated_polynomial_ring,
)
from .complexes import (
    AlgebraMismatch,
    HomK,
    HomSpace,
    SupportTauTilting,
    TwoTermComplex,
    direct_sum,
    hom_in_homotopy,
    is_presilting,
    is_two_term_silting,
    silting_geq,
    support_tau_tilting_of,
)
from .mutation import (
    ApproximationFailure,
    ExchangeGraphReport,
    NotTwoTerm,
    Status,
    explore,
    initial_object,
    key_of,
    left_mutate,
    mutate,
    right_mutate,
    shifted_object,
    verify_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
