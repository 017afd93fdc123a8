"""fibcat: a finite 2-category engine for bundles, fibrations and their
preservation under indexed endofunctors."""

from .core import (
    FibcatError, SizeExceeded, CategoryInvalid, DomainMismatch,
    CodomainMismatch, BoundaryMismatch, UnknownObject, SquareDoesNotCommute,
    NotAPullback, PastingMismatch, IncompatibleData, InvalidCleavage,
    NotProne, TheoremViolation,
    FinCategory, FinFunctor, NatTrans,
    identity_functor, compose_functors, invert_functor, constant_functor,
    identity_nat, vcompose_nat, whisker_left, whisker_right, hcompose_nat,
    op_dual, op_functor, op_nat,
    terminal_category, pick_object, chain_category, discrete_category,
    walking_iso_category, size_limits,
)
from .constructions import (
    PullbackResult, pullback, mediate_pullback, is_pullback_square,
    pullback_comparison,
    CommaResult, comma, mediate_comma, extract_comma, mediate_comma_2cell,
    phi, Span, OpSpan, span_compose, comma_via_spans, iso_search,
)
from .arrowcat import (
    Bundle, BundleSquare, BundleTwoCell,
    identity_square, compose_squares, identity_twocell, vcompose_twocells,
    op_bundle, op_square, op_twocell,
    is_prone, is_supine, vertical_prone_factorize, fibre, lift_2cell_prone,
    I_of, cc_square, check_yanking, cc_naturality,
)
from .street import (
    L_obj, L_bundle, L_mor, L_2cell, i_component, c_component,
    verify_L_monad, R_obj, R_obj_direct, r_agrees_with_direct,
    K_n, K_square, d0K_component, d1K_component, iK_component, cK_component,
    verify_K_lemmas,
)
from .algebra import (
    Cleavage, PseudoAlgebra, chevalley_tilde, find_left_adjoint,
    is_opfibration, is_fibration, is_pseudo_opfibration, is_pseudo_fibration,
    direct_supine_oracle, direct_prone_oracle, cleavage_to_algebra,
    free_algebra, verify_pseudoalgebra, verify_lax_homomorphism,
    verify_chevalley_vs_oracle, verify_duality,
)
from .transport import (
    IndexedEndofunctor, identity_endofunctor, const_fiber, fiber_power,
    slice_endofunctor, builtin_functors, validate_indexed,
    psi_n, Psi_component, verify_transition, lift_algebra, check_preservation,
)
from .report import Report, timed_check, all_ok, emit_report, emit_csv
