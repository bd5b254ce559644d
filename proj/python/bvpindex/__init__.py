"""Topological indices of discretized two-point boundary value problems.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    BvpIndexError,
    Discretization,
    Expression,
    IndexResult,
    OperatorPencil,
    ProblemSpec,
    ReducedMap,
    SpectralStructure,
    __version__,
    analyze_json,
    analyze_pencil,
    assemble_residual,
    build_reduced_map,
    check_homogeneity,
    degree_1d,
    degree_2d_winding,
    degree_homogeneous,
    degree_nd_regular,
    dirichlet_zero_check,
    embedding_constant,
    find_solutions_newton,
    find_solutions_shooting,
    index_at_infinity,
    index_at_zero,
    infinity_side_pencil,
    kronecker_check,
    monotonicity_probe,
    resonance_align,
    run_acceptance,
    run_verdict,
    selftest_ids,
    spectrum_json,
    zero_side_pencil,
)
