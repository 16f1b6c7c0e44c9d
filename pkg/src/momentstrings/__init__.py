"""Exact moment-problem toolkit: Jacobi matrices, Krein strings and
Hamburger Hamiltonians computed from finitely many moments."""
from .errors import *  # noqa: F401,F403
from .exact import INF, Polynomial, RationalFunction, bareiss_det, real_roots, series_at_infinity
from .moments import (
    Classification,
    DiscreteMeasure,
    HankelLedger,
    MomentSequence,
    classify,
    hankel_ledger,
    moments_from_measure,
    scale,
)
from .orthopoly import (
    BoundaryValuesZero,
    JacobiModel,
    boundary_values_zero,
    first_kind,
    jacobi_from_moments,
    ortho_polys,
    second_kind,
    wronskian_residual,
)
from .jacobi_weyl import (
    gauss_quadrature,
    jacobi_ratfun,
    m_continued_fraction,
    m_poly_ratio,
    m_resolvent,
    moment_match_check,
)
from .strings import (
    Cell,
    KreinLangerString,
    StieltjesString,
    kl_from_moments,
    kl_index_map,
    m_tilde_ode_ratfun,
    m_tilde_ratfun,
    m_truncated,
    moments_from_kl,
    propagate,
    singularity_diagnostic,
    stieltjes_from_moments,
    trace_sums,
)
from .canonical import (
    AngleData,
    HamburgerHamiltonian,
    Interval,
    euclid_decompose,
    hamiltonian_from_moments,
    hamiltonian_ratfun,
    hamiltonian_to_kl,
    hamiltonian_trajectory,
    kl_to_hamiltonian,
    lemma_recursion_check,
    transfer_matrix,
    weyl_function,
    weyl_principal,
)

__version__ = "0.1.0"
