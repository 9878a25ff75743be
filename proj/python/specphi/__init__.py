"""Edge expansion, spectral gaps, mixing times, capacity, and tensor walks.

The heavy lifting lives in the C++ extension `_specphi`; this package
re-exports its surface.
"""

from ._specphi import (  # noqa: F401
    Cut,
    CapacityReport,
    ExpansionReport,
    FixedPointReport,
    GammaReport,
    Interval,
    MainTheoremReport,
    MixingReport,
    NotIrreducibleError,
    PerronData,
    SpecphiError,
    Tensor,
    balance,
    beyond_half,
    capacity,
    chet,
    counterexample_tensor,
    debruijn,
    eigenvalues,
    exp_operator,
    expected_visits,
    fixed_point_iterate,
    fixed_point_residual,
    gamma,
    hitting_probability,
    induced_matrix,
    is_irreducible,
    is_two_line_stochastic,
    klawe_vazirani,
    lazify,
    mixing_report,
    mixing_time,
    mu_expansion,
    normalized_capacity,
    perron,
    phi_exact,
    phi_interval_scan,
    rootn,
    rootn_fractions,
    singular_values,
    spectral_gap,
    tensor_step,
    verify_main_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
