"""Discrete Weyl-Wigner phase space on the torus.

Operator bases of translations and reflections on the Z_{2d} x Z_{2d}
lattice, center/chord transforms of operators and states, line projectors
and marginals, the pure-state identity catalogue with localization
measures, SIC fiducial search, and superoperator propagation in double
phase space.
"""

from .errors import (
    DimensionMismatch,
    EmptyList,
    EvenDimension,
    FileFormatError,
    KindMismatch,
    NonOrthogonal,
    NotNormalized,
    NotUnitary,
    SymmetryViolation,
    TorusWeylError,
    ZeroDirection,
)
from .lattice import PhasePoint, TorusDim, delta_mod, eta_pow, symplectic, tau_pow
from .weylops import (
    parity,
    reflection,
    reflection_from_translations,
    schwinger_u,
    schwinger_v,
    translation,
)
from .phase_repr import (
    DensityMatrix,
    PhaseArray,
    PureState,
    center_repr,
    chord_repr,
    coherent_state,
    odd_d_restrict,
    position_state,
    reconstruct,
    symplectic_ft,
    wigner,
)
from .lines import LineSpec, line_operator, line_points, translation_order, wigner_marginal
from .identities import (
    IdentityReport,
    LocalizationReport,
    cat_coherence,
    localization,
    main_formula_center,
    main_formula_chord,
    pure_state_suite,
    transition_functions,
)
from .sic_opt import SearchConfig, SearchResult, search, verify_fiducial, welch_bound
from .doublespace import (
    DoublePoint,
    SuperOperator,
    WignerKernel,
    double_symplectic,
    kraus_superop,
    super_reflection,
    super_translation,
    unitary_superop,
    wigner_propagator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
