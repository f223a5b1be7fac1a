"""Coherence and spin squeezing of superposed spin coherent states."""

__version__ = "0.1.0"

from .closedform import (
    MomentSet,
    cartesian_moments,
    factorial_moment,
    g2,
    g2_number_state,
    generating_function,
    gtilde,
    gtilde_derivative,
    j1_even_xi,
    j1_even_xi_y,
    jminus2_expect,
    jminus_expect,
    n_moments,
)
from .errors import (
    DegenerateSuperpositionError,
    InternalConsistencyError,
    NoCrossingError,
    NotHermitianError,
    PoleError,
    SpaceMismatchError,
    SpinError,
    UndefinedCorrelationError,
)
from .spinspace import (
    SpinOperator,
    SpinSpace,
    SpinState,
    apply,
    expectation,
    inner,
    number_state,
    op_identity,
    op_jminus,
    op_jplus,
    op_jx,
    op_jy,
    op_jz,
    op_number,
    variance,
)
from .squeezing import (
    Marker,
    SqueezingReport,
    UnitVector,
    complete_triad,
    find_critical_eta,
    mean_spin_direction,
    xi_squared_oracle,
    xi_xyz_closedform,
)
from .states import (
    SscsParams,
    global_phase_fidelity,
    one_axis_twist,
    scs,
    scs_overlap_minus,
    sscs,
    sscs_cross_overlap,
    xi_param,
)
