"""Exact symbolic engine for motivic curve-and-point partition functions.

Public surface: the motivic weight ring and its specialisations, truncated
series, the plethystic Exp/Log and power structure, the named partition
functions and their identity checks, the diagonal relative model, the quiver
toolkit and the combinatorial oracles.
"""

from .motives import (
    AFFINE3,
    AFFINE_LINE,
    CONIFOLD,
    EffectiveDecomposition,
    GM,
    L,
    L_HALF,
    MotiveClass,
    NotInvertibleError,
    ONE,
    PROJ_LINE,
    WeightPolynomial,
    ZERO,
    curve_class,
    from_int,
    half_power,
    smooth_virtual,
)
from .series import (
    BigradedSeries,
    MotiveSeries,
    extract_T_linear,
    first_discrepancy,
    product_expand,
)
from .lambda_ops import exp, log, macdonald_curve_zeta, power, sigma_n, zeta
from .partition_functions import (
    GeometryInput,
    conifold_wallcross_check,
    dt_numbers,
    equivalent_product_form,
    exp_form_general,
    f_curv,
    flip_sign,
    genus_curve,
    line_in_affine3,
    local_quot_exp_form,
    omega_bbs,
    omega_curv,
    omega_twisted,
    q_quot,
    q_quot_factored,
    resolved_conifold,
    twisted_omega_check,
    z0,
    z_dt_conifold,
    z_hilb,
    z_pt_conifold,
)
from .relative import (
    DiagonalAtom,
    DiagonalRelativeSeries,
    SupportLabel,
    boxtimes_cup,
    fiber_at_point,
    pushforward_absolute,
)
from .oracles import (
    Partition,
    config_space_class,
    euler_wallcross_series,
    partitions,
    plane_partitions_count,
    virtual_chi_smooth,
)
from .checks import CheckResult, run_all, run_check

__version__ = "0.1.0"
