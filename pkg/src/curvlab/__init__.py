"""curvlab: critical geodesic curvature, admissibility, and period integrals
on model surfaces of nonpositive curvature."""

__version__ = "0.1.0"

from .admissibility import (
    check_curve,
    circle_radius_threshold,
    constant_ray_profiles,
    criterion_band,
)
from .curves import (
    ParamCurve,
    curve_from_curvature,
    curve_from_spec,
    euclidean_circle,
    euclidean_point,
    euclidean_segment,
    hyperbolic_circle,
    hyperbolic_geodesic,
    hyperbolic_horocycle,
    hyperbolic_point,
    torus_circle,
    torus_segment,
)
from .kcrit import (
    CriticalCurvatureEstimate,
    kcrit_bounded_backward,
    kcrit_cross_validate,
    kcrit_shooting,
)
from .ode import (
    CircleCurvatureCurve,
    JacobiSolution,
    RiccatiTrajectory,
    circle_curvature,
    solve_jacobi,
    solve_riccati,
)
from .periods import (
    DecayFit,
    PeriodIntegralRecord,
    TorusEigenfunction,
    decay_scan,
    extremal_period_norm,
    kuznecov_sum,
    oscillatory_integral,
    segment_saturation,
    windowed_sum,
    zonal_great_circle,
)
from .phase import (
    ModelCurvePair,
    PhaseEvaluation,
    check_mixed_bound,
    check_pure_second,
    model_distance,
    phase_eval,
)
from .profiles import (
    CurvatureProfile,
    SurfaceModel,
    WeightWindow,
    EUCLIDEAN,
    FLAT_TORUS,
    HYPERBOLIC,
    ROUND_SPHERE,
    make_bump_window,
    make_constant_profile,
    make_piecewise_constant_profile,
    make_sampled_profile,
    make_uniform_window,
    scale_profile,
)
from .lattice import LatticeCircle, lattice_circle, r2_count
from .special import bessel_j0, legendre_p
