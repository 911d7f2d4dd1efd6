//! Scaling analysis: analytic bounds and regimes, the construction optimizer,
//! moment curves and exponent checks on optimized energies.

mod bounds;
mod moment;
mod optimize;
mod sweep;

pub use bounds::{
    branch_values, case_table, in_main_case, lower_bound, optimal_delam_length, sorted_regimes, thresholds,
    upper_bound, BranchValues, CaseTable, RegimeInterval, RegimeLabel, Thresholds,
};
pub use moment::{delaminated_sum, moment_curve, moment_curve_with, MomentCurve, MomentMode, MomentRow};
pub use optimize::{
    optimize_construction, optimize_construction_with, ConstructionKind, OptimizedConstruction, OptimizerSettings,
    C_STAR,
};
pub use sweep::{fit_loglog, verify_scaling, verify_scaling_with, ScalingReport, SweepParam, SweepPoint, SweepSpec};
