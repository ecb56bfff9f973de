//! Weights, `τ` admissibility and discrete checks of the weighted
//! inequalities.

pub mod bilaplace;
pub mod boundary;
pub mod caccioppoli;
pub mod interior;
pub mod laplace;
pub mod propagation;
pub mod report;
pub mod weights;

pub use bilaplace::{check_carleman_bilaplace, doubled_tau, tau_scaling, TauScaling};
pub use boundary::{check_carleman_boundary, HALF_BALL_RADIUS};
pub use caccioppoli::{
    cauchy_data_norm, check_caccioppoli_boundary, check_caccioppoli_interior, ShellRadii,
};
pub use interior::{check_carleman_classical, check_carleman_interior, dilation_sweep, DilationSweep};
pub use laplace::{check_carleman_laplace, Measure};
pub use propagation::{check_propagation, propagation_exponents, PropagationExponents, PropagationReport};
pub use report::{relative_spread, CarlemanCheckReport, Direction, Terms};
pub use weights::{
    tau_admissible, weight_g, weight_phi, TauFlags, TauLemma, WeightPhi, WeightPsi,
};
