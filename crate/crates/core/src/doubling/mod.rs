//! Doubling index, its almost-monotonicity, the three-ball inequality and
//! growth of the maximal index in the potential bound.

pub mod growth;
pub mod index;
pub mod monotonicity;
pub mod three_ball;

pub use growth::{check_doubling_growth, GrowthMember, GrowthRow, GrowthTable};
pub use index::{
    ball_norm, ball_sup, doubling_index, max_doubling_index, max_doubling_index_with, BallNorm,
    DoublingReport, MaxIndex, ProbePlan,
};
pub use monotonicity::{
    check_monotonicity, fit_monotonicity, unexplained_violations, write_monotonicity_csv,
    MonotonicityFit, MonotonicityRecord, ViolationKind,
};
pub use three_ball::{
    check_three_ball, theta_ladder, three_ball_exponents, ThreeBallExponents, ThreeBallParams,
    ThreeBallRecord,
};
