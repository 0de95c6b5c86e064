//! Coverage verdicts, the incidence constructions behind them, bound reports
//! and the threshold exponent.

mod bounds;
mod construct;
mod expr;
mod threshold;

pub use bounds::{
    lemma_energy_report, square_sum_counts, thm2_report, variant_bounds_report, BoundCheck,
    BoundReport, ExactValue, NamedValue, SquareSumCounts,
};
pub use construct::{
    construction_sweep, thm14_construction, thm15_construction, thm1_construction, Construction,
    ConstructionReport, EngineMode, Prepared, SweepSummary, ENGINE_WORK_BUDGET,
};
pub use expr::{coverage, evaluate_expression, Base, CoverageVerdict, SumExpression, Term};
pub use threshold::{threshold_exponent, ThresholdExponent, MAX_THRESHOLD_DIMENSION};
