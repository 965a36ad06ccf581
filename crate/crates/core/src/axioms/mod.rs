//! Executable axiom checks and the characterization harness.

mod battery;
mod catalogue;
mod checks;
mod report;
mod suite;

pub use battery::{
    affine_line_cover, default_corpus, projective_line, projective_line_refined, spec_d3_d4,
    Battery, ClosedProbe, F1Probe, OpenProbe, SchemeProbe,
};
pub use catalogue::small_rings;
pub use checks::{
    check_f1_affine, check_f2, check_f3, check_f4star, check_f5, check_f6, check_local_coverage,
    check_product_analog,
};
pub use report::{AxiomReport, CharacterizationReport, CharacterizationRow, Verdict, Witness};
pub use suite::{
    check_lifts, run_suite, LiftSummary, SuiteOptions, SuiteReport, EXHAUSTIVE_LIFT_RING_SIZE,
    EXHAUSTIVE_LIFT_TERMS,
};
