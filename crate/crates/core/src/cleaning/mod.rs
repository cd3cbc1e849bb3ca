//! Degree cleaning of uniform hypergraphs and the checks that go with it.

mod analysis;
mod engine;
mod params;
mod verify;
mod weighted;

pub use analysis::{
    ceil_bound, crude_bound, stop_case_analysis, AnalysisError, BoundChain, BoundLink,
    DelegateOutcome, LinkStatus, SideCondition,
};
pub use engine::{
    potential, run_cleaning, CleaningError, CleaningStep, CleaningTranscript, Diagnostics,
    StageState, StopCase, StopChecks, TieBreak,
};
pub use params::{
    derive_parameters, derive_parameters_with_window, eta_bound, slack_factor, CleaningParameters,
    ParamsError, DEFAULT_LAMBDA0,
};
pub use verify::{
    at_least, potential_dominates, verify_potential_gain, PotentialGainReport, VerificationFailure,
    ROOT_TOLERANCE,
};
pub use weighted::{
    run_weighted_cleaning, verify_weighted_gain, WeightedCleaningError, WeightedStage,
    WeightedStep, WeightedTranscript,
};
