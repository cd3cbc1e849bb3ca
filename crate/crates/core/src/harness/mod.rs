//! Instance generators, structure checkers, bound formulas and sweeps.

mod bounds;
mod experiment;
mod generate;
mod structure;

pub use bounds::{
    bound_registry, bound_value, BoundError, BoundFormula, BoundValue, Clique, Crude, Cycle, Hall,
    LocallyColorable, LocallySparse, Target,
};
pub use experiment::{
    run_experiment, to_csv, ExperimentConfig, ExperimentError, ExperimentReport, Median, Row,
    Sweep, CSV_COLUMNS,
};
pub use generate::{
    generate, generator_registry, FamilySpec, GenerateError, Generator, DENSITY_TOLERANCE,
};
pub use structure::{check_structure, Property, StructureError, CLIQUE_CAP, MAX_CYCLE_LENGTH};
