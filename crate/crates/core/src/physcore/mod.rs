//! Constants, ion species, Rydberg level energies and radial matrix elements.
//!
//! Everything here is in SI units.

mod constants;
mod matrix_elements;
mod species;

pub use constants::{Constants, CODATA_2018};
pub use matrix_elements::{
    radial_elements, MatrixElementModel, MatrixElementTable, RadialElements,
};
pub use species::{
    calibrated_s_defect, rydberg_energy, sp_splitting, IonSpecies, RydbergLevel,
    CA40_CALIBRATION_N, CA40_MASS_AMU, CA40_P_DEFECT, CA40_SP_SPLITTING_RAD_S, CA40_TAU0_S,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhyscoreError {
    #[error("no quantum defect for l = {l}")]
    MissingDefect { l: u32 },
    #[error("principal quantum number {n} does not exceed the quantum defect {defect}")]
    PrincipalBelowDefect { n: u32, defect: f64 },
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("invalid species: {0}")]
    InvalidSpecies(String),
    #[error("missing matrix element {0}")]
    MissingMatrixElement(String),
    #[error("invalid matrix element {0}")]
    InvalidMatrixElement(String),
    #[error("species document: {0}")]
    Parse(String),
}
