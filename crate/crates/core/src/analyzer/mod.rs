//! Closed-form fitting, period detection and verification of known and
//! conjectured patterns in determinant sequences.

pub mod conjectures;
pub mod families;
mod fit;
mod period;
mod report;
pub mod theorems;

pub use conjectures::{verify_conjectures, ConjectureRun};
pub use families::{verify_families, FamilyRun};
pub use fit::{fit_quasi_poly, interpolate, residue_samples, ClosedForm, SignMode};
pub use period::{
    detect_period, fit_all_residues, samples_needed, PeriodFit, PeriodReport, PeriodSearch, PeriodSummary,
};
pub use report::{Counterexample, Status, VerificationReport};
pub use theorems::{published_closed_forms, verify_theorems};
