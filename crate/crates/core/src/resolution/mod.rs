//! Minimal generators and syzygies extracted from the complexes `∇_m`.

mod algebra;
mod engine;
mod fragment;
mod oracle;
mod registry;
mod scan;

pub use algebra::{Binomial, GeneratorId, ModuleElement, Polynomial, Slot};
pub use engine::{DecompositionResult, Engine, EngineStats};
pub use fragment::{CheckResult, Provenance, ResolutionFragment, VerificationReport};
pub use oracle::oracle_v0;
pub use registry::{GeneratorRecord, GeneratorRegistry};
pub use scan::{ScanReport, ScanRow};

#[cfg(test)]
mod tests;
