//! Subsumption closure and fact-base saturation.

mod closure;
mod saturate;

pub use closure::{closure, find_cycles, CycleError, SubsumptionClosure};
pub use saturate::{saturate, Derivation, Entry, FactBase, RuleId};
