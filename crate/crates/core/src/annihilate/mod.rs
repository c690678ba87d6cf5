//! Mock class modules and the reduction-identity checks.

mod module;
mod reduction;

pub use module::{AnnihilationReport, MockClassModule, MockClassModuleFile};
pub use reduction::{brumer_stark_exponents, verify_reduction_identity, BrumerStarkExponents, Exponent, ReductionCheck};
