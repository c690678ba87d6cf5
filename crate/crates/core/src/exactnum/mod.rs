//! Exact rational and cyclotomic arithmetic.

mod cyclotomic;
mod lattice;
mod numtheory;
mod rational;
mod subfield;

pub use cyclotomic::{Cyclotomic, CyclotomicLiteral, GaloisAutomorphism};
pub use lattice::integer_kernel;
pub use numtheory::{cyclotomic_polynomial, divisors, euler_phi, mobius, units_mod};
pub use rational::{parse_rational, rational_to_string, Rational, RationalLiteral};
pub use subfield::CyclotomicSubfield;
