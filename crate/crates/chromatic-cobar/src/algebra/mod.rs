//! Exact 2-local arithmetic, graded sparse polynomials over the `v`/`t`
//! generator alphabet, and truncated power series. The substrate for every
//! other module.

mod gen;
mod modulus;
mod poly;
mod rational;
mod series;

pub use gen::{Family, Gen};
pub use modulus::Modulus;
pub use poly::{Degree, Mono, Poly};
pub use rational::{binomial, nu2_bigint, nu2_i64, Nu2, Rat};
pub use series::{Bivar, Coeff, Series};
