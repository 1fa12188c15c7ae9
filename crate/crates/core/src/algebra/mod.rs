//! Exact polynomial arithmetic over ℚ and ℚ(t).

pub mod factor;
pub mod field;
pub mod gcd;
pub mod laurent;
pub mod mpoly;
pub mod parse;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod upoly;

pub use factor::{factorize, Factorization};
pub use field::Field;
pub use mpoly::{KPoly, MultiPoly, QPoly};
pub use ratfunc::RatFunc;
pub use rational::{Integer, Rational};
pub use upoly::UniPoly;
