//! Numerics for the length spectrum of the modular surface: exact
//! enumeration of the geodesic "pseudo-primes" through Pell equations and
//! class numbers, counting functions and their explicit-formula
//! counterparts, partial Euler products with the renormalizers that make
//! them converge inside the critical strip, and the classical rational-prime
//! baselines they are measured against.

pub mod baselines;
pub mod counts;
pub mod datastore;
pub mod error;
pub mod euler;
pub mod quadratic;
pub mod specfun;
pub mod spectral;
pub mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
