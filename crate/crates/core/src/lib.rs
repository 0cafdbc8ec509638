//! Exact counts of irreducible polynomials of a given total degree in
//! `F_q[x_1, ..., x_m]`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`numeric`]: big integers, exact rationals, binomials, Moebius, prime powers.
//! - [`partitions`]: streaming enumeration of partitions of `d` into `k` parts.
//! - [`counting`]: closed forms for `N_m(d)`, the torsion product and the
//!   bottom-up recursion for `I_m(d)` and `S_k(d)`.
//! - [`oracle`]: brute-force enumeration of normalized polynomials over a
//!   prime field, used to certify the recursion.
//!
//! ```
//! use polycount_core::counting::{count_irreducible, CountingParams};
//!
//! let params = CountingParams::new(2, 2).unwrap();
//! assert_eq!(count_irreducible(&params, 4).unwrap().to_string(), "26089");
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod partitions;

pub use error::{Error, Result};
pub use numeric::{BigCount, ExactRatio};
