use core::fmt;

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Degrees start at 1; constants are units.
    InvalidDegree(u32),
    /// Moebius function evaluated at 0.
    MoebiusOfZero,
    NotPrimePower(u64),
    NotPrime(u64),
    InvalidVariableCount(u32),
    /// `k` outside `1..=d` for a partition request.
    InvalidPartShape {
        d: u32,
        k: u32,
    },
    /// A division that must be exact left a remainder.
    InexactDivision(&'static str),
    /// A lower degree needed by the recursion is not in the table.
    MissingDegree {
        needed: u32,
        available: u32,
    },
    /// A binomial exponent does not fit the machine word used for `pow`.
    ExponentOverflow,
    /// Brute-force enumeration would exceed the candidate limit.
    GuardExceeded {
        candidates: String,
        limit: u64,
    },
    /// Polynomials from incompatible rings were combined.
    RingMismatch,
    /// A product or embedding needs more degree than the ring provides.
    DegreeBoundExceeded {
        needed: u32,
        bound: u32,
    },
    /// One-byte coefficient encoding limits the oracle to p < 256.
    FieldTooLarge(u64),
    /// Too many monomials for the dense product table.
    RingTooLarge {
        monomials: usize,
    },
    /// The brute-force enumeration contradicted itself.
    OracleInconsistent(String),
    /// An imported count table violates an accounting identity.
    InvalidTable(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDegree(d) => write!(f, "degree must be at least 1 (got {d})"),
            Error::MoebiusOfZero => f.write_str("moebius is undefined at 0"),
            Error::NotPrimePower(q) => write!(f, "q = {q} is not a prime power"),
            Error::NotPrime(p) => write!(f, "oracle requires prime q (got {p})"),
            Error::InvalidVariableCount(m) => {
                write!(f, "variable count must be at least 1 (got {m})")
            }
            Error::InvalidPartShape { d, k } => {
                write!(
                    f,
                    "number of parts must satisfy 1 <= k <= d (got d = {d}, k = {k})"
                )
            }
            Error::InexactDivision(what) => write!(f, "inexact division in {what}"),
            Error::MissingDegree { needed, available } => write!(
                f,
                "degree {needed} is required but the table only covers 1..={available}"
            ),
            Error::ExponentOverflow => f.write_str("exponent does not fit in 32 bits"),
            Error::GuardExceeded { candidates, limit } => write!(
                f,
                "brute force infeasible: {candidates} candidates exceed the limit of {limit}"
            ),
            Error::RingMismatch => f.write_str("polynomials belong to different rings"),
            Error::DegreeBoundExceeded { needed, bound } => {
                write!(f, "degree {needed} exceeds the ring's degree bound {bound}")
            }
            Error::FieldTooLarge(p) => write!(f, "oracle supports primes below 256 (got {p})"),
            Error::RingTooLarge { monomials } => {
                write!(
                    f,
                    "{monomials} monomials is too many for a dense polynomial ring"
                )
            }
            Error::OracleInconsistent(why) => write!(f, "oracle inconsistency: {why}"),
            Error::InvalidTable(why) => write!(f, "invalid count table: {why}"),
        }
    }
}

impl core::error::Error for Error {}
