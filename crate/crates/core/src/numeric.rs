//! Exact integer and rational arithmetic plus the small number-theoretic
//! helpers used by the counting code.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer holding every count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn pow(&self, exp: u32) -> Self {
        BigCount(Pow::pow(&self.0, exp))
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &BigCount) -> Option<BigCount> {
        if self.0 >= rhs.0 {
            Some(BigCount(&self.0 - &rhs.0))
        } else {
            None
        }
    }

    /// Quotient of an exact division; `what` names the caller in the error.
    pub fn div_exact(&self, rhs: &BigCount, what: &'static str) -> Result<BigCount> {
        if rhs.is_zero() {
            return Err(Error::InexactDivision(what));
        }
        let (quot, rem) = self.0.div_rem(&rhs.0);
        if rem.is_zero() {
            Ok(BigCount(quot))
        } else {
            Err(Error::InexactDivision(what))
        }
    }

    /// Number of bits in the binary representation.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u32> for BigCount {
    fn from(v: u32) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Parses a plain decimal string (digits only).
impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        s.parse::<BigUint>().map(BigCount)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl<'a> AddAssign<&'a BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &'a BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl<'a> MulAssign<&'a BigCount> for BigCount {
    fn mul_assign(&mut self, rhs: &'a BigCount) {
        self.0 *= &rhs.0;
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::one(), |acc, x| acc * x)
    }
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    /// Fails with [`Error::InexactDivision`] on a zero denominator.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InexactDivision("ratio with zero denominator"));
        }
        Ok(ExactRatio(BigRational::new(numerator, denominator)))
    }

    pub fn from_counts(numerator: &BigCount, denominator: &BigCount) -> Result<Self> {
        Self::new(numerator.to_bigint(), denominator.to_bigint())
    }

    pub fn from_integer(v: i64) -> Self {
        ExactRatio(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRatio(self.0.abs())
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        ExactRatio(BigRational::one() - &self.0)
    }

    pub fn checked_div(&self, rhs: &ExactRatio) -> Option<ExactRatio> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(ExactRatio(&self.0 / &rhs.0))
        }
    }

    /// Nearest-ish float for reports; exact values never go through this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point rendering with `precision` fractional digits, rounding
    /// half to even. A precision of 0 renders the rounded integer.
    pub fn render_decimal(&self, precision: u32) -> String {
        let (negative, mut digits, rem_twice_cmp) = self.scaled_division(precision);
        match rem_twice_cmp {
            Ordering::Greater => digits += 1u32,
            Ordering::Equal if digits.is_odd() => digits += 1u32,
            _ => {}
        }
        format_fixed(negative, &digits, precision)
    }

    /// The first `precision` fractional digits of the exact expansion,
    /// without rounding.
    pub fn truncate_decimal(&self, precision: u32) -> String {
        let (negative, digits, _) = self.scaled_division(precision);
        format_fixed(negative, &digits, precision)
    }

    /// True when the decimal expansion terminates within `precision` digits.
    pub fn is_exact_at(&self, precision: u32) -> bool {
        let scaled = self.0.numer().magnitude() * Pow::pow(BigUint::from(10u32), precision);
        (scaled % self.0.denom().magnitude()).is_zero()
    }

    /// Returns (sign, |self| * 10^p truncated, comparison of 2*remainder with denominator).
    fn scaled_division(&self, precision: u32) -> (bool, BigUint, Ordering) {
        let num = self.0.numer();
        let den = self.0.denom().magnitude();
        let scaled = num.magnitude() * Pow::pow(BigUint::from(10u32), precision);
        let (digits, rem) = scaled.div_rem(den);
        let twice: BigUint = rem << 1u32;
        (num.sign() == Sign::Minus, digits, twice.cmp(den))
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

impl<'a> Add<&'a ExactRatio> for &ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: &'a ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 + &rhs.0)
    }
}

impl<'a> core::ops::Sub<&'a ExactRatio> for &ExactRatio {
    type Output = ExactRatio;
    fn sub(self, rhs: &'a ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a ExactRatio> for &ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: &'a ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &rhs.0)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

fn format_fixed(negative: bool, digits: &BigUint, precision: u32) -> String {
    use alloc::format;
    let scale = Pow::pow(BigUint::from(10u32), precision);
    let (int_part, frac_part) = digits.div_rem(&scale);
    let sign = if negative && !digits.is_zero() {
        "-"
    } else {
        ""
    };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac_part:0>width$}",
            width = precision as usize
        )
    }
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigCount(acc)
}

/// Multiset coefficient `C(ell + alpha - 1, alpha)`: ways to pick `alpha`
/// items with repetition from `ell` kinds.
pub fn multiset_coefficient(ell: &BigCount, alpha: u32) -> BigCount {
    let mut acc = BigUint::one();
    for i in 0..alpha {
        acc *= &ell.0 + i;
        acc /= i + 1;
    }
    BigCount(acc)
}

/// Moebius function via trial division.
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::MoebiusOfZero);
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// `Some((p, n))` when `q = p^n` with `p` prime and `n >= 1`.
pub fn is_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    let smallest = loop {
        if p.saturating_mul(p) > q {
            break q;
        }
        if q.is_multiple_of(p) {
            break p;
        }
        p += if p == 2 { 1 } else { 2 };
    };
    let mut rest = q;
    let mut exp = 0u32;
    while rest.is_multiple_of(smallest) {
        rest /= smallest;
        exp += 1;
    }
    (rest == 1).then_some((smallest, exp))
}

pub(crate) fn big_pow(base: u64, exp: u32) -> BigCount {
    BigCount(Pow::pow(BigUint::from(base), exp))
}

pub(crate) fn exponent(value: &BigCount) -> Result<u32> {
    value.0.to_u32().ok_or(Error::ExponentOverflow)
}
