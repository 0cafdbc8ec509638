//! Closed-form and recursive polynomial counts over `F_q`.
//!
//! Every count here is of *normalized* polynomials: exact total degree `d`,
//! with the leading coefficient of the top homogeneous part equal to 1.
//! Multiplying by `q - 1` gives the raw count.
//!
//! The irreducible count `I(d)` is obtained bottom-up. A normalized
//! polynomial with `k` irreducible factors determines a partition
//! `[d_1, ..., d_k]` of `d` (the factor degrees), and the number of
//! polynomials over one partition is the product, over each run of `alpha`
//! equal parts `e`, of the multiset coefficient `C(I(e) + alpha - 1, alpha)`.
//! Summing over partitions gives `S_k(d)`, and `I(d) = N(d) - sum_{k>=2} S_k(d)`.

use alloc::vec;
use alloc::vec::Vec;
use core::num::NonZeroU32;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::{
    big_pow, binomial, exponent, is_prime_power, moebius, multiset_coefficient, BigCount,
    ExactRatio,
};
use crate::partitions::{partitions_of, runs};

/// Field size and number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountingParams {
    q: u64,
    m: u32,
    characteristic: u64,
    extension_degree: u32,
}

impl CountingParams {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        let (characteristic, extension_degree) =
            is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if m < 1 {
            return Err(Error::InvalidVariableCount(m));
        }
        Ok(CountingParams {
            q,
            m,
            characteristic,
            extension_degree,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The prime `p` with `q = p^n`.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn extension_degree(&self) -> u32 {
        self.extension_degree
    }

    /// Number of monomials of total degree exactly `d`: `C(m + d - 1, m - 1)`.
    pub fn monomials_of_degree(&self, d: u32) -> BigCount {
        let m = self.m as u64;
        binomial(m + d as u64 - 1, m - 1)
    }

    /// Number of monomials of total degree below `d`: `C(m + d - 1, m)`.
    pub fn monomials_below(&self, d: u32) -> BigCount {
        let m = self.m as u64;
        binomial(m + d as u64 - 1, m)
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d < 1 {
        Err(Error::InvalidDegree(d))
    } else {
        Ok(())
    }
}

/// Count of all univariate polynomials of degree exactly `d`: `q^(d+1) - q^d`.
pub fn count_univariate(q: u64, d: u32) -> Result<BigCount> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    check_degree(d)?;
    let top = big_pow(q, d + 1);
    Ok(top.checked_sub(&big_pow(q, d)).expect("q^(d+1) >= q^d"))
}

/// Univariate irreducible counts of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateIrreducible {
    /// Monic irreducibles.
    pub monic: BigCount,
    /// All irreducibles: `monic * (q - 1)`.
    pub total: BigCount,
}

/// Gauss's count `(1/d) * sum_{e | d} mu(e) q^(d/e)` of monic irreducibles.
pub fn count_irreducible_univariate(q: u64, d: u32) -> Result<UnivariateIrreducible> {
    is_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    check_degree(d)?;
    let mut sum = BigInt::from(0);
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let term = big_pow(q, d / e).to_bigint();
        match moebius(e as u64)? {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    let sum = sum
        .to_biguint()
        .ok_or(Error::InexactDivision("univariate moebius sum"))?;
    let monic = BigCount::from(sum).div_exact(&BigCount::from(d), "univariate moebius sum")?;
    let total = &monic * &BigCount::from(q - 1);
    Ok(UnivariateIrreducible { monic, total })
}

/// Nonzero homogeneous polynomials of degree `d`: `q^C(m+d-1, m-1) - 1`.
pub fn leading_form_count(params: &CountingParams, d: u32) -> Result<BigCount> {
    let terms = exponent(&params.monomials_of_degree(d))?;
    Ok(big_pow(params.q, terms)
        .checked_sub(&BigCount::one())
        .expect("q >= 2"))
}

/// `N_m(d) = (q^C(m+d-1, m-1) - 1) / (q - 1) * q^C(m+d-1, m)`.
pub fn count_normalized(params: &CountingParams, d: u32) -> Result<BigCount> {
    check_degree(d)?;
    let forms = leading_form_count(params, d)?;
    let scalars = BigCount::from(params.q - 1);
    let normalized_forms = forms.div_exact(&scalars, "normalized leading forms")?;
    let lower = exponent(&params.monomials_below(d))?;
    Ok(&normalized_forms * &big_pow(params.q, lower))
}

/// One run of equal parts in a torsion product: `multiplicity` factors drawn
/// with repetition from a box of `ell` objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFactor {
    pub ell: BigCount,
    pub multiplicity: NonZeroU32,
}

impl TorsionFactor {
    pub fn new(ell: BigCount, multiplicity: NonZeroU32) -> Self {
        TorsionFactor { ell, multiplicity }
    }
}

/// Product of `C(ell + alpha - 1, alpha)` over the factors. The empty product is 1.
pub fn torsion_product(factors: &[TorsionFactor]) -> BigCount {
    factors
        .iter()
        .map(|f| multiset_coefficient(&f.ell, f.multiplicity.get()))
        .product()
}

/// All counts for a single degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCounts {
    pub degree: u32,
    pub normalized: BigCount,
    pub irreducible: BigCount,
    pub reducible: BigCount,
    /// `S_k(d)` for `k = 1..=d`, stored at index `k - 1`.
    pub by_factor_count: Vec<BigCount>,
}

impl DegreeCounts {
    pub fn factor_count(&self, k: u32) -> Option<&BigCount> {
        self.by_factor_count.get((k as usize).checked_sub(1)?)
    }

    pub fn density(&self) -> ExactRatio {
        ExactRatio::from_counts(&self.irreducible, &self.normalized).expect("N(d) > 0")
    }
}

/// Memoized counts for degrees `1..=max_degree`, filled bottom-up.
#[derive(Clone, Debug)]
pub struct CountTable {
    params: CountingParams,
    rows: Vec<DegreeCounts>,
    /// `multisets[e - 1][alpha] = C(I(e) + alpha - 1, alpha)`.
    multisets: Vec<Vec<BigCount>>,
}

impl CountTable {
    pub fn new(params: CountingParams) -> Self {
        CountTable {
            params,
            rows: Vec::new(),
            multisets: Vec::new(),
        }
    }

    /// A table already filled up to degree `d`.
    pub fn up_to(params: CountingParams, d: u32) -> Result<Self> {
        let mut table = CountTable::new(params);
        table.extend_to(d)?;
        Ok(table)
    }

    /// Rebuilds a table from previously exported rows. Rows must cover
    /// `1..=n` contiguously and satisfy the accounting identities.
    pub fn from_rows(params: CountingParams, rows: Vec<DegreeCounts>) -> Result<Self> {
        use alloc::format;
        for (i, row) in rows.iter().enumerate() {
            let d = i as u32 + 1;
            if row.degree != d {
                return Err(Error::InvalidTable(format!(
                    "expected degree {d}, found {}",
                    row.degree
                )));
            }
            if row.normalized != count_normalized(&params, d)? {
                return Err(Error::InvalidTable(format!("N({d}) is wrong")));
            }
            if &row.irreducible + &row.reducible != row.normalized {
                return Err(Error::InvalidTable(format!("N({d}) != I({d}) + R({d})")));
            }
            if row.by_factor_count.len() != d as usize {
                return Err(Error::InvalidTable(format!(
                    "S list for degree {d} has wrong length"
                )));
            }
            if row.by_factor_count[0] != row.irreducible {
                return Err(Error::InvalidTable(format!("S_1({d}) != I({d})")));
            }
            let reducible: BigCount = row.by_factor_count[1..].iter().sum();
            if reducible != row.reducible {
                return Err(Error::InvalidTable(format!(
                    "sum of S_k({d}) for k >= 2 != R({d})"
                )));
            }
        }
        let multisets = rows
            .iter()
            .map(|r| vec![BigCount::one(), r.irreducible.clone()])
            .collect();
        Ok(CountTable {
            params,
            rows,
            multisets,
        })
    }

    pub fn params(&self) -> &CountingParams {
        &self.params
    }

    pub fn max_degree(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn rows(&self) -> &[DegreeCounts] {
        &self.rows
    }

    pub fn get(&self, d: u32) -> Option<&DegreeCounts> {
        self.rows.get((d as usize).checked_sub(1)?)
    }

    /// Fills every degree up to `d`; a no-op for degrees already present.
    pub fn extend_to(&mut self, d: u32) -> Result<()> {
        check_degree(d)?;
        while self.max_degree() < d {
            self.push_next_degree()?;
        }
        Ok(())
    }

    /// Counts for degree `d`, computing lower degrees first when needed.
    pub fn ensure(&mut self, d: u32) -> Result<&DegreeCounts> {
        self.extend_to(d)?;
        Ok(&self.rows[d as usize - 1])
    }

    /// `S_k(d)` from the memoized lower-degree irreducible counts.
    ///
    /// For `k >= 2` only `I(1..=d-k+1)` is needed, so `d` itself may be one
    /// past the table. `k = 1` is `I(d)` and requires `d` to be present.
    pub fn count_with_k_factors(&self, d: u32, k: u32) -> Result<BigCount> {
        check_degree(d)?;
        if k < 1 || k > d {
            return Err(Error::InvalidPartShape { d, k });
        }
        if let Some(row) = self.get(d) {
            return Ok(row.by_factor_count[k as usize - 1].clone());
        }
        let needed = if k == 1 { d } else { d - k + 1 };
        if needed > self.max_degree() {
            return Err(Error::MissingDegree {
                needed,
                available: self.max_degree(),
            });
        }
        let mut scratch = self.multisets.clone();
        let irreducible: Vec<&BigCount> = self.rows.iter().map(|r| &r.irreducible).collect();
        sum_over_partitions(&irreducible, &mut scratch, d, k)
    }

    fn push_next_degree(&mut self) -> Result<()> {
        let d = self.max_degree() + 1;
        let normalized = count_normalized(&self.params, d)?;
        let irreducible: Vec<&BigCount> = self.rows.iter().map(|r| &r.irreducible).collect();
        let mut by_factor_count = vec![BigCount::zero(); d as usize];
        let mut reducible = BigCount::zero();
        for k in 2..=d {
            let s = sum_over_partitions(&irreducible, &mut self.multisets, d, k)?;
            reducible += &s;
            by_factor_count[k as usize - 1] = s;
        }
        let irreducible = normalized
            .checked_sub(&reducible)
            .ok_or(Error::InexactDivision("reducible count exceeds N(d)"))?;
        by_factor_count[0] = irreducible.clone();
        self.multisets
            .push(vec![BigCount::one(), irreducible.clone()]);
        self.rows.push(DegreeCounts {
            degree: d,
            normalized,
            irreducible,
            reducible,
            by_factor_count,
        });
        Ok(())
    }
}

/// Sum over `P(k, d)` of the torsion product of the irreducible counts,
/// grouping runs by equal degree.
fn sum_over_partitions(
    irreducible: &[&BigCount],
    multisets: &mut [Vec<BigCount>],
    d: u32,
    k: u32,
) -> Result<BigCount> {
    if k == 1 {
        return irreducible
            .get(d as usize - 1)
            .map(|&c| c.clone())
            .ok_or(Error::MissingDegree {
                needed: d,
                available: irreducible.len() as u32,
            });
    }
    // Largest part is d - k + 1; a part e can repeat at most d / e times.
    for e in 1..=d - k + 1 {
        let ell = irreducible[e as usize - 1];
        let cache = &mut multisets[e as usize - 1];
        let want = (d / e).min(k) as usize;
        while cache.len() <= want {
            let alpha = cache.len() as u32;
            // C(l + a - 1, a) = C(l + a - 2, a - 1) * (l + a - 1) / a
            let grown = &cache[alpha as usize - 1] * &(ell + &BigCount::from(alpha - 1));
            cache.push(grown.div_exact(&BigCount::from(alpha), "multiset coefficient")?);
        }
    }

    let mut stream = partitions_of(d, k)?;
    let mut total = BigCount::zero();
    while let Some(parts) = stream.advance() {
        let mut term = BigCount::one();
        for (part, alpha) in runs(parts) {
            term *= &multisets[part as usize - 1][alpha as usize];
        }
        total += term;
    }
    Ok(total)
}

/// `I_m(d)` from a fresh table.
pub fn count_irreducible(params: &CountingParams, d: u32) -> Result<BigCount> {
    Ok(CountTable::new(*params).ensure(d)?.irreducible.clone())
}

/// `R_m(d) = N_m(d) - I_m(d)`.
pub fn count_reducible(params: &CountingParams, d: u32) -> Result<BigCount> {
    Ok(CountTable::new(*params).ensure(d)?.reducible.clone())
}

/// `S_k(d)` from a fresh table filled to `d - 1`.
pub fn count_with_k_factors(params: &CountingParams, d: u32, k: u32) -> Result<BigCount> {
    check_degree(d)?;
    let mut table = CountTable::new(*params);
    table.extend_to(d)?;
    table.count_with_k_factors(d, k)
}

/// Exact `N_m(d) / N_m(d + 1)`.
pub fn consecutive_ratio(params: &CountingParams, d: u32) -> Result<ExactRatio> {
    check_degree(d)?;
    ExactRatio::from_counts(
        &count_normalized(params, d)?,
        &count_normalized(params, d + 1)?,
    )
}

/// `N_m(1) / q^C(m+d-1, m-1)`, the simplified prediction for `1 - I/N`.
/// For `m = 2` this is `(q + 1) / q^d`.
pub fn simplified_prediction(params: &CountingParams, d: u32) -> Result<ExactRatio> {
    check_degree(d)?;
    let terms = exponent(&params.monomials_of_degree(d))?;
    ExactRatio::from_counts(&count_normalized(params, 1)?, &big_pow(params.q, terms))
}

/// One degree of the asymptotic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticRow {
    pub degree: u32,
    /// `I(d) / N(d)`.
    pub density: ExactRatio,
    /// `N(1) * N(d - 1) / N(d)`, predicting `1 - density`.
    pub predicted: ExactRatio,
    /// `N(1) / q^C(m+d-1, m-1)`, the closed-form simplification of `predicted`.
    pub predicted_simplified: ExactRatio,
    /// `|(1 - density) - predicted| / predicted`.
    pub relative_error: ExactRatio,
    /// Same as `relative_error` against `predicted_simplified`.
    pub relative_error_simplified: ExactRatio,
}

/// Rows for `d = 2..=d_max`, extending `table` as needed.
pub fn asymptotic_report_from(table: &mut CountTable, d_max: u32) -> Result<Vec<AsymptoticRow>> {
    if d_max < 2 {
        return Err(Error::InvalidDegree(d_max));
    }
    table.extend_to(d_max)?;
    let params = *table.params();
    let n1 = table.get(1).expect("filled").normalized.clone();
    let mut rows = Vec::with_capacity(d_max as usize - 1);
    for d in 2..=d_max {
        let here = table.get(d).expect("filled");
        let below = table.get(d - 1).expect("filled");
        let density = here.density();
        let observed = density.complement();
        let predicted = ExactRatio::from_counts(&(&n1 * &below.normalized), &here.normalized)?;
        let predicted_simplified = simplified_prediction(&params, d)?;
        let relative = |prediction: &ExactRatio| {
            (&observed - prediction)
                .abs()
                .checked_div(prediction)
                .expect("predictions are positive")
        };
        rows.push(AsymptoticRow {
            degree: d,
            relative_error: relative(&predicted),
            relative_error_simplified: relative(&predicted_simplified),
            density,
            predicted,
            predicted_simplified,
        });
    }
    Ok(rows)
}

pub fn asymptotic_report(params: &CountingParams, d_max: u32) -> Result<Vec<AsymptoticRow>> {
    asymptotic_report_from(&mut CountTable::new(*params), d_max)
}
