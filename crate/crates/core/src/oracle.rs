//! Brute-force ground truth over prime fields.
//!
//! Polynomials are dense coefficient vectors indexed by monomials in
//! graded-lex order: ascending total degree, and within one degree ascending
//! lex order with `x_1 > x_2 > ... > x_m`. The leading coefficient of a
//! degree-`d` polynomial is therefore the last nonzero entry of its
//! degree-`d` block, and it is normalized when that entry is 1.
//!
//! [`Oracle`] counts irreducibles without using the recursion: the reducible
//! set of degree `d` is the set of all products `g * h` of normalized `g`,
//! `h` with `deg g <= d / 2`, and `I(d)` is whatever is left.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::counting::{CountTable, CountingParams};
use crate::error::{Error, Result};
use crate::numeric::{is_prime, BigCount};

/// Default cap on `p^(number of monomials of degree <= d)`.
pub const DEFAULT_GUARD: u64 = 1 << 28;

const MAX_MONOMIALS: usize = 4096;
const NO_MONOMIAL: u32 = u32::MAX;

/// `Z/pZ` for a prime `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = u8::try_from(p).map_err(|_| Error::FieldTooLarge(p))?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let mut result = 1u8;
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Some(result)
    }
}

/// Monomial layout and product table for `F_p[x_1..x_m]` up to a total degree.
#[derive(Debug)]
pub struct PolyRing {
    field: PrimeField,
    m: u32,
    max_degree: u32,
    exponents: Vec<Vec<u32>>,
    /// `degree_start[t]` is the index of the first monomial of degree `t`.
    degree_start: Vec<usize>,
    /// `products[i * n + j]` is the index of monomial `i` times monomial `j`.
    products: Vec<u32>,
}

impl PolyRing {
    pub fn new(field: PrimeField, m: u32, max_degree: u32) -> Result<Arc<Self>> {
        if m < 1 {
            return Err(Error::InvalidVariableCount(m));
        }
        let mut exponents = Vec::new();
        let mut degree_start = Vec::with_capacity(max_degree as usize + 2);
        for t in 0..=max_degree {
            degree_start.push(exponents.len());
            let mut block = Vec::new();
            push_descending(m as usize, t, &mut Vec::new(), &mut block);
            block.reverse();
            exponents.extend(block);
            if exponents.len() > MAX_MONOMIALS {
                return Err(Error::RingTooLarge {
                    monomials: exponents.len(),
                });
            }
        }
        degree_start.push(exponents.len());

        let n = exponents.len();
        let index: BTreeMap<&[u32], u32> = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i as u32))
            .collect();
        let mut products = vec![NO_MONOMIAL; n * n];
        let mut scratch = vec![0u32; m as usize];
        for i in 0..n {
            for j in 0..n {
                for (s, (a, b)) in scratch
                    .iter_mut()
                    .zip(exponents[i].iter().zip(&exponents[j]))
                {
                    *s = a + b;
                }
                if let Some(&k) = index.get(scratch.as_slice()) {
                    products[i * n + j] = k;
                }
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            m,
            max_degree,
            exponents,
            degree_start,
            products,
        }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of monomials of total degree at most `d`.
    pub fn monomials_up_to(&self, d: u32) -> usize {
        self.degree_start[d as usize + 1]
    }

    /// Exponent tuple of the monomial at `index`.
    pub fn exponents(&self, index: usize) -> &[u32] {
        &self.exponents[index]
    }

    fn degree_of_index(&self, index: usize) -> u32 {
        self.exponents[index].iter().sum()
    }

    fn index_of(&self, exps: &[u32]) -> Option<usize> {
        if exps.len() != self.m as usize {
            return None;
        }
        let t: u32 = exps.iter().sum();
        if t > self.max_degree {
            return None;
        }
        let block = self.degree_start[t as usize]..self.degree_start[t as usize + 1];
        block.into_iter().find(|&i| self.exponents[i] == exps)
    }

    fn same_space(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.m == other.m
    }
}

/// All exponent tuples of total degree `t` in `vars` variables, descending lex.
fn push_descending(vars: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if vars == 1 {
        prefix.push(t);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=t).rev() {
        prefix.push(e);
        push_descending(vars - 1, t - e, prefix, out);
        prefix.pop();
    }
}

/// Dense polynomial over a prime field, coefficients in graded-lex order
/// for every monomial of degree at most `bound`.
#[derive(Clone)]
pub struct DensePoly {
    ring: Arc<PolyRing>,
    bound: u32,
    coeffs: Vec<u8>,
}

impl DensePoly {
    pub fn zero(ring: &Arc<PolyRing>, bound: u32) -> Result<Self> {
        if bound > ring.max_degree {
            return Err(Error::DegreeBoundExceeded {
                needed: bound,
                bound: ring.max_degree,
            });
        }
        Ok(DensePoly {
            ring: Arc::clone(ring),
            bound,
            coeffs: vec![0; ring.monomials_up_to(bound)],
        })
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        let mut p = DensePoly::zero(ring, 0).expect("degree 0 always fits");
        p.coeffs[0] = 1;
        p
    }

    /// Builds `sum c * x^e` from `(c, e)` pairs; coefficients are reduced mod p
    /// and repeated monomials accumulate.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: &[(u64, &[u32])]) -> Result<Self> {
        let bound = terms
            .iter()
            .map(|(_, e)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        let mut poly = DensePoly::zero(ring, bound)?;
        let field = ring.field;
        for &(c, exps) in terms {
            let idx = ring.index_of(exps).ok_or(Error::RingMismatch)?;
            let c = (c % field.p()) as u8;
            poly.coeffs[idx] = field.add(poly.coeffs[idx], c);
        }
        Ok(poly)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree_bound(&self) -> u32 {
        self.bound
    }

    pub fn coefficients(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coefficient(&self, exps: &[u32]) -> u8 {
        self.ring
            .index_of(exps)
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        let last = self.coeffs.iter().rposition(|&c| c != 0)?;
        Some(self.ring.degree_of_index(last))
    }

    /// Coefficient of the graded-lex largest monomial.
    pub fn leading_coefficient(&self) -> Option<u8> {
        self.coeffs.iter().rev().copied().find(|&c| c != 0)
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_coefficient() == Some(1)
    }

    /// One byte per coefficient in graded-lex order. Injective for a fixed
    /// `(p, m, degree_bound)`.
    pub fn canonical_bytes(&self) -> &[u8] {
        &self.coeffs
    }
}

impl PartialEq for DensePoly {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_space(&other.ring) {
            return false;
        }
        let trim = |c: &[u8]| c.len() - c.iter().rev().take_while(|&&x| x == 0).count();
        let (a, b) = (&self.coeffs, &other.coeffs);
        a[..trim(a)] == b[..trim(b)]
    }
}

impl Eq for DensePoly {}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly(F_{}; {})", self.ring.field.p, self)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = match self.ring.m {
            1 => vec!["x".to_string()],
            2 => vec!["x".to_string(), "y".to_string()],
            3 => vec!["x".to_string(), "y".to_string(), "z".to_string()],
            m => (1..=m).map(|i| format!("x{i}")).collect(),
        };
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let exps = &self.ring.exponents[i];
            let mut monomial = String::new();
            for (name, &e) in names.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => monomial.push_str(name),
                    _ => monomial.push_str(&format!("{name}^{e}")),
                }
            }
            match (c, monomial.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => f.write_str(&monomial)?,
                (_, false) => write!(f, "{c}{monomial}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Exact product over `F_p`. The result's degree bound is `deg a + deg b`.
pub fn poly_multiply(a: &DensePoly, b: &DensePoly) -> Result<DensePoly> {
    if !a.ring.same_space(&b.ring) {
        return Err(Error::RingMismatch);
    }
    let (Some(da), Some(db)) = (a.total_degree(), b.total_degree()) else {
        let bound = a.bound.max(b.bound);
        let ring = if a.ring.max_degree >= bound {
            &a.ring
        } else {
            &b.ring
        };
        return DensePoly::zero(ring, bound);
    };
    let needed = da + db;
    let ring = if a.ring.max_degree >= needed {
        &a.ring
    } else if b.ring.max_degree >= needed {
        &b.ring
    } else {
        return Err(Error::DegreeBoundExceeded {
            needed,
            bound: a.ring.max_degree.max(b.ring.max_degree),
        });
    };
    let field = ring.field;
    let n = ring.exponents.len();
    let mut out = DensePoly::zero(ring, needed)?;
    let a_len = a.ring.monomials_up_to(da);
    let b_len = b.ring.monomials_up_to(db);
    for (i, &ca) in a.coeffs[..a_len].iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.coeffs[..b_len].iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let k = ring.products[i * n + j] as usize;
            out.coeffs[k] = field.add(out.coeffs[k], field.mul(ca, cb));
        }
    }
    Ok(out)
}

/// `p^(number of monomials of degree <= d)`, or `None` on overflow.
fn candidate_count(field: PrimeField, monomials: usize) -> Option<u64> {
    let exp = u32::try_from(monomials).ok()?;
    field.p().checked_pow(exp)
}

fn check_guard(ring: &PolyRing, d: u32, guard: u64) -> Result<()> {
    let monomials = ring.monomials_up_to(d);
    match candidate_count(ring.field, monomials) {
        Some(c) if c <= guard => Ok(()),
        Some(c) => Err(Error::GuardExceeded {
            candidates: c.to_string(),
            limit: guard,
        }),
        None => Err(Error::GuardExceeded {
            candidates: format!("{}^{}", ring.field.p, monomials),
            limit: guard,
        }),
    }
}

/// Stream of every normalized polynomial of exact degree `d`, each once.
pub struct NormalizedPolys {
    ring: Arc<PolyRing>,
    d: u32,
    block_start: usize,
    /// Index of the leading 1; positions below it are free.
    lead: usize,
    counter: u64,
    limit: u64,
    done: bool,
}

impl NormalizedPolys {
    fn new(ring: &Arc<PolyRing>, d: u32, guard: u64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidDegree(d));
        }
        if d > ring.max_degree {
            return Err(Error::DegreeBoundExceeded {
                needed: d,
                bound: ring.max_degree,
            });
        }
        check_guard(ring, d, guard)?;
        let block_start = ring.degree_start[d as usize];
        let lead = ring.degree_start[d as usize + 1] - 1;
        Ok(NormalizedPolys {
            ring: Arc::clone(ring),
            d,
            block_start,
            lead,
            counter: 0,
            limit: ring.field.p().pow(lead as u32),
            done: false,
        })
    }
}

impl Iterator for NormalizedPolys {
    type Item = DensePoly;

    fn next(&mut self) -> Option<DensePoly> {
        if self.done {
            return None;
        }
        if self.counter == self.limit {
            if self.lead == self.block_start {
                self.done = true;
                return None;
            }
            self.lead -= 1;
            self.counter = 0;
            self.limit = self.ring.field.p().pow(self.lead as u32);
        }
        let mut poly = DensePoly::zero(&self.ring, self.d).expect("checked at construction");
        let p = self.ring.field.p();
        let mut c = self.counter;
        for slot in &mut poly.coeffs[..self.lead] {
            *slot = (c % p) as u8;
            c /= p;
        }
        poly.coeffs[self.lead] = 1;
        self.counter += 1;
        Some(poly)
    }
}

/// Normalized polynomials of degree `d` in `ring`, refusing to start when the
/// candidate space exceeds `guard`.
pub fn normalized_polys(ring: &Arc<PolyRing>, d: u32, guard: u64) -> Result<NormalizedPolys> {
    NormalizedPolys::new(ring, d, guard)
}

/// Normalized polynomials of degree `d` over `field` in `m` variables.
pub fn enumerate_normalized(field: PrimeField, m: u32, d: u32) -> Result<NormalizedPolys> {
    let ring = PolyRing::new(field, m, d)?;
    NormalizedPolys::new(&ring, d, DEFAULT_GUARD)
}

/// Brute-force counts for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub degree: u32,
    pub normalized: BigCount,
    pub irreducible: BigCount,
    pub reducible: BigCount,
    /// Distinct products of `k` normalized irreducibles, index `k - 1`.
    pub by_factor_count: Vec<BigCount>,
}

/// Outcome of checking that distinct factor multisets give distinct products.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub degree: u32,
    /// Multisets of irreducibles enumerated per `k` (index `k - 1`).
    pub multisets: Vec<BigCount>,
    /// Distinct products per `k` found by the oracle.
    pub observed: Vec<BigCount>,
    /// `S_k(d)` from the recursion.
    pub expected: Vec<BigCount>,
    /// Two different multisets with the same product, if any were found.
    pub counterexample: Option<(Vec<DensePoly>, Vec<DensePoly>)>,
}

impl FactorizationReport {
    pub fn unique(&self) -> bool {
        self.counterexample.is_none() && self.multisets == self.observed
    }

    pub fn passed(&self) -> bool {
        self.unique() && self.observed == self.expected
    }
}

struct Level {
    counts: OracleCounts,
    irreducibles: Vec<DensePoly>,
    multisets: Vec<BigCount>,
    counterexample: Option<(Vec<DensePoly>, Vec<DensePoly>)>,
}

/// Incremental brute force over degrees `1..=max_degree`.
pub struct Oracle {
    ring: Arc<PolyRing>,
    guard: u64,
    levels: Vec<Level>,
}

impl Oracle {
    pub fn new(field: PrimeField, m: u32, max_degree: u32) -> Result<Self> {
        Self::with_guard(field, m, max_degree, DEFAULT_GUARD)
    }

    pub fn with_guard(field: PrimeField, m: u32, max_degree: u32, guard: u64) -> Result<Self> {
        if max_degree < 1 {
            return Err(Error::InvalidDegree(max_degree));
        }
        let ring = PolyRing::new(field, m, max_degree)?;
        check_guard(&ring, max_degree, guard)?;
        Ok(Oracle {
            ring,
            guard,
            levels: Vec::new(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Counts for degree `d`, computing every lower degree first.
    pub fn counts(&mut self, d: u32) -> Result<&OracleCounts> {
        self.fill(d)?;
        Ok(&self.levels[d as usize - 1].counts)
    }

    /// The normalized irreducibles of degree `d` in enumeration order.
    pub fn irreducibles(&mut self, d: u32) -> Result<&[DensePoly]> {
        self.fill(d)?;
        Ok(&self.levels[d as usize - 1].irreducibles)
    }

    /// Compares the distinct-product counts per `k` with the recursion's `S_k(d)`.
    pub fn factorization_report(&mut self, d: u32) -> Result<FactorizationReport> {
        self.fill(d)?;
        let params = CountingParams::new(self.ring.field.p(), self.ring.m)?;
        let table = CountTable::up_to(params, d)?;
        let level = &self.levels[d as usize - 1];
        Ok(FactorizationReport {
            degree: d,
            multisets: level.multisets.clone(),
            observed: level.counts.by_factor_count.clone(),
            expected: table.get(d).expect("filled").by_factor_count.clone(),
            counterexample: level.counterexample.clone(),
        })
    }

    fn fill(&mut self, d: u32) -> Result<()> {
        if d < 1 {
            return Err(Error::InvalidDegree(d));
        }
        if d > self.ring.max_degree {
            return Err(Error::DegreeBoundExceeded {
                needed: d,
                bound: self.ring.max_degree,
            });
        }
        while (self.levels.len() as u32) < d {
            let next = self.levels.len() as u32 + 1;
            let level = self.compute_level(next)?;
            self.levels.push(level);
        }
        Ok(())
    }

    fn compute_level(&self, d: u32) -> Result<Level> {
        let reducible_set = self.reducible_set(d)?;
        let mut normalized = 0u64;
        let mut reducible = 0u64;
        let mut irreducibles = Vec::new();
        for f in normalized_polys(&self.ring, d, self.guard)? {
            normalized += 1;
            if reducible_set.contains(f.canonical_bytes()) {
                reducible += 1;
            } else {
                irreducibles.push(f);
            }
        }
        if reducible != reducible_set.len() as u64 {
            return Err(Error::OracleInconsistent(format!(
                "degree {d}: {} products but only {reducible} matched the enumeration",
                reducible_set.len()
            )));
        }

        let (mut multisets, mut distinct, counterexample) = self.factor_multisets(d)?;
        distinct[0] = irreducibles.len() as u64;
        multisets[0] = irreducibles.len() as u64;

        Ok(Level {
            counts: OracleCounts {
                degree: d,
                normalized: BigCount::from(normalized),
                irreducible: BigCount::from(irreducibles.len() as u64),
                reducible: BigCount::from(reducible),
                by_factor_count: distinct.into_iter().map(BigCount::from).collect(),
            },
            irreducibles,
            multisets: multisets.into_iter().map(BigCount::from).collect(),
            counterexample,
        })
    }

    /// Canonical bytes of every product `g * h`, `deg g = a <= d / 2`.
    fn reducible_set(&self, d: u32) -> Result<BTreeSet<Vec<u8>>> {
        let mut set = BTreeSet::new();
        for a in 1..=d / 2 {
            let small: Vec<DensePoly> = normalized_polys(&self.ring, a, self.guard)?.collect();
            let large: Vec<DensePoly> = normalized_polys(&self.ring, d - a, self.guard)?.collect();
            for g in &small {
                for h in &large {
                    let f = poly_multiply(g, h)?;
                    debug_assert!(f.is_normalized() && f.total_degree() == Some(d));
                    set.insert(f.coeffs);
                }
            }
        }
        Ok(set)
    }

    /// Enumerates multisets of at least two irreducibles of degree sum `d`
    /// and counts distinct products per size.
    #[allow(clippy::type_complexity)]
    fn factor_multisets(
        &self,
        d: u32,
    ) -> Result<(Vec<u64>, Vec<u64>, Option<(Vec<DensePoly>, Vec<DensePoly>)>)> {
        let pool: Vec<(u32, &DensePoly)> = self
            .levels
            .iter()
            .enumerate()
            .flat_map(|(i, level)| level.irreducibles.iter().map(move |f| (i as u32 + 1, f)))
            .collect();
        let mut walk = MultisetWalk {
            pool: &pool,
            seen: BTreeMap::new(),
            per_k: vec![0u64; d as usize],
            distinct: vec![BTreeSet::new(); d as usize],
            chosen: Vec::new(),
            counterexample: None,
        };
        walk.descend(0, d, &DensePoly::one(&self.ring))?;

        let counterexample = walk.counterexample.map(|(a, b)| {
            let expand = |idx: Vec<usize>| idx.into_iter().map(|i| pool[i].1.clone()).collect();
            (expand(a), expand(b))
        });
        let distinct = walk.distinct.iter().map(|s| s.len() as u64).collect();
        Ok((walk.per_k, distinct, counterexample))
    }
}

struct MultisetWalk<'a> {
    pool: &'a [(u32, &'a DensePoly)],
    seen: BTreeMap<Vec<u8>, Vec<usize>>,
    per_k: Vec<u64>,
    distinct: Vec<BTreeSet<Vec<u8>>>,
    chosen: Vec<usize>,
    counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

impl MultisetWalk<'_> {
    fn descend(&mut self, start: usize, remaining: u32, product: &DensePoly) -> Result<()> {
        for i in start..self.pool.len() {
            let (deg, factor) = self.pool[i];
            if deg > remaining {
                // Factors are sorted by degree; nothing later can fit.
                break;
            }
            if deg < remaining && remaining - deg < deg {
                // Later factors are at least this large, so only an exact
                // fit further on can close the multiset.
                continue;
            }
            let next = poly_multiply(product, factor)?;
            self.chosen.push(i);
            if deg == remaining {
                self.record(next);
            } else {
                self.descend(i, remaining - deg, &next)?;
            }
            self.chosen.pop();
        }
        Ok(())
    }

    fn record(&mut self, product: DensePoly) {
        let k = self.chosen.len();
        self.per_k[k - 1] += 1;
        self.distinct[k - 1].insert(product.coeffs.clone());
        match self.seen.get(&product.coeffs) {
            Some(other) if self.counterexample.is_none() => {
                self.counterexample = Some((other.clone(), self.chosen.clone()));
            }
            Some(_) => {}
            None => {
                self.seen.insert(product.coeffs, self.chosen.clone());
            }
        }
    }
}

/// Brute-force `N`, `I`, `R` and every `S_k` for degree `d`.
pub fn brute_force_counts(field: PrimeField, m: u32, d: u32) -> Result<OracleCounts> {
    let mut oracle = Oracle::new(field, m, d)?;
    oracle.counts(d).cloned()
}

/// Checks that products of distinct multisets of normalized irreducibles are
/// distinct and that their counts agree with the recursion.
pub fn verify_unique_factorization(
    field: PrimeField,
    m: u32,
    d: u32,
) -> Result<FactorizationReport> {
    Oracle::new(field, m, d)?.factorization_report(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_normalized;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn ring(p: u64, m: u32, d: u32) -> Arc<PolyRing> {
        PolyRing::new(f(p), m, d).unwrap()
    }

    #[test]
    fn field_construction() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(257), Err(Error::FieldTooLarge(257)));
        let f7 = f(7);
        for a in 1..7u8 {
            assert_eq!(f7.mul(a, f7.inv(a).unwrap()), 1);
            assert_eq!(f7.add(a, f7.neg(a)), 0);
        }
        assert_eq!(f7.inv(0), None);
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let r = ring(2, 2, 2);
        let order: Vec<&[u32]> = (0..r.monomials_up_to(2)).map(|i| r.exponents(i)).collect();
        assert_eq!(
            order,
            vec![&[0, 0][..], &[0, 1], &[1, 0], &[0, 2], &[1, 1], &[2, 0]]
        );
    }

    #[test]
    fn multiply_examples() {
        let r2 = ring(2, 2, 4);
        let x_plus_y = DensePoly::from_terms(&r2, &[(1, &[1, 0]), (1, &[0, 1])]).unwrap();
        let square = poly_multiply(&x_plus_y, &x_plus_y).unwrap();
        let expect = DensePoly::from_terms(&r2, &[(1, &[2, 0]), (1, &[0, 2])]).unwrap();
        assert_eq!(square, expect);
        assert_eq!(square.total_degree(), Some(2));

        let one = DensePoly::one(&r2);
        assert_eq!(poly_multiply(&x_plus_y, &one).unwrap(), x_plus_y);

        let r3 = ring(3, 2, 2);
        let x_plus_1 = DensePoly::from_terms(&r3, &[(1, &[1, 0]), (1, &[0, 0])]).unwrap();
        let sq = poly_multiply(&x_plus_1, &x_plus_1).unwrap();
        let expect =
            DensePoly::from_terms(&r3, &[(1, &[2, 0]), (2, &[1, 0]), (1, &[0, 0])]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(std::format!("{sq}"), "x^2 + 2x + 1");
    }

    #[test]
    fn multiply_rejects_mismatch_and_overflow() {
        let a = DensePoly::from_terms(&ring(2, 2, 2), &[(1, &[1, 0])]).unwrap();
        let b = DensePoly::from_terms(&ring(3, 2, 2), &[(1, &[1, 0])]).unwrap();
        assert_eq!(poly_multiply(&a, &b), Err(Error::RingMismatch));
        let c = DensePoly::from_terms(&ring(2, 3, 2), &[(1, &[1, 0, 0])]).unwrap();
        assert_eq!(poly_multiply(&a, &c), Err(Error::RingMismatch));
        let big = DensePoly::from_terms(&ring(2, 2, 2), &[(1, &[2, 0])]).unwrap();
        assert_eq!(
            poly_multiply(&big, &big),
            Err(Error::DegreeBoundExceeded {
                needed: 4,
                bound: 2
            })
        );
    }

    #[test]
    fn enumerate_degree_one_over_f2() {
        let polys: Vec<String> = enumerate_normalized(f(2), 2, 1)
            .unwrap()
            .map(|p| std::format!("{p}"))
            .collect();
        let mut sorted = polys.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec!["x", "x + 1", "x + y", "x + y + 1", "y", "y + 1"]
        );
    }

    #[test]
    fn enumeration_cardinality_matches_formula() {
        for (p, m, dmax) in [
            (2u64, 2u32, 4u32),
            (3, 2, 3),
            (2, 3, 2),
            (5, 2, 2),
            (2, 1, 8),
            (3, 1, 6),
        ] {
            let r = ring(p, m, dmax);
            let params = CountingParams::new(p, m).unwrap();
            for d in 1..=dmax {
                let mut seen = BTreeSet::new();
                for poly in normalized_polys(&r, d, DEFAULT_GUARD).unwrap() {
                    assert!(poly.is_normalized());
                    assert_eq!(poly.total_degree(), Some(d));
                    assert!(seen.insert(poly.canonical_bytes().to_vec()));
                }
                assert_eq!(
                    BigCount::from(seen.len() as u64),
                    count_normalized(&params, d).unwrap(),
                    "p={p} m={m} d={d}"
                );
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let err = Oracle::with_guard(f(2), 2, 4, 1 << 10).err().unwrap();
        assert!(matches!(err, Error::GuardExceeded { limit: 1024, .. }));
        assert!(matches!(
            enumerate_normalized(f(2), 2, 7),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn brute_force_small_cases() {
        let c = brute_force_counts(f(2), 2, 2).unwrap();
        assert_eq!(c.irreducible, BigCount::from(35u32));
        assert_eq!(c.reducible, BigCount::from(21u32));
        assert_eq!(
            c.by_factor_count,
            vec![BigCount::from(35u32), BigCount::from(21u32)]
        );
        let c = brute_force_counts(f(2), 2, 3).unwrap();
        assert_eq!(c.irreducible, BigCount::from(694u32));
        let c = brute_force_counts(f(2), 3, 2).unwrap();
        assert_eq!(c.irreducible, BigCount::from(903u32));
        assert_eq!(c.normalized, BigCount::from(1008u32));
    }

    #[test]
    fn unique_factorization_small_cases() {
        let one = verify_unique_factorization(f(2), 2, 1).unwrap();
        assert!(one.passed());
        let two = verify_unique_factorization(f(2), 2, 2).unwrap();
        assert!(two.passed());
        assert_eq!(two.observed[1], BigCount::from(21u32));
    }

    #[test]
    fn mixed_degree_factorizations_are_found() {
        // [1, 3] and [2, 2] both contribute to S_2(4): 6 * 694 + C(36, 2).
        let report = verify_unique_factorization(f(2), 2, 4).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.observed[1], BigCount::from(4794u32));
        let total: BigCount = report.observed.iter().sum();
        assert_eq!(total, BigCount::from(31744u32));
    }

    #[test]
    fn reducible_set_ignores_split_order() {
        let oracle = Oracle::new(f(3), 2, 3).unwrap();
        let forward = oracle.reducible_set(3).unwrap();
        let mut backward = BTreeSet::new();
        for a in (1..=2u32).rev() {
            let gs: Vec<DensePoly> = normalized_polys(oracle.ring(), a, DEFAULT_GUARD)
                .unwrap()
                .collect();
            let hs: Vec<DensePoly> = normalized_polys(oracle.ring(), 3 - a, DEFAULT_GUARD)
                .unwrap()
                .collect();
            for h in hs.iter().rev() {
                for g in &gs {
                    backward.insert(poly_multiply(h, g).unwrap().canonical_bytes().to_vec());
                }
            }
        }
        assert_eq!(forward, backward);
    }

    #[test]
    fn irreducible_list_is_dumpable() {
        let mut oracle = Oracle::new(f(2), 2, 2).unwrap();
        let quadratics = oracle.irreducibles(2).unwrap();
        assert_eq!(quadratics.len(), 35);
        assert!(quadratics.iter().all(|q| q.canonical_bytes().len() == 6));
        assert_eq!(oracle.irreducibles(1).unwrap().len(), 6);
    }

    fn random_normalized(p: u64, m: u32, d: u32, seed: &[u8]) -> DensePoly {
        let r = ring(p, m, 6);
        let mut poly = DensePoly::zero(&r, d).unwrap();
        let start = r.degree_start[d as usize];
        let end = r.degree_start[d as usize + 1];
        for (slot, s) in poly.coeffs.iter_mut().zip(seed.iter().cycle()) {
            *slot = (*s as u64 % p) as u8;
        }
        let lead = start + (seed[0] as usize % (end - start));
        poly.coeffs[lead] = 1;
        for c in &mut poly.coeffs[lead + 1..end] {
            *c = 0;
        }
        poly
    }

    proptest! {
        #[test]
        fn products_of_normalized_are_normalized(
            p in prop::sample::select(vec![2u64, 3, 5]),
            m in 2u32..=3,
            da in 1u32..=3,
            db in 1u32..=3,
            sa in prop::collection::vec(any::<u8>(), 1..40),
            sb in prop::collection::vec(any::<u8>(), 1..40),
        ) {
            let a = random_normalized(p, m, da, &sa);
            let b = random_normalized(p, m, db, &sb);
            prop_assert!(a.is_normalized() && b.is_normalized());
            let prod = poly_multiply(&a, &b).unwrap();
            prop_assert!(prod.is_normalized());
            prop_assert_eq!(prod.total_degree(), Some(da + db));
            prop_assert_eq!(poly_multiply(&b, &a).unwrap(), prod);
        }
    }
}
