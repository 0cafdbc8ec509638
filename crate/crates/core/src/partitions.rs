//! Integer partitions of `d` into exactly `k` parts.
//!
//! [`PartitionStream`] walks the parts lists in lexicographic order while
//! holding a single `k`-element buffer, so the full partition set is never
//! materialized.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::BigCount;

/// Nondecreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Checks that `parts` is nonempty, positive and nondecreasing.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        let valid = !parts.is_empty() && parts[0] >= 1 && parts.windows(2).all(|w| w[0] <= w[1]);
        valid.then_some(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Runs of equal parts as `(part, multiplicity)`.
    pub fn runs(&self) -> Runs<'_> {
        runs(&self.0)
    }
}

/// `(part, multiplicity)` pairs for runs of equal values in a sorted slice.
pub fn runs(parts: &[u32]) -> Runs<'_> {
    Runs { rest: parts }
}

pub struct Runs<'a> {
    rest: &'a [u32],
}

impl Iterator for Runs<'_> {
    type Item = (u32, u32);

    fn next(&mut self) -> Option<(u32, u32)> {
        let first = *self.rest.first()?;
        let len = self.rest.iter().take_while(|&&p| p == first).count();
        self.rest = &self.rest[len..];
        Some((first, len as u32))
    }
}

/// Lexicographic stream over the partitions of `d` into exactly `k` parts.
#[derive(Clone, Debug)]
pub struct PartitionStream {
    d: u32,
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

/// Rejects `d = 0` and any `k` outside `1..=d`.
pub fn partitions_of(d: u32, k: u32) -> Result<PartitionStream> {
    if k < 1 || k > d {
        return Err(Error::InvalidPartShape { d, k });
    }
    let mut parts = vec![1u32; k as usize];
    parts[k as usize - 1] = d - (k - 1);
    Ok(PartitionStream {
        d,
        parts,
        started: false,
        done: false,
    })
}

impl PartitionStream {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Advances and borrows the next parts list without allocating.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.parts);
        }
        let k = self.parts.len();
        // Rightmost position (excluding the last) that can be bumped while
        // leaving room for the tail to stay nondecreasing.
        let mut prefix: u32 = self.parts[..k.saturating_sub(1)].iter().sum();
        for i in (0..k.saturating_sub(1)).rev() {
            prefix -= self.parts[i];
            let value = self.parts[i] + 1;
            let tail_len = (k - i) as u32;
            let remaining = self.d - prefix;
            if remaining >= value * tail_len {
                for p in &mut self.parts[i..k - 1] {
                    *p = value;
                }
                self.parts[k - 1] = remaining - value * (tail_len - 1);
                return Some(&self.parts);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.advance().map(|p| Partition(p.to_vec()))
    }
}

/// `#P(k, d)` by the recurrence `p(d, k) = p(d - 1, k - 1) + p(d - k, k)`.
pub fn count_partitions_into(d: u32, k: u32) -> Result<BigCount> {
    if k < 1 || k > d {
        return Err(Error::InvalidPartShape { d, k });
    }
    let (d, k) = (d as usize, k as usize);
    // table[n][j]: partitions of n into exactly j parts
    let mut table = vec![vec![BigCount::zero(); k + 1]; d + 1];
    table[0][0] = BigCount::one();
    for n in 1..=d {
        for j in 1..=k.min(n) {
            let mut v = table[n - 1][j - 1].clone();
            v += &table[n - j][j];
            table[n][j] = v;
        }
    }
    Ok(table[d][k].clone())
}

/// `P(d)` by Euler's pentagonal-number recurrence.
pub fn count_partitions(d: u32) -> Result<BigCount> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let d = d as usize;
    let mut table: Vec<BigCount> = Vec::with_capacity(d + 1);
    table.push(BigCount::one());
    for n in 1..=d {
        let mut plus = BigCount::zero();
        let mut minus = BigCount::zero();
        for j in 1usize.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let bucket = if j % 2 == 1 { &mut plus } else { &mut minus };
            *bucket += &table[n - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                *bucket += &table[n - g2];
            }
        }
        let value = plus
            .checked_sub(&minus)
            .expect("pentagonal recurrence stays nonnegative");
        table.push(value);
    }
    Ok(table.pop().unwrap())
}

/// `exp(pi * sqrt(2d/3))`, nudged up two ulps so rounding in `sqrt` and
/// `exp` cannot push it below the true value.
pub fn hardy_ramanujan_bound(d: u32) -> f64 {
    let x = core::f64::consts::PI * libm::sqrt(2.0 * d as f64 / 3.0);
    libm::exp(x).next_up().next_up()
}
