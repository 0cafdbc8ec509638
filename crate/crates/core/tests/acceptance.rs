//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use polycount_core::counting::{
    asymptotic_report, consecutive_ratio, count_irreducible_univariate, count_normalized,
    count_univariate, torsion_product, CountTable, CountingParams, TorsionFactor,
};
use polycount_core::oracle::{Oracle, PrimeField};
use polycount_core::partitions::{count_partitions, hardy_ramanujan_bound, partitions_of};
use polycount_core::{BigCount, ExactRatio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

const FIELD_SIZES: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

const REFERENCE_F2: [(u32, &str, &str); 10] = [
    (1, "6", "6"),
    (2, "56", "35"),
    (3, "960", "694"),
    (4, "31744", "26089"),
    (5, "2064384", "1862994"),
    (6, "266338304", "253247715"),
    (7, "68451041280", "66799608630"),
    (8, "35115652612096", "34698378752226"),
    (9, "35993612646875136", "35781375988234520"),
    (10, "73750947497819242496", "73534241823793715433"),
];

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn params(q: u64, m: u32) -> CountingParams {
    CountingParams::new(q, m).expect("valid params")
}

fn big(s: &str) -> BigCount {
    s.parse().expect("decimal literal")
}

fn ratio(n: i64, d: i64) -> ExactRatio {
    ExactRatio::new(BigInt::from(n), BigInt::from(d)).unwrap()
}

fn reference_table() -> Outcome {
    let start = Instant::now();
    let table = CountTable::up_to(params(2, 2), 10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (d, n, i) in REFERENCE_F2 {
        let row = table.get(d).unwrap();
        ensure!(
            row.normalized == big(n),
            "N({d}) = {} != {n}",
            row.normalized
        );
        ensure!(
            row.irreducible == big(i),
            "I({d}) = {} != {i}",
            row.irreducible
        );
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("10 rows exact in {elapsed:?}"))
}

fn ratio_display() -> Outcome {
    let table = CountTable::up_to(params(2, 2), 10).map_err(|e| e.to_string())?;
    let printed = [
        "0.625", "0.72291", "0.82185", "0.90244", "0.95084", "0.97587", "0.98811", "0.99410",
        "0.99706",
    ];
    ensure!(
        table.get(1).unwrap().density() == ExactRatio::one(),
        "I(1)/N(1) != 1"
    );
    for (d, prefix) in (2u32..).zip(printed) {
        let exact = table.get(d).unwrap().density().truncate_decimal(5);
        ensure!(
            exact.starts_with(prefix),
            "d = {d}: {exact} does not start with {prefix}"
        );
    }
    Ok("9 printed prefixes match the exact expansions".into())
}

fn asymptotic_constants() -> Outcome {
    let rows = asymptotic_report(&params(2, 2), 10).map_err(|e| e.to_string())?;
    let ten = rows.iter().find(|r| r.degree == 10).unwrap();
    ensure!(
        ten.predicted_simplified == ratio(3, 1024),
        "prediction at d=10 is not 3/2^10"
    );
    let bound = ratio(3, 1000);
    ensure!(
        ten.relative_error_simplified < bound,
        "relative error {} >= 0.003",
        ten.relative_error_simplified.render_decimal(6)
    );
    let mut shrink = Vec::new();
    for q in [2u64, 3] {
        let rows = asymptotic_report(&params(q, 2), 10).map_err(|e| e.to_string())?;
        let at = |d: u32| rows.iter().find(|r| r.degree == d).unwrap();
        let (e5, e10) = (
            &at(5).relative_error_simplified,
            &at(10).relative_error_simplified,
        );
        ensure!(
            e10 < e5,
            "q = {q}: error at d=10 ({e10}) not below d=5 ({e5})"
        );
        shrink.push(format!(
            "q={q}: {} -> {}",
            e5.render_decimal(5),
            e10.render_decimal(7)
        ));
    }
    Ok(format!(
        "rel. error at d=10 is {}; {}",
        ten.relative_error_simplified.render_decimal(6),
        shrink.join(", ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (q, m, d_max) in [(2u64, 2u32, 4u32), (3, 2, 3), (2, 3, 2)] {
        let field = PrimeField::new(q).map_err(|e| e.to_string())?;
        let mut oracle = Oracle::new(field, m, d_max).map_err(|e| e.to_string())?;
        let table = CountTable::up_to(params(q, m), d_max).map_err(|e| e.to_string())?;
        for d in 1..=d_max {
            let brute = oracle.counts(d).map_err(|e| e.to_string())?.clone();
            let row = table.get(d).unwrap();
            ensure!(
                brute.normalized == row.normalized,
                "N mismatch q={q} m={m} d={d}"
            );
            ensure!(
                brute.irreducible == row.irreducible,
                "I mismatch q={q} m={m} d={d}"
            );
            ensure!(
                brute.reducible == row.reducible,
                "R mismatch q={q} m={m} d={d}"
            );
            ensure!(
                brute.by_factor_count == row.by_factor_count,
                "S_k mismatch q={q} m={m} d={d}: {:?} vs {:?}",
                brute.by_factor_count,
                row.by_factor_count
            );
            let report = oracle.factorization_report(d).map_err(|e| e.to_string())?;
            ensure!(
                report.passed(),
                "factorization report failed q={q} m={m} d={d}"
            );
            checked += 1;
        }
        if (q, m) == (2, 2) {
            ensure!(
                oracle.counts(4).unwrap().irreducible == big("26089"),
                "oracle I(4) != 26089"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{checked} (q, m, d) triples agree in {elapsed:?}"))
}

fn univariate_cross_check() -> Outcome {
    for q in [2u64, 3] {
        let field = PrimeField::new(q).unwrap();
        let mut oracle = Oracle::new(field, 1, 6).map_err(|e| e.to_string())?;
        for d in 1..=6 {
            let brute = oracle.counts(d).map_err(|e| e.to_string())?;
            let gauss = count_irreducible_univariate(q, d).map_err(|e| e.to_string())?;
            ensure!(
                brute.irreducible == gauss.monic,
                "monic I_1 mismatch q={q} d={d}"
            );
            let all = &brute.normalized * &BigCount::from(q - 1);
            ensure!(
                all == count_univariate(q, d).unwrap(),
                "N_1 mismatch q={q} d={d}"
            );
            ensure!(
                &brute.irreducible * &BigCount::from(q - 1) == gauss.total,
                "total I_1 mismatch q={q} d={d}"
            );
        }
    }
    let monic = count_irreducible_univariate(2, 50).unwrap().monic;
    let scaled = ExactRatio::new(
        (&monic * &BigCount::from(50u32)).to_bigint(),
        BigCount::from(2u32).pow(50).to_bigint(),
    )
    .unwrap();
    let deviation = (&scaled - &ExactRatio::one()).abs();
    ensure!(
        deviation < ratio(1, 1_000_000),
        "|d * I_1/q^d - 1| = {}",
        deviation.render_decimal(12)
    );
    Ok(format!(
        "F_2, F_3 up to d=6 exhaustive; |50 I_1(50)/2^50 - 1| = {}",
        deviation.render_decimal(12)
    ))
}

fn bound_suites() -> Outcome {
    // Ratio identity of consecutive normalized counts, independent closed form.
    for q in FIELD_SIZES {
        for d in 1..=40u32 {
            let qd2 = BigInt::from(q).pow(d + 2);
            // (1 / q^(d+2)) * (1 - (q - 1) / (q^(d+2) - 1))
            let closed = ExactRatio::new(&qd2 - 1 - (q as i64 - 1), &qd2 * (&qd2 - 1)).unwrap();
            let got = consecutive_ratio(&params(q, 2), d).map_err(|e| e.to_string())?;
            ensure!(got == closed, "ratio identity fails q={q} d={d}");
        }
    }

    // Product bounds for N(a) N(b).
    let mut product_checks = 0;
    for q in FIELD_SIZES {
        let p = params(q, 2);
        let n: Vec<BigCount> = (1..=60).map(|d| count_normalized(&p, d).unwrap()).collect();
        let at = |d: u32| &n[d as usize - 1];
        let q3 = BigCount::from(q).pow(3);
        let q5 = BigCount::from(q).pow(5);
        for a in 1..60u32 {
            for b in 1..=(60 - a) {
                let prod = at(a) * at(b);
                ensure!(
                    prod <= *at(a + b),
                    "N(a)N(b) <= N(a+b) fails q={q} a={a} b={b}"
                );
                ensure!(
                    prod <= &q3 * at(a + b - 1),
                    "N(a)N(b) <= q^3 N(a+b-1) fails q={q} a={a} b={b}"
                );
                if a >= 3 && b >= 3 {
                    ensure!(
                        prod <= &q5 * at(a + b - 2),
                        "N(a)N(b) <= q^5 N(a+b-2) fails q={q} a={a} b={b}"
                    );
                }
                product_checks += 1;
            }
        }
    }

    // Torsion product never exceeds the plain product.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0042);
    for _ in 0..1000 {
        let runs = rng.gen_range(1..=5);
        let factors: Vec<TorsionFactor> = (0..runs)
            .map(|_| {
                let ell = BigCount::from(rng.gen_range(1u64..=1_000_000));
                let alpha = std::num::NonZeroU32::new(rng.gen_range(1..=6)).unwrap();
                TorsionFactor::new(ell, alpha)
            })
            .collect();
        let plain: BigCount = factors
            .iter()
            .map(|f| f.ell.pow(f.multiplicity.get()))
            .product();
        ensure!(
            torsion_product(&factors) <= plain,
            "torsion bound fails for {factors:?}"
        );
    }

    // Partition count bound.
    for d in 1..=100 {
        let count = count_partitions(d).unwrap().to_f64();
        ensure!(count < hardy_ramanujan_bound(d), "P({d}) bound fails");
    }

    // Non-dominant partitions are small.
    let two = params(2, 2);
    let table = CountTable::up_to(two, 30).map_err(|e| e.to_string())?;
    let irr = |d: u32| table.get(d).unwrap().irreducible.clone();
    let q6 = BigCount::from(64u32);
    let mut partitions_checked = 0;
    for d in 3..=12u32 {
        let cap = &q6 * &table.get(d - 2).unwrap().normalized;
        for k in 2..=d {
            for part in partitions_of(d, k).unwrap() {
                if part.parts() == [1, d - 1] {
                    continue;
                }
                let factors: Vec<TorsionFactor> = part
                    .runs()
                    .map(|(e, a)| TorsionFactor::new(irr(e), std::num::NonZeroU32::new(a).unwrap()))
                    .collect();
                ensure!(
                    torsion_product(&factors) <= cap,
                    "partition bound fails at {part:?}"
                );
                partitions_checked += 1;
            }
        }
    }

    // Two-sided bound on R(d) / (N(1) N(d-1)).
    let n1 = table.get(1).unwrap().normalized.clone();
    let holds = |d: u32| {
        let r = &table.get(d).unwrap().reducible;
        let scaled =
            ExactRatio::from_counts(r, &(&n1 * &table.get(d - 1).unwrap().normalized)).unwrap();
        let slack = ratio(1, d as i64);
        let lower = &ExactRatio::one() - &slack;
        let upper = &ExactRatio::one() + &slack;
        lower <= scaled && scaled <= upper
    };
    for d in 10..=30 {
        ensure!(holds(d), "two-sided reducible bound fails at d={d}");
    }
    let threshold = (2..=30u32)
        .rev()
        .take_while(|&d| holds(d))
        .last()
        .unwrap_or(31);

    Ok(format!(
        "ratio identity 280 cases, {product_checks} (q, a, b) product bounds, 1000 torsion draws, \
         P(d) bound d<=100, {partitions_checked} partitions, reducible bound from d={threshold}"
    ))
}

fn accounting_identities() -> Outcome {
    for q in [2u64, 3] {
        for m in [2u32, 3] {
            let table = CountTable::up_to(params(q, m), 15).map_err(|e| e.to_string())?;
            for row in table.rows() {
                let d = row.degree;
                ensure!(
                    &row.irreducible + &row.reducible == row.normalized,
                    "N != I + R at q={q} m={m} d={d}"
                );
                let total: BigCount = row.by_factor_count.iter().sum();
                ensure!(total == row.normalized, "N != sum S_k at q={q} m={m} d={d}");
            }
        }
    }
    Ok("q in {2,3}, m in {2,3}, d <= 15".into())
}

fn scale_and_memory() -> Outcome {
    let start = Instant::now();
    let table = CountTable::up_to(params(2, 2), 50).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(table.max_degree() == 50, "table stopped early");
    ensure!(elapsed < Duration::from_secs(10), "d = 50 took {elapsed:?}");

    // The stream reuses one k-element buffer for the whole enumeration.
    let mut visited = 0u64;
    for k in 1..=50 {
        let mut stream = partitions_of(50, k).unwrap();
        let first = stream.advance().unwrap();
        let (ptr, len) = (first.as_ptr(), first.len());
        visited += 1;
        while let Some(parts) = stream.advance() {
            ensure!(
                parts.as_ptr() == ptr && parts.len() == len && len == k as usize,
                "partition buffer reallocated or resized at k={k}"
            );
            visited += 1;
        }
    }
    ensure!(
        BigCount::from(visited) == count_partitions(50).unwrap(),
        "stream visited {visited} partitions of 50"
    );
    Ok(format!(
        "d = 50 table in {elapsed:?}; {visited} partitions of 50 in O(k) buffers"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "reference table reproduction", reference_table),
        (2, "ratio display prefixes", ratio_display),
        (3, "asymptotic constants", asymptotic_constants),
        (4, "oracle equivalence", oracle_equivalence),
        (5, "univariate cross-check", univariate_cross_check),
        (6, "bound and identity properties", bound_suites),
        (7, "accounting identities", accounting_identities),
        (8, "scale and streaming memory", scale_and_memory),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] AC{id} {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] AC{id} {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
