//! Structural constructions: insertion, factorization, the class
//! partition and the pyramid-weight transfer.

use std::collections::BTreeSet;

use num::BigUint;
use rayon::prelude::*;
use schroder_core::enumeration::{
    count, enumerate, insert_h, insertion_count, pyramid_table,
};
use schroder_core::forms::{a_series, primitive_series, r_a, r_l, u_class_series, Specialization};
use schroder_core::path::{
    classify_u, is_primitive, primitive_factorization, stats, LatticePath, StepSet, UClass,
    Variant,
};
use schroder_core::series::Series;

use super::{uint_rat, SuiteConfig, VerifySuite};
use crate::report::Check;

pub struct BijectionsSuite;

impl VerifySuite for BijectionsSuite {
    fn name(&self) -> &'static str {
        "bijections"
    }

    fn summary(&self) -> &'static str {
        "insertion construction, primitive factorization, class partition, pyramid transfer"
    }

    fn run(&self, config: &SuiteConfig) -> Vec<Check> {
        let mut checks = vec![insertion_vertex_count(config)];
        checks.extend(insertion_contract(config));
        checks.push(insertion_disjoint_union(config));
        checks.push(factorization_round_trip(config));
        checks.extend(class_partition(config));
        checks.push(primitive_inverse(config));
        checks.push(pyramid_transfer(config));
        checks
    }
}

/// A Dyck path of order n with k peaks has 2n+1 vertices of which 2n-2k
/// are runs; the insertion procedure relies on the other 2k+1.
fn insertion_vertex_count(config: &SuiteConfig) -> Check {
    let guards = &config.guards;
    let limit = config.insertion_n_max.min(guards.max_order(StepSet::S1));
    let mut failures = Vec::new();
    for n in 1..=limit {
        for base in enumerate(StepSet::S1, n, Variant::L, guards).expect("guarded") {
            let st = stats(&base).expect("nonempty");
            let steps = base.steps();
            let runs = (1..steps.len()).filter(|&t| steps[t - 1] == steps[t]).count() as u64;
            let nonruns = steps.len() as u64 + 1 - runs;
            if nonruns != 2 * st.peaks + 1 || runs != 2 * st.order - 2 * st.peaks {
                failures.push(base.to_string());
            }
        }
    }
    Check::result(
        "insertion-vertex-count",
        failures.is_empty(),
        if failures.is_empty() {
            format!("2k+1 non-run vertices on every Dyck base, n<={limit}")
        } else {
            failures.join("; ")
        },
    )
}

/// Generator cardinality against the binomial sum, and the per-output
/// statistics contract, over all small bases.
fn insertion_contract(config: &SuiteConfig) -> Vec<Check> {
    let guards = &config.guards;
    let limit = config.insertion_n_max.min(guards.max_order(StepSet::S1));
    let m_max = config.insertion_m_max.min(guards.max_insertions);
    let results: Vec<(Vec<String>, Vec<String>)> = (1..=limit)
        .into_par_iter()
        .map(|n| {
            let mut card_fails = Vec::new();
            let mut stat_fails = Vec::new();
            for base in enumerate(StepSet::S1, n, Variant::L, guards).expect("guarded") {
                let st = stats(&base).expect("nonempty");
                for m in 0..=m_max {
                    let out = insert_h(&base, m, guards).expect("guarded");
                    let distinct: BTreeSet<&LatticePath> = out.iter().map(|(q, _)| q).collect();
                    if distinct.len() != out.len()
                        || BigUint::from(out.len()) != insertion_count(st.order, st.peaks, m as u64)
                    {
                        card_fails.push(format!("base {base} m={m}"));
                    }
                    for (q, plan) in &out {
                        let qs = stats(q).expect("nonempty");
                        if qs.order != st.order + m as u64
                            || qs.diagonal_runs != 2 * st.order - 2 * st.peaks - plan.j()
                            || qs.horizontal_runs != m as u64 - plan.i() - plan.j()
                        {
                            stat_fails.push(format!("base {base} m={m} output {q}"));
                        }
                    }
                }
            }
            (card_fails, stat_fails)
        })
        .collect();
    let card_fails: Vec<String> = results.iter().flat_map(|(c, _)| c.clone()).collect();
    let stat_fails: Vec<String> = results.iter().flat_map(|(_, s)| s.clone()).collect();
    let scope = format!("Dyck bases of order <={limit}, up to {m_max} insertions");
    vec![
        Check::result(
            "insertion-cardinality",
            card_fails.is_empty(),
            if card_fails.is_empty() {
                format!("generator size equals the binomial sum; {scope}")
            } else {
                card_fails.join("; ")
            },
        ),
        Check::result(
            "insertion-statistics",
            stat_fails.is_empty(),
            if stat_fails.is_empty() {
                format!("every output has order n+m, dr = 2n-2k-j, hr = m-i-j; {scope}")
            } else {
                stat_fails.join("; ")
            },
        ),
    ]
}

/// Inserting into all Dyck bases reconstructs the up-containing Schröder
/// paths of each total order exactly once.
fn insertion_disjoint_union(config: &SuiteConfig) -> Check {
    let guards = &config.guards;
    let limit = config
        .union_n_max
        .min(guards.max_order(StepSet::S1))
        .min(guards.max_order(StepSet::S3));
    let failures: Vec<String> = (1..=limit)
        .into_par_iter()
        .filter_map(|total| {
            let mut generated: Vec<LatticePath> = Vec::new();
            for n in 1..=total {
                for base in enumerate(StepSet::S1, n, Variant::L, guards).expect("guarded") {
                    generated
                        .extend(insert_h(&base, total - n, guards).expect("guarded").into_iter().map(|(q, _)| q));
                }
            }
            generated.sort();
            if generated.windows(2).any(|w| w[0] == w[1]) {
                return Some(format!("duplicates at total order {total}"));
            }
            let target: Vec<LatticePath> = enumerate(StepSet::S3, total, Variant::L, guards)
                .expect("guarded")
                .filter(LatticePath::contains_up)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            (generated != target).then(|| {
                format!(
                    "total order {total}: generated {} paths, target {}",
                    generated.len(),
                    target.len()
                )
            })
        })
        .collect();
    Check::result(
        "insertion-disjoint-union",
        failures.is_empty(),
        if failures.is_empty() {
            format!("insertion reconstructs every up-containing path exactly once, total order <={limit}")
        } else {
            failures.join("; ")
        },
    )
}

fn factorization_round_trip(config: &SuiteConfig) -> Check {
    let guards = &config.guards;
    let limit = config.factorization_n_max.min(guards.max_order(StepSet::S3));
    let failures: Vec<String> = (1..=limit)
        .into_par_iter()
        .flat_map(|n| {
            let mut bad = Vec::new();
            for p in enumerate(StepSet::S3, n, Variant::A, guards).expect("guarded") {
                let factors = primitive_factorization(&p).expect("axis-free");
                let mut rebuilt = Vec::new();
                for f in &factors {
                    if !is_primitive(f) {
                        bad.push(format!("non-primitive factor of {p}"));
                    }
                    rebuilt.extend_from_slice(f.steps());
                }
                if LatticePath::from_steps(rebuilt) != p {
                    bad.push(format!("concatenation does not rebuild {p}"));
                }
                let returns = p.heights().filter(|&h| h == 0).count();
                if factors.len() != returns {
                    bad.push(format!("factor count vs axis returns for {p}"));
                }
            }
            bad
        })
        .collect();
    Check::result(
        "primitive-factorization",
        failures.is_empty(),
        if failures.is_empty() {
            format!("round-trip on all axis-free paths of order <={limit}")
        } else {
            failures.join("; ")
        },
    )
}

/// Class series against classified counts at the counting point, the U2=U3
/// equality, and the partition reassembly on sample grid points.
fn class_partition(config: &SuiteConfig) -> Vec<Check> {
    let guards = &config.guards;
    let limit = config.n_max.min(guards.max_order(StepSet::S3));
    let classes = [UClass::U1, UClass::U2, UClass::U3, UClass::U4, UClass::HOnly];
    let mut tallies = vec![vec![BigUint::default(); limit + 1]; classes.len()];
    for n in 1..=limit {
        for p in enumerate(StepSet::S3, n, Variant::L, guards).expect("guarded") {
            let idx = classes.iter().position(|c| *c == classify_u(&p)).expect("total");
            tallies[idx][n] += 1u32;
        }
    }
    let spec = Specialization::counting(limit);
    let mut failures = Vec::new();
    for (idx, class) in classes.into_iter().enumerate() {
        let series = u_class_series(class, &spec).expect("admissible");
        for n in 1..=limit {
            if &uint_rat(&tallies[idx][n]) != series.coeff(n) {
                failures.push(format!(
                    "{class} at order {n}: classified {} vs series {}",
                    tallies[idx][n],
                    series.coeff(n)
                ));
            }
        }
    }
    let counts_check = Check::result(
        "u-class-lemma-counts",
        failures.is_empty(),
        if failures.is_empty() {
            format!("class series match classified counts at (y,z)=(1,1), n<={limit}")
        } else {
            failures.join("; ")
        },
    );

    let mut failures = Vec::new();
    for (y, z) in config.grid_points() {
        let spec = Specialization::new(y.clone(), z.clone(), config.trunc.min(24)).expect("nonzero");
        let u2 = u_class_series(UClass::U2, &spec).expect("admissible");
        let u3 = u_class_series(UClass::U3, &spec).expect("admissible");
        if u2 != u3 {
            failures.push(format!("U2 vs U3 at (y,z)=({y},{z})"));
        }
        let mut total = Series::one(spec.trunc());
        for class in classes {
            total = total
                .add(&u_class_series(class, &spec).expect("admissible"))
                .expect("equal truncation");
        }
        if total != r_l(&spec).expect("admissible") {
            failures.push(format!("partition sum at (y,z)=({y},{z})"));
        }
    }
    let partition_check = Check::result(
        "u-class-partition",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "U2 = U3 and the five classes reassemble the full series on {}",
                config.grid_label()
            )
        } else {
            failures.join("; ")
        },
    );
    vec![counts_check, partition_check]
}

/// The axis-free series is the geometric-series inverse of the primitive
/// class series.
fn primitive_inverse(config: &SuiteConfig) -> Check {
    let trunc = config.trunc;
    let failures: Vec<String> = config
        .grid_points()
        .into_par_iter()
        .filter_map(|(y, z)| {
            let spec = Specialization::new(y.clone(), z.clone(), trunc).expect("nonzero");
            let product = r_a(&spec)
                .expect("admissible")
                .mul(
                    &Series::one(trunc)
                        .sub(&primitive_series(&spec).expect("admissible"))
                        .expect("equal truncation"),
                )
                .expect("equal truncation");
            (product != Series::one(trunc)).then(|| format!("(y,z)=({y},{z})"))
        })
        .collect();
    Check::result(
        "primitive-inverse",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "axis-free series times (1 - primitive series) is 1 through x^{trunc} on {}",
                config.grid_label()
            )
        } else {
            failures.join("; ")
        },
    )
}

/// Pyramid-weight transfer: `Σ_k T(n,k) 2^k` must match the 3-colored
/// horizontal-run count, and the distribution must total the Catalan
/// number. A failure here falsifies the pyramid-weight definition itself,
/// and the detail says so.
fn pyramid_transfer(config: &SuiteConfig) -> Check {
    let guards = &config.guards;
    let limit = config.pyramid_n_max.min(guards.max_order(StepSet::S1));
    let series = a_series(limit);
    let table = pyramid_table(limit, guards).expect("guarded");
    let catalan = |n: usize| count(StepSet::S1, n, Variant::L, guards).expect("guarded");
    let mut failures = Vec::new();
    for n in 1..=limit as u64 {
        let two = BigUint::from(2u32);
        let mut transfer = BigUint::default();
        let mut total = BigUint::default();
        for (key, c) in table.rows() {
            if key[0] == n {
                transfer += c * num::pow(two.clone(), key[1] as usize);
                total += c;
            }
        }
        if &uint_rat(&transfer) != series.coeff(n as usize) {
            failures.push(format!(
                "n={n}: Σ T(n,k)2^k = {transfer} but the colored-run series gives {}",
                series.coeff(n as usize)
            ));
        }
        if total != catalan(n as usize) {
            failures.push(format!("n={n}: Σ T(n,k) does not total the Catalan number"));
        }
    }
    Check::result(
        "pyramid-weight-transfer",
        failures.is_empty(),
        if failures.is_empty() {
            format!("Σ T(n,k)2^k matches the colored-run series and Σ T(n,k) the Catalan numbers, n<={limit}")
        } else {
            format!(
                "pyramid-weight definition falsified (maximal-pyramid heights): {}",
                failures.join("; ")
            )
        },
    )
}
