//! Brute-force oracles played against the closed forms on small orders.
//! The enumeration side is the independent witness for every frozen value.

use std::collections::BTreeSet;

use num::{BigRational, BigUint, One};
use schroder_core::enumeration::{
    count, enumerate, insert_h, insertion_count, peak_table, weighted_table, Guards,
};
use schroder_core::forms::{
    a_series, narayana, narayana_gf, p_s2, pyramid_identity, r_a, r_l, runs_gf_s1, small2_identity,
    Specialization,
};
use schroder_core::path::{
    classify_u, primitive_factorization, stats, validate_variant, LatticePath, StepSet, UClass,
    Variant,
};
use schroder_core::series::{frac, rat, Series};

fn counts(set: StepSet, variant: Variant, n_max: usize) -> Vec<BigUint> {
    let g = Guards::default();
    (1..=n_max)
        .map(|n| count(set, n, variant, &g).unwrap())
        .collect()
}

fn coeff_is(series: &Series, n: usize, value: &BigUint) -> bool {
    series.coeff(n) == &BigRational::from_integer(value.clone().into())
}

#[test]
fn catalan_from_division_matches_enumeration() {
    // (1 - sqrt(1-4x)) / (2x) against brute-forced Dyck counts
    let n = 7;
    let root = Series::from_int_coeffs(&[1, -4], n + 1).sqrt().unwrap();
    let catalan = Series::one(n + 1)
        .sub(&root)
        .unwrap()
        .div(&Series::from_int_coeffs(&[0, 2], n + 1))
        .unwrap();
    for (i, c) in counts(StepSet::S1, Variant::L, n).iter().enumerate() {
        assert!(coeff_is(&catalan, i + 1, c), "order {}", i + 1);
    }
    assert!(catalan.coeff(0).is_one());
}

#[test]
fn p_s2_matches_enumeration() {
    let series = p_s2(6);
    for (i, c) in counts(StepSet::S2, Variant::L, 6).iter().enumerate() {
        assert!(coeff_is(&series, i + 1, c), "order {}", i + 1);
    }
}

#[test]
fn run_distribution_of_dyck_paths_matches_runs_gf() {
    // Σ y^runs over Dyck paths of order n, frozen via the stats oracle
    let g = Guards::default();
    for y in [rat(2), frac(1, 2), rat(3)] {
        let series = runs_gf_s1(&y, 6).unwrap();
        for n in 1..=6 {
            let mut total = BigRational::default();
            for p in enumerate(StepSet::S1, n, Variant::L, &g).unwrap() {
                let st = stats(&p).unwrap();
                total += schroder_core::series::pow(&y, st.runs);
            }
            assert_eq!(&total, series.coeff(n), "y={y} n={n}");
        }
    }
}

#[test]
fn runs_equal_twice_order_minus_twice_peaks() {
    let g = Guards::default();
    for n in 1..=8 {
        for p in enumerate(StepSet::S1, n, Variant::L, &g).unwrap() {
            let st = stats(&p).unwrap();
            assert_eq!(st.runs, 2 * st.order - 2 * st.peaks, "{p}");
            assert_eq!(st.diagonal_runs, st.runs);
        }
    }
}

#[test]
fn diagonal_plus_horizontal_runs_cover_all_runs_on_s3() {
    let g = Guards::default();
    for n in 1..=6 {
        for p in enumerate(StepSet::S3, n, Variant::L, &g).unwrap() {
            let st = stats(&p).unwrap();
            assert_eq!(st.diagonal_runs + st.horizontal_runs, st.runs, "{p}");
        }
    }
}

fn narayana_row(n: u64, range: std::ops::RangeInclusive<u64>) -> Vec<BigUint> {
    range.map(|k| narayana(n, k)).collect()
}

#[test]
fn narayana_matches_peak_distribution() {
    let t = peak_table(7, &Guards::default()).unwrap();
    for n in 1..=7u64 {
        for k in 1..=n {
            assert_eq!(t.get(&[n, k]), narayana(n, k), "n={n} k={k}");
        }
        let row_sum: BigUint = narayana_row(n, 1..=n).into_iter().sum();
        assert_eq!(t.marginal(n), row_sum);
    }
}

#[test]
fn weighted_table_is_consistent_with_counts_and_series() {
    let g = Guards::default();
    for variant in [Variant::L, Variant::A] {
        let t = weighted_table(StepSet::S3, 6, variant, &g).unwrap();
        for n in 1..=6 {
            // marginal = cardinality
            assert_eq!(t.marginal(n as u64), count(StepSet::S3, n, variant, &g).unwrap());
            // evaluation at (1,1) region too
            let one = t.eval_markers(n as u64, &rat(1), &rat(1));
            let series = match variant {
                Variant::L => r_l(&Specialization::counting(6)).unwrap(),
                Variant::A => r_a(&Specialization::counting(6)).unwrap(),
            };
            assert_eq!(&one, series.coeff(n));
        }
    }
}

#[test]
fn a_series_counts_three_colored_horizontal_runs() {
    let g = Guards::default();
    let series = a_series(6);
    let t = weighted_table(StepSet::S3, 6, Variant::L, &g).unwrap();
    for n in 1..=6u64 {
        assert_eq!(&t.eval_markers(n, &rat(1), &rat(3)), series.coeff(n as usize));
    }
}

#[test]
fn insertion_cardinality_and_statistics_contract() {
    let g = Guards::default();
    for n in 1..=4 {
        for base in enumerate(StepSet::S1, n, Variant::L, &g).unwrap() {
            let st = stats(&base).unwrap();
            for m in 0..=4usize {
                let out = insert_h(&base, m, &g).unwrap();
                assert_eq!(
                    BigUint::from(out.len()),
                    insertion_count(st.order, st.peaks, m as u64),
                    "base {base} m {m}"
                );
                for (q, plan) in &out {
                    let qs = stats(q).unwrap();
                    assert_eq!(qs.order, st.order + m as u64);
                    assert_eq!(qs.diagonal_runs, 2 * st.order - 2 * st.peaks - plan.j());
                    assert_eq!(qs.horizontal_runs, m as u64 - plan.i() - plan.j());
                }
            }
        }
    }
}

#[test]
fn insertion_disjoint_union_small() {
    let g = Guards::default();
    for total in 1..=5usize {
        let mut generated: Vec<LatticePath> = Vec::new();
        for n in 1..=total {
            for base in enumerate(StepSet::S1, n, Variant::L, &g).unwrap() {
                generated.extend(insert_h(&base, total - n, &g).unwrap().into_iter().map(|(q, _)| q));
            }
        }
        generated.sort();
        let duplicates = generated.windows(2).any(|w| w[0] == w[1]);
        assert!(!duplicates, "duplicate at total order {total}");
        let target: Vec<LatticePath> = enumerate(StepSet::S3, total, Variant::L, &g)
            .unwrap()
            .filter(LatticePath::contains_up)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(generated, target, "total order {total}");
    }
}

#[test]
fn factorization_is_a_bijection_on_axis_free_paths() {
    let g = Guards::default();
    for n in 1..=6 {
        for p in enumerate(StepSet::S3, n, Variant::A, &g).unwrap() {
            let factors = primitive_factorization(&p).unwrap();
            let mut rebuilt = Vec::new();
            for f in &factors {
                assert!(schroder_core::path::is_primitive(f), "{p}");
                rebuilt.extend_from_slice(f.steps());
            }
            assert_eq!(LatticePath::from_steps(rebuilt), p);
            let returns = p.heights().filter(|&h| h == 0).count();
            assert_eq!(factors.len(), returns, "{p}");
        }
    }
}

#[test]
fn class_counts_match_lemma_series() {
    let g = Guards::default();
    let spec = Specialization::counting(6);
    let mut tallies = vec![vec![BigUint::default(); 7]; 5];
    for n in 1..=6 {
        for p in enumerate(StepSet::S3, n, Variant::L, &g).unwrap() {
            let idx = match classify_u(&p) {
                UClass::U1 => 0,
                UClass::U2 => 1,
                UClass::U3 => 2,
                UClass::U4 => 3,
                UClass::HOnly => 4,
            };
            tallies[idx][n] += 1u32;
        }
    }
    for (idx, class) in [UClass::U1, UClass::U2, UClass::U3, UClass::U4, UClass::HOnly]
        .into_iter()
        .enumerate()
    {
        let series = schroder_core::forms::u_class_series(class, &spec).unwrap();
        for n in 1..=6 {
            assert!(
                coeff_is(&series, n, &tallies[idx][n]),
                "{class} at order {n}: counted {} series {}",
                tallies[idx][n],
                series.coeff(n)
            );
        }
    }
}

#[test]
fn small2_identity_against_enumeration() {
    let g = Guards::default();
    for n in 1..=6u64 {
        assert_eq!(
            small2_identity(n),
            count(StepSet::S4, n as usize, Variant::A, &g).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn pyramid_identity_small_orders() {
    let g = Guards::default();
    let series = a_series(8);
    for n in 1..=8u64 {
        let lhs = pyramid_identity(n, &g).unwrap();
        assert!(coeff_is(&series, n as usize, &lhs), "n={n}");
    }
}

#[test]
fn sqrt_pinned_by_s2_counts() {
    // sqrt(1 - 10x + 9x^2) enters the S2 closed form; the form itself is
    // pinned by enumeration at orders 1..3 (1, 5, 29)
    let expect: Vec<BigUint> = [1u32, 5, 29].iter().map(|&v| BigUint::from(v)).collect();
    assert_eq!(counts(StepSet::S2, Variant::L, 3), expect);
    let series = p_s2(3);
    for (i, c) in expect.iter().enumerate() {
        assert!(coeff_is(&series, i + 1, c));
    }
}

#[test]
fn variant_a_enumeration_agrees_with_validator() {
    let g = Guards::default();
    for n in 1..=5 {
        let direct: BTreeSet<LatticePath> =
            enumerate(StepSet::S3, n, Variant::A, &g).unwrap().collect();
        let filtered: BTreeSet<LatticePath> = enumerate(StepSet::S3, n, Variant::L, &g)
            .unwrap()
            .filter(|p| validate_variant(p, StepSet::S3, Variant::A))
            .collect();
        assert_eq!(direct, filtered);
    }
}

#[test]
fn narayana_gf_coefficients_sum_rows() {
    let y = rat(2);
    let series = narayana_gf(&y, 6).unwrap();
    for n in 1..=6u64 {
        let mut expect = BigRational::default();
        for (k, v) in narayana_row(n, 1..=n).into_iter().enumerate() {
            expect += BigRational::from_integer(v.into()) * schroder_core::series::pow(&y, k as u64 + 1);
        }
        assert_eq!(&expect, series.coeff(n as usize));
    }
}
