//! Closed forms against brute force and against each other.

use num::{BigRational, One};
use rayon::prelude::*;
use schroder_core::enumeration::{count, weighted_table, peak_table, DistributionTable};
use schroder_core::forms::{
    a_series, narayana, narayana_gf, p_s2, p_s4, p_s5, p_s6, q_s4, q_s5, q_s6, r_a, r_l,
    runs_gf_s1, small2_identity, Specialization,
};
use schroder_core::path::{StepSet, Variant};
use schroder_core::series::{rat, Series};

use super::{uint_rat, SuiteConfig, VerifySuite};
use crate::report::Check;

pub struct IdentitiesSuite;

impl VerifySuite for IdentitiesSuite {
    fn name(&self) -> &'static str {
        "identities"
    }

    fn summary(&self) -> &'static str {
        "printed expansions, enumeration cross-checks and the trivariate grid identities"
    }

    fn run(&self, config: &SuiteConfig) -> Vec<Check> {
        let mut checks = Vec::new();
        checks.extend(printed_expansions());
        checks.extend(series_vs_enumeration(config));
        checks.extend(grid_identities(config));
        checks.extend(two_route_consistency(config));
        checks.push(narayana_vs_peaks(config));
        checks.push(small2_vs_q_s4(config));
        checks.push(schroeder_doubling(config));
        checks.push(catalan_specializations());
        checks.push(integral_coefficients(config));
        checks
    }
}

fn printed_expansions() -> Vec<Check> {
    let cases: [(&str, Series, [i64; 7]); 3] = [
        ("printed-expansion-q-s4", q_s4(6), [1, 1, 6, 41, 306, 2426, 20076]),
        ("printed-expansion-q-s5", q_s5(6), [1, 1, 3, 12, 53, 248, 1209]),
        ("printed-expansion-q-s6", q_s6(6), [1, 1, 6, 40, 293, 2286, 18637]),
    ];
    cases
        .into_iter()
        .map(|(name, series, expect)| {
            let got: Vec<BigRational> = series.coeffs().to_vec();
            let want: Vec<BigRational> = expect.iter().map(|&v| rat(v)).collect();
            Check::result(
                name,
                got == want,
                format!("coefficients through x^6, exact equality; computed {series}"),
            )
        })
        .collect()
}

/// Each family/variant closed form against exhaustive counts for orders
/// `1..=min(n_max, guard)`.
fn series_vs_enumeration(config: &SuiteConfig) -> Vec<Check> {
    let trunc = config.n_max;
    let counting = Specialization::counting(trunc);
    let forms: Vec<(&str, StepSet, Variant, Series)> = vec![
        ("p-s2", StepSet::S2, Variant::L, p_s2(trunc)),
        ("r-l", StepSet::S3, Variant::L, r_l(&counting).expect("y=1 is admissible")),
        ("r-a", StepSet::S3, Variant::A, r_a(&counting).expect("y=1 is admissible")),
        ("p-s4", StepSet::S4, Variant::L, p_s4(trunc)),
        ("p-s5", StepSet::S5, Variant::L, p_s5(trunc)),
        ("p-s6", StepSet::S6, Variant::L, p_s6(trunc)),
        ("q-s4", StepSet::S4, Variant::A, q_s4(trunc)),
        ("q-s5", StepSet::S5, Variant::A, q_s5(trunc)),
        ("q-s6", StepSet::S6, Variant::A, q_s6(trunc)),
    ];
    let mut checks: Vec<Check> = forms
        .into_par_iter()
        .map(|(label, set, variant, series)| {
            let limit = config.n_max.min(config.guards.max_order(set));
            let mut failures = Vec::new();
            for n in 1..=limit {
                let counted = uint_rat(&count(set, n, variant, &config.guards).expect("guarded"));
                if &counted != series.coeff(n) {
                    failures.push(format!("n={n}: enumerated {counted} vs coefficient {}", series.coeff(n)));
                }
            }
            Check::result(
                format!("series-vs-enumeration-{label}"),
                failures.is_empty(),
                if failures.is_empty() {
                    format!("{set}/{variant} orders 1..={limit}, exact equality")
                } else {
                    failures.join("; ")
                },
            )
        })
        .collect();

    // the 3-colored-horizontal-run series against the weighted count
    let limit = config.n_max.min(config.guards.max_order(StepSet::S3));
    let series = a_series(limit);
    let table = weighted_table(StepSet::S3, limit, Variant::L, &config.guards).expect("guarded");
    let mut failures = Vec::new();
    for n in 1..=limit {
        let weighted = table.eval_markers(n as u64, &rat(1), &rat(3));
        if &weighted != series.coeff(n) {
            failures.push(format!("n={n}: weighted sum {weighted} vs coefficient {}", series.coeff(n)));
        }
    }
    checks.push(Check::result(
        "series-vs-enumeration-a-series",
        failures.is_empty(),
        if failures.is_empty() {
            format!("S3/L weighted by 3^hr, orders 1..={limit}, exact equality")
        } else {
            failures.join("; ")
        },
    ));
    checks
}

fn grid_failures(
    config: &SuiteConfig,
    table: &DistributionTable,
    expand: impl Fn(&Specialization) -> schroder_core::Result<Series> + Sync,
) -> Vec<String> {
    let limit = config.n_max.min(config.guards.max_order(StepSet::S3));
    config
        .grid_points()
        .into_par_iter()
        .flat_map(|(y, z)| {
            let spec = Specialization::new(y.clone(), z.clone(), limit).expect("nonzero grid");
            let series = expand(&spec).expect("grid points are admissible");
            let mut bad = Vec::new();
            for n in 1..=limit {
                let weighted = table.eval_markers(n as u64, &y, &z);
                if &weighted != series.coeff(n) {
                    bad.push(format!(
                        "(y,z)=({y},{z}) n={n}: table {weighted} vs series {}",
                        series.coeff(n)
                    ));
                }
            }
            bad
        })
        .collect()
}

/// The trivariate identities, pinned pointwise on the marker grid.
fn grid_identities(config: &SuiteConfig) -> Vec<Check> {
    let limit = config.n_max.min(config.guards.max_order(StepSet::S3));
    let points = config.grid_points().len();
    let full = weighted_table(StepSet::S3, limit, Variant::L, &config.guards).expect("guarded");
    let axis_free = weighted_table(StepSet::S3, limit, Variant::A, &config.guards).expect("guarded");

    let fails = grid_failures(config, &full, r_l);
    let detail_ok = format!("{} points of {}, orders 1..={limit}", points, config.grid_label());
    let full_check = Check::result(
        "grid-identity-full",
        fails.is_empty(),
        if fails.is_empty() { detail_ok.clone() } else { fails.join("; ") },
    );

    let fails = grid_failures(config, &axis_free, r_a);
    let axis_check = Check::result(
        "grid-identity-axis-free",
        fails.is_empty(),
        if fails.is_empty() { detail_ok } else { fails.join("; ") },
    );
    vec![full_check, axis_check]
}

/// Printed closed forms against the trivariate assembly at the matching
/// specialization points.
fn two_route_consistency(config: &SuiteConfig) -> Vec<Check> {
    let n = config.trunc;
    let spec = |y, z| Specialization::from_ints(y, z, n).expect("nonzero");
    let cases: Vec<(&str, Series, Series)> = vec![
        ("two-route-p-s4", p_s4(n), r_l(&spec(2, 2)).expect("admissible")),
        ("two-route-p-s5", p_s5(n), r_l(&spec(1, 2)).expect("admissible")),
        ("two-route-p-s6", p_s6(n), r_l(&spec(2, 1)).expect("admissible")),
        ("two-route-q-s4", q_s4(n), r_a(&spec(2, 2)).expect("admissible")),
        ("two-route-q-s5", q_s5(n), r_a(&spec(1, 2)).expect("admissible")),
        ("two-route-q-s6", q_s6(n), r_a(&spec(2, 1)).expect("admissible")),
        ("two-route-a-series", a_series(n), r_l(&spec(1, 3)).expect("admissible")),
        ("two-route-p-s2", p_s2(n), runs_gf_s1(&rat(2), n).expect("nonzero")),
    ];
    cases
        .into_par_iter()
        .map(|(name, printed, derived)| {
            let ok = printed == derived;
            Check::result(
                name,
                ok,
                if ok {
                    format!("termwise equality through x^{n}")
                } else {
                    let diff = (0..=n).find(|&i| printed.coeff(i) != derived.coeff(i));
                    format!(
                        "first difference at x^{}: printed {} vs derived {}",
                        diff.unwrap_or(0),
                        printed.coeff(diff.unwrap_or(0)),
                        derived.coeff(diff.unwrap_or(0))
                    )
                },
            )
        })
        .collect()
}

fn narayana_vs_peaks(config: &SuiteConfig) -> Check {
    let limit = config.n_max.min(config.guards.max_order(StepSet::S1));
    let table = peak_table(limit, &config.guards).expect("guarded");
    let mut failures = Vec::new();
    for n in 1..=limit as u64 {
        for k in 1..=n {
            if table.get(&[n, k]) != narayana(n, k) {
                failures.push(format!("(n,k)=({n},{k})"));
            }
        }
    }
    Check::result(
        "narayana-peaks",
        failures.is_empty(),
        if failures.is_empty() {
            format!("peak counts equal the closed form for n<={limit}")
        } else {
            failures.join("; ")
        },
    )
}

fn small2_vs_q_s4(config: &SuiteConfig) -> Check {
    let limit = config.deep_n_max;
    let series = q_s4(limit);
    let mut failures = Vec::new();
    for n in 1..=limit as u64 {
        if &uint_rat(&small2_identity(n)) != series.coeff(n as usize) {
            failures.push(format!("n={n}"));
        }
    }
    Check::result(
        "narayana-small2",
        failures.is_empty(),
        if failures.is_empty() {
            format!("Narayana 5-power sums equal the closed form for n<={limit}, exact")
        } else {
            failures.join("; ")
        },
    )
}

fn schroeder_doubling(config: &SuiteConfig) -> Check {
    let limit = config.deep_n_max;
    let full = r_l(&Specialization::counting(limit)).expect("admissible");
    let axis_free = r_a(&Specialization::counting(limit)).expect("admissible");
    let ok = (1..=limit).all(|n| full.coeff(n) == &(axis_free.coeff(n) * rat(2)));
    Check::result(
        "schroeder-doubling",
        ok,
        format!("full count equals twice the axis-free count for 1<=n<={limit}, exact"),
    )
}

fn catalan_specializations() -> Check {
    let a = runs_gf_s1(&rat(1), 12).expect("nonzero");
    let b = narayana_gf(&rat(1), 12).expect("admissible");
    let catalan = Series::from_int_coeffs(
        &[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012],
        12,
    );
    let ok = a == b && b == catalan;
    Check::result(
        "catalan-specializations",
        ok,
        "run and peak generating functions at the counting point both give the Catalan numbers",
    )
}

/// Integer marker points must give integer coefficients.
fn integral_coefficients(config: &SuiteConfig) -> Check {
    let limit = 12;
    let mut failures = Vec::new();
    for (y, z) in config.grid_points() {
        if !y.denom().is_one() || !z.denom().is_one() {
            continue;
        }
        let spec = Specialization::new(y.clone(), z.clone(), limit).expect("nonzero");
        for (label, series) in [
            ("full", r_l(&spec).expect("admissible")),
            ("axis-free", r_a(&spec).expect("admissible")),
        ] {
            if !series.is_integral() {
                failures.push(format!("{label} at (y,z)=({y},{z})"));
            }
        }
    }
    Check::result(
        "integral-coefficients",
        failures.is_empty(),
        if failures.is_empty() {
            format!("integer marker points give integer coefficients through x^{limit}")
        } else {
            failures.join("; ")
        },
    )
}
