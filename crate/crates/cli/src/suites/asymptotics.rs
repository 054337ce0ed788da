//! Singularity constants against published reference decimals, symbolic
//! radical forms, and the empirical growth law.

use num::{BigRational, Signed};
use rayon::prelude::*;
use schroder_core::asymptotics::{
    constants, decimal_rational, decimal_string, empirical_growth, ratio_limit, radicand,
    s4_alpha_closed_form, s4_large_constant_closed_form, s4_small_constant_closed_form,
    AsymptoticConstants, Family,
};
use schroder_core::forms::{p_s4, p_s5, p_s6, q_s4, q_s5, q_s6};
use schroder_core::path::Variant;
use schroder_core::series::{frac, Series};

use super::{SuiteConfig, VerifySuite};
use crate::report::Check;

/// Reference decimals as published (truncated prints, hence the 1e-5
/// comparison tolerance rather than 5e-6).
const PRINTED_ALPHA2: &str = "0.16243";
const PRINTED_ALPHA3: &str = "0.09678";
const PRINTED_BETA2: &str = "1.55669";
const PRINTED_BETA3: &str = "0.68998";
const PRINTED_GAMMA2: &str = "0.70954";
const PRINTED_GAMMA3: &str = "0.50971";
const PRINTED_RATIO_S4: &str = "1.39320";
const PRINTED_RATIO_S5: &str = "2.19393";
const PRINTED_RATIO_S6: &str = "1.35364";

fn printed_tol() -> BigRational {
    decimal_rational("1e-5").expect("literal")
}

fn exact_tol() -> BigRational {
    decimal_rational("1e-9").expect("literal")
}

pub struct AsymptoticsSuite;

impl VerifySuite for AsymptoticsSuite {
    fn name(&self) -> &'static str {
        "asymptotics"
    }

    fn summary(&self) -> &'static str {
        "root isolation, growth constants vs published decimals, empirical growth law"
    }

    fn run(&self, config: &SuiteConfig) -> Vec<Check> {
        let all: Vec<AsymptoticConstants> = Family::ALL
            .iter()
            .flat_map(|&family| {
                [Variant::L, Variant::A]
                    .into_iter()
                    .map(move |variant| constants(family, variant).expect("radicands have positive roots"))
            })
            .collect();

        let mut checks = vec![root_isolation(&all)];
        checks.extend(printed_values(&all));
        checks.extend(ratio_checks(&all));
        checks.extend(growth_law(config, &all));
        checks
    }
}

fn find(all: &[AsymptoticConstants], family: Family, variant: Variant) -> &AsymptoticConstants {
    all.iter()
        .find(|c| c.family == family && c.variant == variant)
        .expect("all pairs computed")
}

fn root_isolation(all: &[AsymptoticConstants]) -> Check {
    let mut failures = Vec::new();
    for family in Family::ALL {
        let c = find(all, family, Variant::L);
        let f = radicand(family);
        let lo = f.eval(&c.bracket.lo);
        let hi = f.eval(&c.bracket.hi);
        if !(lo.is_positive() && hi.is_negative() || lo.is_negative() && hi.is_positive()) {
            failures.push(format!("{family}: no sign change across the bracket"));
        }
    }
    Check::result(
        "root-isolation",
        failures.is_empty(),
        if failures.is_empty() {
            "radicands change sign across each isolating bracket (exact rational signs)".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn against_printed(name: &str, computed: &BigRational, printed: &str) -> Check {
    let reference = decimal_rational(printed).expect("literal");
    let diff = (computed - &reference).abs();
    let ok = diff < printed_tol();
    Check::result(
        name,
        ok,
        format!(
            "computed {} vs published {printed} (tolerance 1e-5, exact rational compare); |diff| = {}",
            decimal_string(computed, 10),
            decimal_string(&diff, 10),
        ),
    )
}

fn against_exact(name: &str, computed: &BigRational, reference: &BigRational, what: &str) -> Check {
    let diff = (computed - reference).abs();
    let ok = diff < exact_tol();
    Check::result(
        name,
        ok,
        format!("{what}; |diff| = {} (tolerance 1e-9)", decimal_string(&diff, 15)),
    )
}

fn printed_values(all: &[AsymptoticConstants]) -> Vec<Check> {
    let s4l = find(all, Family::S4, Variant::L);
    let s4a = find(all, Family::S4, Variant::A);
    let s5l = find(all, Family::S5, Variant::L);
    let s5a = find(all, Family::S5, Variant::A);
    let s6l = find(all, Family::S6, Variant::L);
    let s6a = find(all, Family::S6, Variant::A);

    let mut checks = vec![
        against_exact(
            "alpha-s4-closed-form",
            &s4l.alpha,
            &s4_alpha_closed_form(),
            "isolated root vs (3 - sqrt 5)/8",
        ),
        against_printed("alpha-s5-printed", &s5l.alpha, PRINTED_ALPHA2),
        against_printed("alpha-s6-printed", &s6l.alpha, PRINTED_ALPHA3),
        against_exact(
            "beta-s4-closed-form",
            &s4l.constant,
            &s4_large_constant_closed_form(),
            "generic formula vs the nested radical (35 - 15 sqrt 5) sqrt(6 sqrt 5 - 10)/4",
        ),
        against_exact(
            "gamma-s4-closed-form",
            &s4a.constant,
            &s4_small_constant_closed_form(),
            "generic formula vs sqrt(10 + 6 sqrt 5)/10",
        ),
        against_printed("beta-s5-printed", &s5l.constant, PRINTED_BETA2),
        against_printed("gamma-s5-printed", &s5a.constant, PRINTED_GAMMA2),
    ];

    // The S6 published decimals do not match the defined radicand: they are
    // reproduced only by differentiating the cubic factor of the radicand
    // instead of the radicand itself. The growth law (see the
    // growth-convergence checks) confirms the radicand-derivative values,
    // so these two comparisons fail and the detail carries the diagnosis.
    let diagnose = |computed: &BigRational, printed: &str, check: Check| -> Check {
        if check.status == crate::report::Status::Pass {
            return check;
        }
        let cubic = radicand_cubic_variant(find(all, Family::S6, Variant::L), computed);
        Check {
            detail: format!(
                "{}; published value matches the cubic-factor-derivative evaluation {} — an \
                 inconsistency in the published table, refuted empirically by the growth law \
                 (growth-convergence-s6-* converge to the computed value, not to {printed})",
                check.detail,
                decimal_string(&cubic, 10),
            ),
            ..check
        }
    };
    let beta3 = against_printed("beta-s6-printed", &s6l.constant, PRINTED_BETA3);
    checks.push(diagnose(&s6l.constant, PRINTED_BETA3, beta3));
    let gamma3 = against_printed("gamma-s6-printed", &s6a.constant, PRINTED_GAMMA3);
    checks.push(diagnose(&s6a.constant, PRINTED_GAMMA3, gamma3));
    checks
}

/// Rescale an S6 constant to the value obtained by differentiating only
/// the cubic factor `1 - 11x + 7x^2 - x^3`: the two differ by the factor
/// `sqrt(1 - alpha)`.
fn radicand_cubic_variant(s6: &AsymptoticConstants, computed: &BigRational) -> BigRational {
    let one_minus_alpha = BigRational::from_integer(1.into()) - &s6.alpha;
    let scale = schroder_core::asymptotics::sqrt_rational(
        &one_minus_alpha,
        schroder_core::asymptotics::PRECISION_BITS,
    );
    computed / scale
}

fn ratio_checks(all: &[AsymptoticConstants]) -> Vec<Check> {
    let cases = [
        ("ratio-s4-printed", Family::S4, PRINTED_RATIO_S4),
        ("ratio-s5-printed", Family::S5, PRINTED_RATIO_S5),
        ("ratio-s6-printed", Family::S6, PRINTED_RATIO_S6),
    ];
    let mut checks = Vec::new();
    let mut consistency_failures = Vec::new();
    for (name, family, printed) in cases {
        let ratio = ratio_limit(family).expect("radicands have positive roots");
        checks.push(against_printed(name, &ratio, printed));
        let l = &find(all, family, Variant::L).constant;
        let a = &find(all, family, Variant::A).constant;
        if ((l / a) - &ratio).abs() >= exact_tol() {
            consistency_failures.push(family.to_string());
        }
    }
    checks.push(Check::result(
        "ratio-consistency",
        consistency_failures.is_empty(),
        if consistency_failures.is_empty() {
            "each ratio limit equals the quotient of the growth constants (tolerance 1e-9)".to_string()
        } else {
            consistency_failures.join("; ")
        },
    ));
    checks
}

fn growth_series(family: Family, variant: Variant, trunc: usize) -> Series {
    match (family, variant) {
        (Family::S4, Variant::L) => p_s4(trunc),
        (Family::S5, Variant::L) => p_s5(trunc),
        (Family::S6, Variant::L) => p_s6(trunc),
        (Family::S4, Variant::A) => q_s4(trunc),
        (Family::S5, Variant::A) => q_s5(trunc),
        (Family::S6, Variant::A) => q_s6(trunc),
    }
}

/// `c_n alpha^n sqrt(pi n^3)` at the probe orders: within 5% of the
/// constant at the top probe, closer there than at the bottom probe, and
/// monotone across all three probes.
fn growth_law(config: &SuiteConfig, all: &[AsymptoticConstants]) -> Vec<Check> {
    let [low, mid, high] = config.growth_probes;
    let trunc = config.growth_trunc;
    let five_percent = frac(1, 20);
    let results: Vec<(String, bool, String, bool)> = all
        .par_iter()
        .map(|c| {
            let series = growth_series(c.family, c.variant, trunc);
            let deviation = |probe: usize| -> BigRational {
                let emp = empirical_growth(&series, &c.alpha, probe).expect("probe within truncation");
                ((emp - &c.constant) / &c.constant).abs()
            };
            let (d_low, d_mid, d_high) = (deviation(low), deviation(mid), deviation(high));
            let within = d_high < five_percent;
            let shrinking = d_high < d_low;
            let monotone = d_high < d_mid && d_mid < d_low;
            let name = format!(
                "growth-convergence-{}-{}",
                c.family.to_string().to_lowercase(),
                match c.variant {
                    Variant::L => "full",
                    Variant::A => "axis-free",
                }
            );
            let detail = format!(
                "relative deviation of c_n alpha^n sqrt(pi n^3) from {} at n={low},{mid},{high} \
                 (truncation {trunc}): {}, {}, {}; required < 5% at n={high} and shrinking from n={low}",
                decimal_string(&c.constant, 10),
                decimal_string(&d_low, 6),
                decimal_string(&d_mid, 6),
                decimal_string(&d_high, 6),
            );
            (name, within && shrinking, detail, monotone)
        })
        .collect();

    let mut checks: Vec<Check> = results
        .iter()
        .map(|(name, ok, detail, _)| Check::result(name.clone(), *ok, detail.clone()))
        .collect();
    let non_monotone: Vec<&String> = results
        .iter()
        .filter(|(_, _, _, monotone)| !monotone)
        .map(|(name, _, _, _)| name)
        .collect();
    checks.push(Check::result(
        "growth-monotone",
        non_monotone.is_empty(),
        if non_monotone.is_empty() {
            format!("deviation decreases across n={low},{mid},{high} for all six pairs")
        } else {
            format!("non-monotone convergence: {}", non_monotone.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "))
        },
    ));
    checks
}
