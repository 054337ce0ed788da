//! Closed-form generating functions for the path families, expanded as
//! exact truncated series.
//!
//! Two routes exist for most functions and are deliberately kept apart:
//! the printed algebraic closed forms (`p_*`, `q_*`, [`a_series`]) are
//! transcribed literally, while [`r_l`] / [`r_a`] assemble the trivariate
//! run generating functions and can be specialized to the same points.
//! Agreement of the two routes, and of either route with brute-force
//! enumeration, is what the verification suites check.
//!
//! Every named formula is also available behind the [`GfFormula`] trait in
//! a [`FormulaRegistry`], so frontends can select one by name at runtime.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, BigUint, One, Zero};

use crate::enumeration::{binomial, pyramid_table, Guards};
use crate::path::UClass;
use crate::series::{frac, from_rational, rat, Poly, Series};
use crate::{Error, Result};

/// A point at which the trivariate run generating functions are expanded:
/// exact rational markers `y` (diagonal runs) and `z` (horizontal runs),
/// plus the truncation order of the resulting univariate series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    y: BigRational,
    z: BigRational,
    trunc: usize,
}

impl Specialization {
    /// `y` must be nonzero; it is inverted during assembly.
    pub fn new(y: BigRational, z: BigRational, trunc: usize) -> Result<Self> {
        if y.is_zero() {
            return Err(Error::ZeroY);
        }
        Ok(Specialization { y, z, trunc })
    }

    /// The plain counting point `y = z = 1`.
    pub fn counting(trunc: usize) -> Self {
        Specialization {
            y: BigRational::one(),
            z: BigRational::one(),
            trunc,
        }
    }

    pub fn from_ints(y: i64, z: i64, trunc: usize) -> Result<Self> {
        Specialization::new(rat(y), rat(z), trunc)
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn z(&self) -> &BigRational {
        &self.z
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        Specialization {
            y: self.y.clone(),
            z: self.z.clone(),
            trunc,
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(y={}, z={}, N={})", self.y, self.z, self.trunc)
    }
}

/// Exact Narayana number `N(n,k) = C(n,k) C(n,k-1) / n`; zero outside
/// `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> BigUint {
    if n == 0 || k < 1 || k > n {
        return BigUint::zero();
    }
    let prod = binomial(n, k) * binomial(n, k - 1);
    debug_assert!((prod.clone() % BigUint::from(n)).is_zero());
    prod / BigUint::from(n)
}

/// Generating function of the Narayana polynomials:
/// `(1 + (1-y)x - sqrt(1 - 2(1+y)x + (1-y)^2 x^2)) / (2x)`.
/// The coefficient of `x^n` is `Σ_k N(n,k) y^k` for `n >= 1`, and 1 at
/// `n = 0`.
pub fn narayana_gf(y: &BigRational, trunc: usize) -> Result<Series> {
    let w = trunc + 1;
    let one = BigRational::one();
    let radicand = Poly::new(vec![
        one.clone(),
        rat(-2) * (&one + y),
        (&one - y) * (&one - y),
    ]);
    let numerator = Poly::new(vec![one.clone(), &one - y])
        .to_series(w)
        .sub(&radicand.to_series(w).sqrt()?)?;
    numerator.div(&Poly::from_ints(&[0, 2]).to_series(w))
}

/// Run generating function for Dyck paths: the coefficient of `x^n` is
/// `Σ_k N(n,k) y^{2n-2k}`, expanded as
/// `(1 + (y^2-1)x - sqrt(1 - 2(1+y^2)x + (1-y^2)^2 x^2)) / (2x y^2)`.
pub fn runs_gf_s1(y: &BigRational, trunc: usize) -> Result<Series> {
    if y.is_zero() {
        return Err(Error::ZeroY);
    }
    let w = trunc + 1;
    let one = BigRational::one();
    let y2 = y * y;
    let radicand = Poly::new(vec![
        one.clone(),
        rat(-2) * (&one + &y2),
        (&one - &y2) * (&one - &y2),
    ]);
    let numerator = Poly::new(vec![one.clone(), &y2 - &one])
        .to_series(w)
        .sub(&radicand.to_series(w).sqrt()?)?;
    numerator.div(&Poly::new(vec![BigRational::zero(), rat(2) * y2]).to_series(w))
}

/// Expand `(pref + sign · mult · sqrt(rad)) / den` where `den` has
/// valuation exactly 1. Total for the fixed printed forms below.
fn algebraic_form(pref: &Poly, mult: &Poly, sign: i64, rad: &Poly, den: &Poly, trunc: usize) -> Series {
    let w = trunc + 1;
    let root = rad.to_series(w).sqrt().expect("radicand has constant term 1");
    let numerator = pref
        .to_series(w)
        .add(&mult.to_series(w).mul(&root).expect("equal truncation").scale(&rat(sign)))
        .expect("equal truncation");
    numerator
        .div(&den.to_series(w))
        .expect("numerator valuation matches the denominator")
}

/// `(1 + 3x - sqrt(1 - 10x + 9x^2)) / (8x)` — counts paths with up/down
/// steps of any magnitude.
pub fn p_s2(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[1, 3]),
        &Poly::from_ints(&[1]),
        -1,
        &Poly::from_ints(&[1, -10, 9]),
        &Poly::from_ints(&[0, 8]),
        trunc,
    )
}

/// `((1-x)(1+x-4x^2) - (1-x)^2 sqrt(1-12x+16x^2)) / (2x(2-3x)^2)`.
pub fn p_s4(trunc: usize) -> Series {
    let one_minus_x = Poly::from_ints(&[1, -1]);
    algebraic_form(
        &one_minus_x.mul(&Poly::from_ints(&[1, 1, -4])),
        &one_minus_x.mul(&one_minus_x),
        -1,
        &Poly::from_ints(&[1, -12, 16]),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[2, -3]).mul(&Poly::from_ints(&[2, -3]))),
        trunc,
    )
}

/// `(2x - 1 + sqrt(1 - 8x + 12x^2 - 4x^3)) / (2x(x-1))`.
pub fn p_s5(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[-1, 2]),
        &Poly::from_ints(&[1]),
        1,
        &Poly::from_ints(&[1, -8, 12, -4]),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[-1, 1])),
        trunc,
    )
}

/// `(1 + 2x - x^2 - sqrt((1-x)(1-11x+7x^2-x^3))) / (2x(x-2)^2)`.
pub fn p_s6(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[1, 2, -1]),
        &Poly::from_ints(&[1]),
        -1,
        &Poly::from_ints(&[1, -1]).mul(&Poly::from_ints(&[1, -11, 7, -1])),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[-2, 1]).mul(&Poly::from_ints(&[-2, 1]))),
        trunc,
    )
}

/// `(1 + 4x - sqrt(1 - 12x + 16x^2)) / (10x)`.
pub fn q_s4(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[1, 4]),
        &Poly::from_ints(&[1]),
        -1,
        &Poly::from_ints(&[1, -12, 16]),
        &Poly::from_ints(&[0, 10]),
        trunc,
    )
}

/// `(-1 + sqrt(1 - 8x + 12x^2 - 4x^3)) / (2x(x-2))`.
pub fn q_s5(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[-1]),
        &Poly::from_ints(&[1]),
        1,
        &Poly::from_ints(&[1, -8, 12, -4]),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[-2, 1])),
        trunc,
    )
}

/// `(-1 - 4x + x^2 + sqrt((1-x)(1-11x+7x^2-x^3))) / (2x(x-5))`.
pub fn q_s6(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[-1, -4, 1]),
        &Poly::from_ints(&[1]),
        1,
        &Poly::from_ints(&[1, -1]).mul(&Poly::from_ints(&[1, -11, 7, -1])),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[-5, 1])),
        trunc,
    )
}

/// `(3x - 1 + sqrt(1 - 10x + 25x^2 - 16x^3)) / (2x(2x-1))` — Schröder
/// paths with horizontal runs in one of three colors.
pub fn a_series(trunc: usize) -> Series {
    algebraic_form(
        &Poly::from_ints(&[-1, 3]),
        &Poly::from_ints(&[1]),
        1,
        &Poly::from_ints(&[1, -10, 25, -16]),
        &Poly::from_ints(&[0, 2]).mul(&Poly::from_ints(&[-1, 2])),
        trunc,
    )
}

/// The component rational functions of the trivariate assembly, as
/// polynomials in `x` at fixed `(y, z)`.
struct MarkerPolys {
    /// `x + y(1-xz)`
    a: Poly,
    /// `1 - xz`
    b: Poly,
    /// `1 - xz + x`
    c: Poly,
}

impl MarkerPolys {
    fn new(spec: &Specialization) -> Self {
        let y = spec.y();
        let z = spec.z();
        let one = BigRational::one();
        MarkerPolys {
            a: Poly::new(vec![y.clone(), &one - y * z]),
            b: Poly::new(vec![one.clone(), -z]),
            c: Poly::new(vec![one.clone(), &one - z]),
        }
    }
}

/// `u = x ((x + y(1-xz)) / (1-xz))^2` and
/// `w = ((1-xz+x) / (x + y(1-xz)))^2` as series at the given truncation.
fn substitution_series(polys: &MarkerPolys, trunc: usize) -> Result<(Series, Series)> {
    let ab = from_rational(&polys.a, &polys.b, trunc)?;
    let u = ab.mul(&ab)?.shift_up(1);
    let ca = from_rational(&polys.c, &polys.a, trunc)?;
    let w = ca.mul(&ca)?;
    Ok((u, w))
}

/// `1 - 2(1+w)u + (1-w)^2 u^2`.
fn kernel_radicand(u: &Series, w: &Series) -> Result<Series> {
    let trunc = u.trunc();
    let one = Series::one(trunc);
    let one_minus_w = one.sub(w)?;
    one.sub(&one.add(w)?.mul(u)?.scale(&rat(2)))?
        .add(&one_minus_w.mul(&one_minus_w)?.mul(&u.mul(u)?)?)
}

/// Run generating function of all Schröder paths, specialized at `(y, z)`:
/// the coefficient of `x^n` is `Σ_P y^dr(P) z^hr(P)` over paths of order
/// `n`, with constant term 1.
pub fn r_l(spec: &Specialization) -> Result<Series> {
    let w = spec.trunc() + 2;
    let polys = MarkerPolys::new(spec);
    let (u, wser) = substitution_series(&polys, w)?;
    let one = Series::one(w);
    let root = kernel_radicand(&u, &wser)?.sqrt()?;
    let numerator = one.add(&one.sub(&wser)?.mul(&u)?)?.sub(&root)?;
    let core = numerator.div(&u.scale(&rat(2)))?;
    let prefactor = from_rational(&polys.c, &polys.b, core.trunc())?;
    Ok(prefactor.mul(&core)?.truncated(spec.trunc()))
}

/// Run generating function of Schröder paths with no horizontal step on
/// the axis, specialized at `(y, z)`:
/// `1/2 + (-1 + zx + (1-z)x^2 + (1-xz) sqrt(...)) / (2(y^2z-2y+1)x^2 - 2y^2x - 2x)`.
pub fn r_a(spec: &Specialization) -> Result<Series> {
    let w = spec.trunc() + 2;
    let y = spec.y();
    let z = spec.z();
    let one = BigRational::one();
    let polys = MarkerPolys::new(spec);
    let (u, wser) = substitution_series(&polys, w)?;
    let root = kernel_radicand(&u, &wser)?.sqrt()?;
    let numerator = Poly::new(vec![-one.clone(), z.clone(), &one - z])
        .to_series(w)
        .add(&polys.b.to_series(w).mul(&root)?)?;
    let y2 = y * y;
    let denominator = Poly::new(vec![
        BigRational::zero(),
        rat(-2) * &y2 - rat(2),
        rat(2) * (&y2 * z - y - y + &one),
    ]);
    let tail = numerator.div(&denominator.to_series(w))?;
    Series::constant(frac(1, 2), tail.trunc())
        .add(&tail)
        .map(|s| s.truncated(spec.trunc()))
}

/// Class series of the first/last-step partition, without constant term.
///
/// For the four up-containing classes these are the rational multiples of
/// the up-containing series `R̄ = r_l - (1-xz+x)/(1-xz)`; for
/// [`UClass::HOnly`] it is `x/(1-xz)` directly.
pub fn u_class_series(class: UClass, spec: &Specialization) -> Result<Series> {
    let trunc = spec.trunc();
    let polys = MarkerPolys::new(spec);
    if class == UClass::HOnly {
        return from_rational(&Poly::from_ints(&[0, 1]), &polys.b, trunc);
    }
    let ul = ul_series(spec)?;
    let c2 = polys.c.mul(&polys.c);
    let factor_num = match class {
        UClass::U1 => polys.b.mul(&polys.b),
        UClass::U2 | UClass::U3 => Poly::from_ints(&[0, 1]).mul(&polys.b),
        UClass::U4 => Poly::from_ints(&[0, 0, 1]),
        UClass::HOnly => unreachable!(),
    };
    from_rational(&factor_num, &c2, trunc)?.mul(&ul)
}

/// Series of the up-containing Schröder paths: `r_l - (1-xz+x)/(1-xz)`.
pub fn ul_series(spec: &Specialization) -> Result<Series> {
    let polys = MarkerPolys::new(spec);
    r_l(spec)?.sub(&from_rational(&polys.c, &polys.b, spec.trunc())?)
}

/// Series of the primitive paths (no constant term), assembled as
/// `x(1-xz+x)/(1-xz) + x (A/C)^2 · R̄` where `A = x + y(1-xz)` and
/// `C = 1-xz+x`. Satisfies `r_a · (1 - this) = 1`.
pub fn primitive_series(spec: &Specialization) -> Result<Series> {
    let trunc = spec.trunc();
    let polys = MarkerPolys::new(spec);
    let first = from_rational(&Poly::from_ints(&[0, 1]).mul(&polys.c), &polys.b, trunc)?;
    let ac = from_rational(&polys.a, &polys.c, trunc)?;
    let x_over_w = ac.mul(&ac)?.shift_up(1);
    first.add(&x_over_w.mul(&ul_series(spec)?)?)
}

/// `Σ_{k=1..n} N(n,k) 5^{n-k}` — the Narayana-number expression for the
/// number of order-`n` paths over all-magnitude steps with no horizontal
/// on the axis.
pub fn small2_identity(n: u64) -> BigUint {
    let five = BigUint::from(5u32);
    let mut acc = BigUint::zero();
    for k in 1..=n {
        acc += narayana(n, k) * num::pow(five.clone(), (n - k) as usize);
    }
    acc
}

/// `Σ_k T(n,k) 2^k` with `T` the brute-force pyramid-weight distribution;
/// equals the coefficient `n` of [`a_series`].
pub fn pyramid_identity(n: u64, guards: &Guards) -> Result<BigUint> {
    let table = pyramid_table(n as usize, guards)?;
    let two = BigUint::from(2u32);
    let mut acc = BigUint::zero();
    for (key, count) in table.rows() {
        if key[0] == n {
            acc += count * num::pow(two.clone(), key[1] as usize);
        }
    }
    Ok(acc)
}

/// How a registered formula consumes the specialization point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerUse {
    /// fixed series, `(y, z)` ignored
    None,
    /// depends on `y` only
    Y,
    /// depends on both markers
    YZ,
}

/// A named generating-function producer.
pub trait GfFormula: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn markers(&self) -> MarkerUse;
    fn expand(&self, spec: &Specialization) -> Result<Series>;
}

struct BuiltinFormula {
    name: &'static str,
    summary: &'static str,
    markers: MarkerUse,
    expand: fn(&Specialization) -> Result<Series>,
}

impl GfFormula for BuiltinFormula {
    fn name(&self) -> &'static str {
        self.name
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn markers(&self) -> MarkerUse {
        self.markers
    }

    fn expand(&self, spec: &Specialization) -> Result<Series> {
        (self.expand)(spec)
    }
}

/// Name-indexed registry of generating-function formulas. Iteration order
/// is alphabetical, hence deterministic.
pub struct FormulaRegistry {
    entries: BTreeMap<&'static str, Box<dyn GfFormula>>,
}

impl FormulaRegistry {
    pub fn empty() -> Self {
        FormulaRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, formula: Box<dyn GfFormula>) {
        self.entries.insert(formula.name(), formula);
    }

    pub fn get(&self, name: &str) -> Option<&dyn GfFormula> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn GfFormula> {
        self.entries.values().map(|b| b.as_ref())
    }

    /// All built-in formulas.
    pub fn with_builtins() -> Self {
        let mut reg = FormulaRegistry::empty();
        let builtin = |name, summary, markers, expand| {
            Box::new(BuiltinFormula {
                name,
                summary,
                markers,
                expand,
            })
        };
        reg.register(builtin(
            "narayana-gf",
            "Narayana polynomials N_n(y); Catalan numbers at y=1",
            MarkerUse::Y,
            |s| narayana_gf(s.y(), s.trunc()),
        ));
        reg.register(builtin(
            "runs-gf-s1",
            "Dyck paths weighted y^runs",
            MarkerUse::Y,
            |s| runs_gf_s1(s.y(), s.trunc()),
        ));
        reg.register(builtin(
            "r-l",
            "Schroeder paths weighted y^dr z^hr",
            MarkerUse::YZ,
            r_l,
        ));
        reg.register(builtin(
            "r-a",
            "small Schroeder paths weighted y^dr z^hr",
            MarkerUse::YZ,
            r_a,
        ));
        reg.register(builtin(
            "p-s2",
            "paths over S2, counting closed form",
            MarkerUse::None,
            |s| Ok(p_s2(s.trunc())),
        ));
        reg.register(builtin(
            "p-s4",
            "paths over S4, counting closed form",
            MarkerUse::None,
            |s| Ok(p_s4(s.trunc())),
        ));
        reg.register(builtin(
            "p-s5",
            "paths over S5, counting closed form",
            MarkerUse::None,
            |s| Ok(p_s5(s.trunc())),
        ));
        reg.register(builtin(
            "p-s6",
            "paths over S6, counting closed form",
            MarkerUse::None,
            |s| Ok(p_s6(s.trunc())),
        ));
        reg.register(builtin(
            "q-s4",
            "axis-horizontal-free paths over S4, counting closed form",
            MarkerUse::None,
            |s| Ok(q_s4(s.trunc())),
        ));
        reg.register(builtin(
            "q-s5",
            "axis-horizontal-free paths over S5, counting closed form",
            MarkerUse::None,
            |s| Ok(q_s5(s.trunc())),
        ));
        reg.register(builtin(
            "q-s6",
            "axis-horizontal-free paths over S6, counting closed form",
            MarkerUse::None,
            |s| Ok(q_s6(s.trunc())),
        ));
        reg.register(builtin(
            "a-series",
            "Schroeder paths with 3-colored horizontal runs",
            MarkerUse::None,
            |s| Ok(a_series(s.trunc())),
        ));
        reg.register(builtin(
            "u1",
            "class series: starts with U, ends with D (no constant term)",
            MarkerUse::YZ,
            |s| u_class_series(UClass::U1, s),
        ));
        reg.register(builtin(
            "u2",
            "class series: starts with H, ends with D (no constant term)",
            MarkerUse::YZ,
            |s| u_class_series(UClass::U2, s),
        ));
        reg.register(builtin(
            "u3",
            "class series: starts with U, ends with H (no constant term)",
            MarkerUse::YZ,
            |s| u_class_series(UClass::U3, s),
        ));
        reg.register(builtin(
            "u4",
            "class series: starts and ends with H (no constant term)",
            MarkerUse::YZ,
            |s| u_class_series(UClass::U4, s),
        ));
        reg.register(builtin(
            "h-only",
            "class series: horizontal steps only (no constant term)",
            MarkerUse::YZ,
            |s| u_class_series(UClass::HOnly, s),
        ));
        reg.register(builtin(
            "prim",
            "primitive-path class series (no constant term)",
            MarkerUse::YZ,
            primitive_series,
        ));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series, upto: usize) -> Vec<i64> {
        s.coeffs()[..=upto]
            .iter()
            .map(|c| {
                assert!(c.denom().is_one(), "non-integer coefficient {c}");
                c.numer().to_string().parse::<i64>().unwrap()
            })
            .collect()
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(4, 2), 6u32.into());
        assert_eq!(narayana(5, 3), 20u32.into());
        for n in 1..10 {
            assert_eq!(narayana(n, 1), 1u32.into());
            assert_eq!(narayana(n, n), 1u32.into());
        }
        assert_eq!(narayana(4, 0), 0u32.into());
        assert_eq!(narayana(4, 5), 0u32.into());
        assert_eq!(narayana(0, 1), 0u32.into());
    }

    #[test]
    fn narayana_gf_specializations() {
        let cat = narayana_gf(&rat(1), 8).unwrap();
        assert_eq!(ints(&cat, 8), [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let zero = narayana_gf(&rat(0), 6).unwrap();
        assert_eq!(ints(&zero, 6), [1, 0, 0, 0, 0, 0, 0]);
        let two = narayana_gf(&rat(2), 4).unwrap();
        assert_eq!(*two.coeff(4), rat(90));
    }

    #[test]
    fn runs_gf_specializations() {
        assert_eq!(runs_gf_s1(&rat(0), 4), Err(Error::ZeroY));
        let cat = runs_gf_s1(&rat(1), 6).unwrap();
        assert_eq!(cat, narayana_gf(&rat(1), 6).unwrap());
        let half = runs_gf_s1(&frac(1, 2), 4).unwrap();
        assert_eq!(*half.coeff(3), frac(29, 16));
        assert_eq!(runs_gf_s1(&rat(2), 12).unwrap(), p_s2(12));
    }

    #[test]
    fn printed_q_expansions() {
        assert_eq!(ints(&q_s4(6), 6), [1, 1, 6, 41, 306, 2426, 20076]);
        assert_eq!(ints(&q_s5(6), 6), [1, 1, 3, 12, 53, 248, 1209]);
        assert_eq!(ints(&q_s6(6), 6), [1, 1, 6, 40, 293, 2286, 18637]);
    }

    #[test]
    fn p_series_prefixes() {
        assert_eq!(ints(&p_s2(4), 4), [1, 1, 5, 29, 185]);
        assert_eq!(ints(&p_s4(4), 4), [1, 2, 10, 63, 454]);
        assert_eq!(ints(&p_s5(4), 4), [1, 2, 7, 28, 122]);
        assert_eq!(ints(&p_s6(4), 4), [1, 2, 9, 57, 411]);
    }

    #[test]
    fn counting_specializations() {
        let rl = r_l(&Specialization::counting(6)).unwrap();
        assert_eq!(ints(&rl, 6), [1, 2, 6, 22, 90, 394, 1806]);
        let ra = r_a(&Specialization::counting(6)).unwrap();
        assert_eq!(ints(&ra, 6), [1, 1, 3, 11, 45, 197, 903]);
    }

    #[test]
    fn two_routes_agree() {
        let n = 16;
        assert_eq!(r_l(&Specialization::from_ints(2, 2, n).unwrap()).unwrap(), p_s4(n));
        assert_eq!(r_l(&Specialization::from_ints(1, 2, n).unwrap()).unwrap(), p_s5(n));
        assert_eq!(r_l(&Specialization::from_ints(2, 1, n).unwrap()).unwrap(), p_s6(n));
        assert_eq!(r_a(&Specialization::from_ints(2, 2, n).unwrap()).unwrap(), q_s4(n));
        assert_eq!(r_a(&Specialization::from_ints(1, 2, n).unwrap()).unwrap(), q_s5(n));
        assert_eq!(r_a(&Specialization::from_ints(2, 1, n).unwrap()).unwrap(), q_s6(n));
        assert_eq!(r_l(&Specialization::from_ints(1, 3, n).unwrap()).unwrap(), a_series(n));
    }

    #[test]
    fn a_series_prefix() {
        assert_eq!(ints(&a_series(4), 4), [1, 2, 8, 36, 172]);
    }

    #[test]
    fn small2_values() {
        assert_eq!(small2_identity(1), 1u32.into());
        assert_eq!(small2_identity(2), 6u32.into());
        assert_eq!(small2_identity(3), 41u32.into());
    }

    #[test]
    fn class_partition_reassembles() {
        for (y, z) in [(1, 1), (2, 2), (3, 1)] {
            let spec = Specialization::from_ints(y, z, 10).unwrap();
            let mut total = Series::one(10);
            for class in [UClass::U1, UClass::U2, UClass::U3, UClass::U4, UClass::HOnly] {
                total = total.add(&u_class_series(class, &spec).unwrap()).unwrap();
            }
            assert_eq!(total, r_l(&spec).unwrap());
            assert_eq!(
                u_class_series(UClass::U2, &spec).unwrap(),
                u_class_series(UClass::U3, &spec).unwrap()
            );
        }
    }

    #[test]
    fn u1_low_order_counts() {
        let spec = Specialization::counting(4);
        let u1 = u_class_series(UClass::U1, &spec).unwrap();
        assert_eq!(ints(&u1, 4), [0, 1, 3, 12, 52]);
        let u4 = u_class_series(UClass::U4, &spec).unwrap();
        assert_eq!(ints(&u4, 4), [0, 0, 0, 1, 5]);
    }

    #[test]
    fn primitive_series_inverts_r_a() {
        for (y, z) in [(1, 1), (2, 2), (5, 3)] {
            let spec = Specialization::from_ints(y, z, 12).unwrap();
            let lhs = r_a(&spec)
                .unwrap()
                .mul(&Series::one(12).sub(&primitive_series(&spec).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, Series::one(12));
        }
    }

    #[test]
    fn pyramid_identity_small() {
        let g = Guards::default();
        assert_eq!(pyramid_identity(1, &g).unwrap(), 2u32.into());
        assert_eq!(pyramid_identity(2, &g).unwrap(), 8u32.into());
        assert_eq!(pyramid_identity(3, &g).unwrap(), 36u32.into());
    }

    #[test]
    fn registry_lookup() {
        let reg = FormulaRegistry::with_builtins();
        assert!(reg.get("q-s4").is_some());
        assert!(reg.get("nope").is_none());
        let spec = Specialization::counting(6);
        let s = reg.get("q-s4").unwrap().expand(&spec).unwrap();
        assert_eq!(s, q_s4(6));
        assert_eq!(reg.iter().count(), 18);
        assert_eq!(reg.get("r-l").unwrap().markers(), MarkerUse::YZ);
    }
}
