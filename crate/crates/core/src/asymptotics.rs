//! Dominant singularities and coefficient growth constants.
//!
//! Each of the three all-magnitude families has an algebraic generating
//! function whose radicand polynomial `f` vanishes at the dominant
//! singularity `alpha` (the smallest positive real root). Coefficients then
//! grow like `const / (alpha^n sqrt(pi n^3))`, with `const` given by a
//! closed form in `alpha` and `f'(alpha)`.
//!
//! All arithmetic is exact rational: roots are isolated by sign-bracketing
//! bisection with exact sign evaluation at the interval endpoints, square
//! roots are Newton-iterated rationals rounded to a fixed number of bits,
//! and comparisons against reference decimals are exact rational
//! comparisons. Nothing here touches floating point.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::path::Variant;
use crate::series::{frac, pow, rat, Poly, Series};
use crate::{Error, Result};

/// Working precision: rationals are rounded to this many fractional bits
/// (about 126 decimal digits), far beyond the 5-decimal comparisons the
/// constants are used for.
pub const PRECISION_BITS: u32 = 420;

/// The three families with nontrivial growth constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    S4,
    S5,
    S6,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::S4, Family::S5, Family::S6];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::S4 => write!(f, "S4"),
            Family::S5 => write!(f, "S5"),
            Family::S6 => write!(f, "S6"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s4" => Ok(Family::S4),
            "s5" => Ok(Family::S5),
            "s6" => Ok(Family::S6),
            other => Err(Error::ParsePoly(format!(
                "`{other}` is not one of the families s4, s5, s6"
            ))),
        }
    }
}

/// The radicand polynomial of the family's generating function. The S6
/// radicand is the product `(1-x)(1-11x+7x^2-x^3)`; its root 1 is
/// irrelevant because the smallest positive root rule picks the cubic
/// factor's root below it.
pub fn radicand(family: Family) -> Poly {
    match family {
        Family::S4 => Poly::from_ints(&[1, -12, 16]),
        Family::S5 => Poly::from_ints(&[1, -8, 12, -4]),
        Family::S6 => Poly::from_ints(&[1, -1]).mul(&Poly::from_ints(&[1, -11, 7, -1])),
    }
}

/// An interval `[lo, hi]` across which the isolated polynomial changes
/// sign (or collapses onto an exact root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) * frac(1, 2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Isolate the smallest positive real root of `f` to within `tol`.
///
/// Scans `(0, bound]` (Cauchy root bound) at doubling resolutions for the
/// leftmost sign change, then bisects with exact sign evaluation. Fails if
/// no sign change shows up at the finest resolution.
pub fn smallest_positive_root(f: &Poly, tol: &BigRational) -> Result<RootBracket> {
    assert!(tol > &BigRational::zero(), "tolerance must be positive");
    let degree = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::NoPositiveRoot {
        bound: "0".into(),
    })?;
    let lead = f.coeff(degree);
    let max_ratio = (0..degree)
        .map(|i| (f.coeff(i) / &lead).abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    let bound = BigRational::one() + max_ratio;

    let mut resolution = 1024u32;
    let bracket = loop {
        if let Some(b) = leftmost_sign_change(f, &bound, resolution) {
            break b;
        }
        if resolution >= 1 << 16 {
            return Err(Error::NoPositiveRoot {
                bound: bound.to_string(),
            });
        }
        resolution *= 2;
    };
    let (mut lo, mut hi) = bracket;
    if f.eval(&lo).is_zero() {
        return Ok(RootBracket { hi: lo.clone(), lo });
    }
    let lo_sign = f.eval(&lo).is_negative();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * frac(1, 2);
        let v = f.eval(&mid);
        if v.is_zero() {
            return Ok(RootBracket { lo: mid.clone(), hi: mid });
        }
        if v.is_negative() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootBracket { lo, hi })
}

fn leftmost_sign_change(
    f: &Poly,
    bound: &BigRational,
    resolution: u32,
) -> Option<(BigRational, BigRational)> {
    let step = bound / rat(i64::from(resolution));
    let mut prev_x = BigRational::zero();
    let mut prev = f.eval(&prev_x);
    for j in 1..=i64::from(resolution) {
        let x = &step * rat(j);
        let v = f.eval(&x);
        if v.is_zero() {
            return Some((x.clone(), x));
        }
        if !prev.is_zero() && v.is_negative() != prev.is_negative() {
            return Some((prev_x, x));
        }
        prev_x = x;
        prev = v;
    }
    None
}

/// Round toward zero to `bits` fractional bits.
pub fn round_bits(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).trunc();
    scaled / BigRational::from_integer(scale)
}

/// Rational square root approximation: Newton iteration with per-step
/// rounding, accurate to about `bits` fractional bits. Requires `x >= 0`.
pub fn sqrt_rational(x: &BigRational, bits: u32) -> BigRational {
    assert!(!x.is_negative(), "square root of a negative rational");
    if x.is_zero() {
        return BigRational::zero();
    }
    let work = bits + 64;
    let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let half = frac(1, 2);
    // 2^(log2(x)/2) is within a factor of 2 of the root
    let scale_bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut s = if scale_bits >= 0 {
        BigRational::from_integer(BigInt::one() << (scale_bits / 2) as u32)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-scale_bits + 1) / 2) as u32)
    };
    for _ in 0..80 {
        let next = round_bits(&((&s + x / &s) * &half), work);
        let done = (&next - &s).abs() < tol;
        s = next;
        if done {
            break;
        }
    }
    round_bits(&s, bits)
}

/// Growth data for one family/variant pair: the dominant singularity
/// `alpha` (with its isolating bracket), the multiplicative constant of
/// `const / (alpha^n sqrt(pi n^3))`, and the radicand it came from.
#[derive(Clone, Debug)]
pub struct AsymptoticConstants {
    pub family: Family,
    pub variant: Variant,
    pub alpha: BigRational,
    pub bracket: RootBracket,
    pub constant: BigRational,
    pub radicand: Poly,
}

fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << PRECISION_BITS)
}

/// Isolate `alpha` for the family and evaluate the closed-form growth
/// constant, using the exact derivative of the radicand.
pub fn constants(family: Family, variant: Variant) -> Result<AsymptoticConstants> {
    let f = radicand(family);
    let bracket = smallest_positive_root(&f, &default_tolerance())?;
    let alpha = bracket.midpoint();
    let scale = sqrt_rational(&(-&alpha * f.derivative().eval(&alpha)), PRECISION_BITS);
    let one = BigRational::one();
    let constant = match (family, variant) {
        (Family::S4, Variant::L) => {
            let m = &one - &alpha;
            let d = rat(2) - rat(3) * &alpha;
            m.clone() * &m * &scale / (rat(4) * &alpha * &d * &d)
        }
        (Family::S4, Variant::A) => scale.clone() / (rat(20) * &alpha),
        (Family::S5, Variant::L) => scale.clone() / (rat(4) * &alpha * (&one - &alpha)),
        (Family::S5, Variant::A) => scale.clone() / (rat(4) * &alpha * (rat(2) - &alpha)),
        (Family::S6, Variant::L) => {
            let d = rat(2) - &alpha;
            scale.clone() / (rat(4) * &alpha * &d * &d)
        }
        (Family::S6, Variant::A) => scale.clone() / (rat(4) * &alpha * (rat(5) - &alpha)),
    };
    Ok(AsymptoticConstants {
        family,
        variant,
        alpha: round_bits(&alpha, PRECISION_BITS),
        bracket,
        constant: round_bits(&constant, PRECISION_BITS),
        radicand: f,
    })
}

/// Limit of the ratio between the full and axis-horizontal-free counts of
/// the family. Equals `constants(·, L) / constants(·, A)`.
pub fn ratio_limit(family: Family) -> Result<BigRational> {
    let f = radicand(family);
    let alpha = smallest_positive_root(&f, &default_tolerance())?.midpoint();
    let one = BigRational::one();
    let value = match family {
        Family::S4 => {
            let m = &one - &alpha;
            let d = rat(2) - rat(3) * &alpha;
            rat(5) * &m * &m / (&d * &d)
        }
        Family::S5 => (rat(2) - &alpha) / (&one - &alpha),
        Family::S6 => {
            let d = rat(2) - &alpha;
            (rat(5) - &alpha) / (&d * &d)
        }
    };
    Ok(round_bits(&value, PRECISION_BITS))
}

/// 80 digits are plenty at [`PRECISION_BITS`] working precision.
fn pi_rational() -> BigRational {
    let digits = "31415926535897932384626433832795028841971693993751058209749445923078164062862090";
    let numer = BigInt::from_str(digits).expect("literal");
    let denom = num::pow(BigInt::from(10), digits.len() - 1);
    BigRational::new(numer, denom)
}

/// Convergence diagnostic `c_n · alpha^n · sqrt(pi n^3)` at `n = probe`;
/// approaches the family constant as the probe grows.
pub fn empirical_growth(series: &Series, alpha: &BigRational, probe: usize) -> Result<BigRational> {
    if probe > series.trunc() {
        return Err(Error::ProbeBeyondTruncation {
            probe,
            trunc: series.trunc(),
        });
    }
    let n = probe as u64;
    let root = sqrt_rational(&(pi_rational() * pow(&rat(probe as i64), 3)), PRECISION_BITS);
    let alpha_n = pow(&round_bits(alpha, PRECISION_BITS), n);
    Ok(round_bits(&(series.coeff(probe) * alpha_n * root), 256))
}

/// `(3 - sqrt 5) / 8` — the S4 singularity in closed form.
pub fn s4_alpha_closed_form() -> BigRational {
    (rat(3) - sqrt_rational(&rat(5), PRECISION_BITS)) * frac(1, 8)
}

/// `(35 - 15 sqrt 5) sqrt(6 sqrt 5 - 10) / 4` — the S4 full-family growth
/// constant in closed form.
pub fn s4_large_constant_closed_form() -> BigRational {
    let s5 = sqrt_rational(&rat(5), PRECISION_BITS);
    let inner = sqrt_rational(&(rat(6) * &s5 - rat(10)), PRECISION_BITS);
    (rat(35) - rat(15) * &s5) * inner * frac(1, 4)
}

/// `sqrt(10 + 6 sqrt 5) / 10` — the S4 axis-horizontal-free growth
/// constant in closed form.
pub fn s4_small_constant_closed_form() -> BigRational {
    sqrt_rational(&(rat(10) + rat(6) * sqrt_rational(&rat(5), PRECISION_BITS)), PRECISION_BITS)
        * frac(1, 10)
}

/// Decimal rendering with the given number of fractional digits,
/// truncated toward zero. Exact and deterministic.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let mag = x.abs();
    let int = mag.trunc().to_integer();
    let scale = num::pow(BigInt::from(10), digits);
    let fract = ((mag.fract()) * BigRational::from_integer(scale)).trunc().to_integer();
    let frac_str = format!("{:0>width$}", fract.to_string(), width = digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac_str}")
    }
}

/// Parse a decimal literal like `0.16243` or `1e-5` into an exact
/// rational.
pub fn decimal_rational(text: &str) -> Result<BigRational> {
    let bad = |t: &str| Error::ParsePoly(format!("bad decimal literal `{t}`"));
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad(text))?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits.trim_start_matches('-').chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad(text));
    }
    let numer = BigInt::from_str(&digits).map_err(|_| bad(text))?;
    let mut value = BigRational::new(numer, num::pow(BigInt::from(10), frac_part.len()));
    let ten = rat(10);
    for _ in 0..exponent.abs() {
        if exponent > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigRational, b: &BigRational, tol: &BigRational) -> bool {
        (a - b).abs() < *tol
    }

    #[test]
    fn sqrt_rational_squares_back() {
        for v in [2i64, 5, 7, 10] {
            let s = sqrt_rational(&rat(v), 200);
            let err = (&s * &s - rat(v)).abs();
            assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 190), "v={v}");
        }
        assert_eq!(sqrt_rational(&rat(0), 100), rat(0));
        let tiny = sqrt_rational(&frac(1, 4), 100);
        assert!(close(&tiny, &frac(1, 2), &decimal_rational("1e-25").unwrap()));
    }

    #[test]
    fn root_isolation_examples() {
        let tol = decimal_rational("1e-30").unwrap();
        let b = smallest_positive_root(&radicand(Family::S4), &tol).unwrap();
        assert!(close(&b.midpoint(), &s4_alpha_closed_form(), &decimal_rational("1e-29").unwrap()));

        let b = smallest_positive_root(&radicand(Family::S5), &tol).unwrap();
        assert!(close(
            &b.midpoint(),
            &decimal_rational("0.16243456471667696455518910092").unwrap(),
            &decimal_rational("1e-25").unwrap()
        ));

        let b = smallest_positive_root(&radicand(Family::S6), &tol).unwrap();
        assert!(close(
            &b.midpoint(),
            &decimal_rational("0.09678807408844671251478377594").unwrap(),
            &decimal_rational("1e-25").unwrap()
        ));
        // bracket really straddles the root
        let f = radicand(Family::S6);
        assert!(f.eval(&b.lo).is_positive() != f.eval(&b.hi).is_positive());
    }

    #[test]
    fn no_positive_root_is_reported() {
        let f = Poly::from_ints(&[1, 0, 1]); // 1 + x^2
        assert!(matches!(
            smallest_positive_root(&f, &decimal_rational("1e-10").unwrap()),
            Err(Error::NoPositiveRoot { .. })
        ));
    }

    #[test]
    fn constants_match_references() {
        let tol = decimal_rational("1e-25").unwrap();
        let cases: [(Family, Variant, &str); 6] = [
            (Family::S4, Variant::L, "0.6741775774428115976248447397903776517571"),
            (Family::S4, Variant::A, "0.4839050306103330661928064360434153077304"),
            (Family::S5, Variant::L, "1.556697566812309828339012597060818181055"),
            (Family::S5, Variant::A, "0.7095453854956798162792286347840515002098"),
            (Family::S6, Variant::L, "0.655740183178877653303793025337692152402"),
            (Family::S6, Variant::A, "0.4844237572949903646493293901709864568178"),
        ];
        for (family, variant, reference) in cases {
            let c = constants(family, variant).unwrap();
            let r = decimal_rational(reference).unwrap();
            assert!(close(&c.constant, &r, &tol), "{family}/{variant}: {}", decimal_string(&c.constant, 30));
        }
    }

    #[test]
    fn ratio_limits_match_references() {
        let tol = decimal_rational("1e-25").unwrap();
        let cases: [(Family, &str); 3] = [
            (Family::S4, "1.393202250021030359082633126872376455938"),
            (Family::S5, "2.193936566474630448256084556933203300255"),
            (Family::S6, "1.353649925925420639614740185210348284759"),
        ];
        for (family, reference) in cases {
            let r = ratio_limit(family).unwrap();
            assert!(close(&r, &decimal_rational(reference).unwrap(), &tol), "{family}");
            let l = constants(family, Variant::L).unwrap().constant;
            let a = constants(family, Variant::A).unwrap().constant;
            assert!(close(&(l / a), &r, &decimal_rational("1e-20").unwrap()));
        }
    }

    #[test]
    fn closed_forms_match_generic_evaluation() {
        let tol = decimal_rational("1e-40").unwrap();
        let alpha = constants(Family::S4, Variant::L).unwrap().alpha;
        assert!(close(&alpha, &s4_alpha_closed_form(), &tol));
        let beta = constants(Family::S4, Variant::L).unwrap().constant;
        assert!(close(&beta, &s4_large_constant_closed_form(), &tol));
        let gamma = constants(Family::S4, Variant::A).unwrap().constant;
        assert!(close(&gamma, &s4_small_constant_closed_form(), &tol));
    }

    #[test]
    fn growth_probe_bounds() {
        let s = Series::one(10);
        assert!(matches!(
            empirical_growth(&s, &frac(1, 4), 11),
            Err(Error::ProbeBeyondTruncation { probe: 11, trunc: 10 })
        ));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&frac(1, 2), 4), "0.5000");
        assert_eq!(decimal_string(&frac(-29, 16), 4), "-1.8125");
        assert_eq!(decimal_string(&rat(3), 0), "3");
        assert_eq!(decimal_string(&frac(2, 3), 6), "0.666666");
        assert_eq!(decimal_rational("1.25").unwrap(), frac(5, 4));
        assert_eq!(decimal_rational("5e-1").unwrap(), frac(1, 2));
        assert!(decimal_rational("x").is_err());
    }
}
