//! Truncated formal power series and dense polynomials over exact rationals.
//!
//! A [`Series`] stores coefficients `c_0 .. c_N` and stands for
//! `Σ c_i x^i + O(x^{N+1})`. The truncation order `N` is explicit data:
//! binary operations demand equal truncations and fail otherwise, so an
//! identity test can never pass vacuously on a shorter prefix. Division is
//! valuation-aware and is the one operation that (explicitly) shortens the
//! truncation, by the valuation of the denominator.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `x^e` by binary exponentiation.
pub fn pow(x: &BigRational, e: u64) -> BigRational {
    let mut base = x.clone();
    let mut e = e;
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// A truncated formal power series with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Wrap a coefficient vector; its length fixes the truncation order at
    /// `len - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64], trunc: usize) -> Self {
        let mut v: Vec<BigRational> = coeffs.iter().map(|&c| rat(c)).collect();
        v.resize(trunc + 1, BigRational::zero());
        v.truncate(trunc + 1);
        Series::from_coeffs(v)
    }

    pub fn zero(trunc: usize) -> Self {
        Series::from_coeffs(vec![BigRational::zero(); trunc + 1])
    }

    pub fn one(trunc: usize) -> Self {
        Series::constant(BigRational::one(), trunc)
    }

    pub fn x(trunc: usize) -> Self {
        Series::from_int_coeffs(&[0, 1], trunc)
    }

    pub fn constant(c: BigRational, trunc: usize) -> Self {
        let mut v = vec![BigRational::zero(); trunc + 1];
        v[0] = c;
        Series::from_coeffs(v)
    }

    /// Truncation order `N`.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Explicitly re-truncate to a smaller order.
    pub fn truncated(&self, trunc: usize) -> Series {
        assert!(trunc <= self.trunc(), "cannot extend a series by truncation");
        Series::from_coeffs(self.coeffs[..=trunc].to_vec())
    }

    fn require_equal_trunc(&self, other: &Series) -> Result<()> {
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch(self.trunc(), other.trunc()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.require_equal_trunc(other)?;
        Ok(Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.require_equal_trunc(other)?;
        Ok(Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.require_equal_trunc(other)?;
        Ok(Series::from_coeffs(convolve(
            &self.coeffs,
            &other.coeffs,
            self.coeffs.len(),
        )))
    }

    /// Valuation-aware division. With `v` the valuation of the denominator,
    /// requires the numerator valuation to be at least `v`, divides out
    /// `x^v` from both sides and returns a quotient truncated at `N - v`.
    pub fn div(&self, den: &Series) -> Result<Series> {
        self.require_equal_trunc(den)?;
        let dv = den.valuation().ok_or(Error::DivisionByZeroSeries)?;
        match self.valuation() {
            None => return Ok(Series::zero(self.trunc() - dv)),
            Some(nv) if nv < dv => {
                return Err(Error::Valuation {
                    numerator: nv,
                    denominator: dv,
                })
            }
            Some(_) => {}
        }
        Ok(Series::from_coeffs(prefix_div(
            &self.coeffs[dv..],
            &den.coeffs[dv..],
        )))
    }

    /// Square root of a series with constant term 1, by Newton iteration
    /// with per-step truncation doubling.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstantTerm(self.coeffs[0].to_string()));
        }
        let len = self.coeffs.len();
        let half = frac(1, 2);
        let mut s = vec![BigRational::one()];
        while s.len() < len {
            let m = (2 * s.len()).min(len);
            s.resize(m, BigRational::zero());
            let t = prefix_div(&self.coeffs[..m], &s);
            for (si, ti) in s.iter_mut().zip(t) {
                *si = (&*si + ti) * &half;
            }
        }
        Ok(Series::from_coeffs(s))
    }

    /// Multiply by `x^k`, preserving the truncation order (top coefficients
    /// fall off).
    pub fn shift_up(&self, k: usize) -> Series {
        let mut v = vec![BigRational::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k < v.len() {
                v[i + k] = c.clone();
            }
        }
        Series::from_coeffs(v)
    }

    /// Do all coefficients have denominator 1?
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

fn convolve(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Long division of coefficient prefixes; `den[0]` must be nonzero.
fn prefix_div(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    debug_assert!(!den[0].is_zero());
    let len = num.len();
    let mut q = vec![BigRational::zero(); len];
    for k in 0..len {
        let mut acc = num[k].clone();
        for i in 1..=k.min(den.len() - 1) {
            if !den[i].is_zero() && !q[k - i].is_zero() {
                acc -= &den[i] * &q[k - i];
            }
        }
        q[k] = acc / &den[0];
    }
    q
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.trunc() + 1)
    }
}

/// A dense polynomial with exact rational coefficients, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Parse a comma-separated ascending coefficient list, e.g. `1,-12,16`.
    /// Entries may be rationals (`1/2`).
    pub fn parse_list(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigRational>()
                    .map_err(|e| Error::ParsePoly(format!("`{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::ParsePoly("empty coefficient list".into()));
        }
        Ok(Poly::new(coeffs))
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn to_series(&self, trunc: usize) -> Series {
        let mut v = self.coeffs.clone();
        v.resize(trunc + 1, BigRational::zero());
        v.truncate(trunc + 1);
        Series::from_coeffs(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        self.to_series(self.degree().unwrap_or(0)).fmt_without_order(f)
    }
}

impl Series {
    fn fmt_without_order(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_string();
        let cut = s.rfind(" + O(").unwrap_or(s.len());
        write!(f, "{}", &s[..cut])
    }
}

/// Expand `num/den` as a truncated series; `den` must have a nonzero
/// constant term.
pub fn from_rational(num: &Poly, den: &Poly, trunc: usize) -> Result<Series> {
    if den.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    num.to_series(trunc).div(&den.to_series(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let n = 6;
        let a = Series::from_int_coeffs(&[1, 1], n);
        let b = Series::from_int_coeffs(&[1, -1], n);
        assert_eq!(a.mul(&b).unwrap(), Series::from_int_coeffs(&[1, 0, -1], n));
        assert_eq!(a.add(&Series::zero(n)).unwrap(), a);
        let c = Series::from_int_coeffs(&[1, 1, 1], n);
        assert_eq!(
            c.mul(&b).unwrap(),
            Series::from_int_coeffs(&[1, 0, 0, -1], n)
        );
    }

    #[test]
    fn trunc_mismatch_is_an_error() {
        let a = Series::one(4);
        let b = Series::one(5);
        assert_eq!(a.add(&b), Err(Error::TruncationMismatch(4, 5)));
        assert_eq!(a.mul(&b), Err(Error::TruncationMismatch(4, 5)));
    }

    #[test]
    fn division() {
        let n = 5;
        let geo = Series::one(n).div(&Series::from_int_coeffs(&[1, -1], n)).unwrap();
        assert_eq!(geo, Series::from_int_coeffs(&[1, 1, 1, 1, 1, 1], n));

        // valuation shift: (x + x^2) / x = 1 + x, truncation drops by one
        let q = Series::from_int_coeffs(&[0, 1, 1], n)
            .div(&Series::x(n))
            .unwrap();
        assert_eq!(q, Series::from_int_coeffs(&[1, 1], n - 1));

        let err = Series::one(n).div(&Series::x(n));
        assert_eq!(err, Err(Error::Valuation { numerator: 0, denominator: 1 }));
        assert_eq!(Series::one(n).div(&Series::zero(n)), Err(Error::DivisionByZeroSeries));
        assert_eq!(Series::zero(n).div(&Series::x(n)).unwrap(), Series::zero(n - 1));
    }

    #[test]
    fn from_rational_examples() {
        let n = 5;
        let s = from_rational(&Poly::from_ints(&[0, 1]), &Poly::from_ints(&[1, -1]), n).unwrap();
        assert_eq!(s, Series::from_int_coeffs(&[0, 1, 1, 1, 1, 1], n));
        let s = from_rational(&Poly::from_ints(&[1, 1]), &Poly::from_ints(&[1]), n).unwrap();
        assert_eq!(s, Series::from_int_coeffs(&[1, 1], n));
        let s = from_rational(&Poly::from_ints(&[1]), &Poly::from_ints(&[1, -2]), n).unwrap();
        assert_eq!(s, Series::from_int_coeffs(&[1, 2, 4, 8, 16, 32], n));
        assert_eq!(
            from_rational(&Poly::from_ints(&[1]), &Poly::from_ints(&[0, 1]), n),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn sqrt_examples() {
        let n = 6;
        assert_eq!(Series::one(n).sqrt().unwrap(), Series::one(n));
        let f = Series::from_int_coeffs(&[1, -2, 1], n);
        assert_eq!(f.sqrt().unwrap(), Series::from_int_coeffs(&[1, -1], n));
        let f = Series::from_int_coeffs(&[1, -10, 9], n);
        let s = f.sqrt().unwrap();
        assert_eq!(
            s.coeffs()[..5],
            [rat(1), rat(-5), rat(-8), rat(-40), rat(-232)]
        );
        assert_eq!(s.mul(&s).unwrap(), f);
        assert!(Series::from_int_coeffs(&[2], n).sqrt().is_err());
    }

    #[test]
    fn poly_basics() {
        let f = Poly::from_ints(&[1, -12, 16]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.eval(&rat(1)), rat(5));
        assert_eq!(f.derivative(), Poly::from_ints(&[-12, 32]));
        assert_eq!(Poly::parse_list("1,-12,16").unwrap(), f);
        assert_eq!(Poly::parse_list("1/2, 1").unwrap().eval(&rat(2)), frac(5, 2));
        assert!(Poly::parse_list("1,,2").is_err());
        assert!(Poly::parse_list("x").is_err());
        let g = Poly::from_ints(&[1, -1]).mul(&Poly::from_ints(&[1, -11, 7, -1]));
        assert_eq!(g, Poly::from_ints(&[1, -12, 18, -8, 1]));
        assert_eq!(Poly::new(vec![rat(1), rat(0)]).degree(), Some(0));
    }

    #[test]
    fn display() {
        let s = Series::from_int_coeffs(&[1, 0, -3], 3);
        assert_eq!(s.to_string(), "1 - 3*x^2 + O(x^4)");
        let s = Series::from_coeffs(vec![rat(0), frac(29, 16)]);
        assert_eq!(s.to_string(), "29/16*x + O(x^2)");
        assert_eq!(Poly::from_ints(&[1, -12, 16]).to_string(), "1 - 12*x + 16*x^2");
    }
}
