use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rpow, to_f64};
use crate::error::{Error, Result};

/// A finitely supported Laurent polynomial `Σ c_k z^k` with exact rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// `z`.
    pub fn z() -> Self {
        Self::monomial(1, BigRational::one())
    }

    /// `x = (z + z⁻¹)/2`.
    pub fn x() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self::from_terms([(1, half.clone()), (-1, half)])
    }

    /// `z^k + z^{-k}` for `k > 0`, and `1` for `k = 0`.
    pub fn symmetric_basis(k: u32) -> Self {
        let k = i64::from(k);
        if k == 0 {
            Self::one()
        } else {
            Self::from_terms([(k, BigRational::one()), (-k, BigRational::one())])
        }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial is a (possibly zero) constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k + shift, v.clone())).collect(),
        }
    }

    /// `f(z) ↦ f(c·z)`: the coefficient of `z^k` picks up `c^k`.
    pub fn rescale_z(&self, c: &BigRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroRescale);
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v * rpow(c, k)))
                .collect(),
        })
    }

    /// `f(z) ↦ f(1/z)`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, v)| (-k, v.clone())).collect(),
        }
    }

    /// `f(z) = f(1/z)`, i.e. `f` is a polynomial in `x = (z + z⁻¹)/2`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&k, v)| self.terms.get(&-k) == Some(v))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Largest absolute coefficient, useful as a size measure in diagnostics.
    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Dense ascending coefficients of `z^{-min_deg}·self`, with the shift.
    fn to_dense(&self) -> Option<(i64, Vec<BigRational>)> {
        let lo = self.min_deg()?;
        let hi = self.max_deg()?;
        let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (&k, v) in &self.terms {
            dense[(k - lo) as usize] = v.clone();
        }
        Some((lo, dense))
    }

    fn from_dense(shift: i64, dense: &[BigRational]) -> Self {
        Self::from_terms(
            dense
                .iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both operands are normalized to ordinary polynomials by factoring out
    /// their lowest power of `z`, divided by long division, and the quotient
    /// is re-multiplied against the divisor before it is returned.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (d_shift, d) = divisor.to_dense().ok_or(Error::ZeroDivisor)?;
        let Some((p_shift, mut rem)) = self.to_dense() else {
            return Ok(Self::zero());
        };
        if rem.len() < d.len() {
            return Err(Error::NonZeroRemainder {
                remainder: self.clone(),
            });
        }
        let lead = d.last().expect("non-empty divisor");
        let mut quot = vec![BigRational::zero(); rem.len() - d.len() + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let factor = top / lead;
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    rem[i + j] -= &factor * dj;
                }
            }
            quot[i] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonZeroRemainder {
                remainder: Self::from_dense(p_shift, &rem),
            });
        }
        let q = Self::from_dense(p_shift - d_shift, &quot);
        if &(&q * divisor) != self {
            return Err(Error::NonZeroRemainder {
                remainder: self - &(&q * divisor),
            });
        }
        Ok(q)
    }

    /// Monic greatest common divisor as an ordinary polynomial (non-negative
    /// exponents, non-zero constant term). Powers of `z` are units and are
    /// ignored.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let a = self.to_dense().map(|(_, d)| d).unwrap_or_default();
        let b = other.to_dense().map(|(_, d)| d).unwrap_or_default();
        let g = dense_gcd(a, b);
        if g.is_empty() {
            return Self::zero();
        }
        Self::from_dense(0, &g)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, v)| z.powi(k as i32) * to_f64(v))
            .sum()
    }

    /// Value at `z = e^{iθ}` of a symmetric polynomial, which is real.
    pub fn eval_theta(&self, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, v)| to_f64(v) * (k as f64 * theta).cos())
            .sum()
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn dense_rem(mut a: Vec<BigRational>, b: &[BigRational]) -> Vec<BigRational> {
    let lead = b.last().expect("non-empty divisor");
    while a.len() >= b.len() {
        let top = a.last().expect("checked length").clone();
        if !top.is_zero() {
            let factor = top / lead;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[off + j] -= &factor * bj;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn dense_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> Vec<BigRational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = dense_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            out.add_term(k, -v.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                *acc.entry(i + j).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `z^2 + 3/2 + z^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("z")?,
                1 => write!(f, "{mag}*z")?,
                _ if unit => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(k, n, d)| (k, rat(n, d))))
    }

    #[test]
    fn additive_identity() {
        let f = lp(&[(1, 1, 1), (-1, 1, 1)]);
        assert_eq!(&f + &LaurentPoly::zero(), f);
    }

    #[test]
    fn hand_expanded_products() {
        let a = lp(&[(1, 1, 1), (-1, -1, 1)]);
        let b = lp(&[(1, 1, 1), (-1, 1, 1)]);
        assert_eq!(&a * &b, lp(&[(2, 1, 1), (-2, -1, 1)]));

        let c = lp(&[(0, 1, 1), (-2, -1, 1)]);
        assert_eq!(&c * &LaurentPoly::monomial(2, int(1)), lp(&[(2, 1, 1), (0, -1, 1)]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let f = lp(&[(3, 2, 1), (0, 1, 1)]);
        let d = &f - &f;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn rescale_examples() {
        let f = lp(&[(1, 1, 1), (-1, 1, 1)]);
        assert_eq!(f.rescale_z(&int(2)).unwrap(), lp(&[(1, 2, 1), (-1, 1, 2)]));
        assert_eq!(f.rescale_z(&int(1)).unwrap(), f);
        let z2 = LaurentPoly::monomial(2, int(1));
        assert_eq!(z2.rescale_z(&rat(1, 2)).unwrap(), lp(&[(2, 1, 4)]));
        assert!(matches!(f.rescale_z(&int(0)), Err(Error::ZeroRescale)));
    }

    #[test]
    fn exact_divide_self() {
        let p = lp(&[(2, 1, 1), (0, -1, 1)]);
        assert_eq!(p.exact_divide(&p).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn exact_divide_laurent_certified_by_remultiplication() {
        let p = lp(&[(2, 1, 1), (-2, -1, 1)]);
        let q = lp(&[(0, 1, 1), (-2, -1, 1)]);
        let r = p.exact_divide(&q).unwrap();
        assert_eq!(&r * &q, p);
        assert_eq!(r, lp(&[(2, 1, 1), (0, 1, 1)]));
    }

    #[test]
    fn exact_divide_reports_remainder() {
        let p = lp(&[(1, 1, 1), (0, 1, 1)]);
        let q = lp(&[(1, 1, 1), (0, -1, 1)]);
        match p.exact_divide(&q) {
            Err(Error::NonZeroRemainder { remainder }) => {
                assert_eq!(remainder, LaurentPoly::constant(int(2)));
            }
            other => panic!("expected remainder, got {other:?}"),
        }
        assert!(matches!(p.exact_divide(&LaurentPoly::zero()), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn short_dividend_is_a_remainder() {
        let p = LaurentPoly::one();
        let q = lp(&[(1, 1, 1), (0, -1, 1)]);
        assert!(matches!(p.exact_divide(&q), Err(Error::NonZeroRemainder { .. })));
    }

    #[test]
    fn symmetry_and_reflection() {
        let x = LaurentPoly::x();
        assert!(x.is_symmetric());
        assert!((&x * &x).is_symmetric());
        assert_eq!(x.reflect(), x);
        assert!(!LaurentPoly::z().is_symmetric());
        assert!(LaurentPoly::zero().is_symmetric());
    }

    #[test]
    fn gcd_finds_common_factor() {
        let a = lp(&[(1, 1, 1), (0, -1, 1)]);
        let b = lp(&[(1, 1, 1), (0, 2, 1)]);
        let c = lp(&[(1, 1, 1), (0, 3, 1)]);
        let g = (&a * &b).gcd(&(&a * &c).shift(-3));
        assert_eq!(g, a);
    }

    #[test]
    fn display_is_readable() {
        let f = lp(&[(2, 1, 1), (0, 3, 2), (-2, 1, 1)]);
        assert_eq!(f.to_string(), "z^2 + 3/2 + z^-2");
        assert_eq!(lp(&[(1, -2, 1)]).to_string(), "-2*z");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn theta_evaluation_matches_complex() {
        let f = lp(&[(3, 1, 2), (1, 1, 3), (-1, 1, 3), (-3, 1, 2)]);
        let theta = 0.7_f64;
        let z = Complex64::from_polar(1.0, theta);
        let c = f.eval(z);
        assert!((c.re - f.eval_theta(theta)).abs() < 1e-14);
        assert!(c.im.abs() < 1e-14);
    }
}
