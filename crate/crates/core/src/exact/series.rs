use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// A power series in `t` truncated after `t^order`, with Laurent-polynomial
/// coefficients. All arithmetic is exact modulo `t^{order+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        Self {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero())
                    .fold(LaurentPoly::zero(), |acc, k| {
                        acc + &self.coeffs[k] * &other.coeffs[n - k]
                    })
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse; needs the `t^0` coefficient to be a non-zero
    /// scalar (a constant Laurent polynomial).
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || !c0.is_constant() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = BigRational::one() / c0.coeff(0);
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(self.coeffs.len());
        out.push(LaurentPoly::constant(inv0.clone()));
        for n in 1..self.coeffs.len() {
            let mut acc = LaurentPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc + &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// `t ↦ c·t`: coefficient `n` picks up `c^n`.
    pub fn rescale_t(&self, c: &BigRational) -> Self {
        let mut power = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| {
                let out = p.scale(&power);
                power *= c;
                out
            })
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn try_map<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, &LaurentPoly) -> Result<LaurentPoly>,
    {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, p)| f(n, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}
