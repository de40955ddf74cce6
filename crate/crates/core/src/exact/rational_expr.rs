use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// A quotient `num / den` of Laurent polynomials. Operator applications
/// produce these before their poles have been cancelled.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self { num, den }.fold_monomial_den())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A single-term denominator is a unit; move it into the numerator.
    fn fold_monomial_den(self) -> Self {
        if self.den.len() == 1 {
            let (k, c) = self.den.terms().next().expect("one term");
            let inv = BigRational::from_integer(1.into()) / c;
            let num = self.num.shift(-k).scale(&inv);
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        self
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        if self.den == other.den {
            return Self {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .fold_monomial_den()
    }

    pub fn scale(&self, c: &BigRational) -> RationalExpr {
        if c.is_zero() {
            return Self::from_poly(LaurentPoly::zero());
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn rescale_z(&self, c: &BigRational) -> Result<RationalExpr> {
        Ok(Self {
            num: self.num.rescale_z(c)?,
            den: self.den.rescale_z(c)?,
        })
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduce(&self) -> RationalExpr {
        if self.num.is_zero() {
            return Self::from_poly(LaurentPoly::zero());
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.exact_divide(&g).expect("gcd divides numerator");
        let den = self.den.exact_divide(&g).expect("gcd divides denominator");
        Self { num, den }.fold_monomial_den()
    }

    /// The Laurent polynomial this expression equals, certified by exact
    /// division. A remainder means the poles did not cancel.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        self.num.exact_divide(&self.den)
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equals(&self, other: &RationalExpr) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<LaurentPoly> for RationalExpr {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
