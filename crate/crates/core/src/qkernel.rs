//! Parameter contexts, finite q-products and the closed-form eigenvalues.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, rpow, to_f64};

/// A parameter point. `q` is carried through its square root `s` so that
/// half-step shifts `z ↦ z/s`, `z ↦ z·s` stay rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    s: BigRational,
    q: BigRational,
    beta: BigRational,
    gamma: Option<BigRational>,
    formal: bool,
}

impl QContext {
    /// A context in the analytic regime `0 < s < 1`.
    pub fn new(s: BigRational, beta: BigRational) -> Result<Self> {
        if !s.is_positive() || s >= BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "s = {s} must satisfy 0 < s < 1"
            )));
        }
        Ok(Self::build(s, beta, false))
    }

    /// A context for purely algebraic identities, where `s > 1` (that is
    /// `q > 1`) is allowed. `s` must still be positive and different from 1.
    pub fn formal(s: BigRational, beta: BigRational) -> Result<Self> {
        if !s.is_positive() || s.is_one() {
            return Err(Error::InvalidParameter(format!(
                "s = {s} must be positive and different from 1"
            )));
        }
        let formal = s > BigRational::one();
        Ok(Self::build(s, beta, formal))
    }

    fn build(s: BigRational, beta: BigRational, formal: bool) -> Self {
        let q = &s * &s;
        Self {
            s,
            q,
            beta,
            gamma: None,
            formal,
        }
    }

    pub fn with_gamma(mut self, gamma: BigRational) -> Self {
        self.gamma = Some(gamma);
        self
    }

    pub fn with_beta(&self, beta: BigRational) -> Self {
        Self {
            beta,
            ..self.clone()
        }
    }

    /// The same β with `q ↦ q⁻¹`. From `0 < s < 1` this is a formal context.
    pub fn invert_q(&self) -> Self {
        let s = BigRational::one() / &self.s;
        let formal = s > BigRational::one();
        let mut inverted = Self::build(s, self.beta.clone(), formal);
        inverted.gamma = self.gamma.clone();
        inverted
    }

    /// `β ↦ β⁻¹`. Fails for β = 0.
    pub fn invert_beta(&self) -> Result<Self> {
        if self.beta.is_zero() {
            return Err(Error::InvalidParameter("β = 0 has no inverse".into()));
        }
        Ok(self.with_beta(self.beta.recip()))
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn gamma(&self) -> Option<&BigRational> {
        self.gamma.as_ref()
    }

    /// Set when the context sits outside `0 < q < 1`.
    pub fn is_formal(&self) -> bool {
        self.formal
    }

    /// `0 < q < 1` and `|β| < 1`: the weight is positive and the
    /// polynomials are orthogonal.
    pub fn is_orthogonality_regime(&self) -> bool {
        !self.formal && self.beta.abs() < BigRational::one()
    }

    pub fn s_f64(&self) -> f64 {
        to_f64(&self.s)
    }

    pub fn q_f64(&self) -> f64 {
        to_f64(&self.q)
    }

    pub fn beta_f64(&self) -> f64 {
        to_f64(&self.beta)
    }
}

impl fmt::Display for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}, beta={}", fmt_rational(&self.s), fmt_rational(&self.beta))?;
        if let Some(g) = &self.gamma {
            write!(f, ", gamma={}", fmt_rational(g))?;
        }
        Ok(())
    }
}

/// An exact eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigenvalue(pub BigRational);

impl Eigenvalue {
    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl Serialize for Eigenvalue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&fmt_rational(&self.0))
    }
}

/// `(a; q)_k = ∏_{j<k} (1 − a q^j)`.
pub fn q_pochhammer(a: &BigRational, q: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut aq = a.clone();
    for _ in 0..k {
        acc *= BigRational::one() - &aq;
        aq *= q;
    }
    acc
}

/// Gaussian binomial `[n k]_q`; zero when `k` is outside `0..=n`.
pub fn q_binomial(n: i64, k: i64, q: &BigRational) -> BigRational {
    if n < 0 || k < 0 || k > n {
        return BigRational::zero();
    }
    let (n, k) = (n as u32, k as u32);
    let qq = q_pochhammer(q, q, n);
    qq / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k))
}

/// `μ_n = s^{-n} + β sⁿ`, the eigenvalue of the first-order operator on `C_n`.
pub fn mu_n(ctx: &QContext, n: u32) -> Eigenvalue {
    let n = i64::from(n);
    Eigenvalue(rpow(&ctx.s, -n) + &ctx.beta * rpow(&ctx.s, n))
}

/// `λ_n(β) = 4q(1 − q^{-n})(1 − β²qⁿ)/(1 − q)²`, the eigenvalue of the
/// weighted Sturm–Liouville form.
pub fn lambda_n(ctx: &QContext, n: u32) -> Eigenvalue {
    let one = BigRational::one();
    let n = i64::from(n);
    let q = &ctx.q;
    let omq = &one - q;
    let value = BigRational::from_integer(4.into())
        * q
        * (&one - rpow(q, -n))
        * (&one - &ctx.beta * &ctx.beta * rpow(q, n))
        / (&omq * &omq);
    Eigenvalue(value)
}

/// `2(q^{-n} − 1)(1 − β²qⁿ)`, the eigenvalue of the weight-free second-order
/// equation.
pub fn weightfree_eigenvalue(ctx: &QContext, n: u32) -> Eigenvalue {
    Eigenvalue(BigRational::from_integer(2.into()) * eigen_product(ctx, n))
}

fn eigen_product(ctx: &QContext, n: u32) -> BigRational {
    let one = BigRational::one();
    let n = i64::from(n);
    (rpow(&ctx.q, -n) - &one) * (&one - &ctx.beta * &ctx.beta * rpow(&ctx.q, n))
}

/// Exact truth of `μ_n² − (1+β)² = (q^{-n} − 1)(1 − β²qⁿ)`.
pub fn eigenvalue_identity(ctx: &QContext, n: u32) -> bool {
    let mu = mu_n(ctx, n).0;
    let one_plus_beta = BigRational::one() + &ctx.beta;
    &mu * &mu - &one_plus_beta * &one_plus_beta == eigen_product(ctx, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ctx(s: BigRational, beta: BigRational) -> QContext {
        QContext::new(s, beta).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(QContext::new(int(1), int(0)).is_err());
        assert!(QContext::new(int(0), int(0)).is_err());
        assert!(QContext::new(rat(-1, 2), int(0)).is_err());
        let c = ctx(rat(1, 2), rat(1, 2));
        assert_eq!(c.q(), &rat(1, 4));
        assert!(c.is_orthogonality_regime());
        assert!(!ctx(rat(1, 2), int(2)).is_orthogonality_regime());
        let inv = c.invert_q();
        assert_eq!(inv.s(), &int(2));
        assert_eq!(inv.q(), &int(4));
        assert!(inv.is_formal());
        assert!(c.with_beta(int(0)).invert_beta().is_err());
        assert!(QContext::formal(int(1), int(0)).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&rat(3, 7), &rat(1, 2), 0), int(1));
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(1, 2), 2), rat(3, 8));
        for k in 0..6 {
            assert_eq!(q_pochhammer(&int(0), &rat(1, 3), k), int(1));
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(5, 0, &rat(1, 2)), int(1));
        assert_eq!(q_binomial(2, 1, &rat(1, 2)), rat(3, 2));
        assert_eq!(q_binomial(3, 1, &rat(1, 3)), rat(13, 9));
        assert_eq!(q_binomial(3, 4, &rat(1, 3)), int(0));
        assert_eq!(q_binomial(3, -1, &rat(1, 3)), int(0));
    }

    #[test]
    fn binomial_symmetry() {
        let q = rat(2, 5);
        for n in 0..10 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k, &q), q_binomial(n, n - k, &q));
            }
        }
    }

    #[test]
    fn mu_examples() {
        let c = ctx(rat(1, 2), rat(1, 2));
        assert_eq!(mu_n(&c, 0).0, rat(3, 2));
        assert_eq!(mu_n(&c, 1).0, rat(9, 4));
        let h = c.with_beta(int(0));
        for n in 0..8 {
            assert_eq!(mu_n(&h, n).0, rpow(&rat(1, 2), -(n as i64)));
        }
    }

    #[test]
    fn lambda_examples() {
        let c = ctx(rat(1, 2), rat(1, 2));
        assert_eq!(lambda_n(&c, 0).0, int(0));
        assert_eq!(lambda_n(&c, 1).0, int(-5));
        let h = ctx(rat(1, 2), int(0));
        let q = h.q().clone();
        for n in 0..10 {
            let hermite = int(4) * &q * (int(1) - rpow(&q, -(n as i64)))
                / ((int(1) - &q) * (int(1) - &q));
            assert_eq!(lambda_n(&h, n).0, hermite);
        }
    }

    #[test]
    fn lambda_at_q_one_half() {
        // q = 1/2 is not s² for rational s, so evaluate the formula directly.
        let q = rat(1, 2);
        let value = int(4) * &q * (int(1) - rpow(&q, -1)) / ((int(1) - &q) * (int(1) - &q));
        assert_eq!(value, int(-8));
    }

    #[test]
    fn eigenvalue_identity_examples() {
        let c = ctx(rat(1, 2), rat(1, 2));
        assert!(eigenvalue_identity(&c, 0));
        assert!(eigenvalue_identity(&c, 1));
        assert_eq!(weightfree_eigenvalue(&c, 1).0, rat(45, 8));
    }

    #[test]
    fn mu_strictly_increasing_for_nonnegative_beta() {
        for (sn, sd) in [(1, 2), (1, 3), (3, 5), (9, 10)] {
            for beta in [int(0), rat(1, 2), rat(7, 8)] {
                let c = ctx(rat(sn, sd), beta);
                for n in 0..20 {
                    assert!(mu_n(&c, n) < mu_n(&c, n + 1));
                }
            }
        }
    }
}
