//! q-difference operators as exact linear maps on rational functions of `z`.
//!
//! The shift `e^{± i ln q^{1/2} ∂θ}` acts on `z = e^{iθ}` as `z ↦ z/s`
//! (plus) or `z ↦ z·s` (minus), so every operator here is a tree of
//! multiplications by rational functions and rescalings of `z`. Applying an
//! operator to a symmetric Laurent polynomial produces a [`RationalExpr`]
//! whose poles must cancel; [`QOperator::apply_poly`] certifies that by exact
//! division.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::exact::{int, LaurentPoly, RationalExpr};
use crate::qkernel::QContext;

#[derive(Clone, Debug)]
pub enum QOperator {
    Identity,
    Scalar(BigRational),
    /// Multiplication by a fixed rational function of `z`.
    Multiply(RationalExpr),
    /// `f(z) ↦ f(c·z)`.
    Rescale(BigRational),
    Sum(Vec<QOperator>),
    /// Composition, written left to right as in operator notation: the last
    /// factor is applied first.
    Compose(Vec<QOperator>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `e^{+i ln q^{1/2} ∂θ}`: `z ↦ z/s`.
    Plus,
    /// `e^{−i ln q^{1/2} ∂θ}`: `z ↦ z·s`.
    Minus,
}

impl QOperator {
    pub fn multiply(expr: RationalExpr) -> Self {
        QOperator::Multiply(expr)
    }

    pub fn multiply_poly(p: LaurentPoly) -> Self {
        QOperator::Multiply(RationalExpr::from_poly(p))
    }

    pub fn scaled(self, c: BigRational) -> Self {
        QOperator::Compose(vec![QOperator::Scalar(c), self])
    }

    pub fn apply(&self, f: &RationalExpr) -> Result<RationalExpr> {
        match self {
            QOperator::Identity => Ok(f.clone()),
            QOperator::Scalar(c) => Ok(f.scale(c)),
            QOperator::Multiply(m) => Ok(m.mul(f)),
            QOperator::Rescale(c) => f.rescale_z(c),
            QOperator::Sum(terms) => {
                let mut parts = terms.iter().map(|t| t.apply(f));
                let first = parts
                    .next()
                    .unwrap_or_else(|| Ok(RationalExpr::from_poly(LaurentPoly::zero())))?;
                parts.try_fold(first, |acc, p| Ok(acc.add(&p?)))
            }
            QOperator::Compose(factors) => {
                let mut acc = f.clone();
                for op in factors.iter().rev() {
                    acc = simplify(op.apply(&acc)?);
                }
                Ok(acc)
            }
        }
    }

    /// Applies the operator to a polynomial and certifies that the result is
    /// again a Laurent polynomial. A surviving pole is a
    /// [`NonZeroRemainder`](crate::Error::NonZeroRemainder).
    pub fn apply_poly(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply(&RationalExpr::from_poly(f.clone()))?.to_laurent()
    }

    /// `self ∘ self`, applied as two certified steps.
    pub fn apply_twice(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_poly(&self.apply_poly(f)?)
    }
}

/// Prefers a certified polynomial; otherwise cancels common factors.
fn simplify(e: RationalExpr) -> RationalExpr {
    if e.den() == &LaurentPoly::one() {
        return e;
    }
    match e.to_laurent() {
        Ok(p) => RationalExpr::from_poly(p),
        Err(_) => e.reduce(),
    }
}

impl Add for QOperator {
    type Output = QOperator;
    fn add(self, rhs: QOperator) -> QOperator {
        match self {
            QOperator::Sum(mut terms) => {
                terms.push(rhs);
                QOperator::Sum(terms)
            }
            lhs => QOperator::Sum(vec![lhs, rhs]),
        }
    }
}

impl Neg for QOperator {
    type Output = QOperator;
    fn neg(self) -> QOperator {
        self.scaled(int(-1))
    }
}

impl Sub for QOperator {
    type Output = QOperator;
    fn sub(self, rhs: QOperator) -> QOperator {
        self + (-rhs)
    }
}

/// Composition: `(a * b)(f) = a(b(f))`.
impl Mul for QOperator {
    type Output = QOperator;
    fn mul(self, rhs: QOperator) -> QOperator {
        match self {
            QOperator::Compose(mut factors) => {
                factors.push(rhs);
                QOperator::Compose(factors)
            }
            lhs => QOperator::Compose(vec![lhs, rhs]),
        }
    }
}

fn lp(terms: &[(i64, BigRational)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().cloned())
}

/// `(1 − a z^k)` for the exponent `k`.
fn one_minus(a: &BigRational, k: i64) -> LaurentPoly {
    lp(&[(0, int(1)), (k, -a.clone())])
}

fn frac(num: LaurentPoly, den: LaurentPoly) -> RationalExpr {
    RationalExpr::new(num, den).expect("non-zero denominator")
}

fn rescale_factor(ctx: &QContext, dir: Direction) -> BigRational {
    match dir {
        Direction::Plus => ctx.s().recip(),
        Direction::Minus => ctx.s().clone(),
    }
}

/// Half-step shift `e^{± i ln q^{1/2} ∂θ}`.
pub fn shift(ctx: &QContext, dir: Direction) -> QOperator {
    QOperator::Rescale(rescale_factor(ctx, dir))
}

/// Full-step shift `e^{± i ln q ∂θ}`.
pub fn full_shift(ctx: &QContext, dir: Direction) -> QOperator {
    let c = rescale_factor(ctx, dir);
    QOperator::Rescale(&c * &c)
}

/// Averaging operator `𝒜_q = ½(shift₊ + shift₋)`.
pub fn averaging(ctx: &QContext) -> QOperator {
    (shift(ctx, Direction::Plus) + shift(ctx, Direction::Minus))
        .scaled(BigRational::new(1.into(), 2.into()))
}

/// Askey–Wilson divided difference
/// `D_q f = (2s/(1−q)) (f(z/s) − f(zs)) / (z − z⁻¹)`.
pub fn askey_wilson(ctx: &QContext) -> QOperator {
    let c = int(2) * ctx.s() / (int(1) - ctx.q());
    let prefactor = frac(LaurentPoly::constant(c), lp(&[(1, int(1)), (-1, int(-1))]));
    QOperator::multiply(prefactor) * (shift(ctx, Direction::Plus) - shift(ctx, Direction::Minus))
}

/// `(1 − β z⁻²)/(1 − z⁻²)`, the coefficient of the plus shift in `𝒟_x^{β,q}`.
fn plus_coefficient(beta: &BigRational) -> RationalExpr {
    frac(one_minus(beta, -2), one_minus(&int(1), -2))
}

/// `(1 − β z²)/(1 − z²)`, the coefficient of the minus shift.
fn minus_coefficient(beta: &BigRational) -> RationalExpr {
    frac(one_minus(beta, 2), one_minus(&int(1), 2))
}

/// The first-order operator
/// `𝒟_x^{β,q} = (1−βz⁻²)/(1−z⁻²) · shift₊ + (1−βz²)/(1−z²) · shift₋`.
pub fn dx_beta_q(ctx: &QContext) -> QOperator {
    dx_beta_q_split(ctx, ctx.beta(), ctx.beta())
}

/// `𝒟_x^{β,q}` with independent β values in the two shift coefficients.
/// Equal values give [`dx_beta_q`]; unequal values give a deliberately
/// broken operator for negative controls.
pub fn dx_beta_q_split(ctx: &QContext, beta_plus: &BigRational, beta_minus: &BigRational) -> QOperator {
    QOperator::multiply(plus_coefficient(beta_plus)) * shift(ctx, Direction::Plus)
        + QOperator::multiply(minus_coefficient(beta_minus)) * shift(ctx, Direction::Minus)
}

/// `𝒟_x^q`, the β = 0 operator governing the q-Hermite polynomials.
pub fn dx_q(ctx: &QContext) -> QOperator {
    dx_beta_q(&ctx.with_beta(int(0)))
}

/// `𝒟_x^{1/q}`: `𝒟_x^q` with `q ↦ q⁻¹`, so the two shifts trade places.
pub fn dx_q_inverse(ctx: &QContext) -> QOperator {
    dx_q(&ctx.invert_q())
}

/// `(1 + β)𝒜_q + ((1−q)/(2s))(1 − β) x D_q`.
pub fn averaging_decomposition(ctx: &QContext) -> QOperator {
    let one = BigRational::one();
    let beta = ctx.beta();
    let c = (&one - ctx.q()) / (int(2) * ctx.s()) * (&one - beta);
    averaging(ctx).scaled(&one + beta)
        + (QOperator::multiply_poly(LaurentPoly::x()) * askey_wilson(ctx)).scaled(c)
}

/// `(1 − βz^{∓2})(1 − βq z^{∓2}) / (1 − q z^{∓2})`; `sign` picks the exponent
/// `−2` for `+1` and `+2` for `−1`.
fn weightfree_factor(ctx: &QContext, sign: i64) -> (LaurentPoly, LaurentPoly) {
    let k = -2 * sign;
    let beta = ctx.beta();
    let num = &one_minus(beta, k) * &one_minus(&(beta * ctx.q()), k);
    (num, one_minus(ctx.q(), k))
}

/// Weight-free second-order operator written with the `1/(i sin θ)`
/// prefactor as `2/(z − z⁻¹)`:
///
/// `2/(z−z⁻¹) · [ z A(z) (T₊² − 1) + z⁻¹ A(1/z) (1 − T₋²) ]`,
/// `A(z) = (1 − βz⁻²)(1 − βq z⁻²)/(1 − q z⁻²)`.
///
/// Its eigenvalue on `C_n` is `2(q^{-n} − 1)(1 − β²qⁿ)`.
pub fn weightfree_sl(ctx: &QContext) -> QOperator {
    let (a_num, a_den) = weightfree_factor(ctx, 1);
    let (b_num, b_den) = weightfree_factor(ctx, -1);
    let plus = QOperator::multiply(frac(a_num.shift(1), a_den))
        * (full_shift(ctx, Direction::Plus) - QOperator::Identity);
    let minus = QOperator::multiply(frac(b_num.shift(-1), b_den))
        * (QOperator::Identity - full_shift(ctx, Direction::Minus));
    let prefactor = frac(LaurentPoly::constant(int(2)), lp(&[(1, int(1)), (-1, int(-1))]));
    QOperator::multiply(prefactor) * (plus + minus)
}

/// `B(z) = (1−βz⁻²)(1−βqz⁻²) / ((1−z⁻²)(1−qz⁻²))` and its mirror `B(1/z)`.
fn sl_coefficient(ctx: &QContext, sign: i64) -> RationalExpr {
    let (num, den) = weightfree_factor(ctx, sign);
    frac(num, &den * &one_minus(&int(1), -2 * sign))
}

/// The same operator after the trigonometric rewriting, expanded into pure
/// shift terms and a multiplication term:
///
/// `2[ B(z) T₊² + B(1/z) T₋² − B(z) − B(1/z) ]`.
pub fn weightfree_sl_expanded(ctx: &QContext) -> QOperator {
    let b_plus = sl_coefficient(ctx, 1);
    let b_minus = sl_coefficient(ctx, -1);
    let diagonal = b_plus.add(&b_minus);
    (QOperator::multiply(b_plus) * full_shift(ctx, Direction::Plus)
        + QOperator::multiply(b_minus) * full_shift(ctx, Direction::Minus)
        - QOperator::multiply(diagonal))
    .scaled(int(2))
}

/// The form reached after commuting the shift coefficients through:
///
/// `2[ M T₊ M T₊ + M' T₋ M' T₋ − (1+q)(1−β)(β−q)/((1+q)² − 4qx²) − 1 − β² ]`
///
/// with `M = (1−βz⁻²)/(1−z⁻²)`, `M' = (1−βz²)/(1−z²)`.
pub fn weightfree_sl_commuted(ctx: &QContext) -> QOperator {
    let beta = ctx.beta();
    let q = ctx.q();
    let one = BigRational::one();
    let m_plus = || QOperator::multiply(plus_coefficient(beta));
    let m_minus = || QOperator::multiply(minus_coefficient(beta));
    let t_plus = || shift(ctx, Direction::Plus);
    let t_minus = || shift(ctx, Direction::Minus);
    // (1+q)² − 4qx² = (1 − qz²)(1 − qz⁻²)
    let x2 = &LaurentPoly::x() * &LaurentPoly::x();
    let quad = LaurentPoly::constant((&one + q) * (&one + q)) - x2.scale(&(int(4) * q));
    let c = (&one + q) * (&one - beta) * (beta - q);
    let pole_term = frac(LaurentPoly::constant(c), quad);
    let constant = &one + beta * beta;
    (m_plus() * t_plus() * m_plus() * t_plus() + m_minus() * t_minus() * m_minus() * t_minus()
        - QOperator::multiply(pole_term)
        - QOperator::Scalar(constant))
    .scaled(int(2))
}

/// `2[(𝒟_x^{β,q})² − (1+β)²]`.
pub fn factorized_square(ctx: &QContext) -> QOperator {
    let one_b = BigRational::one() + ctx.beta();
    let d = dx_beta_q(ctx);
    (d.clone() * d - QOperator::Scalar(&one_b * &one_b)).scaled(int(2))
}

/// `2(𝒟_x^{β,q} + 1 + β)(𝒟_x^{β,q} − 1 − β)`.
pub fn factorized_product(ctx: &QContext) -> QOperator {
    let one_b = BigRational::one() + ctx.beta();
    let d = dx_beta_q(ctx);
    ((d.clone() + QOperator::Scalar(one_b.clone())) * (d - QOperator::Scalar(one_b))).scaled(int(2))
}

/// The q-Hermite weight-free operator in its own normalization:
///
/// `1/(z−z⁻¹) · [ z/(1 − qz⁻²) (T₊² − 1) + z⁻¹/(1 − qz²) (1 − T₋²) ]`,
///
/// with eigenvalue `q^{-n} − 1` on `H_n`.
pub fn hermite_weightfree(ctx: &QContext) -> QOperator {
    let plus = QOperator::multiply(frac(LaurentPoly::z(), one_minus(ctx.q(), -2)))
        * (full_shift(ctx, Direction::Plus) - QOperator::Identity);
    let minus = QOperator::multiply(frac(LaurentPoly::monomial(-1, int(1)), one_minus(ctx.q(), 2)))
        * (QOperator::Identity - full_shift(ctx, Direction::Minus));
    let prefactor = frac(LaurentPoly::one(), lp(&[(1, int(1)), (-1, int(-1))]));
    QOperator::multiply(prefactor) * (plus + minus)
}

/// `shift₊ + shift₋`, whose eigenfunctions include the Chebyshev `T_n`.
pub fn shift_sum(ctx: &QContext) -> QOperator {
    shift(ctx, Direction::Plus) + shift(ctx, Direction::Minus)
}

/// Decides `a = b` on the symmetric basis `{1} ∪ {z^k + z^{-k} : 1 ≤ k ≤ cap}`.
/// By linearity this proves equality on all polynomials in `x` of degree
/// at most `cap`.
pub fn operator_equal(a: &QOperator, b: &QOperator, degree_cap: u32) -> Result<bool> {
    Ok(first_disagreement(a, b, degree_cap)?.is_none())
}

/// The lowest basis index on which `a` and `b` differ, if any.
pub fn first_disagreement(a: &QOperator, b: &QOperator, degree_cap: u32) -> Result<Option<u32>> {
    for k in 0..=degree_cap {
        let basis = LaurentPoly::symmetric_basis(k);
        if a.apply_poly(&basis)? != b.apply_poly(&basis)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Checks the commutation rule for both shift directions on `z^k`:
///
/// `(1−βq z^{∓2})/(1−q z^{∓2}) · shift± = shift± · (1−β z^{∓2})/(1−z^{∓2})`.
pub fn shift_commutation(ctx: &QContext, exponent: i64) -> Result<bool> {
    let beta = ctx.beta();
    let probe = RationalExpr::from_poly(LaurentPoly::monomial(exponent, int(1)));
    for (dir, k) in [(Direction::Plus, -2), (Direction::Minus, 2)] {
        let left_coeff = frac(one_minus(&(beta * ctx.q()), k), one_minus(ctx.q(), k));
        let right_coeff = frac(one_minus(beta, k), one_minus(&int(1), k));
        let lhs = QOperator::multiply(left_coeff) * shift(ctx, dir);
        let rhs = shift(ctx, dir) * QOperator::multiply(right_coeff);
        if !lhs.apply(&probe)?.equals(&rhs.apply(&probe)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
