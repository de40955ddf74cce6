use std::f64::consts::PI;

use super::{min_factor, qpoch_inf, ComplexVal, ProductTruncation, ZERO_GUARD};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;
use crate::qkernel::QContext;

const I: ComplexVal = ComplexVal::new(0.0, 1.0);
const ONE: ComplexVal = ComplexVal::new(1.0, 0.0);

/// The weight as an analytic function of `z`:
/// `2i/(z − z⁻¹) · (z², z⁻²; q)_∞ / (βz², βz⁻²; q)_∞`.
/// On `|z| = 1` this is `w̃(x;β|q)` with `1/sin θ = 2i/(z − z⁻¹)`.
pub fn weight_z(z: ComplexVal, beta: f64, q: f64, trunc: &ProductTruncation) -> ComplexVal {
    let z2 = z * z;
    let zi2 = z2.inv();
    let num = qpoch_inf(z2, q, trunc) * qpoch_inf(zi2, q, trunc);
    let den = qpoch_inf(z2 * beta, q, trunc) * qpoch_inf(zi2 * beta, q, trunc);
    I * 2.0 / (z - z.inv()) * num / den
}

fn guard(z: ComplexVal, beta: f64, q: f64, trunc: &ProductTruncation) -> Result<()> {
    let z2 = z * z;
    let zi2 = z2.inv();
    let worst = [z2, zi2, z2 * beta, zi2 * beta]
        .into_iter()
        .map(|a| min_factor(a, q, trunc))
        .fold(f64::INFINITY, f64::min);
    if worst < ZERO_GUARD || (z - z.inv()).norm() < ZERO_GUARD {
        return Err(Error::IllConditioned);
    }
    Ok(())
}

/// `w̃(x;β|q)` at `x = cos θ`, for `0 < θ < π`.
pub fn weight_tilde(theta: f64, ctx: &QContext, trunc: &ProductTruncation) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidParameter(format!(
            "θ = {theta} must lie strictly inside (0, π)"
        )));
    }
    let z = ComplexVal::from_polar(1.0, theta);
    Ok(weight_z(z, ctx.beta_f64(), ctx.q_f64(), trunc).re)
}

/// Relative residual of `w̃(x;βq|q) = [(1+β)² − 4βx²] w̃(x;β|q)` at θ.
pub fn weight_recurrence_residual(theta: f64, ctx: &QContext, trunc: &ProductTruncation) -> Result<f64> {
    let beta = ctx.beta_f64();
    let shifted = weight_tilde(theta, &ctx.with_beta(ctx.beta() * ctx.q()), trunc)?;
    let x = theta.cos();
    let sigma = (1.0 + beta).powi(2) - 4.0 * beta * x * x;
    let rhs = sigma * weight_tilde(theta, ctx, trunc)?;
    Ok(relative(shifted, rhs))
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn relative_c(a: ComplexVal, b: ComplexVal) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Relative residuals of the two half-step weight relations
/// `w(z/s; βq) = s⁻¹ (1 − β z⁻²)(βq − z²) w(z; β)` and
/// `w(zs; βq) = s⁻¹ (1 − β z²)(βq − z⁻²) w(z; β)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightShiftResiduals {
    pub plus: f64,
    pub minus: f64,
}

impl WeightShiftResiduals {
    pub fn max(&self) -> f64 {
        self.plus.max(self.minus)
    }
}

pub fn weight_shift_check(ctx: &QContext, theta: f64, trunc: &ProductTruncation) -> Result<WeightShiftResiduals> {
    let (s, q, beta) = (ctx.s_f64(), ctx.q_f64(), ctx.beta_f64());
    let bq = beta * q;
    let z = ComplexVal::from_polar(1.0, theta);
    let z2 = z * z;
    guard(z, beta, q, trunc)?;
    guard(z / s, bq, q, trunc)?;
    guard(z * s, bq, q, trunc)?;
    let base = weight_z(z, beta, q, trunc);
    let plus_lhs = weight_z(z / s, bq, q, trunc);
    let plus_rhs = (ONE - z2.inv() * beta) * (bq - z2) * base / s;
    let minus_lhs = weight_z(z * s, bq, q, trunc);
    let minus_rhs = (ONE - z2 * beta) * (bq - z2.inv()) * base / s;
    Ok(WeightShiftResiduals {
        plus: relative_c(plus_lhs, plus_rhs),
        minus: relative_c(minus_lhs, minus_rhs),
    })
}

/// `D_q F(z) = (2s/(1−q)) (F(z/s) − F(zs)) / (z − z⁻¹)` for any function of `z`.
pub fn askey_wilson_numeric<F>(f: F, z: ComplexVal, s: f64) -> ComplexVal
where
    F: Fn(ComplexVal) -> ComplexVal,
{
    let q = s * s;
    (f(z / s) - f(z * s)) * (2.0 * s / (1.0 - q)) / (z - z.inv())
}

/// Relative residual of `D_q[w(·;βq) D_q p] = λ p w(·;β)` at `z = e^{iθ}`,
/// with both divided differences taken numerically on the analytic z-form.
pub fn sturm_liouville_residual(
    p: &LaurentPoly,
    lambda: f64,
    ctx: &QContext,
    theta: f64,
    trunc: &ProductTruncation,
) -> Result<f64> {
    let (s, q, beta) = (ctx.s_f64(), ctx.q_f64(), ctx.beta_f64());
    let bq = beta * q;
    let z = ComplexVal::from_polar(1.0, theta);
    guard(z, beta, q, trunc)?;
    guard(z / s, bq, q, trunc)?;
    guard(z * s, bq, q, trunc)?;
    let inner = |u: ComplexVal| {
        let dp = askey_wilson_numeric(|v| p.eval(v), u, s);
        weight_z(u, bq, q, trunc) * dp
    };
    let lhs = askey_wilson_numeric(inner, z, s);
    let rhs = p.eval(z) * weight_z(z, beta, q, trunc) * lambda;
    Ok(relative_c(lhs, rhs))
}

/// [`sturm_liouville_residual`] for `C_n(x;β|q)` with eigenvalue `λ_n(β)`.
pub fn sl_selfadjoint_residual(n: u32, ctx: &QContext, theta: f64, trunc: &ProductTruncation) -> Result<f64> {
    let p = crate::families::ultraspherical(n, ctx);
    let lambda = crate::exact::to_f64(crate::qkernel::lambda_n(ctx, n).value());
    sturm_liouville_residual(&p, lambda, ctx, theta, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, to_f64};
    use crate::families::q_hermite;
    use crate::numerics::theta_grid;
    use crate::qkernel::lambda_n;

    fn ctx(s: (i64, i64), beta: (i64, i64)) -> QContext {
        QContext::new(rat(s.0, s.1), rat(beta.0, beta.1)).unwrap()
    }

    #[test]
    fn hermite_weight_is_beta_zero_case() {
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (0, 1));
        let theta = PI / 2.0;
        let z2 = ComplexVal::from_polar(1.0, 2.0 * theta);
        let direct = (qpoch_inf(z2, c.q_f64(), &t) * qpoch_inf(z2.inv(), c.q_f64(), &t)).re / theta.sin();
        assert!((weight_tilde(theta, &c, &t).unwrap() - direct).abs() < 1e-13);
    }

    #[test]
    fn weight_is_positive_and_mirror_symmetric() {
        let t = ProductTruncation::default();
        let c = ctx((3, 5), (-1, 3));
        for theta in theta_grid() {
            let w = weight_tilde(theta, &c, &t).unwrap();
            let m = weight_tilde(PI - theta, &c, &t).unwrap();
            assert!(w > 0.0);
            assert!((w - m).abs() <= 1e-12 * w);
        }
        assert!(weight_tilde(0.0, &c, &t).is_err());
        assert!(weight_tilde(PI, &c, &t).is_err());
    }

    #[test]
    fn weight_recurrence() {
        let t = ProductTruncation::default();
        for c in [ctx((1, 2), (1, 2)), ctx((1, 3), (7, 8)), ctx((3, 5), (-1, 3))] {
            for theta in theta_grid() {
                assert!(weight_recurrence_residual(theta, &c, &t).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn hermite_weight_shift() {
        // β = 0: w(z/s) = −z²/s · w(z) and w(zs) = −z⁻²/s · w(z)
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (0, 1));
        for theta in theta_grid() {
            let r = weight_shift_check(&c, theta, &t).unwrap();
            assert!(r.max() < 1e-9, "θ={theta}: {r:?}");
        }
    }

    #[test]
    fn general_weight_shift() {
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (1, 2));
        assert!(weight_shift_check(&c, 1.0, &t).unwrap().max() < 1e-9);
        let c2 = ctx((3, 5), (-1, 3));
        for theta in theta_grid() {
            assert!(weight_shift_check(&c2, theta, &t).unwrap().max() < 1e-9);
        }
    }

    #[test]
    fn sturm_liouville_constant_is_trivial() {
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (1, 2));
        assert!(sl_selfadjoint_residual(0, &c, 0.7, &t).unwrap() < 1e-12);
    }

    #[test]
    fn sturm_liouville_grid() {
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (1, 2));
        for theta in theta_grid() {
            assert!(sl_selfadjoint_residual(3, &c, theta, &t).unwrap() < 1e-8);
        }
        let h = ctx((1, 2), (0, 1));
        let p = q_hermite(4, &h);
        let lambda = to_f64(lambda_n(&h, 4).value());
        for theta in theta_grid() {
            assert!(sturm_liouville_residual(&p, lambda, &h, theta, &t).unwrap() < 1e-8);
        }
    }

    #[test]
    fn wrong_eigenvalue_is_visible() {
        let t = ProductTruncation::default();
        let c = ctx((1, 2), (1, 2));
        let p = crate::families::ultraspherical(3, &c);
        let lambda = to_f64(lambda_n(&c, 3).value()) * 1.01;
        assert!(sturm_liouville_residual(&p, lambda, &c, 0.9, &t).unwrap() > 1e-4);
    }
}
