use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{qpoch_f64, ComplexVal};
use crate::error::{Error, Result};
use crate::exact::{int, to_f64, LaurentPoly};
use crate::families::{chebyshev, gegenbauer, to_x_basis, ultraspherical, ChebyshevKind};
use crate::qkernel::QContext;

/// One row of the `q → 1` convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitRow {
    pub h: f64,
    pub q: f64,
    pub error: f64,
}

fn x_grid() -> Vec<f64> {
    (0..11).map(|i| -0.9 + 0.18 * i as f64).collect()
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn deriv(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Compares `(1/(ln q)²)[(1 + q^γ) I − 𝒟_x^{q^γ,q}]` with
/// `¼[(1 − x²) d²/dx² − (2γ+1) x d/dx]` on `T_0 … T_degree` over an
/// 11-point grid in `[−0.9, 0.9]`, for `q = 1 − h`.
pub fn limit_q_to_1(gamma: &BigRational, test_fn_degree: u32, hs: &[f64]) -> Result<Vec<LimitRow>> {
    if hs.iter().any(|&h| !(h > 0.0 && h < 1.0)) {
        return Err(Error::InvalidParameter("every h must lie in (0, 1)".into()));
    }
    let g = to_f64(gamma);
    let tests: Vec<(LaurentPoly, Vec<f64>)> = (0..=test_fn_degree)
        .map(|k| {
            let t = chebyshev(ChebyshevKind::T, k);
            let xs = to_x_basis(&t).expect("T_k is symmetric").iter().map(to_f64).collect();
            (t, xs)
        })
        .collect();
    let rows = hs
        .iter()
        .map(|&h| {
            let q = 1.0 - h;
            let s = q.sqrt();
            let beta = q.powf(g);
            let lnq2 = q.ln().powi(2);
            let mut error = 0.0f64;
            for x in x_grid() {
                let z = ComplexVal::from_polar(1.0, x.acos());
                let z2 = z * z;
                let m_plus = (1.0 - beta / z2) / (1.0 - 1.0 / z2);
                let m_minus = (1.0 - beta * z2) / (1.0 - z2);
                for (t, xs) in &tests {
                    let dx = m_plus * t.eval(z / s) + m_minus * t.eval(z * s);
                    let value = horner(xs, x);
                    let lhs = ((1.0 + beta) * value - dx.re) / lnq2;
                    let d1 = deriv(xs);
                    let d2 = deriv(&d1);
                    let rhs = 0.25 * ((1.0 - x * x) * horner(&d2, x) - (2.0 * g + 1.0) * x * horner(&d1, x));
                    error = error.max((lhs - rhs).abs());
                }
            }
            LimitRow { h, q, error }
        })
        .collect();
    Ok(rows)
}

/// Observed convergence orders `log(e_i/e_{i+1}) / log(h_i/h_{i+1})`.
pub fn measured_orders(rows: &[LimitRow]) -> Vec<f64> {
    rows.windows(2)
        .map(|w| (w[0].error / w[1].error).ln() / (w[0].h / w[1].h).ln())
        .collect()
}

/// Floating coefficients of `C_n(x;β|q)`; entry `k` multiplies `z^{n−2k}`.
pub fn ultraspherical_coeffs_f64(n: u32, q: f64, beta: f64) -> Vec<f64> {
    let ratios: Vec<f64> = (0..=n).map(|k| qpoch_f64(beta, q, k) / qpoch_f64(q, q, k)).collect();
    (0..=n as usize).map(|k| ratios[k] * ratios[n as usize - k]).collect()
}

/// Largest relative coefficient deviation between `C_n(x; q^γ|q)` and the
/// Gegenbauer `C_n^{(γ)}(x)`.
pub fn gegenbauer_limit_deviation(n: u32, gamma: &BigRational, q: f64) -> f64 {
    let approx = ultraspherical_coeffs_f64(n, q, q.powf(to_f64(gamma)));
    let exact = gegenbauer(n, gamma);
    approx
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let b = to_f64(&exact.coeff(i64::from(n) - 2 * k as i64));
            if b == 0.0 {
                a.abs()
            } else {
                ((a - b) / b).abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Largest coefficient deviation between `(1 − qⁿ)/(2(1 − β)) C_n(x;β|q)`
/// at `β = 1 − δ` and `T_n(x)`. Computed exactly in rationals (δ is taken
/// at its exact binary value) and rounded once at the end.
pub fn limit_beta_to_1(n: u32, ctx_base: &QContext, delta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("the β → 1 limit needs n ≥ 1".into()));
    }
    let delta = BigRational::from_float(delta)
        .filter(|d| d.is_positive())
        .ok_or_else(|| Error::InvalidParameter("δ must be positive and finite".into()))?;
    let ctx = ctx_base.with_beta(BigRational::one() - &delta);
    let qn = num_traits::pow(ctx.q().clone(), n as usize);
    let factor = (BigRational::one() - qn) / (int(2) * &delta);
    let scaled = ultraspherical(n, &ctx).scale(&factor);
    let diff = &scaled - &chebyshev(ChebyshevKind::T, n);
    Ok(to_f64(&diff.max_abs_coeff()))
}

/// Residual of `d/dx[(1 − x²) w] = −(2γ+1) x w`, `w = (1 − x²)^{γ−1/2}`,
/// using a centered difference with step `1e−6`. Relative to the right
/// side when that exceeds one in magnitude, absolute otherwise.
pub fn weight_identity_2_10(gamma: &BigRational, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::InvalidParameter("|x| must be below 1".into()));
    }
    if *gamma <= BigRational::new((-1).into(), 2.into()) {
        return Err(Error::InvalidParameter("γ must exceed −1/2".into()));
    }
    let g = to_f64(gamma);
    let w = |x: f64| (1.0 - x * x).powf(g - 0.5);
    let outer = |x: f64| (1.0 - x * x) * w(x);
    let step = 1e-6;
    let lhs = (outer(x + step) - outer(x - step)) / (2.0 * step);
    let rhs = -(2.0 * g + 1.0) * x * w(x);
    Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    const HS: [f64; 4] = [1e-1, 5e-2, 2.5e-2, 1.25e-2];

    #[test]
    fn constant_test_function_vanishes() {
        let rows = limit_q_to_1(&int(1), 0, &HS).unwrap();
        for r in rows {
            assert!(r.error < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn operator_limit_converges_monotonically() {
        for gamma in [rat(1, 2), int(1), rat(3, 2), int(2)] {
            let rows = limit_q_to_1(&gamma, 4, &HS).unwrap();
            for w in rows.windows(2) {
                assert!(w[1].error < w[0].error, "γ={gamma}: {rows:?}");
            }
            let orders = measured_orders(&rows);
            assert_eq!(orders.len(), 3);
            assert!(orders.iter().all(|o| *o > 0.5));
        }
        assert!(limit_q_to_1(&int(1), 2, &[1.5]).is_err());
    }

    #[test]
    fn gegenbauer_coefficient_limit() {
        for gamma in [rat(1, 2), int(1), rat(3, 2), int(2)] {
            for n in 0..=6 {
                assert!(gegenbauer_limit_deviation(n, &gamma, 1.0 - 1e-4) < 1e-3);
            }
        }
    }

    #[test]
    fn beta_limit_first_degree_is_exact() {
        let c = QContext::new(rat(1, 2), int(0)).unwrap();
        for delta in [1e-2, 1e-6, 0.3] {
            assert_eq!(limit_beta_to_1(1, &c, delta).unwrap(), 0.0);
        }
        assert!(limit_beta_to_1(0, &c, 1e-6).is_err());
        assert!(limit_beta_to_1(2, &c, -1.0).is_err());
    }

    #[test]
    fn beta_limit_is_linear_in_delta() {
        // q = 1/4 and q = 49/100 (the rational square closest to 1/2)
        for s in [rat(1, 2), rat(7, 10)] {
            let c = QContext::new(s, int(0)).unwrap();
            let d = 1e-6;
            let e1 = limit_beta_to_1(4, &c, d).unwrap();
            assert!(e1 < 1e-4);
            let e2 = limit_beta_to_1(4, &c, d / 2.0).unwrap();
            let ratio = e1 / e2;
            assert!((1.5..=2.5).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn weight_identity() {
        assert!(weight_identity_2_10(&int(1), 0.0).unwrap() < 1e-8);
        assert!(weight_identity_2_10(&int(1), 0.5).unwrap() < 1e-6);
        for x in [-0.8, -0.3, 0.2, 0.7] {
            assert!(weight_identity_2_10(&rat(1, 2), x).unwrap() < 1e-6);
            assert!(weight_identity_2_10(&rat(3, 2), x).unwrap() < 1e-6);
        }
        assert!(weight_identity_2_10(&int(1), 1.0).is_err());
        assert!(weight_identity_2_10(&rat(-1, 2), 0.1).is_err());
    }

    #[test]
    fn float_coefficients_match_exact() {
        let c = QContext::new(rat(1, 3), rat(1, 2)).unwrap();
        let exact = ultraspherical(5, &c);
        let approx = ultraspherical_coeffs_f64(5, c.q_f64(), c.beta_f64());
        for (k, a) in approx.iter().enumerate() {
            let b = to_f64(&exact.coeff(5 - 2 * k as i64));
            assert!((a - b).abs() <= 1e-14 * b.abs());
        }
    }
}
