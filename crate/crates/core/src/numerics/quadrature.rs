use std::f64::consts::PI;

use super::{qpoch_f64, qpoch_inf, qpoch_inf_real, ComplexVal, ProductTruncation};
use crate::error::{Error, Result};
use crate::families::ultraspherical;
use crate::qkernel::QContext;

/// Composite midpoint trapezoid on `[0, π]`: `θ_j = π(j + ½)/N`, weights `π/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weight: f64,
}

impl QuadratureGrid {
    pub fn new(n: usize) -> Self {
        let nf = n as f64;
        Self {
            nodes: (0..n).map(|j| PI * (j as f64 + 0.5) / nf).collect(),
            weight: PI / nf,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(512)
    }
}

/// `w̃(cos θ) · sin θ = |(e^{2iθ}; q)_∞|² / |(βe^{2iθ}; q)_∞|²`, smooth and
/// π-periodic in θ.
fn weight_times_sin(theta: f64, beta: f64, q: f64, trunc: &ProductTruncation) -> f64 {
    let e = ComplexVal::from_polar(1.0, 2.0 * theta);
    qpoch_inf(e, q, trunc).norm_sqr() / qpoch_inf(e * beta, q, trunc).norm_sqr()
}

/// `(1/2π) ∫_{−1}^{1} C_m C_n w̃ dx`, computed as
/// `(1/2π) ∫_0^π C_m C_n (w̃ sin θ) dθ` on the grid.
pub fn inner_product(
    m: u32,
    n: u32,
    ctx: &QContext,
    grid: &QuadratureGrid,
    trunc: &ProductTruncation,
) -> Result<f64> {
    if !ctx.is_orthogonality_regime() {
        return Err(Error::InvalidParameter(format!(
            "orthogonality needs 0 < q < 1 and |β| < 1, got {ctx}"
        )));
    }
    let (beta, q) = (ctx.beta_f64(), ctx.q_f64());
    let cm = ultraspherical(m, ctx);
    let cn = ultraspherical(n, ctx);
    let sum: f64 = grid
        .nodes()
        .iter()
        .map(|&t| cm.eval_theta(t) * cn.eval_theta(t) * weight_times_sin(t, beta, q, trunc))
        .sum();
    Ok(sum * grid.weight() / (2.0 * PI))
}

/// Closed-form `d_n⁻¹` with
/// `d_n = (1 − βqⁿ)/(1 − β) · (q;q)_n/(β²;q)_n · (β², q; q)_∞/(β, βq; q)_∞`.
pub fn norm_inverse(n: u32, ctx: &QContext, trunc: &ProductTruncation) -> Result<f64> {
    if !ctx.is_orthogonality_regime() {
        return Err(Error::InvalidParameter(format!(
            "norms need 0 < q < 1 and |β| < 1, got {ctx}"
        )));
    }
    let (beta, q) = (ctx.beta_f64(), ctx.q_f64());
    let b2 = beta * beta;
    let finite = (1.0 - beta * q.powi(n as i32)) / (1.0 - beta) * qpoch_f64(q, q, n) / qpoch_f64(b2, q, n);
    let infinite = qpoch_inf_real(b2, q, trunc) * qpoch_inf_real(q, q, trunc)
        / (qpoch_inf_real(beta, q, trunc) * qpoch_inf_real(beta * q, q, trunc));
    Ok(1.0 / (finite * infinite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ctx(beta: (i64, i64)) -> QContext {
        QContext::new(rat(1, 2), rat(beta.0, beta.1)).unwrap()
    }

    #[test]
    fn grid_layout() {
        let g = QuadratureGrid::new(4);
        assert_eq!(g.len(), 4);
        assert!((g.nodes()[0] - PI / 8.0).abs() < 1e-15);
        assert!((g.weight() - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn off_diagonal_vanishes() {
        let (g, t) = (QuadratureGrid::default(), ProductTruncation::default());
        let c = ctx((1, 2));
        assert!(inner_product(1, 2, &c, &g, &t).unwrap().abs() < 1e-10);
    }

    #[test]
    fn zeroth_norm() {
        let (g, t) = (QuadratureGrid::default(), ProductTruncation::default());
        let c = ctx((1, 2));
        let (b, q) = (0.5, 0.25);
        let d0_inv = qpoch_inf_real(b, q, &t) * qpoch_inf_real(b * q, q, &t)
            / (qpoch_inf_real(b * b, q, &t) * qpoch_inf_real(q, q, &t));
        let v = inner_product(0, 0, &c, &g, &t).unwrap();
        assert!((v - d0_inv).abs() / d0_inv < 1e-9);
        assert!((norm_inverse(0, &c, &t).unwrap() - d0_inv).abs() / d0_inv < 1e-14);
    }

    #[test]
    fn diagonal_norms_and_symmetry() {
        let (g, t) = (QuadratureGrid::default(), ProductTruncation::default());
        let c = ctx((1, 2));
        for n in 0..=8 {
            let v = inner_product(n, n, &c, &g, &t).unwrap();
            let d = norm_inverse(n, &c, &t).unwrap();
            assert!((v - d).abs() / d < 1e-9, "n={n}: {v} vs {d}");
        }
        for m in 0..5 {
            for n in 0..5 {
                let a = inner_product(m, n, &c, &g, &t).unwrap();
                let b = inner_product(n, m, &c, &g, &t).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn doubling_nodes_is_converged() {
        let t = ProductTruncation::default();
        let c = ctx((-1, 3));
        for n in 0..6 {
            let a = inner_product(n, n, &c, &QuadratureGrid::new(512), &t).unwrap();
            let b = inner_product(n, n, &c, &QuadratureGrid::new(1024), &t).unwrap();
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn outside_orthogonality_regime_rejected() {
        let (g, t) = (QuadratureGrid::default(), ProductTruncation::default());
        let c = QContext::new(rat(1, 2), int(2)).unwrap();
        assert!(inner_product(0, 0, &c, &g, &t).is_err());
        assert!(norm_inverse(0, &c, &t).is_err());
    }
}
