//! Floating-point side: truncated infinite q-products, the orthogonality
//! weight, quadrature, weighted Sturm–Liouville residuals and limit studies.

mod limits;
mod quadrature;
mod weight;

pub use limits::{
    gegenbauer_limit_deviation, limit_beta_to_1, limit_q_to_1, measured_orders,
    ultraspherical_coeffs_f64, weight_identity_2_10, LimitRow,
};
pub use quadrature::{inner_product, norm_inverse, QuadratureGrid};
pub use weight::{
    askey_wilson_numeric, sl_selfadjoint_residual, sturm_liouville_residual, weight_recurrence_residual,
    weight_shift_check, weight_tilde, weight_z, WeightShiftResiduals,
};

pub use num_complex::Complex64 as ComplexVal;

/// Fixed θ nodes `0.1, 0.2, …, 1.7` used by residual checks.
pub fn theta_grid() -> Vec<f64> {
    (1..=17).map(|k| k as f64 / 10.0).collect()
}

/// Magnitude below which `1 − a qᵏ` counts as a zero of the product.
pub const ZERO_GUARD: f64 = 1e-13;

/// Truncation rule for `(a; q)_∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductTruncation {
    pub epsilon: f64,
}

impl Default for ProductTruncation {
    fn default() -> Self {
        Self { epsilon: 1e-14 }
    }
}

impl ProductTruncation {
    pub fn new(epsilon: f64) -> Self {
        Self { epsilon }
    }

    /// Smallest `K` with `|a| q^K / (1 − q) < ε`.
    pub fn terms(&self, a_abs: f64, q: f64) -> usize {
        if a_abs == 0.0 {
            return 0;
        }
        let mut k = 0usize;
        let mut tail = a_abs / (1.0 - q);
        while tail >= self.epsilon && k < 100_000 {
            tail *= q;
            k += 1;
        }
        k
    }
}

/// `∏_{k<K} (1 − a qᵏ)` with `K` from the truncation rule.
pub fn qpoch_inf(a: ComplexVal, q: f64, trunc: &ProductTruncation) -> ComplexVal {
    let k_max = trunc.terms(a.norm(), q);
    let mut acc = ComplexVal::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..k_max {
        acc *= ComplexVal::new(1.0, 0.0) - aq;
        aq *= q;
    }
    acc
}

/// Smallest `|1 − a qᵏ|` over the factors the truncated product uses.
pub(crate) fn min_factor(a: ComplexVal, q: f64, trunc: &ProductTruncation) -> f64 {
    let k_max = trunc.terms(a.norm(), q);
    let mut aq = a;
    let mut min = f64::INFINITY;
    for _ in 0..k_max {
        min = min.min((ComplexVal::new(1.0, 0.0) - aq).norm());
        aq *= q;
    }
    min
}

/// Real `(a; q)_∞`.
pub fn qpoch_inf_real(a: f64, q: f64, trunc: &ProductTruncation) -> f64 {
    qpoch_inf(ComplexVal::new(a, 0.0), q, trunc).re
}

/// Real finite `(a; q)_k`.
pub fn qpoch_f64(a: f64, q: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    let mut aq = a;
    for _ in 0..k {
        acc *= 1.0 - aq;
        aq *= q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_for_zero_argument() {
        let t = ProductTruncation::default();
        assert_eq!(qpoch_inf(ComplexVal::new(0.0, 0.0), 0.5, &t), ComplexVal::new(1.0, 0.0));
    }

    #[test]
    fn euler_function_at_one_half() {
        let t = ProductTruncation::default();
        let v = qpoch_inf_real(0.5, 0.5, &t);
        assert!(t.terms(0.5, 0.5) >= 45);
        let direct: f64 = (0..200).map(|k| 1.0 - 0.5f64.powi(k + 1)).product();
        assert!((v - direct).abs() < 1e-13);
        assert!((v - 0.288_788_095_1).abs() < 1e-9);
    }

    #[test]
    fn functional_equation() {
        let t = ProductTruncation::default();
        let q = 0.3;
        for (re, im) in [(0.2, 0.1), (-0.7, 0.4), (0.9, -0.3), (1.5, 0.0)] {
            let a = ComplexVal::new(re, im);
            let lhs = qpoch_inf(a, q, &t);
            let rhs = (ComplexVal::new(1.0, 0.0) - a) * qpoch_inf(a * q, q, &t);
            assert!((lhs - rhs).norm() <= 10.0 * t.epsilon * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn theta_grid_is_fixed() {
        let g = theta_grid();
        assert_eq!(g.len(), 17);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[16], 1.7);
    }
}
