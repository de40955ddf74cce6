use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::report::{Mode, Outcome, Param};
use super::SuiteConfig;
use crate::error::{Error, Result};
use crate::exact::{int, rat, rpow, LaurentPoly};
use crate::families::{
    chebyshev, gegenbauer, gegenbauer_ode_image, gf_series, gf_series_scaled, q_hermite, to_x_basis,
    ultraspherical, ChebyshevKind,
};
use crate::numerics::{
    gegenbauer_limit_deviation, inner_product, limit_beta_to_1, limit_q_to_1, measured_orders, norm_inverse,
    sl_selfadjoint_residual, sturm_liouville_residual, theta_grid, weight_identity_2_10,
    weight_recurrence_residual, weight_shift_check, QuadratureGrid,
};
use crate::operators::{
    dx_beta_q, dx_q, dx_q_inverse, first_disagreement, hermite_weightfree, shift_commutation, shift_sum,
    weightfree_sl, weightfree_sl_commuted, weightfree_sl_expanded, QOperator,
};
use crate::qkernel::{eigenvalue_identity, lambda_n, mu_n, q_pochhammer, weightfree_eigenvalue, QContext};

pub(crate) type Runner = Box<dyn Fn() -> Outcome + Send + Sync>;

pub(crate) struct PlannedCase {
    pub check_id: &'static str,
    pub params: Vec<(&'static str, Param)>,
    pub run: Runner,
}

/// One registered identity.
pub struct CatalogEntry {
    pub check_id: &'static str,
    pub anchor: &'static str,
    pub mode: Mode,
    plan: fn(&Arc<SuiteConfig>) -> Vec<PlannedCase>,
}

impl CatalogEntry {
    pub(crate) fn plan(&self, config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
        (self.plan)(config)
    }
}

pub const CATALOG_VERSION: &str = "1";

const LIMIT_N_MAX: u32 = 6;
const LIMIT_HS: [f64; 4] = [1e-1, 5e-2, 2.5e-2, 1.25e-2];
const GEGENBAUER_Q: f64 = 1.0 - 1e-4;
const BETA_DELTA: f64 = 1e-6;

const TOL_WEIGHT_SHIFT: f64 = 1e-9;
const TOL_WEIGHT_RECURRENCE: f64 = 1e-10;
const TOL_STURM_LIOUVILLE: f64 = 1e-8;
const TOL_OFF_DIAGONAL: f64 = 1e-10;
const TOL_DIAGONAL: f64 = 1e-9;
const TOL_DERIVATIVE: f64 = 1e-6;
const TOL_GEGENBAUER_LIMIT: f64 = 1e-3;
const TOL_BETA_LIMIT: f64 = 1e-4;

pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

static CATALOG: [CatalogEntry; 28] = [
    entry("eigenvalue-identity", "mu_n^2 - (1+beta)^2 = (q^-n - 1)(1 - beta^2 q^n)", Mode::Exact, plan_eigenvalue_identity),
    entry("eq1.5", "D_q[w(x|q) D_q H_n] = 4q(1 - q^-n)/(1-q)^2 H_n w(x|q)", Mode::Numeric, plan_eq1_5),
    entry("eq1.7", "w(x|q) under the half-step shifts: factor -e^(+-2i theta)/sqrt(q)", Mode::Numeric, plan_eq1_7),
    entry("eq1.8", "weight-free q-Hermite equation with eigenvalue q^-n - 1", Mode::Exact, plan_eq1_8),
    entry("eq1.9", "(D_x^q)^2 H_n = q^-n H_n", Mode::Exact, plan_eq1_9),
    entry("eq1.11", "D_x^q H_n = q^(-n/2) H_n", Mode::Exact, plan_eq1_11),
    entry("eq2.2", "<C_m, C_n> = delta_mn / d_n under the weight w(x;beta|q)", Mode::Numeric, plan_eq2_2),
    entry("eq2.4", "D_q[w(x;beta q|q) D_q C_n] = lambda_n(beta) C_n w(x;beta|q)", Mode::Numeric, plan_eq2_4),
    entry("eq2.6", "w(x;beta q|q) = [(1+beta)^2 - 4 beta x^2] w(x;beta|q)", Mode::Numeric, plan_eq2_6),
    entry("eq2.9", "Gegenbauer differential equation for C_n^(gamma)", Mode::Exact, plan_eq2_9),
    entry("eq2.10", "d/dx[(1-x^2) w] = -(2 gamma + 1) x w with w = (1-x^2)^(gamma - 1/2)", Mode::Numeric, plan_eq2_10),
    entry("eq3.1", "w(x;beta q|q) under the half-step shifts", Mode::Numeric, plan_eq3_1),
    entry("eq3.2", "weight-free second-order equation, eigenvalue 2(q^-n - 1)(1 - beta^2 q^n)", Mode::Exact, plan_eq3_2),
    entry("eq3.4", "commutation of shift coefficients through the half-step shifts", Mode::Exact, plan_eq3_4),
    entry("eq3.5-operator", "weight-free operator equals its expanded and commuted shift forms", Mode::Exact, plan_eq3_5),
    entry("eq3.6", "D_x^(beta,q) = D_x^q + beta D_x^(1/q)", Mode::Exact, plan_eq3_6),
    entry("eq3.7", "L = 2[(D_x^(beta,q))^2 - (1+beta)^2] and (D_x^(beta,q))^2 C_n = mu_n^2 C_n", Mode::Exact, plan_eq3_7),
    entry("eq3.9", "D_x^(beta,q) C_n = (q^(-n/2) + beta q^(n/2)) C_n", Mode::Exact, plan_eq3_9),
    entry("eq3.10", "D_x^(beta,q) = (1+beta) A_q + (1-q)/(2 sqrt q) (1-beta) x D_q", Mode::Exact, plan_eq3_10),
    entry("eq3.12", "generating function coefficients equal C_n", Mode::Exact, plan_eq3_12),
    entry("eq3.13", "termwise D_x^(beta,q) on the generating function multiplies t^n by mu_n", Mode::Exact, plan_eq3_13),
    entry("eq3.14", "C_n(x;beta|1/q) = (beta q)^n C_n(x;1/beta|q) and D^(beta,q) = beta D^(1/beta,1/q)", Mode::Exact, plan_eq3_14),
    entry("hermite-reduction", "(q;q)_n C_n(x;0|q) = H_n(x|q)", Mode::Exact, plan_hermite_reduction),
    entry("sec2.gegenbauer-limit", "C_n(x;q^gamma|q) -> C_n^(gamma)(x) as q -> 1", Mode::Numeric, plan_gegenbauer_limit),
    entry("sec3.limit-q1", "[(1+q^gamma) - D_x^(q^gamma,q)]/(ln q)^2 -> Gegenbauer operator / 4 as q -> 1", Mode::Numeric, plan_limit_q1),
    entry("sec4.eq4.1", "(shift_+ + shift_-) T_n = (q^(n/2) + q^(-n/2)) T_n", Mode::Exact, plan_eq4_1),
    entry("sec4.limit-beta1", "(1-q^n)/(2(1-beta)) C_n(x;beta|q) -> T_n(x) as beta -> 1", Mode::Numeric, plan_limit_beta1),
    entry("sec4.limit-beta1-exact-n1", "(1-q)/(2(1-beta)) C_1(x;beta|q) = T_1(x) for every beta", Mode::Exact, plan_limit_beta1_n1),
];

const fn entry(
    check_id: &'static str,
    anchor: &'static str,
    mode: Mode,
    plan: fn(&Arc<SuiteConfig>) -> Vec<PlannedCase>,
) -> CatalogEntry {
    CatalogEntry {
        check_id,
        anchor,
        mode,
        plan,
    }
}

fn case<F>(check_id: &'static str, params: Vec<(&'static str, Param)>, run: F) -> PlannedCase
where
    F: Fn() -> Outcome + Send + Sync + 'static,
{
    PlannedCase {
        check_id,
        params,
        run: Box::new(run),
    }
}

fn ctx_params(ctx: &QContext) -> Vec<(&'static str, Param)> {
    vec![("s", Param::from(ctx.s())), ("beta", Param::from(ctx.beta()))]
}

fn with(mut params: Vec<(&'static str, Param)>, key: &'static str, value: impl Into<Param>) -> Vec<(&'static str, Param)> {
    params.push((key, value.into()));
    params
}

fn outcome_from_error(e: Error) -> Outcome {
    match e {
        Error::NonZeroRemainder { remainder } => {
            Outcome::fail("non-zero remainder").with_remainder_degree(remainder.max_deg())
        }
        Error::IllConditioned => Outcome::skipped("ill-conditioned evaluation"),
        other => Outcome::fail(other.to_string()),
    }
}

/// Exact comparison `image == expected`; a mismatch reports the degree of
/// the difference.
fn compare(image: Result<LaurentPoly>, expected: &LaurentPoly) -> Outcome {
    match image {
        Ok(img) => {
            let diff = &img - expected;
            if diff.is_zero() {
                Outcome::pass()
            } else {
                Outcome::fail("exact images differ").with_remainder_degree(diff.max_deg())
            }
        }
        Err(e) => outcome_from_error(e),
    }
}

fn eigen(op: &QOperator, p: &LaurentPoly, eigenvalue: &BigRational) -> Outcome {
    compare(op.apply_poly(p), &p.scale(eigenvalue))
}

fn operator_match(a: &QOperator, b: &QOperator, cap: u32) -> Outcome {
    match first_disagreement(a, b, cap) {
        Ok(None) => Outcome::pass(),
        Ok(Some(k)) => Outcome::fail(format!("operators differ on basis element {k}")),
        Err(e) => outcome_from_error(e),
    }
}

fn bool_outcome(ok: bool, note: &str) -> Outcome {
    if ok {
        Outcome::pass()
    } else {
        Outcome::fail(note)
    }
}

/// Largest residual over the fixed θ grid. Ill-conditioned nodes are
/// dropped and counted; a grid with no usable node is skipped.
fn theta_max<F>(f: F, tolerance: f64) -> Outcome
where
    F: Fn(f64) -> Result<f64>,
{
    let mut worst = 0.0f64;
    let mut dropped = 0usize;
    let grid = theta_grid();
    for theta in &grid {
        match f(*theta) {
            Ok(r) => worst = if r.is_nan() { f64::NAN } else { worst.max(r) },
            Err(Error::IllConditioned) => dropped += 1,
            Err(e) => return Outcome::fail(e.to_string()),
        }
    }
    if dropped == grid.len() {
        return Outcome::skipped("every node ill-conditioned");
    }
    let out = Outcome::numeric(worst, tolerance);
    if dropped > 0 {
        out.with_note(format!("{dropped} ill-conditioned nodes dropped"))
    } else {
        out
    }
}

fn per_ctx_n<F>(
    config: &Arc<SuiteConfig>,
    contexts: Vec<QContext>,
    check_id: &'static str,
    n_max: u32,
    f: F,
) -> Vec<PlannedCase>
where
    F: Fn(&SuiteConfig, &QContext, u32) -> Outcome + Send + Sync + Copy + 'static,
{
    let mut out = Vec::new();
    for ctx in contexts {
        for n in 0..=n_max {
            let (cfg, c) = (Arc::clone(config), ctx.clone());
            out.push(case(check_id, with(ctx_params(&ctx), "n", n), move || f(&cfg, &c, n)));
        }
    }
    out
}

fn per_ctx<F>(config: &Arc<SuiteConfig>, contexts: Vec<QContext>, check_id: &'static str, f: F) -> Vec<PlannedCase>
where
    F: Fn(&SuiteConfig, &QContext) -> Outcome + Send + Sync + Copy + 'static,
{
    contexts
        .into_iter()
        .map(|ctx| {
            let cfg = Arc::clone(config);
            let params = ctx_params(&ctx);
            case(check_id, params, move || f(&cfg, &ctx))
        })
        .collect()
}

fn per_gamma<F>(config: &Arc<SuiteConfig>, check_id: &'static str, f: F) -> Vec<PlannedCase>
where
    F: Fn(&SuiteConfig, &BigRational) -> Outcome + Send + Sync + Copy + 'static,
{
    config
        .gammas
        .iter()
        .map(|g| {
            let (cfg, g2) = (Arc::clone(config), g.clone());
            case(check_id, vec![("gamma", Param::from(g))], move || f(&cfg, &g2))
        })
        .collect()
}

fn plan_eigenvalue_identity(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eigenvalue-identity", |cfg, ctx| {
        let bound = cfg.n_max.max(30);
        match (0..=bound).find(|&n| !eigenvalue_identity(ctx, n)) {
            None => Outcome::pass(),
            Some(n) => Outcome::fail(format!("identity fails at n = {n}")),
        }
    })
}

fn plan_eq1_5(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.hermite_contexts(), "eq1.5", config.numeric_n_max, |cfg, ctx, n| {
        let p = q_hermite(n, ctx);
        let lambda = crate::exact::to_f64(lambda_n(ctx, n).value());
        let trunc = cfg.truncation();
        theta_max(|t| sturm_liouville_residual(&p, lambda, ctx, t, &trunc), TOL_STURM_LIOUVILLE)
    })
}

fn plan_eq1_7(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.hermite_contexts(), "eq1.7", |cfg, ctx| {
        let trunc = cfg.truncation();
        theta_max(|t| weight_shift_check(ctx, t, &trunc).map(|r| r.max()), TOL_WEIGHT_SHIFT)
    })
}

fn plan_eq1_8(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.hermite_contexts(), "eq1.8", config.n_max, |_, ctx, n| {
        let e = rpow(ctx.q(), -i64::from(n)) - BigRational::one();
        eigen(&hermite_weightfree(ctx), &q_hermite(n, ctx), &e)
    })
}

fn plan_eq1_9(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.hermite_contexts(), "eq1.9", config.n_max, |_, ctx, n| {
        let p = q_hermite(n, ctx);
        compare(dx_q(ctx).apply_twice(&p), &p.scale(&rpow(ctx.q(), -i64::from(n))))
    })
}

fn plan_eq1_11(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.hermite_contexts(), "eq1.11", config.n_max, |_, ctx, n| {
        eigen(&dx_q(ctx), &q_hermite(n, ctx), &rpow(ctx.s(), -i64::from(n)))
    })
}

fn plan_eq2_2(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for ctx in config.orthogonality_contexts() {
        for m in 0..=config.numeric_n_max {
            for n in m..=config.numeric_n_max {
                let (cfg, c) = (Arc::clone(config), ctx.clone());
                let params = with(with(ctx_params(&ctx), "m", m), "n", n);
                out.push(case("eq2.2", params, move || {
                    let trunc = cfg.truncation();
                    let grid = QuadratureGrid::new(cfg.nodes);
                    let value = match inner_product(m, n, &c, &grid, &trunc) {
                        Ok(v) => v,
                        Err(e) => return outcome_from_error(e),
                    };
                    if m != n {
                        return Outcome::numeric(value.abs(), TOL_OFF_DIAGONAL);
                    }
                    match norm_inverse(n, &c, &trunc) {
                        Ok(d) => Outcome::numeric((value - d).abs() / d.abs(), TOL_DIAGONAL),
                        Err(e) => outcome_from_error(e),
                    }
                }));
            }
        }
    }
    out
}

fn plan_eq2_4(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.orthogonality_contexts(), "eq2.4", config.numeric_n_max, |cfg, ctx, n| {
        let trunc = cfg.truncation();
        theta_max(|t| sl_selfadjoint_residual(n, ctx, t, &trunc), TOL_STURM_LIOUVILLE)
    })
}

fn plan_eq2_6(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.orthogonality_contexts(), "eq2.6", |cfg, ctx| {
        let trunc = cfg.truncation();
        theta_max(|t| weight_recurrence_residual(t, ctx, &trunc), TOL_WEIGHT_RECURRENCE)
    })
}

fn plan_eq2_9(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for gamma in &config.gammas {
        for n in 0..=config.n_max {
            let g = gamma.clone();
            let params = vec![("gamma", Param::from(gamma)), ("n", Param::from(n))];
            out.push(case("eq2.9", params, move || {
                let coeffs = match to_x_basis(&gegenbauer(n, &g)) {
                    Ok(c) => c,
                    Err(e) => return outcome_from_error(e),
                };
                let image = gegenbauer_ode_image(&coeffs, n, &g);
                if image.is_empty() {
                    Outcome::pass()
                } else {
                    Outcome::fail("differential equation not satisfied")
                        .with_remainder_degree(Some(image.len() as i64 - 1))
                }
            }));
        }
    }
    out
}

fn plan_eq2_10(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_gamma(config, "eq2.10", |_, gamma| {
        let mut worst = 0.0f64;
        for i in 0..11 {
            let x = -0.9 + 0.18 * f64::from(i);
            match weight_identity_2_10(gamma, x) {
                Ok(r) => worst = worst.max(r),
                Err(e) => return outcome_from_error(e),
            }
        }
        Outcome::numeric(worst, TOL_DERIVATIVE)
    })
}

fn plan_eq3_1(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.orthogonality_contexts(), "eq3.1", |cfg, ctx| {
        let trunc = cfg.truncation();
        theta_max(|t| weight_shift_check(ctx, t, &trunc).map(|r| r.max()), TOL_WEIGHT_SHIFT)
    })
}

fn plan_eq3_2(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.grid.clone(), "eq3.2", config.n_max, |_, ctx, n| {
        eigen(&weightfree_sl(ctx), &ultraspherical(n, ctx), weightfree_eigenvalue(ctx, n).value())
    })
}

fn plan_eq3_4(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eq3.4", |cfg, ctx| {
        let bound = i64::from(cfg.n_max);
        for k in -bound..=bound {
            match shift_commutation(ctx, k) {
                Ok(true) => {}
                Ok(false) => return Outcome::fail(format!("commutation fails on z^{k}")),
                Err(e) => return outcome_from_error(e),
            }
        }
        Outcome::pass()
    })
}

fn plan_eq3_5(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for ctx in config.grid.clone() {
        for form in ["commuted", "expanded"] {
            let (cfg, c) = (Arc::clone(config), ctx.clone());
            out.push(case("eq3.5-operator", with(ctx_params(&ctx), "form", form), move || {
                let rhs = match form {
                    "expanded" => weightfree_sl_expanded(&c),
                    _ => weightfree_sl_commuted(&c),
                };
                operator_match(&weightfree_sl(&c), &rhs, cfg.n_max)
            }));
        }
    }
    out
}

fn plan_eq3_6(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eq3.6", |cfg, ctx| {
        let split = dx_q(ctx) + dx_q_inverse(ctx).scaled(ctx.beta().clone());
        operator_match(&cfg.dx(ctx), &split, cfg.n_max)
    })
}

fn plan_eq3_7(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = per_ctx_n(config, config.grid.clone(), "eq3.7", config.n_max, |cfg, ctx, n| {
        let p = ultraspherical(n, ctx);
        let mu = mu_n(ctx, n).0;
        compare(cfg.dx(ctx).apply_twice(&p), &p.scale(&(&mu * &mu)))
    });
    for ctx in config.grid.clone() {
        let (cfg, c) = (Arc::clone(config), ctx.clone());
        out.push(case("eq3.7", with(ctx_params(&ctx), "form", "operator"), move || {
            let d = cfg.dx(&c);
            let one_b = BigRational::one() + c.beta();
            let square = (d.clone() * d - QOperator::Scalar(&one_b * &one_b)).scaled(int(2));
            operator_match(&weightfree_sl(&c), &square, cfg.n_max)
        }));
    }
    out
}

fn plan_eq3_9(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.grid.clone(), "eq3.9", config.n_max, |cfg, ctx, n| {
        eigen(&cfg.dx(ctx), &ultraspherical(n, ctx), mu_n(ctx, n).value())
    })
}

fn plan_eq3_10(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eq3.10", |cfg, ctx| {
        operator_match(&cfg.dx(ctx), &crate::operators::averaging_decomposition(ctx), cfg.n_max)
    })
}

fn plan_eq3_12(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eq3.12", |cfg, ctx| {
        let series = match gf_series(ctx, cfg.series_order) {
            Ok(s) => s,
            Err(e) => return outcome_from_error(e),
        };
        for n in 0..=cfg.series_order {
            let outcome = compare(Ok(series.coeff(n).clone()), &ultraspherical(n as u32, ctx));
            if outcome.status != super::Status::Pass {
                return outcome.with_note(format!("coefficient of t^{n} differs"));
            }
        }
        Outcome::pass()
    })
}

fn plan_eq3_13(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "eq3.13", |cfg, ctx| {
        let order = cfg.series_order;
        let series = gf_series(ctx, order).and_then(|g| {
            let d = cfg.dx(ctx);
            g.try_map(|_, c| d.apply_poly(c))
        });
        let termwise = match series {
            Ok(s) => s,
            Err(e) => return outcome_from_error(e),
        };
        let shifted = gf_series_scaled(ctx, &ctx.s().recip(), order).and_then(|a| {
            let b = gf_series_scaled(ctx, ctx.s(), order)?;
            Ok(a.add(&b.scale(ctx.beta())))
        });
        let shifted = match shifted {
            Ok(s) => s,
            Err(e) => return outcome_from_error(e),
        };
        for n in 0..=order {
            let expected = ultraspherical(n as u32, ctx).scale(mu_n(ctx, n as u32).value());
            for (label, got) in [("termwise", termwise.coeff(n)), ("shifted", shifted.coeff(n))] {
                let outcome = compare(Ok(got.clone()), &expected);
                if outcome.status != super::Status::Pass {
                    return outcome.with_note(format!("{label} coefficient of t^{n} differs"));
                }
            }
        }
        Outcome::pass()
    })
}

fn plan_eq3_14(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let contexts: Vec<QContext> = config.grid.iter().filter(|c| !c.beta().is_zero()).cloned().collect();
    let mut out = per_ctx_n(config, contexts.clone(), "eq3.14", config.n_max, |_, ctx, n| {
        let inv_beta = match ctx.invert_beta() {
            Ok(c) => c,
            Err(e) => return outcome_from_error(e),
        };
        let factor = rpow(&(ctx.beta() * ctx.q()), i64::from(n));
        compare(Ok(ultraspherical(n, &ctx.invert_q())), &ultraspherical(n, &inv_beta).scale(&factor))
    });
    for ctx in contexts {
        let (cfg, c) = (Arc::clone(config), ctx.clone());
        out.push(case("eq3.14", with(ctx_params(&ctx), "form", "operator"), move || {
            let inv = match c.invert_q().invert_beta() {
                Ok(i) => i,
                Err(e) => return outcome_from_error(e),
            };
            operator_match(&cfg.dx(&c), &dx_beta_q(&inv).scaled(c.beta().clone()), cfg.n_max)
        }));
    }
    out
}

fn plan_hermite_reduction(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx_n(config, config.hermite_contexts(), "hermite-reduction", config.n_max, |_, ctx, n| {
        let scaled = ultraspherical(n, ctx).scale(&q_pochhammer(ctx.q(), ctx.q(), n));
        compare(Ok(scaled), &q_hermite(n, ctx))
    })
}

fn plan_gegenbauer_limit(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for gamma in &config.gammas {
        for n in 0..=LIMIT_N_MAX {
            let g = gamma.clone();
            let params = vec![("gamma", Param::from(gamma)), ("n", Param::from(n))];
            out.push(case("sec2.gegenbauer-limit", params, move || {
                Outcome::numeric(gegenbauer_limit_deviation(n, &g, GEGENBAUER_Q), TOL_GEGENBAUER_LIMIT)
            }));
        }
    }
    out
}

fn plan_limit_q1(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_gamma(config, "sec3.limit-q1", |_, gamma| {
        let rows = match limit_q_to_1(gamma, 4, &LIMIT_HS) {
            Ok(r) => r,
            Err(e) => return outcome_from_error(e),
        };
        let monotone = rows.windows(2).all(|w| w[1].error < w[0].error);
        let orders: Vec<String> = measured_orders(&rows).iter().map(|o| format!("{o:.3}")).collect();
        let last = rows.last().map_or(f64::NAN, |r| r.error);
        let mut outcome = bool_outcome(monotone, "error is not monotonically decreasing");
        outcome.residual = Some(last);
        outcome.with_note(format!("orders {}", orders.join(" ")))
    })
}

fn plan_eq4_1(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for s in config.distinct_s() {
        for n in 0..=config.n_max {
            let s2 = s.clone();
            let params = vec![("s", Param::from(&s)), ("n", Param::from(n))];
            out.push(case("sec4.eq4.1", params, move || {
                let ctx = match QContext::formal(s2.clone(), int(0)) {
                    Ok(c) => c,
                    Err(e) => return outcome_from_error(e),
                };
                let e = rpow(&s2, i64::from(n)) + rpow(&s2, -i64::from(n));
                eigen(&shift_sum(&ctx), &chebyshev(ChebyshevKind::T, n), &e)
            }));
        }
    }
    out
}

fn plan_limit_beta1(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    let mut out = Vec::new();
    for s in config.distinct_s() {
        for n in 1..=LIMIT_N_MAX {
            let s2 = s.clone();
            let params = vec![("s", Param::from(&s)), ("n", Param::from(n))];
            out.push(case("sec4.limit-beta1", params, move || {
                let result = QContext::formal(s2.clone(), int(0)).and_then(|c| limit_beta_to_1(n, &c, BETA_DELTA));
                match result {
                    Ok(r) => Outcome::numeric(r, TOL_BETA_LIMIT),
                    Err(e) => outcome_from_error(e),
                }
            }));
        }
    }
    out
}

fn plan_limit_beta1_n1(config: &Arc<SuiteConfig>) -> Vec<PlannedCase> {
    per_ctx(config, config.grid.clone(), "sec4.limit-beta1-exact-n1", |_, ctx| {
        let one = BigRational::one();
        if *ctx.beta() == one {
            return Outcome::skipped("beta = 1");
        }
        let factor = (&one - ctx.q()) / (int(2) * (&one - ctx.beta()));
        compare(Ok(ultraspherical(1, ctx).scale(&factor)), &chebyshev(ChebyshevKind::T, 1))
    })
}

/// Default Gegenbauer parameters.
pub fn default_gammas() -> Vec<BigRational> {
    vec![rat(1, 2), int(1), rat(3, 2), int(2)]
}
