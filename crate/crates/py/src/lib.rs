//! Python bindings. Rationals cross the boundary as `"p/q"` strings.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use qfactor_core::exact::{fmt_rational, parse_rational, BigRational, LaurentPoly};
use qfactor_core::families::{self, ChebyshevKind};
use qfactor_core::numerics::{self, ProductTruncation, QuadratureGrid};
use qfactor_core::operators::{self, QOperator};
use qfactor_core::verify::{self, SuiteConfig};
use qfactor_core::{qkernel, Error, QContext};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonZeroRemainder { .. } | Error::ZeroDivisor | Error::NonInvertibleSeries | Error::IllConditioned => {
            PyArithmeticError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rational(text: &str) -> PyResult<BigRational> {
    parse_rational(text).ok_or_else(|| PyValueError::new_err(format!("not a rational: {text:?}")))
}

/// Parameters `s = q^(1/2)`, `β` and optionally `γ`.
#[pyclass(name = "Context", frozen, from_py_object)]
#[derive(Clone)]
struct PyContext {
    inner: QContext,
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (s, beta, gamma = None))]
    fn new(s: &str, beta: &str, gamma: Option<&str>) -> PyResult<Self> {
        let s = rational(s)?;
        let beta = rational(beta)?;
        let ctx = if s < BigRational::from_integer(1.into()) {
            QContext::new(s, beta)
        } else {
            QContext::formal(s, beta)
        }
        .map_err(to_py)?;
        let inner = match gamma {
            Some(g) => ctx.with_gamma(rational(g)?),
            None => ctx,
        };
        Ok(Self { inner })
    }

    #[getter]
    fn s(&self) -> String {
        fmt_rational(self.inner.s())
    }

    #[getter]
    fn q(&self) -> String {
        fmt_rational(self.inner.q())
    }

    #[getter]
    fn beta(&self) -> String {
        fmt_rational(self.inner.beta())
    }

    #[getter]
    fn is_formal(&self) -> bool {
        self.inner.is_formal()
    }

    fn __repr__(&self) -> String {
        format!("Context({})", self.inner)
    }
}

/// Laurent polynomial in `z = e^{iθ}` with exact rational coefficients.
#[pyclass(name = "Poly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: LaurentPoly,
}

impl From<LaurentPoly> for PyPoly {
    fn from(inner: LaurentPoly) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyPoly {
    /// Builds from `{exponent: "p/q"}`.
    #[new]
    fn new(terms: std::collections::BTreeMap<i64, String>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(k, c)| Ok((k, rational(&c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(LaurentPoly::from_terms(terms).into())
    }

    /// `{exponent: "p/q"}` for the non-zero terms.
    fn coefficients(&self) -> std::collections::BTreeMap<i64, String> {
        self.inner.terms().map(|(k, c)| (k, fmt_rational(c))).collect()
    }

    /// Ascending coefficients in powers of `x = cos θ`.
    fn x_coefficients(&self) -> PyResult<Vec<String>> {
        let coeffs = families::to_x_basis(&self.inner).map_err(to_py)?;
        Ok(coeffs.iter().map(fmt_rational).collect())
    }

    fn eval_theta(&self, theta: f64) -> f64 {
        self.inner.eval_theta(theta)
    }

    #[getter]
    fn degree(&self) -> Option<i64> {
        self.inner.max_deg()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(self.inner.scale(&rational(c)?).into())
    }

    fn __add__(&self, other: &Self) -> Self {
        (&self.inner + &other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        (&self.inner - &other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        (&self.inner * &other.inner).into()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }
}

#[pyfunction]
fn ultraspherical(n: u32, ctx: &PyContext) -> PyPoly {
    families::ultraspherical(n, &ctx.inner).into()
}

#[pyfunction]
fn q_hermite(n: u32, ctx: &PyContext) -> PyPoly {
    families::q_hermite(n, &ctx.inner).into()
}

#[pyfunction]
fn gegenbauer(n: u32, gamma: &str) -> PyResult<PyPoly> {
    Ok(families::gegenbauer(n, &rational(gamma)?).into())
}

#[pyfunction]
#[pyo3(signature = (n, kind = "T"))]
fn chebyshev(n: u32, kind: &str) -> PyResult<PyPoly> {
    let kind = match kind {
        "T" | "t" => ChebyshevKind::T,
        "U" | "u" => ChebyshevKind::U,
        other => return Err(PyValueError::new_err(format!("unknown Chebyshev kind {other:?}"))),
    };
    Ok(families::chebyshev(kind, n).into())
}

#[pyfunction]
fn mu_n(ctx: &PyContext, n: u32) -> String {
    fmt_rational(qkernel::mu_n(&ctx.inner, n).value())
}

#[pyfunction]
fn lambda_n(ctx: &PyContext, n: u32) -> String {
    fmt_rational(qkernel::lambda_n(&ctx.inner, n).value())
}

#[pyfunction]
fn weightfree_eigenvalue(ctx: &PyContext, n: u32) -> String {
    fmt_rational(qkernel::weightfree_eigenvalue(&ctx.inner, n).value())
}

fn named_operator(name: &str, ctx: &QContext) -> PyResult<QOperator> {
    Ok(match name {
        "dx-beta-q" => operators::dx_beta_q(ctx),
        "dx-q" => operators::dx_q(ctx),
        "dx-q-inverse" => operators::dx_q_inverse(ctx),
        "askey-wilson" => operators::askey_wilson(ctx),
        "averaging" => operators::averaging(ctx),
        "averaging-decomposition" => operators::averaging_decomposition(ctx),
        "weightfree" => operators::weightfree_sl(ctx),
        "weightfree-expanded" => operators::weightfree_sl_expanded(ctx),
        "weightfree-commuted" => operators::weightfree_sl_commuted(ctx),
        "factorized-square" => operators::factorized_square(ctx),
        "factorized-product" => operators::factorized_product(ctx),
        "hermite-weightfree" => operators::hermite_weightfree(ctx),
        "shift-sum" => operators::shift_sum(ctx),
        other => return Err(PyValueError::new_err(format!("unknown operator {other:?}"))),
    })
}

/// Applies a named operator; raises `ArithmeticError` if the image is not
/// a Laurent polynomial.
#[pyfunction]
fn apply_operator(name: &str, ctx: &PyContext, poly: &PyPoly) -> PyResult<PyPoly> {
    let op = named_operator(name, &ctx.inner)?;
    Ok(op.apply_poly(&poly.inner).map_err(to_py)?.into())
}

/// Decides equality of two named operators on polynomials of degree ≤ `cap`.
#[pyfunction]
#[pyo3(signature = (a, b, ctx, cap = 20))]
fn operators_equal(a: &str, b: &str, ctx: &PyContext, cap: u32) -> PyResult<bool> {
    let a = named_operator(a, &ctx.inner)?;
    let b = named_operator(b, &ctx.inner)?;
    operators::operator_equal(&a, &b, cap).map_err(to_py)
}

#[pyfunction]
fn generating_function(ctx: &PyContext, order: usize) -> PyResult<Vec<PyPoly>> {
    let g = families::gf_series(&ctx.inner, order).map_err(to_py)?;
    Ok((0..=order).map(|n| g.coeff(n).clone().into()).collect())
}

#[pyfunction]
#[pyo3(signature = (m, n, ctx, nodes = 512, epsilon = 1e-14))]
fn inner_product(m: u32, n: u32, ctx: &PyContext, nodes: usize, epsilon: f64) -> PyResult<f64> {
    numerics::inner_product(m, n, &ctx.inner, &QuadratureGrid::new(nodes), &ProductTruncation::new(epsilon))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, ctx, epsilon = 1e-14))]
fn norm_inverse(n: u32, ctx: &PyContext, epsilon: f64) -> PyResult<f64> {
    numerics::norm_inverse(n, &ctx.inner, &ProductTruncation::new(epsilon)).map_err(to_py)
}

/// `(check_id, anchor)` for every catalog entry.
#[pyfunction]
fn catalog() -> Vec<(String, String)> {
    verify::catalog()
        .iter()
        .map(|e| (e.check_id.to_string(), e.anchor.to_string()))
        .collect()
}

/// Runs catalog checks and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (filter = "*", n_max = 20, contexts = None, mutate_beta = None))]
fn run_suite(
    py: Python<'_>,
    filter: &str,
    n_max: u32,
    contexts: Option<Vec<PyContext>>,
    mutate_beta: Option<&str>,
) -> PyResult<String> {
    let mut config = SuiteConfig {
        n_max,
        mutate_beta: mutate_beta.map(rational).transpose()?,
        ..SuiteConfig::default()
    };
    if let Some(cs) = contexts {
        config.grid = cs.into_iter().map(|c| c.inner).collect();
    }
    let filter = filter.to_string();
    let report = py.detach(move || verify::run_suite(&filter, &config)).map_err(to_py)?;
    report.to_json().map_err(|e| to_py(e.into()))
}

#[pymodule]
fn qfactor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyContext>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(ultraspherical, m)?)?;
    m.add_function(wrap_pyfunction!(q_hermite, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev, m)?)?;
    m.add_function(wrap_pyfunction!(mu_n, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_n, m)?)?;
    m.add_function(wrap_pyfunction!(weightfree_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(apply_operator, m)?)?;
    m.add_function(wrap_pyfunction!(operators_equal, m)?)?;
    m.add_function(wrap_pyfunction!(generating_function, m)?)?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(norm_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_names_resolve() {
        let ctx = QContext::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(0.into())).unwrap();
        for name in ["dx-beta-q", "dx-q", "askey-wilson", "weightfree", "shift-sum"] {
            assert!(named_operator(name, &ctx).is_ok());
        }
    }
}
