//! The polynomial families, built by direct summation in the `z = e^{iθ}`
//! basis, and the generating-function expansion used to cross-check them.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, LaurentPoly, TruncatedSeries};
use crate::qkernel::{q_binomial, q_pochhammer, QContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    QHermite,
    Ultraspherical,
    Gegenbauer,
    ChebyshevT,
    ChebyshevU,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::QHermite,
        Family::Ultraspherical,
        Family::Gegenbauer,
        Family::ChebyshevT,
        Family::ChebyshevU,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::QHermite => "q-hermite",
            Family::Ultraspherical => "ultraspherical",
            Family::Gegenbauer => "gegenbauer",
            Family::ChebyshevT => "chebyshev-t",
            Family::ChebyshevU => "chebyshev-u",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebyshevKind {
    T,
    U,
}

/// A family member `n` together with the parameters it needs.
#[derive(Clone, Debug)]
pub struct PolySpec {
    pub family: Family,
    pub n: u32,
    pub ctx: QContext,
}

impl PolySpec {
    pub fn new(family: Family, n: u32, ctx: QContext) -> Result<Self> {
        if family == Family::Gegenbauer && ctx.gamma().is_none() {
            return Err(Error::InvalidParameter(
                "the Gegenbauer family needs gamma".into(),
            ));
        }
        Ok(Self { family, n, ctx })
    }

    pub fn build(&self) -> LaurentPoly {
        match self.family {
            Family::QHermite => q_hermite(self.n, &self.ctx),
            Family::Ultraspherical => ultraspherical(self.n, &self.ctx),
            Family::Gegenbauer => gegenbauer(self.n, self.ctx.gamma().expect("checked in new")),
            Family::ChebyshevT => chebyshev(ChebyshevKind::T, self.n),
            Family::ChebyshevU => chebyshev(ChebyshevKind::U, self.n),
        }
    }
}

/// Sums `Σ_k coeff(k) z^{n−2k}` for `k = 0..=n`.
fn z_sum(n: u32, mut coeff: impl FnMut(u32) -> BigRational) -> LaurentPoly {
    let n_i = i64::from(n);
    LaurentPoly::from_terms((0..=n).map(|k| (n_i - 2 * i64::from(k), coeff(k))))
}

/// Continuous q-Hermite `H_n(x|q) = Σ [n k]_q z^{n−2k}`.
pub fn q_hermite(n: u32, ctx: &QContext) -> LaurentPoly {
    z_sum(n, |k| q_binomial(i64::from(n), i64::from(k), ctx.q()))
}

/// Rogers (continuous q-ultraspherical)
/// `C_n(x;β|q) = Σ (β;q)_k (β;q)_{n−k} / ((q;q)_k (q;q)_{n−k}) z^{n−2k}`.
pub fn ultraspherical(n: u32, ctx: &QContext) -> LaurentPoly {
    let q = ctx.q();
    let ratios: Vec<BigRational> = (0..=n)
        .map(|k| q_pochhammer(ctx.beta(), q, k) / q_pochhammer(q, q, k))
        .collect();
    z_sum(n, |k| &ratios[k as usize] * &ratios[(n - k) as usize])
}

fn rising(gamma: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, j| acc * (gamma + int(i64::from(j))))
}

fn factorial(k: u32) -> BigRational {
    (1..=k).fold(BigRational::one(), |acc, j| acc * int(i64::from(j)))
}

/// Gegenbauer `C_n^{(γ)}(x) = Σ (γ)_k (γ)_{n−k} / (k!(n−k)!) z^{n−2k}`.
pub fn gegenbauer(n: u32, gamma: &BigRational) -> LaurentPoly {
    let ratios: Vec<BigRational> = (0..=n).map(|k| rising(gamma, k) / factorial(k)).collect();
    z_sum(n, |k| &ratios[k as usize] * &ratios[(n - k) as usize])
}

/// `T_n = (zⁿ + z⁻ⁿ)/2` (with `T_0 = 1`) and `U_n = Σ z^{n−2k}`.
pub fn chebyshev(kind: ChebyshevKind, n: u32) -> LaurentPoly {
    match kind {
        ChebyshevKind::T if n == 0 => LaurentPoly::one(),
        ChebyshevKind::T => LaurentPoly::symmetric_basis(n).scale(&BigRational::new(1.into(), 2.into())),
        ChebyshevKind::U => z_sum(n, |_| BigRational::one()),
    }
}

/// `(c·t; q)_∞` as a series in `t`, where `c` is a Laurent polynomial.
/// Euler's expansion gives the coefficient of `t^k` as
/// `(−1)^k q^{k(k−1)/2} c^k / (q;q)_k`.
fn euler_product(c: &LaurentPoly, q: &BigRational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c_pow = LaurentPoly::one();
    let mut q_tri = BigRational::one();
    let mut qq = BigRational::one();
    for k in 0..=order {
        if k > 0 {
            c_pow = &c_pow * c;
            q_tri *= crate::exact::rpow(q, (k - 1) as i64);
            qq *= BigRational::one() - crate::exact::rpow(q, k as i64);
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        coeffs.push(c_pow.scale(&(sign * &q_tri / &qq)));
    }
    TruncatedSeries::from_coeffs(order, coeffs)
}

/// Expansion of `(βtz, βt/z; q)_∞ / (tz, t/z; q)_∞` through `t^order`.
pub fn gf_series(ctx: &QContext, order: usize) -> Result<TruncatedSeries> {
    gf_series_scaled(ctx, &BigRational::one(), order)
}

/// The generating function with `t` replaced by `scale·t`, assembled from
/// the shifted product factors rather than by rescaling the series.
pub fn gf_series_scaled(
    ctx: &QContext,
    scale: &BigRational,
    order: usize,
) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidParameter("series order must be at least 1".into()));
    }
    let q = ctx.q();
    let z = LaurentPoly::monomial(1, scale.clone());
    let zi = LaurentPoly::monomial(-1, scale.clone());
    let beta = ctx.beta();
    let num = euler_product(&z.scale(beta), q, order).mul(&euler_product(&zi.scale(beta), q, order));
    let den = euler_product(&z, q, order).mul(&euler_product(&zi, q, order));
    Ok(num.mul(&den.reciprocal()?))
}

/// Coefficients `c_k` with `f = Σ c_k x^k` under `x = (z + z⁻¹)/2`.
pub fn to_x_basis(f: &LaurentPoly) -> Result<Vec<BigRational>> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let deg = f.max_deg().unwrap_or(0).max(0) as usize;
    // f = c_0 + Σ_{k≥1} c_k (z^k + z^{-k}) = c_0 + Σ 2 c_k T_k(x)
    let mut out = vec![BigRational::zero(); deg + 1];
    let mut t_prev: Vec<BigRational> = vec![int(1)];
    let mut t_cur: Vec<BigRational> = vec![int(0), int(1)];
    out[0] = f.coeff(0);
    for k in 1..=deg {
        let weight = f.coeff(k as i64) * int(2);
        if !weight.is_zero() {
            for (slot, c) in out.iter_mut().zip(&t_cur) {
                *slot += &weight * c;
            }
        }
        // T_{k+1} = 2x T_k − T_{k−1}
        let mut next = vec![BigRational::zero(); t_cur.len() + 1];
        for (i, c) in t_cur.iter().enumerate() {
            next[i + 1] += c * int(2);
        }
        for (i, c) in t_prev.iter().enumerate() {
            next[i] -= c;
        }
        t_prev = std::mem::replace(&mut t_cur, next);
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// Inverse of [`to_x_basis`].
pub fn from_x_basis(coeffs: &[BigRational]) -> LaurentPoly {
    let x = LaurentPoly::x();
    coeffs
        .iter()
        .rev()
        .fold(LaurentPoly::zero(), |acc, c| &acc * &x + LaurentPoly::constant(c.clone()))
}

/// `p'` for a polynomial in `x` given by ascending coefficients.
pub fn x_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * int(k as i64))
        .collect()
}

fn x_add(a: &mut Vec<BigRational>, b: &[BigRational], shift: usize, scale: &BigRational) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += c * scale;
    }
}

/// `(1 − x²) p'' − (2γ+1) x p' + n(n+2γ) p` in the `x` power basis, trailing
/// zeros trimmed. Zero exactly when `p` solves the Gegenbauer equation.
pub fn gegenbauer_ode_image(p: &[BigRational], n: u32, gamma: &BigRational) -> Vec<BigRational> {
    let d1 = x_derivative(p);
    let d2 = x_derivative(&d1);
    let mut out = Vec::new();
    x_add(&mut out, &d2, 0, &int(1));
    x_add(&mut out, &d2, 2, &int(-1));
    x_add(&mut out, &d1, 1, &-(gamma * int(2) + int(1)));
    let n = int(i64::from(n));
    x_add(&mut out, p, 0, &(&n * (&n + gamma * int(2))));
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}
