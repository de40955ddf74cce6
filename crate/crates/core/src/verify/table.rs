use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::fmt_rational;
use crate::families::ultraspherical;
use crate::numerics::{inner_product, norm_inverse, ProductTruncation, QuadratureGrid};
use crate::qkernel::{lambda_n, mu_n, weightfree_eigenvalue, QContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Eigenvalues,
    Coefficients,
    Norms,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eigenvalues" => Ok(Self::Eigenvalues),
            "coefficients" => Ok(Self::Coefficients),
            "norms" => Ok(Self::Norms),
            other => Err(Error::InvalidParameter(format!("unknown table kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!("unknown table format {other:?}"))),
        }
    }
}

enum Cell {
    Int(i64),
    Rational(BigRational),
    Float(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rational(r) => fmt_rational(r),
            Cell::Float(f) => format!("{f:.16e}"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Rational(r) => Value::from(fmt_rational(r)),
            Cell::Float(f) => Value::from(format!("{f:.16e}")),
        }
    }
}

/// Tabulates eigenvalues, polynomial coefficients or norms for `n ≤ n_max`.
///
/// Rationals render as `p/q`, floats in scientific notation with 17
/// significant digits. Norms need the orthogonality regime.
pub fn emit_table(
    kind: TableKind,
    ctx: &QContext,
    n_max: u32,
    format: TableFormat,
    nodes: usize,
    trunc: &ProductTruncation,
) -> Result<String> {
    let (header, rows): (Vec<&str>, Vec<Vec<Cell>>) = match kind {
        TableKind::Eigenvalues => (
            vec!["n", "mu_n", "lambda_n", "weightfree_eigenvalue"],
            (0..=n_max)
                .map(|n| {
                    vec![
                        Cell::Int(i64::from(n)),
                        Cell::Rational(mu_n(ctx, n).0),
                        Cell::Rational(lambda_n(ctx, n).0),
                        Cell::Rational(weightfree_eigenvalue(ctx, n).0),
                    ]
                })
                .collect(),
        ),
        TableKind::Coefficients => {
            let mut rows = Vec::new();
            for n in 0..=n_max {
                for (exp, c) in ultraspherical(n, ctx).terms().rev() {
                    rows.push(vec![Cell::Int(i64::from(n)), Cell::Int(exp), Cell::Rational(c.clone())]);
                }
            }
            (vec!["n", "exponent", "coefficient"], rows)
        }
        TableKind::Norms => {
            let grid = QuadratureGrid::new(nodes);
            let mut rows = Vec::new();
            for n in 0..=n_max {
                let closed = norm_inverse(n, ctx, trunc)?;
                let quad = inner_product(n, n, ctx, &grid, trunc)?;
                rows.push(vec![
                    Cell::Int(i64::from(n)),
                    Cell::Float(closed),
                    Cell::Float(quad),
                    Cell::Float((quad - closed).abs() / closed.abs()),
                ]);
            }
            (vec!["n", "d_n_inverse", "quadrature", "relative_difference"], rows)
        }
    };
    Ok(match format {
        TableFormat::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in &rows {
                let line: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
            out
        }
        TableFormat::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let map: Map<String, Value> =
                        header.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                    Value::Object(map)
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&records)?;
            text.push('\n');
            text
        }
    })
}
