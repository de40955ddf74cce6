use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use qfactor_core::exact::{fmt_rational, parse_rational, BigRational, LaurentPoly};
use qfactor_core::families::{gf_series, to_x_basis, Family, PolySpec};
use qfactor_core::numerics::ProductTruncation;
use qfactor_core::operators::{self, QOperator};
use qfactor_core::verify::{emit_table, run_suite, SuiteConfig, TableFormat, TableKind};
use qfactor_core::{Error, QContext};

#[derive(Parser)]
#[command(name = "qfactor", version, about = "Exact and numeric checks for q-ultraspherical identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog checks and emit a JSON report.
    Verify(VerifyArgs),
    /// Tabulate eigenvalues, coefficients or norms.
    Table(TableArgs),
    /// Build one polynomial and optionally apply an operator to it.
    Eval(EvalArgs),
    /// Dump generating-function coefficients.
    Series(SeriesArgs),
}

fn rational(text: &str) -> Result<BigRational, String> {
    parse_rational(text).ok_or_else(|| format!("expected a rational like 3/5, got {text:?}"))
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Comma-separated check id globs.
    #[arg(long, default_value = "*")]
    filter: String,
    /// Grid values of s = q^(1/2).
    #[arg(long = "s", value_parser = rational, value_delimiter = ',')]
    s: Vec<BigRational>,
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<BigRational>,
    /// Gegenbauer parameters for the classical checks.
    #[arg(long, value_parser = rational, value_delimiter = ',')]
    gamma: Vec<BigRational>,
    #[arg(long, default_value_t = 20)]
    n_max: u32,
    #[arg(long, default_value_t = 8)]
    numeric_n_max: u32,
    #[arg(long, default_value_t = 15)]
    series_order: usize,
    #[arg(long, default_value_t = 512)]
    nodes: usize,
    #[arg(long, default_value_t = 1e-14)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Offset added to beta in one shift coefficient (negative control).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    mutate_beta: Option<BigRational>,
    /// Record per-case wall time instead of 0.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Summary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Eigenvalues,
    Coefficients,
    Norms,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFmt {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct ContextArgs {
    #[arg(long = "s", value_parser = rational, default_value = "1/2")]
    s: BigRational,
    #[arg(long, value_parser = rational, default_value = "1/2", allow_hyphen_values = true)]
    beta: BigRational,
}

impl ContextArgs {
    fn context(&self) -> Result<QContext, Error> {
        make_context(&self.s, &self.beta)
    }
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    ctx: ContextArgs,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = TableFmt::Csv)]
    format: TableFmt,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    nodes: usize,
    #[arg(long, default_value_t = 1e-14)]
    epsilon: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    DxBetaQ,
    DxQ,
    AskeyWilson,
    Averaging,
    AveragingDecomposition,
    Weightfree,
    HermiteWeightfree,
    ShiftSum,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFmt {
    Text,
    Json,
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long, default_value = "ultraspherical")]
    family: String,
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    ctx: ContextArgs,
    #[arg(long, value_parser = rational)]
    gamma: Option<BigRational>,
    #[arg(long, value_enum)]
    op: Option<OpName>,
    #[arg(long, value_enum, default_value_t = TextFmt::Text)]
    format: TextFmt,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SeriesArgs {
    #[command(flatten)]
    ctx: ContextArgs,
    /// Highest power of t.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = TextFmt::Text)]
    format: TextFmt,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn make_context(s: &BigRational, beta: &BigRational) -> Result<QContext, Error> {
    if *s < BigRational::one() {
        QContext::new(s.clone(), beta.clone())
    } else {
        QContext::formal(s.clone(), beta.clone())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn laurent_json(p: &LaurentPoly) -> Value {
    let terms: Map<String, Value> = p
        .terms()
        .rev()
        .map(|(k, c)| (k.to_string(), Value::from(fmt_rational(c))))
        .collect();
    Value::Object(terms)
}

fn verify(args: VerifyArgs) -> Result<bool, Error> {
    let mut config = SuiteConfig {
        n_max: args.n_max,
        numeric_n_max: args.numeric_n_max,
        series_order: args.series_order,
        nodes: args.nodes,
        epsilon: args.epsilon,
        mutate_beta: args.mutate_beta,
        timing: args.timing,
        ..SuiteConfig::default()
    };
    if !args.s.is_empty() || !args.beta.is_empty() {
        let defaults = SuiteConfig::default();
        let s_values = if args.s.is_empty() { defaults.distinct_s() } else { args.s };
        let betas = if args.beta.is_empty() {
            let mut b: Vec<BigRational> = defaults.grid.iter().map(|c| c.beta().clone()).collect();
            b.dedup();
            b
        } else {
            args.beta
        };
        config.grid = s_values
            .iter()
            .flat_map(|s| betas.iter().map(move |b| make_context(s, b)))
            .collect::<Result<_, _>>()?;
    }
    if !args.gamma.is_empty() {
        config.gammas = args.gamma;
    }
    let report = run_suite(&args.filter, &config)?;
    let text = match args.format {
        ReportFormat::Json => {
            let mut t = report.to_json()?;
            t.push('\n');
            t
        }
        ReportFormat::Summary => {
            let mut t = String::new();
            for c in report.failures() {
                t.push_str(&format!("FAIL {} {}\n", c.check_id, Value::Object(c.params.clone())));
            }
            let s = report.summary;
            t.push_str(&format!("total {} pass {} fail {} skipped {}\n", s.total, s.pass, s.fail, s.skipped));
            t
        }
    };
    emit(&args.out, &text)?;
    let s = report.summary;
    eprintln!("{} cases: {} pass, {} fail, {} skipped", s.total, s.pass, s.fail, s.skipped);
    Ok(report.all_passed())
}

fn table(args: TableArgs) -> Result<bool, Error> {
    let ctx = args.ctx.context()?;
    let kind = match args.kind {
        Kind::Eigenvalues => TableKind::Eigenvalues,
        Kind::Coefficients => TableKind::Coefficients,
        Kind::Norms => TableKind::Norms,
    };
    let format = match args.format {
        TableFmt::Csv => TableFormat::Csv,
        TableFmt::Json => TableFormat::Json,
    };
    let text = emit_table(kind, &ctx, args.n_max, format, args.nodes, &ProductTruncation::new(args.epsilon))?;
    emit(&args.out, &text)?;
    Ok(true)
}

fn operator(name: OpName, ctx: &QContext) -> QOperator {
    match name {
        OpName::DxBetaQ => operators::dx_beta_q(ctx),
        OpName::DxQ => operators::dx_q(ctx),
        OpName::AskeyWilson => operators::askey_wilson(ctx),
        OpName::Averaging => operators::averaging(ctx),
        OpName::AveragingDecomposition => operators::averaging_decomposition(ctx),
        OpName::Weightfree => operators::weightfree_sl(ctx),
        OpName::HermiteWeightfree => operators::hermite_weightfree(ctx),
        OpName::ShiftSum => operators::shift_sum(ctx),
    }
}

/// `λ` with `image = λ p`, if one exists.
fn eigenvalue_of(p: &LaurentPoly, image: &LaurentPoly) -> Option<BigRational> {
    let top = p.max_deg()?;
    let lead = p.coeff(top);
    if lead.is_zero() {
        return None;
    }
    let lambda = image.coeff(top) / lead;
    (p.scale(&lambda) == *image).then_some(lambda)
}

fn eval(args: EvalArgs) -> Result<bool, Error> {
    let family: Family = args.family.parse()?;
    let mut ctx = args.ctx.context()?;
    if let Some(g) = args.gamma {
        ctx = ctx.with_gamma(g);
    }
    let p = PolySpec::new(family, args.n, ctx.clone())?.build();
    let x_coeffs: Vec<String> = to_x_basis(&p)?.iter().map(fmt_rational).collect();
    let image = args.op.map(|op| operator(op, &ctx).apply_poly(&p)).transpose()?;
    let eigenvalue = image.as_ref().and_then(|img| eigenvalue_of(&p, img));
    let text = match args.format {
        TextFmt::Json => {
            let doc = json!({
                "family": family.name(),
                "n": args.n,
                "s": fmt_rational(ctx.s()),
                "beta": fmt_rational(ctx.beta()),
                "z_coefficients": laurent_json(&p),
                "x_coefficients": x_coeffs,
                "image": image.as_ref().map(laurent_json),
                "eigenvalue": eigenvalue.as_ref().map(fmt_rational),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        TextFmt::Text => {
            let mut t = format!("{} n={} {}\n", family.name(), args.n, ctx);
            t.push_str(&format!("z: {p}\n"));
            t.push_str(&format!("x: [{}]\n", x_coeffs.join(", ")));
            if let Some(img) = &image {
                t.push_str(&format!("image: {img}\n"));
                match &eigenvalue {
                    Some(l) => t.push_str(&format!("eigenvalue: {}\n", fmt_rational(l))),
                    None => t.push_str("eigenvalue: none\n"),
                }
            }
            t
        }
    };
    emit(&args.out, &text)?;
    Ok(true)
}

fn series(args: SeriesArgs) -> Result<bool, Error> {
    let ctx = args.ctx.context()?;
    let g = gf_series(&ctx, args.n_max)?;
    let text = match args.format {
        TextFmt::Json => {
            let coeffs: Vec<Value> = (0..=args.n_max).map(|n| laurent_json(g.coeff(n))).collect();
            let doc = json!({
                "s": fmt_rational(ctx.s()),
                "beta": fmt_rational(ctx.beta()),
                "order": args.n_max,
                "coefficients": coeffs,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        TextFmt::Text => (0..=args.n_max).map(|n| format!("t^{n}: {}\n", g.coeff(n))).collect(),
    };
    emit(&args.out, &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::Eval(a) => eval(a),
        Command::Series(a) => series(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
