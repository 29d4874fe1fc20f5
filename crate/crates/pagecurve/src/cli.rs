//! Command-line front end.
//!
//! Single-point entropy queries, Page-curve sweeps over the divisors of a
//! fixed total dimension, the smallest-informative-subsystem search, the
//! exact 2×n results, the auxiliary integral F, and Monte-Carlo runs — with
//! CSV or JSON emission for the sweep data.
//!
//! Exit codes: 0 success, 2 usage or I/O error, 3 domain/not-found error,
//! 4 convergence failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exact_small::{f_mn, renyi2_exact_2xn, renyi2_tilde_2xn, FArgs};
use crate::moments::{
    info_alpha, page_von_neumann, renyi_asymptotic, renyi_tilde, RenyiOrder, SystemDims,
};
use crate::montecarlo::{mc_average_renyi, mc_average_von_neumann, mc_moment_sum};

// ---------------------------------------------------------------------------
// sweep domain types
// ---------------------------------------------------------------------------

/// One evaluated point of a Page-curve sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    /// Subsystem dimension (a divisor of the sweep product).
    pub m: u64,
    /// ln m, the natural abscissa of the curve.
    pub ln_m: f64,
    /// Average Rényi entropy S̃_α(m, n).
    pub entropy: f64,
    /// Information I_α = ln m − S̃_α.
    pub info: f64,
    /// Text form of the order ("1", "0.5", "inf", …).
    pub alpha_label: String,
    /// Evaluation route, as stable snake_case.
    pub method: &'static str,
}

/// File format for sweep output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a header row.
    Csv,
    /// A JSON array of objects.
    Json,
}

/// Configuration of one Page-curve sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Fixed total dimension m·n; every divisor becomes one abscissa.
    pub product_mn: u64,
    /// Orders to sweep.
    pub alphas: Vec<RenyiOrder>,
    /// Information threshold carried along for m_* searches.
    pub threshold: f64,
    /// Output file format.
    pub output_format: OutputFormat,
    /// Output file path.
    pub output_path: PathBuf,
}

impl SweepConfig {
    /// Checks the structural invariants.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] when the product is below 2, the threshold is not
    /// a positive finite real, or no orders were given.
    pub fn validate(&self) -> Result<()> {
        if self.product_mn < 2 {
            return Err(Error::Domain(format!(
                "sweep product m·n must be at least 2, got {}",
                self.product_mn
            )));
        }
        if !self.threshold.is_finite() || self.threshold <= 0.0 {
            return Err(Error::Domain(format!(
                "threshold must be a positive finite real, got {}",
                self.threshold
            )));
        }
        if self.alphas.is_empty() {
            return Err(Error::Domain("at least one Rényi order is required".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// sweep operations
// ---------------------------------------------------------------------------

/// All positive divisors of `n`, ascending (trial division to √n).
/// `divisors(0)` is empty.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n && n > 0 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Evaluates S̃_α and I_α at every divisor m of the sweep product, for
/// every requested order, with n = product/m (dimensions canonicalized
/// internally when m > n). Rows are sorted by (alpha_label, m).
///
/// # Errors
///
/// [`Error::Domain`] for an invalid configuration.
pub fn page_curve(config: &SweepConfig) -> Result<Vec<CurvePoint>> {
    config.validate()?;
    let abscissas = divisors(config.product_mn);
    let mut points = Vec::with_capacity(abscissas.len() * config.alphas.len());
    for &order in &config.alphas {
        for &m in &abscissas {
            let n = config.product_mn / m;
            let result = renyi_tilde(SystemDims::new(m, n)?, order);
            points.push(CurvePoint {
                m,
                ln_m: (m as f64).ln(),
                entropy: result.entropy,
                info: result.info,
                alpha_label: order.label(),
                method: result.method.as_str(),
            });
        }
    }
    points.sort_by(|a, b| a.alpha_label.cmp(&b.alpha_label).then(a.m.cmp(&b.m)));
    Ok(points)
}

/// The smallest divisor m of `product_mn` whose information
/// I_α(m, product/m) exceeds `threshold`.
///
/// # Errors
///
/// [`Error::Domain`] for a product below 2 or a non-positive threshold;
/// [`Error::NotFound`] when no divisor qualifies.
pub fn m_star(product_mn: u64, order: RenyiOrder, threshold: f64) -> Result<u64> {
    if product_mn < 2 {
        return Err(Error::Domain(format!(
            "product m·n must be at least 2, got {product_mn}"
        )));
    }
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::Domain(format!(
            "threshold must be a positive finite real, got {threshold}"
        )));
    }
    for m in divisors(product_mn) {
        if info_alpha(m, product_mn / m, order)? > threshold {
            return Ok(m);
        }
    }
    Err(Error::NotFound(format!(
        "no divisor of {product_mn} carries information above {threshold} at order {order}"
    )))
}

// ---------------------------------------------------------------------------
// output writers
// ---------------------------------------------------------------------------

/// 17-significant-digit float form used in emitted files; enough digits
/// for an exact parse-back of every f64.
fn file_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes sweep points as CSV: header `alpha,m,ln_m,entropy,info,method`,
/// one row per point, LF line endings, floats at 17 significant digits.
///
/// # Errors
///
/// [`Error::Io`] with the offending path.
pub fn write_csv(points: &[CurvePoint], path: &Path) -> Result<()> {
    let mut out = String::from("alpha,m,ln_m,entropy,info,method\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.alpha_label,
            p.m,
            file_float(p.ln_m),
            file_float(p.entropy),
            file_float(p.info),
            p.method,
        ));
    }
    write_file(path, &out)
}

/// Writes sweep points as a JSON array of six-field objects, floats at 17
/// significant digits.
///
/// # Errors
///
/// [`Error::Io`] with the offending path.
pub fn write_json(points: &[CurvePoint], path: &Path) -> Result<()> {
    let mut out = String::from("[\n");
    for (i, p) in points.iter().enumerate() {
        let comma = if i + 1 < points.len() { "," } else { "" };
        out.push_str(&format!(
            "  {{\"alpha\": \"{}\", \"m\": {}, \"ln_m\": {}, \"entropy\": {}, \
             \"info\": {}, \"method\": \"{}\"}}{comma}\n",
            p.alpha_label,
            p.m,
            file_float(p.ln_m),
            file_float(p.entropy),
            file_float(p.info),
            p.method,
        ));
    }
    out.push_str("]\n");
    write_file(path, &out)
}

// ---------------------------------------------------------------------------
// terminal formatting
// ---------------------------------------------------------------------------

/// Plain-decimal rendering with `digits` significant digits (no exponent),
/// for human-facing summary values.
fn format_significant(value: f64, digits: u32) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    if decimals >= 0 {
        format!("{value:.*}", decimals as usize)
    } else {
        let factor = 10f64.powi(-decimals);
        format!("{:.0}", (value / factor).round() * factor)
    }
}

// ---------------------------------------------------------------------------
// argument grammar
// ---------------------------------------------------------------------------

fn parse_order(s: &str) -> std::result::Result<RenyiOrder, String> {
    s.parse::<RenyiOrder>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "pagecurve",
    version,
    about = "Average Rényi/von Neumann entropy of Haar-random bipartite pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Average Rényi entropy S̃_α and information I_α at one (m, n, α).
    Entropy(EntropyArgs),
    /// ln Z_α (and Z_α itself when it fits in double precision).
    Zalpha(ZalphaArgs),
    /// Exact α = 2 entropies of the 2×n system.
    Exact2(Exact2Args),
    /// The auxiliary integral F(mx, ny).
    Fmn(FmnArgs),
    /// Sweep S̃_α and I_α over every divisor of a fixed product m·n.
    PageCurve(PageCurveArgs),
    /// Smallest divisor m with information above a threshold.
    Mstar(MstarArgs),
    /// Monte-Carlo estimates over Haar-random states.
    Montecarlo(MontecarloArgs),
}

#[derive(Debug, Args)]
struct EntropyArgs {
    /// Subsystem dimension.
    #[arg(long)]
    m: u64,
    /// Environment dimension.
    #[arg(long)]
    n: u64,
    /// Rényi order: a nonnegative real, or "inf".
    #[arg(long, value_parser = parse_order, required_unless_present = "alpha_inf", conflicts_with = "alpha_inf")]
    alpha: Option<RenyiOrder>,
    /// Shorthand for --alpha inf.
    #[arg(long)]
    alpha_inf: bool,
    /// Use the large-n expansion instead of the exact sum.
    #[arg(long)]
    asymptotic: bool,
}

#[derive(Debug, Args)]
struct ZalphaArgs {
    /// Subsystem dimension.
    #[arg(long)]
    m: u64,
    /// Environment dimension.
    #[arg(long)]
    n: u64,
    /// Finite Rényi order α ≥ 0.
    #[arg(long, value_parser = parse_order)]
    alpha: RenyiOrder,
}

#[derive(Debug, Args)]
struct Exact2Args {
    /// Environment dimension n of the 2×n system (n ≥ 2).
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Args)]
struct FmnArgs {
    /// First exponent.
    #[arg(long)]
    mx: u32,
    /// Second exponent.
    #[arg(long)]
    ny: u32,
    /// Base quadrature order (doubled internally until stable).
    #[arg(long, default_value_t = 64)]
    order: usize,
}

#[derive(Debug, Args)]
struct PageCurveArgs {
    /// Fixed total dimension m·n.
    #[arg(long)]
    mn: u64,
    /// Comma-separated list of orders, e.g. "1,10,100,1000,inf".
    #[arg(long)]
    alphas: String,
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    /// Output file format.
    #[arg(long, value_enum)]
    format: OutputFormat,
    /// Information threshold recorded in the sweep configuration.
    #[arg(long, default_value_t = 0.1)]
    threshold: f64,
}

#[derive(Debug, Args)]
struct MstarArgs {
    /// Fixed total dimension m·n.
    #[arg(long)]
    mn: u64,
    /// Rényi order: a nonnegative real, or "inf".
    #[arg(long, value_parser = parse_order)]
    alpha: RenyiOrder,
    /// Information threshold.
    #[arg(long, default_value_t = 0.1)]
    threshold: f64,
}

/// Which statistic a Monte-Carlo run estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimatorKind {
    /// ⟨Σ pᵢ^α⟩, the moment itself.
    Moments,
    /// ⟨ln(Σ pᵢ^α)⟩ / (1 − α), the true average Rényi entropy.
    Renyi,
    /// ⟨−Σ pᵢ ln pᵢ⟩, the average von Neumann entropy.
    VonNeumann,
}

#[derive(Debug, Args)]
struct MontecarloArgs {
    /// Subsystem dimension.
    #[arg(long)]
    m: u64,
    /// Environment dimension.
    #[arg(long)]
    n: u64,
    /// Order α > 0 (required by the moments and renyi estimators).
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of independent Haar draws.
    #[arg(long)]
    samples: u64,
    /// Base RNG seed.
    #[arg(long)]
    seed: u64,
    /// Statistic to estimate.
    #[arg(long, value_enum, default_value_t = EstimatorKind::Moments)]
    estimator: EstimatorKind,
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

/// Parses `argv` and runs the requested subcommand, returning the process
/// exit code (0 success, 2 usage/I-O, 3 domain/not-found, 4 convergence).
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Entropy(args) => cmd_entropy(args),
        Command::Zalpha(args) => cmd_zalpha(args),
        Command::Exact2(args) => cmd_exact2(args),
        Command::Fmn(args) => cmd_fmn(args),
        Command::PageCurve(args) => cmd_page_curve(args),
        Command::Mstar(args) => cmd_mstar(args),
        Command::Montecarlo(args) => cmd_montecarlo(args),
    }
}

fn cmd_entropy(args: EntropyArgs) -> Result<()> {
    let order = if args.alpha_inf {
        RenyiOrder::Infinite
    } else {
        args.alpha
            .expect("clap requires --alpha unless --alpha-inf is present")
    };
    let dims = SystemDims::new(args.m, args.n)?;
    let ln_sub = (dims.subsystem_dim() as f64).ln();
    let (entropy, info, method) = if args.asymptotic {
        let RenyiOrder::Finite { value, .. } = order else {
            return Err(Error::Domain(
                "the large-n expansion needs a finite order; use the exact \
                 evaluator for --alpha-inf"
                    .into(),
            ));
        };
        if dims.n() < 10 * dims.m() {
            eprintln!(
                "warning: the large-n expansion assumes n \u{226b} m; n = {} is below 10\u{b7}m = {}",
                dims.n(),
                10 * dims.m()
            );
        }
        let asym = renyi_asymptotic(dims, value);
        (asym.entropy, ln_sub - asym.entropy, "asymptotic")
    } else {
        let result = renyi_tilde(dims, order);
        (result.entropy, result.info, result.method.as_str())
    };
    println!("entropy = {}", format_significant(entropy, 5));
    println!("info = {}", format_significant(info, 5));
    println!("method = {method}");
    Ok(())
}

fn cmd_zalpha(args: ZalphaArgs) -> Result<()> {
    if matches!(args.alpha, RenyiOrder::Infinite) {
        return Err(Error::Domain(
            "the moment vanishes in the \u{3b1} \u{2192} \u{221e} limit; ln Z has no finite value there".into(),
        ));
    }
    let dims = SystemDims::new(args.m, args.n)?;
    let result = renyi_tilde(dims, args.alpha);
    let ln_z = result.log_z.log_magnitude();
    println!("ln_Z = {ln_z}");
    let z = ln_z.exp();
    if z.is_finite() && z > 0.0 {
        println!("Z = {z}");
    }
    Ok(())
}

fn cmd_exact2(args: Exact2Args) -> Result<()> {
    let exact = renyi2_exact_2xn(args.n)?;
    let tilde = renyi2_tilde_2xn(args.n);
    let von = page_von_neumann(SystemDims::new(2, args.n)?);
    println!("S2 = {}", format_significant(exact, 5));
    println!("S2_tilde = {}", format_significant(tilde, 5));
    println!("S_von = {}", format_significant(von, 5));
    Ok(())
}

fn cmd_fmn(args: FmnArgs) -> Result<()> {
    let value = f_mn(FArgs::new(args.mx, args.ny), args.order)?;
    println!("F = {value}");
    Ok(())
}

fn cmd_page_curve(args: PageCurveArgs) -> Result<()> {
    let config = SweepConfig {
        product_mn: args.mn,
        alphas: parse_alpha_list(&args.alphas)?,
        threshold: args.threshold,
        output_format: args.format,
        output_path: args.out,
    };
    let points = page_curve(&config)?;
    match config.output_format {
        OutputFormat::Csv => write_csv(&points, &config.output_path)?,
        OutputFormat::Json => write_json(&points, &config.output_path)?,
    }
    println!(
        "wrote {} points to {}",
        points.len(),
        config.output_path.display()
    );
    Ok(())
}

fn cmd_mstar(args: MstarArgs) -> Result<()> {
    let m = m_star(args.mn, args.alpha, args.threshold)?;
    println!("{m}");
    Ok(())
}

fn cmd_montecarlo(args: MontecarloArgs) -> Result<()> {
    let need_alpha = || {
        args.alpha
            .ok_or_else(|| Error::Domain("--alpha is required for this estimator".into()))
    };
    let estimate = match args.estimator {
        EstimatorKind::Moments => {
            mc_moment_sum(args.m, args.n, need_alpha()?, args.samples, args.seed)?
        }
        EstimatorKind::Renyi => {
            mc_average_renyi(args.m, args.n, need_alpha()?, args.samples, args.seed)?
        }
        EstimatorKind::VonNeumann => {
            mc_average_von_neumann(args.m, args.n, args.samples, args.seed)?
        }
    };
    println!("mean = {}", estimate.mean);
    println!("std_error = {}", estimate.std_error);
    println!("samples = {}", estimate.samples);
    println!("seed = {}", estimate.seed);
    Ok(())
}

fn parse_alpha_list(raw: &str) -> Result<Vec<RenyiOrder>> {
    let mut orders = Vec::new();
    for part in raw.split(',') {
        let token = part.trim();
        if token.is_empty() {
            return Err(Error::Domain(format!("empty entry in order list {raw:?}")));
        }
        orders.push(token.parse::<RenyiOrder>()?);
    }
    Ok(orders)
}
