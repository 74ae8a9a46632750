//! Command-line front end: argument parsing, dispatch and output formatting.
//!
//! Exit codes: 0 success, 1 verification failure or numerical error, 2 usage
//! error (malformed flags, inadmissible parameters, unreadable input).

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobi_logan::hyperboloid::{logan_bound, params_for_dim, spherical_extremizer_fn};
use jacobi_logan::jacobi::{phi, psi, spectral_weight, weight_delta, JacobiParams};
use jacobi_logan::logan::{build_extremizer, lambda_sup_extremizer, ExtremizerKind};
use jacobi_logan::transform::{
    gauss_rule, integrate_dsigma, jacobi_transform_sampled, write_csv, Panels, QuadConfig, SampledFunction,
};
use jacobi_logan::verify::{self, Suite, VerifyConfig};
use jacobi_logan::zerocount::build_g;
use jacobi_logan::zeros::{find_zeros, ZeroKind};
use jacobi_logan::{Error, Result};
use serde::Serialize;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "jacobi-logan", version, about = "Jacobi functions and the generalized Logan problem")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Jacobi parameter α (with --beta)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Jacobi parameter β (with --alpha)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Hyperboloid dimension d, giving (α, β) = (d/2 - 1, -1/2)
    #[arg(long, global = true)]
    pub dim: Option<u32>,
    /// Relative tolerance of spectral quadrature
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Sample the object on `a:b:n` and print the curve as CSV
    #[arg(long, global = true, value_parser = parse_grid)]
    pub emit_grid: Option<Grid>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.a];
        }
        (0..self.n)
            .map(|i| self.a + (self.b - self.a) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected a:b:n, got {s:?}"));
    };
    let a: f64 = a.parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.parse().map_err(|e| format!("{b:?}: {e}"))?;
    let n: usize = n.parse().map_err(|e| format!("{n:?}: {e}"))?;
    if !(a.is_finite() && b.is_finite()) || n == 0 || (n > 1 && !(b > a)) {
        return Err(format!("grid {s:?} needs finite a < b and n >= 1"));
    }
    Ok(Grid { a, b, n })
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate φ_λ(t), ψ_λ(t), Δ(t) or s(λ)
    Eval {
        #[arg(value_enum)]
        quantity: Quantity,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
    },
    /// Positive zeros in λ at time τ
    Zeros {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Kind::Lambda)]
        kind: Kind,
    },
    /// Gauss rule nodes λ_k(τ) and weights γ_k
    Quadrature {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Direct or inverse Jacobi transform of two-column CSV data
    Transform {
        #[arg(value_enum)]
        direction: Direction,
        /// CSV file with samples of g(t) (forward) or f(λ) (inverse)
        #[arg(long)]
        input: PathBuf,
        /// Output abscissae `a:b:n` (λ for forward, t for inverse)
        #[arg(long, value_parser = parse_grid)]
        at: Grid,
        /// Decay exponent of f(λ)s(λ) for the inverse transform
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        decay: f64,
    },
    /// Extremizer F_m or f_m of the Logan problem
    Extremizer {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long, value_enum, default_value_t = ExtKind::SmallF)]
        kind: ExtKind,
    },
    /// Zero-interval certificate for G_n at band limit γ
    Zerocount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: f64,
    },
    /// Logan bound and radial extremizer on the hyperboloid H^d
    Hyperboloid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        tau: f64,
    },
    /// Run a verification suite and print a JSON report
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Phi,
    Psi,
    Weight,
    Sweight,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lambda,
    Mu,
    LambdaStar,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtKind {
    BigF,
    SmallF,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    Core,
    Logan,
    Zerocount,
    Chebyshev,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Logan => Suite::Logan,
            SuiteArg::Zerocount => Suite::Zerocount,
            SuiteArg::Chebyshev => Suite::Chebyshev,
            SuiteArg::All => Suite::All,
        }
    }
}

/// What a command produced: a table, a JSON document, and whether every
/// check in it passed.
enum Output {
    Table { header: (&'static str, &'static str), rows: Vec<(f64, f64)> },
    Json(serde_json::Value),
    Report(verify::Report),
}

impl RunArgs {
    /// Exactly one of (α, β) or d.
    pub fn params(&self) -> Result<JacobiParams> {
        match (self.alpha, self.beta, self.dim) {
            (Some(a), Some(b), None) => JacobiParams::new(a, b),
            (None, None, Some(d)) => Ok(params_for_dim(d)?.jacobi),
            (None, None, None) => Err(Error::InvalidParameter("give --alpha and --beta, or --dim".into())),
            _ => Err(Error::InvalidParameter("give either --alpha with --beta, or --dim alone".into())),
        }
    }

    fn quad(&self) -> Result<QuadConfig> {
        let mut cfg = QuadConfig::default();
        if let Some(r) = self.rel_tol {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!("--rel-tol {r} must be positive")));
            }
            cfg.rel_tol = r;
        }
        Ok(cfg)
    }
}

fn sample<F: Fn(f64) -> Result<f64>>(grid: &Grid, f: F) -> Result<Vec<(f64, f64)>> {
    grid.points().into_iter().map(|x| Ok((x, f(x)?))).collect()
}

fn json<T: Serialize>(v: &T) -> Output {
    Output::Json(serde_json::to_value(v).expect("plain data serializes"))
}

fn execute(cli: &Cli) -> Result<Output> {
    let cfg = &cli.config;
    let grid = cfg.emit_grid;
    match &cli.command {
        Command::Eval { quantity, lambda, t } => {
            let p = cfg.params()?;
            let (l, t) = (*lambda, *t);
            let f = |x: f64| -> Result<f64> {
                match quantity {
                    Quantity::Phi => phi(&p, l, x),
                    Quantity::Psi => psi(&p, l, x),
                    Quantity::Weight => Ok(weight_delta(&p, x)),
                    Quantity::Sweight => spectral_weight(&p, x),
                }
            };
            let (x, header) = match quantity {
                Quantity::Sweight => (l, ("lambda", "s")),
                Quantity::Weight => (t, ("t", "delta")),
                Quantity::Phi => (t, ("t", "phi")),
                Quantity::Psi => (t, ("t", "psi")),
            };
            let rows = match grid {
                Some(g) => sample(&g, f)?,
                None => vec![(x, f(x)?)],
            };
            Ok(Output::Table { header, rows })
        }
        Command::Zeros { tau, count, kind } => {
            let p = cfg.params()?;
            let kind = match kind {
                Kind::Lambda => ZeroKind::Lambda,
                Kind::Mu => ZeroKind::Mu,
                Kind::LambdaStar => ZeroKind::LambdaStar,
            };
            let z = find_zeros(&p, *tau, *count, kind)?;
            if cfg.format == Format::Json {
                return Ok(json(&z));
            }
            let rows = z.zeros.iter().enumerate().map(|(k, &l)| ((k + 1) as f64, l)).collect();
            Ok(Output::Table { header: ("k", "zero"), rows })
        }
        Command::Quadrature { tau, count } => {
            let p = cfg.params()?;
            let r = gauss_rule(&p, *tau, *count)?;
            if cfg.format == Format::Json {
                return Ok(json(&r));
            }
            let rows = r.nodes.iter().cloned().zip(r.weights.iter().cloned()).collect();
            Ok(Output::Table { header: ("node", "weight"), rows })
        }
        Command::Transform { direction, input, at, decay } => {
            let p = cfg.params()?;
            let qc = cfg.quad()?;
            let file = File::open(input).map_err(|e| Error::Input(format!("{}: {e}", input.display())))?;
            let data = SampledFunction::from_csv(file)?;
            let xs = at.points();
            let values = match direction {
                Direction::Forward => jacobi_transform_sampled(&data, &p, &xs, &qc)?,
                Direction::Inverse => {
                    // f is taken to vanish beyond its last sample
                    let end = *data.grid().last().unwrap();
                    let panels = Panels::Uniform((end / 64.0).max(1e-3));
                    xs.iter()
                        .map(|&t| {
                            let h = |l: f64| -> Result<f64> {
                                if l > end {
                                    return Ok(0.0);
                                }
                                Ok(data.eval(l)? * phi(&p, l, t)?)
                            };
                            Ok(integrate_dsigma(&h, *decay, &p, &panels, &qc)?.value)
                        })
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let header = match direction {
                Direction::Forward => ("lambda", "jg"),
                Direction::Inverse => ("t", "jinv_f"),
            };
            Ok(Output::Table { header, rows: xs.into_iter().zip(values).collect() })
        }
        Command::Extremizer { m, tau, kind } => {
            let p = cfg.params()?;
            let kind = match kind {
                ExtKind::BigF => ExtremizerKind::FM,
                ExtKind::SmallF => ExtremizerKind::SmallFM,
            };
            let e = build_extremizer(&p, *m, *tau, kind)?;
            if let Some(g) = grid {
                let rows = sample(&g, |l| e.eval(l))?;
                return Ok(Output::Table { header: ("lambda", "f"), rows });
            }
            #[derive(Serialize)]
            struct Summary {
                kind: ExtremizerKind,
                m: usize,
                tau: f64,
                zeros: Vec<f64>,
                value_at_zero: f64,
                lambda_sup: Option<f64>,
            }
            let sup = match kind {
                ExtremizerKind::SmallFM => Some(lambda_sup_extremizer(&e)?.value),
                ExtremizerKind::FM => None,
            };
            Ok(json(&Summary {
                kind,
                m: *m,
                tau: *tau,
                zeros: e.zeros.clone(),
                value_at_zero: e.eval(0.0)?,
                lambda_sup: sup,
            }))
        }
        Command::Zerocount { n, gamma } => {
            let p = cfg.params()?;
            let c = build_g(&p, *n, *gamma)?;
            if let Some(g) = grid {
                let rows = sample(&g, |t| c.expansion.eval(t))?;
                return Ok(Output::Table { header: ("t", "g"), rows });
            }
            let check = c.check(400)?;
            #[derive(Serialize)]
            struct Summary<'a> {
                n: usize,
                gamma: f64,
                theta: f64,
                frequencies: &'a [f64],
                coefficients: &'a [f64],
                derivatives: &'a [f64],
                pass: bool,
            }
            let out = json(&Summary {
                n: c.n,
                gamma: c.gamma,
                theta: c.theta,
                frequencies: &c.expansion.frequencies,
                coefficients: &c.expansion.coefficients,
                derivatives: &c.multiplicity_report.values,
                pass: check.pass,
            });
            Ok(out)
        }
        Command::Hyperboloid { m, tau } => {
            let Some(d) = cfg.dim else {
                return Err(Error::InvalidParameter("hyperboloid needs --dim".into()));
            };
            if cfg.alpha.is_some() || cfg.beta.is_some() {
                return Err(Error::InvalidParameter("hyperboloid takes --dim only".into()));
            }
            if let Some(g) = grid {
                let e = spherical_extremizer_fn(d, *m, *tau)?;
                let rows = sample(&g, |l| e.eval(l))?;
                return Ok(Output::Table { header: ("lambda", "f"), rows });
            }
            let bound = logan_bound(d, *m, *tau)?;
            Ok(Output::Json(serde_json::json!({ "d": d, "m": m, "tau": tau, "bound": bound })))
        }
        Command::Verify { suite, m, tau, seed } => {
            let vc = VerifyConfig {
                params: cfg.params()?,
                tau: *tau,
                m: *m,
                seed: *seed,
            };
            Ok(Output::Report(verify::run((*suite).into(), &vc)?))
        }
    }
}

fn render(out: &Output, format: Format) -> Result<(Vec<u8>, bool)> {
    let mut buf = Vec::new();
    let io = |e: std::io::Error| Error::Input(e.to_string());
    let pass = match out {
        Output::Table { header, rows } => {
            match format {
                Format::Csv => write_csv(&mut buf, Some(*header), rows.iter().cloned())?,
                Format::Json => {
                    let v: Vec<[f64; 2]> = rows.iter().map(|&(x, y)| [x, y]).collect();
                    let doc = serde_json::json!({ "columns": [header.0, header.1], "rows": v });
                    serde_json::to_writer_pretty(&mut buf, &doc).map_err(|e| Error::Input(e.to_string()))?;
                    writeln!(buf).map_err(io)?;
                }
            }
            true
        }
        Output::Json(v) => {
            serde_json::to_writer_pretty(&mut buf, v).map_err(|e| Error::Input(e.to_string()))?;
            writeln!(buf).map_err(io)?;
            true
        }
        Output::Report(r) => {
            serde_json::to_writer_pretty(&mut buf, r).map_err(|e| Error::Input(e.to_string()))?;
            writeln!(buf).map_err(io)?;
            r.pass()
        }
    };
    Ok((buf, pass))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Domain(_) | Error::Input(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (program name first), runs the command and writes its output
/// to `stdout` or the `--output` file. Returns the process exit code.
pub fn run<I, T, W, E>(argv: I, stdout: &mut W, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli).and_then(|o| render(&o, cli.config.format));
    match result {
        Ok((bytes, pass)) => {
            let written = match &cli.config.output {
                Some(path) => std::fs::write(path, &bytes),
                None => stdout.write_all(&bytes),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
