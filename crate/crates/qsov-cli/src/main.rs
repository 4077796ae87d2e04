mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsov::macdonald;
use qsov::numkernel::NumericConfig;
use qsov::scalar::parse;
use qsov::sov::{self, BasisKind, TransitionKind};
use qsov::verify::{run_suite, ExactGrid, Suite, VerifyConfig};
use qsov::{qpoly, Error, Laurent2, Pair, QContext, Q};
use serde_json::{json, Value};

use output::{poly1, poly2, rat, row, suite_json, suite_table};

#[derive(Parser)]
#[command(name = "qsov", version, about = "Exact separation of variables for A1 Macdonald polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial, basis element or transition-matrix row.
    Compute {
        #[command(subcommand)]
        what: ComputeKind,
    },
    /// Factorize M_xi P_lambda as c f(y1) f(y2) and check it exactly.
    Factorize {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lam: Pair,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum ComputeKind {
    /// q-ultraspherical C_n(x; beta|q) as a Laurent polynomial in w = e^{i theta}.
    Cpoly {
        #[arg(long)]
        n: usize,
        /// Defaults to t.
        #[arg(long, value_parser = parse_q)]
        beta: Option<Q>,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Macdonald polynomial P_lambda(x1, x2).
    Macdonald {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lam: Pair,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Separated polynomial f_lambda(y).
    Separated {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lam: Pair,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Basis element p, r, pt or rt.
    Basis {
        #[arg(long, value_parser = parse_basis)]
        basis: BasisKind,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lam: Pair,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Row lambda of pi, rho, Q, R or their tilded versions (pi~, rho~, Q~, R~).
    Transition {
        #[arg(long, value_parser = parse_kind)]
        kind: TransitionKind,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lam: Pair,
        #[command(flatten)]
        ctx: CtxArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct CtxArgs {
    /// q = s^2, t = s^(2g).
    #[arg(long, default_value = "1/2", value_parser = parse_q)]
    s: Q,
    #[arg(long, default_value_t = 1)]
    g: u32,
    #[arg(long, default_value = "1", value_parser = parse_q, allow_hyphen_values = true)]
    xi: Q,
}

impl CtxArgs {
    fn context(&self) -> qsov::Result<QContext> {
        QContext::new(self.s.clone(), self.g, self.xi.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// qpoly, macdonald, sov, transitions, numkernel, ruijsenaars or all.
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Grid values of s (repeatable).
    #[arg(long, value_parser = parse_q)]
    s: Vec<Q>,
    /// Grid values of g (repeatable).
    #[arg(long)]
    g: Vec<u32>,
    /// Grid values of xi (repeatable).
    #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
    xi: Vec<Q>,
    /// Bound on lambda_21 and |lambda_i|.
    #[arg(long)]
    lmax: Option<i64>,
    #[arg(long)]
    quad_points: Option<usize>,
    /// Tight tolerance of the numeric kernel checks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    phase_points: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Report elapsed_ms as null, making the output reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyArgs {
    fn config(&self) -> VerifyConfig {
        let d = ExactGrid::default();
        let pick = |v: &Vec<Q>, default: Vec<Q>| if v.is_empty() { default } else { v.clone() };
        let grid = ExactGrid {
            s: pick(&self.s, d.s),
            g: if self.g.is_empty() { d.g } else { self.g.clone() },
            xi: pick(&self.xi, d.xi),
            max_width: self.lmax.unwrap_or(d.max_width),
            bound: self.lmax.unwrap_or(d.bound),
        };
        let mut numeric = NumericConfig::default();
        if let Some(n) = self.quad_points {
            numeric.quad_points = n;
        }
        if let Some(t) = self.tol {
            numeric.tol_tight = t;
        }
        let mut cfg = VerifyConfig { grid, numeric, seed: self.seed, ..VerifyConfig::default() };
        if let Some(n) = self.phase_points {
            cfg.phase_points = n;
        }
        cfg
    }
}

fn parse_q(s: &str) -> Result<Q, String> {
    parse(s).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<Pair, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_basis(s: &str) -> Result<BasisKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<TransitionKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
    dump: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvalidParameter(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string(), dump: None }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
            dump: None,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `coefficients` as a CSV of `key,value` lines; everything else as JSON.
fn emit_data(data: Value, out: &OutArgs) -> Result<(), Failure> {
    let text = match out.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&data).expect("json")),
        Format::Csv => {
            let mut s = String::from("key,value\n");
            if let Some(Value::Object(m)) = data.get("coefficients") {
                for (k, v) in m {
                    s.push_str(&format!("\"{k}\",{}\n", v.as_str().unwrap_or_default()));
                }
            }
            s
        }
    };
    emit(&text, &out.out)
}

fn ctx_json(ctx: &QContext) -> Value {
    json!({ "s": rat(ctx.s()), "g": ctx.g(), "xi": rat(ctx.xi()), "q": rat(ctx.q()), "t": rat(ctx.t()) })
}

fn compute(what: &ComputeKind) -> Result<(), Failure> {
    let (data, out) = match what {
        ComputeKind::Cpoly { n, beta, ctx, out } => {
            let c = ctx.context()?;
            let beta = beta.clone().unwrap_or_else(|| c.t().clone());
            let p = qpoly::cq_sum(*n, &beta, c.q());
            (json!({ "kind": "cpoly", "n": n, "beta": rat(&beta), "params": ctx_json(&c), "coefficients": poly1(&p) }), out)
        }
        ComputeKind::Macdonald { lam, ctx, out } => {
            let c = ctx.context()?;
            let p = macdonald::macdonald_poly(*lam, &c).poly;
            let m: serde_json::Map<String, Value> = lam
                .below()
                .into_iter()
                .filter(|nu| nu.size() == lam.size())
                .map(|nu| (format!("{},{}", nu.l1, nu.l2), rat(&p.coeff((nu.l1, nu.l2)))))
                .collect();
            let data = json!({
                "kind": "macdonald", "lam": lam.to_string(), "params": ctx_json(&c),
                "coefficients": poly2(&p), "monomial_symmetric": m,
            });
            (data, out)
        }
        ComputeKind::Separated { lam, ctx, out } => {
            let c = ctx.context()?;
            let f = macdonald::separated_poly(*lam, &c)?.poly;
            (json!({ "kind": "separated", "lam": lam.to_string(), "params": ctx_json(&c), "coefficients": poly1(&f) }), out)
        }
        ComputeKind::Basis { basis, lam, ctx, out } => {
            let c = ctx.context()?;
            let p = sov::basis(*basis, *lam, &c);
            let data = json!({
                "kind": "basis", "basis": basis.name(), "lam": lam.to_string(),
                "params": ctx_json(&c), "coefficients": poly2(&p),
            });
            (data, out)
        }
        ComputeKind::Transition { kind, lam, ctx, out } => {
            let c = ctx.context()?;
            let r = sov::transition_row(*lam, *kind, &c);
            let data = json!({
                "kind": "transition", "matrix": kind.name(), "lam": lam.to_string(),
                "params": ctx_json(&c), "coefficients": row(&r.entries),
            });
            (data, out)
        }
    };
    emit_data(data, out)
}

fn factorize(lam: Pair, ctx: &CtxArgs, out: &OutArgs) -> Result<(), Failure> {
    let c = ctx.context()?;
    let image = sov::apply_m(&macdonald::macdonald_poly(lam, &c).poly, &c)?;
    let f = macdonald::separated_poly(lam, &c)?.poly;
    let norm = sov::normalization_c(lam, &c);
    let mut residual = image.clone();
    residual -= &Laurent2::tensor(&f, &f).scale(&norm);
    let verified = residual.is_zero();
    let data = json!({
        "lam": lam.to_string(), "params": ctx_json(&c), "c": rat(&norm), "f": poly1(&f),
        "verified": verified, "residual": poly2(&residual),
    });
    if !verified {
        return Err(Failure {
            code: 1,
            message: format!("M P_{lam} - c f(y1) f(y2) is not zero"),
            dump: Some(data),
        });
    }
    emit_data(data, out)
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let report = run_suite(args.suite, &args.config())?;
    let text = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&suite_json(&report, !args.no_timing)).expect("json"))
    } else {
        suite_table(&report, !args.no_timing)
    };
    emit(&text, &args.out)?;
    if report.passed() {
        Ok(())
    } else {
        let n = report.failures().count();
        Err(Failure { code: 1, message: format!("{n} case(s) failed"), dump: None })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Compute { what } => compute(what),
        Command::Factorize { lam, ctx, out } => factorize(*lam, ctx, out),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(d) = f.dump {
                println!("{}", serde_json::to_string_pretty(&d).expect("json"));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsov::scalar::frac;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn lmax_sets_both_bounds() {
        let cli = Cli::parse_from(["qsov", "verify", "sov", "--lmax", "2", "--s", "1/3", "--s", "1/2"]);
        let Command::Verify(args) = cli.cmd else { panic!() };
        let cfg = args.config();
        assert_eq!((cfg.grid.max_width, cfg.grid.bound), (2, 2));
        assert_eq!(cfg.grid.s, vec![frac(1, 3), frac(1, 2)]);
        assert_eq!(cfg.grid.g, ExactGrid::default().g);
    }
}
