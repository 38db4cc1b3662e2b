//! `selsum`: evaluate and verify Selberg character sums over F_q[x].

mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use selberg_core::selberg::{family_poly, SelbergParams};
use selberg_core::verify::{self, AevwGrid, FieldHeader, SeriesSpec, SuiteReport, SCHEMA};
use selberg_core::{Error, GaussContext, Poly};

#[derive(Parser)]
#[command(name = "selsum", version, about = "Selberg character sums over F_q[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters: q, generator, defining polynomial, N = p(q-1).
    FfInfo(FieldArgs),
    #[command(subcommand)]
    Selberg(SelbergCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Evaluate Se over a grid and write a JSON or CSV dataset.
    Sweep(sweep::SweepArgs),
}

#[derive(Args, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Maximum number of monic polynomials enumerated per degree.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl FieldArgs {
    pub fn context(&self) -> selberg_core::Result<GaussContext> {
        let mut ctx = GaussContext::new(self.p, self.e)?;
        if let Some(t) = self.threads {
            ctx = ctx.with_threads(t)?;
        }
        if let Some(b) = self.budget {
            ctx = ctx.with_budget(b)?;
        }
        Ok(ctx)
    }
}

/// `--r` (coefficients, low degree first) or `--family e0,e1`.
#[derive(Args, Clone)]
struct PolyArg {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "family")]
    r: Option<String>,
    /// x^e0 (x-1)^e1
    #[arg(long, value_parser = parse_pair)]
    family: Option<(u32, u32)>,
}

impl PolyArg {
    fn resolve(&self, ctx: &GaussContext) -> selberg_core::Result<Poly> {
        match (&self.r, self.family) {
            (Some(s), _) => Poly::parse(ctx.field(), s),
            (None, Some((a, b))) => Ok(family_poly(ctx, a, b)),
            (None, None) => Err(Error::Precondition("one of --r or --family is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum SelbergCmd {
    /// Exact value of Se(r, chi1, chi2, i).
    Eval {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        chi1: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi2: i64,
        #[arg(long)]
        i: usize,
    },
    /// Closed form, periodicity and van Wamelen value against brute force.
    VerifyAevw {
        #[command(flatten)]
        field: FieldArgs,
        /// Default: 5, or 4 when q > 11.
        #[arg(long)]
        imax: Option<usize>,
        /// Exponent pairs e0,e1 (repeatable; default all of {1,2}^2).
        #[arg(long = "exponents", value_parser = parse_pair)]
        exponents: Vec<(u32, u32)>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chi1: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        chi2: Option<Vec<i64>>,
        /// Keep one record per grid point.
        #[arg(long)]
        details: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// mu(f) = (-1)^deg f omega(D(f)), exhaustive.
    Pellet {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
    /// Gauss and Jacobi sum identities over all character pairs.
    GaussJacobi {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Closed form of the global Gauss sum against direct summation.
    Dh {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
        /// Default: 1, x, x-1, x^2+1.
        #[arg(long, allow_hyphen_values = true)]
        r: Vec<String>,
    },
    /// Report-only comparison of the two Anderson exponent readings.
    Anderson {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
        #[arg(long)]
        details: bool,
    },
    /// Stability under an irreducible pi, both pi | r and pi not dividing r.
    Stability {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        pi_degrees: Vec<usize>,
        /// Default: x, x-1, x(x-1), x^2(x-1).
        #[arg(long, allow_hyphen_values = true)]
        r: Vec<String>,
        #[arg(long, default_value_t = 4)]
        imax: usize,
    },
    /// The Moebius transformation formula.
    Theorem1 {
        #[command(flatten)]
        field: FieldArgs,
        /// Random invertible matrices added to the three generators.
        #[arg(long, default_value_t = 10)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Default: x(x-1), x, x^3+x, x^2+x+1, x^2(x-1).
        #[arg(long, allow_hyphen_values = true)]
        r: Vec<String>,
        #[arg(long, default_value_t = 4)]
        imax: usize,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Window of sum_l Se(i0 + l n) X^l, rational fit, singularities.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        chi1: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi2: i64,
        #[arg(long, default_value_t = 0)]
        i0: usize,
        #[arg(long, default_value_t = 6)]
        len: usize,
        /// Default: floor((len-2)/2).
        #[arg(long)]
        dmax_num: Option<usize>,
        /// Default: ceil((len-2)/2).
        #[arg(long)]
        dmax_den: Option<usize>,
        /// Also write the window as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected e0,e1, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad exponent {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad exponent {b:?}"))?;
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Errors from the core are input problems (bad field, budget, parse) and
/// map to exit code 2 alongside usage errors.
pub type DynResult<T> = Result<T, Box<dyn std::error::Error>>;

pub enum Outcome {
    Pass,
    Fail,
}

pub fn write_out(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn polys(ctx: &GaussContext, given: &[String], default: Vec<Poly>) -> selberg_core::Result<Vec<Poly>> {
    if given.is_empty() {
        Ok(default)
    } else {
        given.iter().map(|s| Poly::parse(ctx.field(), s)).collect()
    }
}

fn emit_suite(field: &FieldArgs, rep: SuiteReport) -> DynResult<Outcome> {
    write_out(&field.out, &(rep.to_json() + "\n"))?;
    eprintln!(
        "{}: {} (checked {}, failed {})",
        rep.suite,
        if rep.passed() { "PASS" } else { "FAIL" },
        rep.checked,
        rep.failed
    );
    Ok(if rep.passed() { Outcome::Pass } else { Outcome::Fail })
}


fn run(cli: Cli) -> DynResult<Outcome> {
    match cli.command {
        Command::FfInfo(field) => {
            let ctx = field.context()?;
            let h = FieldHeader::of(&ctx);
            let text = format!(
                "p={}\ne={}\nq={}\nmodulus={}\ngenerator={}\nN={}\n",
                h.p,
                h.e,
                h.q,
                h.modulus.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
                h.generator,
                h.n
            );
            write_out(&field.out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Selberg(SelbergCmd::Eval { field, poly, chi1, chi2, i }) => {
            let ctx = field.context()?;
            let r = poly.resolve(&ctx)?;
            let params = SelbergParams::new(&ctx, r.clone(), ctx.character(chi1), ctx.character(chi2), i);
            let res = ctx.selberg_bruteforce(&params)?;
            let report = json!({
                "schema": SCHEMA,
                "field": FieldHeader::of(&ctx),
                "r": r.format(ctx.field()),
                "chi1": params.chi1.exponent(),
                "chi2": params.chi2.exponent(),
                "i": i,
                "n": res.n,
                "n_prime": res.n_prime,
                "case": res.case,
                "f0": res.f0,
                "f1": res.f1,
                "count_enumerated": res.count_enumerated,
                "value": res.value.to_json(),
                "integer": res.value.as_integer().map(|v| v.to_string()),
                "embeddings": sweep::embedding_values(&ctx, &res.value),
            });
            write_out(&field.out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            match res.value.as_integer() {
                Some(v) => eprintln!("value {v}"),
                None => eprintln!("value {:?}", res.value),
            }
            Ok(Outcome::Pass)
        }
        Command::Selberg(SelbergCmd::VerifyAevw { field, imax, exponents, chi1, chi2, details }) => {
            let ctx = field.context()?;
            let imax = imax.unwrap_or(if ctx.q() > 11 { 4 } else { 5 });
            let mut grid = AevwGrid::standard(imax);
            if !exponents.is_empty() {
                grid.exponents = exponents;
            }
            grid.chi1 = chi1;
            grid.chi2 = chi2;
            grid.keep_details = details;
            emit_suite(&field, verify::aevw(&ctx, &grid)?)
        }
        Command::Verify(cmd) => run_verify(cmd),
        Command::Series(SeriesCmd::Analyze { field, poly, chi1, chi2, i0, len, dmax_num, dmax_den, csv }) => {
            let ctx = field.context()?;
            let r = poly.resolve(&ctx)?;
            let (dn, dd) = SeriesSpec::auto_degrees(len);
            let spec = SeriesSpec {
                r: r.format(ctx.field()),
                chi1,
                chi2,
                i0,
                len,
                dmax_num: dmax_num.unwrap_or(dn),
                dmax_den: dmax_den.unwrap_or(dd),
            };
            let report = verify::series_analyze(&ctx, &spec)?;
            if let Some(path) = csv {
                sweep::write_window_csv(&ctx, &path, &spec, &report)?;
            }
            write_out(&field.out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            let ok = report["checks"]
                .as_object()
                .map(|m| m.iter().all(|(k, v)| k.ends_with("_literal") || check_ok(v)))
                .unwrap_or(true);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Sweep(args) => sweep::run(args),
    }
}

/// A check entry passes when every boolean in it is true.
fn check_ok(v: &Value) -> bool {
    match v {
        Value::Bool(b) => *b,
        Value::Object(m) => m.values().all(check_ok),
        _ => true,
    }
}

fn run_verify(cmd: VerifyCmd) -> DynResult<Outcome> {
    match cmd {
        VerifyCmd::Pellet { field, max_deg } => {
            let ctx = field.context()?;
            emit_suite(&field, verify::pellet(&ctx, max_deg)?)
        }
        VerifyCmd::GaussJacobi { field } => {
            let ctx = field.context()?;
            emit_suite(&field, verify::gauss_jacobi(&ctx)?)
        }
        VerifyCmd::Dh { field, max_deg, r } => {
            let ctx = field.context()?;
            let rs = polys(&ctx, &r, verify::default_dh_rs(&ctx))?;
            emit_suite(&field, verify::dh(&ctx, max_deg, &rs)?)
        }
        VerifyCmd::Anderson { field, max_deg, details } => {
            let ctx = field.context()?;
            emit_suite(&field, verify::anderson(&ctx, max_deg, details)?)
        }
        VerifyCmd::Stability { field, pi_degrees, r, imax } => {
            let ctx = field.context()?;
            let rs = polys(&ctx, &r, verify::default_stability_rs(&ctx))?;
            emit_suite(&field, verify::stability(&ctx, &pi_degrees, &rs, imax)?)
        }
        VerifyCmd::Theorem1 { field, random, seed, r, imax } => {
            let ctx = field.context()?;
            let rs = polys(&ctx, &r, verify::default_theorem1_rs(&ctx))?;
            let mut mats = verify::generator_matrices(&ctx);
            mats.extend(verify::random_matrices(&ctx, random, seed));
            emit_suite(&field, verify::theorem1(&ctx, &mats, &rs, imax)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
