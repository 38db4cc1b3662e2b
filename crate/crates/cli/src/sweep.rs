//! Grid evaluation with a resumable row log.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use selberg_core::cyclo::CycIntJson;
use selberg_core::selberg::family_poly;
use selberg_core::verify::{self, AevwGrid, FieldHeader, SeriesSpec, SCHEMA};
use selberg_core::{CycInt, Error, GaussContext, Poly};

use crate::{write_out, DynResult, FieldArgs, Format, Outcome};

pub const CSV_HEADER: [&str; 11] = ["p", "e", "q", "r", "chi1", "chi2", "i", "re", "im", "abs", "embedding"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pellet,
    GaussJacobi,
    Dh,
    Anderson,
    Stability,
    Theorem1,
    Aevw,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Polynomial r in coefficient syntax (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub r: Vec<String>,
    /// Family member x^e0 (x-1)^e1 (repeatable).
    #[arg(long, value_parser = crate::parse_pair)]
    pub family: Vec<(u32, u32)>,
    /// Default: all characters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chi1: Option<Vec<i64>>,
    /// Default: all characters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chi2: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    pub imin: usize,
    #[arg(long, default_value_t = 3)]
    pub imax: usize,
    /// Verification suites to run on their default grids (repeatable).
    #[arg(long, value_enum)]
    pub suite: Vec<Suite>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Append-only row log; rows already present are reused on restart.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RowKey {
    r: String,
    chi1: u32,
    chi2: u32,
    i: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LogEntry {
    index: usize,
    key: RowKey,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<CycIntJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

pub fn embedding_values(ctx: &GaussContext, v: &CycInt) -> Vec<Value> {
    ctx.embeddings()
        .into_iter()
        .map(|s| {
            let z = v.embed(s);
            json!({ "embedding": s, "re": z.re, "im": z.im, "abs": z.norm() })
        })
        .collect()
}

fn read_log(path: &Path) -> DynResult<BTreeMap<usize, LogEntry>> {
    let mut out = BTreeMap::new();
    if !path.exists() {
        return Ok(out);
    }
    for line in BufReader::new(File::open(path)?).lines() {
        // a torn final line from an interrupted run is ignored
        if let Ok(entry) = serde_json::from_str::<LogEntry>(&line?) {
            out.insert(entry.index, entry);
        }
    }
    Ok(out)
}

fn grid_polys(ctx: &GaussContext, args: &SweepArgs) -> selberg_core::Result<Vec<Poly>> {
    let mut rs: Vec<Poly> = args.r.iter().map(|s| Poly::parse(ctx.field(), s)).collect::<selberg_core::Result<_>>()?;
    rs.extend(args.family.iter().map(|&(a, b)| family_poly(ctx, a, b)));
    Ok(rs)
}

/// Over-budget points become skipped rows carrying the reason.
fn evaluate(ctx: &GaussContext, r: &Poly, key: &RowKey) -> selberg_core::Result<Result<CycInt, String>> {
    match ctx.check_budget(key.i) {
        Err(e @ Error::BudgetExceeded { .. }) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    ctx.selberg(r, ctx.character(key.chi1 as i64), ctx.character(key.chi2 as i64), key.i as i64).map(Ok)
}

fn run_suite(ctx: &GaussContext, suite: Suite) -> selberg_core::Result<verify::SuiteReport> {
    match suite {
        Suite::Pellet => verify::pellet(ctx, 4),
        Suite::GaussJacobi => verify::gauss_jacobi(ctx),
        Suite::Dh => verify::dh(ctx, 3, &verify::default_dh_rs(ctx)),
        Suite::Anderson => verify::anderson(ctx, 3, false),
        Suite::Stability => verify::stability(ctx, &[1, 2], &verify::default_stability_rs(ctx), 4),
        Suite::Theorem1 => {
            let mut mats = verify::generator_matrices(ctx);
            mats.extend(verify::random_matrices(ctx, 10, 1));
            verify::theorem1(ctx, &mats, &verify::default_theorem1_rs(ctx), 4)
        }
        Suite::Aevw => verify::aevw(ctx, &AevwGrid::standard(if ctx.q() > 11 { 4 } else { 5 })),
    }
}

pub fn run(args: SweepArgs) -> DynResult<Outcome> {
    let ctx = args.field.context()?;
    let f = ctx.field();
    let rs = grid_polys(&ctx, &args)?;
    let pick = |list: &Option<Vec<i64>>| -> Vec<u32> {
        match list {
            Some(ms) => ms.iter().map(|&m| ctx.character(m).exponent()).collect(),
            None => ctx.characters().iter().map(|c| c.exponent()).collect(),
        }
    };
    let (c1s, c2s) = (pick(&args.chi1), pick(&args.chi2));

    let mut keys = Vec::new();
    for r in &rs {
        for &chi1 in &c1s {
            for &chi2 in &c2s {
                for i in args.imin..=args.imax {
                    keys.push((r, RowKey { r: r.format(f), chi1, chi2, i }));
                }
            }
        }
    }

    let done = match &args.log {
        Some(p) => read_log(p)?,
        None => BTreeMap::new(),
    };
    let mut log = match &args.log {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };

    let mut rows: Vec<(RowKey, Result<CycInt, String>)> = Vec::with_capacity(keys.len());
    for (index, (r, key)) in keys.into_iter().enumerate() {
        if let Some(prev) = done.get(&index).filter(|e| e.key == key) {
            let row = match (&prev.value, &prev.skipped) {
                (Some(v), _) => Ok(v.decode(ctx.ring())?),
                (None, Some(reason)) => Err(reason.clone()),
                (None, None) => Err("empty log entry".to_string()),
            };
            rows.push((key, row));
            continue;
        }
        let row = evaluate(&ctx, r, &key)?;
        if let Some(file) = log.as_mut() {
            let entry = LogEntry {
                index,
                key: key.clone(),
                value: row.as_ref().ok().map(|v| v.to_json()),
                skipped: row.as_ref().err().cloned(),
            };
            writeln!(file, "{}", serde_json::to_string(&entry)?)?;
            file.flush()?;
        }
        rows.push((key, row));
    }

    let mut suites = BTreeMap::new();
    let mut all_pass = true;
    for &s in &args.suite {
        let rep = run_suite(&ctx, s)?;
        all_pass &= rep.passed();
        eprintln!("{}: {}", rep.suite, if rep.passed() { "PASS" } else { "FAIL" });
        suites.insert(rep.suite.clone(), rep);
    }
    let skipped = rows.iter().filter(|(_, r)| r.is_err()).count();
    if skipped > 0 {
        eprintln!("{skipped} grid points skipped (budget)");
    }

    let text = match args.format {
        Format::Json => {
            let json_rows: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(index, (k, row))| {
                    let mut v = json!({ "index": index, "r": k.r, "chi1": k.chi1, "chi2": k.chi2, "i": k.i });
                    match row {
                        Ok(val) => v["value"] = serde_json::to_value(val.to_json()).expect("serializes"),
                        Err(reason) => v["skipped"] = json!(reason),
                    }
                    v
                })
                .collect();
            let doc = json!({
                "schema": SCHEMA,
                "field": FieldHeader::of(&ctx),
                "grid": {
                    "r": rs.iter().map(|r| r.format(f)).collect::<Vec<_>>(),
                    "chi1": c1s,
                    "chi2": c2s,
                    "imin": args.imin,
                    "imax": args.imax,
                },
                "rows": json_rows,
                "skipped": skipped,
                "suites": suites,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut buf = header_comments(&ctx);
            for (name, rep) in &suites {
                buf.push_str(&format!("# suite {name}: {}\n", if rep.passed() { "pass" } else { "fail" }));
            }
            for (index, (k, row)) in rows.iter().enumerate() {
                if let Err(reason) = row {
                    buf.push_str(&format!("# skipped {index} r={} chi1={} chi2={} i={}: {reason}\n", k.r, k.chi1, k.chi2, k.i));
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for (k, row) in &rows {
                if let Ok(v) = row {
                    for s in ctx.embeddings() {
                        write_csv_row(&mut w, &ctx, &k.r, k.chi1, k.chi2, k.i, v, s)?;
                    }
                }
            }
            buf.push_str(std::str::from_utf8(&w.into_inner()?)?);
            buf
        }
    };
    write_out(&args.field.out, &text)?;
    Ok(if all_pass { Outcome::Pass } else { Outcome::Fail })
}

/// `#` lines carrying the generator, defining polynomial and N.
fn header_comments(ctx: &GaussContext) -> String {
    let h = FieldHeader::of(ctx);
    let modulus: Vec<String> = h.modulus.iter().map(|c| c.to_string()).collect();
    format!("# schema={SCHEMA} p={} e={} q={} generator={} modulus={} N={}\n", h.p, h.e, h.q, h.generator, modulus.join(","), h.n)
}

#[allow(clippy::too_many_arguments)]
fn write_csv_row<W: Write>(
    w: &mut csv::Writer<W>,
    ctx: &GaussContext,
    r: &str,
    chi1: u32,
    chi2: u32,
    i: usize,
    v: &CycInt,
    sigma: i64,
) -> DynResult<()> {
    let f = ctx.field();
    let z = v.embed(sigma);
    w.write_record([
        f.p().to_string(),
        f.e().to_string(),
        f.q().to_string(),
        r.to_string(),
        chi1.to_string(),
        chi2.to_string(),
        i.to_string(),
        z.re.to_string(),
        z.im.to_string(),
        z.norm().to_string(),
        sigma.to_string(),
    ])?;
    Ok(())
}

/// The window of a series report, one row per coefficient and embedding.
pub fn write_window_csv(ctx: &GaussContext, path: &Path, spec: &SeriesSpec, report: &Value) -> DynResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let (chi1, chi2) = (ctx.character(spec.chi1).exponent(), ctx.character(spec.chi2).exponent());
    for c in report["coeffs"].as_array().into_iter().flatten() {
        let v: CycIntJson = serde_json::from_value(c["value"].clone())?;
        let v = v.decode(ctx.ring())?;
        let i = c["i"].as_u64().unwrap_or(0) as usize;
        for s in ctx.embeddings() {
            write_csv_row(&mut w, ctx, &spec.r, chi1, chi2, i, &v, s)?;
        }
    }
    let text = header_comments(ctx) + std::str::from_utf8(&w.into_inner()?)?;
    write_out(&Some(path.to_path_buf()), &text)?;
    Ok(())
}
