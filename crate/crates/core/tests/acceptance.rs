//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion's status is the claim as stated. Where the stated claim is
//! false, the status is pinned to FAIL and the corrected reading is required
//! to hold instead; any change in either direction fails this target.
//! Set `SELBERG_UPDATE_GOLDEN=1` to rewrite the golden reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use selberg_core::aevw::{classify, t_factor, u_polys};
use selberg_core::poly::{monic_count, monic_unrank};
use selberg_core::selberg::SumCase;
use selberg_core::verify::{self, AevwGrid, SeriesSpec};
use selberg_core::{CycFrac, GaussContext, Poly};

/// |·| comparisons on embedded values. Inverse roots of L-polynomials use the
/// library's fixed relative tolerance of 1e-6.
const MAG_TOL: f64 = 1e-9;

const ODD_Q_UP_TO_13: [(u32, u32); 6] = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)];

struct Outcome {
    /// The criterion as stated.
    pass: bool,
    /// Requirements that must hold regardless (corrected readings, coverage).
    required: Vec<(String, bool)>,
    note: String,
}

impl Outcome {
    fn new(pass: bool, note: String) -> Outcome {
        Outcome { pass, required: Vec::new(), note }
    }

    fn require(mut self, what: &str, ok: bool) -> Outcome {
        self.required.push((what.to_string(), ok));
        self
    }
}

fn ctx(p: u32, e: u32) -> GaussContext {
    GaussContext::new(p, e).expect("odd prime power")
}

fn counter(rep: &verify::SuiteReport, key: &str) -> u64 {
    rep.counters.get(key).copied().unwrap_or(0)
}

fn c1_aevw() -> (Outcome, Outcome) {
    let mut literal = (0, 0);
    let mut branches = BTreeMap::new();
    let mut corrected_ok = true;
    let mut vw = (0, 0);
    let mut periodicity = 0;
    let mut per_q = Vec::new();
    for (p, e, imax) in [(5, 1, 5), (7, 1, 5), (3, 2, 5), (13, 1, 4)] {
        let ctx = ctx(p, e);
        let rep = verify::aevw(&ctx, &AevwGrid::standard(imax)).unwrap();
        corrected_ok &= rep.passed();
        let holds = counter(&rep, "closed form literal holds");
        let total = holds + counter(&rep, "closed form literal fails");
        literal.0 += holds;
        literal.1 += total;
        per_q.push(format!("q={}: {holds}/{total}", ctx.q()));
        for b in ["t-even", "t-odd", "s", "non-metaplectic"] {
            *branches.entry(b).or_insert(0) += counter(&rep, &format!("branch {b}"));
        }
        vw.0 += counter(&rep, "van Wamelen literal holds");
        vw.1 += counter(&rep, "van Wamelen");
        periodicity += counter(&rep, "periodicity");
    }
    let all_branches = ["t-even", "t-odd", "s"].iter().all(|b| branches[b] > 0);
    let c1 = Outcome::new(
        literal.0 == literal.1 && all_branches,
        format!(
            "stated closed form equals brute force on {}/{} points ({}); corrected reading exact on all; branch counts t-even {} t-odd {} s {} non-metaplectic {}",
            literal.0,
            literal.1,
            per_q.join(", "),
            branches["t-even"],
            branches["t-odd"],
            branches["s"],
            branches["non-metaplectic"]
        ),
    )
    .require("corrected closed form, periodicity, |A| and corrected van Wamelen value exact on the grid", corrected_ok)
    .require("all three metaplectic branches exercised", all_branches);
    let c10 = Outcome::new(
        vw.0 == vw.1 && corrected_ok,
        format!("stated van Wamelen value holds on {}/{} metaplectic points; corrected value and {periodicity} periodicity checks exact", vw.0, vw.1),
    )
    .require("corrected van Wamelen value and periodicity exact", corrected_ok && vw.1 > 0 && periodicity > 0);
    (c1, c10)
}

fn c2_pellet() -> Outcome {
    let mut checked = 0;
    let mut ok = true;
    for (p, e) in [(3, 1), (5, 1), (3, 2)] {
        let rep = verify::pellet(&ctx(p, e), 4).unwrap();
        ok &= rep.passed();
        checked += rep.checked;
    }
    Outcome::new(ok, format!("{checked} monic f checked"))
}

fn c3_dh() -> Outcome {
    let mut checked = 0;
    let mut ok = true;
    for p in [3, 5, 7] {
        let ctx = ctx(p, 1);
        let rep = verify::dh(&ctx, 3, &verify::default_dh_rs(&ctx)).unwrap();
        ok &= rep.passed();
        checked += rep.checked;
    }
    Outcome::new(ok, format!("{checked} exact comparisons"))
}

fn c4_gauss_jacobi() -> Outcome {
    let mut checked = 0;
    let mut ok = true;
    for (p, e) in ODD_Q_UP_TO_13 {
        let rep = verify::gauss_jacobi(&ctx(p, e)).unwrap();
        ok &= rep.passed();
        checked += rep.checked;
    }
    Outcome::new(ok, format!("{checked} checks over q in {{3,5,7,9,11,13}}"))
}

fn c5_magnitudes() -> Outcome {
    let (mut tau_checks, mut a_checks) = (0, 0);
    let mut ok = true;
    for (p, e) in ODD_Q_UP_TO_13 {
        let ctx = ctx(p, e);
        let q = ctx.q() as f64;
        for chi in ctx.characters().into_iter().skip(1) {
            for s in ctx.embeddings() {
                tau_checks += 1;
                ok &= (ctx.tau(chi).embed(s).norm() - q.sqrt()).abs() <= MAG_TOL * q.sqrt();
            }
        }
        for c2 in ctx.characters().into_iter().filter(|c| c.order() > 1) {
            for c1 in ctx.characters() {
                for (e0, e1) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                    let params = classify(e0, e1, c1, c2);
                    let a = ctx.a_factor(&params).unwrap();
                    let half = params.n as f64 / 2.0;
                    let allowed: Vec<f64> = if params.case == SumCase::Metaplectic {
                        vec![q.powf(half - 2.0)]
                    } else {
                        vec![q.powf(half - 1.0), q.powf(half - 0.5), q.powf(half)]
                    };
                    for s in ctx.embeddings() {
                        a_checks += 1;
                        let m = a.embed(s).norm();
                        ok &= allowed.iter().any(|&k| (m - k).abs() <= MAG_TOL * k);
                    }
                }
            }
        }
    }
    Outcome::new(ok, format!("{tau_checks} |tau| and {a_checks} |A| embedding checks"))
}

fn c6_theorem1() -> Outcome {
    let (mut holds, mut total, mut chi0) = (0, 0, 0);
    let mut corrected_ok = true;
    for p in [5, 7] {
        let ctx = ctx(p, 1);
        let mut mats = verify::generator_matrices(&ctx);
        mats.extend(verify::random_matrices(&ctx, 10, 1));
        let rep = verify::theorem1(&ctx, &mats, &verify::default_theorem1_rs(&ctx), 4).unwrap();
        corrected_ok &= rep.passed();
        holds += counter(&rep, "literal holds");
        total += rep.checked;
        chi0 += counter(&rep, "nontrivial chi0");
    }
    Outcome::new(
        holds == total,
        format!("stated formula holds on {holds}/{total} points; corrected reading exact on all; {chi0} points with nontrivial chi0"),
    )
    .require("corrected transformation formula exact", corrected_ok)
    .require("nontrivial chi0 decompositions present", chi0 > 0)
}

fn c7_stability() -> Outcome {
    let ctx = ctx(5, 1);
    let rep = verify::stability(&ctx, &[1, 2], &verify::default_stability_rs(&ctx), 4).unwrap();
    let both = counter(&rep, "pi | r") > 0 && counter(&rep, "pi does not divide r") > 0;
    Outcome::new(
        rep.passed() && both,
        format!(
            "{} points; transcribed formula holds on {}, corrected residual (positive exponents) on {}",
            rep.checked,
            counter(&rep, "literal holds"),
            counter(&rep, "corrected holds")
        ),
    )
    .require("both cases covered", both)
}

fn series_cases() -> Vec<(u32, SeriesSpec, &'static str, usize)> {
    let spec = |r: &str, chi1, chi2, i0, len| {
        let (dn, dd) = SeriesSpec::auto_degrees(len);
        SeriesSpec { r: r.into(), chi1, chi2, i0, len, dmax_num: dn, dmax_den: dd }
    };
    // x(x-1) over F_3 is "0,2,1", x(x-1)^2 is "0,1,1,1"
    vec![
        (5, spec("0,4,1", 3, 2, 0, 4), "non-metaplectic", 1),
        (5, spec("0,4,1", 3, 2, 1, 4), "non-metaplectic", 1),
        (7, spec("0,6,1", 1, 3, 0, 4), "non-metaplectic", 1),
        (3, spec("0,2,1", 0, 1, 0, 7), "t-even", 3),
        (3, spec("0,2,1", 0, 1, 1, 7), "t-odd", 3),
        (3, spec("0,1,1,1", 0, 1, 0, 7), "t-even", 3),
        (3, spec("0,2,1", 1, 1, 0, 5), "s", 2),
        (3, spec("0,2,1", 1, 1, 1, 5), "s", 2),
    ]
}

fn c8_series() -> Outcome {
    let (mut literal, mut consistent, mut shapes) = (0, 0, 0);
    let cases = series_cases();
    let mut seen = BTreeMap::new();
    for (p, spec, branch, den_deg) in &cases {
        let ctx = ctx(*p, 1);
        let v = verify::series_analyze(&ctx, spec).unwrap();
        let checks = &v["checks"];
        assert_eq!(checks["predicted_consistent"]["branch"], *branch, "{spec:?}");
        *seen.entry(*branch).or_insert(0) += 1;
        if checks["predicted_literal"]["taylor_matches"] == true {
            literal += 1;
        }
        if checks["predicted_consistent"]["taylor_matches"] == true && checks["predicted_consistent"]["equivalent"] == true {
            consistent += 1;
        }
        if v["fit"]["den_degree"] == *den_deg && checks["predicted_literal"]["same_denominator"] == true {
            shapes += 1;
        }
    }
    let n = cases.len();
    Outcome::new(
        literal == n && shapes == n,
        format!(
            "displayed forms reproduce {literal}/{n} windows; stated denominators recovered by the fit on {shapes}/{n}; consistent numerators reproduce {consistent}/{n}"
        ),
    )
    .require("consistent series forms reproduce every window", consistent == n)
    .require("fitted denominators have the stated shapes", shapes == n)
    .require("all four forms exercised", seen.len() == 4)
}

/// Power series of num/den (den₀ = 1) to `count` terms.
fn expand(num: &[i64], den: &[i64], count: usize) -> Vec<BigInt> {
    assert_eq!(den[0], 1);
    let mut out: Vec<BigInt> = Vec::new();
    for k in 0..count {
        let mut c = BigInt::from(*num.get(k).unwrap_or(&0));
        for j in 1..den.len().min(k + 1) {
            c -= BigInt::from(den[j]) * &out[k - j];
        }
        out.push(c);
    }
    out
}

fn c9_summation() -> Outcome {
    let mut checks = 0;
    let mut ok = true;
    for q in [3i64, 5, 7, 9, 11, 13] {
        // T(y) straight from its defining sum
        let t = |y: i64| -> BigInt { (0..=y).map(|k| BigInt::from(2 * k + 1) * BigInt::from(-q).pow((y - k) as u32)).sum::<BigInt>() - y };
        let s = |y: i64| BigInt::from(1 + (q - 1) * y);
        let den3 = [1, -2 - q * q, 1 + 2 * q * q, -q * q];
        let even = expand(&[1, 1 - 3 * q, 2 * q * q - q], &den3, 8);
        let odd = expand(&[2 - q, q * q - 3 * q, q * q], &den3, 8);
        let sser = expand(&[1, q - 2], &[1, -2, 1], 8);
        for m in 0..8 {
            checks += 3;
            ok &= even[m as usize] == t(2 * m) && odd[m as usize] == t(2 * m + 1) && sser[m as usize] == s(m);
            ok &= t_factor(m as u64, q) == t(m);
        }
    }
    let ctx = ctx(5, 1);
    let ring = ctx.ring().clone();
    for q in [3i64, 5, 7, 9, 11, 13] {
        let c = |v: i64| CycFrac::from_int(ring.from_int(v));
        let inv_q2 = CycFrac::new(ring.from_int(1), ring.from_int(q * q)).unwrap();
        let cube = CycFrac::new(ring.from_int((q - 1).pow(3)), ring.from_int(q.pow(3))).unwrap();
        let (ue, uo) = u_polys(q, &inv_q2).unwrap();
        let (ue1, uo1) = u_polys(q, &c(1)).unwrap();
        checks += 4;
        ok &= ue.equals(&cube) && uo.equals(&cube.try_mul(&c(-q)).unwrap());
        ok &= ue1.equals(&c(2 * (q - 1) * (q - 1))) && uo1.equals(&c(2 * (q - 1) * (q - 1)));
    }
    Outcome::new(ok, format!("{checks} exact coefficient and special-value checks"))
}

fn c11_weil() -> Outcome {
    let (mut cases, mut literal, mut adjusted, mut even) = (0, 0, 0, 0);
    for p in [5, 7] {
        let ctx = ctx(p, 1);
        for d in 2..=3 {
            for k in 0..monic_count(ctx.field(), d).unwrap() {
                let r = monic_unrank(ctx.field(), d, k).unwrap();
                for chi in ctx.characters().into_iter().skip(1) {
                    let rep = ctx.lseries_analyze(&r, chi, None).unwrap();
                    if !rep.primitive || !(2..=3).contains(&rep.deg_conductor) {
                        continue;
                    }
                    let w = rep.weil.as_ref().expect("non-principal");
                    cases += 1;
                    even += rep.even as u64;
                    literal += (w.literal_holds == Some(true)) as u64;
                    adjusted += (w.holds == Some(true)) as u64;
                }
            }
        }
    }
    Outcome::new(
        literal == cases,
        format!(
            "{cases} primitive symbols ({even} even); every inverse root on |z| = sqrt q for {literal}; allowing the trivial root 1 of even symbols, {adjusted}"
        ),
    )
    .require("Weil bound holds once the trivial root of even symbols is set aside", adjusted == cases && cases > 0)
}

fn c12_determinism() -> Outcome {
    let base = ctx(7, 1);
    let grid = AevwGrid { keep_details: true, ..AevwGrid::standard(4) };
    let a = verify::aevw(&base.with_threads(1).unwrap(), &grid).unwrap().to_json();
    let b = verify::aevw(&base.with_threads(8).unwrap(), &grid).unwrap().to_json();
    let base3 = ctx(3, 1);
    let (_, spec, _, _) = series_cases().into_iter().find(|c| c.2 == "t-odd").unwrap();
    let s1 = verify::series_analyze(&base3.with_threads(1).unwrap(), &spec).unwrap().to_string();
    let s8 = verify::series_analyze(&base3.with_threads(8).unwrap(), &spec).unwrap().to_string();
    Outcome::new(a == b && s1 == s8, format!("criterion 1 report ({} bytes) and criterion 8 report ({} bytes) compared", a.len(), s1.len()))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compares against the committed file, or rewrites it when asked.
fn golden(name: &str, value: &Value) -> bool {
    let path = golden_dir().join(name);
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("SELBERG_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return true;
    }
    match std::fs::read_to_string(&path) {
        Ok(committed) => committed == text,
        Err(_) => false,
    }
}

fn lseries_golden() -> Value {
    let mut records = Vec::new();
    let mut verdicts: BTreeMap<&str, u64> = BTreeMap::new();
    for p in [3, 5] {
        let ctx = ctx(p, 1);
        let f = ctx.field();
        let rs = [
            Poly::from_ints(f, &[0, -1, 1]),
            Poly::from_ints(f, &[0, 1, -2, 1]),
            Poly::from_ints(f, &[0, 0, -1, 1]),
            Poly::from_ints(f, &[0, 0, 1, -2, 1]),
            Poly::from_ints(f, &[1, 0, 1]),
            Poly::from_ints(f, &[1, 2, 0, 1]),
            Poly::from_ints(f, &[0, 0, 0, 0, 1]),
            Poly::from_ints(f, &[1, 0, 2, 0, 1]),
        ];
        for r in &rs {
            for chi in ctx.characters().into_iter().skip(1) {
                let rep = ctx.lseries_analyze(r, chi, None).unwrap();
                let mut bump = |k: &'static str, ok: bool| {
                    *verdicts.entry(k).or_insert(0) += ok as u64;
                };
                if let Some(pf) = &rep.principal_forms {
                    bump("principal: product form (1-qT) prod(1-T^deg pi) holds", pf.product_matches);
                    bump("principal: quotient form (1-qT) / prod(1-T^deg pi) holds", pf.quotient_matches);
                    bump("principal cases", true);
                } else {
                    bump("non-principal cases", true);
                    bump("a_i vanish from deg r0 (degree deg r0 - 1)", rep.a_vanishes_from == Some(rep.deg_conductor));
                    bump("a_i vanish from deg rad(r) (degree deg rad(r) - 1)", rep.a_vanishes_from == Some(rep.deg_modulus));
                    if rep.primitive {
                        bump("primitive cases", true);
                        bump("primitive: Weil bound, trivial root allowed", rep.weil.as_ref().and_then(|w| w.holds) == Some(true));
                        bump("primitive: Weil bound, literal", rep.weil.as_ref().and_then(|w| w.literal_holds) == Some(true));
                    }
                }
                bump("sum a_i T^i times sum b_i T^i = 1", rep.product_is_one);
                if let Some(j) = rep.a1_jacobi {
                    bump("family cases", true);
                    bump("family: a_1 is the Jacobi sum", j);
                }
                records.push(json!({
                    "q": ctx.q(),
                    "r": rep.r,
                    "chi1": rep.chi1,
                    "modulus": rep.modulus,
                    "conductor": rep.conductor,
                    "principal": rep.principal,
                    "primitive": rep.primitive,
                    "even": rep.even,
                    "a_vanishes_from": rep.a_vanishes_from,
                    "b_vanishes_from": rep.b_vanishes_from,
                    "product_is_one": rep.product_is_one,
                    "principal_forms": rep.principal_forms,
                    "weil_holds": rep.weil.as_ref().and_then(|w| w.holds),
                    "weil_literal_holds": rep.weil.as_ref().and_then(|w| w.literal_holds),
                    "a1_jacobi": rep.a1_jacobi,
                }));
            }
        }
    }
    json!({ "schema": verify::SCHEMA, "verdicts": verdicts, "cases": records })
}

fn anderson_golden() -> Value {
    let mut records = Vec::new();
    let mut verdicts: BTreeMap<String, u64> = BTreeMap::new();
    for p in [3, 5] {
        let ctx = ctx(p, 1);
        let rep = verify::anderson(&ctx, 3, true).unwrap();
        for (k, v) in &rep.counters {
            *verdicts.entry(k.clone()).or_insert(0) += v;
        }
        for d in &rep.details {
            records.push(json!({
                "q": ctx.q(),
                "f": d["f"],
                "chi": d["chi"],
                "conductor": d["conductor"],
                "lhs_degree": d["lhs_degree"],
                "log_q_ratio_deg_f": d["log_q_ratio_deg_f"],
                "log_q_ratio_deg_fo": d["log_q_ratio_deg_fo"],
                "matches_deg_f": d["matches_deg_f"],
                "matches_deg_fo": d["matches_deg_fo"],
            }));
        }
    }
    json!({ "schema": verify::SCHEMA, "verdicts": verdicts, "cases": records })
}

fn c13_golden() -> Outcome {
    let l = lseries_golden();
    let a = anderson_golden();
    let lv = &l["verdicts"];
    let note = format!(
        "principal series: quotient form {}/{}, product form {}/{}; Anderson comparison: {}",
        lv["principal: quotient form (1-qT) / prod(1-T^deg pi) holds"],
        lv["principal cases"],
        lv["principal: product form (1-qT) prod(1-T^deg pi) holds"],
        lv["principal cases"],
        a["verdicts"]
    );
    let ok_l = golden("lseries.json", &l);
    let ok_a = golden("anderson.json", &a);
    Outcome::new(ok_l && ok_a, note)
}

fn main() -> ExitCode {
    // Stated-claim status each criterion is pinned to.
    let pinned = [
        (1, false),
        (2, true),
        (3, true),
        (4, true),
        (5, true),
        (6, false),
        (7, true),
        (8, false),
        (9, true),
        (10, false),
        (11, false),
        (12, true),
        (13, true),
    ];
    let names = [
        "closed form vs brute force",
        "Pellet's formula",
        "Davenport-Hasse global Gauss sum",
        "Gauss/Jacobi identities",
        "magnitudes of tau and A",
        "transformation formula",
        "stability identities",
        "generating series forms",
        "T/S/U summation identities",
        "van Wamelen value and periodicity",
        "Weil magnitudes",
        "determinism across worker counts",
        "L-series and Anderson golden reports",
    ];
    let mut results: BTreeMap<u32, (Outcome, f64)> = BTreeMap::new();
    let t = Instant::now();
    let (c1, c10) = c1_aevw();
    results.insert(1, (c1, t.elapsed().as_secs_f64()));
    results.insert(10, (c10, 0.0));
    let mut timed = |id: u32, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.insert(id, (o, t.elapsed().as_secs_f64()));
    };
    timed(2, &c2_pellet);
    timed(3, &c3_dh);
    timed(4, &c4_gauss_jacobi);
    timed(5, &c5_magnitudes);
    timed(6, &c6_theorem1);
    timed(7, &c7_stability);
    timed(8, &c8_series);
    timed(9, &c9_summation);
    timed(11, &c11_weil);
    timed(12, &c12_determinism);
    timed(13, &c13_golden);

    let mut ok = true;
    for (id, expect) in pinned {
        let (o, secs) = &results[&id];
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {}: {status} [{secs:.1}s] {}", names[id as usize - 1], o.note);
        if o.pass != expect {
            println!("    unexpected: pinned {}", if expect { "PASS" } else { "FAIL" });
            ok = false;
        }
        for (what, held) in &o.required {
            if !held {
                println!("    required but failed: {what}");
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
