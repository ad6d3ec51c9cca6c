//! Command-line front end: one subcommand per library operation, with
//! json / tsv / human output. All field elements are reported in
//! discrete-log encoding relative to the echoed generator (`z` = zero).

use breuil_core::characters::{condition_a_solve, omega_product, GKChar, TameChar};
use breuil_core::diagram::{verify_331, check_lemmas, derive, Corruption, DiagramParams};
use breuil_core::fl::{fl_char, fl_reduce, FLRank1};
use breuil_core::rank1::{hom_exists, max_pushout, mu_fil, tst_char, validate, BrRank1};
use breuil_core::report::Report;
use breuil_core::{Error, Frame, JSet, FF};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "breuil", disable_help_subcommand = true)]
struct Cli {
    #[arg(short = 'p', long, global = true, default_value_t = 5)]
    p: i64,
    #[arg(short = 'r', long, global = true, default_value_t = 1)]
    r: usize,
    /// Coefficient-field degree; defaults to r.
    #[arg(short = 'n', long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Seed for deterministic subsampling in `sweep`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Human,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a rank-1 object and print its invariants and character.
    Classify(ClassifyArgs),
    /// Tame-character product from an exponent vector.
    Char(CharArgs),
    /// The unique class-J object with a given character.
    ClassJ(ClassJArgs),
    /// Hom existence between two rank-1 objects, with valuations.
    Hom(PairArgs),
    /// Least common over-object of two rank-1 objects.
    Max(PairArgs),
    /// All weight/J solutions of the character-matching condition.
    Weights(WeightsArgs),
    /// Rank-1 reduction from the unramified-lattice side.
    Fl(FlArgs),
    /// End-to-end nine-object diagram verification.
    Verify331(VerifyArgs),
    /// Exhaustive sweeps over (J, b, scalars) with aggregated results.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    kappa: i64,
    #[arg(long, value_delimiter = ',')]
    m: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    mu: Vec<i64>,
    /// Unit scalar, as a discrete log of the field generator.
    #[arg(long)]
    a: String,
}

#[derive(Args)]
struct CharArgs {
    #[arg(long, value_delimiter = ',')]
    c: Vec<i64>,
}

#[derive(Args)]
struct ClassJArgs {
    /// Comma-separated members of J; "-" for the empty set.
    #[arg(long)]
    j: String,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    unram: String,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    kappa: i64,
    #[arg(long, value_delimiter = ',')]
    ma: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    mua: Vec<i64>,
    #[arg(long)]
    aa: String,
    #[arg(long, value_delimiter = ',')]
    mb: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    mub: Vec<i64>,
    #[arg(long)]
    ab: String,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long)]
    t_p: i64,
    #[arg(long)]
    t_pp: i64,
    /// Also search nonzero central twists a.
    #[arg(long)]
    all_a: bool,
    /// Drop the regularity restriction on b.
    #[arg(long)]
    all_b: bool,
}

#[derive(Args)]
struct FlArgs {
    #[arg(long, value_delimiter = ',')]
    m: Vec<i64>,
    #[arg(long)]
    xbar: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    j: String,
    #[arg(long, value_delimiter = ',')]
    b: Vec<i64>,
    #[arg(long)]
    a: String,
    #[arg(long)]
    bscalar: String,
    /// Comma-separated field elements, one per index ("z" = zero).
    #[arg(long)]
    lambda: String,
    /// Test hook: inject a known defect.
    #[arg(long, value_enum, default_value_t = CorruptArg::None)]
    corrupt: CorruptArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorruptArg {
    None,
    PerturbC,
    DropLambda,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    /// Derived-exponent lemmas only (scalar-independent).
    Lemmas,
    /// Full nine-object diagram verification per point.
    Verify,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: SweepMode,
    /// Keep only this many points, selected deterministically by seed.
    #[arg(long)]
    sample: Option<usize>,
}

pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return Outcome { code: 2, output: e.to_string() },
    };
    match dispatch(&cli) {
        Ok((code, value)) => Outcome { code, output: render(&value, cli.format) },
        Err(e) => Outcome { code: 2, output: format!("error: {e}\n") },
    }
}

fn parse_ff(frame: &Frame, s: &str) -> breuil_core::Result<FF> {
    if s == "z" {
        return Ok(FF::ZERO);
    }
    let t: i64 = s.parse().map_err(|_| Error::Parse(format!("bad field element {s:?}")))?;
    Ok(frame.field.from_dlog(t.rem_euclid(frame.field.q - 1)))
}

fn parse_ff_list(frame: &Frame, s: &str) -> breuil_core::Result<Vec<FF>> {
    s.split(',').map(|t| parse_ff(frame, t.trim())).collect()
}

fn parse_jset(frame: &Frame, s: &str) -> breuil_core::Result<JSet> {
    if s == "-" || s.is_empty() {
        return Ok(JSet::new(0, frame.r));
    }
    let members: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad J member {t:?}"))))
        .collect::<breuil_core::Result<_>>()?;
    if members.iter().any(|&i| i >= frame.r) {
        return Err(Error::Parse("J member out of range".into()));
    }
    Ok(JSet::from_members(&members, frame.r))
}

fn ff_str(frame: &Frame, x: FF) -> String {
    match frame.field.dlog(x) {
        Some(t) => t.to_string(),
        None => "z".to_string(),
    }
}

fn char_json(frame: &Frame, c: &GKChar) -> Value {
    json!({ "tame_exponent": c.tame.t, "unram": ff_str(frame, c.unram) })
}

fn params_json(frame: &Frame) -> Value {
    json!({
        "p": frame.p,
        "r": frame.r,
        "n": frame.n,
        "e": frame.e,
        "field_poly": frame.field.poly,
        "generator": frame.field.generator,
    })
}

fn checks_json(rep: &Report) -> Value {
    serde_json::to_value(&rep.checks).unwrap()
}

fn wrap(frame: &Frame, inputs: Value, rep: &Report, derived: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "params": params_json(frame),
        "inputs": inputs,
        "checks": checks_json(rep),
        "derived": derived,
    })
}

fn dispatch(cli: &Cli) -> breuil_core::Result<(i32, Value)> {
    let frame = Frame::new(cli.p, cli.r, cli.n.unwrap_or(cli.r))?;
    match &cli.cmd {
        Cmd::Classify(a) => cmd_classify(&frame, a),
        Cmd::Char(a) => cmd_char(&frame, a),
        Cmd::ClassJ(a) => cmd_class_j(&frame, a),
        Cmd::Hom(a) => cmd_hom(&frame, a),
        Cmd::Max(a) => cmd_max(&frame, a),
        Cmd::Weights(a) => cmd_weights(&frame, a),
        Cmd::Fl(a) => cmd_fl(&frame, a),
        Cmd::Verify331(a) => cmd_verify331(&frame, a),
        Cmd::Sweep(a) => cmd_sweep(&frame, a, cli.seed),
    }
}

fn cmd_classify(frame: &Frame, a: &ClassifyArgs) -> breuil_core::Result<(i32, Value)> {
    let scalar = parse_ff(frame, &a.a)?;
    let x = BrRank1::new(frame, a.kappa, a.m.clone(), a.mu.clone(), scalar)?;
    let valid = validate(frame, &x);
    let mut rep = Report::new();
    rep.push("validate", valid);
    let derived = if valid {
        json!({
            "mu_fil": mu_fil(frame, &x)?,
            "char": char_json(frame, &tst_char(frame, &x)?),
        })
    } else {
        json!({})
    };
    let inputs = json!({ "kappa": a.kappa, "m": a.m, "mu": a.mu, "a": ff_str(frame, scalar) });
    Ok((if valid { 0 } else { 1 }, wrap(frame, inputs, &rep, derived)))
}

fn cmd_char(frame: &Frame, a: &CharArgs) -> breuil_core::Result<(i32, Value)> {
    if a.c.len() != frame.r {
        return Err(Error::InvalidParams("exponent vector must have length r".into()));
    }
    let t = omega_product(frame, &a.c);
    let inputs = json!({ "c": a.c });
    Ok((0, wrap(frame, inputs, &Report::new(), json!({ "tame_exponent": t.t }))))
}

fn cmd_class_j(frame: &Frame, a: &ClassJArgs) -> breuil_core::Result<(i32, Value)> {
    let j = parse_jset(frame, &a.j)?;
    let psi = GKChar::new(frame, a.t, parse_ff(frame, &a.unram)?)?;
    let x = breuil_core::rank1::class_j(frame, j, psi)?;
    let inputs = json!({ "j": j.members(), "t": psi.tame.t, "unram": ff_str(frame, psi.unram) });
    let derived = json!({
        "kappa": x.kappa,
        "m": x.m,
        "mu": x.mu,
        "a": ff_str(frame, x.a),
    });
    Ok((0, wrap(frame, inputs, &Report::new(), derived)))
}

fn parse_pair(frame: &Frame, a: &PairArgs) -> breuil_core::Result<(BrRank1, BrRank1)> {
    Ok((
        BrRank1::new(frame, a.kappa, a.ma.clone(), a.mua.clone(), parse_ff(frame, &a.aa)?)?,
        BrRank1::new(frame, a.kappa, a.mb.clone(), a.mub.clone(), parse_ff(frame, &a.ab)?)?,
    ))
}

fn pair_inputs(frame: &Frame, a: &PairArgs, xa: &BrRank1, xb: &BrRank1) -> Value {
    json!({
        "kappa": a.kappa,
        "a": { "m": xa.m, "mu": xa.mu, "a": ff_str(frame, xa.a) },
        "b": { "m": xb.m, "mu": xb.mu, "a": ff_str(frame, xb.a) },
    })
}

fn cmd_hom(frame: &Frame, a: &PairArgs) -> breuil_core::Result<(i32, Value)> {
    let (xa, xb) = parse_pair(frame, a)?;
    let v = hom_exists(frame, &xa, &xb)?;
    let derived = json!({ "exists": v.is_some(), "valuations": v });
    Ok((0, wrap(frame, pair_inputs(frame, a, &xa, &xb), &Report::new(), derived)))
}

fn cmd_max(frame: &Frame, a: &PairArgs) -> breuil_core::Result<(i32, Value)> {
    let (xa, xb) = parse_pair(frame, a)?;
    let p = max_pushout(frame, &xa, &xb)?;
    let derived = json!({
        "c": { "m": p.c.m, "mu": p.c.mu, "a": ff_str(frame, p.c.a) },
        "va": p.va,
        "vb": p.vb,
        "gamma_fil": p.gamma_fil,
    });
    Ok((0, wrap(frame, pair_inputs(frame, a, &xa, &xb), &Report::new(), derived)))
}

fn cmd_weights(frame: &Frame, a: &WeightsArgs) -> breuil_core::Result<(i32, Value)> {
    let sols = condition_a_solve(
        frame,
        TameChar { t: frame.mod_e(a.t_p) },
        TameChar { t: frame.mod_e(a.t_pp) },
        !a.all_a,
        !a.all_b,
    );
    let derived: Vec<Value> = sols
        .iter()
        .map(|(w, j)| json!({ "a": w.a, "b": w.b, "j": j.members() }))
        .collect();
    let inputs = json!({ "t_p": a.t_p, "t_pp": a.t_pp, "all_a": a.all_a, "all_b": a.all_b });
    Ok((0, wrap(frame, inputs, &Report::new(), json!({ "solutions": derived }))))
}

fn cmd_fl(frame: &Frame, a: &FlArgs) -> breuil_core::Result<(i32, Value)> {
    let d = FLRank1::new(frame, a.m.clone(), parse_ff(frame, &a.xbar)?)?;
    let c = fl_char(frame, &d)?;
    let x = fl_reduce(frame, &d)?;
    let inputs = json!({ "m": a.m, "xbar": ff_str(frame, d.xbar) });
    let derived = json!({
        "char": char_json(frame, &c),
        "reduced": { "kappa": x.kappa, "m": x.m, "mu": x.mu, "a": ff_str(frame, x.a) },
    });
    Ok((0, wrap(frame, inputs, &Report::new(), derived)))
}

fn verify_inputs(frame: &Frame, g: &DiagramParams) -> Value {
    json!({
        "j": g.j.members(),
        "b": g.b,
        "a": ff_str(frame, g.a),
        "bscalar": ff_str(frame, g.bscalar),
        "lambda": g.lambda.iter().map(|&l| ff_str(frame, l)).collect::<Vec<_>>(),
    })
}

fn derived_json(frame: &Frame, g: &DiagramParams) -> breuil_core::Result<Value> {
    let d = derive(frame, g)?;
    Ok(json!({
        "mu_p": d.mu_p, "mu_pp": d.mu_pp, "n": d.nn, "s": d.ss, "r": d.rr,
        "c_p": d.c_p, "c_pp": d.c_pp, "g_p": d.g_p, "g_pp": d.g_pp,
        "fil_p": d.fil_p, "nu_p": d.nu_p, "fil_pp": d.fil_pp, "nu_pp": d.nu_pp,
        "display_notes": d.display_notes(frame),
    }))
}

fn cmd_verify331(frame: &Frame, a: &VerifyArgs) -> breuil_core::Result<(i32, Value)> {
    let g = DiagramParams::new(
        frame,
        parse_jset(frame, &a.j)?,
        a.b.clone(),
        parse_ff(frame, &a.a)?,
        parse_ff(frame, &a.bscalar)?,
        parse_ff_list(frame, &a.lambda)?,
    )?;
    let corruption = match a.corrupt {
        CorruptArg::None => Corruption::None,
        CorruptArg::PerturbC => Corruption::PerturbCPrime,
        CorruptArg::DropLambda => Corruption::DropLambdaMatching,
    };
    let rep = verify_331(frame, &g, corruption)?;
    let code = if rep.all_pass() { 0 } else { 1 };
    let derived = derived_json(frame, &g)?;
    Ok((code, wrap(frame, verify_inputs(frame, &g), &rep, derived)))
}

/// One regular-b / J / scalar / lambda grid point of a sweep.
#[derive(Clone)]
struct SweepPoint {
    j: JSet,
    b: Vec<i64>,
    a: FF,
    bscalar: FF,
    lambda: Vec<FF>,
}

fn sweep_points(frame: &Frame, mode: SweepMode) -> Vec<SweepPoint> {
    let r = frame.r;
    let one = frame.field.one();
    let gen = frame.field.from_dlog(1);
    let mut b_tuples = vec![vec![]];
    for _ in 0..r {
        b_tuples = b_tuples
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                (2..=frame.p - 2).map(move |b| {
                    let mut t2 = t.clone();
                    t2.push(b);
                    t2
                })
            })
            .collect();
    }
    let mut points = Vec::new();
    for bits in 0..(1u64 << r) {
        let j = JSet::new(bits, r);
        for b in &b_tuples {
            if mode == SweepMode::Lemmas {
                points.push(SweepPoint { j, b: b.clone(), a: one, bscalar: one, lambda: vec![FF::ZERO; r] });
                continue;
            }
            for &a in &[one, gen] {
                for &bs in &[one, gen] {
                    // lambda supported on each subset of J
                    let members = j.members();
                    for sub in 0..(1u64 << members.len()) {
                        let mut lam = vec![FF::ZERO; r];
                        for (k, &i) in members.iter().enumerate() {
                            if (sub >> k) & 1 == 1 {
                                lam[i] = one;
                            }
                        }
                        points.push(SweepPoint { j, b: b.clone(), a, bscalar: bs, lambda: lam });
                    }
                }
            }
        }
    }
    points
}

fn cmd_sweep(frame: &Frame, a: &SweepArgs, seed: u64) -> breuil_core::Result<(i32, Value)> {
    let mut points = sweep_points(frame, a.mode);
    if points.len() > 1_000_000 {
        return Err(Error::InvalidParams(format!("sweep too large: {} points", points.len())));
    }
    if let Some(k) = a.sample {
        // deterministic subsample: keep a seed-driven selection in order
        let mut state = seed ^ 0x9e3779b97f4a7c15;
        let mut keep: Vec<usize> = (0..points.len()).collect();
        for i in (1..keep.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            keep.swap(i, (state >> 33) as usize % (i + 1));
        }
        keep.truncate(k.min(points.len()));
        keep.sort_unstable();
        points = keep.into_iter().map(|i| points[i].clone()).collect();
    }
    let results: Vec<breuil_core::Result<(bool, String)>> = points
        .par_iter()
        .map(|pt| {
            let g = DiagramParams::new(frame, pt.j, pt.b.clone(), pt.a, pt.bscalar, pt.lambda.clone())?;
            let (pass, detail) = match a.mode {
                SweepMode::Lemmas => {
                    let d = derive(frame, &g)?;
                    let rep = check_lemmas(frame, &g, &d);
                    (rep.all_pass(), rep.first_failure().map(|c| c.name.clone()).unwrap_or_default())
                }
                SweepMode::Verify => {
                    let rep = verify_331(frame, &g, Corruption::None)?;
                    (rep.all_pass(), rep.first_failure().map(|c| c.name.clone()).unwrap_or_default())
                }
            };
            let lam: Vec<String> = pt.lambda.iter().map(|&l| ff_str(frame, l)).collect();
            let witness = format!(
                "J={:?} b={:?} a={} bscalar={} lambda={:?}{}",
                pt.j.members(),
                pt.b,
                ff_str(frame, pt.a),
                ff_str(frame, pt.bscalar),
                lam,
                if detail.is_empty() { String::new() } else { format!(" first_failure={detail}") },
            );
            Ok((pass, witness))
        })
        .collect();
    let mut rep = Report::new();
    let mut failures = 0usize;
    for (i, res) in results.into_iter().enumerate() {
        let (pass, witness) = res?;
        if !pass {
            failures += 1;
        }
        rep.push_witness(format!("point.{i:05}"), pass, witness);
    }
    let derived = json!({ "points": rep.checks.len(), "failures": failures });
    let inputs = json!({
        "mode": match a.mode { SweepMode::Lemmas => "lemmas", SweepMode::Verify => "verify" },
        "sample": a.sample,
        "seed": seed,
    });
    let code = if failures == 0 { 0 } else { 1 };
    Ok((code, wrap(frame, inputs, &rep, derived)))
}

fn render(value: &Value, fmt: Format) -> String {
    match fmt {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).unwrap()),
        Format::Tsv => {
            let mut out = String::from("name\tindex\tpass\twitness\n");
            if let Some(checks) = value["checks"].as_array() {
                for c in checks {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        c["name"].as_str().unwrap_or(""),
                        c["index"].as_u64().map(|i| i.to_string()).unwrap_or_default(),
                        c["pass"].as_bool().unwrap_or(false),
                        c["witness"].as_str().unwrap_or(""),
                    ));
                }
            }
            out
        }
        Format::Human => {
            let mut out = String::new();
            let mut total = 0usize;
            let mut failed = 0usize;
            if let Some(checks) = value["checks"].as_array() {
                for c in checks {
                    total += 1;
                    let pass = c["pass"].as_bool().unwrap_or(false);
                    if !pass {
                        failed += 1;
                    }
                    out.push_str(&format!(
                        "{} {}{}{}\n",
                        if pass { "  ok " } else { "FAIL " },
                        c["name"].as_str().unwrap_or(""),
                        c["index"].as_u64().map(|i| format!(" [{i}]")).unwrap_or_default(),
                        c["witness"].as_str().map(|w| format!("  {w}")).unwrap_or_default(),
                    ));
                }
            }
            if total > 0 {
                out.push_str(&format!("{} checks, {} failed\n", total, failed));
            }
            if !value["derived"].is_null() && value["derived"] != json!({}) {
                out.push_str(&format!("derived: {}\n", serde_json::to_string(&value["derived"]).unwrap()));
            }
            out
        }
    }
}
