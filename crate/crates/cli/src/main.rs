use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ckmoves::bands::{BandDescription, RouteOptions};
use ckmoves::diagram::{parse_pd, samples, PlanarDiagram};
use ckmoves::experiments::{composite_relator, make_singular, replay, single_chord, run_suite, table, Failure, SuiteReport, SuiteSpec};
use ckmoves::invariants::{
    conway_a2_oracle, determinant, evaluate_on_sum, fingerprint, jones_state_sum_guarded, FormalSum, InvariantDescriptor,
};
use ckmoves::moves::{enumerate_trees, move_from_tree, UniTrivalentTree};

mod config;

use config::{Config, Format};

#[derive(Parser)]
#[command(name = "ckmoves", about = "C_k-moves, band descriptions and finite-type invariants of knots")]
struct Cli {
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of every diagram in a PD file (`[name] PD: ...` per line).
    Invariants {
        file: PathBuf,
        /// Also run the state-sum and skein oracles.
        #[arg(long)]
        check: bool,
    },
    /// Generate or apply C_k-moves.
    #[command(subcommand)]
    Move(MoveCmd),
    /// Alternating sum over all chord subsets of a band description file.
    Kappa {
        file: PathBuf,
        #[arg(long)]
        guard: Option<usize>,
    },
    /// Random singular knot of a given type, as a band description.
    Singular {
        #[arg(long)]
        base: String,
        /// Chord classes, e.g. `1,2`.
        #[arg(long = "type", value_delimiter = ',', required = true)]
        types: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The composite relator `K1 # K2 - K1 - K2`.
    Relator { first: String, second: String },
    /// Run a verification suite; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Re-run a recorded failure; exit 1 if it does not reproduce exactly.
    Replay { record: PathBuf },
}

#[derive(Subcommand)]
enum MoveCmd {
    /// Template assigned to a uni-trivalent tree.
    Gen {
        /// `TREE: edges=...; leaves=...; spec=u-v`; or use `--k`.
        #[arg(long)]
        tree: Option<String>,
        /// Use the first enumerated tree with `k + 1` leaves.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Attach a C_k chord to a base knot and print both realizations.
    Apply {
        #[arg(long)]
        model: usize,
        #[arg(long)]
        base: String,
        /// Chord tree; defaults to the first enumerated tree of class k.
        #[arg(long)]
        tree: Option<String>,
        /// Band description file; the base is prepended if it has no BASE line.
        #[arg(long, conflicts_with = "seed")]
        routes: Option<PathBuf>,
        /// Draw random routes from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = RouteOptions::default().max_crossings)]
        max_crossings: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    /// Order bound checked by `ck-preserves` (default k - 1).
    #[arg(long)]
    order: Option<usize>,
    /// Singular types for `kappa-vanishing`, e.g. `1,1,1;1,2`.
    #[arg(long)]
    types: Option<String>,
    #[arg(long)]
    max_crossings: Option<usize>,
    /// Write failure records here, one JSON object per line.
    #[arg(long)]
    records: Option<PathBuf>,
}

enum Fail {
    /// Usage, input or computation error.
    Usage(String),
    /// A check ran and did not hold; the report is already printed.
    Check,
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Out = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: config: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    match run(cli.cmd, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd, cfg: &Config) -> Out {
    match cmd {
        Cmd::Invariants { file, check } => invariants(&file, check, cfg),
        Cmd::Move(MoveCmd::Gen { tree, k }) => move_gen(tree, k),
        Cmd::Move(MoveCmd::Apply { model, base, tree, routes, seed, max_crossings }) => {
            move_apply(model, &base, tree.as_deref(), routes.as_deref(), seed.unwrap_or(cfg.seed), max_crossings)
        }
        Cmd::Kappa { file, guard } => kappa(&file, guard.unwrap_or(cfg.subset_guard), cfg),
        Cmd::Singular { base, types, seed } => {
            let bd = make_singular(&load_knot(&base)?, &types, seed.unwrap_or(cfg.seed))?;
            print!("{}", bd.serialize());
            Ok(())
        }
        Cmd::Relator { first, second } => relator(&first, &second, cfg),
        Cmd::Verify(args) => verify(args, cfg),
        Cmd::Replay { record } => replay_cmd(&record),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

/// Named diagrams of a PD file; errors carry the line number.
fn read_pd_file(path: &Path) -> Result<Vec<(String, PlanarDiagram)>, Fail> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, pd) = match line.find("PD:") {
            Some(0) => (format!("line{}", no + 1), line),
            Some(i) => (line[..i].trim().to_string(), &line[i..]),
            None => return Err(Fail::Usage(format!("{}:{}: expected `[name] PD: ...`", path.display(), no + 1))),
        };
        let d = parse_pd(pd).map_err(|e| Fail::Usage(format!("{}:{}: {e}", path.display(), no + 1)))?;
        out.push((name, d));
    }
    Ok(out)
}

/// A sample name, a PD line, or the first diagram of a PD file.
fn load_knot(spec: &str) -> Result<PlanarDiagram, Fail> {
    if let Some(d) = samples::by_name(spec) {
        return Ok(d);
    }
    if spec.trim_start().starts_with("PD:") {
        return Ok(parse_pd(spec)?);
    }
    read_pd_file(Path::new(spec))?
        .into_iter()
        .next()
        .map(|(_, d)| d)
        .ok_or_else(|| Fail::Usage(format!("{spec}: no diagram")))
}

fn emit(cfg: &Config, rows: Vec<Vec<String>>, json: serde_json::Value) {
    match cfg.format {
        Format::Tsv => print!("{}", table(&rows)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json value")),
    }
}

fn invariants(path: &Path, check: bool, cfg: &Config) -> Out {
    let mut header = vec!["name", "v2", "v3", "jones", "det"];
    if check {
        header.extend(["state_sum", "a2_oracle"]);
    }
    let mut rows = vec![header.into_iter().map(String::from).collect::<Vec<_>>()];
    let mut json = Vec::new();
    let mut mismatch = false;
    for (name, d) in read_pd_file(path)? {
        let fp = fingerprint(&d)?;
        let jones = fp.jones.to_term_string("t");
        let mut row = vec![name.clone(), fp.v2.to_string(), fp.v3.to_string(), jones.clone(), fp.determinant.to_string()];
        let mut rec = serde_json::json!({"name": name, "v2": fp.v2, "v3": fp.v3, "jones": jones, "det": fp.determinant});
        if check {
            let s = ckmoves::diagram::simplify(&d);
            let ss = jones_state_sum_guarded(&s, cfg.state_sum_guard)?;
            let a2 = conway_a2_oracle(&d)?;
            let ok = ss == fp.jones && a2 == fp.v2 && determinant(&ss) == fp.determinant;
            mismatch |= !ok;
            row.push(if ss == fp.jones { "agree" } else { "DIFFER" }.into());
            row.push(a2.to_string());
            rec["state_sum_agrees"] = serde_json::json!(ss == fp.jones);
            rec["a2_oracle"] = serde_json::json!(a2);
        }
        rows.push(row);
        json.push(rec);
    }
    emit(cfg, rows, serde_json::Value::Array(json));
    if mismatch {
        return Err(Fail::Check);
    }
    Ok(())
}

fn move_gen(tree: Option<String>, k: Option<usize>) -> Out {
    let tree = match (tree, k) {
        (Some(t), None) => UniTrivalentTree::parse(&t)?,
        (None, Some(k)) => enumerate_trees(k)?.remove(0),
        _ => return Err(Fail::Usage("give exactly one of --tree and --k".into())),
    };
    let m = move_from_tree(&tree)?;
    print!("{}", m.serialize());
    println!("one-branched={}", m.is_one_branched()?);
    Ok(())
}

fn move_apply(k: usize, base: &str, tree: Option<&str>, routes: Option<&Path>, seed: u64, max_crossings: usize) -> Out {
    let base = load_knot(base)?;
    let bd = match routes {
        Some(p) => {
            let text = read(p)?;
            let text = if text.lines().any(|l| l.trim_start().starts_with("BASE")) {
                text
            } else {
                format!("BASE {}\n{text}", base.serialize())
            };
            let bd = BandDescription::parse(&text)?;
            if bd.base != base.canonical() {
                return Err(Fail::Usage("routes file is for a different base knot".into()));
            }
            if bd.chords.len() != 1 || bd.chords[0].model.k != k {
                return Err(Fail::Usage(format!("routes file must hold exactly one C_{k} chord")));
            }
            bd
        }
        None => {
            let opts = RouteOptions { max_crossings, ..RouteOptions::default() };
            let tree = match tree {
                Some(t) => UniTrivalentTree::parse(t)?,
                None => enumerate_trees(k)?.remove(0),
            };
            if tree.k() != k {
                return Err(Fail::Usage(format!("tree has {} leaves, expected {}", tree.n_leaves(), k + 1)));
            }
            single_chord(&base, &tree, seed, &opts)?
        }
    };
    for line in bd.serialize().lines() {
        println!("# {line}");
    }
    println!("empty {}", bd.realize(&[])?.serialize());
    println!("full {}", bd.realize(&[0])?.serialize());
    Ok(())
}

fn subset_label(p: &[usize]) -> String {
    let inner: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn sum_rows(s: &FormalSum) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["coeff".to_string(), "v2".into(), "v3".into(), "jones".into(), "representative".into()]];
    for (fp, c, d) in s.terms() {
        rows.push(vec![c.to_string(), fp.v2.to_string(), fp.v3.to_string(), fp.jones.to_term_string("t"), d.serialize()]);
    }
    rows
}

fn evaluations(s: &FormalSum) -> Result<Vec<(String, i64)>, Fail> {
    InvariantDescriptor::all().into_iter().map(|inv| Ok((inv.name.clone(), evaluate_on_sum(&inv, s)?))).collect()
}

fn kappa(path: &Path, guard: usize, cfg: &Config) -> Out {
    let bd = BandDescription::parse(&read(path)?)?;
    let terms = bd.kappa_terms(guard)?;
    let sum = bd.kappa_guarded(guard)?;
    let evals = evaluations(&sum)?;
    match cfg.format {
        Format::Tsv => {
            let mut rows = vec![vec!["subset".to_string(), "sign".into(), "diagram".into()]];
            for (p, sign, d) in &terms {
                rows.push(vec![subset_label(p), format!("{sign:+}"), d.serialize()]);
            }
            let mut out = table(&rows);
            let _ = writeln!(out, "\nmerged");
            out.push_str(&table(&sum_rows(&sum)));
            let _ = writeln!(out, "\nevaluations");
            out.push_str(&table(&evals.iter().map(|(n, v)| vec![n.clone(), v.to_string()]).collect::<Vec<_>>()));
            print!("{out}");
        }
        Format::Json => {
            let t: Vec<_> = terms
                .iter()
                .map(|(p, s, d)| serde_json::json!({"subset": p, "sign": s, "diagram": d.serialize()}))
                .collect();
            let e: serde_json::Map<_, _> = evals.iter().map(|(n, v)| (n.clone(), serde_json::json!(v))).collect();
            let j = serde_json::json!({"terms": t, "merged": sum.to_json(), "evaluations": e});
            println!("{}", serde_json::to_string_pretty(&j).expect("json value"));
        }
    }
    Ok(())
}

fn relator(a: &str, b: &str, cfg: &Config) -> Out {
    let sum = composite_relator(&load_knot(a)?, &load_knot(b)?)?;
    let evals = evaluations(&sum)?;
    let mut rows = sum_rows(&sum);
    rows.push(Vec::new());
    rows.extend(evals.iter().map(|(n, v)| vec![n.clone(), v.to_string()]));
    let e: serde_json::Map<_, _> = evals.iter().map(|(n, v)| (n.clone(), serde_json::json!(v))).collect();
    emit(cfg, rows, serde_json::json!({"sum": sum.to_json(), "evaluations": e}));
    Ok(())
}

fn parse_types(s: &str) -> Result<Vec<Vec<usize>>, Fail> {
    s.split(';')
        .map(|t| {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Fail::Usage(format!("bad type entry {x:?}"))))
                .collect()
        })
        .collect()
}

fn print_report(r: &SuiteReport, cfg: &Config) {
    match cfg.format {
        Format::Tsv => print!("{}", r.to_tsv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json value")),
    }
}

fn verify(a: VerifyArgs, cfg: &Config) -> Out {
    let mut spec = SuiteSpec::new(&a.suite)?;
    if let Some(k) = a.k {
        spec.k = k;
    }
    spec.order = a.order;
    if let Some(t) = &a.types {
        spec.types = parse_types(t)?;
    }
    if let Some(m) = a.max_crossings {
        spec.max_crossings = m;
    }
    let r = run_suite(&spec, a.trials, a.seed.unwrap_or(cfg.seed))?;
    print_report(&r, cfg);
    eprintln!("{} trials in {} ms", spec_trials(&r), r.wall_ms);
    if let Some(p) = &a.records {
        let mut text = String::new();
        for f in &r.failures {
            text.push_str(&serde_json::to_string(f)?);
            text.push('\n');
        }
        std::fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?;
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Fail::Check)
    }
}

fn spec_trials(r: &SuiteReport) -> usize {
    if r.spec.name == "kappa-vanishing" {
        r.trials * r.spec.types.len()
    } else {
        r.trials
    }
}

fn replay_cmd(path: &Path) -> Out {
    let text = read(path)?;
    let line = text.lines().find(|l| !l.trim().is_empty()).ok_or_else(|| Fail::Usage("empty record file".into()))?;
    let rec: Failure = serde_json::from_str(line)?;
    let r = replay(&rec)?;
    if r.reproduced {
        println!("reproduced: trial {} of {} ({} {} expected {} got {})", rec.trial, rec.spec.name, rec.subset, rec.invariant, rec.expected, rec.got);
        Ok(())
    } else {
        println!("not reproduced");
        for d in &r.diff {
            println!("  {d}");
        }
        Err(Fail::Check)
    }
}
