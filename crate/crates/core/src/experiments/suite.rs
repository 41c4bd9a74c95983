use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bands::{BandDescription, CrossingKind, RouteOptions};
use crate::diagram::samples::{by_name, BASE_SET};
use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::invariants::{evaluate_on_sum, InvariantDescriptor};

use super::{add_random_chord, composite_relator, kappa_values, make_singular_with, rng_for};

pub const SUITES: [&str; 6] = ["ck-preserves", "kappa-vanishing", "relators", "lemma38", "lemma39", "structural"];

/// Attempts at drawing a description with the crossing a trial needs.
const DRAWS: usize = 60;

/// A named suite and its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub name: String,
    /// Move class for `ck-preserves`.
    pub k: usize,
    /// Checked order bound for `ck-preserves`; defaults to `k - 1`.
    pub order: Option<usize>,
    /// Singular types for `kappa-vanishing`; trials run per type.
    pub types: Vec<Vec<usize>>,
    pub max_crossings: usize,
}

impl SuiteSpec {
    pub fn new(name: &str) -> Result<Self> {
        if !SUITES.contains(&name) {
            return Err(Error::UnknownSuite(name.to_string()));
        }
        Ok(Self {
            name: name.to_string(),
            k: 3,
            order: None,
            types: vec![vec![1, 1, 1], vec![1, 2], vec![2, 2], vec![1, 3]],
            max_crossings: RouteOptions::default().max_crossings,
        })
    }

    fn opts(&self) -> RouteOptions {
        RouteOptions { max_crossings: self.max_crossings, ..RouteOptions::default() }
    }

    fn n_trials(&self, trials: usize) -> usize {
        if self.name == "kappa-vanishing" {
            trials * self.types.len()
        } else {
            trials
        }
    }
}

/// Everything needed to reproduce one failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub spec: SuiteSpec,
    pub seed: u64,
    /// Trial count of the run (per type for `kappa-vanishing`).
    pub trials: usize,
    pub trial: usize,
    /// Serialized band description, or the PD lines involved.
    pub description: String,
    /// What was compared, e.g. `empty vs full`.
    pub subset: String,
    pub invariant: String,
    pub expected: i64,
    pub got: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub spec: SuiteSpec,
    pub trials: usize,
    pub seed: u64,
    /// Sorted by trial.
    pub failures: Vec<Failure>,
    /// Suite-specific counters, such as how often an unchecked invariant moved.
    pub notes: BTreeMap<String, i64>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Structured form; wall time is left out so equal seeds give equal text.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.spec.name,
            "spec": self.spec,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed(),
            "notes": self.notes,
            "failures": self.failures,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut rows = vec![vec!["suite".to_string(), self.spec.name.clone()]];
        rows.push(vec!["trials".into(), self.trials.to_string()]);
        rows.push(vec!["seed".into(), self.seed.to_string()]);
        rows.push(vec!["failures".into(), self.failures.len().to_string()]);
        for (k, v) in &self.notes {
            rows.push(vec![k.clone(), v.to_string()]);
        }
        let mut out = table(&rows);
        if !self.failures.is_empty() {
            let mut f = vec![["trial", "subset", "invariant", "expected", "got"].map(String::from).to_vec()];
            for x in &self.failures {
                f.push(vec![x.trial.to_string(), x.subset.clone(), x.invariant.clone(), x.expected.to_string(), x.got.to_string()]);
            }
            out.push('\n');
            out.push_str(&table(&f));
        }
        out
    }
}

/// Tab-separated rows with cells padded to column width.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| if c + 1 == r.len() { s.clone() } else { format!("{s:<w$}", w = width[c]) })
            .collect();
        let _ = writeln!(out, "{}", cells.join("\t"));
    }
    out
}

#[derive(Default)]
struct Outcome {
    failures: Vec<Failure>,
    notes: Vec<(String, i64)>,
}

struct Trial<'a> {
    spec: &'a SuiteSpec,
    seed: u64,
    trials: usize,
    trial: usize,
    out: Outcome,
}

impl Trial<'_> {
    fn fail(&mut self, description: String, subset: String, invariant: &str, expected: i64, got: i64) {
        self.out.failures.push(Failure {
            spec: self.spec.clone(),
            seed: self.seed,
            trials: self.trials,
            trial: self.trial,
            description,
            subset,
            invariant: invariant.to_string(),
            expected,
            got,
        });
    }

    fn note(&mut self, key: &str, v: i64) {
        self.out.notes.push((key.to_string(), v));
    }

    /// Invariants of order at most `order` must agree on `a` and `b`; changes
    /// of every invariant are counted in the notes.
    fn compare(&mut self, bd: &str, what: &str, a: &PlanarDiagram, b: &PlanarDiagram, order: usize) -> Result<()> {
        for inv in InvariantDescriptor::all() {
            let (x, y) = (inv.evaluate(a)?, inv.evaluate(b)?);
            self.note(&format!("{}_changed", inv.name), i64::from(x != y));
            if x != y && inv.order as usize <= order {
                self.fail(bd.to_string(), what.to_string(), &inv.name, x, y);
            }
        }
        Ok(())
    }
}

fn random_base<R: Rng>(rng: &mut R) -> PlanarDiagram {
    by_name(BASE_SET.choose(rng).expect("nonempty")).expect("known sample")
}

fn ck_preserves<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let k = t.spec.k;
    let trees = crate::moves::enumerate_trees(k)?;
    let tree = &trees[t.trial % trees.len()];
    let mut bd = BandDescription::new(&random_base(rng));
    bd.attach_random_chord(crate::bands::link_model_from_tree(tree)?, rng, &t.spec.opts())?;
    let (a, b) = (bd.realize(&[])?, bd.realize(&[0])?);
    t.note(&format!("tree_{}", tree.serialize()), 1);
    let order = t.spec.order.unwrap_or(k - 1);
    t.compare(&bd.serialize(), "empty vs full", &a, &b, order)
}

fn kappa_vanishing<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let types = t.spec.types[t.trial / t.trials.max(1)].clone();
    let bd = make_singular_with(&random_base(rng), &types, rng, &t.spec.opts())?;
    let order: usize = types.iter().sum::<usize>() - 1;
    let invs: Vec<_> = InvariantDescriptor::all().into_iter().filter(|d| d.additive).collect();
    let text = bd.serialize();
    for (inv, v) in invs.iter().zip(kappa_values(&bd, &invs)?) {
        t.note(&format!("{}_nonzero", inv.name), i64::from(v != 0));
        if v != 0 && inv.order as usize <= order {
            t.fail(text.clone(), format!("kappa type {types:?}"), &inv.name, 0, v);
        }
    }
    Ok(())
}

fn relators<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let (a, b) = (random_base(rng), random_base(rng));
    let s = composite_relator(&a, &b)?;
    let text = format!("{}\n{}", a.serialize(), b.serialize());
    for inv in InvariantDescriptor::all() {
        let v = evaluate_on_sum(&inv, &s)?;
        if v != 0 {
            t.fail(text.clone(), "K1#K2 - K1 - K2".into(), &inv.name, 0, v);
        }
    }
    Ok(())
}

/// Draw descriptions until `pick` finds a usable crossing.
fn draw<R: Rng, T>(
    t: &Trial,
    rng: &mut R,
    classes: &[usize],
    pick: impl Fn(&BandDescription, &mut R) -> Result<Option<T>>,
) -> Result<(BandDescription, T)> {
    for _ in 0..DRAWS {
        let base = random_base(rng);
        let mut bd = BandDescription::new(&base);
        for &k in classes {
            add_random_chord(&mut bd, k, rng, &t.spec.opts())?;
        }
        if let Some(x) = pick(&bd, rng)? {
            return Ok((bd, x));
        }
    }
    Err(Error::Band(format!("no suitable crossing in {DRAWS} random descriptions")))
}

fn lemma38<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let k = [2, 3][t.trial % 2];
    let (bd, idx) = draw(t, rng, &[k], |bd, rng| {
        let base: Vec<usize> = bd
            .crossing_kinds(0)?
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == CrossingKind::Base)
            .map(|(i, _)| i)
            .collect();
        Ok(base.choose(rng).copied())
    })?;
    let other = bd.crossing_change_band(0, idx)?;
    let what = format!("C_{k} chord, band crossing {idx} changed");
    t.compare(&bd.serialize(), &what, &bd.realize(&[0])?, &other.realize(&[0])?, k)
}

fn lemma39<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let (j, k) = [(1, 2), (2, 2), (1, 3)][t.trial % 3];
    let (bd, idx) = draw(t, rng, &[j, k], |bd, rng| {
        let hits: Vec<usize> = bd
            .crossing_kinds(1)?
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == CrossingKind::Band { chord: 0 })
            .map(|(i, _)| i)
            .collect();
        Ok(hits.choose(rng).copied())
    })?;
    let other = bd.band_exchange(1, idx)?;
    let what = format!("C_{j} and C_{k} chords, band crossing {idx} exchanged");
    t.compare(&bd.serialize(), &what, &bd.realize(&[0, 1])?, &other.realize(&[0, 1])?, j + k - 1)
}

fn structural<R: Rng>(t: &mut Trial, rng: &mut R) -> Result<()> {
    let n = rng.gen_range(1..=3);
    let classes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let base = random_base(rng);
    let bd = make_singular_with(&base, &classes, rng, &t.spec.opts())?;
    let text = bd.serialize();
    let terms = bd.kappa_terms(crate::bands::DEFAULT_SUBSET_GUARD)?;
    let mass: i64 = terms.iter().map(|(_, s, _)| s).sum();
    if mass != 0 {
        t.fail(text.clone(), "all subsets".into(), "mass", 0, mass);
    }
    let empty = bd.realize(&[])?;
    if empty.serialize() != base.canonical().serialize() {
        t.fail(text, "empty".into(), "base", 0, 1);
    }
    Ok(())
}

fn run_trial(spec: &SuiteSpec, seed: u64, trials: usize, trial: usize) -> Outcome {
    let mut rng = rng_for(seed, trial as u64);
    let mut t = Trial { spec, seed, trials, trial, out: Outcome::default() };
    let r = match spec.name.as_str() {
        "ck-preserves" => ck_preserves(&mut t, &mut rng),
        "kappa-vanishing" => kappa_vanishing(&mut t, &mut rng),
        "relators" => relators(&mut t, &mut rng),
        "lemma38" => lemma38(&mut t, &mut rng),
        "lemma39" => lemma39(&mut t, &mut rng),
        "structural" => structural(&mut t, &mut rng),
        _ => unreachable!("suite names are checked on construction"),
    };
    if let Err(e) = r {
        t.fail(String::new(), e.to_string(), "error", 0, 1);
    }
    t.out
}

fn check_spec(spec: &SuiteSpec) -> Result<()> {
    SuiteSpec::new(&spec.name)?;
    if spec.name == "ck-preserves" && !(1..=super::MAX_CHORD_CLASS).contains(&spec.k) {
        return Err(Error::Index(format!("k = {} out of range 1..={}", spec.k, super::MAX_CHORD_CLASS)));
    }
    if spec.name == "kappa-vanishing" {
        for ty in &spec.types {
            if ty.is_empty() || ty.iter().any(|&k| !(1..=super::MAX_CHORD_CLASS).contains(&k)) {
                return Err(Error::Index(format!("bad singular type {ty:?}")));
            }
        }
    }
    Ok(())
}

/// Run `trials` seeded trials (per type for `kappa-vanishing`).
pub fn run_suite(spec: &SuiteSpec, trials: usize, seed: u64) -> Result<SuiteReport> {
    check_spec(spec)?;
    let start = Instant::now();
    let outcomes: Vec<Outcome> =
        (0..spec.n_trials(trials)).into_par_iter().map(|i| run_trial(spec, seed, trials, i)).collect();
    let mut failures = Vec::new();
    let mut notes = BTreeMap::new();
    for o in outcomes {
        failures.extend(o.failures);
        for (k, v) in o.notes {
            *notes.entry(k).or_insert(0) += v;
        }
    }
    Ok(SuiteReport { spec: spec.clone(), trials, seed, failures, notes, wall_ms: start.elapsed().as_millis() })
}

/// Result of re-running a recorded failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub reproduced: bool,
    /// `field: recorded -> recomputed` lines for every mismatch.
    pub diff: Vec<String>,
}

/// Re-run the trial behind `record` and compare.
pub fn replay(record: &Failure) -> Result<Replay> {
    check_spec(&record.spec)?;
    if record.trial >= record.spec.n_trials(record.trials) {
        return Err(Error::Index(format!("trial {} out of range", record.trial)));
    }
    let out = run_trial(&record.spec, record.seed, record.trials, record.trial);
    let same_check =
        out.failures.iter().find(|f| f.invariant == record.invariant && f.subset == record.subset).or(out.failures.first());
    let Some(now) = same_check else {
        return Ok(Replay { reproduced: false, diff: vec!["trial passes on re-run".into()] });
    };
    let mut diff = Vec::new();
    let mut cmp = |name: &str, a: String, b: String| {
        if a != b {
            diff.push(format!("{name}: {a:?} -> {b:?}"));
        }
    };
    cmp("description", record.description.clone(), now.description.clone());
    cmp("subset", record.subset.clone(), now.subset.clone());
    cmp("invariant", record.invariant.clone(), now.invariant.clone());
    cmp("expected", record.expected.to_string(), now.expected.to_string());
    cmp("got", record.got.to_string(), now.got.to_string());
    Ok(Replay { reproduced: diff.is_empty(), diff })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(SuiteSpec::new("nope"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = SuiteSpec::new("structural").unwrap();
        let a = run_suite(&spec, 6, 7).unwrap();
        let b = run_suite(&spec, 6, 7).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_tsv(), b.to_tsv());
    }

    #[test]
    fn sharpness_failures_replay() {
        // C_2 moves are not expected to keep v2; checking it anyway gives real failures
        let mut spec = SuiteSpec::new("ck-preserves").unwrap();
        spec.k = 2;
        spec.order = Some(2);
        let r = run_suite(&spec, 6, 1).unwrap();
        assert!(!r.passed());
        assert_eq!(r.notes["v2_changed"] as usize, r.failures.len());
        let rec = &r.failures[0];
        assert!(replay(rec).unwrap().reproduced);
        let mut bad = rec.clone();
        bad.got += 1;
        let rp = replay(&bad).unwrap();
        assert!(!rp.reproduced);
        assert_eq!(rp.diff.len(), 1);
    }

    #[test]
    fn small_runs_pass() {
        for name in ["ck-preserves", "relators", "lemma38", "lemma39"] {
            let r = run_suite(&SuiteSpec::new(name).unwrap(), 3, 2).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
        }
        let mut spec = SuiteSpec::new("kappa-vanishing").unwrap();
        spec.types = vec![vec![1, 2]];
        assert!(run_suite(&spec, 2, 2).unwrap().passed());
    }
}
