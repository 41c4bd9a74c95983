//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use ckmoves::diagram::{connected_sum, reidemeister, reidemeister_sites, samples, MoveKind, PlanarDiagram};
use ckmoves::experiments::{run_suite, SuiteReport, SuiteSpec};
use ckmoves::invariants::{conway_a2_oracle, fingerprint, jones_expansion, kauffman_bracket, v2, v3};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const TOTAL_LIMIT: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn knot(name: &str) -> PlanarDiagram {
    samples::by_name(name).expect("known sample")
}

fn anchors() -> Check {
    let want = [("unknot", Some(0), None), ("3_1", Some(1), Some(1)), ("4_1", Some(-1), Some(0)), ("3_1m", None, Some(-1))];
    for (name, a2, a3) in want {
        let d = knot(name);
        if let Some(a2) = a2 {
            ensure(v2(&d) == a2, || format!("v2({name}) = {}, want {a2}", v2(&d)))?;
        }
        if let Some(a3) = a3 {
            ensure(v3(&d) == a3, || format!("v3({name}) = {}, want {a3}", v3(&d)))?;
        }
    }
    Ok("6 anchor values".into())
}

fn oracle_equivalence() -> Check {
    let set = samples::oracle_set();
    for (name, d) in &set {
        let a2 = conway_a2_oracle(d).map_err(|e| e.to_string())?;
        ensure(v2(d) == a2, || format!("{name}: v2 {} vs a2 {a2}", v2(d)))?;
        let x = jones_expansion(d, 3).map_err(|e| e.to_string())?;
        let r = |n: i64| Ratio::from(n as i128);
        let want = [r(1), r(0), r(-3 * v2(d)), r(6 * v3(d))];
        ensure(x == want, || format!("{name}: expansion {x:?} vs {want:?}"))?;
    }
    Ok(format!("{} knots up to 12 crossings", set.len()))
}

fn reidemeister_fuzz() -> Check {
    const KINDS: [MoveKind; 5] = [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let names = ["3_1", "4_1", "5_2", "6_2"];
    let mut moves = 0;
    for name in names {
        let mut d = knot(name);
        let fp = fingerprint(&d).map_err(|e| e.to_string())?;
        while moves < 250 * (names.iter().position(|n| *n == name).unwrap() + 1) {
            let kind = if d.n_crossings() >= 14 && rng.gen_bool(0.7) {
                *[MoveKind::R1Minus, MoveKind::R2Minus, MoveKind::R3].choose(&mut rng).unwrap()
            } else {
                *KINDS.choose(&mut rng).unwrap()
            };
            let Some(&site) = reidemeister_sites(&d, kind).choose(&mut rng) else { continue };
            d = reidemeister(&d, kind, site).map_err(|e| format!("{kind:?} at {site:?}: {e}"))?;
            moves += 1;
            let now = fingerprint(&d).map_err(|e| e.to_string())?;
            ensure(now == fp, || format!("{name}: fingerprint changed after move {moves}: {}", d.serialize()))?;
        }
    }
    Ok(format!("{moves} moves"))
}

fn suite(name: &str, k: Option<usize>, order: Option<usize>, trials: usize) -> Result<SuiteReport, String> {
    let mut spec = SuiteSpec::new(name).map_err(|e| e.to_string())?;
    if let Some(k) = k {
        spec.k = k;
    }
    spec.order = order;
    run_suite(&spec, trials, SEED).map_err(|e| e.to_string())
}

fn no_failures(r: &SuiteReport, label: &str) -> Result<(), String> {
    ensure(r.passed(), || {
        let f = &r.failures[0];
        format!("{label}: {} failures, first trial {} {} expected {} got {}", r.failures.len(), f.trial, f.invariant, f.expected, f.got)
    })
}

fn note(r: &SuiteReport, key: &str) -> i64 {
    r.notes.get(key).copied().unwrap_or(0)
}

fn ck_moves() -> Check {
    let r3 = suite("ck-preserves", Some(3), None, 100)?;
    no_failures(&r3, "k=3")?;
    let r4 = suite("ck-preserves", Some(4), None, 100)?;
    no_failures(&r4, "k=4")?;
    let r2 = suite("ck-preserves", Some(2), None, 20)?;
    no_failures(&r2, "k=2")?;
    let sharp = note(&r2, "v2_changed");
    ensure(sharp >= 1, || "no C_2 trial changed v2".into())?;
    Ok(format!(
        "k=3 and k=4: 100 trials each, 0 failures; C_2 changed v2 in {sharp}/20; C_3 changed v3 in {}/100",
        note(&r3, "v3_changed")
    ))
}

fn kappa_vanishing() -> Check {
    let r = suite("kappa-vanishing", None, None, 20)?;
    no_failures(&r, "kappa")?;
    Ok(format!("20 per type over {:?}, 0 failures", r.spec.types))
}

fn relators() -> Check {
    let r = suite("relators", None, None, 20)?;
    no_failures(&r, "relators")?;
    Ok("20 relators, v2 and v3 vanish".into())
}

fn structural() -> Check {
    let r = suite("structural", None, None, 100)?;
    no_failures(&r, "structural")?;
    Ok("100 descriptions: mass 0, empty realization equals base".into())
}

fn band_lemmas() -> Check {
    let a = suite("lemma38", None, None, 50)?;
    no_failures(&a, "crossing change band")?;
    let b = suite("lemma39", None, None, 50)?;
    no_failures(&b, "band exchange")?;
    Ok("50 trials each, 0 failures".into())
}

fn bracket_speed() -> Check {
    let d = connected_sum(&knot("10_124"), &knot("b12"));
    ensure(d.n_crossings() <= 22, || format!("{} crossings", d.n_crossings()))?;
    let t = Instant::now();
    kauffman_bracket(&d).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    ensure(el < Duration::from_secs(2), || format!("bracket took {el:?}"))?;
    Ok(format!("{}-crossing bracket in {el:?}", d.n_crossings()))
}

fn main() {
    let start = Instant::now();
    let checks: [(&str, fn() -> Check, Duration); 8] = [
        ("invariant anchors", anchors, Duration::from_secs(1)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(30)),
        ("reidemeister fuzz", reidemeister_fuzz, Duration::from_secs(60)),
        ("C_k-moves preserve lower orders", ck_moves, Duration::from_secs(180)),
        ("kappa vanishing", kappa_vanishing, Duration::from_secs(180)),
        ("composite relators", relators, TOTAL_LIMIT),
        ("structural", structural, TOTAL_LIMIT),
        ("band lemmas", band_lemmas, TOTAL_LIMIT),
    ];
    let mut failed = 0;
    let mut report = |n: usize, name: &str, res: Check, el: Duration, limit: Duration| {
        let res = res.and_then(|m| if el < limit { Ok(m) } else { Err(format!("{m}; took {el:?}, limit {limit:?}")) });
        match res {
            Ok(m) => println!("criterion {n} PASS {name}: {m} ({:.2} s)", el.as_secs_f64()),
            Err(m) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {m} ({:.2} s)", el.as_secs_f64());
            }
        }
    };
    for (i, (name, f, limit)) in checks.into_iter().enumerate() {
        let t = Instant::now();
        let res = f();
        report(i + 1, name, res, t.elapsed(), limit);
    }
    let t = Instant::now();
    let res = bracket_speed().map(|m| format!("{m}; whole run {:.1} s", start.elapsed().as_secs_f64()));
    let res = res.and_then(|m| if start.elapsed() < TOTAL_LIMIT { Ok(m) } else { Err(format!("{m} over {TOTAL_LIMIT:?}")) });
    report(9, "timing", res, t.elapsed(), TOTAL_LIMIT);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
