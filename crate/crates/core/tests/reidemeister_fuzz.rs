use ckmoves::diagram::{reidemeister, reidemeister_sites, samples, MoveKind, PlanarDiagram};
use ckmoves::invariants::{jones, v2, v3};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [MoveKind; 5] = [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];

/// A random applicable move, biased toward shrinking once the diagram is big.
fn random_move(d: &PlanarDiagram, rng: &mut ChaCha8Rng, cap: usize) -> PlanarDiagram {
    loop {
        let kind = if d.n_crossings() >= cap && rng.gen_bool(0.7) {
            *[MoveKind::R1Minus, MoveKind::R2Minus, MoveKind::R3].choose(rng).unwrap()
        } else {
            *KINDS.choose(rng).unwrap()
        };
        let sites = reidemeister_sites(d, kind);
        if let Some(&site) = sites.choose(rng) {
            return reidemeister(d, kind, site).unwrap_or_else(|e| panic!("{kind:?} at {site:?}: {e}"));
        }
    }
}

#[test]
fn thousand_moves_keep_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = ["3_1", "4_1", "5_2"];
    let per_knot = 1000 / start.len() + 1;
    let mut total = 0;
    for name in start {
        let d0 = samples::by_name(name).unwrap();
        let (a2, a3, j) = (v2(&d0), v3(&d0), jones(&d0).unwrap());
        let mut d = d0;
        for step in 0..per_knot {
            d = random_move(&d, &mut rng, 14);
            assert_eq!((v2(&d), v3(&d)), (a2, a3), "{name} step {step}: {}", d.serialize());
            if step % 25 == 0 {
                assert_eq!(jones(&d).unwrap(), j, "{name} step {step}");
            }
            total += 1;
        }
    }
    assert!(total >= 1000);
}

#[test]
fn every_listed_site_applies() {
    let d = samples::by_name("5_2").unwrap();
    for kind in KINDS {
        for site in reidemeister_sites(&d, kind) {
            let e = reidemeister(&d, kind, site).unwrap();
            assert_eq!(v2(&e), v2(&d), "{kind:?} {site:?}");
        }
    }
}
