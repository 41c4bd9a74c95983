//! Composite relators, singular knots of a given type, and the seeded
//! verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bands::{link_model_from_tree, BandDescription, RouteOptions, DEFAULT_SUBSET_GUARD};
use crate::diagram::{connected_sum, PlanarDiagram};
use crate::error::{Error, Result};
use crate::invariants::{FormalSum, InvariantDescriptor};
use crate::moves::enumerate_trees;

mod suite;

pub use suite::{replay, run_suite, table, Failure, Replay, SuiteReport, SuiteSpec, SUITES};

/// `K1 # K2 - K1 - K2`.
pub fn composite_relator(d1: &PlanarDiagram, d2: &PlanarDiagram) -> Result<FormalSum> {
    let mut s = FormalSum::single(&connected_sum(d1, d2), 1)?;
    s.add(d1, -1)?;
    s.add(d2, -1)?;
    Ok(s)
}

/// Largest class accepted for one chord.
pub const MAX_CHORD_CLASS: usize = 5;

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub(crate) fn add_random_chord<R: Rng>(bd: &mut BandDescription, k: usize, rng: &mut R, opts: &RouteOptions) -> Result<()> {
    if !(1..=MAX_CHORD_CLASS).contains(&k) {
        return Err(Error::Index(format!("chord class {k} out of range 1..={MAX_CHORD_CLASS}")));
    }
    let trees = enumerate_trees(k)?;
    let tree = trees.choose(rng).expect("at least one tree per class");
    bd.attach_random_chord(link_model_from_tree(tree)?, rng, opts)
}

/// A singular knot of type `types`: one chord of class `k_i` per entry,
/// with random routes drawn from `seed`.
pub fn make_singular(base: &PlanarDiagram, types: &[usize], seed: u64) -> Result<BandDescription> {
    make_singular_with(base, types, &mut ChaCha8Rng::seed_from_u64(seed), &RouteOptions::default())
}

pub fn make_singular_with<R: Rng>(base: &PlanarDiagram, types: &[usize], rng: &mut R, opts: &RouteOptions) -> Result<BandDescription> {
    let mut bd = BandDescription::new(base);
    for &k in types {
        add_random_chord(&mut bd, k, rng, opts)?;
    }
    Ok(bd)
}

/// One chord modelled on `tree`, routed at random from `seed`.
pub fn single_chord(base: &PlanarDiagram, tree: &crate::moves::UniTrivalentTree, seed: u64, opts: &RouteOptions) -> Result<BandDescription> {
    let mut bd = BandDescription::new(base);
    bd.attach_random_chord(link_model_from_tree(tree)?, &mut ChaCha8Rng::seed_from_u64(seed), opts)?;
    Ok(bd)
}

/// `inv` on the alternating sum, term by term without merging.
pub fn kappa_value(bd: &BandDescription, inv: &InvariantDescriptor) -> Result<i64> {
    kappa_values(bd, std::slice::from_ref(inv)).map(|v| v[0])
}

pub fn kappa_values(bd: &BandDescription, invs: &[InvariantDescriptor]) -> Result<Vec<i64>> {
    let terms = bd.kappa_terms(DEFAULT_SUBSET_GUARD)?;
    let mut out = vec![0i64; invs.len()];
    for (_, sign, d) in &terms {
        for (o, inv) in out.iter_mut().zip(invs) {
            *o += sign * inv.evaluate(d)?;
        }
    }
    Ok(out)
}
