use rand::Rng;

use crate::diagram::Side;
use crate::error::{Error, Result};

use super::description::{Attach, BandDescription, BandSpec, Step};
use super::model::LinkModel;
use super::skeleton::Skeleton;

#[derive(Clone, Copy, Debug)]
pub struct RouteOptions {
    /// Crossings allowed per band.
    pub max_crossings: usize,
    pub retries: usize,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self { max_crossings: 6, retries: 50 }
    }
}

fn try_chord<R: Rng>(sk: &mut Skeleton, chord: usize, circles: usize, rng: &mut R, opts: &RouteOptions) -> Result<Option<Vec<BandSpec>>> {
    let mut bands = Vec::with_capacity(circles);
    for band in 0..circles {
        let edge = rng.gen_range(1..=sk.n_labels());
        let offset = rng.gen_range(0..sk.segments(edge)?.len());
        let side = if rng.gen::<bool>() { Side::Left } else { Side::Right };
        let attach = Attach { edge, offset, side };
        let tip = sk.attach(chord, band, &attach)?;
        let mut route = Vec::new();
        let wander = if band == 0 { opts.max_crossings } else { opts.max_crossings / 2 };
        for _ in 0..rng.gen_range(0..=wander) {
            let n = sk.crossable(&tip).len();
            if n == 0 {
                break;
            }
            let step = Step { edge: rng.gen_range(0..n), over: rng.gen() };
            sk.cross(&tip, step)?;
            route.push(step);
        }
        let dock = if band == 0 {
            sk.place_ball(&tip)?;
            None
        } else {
            while let Some(edge) = sk.step_towards_ball(&tip) {
                if route.len() >= opts.max_crossings {
                    return Ok(None);
                }
                let step = Step { edge, over: rng.gen() };
                sk.cross(&tip, step)?;
                route.push(step);
            }
            let corners = sk.ball_corners(&tip).len();
            if corners == 0 {
                return Ok(None);
            }
            let d = rng.gen_range(0..corners);
            sk.dock(&tip, d)?;
            Some(d)
        };
        bands.push(BandSpec { attach, route, dock });
    }
    Ok(Some(bands))
}

/// Random bands for a new chord carrying `model`; each band crosses at most
/// `max_crossings` strands of the knot or of other bands.
pub fn random_chord<R: Rng>(bd: &BandDescription, model: &LinkModel, rng: &mut R, opts: &RouteOptions) -> Result<Vec<BandSpec>> {
    let base = bd.skeleton()?;
    for _ in 0..opts.retries {
        let mut sk = base.clone();
        if let Some(bands) = try_chord(&mut sk, bd.n_chords(), model.n_circles(), rng, opts)? {
            return Ok(bands);
        }
    }
    Err(Error::RouteGeneration(opts.retries))
}

impl BandDescription {
    /// Append a chord with random routes.
    pub fn attach_random_chord<R: Rng>(&mut self, model: LinkModel, rng: &mut R, opts: &RouteOptions) -> Result<()> {
        let bands = random_chord(self, &model, rng, opts)?;
        self.attach_chord(model, bands)
    }
}
