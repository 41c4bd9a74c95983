use std::fmt::Write as _;

use rayon::prelude::*;

use crate::diagram::{parse_pd, PlanarDiagram, Side};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, FormalSum};

use super::model::LinkModel;
use super::skeleton::{Owner, Skeleton};

/// Largest number of chords `kappa` accepts by default.
pub const DEFAULT_SUBSET_GUARD: usize = 12;

/// Where a band meets the base knot: segment `offset` of base edge `edge`
/// (segments are cut by earlier junctions and crossings), leaving on `side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attach {
    pub edge: usize,
    pub offset: usize,
    pub side: Side,
}

/// Cross edge number `edge` of the current face, counted along the face from
/// the band's end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandSpec {
    pub attach: Attach,
    pub route: Vec<Step>,
    /// Ball corner to dock at; the first band places the ball instead.
    pub dock: Option<usize>,
}

/// A link model with its bands. The first band's end becomes the ball; the
/// others dock at ball corners. Circle `i` of the model goes to the `i`-th
/// band counterclockwise around the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chord {
    pub model: LinkModel,
    /// Face index of the ball, as recorded when the chord was attached.
    pub ball: usize,
    pub bands: Vec<BandSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandDescription {
    pub base: PlanarDiagram,
    pub chords: Vec<Chord>,
}

/// Kind of a crossing made by a band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    Base,
    Band { chord: usize },
}

impl BandDescription {
    pub fn new(base: &PlanarDiagram) -> Self {
        Self { base: base.canonical(), chords: Vec::new() }
    }

    pub(crate) fn skeleton(&self) -> Result<Skeleton> {
        let mut sk = Skeleton::new(&self.base);
        for (c, chord) in self.chords.iter().enumerate() {
            if chord.bands.len() != chord.model.n_circles() {
                return Err(Error::Band(format!(
                    "chord {c} has {} bands for {} circles",
                    chord.bands.len(),
                    chord.model.n_circles()
                )));
            }
            for (b, spec) in chord.bands.iter().enumerate() {
                sk.add_band(c, b, spec)?;
            }
            if sk.regions[c] != chord.ball {
                return Err(Error::Band(format!("chord {c}: ball lies in face {} not {}", sk.regions[c], chord.ball)));
            }
        }
        Ok(sk)
    }

    /// Append a chord; the ball region is taken from the routes.
    pub fn attach_chord(&mut self, model: LinkModel, bands: Vec<BandSpec>) -> Result<()> {
        let mut sk = self.skeleton()?;
        let c = self.chords.len();
        if bands.len() != model.n_circles() {
            return Err(Error::Band(format!("{} bands for {} circles", bands.len(), model.n_circles())));
        }
        for (b, spec) in bands.iter().enumerate() {
            sk.add_band(c, b, spec)?;
        }
        self.chords.push(Chord { model, ball: sk.regions[c], bands });
        Ok(())
    }

    pub fn n_chords(&self) -> usize {
        self.chords.len()
    }

    pub fn realize(&self, subset: &[usize]) -> Result<PlanarDiagram> {
        let sk = self.skeleton()?;
        self.realize_with(&sk, subset)
    }

    fn realize_with(&self, sk: &Skeleton, subset: &[usize]) -> Result<PlanarDiagram> {
        let mut contents = vec![None; self.chords.len()];
        for &i in subset {
            let chord = self.chords.get(i).ok_or_else(|| Error::Index(format!("no chord {i}")))?;
            contents[i] = Some(&chord.model.alpha.graph);
        }
        sk.realize(&contents)
    }

    /// Every subset with its sign and realization, subsets as bit masks in
    /// increasing order.
    pub fn kappa_terms(&self, guard: usize) -> Result<Vec<(Vec<usize>, i64, PlanarDiagram)>> {
        let l = self.chords.len();
        if l > guard {
            return Err(Error::Guard { what: "chords in kappa", limit: guard, got: l });
        }
        let sk = self.skeleton()?;
        (0u32..1 << l)
            .into_par_iter()
            .map(|mask| {
                let subset: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
                let sign = if subset.len().is_multiple_of(2) { 1 } else { -1 };
                let d = self.realize_with(&sk, &subset)?;
                Ok((subset, sign, d))
            })
            .collect()
    }

    /// The alternating sum over all subsets of chords.
    pub fn kappa(&self) -> Result<FormalSum> {
        self.kappa_guarded(DEFAULT_SUBSET_GUARD)
    }

    pub fn kappa_guarded(&self, guard: usize) -> Result<FormalSum> {
        let terms = self.kappa_terms(guard)?;
        let fps: Vec<_> = terms.par_iter().map(|(_, _, d)| fingerprint(d)).collect::<Result<_>>()?;
        let mut sum = FormalSum::new();
        for ((_, sign, d), fp) in terms.iter().zip(fps) {
            sum.add_keyed(fp, d, *sign)?;
        }
        Ok(sum)
    }

    /// Kinds of the crossings made by chord `i`'s routes, in route order.
    pub fn crossing_kinds(&self, i: usize) -> Result<Vec<CrossingKind>> {
        let sk = self.skeleton()?;
        let steps = sk.steps.get(i).ok_or_else(|| Error::Index(format!("no chord {i}")))?;
        Ok(steps
            .iter()
            .map(|s| match s.crossed {
                Owner::Base => CrossingKind::Base,
                Owner::Band { chord, .. } => CrossingKind::Band { chord },
            })
            .collect())
    }

    fn toggle(&self, i: usize, index: usize) -> Result<Self> {
        let mut out = self.clone();
        let mut k = index;
        for band in &mut out.chords[i].bands {
            if k < band.route.len() {
                band.route[k].over = !band.route[k].over;
                return Ok(out);
            }
            k -= band.route.len();
        }
        Err(Error::Index(format!("chord {i} has no crossing {index}")))
    }

    /// Switch a crossing between a band of chord `i` and the base knot.
    pub fn crossing_change_band(&self, i: usize, index: usize) -> Result<Self> {
        match self.crossing_kinds(i)?.get(index) {
            Some(CrossingKind::Base) => self.toggle(i, index),
            Some(_) => Err(Error::Band(format!("crossing {index} of chord {i} is not with the base knot"))),
            None => Err(Error::Index(format!("chord {i} has no crossing {index}"))),
        }
    }

    /// Switch a crossing between a band of chord `i` and a band of another chord.
    pub fn band_exchange(&self, i: usize, index: usize) -> Result<Self> {
        match self.crossing_kinds(i)?.get(index) {
            Some(CrossingKind::Band { chord }) if *chord != i => self.toggle(i, index),
            Some(_) => Err(Error::Band(format!("crossing {index} of chord {i} is not with another chord"))),
            None => Err(Error::Index(format!("chord {i} has no crossing {index}"))),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("BASE {}\n", self.base.serialize());
        for chord in &self.chords {
            let gen = if chord.model.genealogy.is_empty() {
                "-".to_string()
            } else {
                chord.model.genealogy.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(out, "CHORD k={} genealogy={} ball=f{}", chord.model.k, gen, chord.ball);
            for (n, b) in chord.bands.iter().enumerate() {
                let side = match b.attach.side {
                    Side::Left => 'L',
                    Side::Right => 'R',
                };
                let route = if b.route.is_empty() {
                    "-".to_string()
                } else {
                    b.route
                        .iter()
                        .map(|s| format!("{}{}", if s.over { 'o' } else { 'u' }, s.edge))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let _ = write!(out, "band {n}: attach={}@{}{} route={route}", b.attach.edge, b.attach.offset, side);
                if let Some(d) = b.dock {
                    let _ = write!(out, " dock={d}");
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut base = None;
        let mut chords: Vec<Chord> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |m: &str| Error::Parse { token: format!("line {}: {line}", no + 1), message: m.to_string() };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(pd) = line.strip_prefix("BASE ") {
                base = Some(parse_pd(pd)?);
            } else if let Some(rest) = line.strip_prefix("CHORD ") {
                let mut k = None;
                let mut gen = None;
                let mut ball = None;
                for kv in rest.split_whitespace() {
                    let (key, val) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                    match key {
                        "k" => k = Some(val.parse::<usize>().map_err(|_| bad("bad k"))?),
                        "genealogy" if val == "-" => gen = Some(Vec::new()),
                        "genealogy" => {
                            gen = Some(
                                val.split(',')
                                    .map(|x| x.parse::<usize>().map_err(|_| bad("bad genealogy")))
                                    .collect::<Result<Vec<_>>>()?,
                            )
                        }
                        "ball" => {
                            ball = Some(
                                val.strip_prefix('f').and_then(|x| x.parse::<usize>().ok()).ok_or_else(|| bad("bad ball"))?,
                            )
                        }
                        _ => return Err(bad("unknown chord field")),
                    }
                }
                let gen = gen.unwrap_or_default();
                let k = k.ok_or_else(|| bad("missing k"))?;
                if k != gen.len() + 1 {
                    return Err(bad("k must be one more than the number of doublings"));
                }
                let model = LinkModel::from_genealogy(&gen)?;
                chords.push(Chord { model, ball: ball.ok_or_else(|| bad("missing ball"))?, bands: Vec::new() });
            } else if let Some(rest) = line.strip_prefix("band ") {
                let chord = chords.last_mut().ok_or_else(|| bad("band before any chord"))?;
                let (n, fields) = rest.split_once(':').ok_or_else(|| bad("expected band <n>:"))?;
                if n.trim().parse::<usize>().ok() != Some(chord.bands.len()) {
                    return Err(bad("bands must be numbered in order"));
                }
                let mut attach = None;
                let mut route = None;
                let mut dock = None;
                for kv in fields.split_whitespace() {
                    let (key, val) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                    match key {
                        "attach" => {
                            let (e, rest) = val.split_once('@').ok_or_else(|| bad("attach needs edge@offset"))?;
                            let side = match rest.chars().last() {
                                Some('L') => Side::Left,
                                Some('R') => Side::Right,
                                _ => return Err(bad("attach side must be L or R")),
                            };
                            attach = Some(Attach {
                                edge: e.parse().map_err(|_| bad("bad edge"))?,
                                offset: rest[..rest.len() - 1].parse().map_err(|_| bad("bad offset"))?,
                                side,
                            });
                        }
                        "route" if val == "-" => route = Some(Vec::new()),
                        "route" => {
                            route = Some(
                                val.split(',')
                                    .map(|s| {
                                        let over = match s.chars().next() {
                                            Some('o') => true,
                                            Some('u') => false,
                                            _ => return Err(bad("route steps start with o or u")),
                                        };
                                        Ok(Step { edge: s[1..].parse().map_err(|_| bad("bad route step"))?, over })
                                    })
                                    .collect::<Result<Vec<_>>>()?,
                            )
                        }
                        "dock" => dock = Some(val.parse().map_err(|_| bad("bad dock"))?),
                        _ => return Err(bad("unknown band field")),
                    }
                }
                chord.bands.push(BandSpec {
                    attach: attach.ok_or_else(|| bad("missing attach"))?,
                    route: route.ok_or_else(|| bad("missing route"))?,
                    dock,
                });
            } else {
                return Err(bad("unrecognized line"));
            }
        }
        let bd = BandDescription { base: base.ok_or_else(|| Error::Band("missing BASE line".into()))?.canonical(), chords };
        bd.skeleton()?;
        Ok(bd)
    }
}
