//! Oriented knot diagrams as PD codes.
//!
//! A crossing is a 4-tuple `(a,b,c,d)` of edge labels listed counterclockwise,
//! starting from the incoming under-strand: the under-strand enters on `a` and
//! leaves on `c`. Edge labels run `1..=2n` consecutively along the orientation.

mod gauss;
pub(crate) mod graph;
mod ops;
mod reidemeister;
pub mod samples;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

pub use gauss::{gauss_diagram, Chord, GaussDiagram};
pub use graph::{End, Graph};
pub use ops::{connected_sum, mirror, simplify};
pub use reidemeister::{reidemeister, reidemeister_sites, MoveKind, Side, Site};

/// A crossing as `[a, b, c, d]`.
pub type Crossing = [u32; 4];

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ValidationError {
    #[error("label {label} appears {count} times (expected 2)")]
    LabelCount { label: u32, count: usize },
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("crossing {index} X({}): under-strand exit is not the successor of its entry", fmt_tuple(.tuple))]
    UnderStrand { index: usize, tuple: Crossing },
    #[error("crossing {index} X({}): over-strand labels are not consecutive", fmt_tuple(.tuple))]
    OverStrand { index: usize, tuple: Crossing },
    #[error("traversal is inconsistent: label {label} is entered {count} times")]
    Traversal { label: u32, count: usize },
    #[error("diagram is not planar: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
}

fn fmt_tuple(t: &Crossing) -> String {
    format!("{},{},{},{}", t[0], t[1], t[2], t[3])
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        Self { crossings: Vec::new() }
    }

    /// Build and validate.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        let d = Self { crossings };
        d.validate().map_err(Error::Invalid)?;
        Ok(d)
    }

    pub(crate) fn from_raw(crossings: Vec<Crossing>) -> Self {
        Self { crossings }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    fn n_labels(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub(crate) fn succ(&self, label: u32) -> u32 {
        if label == self.n_labels() {
            1
        } else {
            label + 1
        }
    }

    /// Slot (1 or 3) holding the incoming over-strand.
    pub(crate) fn over_in_slot(&self, i: usize) -> u8 {
        let [a, b, _, d] = self.crossings[i];
        if self.crossings.len() == 1 {
            // both orders are successors mod 2; the entered labels must differ
            return if d != a { 3 } else { 1 };
        }
        if b == self.succ(d) {
            3
        } else {
            1
        }
    }

    /// +1 when the over-strand runs d -> b, -1 when it runs b -> d.
    pub fn sign(&self, i: usize) -> i32 {
        if self.over_in_slot(i) == 3 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i32> {
        (0..self.crossings.len()).map(|i| self.sign(i)).collect()
    }

    pub fn writhe(&self) -> i32 {
        self.signs().iter().sum()
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<ValidationError>> {
        let mut errors = Vec::new();
        let max = self.n_labels();
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for t in &self.crossings {
            for &l in t {
                if l == 0 || l > max {
                    errors.push(ValidationError::LabelOutOfRange { label: l, max });
                }
                *counts.entry(l).or_default() += 1;
            }
        }
        let mut labels: Vec<_> = counts.iter().filter(|(_, &c)| c != 2).collect();
        labels.sort();
        for (&label, &count) in labels {
            if label >= 1 && label <= max {
                errors.push(ValidationError::LabelCount { label, count });
            }
        }
        for l in 1..=max {
            if !counts.contains_key(&l) {
                errors.push(ValidationError::LabelCount { label: l, count: 0 });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        for (index, &tuple) in self.crossings.iter().enumerate() {
            let [a, b, c, d] = tuple;
            if c != self.succ(a) {
                errors.push(ValidationError::UnderStrand { index, tuple });
            }
            if b != self.succ(d) && d != self.succ(b) {
                errors.push(ValidationError::OverStrand { index, tuple });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        // every label is entered exactly once: at `a` or at the over-strand entry
        let mut entered: HashMap<u32, usize> = HashMap::new();
        for (i, t) in self.crossings.iter().enumerate() {
            *entered.entry(t[0]).or_default() += 1;
            *entered.entry(t[self.over_in_slot(i) as usize]).or_default() += 1;
        }
        for l in 1..=max {
            let count = entered.get(&l).copied().unwrap_or(0);
            if count != 1 {
                errors.push(ValidationError::Traversal { label: l, count });
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        if !self.crossings.is_empty() {
            let g = Graph::from_diagram(self);
            let faces = g.faces().len();
            let expected = self.crossings.len() + 2;
            if faces != expected {
                errors.push(ValidationError::NonPlanar { faces, expected });
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Relabel so that `start` becomes label 1.
    fn relabeled_from(&self, start: u32) -> Vec<Crossing> {
        let n = self.n_labels();
        let shift = |l: u32| (l + n - start) % n + 1;
        let mut out: Vec<Crossing> = self.crossings.iter().map(|t| t.map(shift)).collect();
        out.sort();
        out
    }

    /// Canonical representative: the basepoint (and crossing order) that gives
    /// the lexicographically smallest sorted tuple list. Orientation is kept.
    pub fn canonical(&self) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let best = (1..=self.n_labels())
            .map(|s| self.relabeled_from(s))
            .min()
            .expect("nonempty");
        Self { crossings: best }
    }

    pub fn serialize(&self) -> String {
        let mut s = String::from("PD:");
        for t in &self.crossings {
            s.push_str(&format!(" X({})", fmt_tuple(t)));
        }
        s
    }

    pub fn canonical_string(&self) -> String {
        self.canonical().serialize()
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Parse a `PD:` line without validating it.
pub fn parse_pd_unchecked(text: &str) -> Result<PlanarDiagram> {
    let text = text.trim();
    let body = text.strip_prefix("PD:").ok_or_else(|| Error::Parse {
        token: text.split_whitespace().next().unwrap_or("").to_string(),
        message: "expected `PD:` prefix".into(),
    })?;
    let mut crossings = Vec::new();
    for tok in body.split_whitespace() {
        let bad = |message: &str| Error::Parse { token: tok.to_string(), message: message.into() };
        let inner = tok
            .strip_prefix("X(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected X(a,b,c,d)"))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(bad("expected four labels"));
        }
        let mut t = [0u32; 4];
        for (slot, p) in t.iter_mut().zip(&parts) {
            *slot = p.trim().parse().map_err(|_| bad("label is not a positive integer"))?;
            if *slot == 0 {
                return Err(bad("labels start at 1"));
            }
        }
        crossings.push(t);
    }
    Ok(PlanarDiagram { crossings })
}

/// Parse and validate a `PD:` line.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let d = parse_pd_unchecked(text)?;
    if let Err(errs) = d.validate() {
        // name the first offending token
        let token = match &errs[0] {
            ValidationError::LabelCount { label, .. }
            | ValidationError::LabelOutOfRange { label, .. }
            | ValidationError::Traversal { label, .. } => label.to_string(),
            ValidationError::UnderStrand { tuple, .. } | ValidationError::OverStrand { tuple, .. } => {
                format!("X({})", fmt_tuple(tuple))
            }
            ValidationError::NonPlanar { .. } => text.trim().to_string(),
        };
        return Err(Error::Parse {
            token,
            message: errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "),
        });
    }
    Ok(d)
}

impl FromStr for PlanarDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn empty_pd_is_unknot() {
        let d = parse_pd("PD:").unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.signs(), vec![-1, -1, -1]);
    }

    #[test]
    fn single_kink_is_a_valid_one_crossing_unknot() {
        // edge 1 loops from the over-exit back to the under-entry
        let d = parse_pd("PD: X(1,1,2,2)").unwrap();
        assert_eq!(d.sign(0), 1);
        let d = parse_pd("PD: X(2,1,1,2)").unwrap();
        assert_eq!(d.sign(0), -1);
    }

    #[test]
    fn inconsistent_traversal_is_rejected() {
        // over-strand enters on the same label as the under-strand
        assert!(parse_pd("PD: X(1,2,2,1) X(3,4,4,3)").is_err());
        // under exit not successor of entry
        let e = parse_pd("PD: X(1,1,1,2)").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn label_seven_once_is_rejected() {
        let d = parse_pd_unchecked("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,7,3)").unwrap();
        let errs = d.validate().unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ValidationError::LabelOutOfRange { label: 7, .. })));
    }

    #[test]
    fn malformed_token_is_named() {
        match parse_pd("PD: X(1,4,2,5) Y(3,6,4,1)") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "Y(3,6,4,1)"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_pd("PD: X(1,4,2)") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "X(1,4,2)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serialize_round_trip_is_exact() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.serialize(), TREFOIL);
        assert_eq!(parse_pd(&d.serialize()).unwrap(), d);
    }

    #[test]
    fn canonical_ignores_basepoint() {
        let d = parse_pd(TREFOIL).unwrap();
        let shifted = PlanarDiagram::new(d.relabeled_from(3)).unwrap();
        assert_eq!(d.canonical(), shifted.canonical());
    }
}
