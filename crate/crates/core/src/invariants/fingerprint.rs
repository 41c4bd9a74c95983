use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{simplify, PlanarDiagram};
use crate::error::{Error, Result};

use super::jones::{determinant, jones};
use super::{v2, v3, LaurentPolynomial};

/// Invariants used as a proxy for the knot type. Equal fingerprints do not
/// imply equal knots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KnotFingerprint {
    pub jones: LaurentPolynomial,
    pub v2: i64,
    pub v3: i64,
    pub determinant: u64,
}

impl fmt::Display for KnotFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "jones={} v2={} v3={} det={}",
            self.jones.to_term_string("t"),
            self.v2,
            self.v3,
            self.determinant
        )
    }
}

impl KnotFingerprint {
    pub fn unknot() -> Self {
        Self { jones: LaurentPolynomial::one(), v2: 0, v3: 0, determinant: 1 }
    }
}

pub fn fingerprint(d: &PlanarDiagram) -> Result<KnotFingerprint> {
    let s = simplify(d);
    let j = jones(&s)?;
    Ok(KnotFingerprint { determinant: determinant(&j), jones: j, v2: v2(&s), v3: v3(&s) })
}

/// A named invariant with its Vassiliev order bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantDescriptor {
    pub name: String,
    pub order: u32,
    pub additive: bool,
}

impl InvariantDescriptor {
    pub fn v2() -> Self {
        Self { name: "v2".into(), order: 2, additive: true }
    }

    pub fn v3() -> Self {
        Self { name: "v3".into(), order: 3, additive: true }
    }

    pub fn all() -> Vec<Self> {
        vec![Self::v2(), Self::v3()]
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|d| d.name == name)
    }

    /// Value on a diagram, computed directly.
    pub fn evaluate(&self, d: &PlanarDiagram) -> Result<i64> {
        match self.name.as_str() {
            "v2" => Ok(v2(d)),
            "v3" => Ok(v3(d)),
            other => Err(Error::Index(format!("unknown invariant {other}"))),
        }
    }

    /// Registered invariants of order at most `m`.
    pub fn up_to_order(m: usize) -> Vec<Self> {
        Self::all().into_iter().filter(|d| d.order as usize <= m).collect()
    }

    pub fn value(&self, fp: &KnotFingerprint) -> Result<i64> {
        match self.name.as_str() {
            "v2" => Ok(fp.v2),
            "v3" => Ok(fp.v3),
            other => Err(Error::Index(format!("unknown invariant {other}"))),
        }
    }
}

/// Integer combination of knot classes keyed by fingerprint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<KnotFingerprint, (i64, PlanarDiagram)>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: i64,
    fingerprint: KnotFingerprint,
    representative: String,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: &PlanarDiagram, coeff: i64) -> Result<Self> {
        let mut s = Self::new();
        s.add(d, coeff)?;
        Ok(s)
    }

    pub fn add(&mut self, d: &PlanarDiagram, coeff: i64) -> Result<()> {
        let fp = fingerprint(d)?;
        self.add_keyed(fp, d, coeff)
    }

    pub fn add_keyed(&mut self, fp: KnotFingerprint, d: &PlanarDiagram, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(fp).or_insert_with(|| (0, d.canonical()));
        entry.0 = entry.0.checked_add(coeff).ok_or(Error::Overflow("formal sum"))?;
        if entry.0 == 0 {
            self.terms.retain(|_, t| t.0 != 0);
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &FormalSum) -> Result<()> {
        for (fp, (c, d)) in &other.terms {
            self.add_keyed(fp.clone(), d, *c)?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KnotFingerprint, i64, &PlanarDiagram)> {
        self.terms.iter().map(|(fp, (c, d))| (fp, *c, d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let recs: Vec<TermRecord> = self
            .terms()
            .map(|(fp, c, d)| TermRecord { coeff: c, fingerprint: fp.clone(), representative: d.serialize() })
            .collect();
        serde_json::to_value(recs).expect("formal sum serializes")
    }
}

/// Linear extension of an invariant to a formal sum.
pub fn evaluate_on_sum(inv: &InvariantDescriptor, s: &FormalSum) -> Result<i64> {
    let mut total = 0i64;
    for (fp, c, _) in s.terms() {
        let term = inv.value(fp)?.checked_mul(c).ok_or(Error::Overflow("evaluate_on_sum"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("evaluate_on_sum"))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{connected_sum, samples};

    fn k(n: &str) -> PlanarDiagram {
        samples::by_name(n).unwrap()
    }

    #[test]
    fn unknot_fingerprint() {
        assert_eq!(fingerprint(&PlanarDiagram::unknot()).unwrap(), KnotFingerprint::unknot());
    }

    #[test]
    fn trefoil_fingerprint() {
        let fp = fingerprint(&k("3_1")).unwrap();
        assert_eq!((fp.jones.len(), fp.v2, fp.v3.abs(), fp.determinant), (3, 1, 1, 3));
    }

    #[test]
    fn sums_cancel() {
        let v2 = InvariantDescriptor::v2();
        assert_eq!(evaluate_on_sum(&v2, &FormalSum::single(&PlanarDiagram::unknot(), 1).unwrap()).unwrap(), 0);
        let mut s = FormalSum::single(&k("3_1"), 1).unwrap();
        s.add(&k("3_1"), -1).unwrap();
        assert!(s.is_zero());
        let mut r = FormalSum::single(&connected_sum(&k("3_1"), &k("4_1")), 1).unwrap();
        r.add(&k("3_1"), -1).unwrap();
        r.add(&k("4_1"), -1).unwrap();
        assert_eq!(evaluate_on_sum(&v2, &r).unwrap(), 0);
        assert_eq!(evaluate_on_sum(&InvariantDescriptor::v3(), &r).unwrap(), 0);
    }
}
