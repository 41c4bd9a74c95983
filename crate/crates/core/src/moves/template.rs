use std::collections::HashMap;

use crate::diagram::{End, Graph, PlanarDiagram};
use crate::error::{Error, Result};
use crate::invariants::LaurentPolynomial;

use super::tangle::{link_bracket, TangleDiagram};
use super::tree::UniTrivalentTree;

/// A local move: two tangles on the same boundary points whose arcs
/// correspond one to one with equal endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMoveTemplate {
    pub t1: TangleDiagram,
    pub t2: TangleDiagram,
    /// Arc `i` of `t1` corresponds to arc `pairing[i]` of `t2`.
    pub pairing: Vec<usize>,
    pub k: usize,
    pub source_tree: Option<UniTrivalentTree>,
    /// Arc of `t1` doubled at each step, starting from the crossing change.
    pub genealogy: Vec<usize>,
}

impl LocalMoveTemplate {
    /// Pair the arcs of two tangles by their endpoints.
    pub fn new(t1: TangleDiagram, t2: TangleDiagram, k: usize) -> Result<Self> {
        if t1.n_ports() != t2.n_ports() {
            return Err(Error::Index(format!("boundaries differ: {} vs {} ports", t1.n_ports(), t2.n_ports())));
        }
        let (a1, a2) = (t1.arcs(), t2.arcs());
        if a1.len() != k + 1 || a2.len() != k + 1 {
            return Err(Error::Index(format!("a C_{k} move needs {} arcs, got {} and {}", k + 1, a1.len(), a2.len())));
        }
        let pairing = a1
            .iter()
            .map(|a| a2.iter().position(|b| b == a))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Index("arcs of the two tangles end at different ports".into()))?;
        Ok(Self { t1, t2, pairing, k, source_tree: None, genealogy: Vec::new() })
    }

    pub fn n_components(&self) -> usize {
        self.pairing.len()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.t1.arcs()
    }

    pub fn inverse(&self) -> Self {
        let mut pairing = vec![0; self.pairing.len()];
        for (i, &j) in self.pairing.iter().enumerate() {
            pairing[j] = i;
        }
        Self { t1: self.t2.clone(), t2: self.t1.clone(), pairing, ..self.clone() }
    }

    /// True iff the source tree has diameter `k`.
    pub fn is_one_branched(&self) -> Result<bool> {
        let t = self.source_tree.as_ref().ok_or_else(|| Error::Tree("template has no source tree".into()))?;
        Ok(t.diameter() == self.k)
    }

    /// Corresponding pairs whose deletion leaves the two tangles with
    /// different closures. Empty for a Brunnian move.
    pub fn brunnian_failures(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.n_components() {
            let a = self.t1.delete_arc(i)?;
            let b = self.t2.delete_arc(self.pairing[i])?;
            if closure_signature(&a)? != closure_signature(&b)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn map_both(&self, f: impl Fn(&TangleDiagram) -> Result<TangleDiagram>) -> Result<Self> {
        let mut m = Self::new(f(&self.t1)?, f(&self.t2)?, self.k)?;
        m.source_tree = self.source_tree.clone();
        m.genealogy = self.genealogy.clone();
        Ok(m)
    }

    /// Brackets of both tangles under every planar closure.
    pub fn signature(&self) -> Result<Vec<(LaurentPolynomial, LaurentPolynomial)>> {
        Ok(closure_signature(&self.t1)?.into_iter().zip(closure_signature(&self.t2)?).collect())
    }

    /// Text form: a header line, the source tree if any, then both tangles.
    pub fn serialize(&self) -> String {
        let gen = if self.genealogy.is_empty() {
            "-".to_string()
        } else {
            self.genealogy.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
        };
        let mut out = format!("TEMPLATE k={} genealogy={gen}\n", self.k);
        if let Some(t) = &self.source_tree {
            out.push_str(&format!("{}\n", t.serialize()));
        }
        out.push_str(&format!("T1 {}\nT2 {}\n", self.t1.serialize(), self.t2.serialize()));
        out
    }

    /// Replace the crossing at index `site` of `d` by the other tangle of
    /// this 4-ended move, if the crossing matches one side up to rotation.
    /// Returns the new diagram and the index of the replaced site in it.
    pub fn apply_at_crossing(&self, d: &PlanarDiagram, site: usize) -> Result<(PlanarDiagram, Vec<usize>)> {
        if self.t1.n_ports() != 4 {
            return Err(Error::Site("only 4-ended moves apply at a crossing".into()));
        }
        if site >= d.n_crossings() {
            return Err(Error::Site(format!("no crossing {site}")));
        }
        let g = Graph::from_diagram(d);
        let local = TangleDiagram::crossing(g.under(site) == 1);
        let replacement = (0..4).find_map(|r| {
            if self.t1.rotate(r) == local {
                Some(self.t2.rotate(r))
            } else if self.t2.rotate(r) == local {
                Some(self.t1.rotate(r))
            } else {
                None
            }
        });
        let t = replacement.ok_or_else(|| Error::Site(format!("crossing {site} matches neither side")))?;
        splice(&g, site, &t, Graph::diagram_start(d))
    }
}

fn splice(g: &Graph, c: usize, t: &TangleDiagram, start: Option<End>) -> Result<(PlanarDiagram, Vec<usize>)> {
    let ext: Vec<End> = (0..4).map(|s| g.link(End::slot(c, s))).collect();
    if ext.iter().any(|e| e.crossing() == Some(c)) {
        return Err(Error::Site(format!("crossing {c} is a kink")));
    }
    let start = match start {
        Some(End::Slot(x, s)) if x as usize == c => Some(ext[s as usize].opposite()),
        s => s,
    };
    let mut out = g.clone();
    out.kill_crossing(c);
    let (coff, targets) = out.absorb_open(&t.graph);
    for (i, &tg) in targets.iter().enumerate() {
        match tg {
            End::Slot(..) => out.set_link(ext[i], tg),
            End::Port(j) if i < j as usize => out.set_link(ext[i], ext[j as usize]),
            End::Port(_) => {}
        }
    }
    let map = out.compact();
    let start = start.map(|e| match e {
        End::Slot(x, s) => End::slot(map[x as usize].expect("start survives"), s as usize),
        p => p,
    });
    let fresh = map[coff..].iter().flatten().copied().collect();
    Ok((out.to_diagram(start)?, fresh))
}

/// Non-crossing perfect matchings of `n` points on a circle.
pub fn planar_closures(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(pts: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if pts.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in (1..pts.len()).step_by(2) {
            for inner in go(&pts[1..j]) {
                for outer in go(&pts[j + 1..]) {
                    let mut m = vec![(pts[0], pts[j])];
                    m.extend(inner.iter().chain(&outer));
                    out.push(m);
                }
            }
        }
        out
    }
    let pts: Vec<usize> = (0..n).collect();
    go(&pts)
}

fn closure_signature(t: &TangleDiagram) -> Result<Vec<LaurentPolynomial>> {
    planar_closures(t.n_ports()).iter().map(|c| link_bracket(&t.closure(c))).collect()
}

/// The crossing change: a positive crossing against a negative one.
pub fn c1_template() -> LocalMoveTemplate {
    LocalMoveTemplate::new(TangleDiagram::crossing(true), TangleDiagram::crossing(false), 1).expect("crossings pair up")
}

/// Double corresponding pair `pair` (an arc index of `t1`) on both sides.
pub fn double_template(m: &LocalMoveTemplate, pair: usize) -> Result<LocalMoveTemplate> {
    if pair >= m.n_components() {
        return Err(Error::Index(format!("template has {} pairs, no pair {pair}", m.n_components())));
    }
    let mut out = LocalMoveTemplate::new(m.t1.double_arc(pair)?, m.t2.double_arc(m.pairing[pair])?, m.k + 1)?;
    out.genealogy = m.genealogy.clone();
    out.genealogy.push(pair);
    Ok(out)
}

/// The move assigned to a tree: the crossing change for the final edge,
/// then one doubling per removed leaf pair. Leaf `a` takes the copy at the
/// lower end of the doubled arc.
pub fn move_from_tree(tree: &UniTrivalentTree) -> Result<LocalMoveTemplate> {
    let ((l0, l1), steps) = tree.doubling_plan()?;
    let mut m = c1_template();
    // leaf -> lower port of its arc
    let mut low: HashMap<usize, usize> = HashMap::from([(l0, 0), (l1, 1)]);
    for (v, a, b) in steps {
        let arcs = m.arcs();
        let p = low.remove(&v).expect("plan names a current leaf");
        let arc = arcs.iter().position(|&(x, _)| x == p).expect("leaf has an arc");
        let q = arcs[arc].1;
        m = double_template(&m, arc)?;
        debug_assert!(m.arcs().contains(&(p, p + 1)) && m.arcs().contains(&(q + 1, q + 2)));
        for x in low.values_mut() {
            *x += usize::from(*x > p) + usize::from(*x > q);
        }
        low.insert(a, p);
        low.insert(b, q + 1);
    }
    m.source_tree = Some(tree.clone());
    Ok(m)
}

/// How one move was carried onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    /// Boundary half twists `(port, under)`, applied in order.
    pub twists: Vec<(usize, u8)>,
    pub rotation: usize,
    pub inverted: bool,
}

/// Search for boundary half twists (up to `depth`), a rotation and possibly
/// inversion carrying `a` to a move with the same closure signature as `b`.
/// Equal signatures are necessary for equivalence, not sufficient.
pub fn closure_match(a: &LocalMoveTemplate, b: &LocalMoveTemplate, depth: usize) -> Result<Option<Match>> {
    if a.t1.n_ports() != b.t1.n_ports() {
        return Ok(None);
    }
    let n = a.t1.n_ports();
    let target = b.signature()?;
    let target_inv: Vec<_> = target.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
    let mut layer = vec![(a.clone(), Vec::new())];
    for d in 0..=depth {
        for (m, twists) in &layer {
            for r in 0..n {
                let sig = m.map_both(|t| Ok(t.rotate(r)))?.signature()?;
                for (inverted, want) in [(false, &target), (true, &target_inv)] {
                    if &sig == want {
                        return Ok(Some(Match { twists: twists.clone(), rotation: r, inverted }));
                    }
                }
            }
        }
        if d == depth {
            break;
        }
        let mut next = Vec::new();
        for (m, twists) in &layer {
            for p in 0..n - 1 {
                for under in [0u8, 1] {
                    if twists.last() == Some(&(p, 1 - under)) {
                        continue;
                    }
                    let mut w = twists.clone();
                    w.push((p, under));
                    next.push((m.map_both(|t| t.twist_boundary(p, under))?, w));
                }
            }
        }
        layer = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::invariants::fingerprint;
    use crate::moves::tree::enumerate_trees;

    #[test]
    fn c1_shape() {
        let m = c1_template();
        let text = m.serialize();
        assert!(text.starts_with("TEMPLATE k=1 genealogy=-\nT1 TANGLE: "), "{text}");
        assert_eq!(m.n_components(), 2);
        assert_eq!(m.k, 1);
        assert!(m.brunnian_failures().unwrap().is_empty());
    }

    #[test]
    fn c1_is_its_own_inverse() {
        let m = c1_template();
        assert_eq!(m.inverse().inverse(), m);
        let found = closure_match(&m.inverse(), &m, 0).unwrap().expect("a rotation carries one onto the other");
        assert!(!found.inverted);
    }

    #[test]
    fn c1_unknots_the_trefoil() {
        let t = parse_pd("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let (u, site) = c1_template().apply_at_crossing(&t, 0).unwrap();
        assert_eq!(fingerprint(&u).unwrap(), fingerprint(&PlanarDiagram::unknot()).unwrap());
        let (back, _) = c1_template().inverse().apply_at_crossing(&u, site[0]).unwrap();
        assert_eq!(fingerprint(&back).unwrap(), fingerprint(&t).unwrap());
    }

    #[test]
    fn doubling_adds_a_component() {
        let c2 = double_template(&c1_template(), 0).unwrap();
        assert_eq!((c2.k, c2.n_components()), (2, 3));
        let c3 = double_template(&c2, 1).unwrap();
        assert_eq!((c3.k, c3.n_components()), (3, 4));
        assert_eq!(c3.genealogy, vec![0, 1]);
        assert!(double_template(&c2, 3).is_err());
    }

    #[test]
    fn tree_moves_are_brunnian() {
        for k in 1..=4 {
            for tree in enumerate_trees(k).unwrap() {
                let m = move_from_tree(&tree).unwrap();
                assert_eq!(m.k, k);
                assert_eq!(m.n_components(), k + 1);
                assert_eq!(m.genealogy.len(), k - 1);
                assert_eq!(m.t1.n_ports(), m.t2.n_ports());
                assert!(m.is_one_branched().unwrap());
                assert!(m.brunnian_failures().unwrap().is_empty(), "k = {k}");
            }
        }
    }

    #[test]
    fn closures_are_catalan() {
        let counts: Vec<usize> = (0..5).map(|m| planar_closures(2 * m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }
}
