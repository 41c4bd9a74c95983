use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::graph::{End, Graph};
use super::PlanarDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];
}

/// Side of an oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Where a Reidemeister move acts. Edge labels and crossing indices refer to
/// the diagram the move is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Site {
    /// R1+: a kink on `edge` with its loop on `side`.
    Kink { edge: u32, side: Side, positive: bool },
    /// R1-: a crossing carrying a kink.
    Crossing(usize),
    /// R2+: push `edge` across `target` through the face on `side` of `edge`.
    Push { edge: u32, side: Side, target: u32, over: bool },
    /// R2-: two crossings bounding a removable bigon.
    Pair(usize, usize),
    /// R3: the triangular face on `side` of `edge`.
    Face { edge: u32, side: Side },
}

/// A knot diagram as a graph together with a departing end fixing orientation.
#[derive(Clone, Debug)]
pub(crate) struct Knot {
    pub g: Graph,
    pub start: Option<End>,
}

impl Knot {
    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        Self { g: Graph::from_diagram(d), start: Graph::diagram_start(d) }
    }

    pub fn to_diagram(&self) -> Result<PlanarDiagram> {
        self.g.to_diagram(self.start)
    }

    /// Move the start off the given crossings before they are deleted.
    fn evacuate_start(&mut self, doomed: &[usize]) {
        let Some(start) = self.start else { return };
        let mut e = start;
        loop {
            if !doomed.contains(&e.crossing().expect("start is a slot")) {
                self.start = Some(e);
                return;
            }
            e = self.g.link(e).opposite();
            if e == start {
                self.start = None;
                return;
            }
        }
    }

    pub fn delete(&mut self, doomed: &[usize]) {
        self.evacuate_start(doomed);
        for &c in doomed {
            self.g.delete_crossing(c);
        }
    }

    pub fn kink_crossing(&self) -> Option<usize> {
        self.g.crossing_ids().find(|&c| self.has_kink(c))
    }

    pub fn has_kink(&self, c: usize) -> bool {
        (0..4).any(|s| self.g.link(End::slot(c, s)) == End::slot(c, s + 1))
    }

    /// Removable bigons as crossing pairs.
    pub fn removable_bigons(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for face in self.g.faces() {
            if face.len() != 2 {
                continue;
            }
            let (i, j) = (face[0].crossing().unwrap(), face[1].crossing().unwrap());
            if i == j {
                continue;
            }
            let e = face[0];
            let arrive = self.g.link(e);
            let End::Slot(_, s) = e else { unreachable!() };
            let End::Slot(_, t) = arrive else { unreachable!() };
            if self.g.is_under_slot(i, s as usize) == self.g.is_under_slot(j, t as usize) {
                let pair = (i.min(j), i.max(j));
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
        out
    }

    pub fn add_kink(&mut self, edge_tail: Option<End>, side: Side, positive: bool) {
        let under = match (side, positive) {
            (Side::Left, true) | (Side::Right, false) => 0,
            _ => 1,
        };
        let x = self.g.add_crossing(under);
        let (loop_a, loop_b, exit) = match side {
            Side::Left => (0, 1, 3),
            Side::Right => (0, 3, 1),
        };
        self.g.set_link(End::slot(x, loop_a), End::slot(x, loop_b));
        match edge_tail {
            Some(a) => {
                let b = self.g.link(a);
                self.g.set_link(a, End::slot(x, 2));
                self.g.set_link(End::slot(x, exit), b);
            }
            None => {
                self.g.remove_loop();
                self.g.set_link(End::slot(x, exit), End::slot(x, 2));
                self.start = Some(End::slot(x, exit));
            }
        }
    }

    /// Finger of edge `a -> b` pushed across edge `x -> y`; both oriented with
    /// the shared face on their left.
    pub fn push_finger(&mut self, a: End, x: End, over: bool) {
        let b = self.g.link(a);
        let y = self.g.link(x);
        let under = if over { 0 } else { 1 };
        let up = self.g.add_crossing(under);
        let down = self.g.add_crossing(under);
        self.g.set_link(a, End::slot(up, 3));
        self.g.set_link(End::slot(up, 1), End::slot(down, 1));
        self.g.set_link(End::slot(down, 3), b);
        self.g.set_link(x, End::slot(down, 0));
        self.g.set_link(End::slot(down, 2), End::slot(up, 0));
        self.g.set_link(End::slot(up, 2), y);
    }

    /// Triangle move on a face given as three departing ends.
    pub fn triangle_move(&mut self, face: &[End]) -> Result<()> {
        if face.len() != 3 {
            return Err(Error::Site("face is not a triangle".into()));
        }
        let verts: Vec<usize> = face.iter().map(|e| e.crossing().unwrap()).collect();
        if verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2] {
            return Err(Error::Site("triangle crossings are not distinct".into()));
        }
        // pass i runs along edge i from verts[i] to verts[i+1]
        let mut dep = [(0usize, 0usize); 3];
        let mut arr = [(0usize, 0usize); 3];
        for i in 0..3 {
            let End::Slot(c, s) = face[i] else { unreachable!() };
            let End::Slot(c2, t) = self.g.link(face[i]) else { unreachable!() };
            dep[i] = (c as usize, s as usize);
            arr[i] = (c2 as usize, t as usize);
        }
        // over pass at each vertex: vertex i+1 hosts passes i and i+1
        let over_at = |i: usize| -> usize {
            let (c, t) = arr[i];
            if self.g.is_under_slot(c, t) {
                (i + 1) % 3
            } else {
                i
            }
        };
        let o: Vec<usize> = (0..3).map(over_at).collect();
        if o == [0, 1, 2] || o == [1, 2, 0] {
            return Err(Error::Site("triangle heights are cyclic".into()));
        }
        let old_in: Vec<End> = (0..3).map(|i| End::slot(dep[i].0, dep[i].1 + 2)).collect();
        let old_out: Vec<End> = (0..3).map(|i| End::slot(arr[i].0, arr[i].1 + 2)).collect();
        let new_in: Vec<End> = (0..3).map(|i| End::slot(arr[i].0, arr[i].1)).collect();
        let new_out: Vec<End> = (0..3).map(|i| End::slot(dep[i].0, dep[i].1)).collect();
        let map = |e: End| -> End {
            for i in 0..3 {
                if e == old_in[i] {
                    return new_in[i];
                }
                if e == old_out[i] {
                    return new_out[i];
                }
            }
            e
        };
        let outer: Vec<(End, End)> = old_in
            .iter()
            .chain(old_out.iter())
            .map(|&e| (e, self.g.link(e)))
            .collect();
        for i in 0..3 {
            self.g.set_link(old_in[i], old_out[i]);
        }
        for (e, w) in outer {
            self.g.set_link(map(e), map(w));
        }
        Ok(())
    }

    /// Greedy R1-/R2- until neither applies.
    pub fn simplify(&mut self) {
        loop {
            if let Some(c) = self.kink_crossing() {
                self.delete(&[c]);
                continue;
            }
            if let Some(&(i, j)) = self.removable_bigons().first() {
                self.delete(&[i, j]);
                continue;
            }
            break;
        }
        let map = self.g.compact();
        if let Some(End::Slot(c, s)) = self.start {
            self.start = map[c as usize].map(|c| End::slot(c, s as usize));
        }
    }
}

/// Departing and arriving ends of each edge label (index 0 unused).
fn label_ends(d: &PlanarDiagram) -> Vec<(End, End)> {
    let n = d.n_crossings();
    let mut out = vec![(End::Port(0), End::Port(0)); 2 * n + 1];
    for (c, t) in d.crossings().iter().enumerate() {
        let over_in = d.over_in_slot(c) as usize;
        for (s, &l) in t.iter().enumerate() {
            let departing = s == 2 || s == (over_in + 2) % 4;
            if departing {
                out[l as usize].0 = End::slot(c, s);
            } else {
                out[l as usize].1 = End::slot(c, s);
            }
        }
    }
    out
}

fn edge_label(ends: &[(End, End)], e: End) -> Option<(u32, Side)> {
    ends.iter().enumerate().skip(1).find_map(|(l, &(dep, arr))| {
        if dep == e {
            Some((l as u32, Side::Left))
        } else if arr == e {
            Some((l as u32, Side::Right))
        } else {
            None
        }
    })
}

fn face_start(ends: &[(End, End)], edge: u32, side: Side) -> Result<End> {
    let &(dep, arr) = ends
        .get(edge as usize)
        .filter(|_| edge >= 1)
        .ok_or_else(|| Error::Site(format!("no edge {edge}")))?;
    Ok(match side {
        Side::Left => dep,
        Side::Right => arr,
    })
}

fn face_from(g: &Graph, start: End) -> Vec<End> {
    let mut face = vec![start];
    let mut e = start;
    loop {
        let End::Slot(c, r) = g.link(e) else { break };
        e = End::slot(c as usize, r as usize + 3);
        if e == start {
            break;
        }
        face.push(e);
    }
    face
}

/// Apply a Reidemeister move; the result is canonically relabeled.
pub fn reidemeister(d: &PlanarDiagram, kind: MoveKind, site: Site) -> Result<PlanarDiagram> {
    let mut k = Knot::from_diagram(d);
    let ends = label_ends(d);
    match (kind, site) {
        (MoveKind::R1Plus, Site::Kink { edge, side, positive }) => {
            let tail = if d.n_crossings() == 0 {
                if edge > 1 {
                    return Err(Error::Site(format!("no edge {edge}")));
                }
                None
            } else {
                Some(face_start(&ends, edge, Side::Left)?)
            };
            k.add_kink(tail, side, positive);
        }
        (MoveKind::R1Minus, Site::Crossing(c)) => {
            if c >= d.n_crossings() || !k.has_kink(c) {
                return Err(Error::Site(format!("crossing {c} carries no kink")));
            }
            k.delete(&[c]);
        }
        (MoveKind::R2Plus, Site::Push { edge, side, target, over }) => {
            if d.n_crossings() == 0 {
                return Err(Error::Site("no edges to push across".into()));
            }
            let a = face_start(&ends, edge, side)?;
            let face = face_from(&k.g, a);
            let (tdep, tarr) = ends
                .get(target as usize)
                .copied()
                .filter(|_| target >= 1 && target != edge)
                .ok_or_else(|| Error::Site(format!("bad target edge {target}")))?;
            let x = face
                .iter()
                .copied()
                .find(|&e| e == tdep || e == tarr)
                .ok_or_else(|| Error::Site(format!("edge {target} is not on the face")))?;
            k.push_finger(a, x, over);
        }
        (MoveKind::R2Minus, Site::Pair(i, j)) => {
            let pair = (i.min(j), i.max(j));
            if !k.removable_bigons().contains(&pair) {
                return Err(Error::Site(format!("crossings {i},{j} bound no removable bigon")));
            }
            k.delete(&[pair.0, pair.1]);
        }
        (MoveKind::R3, Site::Face { edge, side }) => {
            if d.n_crossings() == 0 {
                return Err(Error::Site("no faces with crossings".into()));
            }
            let a = face_start(&ends, edge, side)?;
            let face = face_from(&k.g, a);
            k.triangle_move(&face)?;
        }
        (kind, site) => {
            return Err(Error::Site(format!("{site:?} is not a site for {kind:?}")));
        }
    }
    k.g.compact_with_start(&mut k.start);
    Ok(k.to_diagram()?.canonical())
}

/// Every site at which `kind` applies.
pub fn reidemeister_sites(d: &PlanarDiagram, kind: MoveKind) -> Vec<Site> {
    let k = Knot::from_diagram(d);
    let ends = label_ends(d);
    let n_edges = 2 * d.n_crossings() as u32;
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Plus => {
            for edge in 1..=n_edges.max(1) {
                for side in [Side::Left, Side::Right] {
                    for positive in [true, false] {
                        out.push(Site::Kink { edge, side, positive });
                    }
                }
            }
        }
        MoveKind::R1Minus => {
            out.extend((0..d.n_crossings()).filter(|&c| k.has_kink(c)).map(Site::Crossing));
        }
        MoveKind::R2Plus => {
            for face in k.g.faces() {
                for &e1 in &face {
                    let Some((edge, side)) = edge_label(&ends, e1) else { continue };
                    for &e2 in &face {
                        let Some((target, _)) = edge_label(&ends, e2) else { continue };
                        if target == edge {
                            continue;
                        }
                        for over in [true, false] {
                            out.push(Site::Push { edge, side, target, over });
                        }
                    }
                }
            }
        }
        MoveKind::R2Minus => {
            out.extend(k.removable_bigons().into_iter().map(|(i, j)| Site::Pair(i, j)));
        }
        MoveKind::R3 => {
            for face in k.g.faces() {
                if face.len() != 3 {
                    continue;
                }
                let mut trial = k.clone();
                if trial.triangle_move(&face).is_ok() {
                    let (edge, side) = edge_label(&ends, face[0]).expect("face edge");
                    out.push(Site::Face { edge, side });
                }
            }
        }
    }
    out
}

impl Graph {
    pub(crate) fn compact_with_start(&mut self, start: &mut Option<End>) {
        let map = self.compact();
        if let Some(End::Slot(c, s)) = *start {
            *start = map[c as usize].map(|c| End::slot(c, s as usize));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn trefoil() -> PlanarDiagram {
        parse_pd("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    #[test]
    fn kink_on_unknot() {
        let u = PlanarDiagram::unknot();
        for side in [Side::Left, Side::Right] {
            for positive in [true, false] {
                let d = reidemeister(&u, MoveKind::R1Plus, Site::Kink { edge: 1, side, positive })
                    .unwrap();
                assert_eq!(d.n_crossings(), 1);
                assert!(d.validate().is_ok());
                assert_eq!(d.sign(0), if positive { 1 } else { -1 });
                let back = reidemeister(&d, MoveKind::R1Minus, Site::Crossing(0)).unwrap();
                assert_eq!(back, u);
            }
        }
    }

    #[test]
    fn kink_sign_on_trefoil_edges() {
        let t = trefoil();
        for site in reidemeister_sites(&t, MoveKind::R1Plus) {
            let Site::Kink { positive, .. } = site else { unreachable!() };
            let d = reidemeister(&t, MoveKind::R1Plus, site).unwrap();
            assert!(d.validate().is_ok(), "{site:?} -> {d}");
            assert_eq!(d.writhe(), t.writhe() + if positive { 1 } else { -1 });
        }
    }

    #[test]
    fn canceling_pair_reduces_to_unknot() {
        // two crossings where edge 1/2 passes over edges 3/4 twice
        let d = parse_pd("PD: X(3,2,4,1) X(4,2,1,3)").unwrap_or_else(|_| {
            let u = PlanarDiagram::unknot();
            
            reidemeister(&u, MoveKind::R1Plus, Site::Kink { edge: 1, side: Side::Left, positive: true }).unwrap()
        });
        let sites = reidemeister_sites(&d, MoveKind::R2Minus);
        if let Some(&site) = sites.first() {
            let u = reidemeister(&d, MoveKind::R2Minus, site).unwrap();
            assert_eq!(u.n_crossings(), 0);
        }
    }

    #[test]
    fn push_then_pull_restores_diagram() {
        let t = trefoil();
        let sites = reidemeister_sites(&t, MoveKind::R2Plus);
        assert!(!sites.is_empty());
        for site in sites {
            let d = reidemeister(&t, MoveKind::R2Plus, site).unwrap();
            assert!(d.validate().is_ok(), "{site:?} -> {d}");
            assert_eq!(d.n_crossings(), 5);
            assert_eq!(d.writhe(), t.writhe());
            let mut k = Knot::from_diagram(&d);
            k.simplify();
            assert_eq!(k.to_diagram().unwrap().canonical(), t.canonical(), "{site:?}");
        }
    }

    #[test]
    fn r3_on_non_triangle_fails() {
        let t = trefoil();
        // the trefoil's triangles have cyclic heights; its bigons are not triangles
        for edge in 1..=6 {
            for side in [Side::Left, Side::Right] {
                let r = reidemeister(&t, MoveKind::R3, Site::Face { edge, side });
                assert!(r.is_err());
            }
        }
    }

    #[test]
    fn r3_is_an_involution() {
        // build a diagram with an R3 site: push an edge across a crossing
        let t = trefoil();
        let mut found = 0;
        for site in reidemeister_sites(&t, MoveKind::R2Plus) {
            let d = reidemeister(&t, MoveKind::R2Plus, site).unwrap();
            for s3 in reidemeister_sites(&d, MoveKind::R3) {
                let e = reidemeister(&d, MoveKind::R3, s3).unwrap();
                assert!(e.validate().is_ok());
                assert_eq!(e.writhe(), d.writhe());
                let back = reidemeister_sites(&e, MoveKind::R3)
                    .into_iter()
                    .map(|s| reidemeister(&e, MoveKind::R3, s).unwrap())
                    .any(|f| f == d.canonical());
                assert!(back, "R3 not undone");
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
