//! The plane picture of a band description: the base knot plus band cores,
//! each core a single net edge carrying two strands.

use std::collections::{HashSet, VecDeque};

use crate::diagram::{End, Graph, PlanarDiagram, Side};
use crate::error::{Error, Result};
use crate::moves::net::{Net, NodeKind};

use super::description::{Attach, BandSpec, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Base,
    Band { chord: usize, band: usize },
}

impl Owner {
    pub fn chord(self) -> Option<usize> {
        match self {
            Owner::Base => None,
            Owner::Band { chord, .. } => Some(chord),
        }
    }
}

/// A crossing created by a route step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepInfo {
    pub node: usize,
    pub band: usize,
    pub crossed: Owner,
}

#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub net: Net,
    owner: Vec<Vec<Owner>>,
    base: HashSet<usize>,
    /// First segment of each base edge label, as a departing (node, slot).
    seg_start: Vec<(usize, usize)>,
    start: Option<(usize, usize)>,
    pub balls: Vec<usize>,
    pub steps: Vec<Vec<StepInfo>>,
    /// Face index of each ball when it was placed.
    pub regions: Vec<usize>,
}

/// Where a band being routed currently ends.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Tip {
    pub node: usize,
    pub chord: usize,
    pub band: usize,
}

impl Skeleton {
    pub fn new(base: &PlanarDiagram) -> Self {
        let g = Graph::from_diagram(base);
        let mut owner = Vec::new();
        let (net, base_nodes, start, seg_start) = if base.n_crossings() == 0 {
            let mut net = Net::new();
            let b = net.add_node(NodeKind::Bend, 2);
            net.connect(b, 0, b, 1, 1);
            net.loops = 0;
            (net, vec![b], None, vec![(b, 0)])
        } else {
            let (net, node_of, _) = Net::from_graph(&g);
            let s = Graph::diagram_start(base).expect("valid diagram has edge 1");
            let loc = |e: End| match e {
                End::Slot(c, s) => (node_of[c as usize].unwrap(), s as usize),
                End::Port(_) => unreachable!(),
            };
            let mut seg = Vec::new();
            let mut e = s;
            loop {
                seg.push(loc(e));
                e = g.link(e).opposite();
                if e == s {
                    break;
                }
            }
            let first = loc(s);
            let nodes: Vec<usize> = node_of.iter().flatten().copied().collect();
            (net, nodes, Some(first), seg)
        };
        for v in 0..net.kind.len() {
            owner.push(vec![Owner::Base; net.deg(v)]);
        }
        Skeleton {
            net,
            owner,
            base: base_nodes.into_iter().collect(),
            seg_start,
            start,
            balls: Vec::new(),
            steps: Vec::new(),
            regions: Vec::new(),
        }
    }

    fn add_node(&mut self, kind: NodeKind, deg: usize, own: Owner) -> usize {
        let v = self.net.add_node(kind, deg);
        self.owner.push(vec![own; deg]);
        v
    }

    pub fn n_labels(&self) -> usize {
        self.seg_start.len()
    }

    /// Current segments of base edge `label` (1-based), in order.
    pub fn segments(&self, label: usize) -> Result<Vec<(usize, usize)>> {
        let &first = self
            .seg_start
            .get(label.wrapping_sub(1))
            .ok_or_else(|| Error::Band(format!("no base edge {label}")))?;
        let mut out = vec![first];
        let (mut u, mut s) = first;
        loop {
            let (v, t) = self.net.other(u, s);
            if self.base.contains(&v) {
                return Ok(out);
            }
            let next = match self.net.kind[v] {
                NodeKind::Cross { .. } => (t + 2) % 4,
                NodeKind::Junction => 2 - t,
                _ => unreachable!("base edges pass crossings and junctions only"),
            };
            (u, s) = (v, next);
            out.push((u, s));
        }
    }

    /// Start a band at a junction on a base edge segment.
    pub fn attach(&mut self, chord: usize, band: usize, at: &Attach) -> Result<Tip> {
        let segs = self.segments(at.edge)?;
        let &(u, s) = segs.get(at.offset).ok_or_else(|| {
            Error::Band(format!("edge {} has {} segments, no offset {}", at.edge, segs.len(), at.offset))
        })?;
        let (a, b) = match at.side {
            Side::Right => (0, 2),
            Side::Left => (2, 0),
        };
        let own = Owner::Band { chord, band };
        let j = self.net.subdivide(u, s, NodeKind::Junction, 3, a, b);
        self.owner.push(vec![Owner::Base, own, Owner::Base]);
        let t = self.add_node(NodeKind::Tip, 1, own);
        self.net.connect(j, 1, t, 0, 2);
        if chord >= self.steps.len() {
            self.steps.resize(chord + 1, Vec::new());
        }
        Ok(Tip { node: t, chord, band })
    }

    fn face_of(&self, faces: &[Vec<(usize, usize)>], v: usize, s: usize) -> usize {
        faces.iter().position(|f| f.contains(&(v, s))).expect("every half-edge lies on a face")
    }

    fn own(&self, tip: &Tip) -> Owner {
        Owner::Band { chord: tip.chord, band: tip.band }
    }

    fn crossable_in(&self, face: &[(usize, usize)], tip: &Tip) -> Vec<(usize, usize)> {
        let own = self.own(tip);
        face.iter()
            .copied()
            .filter(|&(u, s)| {
                let (v, _) = self.net.other(u, s);
                self.owner[u][s] != own && !matches!(self.net.kind[u], NodeKind::Tip) && !matches!(self.net.kind[v], NodeKind::Tip)
            })
            .collect()
    }

    /// The tip's face, walked from the tip.
    fn tip_face(&self, tip: &Tip) -> Vec<(usize, usize)> {
        let mut face = Vec::new();
        let (mut u, mut r) = (tip.node, 0);
        loop {
            face.push((u, r));
            let (w, t) = self.net.other(u, r);
            let d = self.net.deg(w);
            (u, r) = (w, (t + d - 1) % d);
            if (u, r) == (tip.node, 0) {
                return face;
            }
        }
    }

    /// Edges the tip may cross next, as departing half-edges with the tip's
    /// face on their left.
    pub fn crossable(&self, tip: &Tip) -> Vec<(usize, usize)> {
        self.crossable_in(&self.tip_face(tip), tip)
    }

    pub fn cross(&mut self, tip: &Tip, step: Step) -> Result<()> {
        let options = self.crossable(tip);
        let &(u, s) = options
            .get(step.edge)
            .ok_or_else(|| Error::Band(format!("route step {} out of {} crossable edges", step.edge, options.len())))?;
        let crossed = self.owner[u][s];
        let x = self.net.subdivide(u, s, NodeKind::Cross { h_over: !step.over }, 4, 2, 0);
        let own = self.own(tip);
        self.owner.push(vec![crossed, own, crossed, own]);
        let (pu, ps) = self.net.other(tip.node, 0);
        self.net.connect(pu, ps, x, 1, 2);
        self.net.connect(x, 3, tip.node, 0, 2);
        self.steps[tip.chord].push(StepInfo { node: x, band: tip.band, crossed });
        Ok(())
    }

    /// Ball corners on the tip's face: departing slots at the chord's ball.
    pub fn ball_corners(&self, tip: &Tip) -> Vec<usize> {
        let Some(&ball) = self.balls.get(tip.chord) else { return Vec::new() };
        self.tip_face(tip).into_iter().filter(|&(u, _)| u == ball).map(|(_, r)| r).collect()
    }

    /// Turn the tip into the chord's ball.
    pub fn place_ball(&mut self, tip: &Tip) -> Result<()> {
        if tip.chord != self.balls.len() {
            return Err(Error::Band("balls must be placed in chord order".into()));
        }
        let faces = self.net.faces();
        self.regions.push(self.face_of(&faces, tip.node, 0));
        self.net.kind[tip.node] = NodeKind::Ball(Graph::new());
        self.balls.push(tip.node);
        Ok(())
    }

    pub fn dock(&mut self, tip: &Tip, corner: usize) -> Result<()> {
        let corners = self.ball_corners(tip);
        let &r = corners
            .get(corner)
            .ok_or_else(|| Error::Band(format!("band ends away from its ball (corner {corner} of {})", corners.len())))?;
        let ball = self.balls[tip.chord];
        self.net.insert_slot(ball, r + 1);
        let own = self.own(tip);
        self.owner[ball].insert(r + 1, own);
        let (pu, ps) = self.net.other(tip.node, 0);
        self.net.connect(pu, ps, ball, r + 1, 2);
        self.net.adj[tip.node].clear();
        self.net.mult[tip.node].clear();
        self.owner[tip.node].clear();
        Ok(())
    }

    /// Route one band completely.
    pub fn add_band(&mut self, chord: usize, band: usize, spec: &BandSpec) -> Result<()> {
        let tip = self.attach(chord, band, &spec.attach)?;
        for &s in &spec.route {
            self.cross(&tip, s)?;
        }
        match (band, spec.dock) {
            (0, None) => self.place_ball(&tip),
            (0, Some(_)) => Err(Error::Band("the first band places the ball and cannot dock".into())),
            (_, Some(c)) => self.dock(&tip, c),
            (_, None) => Err(Error::Band(format!("band {band} is not docked to its ball"))),
        }
    }

    /// First step of a shortest route from the tip to a face touching the
    /// chord's ball, as an index into `crossable`.
    pub fn step_towards_ball(&self, tip: &Tip) -> Option<usize> {
        let ball = *self.balls.get(tip.chord)?;
        let faces = self.net.faces();
        let mut face_id = vec![Vec::new(); self.net.kind.len()];
        for (v, f) in face_id.iter_mut().enumerate() {
            *f = vec![usize::MAX; self.net.deg(v)];
        }
        for (i, f) in faces.iter().enumerate() {
            for &(u, s) in f {
                face_id[u][s] = i;
            }
        }
        let start = face_id[tip.node][0];
        let target = |i: usize| faces[i].iter().any(|&(u, _)| u == ball);
        if target(start) {
            return None;
        }
        let mut prev: Vec<Option<(usize, (usize, usize))>> = vec![None; faces.len()];
        let mut seen = vec![false; faces.len()];
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(f) = q.pop_front() {
            for (u, s) in self.crossable_in(&faces[f], tip) {
                let (v, t) = self.net.other(u, s);
                let g = face_id[v][t];
                if seen[g] {
                    continue;
                }
                seen[g] = true;
                prev[g] = Some((f, (u, s)));
                if target(g) {
                    let mut cur = g;
                    let first = loop {
                        let (pf, e) = prev[cur].expect("reached faces have a parent");
                        if pf == start {
                            break e;
                        }
                        cur = pf;
                    };
                    return self.crossable(tip).iter().position(|&e| e == first);
                }
                q.push_back(g);
            }
        }
        None
    }

    /// Expand with chord `i` spliced in iff `contents[i]` is given.
    pub fn realize(&self, contents: &[Option<&Graph>]) -> Result<PlanarDiagram> {
        let mut net = self.net.clone();
        for v in 0..net.kind.len() {
            for s in 0..net.deg(v) {
                if let Some(c) = self.owner[v][s].chord() {
                    let on = contents.get(c).copied().flatten().is_some();
                    net.mult[v][s] = if on { 2 } else { 0 };
                }
            }
        }
        for (c, &b) in self.balls.iter().enumerate() {
            if let Some(Some(g)) = contents.get(c) {
                net.kind[b] = NodeKind::Ball((*g).clone());
            }
        }
        let x = net.expand()?;
        let start = match self.start {
            Some((v, s)) => Some(End::slot(x.crossings[v][0], s)),
            None => x.graph.crossing_ids().next().map(|c| End::slot(c, 0)),
        };
        Ok(x.graph.to_diagram(start)?.canonical())
    }
}
