//! Planar nets whose edges carry several parallel strands. Expanding a net
//! replaces every node by a small gadget of crossings.

use crate::diagram::{End, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) enum NodeKind {
    /// Slots `[E, N, W, S]`; the family on E/W crosses the family on N/S.
    Cross { h_over: bool },
    /// Slots `[x, band, y]`: the strand from `x` runs out along the band and
    /// back to `y`.
    Junction,
    /// Slots `[west, east]`, two strands each, hooked once.
    Clasp,
    /// Pass-through of any degree-2 node.
    Bend,
    /// Outer boundary of a tangle; slots in port order.
    Boundary,
    /// A tangle glued in; its ports follow the slots counterclockwise.
    Ball(Graph),
    /// Loose end of an edge still being routed.
    Tip,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Net {
    pub kind: Vec<NodeKind>,
    pub adj: Vec<Vec<(usize, usize)>>,
    pub mult: Vec<Vec<u8>>,
    pub loops: usize,
}

const NONE: (usize, usize) = (usize::MAX, usize::MAX);

#[derive(Clone, Copy, Debug)]
enum Inner {
    Slot(End),
    Term(usize),
    Final(usize),
}

pub(crate) struct Expansion {
    pub graph: Graph,
    /// Crossings created for each node.
    pub crossings: Vec<Vec<usize>>,
}

impl Net {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, kind: NodeKind, deg: usize) -> usize {
        self.kind.push(kind);
        self.adj.push(vec![NONE; deg]);
        self.mult.push(vec![0; deg]);
        self.kind.len() - 1
    }

    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn connect(&mut self, u: usize, s: usize, v: usize, t: usize, m: u8) {
        self.adj[u][s] = (v, t);
        self.adj[v][t] = (u, s);
        self.mult[u][s] = m;
        self.mult[v][t] = m;
    }

    pub fn other(&self, u: usize, s: usize) -> (usize, usize) {
        self.adj[u][s]
    }

    pub fn set_mult(&mut self, u: usize, s: usize, m: u8) {
        let (v, t) = self.adj[u][s];
        self.mult[u][s] = m;
        self.mult[v][t] = m;
    }

    /// Split the edge at `(u, s)` with a new node entered at slot `a` from the
    /// `u` side and left at slot `b`.
    pub fn subdivide(&mut self, u: usize, s: usize, kind: NodeKind, deg: usize, a: usize, b: usize) -> usize {
        let (v, t) = self.adj[u][s];
        let m = self.mult[u][s];
        let w = self.add_node(kind, deg);
        self.connect(u, s, w, a, m);
        self.connect(w, b, v, t, m);
        w
    }

    /// Open a new slot at position `pos` of node `v`, shifting later slots.
    pub fn insert_slot(&mut self, v: usize, pos: usize) {
        for s in pos..self.deg(v) {
            let (w, t) = self.adj[v][s];
            if w != usize::MAX && w != v {
                self.adj[w][t] = (v, s + 1);
            }
        }
        // self-edges of v
        for s in 0..self.deg(v) {
            let (w, t) = self.adj[v][s];
            if w == v && t >= pos {
                self.adj[v][s] = (v, t + 1);
            }
        }
        self.adj[v].insert(pos, NONE);
        self.mult[v].insert(pos, 0);
    }

    /// Net of a diagram graph: crossings become `Cross` nodes with the same
    /// slots, ports become slots of a boundary node (if any). Edges with no
    /// crossing between two ports get a bend. Returns the node of each crossing.
    pub fn from_graph(g: &Graph) -> (Net, Vec<Option<usize>>, Option<usize>) {
        let mut net = Net::new();
        let mut node_of = vec![None; g.n_slots_total()];
        for c in g.crossing_ids() {
            node_of[c] = Some(net.add_node(NodeKind::Cross { h_over: g.under(c) == 1 }, 4));
        }
        let boundary = (g.n_ports() > 0).then(|| net.add_node(NodeKind::Boundary, g.n_ports()));
        let locate = |e: End| match e {
            End::Slot(c, s) => (node_of[c as usize].unwrap(), s as usize),
            End::Port(p) => (boundary.unwrap(), p as usize),
        };
        let mut ends: Vec<End> = g.crossing_ids().flat_map(|c| (0..4).map(move |s| End::slot(c, s))).collect();
        ends.extend((0..g.n_ports()).map(|p| End::Port(p as u32)));
        for e in ends {
            let f = g.link(e);
            if e > f {
                continue;
            }
            let (u, s) = locate(e);
            let (v, t) = locate(f);
            if matches!((e, f), (End::Port(_), End::Port(_))) {
                let b = net.add_node(NodeKind::Bend, 2);
                net.connect(u, s, b, 0, 1);
                net.connect(b, 1, v, t, 1);
            } else {
                net.connect(u, s, v, t, 1);
            }
        }
        net.loops = g.loops();
        (net, node_of, boundary)
    }

    /// Faces as cycles of departing `(node, slot)` pairs, face on the left.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: Vec<Vec<bool>> = self.adj.iter().map(|a| vec![false; a.len()]).collect();
        let mut out = Vec::new();
        for v in 0..self.kind.len() {
            for s in 0..self.deg(v) {
                if seen[v][s] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut u, mut r) = (v, s);
                while !seen[u][r] {
                    seen[u][r] = true;
                    face.push((u, r));
                    let (w, t) = self.adj[u][r];
                    let d = self.deg(w);
                    (u, r) = (w, (t + d - 1) % d);
                }
                out.push(face);
            }
        }
        out
    }

    pub fn expand(&self) -> Result<Expansion> {
        let mut g = Graph::new();
        let mut inner: Vec<Inner> = Vec::new();
        let mut terms: Vec<Vec<Vec<usize>>> = Vec::with_capacity(self.kind.len());
        let mut crossings: Vec<Vec<usize>> = Vec::with_capacity(self.kind.len());
        let mut n_final = 0;
        for v in 0..self.kind.len() {
            let m = &self.mult[v];
            let mut t: Vec<Vec<usize>> = Vec::with_capacity(m.len());
            for &k in m {
                let ids = (inner.len()..inner.len() + k as usize).collect();
                inner.extend(std::iter::repeat_n(Inner::Term(usize::MAX), k as usize));
                t.push(ids);
            }
            let mut made = Vec::new();
            let pass = |inner: &mut Vec<Inner>, a: usize, b: usize| {
                inner[a] = Inner::Term(b);
                inner[b] = Inner::Term(a);
            };
            match &self.kind[v] {
                NodeKind::Cross { h_over } => {
                    let (mh, mv) = (m[0] as usize, m[1] as usize);
                    if m[2] as usize != mh || m[3] as usize != mv {
                        return Err(Error::Band("unbalanced crossing node".into()));
                    }
                    if mh == 0 {
                        for i in 0..mv {
                            pass(&mut inner, t[1][i], t[3][mv - 1 - i]);
                        }
                    } else if mv == 0 {
                        for i in 0..mh {
                            pass(&mut inner, t[0][i], t[2][mh - 1 - i]);
                        }
                    } else {
                        let under = if *h_over { 1 } else { 0 };
                        let cr: Vec<Vec<usize>> =
                            (0..mh).map(|_| (0..mv).map(|_| g.add_crossing(under)).collect()).collect();
                        for r in 0..mh {
                            for c in 0..mv {
                                if c + 1 < mv {
                                    g.set_link(End::slot(cr[r][c], 0), End::slot(cr[r][c + 1], 2));
                                }
                                if r + 1 < mh {
                                    g.set_link(End::slot(cr[r][c], 1), End::slot(cr[r + 1][c], 3));
                                }
                            }
                        }
                        for i in 0..mh {
                            inner[t[0][i]] = Inner::Slot(End::slot(cr[i][mv - 1], 0));
                            inner[t[2][i]] = Inner::Slot(End::slot(cr[mh - 1 - i][0], 2));
                        }
                        for i in 0..mv {
                            inner[t[1][i]] = Inner::Slot(End::slot(cr[mh - 1][mv - 1 - i], 1));
                            inner[t[3][i]] = Inner::Slot(End::slot(cr[0][i], 3));
                        }
                        made = cr.into_iter().flatten().collect();
                    }
                }
                NodeKind::Junction => match (m[0], m[1], m[2]) {
                    (1, 0, 1) => pass(&mut inner, t[0][0], t[2][0]),
                    (1, 2, 1) => {
                        pass(&mut inner, t[0][0], t[1][0]);
                        pass(&mut inner, t[1][1], t[2][0]);
                    }
                    _ => return Err(Error::Band("bad junction multiplicities".into())),
                },
                NodeKind::Clasp => match (m[0], m[1]) {
                    (0, 0) => {}
                    (2, 2) => {
                        let top = g.add_crossing(0);
                        let bot = g.add_crossing(0);
                        g.set_link(End::slot(top, 3), End::slot(bot, 0));
                        g.set_link(End::slot(top, 2), End::slot(bot, 1));
                        inner[t[0][0]] = Inner::Slot(End::slot(top, 1));
                        inner[t[0][1]] = Inner::Slot(End::slot(bot, 2));
                        inner[t[1][0]] = Inner::Slot(End::slot(bot, 3));
                        inner[t[1][1]] = Inner::Slot(End::slot(top, 0));
                        made = vec![top, bot];
                    }
                    _ => return Err(Error::Band("clasp needs two strands a side".into())),
                },
                NodeKind::Bend => {
                    let k = m[0] as usize;
                    if m.len() != 2 || m[1] as usize != k {
                        return Err(Error::Band("unbalanced bend".into()));
                    }
                    for i in 0..k {
                        pass(&mut inner, t[0][i], t[1][k - 1 - i]);
                    }
                }
                NodeKind::Boundary => {
                    for ids in &t {
                        for &i in ids {
                            inner[i] = Inner::Final(n_final);
                            n_final += 1;
                        }
                    }
                }
                NodeKind::Ball(content) => {
                    let flat: Vec<usize> = t.iter().flatten().copied().collect();
                    if !flat.is_empty() {
                        if flat.len() != content.n_ports() {
                            return Err(Error::Band(format!(
                                "ball has {} ports but {} strands arrive",
                                content.n_ports(),
                                flat.len()
                            )));
                        }
                        let (coff, targets) = g.absorb_open(content);
                        for (j, e) in targets.into_iter().enumerate() {
                            inner[flat[j]] = match e {
                                End::Port(q) => Inner::Term(flat[q as usize]),
                                s => Inner::Slot(s),
                            };
                        }
                        made = content.crossing_ids().map(|c| c + coff).collect();
                    }
                }
                NodeKind::Tip => {
                    if m.iter().any(|&k| k > 0) {
                        return Err(Error::Band("unfinished route".into()));
                    }
                }
            }
            terms.push(t);
            crossings.push(made);
        }
        for _ in 0..n_final {
            g.add_port();
        }
        let mut outer = vec![usize::MAX; inner.len()];
        for u in 0..self.kind.len() {
            for s in 0..self.deg(u) {
                let k = self.mult[u][s] as usize;
                if k == 0 {
                    continue;
                }
                let (v, t) = self.adj[u][s];
                if v == usize::MAX {
                    return Err(Error::Band("dangling net edge".into()));
                }
                let aligned = matches!(self.kind[u], NodeKind::Boundary) || matches!(self.kind[v], NodeKind::Boundary);
                for i in 0..k {
                    let j = if aligned { i } else { k - 1 - i };
                    outer[terms[u][s][i]] = terms[v][t][j];
                }
            }
        }
        let end_of = |i: usize| match inner[i] {
            Inner::Slot(e) => Some(e),
            Inner::Final(p) => Some(End::Port(p as u32)),
            Inner::Term(_) => None,
        };
        let mut done = vec![false; inner.len()];
        for i in 0..inner.len() {
            let Some(a) = end_of(i) else { continue };
            if done[i] {
                continue;
            }
            done[i] = true;
            let mut cur = outer[i];
            loop {
                done[cur] = true;
                if let Some(b) = end_of(cur) {
                    g.set_link(a, b);
                    break;
                }
                let Inner::Term(next) = inner[cur] else { unreachable!() };
                done[next] = true;
                cur = outer[next];
            }
        }
        let mut loops = self.loops;
        for i in 0..inner.len() {
            if done[i] {
                continue;
            }
            let mut cur = i;
            loop {
                done[cur] = true;
                let Inner::Term(next) = inner[cur] else { unreachable!() };
                done[next] = true;
                cur = outer[next];
                if done[cur] {
                    break;
                }
            }
            loops += 1;
        }
        g.add_loops(loops);
        Ok(Expansion { graph: g, crossings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn graph_round_trip() {
        let d = samples::by_name("5_2").unwrap();
        let g = Graph::from_diagram(&d);
        let (net, node_of, _) = Net::from_graph(&g);
        assert_eq!(net.faces().len(), g.faces().len());
        let x = net.expand().unwrap();
        let start = Graph::diagram_start(&d).unwrap();
        let End::Slot(c, s) = start else { unreachable!() };
        let c2 = x.crossings[node_of[c as usize].unwrap()][0];
        assert_eq!(x.graph.to_diagram(Some(End::slot(c2, s as usize))).unwrap(), d);
    }

    #[test]
    fn doubled_edges_make_grids() {
        // two parallel copies of a trefoil: a 2-component link with 12 crossings
        let d = samples::by_name("3_1").unwrap();
        let (mut net, _, _) = Net::from_graph(&Graph::from_diagram(&d));
        for v in 0..net.kind.len() {
            for s in 0..4 {
                net.mult[v][s] = 2;
            }
        }
        let x = net.expand().unwrap().graph;
        assert_eq!(x.n_crossings(), 12);
        assert_eq!(x.n_components(), 2);
    }
}
