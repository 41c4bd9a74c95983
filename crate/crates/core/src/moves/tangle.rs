use std::collections::HashMap;
use std::fmt;

use crate::diagram::graph::Component;
use crate::diagram::{End, Graph};
use crate::error::{Error, Result};
use crate::invariants::bracket::{closed_bracket, delta};
use crate::invariants::LaurentPolynomial;

use super::net::{Net, NodeKind};

/// A tangle in a disk: crossings plus boundary ports numbered
/// counterclockwise. Components are arcs between ports.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    pub(crate) graph: Graph,
}

impl PartialEq for TangleDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.serialize() == other.serialize()
    }
}

impl Eq for TangleDiagram {}

impl TangleDiagram {
    pub(crate) fn from_graph(mut g: Graph) -> Result<Self> {
        g.compact();
        let t = Self { graph: g };
        if t.graph.loops() > 0 || t.graph.components().iter().any(|c| matches!(c, Component::Cycle(_))) {
            return Err(Error::Index("tangle has a closed component".into()));
        }
        Ok(t)
    }

    /// Crossingless arcs joining the given port pairs.
    pub fn trivial(n_ports: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new();
        for _ in 0..n_ports {
            g.add_port();
        }
        let mut used = vec![false; n_ports];
        for &(p, q) in pairs {
            if p >= n_ports || q >= n_ports || p == q || used[p] || used[q] {
                return Err(Error::Index(format!("bad port pair ({p},{q})")));
            }
            used[p] = true;
            used[q] = true;
            g.set_link(End::Port(p as u32), End::Port(q as u32));
        }
        if used.iter().any(|u| !u) {
            return Err(Error::Index("unpaired port".into()));
        }
        Self::from_graph(g)
    }

    /// One crossing with ports on its slots. Arcs `0-2` and `1-3`, oriented
    /// from the lower port, cross positively iff `positive`.
    pub fn crossing(positive: bool) -> Self {
        let mut g = Graph::new();
        let c = g.add_crossing(if positive { 1 } else { 0 });
        for s in 0..4 {
            let p = g.add_port();
            g.set_link(End::slot(c, s), End::Port(p as u32));
        }
        Self { graph: g }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_ports(&self) -> usize {
        self.graph.n_ports()
    }

    pub fn n_crossings(&self) -> usize {
        self.graph.n_crossings()
    }

    /// Arcs as sorted port pairs, in order of their lower port.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .components()
            .into_iter()
            .filter_map(|c| match c {
                Component::Arc { ends, last } => {
                    let (End::Port(a), End::Port(b)) = (ends[0], last) else { unreachable!() };
                    Some(((a as usize).min(b as usize), (a as usize).max(b as usize)))
                }
                Component::Cycle(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn mirror(&self) -> Self {
        let mut g = self.graph.clone();
        g.mirror();
        Self { graph: g }
    }

    /// Renumber ports so that old port `i` becomes `(i + k) mod n`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.n_ports();
        let order: Vec<usize> = (0..n).map(|i| (i + n - k % n) % n).collect();
        let mut g = self.graph.clone();
        g.permute_ports(&order);
        Self { graph: g }
    }

    /// Remove arc `arc` together with every crossing on it.
    pub fn delete_arc(&self, arc: usize) -> Result<Self> {
        let &(p, q) = self.arcs().get(arc).ok_or_else(|| Error::Index(format!("no arc {arc}")))?;
        let mut g = self.graph.clone();
        let mut hit: Vec<usize> = g
            .components()
            .into_iter()
            .find_map(|c| match c {
                Component::Arc { ends, .. } if ends[0] == End::Port(p as u32) || ends[0] == End::Port(q as u32) => {
                    Some(ends.iter().filter_map(|e| e.crossing()).collect())
                }
                _ => None,
            })
            .unwrap_or_default();
        hit.sort_unstable();
        hit.dedup();
        for c in hit {
            g.delete_crossing(c);
        }
        g.drop_port_pair(p, q);
        Self::from_graph(g)
    }

    /// Half twist of the boundary: the strands at ports `p` and `p + 1`
    /// swap through one new crossing outside the old disk.
    pub fn twist_boundary(&self, p: usize, under: u8) -> Result<Self> {
        if p + 1 >= self.n_ports() {
            return Err(Error::Index(format!("no ports {p} and {}", p + 1)));
        }
        let mut g = self.graph.clone();
        let (a, b) = (End::Port(p as u32), End::Port(p as u32 + 1));
        let (ea, eb) = (g.link(a), g.link(b));
        let x = g.add_crossing(under);
        if ea == b {
            g.set_link(End::slot(x, 0), End::slot(x, 1));
        } else {
            g.set_link(End::slot(x, 0), eb);
            g.set_link(End::slot(x, 1), ea);
        }
        g.set_link(End::slot(x, 2), a);
        g.set_link(End::slot(x, 3), b);
        Self::from_graph(g)
    }

    /// Close with outer arcs joining port pairs.
    pub fn closure(&self, pairs: &[(usize, usize)]) -> Graph {
        let mut g = self.graph.clone();
        g.close_ports(pairs);
        g
    }

    /// Net of the tangle with arc `arc` carried twice and a clasp halfway
    /// along it. The clasp's west side faces the arc's lower port.
    fn doubled_net(&self, arc: usize) -> Result<Net> {
        let arcs = self.arcs();
        let &(p, _) = arcs.get(arc).ok_or_else(|| Error::Index(format!("no arc {arc}")))?;
        let (mut net, _, boundary) = Net::from_graph(&self.graph);
        let b = boundary.expect("tangle has ports");
        let mut path = Vec::new();
        let (mut u, mut s) = (b, p);
        loop {
            path.push((u, s));
            let (v, t) = net.other(u, s);
            match net.kind[v] {
                NodeKind::Boundary => break,
                NodeKind::Cross { .. } => (u, s) = (v, (t + 2) % 4),
                NodeKind::Bend => (u, s) = (v, 1 - t),
                _ => unreachable!("tangle nets hold crossings and bends only"),
            }
        }
        for &(u, s) in &path {
            net.set_mult(u, s, 2);
        }
        let (u, s) = path[path.len() / 2];
        net.subdivide(u, s, NodeKind::Clasp, 2, 0, 1);
        Ok(net)
    }

    /// Replace arc `arc` by two parallel copies hooked once in the middle:
    /// one copy returns to each end of the original arc.
    pub fn double_arc(&self, arc: usize) -> Result<Self> {
        Self::from_graph(self.doubled_net(arc)?.expand()?.graph)
    }

    /// Canonical text: edges are labelled along the arcs (each oriented away
    /// from its lower port, arcs in port order); `P` lists the edge at each
    /// port and each crossing is listed from its incoming under-strand.
    pub fn serialize(&self) -> String {
        let g = &self.graph;
        let mut label: HashMap<End, u32> = HashMap::new();
        let mut under_in: HashMap<usize, usize> = HashMap::new();
        let mut next = 1u32;
        for (p, _) in self.arcs() {
            let mut e = End::Port(p as u32);
            loop {
                let a = g.link(e);
                label.insert(e, next);
                label.insert(a, next);
                next += 1;
                match a {
                    End::Port(_) => break,
                    End::Slot(c, s) => {
                        if g.is_under_slot(c as usize, s as usize) {
                            under_in.insert(c as usize, s as usize);
                        }
                        e = a.opposite();
                    }
                }
            }
        }
        let ports: Vec<String> = (0..g.n_ports()).map(|p| label[&End::Port(p as u32)].to_string()).collect();
        let mut xs: Vec<[u32; 4]> = g
            .crossing_ids()
            .map(|c| {
                let u = under_in[&c];
                std::array::from_fn(|k| label[&End::slot(c, u + k)])
            })
            .collect();
        xs.sort_unstable();
        let mut out = format!("TANGLE: P({})", ports.join(","));
        for x in xs {
            out.push_str(&format!(" X({},{},{},{})", x[0], x[1], x[2], x[3]));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse { token: text.to_string(), message: m.to_string() };
        let body = text.trim().strip_prefix("TANGLE:").ok_or_else(|| bad("expected TANGLE:"))?;
        let mut g = Graph::new();
        let mut seen: HashMap<u32, End> = HashMap::new();
        let mut join = |g: &mut Graph, l: u32, e: End| -> Result<()> {
            match seen.remove(&l) {
                Some(o) => g.set_link(o, e),
                None => {
                    seen.insert(l, e);
                }
            }
            Ok(())
        };
        for tok in body.split_whitespace() {
            let inner = |t: &str, pre: &str| -> Result<Vec<u32>> {
                t.strip_prefix(pre)
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| bad("malformed token"))?
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| bad("bad label")))
                    .collect()
            };
            if tok.starts_with("P(") {
                for l in inner(tok, "P(")? {
                    let p = g.add_port();
                    join(&mut g, l, End::Port(p as u32))?;
                }
            } else if tok.starts_with("X(") {
                let ls = inner(tok, "X(")?;
                if ls.len() != 4 {
                    return Err(bad("crossing needs four labels"));
                }
                let c = g.add_crossing(0);
                for (s, &l) in ls.iter().enumerate() {
                    join(&mut g, l, End::slot(c, s))?;
                }
            } else {
                return Err(bad("unknown token"));
            }
        }
        if !seen.is_empty() {
            return Err(bad("every label must appear twice"));
        }
        Self::from_graph(g)
    }
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Insert a full twist between the strands at adjacent ports `p` and `p + 1`.
pub(crate) fn twist_ports(g: &mut Graph, p: usize, under: u8) {
    let (a, b) = (End::Port(p as u32), End::Port(p as u32 + 1));
    let (ea, eb) = (g.link(a), g.link(b));
    let lo = g.add_crossing(under);
    let hi = g.add_crossing(under);
    // slots run SW, SE, NE, NW with the boundary to the north; port p is east
    g.set_link(End::slot(lo, 0), eb);
    g.set_link(End::slot(lo, 1), ea);
    g.set_link(End::slot(lo, 2), End::slot(hi, 1));
    g.set_link(End::slot(lo, 3), End::slot(hi, 0));
    g.set_link(End::slot(hi, 3), b);
    g.set_link(End::slot(hi, 2), a);
}

/// Closed cycles of a graph, each with the crossings it passes.
fn cycles(g: &Graph) -> Vec<Vec<End>> {
    g.components()
        .into_iter()
        .filter_map(|c| match c {
            Component::Cycle(p) if !p.is_empty() => Some(p),
            _ => None,
        })
        .collect()
}

/// Linking numbers of every pair of components of a closed graph, in the
/// order of `Graph::components` (free loops link nothing).
pub fn linking_matrix(g: &Graph) -> Vec<Vec<i64>> {
    let cs = cycles(g);
    let n = cs.len() + g.loops();
    let mut comp_of: HashMap<End, usize> = HashMap::new();
    for (i, p) in cs.iter().enumerate() {
        for &e in p {
            comp_of.insert(e, i);
            comp_of.insert(g.link(e), i);
        }
    }
    let starts: Vec<End> = cs.iter().map(|p| p[0]).collect();
    let orient = g.orientation(&starts);
    let mut twice = vec![vec![0i64; n]; n];
    for c in g.crossing_ids() {
        let Some((ui, oi)) = orient[c] else { continue };
        let (a, b) = (comp_of[&End::slot(c, ui as usize)], comp_of[&End::slot(c, oi as usize)]);
        if a != b {
            let s = Graph::sign_from(ui, oi) as i64;
            twice[a][b] += s;
            twice[b][a] += s;
        }
    }
    twice.into_iter().map(|r| r.into_iter().map(|x| x / 2).collect()).collect()
}

/// Bracket normalized by the self-writhe of each component; an invariant of
/// unoriented links up to the global orientation-free part.
pub fn link_bracket(g: &Graph) -> Result<LaurentPolynomial> {
    let cs = cycles(g);
    let mut comp_of: HashMap<End, usize> = HashMap::new();
    for (i, p) in cs.iter().enumerate() {
        for &e in p {
            comp_of.insert(e, i);
            comp_of.insert(g.link(e), i);
        }
    }
    let starts: Vec<End> = cs.iter().map(|p| p[0]).collect();
    let orient = g.orientation(&starts);
    let mut self_writhe = 0i32;
    for c in g.crossing_ids() {
        let Some((ui, oi)) = orient[c] else { continue };
        if comp_of[&End::slot(c, ui as usize)] == comp_of[&End::slot(c, oi as usize)] {
            self_writhe += Graph::sign_from(ui, oi);
        }
    }
    let b = closed_bracket(g)?;
    let sign = if self_writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(b.shift(-3 * self_writhe).scale(sign))
}

/// Normalized bracket of the `n`-component unlink.
pub fn unlink_bracket(n: usize) -> LaurentPolynomial {
    delta().pow(n.saturating_sub(1) as u32)
}

/// Remove closed component `i` (indexing as in `linking_matrix`).
pub fn delete_component(g: &Graph, i: usize) -> Graph {
    let cs = cycles(g);
    let mut out = g.clone();
    if i >= cs.len() {
        out.remove_loop();
        return out;
    }
    let mut hit: Vec<usize> = cs[i].iter().filter_map(|e| e.crossing()).collect();
    hit.sort_unstable();
    hit.dedup();
    for c in hit {
        out.delete_crossing(c);
    }
    out.remove_loop();
    out.compact();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_arcs_and_text() {
        let x = TangleDiagram::crossing(true);
        assert_eq!(x.arcs(), vec![(0, 2), (1, 3)]);
        let t = x.serialize();
        assert_eq!(TangleDiagram::parse(&t).unwrap(), x);
        assert_ne!(x, TangleDiagram::crossing(false));
    }

    #[test]
    fn crossing_closures() {
        // closing 0-1, 2-3 gives a kinked unknot; 0-3, 1-2 as well
        let x = TangleDiagram::crossing(true);
        let k = x.closure(&[(0, 1), (2, 3)]);
        assert_eq!(k.n_components(), 1);
        assert_eq!(link_bracket(&k).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn doubled_crossing_is_borromean_like() {
        let x = TangleDiagram::crossing(true).double_arc(0).unwrap();
        assert_eq!(x.n_ports(), 6);
        assert_eq!(x.arcs().len(), 3);
        assert_eq!(x.n_crossings(), 4);
        let t = x.serialize();
        assert_eq!(TangleDiagram::parse(&t).unwrap(), x);
    }

    #[test]
    fn hopf_link_numbers() {
        // a clasp between two trivial arcs, closed, is a Hopf link
        let mut net = Net::new();
        let b = net.add_node(NodeKind::Boundary, 2);
        let c = net.add_node(NodeKind::Clasp, 2);
        net.connect(b, 0, c, 0, 2);
        net.connect(b, 1, c, 1, 2);
        let t = TangleDiagram::from_graph(net.expand().unwrap().graph).unwrap();
        assert_eq!(t.arcs(), vec![(0, 1), (2, 3)]);
        let h = t.closure(&[(0, 1), (2, 3)]);
        let lk = linking_matrix(&h);
        assert_eq!(lk[0][1].abs(), 1);
        assert_eq!(delete_component(&h, 0).n_crossings(), 0);
        assert_eq!(link_bracket(&h).unwrap(), LaurentPolynomial::from_terms([(-1, 4), (-1, -4)]));
    }
}
