//! Half-edge view of a diagram: crossings with four counterclockwise slots,
//! optional boundary ports (for tangles), and crossingless loops.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::{Crossing, PlanarDiagram};

/// One end of an edge: a crossing slot or a boundary port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Slot(u32, u8),
    Port(u32),
}

impl End {
    pub fn slot(c: usize, s: usize) -> Self {
        End::Slot(c as u32, (s % 4) as u8)
    }

    pub fn crossing(self) -> Option<usize> {
        match self {
            End::Slot(c, _) => Some(c as usize),
            End::Port(_) => None,
        }
    }

    /// The slot on the other side of the crossing along the same strand.
    pub fn opposite(self) -> Self {
        match self {
            End::Slot(c, s) => End::Slot(c, (s + 2) % 4),
            p => p,
        }
    }
}

/// Planar diagram with crossings and boundary ports. Slots of a crossing are
/// listed counterclockwise; `under[c] = 0` puts the under-strand on slots 0/2,
/// `under[c] = 1` on slots 1/3.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    links: Vec<[End; 4]>,
    under: Vec<u8>,
    dead: Vec<bool>,
    ports: Vec<End>,
    loops: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_loops(loops: usize) -> Self {
        Self { loops, ..Self::default() }
    }

    pub fn from_diagram(d: &PlanarDiagram) -> Self {
        let n = d.n_crossings();
        let mut g = Graph {
            links: vec![[End::Port(0); 4]; n],
            under: vec![0; n],
            dead: vec![false; n],
            ports: Vec::new(),
            loops: usize::from(n == 0),
        };
        let mut first: Vec<Option<End>> = vec![None; 2 * n + 1];
        for (c, t) in d.crossings().iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                let here = End::slot(c, s);
                match first[l as usize].take() {
                    Some(other) => g.set_link(here, other),
                    None => first[l as usize] = Some(here),
                }
            }
        }
        g
    }

    /// Departing end of edge 1 of a valid diagram.
    pub fn diagram_start(d: &PlanarDiagram) -> Option<End> {
        d.crossings().iter().enumerate().find_map(|(c, t)| {
            if t[2] == 1 {
                return Some(End::slot(c, 2));
            }
            let out = (d.over_in_slot(c) as usize + 2) % 4;
            (t[out] == 1).then(|| End::slot(c, out))
        })
    }

    pub fn n_slots_total(&self) -> usize {
        self.links.len()
    }

    pub fn n_crossings(&self) -> usize {
        self.dead.iter().filter(|d| !**d).count()
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.links.len()).filter(|&c| !self.dead[c])
    }

    pub fn is_alive(&self, c: usize) -> bool {
        !self.dead[c]
    }

    pub fn n_ports(&self) -> usize {
        self.ports.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn add_loops(&mut self, k: usize) {
        self.loops += k;
    }

    pub fn remove_loop(&mut self) {
        self.loops = self.loops.checked_sub(1).expect("no free loop to remove");
    }

    pub fn under(&self, c: usize) -> u8 {
        self.under[c]
    }

    pub fn set_under(&mut self, c: usize, u: u8) {
        self.under[c] = u;
    }

    pub fn is_under_slot(&self, c: usize, s: usize) -> bool {
        (s % 2) as u8 == self.under[c]
    }

    pub fn link(&self, e: End) -> End {
        match e {
            End::Slot(c, s) => self.links[c as usize][s as usize],
            End::Port(p) => self.ports[p as usize],
        }
    }

    pub fn set_link(&mut self, a: End, b: End) {
        self.set_half(a, b);
        self.set_half(b, a);
    }

    fn set_half(&mut self, a: End, b: End) {
        match a {
            End::Slot(c, s) => self.links[c as usize][s as usize] = b,
            End::Port(p) => self.ports[p as usize] = b,
        }
    }

    /// New crossing with placeholder links; caller must link all four slots.
    pub fn add_crossing(&mut self, under: u8) -> usize {
        self.links.push([End::Port(u32::MAX); 4]);
        self.under.push(under);
        self.dead.push(false);
        self.links.len() - 1
    }

    pub fn add_port(&mut self) -> usize {
        self.ports.push(End::Port(u32::MAX));
        self.ports.len() - 1
    }

    /// Remove crossing `c`, joining each strand through it. Strands that close
    /// up on themselves become loops.
    pub fn delete_crossing(&mut self, c: usize) {
        let ends: [End; 4] = self.links[c];
        let inside = |e: End| e.crossing() == Some(c);
        let mut used = [false; 4];
        for s in 0..4 {
            if used[s] || inside(ends[s]) {
                continue;
            }
            // walk from the external end at slot s through the crossing
            used[s] = true;
            let mut t = (s + 2) % 4;
            loop {
                used[t] = true;
                match ends[t] {
                    End::Slot(cc, r) if cc as usize == c => {
                        used[r as usize] = true;
                        t = (r as usize + 2) % 4;
                    }
                    other => {
                        self.set_link(ends[s], other);
                        break;
                    }
                }
            }
        }
        // any slots left form closed loops inside the crossing
        for s in 0..4 {
            if used[s] {
                continue;
            }
            let mut t = s;
            loop {
                used[t] = true;
                let o = (t + 2) % 4;
                used[o] = true;
                let End::Slot(_, r) = ends[o] else { unreachable!() };
                t = r as usize;
                if used[t] {
                    break;
                }
            }
            self.loops += 1;
        }
        self.dead[c] = true;
    }

    /// Renumber live crossings densely; returns old -> new map.
    pub fn compact(&mut self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.links.len()];
        let mut next = 0;
        for c in 0..self.links.len() {
            if !self.dead[c] {
                map[c] = Some(next);
                next += 1;
            }
        }
        let remap = |e: End| match e {
            End::Slot(c, s) => End::slot(map[c as usize].expect("link to dead crossing"), s as usize),
            p => p,
        };
        let mut links = Vec::with_capacity(next);
        let mut under = Vec::with_capacity(next);
        for c in 0..self.links.len() {
            if !self.dead[c] {
                links.push(self.links[c].map(remap));
                under.push(self.under[c]);
            }
        }
        self.ports = self.ports.iter().map(|&e| remap(e)).collect();
        self.links = links;
        self.under = under;
        self.dead = vec![false; next];
        map
    }

    /// Faces of a closed diagram as cycles of departing ends, each face on the
    /// left of its edges.
    pub fn faces(&self) -> Vec<Vec<End>> {
        let mut seen: HashSet<End> = HashSet::new();
        let mut faces = Vec::new();
        for c in self.crossing_ids() {
            for s in 0..4 {
                let start = End::slot(c, s);
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut e = start;
                loop {
                    seen.insert(e);
                    face.push(e);
                    match self.link(e) {
                        End::Slot(cc, r) => e = End::slot(cc as usize, r as usize + 3),
                        End::Port(_) => break,
                    }
                    if e == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Strand components: arcs (port to port) and closed cycles, each listed as
    /// the sequence of departing ends. Closed cycles start at their smallest end.
    pub fn components(&self) -> Vec<Component> {
        let mut seen: HashSet<End> = HashSet::new();
        let mut out = Vec::new();
        for p in 0..self.ports.len() {
            let start = End::Port(p as u32);
            if seen.contains(&start) {
                continue;
            }
            let mut path = vec![start];
            seen.insert(start);
            let mut e = start;
            loop {
                let arrive = self.link(e);
                seen.insert(arrive);
                match arrive {
                    End::Port(_) => {
                        out.push(Component::Arc { ends: path, last: arrive });
                        break;
                    }
                    slot => {
                        e = slot.opposite();
                        seen.insert(e);
                        path.push(e);
                    }
                }
            }
        }
        for c in self.crossing_ids() {
            for s in 0..4 {
                let start = End::slot(c, s);
                if seen.contains(&start) {
                    continue;
                }
                let mut path = Vec::new();
                let mut e = start;
                loop {
                    seen.insert(e);
                    path.push(e);
                    let arrive = self.link(e);
                    seen.insert(arrive);
                    e = arrive.opposite();
                    if e == start {
                        break;
                    }
                }
                out.push(Component::Cycle(path));
            }
        }
        for _ in 0..self.loops {
            out.push(Component::Cycle(Vec::new()));
        }
        out
    }

    /// Number of closed components (including loops) for a graph without ports.
    pub fn n_components(&self) -> usize {
        self.components().len()
    }

    /// Orientation from a set of departing ends, one per component to orient.
    /// Returns for every crossing the (under-in, over-in) slots, if reached.
    pub fn orientation(&self, starts: &[End]) -> Vec<Option<(u8, u8)>> {
        let mut under_in = vec![None; self.links.len()];
        let mut over_in = vec![None; self.links.len()];
        for &start in starts {
            let mut e = start;
            loop {
                let arrive = self.link(e);
                let End::Slot(c, s) = arrive else { break };
                if self.is_under_slot(c as usize, s as usize) {
                    under_in[c as usize] = Some(s);
                } else {
                    over_in[c as usize] = Some(s);
                }
                e = arrive.opposite();
                if e == start {
                    break;
                }
            }
        }
        under_in
            .into_iter()
            .zip(over_in)
            .map(|(u, o)| u.zip(o))
            .collect()
    }

    /// Crossing sign from (under-in, over-in) slots.
    pub fn sign_from(under_in: u8, over_in: u8) -> i32 {
        if over_in == (under_in + 3) % 4 {
            1
        } else {
            -1
        }
    }

    /// PD code of a closed one-component diagram, traversed from `start`
    /// (a departing end).
    pub fn to_diagram(&self, start: Option<End>) -> Result<PlanarDiagram> {
        if !self.ports.is_empty() {
            return Err(Error::Band("diagram has open boundary ports".into()));
        }
        let n = self.n_crossings();
        if n == 0 {
            return match self.loops {
                1 => Ok(PlanarDiagram::unknot()),
                k => Err(Error::NotAKnot(k)),
            };
        }
        if self.loops > 0 {
            return Err(Error::NotAKnot(1 + self.loops));
        }
        let start = start.ok_or_else(|| Error::Band("no start edge".into()))?;
        let mut labels = vec![[0u32; 4]; self.links.len()];
        let mut under_in = vec![None; self.links.len()];
        let mut e = start;
        let mut label = 1u32;
        loop {
            let arrive = self.link(e);
            let (End::Slot(c0, s0), End::Slot(c1, s1)) = (e, arrive) else {
                return Err(Error::Band("dangling edge".into()));
            };
            labels[c0 as usize][s0 as usize] = label;
            labels[c1 as usize][s1 as usize] = label;
            if self.is_under_slot(c1 as usize, s1 as usize) {
                under_in[c1 as usize] = Some(s1);
            }
            e = arrive.opposite();
            label += 1;
            if e == start {
                break;
            }
        }
        if (label - 1) as usize != 2 * n {
            let comps = self.n_components();
            return Err(Error::NotAKnot(comps));
        }
        let mut crossings: Vec<Crossing> = Vec::with_capacity(n);
        for c in self.crossing_ids() {
            let u = under_in[c].expect("every crossing visited") as usize;
            let l = labels[c];
            crossings.push([l[u], l[(u + 1) % 4], l[(u + 2) % 4], l[(u + 3) % 4]]);
        }
        Ok(PlanarDiagram::from_raw(crossings))
    }

    /// Flip which strand is over at every crossing.
    pub fn mirror(&mut self) {
        for u in &mut self.under {
            *u ^= 1;
        }
    }

    /// Splice `other` into `self`; returns the crossing and port offsets of the copy.
    pub fn absorb(&mut self, other: &Graph) -> (usize, usize) {
        let coff = self.links.len();
        let poff = self.ports.len();
        let shift = |e: End| match e {
            End::Slot(c, s) => End::Slot(c + coff as u32, s),
            End::Port(p) => End::Port(p + poff as u32),
        };
        for c in 0..other.links.len() {
            self.links.push(other.links[c].map(shift));
            self.under.push(other.under[c]);
            self.dead.push(other.dead[c]);
        }
        for &p in &other.ports {
            self.ports.push(shift(p));
        }
        self.loops += other.loops;
        (coff, poff)
    }

    /// Close the boundary with outer arcs joining the given port pairs. Every
    /// port must appear in exactly one pair; the result has no ports.
    pub fn close_ports(&mut self, pairs: &[(usize, usize)]) {
        let n = self.ports.len();
        let mut outer = vec![usize::MAX; n];
        for &(p, q) in pairs {
            outer[p] = q;
            outer[q] = p;
        }
        assert!(outer.iter().all(|&o| o != usize::MAX), "every port must be paired");
        let mut done = vec![false; n];
        for p in 0..n {
            if done[p] {
                continue;
            }
            let a = self.ports[p];
            if let End::Slot(..) = a {
                // follow outer arc, then any port-to-port arcs, until a slot
                done[p] = true;
                let mut q = outer[p];
                loop {
                    done[q] = true;
                    match self.ports[q] {
                        End::Slot(..) => {
                            let b = self.ports[q];
                            self.set_half(a, b);
                            self.set_half(b, a);
                            break;
                        }
                        End::Port(r) => {
                            done[r as usize] = true;
                            q = outer[r as usize];
                        }
                    }
                }
            }
        }
        // remaining ports form cycles of port-to-port and outer arcs
        for p in 0..n {
            if done[p] {
                continue;
            }
            let mut q = p;
            loop {
                done[q] = true;
                let End::Port(r) = self.ports[q] else { unreachable!() };
                done[r as usize] = true;
                q = outer[r as usize];
                if q == p {
                    break;
                }
            }
            self.loops += 1;
        }
        self.ports.clear();
    }

    /// Reorder ports: new port `i` is old port `order[i]`.
    pub fn permute_ports(&mut self, order: &[usize]) {
        let mut inv = vec![0usize; order.len()];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        let re = |e: End| match e {
            End::Port(p) => End::Port(inv[p as usize] as u32),
            s => s,
        };
        let old = std::mem::take(&mut self.ports);
        self.ports = order.iter().map(|&o| re(old[o])).collect();
        for c in 0..self.links.len() {
            self.links[c] = self.links[c].map(re);
        }
    }

    /// Copy the crossings of `other` without its ports. Links to ports are left
    /// as placeholders; returns the crossing offset and, per port of `other`,
    /// the shifted end it was linked to (ports stay unshifted).
    pub(crate) fn absorb_open(&mut self, other: &Graph) -> (usize, Vec<End>) {
        let coff = self.links.len();
        let shift = |e: End| match e {
            End::Slot(c, s) => End::Slot(c + coff as u32, s),
            p => p,
        };
        for c in 0..other.links.len() {
            self.links.push(other.links[c].map(shift));
            self.under.push(other.under[c]);
            self.dead.push(other.dead[c]);
        }
        self.loops += other.loops;
        (coff, other.ports.iter().map(|&e| shift(e)).collect())
    }

    /// Mark crossing `c` dead without rewiring; callers relink its neighbours.
    pub(crate) fn kill_crossing(&mut self, c: usize) {
        self.dead[c] = true;
    }

    /// Remove two ports joined directly to each other; later ports shift down.
    pub(crate) fn drop_port_pair(&mut self, p: usize, q: usize) {
        assert_eq!(self.ports[p], End::Port(q as u32), "ports must be joined to each other");
        let n = self.ports.len();
        let order: Vec<usize> = (0..n).filter(|&i| i != p && i != q).chain([p, q]).collect();
        self.permute_ports(&order);
        self.ports.truncate(n - 2);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Starts at a port; `ends` are departing ends, `last` the arrival port.
    Arc { ends: Vec<End>, last: End },
    Cycle(Vec<End>),
}
