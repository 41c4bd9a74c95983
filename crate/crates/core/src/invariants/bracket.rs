use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::diagram::{End, Graph, PlanarDiagram};
use crate::error::{Error, Result};

use super::LaurentPolynomial as Poly;

pub const DEFAULT_STATE_GUARD: usize = 24;
/// Largest number of open ends allowed while contracting.
pub const DEFAULT_WIDTH_GUARD: usize = 28;

/// The loop value -A^2 - A^-2.
pub fn delta() -> Poly {
    Poly::from_terms([(-1, 2), (-1, -2)])
}

/// Smoothing pairs of crossing `c`: A-smoothing first.
fn smoothings(g: &Graph, c: usize) -> [[(usize, usize); 2]; 2] {
    let u = g.under(c) as usize;
    let s = |k: usize| (u + k) % 4;
    [[(s(0), s(1)), (s(2), s(3))], [(s(0), s(3)), (s(1), s(2))]]
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n as u32).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] as usize != x {
            let p = self.0[x] as usize;
            self.0[x] = self.0[p];
            x = p;
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb as u32;
        true
    }
}

/// Union-find without path compression, so unions can be undone.
#[derive(Clone)]
struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    comps: usize,
    history: Vec<u32>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n as u32).collect(), size: vec![1; n], comps: n, history: Vec::new() }
    }
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(u32::MAX);
            return;
        }
        if self.size[ra] > self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb as u32;
        self.size[rb] += self.size[ra];
        self.comps -= 1;
        self.history.push(ra as u32);
    }
    fn undo(&mut self) {
        let ra = self.history.pop().expect("nothing to undo");
        if ra == u32::MAX {
            return;
        }
        let ra = ra as usize;
        let rb = self.parent[ra] as usize;
        self.parent[ra] = ra as u32;
        self.size[rb] -= self.size[ra];
        self.comps += 1;
    }
}

/// Count states of crossings `i..` below the smoothings already in `dsu`.
fn walk(dsu: &mut RollbackDsu, smooth: &[[[(usize, usize); 2]; 2]], i: usize, n_a: usize, width: usize, t: &mut [i128]) {
    if i == smooth.len() {
        t[n_a * width + dsu.comps] += 1;
        return;
    }
    for (pick, pairs) in smooth[i].iter().enumerate() {
        for &(p, q) in pairs {
            dsu.union(4 * i + p, 4 * i + q);
        }
        walk(dsu, smooth, i + 1, n_a + 1 - pick, width, t);
        dsu.undo();
        dsu.undo();
    }
}

/// Kauffman bracket of a PD code by full state sum, normalized so the
/// unknot has bracket 1.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<Poly> {
    kauffman_bracket_guarded(d, DEFAULT_STATE_GUARD)
}

pub fn kauffman_bracket_guarded(d: &PlanarDiagram, guard: usize) -> Result<Poly> {
    state_sum(&Graph::from_diagram(d), guard)
}

/// State sum over a closed graph; may have several components.
pub fn state_sum(g: &Graph, guard: usize) -> Result<Poly> {
    if g.n_ports() > 0 {
        return Err(Error::Band("state sum needs a closed diagram".into()));
    }
    let ids: Vec<usize> = g.crossing_ids().collect();
    let n = ids.len();
    if n > guard {
        return Err(Error::Guard { what: "state sum", limit: guard, got: n });
    }
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut links = Vec::new();
    for (i, &c) in ids.iter().enumerate() {
        for s in 0..4 {
            if let End::Slot(c2, s2) = g.link(End::slot(c, s)) {
                let j = index[&(c2 as usize)];
                if (i, s) < (j, s2 as usize) {
                    links.push((4 * i + s, 4 * j + s2 as usize));
                }
            }
        }
    }
    let smooth: Vec<_> = ids.iter().map(|&c| smoothings(g, c)).collect();
    let mut base = RollbackDsu::new(4 * n);
    for &(a, b) in &links {
        base.union(a, b);
    }
    base.history.clear();
    // table[a][loops]: number of states with `a` A-smoothings and `loops` loops
    let width = n + 2;
    let split = n.min(10);
    let table = (0u64..1 << split)
        .into_par_iter()
        .fold(
            || vec![0i128; (n + 1) * width],
            |mut t, prefix| {
                let mut dsu = base.clone();
                let mut n_a = 0;
                for (i, sm) in smooth.iter().enumerate().take(split) {
                    let pick = ((prefix >> i) & 1) as usize;
                    n_a += 1 - pick;
                    for &(p, q) in &sm[pick] {
                        dsu.union(4 * i + p, 4 * i + q);
                    }
                }
                walk(&mut dsu, &smooth, split, n_a, width, &mut t);
                t
            },
        )
        .reduce(
            || vec![0i128; (n + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let loops0 = g.loops();
    let dl = delta();
    let mut total = Poly::zero();
    for n_a in 0..=n {
        for comps in 0..width {
            let k = table[n_a * width + comps];
            if k == 0 {
                continue;
            }
            let loops = comps + loops0;
            let term = dl.pow((loops - 1) as u32).shift(2 * n_a as i32 - n as i32).scale(k);
            total = total.checked_add(&term)?;
        }
    }
    if n == 0 {
        return Ok(dl.pow(loops0.saturating_sub(1) as u32));
    }
    Ok(total)
}

/// Port matching as sorted pairs of port indices.
pub type Matching = Vec<(usize, usize)>;

/// Bracket of a graph by frontier contraction. For a tangle the result maps
/// each crossingless matching of the ports to its coefficient; loops count
/// with weight `delta`. For a closed diagram the single entry is keyed by the
/// empty matching and is normalized so the unknot gives 1.
pub fn contract(g: &Graph, width_guard: usize) -> Result<BTreeMap<Matching, Poly>> {
    let ids: Vec<usize> = g.crossing_ids().collect();
    let mut done = vec![false; g.n_slots_total()];
    let mut frontier: Vec<End> = Vec::new();
    let mut states: HashMap<Vec<u16>, Poly> = HashMap::new();
    states.insert(Vec::new(), Poly::one());
    let dl = delta();
    let dpow: Vec<Poly> = (0..4).map(|k| dl.pow(k)).collect();
    let mut remaining: Vec<usize> = ids.clone();
    // number of slots of each crossing linked to processed crossings
    let mut score: HashMap<usize, usize> = ids.iter().map(|&c| (c, 0)).collect();
    while !remaining.is_empty() {
        let pos = (0..remaining.len())
            .max_by_key(|&i| (score[&remaining[i]], std::cmp::Reverse(remaining[i])))
            .expect("nonempty");
        let c = remaining.swap_remove(pos);
        done[c] = true;
        for s in 0..4 {
            if let End::Slot(c2, _) = g.link(End::slot(c, s)) {
                if let Some(v) = score.get_mut(&(c2 as usize)) {
                    *v += 1;
                }
            }
        }
        let is_open = |e: End| match g.link(e) {
            End::Slot(c2, _) => !done[c2 as usize],
            End::Port(_) => true,
        };
        let mut next: Vec<End> = frontier.iter().copied().filter(|&e| is_open(e)).collect();
        next.extend((0..4).map(|s| End::slot(c, s)).filter(|&e| is_open(e)));
        next.sort();
        if next.len() > width_guard {
            return Err(Error::Guard { what: "contraction width", limit: width_guard, got: next.len() });
        }
        let f = frontier.len();
        let nodes: Vec<End> =
            frontier.iter().copied().chain((0..4).map(|s| End::slot(c, s))).collect();
        let node_of = |e: End| nodes.iter().position(|&x| x == e);
        let mut fixed = Vec::new();
        for (i, &e) in nodes.iter().enumerate() {
            if let Some(j) = node_of(g.link(e)) {
                if i < j {
                    fixed.push((i, j));
                }
            }
        }
        let new_index: Vec<Option<usize>> =
            nodes.iter().map(|e| next.binary_search(e).ok()).collect();
        let sm = smoothings(g, c);
        let mut out: HashMap<Vec<u16>, Poly> = HashMap::with_capacity(states.len() * 2);
        for (m, coeff) in &states {
            for (pick, pairs) in sm.iter().enumerate() {
                let mut dsu = Dsu::new(nodes.len());
                let mut comps = nodes.len();
                for (i, &p) in m.iter().enumerate() {
                    if i < p as usize {
                        comps -= dsu.union(i, p as usize) as usize;
                    }
                }
                for &(i, j) in &fixed {
                    comps -= dsu.union(i, j) as usize;
                }
                for &(p, q) in pairs {
                    comps -= dsu.union(f + p, f + q) as usize;
                }
                let mut key = vec![u16::MAX; next.len()];
                let mut first_in: HashMap<usize, usize> = HashMap::new();
                let mut open_comps = 0;
                for (i, ni) in new_index.iter().enumerate() {
                    if let Some(ni) = *ni {
                        let r = dsu.find(i);
                        match first_in.remove(&r) {
                            Some(nj) => {
                                key[ni] = nj as u16;
                                key[nj] = ni as u16;
                            }
                            None => {
                                first_in.insert(r, ni);
                                open_comps += 1;
                            }
                        }
                    }
                }
                let cycles = comps - open_comps;
                let exp = if pick == 0 { 1 } else { -1 };
                let term = (coeff * &dpow[cycles]).shift(exp);
                let slot = out.entry(key).or_insert_with(Poly::zero);
                *slot = slot.checked_add(&term)?;
            }
        }
        out.retain(|_, p| !p.is_zero());
        states = out;
        frontier = next;
    }
    // ends left open lead to ports; ports may also be joined directly
    let n_ports = g.n_ports();
    let port_of = |e: End| match g.link(e) {
        End::Port(p) => p as usize,
        _ => unreachable!("closed end left in frontier"),
    };
    let mut direct = Vec::new();
    for p in 0..n_ports {
        if let End::Port(q) = g.link(End::Port(p as u32)) {
            if p < q as usize {
                direct.push((p, q as usize));
            }
        }
    }
    let mut result: BTreeMap<Matching, Poly> = BTreeMap::new();
    let closed = n_ports == 0;
    let loops = g.loops();
    for (m, coeff) in states {
        let mut key: Matching = direct.clone();
        for (i, &j) in m.iter().enumerate() {
            if i < j as usize {
                let (a, b) = (port_of(frontier[i]), port_of(frontier[j as usize]));
                key.push((a.min(b), a.max(b)));
            }
        }
        key.sort();
        let mut value = &coeff * &dl.pow(loops as u32);
        if closed {
            value = value
                .exact_div(&dl)
                .ok_or_else(|| Error::Band("closed diagram without loops".into()))?;
        }
        let slot = result.entry(key).or_insert_with(Poly::zero);
        *slot = slot.checked_add(&value)?;
    }
    result.retain(|_, p| !p.is_zero());
    Ok(result)
}

/// Bracket of a closed graph by contraction.
pub fn closed_bracket(g: &Graph) -> Result<Poly> {
    if g.n_ports() > 0 {
        return Err(Error::Band("bracket needs a closed diagram".into()));
    }
    if g.n_crossings() == 0 {
        return Ok(delta().pow(g.loops().saturating_sub(1) as u32));
    }
    Ok(contract(g, DEFAULT_WIDTH_GUARD)?.remove(&Vec::new()).unwrap_or_else(Poly::zero))
}
