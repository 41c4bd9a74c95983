use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A uni-trivalent tree in the disk: leaves sit on the boundary circle in
/// the cyclic order `leaves`, and one edge is marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniTrivalentTree {
    adj: BTreeMap<usize, Vec<usize>>,
    leaves: Vec<usize>,
    spec: (usize, usize),
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn tree_err(msg: impl Into<String>) -> Error {
    Error::Tree(msg.into())
}

impl UniTrivalentTree {
    pub fn new(edges: &[(usize, usize)], leaves: &[usize], spec: (usize, usize)) -> Result<Self> {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v || !seen.insert(norm(u, v)) {
                return Err(tree_err(format!("bad edge {u}-{v}")));
            }
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        if adj.is_empty() || edges.len() + 1 != adj.len() {
            return Err(tree_err("not a tree: need exactly one edge fewer than vertices"));
        }
        let t = UniTrivalentTree { adj, leaves: leaves.to_vec(), spec: norm(spec.0, spec.1) };
        if t.distances(*t.adj.keys().next().unwrap()).len() != t.adj.len() {
            return Err(tree_err("not connected"));
        }
        for (&v, n) in &t.adj {
            if n.len() != 1 && n.len() != 3 {
                return Err(tree_err(format!("vertex {v} has degree {}", n.len())));
            }
        }
        let want: BTreeSet<usize> = t.adj.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect();
        let got: BTreeSet<usize> = leaves.iter().copied().collect();
        if got.len() != leaves.len() || got != want {
            return Err(tree_err("leaf order must list every degree-one vertex once"));
        }
        if !seen.contains(&t.spec) {
            return Err(tree_err(format!("specified edge {}-{} is not an edge", spec.0, spec.1)));
        }
        if !t.planar() {
            return Err(tree_err("leaf order admits no planar embedding"));
        }
        Ok(t)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .flat_map(|(&u, n)| n.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn n_leaves(&self) -> usize {
        self.leaves.len()
    }

    pub fn spec(&self) -> (usize, usize) {
        self.spec
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[&v]
    }

    /// The move class this tree indexes.
    pub fn k(&self) -> usize {
        self.leaves.len() - 1
    }

    fn distances(&self, from: usize) -> BTreeMap<usize, usize> {
        let mut d = BTreeMap::from([(from, 0)]);
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[&u] {
                if !d.contains_key(&v) {
                    d.insert(v, d[&u] + 1);
                    q.push_back(v);
                }
            }
        }
        d
    }

    /// Edge count of a longest path.
    pub fn diameter(&self) -> usize {
        let a = *self.adj.keys().next().unwrap();
        let da = self.distances(a);
        let (&far, _) = da.iter().max_by_key(|&(v, d)| (*d, std::cmp::Reverse(*v))).unwrap();
        *self.distances(far).values().max().unwrap()
    }

    /// Leaves on the `v` side of edge `u-v`.
    fn side(&self, u: usize, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![(v, u)];
        while let Some((x, from)) = stack.pop() {
            if self.adj[&x].len() == 1 && x != u {
                out.insert(x);
            }
            for &y in &self.adj[&x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out
    }

    /// Every edge must cut the leaf circle into two intervals.
    fn planar(&self) -> bool {
        let n = self.leaves.len();
        self.edges().into_iter().all(|(u, v)| {
            let s = self.side(u, v);
            let changes = (0..n).filter(|&i| s.contains(&self.leaves[i]) != s.contains(&self.leaves[(i + 1) % n])).count();
            changes <= 2
        })
    }

    pub fn serialize(&self) -> String {
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let m = (0..self.leaves.len()).min_by_key(|&i| self.leaves[i]).unwrap_or(0);
        let leaves: Vec<String> = self.leaves[m..].iter().chain(&self.leaves[..m]).map(|l| l.to_string()).collect();
        format!("TREE: edges={}; leaves={}; spec={}-{}", edges.join(","), leaves.join(","), self.spec.0, self.spec.1)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("TREE:")
            .ok_or_else(|| tree_err(format!("expected 'TREE:' at {:?}", text.trim())))?;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| tree_err(format!("bad vertex {s:?}")));
        let pair = |s: &str| -> Result<(usize, usize)> {
            let (a, b) = s.split_once('-').ok_or_else(|| tree_err(format!("bad edge {s:?}")))?;
            Ok((num(a)?, num(b)?))
        };
        let (mut edges, mut leaves, mut spec) = (None, None, None);
        for part in body.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, val) = part.split_once('=').ok_or_else(|| tree_err(format!("bad field {part:?}")))?;
            let items = || val.split(',').map(str::trim).filter(|s| !s.is_empty());
            match key.trim() {
                "edges" => edges = Some(items().map(pair).collect::<Result<Vec<_>>>()?),
                "leaves" => leaves = Some(items().map(num).collect::<Result<Vec<_>>>()?),
                "spec" => spec = Some(pair(val)?),
                k => return Err(tree_err(format!("unknown field {k:?}"))),
            }
        }
        match (edges, leaves, spec) {
            (Some(e), Some(l), Some(s)) => Self::new(&e, &l, s),
            _ => Err(tree_err("need edges, leaves and spec")),
        }
    }

    /// Doubling plan: the two leaves of the final edge, then leaf pairs
    /// `(v, a, b)` in the order their doublings are applied; `v` is the leaf
    /// that `a` and `b` replace, `a` before `b` in the cyclic order.
    pub fn doubling_plan(&self) -> Result<((usize, usize), Vec<(usize, usize, usize)>)> {
        let mut adj = self.adj.clone();
        let mut leaves = self.leaves.clone();
        let mut steps = Vec::new();
        while leaves.len() > 2 {
            let n = leaves.len();
            let found = (0..n).find_map(|i| {
                let (a, b) = (leaves[i], leaves[(i + 1) % n]);
                let (va, vb) = (adj[&a][0], adj[&b][0]);
                let free = norm(a, va) != self.spec && norm(b, vb) != self.spec;
                (va == vb && free).then_some((i, a, b, va))
            });
            let (i, a, b, v) = found.ok_or_else(|| tree_err("no leaf pair can be removed"))?;
            adj.remove(&a);
            adj.remove(&b);
            adj.get_mut(&v).unwrap().retain(|&x| x != a && x != b);
            leaves[i] = v;
            leaves.remove((i + 1) % n);
            steps.push((v, a, b));
        }
        steps.reverse();
        Ok(((leaves[0], leaves[1]), steps))
    }
}

impl fmt::Display for UniTrivalentTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Canonical string of a rooted unlabeled tree.
fn rooted_code(adj: &[Vec<usize>], v: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != from).map(|&w| rooted_code(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn prufer_tree(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    if n == 2 {
        adj[0].push(1);
        adj[1].push(0);
        return adj;
    }
    let mut deg = vec![1; n];
    for &x in seq {
        deg[x] += 1;
    }
    for &x in seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
        adj[leaf].push(x);
        adj[x].push(leaf);
        deg[leaf] = 0;
        deg[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

/// Skeletons of uni-trivalent trees with `m` internal vertices, up to
/// isomorphism.
fn internal_shapes(m: usize) -> Vec<Vec<Vec<usize>>> {
    if m == 1 {
        return vec![vec![Vec::new()]];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let len = m.saturating_sub(2);
    for code in 0..m.pow(len as u32) {
        let seq: Vec<usize> = (0..len).map(|i| code / m.pow(i as u32) % m).collect();
        let adj = prufer_tree(&seq, m);
        if adj.iter().any(|n| n.len() > 3) {
            continue;
        }
        let key = (0..m).map(|r| rooted_code(&adj, r, usize::MAX)).min().unwrap();
        if seen.insert(key) {
            out.push(adj);
        }
    }
    out
}

/// All uni-trivalent trees with `k + 1` leaves up to isomorphism, each with a
/// planar leaf order from a depth-first walk and a marked leaf edge at the
/// end of a longest path. Trees of larger diameter come first.
pub fn enumerate_trees(k: usize) -> Result<Vec<UniTrivalentTree>> {
    if !(1..=5).contains(&k) {
        return Err(tree_err(format!("k = {k} out of range 1..=5")));
    }
    if k == 1 {
        return Ok(vec![UniTrivalentTree::new(&[(0, 1)], &[0, 1], (0, 1))?]);
    }
    let m = k - 1;
    let mut out = Vec::new();
    for inner in internal_shapes(m) {
        let mut adj = inner.clone();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (u, n) in inner.iter().enumerate() {
            edges.extend(n.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        for v in 0..m {
            while adj[v].len() < 3 {
                let l = adj.len();
                adj.push(vec![v]);
                adj[v].push(l);
                edges.push((v, l));
            }
        }
        let mut leaves = Vec::new();
        let mut stack = vec![(0usize, usize::MAX)];
        while let Some((v, from)) = stack.pop() {
            if adj[v].len() == 1 {
                leaves.push(v);
            }
            for &w in adj[v].iter().rev() {
                if w != from {
                    stack.push((w, v));
                }
            }
        }
        let t = UniTrivalentTree::new(&edges, &leaves, edges[0])?;
        let d = t.diameter();
        let end = *leaves.iter().find(|&&l| t.distances(l).values().any(|&x| x == d)).unwrap();
        let t = UniTrivalentTree::new(&edges, &leaves, norm(end, adj[end][0]))?;
        out.push(t);
    }
    out.sort_by_key(|t| (std::cmp::Reverse(t.diameter()), t.serialize()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_tree() -> UniTrivalentTree {
        UniTrivalentTree::parse("TREE: edges=0-1,0-2,0-3,1-4,1-5; leaves=2,3,4,5; spec=0-2").unwrap()
    }

    #[test]
    fn counts_and_diameters() {
        let counts: Vec<usize> = (1..=5).map(|k| enumerate_trees(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 2]);
        for k in 1..=4 {
            for t in enumerate_trees(k).unwrap() {
                assert_eq!(t.n_leaves(), k + 1);
                assert_eq!(t.diameter(), k);
            }
        }
        let five = enumerate_trees(5).unwrap();
        assert_eq!(five[0].diameter(), 5);
        assert_eq!(five[1].diameter(), 4);
    }

    #[test]
    fn small_diameters() {
        assert_eq!(UniTrivalentTree::parse("TREE: edges=0-1; leaves=0,1; spec=0-1").unwrap().diameter(), 1);
        let star = UniTrivalentTree::parse("TREE: edges=0-1,0-2,0-3; leaves=1,2,3; spec=0-1").unwrap();
        assert_eq!(star.diameter(), 2);
        assert_eq!(h_tree().diameter(), 3);
    }

    #[test]
    fn text_round_trip() {
        let t = h_tree();
        assert_eq!(t.serialize(), "TREE: edges=0-1,0-2,0-3,1-4,1-5; leaves=2,3,4,5; spec=0-2");
        assert_eq!(UniTrivalentTree::parse(&t.serialize()).unwrap(), t);
        for k in 1..=5 {
            for t in enumerate_trees(k).unwrap() {
                assert_eq!(UniTrivalentTree::parse(&t.serialize()).unwrap().serialize(), t.serialize());
            }
        }
    }

    #[test]
    fn rejects_bad_trees() {
        for bad in [
            "TREE: edges=0-1,1-2; leaves=0,2; spec=0-1",
            "TREE: edges=0-1,0-2,0-3; leaves=1,2; spec=0-1",
            "TREE: edges=0-1,0-2,0-3; leaves=1,2,3; spec=2-3",
            "TREE: edges=0-1,0-2,0-3,1-4,1-5; leaves=2,4,3,5; spec=0-2",
            "TREE edges=0-1",
        ] {
            assert!(UniTrivalentTree::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn plan_peels_away_from_the_marked_edge() {
        let (last, steps) = h_tree().doubling_plan().unwrap();
        assert_eq!(last, (2, 0));
        assert_eq!(steps, vec![(0, 3, 1), (1, 4, 5)]);
        for k in 1..=5 {
            for t in enumerate_trees(k).unwrap() {
                assert_eq!(t.doubling_plan().unwrap().1.len(), k - 1);
            }
        }
    }
}
