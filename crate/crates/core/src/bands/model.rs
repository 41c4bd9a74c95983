use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::Graph;
use crate::error::{Error, Result};
use crate::moves::net::{Net, NodeKind};
use crate::moves::{linking_matrix, twist_ports, LocalMoveTemplate, TangleDiagram, UniTrivalentTree};

/// A link model `(alpha, beta)`: `alpha` is a tangle whose arc `i` joins
/// ports `2i` and `2i + 1`; `beta` closes each arc along the boundary between
/// those two ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkModel {
    pub alpha: TangleDiagram,
    pub k: usize,
    /// Circle doubled at each step, starting from the clasp.
    pub genealogy: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelRecord {
    k: usize,
    genealogy: Vec<usize>,
}

/// The clasp: two arcs hooked once, closing to a Hopf link.
pub fn link_model_c1() -> LinkModel {
    let mut net = Net::new();
    let b = net.add_node(NodeKind::Boundary, 2);
    let c = net.add_node(NodeKind::Clasp, 2);
    net.connect(b, 0, c, 0, 2);
    net.connect(b, 1, c, 1, 2);
    let g = net.expand().expect("clasp expands").graph;
    LinkModel { alpha: TangleDiagram::from_graph(g).expect("clasp is a tangle"), k: 1, genealogy: Vec::new() }
}

/// Bing double of circle `component`.
pub fn double_link_model(m: &LinkModel, component: usize) -> Result<LinkModel> {
    if component > m.k {
        return Err(Error::Index(format!("model has {} circles, no circle {component}", m.k + 1)));
    }
    let doubled = m.alpha.double_arc(component)?;
    // the clasp alone links the two new circles once; a full twist between
    // them next to the boundary cancels that
    for under in [0u8, 1] {
        let mut g = doubled.graph.clone();
        twist_ports(&mut g, 2 * component + 1, under);
        let alpha = TangleDiagram::from_graph(g)?;
        let mut genealogy = m.genealogy.clone();
        genealogy.push(component);
        let out = LinkModel { alpha, k: m.k + 1, genealogy };
        let lk = linking_matrix(&out.closure());
        if lk.iter().flatten().all(|&x| x == 0) {
            return Ok(out);
        }
    }
    unreachable!("one of the two twists cancels the clasp")
}

/// The model assigned to a tree, doubling circles in the tree's plan.
pub fn link_model_from_tree(tree: &UniTrivalentTree) -> Result<LinkModel> {
    let ((l0, l1), steps) = tree.doubling_plan()?;
    let mut m = link_model_c1();
    let mut circle: HashMap<usize, usize> = HashMap::from([(l0, 0), (l1, 1)]);
    for (v, a, b) in steps {
        let c = circle.remove(&v).expect("plan names a current leaf");
        m = double_link_model(&m, c)?;
        for x in circle.values_mut() {
            *x += usize::from(*x > c);
        }
        circle.insert(a, c);
        circle.insert(b, c + 1);
    }
    Ok(m)
}

impl LinkModel {
    /// Model obtained from the clasp by a sequence of doublings.
    pub fn from_genealogy(genealogy: &[usize]) -> Result<Self> {
        genealogy.iter().try_fold(link_model_c1(), |m, &c| double_link_model(&m, c))
    }

    pub fn n_circles(&self) -> usize {
        self.k + 1
    }

    /// Boundary arcs as port pairs.
    pub fn beta(&self) -> Vec<(usize, usize)> {
        (0..=self.k).map(|i| (2 * i, 2 * i + 1)).collect()
    }

    /// The closed link `alpha ∪ beta`; circle `i` is component `i`.
    pub fn closure(&self) -> Graph {
        self.alpha.closure(&self.beta())
    }

    /// Push `beta` slightly into the ball: the tangle pair `(alpha, beta)`.
    pub fn push_in(&self) -> (TangleDiagram, TangleDiagram) {
        let beta = TangleDiagram::trivial(2 * self.k + 2, &self.beta()).expect("beta pairs are valid");
        (self.alpha.clone(), beta)
    }

    /// `push_in` as a local move.
    pub fn push_in_template(&self) -> LocalMoveTemplate {
        let (a, b) = self.push_in();
        let mut m = LocalMoveTemplate::new(a, b, self.k).expect("alpha and beta share arcs");
        m.genealogy = self.genealogy.clone();
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModelRecord { k: self.k, genealogy: self.genealogy.clone() }).expect("record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{delete_component, link_bracket, unlink_bracket};

    fn brunnian(m: &LinkModel) {
        let l = m.closure();
        assert_eq!(l.n_components(), m.n_circles());
        assert_eq!(m.alpha.arcs(), m.beta());
        assert_ne!(link_bracket(&l).unwrap(), unlink_bracket(m.n_circles()), "model is split");
        for i in 0..m.n_circles() {
            let sub = delete_component(&l, i);
            assert_eq!(link_bracket(&sub).unwrap(), unlink_bracket(m.k), "drop circle {i}");
        }
        let lk = linking_matrix(&l);
        for i in 0..m.n_circles() {
            for j in 0..m.n_circles() {
                if i != j {
                    assert_eq!(lk[i][j], 0);
                }
            }
        }
    }

    #[test]
    fn clasp_is_hopf() {
        let m = link_model_c1();
        assert_eq!(m.n_circles(), 2);
        assert_eq!(linking_matrix(&m.closure())[0][1].abs(), 1);
    }

    #[test]
    fn doubles_are_brunnian() {
        for gen in [vec![0], vec![1], vec![0, 1], vec![0, 0], vec![1, 2], vec![0, 1, 2], vec![1, 2, 3]] {
            let m = LinkModel::from_genealogy(&gen).unwrap();
            assert_eq!(m.k, gen.len() + 1);
            brunnian(&m);
        }
    }

    #[test]
    fn tree_models_follow_the_plan() {
        for k in 2..=4 {
            for t in crate::moves::enumerate_trees(k).unwrap() {
                let m = link_model_from_tree(&t).unwrap();
                assert_eq!(m.k, k);
                brunnian(&m);
            }
        }
    }

    #[test]
    fn push_in_matches_templates() {
        use crate::moves::{c1_template, closure_match, double_template, LocalMoveTemplate};
        let c1 = link_model_c1().push_in_template();
        let m = closure_match(&c1, &c1_template(), 2).unwrap().expect("clasp is a crossing change");
        assert_eq!(m.twists, vec![(1, 1)]);
        let c2 = LinkModel::from_genealogy(&[0]).unwrap().push_in_template();
        let m = closure_match(&double_template(&c1, 0).unwrap(), &c2, 2).unwrap().expect("doubling commutes with push in");
        assert_eq!(m.twists, vec![(1, 1), (1, 1)]);
        // the doubled crossing change, with the strand at port 2 moved past the doubled pair
        let d = double_template(&c1_template(), 0).unwrap();
        let carry = |t: &TangleDiagram| t.twist_boundary(2, 0).unwrap().twist_boundary(3, 0).unwrap();
        let moved = LocalMoveTemplate::new(carry(&d.t1), carry(&d.t2), 2).unwrap();
        assert!(closure_match(&moved, &c2, 2).unwrap().is_some());
    }

    #[test]
    fn c2_model_is_borromean() {
        // Jones polynomial of the Borromean rings, as a bracket in A with t = A^-4
        let m = LinkModel::from_genealogy(&[0]).unwrap();
        let b = link_bracket(&m.closure()).unwrap();
        let jones_like = crate::invariants::LaurentPolynomial::from_terms([
            (-1, 3), (3, 2), (-2, 1), (4, 0), (-2, -1), (3, -2), (-1, -3),
        ]);
        assert_eq!(b.divide_exponents(-4), Some(jones_like));
    }
}
