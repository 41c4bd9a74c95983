use super::graph::{End, Graph};
use super::reidemeister::Knot;
use super::PlanarDiagram;

/// Splice `d2` into edge 1 of `d1`, respecting both orientations.
pub fn connected_sum(d1: &PlanarDiagram, d2: &PlanarDiagram) -> PlanarDiagram {
    if d1.n_crossings() == 0 {
        return d2.canonical();
    }
    if d2.n_crossings() == 0 {
        return d1.canonical();
    }
    let mut g = Graph::from_diagram(d1);
    let s1 = Graph::diagram_start(d1).expect("edge 1");
    let b1 = g.link(s1);
    let (coff, _) = g.absorb(&Graph::from_diagram(d2));
    let shift = |e: End| match e {
        End::Slot(c, s) => End::slot(c as usize + coff, s as usize),
        p => p,
    };
    let s2 = shift(Graph::diagram_start(d2).expect("edge 1"));
    let b2 = g.link(s2);
    g.set_link(s1, b2);
    g.set_link(s2, b1);
    g.to_diagram(Some(s1)).expect("sum of knots is a knot").canonical()
}

/// Swap over and under at every crossing.
pub fn mirror(d: &PlanarDiagram) -> PlanarDiagram {
    let crossings = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, &[a, b, c, e])| if d.over_in_slot(i) == 3 { [e, a, b, c] } else { [b, c, e, a] })
        .collect();
    PlanarDiagram::from_raw(crossings).canonical()
}

/// Greedy R1-/R2- removal until neither applies.
pub fn simplify(d: &PlanarDiagram) -> PlanarDiagram {
    let mut k = Knot::from_diagram(d);
    k.simplify();
    k.to_diagram().expect("simplification keeps one component").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn mirror_flips_signs() {
        let t = parse_pd("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let m = mirror(&t);
        assert!(m.validate().is_ok());
        assert_eq!(m.writhe(), -t.writhe());
        assert_eq!(mirror(&m), t.canonical());
        assert_eq!(mirror(&PlanarDiagram::unknot()), PlanarDiagram::unknot());
    }

    #[test]
    fn sum_adds_crossings_and_writhe() {
        let t = parse_pd("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let s = connected_sum(&t, &t);
        assert!(s.validate().is_ok());
        assert_eq!(s.n_crossings(), 6);
        assert_eq!(s.writhe(), -6);
        assert_eq!(connected_sum(&t, &PlanarDiagram::unknot()), t.canonical());
    }

    #[test]
    fn simplify_kinked_unknot() {
        let d = parse_pd("PD: X(1,1,2,2)").unwrap();
        assert_eq!(simplify(&d), PlanarDiagram::unknot());
    }
}
