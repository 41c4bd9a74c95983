use serde::{Deserialize, Serialize};

use super::PlanarDiagram;

/// A signed chord; endpoints are positions on the circle, `0..2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    pub sign: i8,
    pub over: usize,
    pub under: usize,
}

/// Gauss diagram of a knot diagram. Position `p` is the crossing reached by
/// edge `p + 1` of the PD code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussDiagram {
    pub chords: Vec<Chord>,
}

impl GaussDiagram {
    pub fn n_points(&self) -> usize {
        2 * self.chords.len()
    }

    /// Move the basepoint forward by `k` positions.
    pub fn rotated(&self, k: usize) -> Self {
        let m = self.n_points();
        if m == 0 {
            return self.clone();
        }
        let sh = |p: usize| (p + m - k % m) % m;
        Self {
            chords: self
                .chords
                .iter()
                .map(|c| Chord { sign: c.sign, over: sh(c.over), under: sh(c.under) })
                .collect(),
        }
    }

    /// For each position: (chord index, is over-passage).
    pub fn points(&self) -> Vec<(usize, bool)> {
        let mut out = vec![(0, false); self.n_points()];
        for (i, c) in self.chords.iter().enumerate() {
            out[c.over] = (i, true);
            out[c.under] = (i, false);
        }
        out
    }

    /// Arrow from over to under: tail/head as positions.
    pub fn arrow(&self, i: usize) -> (usize, usize) {
        (self.chords[i].over, self.chords[i].under)
    }
}

/// One chord per crossing, in crossing order.
pub fn gauss_diagram(d: &PlanarDiagram) -> GaussDiagram {
    let chords = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(c, t)| {
            let over_in = d.over_in_slot(c) as usize;
            Chord {
                sign: d.sign(c) as i8,
                over: t[over_in] as usize - 1,
                under: t[0] as usize - 1,
            }
        })
        .collect();
    GaussDiagram { chords }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn unknot_is_empty() {
        assert!(gauss_diagram(&PlanarDiagram::unknot()).chords.is_empty());
    }

    #[test]
    fn trefoil_chords() {
        let g = gauss_diagram(&parse_pd("PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap());
        assert_eq!(g.chords.len(), 3);
        assert!(g.chords.iter().all(|c| c.sign == g.chords[0].sign));
        let mut pts: Vec<usize> = g.chords.iter().flat_map(|c| [c.over, c.under]).collect();
        pts.sort();
        assert_eq!(pts, (0..6).collect::<Vec<_>>());
        // alternating: over and under passages interleave
        let p = g.points();
        assert!((0..6).all(|i| p[i].1 != p[(i + 1) % 6].1));
    }

    #[test]
    fn figure_eight_signs() {
        let d = parse_pd("PD: X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        let g = gauss_diagram(&d);
        let mut s: Vec<i8> = g.chords.iter().map(|c| c.sign).collect();
        s.sort();
        assert_eq!(s, vec![-1, -1, 1, 1]);
        assert_eq!(s.iter().map(|&x| x as i32).sum::<i32>(), d.writhe());
    }
}
