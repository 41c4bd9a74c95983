use crate::diagram::{gauss_diagram, GaussDiagram, PlanarDiagram};

use super::arrows::pattern_counts;

const V2_PATTERN: [(u8, u8); 2] = [(0, 2), (3, 1)];

const V3_PATTERNS: [[(u8, u8); 3]; 5] = [
    [(0, 2), (1, 4), (3, 5)],
    [(0, 3), (2, 4), (5, 1)],
    [(0, 3), (2, 5), (4, 1)],
    [(1, 3), (4, 0), (5, 2)],
    [(1, 4), (3, 0), (5, 2)],
];

pub fn v2_gauss(g: &GaussDiagram) -> i64 {
    pattern_counts(g, 2).get(V2_PATTERN.as_slice()).copied().unwrap_or(0)
}

pub fn v3_gauss(g: &GaussDiagram) -> i64 {
    let counts = pattern_counts(g, 3);
    -V3_PATTERNS.iter().map(|p| counts.get(p.as_slice()).copied().unwrap_or(0)).sum::<i64>()
}

/// Order-2 invariant; equals the second Conway coefficient.
pub fn v2(d: &PlanarDiagram) -> i64 {
    v2_gauss(&gauss_diagram(d))
}

/// Order-3 invariant, +1 on the sample trefoil.
pub fn v3(d: &PlanarDiagram) -> i64 {
    v3_gauss(&gauss_diagram(d))
}
