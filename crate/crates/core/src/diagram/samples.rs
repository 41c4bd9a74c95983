//! Named sample knots.

use crate::error::{Error, Result};

use super::graph::{End, Graph};
use super::{connected_sum, mirror, parse_pd, PlanarDiagram};

/// Closure of a braid word; generator `i` is sigma_i (positive crossing),
/// `-i` its inverse. Fails unless the closure is a knot.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram> {
    let mut g = Graph::new();
    let mut bottom: Vec<Option<End>> = vec![None; strands];
    let mut top: Vec<Option<End>> = vec![None; strands];
    // crossing slots counterclockwise: SW, SE, NE, NW
    for &gen in word {
        let i = gen.unsigned_abs() as usize;
        if gen == 0 || i >= strands {
            return Err(Error::Band(format!("braid generator {gen} out of range")));
        }
        let c = g.add_crossing(if gen > 0 { 1 } else { 0 });
        for (p, s) in [(i - 1, 0), (i, 1)] {
            let e = End::slot(c, s);
            match top[p] {
                Some(t) => g.set_link(t, e),
                None => bottom[p] = Some(e),
            }
        }
        top[i - 1] = Some(End::slot(c, 3));
        top[i] = Some(End::slot(c, 2));
    }
    for p in 0..strands {
        match (top[p], bottom[p]) {
            (Some(t), Some(b)) => g.set_link(t, b),
            _ => g.add_loops(1),
        }
    }
    if word.is_empty() {
        return match strands {
            1 => Ok(PlanarDiagram::unknot()),
            k => Err(Error::NotAKnot(k)),
        };
    }
    Ok(g.to_diagram(Some(End::slot(0, 2)))?.canonical())
}

fn pd(s: &str) -> PlanarDiagram {
    parse_pd(s).expect("sample PD is valid").canonical()
}

pub const TREFOIL_PD: &str = "PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

/// Look up a sample by name. `3_1` is the trefoil of [`TREFOIL_PD`], `3_1m`
/// its mirror; `a#b` is a connected sum.
pub fn by_name(name: &str) -> Option<PlanarDiagram> {
    if let Some((a, b)) = name.split_once('#') {
        return Some(connected_sum(&by_name(a)?, &by_name(b)?));
    }
    if let Some(base) = name.strip_suffix('m') {
        if base != "3_1" && !base.is_empty() {
            return by_name(base).map(|d| mirror(&d));
        }
    }
    Some(match name {
        "0_1" | "unknot" => PlanarDiagram::unknot(),
        "3_1" => pd(TREFOIL_PD),
        "3_1m" => mirror(&pd(TREFOIL_PD)),
        "4_1" => pd("PD: X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"),
        "5_1" => braid_closure(2, &[1; 5]).ok()?,
        "5_2" => pd("PD: X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)"),
        "6_1" => pd("PD: X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)"),
        "6_2" => pd("PD: X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) X(11,6,12,7)"),
        "6_3" => pd("PD: X(4,2,5,1) X(8,4,9,3) X(12,9,1,10) X(10,5,11,6) X(6,11,7,12) X(2,8,3,7)"),
        "7_1" => braid_closure(2, &[1; 7]).ok()?,
        "8_19" => braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).ok()?,
        "10_124" => braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]).ok()?,
        "b12" => braid_closure(3, &[1, 1, 1, -2, 1, -2, -2, 1, -2, -2, 1, -2]).ok()?,
        _ => return None,
    })
}

/// Base knots used by randomized experiments.
pub const BASE_SET: [&str; 8] = ["unknot", "3_1", "3_1m", "4_1", "5_1", "5_2", "3_1#3_1", "3_1#4_1"];

/// Knots up to 12 crossings used for oracle comparisons.
pub const ORACLE_SET: [&str; 14] = [
    "3_1", "3_1m", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "8_19", "10_124", "3_1#4_1",
    "3_1#4_1#5_1", "b12",
];

pub fn base_set() -> Vec<(&'static str, PlanarDiagram)> {
    BASE_SET.iter().map(|&n| (n, by_name(n).expect("known sample"))).collect()
}

pub fn oracle_set() -> Vec<(&'static str, PlanarDiagram)> {
    ORACLE_SET.iter().map(|&n| (n, by_name(n).expect("known sample"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_samples_valid() {
        for (name, d) in base_set().into_iter().chain(oracle_set()) {
            assert!(d.validate().is_ok(), "{name}");
            assert!(d.n_crossings() <= 12, "{name}");
        }
    }

    #[test]
    fn braid_torus_knots() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.writhe(), 3);
        assert!(braid_closure(2, &[1, 1]).is_err());
        assert_eq!(by_name("b12").unwrap().n_crossings(), 12);
    }

    #[test]
    fn crossing_counts() {
        for (n, k) in [("unknot", 0), ("3_1", 3), ("4_1", 4), ("6_3", 6), ("3_1#4_1", 7), ("8_19", 8)] {
            assert_eq!(by_name(n).unwrap().n_crossings(), k, "{n}");
        }
    }
}
