//! Counting based arrow subdiagrams of a Gauss diagram.

use std::collections::HashMap;

use crate::diagram::GaussDiagram;

/// A based arrow diagram: arrows `(tail, head)` on points `0..2k`, sorted.
pub type Pattern = Vec<(u8, u8)>;

/// Pattern formed by a set of chords; arrows run from over to under.
fn pattern_of(g: &GaussDiagram, chords: &[usize]) -> Pattern {
    let mut pts: Vec<usize> = chords.iter().flat_map(|&c| [g.chords[c].over, g.chords[c].under]).collect();
    pts.sort_unstable();
    let rank = |p: usize| pts.binary_search(&p).unwrap() as u8;
    let mut arrows: Pattern =
        chords.iter().map(|&c| (rank(g.chords[c].over), rank(g.chords[c].under))).collect();
    arrows.sort_unstable();
    arrows
}

/// Signed counts of every based pattern with exactly `k` arrows (k <= 3).
pub fn pattern_counts(g: &GaussDiagram, k: usize) -> HashMap<Pattern, i64> {
    let n = g.chords.len();
    let sign = |c: usize| g.chords[c].sign as i64;
    let mut out: HashMap<Pattern, i64> = HashMap::new();
    let mut bump = |cs: &[usize]| {
        let w: i64 = cs.iter().map(|&c| sign(c)).product();
        *out.entry(pattern_of(g, cs)).or_insert(0) += w;
    };
    match k {
        0 => bump(&[]),
        1 => (0..n).for_each(|a| bump(&[a])),
        2 => {
            for a in 0..n {
                for b in a + 1..n {
                    bump(&[a, b]);
                }
            }
        }
        3 => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        bump(&[a, b, c]);
                    }
                }
            }
        }
        _ => panic!("patterns above three arrows are not supported"),
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Signed count of one pattern.
pub fn count(g: &GaussDiagram, pattern: &[(u8, u8)]) -> i64 {
    let mut p = pattern.to_vec();
    p.sort_unstable();
    pattern_counts(g, p.len()).get(&p).copied().unwrap_or(0)
}

/// Every based pattern with `k` arrows.
pub fn all_patterns(k: usize) -> Vec<Pattern> {
    fn matchings(free: Vec<u8>) -> Vec<Vec<(u8, u8)>> {
        if free.is_empty() {
            return vec![Vec::new()];
        }
        let a = free[0];
        let mut out = Vec::new();
        for i in 1..free.len() {
            let b = free[i];
            let rest: Vec<u8> = free.iter().copied().filter(|&x| x != a && x != b).collect();
            for mut m in matchings(rest) {
                m.push((a, b));
                out.push(m);
            }
        }
        out
    }
    let mut out = Vec::new();
    for m in matchings((0..2 * k as u8).collect()) {
        for mask in 0..1u32 << k {
            let mut p: Pattern = m
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            p.sort_unstable();
            out.push(p);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{gauss_diagram, samples};

    #[test]
    fn pattern_totals() {
        assert_eq!(all_patterns(1).len(), 2);
        assert_eq!(all_patterns(2).len(), 12);
        assert_eq!(all_patterns(3).len(), 120);
    }

    #[test]
    fn single_arrows_sum_to_writhe() {
        let d = samples::by_name("5_2").unwrap();
        let g = gauss_diagram(&d);
        let total: i64 = pattern_counts(&g, 1).values().sum();
        assert_eq!(total, d.writhe() as i64);
    }
}
