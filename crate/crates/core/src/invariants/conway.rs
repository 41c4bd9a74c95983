use crate::diagram::{gauss_diagram, PlanarDiagram};
use crate::error::{Error, Result};

/// Second Conway coefficient by skein recursion: crossings met first from
/// below are switched one at a time until the diagram is descending, and each
/// switch contributes `sign * lk(L0)` of the oriented smoothing.
pub fn conway_a2_oracle(d: &PlanarDiagram) -> Result<i64> {
    conway_a2_oracle_guarded(d, super::bracket::DEFAULT_STATE_GUARD)
}

pub fn conway_a2_oracle_guarded(d: &PlanarDiagram, guard: usize) -> Result<i64> {
    let n = d.n_crossings();
    if n > guard {
        return Err(Error::Guard { what: "skein recursion", limit: guard, got: n });
    }
    let g = gauss_diagram(d);
    let mut chords: Vec<(i64, usize, usize)> =
        g.chords.iter().map(|c| (c.sign as i64, c.over, c.under)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| chords[i].1.min(chords[i].2));
    let mut a2 = 0i64;
    for i in order {
        let (sign, over, under) = chords[i];
        if under > over {
            continue;
        }
        let (p, q) = (under, over);
        let inside = |x: usize| p < x && x < q;
        let twice_lk: i64 = chords
            .iter()
            .enumerate()
            .filter(|&(j, c)| j != i && inside(c.1) != inside(c.2))
            .map(|(_, c)| c.0)
            .sum();
        debug_assert_eq!(twice_lk % 2, 0);
        a2 += sign * twice_lk / 2;
        chords[i] = (-sign, under, over);
    }
    Ok(a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn reference_values() {
        assert_eq!(conway_a2_oracle(&PlanarDiagram::unknot()).unwrap(), 0);
        for (n, a2) in [("3_1", 1), ("3_1m", 1), ("4_1", -1), ("5_1", 3), ("5_2", 2), ("6_1", -2), ("6_2", -1), ("6_3", 1)] {
            assert_eq!(conway_a2_oracle(&samples::by_name(n).unwrap()).unwrap(), a2, "{n}");
        }
    }
}
