use num_rational::Ratio;

use crate::diagram::{Graph, PlanarDiagram};
use crate::error::{Error, Result};

use super::bracket::{closed_bracket, kauffman_bracket_guarded, DEFAULT_STATE_GUARD};
use super::LaurentPolynomial as Poly;

/// Writhe-normalized bracket in `t = A^-4`.
fn normalize(bracket: &Poly, writhe: i32) -> Result<Poly> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    bracket
        .shift(-3 * writhe)
        .scale(sign)
        .divide_exponents(-4)
        .ok_or(Error::Overflow("jones exponent not divisible by 4"))
}

/// Jones polynomial via contraction of the bracket.
pub fn jones(d: &PlanarDiagram) -> Result<Poly> {
    normalize(&closed_bracket(&Graph::from_diagram(d))?, d.writhe())
}

/// Jones polynomial via the full state sum.
pub fn jones_state_sum(d: &PlanarDiagram) -> Result<Poly> {
    jones_state_sum_guarded(d, DEFAULT_STATE_GUARD)
}

pub fn jones_state_sum_guarded(d: &PlanarDiagram, guard: usize) -> Result<Poly> {
    normalize(&kauffman_bracket_guarded(d, guard)?, d.writhe())
}

/// |V(-1)|.
pub fn determinant(jones: &Poly) -> u64 {
    jones.eval_unit(-1).unsigned_abs() as u64
}

/// Taylor coefficients of `V(e^h)` up to `h^max_order`.
pub fn expansion_of(jones: &Poly, max_order: usize) -> Result<Vec<Ratio<i128>>> {
    let mut out = Vec::with_capacity(max_order + 1);
    let mut fact: i128 = 1;
    for n in 0..=max_order {
        if n > 0 {
            fact = fact.checked_mul(n as i128).ok_or(Error::Overflow("factorial"))?;
        }
        let mut num: i128 = 0;
        for (c, e) in jones.terms() {
            let p = (e as i128)
                .checked_pow(n as u32)
                .and_then(|p| p.checked_mul(c))
                .ok_or(Error::Overflow("jones expansion"))?;
            num = num.checked_add(p).ok_or(Error::Overflow("jones expansion"))?;
        }
        out.push(Ratio::new(num, fact));
    }
    Ok(out)
}

pub fn jones_expansion(d: &PlanarDiagram, max_order: usize) -> Result<Vec<Ratio<i128>>> {
    expansion_of(&jones_state_sum(d)?, max_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{connected_sum, mirror, samples};

    fn k(n: &str) -> PlanarDiagram {
        samples::by_name(n).unwrap()
    }

    #[test]
    fn reference_polynomials() {
        assert_eq!(jones(&PlanarDiagram::unknot()).unwrap(), Poly::one());
        assert_eq!(
            jones_state_sum(&k("3_1")).unwrap(),
            Poly::from_terms([(-1, -4), (1, -3), (1, -1)])
        );
        assert_eq!(
            jones_state_sum(&k("4_1")).unwrap(),
            Poly::from_terms([(1, -2), (-1, -1), (1, 0), (-1, 1), (1, 2)])
        );
    }

    #[test]
    fn kink_is_invisible() {
        let d = crate::diagram::parse_pd("PD: X(1,1,2,2)").unwrap();
        assert_eq!(jones_state_sum(&d).unwrap(), Poly::one());
    }

    #[test]
    fn mirror_inverts_variable() {
        for n in ["3_1", "5_2", "6_2"] {
            let j = jones(&k(n)).unwrap();
            assert_eq!(jones(&mirror(&k(n))).unwrap(), j.substitute_power(-1), "{n}");
        }
    }

    #[test]
    fn multiplicative_on_sums() {
        let (a, b) = (k("3_1"), k("4_1"));
        let s = connected_sum(&a, &b);
        assert_eq!(jones_state_sum(&s).unwrap(), &jones(&a).unwrap() * &jones(&b).unwrap());
    }

    #[test]
    fn determinants() {
        for (n, det) in [("unknot", 1), ("3_1", 3), ("4_1", 5), ("5_1", 5), ("5_2", 7), ("6_1", 9)] {
            assert_eq!(determinant(&jones(&k(n)).unwrap()), det, "{n}");
        }
    }

    #[test]
    fn unknot_expansion() {
        let e = jones_expansion(&PlanarDiagram::unknot(), 3).unwrap();
        assert_eq!(e, vec![Ratio::from(1), Ratio::from(0), Ratio::from(0), Ratio::from(0)]);
    }
}
