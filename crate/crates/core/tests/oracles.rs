use ckmoves::diagram::{connected_sum, mirror, samples, PlanarDiagram};
use ckmoves::invariants::{conway_a2_oracle, jones, jones_expansion, jones_state_sum, v2, v3};
use num_rational::Ratio;

#[test]
fn v2_equals_conway_a2() {
    for (name, d) in samples::oracle_set() {
        assert_eq!(v2(&d), conway_a2_oracle(&d).unwrap(), "{name}");
    }
}

#[test]
fn expansion_relations() {
    // fit on the anchors, then check everywhere
    let e = |d: &PlanarDiagram| jones_expansion(d, 3).unwrap();
    let t = samples::by_name("3_1").unwrap();
    let f = samples::by_name("4_1").unwrap();
    let c2 = e(&t)[2] / Ratio::from(v2(&t) as i128);
    assert_eq!(c2, Ratio::from(-3));
    assert_eq!(e(&f)[2], c2 * Ratio::from(v2(&f) as i128));
    let b = e(&f)[3] / Ratio::from(v2(&f) as i128);
    let a = (e(&t)[3] - b * Ratio::from(v2(&t) as i128)) / Ratio::from(v3(&t) as i128);
    assert_eq!((a, b), (Ratio::from(6), Ratio::from(0)));
    for (name, d) in samples::oracle_set() {
        let x = e(&d);
        assert_eq!(x[0], Ratio::from(1), "{name}");
        assert_eq!(x[1], Ratio::from(0), "{name}");
        assert_eq!(x[2], c2 * Ratio::from(v2(&d) as i128), "{name}");
        assert_eq!(x[3], a * Ratio::from(v3(&d) as i128) + b * Ratio::from(v2(&d) as i128), "{name}");
    }
}

#[test]
fn contraction_agrees_with_state_sum() {
    for (name, d) in samples::oracle_set() {
        assert_eq!(jones(&d).unwrap(), jones_state_sum(&d).unwrap(), "{name}");
    }
}

#[test]
fn additivity_and_mirrors() {
    let set = samples::oracle_set();
    for (n1, d1) in set.iter().take(6) {
        for (n2, d2) in set.iter().take(6) {
            let s = connected_sum(d1, d2);
            assert_eq!(v2(&s), v2(d1) + v2(d2), "{n1}#{n2}");
            assert_eq!(v3(&s), v3(d1) + v3(d2), "{n1}#{n2}");
        }
        let m = mirror(d1);
        assert_eq!(v2(&m), v2(d1));
        assert_eq!(v3(&m), -v3(d1));
        assert_eq!(jones(&m).unwrap(), jones(d1).unwrap().substitute_power(-1));
    }
}
