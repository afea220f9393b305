use super::*;
use crate::poly::{Mode, Ring};
use crate::resolution::{block_shape_check, is_componentwise_linear};
use crate::scalar::Field;
use crate::tangent::{is_min_standard_base, semigroup_defining_ideal, tangent_cone_ideal, FiltrationKind};
use proptest::prelude::*;

fn ring(names: &[&str]) -> Ring {
    Ring::new(names, Field::Rational, Mode::Graded).unwrap()
}

fn ideal(r: &Ring, s: &str) -> GradedIdeal {
    GradedIdeal::new(r, r.parse_list(s).unwrap()).unwrap()
}

fn borel() -> GradedIdeal {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    ideal(&r, "x1^2, x1*x2, x2^2, x1*x3, x2*x3^2, x1*x4^3, x3^4")
}

fn local(names: &[&str], s: &str) -> FilteredIdeal {
    let r = Ring::new(names, Field::Rational, Mode::Local).unwrap();
    FilteredIdeal::new(&r, r.parse_list(s).unwrap(), FiltrationKind::Intersection).unwrap()
}

/// Compare the series route with linear algebra in every degree up to the bound.
fn cross_check(c: &FreeComplex) {
    for i in 0..=c.length() {
        let h = complex_homology(c, i).unwrap();
        for d in 0..=degree_bound(c) {
            assert_eq!(
                h.dim(d),
                homology_dimension_by_linear_algebra(c, i, d).unwrap(),
                "H_{i} in degree {d}"
            );
        }
    }
}

#[test]
fn koszul_complex_is_its_own_linear_part() {
    let r = ring(&["x", "y"]);
    let c = minimal_graded_resolution(&ideal(&r, "x, y")).unwrap();
    let lin = linear_part(&c).unwrap();
    assert_eq!(lin, c);
    for i in 1..=lin.length() {
        assert!(complex_homology(&lin, i).unwrap().is_zero());
    }
    cross_check(&lin);
}

#[test]
fn zero_differential_homology() {
    let r = ring(&["x", "y"]);
    let c = minimal_graded_resolution(&ideal(&r, "x^2, y^2")).unwrap();
    let lin = linear_part(&c).unwrap();
    assert!(lin.maps[0].iter().all(|v| v.is_zero()));
    let h = complex_homology(&lin, 1).unwrap();
    // H_1 = F_1 = P(-4)
    assert_eq!(h.dim(4), 1);
    assert_eq!(h.dim(5), 2);
    assert_eq!(h.dim(3), 0);
    cross_check(&lin);
}

#[test]
fn borel_linear_part() {
    let c = minimal_graded_resolution(&borel()).unwrap();
    let lin = linear_part(&c).unwrap();
    assert!(lin
        .maps
        .iter()
        .flatten()
        .flat_map(|v| v.terms())
        .all(|t| t.mon.deg() == 1));
    assert_eq!(linear_part(&lin).unwrap(), lin);
    assert!(block_shape_check(&c).passed);
    let rep = linearity_defect_graded(&borel()).unwrap();
    assert_eq!(rep.ld, 0);
    assert!(rep.koszul);
    assert!(linear_part(&FreeComplex { minimal: false, ..c }).is_err());
}

#[test]
fn non_componentwise_linear_has_positive_defect() {
    let r = ring(&["x", "y"]);
    let j = ideal(&r, "x^2, y^3");
    assert!(!is_componentwise_linear(&j, false).unwrap().componentwise_linear);
    assert!(linearity_defect_graded(&j).unwrap().ld >= 1);
}

#[test]
fn example_one_is_not_koszul() {
    let i = local(&["x", "y", "z", "t"], "x^3 - y^7, x^2*y - x*t^3 - z^6");
    let rep = linearity_defect_local(&i).unwrap();
    assert!(!rep.koszul);
    assert!(rep.homology.iter().any(|h| h.index == 1));
    let m = minimalize_local(&lift_resolution(&i).unwrap()).unwrap();
    let lin = local_linear_part(&m.complex).unwrap();
    cross_check(&lin);
}

#[test]
fn principal_is_koszul() {
    assert!(koszul_verdict(&local(&["x", "y"], "x^2 + y^5")).unwrap());
}

#[test]
fn semigroup_is_koszul() {
    let i = semigroup_defining_ideal(&[9, 17, 19, 39]).unwrap();
    assert!(is_min_standard_base(&i).unwrap());
    let j = tangent_cone_ideal(&i).unwrap();
    assert!(is_componentwise_linear(&j, false).unwrap().componentwise_linear);
    assert!(koszul_verdict(&i).unwrap());
}

#[test]
fn super_regular_sequence_lin_is_graded_resolution() {
    // initial forms x^2, y^2, z^2 form a regular sequence; the perturbed
    // ideal is Koszul and its lin^R is the graded resolution's linear part
    let i = local(&["x", "y", "z"], "x^2 + y^3, y^2 + x*z^2, z^2 + x^3*y");
    let lifted = lift_resolution(&i).unwrap();
    let m = minimalize_local(&lifted).unwrap();
    assert!(m.log.is_empty());
    let lin_local = local_linear_part(&m.complex).unwrap();
    let lin_graded = linear_part(&lifted.graded).unwrap();
    for s in 1..=lin_local.length() {
        assert_eq!(lin_local.matrix(s), lin_graded.matrix(s));
    }
}

fn borel_closure(seeds: &[Monomial]) -> Vec<Monomial> {
    let mut set: std::collections::BTreeSet<Monomial> = seeds.iter().copied().collect();
    loop {
        let mut added = false;
        for m in set.clone() {
            for j in 0..3 {
                if m.exp(j) > 0 {
                    for i in 0..j {
                        added |= set.insert(Monomial::var(j).quotient_of(&m).mul(&Monomial::var(i)));
                    }
                }
            }
        }
        if !added {
            return crate::hilbert::minimalize_monomials(&set.into_iter().collect::<Vec<_>>());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// ld = 0 exactly for componentwise linear ideals, on monomial ideals and
    /// on their Borel closures.
    #[test]
    fn defect_zero_iff_componentwise_linear(raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 1..4), close in any::<bool>()) {
        let mut mons: Vec<Monomial> = raw.iter().filter(|t| t.0 + t.1 + t.2 > 0).map(|&(a, b, c)| Monomial::new(&[a, b, c])).collect();
        prop_assume!(!mons.is_empty());
        if close {
            mons = borel_closure(&mons);
        }
        let r = ring(&["x", "y", "z"]);
        let gens = mons.iter().map(|m| crate::poly::Poly::term(*m, Field::Rational.one())).collect();
        let j = GradedIdeal::new(&r, gens).unwrap();
        let cwl = is_componentwise_linear(&j, false).unwrap().componentwise_linear;
        prop_assert_eq!(linearity_defect_graded(&j).unwrap().ld == 0, cwl);
        let lin = linear_part(&minimal_graded_resolution(&j).unwrap()).unwrap();
        prop_assert_eq!(linear_part(&lin).unwrap(), lin);
    }
}
