use super::*;
use crate::hilbert::hilbert_series;
use crate::poly::{Mode, Ring};
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

fn shift_multiset(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

#[test]
fn borel_resolution_shifts() {
    let c = minimal_graded_resolution(&borel()).unwrap();
    c.check_composition().unwrap();
    c.check_graded().unwrap();
    assert_eq!(c.length(), 3);
    assert_eq!(shift_multiset(&c.shifts[0]), vec![2, 2, 2, 2, 3, 4, 4]);
    assert_eq!(shift_multiset(&c.shifts[1]), vec![3, 3, 3, 3, 4, 4, 5, 5, 5, 5, 5]);
    assert_eq!(shift_multiset(&c.shifts[2]), vec![4, 5, 6, 6, 6, 6]);
    assert_eq!(shift_multiset(&c.shifts[3]), vec![7]);
    let b = c.betti_table().unwrap();
    assert_eq!(
        b.generator_degrees().iter().map(|&d| b.get(0, d)).collect::<Vec<_>>(),
        vec![4, 1, 2]
    );
}

#[test]
fn principal_and_koszul() {
    let r = ring(&["x", "y", "z"]);
    let c = minimal_graded_resolution(&ideal(&r, "x^2*y + z^3")).unwrap();
    assert_eq!(c.length(), 0);
    assert_eq!(c.shifts, vec![vec![3]]);
    let b = ideal_betti(&ideal(&r, "x, y, z")).unwrap();
    assert_eq!(b.totals(), vec![3, 3, 1]);
    assert!(b.is_linear(1));
}

#[test]
fn example_one_tangent_cone_betti() {
    let r = ring(&["x", "y", "z", "t"]);
    let j = ideal(
        &r,
        "x^3, x^2*y, x^2*t^3, x*t^6, x^2*z^6, x*y^9 - x*z^6*t^3, x*y^8*t^3, y^7*t^9",
    );
    let c = minimal_graded_resolution(&j).unwrap();
    c.check_composition().unwrap();
    assert_eq!(c.betti_table().unwrap().totals(), vec![8, 12, 6, 1]);
}

#[test]
fn tor_oracle_small() {
    let r = ring(&["x", "y"]);
    let j = ideal(&r, "x^2, y^2");
    assert_eq!(tor_oracle(&j, 0, 2).unwrap(), 2);
    assert_eq!(tor_oracle(&j, 1, 4).unwrap(), 1);
    assert_eq!(tor_oracle(&j, 1, 3).unwrap(), 0);
}

#[test]
fn borel_oracle_agrees() {
    let j = borel();
    let b = ideal_betti(&j).unwrap();
    assert_eq!(tor_oracle_table(&j, 8).unwrap(), b);
}

#[test]
fn alternating_sum_matches_hilbert_numerator() {
    let j = borel();
    let b = ideal_betti(&j).unwrap();
    let h = hilbert_series(j.gens(), 4).unwrap();
    // K-polynomial of J = 1 - numerator of P/J
    let mut expected: Vec<i128> = h.numerator.iter().map(|c| -c).collect();
    expected[0] += 1;
    while expected.last() == Some(&0) {
        expected.pop();
    }
    assert_eq!(b.k_polynomial(), expected);
}

#[test]
fn hilbert_function_of_tangent_cone_by_counting() {
    let r = ring(&["x", "y", "z", "t"]);
    let j = ideal(
        &r,
        "x^3, x^2*y, x^2*t^3, x*t^6, x^2*z^6, x*y^9 - x*z^6*t^3, x*y^8*t^3, y^7*t^9",
    );
    let h = hilbert_series(j.gens(), 4).unwrap();
    for d in 0..=10i64 {
        let all = Monomial::all_of_degree(4, d as u32).len() as i128;
        assert_eq!(h.value(d), all - degree_part(&j, d).len() as i128, "degree {d}");
    }
}

#[test]
fn component_submodules() {
    let r = ring(&["x", "y"]);
    let j = ideal(&r, "x^2, y^3");
    let c = component_submodule(&j, 2).unwrap();
    assert_eq!(c.gens(), &r.parse_list("x^2").unwrap()[..]);
    assert!(component_submodule(&j, 1).unwrap().gens().is_empty());
    let b = borel();
    let c = component_submodule(&b, 2).unwrap();
    let expected = ideal(b.ring(), "x1^2, x1*x2, x2^2, x1*x3");
    assert!(c.same_ideal(&expected).unwrap());
    assert_eq!(c.gens().len(), 4);
}

#[test]
fn componentwise_linearity() {
    let b = borel();
    let rep = is_componentwise_linear(&b, false).unwrap();
    assert!(rep.componentwise_linear);
    assert_eq!(rep.per_degree.iter().map(|p| p.0).collect::<Vec<_>>(), vec![2, 3, 4]);
    assert!(is_componentwise_linear(&b, true).unwrap().componentwise_linear);
    assert!(tor_concentration_check(&b).unwrap());
    assert!(tor_splitting_check(&b).unwrap());
    let r = ring(&["x", "y"]);
    let j = ideal(&r, "x^2, y^3");
    let rep = is_componentwise_linear(&j, false).unwrap();
    assert_eq!(rep.per_degree, vec![(2, true), (3, false)]);
    assert!(!rep.componentwise_linear);
}

#[test]
fn borel_block_shape() {
    let c = minimal_graded_resolution(&borel()).unwrap();
    let rep = block_shape_check(&c);
    assert!(rep.passed, "{:?}", rep.failures);
    // M_1 carries entries of degree 3 and 2 above the diagonal
    let degs: BTreeSet<u32> = c.matrix(1).iter().flatten().filter_map(|e| e.degree()).collect();
    assert!(degs.contains(&1) && degs.contains(&2) && degs.contains(&3));
}

#[test]
fn single_degree_linear_block() {
    let r = ring(&["x", "y", "z"]);
    let c = minimal_graded_resolution(&ideal(&r, "x^2, x*y, y^2, x*z, y*z, z^2")).unwrap();
    assert!(block_shape_check(&c).passed);
    assert!(c.betti_table().unwrap().is_linear(2));
}

#[test]
fn betti_display_and_json() {
    let b = ideal_betti(&borel()).unwrap();
    let text = b.to_string();
    assert!(text.contains("total:"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2 + 3);
    let js = serde_json::to_value(&b).unwrap();
    assert!(js["betti"].is_array());
    let back: BettiTable = serde_json::from_value(js).unwrap();
    assert_eq!(back, b);
}

#[test]
fn non_minimal_complex_is_rejected() {
    let mut c = minimal_graded_resolution(&borel()).unwrap();
    c.minimal = false;
    assert!(matches!(c.betti_table(), Err(Error::NotMinimal(_))));
}

fn monomial_ideal() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0u32..4, 0u32..4, 0u32..3), 1..5)
        .prop_filter("no unit", |v| v.iter().all(|&(a, b, c)| a + b + c > 0))
}

/// Borel-fixed closure in 3 variables: x_i m / x_j for i < j.
fn borel_closure(seeds: &[Monomial]) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = seeds.iter().copied().collect();
    loop {
        let mut added = false;
        for m in set.clone() {
            for j in 0..3 {
                if m.exp(j) == 0 {
                    continue;
                }
                for i in 0..j {
                    let moved = Monomial::var(j).quotient_of(&m).mul(&Monomial::var(i));
                    added |= set.insert(moved);
                }
            }
        }
        if !added {
            break;
        }
    }
    crate::hilbert::minimalize_monomials(&set.into_iter().collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolution_matches_tor_oracle(raw in monomial_ideal()) {
        let r = ring(&["x", "y", "z"]);
        let gens: Vec<Poly> = raw.iter().map(|&(a, b, c)| Poly::term(Monomial::new(&[a, b, c]), Field::Rational.one())).collect();
        let j = GradedIdeal::new(&r, gens).unwrap();
        let c = minimal_graded_resolution(&j).unwrap();
        c.check_composition().unwrap();
        c.check_graded().unwrap();
        let b = c.betti_table().unwrap();
        let top = b.entries().map(|e| e.1).max().unwrap();
        prop_assert_eq!(tor_oracle_table(&j, top + 1).unwrap(), b);
    }

    #[test]
    fn borel_fixed_ideals_are_componentwise_linear(raw in prop::collection::vec((0u32..3, 0u32..3, 0u32..3), 1..3)) {
        let seeds: Vec<Monomial> = raw.iter().filter(|t| t.0 + t.1 + t.2 > 0).map(|&(a, b, c)| Monomial::new(&[a, b, c])).collect();
        prop_assume!(!seeds.is_empty());
        let r = ring(&["x", "y", "z"]);
        let gens: Vec<Poly> = borel_closure(&seeds).into_iter().map(|m| Poly::term(m, Field::Rational.one())).collect();
        let j = GradedIdeal::new(&r, gens).unwrap();
        prop_assert!(is_componentwise_linear(&j, false).unwrap().componentwise_linear);
        prop_assert!(tor_concentration_check(&j).unwrap());
        prop_assert!(tor_splitting_check(&j).unwrap());
        let c = minimal_graded_resolution(&j).unwrap();
        let rep = block_shape_check(&c);
        prop_assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn generator_degrees_decide_componentwise_linearity(raw in monomial_ideal()) {
        let r = ring(&["x", "y", "z"]);
        let gens: Vec<Poly> = raw.iter().map(|&(a, b, c)| Poly::term(Monomial::new(&[a, b, c]), Field::Rational.one())).collect();
        let j = GradedIdeal::new(&r, gens).unwrap();
        prop_assert_eq!(
            is_componentwise_linear(&j, false).unwrap().componentwise_linear,
            is_componentwise_linear(&j, true).unwrap().componentwise_linear
        );
    }
}
