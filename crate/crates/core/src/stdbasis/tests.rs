use super::*;
use crate::linalg::Matrix;
use crate::poly::Ring;
use crate::scalar::Scalar;
use proptest::prelude::*;

fn ring(names: &[&str], mode: Mode) -> Ring {
    Ring::new(names, Field::Rational, mode).unwrap()
}

fn vecs(gens: &[Poly], ord: &TermOrder) -> Vec<Vector> {
    gens.iter().map(|g| g.to_vector(0, ord)).collect()
}

fn grevlex() -> TermOrder {
    TermOrder::ideal(MonoOrder::DegRevLex)
}

fn local() -> TermOrder {
    TermOrder::ideal(MonoOrder::NegDegRevLex)
}

/// Coefficient row of `f` over a fixed list of monomials.
fn row(f: &Poly, mons: &[Monomial]) -> Vec<Scalar> {
    let mut r = vec![Field::Rational.zero(); mons.len()];
    for (m, c) in f.terms() {
        if let Some(i) = mons.iter().position(|x| x == m) {
            r[i] = c.clone();
        }
    }
    r
}

/// Degree-`d` part of the homogeneous ideal spanned by `gens`, as a matrix
/// of monomial multiples (no Gröbner bases involved).
fn graded_piece(gens: &[Poly], nvars: usize, d: u32) -> (Matrix, Vec<Monomial>) {
    let mons = Monomial::all_of_degree(nvars, d);
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.degree().unwrap();
        if gd > d {
            continue;
        }
        for m in Monomial::all_of_degree(nvars, d - gd) {
            rows.push(row(&g.mul_mon(&m), &mons));
        }
    }
    (Matrix::from_rows(Field::Rational, mons.len(), rows), mons)
}

#[test]
fn buchberger_finds_y_cubed() {
    let r = ring(&["x", "y"], Mode::Graded);
    let gens = r.parse_list("x^2, x*y + y^2").unwrap();
    let gb = ideal_groebner(&gens, MonoOrder::DegRevLex).unwrap();
    let y3 = r.parse("y^3").unwrap();
    assert!(gb.contains(&y3), "{gb:?}");
    // y^3 = y(xy + y^2) - ... lies in the degree-3 span of the generators
    let (m, mons) = graded_piece(&gens, 2, 3);
    assert!(m.row_span_contains(&row(&y3, &mons)));
}

#[test]
fn trivial_bases() {
    let r = ring(&["x", "y"], Mode::Graded);
    let gens = r.parse_list("y, x").unwrap();
    let gb = ideal_groebner(&gens, MonoOrder::DegRevLex).unwrap();
    assert_eq!(gb.len(), 2);
    assert!(gb.contains(&gens[0]) && gb.contains(&gens[1]));
    let f = r.parse("3*x^2 + x*y + 1").unwrap();
    let gb = ideal_groebner(std::slice::from_ref(&f), MonoOrder::DegRevLex).unwrap();
    assert_eq!(gb, vec![f.monic(MonoOrder::DegRevLex)]);
}

#[test]
fn buchberger_rejects_local_order() {
    assert_eq!(buchberger(&[], &local()).unwrap_err(), Error::LocalOrder);
    assert_eq!(standard_basis(&[], &grevlex()).unwrap_err(), Error::GlobalOrder);
}

#[test]
fn mora_examples() {
    let r = ring(&["x", "y", "z", "t"], Mode::Local);
    let ord = local();
    let p = |s: &str| r.parse(s).unwrap().to_vector(0, &ord);
    let nf = mora_normal_form(&p("x"), &[p("x - x^2")], &ord).unwrap();
    assert!(nf.is_zero());
    let nf = mora_normal_form(&p("y"), &[p("x")], &ord).unwrap();
    assert_eq!(nf, p("y"));
    let f = p("x^3 - y^7");
    let nf = mora_normal_form(&f, &[f.clone(), p("x^2*y - x*t^3 - z^6")], &ord).unwrap();
    assert!(nf.is_zero());
}

#[test]
fn local_basis_of_unit_multiple() {
    let r = ring(&["x"], Mode::Local);
    let f = r.parse("x - x^2").unwrap();
    let sb = ideal_standard_basis(std::slice::from_ref(&f), MonoOrder::NegDegRevLex).unwrap();
    assert_eq!(sb.len(), 1);
    assert_eq!(sb[0].initial_form().unwrap(), r.parse("x").unwrap());
}

fn example_one() -> (Ring, Vec<Poly>, Vec<Poly>) {
    let r = ring(&["x", "y", "z", "t"], Mode::Local);
    let gens = r.parse_list("x^3 - y^7, x^2*y - x*t^3 - z^6").unwrap();
    let listed = r
        .parse_list("x^3, x^2*y, x^2*t^3, x*t^6, x^2*z^6, x*y^9 - x*z^6*t^3, x*y^8*t^3, y^7*t^9")
        .unwrap();
    (r, gens, listed)
}

#[test]
fn example_one_initial_forms() {
    let (_, gens, listed) = example_one();
    let sb = ideal_standard_basis(&gens, MonoOrder::NegDegRevLex).unwrap();
    let forms: Vec<Poly> = sb.iter().map(|f| f.initial_form().unwrap()).collect();
    for g in &listed {
        assert!(ideal_membership(g, &forms, Mode::Graded).unwrap().member, "{g:?}");
    }
    for f in &forms {
        assert!(ideal_membership(f, &listed, Mode::Graded).unwrap().member, "{f:?}");
    }
}

/// Echelon rows of `(I + n^top)/n^top` sorted low degree first; returns the
/// number of pivots in each degree, i.e. `dim_k (I*)_d` for `d < top`.
fn truncated_initial_dims(gens: &[Poly], nvars: usize, top: u32) -> Vec<usize> {
    let mons: Vec<Monomial> = (0..top)
        .flat_map(|d| {
            let mut v = Monomial::all_of_degree(nvars, d);
            v.reverse();
            v
        })
        .collect();
    let mut rows = Vec::new();
    for g in gens {
        for d in 0..top {
            for m in Monomial::all_of_degree(nvars, d) {
                let h = g.mul_mon(&m);
                rows.push(row(&h, &mons));
            }
        }
    }
    let mut mat = Matrix::from_rows(Field::Rational, mons.len(), rows);
    let piv = mat.rref();
    let mut dims = vec![0; top as usize];
    for p in piv {
        dims[mons[p].deg() as usize] += 1;
    }
    dims
}

#[test]
fn local_basis_matches_truncated_linear_algebra() {
    let r = ring(&["x", "y"], Mode::Local);
    let gens = r.parse_list("x^2 - y^3, y^2 - x^3").unwrap();
    let sb = ideal_standard_basis(&gens, MonoOrder::NegDegRevLex).unwrap();
    let leads: Vec<Monomial> = sb
        .iter()
        .map(|f| f.lead_monomial(MonoOrder::NegDegRevLex).unwrap())
        .collect();
    let dims = truncated_initial_dims(&gens, 2, 9);
    for d in 0..9u32 {
        let count = Monomial::all_of_degree(2, d)
            .iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .count();
        assert_eq!(count, dims[d as usize], "degree {d}");
    }
    // x^2, y^2 is a regular sequence, so nothing beyond the generators
    assert_eq!(sb.len(), 2);
}

#[test]
fn koszul_syzygies() {
    let r = ring(&["x", "y", "z"], Mode::Graded);
    let ord = grevlex();
    let gens = vecs(&r.parse_list("x, y, z").unwrap(), &ord);
    let syz = syzygy_basis(&gens, &ord, None).unwrap();
    let sord = TermOrder::module(MonoOrder::DegRevLex, syz.shifts.clone());
    assert_eq!(minimal_homogeneous_generators(&syz.gens, &sord).unwrap().len(), 3);

    let gens = vecs(&r.parse_list("x^2, y^3").unwrap(), &ord);
    let syz = syzygy_basis(&gens, &ord, None).unwrap();
    assert_eq!(syz.gens.len(), 1);
    let s = &syz.gens[0];
    assert!(combine(s, &gens, &ord).is_zero());
    let parts = s.component_terms(2);
    assert_eq!(parts[0].len(), 1);
    assert_eq!(parts[0][0].0, Monomial::new(&[0, 3]));
}

#[test]
fn local_syzygies_of_example_one() {
    let (_, gens, _) = example_one();
    let ord = local();
    let v = vecs(&gens, &ord);
    let syz = syzygy_basis(&v, &ord, None).unwrap();
    assert_eq!(syz.shifts, vec![3, 3]);
    let sord = TermOrder::module(MonoOrder::NegDegRevLex, syz.shifts.clone());
    let keep = minimal_local_generators(&syz.gens, &sord).unwrap();
    assert_eq!(keep.len(), 1);
    for s in &syz.gens {
        assert!(combine(s, &v, &ord).is_zero());
    }
}

#[test]
fn membership_examples() {
    let r = ring(&["x"], Mode::Local);
    let x = r.parse("x").unwrap();
    let g = r.parse("x - x^2").unwrap();
    let m = ideal_membership(&x, std::slice::from_ref(&g), Mode::Local).unwrap();
    assert!(m.member);
    assert!(m.unit.constant_term().is_some());
    assert_eq!(m.unit.mul(&x), m.coeffs[0].mul(&g));
    assert!(!ideal_membership(&x, &[g], Mode::Graded).unwrap().member);
}

#[test]
fn graded_membership_certificate() {
    let r = ring(&["x", "y"], Mode::Graded);
    let gens = r.parse_list("x^2, x*y + y^2").unwrap();
    let f = r.parse("y^3 + x^3").unwrap();
    let m = ideal_membership(&f, &gens, Mode::Graded).unwrap();
    assert!(m.member);
    let sum = m
        .coeffs
        .iter()
        .zip(&gens)
        .fold(Poly::zero(), |a, (c, g)| a.add(&c.mul(g)));
    assert_eq!(m.unit.mul(&f), sum);
}

#[test]
fn colon_examples() {
    let r = ring(&["x", "y"], Mode::Graded);
    let p = |s: &str| r.parse_list(s).unwrap();
    assert_eq!(colon_ideal(&p("x^2"), &r.parse("x").unwrap()).unwrap(), p("x"));
    let c = colon_ideal(&p("x*y, y^2"), &r.parse("y").unwrap()).unwrap();
    let expected = p("x, y");
    for g in &c {
        assert!(ideal_membership(g, &expected, Mode::Graded).unwrap().member);
    }
    for g in &expected {
        assert!(ideal_membership(g, &c, Mode::Graded).unwrap().member);
    }
    let j = p("x^2, x*y + y^2");
    let c = colon_ideal(&j, &r.parse("1").unwrap()).unwrap();
    assert_eq!(c, ideal_groebner(&j, MonoOrder::DegRevLex).unwrap());
}

#[test]
fn elimination_examples() {
    let r = ring(&["t", "x", "y"], Mode::Graded);
    let gens = r.parse_list("x - t^2, y - t^3").unwrap();
    let e = eliminate(&gens, &[0], 3).unwrap();
    assert_eq!(e.len(), 1);
    let target = r.parse("x^3 - y^2").unwrap();
    assert!(e[0] == target || e[0] == target.neg());
    let e = eliminate(&r.parse_list("x - t").unwrap(), &[0], 3).unwrap();
    assert!(e.is_empty());
    // dropping a variable that is not first
    let r = ring(&["x", "y", "t"], Mode::Graded);
    let e = eliminate(&r.parse_list("x - t^2, y - t^3").unwrap(), &[2], 3).unwrap();
    let target = r.parse("x^3 - y^2").unwrap();
    assert!(e[0] == target || e[0] == target.neg());
}

#[test]
fn certificates_remultiply() {
    let (_, gens, _) = example_one();
    let ord = local();
    let v = vecs(&gens, &ord);
    let b = basis_with_certificates(&v, &ord).unwrap();
    let plain = standard_basis(&v, &ord).unwrap();
    assert_eq!(b.basis.len(), plain.basis.len());
    for (e, c) in b.basis.iter().zip(b.certificates.as_ref().unwrap()) {
        assert_eq!(&combine(c, &v, &ord), e);
    }
}

fn hom_poly(d: u32) -> impl Strategy<Value = Poly> {
    let mons = Monomial::all_of_degree(3, d);
    prop::collection::vec(-3i64..4, mons.len())
        .prop_map(move |cs| Poly::from_terms(mons.iter().zip(cs).map(|(m, c)| (*m, Field::Rational.int(c)))))
}

fn hom_ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec((1u32..4).prop_flat_map(hom_poly), 1..4)
        .prop_map(|v| v.into_iter().filter(|p| !p.is_zero()).collect::<Vec<_>>())
        .prop_filter("nonzero", |v: &Vec<Poly>| !v.is_empty())
}

fn any_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4), 1..5).prop_map(|ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|((a, b, c), k)| (Monomial::new(&[a, b, c]), Field::Rational.int(k))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn returned_bases_satisfy_buchberger_criterion(gens in prop::collection::vec(any_poly(), 1..4)) {
        let ord = grevlex();
        let v: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_vector(0, &ord)).collect();
        let b = basis(&v, &ord).unwrap();
        for i in 0..b.basis.len() {
            for j in i + 1..b.basis.len() {
                let s = s_vector_of(&b.basis[i], &b.basis[j], &ord).unwrap();
                prop_assert!(normal_form(&s, &b.basis, &ord, false).unwrap().is_zero());
            }
        }
        for g in &v {
            prop_assert!(normal_form(g, &b.basis, &ord, false).unwrap().is_zero());
        }
        // determinism
        let again = basis(&v, &ord).unwrap();
        prop_assert_eq!(&again.basis, &b.basis);
    }

    #[test]
    fn local_bases_have_the_leading_ideal_of_linear_algebra(gens in prop::collection::vec(any_poly(), 1..4)) {
        let ord = local();
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let b = basis(&vecs(&gens, &ord), &ord).unwrap();
        // every element lies in I itself
        for e in &b.basis {
            prop_assert!(ideal_membership(&Poly::from_vector(e), &gens, Mode::Graded).unwrap().member);
        }
        let leads: Vec<Monomial> = b.basis.iter().map(|e| e.lead().unwrap().mon).collect();
        let top = 8;
        let dims = truncated_initial_dims(&gens, 3, top);
        for d in 0..top {
            let count = Monomial::all_of_degree(3, d)
                .iter()
                .filter(|m| leads.iter().any(|l| l.divides(m)))
                .count();
            prop_assert_eq!(count, dims[d as usize], "degree {}", d);
        }
        // determinism
        prop_assert_eq!(&basis(&vecs(&gens, &ord), &ord).unwrap().basis, &b.basis);
    }

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(any_poly(), 1..3), f in any_poly()) {
        let ord = grevlex();
        let v: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_vector(0, &ord)).collect();
        let b = basis(&v, &ord).unwrap();
        let fv = f.to_vector(0, &ord);
        let r = normal_form(&fv, &b.basis, &ord, true).unwrap();
        prop_assert_eq!(normal_form(&r, &b.basis, &ord, true).unwrap(), r.clone());
        // f - r lies in the ideal
        let diff = Poly::from_vector(&fv.sub(&r, &ord));
        prop_assert!(ideal_membership(&diff, &gens, Mode::Graded).unwrap().member);
    }

    #[test]
    fn local_membership_certificate(gens in prop::collection::vec(any_poly(), 1..3), a in any_poly(), b in any_poly()) {
        // f = a*g0 + b*g_last lies in the ideal; certificate must re-multiply
        let f = a.mul(&gens[0]).add(&b.mul(&gens[gens.len() - 1]));
        let m = ideal_membership(&f, &gens, Mode::Local).unwrap();
        prop_assert!(m.member);
        let sum = m.coeffs.iter().zip(&gens).fold(Poly::zero(), |acc, (c, g)| acc.add(&c.mul(g)));
        prop_assert_eq!(m.unit.mul(&f), sum);
        if !f.is_zero() {
            prop_assert!(m.unit.constant_term().is_some());
        }
    }

    #[test]
    fn syzygies_match_graded_kernels(gens in hom_ideal()) {
        let ord = grevlex();
        let v = vecs(&gens, &ord);
        let syz = syzygy_basis(&v, &ord, None).unwrap();
        for s in &syz.gens {
            prop_assert!(combine(s, &v, &ord).is_zero());
        }
        // dim of the kernel of ⊕ P(-d_i) -> P in degree D vs the span of
        // monomial multiples of the syzygies
        for top in 1..=6u32 {
            let target = Monomial::all_of_degree(3, top);
            let mut cols: Vec<(usize, Monomial)> = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let d = g.degree().unwrap();
                if d <= top {
                    for m in Monomial::all_of_degree(3, top - d) {
                        cols.push((i, m));
                    }
                }
            }
            let image_rows: Vec<Vec<Scalar>> = cols.iter().map(|(i, m)| row(&gens[*i].mul_mon(m), &target)).collect();
            let image_rank = Matrix::from_rows(Field::Rational, target.len(), image_rows).rank();
            let kernel_dim = cols.len() - image_rank;
            let mut rows = Vec::new();
            for s in &syz.gens {
                let sdeg = s.terms().iter().map(|t| t.mon.deg() as i64 + gens[t.comp as usize].degree().unwrap() as i64).max().unwrap();
                if sdeg > top as i64 {
                    continue;
                }
                for m in Monomial::all_of_degree(3, top - sdeg as u32) {
                    let sm = s.mul_mon(&m);
                    let mut r = vec![Field::Rational.zero(); cols.len()];
                    for t in sm.terms() {
                        let k = cols.iter().position(|(i, mm)| *i == t.comp as usize && *mm == t.mon).unwrap();
                        r[k] = t.coef.clone();
                    }
                    rows.push(r);
                }
            }
            let span = Matrix::from_rows(Field::Rational, cols.len(), rows).rank();
            prop_assert_eq!(span, kernel_dim, "degree {}", top);
        }
    }
}
