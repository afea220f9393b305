use super::*;

#[test]
fn recipes_parse_by_name() {
    for r in Recipe::ALL {
        assert_eq!(r.name().parse::<Recipe>().unwrap(), r);
    }
    assert!("cubic".parse::<Recipe>().is_err());
}

#[test]
fn instances_depend_on_seed_and_index_only() {
    for r in Recipe::ALL {
        let a = instance(r, 7, 3).unwrap();
        let b = instance(r, 7, 3).unwrap();
        assert_eq!(a.label, b.label);
        assert_eq!(a.ideal, b.ideal);
    }
    assert_ne!(
        instance(Recipe::Monomial, 7, 3).unwrap().label,
        instance(Recipe::Monomial, 7, 4).unwrap().label
    );
}

#[test]
fn super_regular_instances_have_regular_initial_forms() {
    for k in 0..12 {
        let inst = instance(Recipe::SuperRegular, 1, k).unwrap();
        let j = tangent_cone_ideal(&inst.ideal).unwrap();
        // a regular sequence of initial forms: μ equal and I* of the right codimension
        assert_eq!(mu_local(&inst.ideal).unwrap(), mu_graded(&j).unwrap(), "{}", inst.label);
        let h = hilbert_series(j.gens(), j.nvars()).unwrap();
        assert_eq!(h.dimension(), j.nvars() - inst.ideal.gens().len(), "{}", inst.label);
    }
}

#[test]
fn borel_instances_are_borel_fixed() {
    for k in 0..8 {
        let inst = instance(Recipe::Borel, 2, k).unwrap();
        let mons: Vec<Monomial> = inst.ideal.gens().iter().map(|g| *g.terms().next().unwrap().0).collect();
        let r = inst.ideal.ring().with_mode(Mode::Graded);
        assert!(crate::companions::MonomialIdeal::new(&r, &mons).is_borel_fixed());
    }
}

#[test]
fn empty_corpus() {
    let s = corpus_run(Recipe::Binomial, 0, 1).unwrap();
    assert!(s.instances.is_empty());
    assert!(s.failures.is_empty());
    assert!(s.tallies.values().all(|t| *t == Tally::default()));
}

#[test]
fn small_corpora_pass_every_check() {
    for r in [Recipe::Monomial, Recipe::Borel, Recipe::SuperRegular] {
        let s = corpus_run(r, 4, 11).unwrap();
        assert!(!s.fatal(), "{}", render_summary(&s));
        assert_eq!(s.instances.len(), 4);
        assert!(s.instances.windows(2).all(|w| w[0].index < w[1].index));
    }
}

#[test]
fn summary_is_order_independent() {
    let s = corpus_run(Recipe::Monomial, 3, 5).unwrap();
    let mut rev = s.instances.clone();
    rev.reverse();
    rev.sort_by_key(|r| r.index);
    assert_eq!(summarize(s.recipe, s.count, s.seed, rev), s);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<CorpusSummary>(&text).unwrap(), s);
}
