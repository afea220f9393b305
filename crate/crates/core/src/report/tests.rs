use super::*;

#[test]
fn parses_the_three_job_shapes() {
    let j = parse_job("ring Q[x,y,z,t]; ideal x^3-y^7, x^2*y-x*t^3-z^6; analyze full;").unwrap();
    assert_eq!(j.variables, vec!["x", "y", "z", "t"]);
    assert_eq!(j.analyses, Analysis::ALL.to_vec());
    assert_eq!(j.ideal().unwrap().gens().len(), 2);

    let j = parse_job("semigroup 9 17 19 39; analyze full;").unwrap();
    assert_eq!(j.source, Source::Semigroup(vec![9, 17, 19, 39]));
    assert_eq!(j.variables, vec!["x1", "x2", "x3", "x4"]);

    let j = parse_job("ring Q[x]; ideal x; analyze betti;").unwrap();
    assert_eq!(j.analyses, vec![Analysis::Betti]);
    assert_eq!(j.seed, 0);
    assert_eq!(j.caps, Caps::default());
}

#[test]
fn comments_seeds_caps_and_prime_fields() {
    let text = "# a job\nring GF(32003)[a,b]; # local ring\nideal a^2 - b^3;\nanalyze ld betti; seed 9; cap lex 70; cap hilbert 10;\n";
    let j = parse_job(text).unwrap();
    assert_eq!(j.modulus, Some(32003));
    assert_eq!(j.seed, 9);
    assert_eq!(j.caps.lex_degree, 70);
    assert_eq!(j.caps.hilbert_degree, 10);
    assert_eq!(j.analyses, vec![Analysis::Betti, Analysis::Ld]);
}

#[test]
fn errors_carry_positions() {
    let text = "ring Q[x,y];\nideal x^2 + w;\nanalyze betti;";
    match parse_job(text) {
        Err(Error::UnknownVariable { name, pos }) => {
            assert_eq!(name, "w");
            assert_eq!(line_col(text, pos), (2, 13));
        }
        other => panic!("{other:?}"),
    }
    let text = "ring Q[x,y]; ideal x^2 +; analyze betti;";
    let Err(Error::Parse { pos, .. }) = parse_job(text) else {
        panic!()
    };
    assert_eq!(&text[..pos], "ring Q[x,y]; ideal x^2 +");
    assert_eq!(
        parse_job("ring GF(12)[x]; ideal x; analyze betti;"),
        Err(Error::NonPrimeModulus { modulus: 12 })
    );
    let Err(Error::Parse { pos, .. }) = parse_job("ring Q[x]; ideal x; analyze wrong;") else {
        panic!()
    };
    assert_eq!(pos, 28);
    assert!(matches!(parse_job("ring Q[x]; ideal x;"), Err(Error::Parse { .. })));
    assert!(matches!(
        parse_job("ideal x; ring Q[x]; analyze betti;"),
        Err(Error::Parse { pos: 0, .. })
    ));
    assert!(matches!(
        parse_job("ring Q[x]; ideal x; analyze betti; cap lex 0;"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_job("ring Q[x]; ideal 1 + x; analyze betti;"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_job("semigroup 3 0 5; analyze betti;"),
        Err(Error::Parse { pos: 12, .. })
    ));
    assert!(matches!(
        parse_job("ring Q[x]; semigroup 3 5; analyze betti;"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_job("frobnicate; ring Q[x]; ideal x; analyze betti;"),
        Err(Error::Parse { pos: 0, .. })
    ));
}

#[test]
fn minimal_job() {
    let r = run_analysis(&parse_job("ring Q[x]; ideal x; analyze betti;").unwrap()).unwrap();
    let b = r.betti.as_ref().unwrap().ok().unwrap();
    assert_eq!(b.local, vec![1]);
    assert_eq!(b.tangent_cone, vec![1]);
    assert!(b.homogeneous_type);
    assert!(r.gin.is_none());
    assert_eq!(r.schema, SCHEMA);
}

#[test]
fn principal_ideal_full() {
    let r = run_analysis(&parse_job("ring Q[x,y]; ideal x^2 + y^3; analyze full; seed 3;").unwrap()).unwrap();
    let v = &r.verdicts;
    for b in [
        v.min_standard_base,
        v.componentwise_linear,
        v.homogeneous_type,
        v.gotzmann,
        v.koszul,
    ] {
        assert_eq!(b, Some(true));
    }
    assert_eq!(r.linearity.as_ref().unwrap().ok().unwrap().local.ld, 0);
    assert_eq!(r.mu.gin, Some(1));
    assert_eq!(r.equivalences.len(), 2);
    assert!(r
        .equivalences
        .iter()
        .all(|e| e.consistent && e.conditions.iter().all(|c| c.1)));
    let s = r.sym.as_ref().unwrap().ok().unwrap();
    assert_eq!((s.dim, s.depth_bound, s.exact), (2, Some(2), true));
    assert!(r.implication.as_ref().unwrap().holds);
    assert!(!r.capped());
    assert!(render_text(&r).contains("Koszul yes"));
}

#[test]
fn json_round_trip_and_determinism() {
    let spec = parse_job("ring Q[x,y,z]; ideal x^2, x*y, y*z^2; analyze full; seed 5;").unwrap();
    let a = run_analysis(&spec).unwrap();
    let text = a.to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(AnalysisReport::from_json(&text).unwrap(), a);
    let b = run_analysis(&spec).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    let wrong = text.replacen("\"schema\": 1", "\"schema\": 2", 1);
    assert!(AnalysisReport::from_json(&wrong).is_err());
}

#[test]
fn order_one_generators_skip_sym() {
    let r = run_analysis(&parse_job("ring Q[x,y]; ideal x + y^2, y^3; analyze sym;").unwrap()).unwrap();
    assert!(matches!(r.sym, Some(Section::Skipped(_))));
    assert!(r.depth.is_some());
}

#[test]
fn gin_is_skipped_over_prime_fields() {
    let r = run_analysis(&parse_job("ring GF(101)[x,y]; ideal x^2, y^3; analyze gin;").unwrap()).unwrap();
    assert!(matches!(r.gin, Some(Section::Skipped(_))));
}
