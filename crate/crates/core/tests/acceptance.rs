//! End-to-end criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use gradlift::companions::{generic_initial_ideal, MonomialIdeal};
use gradlift::corpus::{check_instance, instance, Instance, InstanceReport, Outcome, Recipe};
use gradlift::invariants::symmetric_algebra_report;
use gradlift::lift::homogeneous_type_verdict;
use gradlift::linearity::{koszul_verdict, linearity_defect_graded, linearity_defect_local};
use gradlift::poly::{Mode, MonoOrder, Monomial, Poly, Ring};
use gradlift::resolution::{block_shape_check, ideal_betti, is_componentwise_linear, minimal_graded_resolution};
use gradlift::stdbasis::ideal_membership;
use gradlift::tangent::{
    mu_graded, mu_local, semigroup_defining_ideal, tangent_cone_ideal, FilteredIdeal, FiltrationKind, GradedIdeal,
};
use gradlift::{Field, Result};

const SEED: u64 = 7;

fn local(names: &[&str], s: &str) -> FilteredIdeal {
    let r = Ring::new(names, Field::Rational, Mode::Local).unwrap();
    FilteredIdeal::new(&r, r.parse_list(s).unwrap(), FiltrationKind::Intersection).unwrap()
}

fn same_local_ideal(a: &[Poly], b: &[Poly]) -> Result<bool> {
    for f in a {
        if !ideal_membership(f, b, Mode::Local)?.member {
            return Ok(false);
        }
    }
    for f in b {
        if !ideal_membership(f, a, Mode::Local)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monomials(r: &Ring, s: &str) -> Vec<Monomial> {
    r.parse_list(s)
        .unwrap()
        .iter()
        .map(|p| p.lead_monomial(MonoOrder::DegRevLex).unwrap())
        .collect()
}

/// `Err` carries the reason a criterion failed.
type Verdict = std::result::Result<(), String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn e<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn example_one() -> Verdict {
    let start = Instant::now();
    let i = local(&["x", "y", "z", "t"], "x^3 - y^7, x^2*y - x*t^3 - z^6");
    let j = e(tangent_cone_ideal(&i))?;
    let listed = j
        .ring()
        .parse_list("x^3, x^2*y, x^2*t^3, x*t^6, x^2*z^6, x*y^9 - x*z^6*t^3, x*y^8*t^3, y^7*t^9")
        .unwrap();
    let listed = e(GradedIdeal::new(j.ring(), listed))?;
    ensure(e(j.same_ideal(&listed))?, || {
        "I* differs from the listed generators".into()
    })?;
    let ht = e(homogeneous_type_verdict(&i))?;
    ensure(ht.graded == [8, 12, 6, 1], || format!("β(I*) = {:?}", ht.graded))?;
    let local = [ht.local.clone(), vec![0; 4]].concat()[..4].to_vec();
    ensure(local == [2, 1, 0, 0], || format!("β(I) = {:?}", ht.local))?;
    ensure(!ht.homogeneous_type, || "reported as homogeneous type".into())?;
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(60), || format!("took {t:?}"))
}

fn semigroup_9_17_19_39() -> Verdict {
    let i = e(semigroup_defining_ideal(&[9, 17, 19, 39]))?;
    let r = i.ring().clone();
    let listed = r
        .parse_list(
            "x2*x3 - x1^4, x2^5 - x1*x3^4, x2*x4 - x1^2*x3^2, x3^2*x4 - x1*x2^4, x3^3 - x1^2*x4, x4^2 - x1^3*x2^3",
        )
        .unwrap();
    ensure(e(same_local_ideal(i.gens(), &listed))?, || {
        "defining ideal differs from the listed one".into()
    })?;
    let j = e(tangent_cone_ideal(&i))?;
    let gin = e(generic_initial_ideal(&j, SEED))?.ideal;
    let mu = [e(mu_local(&i))?, e(mu_graded(&j))?, gin.mu()];
    ensure(mu == [6, 6, 6], || format!("μ(I), μ(I*), μ(Gin) = {mu:?}"))?;
    let want = MonomialIdeal::new(
        j.ring(),
        &monomials(j.ring(), "x1^2, x1*x2, x2^2, x1*x3^2, x2*x3^2, x3^5"),
    );
    ensure(gin == want, || format!("Gin = {:?}", gin.strings()))?;
    let ht = e(homogeneous_type_verdict(&i))?;
    let bg = e(gin.betti())?.totals();
    ensure(ht.local == ht.graded && ht.graded == bg, || {
        format!("β(I) {:?}, β(I*) {:?}, β(Gin) {bg:?}", ht.local, ht.graded)
    })?;
    ensure(e(koszul_verdict(&i))?, || "not Koszul".into())?;
    let ld = e(linearity_defect_local(&i))?.ld;
    ensure(ld == 0, || format!("ld = {ld}"))
}

fn semigroup_19_26_34_40() -> Verdict {
    let i = e(semigroup_defining_ideal(&[19, 26, 34, 40]))?;
    let j = e(tangent_cone_ideal(&i))?;
    let mu = (e(mu_local(&i))?, e(mu_graded(&j))?);
    ensure(mu == (5, 5), || format!("μ(I), μ(I*) = {mu:?}"))?;
    let ht = e(homogeneous_type_verdict(&i))?;
    ensure(!ht.homogeneous_type, || {
        format!("homogeneous type with β = {:?}", ht.local)
    })
}

fn semigroup_10_19_21_53() -> Verdict {
    let i = e(semigroup_defining_ideal(&[10, 19, 21, 53]))?;
    let j = e(tangent_cone_ideal(&i))?;
    ensure(e(is_componentwise_linear(&j, false))?.componentwise_linear, || {
        "I* not componentwise linear".into()
    })?;
    let mu = (e(mu_local(&i))?, e(mu_graded(&j))?);
    ensure(mu == (5, 7), || format!("μ(I), μ(I*) = {mu:?}"))
}

fn borel_example() -> Verdict {
    let r = Ring::new(&["x1", "x2", "x3", "x4"], Field::Rational, Mode::Graded).unwrap();
    let s = "x1^2, x1*x2, x2^2, x1*x3, x2*x3^2, x1*x4^3, x3^4";
    let j = e(GradedIdeal::new(&r, r.parse_list(s).unwrap()))?;
    let b = e(ideal_betti(&j))?;
    let b0 = [b.get(0, 2), b.get(0, 3), b.get(0, 4)];
    ensure(b0 == [4, 1, 2] && b.total(0) == 7, || format!("β_0 by degree {b0:?}"))?;
    let c = e(minimal_graded_resolution(&j))?;
    ensure(c.length() == 3 && c.shifts[3] == [7], || {
        format!("resolution shifts {:?}", c.shifts)
    })?;
    let shape = block_shape_check(&c);
    ensure(shape.passed, || shape.failures.join("; "))?;
    let ld = e(linearity_defect_graded(&j))?.ld;
    ensure(ld == 0, || format!("ld = {ld}"))?;
    let gin = e(generic_initial_ideal(&j, SEED))?.ideal;
    ensure(gin == MonomialIdeal::new(&r, &monomials(&r, s)), || {
        format!("Gin = {:?}", gin.strings())
    })
}

fn run(recipe: Recipe, seed: u64, count: usize) -> Vec<InstanceReport> {
    (0..count)
        .into_par_iter()
        .map(|k| {
            let inst = instance(recipe, seed, k).expect("corpus instance");
            check_instance(&inst, seed)
        })
        .collect()
}

fn check_passes(reports: &[InstanceReport], name: &str, min: usize) -> Verdict {
    ensure(reports.len() >= min, || format!("only {} instances", reports.len()))?;
    let bad: Vec<String> = reports
        .iter()
        .filter_map(|r| match &r.checks[name] {
            Outcome::Pass => None,
            o => Some(format!("{}: {o:?}", r.label)),
        })
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} of {}: {}", bad.len(), reports.len(), bad.join("; "))
    })
}

/// Instances with `μ(I) = μ(I*)` and `I*` componentwise linear.
fn hypotheses_hold(reports: &[InstanceReport]) -> Vec<&InstanceReport> {
    reports.iter().filter(|r| r.hypotheses == Some(true)).collect()
}

fn local_conclusions(reports: &[InstanceReport]) -> Verdict {
    let good = hypotheses_hold(reports);
    ensure(good.len() >= 50, || {
        format!("only {} instances satisfy the hypotheses", good.len())
    })?;
    let bad: Vec<&str> = good
        .iter()
        .filter(|r| r.homogeneous_type != Some(true) || r.koszul != Some(true))
        .map(|r| r.label.as_str())
        .collect();
    ensure(bad.is_empty(), || format!("conclusions fail on {bad:?}"))
}

fn alfa(local: &[InstanceReport], all: &[InstanceReport]) -> Verdict {
    let good: Vec<InstanceReport> = hypotheses_hold(local).into_iter().cloned().collect();
    ensure(good.len() >= 50, || {
        format!("only {} instances satisfy the hypotheses", good.len())
    })?;
    check_passes(&good, "alfa", 50)?;
    check_passes(all, "alfa", 1)
}

fn symmetric_algebra() -> Verdict {
    let r = e(symmetric_algebra_report(&e(semigroup_defining_ideal(&[
        9, 17, 19, 39,
    ]))?))?;
    ensure((r.dim, r.depth_bound, r.exact) == (4, Some(2), true), || {
        format!("{r:?}")
    })?;
    let r = e(symmetric_algebra_report(&local(&["x", "y"], "x^2, x*y")))?;
    ensure(r.depth_bound == Some(0) && r.exact, || format!("{r:?}"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, what: &str, v: Verdict| match v {
        Ok(()) => println!("PASS {n:>2} {what}"),
        Err(why) => {
            failed += 1;
            println!("FAIL {n:>2} {what}: {why}");
        }
    };

    report(1, "Example (1) tangent cone and Betti numbers", example_one());
    report(
        2,
        "t^(9,17,19,39) Gin, Betti numbers and Koszul",
        semigroup_9_17_19_39(),
    );
    report(3, "t^(19,26,34,40) not of homogeneous type", semigroup_19_26_34_40());
    report(
        4,
        "t^(10,19,21,53) componentwise linear, μ 5 vs 7",
        semigroup_10_19_21_53(),
    );
    report(5, "Borel example resolution, blocks and Gin", borel_example());

    let mut graded = run(Recipe::Monomial, SEED, 60);
    graded.extend(run(Recipe::Binomial, SEED, 60));
    report(
        6,
        "resolution against Tor oracle",
        check_passes(&graded, "tor_oracle", 100),
    );
    report(
        7,
        "Betti, μ and Hilbert function chains",
        check_passes(&graded, "inequality_chain", 100),
    );

    let mut graded_full = graded.clone();
    graded_full.extend(run(Recipe::Borel, SEED, 40));
    report(
        8,
        "four Herzog–Hibi conditions agree",
        check_passes(&graded_full, "herzog_hibi", 50),
    );

    let mut local_corpus = run(Recipe::SuperRegular, SEED, 60);
    local_corpus.extend(run(Recipe::Semigroup, SEED, 60));
    local_corpus.push(check_instance(
        &Instance {
            index: 0,
            label: "t^(9,17,19,39)".into(),
            ideal: semigroup_defining_ideal(&[9, 17, 19, 39]).unwrap(),
        },
        SEED,
    ));
    report(
        9,
        "minimal standard base and componentwise linear I* give homogeneous type and Koszul",
        local_conclusions(&local_corpus),
    );

    let mut all = graded_full.clone();
    all.extend(local_corpus.iter().cloned());
    report(
        10,
        "annihilator-number bound, equality under the hypotheses",
        alfa(&local_corpus, &all),
    );
    report(
        11,
        "ld(I*) = 0 iff componentwise linear",
        check_passes(&graded_full, "ld_vs_componentwise_linear", 50),
    );
    report(12, "symmetric algebra of the maximal ideal", symmetric_algebra());

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
