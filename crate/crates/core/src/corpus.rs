//! Random instance recipes and the corpus runner that checks the structure
//! theorems instance by instance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::companions::{generic_initial_ideal, inequality_chain, lex_ideal};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_series, minimalize_monomials};
use crate::invariants::{alfa_check_from, generic_annihilator_numbers};
use crate::lift::{homogeneous_type_from, implication_check, lift_resolution, minimalize_local};
use crate::linearity::{linearity_defect_graded, linearity_defect_minimal};
use crate::poly::{Mode, Monomial, Poly, Ring};
use crate::resolution::{ideal_betti, is_componentwise_linear, tor_oracle_table};
use crate::scalar::Field;
use crate::tangent::{
    mu_graded, mu_local, semigroup_defining_ideal, tangent_cone_ideal, FilteredIdeal, FiltrationKind,
};

/// Hilbert functions of `P/J`, `P/Gin` and `P/Lex` are compared up to here.
pub const HILBERT_CHECK_DEGREE: i64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    /// Binomials `m - c m'` in 3 variables, degrees at most 5; every other
    /// instance is homogeneous.
    Binomial,
    /// Monomial ideals in 2 to 4 variables, degrees at most 5.
    Monomial,
    /// Borel-fixed closures of one or two monomials in 3 variables.
    Borel,
    /// Regular sequences `x_1 + …, …, x_{r-1} + …, m + …` perturbed by
    /// higher order terms, so the initial forms stay a regular sequence.
    SuperRegular,
    /// Monomial curves `t^(a,b,c)` with `a < b < c ≤ 20`.
    Semigroup,
}

impl Recipe {
    pub const ALL: [Recipe; 5] = [
        Recipe::Binomial,
        Recipe::Monomial,
        Recipe::Borel,
        Recipe::SuperRegular,
        Recipe::Semigroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Binomial => "binomial",
            Recipe::Monomial => "monomial",
            Recipe::Borel => "borel",
            Recipe::SuperRegular => "super-regular",
            Recipe::Semigroup => "semigroup",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown recipe `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub label: String,
    pub ideal: FilteredIdeal,
}

fn random_monomial(rng: &mut ChaCha8Rng, vars: &[usize], d: u32) -> Monomial {
    let mut e = vec![0u32; vars.iter().max().map_or(0, |v| v + 1)];
    for _ in 0..d {
        e[*vars.choose(rng).unwrap()] += 1;
    }
    Monomial::new(&e)
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

fn borel_closure(seeds: &[Monomial], n: usize) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = seeds.iter().copied().collect();
    loop {
        let mut added = false;
        for m in set.clone() {
            for j in 0..n {
                if m.exp(j) > 0 {
                    for i in 0..j {
                        added |= set.insert(Monomial::var(j).quotient_of(&m).mul(&Monomial::var(i)));
                    }
                }
            }
        }
        if !added {
            return minimalize_monomials(&set.into_iter().collect::<Vec<_>>());
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Instance `index` of a recipe; it depends on `(seed, index)` only.
pub fn instance(recipe: Recipe, seed: u64, index: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let f = Field::Rational;
    let ideal = match recipe {
        Recipe::Semigroup => loop {
            let a = rng.gen_range(3..=8u32);
            let b = rng.gen_range(a + 1..=19);
            let c = rng.gen_range(b + 1..=20);
            if gcd(gcd(a, b), c) == 1 {
                break semigroup_defining_ideal(&[a, b, c])?;
            }
        },
        _ => {
            let n = match recipe {
                Recipe::Monomial | Recipe::SuperRegular => rng.gen_range(2..=4),
                _ => 3,
            };
            let ring = Ring::indexed(n, Mode::Local)?;
            let all: Vec<usize> = (0..n).collect();
            let gens: Vec<Poly> = match recipe {
                Recipe::Monomial => (0..rng.gen_range(1..=4))
                    .map(|_| {
                        let d = rng.gen_range(1..=5);
                        Poly::term(random_monomial(&mut rng, &all, d), f.one())
                    })
                    .collect(),
                Recipe::Binomial => {
                    let homogeneous = index.is_multiple_of(2);
                    let k = rng.gen_range(1..=3);
                    let mut gens = Vec::new();
                    while gens.len() < k {
                        let d1 = rng.gen_range(1..=5);
                        let d2 = if homogeneous { d1 } else { rng.gen_range(1..=5) };
                        let m1 = random_monomial(&mut rng, &all, d1);
                        let m2 = random_monomial(&mut rng, &all, d2);
                        if m1 != m2 {
                            let c = coefficient(&mut rng);
                            gens.push(Poly::term(m1, f.one()).sub(&Poly::term(m2, f.int(c))));
                        }
                    }
                    gens
                }
                Recipe::Borel => {
                    let seeds: Vec<Monomial> = (0..rng.gen_range(1..=2))
                        .map(|_| {
                            let d = rng.gen_range(1..=4);
                            random_monomial(&mut rng, &all, d)
                        })
                        .collect();
                    borel_closure(&seeds, n)
                        .into_iter()
                        .map(|m| Poly::term(m, f.one()))
                        .collect()
                }
                Recipe::SuperRegular => {
                    let r = rng.gen_range(1..=n);
                    let mut vars = all.clone();
                    vars.shuffle(&mut rng);
                    let (linear, rest) = vars.split_at(r - 1);
                    let mut leads: Vec<Monomial> = linear.iter().map(|&v| Monomial::var(v)).collect();
                    let d = rng.gen_range(1..=4);
                    leads.push(random_monomial(&mut rng, rest, d));
                    leads
                        .into_iter()
                        .map(|m| {
                            let mut g = Poly::term(m, f.one());
                            for _ in 0..rng.gen_range(1..=2) {
                                let e = m.deg() + rng.gen_range(1..=3);
                                let c = coefficient(&mut rng);
                                g = g.add(&Poly::term(random_monomial(&mut rng, &all, e), f.int(c)));
                            }
                            g
                        })
                        .collect()
                }
                Recipe::Semigroup => unreachable!(),
            };
            FilteredIdeal::new(&ring, gens, FiltrationKind::Intersection)?
        }
    };
    let r = ideal.ring();
    let label = format!(
        "{}#{index}: ({})",
        recipe.name(),
        ideal
            .gens()
            .iter()
            .map(|g| r.fmt_poly(g))
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Instance { index, label, ideal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail(String),
    Capped(String),
}

impl Outcome {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(why())
        }
    }

    fn from_result(r: Result<Outcome>) -> Outcome {
        match r {
            Ok(o) => o,
            Err(Error::CapExceeded(m)) => Outcome::Capped(m),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }
}

/// Check names, in report order.
pub const CHECKS: [&str; 8] = [
    "tor_oracle",
    "inequality_chain",
    "herzog_hibi",
    "ld_vs_componentwise_linear",
    "implication",
    "alfa",
    "tangent_cone_equivalence",
    "lex_equivalence",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub label: String,
    /// One outcome per entry of `CHECKS`.
    pub checks: BTreeMap<String, Outcome>,
    /// `μ(I) = μ(I*)` and `I*` componentwise linear.
    pub hypotheses: Option<bool>,
    pub homogeneous_type: Option<bool>,
    pub koszul: Option<bool>,
    pub componentwise_linear: Option<bool>,
    /// `I` Koszul and minimally generated by a standard basis while `I*` is
    /// not Koszul: would answer the converse question negatively.
    pub converse_candidate: bool,
}

struct Shared {
    j: crate::tangent::GradedIdeal,
    msb: bool,
    cwl: bool,
    local_betti: Vec<usize>,
    ht: bool,
    koszul: bool,
    minimal_betti: Vec<usize>,
}

fn shared(inst: &Instance) -> Result<Shared> {
    let i = &inst.ideal;
    let j = tangent_cone_ideal(i)?;
    let msb = mu_local(i)? == mu_graded(&j)?;
    let cwl = is_componentwise_linear(&j, false)?.componentwise_linear;
    let lifted = lift_resolution(i)?;
    let minimal = minimalize_local(&lifted)?;
    let ht = homogeneous_type_from(&lifted, &minimal)?;
    let koszul = linearity_defect_minimal(&minimal)?.koszul;
    Ok(Shared {
        j,
        msb,
        cwl,
        local_betti: ht.local.clone(),
        ht: ht.homogeneous_type,
        koszul,
        minimal_betti: minimal.betti(),
    })
}

/// Run every check on one instance. Failures are recorded, never raised.
pub fn check_instance(inst: &Instance, seed: u64) -> InstanceReport {
    let mut report = InstanceReport {
        index: inst.index,
        label: inst.label.clone(),
        checks: BTreeMap::new(),
        hypotheses: None,
        homogeneous_type: None,
        koszul: None,
        componentwise_linear: None,
        converse_candidate: false,
    };
    let s = match shared(inst) {
        Ok(s) => s,
        Err(e) => {
            let o = Outcome::from_result(Err(e));
            for c in CHECKS {
                report.checks.insert(c.into(), o.clone());
            }
            return report;
        }
    };
    report.hypotheses = Some(s.msb && s.cwl);
    report.homogeneous_type = Some(s.ht);
    report.koszul = Some(s.koszul);
    report.componentwise_linear = Some(s.cwl);
    report.converse_candidate = s.koszul && s.msb && !s.cwl;
    let j = &s.j;
    let n = j.nvars();
    let gin_seed = seed.wrapping_add(inst.index as u64);

    let mut put = |name: &str, r: Result<Outcome>| {
        report.checks.insert(name.into(), Outcome::from_result(r));
    };
    let bt = ideal_betti(j);
    put(
        "tor_oracle",
        bt.clone().and_then(|b| {
            let top = b.entries().map(|e| e.1).max().unwrap_or(0);
            let oracle = tor_oracle_table(j, top + 1)?;
            Ok(Outcome::from_bool(oracle == b, || {
                format!("resolution {b:?} vs oracle {oracle:?}")
            }))
        }),
    );
    let gin = generic_initial_ideal(j, gin_seed).map(|g| g.ideal);
    let lex = lex_ideal(j);
    put(
        "inequality_chain",
        (|| {
            let (g, l) = (gin.clone()?, lex.clone()?);
            inequality_chain(&s.local_betti, j, &g, &l)?;
            let h = hilbert_series(j.gens(), n)?;
            let (hg, hl) = (g.hilbert_series(), l.hilbert_series());
            let bad = (0..=HILBERT_CHECK_DEGREE).find(|&d| h.value(d) != hg.value(d) || h.value(d) != hl.value(d));
            Ok(Outcome::from_bool(bad.is_none(), || {
                format!("Hilbert functions differ in degree {}", bad.unwrap())
            }))
        })(),
    );
    put(
        "herzog_hibi",
        (|| {
            let (b, g) = (bt.clone()?, gin.clone()?);
            let bg = g.betti()?;
            let four = [mu_graded(j)? == g.mu(), b.totals() == bg.totals(), b == bg, s.cwl];
            Ok(Outcome::from_bool(four.iter().all(|&x| x == four[0]), || {
                format!("conditions disagree: {four:?}")
            }))
        })(),
    );
    put(
        "ld_vs_componentwise_linear",
        (|| {
            let ld = linearity_defect_graded(j)?.ld;
            Ok(Outcome::from_bool((ld == 0) == s.cwl, || {
                format!("ld(I*) = {ld}, componentwise linear {}", s.cwl)
            }))
        })(),
    );
    let imp = implication_check(s.msb, s.cwl, s.ht, s.koszul);
    put(
        "implication",
        Ok(Outcome::from_bool(imp.holds, || format!("hypotheses hold but {imp:?}"))),
    );
    put(
        "alfa",
        (|| {
            let a = generic_annihilator_numbers(j, gin_seed)?;
            alfa_check_from(&s.minimal_betti, &a.alpha, s.msb && s.cwl)?;
            Ok(Outcome::Pass)
        })(),
    );
    put(
        "tangent_cone_equivalence",
        (|| {
            let (b, g) = (bt.clone()?, gin.clone()?);
            let bg = g.betti()?.totals();
            let ml = s.local_betti.first().copied().unwrap_or(0);
            let three = [
                ml == g.mu(),
                s.local_betti == b.totals() && b.totals() == bg,
                s.msb && s.cwl,
            ];
            Ok(Outcome::from_bool(three.iter().all(|&x| x == three[0]), || {
                format!("conditions disagree: {three:?}")
            }))
        })(),
    );
    put(
        "lex_equivalence",
        (|| {
            let (b, l) = (bt.clone()?, lex.clone()?);
            let bl = l.betti()?.totals();
            let ml = s.local_betti.first().copied().unwrap_or(0);
            let gotzmann = mu_graded(j)? == l.mu();
            let three = [
                ml == l.mu(),
                s.local_betti == b.totals() && b.totals() == bl,
                s.msb && gotzmann,
            ];
            Ok(Outcome::from_bool(three.iter().all(|&x| x == three[0]), || {
                format!("conditions disagree: {three:?}")
            }))
        })(),
    );
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub capped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub schema: u32,
    pub recipe: Recipe,
    pub count: usize,
    pub seed: u64,
    pub tallies: BTreeMap<String, Tally>,
    /// Instances satisfying `μ(I) = μ(I*)` with `I*` componentwise linear.
    pub hypotheses: usize,
    pub componentwise_linear: usize,
    pub koszul: usize,
    pub converse_candidates: Vec<String>,
    /// `label: check: message` for every failed check.
    pub failures: Vec<String>,
    pub instances: Vec<InstanceReport>,
}

impl CorpusSummary {
    pub fn fatal(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn capped(&self) -> bool {
        self.tallies.values().any(|t| t.capped > 0)
    }
}

/// Generate and check `count` instances on the rayon pool.
pub fn corpus_run(recipe: Recipe, count: usize, seed: u64) -> Result<CorpusSummary> {
    let instances = (0..count)
        .into_par_iter()
        .map(|k| instance(recipe, seed, k))
        .collect::<Result<Vec<_>>>()?;
    let mut reports: Vec<InstanceReport> = instances.par_iter().map(|inst| check_instance(inst, seed)).collect();
    reports.sort_by_key(|r| r.index);
    Ok(summarize(recipe, count, seed, reports))
}

pub fn summarize(recipe: Recipe, count: usize, seed: u64, instances: Vec<InstanceReport>) -> CorpusSummary {
    let mut tallies: BTreeMap<String, Tally> = CHECKS.iter().map(|c| (c.to_string(), Tally::default())).collect();
    let mut failures = Vec::new();
    for r in &instances {
        for (name, o) in &r.checks {
            let t = tallies.entry(name.clone()).or_default();
            match o {
                Outcome::Pass => t.pass += 1,
                Outcome::Capped(_) => t.capped += 1,
                Outcome::Fail(m) => {
                    t.fail += 1;
                    failures.push(format!("{}: {name}: {m}", r.label));
                }
            }
        }
    }
    CorpusSummary {
        schema: crate::report::SCHEMA,
        recipe,
        count,
        seed,
        tallies,
        hypotheses: instances.iter().filter(|r| r.hypotheses == Some(true)).count(),
        componentwise_linear: instances
            .iter()
            .filter(|r| r.componentwise_linear == Some(true))
            .count(),
        koszul: instances.iter().filter(|r| r.koszul == Some(true)).count(),
        converse_candidates: instances
            .iter()
            .filter(|r| r.converse_candidate)
            .map(|r| r.label.clone())
            .collect(),
        failures,
        instances,
    }
}

pub fn render_summary(s: &CorpusSummary) -> String {
    let mut out = format!("recipe {} count {} seed {}\n", s.recipe, s.count, s.seed);
    for (name, t) in &s.tallies {
        out += &format!(
            "{name:<28} pass {:>4}  fail {:>4}  capped {:>4}\n",
            t.pass, t.fail, t.capped
        );
    }
    out += &format!(
        "hypotheses hold on {}, componentwise linear {}, Koszul {}\n",
        s.hypotheses, s.componentwise_linear, s.koszul
    );
    for c in &s.converse_candidates {
        out += &format!("converse candidate: {c}\n");
    }
    for f in &s.failures {
        out += &format!("FAILURE {f}\n");
    }
    out
}

#[cfg(test)]
mod tests;
