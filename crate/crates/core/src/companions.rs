//! Monomial companions of `I*`: the generic initial ideal, the lex-segment
//! ideal with the same Hilbert function, and the inequality chains relating
//! their Betti numbers.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_series, minimalize_monomials, HilbertSeries};
use crate::linalg::Matrix;
use crate::poly::{Mode, MonoOrder, Monomial, Poly, Ring};
use crate::resolution::{ideal_betti, BettiTable};
use crate::scalar::Field;
use crate::stdbasis::ideal_groebner;
use crate::tangent::{mu_graded, GradedIdeal};

/// Retries after the first pair of draws; the coefficient box doubles each time.
pub const GIN_RETRIES: usize = 4;
pub const GIN_BOX: i64 = 100;
pub const LEX_DEGREE_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimal generators are extracted from `mons`.
    pub fn new(ring: &Ring, mons: &[Monomial]) -> MonomialIdeal {
        MonomialIdeal {
            ring: ring.with_mode(Mode::Graded),
            gens: minimalize_monomials(mons),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn to_graded(&self) -> GradedIdeal {
        let one = self.ring.field().one();
        GradedIdeal::new(
            &self.ring,
            self.gens.iter().map(|m| Poly::term(*m, one.clone())).collect(),
        )
        .expect("monomials are homogeneous")
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(&self.gens, self.ring.nvars())
    }

    pub fn betti(&self) -> Result<BettiTable> {
        ideal_betti(&self.to_graded())
    }

    /// `x_j | m ⇒ (x_i/x_j) m ∈ J` for all `i < j`.
    pub fn is_borel_fixed(&self) -> bool {
        self.gens.iter().all(|u| {
            (0..self.ring.nvars()).all(|j| {
                u.exp(j) == 0 || (0..j).all(|i| self.contains(&Monomial::var(j).quotient_of(u).mul(&Monomial::var(i))))
            })
        })
    }

    pub fn strings(&self) -> Vec<String> {
        self.gens.iter().map(|m| self.ring.fmt_monomial(m)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.strings().join(", "))
    }
}

/// Degrevlex initial ideal of `J` after `x_i ↦ Σ_j g_ij x_j`.
pub fn initial_ideal_after(j: &GradedIdeal, g: &[Vec<i64>]) -> Result<MonomialIdeal> {
    let field = j.ring().field();
    let n = j.nvars();
    let images: Vec<Poly> = g
        .iter()
        .map(|row| Poly::from_terms(row.iter().enumerate().map(|(k, &c)| (Monomial::var(k), field.int(c)))))
        .collect();
    debug_assert_eq!(images.len(), n);
    let moved: Vec<Poly> = j.gens().iter().map(|f| f.substitute(&images, field)).collect();
    let gb = ideal_groebner(&moved, MonoOrder::DegRevLex)?;
    let leads: Vec<Monomial> = gb
        .iter()
        .map(|p| p.lead_monomial(MonoOrder::DegRevLex).unwrap())
        .collect();
    Ok(MonomialIdeal::new(j.ring(), &leads))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let g: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let rows = g
            .iter()
            .map(|r| r.iter().map(|&c| Field::Rational.int(c)).collect())
            .collect();
        if Matrix::from_rows(Field::Rational, n, rows).rank() == n {
            return g;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Gin {
    pub ideal: MonomialIdeal,
    pub seed: u64,
    /// Pairs of draws used (1 when the first pair agreed).
    pub attempts: usize,
    /// Coefficient box of the accepted draws.
    pub bound: i64,
}

/// Revlex generic initial ideal: two independent random coordinate changes
/// must give the same Borel-fixed initial ideal.
pub fn generic_initial_ideal(j: &GradedIdeal, seed: u64) -> Result<Gin> {
    if j.ring().field() != Field::Rational {
        return Err(Error::Invalid("generic initial ideals are computed over Q".into()));
    }
    let n = j.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = GIN_BOX;
    let mut seen = Vec::new();
    for attempt in 1..=GIN_RETRIES + 1 {
        let g1 = random_invertible(&mut rng, n, bound);
        let g2 = random_invertible(&mut rng, n, bound);
        let (a, b) = rayon::join(|| initial_ideal_after(j, &g1), || initial_ideal_after(j, &g2));
        let (a, b) = (a?, b?);
        if a == b && a.is_borel_fixed() {
            return Ok(Gin {
                ideal: a,
                seed,
                attempts: attempt,
                bound,
            });
        }
        seen.push(format!("box {bound}: {a} vs {b}"));
        bound *= 2;
    }
    Err(Error::CapExceeded(format!(
        "generic initial ideal did not stabilize: {}",
        seen.join("; ")
    )))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim_k P_d`.
fn monomial_count(n: usize, d: u32) -> u64 {
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

/// Lex-segment ideal with the Hilbert function of `P/J`.
///
/// Segments are built degree by degree. Past the top degree of the
/// leading-term ideal, the first degree where the segment spans the next one
/// exactly ends the search (Gotzmann persistence). The search is bounded by
/// the larger of `LEX_DEGREE_CAP` and the degree where the Hilbert function
/// is polynomial and past the Gotzmann number, where the span condition is
/// guaranteed.
pub fn lex_ideal(j: &GradedIdeal) -> Result<MonomialIdeal> {
    lex_ideal_capped(j, LEX_DEGREE_CAP)
}

/// `lex_ideal` with `base_cap` in place of `LEX_DEGREE_CAP`.
pub fn lex_ideal_capped(j: &GradedIdeal, base_cap: u32) -> Result<MonomialIdeal> {
    let n = j.nvars();
    if j.gens().is_empty() {
        return Ok(MonomialIdeal::new(j.ring(), &[]));
    }
    let gb = ideal_groebner(j.gens(), MonoOrder::DegRevLex)?;
    let top = gb.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let h = hilbert_series(j.gens(), n)?;
    let codim = |d: u32| -> Result<usize> {
        let c = monomial_count(n, d) as i128 - h.value(d as i64);
        usize::try_from(c).map_err(|_| Error::Invariant(format!("negative codimension in degree {d}")))
    };
    if codim(0)? == 1 {
        return Ok(MonomialIdeal::new(j.ring(), &[Monomial::one()]));
    }
    let guaranteed = (h.regularity_index() as u32)
        .max(h.gotzmann_number()? as u32)
        .max(top)
        .max(1);
    let cap = base_cap.max(guaranteed);
    let mut gens = Vec::new();
    let mut segment: Vec<Monomial> = Vec::new();
    for d in 1..=cap {
        let all = Monomial::all_of_degree(n, d);
        let c = codim(d)?;
        let spanned = span_size(&segment, n);
        if spanned > c {
            return Err(Error::Invariant(format!(
                "Hilbert function violates Macaulay's bound in degree {d}"
            )));
        }
        gens.extend_from_slice(&all[spanned..c]);
        segment = all[..c].to_vec();
        if d >= top && span_size(&segment, n) == codim(d + 1)? {
            return Ok(MonomialIdeal::new(j.ring(), &gens));
        }
    }
    Err(Error::CapExceeded(format!(
        "lex segments did not stabilize by degree {cap}"
    )))
}

/// Number of monomials in `P_1 · span(seg)`.
fn span_size(seg: &[Monomial], n: usize) -> usize {
    let mut set = HashSet::new();
    for m in seg {
        for i in 0..n {
            set.insert(m.mul(&Monomial::var(i)));
        }
    }
    set.len()
}

/// `μ(J) = μ(Lex(J))`.
pub fn gotzmann_check(j: &GradedIdeal) -> Result<bool> {
    Ok(mu_graded(j)? == lex_ideal(j)?.mu())
}

/// Graded Betti numbers of a stable monomial ideal by the Eliahou–Kervaire
/// count `β_{i,i+d} = Σ_{deg u = d} C(m(u) - 1, i)`.
pub fn eliahou_kervaire(j: &MonomialIdeal) -> Result<BettiTable> {
    if !j.is_borel_fixed() {
        return Err(Error::Invalid("Eliahou–Kervaire needs a stable ideal".into()));
    }
    let mut b = BettiTable::default();
    for u in j.gens() {
        let m = u.max_var().map_or(0, |v| v + 1) as u64;
        let d = u.deg() as i64;
        for i in 0..m.max(1) {
            let v = binomial(m.saturating_sub(1), i);
            if v > 0 {
                b.add(i as usize, i as i64 + d, v as usize);
            }
        }
    }
    Ok(b)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct InequalityChain {
    /// Total Betti numbers of the quotients `R/I`, `P/I*`, `P/Gin`, `P/Lex`.
    pub local: Vec<usize>,
    pub tangent_cone: Vec<usize>,
    pub gin: Vec<usize>,
    pub lex: Vec<usize>,
    /// `μ(I), μ(I*), μ(Gin), μ(Lex)`.
    pub mu: [usize; 4],
    /// `P/I*`, `P/Gin` and `P/Lex` share one Hilbert series.
    pub hilbert_equal: bool,
}

fn quotient_totals(ideal_totals: &[usize]) -> Vec<usize> {
    std::iter::once(1).chain(ideal_totals.iter().copied()).collect()
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    (0..a.len().max(b.len())).all(|i| a.get(i).unwrap_or(&0) <= b.get(i).unwrap_or(&0))
}

fn graded_dominated(a: &BettiTable, b: &BettiTable) -> bool {
    a.entries().all(|(i, j, v)| v <= b.get(i, j))
}

/// Both chains `β(R/I) ≤ β(P/I*) ≤ β(P/Gin) ≤ β(P/Lex)` (graded entries for
/// the last three) and `μ(I) ≤ μ(I*) ≤ μ(Gin) ≤ μ(Lex)`. A violation is an
/// engine bug and comes back as an invariant error.
pub fn inequality_chain(
    local_ideal_betti: &[usize],
    tangent_cone: &GradedIdeal,
    gin: &MonomialIdeal,
    lex: &MonomialIdeal,
) -> Result<InequalityChain> {
    let bt = ideal_betti(tangent_cone)?;
    let bg = gin.betti()?;
    let bl = lex.betti()?;
    let n = tangent_cone.nvars();
    let ht = hilbert_series(tangent_cone.gens(), n)?;
    let report = InequalityChain {
        local: quotient_totals(local_ideal_betti),
        tangent_cone: quotient_totals(&bt.totals()),
        gin: quotient_totals(&bg.totals()),
        lex: quotient_totals(&bl.totals()),
        mu: [
            local_ideal_betti.first().copied().unwrap_or(0),
            bt.total(0),
            gin.mu(),
            lex.mu(),
        ],
        hilbert_equal: ht == gin.hilbert_series() && ht == lex.hilbert_series(),
    };
    let chain = dominated(&report.local, &report.tangent_cone)
        && dominated(&report.tangent_cone, &report.gin)
        && dominated(&report.gin, &report.lex)
        && graded_dominated(&bt, &bg)
        && graded_dominated(&bg, &bl)
        && report.mu.windows(2).all(|w| w[0] <= w[1]);
    if !chain {
        return Err(Error::Invariant(format!("Betti inequality chain fails: {report:?}")));
    }
    if !report.hilbert_equal {
        return Err(Error::Invariant("Hilbert series of I*, Gin and Lex differ".into()));
    }
    Ok(report)
}
