//! Depth and projective dimension, generic annihilator numbers and the
//! symmetric algebra of the maximal ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::companions::{GIN_BOX, GIN_RETRIES};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_series, HilbertSeries};
use crate::lift::{lift_resolution, minimalize_local};
use crate::poly::{Monomial, Poly};
use crate::resolution::is_componentwise_linear;
use crate::scalar::Field;
use crate::stdbasis::colon_ideal;
use crate::tangent::{is_min_standard_base, tangent_cone_ideal, FilteredIdeal, GradedIdeal};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DepthReport {
    /// `pd_R(R/I)`.
    pub pd: usize,
    /// `depth R/I = n - pd`.
    pub depth: usize,
    /// `dim R/I`, read off the Hilbert series of `P/I*`.
    pub dim: usize,
    pub cohen_macaulay: bool,
}

/// Auslander–Buchsbaum from the minimal local Betti numbers of `I`.
pub fn depth_from(nvars: usize, local_betti: &[usize], tangent_cone: &HilbertSeries) -> Result<DepthReport> {
    let pd = local_betti.len();
    if pd > nvars {
        return Err(Error::Invariant(format!("pd(R/I) = {pd} exceeds {nvars}")));
    }
    let depth = nvars - pd;
    let dim = tangent_cone.dimension();
    if depth > dim {
        return Err(Error::Invariant(format!("depth {depth} above dimension {dim}")));
    }
    Ok(DepthReport {
        pd,
        depth,
        dim,
        cohen_macaulay: depth == dim,
    })
}

pub fn depth_and_pd(i: &FilteredIdeal) -> Result<DepthReport> {
    let betti = minimalize_local(&lift_resolution(i)?)?.betti();
    let j = tangent_cone_ideal(i)?;
    depth_from(i.ring().nvars(), &betti, &hilbert_series(j.gens(), j.nvars())?)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AnnihilatorNumbers {
    /// `α_1 … α_n`.
    pub alpha: Vec<usize>,
    /// Coefficients of the linear forms `y_1 … y_n` of the accepted draw.
    pub forms: Vec<Vec<i64>>,
    pub seed: u64,
    pub attempts: usize,
}

/// Length of a graded module with Hilbert series `num / (1-t)^n`, or `None`
/// when it is not finite.
fn finite_length(mut num: Vec<i128>, n: usize) -> Option<i128> {
    for _ in 0..n {
        while num.last() == Some(&0) {
            num.pop();
        }
        if num.is_empty() {
            return Some(0);
        }
        if num.iter().sum::<i128>() != 0 {
            return None;
        }
        let mut q = vec![0i128; num.len() - 1];
        let mut acc = 0;
        for (k, slot) in q.iter_mut().enumerate() {
            acc += num[k];
            *slot = acc;
        }
        num = q;
    }
    Some(num.iter().sum())
}

fn linear_form(coeffs: &[i64], field: Field) -> Poly {
    Poly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (Monomial::var(k), field.int(c))),
    )
}

fn numerator_diff(a: &HilbertSeries, b: &HilbertSeries) -> Vec<i128> {
    let len = a.numerator.len().max(b.numerator.len());
    (0..len)
        .map(|k| a.numerator.get(k).unwrap_or(&0) - b.numerator.get(k).unwrap_or(&0))
        .collect()
}

/// `α_p = length((Q_p : y_p) / Q_p)` with `Q_p = J + (y_1 … y_{p-1})`;
/// `None` when some quotient has infinite length (a non-generic draw).
pub fn annihilator_numbers_for(j: &GradedIdeal, forms: &[Vec<i64>]) -> Result<Option<Vec<usize>>> {
    let n = j.nvars();
    let field = j.ring().field();
    let mut q: Vec<Poly> = j.gens().to_vec();
    let mut alpha = Vec::with_capacity(n);
    for coeffs in forms {
        let y = linear_form(coeffs, field);
        let colon = colon_ideal(&q, &y)?;
        let hq = hilbert_series(&q, n)?;
        let hc = hilbert_series(&colon, n)?;
        match finite_length(numerator_diff(&hq, &hc), n) {
            Some(l) if l >= 0 => alpha.push(l as usize),
            Some(_) => return Err(Error::Invariant("negative length".into())),
            None => return Ok(None),
        }
        q.push(y);
    }
    Ok(Some(alpha))
}

fn draw_forms(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Generic annihilator numbers of `P/J`: two independent draws of linear
/// forms have to give finite lengths and agree.
pub fn generic_annihilator_numbers(j: &GradedIdeal, seed: u64) -> Result<AnnihilatorNumbers> {
    let n = j.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = GIN_BOX;
    let mut seen = Vec::new();
    for attempt in 1..=GIN_RETRIES + 1 {
        let f1 = draw_forms(&mut rng, n, bound);
        let f2 = draw_forms(&mut rng, n, bound);
        let (a, b) = rayon::join(|| annihilator_numbers_for(j, &f1), || annihilator_numbers_for(j, &f2));
        let (a, b) = (a?, b?);
        if let (Some(a), Some(b)) = (&a, &b) {
            if a == b {
                return Ok(AnnihilatorNumbers {
                    alpha: a.clone(),
                    forms: f1,
                    seed,
                    attempts: attempt,
                });
            }
        }
        seen.push(format!("box {bound}: {a:?} vs {b:?}"));
        bound *= 2;
    }
    Err(Error::CapExceeded(format!(
        "annihilator numbers did not stabilize: {}",
        seen.join("; ")
    )))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AlfaCheck {
    /// `β_i(R/I)` for `i = 1 … n`.
    pub betti: Vec<usize>,
    /// `Σ_{j=1}^{n-i+1} C(n-j, i-1) α_j` for `i = 1 … n`.
    pub bound: Vec<usize>,
    /// `μ(I) = μ(I*)` and `I*` componentwise linear: equality is expected.
    pub hypotheses: bool,
    pub equality: bool,
}

/// `β_i(R/I) ≤ Σ C(n-j, i-1) α_j` always, with equality under the
/// hypotheses. The inequality failing is an invariant violation.
pub fn alfa_check_from(local_betti: &[usize], alpha: &[usize], hypotheses: bool) -> Result<AlfaCheck> {
    let n = alpha.len();
    let betti: Vec<usize> = (1..=n).map(|i| local_betti.get(i - 1).copied().unwrap_or(0)).collect();
    let bound: Vec<usize> = (1..=n)
        .map(|i| (1..=n + 1 - i).map(|j| binomial(n - j, i - 1) * alpha[j - 1]).sum())
        .collect();
    if betti.iter().zip(&bound).any(|(b, s)| b > s) {
        return Err(Error::Invariant(format!(
            "Betti numbers {betti:?} exceed the annihilator bound {bound:?}"
        )));
    }
    let equality = betti == bound;
    if hypotheses && !equality {
        return Err(Error::Invariant(format!(
            "Betti numbers {betti:?} differ from {bound:?} under the hypotheses"
        )));
    }
    Ok(AlfaCheck {
        betti,
        bound,
        hypotheses,
        equality,
    })
}

pub fn corollary_alfa_check(i: &FilteredIdeal, seed: u64) -> Result<AlfaCheck> {
    let minimal = minimalize_local(&lift_resolution(i)?)?;
    let j = tangent_cone_ideal(i)?;
    let alpha = generic_annihilator_numbers(&j, seed)?;
    let hyp = is_min_standard_base(i)? && is_componentwise_linear(&j, false)?.componentwise_linear;
    alfa_check_from(&minimal.betti(), &alpha.alpha, hyp)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SymmetricAlgebraReport {
    /// `dim S_A(m) = dim R`.
    pub dim: usize,
    /// Lower bound for `depth S_A(m)`, when one is known.
    pub depth_bound: Option<usize>,
    /// Whether `depth_bound` is the exact depth.
    pub exact: bool,
    pub hypotheses: bool,
    pub depth_a: usize,
    pub dim_a: usize,
}

pub fn symmetric_algebra_from(
    i: &FilteredIdeal,
    depth: &DepthReport,
    hypotheses: bool,
) -> Result<SymmetricAlgebraReport> {
    if let Some(g) = i.gens().iter().find(|g| g.valuation() < Some(2)) {
        return Err(Error::Invalid(format!(
            "I ⊆ n² required, {} has order 1",
            i.ring().fmt_poly(g)
        )));
    }
    let (depth_bound, exact) = if depth.depth == 0 {
        (Some(0), true)
    } else if hypotheses {
        if depth.cohen_macaulay {
            (Some(depth.dim + 1), true)
        } else {
            (Some(depth.depth + 1), false)
        }
    } else {
        (None, false)
    };
    if depth_bound.is_some_and(|b| b > depth.dim + 1) {
        return Err(Error::Invariant("symmetric algebra bound above dim A + 1".into()));
    }
    Ok(SymmetricAlgebraReport {
        dim: i.ring().nvars(),
        depth_bound,
        exact,
        hypotheses,
        depth_a: depth.depth,
        dim_a: depth.dim,
    })
}

pub fn symmetric_algebra_report(i: &FilteredIdeal) -> Result<SymmetricAlgebraReport> {
    let lifted = lift_resolution(i)?;
    let minimal = minimalize_local(&lifted)?;
    let j = tangent_cone_ideal(i)?;
    let depth = depth_from(
        i.ring().nvars(),
        &minimal.betti(),
        &hilbert_series(j.gens(), j.nvars())?,
    )?;
    let hyp = is_min_standard_base(i)? && is_componentwise_linear(&j, false)?.componentwise_linear;
    symmetric_algebra_from(i, &depth, hyp)
}

#[cfg(test)]
mod tests;
