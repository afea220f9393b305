//! Hilbert series of `P/J` through the leading-term ideal and the pivot
//! recursion on monomial ideals.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{MonoOrder, Monomial, Poly};
use crate::stdbasis::ideal_groebner;

/// Minimal generators of the monomial ideal spanned by `mons`, sorted.
pub fn minimalize_monomials(mons: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = mons.to_vec();
    v.sort_by_key(|m| (m.deg(), *m));
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Polynomial in `t` with integer coefficients, lowest degree first.
pub type Numerator = Vec<i128>;

fn trim(mut p: Numerator) -> Numerator {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul_one_minus_t_pow(p: &[i128], d: usize) -> Numerator {
    let mut out = vec![0; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    trim(out)
}

fn add_shifted(a: &mut Numerator, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

/// Numerator `N(t)` of `H_{P/I}(t) = N(t)/(1-t)^n` for a monomial ideal.
pub fn monomial_numerator(gens: &[Monomial]) -> Numerator {
    let mut memo = HashMap::new();
    numerator_rec(minimalize_monomials(gens), &mut memo)
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Numerator>) -> Numerator {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    if let Some(n) = memo.get(&gens) {
        return n.clone();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    let result = if pairwise_coprime {
        gens.iter()
            .fold(vec![1], |acc, m| mul_one_minus_t_pow(&acc, m.deg() as usize))
    } else {
        // pivot on the variable occurring in the most non-coprime generators
        let mut counts = [0usize; crate::poly::monomial::MAX_VARS];
        for m in &gens {
            if m.deg() > 1 {
                for (i, c) in counts.iter_mut().enumerate() {
                    if m.exp(i) > 0 {
                        *c += 1;
                    }
                }
            }
        }
        let v = (0..counts.len())
            .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
            .unwrap();
        let x = Monomial::var(v);
        // N(I) = N(I + (x)) + t * N(I : x)
        let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(v) == 0).copied().collect();
        plus.push(x);
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|m| if m.exp(v) > 0 { x.quotient_of(m) } else { *m })
            .collect();
        let mut n = numerator_rec(minimalize_monomials(&plus), memo);
        let c = numerator_rec(minimalize_monomials(&colon), memo);
        add_shifted(&mut n, &c, 1);
        trim(n)
    };
    memo.insert(gens, result.clone());
    result
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HilbertSeries {
    /// Coefficients of the numerator, lowest degree first.
    pub numerator: Vec<i128>,
    /// Exponent of `(1-t)` in the denominator (number of variables).
    pub nvars: usize,
}

impl HilbertSeries {
    pub fn of_monomial_ideal(gens: &[Monomial], nvars: usize) -> HilbertSeries {
        HilbertSeries {
            numerator: monomial_numerator(gens),
            nvars,
        }
    }

    /// `HF(d) = Σ_k N_k C(d - k + n - 1, n - 1)`.
    pub fn value(&self, d: i64) -> i128 {
        let n = self.nvars as i64;
        if n == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0);
        }
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, &c)| c * binomial(d - k as i64 + n - 1, n - 1))
            .sum()
    }

    /// Numerator with all factors `(1-t)` cancelled, and the remaining
    /// pole order.
    pub fn reduced(&self) -> (Numerator, usize) {
        let mut p = self.numerator.clone();
        let mut d = self.nvars;
        while d > 0 && !p.is_empty() && p.iter().sum::<i128>() == 0 {
            // divide by (1 - t)
            let mut q = vec![0i128; p.len() - 1];
            let mut acc = 0;
            for (i, slot) in q.iter_mut().enumerate() {
                acc += p[i];
                *slot = acc;
            }
            p = trim(q);
            d -= 1;
        }
        (p, d)
    }

    /// Krull dimension of the graded ring.
    pub fn dimension(&self) -> usize {
        self.reduced().1
    }

    pub fn multiplicity(&self) -> i128 {
        self.reduced().0.iter().sum()
    }
}

/// `C(x, r)` as a polynomial in `x`, valid for negative `x` too.
fn binomial_poly(x: i128, r: usize) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..r as i128 {
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

/// Numeric polynomial kept as Newton coefficients `f(d) = Σ c_k C(d, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Newton(Vec<i128>);

impl Newton {
    fn from_values(vals: &[i128]) -> Newton {
        let mut c = Vec::with_capacity(vals.len());
        let mut row = vals.to_vec();
        while !row.is_empty() {
            c.push(row[0]);
            row = row.windows(2).map(|w| w[1] - w[0]).collect();
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Newton(c)
    }

    fn eval(&self, d: i128) -> i128 {
        self.0.iter().enumerate().map(|(k, &c)| c * binomial_poly(d, k)).sum()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
}

impl HilbertSeries {
    fn polynomial(&self) -> Newton {
        let n = self.nvars;
        let vals: Vec<i128> = (0..=n as i128)
            .map(|d| {
                self.numerator
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * binomial_poly(d - k as i128 + n as i128 - 1, n.saturating_sub(1)))
                    .sum()
            })
            .collect();
        Newton::from_values(&vals)
    }

    /// Hilbert polynomial evaluated at `d`.
    pub fn polynomial_value(&self, d: i64) -> i128 {
        self.polynomial().eval(d as i128)
    }

    /// Least `d0 ≥ 0` with `HF(d) = HP(d)` for all `d ≥ d0`.
    pub fn regularity_index(&self) -> i64 {
        let (num, dim) = self.reduced();
        (num.len() as i64 - dim as i64).max(0)
    }

    /// Number of terms `s` in the Gotzmann representation
    /// `HP(d) = C(d+a_1, a_1) + C(d+a_2-1, a_2) + … + C(d+a_s-(s-1), a_s)`.
    pub fn gotzmann_number(&self) -> Result<usize> {
        let mut f = self.polynomial();
        let mut s = 0;
        while let Some(a) = f.degree() {
            if f.0[a] < 0 || s > 100_000 {
                return Err(Error::Invariant("not a Hilbert polynomial".into()));
            }
            // f'(d) = f(d + 1) - C(d + 1 + a, a)
            let vals: Vec<i128> = (0..=a as i128 + 1)
                .map(|d| f.eval(d + 1) - binomial_poly(d + 1 + a as i128, a))
                .collect();
            f = Newton::from_values(&vals);
            s += 1;
        }
        Ok(s)
    }
}

/// Hilbert series of `P/J` for homogeneous generators `gens`.
pub fn hilbert_series(gens: &[Poly], nvars: usize) -> Result<HilbertSeries> {
    let gb = ideal_groebner(gens, MonoOrder::DegRevLex)?;
    let leads: Vec<Monomial> = gb
        .iter()
        .map(|g| g.lead_monomial(MonoOrder::DegRevLex).unwrap())
        .collect();
    Ok(HilbertSeries::of_monomial_ideal(&leads, nvars))
}
