//! Linear parts of minimal resolutions, homology of graded free complexes,
//! the linearity defect and the Koszul verdict.

use crate::error::{Error, Result};
use crate::hilbert::{monomial_numerator, Numerator};
use crate::lift::{lift_resolution, minimalize_local, LocalComplex, MinimalLocal};
use crate::linalg::Matrix;
use crate::poly::{MonoOrder, Monomial, Term, TermOrder, Vector};
use crate::resolution::{apply_columns, minimal_graded_resolution, FreeComplex};
use crate::stdbasis::{basis, syzygy_basis};
use crate::tangent::{FilteredIdeal, GradedIdeal};

fn order_for(shifts: &[i64]) -> TermOrder {
    TermOrder::module(MonoOrder::DegRevLex, shifts.to_vec())
}

/// Maps `M_s · M_{s+1} = 0` for `s ≥ 1`; the augmentation is not part of a
/// linear part.
fn check_maps(c: &FreeComplex) -> Result<()> {
    for s in 2..=c.length() {
        for (k, v) in c.maps[s - 1].iter().enumerate() {
            if !apply_columns(&c.maps[s - 2], v, &c.shifts[s - 2]).is_zero() {
                return Err(Error::Invariant(format!(
                    "linear part: M_{} · M_{s} is nonzero at column {k}",
                    s - 1
                )));
            }
        }
    }
    Ok(())
}

/// `lin(F.)` of a minimal graded complex: entries of degree one are kept,
/// all others become zero.
pub fn linear_part(c: &FreeComplex) -> Result<FreeComplex> {
    if !c.minimal || !c.has_no_unit_entries() {
        return Err(Error::NotMinimal("the linear part needs a minimal complex".into()));
    }
    let lin = c.linear_part();
    check_maps(&lin)?;
    Ok(lin)
}

/// `lin^R(F.)` of a minimal local complex: entries of valuation one become
/// their initial linear forms, all others zero. `F_s` sits in degree `s`.
pub fn local_linear_part(c: &LocalComplex) -> Result<FreeComplex> {
    if c.has_units() {
        return Err(Error::NotMinimal("the linear part needs a minimal complex".into()));
    }
    let shifts: Vec<Vec<i64>> = (0..c.shifts.len()).map(|s| vec![s as i64; c.rank(s)]).collect();
    let mut maps = Vec::with_capacity(c.maps.len());
    for (k, m) in c.maps.iter().enumerate() {
        let ord = order_for(&shifts[k]);
        let ncols = c.rank(k + 1);
        let mut cols = Vec::with_capacity(ncols);
        for col in 0..ncols {
            let mut terms = Vec::new();
            for (r, row) in m.iter().enumerate() {
                let e = &row[col];
                if e.valuation() == Some(1) {
                    for (mon, coef) in e.initial_form()?.terms() {
                        terms.push(Term {
                            comp: r as u32,
                            mon: *mon,
                            coef: coef.clone(),
                        });
                    }
                }
            }
            cols.push(Vector::from_terms(terms, &ord));
        }
        maps.push(cols);
    }
    let augmentation = vec![Vector::zero(); c.rank(0)];
    let lin = FreeComplex {
        field: c.field,
        nvars: c.nvars,
        shifts,
        maps,
        augmentation,
        target_shifts: vec![0],
        minimal: true,
    };
    check_maps(&lin)?;
    Ok(lin)
}

/// Hilbert series numerator (over `(1-t)^n`) of `F/N` for `N ⊆ F` spanned
/// by homogeneous `gens`.
fn quotient_numerator(gens: &[Vector], shifts: &[i64]) -> Result<(Numerator, i64)> {
    let ord = order_for(shifts);
    let gens: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.resort(&ord)).collect();
    let gb = if gens.is_empty() {
        Vec::new()
    } else {
        basis(&gens, &ord)?.basis
    };
    let low = shifts.iter().copied().min().unwrap_or(0);
    let mut out: Numerator = Vec::new();
    for (c, &a) in shifts.iter().enumerate() {
        let leads: Vec<Monomial> = gb
            .iter()
            .map(|g| g.lead().unwrap())
            .filter(|t| t.comp as usize == c)
            .map(|t| t.mon)
            .collect();
        let num = monomial_numerator(&leads);
        let off = (a - low) as usize;
        if out.len() < num.len() + off {
            out.resize(num.len() + off, 0);
        }
        for (k, v) in num.iter().enumerate() {
            out[k + off] += v;
        }
    }
    Ok((out, low))
}

/// Graded dimensions of one homology module.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Homology {
    pub index: usize,
    /// `H(t) (1-t)^n`, coefficient `k` belonging to `t^(offset + k)`.
    pub numerator: Vec<i128>,
    pub offset: i64,
    pub nvars: usize,
    /// `(d, dim_k H_d)` for every `d` up to the degree bound with a nonzero value.
    pub dims: Vec<(i64, i128)>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    pub fn dim(&self, d: i64) -> i128 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let e = d - self.offset - k as i64;
                if e < 0 {
                    0
                } else {
                    c * binom(e + n - 1, n - 1)
                }
            })
            .sum()
    }
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Highest degree checked explicitly: top shift + n + 1.
pub fn degree_bound(c: &FreeComplex) -> i64 {
    c.shifts.iter().flatten().copied().max().unwrap_or(0) + c.nvars as i64 + 1
}

/// `H_i = ker M_i / im M_{i+1}` (with `M_0 = 0`), through the Hilbert series
/// of both submodules of `F_i`; exact in every degree.
pub fn complex_homology(c: &FreeComplex, i: usize) -> Result<Homology> {
    let n = c.nvars;
    let shifts = c.shifts.get(i).cloned().unwrap_or_default();
    if shifts.is_empty() {
        return Ok(Homology {
            index: i,
            numerator: Vec::new(),
            offset: 0,
            nvars: n,
            dims: Vec::new(),
        });
    }
    let kernel: Vec<Vector> = if i == 0 {
        Vec::new()
    } else {
        let cols = &c.maps[i - 1];
        if cols.iter().all(|v| v.is_zero()) {
            Vec::new()
        } else {
            syzygy_basis(cols, &order_for(&c.shifts[i - 1]), Some(&shifts))?.gens
        }
    };
    let kernel_is_everything = i == 0 || c.maps[i - 1].iter().all(|v| v.is_zero());
    let image: Vec<Vector> = c.maps.get(i).cloned().unwrap_or_default();
    // H = (F/im) - (F/ker) as series
    let (qi, lo) = quotient_numerator(&image, &shifts)?;
    let (qk, lo2) = if kernel_is_everything {
        (Vec::new(), lo)
    } else {
        quotient_numerator(&kernel, &shifts)?
    };
    debug_assert_eq!(lo, lo2);
    let len = qi.len().max(qk.len());
    let mut num: Vec<i128> = (0..len)
        .map(|k| qi.get(k).unwrap_or(&0) - qk.get(k).unwrap_or(&0))
        .collect();
    while num.last() == Some(&0) {
        num.pop();
    }
    let mut h = Homology {
        index: i,
        numerator: num,
        offset: lo,
        nvars: n,
        dims: Vec::new(),
    };
    if (lo..=degree_bound(c)).any(|d| h.dim(d) < 0) {
        return Err(Error::Invariant(format!("negative homology dimension in H_{i}")));
    }
    h.dims = (lo..=degree_bound(c))
        .map(|d| (d, h.dim(d)))
        .filter(|p| p.1 != 0)
        .collect();
    Ok(h)
}

/// `dim_k H_i(C)_d` by linear algebra on the degree-`d` pieces.
pub fn homology_dimension_by_linear_algebra(c: &FreeComplex, i: usize, d: i64) -> Result<i128> {
    let basis_of = |s: usize| -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (k, &a) in c.shifts.get(s).map(|v| v.as_slice()).unwrap_or(&[]).iter().enumerate() {
            if d >= a {
                for m in Monomial::all_of_degree(c.nvars, (d - a) as u32) {
                    out.push((k, m));
                }
            }
        }
        out
    };
    // matrix of M_s in degree d: rows = basis of (F_s)_d, columns = basis of (F_{s-1})_d
    let rank_of = |s: usize| -> Result<usize> {
        if s == 0 || s > c.length() {
            return Ok(0);
        }
        let src = basis_of(s);
        let dst = basis_of(s - 1);
        let mut rows = Vec::with_capacity(src.len());
        for (k, m) in &src {
            let img = c.maps[s - 1][*k].mul_mon(m);
            let mut row = vec![c.field.zero(); dst.len()];
            for t in img.terms() {
                let pos = dst
                    .iter()
                    .position(|(kk, mm)| *kk == t.comp as usize && *mm == t.mon)
                    .ok_or_else(|| Error::Invariant("image term outside the degree piece".into()))?;
                row[pos] = t.coef.clone();
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(c.field, dst.len(), rows).rank())
    };
    let dim = basis_of(i).len() as i128;
    Ok(dim - rank_of(i)? as i128 - rank_of(i + 1)? as i128)
}

/// `inf { j : H_i = 0 for all i ≥ j + 1 }` over a linear complex.
pub fn defect_of_linear_complex(lin: &FreeComplex) -> Result<(usize, Vec<Homology>)> {
    use rayon::prelude::*;
    let hs: Vec<Homology> = (1..=lin.length())
        .into_par_iter()
        .map(|i| complex_homology(lin, i))
        .collect::<Result<_>>()?;
    let ld = hs.iter().filter(|h| !h.is_zero()).map(|h| h.index).max().unwrap_or(0);
    Ok((ld, hs))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LinearityReport {
    pub ld: usize,
    pub koszul: bool,
    /// Nonzero homology of the linear part, `H_i` for `i ≥ 1`.
    pub homology: Vec<Homology>,
}

impl LinearityReport {
    fn from(ld: usize, hs: Vec<Homology>) -> LinearityReport {
        LinearityReport {
            ld,
            koszul: ld == 0,
            homology: hs.into_iter().filter(|h| !h.is_zero()).collect(),
        }
    }
}

pub fn linearity_defect_graded(j: &GradedIdeal) -> Result<LinearityReport> {
    let c = minimal_graded_resolution(j)?;
    let (ld, hs) = defect_of_linear_complex(&linear_part(&c)?)?;
    Ok(LinearityReport::from(ld, hs))
}

pub fn linearity_defect_minimal(m: &MinimalLocal) -> Result<LinearityReport> {
    let (ld, hs) = defect_of_linear_complex(&local_linear_part(&m.complex)?)?;
    Ok(LinearityReport::from(ld, hs))
}

pub fn linearity_defect_local(i: &FilteredIdeal) -> Result<LinearityReport> {
    linearity_defect_minimal(&minimalize_local(&lift_resolution(i)?)?)
}

/// `I` is Koszul iff `ld(I) = 0`.
pub fn koszul_verdict(i: &FilteredIdeal) -> Result<bool> {
    Ok(linearity_defect_local(i)?.koszul)
}

#[cfg(test)]
mod tests;
