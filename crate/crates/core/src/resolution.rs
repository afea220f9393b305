//! Free complexes, minimal graded free resolutions over `P`, Betti tables,
//! component submodules and the componentwise-linearity tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::Numerator;
use crate::linalg::Matrix;
use crate::poly::{MonoOrder, Monomial, Poly, TermOrder, Vector};
use crate::scalar::{Field, Scalar};
use crate::stdbasis::{minimal_homogeneous_generators, syzygy_basis};
use crate::tangent::GradedIdeal;

/// A complex of free modules `F_h → … → F_0 → T`. Matrices are stored by
/// columns: `maps[s - 1][c]` is the image of the `c`-th basis element of
/// `F_s`, written in the basis of `F_{s-1}` (component = row index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub field: Field,
    pub nvars: usize,
    /// Degrees (graded) or valuations (local) of the basis elements of `F_s`.
    pub shifts: Vec<Vec<i64>>,
    pub maps: Vec<Vec<Vector>>,
    /// Images of the basis of `F_0` in the target free module.
    pub augmentation: Vec<Vector>,
    pub target_shifts: Vec<i64>,
    pub minimal: bool,
}

fn order_for(shifts: &[i64]) -> TermOrder {
    TermOrder::module(MonoOrder::DegRevLex, shifts.to_vec())
}

/// `Σ_c v_c · cols[c]` for `v` in the source of a matrix given by columns.
pub fn apply_columns(cols: &[Vector], v: &Vector, target_shifts: &[i64]) -> Vector {
    let ord = order_for(target_shifts);
    let mut acc = Vector::zero();
    for t in v.terms() {
        acc = acc.sub_scaled(&t.coef.neg(), &t.mon, &cols[t.comp as usize], &ord);
    }
    acc
}

impl FreeComplex {
    /// Number of differentials (length of the resolution).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn rank(&self, s: usize) -> usize {
        self.shifts.get(s).map_or(0, |v| v.len())
    }

    /// Entry `(r, c)` of `M_s`.
    pub fn entry(&self, s: usize, r: usize, c: usize) -> Poly {
        Poly::from_terms(
            self.maps[s - 1][c]
                .terms()
                .iter()
                .filter(|t| t.comp as usize == r)
                .map(|t| (t.mon, t.coef.clone())),
        )
    }

    /// `M_s` as a dense grid of polynomials, rows by columns.
    pub fn matrix(&self, s: usize) -> Vec<Vec<Poly>> {
        let rows = self.rank(s - 1);
        let mut m = vec![vec![Poly::zero(); self.rank(s)]; rows];
        for (c, col) in self.maps[s - 1].iter().enumerate() {
            for (r, terms) in col.component_terms(rows).into_iter().enumerate() {
                m[r][c] = Poly::from_terms(terms);
            }
        }
        m
    }

    /// `aug ∘ M_1 = 0` and `M_s ∘ M_{s+1} = 0`.
    pub fn check_composition(&self) -> Result<()> {
        for s in 1..=self.length() {
            let (cols, tshifts) = if s == 1 {
                (&self.augmentation, &self.target_shifts)
            } else {
                (&self.maps[s - 2], &self.shifts[s - 2])
            };
            for (c, v) in self.maps[s - 1].iter().enumerate() {
                if !apply_columns(cols, v, tshifts).is_zero() {
                    return Err(Error::Invariant(format!(
                        "composition with M_{s} is nonzero at column {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every entry of `M_s` at `(r, c)` is homogeneous of degree
    /// `shift_s(c) - shift_{s-1}(r)`.
    pub fn check_graded(&self) -> Result<()> {
        let check = |cols: &[Vector], src: &[i64], dst: &[i64], name: &str| -> Result<()> {
            for (c, col) in cols.iter().enumerate() {
                for t in col.terms() {
                    let want = src[c] - dst[t.comp as usize];
                    if t.mon.deg() as i64 != want {
                        return Err(Error::Invariant(format!(
                            "{name}: entry ({}, {c}) has a term of degree {} instead of {want}",
                            t.comp,
                            t.mon.deg()
                        )));
                    }
                }
            }
            Ok(())
        };
        check(&self.augmentation, &self.shifts[0], &self.target_shifts, "augmentation")?;
        for s in 1..=self.length() {
            check(
                &self.maps[s - 1],
                &self.shifts[s],
                &self.shifts[s - 1],
                &format!("M_{s}"),
            )?;
        }
        Ok(())
    }

    /// No entry of any differential is a nonzero constant.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .all(|col| col.terms().iter().all(|t| !t.mon.is_one()))
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        if !self.minimal || !self.has_no_unit_entries() {
            return Err(Error::NotMinimal("complex has unit entries".into()));
        }
        let mut b = BettiTable::default();
        for (i, sh) in self.shifts.iter().enumerate() {
            for &j in sh {
                b.add(i, j, 1);
            }
        }
        Ok(b)
    }

    /// Replace every entry by its degree-one part (entries of `M_s` of any
    /// other degree become 0).
    pub fn linear_part(&self) -> FreeComplex {
        let maps = self
            .maps
            .iter()
            .map(|cols| {
                cols.iter()
                    .map(|c| Vector::from_sorted(c.terms().iter().filter(|t| t.mon.deg() == 1).cloned().collect()))
                    .collect()
            })
            .collect();
        FreeComplex { maps, ..self.clone() }
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(into = "BettiJson", from = "BettiJson")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct BettiJson {
    betti: Vec<(usize, i64, usize)>,
}

impl From<BettiTable> for BettiJson {
    fn from(b: BettiTable) -> Self {
        BettiJson {
            betti: b.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
        }
    }
}

impl From<BettiJson> for BettiTable {
    fn from(j: BettiJson) -> Self {
        let mut b = BettiTable::default();
        for (i, d, v) in j.betti {
            b.add(i, d, v);
        }
        b
    }
}

impl BettiTable {
    pub fn add(&mut self, i: usize, j: i64, v: usize) {
        if v == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += v;
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `i` with `β_i ≠ 0`.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, v)| v).sum()
    }

    /// `(β_0, β_1, …, β_pd)`.
    pub fn totals(&self) -> Vec<usize> {
        match self.projective_dimension() {
            None => Vec::new(),
            Some(p) => (0..=p).map(|i| self.total(i)).collect(),
        }
    }

    /// Degrees `j` with `β_{0,j} > 0`, ascending.
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.entries.keys().filter(|k| k.0 == 0).map(|k| k.1).collect()
    }

    /// `max (j - i)`.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// `β_{i,j} = 0` whenever `j ≠ d + i`.
    pub fn is_linear(&self, d: i64) -> bool {
        self.entries.keys().all(|&(i, j)| j == d + i as i64)
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`, lowest degree first (degrees must be
    /// non-negative).
    pub fn k_polynomial(&self) -> Numerator {
        let top = self.entries.keys().map(|k| k.1).max().unwrap_or(-1);
        let mut p = vec![0i128; (top + 1).max(0) as usize];
        for (&(i, j), &v) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            p[j as usize] += sign * v as i128;
        }
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    /// Betti table of the cokernel `R/I` from that of `I`.
    pub fn of_quotient(&self) -> BettiTable {
        let mut b = BettiTable::default();
        b.add(0, 0, 1);
        for (&(i, j), &v) in &self.entries {
            b.add(i + 1, j, v);
        }
        b
    }
}

impl fmt::Display for BettiTable {
    /// Classic Betti diagram: column `i`, row `j - i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return writeln!(f, "(zero)");
        };
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let hi = self.regularity().unwrap();
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .chain((0..=pd).map(|i| self.total(i).to_string().len()))
            .max()
            .unwrap()
            .max(2)
            + 1;
        let label = hi.to_string().len().max(lo.to_string().len()).max(6) + 1;
        write!(f, "{:>label$}", "")?;
        for i in 0..=pd {
            write!(f, "{i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for i in 0..=pd {
            write!(f, "{:>width$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>label$}", format!("{r}:"))?;
            for i in 0..=pd {
                let v = self.get(i, r + i as i64);
                if v == 0 {
                    write!(f, "{:>width$}", ".")?;
                } else {
                    write!(f, "{v:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn weights(v: &[Vector], shifts: &[i64]) -> Vec<i64> {
    let ord = order_for(shifts);
    v.iter().map(|g| g.max_weight(&ord).unwrap()).collect()
}

/// Keep a minimal homogeneous subset of `gens` and sort it by degree.
fn minimal_sorted(gens: &[Vector], shifts: &[i64]) -> Result<Vec<Vector>> {
    let ord = order_for(shifts);
    let keep = minimal_homogeneous_generators(gens, &ord)?;
    let mut out: Vec<Vector> = keep.into_iter().map(|i| gens[i].resort(&ord)).collect();
    let w = weights(&out, shifts);
    let mut idx: Vec<usize> = (0..out.len()).collect();
    idx.sort_by_key(|&i| w[i]);
    out = idx.into_iter().map(|i| out[i].clone()).collect();
    Ok(out)
}

/// Minimal graded free resolution of the submodule of `⊕ P(-target_shifts)`
/// generated by homogeneous `gens`.
pub fn resolve_submodule(field: Field, nvars: usize, target_shifts: &[i64], gens: &[Vector]) -> Result<FreeComplex> {
    let gens: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let f0 = minimal_sorted(&gens, target_shifts)?;
    let mut shifts = vec![weights(&f0, target_shifts)];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let mut cols = f0.clone();
    let mut col_target = target_shifts.to_vec();
    loop {
        if cols.is_empty() {
            break;
        }
        if maps.len() > nvars + 1 {
            return Err(Error::Invariant(format!("resolution longer than {} steps", nvars + 1)));
        }
        let src = shifts.last().unwrap().clone();
        let syz = syzygy_basis(&cols, &order_for(&col_target), Some(&src))?;
        let next = minimal_sorted(&syz.gens, &src)?;
        if next.is_empty() {
            break;
        }
        log::debug!("resolution step {}: {} generators", maps.len() + 1, next.len());
        shifts.push(weights(&next, &src));
        maps.push(next.clone());
        cols = next;
        col_target = src;
    }
    if shifts[0].is_empty() {
        shifts.clear();
    }
    let c = FreeComplex {
        field,
        nvars,
        shifts,
        maps,
        augmentation: f0,
        target_shifts: target_shifts.to_vec(),
        minimal: true,
    };
    Ok(c)
}

pub fn minimal_graded_resolution(j: &GradedIdeal) -> Result<FreeComplex> {
    let ord = TermOrder::ideal(MonoOrder::DegRevLex);
    let gens: Vec<Vector> = j.gens().iter().map(|g| g.to_vector(0, &ord)).collect();
    let mut c = resolve_submodule(j.ring().field(), j.nvars(), &[0], &gens)?;
    if c.shifts.is_empty() {
        c.shifts.push(Vec::new());
    }
    Ok(c)
}

pub fn betti_table(c: &FreeComplex) -> Result<BettiTable> {
    c.betti_table()
}

/// Betti table of a homogeneous ideal via its minimal resolution.
pub fn ideal_betti(j: &GradedIdeal) -> Result<BettiTable> {
    minimal_graded_resolution(j)?.betti_table()
}

fn coeff_row(f: &Poly, index: &HashMap<Monomial, usize>, len: usize, field: Field) -> Vec<Scalar> {
    let mut r = vec![field.zero(); len];
    for (m, c) in f.terms() {
        r[index[m]] = c.clone();
    }
    r
}

/// A k-basis of `J_d` (echelon form), computed from monomial multiples of
/// the generators without any Gröbner basis.
pub fn degree_part(j: &GradedIdeal, d: i64) -> Vec<Poly> {
    if d < 0 {
        return Vec::new();
    }
    let d = d as u32;
    let n = j.nvars();
    let field = j.ring().field();
    let mons = Monomial::all_of_degree(n, d);
    let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in j.gens() {
        let gd = g.degree().unwrap();
        if gd > d {
            continue;
        }
        for m in Monomial::all_of_degree(n, d - gd) {
            rows.push(coeff_row(&g.mul_mon(&m), &index, mons.len(), field));
        }
    }
    let mut mat = Matrix::from_rows(field, mons.len(), rows);
    mat.rref();
    mat.rows
        .iter()
        .map(|r| {
            Poly::from_terms(
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (mons[i], c.clone())),
            )
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Brute-force `dim_k Tor_i^P(k, J)_deg`: homology of the Koszul complex
/// on the variables tensored with `J`, in internal degree `deg`.
pub fn tor_oracle(j: &GradedIdeal, i: usize, deg: i64) -> Result<usize> {
    let n = j.nvars();
    if i > n {
        return Ok(0);
    }
    let mut cache: HashMap<i64, Vec<Poly>> = HashMap::new();
    let mut part = |d: i64| -> Vec<Poly> { cache.entry(d).or_insert_with(|| degree_part(j, d)).clone() };
    let dim_c = |k: usize, part: &mut dyn FnMut(i64) -> Vec<Poly>| -> usize {
        if k > n {
            return 0;
        }
        subsets(n, k).len() * part(deg - k as i64).len()
    };
    let field = j.ring().field();
    // rank of ∂_k : ∧^k ⊗ J_{deg-k} → ∧^{k-1} ⊗ P_{deg-k+1}
    let rank = |k: usize, part: &mut dyn FnMut(i64) -> Vec<Poly>| -> usize {
        if k == 0 || k > n {
            return 0;
        }
        let basis = part(deg - k as i64);
        if basis.is_empty() {
            return 0;
        }
        let tdeg = (deg - k as i64 + 1) as u32;
        let mons = Monomial::all_of_degree(n, tdeg);
        let targets = subsets(n, k - 1);
        let tindex: HashMap<&Vec<usize>, usize> = targets.iter().enumerate().map(|(a, s)| (s, a)).collect();
        let mindex: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(a, m)| (*m, a)).collect();
        let width = targets.len() * mons.len();
        let mut rows = Vec::new();
        for s in subsets(n, k) {
            for b in &basis {
                let mut row = vec![field.zero(); width];
                for (pos, &v) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(pos);
                    let base = tindex[&rest] * mons.len();
                    let sign = if pos % 2 == 0 { field.one() } else { field.int(-1) };
                    for (m, c) in b.mul_mon(&Monomial::var(v)).terms() {
                        let slot = &mut row[base + mindex[m]];
                        *slot = slot.add(&c.mul(&sign));
                    }
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(field, width, rows).rank()
    };
    let c = dim_c(i, &mut part);
    let r_in = rank(i, &mut part);
    let r_out = rank(i + 1, &mut part);
    Ok(c - r_in - r_out)
}

/// All `β_{i,j}` from the oracle for `j ≤ max_deg`.
pub fn tor_oracle_table(j: &GradedIdeal, max_deg: i64) -> Result<BettiTable> {
    let mut b = BettiTable::default();
    for i in 0..=j.nvars() {
        for d in 0..=max_deg {
            b.add(i, d, tor_oracle(j, i, d)?);
        }
    }
    Ok(b)
}

/// `N_<d>`: the ideal generated by `J_d`.
pub fn component_submodule(j: &GradedIdeal, d: i64) -> Result<GradedIdeal> {
    GradedIdeal::new(j.ring(), degree_part(j, d))
}

/// `n · N_<d>`, generated in degree `d + 1`.
fn maximal_times_component(j: &GradedIdeal, d: i64) -> Result<GradedIdeal> {
    let part = degree_part(j, d);
    let mut gens = Vec::new();
    for g in &part {
        for v in 0..j.nvars() {
            gens.push(g.mul_mon(&Monomial::var(v)));
        }
    }
    GradedIdeal::new(j.ring(), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CwlReport {
    /// `(d, N_<d> has a d-linear resolution)` for each degree examined.
    pub per_degree: Vec<(i64, bool)>,
    pub componentwise_linear: bool,
}

/// Checks `N_<d>` for the generator degrees of `N` (and the initial
/// degree); with `strict`, for every `d` from the initial degree up to the
/// top generator degree.
pub fn is_componentwise_linear(j: &GradedIdeal, strict: bool) -> Result<CwlReport> {
    let degs: BTreeSet<i64> = j.degrees().into_iter().map(|d| d as i64).collect();
    let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
        return Ok(CwlReport {
            per_degree: Vec::new(),
            componentwise_linear: true,
        });
    };
    let to_check: Vec<i64> = if strict {
        (lo..=hi).collect()
    } else {
        degs.into_iter().collect()
    };
    let mut per_degree = Vec::new();
    for d in to_check {
        let comp = component_submodule(j, d)?;
        let linear = ideal_betti(&comp)?.is_linear(d);
        per_degree.push((d, linear));
    }
    let componentwise_linear = per_degree.iter().all(|p| p.1);
    Ok(CwlReport {
        per_degree,
        componentwise_linear,
    })
}

/// Every nonzero `β_{s,j}` has `j - s` among the generator degrees.
pub fn tor_concentrated(b: &BettiTable) -> bool {
    let gens = b.generator_degrees();
    b.entries().all(|(s, j, _)| gens.contains(&(j - s as i64)))
}

pub fn tor_concentration_check(j: &GradedIdeal) -> Result<bool> {
    Ok(tor_concentrated(&ideal_betti(j)?))
}

/// `β_{i,i+d}(N) = β_i(N_<d>) - β_i(n N_<d-1>)` for every `d` between the
/// initial and the top generator degree and every `i`.
pub fn tor_splitting_check(j: &GradedIdeal) -> Result<bool> {
    let b = ideal_betti(j)?;
    let degs = j.degrees();
    let (Some(&lo), Some(&hi)) = (degs.first(), degs.last()) else {
        return Ok(true);
    };
    let (lo, hi) = (lo as i64, hi as i64);
    for d in lo..=hi {
        let whole = ideal_betti(&component_submodule(j, d)?)?;
        let below = if d == lo {
            BettiTable::default()
        } else {
            ideal_betti(&maximal_times_component(j, d - 1)?)?
        };
        for i in 0..=j.nvars() {
            let lhs = b.get(i, i as i64 + d) as i64;
            let rhs = whole.total(i) as i64 - below.total(i) as i64;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    // no Betti numbers outside the generator range
    let inside = b.entries().all(|(i, j, _)| (lo..=hi).contains(&(j - i as i64)));
    Ok(inside)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BlockShapeReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Block structure of the differentials of a resolution of a
/// componentwise linear ideal, after sorting bases by shift.
pub fn block_shape_check(c: &FreeComplex) -> BlockShapeReport {
    let mut failures = Vec::new();
    let gens: Vec<i64> = {
        let mut g = c.shifts.first().cloned().unwrap_or_default();
        g.sort_unstable();
        g.dedup();
        g
    };
    let band = |shift: i64, s: usize| gens.iter().position(|&i| i + s as i64 == shift);
    for s in 1..=c.length() {
        let mut rows: Vec<usize> = (0..c.rank(s - 1)).collect();
        rows.sort_by_key(|&r| c.shifts[s - 1][r]);
        let mut cols: Vec<usize> = (0..c.rank(s)).collect();
        cols.sort_by_key(|&k| c.shifts[s][k]);
        let m = c.matrix(s);
        for &r in &rows {
            if band(c.shifts[s - 1][r], s - 1).is_none() {
                failures.push(format!("F_{}: basis element {r} has shift outside the bands", s - 1));
            }
        }
        for &k in &cols {
            let Some(q) = band(c.shifts[s][k], s) else {
                failures.push(format!("F_{s}: basis element {k} has shift outside the bands"));
                continue;
            };
            let mut diagonal_nonzero = false;
            for &r in &rows {
                let Some(p) = band(c.shifts[s - 1][r], s - 1) else {
                    continue;
                };
                let e = &m[r][k];
                if e.is_zero() {
                    continue;
                }
                let deg = e.degree().unwrap();
                if p == q {
                    diagonal_nonzero = true;
                    if !e.is_homogeneous() || deg != 1 {
                        failures.push(format!("M_{s}[{r},{k}]: diagonal entry not linear"));
                    }
                } else if gens[p] < gens[q] {
                    if e.valuation().unwrap() < 2 {
                        failures.push(format!("M_{s}[{r},{k}]: above-diagonal entry of degree < 2"));
                    }
                } else {
                    failures.push(format!("M_{s}[{r},{k}]: nonzero entry below the diagonal"));
                }
            }
            if !diagonal_nonzero {
                failures.push(format!("M_{s}: column {k} vanishes on its diagonal block"));
            }
        }
    }
    BlockShapeReport {
        passed: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests;
