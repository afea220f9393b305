//! Lifting the minimal graded resolution of `I*` to a filtered free
//! resolution of `I` over the local ring, and cancelling it down to the
//! minimal local resolution.

use crate::error::{Error, Result};
use crate::hilbert::hilbert_series;
use crate::poly::monomial::MAX_VARS;
use crate::poly::{vector_initial_form, vector_valuation, MonoOrder, Monomial, Poly, Term, TermOrder, Vector};
use crate::resolution::{minimal_graded_resolution, BettiTable, FreeComplex};
use crate::scalar::Field;
use crate::stdbasis::{minimal_homogeneous_generators, module_membership, syzygy_basis};
use crate::tangent::{tangent_cone, FilteredIdeal, FiltrationKind, GradedIdeal};

/// Element `num/den` of the localization `k[x]_(x)`; `den` has a nonzero
/// constant term.
#[derive(Clone, Debug)]
pub struct LocalElem {
    pub num: Poly,
    pub den: Poly,
}

impl PartialEq for LocalElem {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl LocalElem {
    pub fn from_poly(p: Poly, field: Field) -> LocalElem {
        LocalElem {
            num: p,
            den: Poly::constant(field.one()),
        }
    }

    fn normalized(num: Poly, den: Poly) -> LocalElem {
        if num.is_zero() {
            let one = den.constant_term().expect("unit denominator").field().one();
            return LocalElem {
                num,
                den: Poly::constant(one),
            };
        }
        if den.num_terms() == 1 && den.degree() == Some(0) {
            let c = den.constant_term().unwrap();
            if !c.is_one() {
                let inv = c.inv().expect("unit denominator");
                return LocalElem {
                    num: num.scale(&inv),
                    den: Poly::constant(c.field().one()),
                };
            }
        }
        LocalElem { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.num.constant_term().is_some()
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.num.valuation()
    }

    /// Initial form: `in(num) / den(0)`.
    pub fn initial_form(&self) -> Result<Poly> {
        let c = self.den.constant_term().ok_or(Error::DivisionByZero)?;
        Ok(self.num.initial_form()?.scale(&c.inv()?))
    }

    pub fn add(&self, o: &LocalElem) -> LocalElem {
        if self.den == o.den {
            return LocalElem::normalized(self.num.add(&o.num), self.den.clone());
        }
        LocalElem::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &LocalElem) -> LocalElem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LocalElem {
        LocalElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &LocalElem) -> LocalElem {
        if self.is_zero() || o.is_zero() {
            return LocalElem::normalized(Poly::zero(), self.den.clone());
        }
        LocalElem::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    /// Division by a unit.
    pub fn div(&self, u: &LocalElem) -> Result<LocalElem> {
        if !u.is_unit() {
            return Err(Error::DivisionByZero);
        }
        Ok(LocalElem::normalized(self.num.mul(&u.den), self.den.mul(&u.num)))
    }
}

fn local_order(shifts: &[i64]) -> TermOrder {
    TermOrder::module(MonoOrder::NegDegRevLex, shifts.to_vec())
}

fn graded_order(shifts: &[i64]) -> TermOrder {
    TermOrder::module(MonoOrder::DegRevLex, shifts.to_vec())
}

/// Filtered local resolution of `I` together with the graded resolution of
/// `I*` it lifts.
#[derive(Clone, Debug)]
pub struct LiftedResolution {
    /// Columns are local elements; shifts are special-filtration valuations.
    pub local: FreeComplex,
    /// `gr` of `local`: the minimal graded resolution of `I*`.
    pub graded: FreeComplex,
}

/// Pick elements whose initial forms (w.r.t. `shifts`) minimally generate
/// the graded module spanned by all initial forms; sorted by valuation.
fn select_by_initial_forms(elems: &[Vector], shifts: &[i64]) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let gord = graded_order(shifts);
    let forms: Vec<Vector> = elems
        .iter()
        .map(|e| Ok(vector_initial_form(e, shifts)?.resort(&gord)))
        .collect::<Result<_>>()?;
    let keep = minimal_homogeneous_generators(&forms, &gord)?;
    let mut picked: Vec<(i64, Vector, Vector)> = keep
        .into_iter()
        .map(|i| {
            let w = forms[i].max_weight(&gord).unwrap();
            (w, elems[i].clone(), forms[i].clone())
        })
        .collect();
    picked.sort_by_key(|p| p.0);
    Ok(picked.into_iter().map(|(_, e, f)| (e, f)).unzip())
}

fn weights(forms: &[Vector], shifts: &[i64]) -> Vec<i64> {
    let ord = graded_order(shifts);
    forms.iter().map(|f| f.max_weight(&ord).unwrap()).collect()
}

/// Lift the minimal graded resolution of `I*` to `I`.
pub fn lift_resolution(i: &FilteredIdeal) -> Result<LiftedResolution> {
    lift_resolution_with(i, true)
}

/// With `koszul` off, complete intersections go through the general lift too.
fn lift_resolution_with(i: &FilteredIdeal, koszul: bool) -> Result<LiftedResolution> {
    if i.kind() != FiltrationKind::Intersection {
        return Err(Error::Invalid("lifting needs the intersection filtration".into()));
    }
    let field = i.ring().field();
    let nvars = i.ring().nvars();
    let tc = tangent_cone(i)?;
    let ideal_ord = TermOrder::ideal(MonoOrder::NegDegRevLex);
    let sb: Vec<Vector> = tc.standard_basis.iter().map(|f| f.to_vector(0, &ideal_ord)).collect();
    let (f0, g0) = select_by_initial_forms(&sb, &[0])?;
    let mut shifts = vec![weights(&g0, &[0])];
    let mut local_maps: Vec<Vec<Vector>> = Vec::new();
    let mut graded_maps: Vec<Vec<Vector>> = Vec::new();
    let mut cols = f0.clone();
    let mut gcols = g0.clone();
    let mut target = vec![0i64];
    if koszul && is_complete_intersection(&tc.ideal, &shifts[0])? {
        for (s, step) in koszul_steps(&f0, &g0, &shifts[0]).into_iter().enumerate() {
            log::debug!("Koszul step {}: {} columns", s + 1, step.local.len());
            let gord = graded_order(&shifts[s]);
            local_maps.push(step.local.iter().map(|v| v.resort(&gord)).collect());
            graded_maps.push(step.graded.iter().map(|v| v.resort(&gord)).collect());
            shifts.push(step.shifts);
        }
        cols.clear();
    }
    while !cols.is_empty() {
        if local_maps.len() > nvars + 1 {
            return Err(Error::Invariant("lifted resolution exceeds n steps".into()));
        }
        let src = shifts.last().unwrap().clone();
        let (next, gnext) = deformed_syzygies(&cols, &target, &src, nvars)?;
        if next.is_empty() {
            break;
        }
        check_lifts(&gcols, &target, &src, &next, &gnext)?;
        log::trace!(
            "lifted columns: {:?} terms",
            next.iter().map(|v| v.terms().len()).collect::<Vec<_>>()
        );
        log::debug!("lift step {}: {} columns", local_maps.len() + 1, next.len());
        shifts.push(weights(&gnext, &src));
        let gord = graded_order(&src);
        local_maps.push(next.iter().map(|v| v.resort(&gord)).collect());
        graded_maps.push(gnext.clone());
        cols = next;
        gcols = gnext;
        target = src;
    }
    // stored like every FreeComplex: terms sorted by the graded order
    let local = FreeComplex {
        field,
        nvars,
        shifts: shifts.clone(),
        maps: local_maps,
        augmentation: f0.iter().map(|v| v.resort(&graded_order(&[0]))).collect(),
        target_shifts: vec![0],
        minimal: false,
    };
    let graded = FreeComplex {
        field,
        nvars,
        shifts,
        maps: graded_maps,
        augmentation: g0,
        target_shifts: vec![0],
        minimal: true,
    };
    graded.check_composition()?;
    graded.check_graded()?;
    local.check_composition()?;
    let out = LiftedResolution { local, graded };
    out.check_gr()?;
    // the graded side must be the minimal resolution of I*, computed apart
    let independent = minimal_graded_resolution(&tc.ideal)?.betti_table()?;
    let ours = out.graded.betti_table()?;
    if independent != ours {
        return Err(Error::Invariant(format!(
            "lifted graded Betti numbers {:?} differ from those of I* {:?}",
            ours.totals(),
            independent.totals()
        )));
    }
    Ok(out)
}

/// `I*` minimally generated by `r` forms of positive degree with
/// `dim P/I* = n - r`, so they form a regular sequence.
fn is_complete_intersection(j: &GradedIdeal, degrees: &[i64]) -> Result<bool> {
    let (n, r) = (j.nvars(), degrees.len());
    if r == 0 || r > n || degrees.iter().any(|&d| d < 1) {
        return Ok(false);
    }
    Ok(hilbert_series(j.gens(), n)?.dimension() == n - r)
}

/// One differential `F_s → F_{s-1}` of both Koszul complexes.
struct KoszulStep {
    /// Shifts of `F_s`.
    shifts: Vec<i64>,
    local: Vec<Vector>,
    graded: Vec<Vector>,
}

/// Koszul complexes on the generators and on their initial forms, for
/// `s ≥ 1`. Basis elements of `F_s` are the `(s+1)`-subsets of the generators.
fn koszul_steps(gens: &[Vector], forms: &[Vector], degrees: &[i64]) -> Vec<KoszulStep> {
    let r = gens.len();
    let subsets = |k: usize| -> Vec<u32> { (0u32..1 << r).filter(|m| m.count_ones() as usize == k).collect() };
    let mut out = Vec::new();
    for s in 1..r {
        let rows = subsets(s);
        let row_of = |m: u32| rows.iter().position(|&x| x == m).unwrap() as u32;
        let ord = graded_order(&rows.iter().map(|&m| weight_of(m, degrees)).collect::<Vec<_>>());
        let column = |m: u32, from: &[Vector]| -> Vector {
            let mut terms = Vec::new();
            for (k, i) in (0..r).filter(|i| m >> i & 1 == 1).enumerate() {
                let comp = row_of(m & !(1 << i));
                for t in from[i].terms() {
                    let coef = if k % 2 == 0 { t.coef.clone() } else { t.coef.neg() };
                    terms.push(Term { comp, mon: t.mon, coef });
                }
            }
            Vector::from_terms(terms, &ord)
        };
        let cols = subsets(s + 1);
        out.push(KoszulStep {
            shifts: cols.iter().map(|&m| weight_of(m, degrees)).collect(),
            local: cols.iter().map(|&m| column(m, gens)).collect(),
            graded: cols.iter().map(|&m| column(m, forms)).collect(),
        });
    }
    out
}

fn weight_of(subset: u32, degrees: &[i64]) -> i64 {
    (0..degrees.len())
        .filter(|i| subset >> i & 1 == 1)
        .map(|i| degrees[i])
        .sum()
}

fn t_power(t: usize, k: u32) -> Result<Monomial> {
    let mut e = vec![0; t + 1];
    e[t] = k;
    Monomial::from_exps(&e)
}

/// `t^(-v) c(t·x)` for a column `c` of valuation `v`: a family over `k[t]`
/// with the initial form of `c` at `t = 0` and `c` itself at `t = 1`. The
/// variable `t` has index `t`.
fn deform(c: &Vector, shifts: &[i64], t: usize, ord: &TermOrder) -> Result<Vector> {
    let v = vector_valuation(c, shifts).ok_or(Error::ZeroInitialForm)?;
    let terms = c
        .terms()
        .iter()
        .map(|s| {
            let k = (s.mon.deg() as i64 + shifts[s.comp as usize] - v) as u32;
            Ok(Term {
                comp: s.comp,
                mon: s.mon.checked_mul(&t_power(t, k)?)?,
                coef: s.coef.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::from_terms(terms, ord))
}

/// Fibre of a family at `t = 0` or at `t = 1`.
fn fibre(v: &Vector, t: usize, at_one: bool, ord: &TermOrder) -> Vector {
    let terms = v
        .terms()
        .iter()
        .filter(|s| at_one || s.mon.exp(t) == 0)
        .map(|s| Term {
            comp: s.comp,
            mon: t_power(t, s.mon.exp(t)).expect("exponent in range").quotient_of(&s.mon),
            coef: s.coef.clone(),
        })
        .collect();
    Vector::from_terms(terms, ord)
}

/// Syzygies of `cols` whose initial forms minimally generate the graded
/// syzygies of their initial forms, as `(lifts, initial forms)` by weight.
///
/// The columns are deformed to their initial forms over `k[t]` and the
/// syzygies of the family are taken over the polynomial ring `k[t, x]`.
/// Everything stays homogeneous for `deg x = 1, deg t = -1`, so the fibre
/// of a syzygy at `t = 0` is a graded syzygy and its fibre at `t = 1` is a
/// polynomial syzygy of `cols` with that initial form. Every graded syzygy
/// arises this way when the initial forms of `cols` generate the associated
/// graded module of their span, which holds at each step of the lift.
fn deformed_syzygies(cols: &[Vector], target: &[i64], src: &[i64], nvars: usize) -> Result<(Vec<Vector>, Vec<Vector>)> {
    if nvars >= MAX_VARS {
        return Err(Error::CapExceeded(format!(
            "lifting needs a spare variable; at most {} may be in use",
            MAX_VARS - 1
        )));
    }
    let word = TermOrder::module(MonoOrder::DegRevLex, target.to_vec());
    let family: Vec<Vector> = cols
        .iter()
        .map(|c| deform(c, target, nvars, &word))
        .collect::<Result<_>>()?;
    let syz = syzygy_basis(&family, &word, Some(src))?;
    let (gord, lord) = (graded_order(src), local_order(src));
    let (forms, lifts): (Vec<Vector>, Vec<Vector>) = syz
        .gens
        .iter()
        .map(|s| (fibre(s, nvars, false, &gord), s))
        .filter(|(g, _)| !g.is_zero())
        .map(|(g, s)| (g, fibre(s, nvars, true, &lord)))
        .unzip();
    let mut picked: Vec<(i64, Vector, Vector)> = minimal_homogeneous_generators(&forms, &gord)?
        .into_iter()
        .map(|i| (forms[i].max_weight(&gord).unwrap(), lifts[i].clone(), forms[i].clone()))
        .collect();
    picked.sort_by_key(|p| p.0);
    Ok(picked.into_iter().map(|(_, l, g)| (l, g)).unzip())
}

/// Each lift has its graded syzygy as initial form, and those generate all
/// graded syzygies of `gcols`.
fn check_lifts(gcols: &[Vector], target: &[i64], src: &[i64], lifts: &[Vector], graded: &[Vector]) -> Result<()> {
    let gord = graded_order(src);
    for (l, g) in lifts.iter().zip(graded) {
        if vector_initial_form(l, src)?.resort(&gord) != g.resort(&gord) {
            return Err(Error::Invariant("lifted syzygy has the wrong initial form".into()));
        }
    }
    let all = syzygy_basis(gcols, &graded_order(target), Some(src))?;
    for s in &all.gens {
        if !module_membership(s, graded, &gord)? {
            return Err(Error::Invariant(
                "a graded syzygy of the initial forms is not an initial form of a syzygy".into(),
            ));
        }
    }
    Ok(())
}

impl LiftedResolution {
    /// Filtration compatibility and `gr(F.) = G.`: in every column the terms
    /// of least weighted degree are exactly the graded column.
    pub fn check_gr(&self) -> Result<()> {
        let pairs = std::iter::once((
            &self.local.augmentation,
            &self.graded.augmentation,
            &self.local.target_shifts,
            &self.local.shifts[0],
        ))
        .chain((1..=self.local.length()).map(|s| {
            (
                &self.local.maps[s - 1],
                &self.graded.maps[s - 1],
                &self.local.shifts[s - 1],
                &self.local.shifts[s],
            )
        }));
        for (lcols, gcols, tgt, src) in pairs {
            let gord = graded_order(tgt);
            for ((l, g), &v) in lcols.iter().zip(gcols).zip(src) {
                for t in l.terms() {
                    if (t.mon.deg() as i64) + tgt[t.comp as usize] < v {
                        return Err(Error::Invariant("entry below its filtration level".into()));
                    }
                }
                if vector_initial_form(l, tgt)?.resort(&gord) != g.resort(&gord) {
                    return Err(Error::Invariant("gr of a lifted column differs".into()));
                }
            }
        }
        Ok(())
    }

    pub fn graded_betti(&self) -> Result<BettiTable> {
        self.graded.betti_table()
    }

    /// Whether the lifted complex has no unit entries (minimal as built).
    pub fn is_minimal(&self) -> bool {
        self.local.has_no_unit_entries()
    }
}

/// A complex over the localization with dense matrices.
#[derive(Clone, Debug)]
pub struct LocalComplex {
    pub field: Field,
    pub nvars: usize,
    /// Original basis indices that survive in each `F_s`.
    pub labels: Vec<Vec<usize>>,
    /// Special-filtration valuations of the surviving basis elements.
    pub shifts: Vec<Vec<i64>>,
    /// `1 × rank F_0` row mapping onto the ideal.
    pub augmentation: Vec<LocalElem>,
    /// `maps[s - 1]` is `M_s` as rows × columns.
    pub maps: Vec<Vec<Vec<LocalElem>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Cancellation {
    /// Differential `M_s` the unit was found in.
    pub map: usize,
    /// Original index of the cancelled basis element of `F_{s-1}`.
    pub row: usize,
    /// Original index of the cancelled basis element of `F_s`.
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct MinimalLocal {
    pub complex: LocalComplex,
    pub log: Vec<Cancellation>,
}

impl MinimalLocal {
    /// Total Betti numbers `β_i(I)`, trailing zeros dropped.
    pub fn betti(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.complex.shifts.iter().map(|s| s.len()).collect();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    /// Number of cancellations per differential `M_1, M_2, …`.
    pub fn cancellations_per_map(&self) -> Vec<usize> {
        let n = self.log.iter().map(|c| c.map).max().unwrap_or(0);
        let mut v = vec![0; n];
        for c in &self.log {
            v[c.map - 1] += 1;
        }
        v
    }
}

fn column_entries(col: &Vector, rows: usize, field: Field) -> Vec<LocalElem> {
    col.component_terms(rows)
        .into_iter()
        .map(|t| LocalElem::from_poly(Poly::from_terms(t), field))
        .collect()
}

impl LocalComplex {
    pub fn from_free(c: &FreeComplex) -> LocalComplex {
        let field = c.field;
        let augmentation = column_entries_row(&c.augmentation, field);
        let maps = (1..=c.length())
            .map(|s| {
                let rows = c.rank(s - 1);
                let cols: Vec<Vec<LocalElem>> = c.maps[s - 1].iter().map(|v| column_entries(v, rows, field)).collect();
                (0..rows)
                    .map(|r| cols.iter().map(|col| col[r].clone()).collect())
                    .collect()
            })
            .collect();
        LocalComplex {
            field,
            nvars: c.nvars,
            labels: c.shifts.iter().map(|s| (0..s.len()).collect()).collect(),
            shifts: c.shifts.clone(),
            augmentation,
            maps,
        }
    }

    pub fn rank(&self, s: usize) -> usize {
        self.shifts.get(s).map_or(0, |v| v.len())
    }

    fn find_unit(&self, reverse: bool) -> Option<(usize, usize, usize)> {
        let mut maps: Vec<usize> = (1..=self.maps.len()).collect();
        if reverse {
            maps.reverse();
        }
        for s in maps {
            let m = &self.maps[s - 1];
            let mut cols: Vec<usize> = (0..self.rank(s)).collect();
            cols.sort_by_key(|&c| self.shifts[s][c]);
            let mut rows: Vec<usize> = (0..self.rank(s - 1)).collect();
            rows.sort_by_key(|&r| self.shifts[s - 1][r]);
            if reverse {
                cols.reverse();
                rows.reverse();
            }
            for &c in &cols {
                for &r in &rows {
                    if m[r][c].is_unit() {
                        return Some((s, r, c));
                    }
                }
            }
        }
        None
    }

    /// Cancel the trivial summand at the unit entry `(r, c)` of `M_s`.
    fn cancel(&mut self, s: usize, r: usize, c: usize) -> Result<()> {
        let m = &self.maps[s - 1];
        let u = m[r][c].clone();
        let nrows = m.len();
        let ncols = self.rank(s);
        let mut next = Vec::with_capacity(nrows - 1);
        for r2 in (0..nrows).filter(|&x| x != r) {
            let factor = m[r2][c].div(&u)?;
            let mut row = Vec::with_capacity(ncols - 1);
            for c2 in (0..ncols).filter(|&x| x != c) {
                let e = if factor.is_zero() || m[r][c2].is_zero() {
                    m[r2][c2].clone()
                } else {
                    m[r2][c2].sub(&factor.mul(&m[r][c2]))
                };
                row.push(e);
            }
            next.push(row);
        }
        self.maps[s - 1] = next;
        // F_{s-1} loses basis element r: drop column r of M_{s-1}
        if s == 1 {
            self.augmentation.remove(r);
        } else {
            for row in self.maps[s - 2].iter_mut() {
                row.remove(r);
            }
        }
        // F_s loses basis element c: drop row c of M_{s+1}
        if s < self.maps.len() {
            self.maps[s].remove(c);
        }
        self.shifts[s - 1].remove(r);
        self.labels[s - 1].remove(r);
        self.shifts[s].remove(c);
        self.labels[s].remove(c);
        Ok(())
    }

    /// Every composite `M_s · M_{s+1}` (and `aug · M_1`) vanishes.
    pub fn check_composition(&self) -> Result<()> {
        let zero = LocalElem::from_poly(Poly::zero(), self.field);
        let product_zero = |a: &Vec<Vec<LocalElem>>, b: &Vec<Vec<LocalElem>>| -> bool {
            let inner = b.len();
            let cols = b.first().map_or(0, |r| r.len());
            a.iter().all(|row| {
                (0..cols).all(|k| {
                    (0..inner)
                        .fold(zero.clone(), |acc, j| {
                            if row[j].is_zero() || b[j][k].is_zero() {
                                acc
                            } else {
                                acc.add(&row[j].mul(&b[j][k]))
                            }
                        })
                        .is_zero()
                })
            })
        };
        if let Some(m1) = self.maps.first() {
            if !product_zero(&vec![self.augmentation.clone()], m1) {
                return Err(Error::Invariant("augmentation · M_1 ≠ 0".into()));
            }
        }
        for s in 1..self.maps.len() {
            if !product_zero(&self.maps[s - 1], &self.maps[s]) {
                return Err(Error::Invariant(format!("M_{s} · M_{} ≠ 0", s + 1)));
            }
        }
        Ok(())
    }

    pub fn has_units(&self) -> bool {
        self.maps.iter().flatten().flatten().any(|e| e.is_unit())
    }
}

fn column_entries_row(cols: &[Vector], field: Field) -> Vec<LocalElem> {
    cols.iter()
        .map(|v| LocalElem::from_poly(Poly::from_vector(v), field))
        .collect()
}

/// Cancel unit entries until none is left. The scan runs over the
/// differentials from `M_1` upward, columns and rows by ascending shift
/// (all reversed with `reverse`).
pub fn minimalize_local_with(lifted: &LiftedResolution, reverse: bool) -> Result<MinimalLocal> {
    let mut c = LocalComplex::from_free(&lifted.local);
    let mut log = Vec::new();
    while let Some((s, r, col)) = c.find_unit(reverse) {
        log.push(Cancellation {
            map: s,
            row: c.labels[s - 1][r],
            col: c.labels[s][col],
        });
        c.cancel(s, r, col)?;
    }
    while !c.maps.is_empty() && c.rank(c.maps.len()) == 0 {
        c.maps.pop();
        c.shifts.pop();
        c.labels.pop();
    }
    Ok(MinimalLocal { complex: c, log })
}

pub fn minimalize_local(lifted: &LiftedResolution) -> Result<MinimalLocal> {
    minimalize_local_with(lifted, false)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomogeneousTypeReport {
    /// `β_i(I)`, the local side.
    pub local: Vec<usize>,
    /// `β_i(I*)`.
    pub graded: Vec<usize>,
    pub homogeneous_type: bool,
}

pub fn homogeneous_type_from(lifted: &LiftedResolution, minimal: &MinimalLocal) -> Result<HomogeneousTypeReport> {
    let local = minimal.betti();
    let graded = lifted.graded_betti()?.totals();
    Ok(HomogeneousTypeReport {
        homogeneous_type: local == graded,
        local,
        graded,
    })
}

pub fn homogeneous_type_verdict(i: &FilteredIdeal) -> Result<HomogeneousTypeReport> {
    let lifted = lift_resolution(i)?;
    let minimal = minimalize_local(&lifted)?;
    homogeneous_type_from(&lifted, &minimal)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ImplicationCheck {
    /// `μ(I) = μ(I*)` and `I*` componentwise linear.
    pub hypotheses: bool,
    pub homogeneous_type: bool,
    pub koszul: bool,
    /// Hypotheses imply both conclusions on this instance.
    pub holds: bool,
}

/// Minimal standard base plus componentwise linear `I*` should force
/// homogeneous type and the Koszul property.
pub fn implication_check(
    min_standard_base: bool,
    componentwise_linear: bool,
    homogeneous_type: bool,
    koszul: bool,
) -> ImplicationCheck {
    let hypotheses = min_standard_base && componentwise_linear;
    ImplicationCheck {
        hypotheses,
        homogeneous_type,
        koszul,
        holds: !hypotheses || (homogeneous_type && koszul),
    }
}

pub fn theorem_m_consistency(i: &FilteredIdeal) -> Result<ImplicationCheck> {
    let lifted = lift_resolution(i)?;
    let minimal = minimalize_local(&lifted)?;
    let ht = homogeneous_type_from(&lifted, &minimal)?;
    let koszul = crate::linearity::linearity_defect_minimal(&minimal)?.koszul;
    let msb = crate::tangent::is_min_standard_base(i)?;
    let j = crate::tangent::tangent_cone_ideal(i)?;
    let cwl = crate::resolution::is_componentwise_linear(&j, false)?.componentwise_linear;
    Ok(implication_check(msb, cwl, ht.homogeneous_type, koszul))
}
