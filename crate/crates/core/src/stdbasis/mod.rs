//! Gröbner and standard bases, syzygies, membership, colon and elimination.

mod engine;

pub use engine::{
    complete, normal_form, reduction_cap, s_vector_of, set_reduction_cap, Basis, Options, Stats, DEFAULT_REDUCTION_CAP,
};

use crate::error::{Error, Result};
use crate::poly::monomial::MAX_VARS;
use crate::poly::{Mode, MonoOrder, Monomial, Poly, Term, TermOrder, Vector};
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct BasisResult {
    pub inputs: Vec<Vector>,
    pub basis: Vec<Vector>,
    /// Row `k` expresses `basis[k]` as a combination of the inputs:
    /// `basis[k] = Σ_i cert[k][i] · inputs[i]` (component `i` of the vector).
    pub certificates: Option<Vec<Vector>>,
    pub order: TermOrder,
    pub reduced: bool,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
pub struct SyzygyModule {
    /// Shifts of the source free module, one per generator of the map.
    pub shifts: Vec<i64>,
    pub gens: Vec<Vector>,
}

fn field_of(gens: &[Vector]) -> Field {
    gens.iter()
        .find_map(|g| g.lead().map(|t| t.coef.field()))
        .unwrap_or(Field::Rational)
}

fn trace(what: &str, out: &Basis) {
    log::debug!(
        "{what}: {} elements, {} S-pairs, {} reductions ({} to zero)",
        out.elems.len(),
        out.stats.spairs,
        out.stats.reductions,
        out.stats.zero_reductions
    );
}

/// Gröbner basis under a global order, reduced and monic.
pub fn buchberger(gens: &[Vector], ord: &TermOrder) -> Result<BasisResult> {
    if !ord.is_global() {
        return Err(Error::LocalOrder);
    }
    basis(gens, ord)
}

/// Mora standard basis under a local order.
pub fn standard_basis(gens: &[Vector], ord: &TermOrder) -> Result<BasisResult> {
    if ord.is_global() {
        return Err(Error::GlobalOrder);
    }
    basis(gens, ord)
}

/// Either kind of basis, chosen by the order. Local degree orders go
/// through homogenization when a spare variable is free, Mora's normal form
/// otherwise.
pub fn basis(gens: &[Vector], ord: &TermOrder) -> Result<BasisResult> {
    let gens: Vec<Vector> = gens.iter().map(|g| g.resort(ord)).collect();
    let out = match lazard(&gens, ord) {
        Some(out) => out?,
        None => complete(&gens, ord, &Options::default())?,
    };
    trace("basis", &out);
    Ok(BasisResult {
        inputs: gens,
        basis: out.elems,
        certificates: None,
        order: ord.clone(),
        reduced: ord.is_global(),
        stats: out.stats,
    })
}

/// Basis together with exact certificates, computed in `F ⊕ G` where the
/// generator `g_i` is paired with the unit vector `e_i` of `G`.
pub fn basis_with_certificates(gens: &[Vector], ord: &TermOrder) -> Result<BasisResult> {
    let ext = Extended::new(gens, ord, None)?;
    let out = complete(
        &ext.gens,
        &ext.ord,
        &Options {
            reduce_tails: false,
            ..Options::default()
        },
    )?;
    trace("certified basis", &out);
    let r = ord.rank() as u32;
    let m = gens.len() as u32;
    let mut basis = Vec::new();
    let mut certs = Vec::new();
    for e in &out.elems {
        if e.lead().unwrap().comp < r {
            basis.push(e.slice_components(0, r).resort(ord));
            certs.push(e.slice_components(r, r + m));
        }
    }
    Ok(BasisResult {
        inputs: gens.iter().map(|g| g.resort(ord)).collect(),
        basis,
        certificates: Some(certs),
        order: ord.clone(),
        reduced: false,
        stats: out.stats,
    })
}

/// Standard basis under a local degree order by Lazard's method: homogenize
/// with a new variable `t`, take a Gröbner basis under the order that ranks
/// degree first and then the local order (see `MonoOrder::homogenized`),
/// and set `t = 1`. `None` when the order is not of that kind or no
/// variable is free.
fn lazard(gens: &[Vector], ord: &TermOrder) -> Option<Result<Basis>> {
    if ord.blocks.iter().any(|&b| b != 0) {
        return None;
    }
    let t = gens
        .iter()
        .flat_map(|g| g.terms().iter().filter_map(|s| s.mon.max_var()))
        .max()
        .map_or(0, |v| v + 1);
    if t >= MAX_VARS {
        return None;
    }
    let hord = TermOrder {
        mono: ord.mono.homogenized(t)?,
        shifts: ord.shifts.clone(),
        blocks: ord.blocks.clone(),
    };
    Some(lazard_with(gens, ord, &hord, t))
}

fn t_power(t: usize, k: u32) -> Result<Monomial> {
    let mut e = vec![0; t + 1];
    e[t] = k;
    Monomial::from_exps(&e)
}

fn lazard_with(gens: &[Vector], ord: &TermOrder, hord: &TermOrder, t: usize) -> Result<Basis> {
    let mut hom = Vec::with_capacity(gens.len());
    let nonzero: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    for g in nonzero.iter().map(|&i| &gens[i]) {
        let top = g.max_weight(ord).unwrap();
        let terms = g
            .terms()
            .iter()
            .map(|s| {
                Ok(Term {
                    comp: s.comp,
                    mon: s
                        .mon
                        .checked_mul(&t_power(t, (top - ord.weight(s.comp, &s.mon)) as u32)?)?,
                    coef: s.coef.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        hom.push(Vector::from_terms(terms, hord));
    }
    let out = complete(
        &hom,
        hord,
        &Options {
            reduce_tails: false,
            ..Options::default()
        },
    )?;
    let mut elems: Vec<Vector> = out
        .elems
        .iter()
        .map(|h| {
            let terms = h
                .terms()
                .iter()
                .map(|s| Term {
                    comp: s.comp,
                    mon: t_power(t, s.mon.exp(t)).expect("exponent in range").quotient_of(&s.mon),
                    coef: s.coef.clone(),
                })
                .collect();
            Vector::from_terms(terms, ord)
        })
        .collect();
    // leads that were apart only through powers of t
    let lead = |v: &Vector| {
        let l = v.lead().unwrap();
        (l.comp, l.mon)
    };
    let n = elems.len();
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            let (ci, mi) = lead(&elems[i]);
            !(0..n).any(|j| {
                let (cj, mj) = lead(&elems[j]);
                j != i && ci == cj && mj.divides(&mi) && (mj != mi || j < i)
            })
        })
        .collect();
    let mut k = keep.into_iter();
    elems.retain(|_| k.next().unwrap());
    elems.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp(x.comp, &x.mon, y.comp, &y.mon)
    });
    Ok(Basis {
        elems,
        minimal_inputs: out.minimal_inputs.iter().map(|&i| nonzero[i]).collect(),
        stats: out.stats,
    })
}

/// `F ⊕ G (⊕ one spare slot)` elimination set-up.
struct Extended {
    ord: TermOrder,
    gens: Vec<Vector>,
}

impl Extended {
    /// Source shifts default to the weight of each generator's lead, so
    /// syzygies of homogeneous maps come out homogeneous.
    fn new(gens: &[Vector], ord: &TermOrder, src_shifts: Option<&[i64]>) -> Result<Extended> {
        let r = ord.rank() as u32;
        let field = field_of(gens);
        let shifts: Vec<i64> = match src_shifts {
            Some(s) => s.to_vec(),
            None => gens
                .iter()
                .map(|g| {
                    if ord.is_global() {
                        g.max_weight(ord).unwrap_or(0)
                    } else {
                        g.min_weight(ord).unwrap_or(0)
                    }
                })
                .collect(),
        };
        if shifts.len() != gens.len() {
            return Err(Error::ContextMismatch("one shift per generator".into()));
        }
        let mut second = shifts.clone();
        second.push(0);
        let eord = TermOrder::elimination(ord.mono, &ord.shifts, &second);
        let egens = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut t = g.terms().to_vec();
                t.push(Term {
                    comp: r + i as u32,
                    mon: Monomial::ONE,
                    coef: field.one(),
                });
                Vector::from_terms(t, &eord)
            })
            .collect();
        Ok(Extended { ord: eord, gens: egens })
    }
}

/// Generators of the syzygy module of `gens` (as elements of `F` ordered by
/// `ord`). The source module carries `src_shifts`, or lead weights when
/// omitted. The output is a basis of the syzygy module under the induced
/// order, so it may be far from minimal.
///
/// For a local order the syzygies are first computed over the polynomial
/// ring under the matching global order; they generate the local syzygy
/// module because `k[[x]]` is flat over `k[x]`. Mora's algorithm then only
/// has to turn them into a standard basis. Running the elimination set-up
/// under the local order instead drags unit cofactors along and can grow
/// without bound between reductions.
pub fn syzygy_basis(gens: &[Vector], ord: &TermOrder, src_shifts: Option<&[i64]>) -> Result<SyzygyModule> {
    if !ord.is_global() {
        let shifts = match src_shifts {
            Some(s) => s.to_vec(),
            None => gens.iter().map(|g| g.min_weight(ord).unwrap_or(0)).collect(),
        };
        let gord = TermOrder::module(MonoOrder::DegRevLex, ord.shifts.clone());
        let global = syzygy_basis(gens, &gord, Some(&shifts))?;
        let sord = TermOrder::module(ord.mono, shifts.clone());
        let syz = if global.gens.is_empty() {
            Vec::new()
        } else {
            basis(&global.gens, &sord)?.basis
        };
        return Ok(SyzygyModule { shifts, gens: syz });
    }
    let ext = Extended::new(gens, ord, src_shifts)?;
    let shifts = ext.ord.shifts[ord.rank()..ext.ord.rank() - 1].to_vec();
    let out = complete(
        &ext.gens,
        &ext.ord,
        &Options {
            reduce_tails: false,
            ..Options::default()
        },
    )?;
    trace("syzygies", &out);
    let r = ord.rank() as u32;
    let m = gens.len() as u32;
    let sord = TermOrder::module(ord.mono, shifts.clone());
    let syz = out
        .elems
        .iter()
        .filter(|e| e.lead().unwrap().comp >= r)
        .map(|e| e.slice_components(r, r + m).resort(&sord))
        .collect();
    Ok(SyzygyModule { shifts, gens: syz })
}

/// Apply a coefficient vector to generators: `Σ c_i gens_i`.
pub fn combine(coeffs: &Vector, gens: &[Vector], ord: &TermOrder) -> Vector {
    let mut acc = Vector::zero();
    for t in coeffs.terms() {
        acc = acc.sub_scaled(&t.coef.neg(), &t.mon, &gens[t.comp as usize], ord);
    }
    acc
}

/// Mora's weak normal form against arbitrary reducers.
pub fn mora_normal_form(f: &Vector, reducers: &[Vector], ord: &TermOrder) -> Result<Vector> {
    if ord.is_global() {
        return Err(Error::GlobalOrder);
    }
    let red: Vec<Vector> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.resort(ord))
        .collect();
    normal_form(f, &red, ord, false)
}

/// Membership in the module spanned by `gens` (localized when the order is
/// local). Locally, `f` belongs iff adding it leaves the leading module
/// unchanged, which avoids Mora's normal form and its unit multiples.
pub fn module_membership(f: &Vector, gens: &[Vector], ord: &TermOrder) -> Result<bool> {
    let b = basis(gens, ord)?;
    if ord.is_global() {
        return Ok(normal_form(f, &b.basis, ord, false)?.is_zero());
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut more = gens.to_vec();
    more.push(f.clone());
    let wider = basis(&more, ord)?;
    Ok(wider.basis.iter().all(|v| {
        let l = v.lead().unwrap();
        b.basis.iter().any(|g| {
            let lg = g.lead().unwrap();
            lg.comp == l.comp && lg.mon.divides(&l.mon)
        })
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `unit · f = Σ coeffs_i · gens_i`; the unit is 1 in the graded case.
    pub unit: Poly,
    pub coeffs: Vec<Poly>,
}

fn ideal_order(mode: Mode) -> TermOrder {
    TermOrder::ideal(match mode {
        Mode::Graded => MonoOrder::DegRevLex,
        Mode::Local => MonoOrder::NegDegRevLex,
    })
}

/// Ideal membership with certificate. Graded mode works in the polynomial
/// ring; local mode in its localization at the origin.
pub fn ideal_membership(f: &Poly, gens: &[Poly], mode: Mode) -> Result<Membership> {
    if mode == Mode::Local {
        return local_membership(f, gens);
    }
    let ord = ideal_order(mode);
    let m = gens.len() as u32;
    let vg: Vec<Vector> = gens.iter().map(|g| g.to_vector(0, &ord)).collect();
    let field = field_of(&vg);
    let ext = Extended::new(&vg, &ord, None)?;
    let out = complete(
        &ext.gens,
        &ext.ord,
        &Options {
            reduce_tails: false,
            ..Options::default()
        },
    )?;
    let mut fv = f.to_vector(0, &ord).into_terms();
    fv.push(Term {
        comp: 1 + m,
        mon: Monomial::ONE,
        coef: field.one(),
    });
    let fv = Vector::from_terms(fv, &ext.ord);
    let r = normal_form(&fv, &out.elems, &ext.ord, false)?;
    let member = r.lead().is_none_or(|t| t.comp >= 1);
    if !member {
        return Ok(Membership {
            member,
            unit: Poly::zero(),
            coeffs: Vec::new(),
        });
    }
    let parts = r.component_terms(m as usize + 2);
    let unit = Poly::from_terms(parts[1 + m as usize].iter().cloned());
    let coeffs = (0..m as usize)
        .map(|i| Poly::from_terms(parts[1 + i].iter().cloned()).neg())
        .collect();
    Ok(Membership { member, unit, coeffs })
}

/// `f ∈ I·k[x]_(x)` iff `I : f` contains a unit, iff some generator of the
/// polynomial syzygies of `(f, gens…)` starts with a unit; that generator
/// is the certificate.
fn local_membership(f: &Poly, gens: &[Poly]) -> Result<Membership> {
    let ord = ideal_order(Mode::Graded);
    let m = gens.len();
    let mut all = vec![f.to_vector(0, &ord)];
    all.extend(gens.iter().map(|g| g.to_vector(0, &ord)));
    let field = field_of(&all);
    if f.is_zero() {
        return Ok(Membership {
            member: true,
            unit: Poly::from_terms([(Monomial::ONE, field.one())]),
            coeffs: vec![Poly::zero(); m],
        });
    }
    let syz = syzygy_basis(&all, &ord, None)?;
    let found = syz
        .gens
        .iter()
        .map(|s| s.component_terms(m + 1))
        .find(|p| p[0].iter().any(|(mon, _)| mon.is_one()));
    Ok(match found {
        Some(parts) => Membership {
            member: true,
            unit: Poly::from_terms(parts[0].iter().cloned()),
            coeffs: parts[1..]
                .iter()
                .map(|p| Poly::from_terms(p.iter().cloned()).neg())
                .collect(),
        },
        None => Membership {
            member: false,
            unit: Poly::zero(),
            coeffs: Vec::new(),
        },
    })
}

/// Reduced Gröbner basis of an ideal under a global monomial order.
pub fn ideal_groebner(gens: &[Poly], mono: MonoOrder) -> Result<Vec<Poly>> {
    let ord = TermOrder::ideal(mono);
    let vg: Vec<Vector> = gens.iter().map(|g| g.to_vector(0, &ord)).collect();
    Ok(buchberger(&vg, &ord)?.basis.iter().map(Poly::from_vector).collect())
}

/// Standard basis of an ideal under a local monomial order.
pub fn ideal_standard_basis(gens: &[Poly], mono: MonoOrder) -> Result<Vec<Poly>> {
    let ord = TermOrder::ideal(mono);
    let vg: Vec<Vector> = gens.iter().map(|g| g.to_vector(0, &ord)).collect();
    Ok(standard_basis(&vg, &ord)?.basis.iter().map(Poly::from_vector).collect())
}

/// `J : f` in the polynomial ring, as a reduced degrevlex Gröbner basis.
pub fn colon_ideal(j: &[Poly], f: &Poly) -> Result<Vec<Poly>> {
    let ord = TermOrder::ideal(MonoOrder::DegRevLex);
    let mut gens = vec![f.to_vector(0, &ord)];
    gens.extend(j.iter().filter(|g| !g.is_zero()).map(|g| g.to_vector(0, &ord)));
    if f.is_zero() {
        let field = field_of(&gens);
        return Ok(vec![Poly::constant(field.one())]);
    }
    if gens.len() == 1 {
        return Ok(Vec::new());
    }
    // first coordinates of the syzygies of (f, j_1, ..., j_m)
    let syz = syzygy_basis(&gens, &ord, None)?;
    let firsts: Vec<Poly> = syz
        .gens
        .iter()
        .map(|s| Poly::from_vector(&s.slice_components(0, 1)))
        .filter(|p| !p.is_zero())
        .collect();
    ideal_groebner(&firsts, MonoOrder::DegRevLex)
}

/// `J ∩ k[kept variables]`, via a block order eliminating `drop`.
pub fn eliminate(gens: &[Poly], drop: &[usize], nvars: usize) -> Result<Vec<Poly>> {
    let mut perm: Vec<usize> = drop.to_vec();
    perm.sort_unstable();
    perm.dedup();
    let k = perm.len();
    perm.extend((0..nvars).filter(|i| !drop.contains(i)));
    // new index of old variable i
    let mut inv = vec![0; nvars];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let permute = |p: &Poly, map: &dyn Fn(usize) -> usize| -> Result<Poly> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut e = vec![0u32; nvars];
            for (i, slot) in (0..nvars).map(|i| (i, map(i))) {
                e[slot] = m.exp(i);
            }
            terms.push((Monomial::from_exps(&e)?, c.clone()));
        }
        Ok(Poly::from_terms(terms))
    };
    let moved: Vec<Poly> = gens.iter().map(|g| permute(g, &|i| inv[i])).collect::<Result<_>>()?;
    let gb = ideal_groebner(&moved, MonoOrder::Product(k))?;
    gb.iter()
        .filter(|g| g.terms().all(|(m, _)| (0..k).all(|i| m.exp(i) == 0)))
        .map(|g| permute(g, &|i| perm[i]))
        .collect()
}

/// Indices of a minimal generating subset of homogeneous `gens` (graded
/// Nakayama: an input is kept iff it survives reduction by everything of
/// lower degree and the earlier inputs of its own degree).
pub fn minimal_homogeneous_generators(gens: &[Vector], ord: &TermOrder) -> Result<Vec<usize>> {
    if !ord.is_global() {
        return Err(Error::LocalOrder);
    }
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous(ord)) {
        return Err(Error::Invalid(format!("generator not homogeneous: {g:?}")));
    }
    let gens: Vec<Vector> = gens.iter().map(|g| g.resort(ord)).collect();
    Ok(complete(
        &gens,
        ord,
        &Options {
            reduce_tails: false,
            ..Options::default()
        },
    )?
    .minimal_inputs)
}

/// Greedy Nakayama pruning in the local ring: drop a generator when it lies
/// in the span of the others still present.
pub fn minimal_local_generators(gens: &[Vector], ord: &TermOrder) -> Result<Vec<usize>> {
    if ord.is_global() {
        return Err(Error::GlobalOrder);
    }
    let mut keep: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Vector> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, &j)| gens[j].clone())
            .collect();
        if !others.is_empty() && module_membership(&gens[keep[i]], &others, ord)? {
            keep.remove(i);
        }
    }
    Ok(keep)
}

#[cfg(test)]
mod tests;
