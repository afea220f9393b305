//! Shared completion loop for Gröbner bases (global orders) and Mora
//! standard bases (local and mixed orders) of submodules of free modules.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::poly::{Monomial, TermOrder, Vector};

#[derive(Clone, Debug)]
pub struct Options {
    /// Hard cap on single reduction steps across the whole computation.
    pub max_reductions: u64,
    /// Fully tail-reduce the final basis (global orders only).
    pub reduce_tails: bool,
}

pub const DEFAULT_REDUCTION_CAP: u64 = 1_000_000;

static REDUCTION_CAP: AtomicU64 = AtomicU64::new(DEFAULT_REDUCTION_CAP);

/// Process-wide reduction cap picked up by `Options::default`.
pub fn set_reduction_cap(cap: u64) {
    REDUCTION_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub fn reduction_cap() -> u64 {
    REDUCTION_CAP.load(AtomicOrdering::Relaxed)
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_reductions: reduction_cap(),
            reduce_tails: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub spairs: u64,
    pub reductions: u64,
    pub zero_reductions: u64,
}

#[derive(Clone, Debug)]
pub struct Basis {
    /// Minimal (no lead divides another), monic basis.
    pub elems: Vec<Vector>,
    /// Indices of inputs whose normal form was nonzero when processed. For
    /// homogeneous input under a degree-compatible global order these are a
    /// minimal generating set.
    pub minimal_inputs: Vec<usize>,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    weight: i64,
}

pub(crate) fn ecart(v: &Vector, ord: &TermOrder) -> i64 {
    match v.lead() {
        None => 0,
        Some(t) => v.max_weight(ord).unwrap() - ord.weight(t.comp, &t.mon),
    }
}

fn s_vector(f: &Vector, g: &Vector, lcm: &Monomial, ord: &TermOrder) -> Vector {
    let (lf, lg) = (f.lead().unwrap(), g.lead().unwrap());
    let mf = lf.mon.quotient_of(lcm);
    let mg = lg.mon.quotient_of(lcm);
    let a = f.mul_mon(&mf).scale(&lg.coef);
    let c = lf.coef.clone();
    a.sub_scaled(&c, &mg, g, ord)
}

/// Cancel the lead of `h` against `g` (whose lead divides it).
#[inline]
fn reduce_step(h: &Vector, g: &Vector, ord: &TermOrder) -> Vector {
    let (lh, lg) = (h.lead().unwrap(), g.lead().unwrap());
    let m = lg.mon.quotient_of(&lh.mon);
    let c = lh.coef.div(&lg.coef).expect("nonzero lead");
    h.sub_scaled(&c, &m, g, ord)
}

pub(crate) struct Counter {
    pub used: u64,
    pub cap: u64,
}

impl Counter {
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::CapExceeded(format!("more than {} reduction steps", self.cap)));
        }
        Ok(())
    }
}

/// Top-reduction for global orders.
pub(crate) fn top_reduce(mut h: Vector, basis: &[Vector], ord: &TermOrder, counter: &mut Counter) -> Result<Vector> {
    'outer: while let Some(lh) = h.lead() {
        for g in basis {
            let lg = g.lead().unwrap();
            if lg.comp == lh.comp && lg.mon.divides(&lh.mon) {
                counter.tick()?;
                h = reduce_step(&h, g, ord);
                continue 'outer;
            }
        }
        break;
    }
    Ok(h)
}

/// Full reduction (every term) for global orders.
pub(crate) fn full_reduce(h: Vector, basis: &[Vector], ord: &TermOrder, counter: &mut Counter) -> Result<Vector> {
    let mut h = top_reduce(h, basis, ord, counter)?;
    let mut done = Vec::new();
    while let Some(lt) = h.lead().cloned() {
        done.push(lt.clone());
        let rest = Vector::from_sorted(h.terms()[1..].to_vec());
        h = top_reduce(rest, basis, ord, counter)?;
    }
    Ok(Vector::from_sorted(done))
}

/// Mora's weak normal form with ecart-minimal reducer selection. Returns
/// `r` with `u*h = Σ a_i g_i + r` for a unit `u`.
pub(crate) fn mora_reduce(
    mut h: Vector,
    basis: &[Vector],
    ecarts: &[i64],
    ord: &TermOrder,
    counter: &mut Counter,
) -> Result<Vector> {
    let mut extra: Vec<(Vector, i64)> = Vec::new();
    loop {
        let Some(lh) = h.lead() else {
            return Ok(h);
        };
        let (c, mon) = (lh.comp, lh.mon);
        let mut best: Option<(i64, usize, bool)> = None;
        for (k, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            if lg.comp == c && lg.mon.divides(&mon) && best.is_none_or(|b| ecarts[k] < b.0) {
                best = Some((ecarts[k], k, false));
                if ecarts[k] == 0 {
                    break;
                }
            }
        }
        if best.is_none_or(|b| b.0 > 0) {
            for (k, (g, e)) in extra.iter().enumerate() {
                let lg = g.lead().unwrap();
                if lg.comp == c && lg.mon.divides(&mon) && best.is_none_or(|b| *e < b.0) {
                    best = Some((*e, k, true));
                }
            }
        }
        let Some((e, k, from_extra)) = best else {
            return Ok(h);
        };
        counter.tick()?;
        let eh = ecart(&h, ord);
        let g = if from_extra {
            extra[k].0.clone()
        } else {
            basis[k].clone()
        };
        if e > eh {
            extra.push((h.clone(), eh));
        }
        h = reduce_step(&h, &g, ord);
    }
}

struct State<'a> {
    ord: &'a TermOrder,
    elems: Vec<Vector>,
    ecarts: Vec<i64>,
    /// false once another element's lead divides this one's
    active: Vec<bool>,
    pairs: Vec<Pair>,
    ideal_case: bool,
}

impl State<'_> {
    fn lead(&self, i: usize) -> (u32, Monomial) {
        let t = self.elems[i].lead().unwrap();
        (t.comp, t.mon)
    }

    /// Gebauer–Möller update for a newly inserted element.
    fn insert(&mut self, h: Vector) {
        let k = self.elems.len();
        let (hc, hm) = (h.lead().unwrap().comp, h.lead().unwrap().mon);
        self.ecarts.push(ecart(&h, self.ord));
        self.elems.push(h);
        self.active.push(true);

        let mut new: Vec<(Pair, bool)> = Vec::new();
        for i in 0..k {
            if !self.active[i] {
                continue;
            }
            let (c, m) = self.lead(i);
            if c != hc {
                continue;
            }
            let lcm = m.lcm(&hm);
            let coprime = self.ideal_case && m.is_coprime(&hm);
            new.push((
                Pair {
                    i,
                    j: k,
                    lcm,
                    comp: c,
                    weight: self.ord.weight(c, &lcm),
                },
                coprime,
            ));
        }
        // M: drop a new pair whose lcm is properly divisible by another new lcm
        let lcms: Vec<Monomial> = new.iter().map(|(p, _)| p.lcm).collect();
        new.retain(|(p, _)| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // F: one pair per lcm; if any of them is coprime, drop them all
        let mut kept: Vec<Pair> = Vec::new();
        let mut seen: Vec<(Monomial, bool)> = Vec::new();
        for (p, cop) in &new {
            if let Some(s) = seen.iter_mut().find(|(l, _)| *l == p.lcm) {
                s.1 |= *cop;
            } else {
                seen.push((p.lcm, *cop));
            }
        }
        for (p, _) in new {
            let entry = seen.iter_mut().find(|(l, _)| *l == p.lcm).unwrap();
            if entry.1 {
                continue;
            }
            // mark lcm consumed so duplicates are skipped
            entry.1 = true;
            kept.push(p);
        }
        // B: old pairs whose lcm is strictly divisible by the new lead
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.comp != hc || !hm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lead().unwrap().mon.lcm(&hm);
            let lj = elems[p.j].lead().unwrap().mon.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        for i in 0..k {
            if self.active[i] {
                let (c, m) = self.lead(i);
                if c == hc && hm.divides(&m) {
                    self.active[i] = false;
                }
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let idx = (0..self.pairs.len()).min_by(|&a, &b| pair_key(&self.pairs[a], &self.pairs[b]))?;
        Some(self.pairs.swap_remove(idx))
    }

    fn peek_weight(&self) -> Option<i64> {
        self.pairs.iter().map(|p| p.weight).min()
    }
}

fn pair_key(a: &Pair, b: &Pair) -> Ordering {
    a.weight.cmp(&b.weight).then(a.j.cmp(&b.j)).then(a.i.cmp(&b.i))
}

/// Complete `gens` to a Gröbner basis (global order) or a standard basis
/// (local or mixed order, via Mora's normal form). Pairs and inputs are
/// processed by ascending weight; at equal weight pairs come first.
pub fn complete(gens: &[Vector], ord: &TermOrder, opts: &Options) -> Result<Basis> {
    let global = ord.is_global();
    let mut counter = Counter {
        used: 0,
        cap: opts.max_reductions,
    };
    let mut st = State {
        ord,
        elems: Vec::new(),
        ecarts: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        ideal_case: ord.rank() == 1,
    };
    let mut stats = Stats::default();
    let input_weight = |v: &Vector| -> i64 {
        let t = v.lead().unwrap();
        ord.weight(t.comp, &t.mon)
    };
    let mut inputs: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    inputs.sort_by_key(|&i| (input_weight(&gens[i]), i));
    let mut next_input = 0;
    let mut minimal_inputs = Vec::new();

    loop {
        let take_pair = match (st.peek_weight(), inputs.get(next_input)) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(w), Some(&i)) => w <= input_weight(&gens[i]),
        };
        let (h, from_input) = if take_pair {
            let p = st.pop_pair().unwrap();
            stats.spairs += 1;
            (s_vector(&st.elems[p.i], &st.elems[p.j], &p.lcm, ord), None)
        } else {
            let i = inputs[next_input];
            next_input += 1;
            (gens[i].clone(), Some(i))
        };
        let r = if global {
            top_reduce(h, &st.elems, ord, &mut counter)?
        } else {
            mora_reduce(h, &st.elems, &st.ecarts, ord, &mut counter)?
        };
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if let Some(i) = from_input {
            minimal_inputs.push(i);
        }
        st.insert(r.monic());
    }

    // minimal basis: drop elements whose lead is divisible by another's
    let n = st.elems.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let (ci, mi) = st.lead(i);
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, mj) = st.lead(j);
            if ci == cj && mj.divides(&mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut elems: Vec<Vector> = st
        .elems
        .into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect();
    if global && opts.reduce_tails {
        for i in 0..elems.len() {
            let others: Vec<Vector> = elems
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| e.clone())
                .collect();
            let lead = Vector::from_sorted(vec![elems[i].lead().unwrap().clone()]);
            let tail = Vector::from_sorted(elems[i].terms()[1..].to_vec());
            let tail = full_reduce(tail, &others, ord, &mut counter)?;
            elems[i] = lead.add(&tail, ord).monic();
        }
    }
    elems.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp(x.comp, &x.mon, y.comp, &y.mon)
    });
    stats.reductions = counter.used;
    minimal_inputs.sort_unstable();
    Ok(Basis {
        elems,
        minimal_inputs,
        stats,
    })
}

/// Normal form of `h` with respect to a finished basis.
pub fn normal_form(h: &Vector, basis: &[Vector], ord: &TermOrder, full: bool) -> Result<Vector> {
    let mut counter = Counter {
        used: 0,
        cap: Options::default().max_reductions,
    };
    let h = h.resort(ord);
    if ord.is_global() {
        if full {
            full_reduce(h, basis, ord, &mut counter)
        } else {
            top_reduce(h, basis, ord, &mut counter)
        }
    } else {
        let ecarts: Vec<i64> = basis.iter().map(|g| ecart(g, ord)).collect();
        mora_reduce(h, basis, &ecarts, ord, &mut counter)
    }
}

/// S-vector of two basis elements with leads in the same component.
pub fn s_vector_of(f: &Vector, g: &Vector, ord: &TermOrder) -> Option<Vector> {
    let (lf, lg) = (f.lead()?, g.lead()?);
    if lf.comp != lg.comp {
        return None;
    }
    Some(s_vector(f, g, &lf.mon.lcm(&lg.mon), ord))
}
