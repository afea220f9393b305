//! Monomial orders and module term orders.
//!
//! A module term is a pair (component, monomial). Its weight is the total
//! degree plus the shift of its component, matching the shifted valuation of
//! a free module `⊕ R(-ν_i)`.

use std::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonoOrder {
    Lex,
    DegRevLex,
    /// Local: lower total degree is larger, ties broken by reverse lex.
    NegDegRevLex,
    /// Local: lower total degree is larger, ties broken by lex.
    NegDegLex,
    /// Elimination order: degrevlex on the first `k` variables, then
    /// degrevlex on the rest.
    Product(usize),
    /// Global order on `k[x, t]` with `t` the variable of the given index:
    /// total degree first, then a larger power of `t`, then reverse lex on
    /// the rest. Homogenizing with `t` turns `NegDegRevLex` into this.
    HomNegDegRevLex(usize),
    /// The same with a lex tiebreak, matching `NegDegLex`.
    HomNegDegLex(usize),
}

impl MonoOrder {
    /// Global orders have 1 as the smallest monomial.
    pub fn is_global(self) -> bool {
        !matches!(self, MonoOrder::NegDegRevLex | MonoOrder::NegDegLex)
    }

    fn is_weighted(self) -> bool {
        !matches!(self, MonoOrder::Lex | MonoOrder::Product(_))
    }

    /// Homogenized counterpart of a local degree order, with `t` at index `t`.
    pub fn homogenized(self, t: usize) -> Option<MonoOrder> {
        match self {
            MonoOrder::NegDegRevLex => Some(MonoOrder::HomNegDegRevLex(t)),
            MonoOrder::NegDegLex => Some(MonoOrder::HomNegDegLex(t)),
            _ => None,
        }
    }

    /// Comparison of two monomials of equal weight.
    fn tiebreak(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonoOrder::NegDegLex => lex(a, b, 0, MAX_VARS),
            MonoOrder::HomNegDegRevLex(t) => a.exp(t).cmp(&b.exp(t)).then_with(|| revlex(a, b, 0, t)),
            MonoOrder::HomNegDegLex(t) => a.exp(t).cmp(&b.exp(t)).then_with(|| lex(a, b, 0, t)),
            _ => revlex(a, b, 0, MAX_VARS),
        }
    }

    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonoOrder::Lex => lex(a, b, 0, MAX_VARS),
            MonoOrder::DegRevLex => a.deg().cmp(&b.deg()).then_with(|| revlex(a, b, 0, MAX_VARS)),
            MonoOrder::NegDegRevLex | MonoOrder::NegDegLex => b.deg().cmp(&a.deg()).then_with(|| self.tiebreak(a, b)),
            MonoOrder::HomNegDegRevLex(_) | MonoOrder::HomNegDegLex(_) => {
                a.deg().cmp(&b.deg()).then_with(|| self.tiebreak(a, b))
            }
            MonoOrder::Product(k) => block_degrevlex(a, b, 0, k).then_with(|| block_degrevlex(a, b, k, MAX_VARS)),
        }
    }
}

fn lex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (x, y) = (a.raw(), b.raw());
    for i in lo..hi {
        match x[i].cmp(&y[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Reverse lex tiebreak: the monomial with the smaller exponent in the last
/// differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (x, y) = (a.raw(), b.raw());
    for i in (lo..hi).rev() {
        match x[i].cmp(&y[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn block_degrevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let hi = hi.min(MAX_VARS);
    let da: u32 = a.raw()[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = b.raw()[lo..hi].iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex(a, b, lo, hi))
}

/// Order on module terms. Components are grouped into blocks; any term in a
/// lower-numbered block beats every term in a higher-numbered block. Inside
/// a block, weighted orders compare `deg + shift` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub mono: MonoOrder,
    pub shifts: Vec<i64>,
    pub blocks: Vec<u32>,
}

impl TermOrder {
    /// Rank-one order for ideals.
    pub fn ideal(mono: MonoOrder) -> TermOrder {
        TermOrder {
            mono,
            shifts: vec![0],
            blocks: vec![0],
        }
    }

    /// Single-block module order with the given component shifts.
    pub fn module(mono: MonoOrder, shifts: Vec<i64>) -> TermOrder {
        let blocks = vec![0; shifts.len()];
        TermOrder { mono, shifts, blocks }
    }

    /// Two-block elimination order on `F ⊕ G`: terms of `F` dominate.
    pub fn elimination(mono: MonoOrder, first: &[i64], second: &[i64]) -> TermOrder {
        let mut shifts = first.to_vec();
        shifts.extend_from_slice(second);
        let mut blocks = vec![0; first.len()];
        blocks.extend(std::iter::repeat_n(1, second.len()));
        TermOrder { mono, shifts, blocks }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_global(&self) -> bool {
        self.mono.is_global()
    }

    #[inline]
    pub fn weight(&self, comp: u32, m: &Monomial) -> i64 {
        m.deg() as i64 + self.shifts[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, c1: u32, m1: &Monomial, c2: u32, m2: &Monomial) -> Ordering {
        let (b1, b2) = (self.blocks[c1 as usize], self.blocks[c2 as usize]);
        if b1 != b2 {
            return b2.cmp(&b1);
        }
        let o = if self.mono.is_weighted() {
            let (w1, w2) = (self.weight(c1, m1), self.weight(c2, m2));
            let by_weight = if self.mono.is_global() {
                w1.cmp(&w2)
            } else {
                w2.cmp(&w1)
            };
            by_weight.then_with(|| self.mono.tiebreak(m1, m2))
        } else {
            self.mono.cmp(m1, m2)
        };
        o.then_with(|| c2.cmp(&c1))
    }
}
