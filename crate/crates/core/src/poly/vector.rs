//! Sparse free-module elements, the working representation of the
//! standard-basis engine. Ideals are the rank-one case.

use std::cmp::Ordering;

use super::monomial::Monomial;
use super::order::TermOrder;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mon: Monomial,
    pub coef: Scalar,
}

/// Terms sorted strictly descending under the order they were built with.
/// The order itself is not stored; callers pass it to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<Term>, ord: &TermOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp(b.comp, &b.mon, a.comp, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mon == t.mon {
                    last.coef = last.coef.add(&t.coef);
                    if last.coef.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !t.coef.is_zero() {
                out.push(t);
            }
        }
        Vector { terms: out }
    }

    /// Trusts the caller that `terms` are sorted, distinct and nonzero.
    pub fn from_sorted(terms: Vec<Term>) -> Vector {
        Vector { terms }
    }

    pub fn unit(comp: u32, mon: Monomial, coef: Scalar) -> Vector {
        if coef.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: vec![Term { comp, mon, coef }],
        }
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn resort(&self, ord: &TermOrder) -> Vector {
        Vector::from_terms(self.terms.clone(), ord)
    }

    fn merge(a: &[Term], b: impl Iterator<Item = Term>, ord: &TermOrder) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + 4);
        let mut i = 0;
        let mut b = b.peekable();
        loop {
            match (a.get(i), b.peek()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.extend_from_slice(&a[i..]);
                    let _ = x;
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b);
                    break;
                }
                (Some(x), Some(y)) => match ord.cmp(x.comp, &x.mon, y.comp, &y.mon) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(b.next().unwrap());
                    }
                    Ordering::Equal => {
                        let y = b.next().unwrap();
                        let c = x.coef.add(&y.coef);
                        if !c.is_zero() {
                            out.push(Term {
                                comp: x.comp,
                                mon: x.mon,
                                coef: c,
                            });
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    pub fn add(&self, o: &Vector, ord: &TermOrder) -> Vector {
        Vector {
            terms: Vector::merge(&self.terms, o.terms.iter().cloned(), ord),
        }
    }

    pub fn sub(&self, o: &Vector, ord: &TermOrder) -> Vector {
        self.add(&o.neg(), ord)
    }

    /// `self - c * m * o`.
    pub fn sub_scaled(&self, c: &Scalar, m: &Monomial, o: &Vector, ord: &TermOrder) -> Vector {
        let neg = c.neg();
        let it = o.terms.iter().map(|t| Term {
            comp: t.comp,
            mon: t.mon.mul(m),
            coef: t.coef.mul(&neg),
        });
        Vector {
            terms: Vector::merge(&self.terms, it, ord),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mon: t.mon,
                    coef: t.coef.neg(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mon: t.mon,
                    coef: t.coef.mul(c),
                })
                .collect(),
        }
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_mon(&self, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mon: t.mon.mul(m),
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) if t.coef.is_one() => self.clone(),
            Some(t) => self.scale(&t.coef.inv().expect("nonzero lead")),
        }
    }

    pub fn max_weight(&self, ord: &TermOrder) -> Option<i64> {
        self.terms.iter().map(|t| ord.weight(t.comp, &t.mon)).max()
    }

    pub fn min_weight(&self, ord: &TermOrder) -> Option<i64> {
        self.terms.iter().map(|t| ord.weight(t.comp, &t.mon)).min()
    }

    /// Terms whose component lies in `lo..hi`, renumbered to start at 0.
    pub fn slice_components(&self, lo: u32, hi: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term {
                    comp: t.comp - lo,
                    mon: t.mon,
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// Renumber components by adding `offset`. Sorting is the caller's job.
    pub fn shift_components(&self, offset: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp + offset,
                    mon: t.mon,
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// Coordinates as one term list per component.
    pub fn component_terms(&self, rank: usize) -> Vec<Vec<(Monomial, Scalar)>> {
        let mut out = vec![Vec::new(); rank];
        for t in &self.terms {
            out[t.comp as usize].push((t.mon, t.coef.clone()));
        }
        out
    }

    pub fn is_homogeneous(&self, ord: &TermOrder) -> bool {
        self.max_weight(ord) == self.min_weight(ord)
    }
}
