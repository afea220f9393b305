use std::collections::HashMap;
use std::sync::OnceLock;

use super::monomial::Monomial;
use super::order::{MonoOrder, TermOrder};
use super::vector::{Term, Vector};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

fn canon() -> &'static TermOrder {
    static ORD: OnceLock<TermOrder> = OnceLock::new();
    ORD.get_or_init(|| TermOrder::ideal(MonoOrder::DegRevLex))
}

/// Sparse multivariate polynomial. Terms are kept in descending degrevlex
/// order regardless of the order an algorithm works with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    v: Vector,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { v: Vector::zero() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Poly {
        Poly {
            v: Vector::unit(0, m, c),
        }
    }

    pub fn var(i: usize, field: Field) -> Poly {
        Poly::term(Monomial::var(i), field.one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let terms = terms
            .into_iter()
            .map(|(mon, coef)| Term { comp: 0, mon, coef })
            .collect();
        Poly {
            v: Vector::from_terms(terms, canon()),
        }
    }

    /// Reads component 0 of a vector built under any order.
    pub fn from_vector(v: &Vector) -> Poly {
        Poly::from_terms(
            v.terms()
                .iter()
                .filter(|t| t.comp == 0)
                .map(|t| (t.mon, t.coef.clone())),
        )
    }

    pub fn to_vector(&self, comp: u32, ord: &TermOrder) -> Vector {
        Vector::from_terms(
            self.v
                .terms()
                .iter()
                .map(|t| Term {
                    comp,
                    mon: t.mon,
                    coef: t.coef.clone(),
                })
                .collect(),
            ord,
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.v.terms().iter().map(|t| (&t.mon, &t.coef))
    }

    pub fn num_terms(&self) -> usize {
        self.v.len()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly {
            v: self.v.add(&o.v, canon()),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        Poly {
            v: self.v.sub(&o.v, canon()),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { v: self.v.neg() }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly { v: self.v.scale(c) }
    }

    pub fn mul_mon(&self, m: &Monomial) -> Poly {
        Poly { v: self.v.mul_mon(m) }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for a in self.v.terms() {
            for b in o.v.terms() {
                let m = a.mon.mul(&b.mon);
                let c = a.coef.mul(&b.coef);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_terms(acc)
    }

    pub fn pow(&self, e: u32, field: Field) -> Poly {
        let mut acc = Poly::constant(field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Minimal total degree of a term; `None` stands for +∞ (zero polynomial).
    pub fn valuation(&self) -> Option<u32> {
        self.v.terms().iter().map(|t| t.mon.deg()).min()
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.v.terms().first().map(|t| t.mon.deg())
    }

    /// Sum of the terms of lowest degree.
    pub fn initial_form(&self) -> Result<Poly> {
        let v = self.valuation().ok_or(Error::ZeroInitialForm)?;
        Ok(self.homogeneous_part(v))
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            v: Vector::from_sorted(self.v.terms().iter().filter(|t| t.mon.deg() == d).cloned().collect()),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.valuation() == self.degree()
    }

    pub fn constant_term(&self) -> Option<&Scalar> {
        self.v.terms().last().filter(|t| t.mon.is_one()).map(|t| &t.coef)
    }

    pub fn is_monomial(&self) -> bool {
        self.v.len() == 1
    }

    /// Number of variables actually used (index of last variable + 1).
    pub fn support_vars(&self) -> usize {
        self.v
            .terms()
            .iter()
            .filter_map(|t| t.mon.max_var())
            .max()
            .map_or(0, |i| i + 1)
    }

    /// Substitute `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly], field: Field) -> Poly {
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for t in self.v.terms() {
            let mut acc = Poly::constant(t.coef.clone());
            for (i, img) in images.iter().enumerate() {
                let e = t.mon.exp(i);
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| img.pow(e, field)).clone();
                acc = acc.mul(&p);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Leading monomial under `ord`.
    pub fn lead_monomial(&self, ord: MonoOrder) -> Option<Monomial> {
        self.v.terms().iter().map(|t| t.mon).max_by(|a, b| ord.cmp(a, b))
    }

    pub fn monic(&self, ord: MonoOrder) -> Poly {
        match self.lead_monomial(ord) {
            None => Poly::zero(),
            Some(m) => {
                let c = self.terms().find(|(t, _)| **t == m).map(|(_, c)| c.clone()).unwrap();
                self.scale(&c.inv().unwrap())
            }
        }
    }
}

/// Weighted valuation of a module element: the least `deg + shift` of a term.
pub fn vector_valuation(v: &Vector, shifts: &[i64]) -> Option<i64> {
    v.terms()
        .iter()
        .map(|t| t.mon.deg() as i64 + shifts[t.comp as usize])
        .min()
}

/// Terms of least weighted degree.
pub fn vector_initial_form(v: &Vector, shifts: &[i64]) -> Result<Vector> {
    let val = vector_valuation(v, shifts).ok_or(Error::ZeroInitialForm)?;
    Ok(Vector::from_sorted(
        v.terms()
            .iter()
            .filter(|t| t.mon.deg() as i64 + shifts[t.comp as usize] == val)
            .cloned()
            .collect(),
    ))
}
