use std::fmt;

use crate::error::{Error, Result};

/// Largest number of ring variables supported.
pub const MAX_VARS: usize = 12;
/// Per-variable exponent cap.
pub const EXP_CAP: u32 = 1 << 15;

/// Exponent vector with cached total degree. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        exps: [0; MAX_VARS],
    };

    pub fn one() -> Monomial {
        Monomial::ONE
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            if e >= EXP_CAP {
                return Err(Error::ExponentOverflow(EXP_CAP));
            }
            m.exps[i] = e as u16;
            m.deg += e;
        }
        Ok(m)
    }

    /// Panicking constructor for literals in tests and fixtures.
    pub fn new(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps).expect("valid exponent vector")
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn raw(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; panics on exponent overflow (see [`Monomial::checked_mul`]).
    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        self.checked_mul(o).expect("exponent overflow")
    }

    pub fn checked_mul(&self, o: &Monomial) -> Result<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let e = m.exps[i] as u32 + o.exps[i] as u32;
            if e >= EXP_CAP {
                return Err(Error::ExponentOverflow(EXP_CAP));
            }
            m.exps[i] = e as u16;
        }
        m.deg += o.deg;
        Ok(m)
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the last variable with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0)
    }

    /// All monomials of total degree `d` in `n` variables, in descending lex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, i: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::new(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(n, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        let mut cur = vec![0; n];
        rec(n, 0, d, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..n.max(1)])
    }
}
