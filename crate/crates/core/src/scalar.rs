//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! Rationals keep a machine-word fast path and fall back to big integers when
//! an intermediate result no longer fits. Both representations are always
//! reduced with a positive denominator, so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NonPrimeModulus { modulus: p });
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::Small(v, 1)),
            Field::Prime(p) => Scalar::Fp {
                residue: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn big(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_big(v.clone(), BigInt::one())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp {
                    residue: r.to_u32().unwrap(),
                    modulus: p,
                }
            }
        }
    }

    /// Reinterpret a rational in this field. Fails when the denominator is
    /// not invertible modulo p.
    pub fn coerce(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (Field::Rational, Scalar::Q(_)) => Ok(s.clone()),
            (Field::Prime(p), Scalar::Fp { modulus, .. }) if *modulus == p => Ok(s.clone()),
            (Field::Prime(_), Scalar::Q(q)) => {
                let (n, d) = q.to_big();
                self.big(&n).div(&self.big(&d))
            }
            _ => Err(Error::ContextMismatch(format!("scalar {s} does not live in {self:?}"))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduced rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    /// numerator, denominator > 0, gcd = 1
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rational::Small(0, 1);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational::Small(a, b),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(n: BigInt, d: BigInt) -> Rational {
        Rational::from_ratio(BigRational::new(n, d))
    }

    fn from_ratio(r: BigRational) -> Rational {
        if let (Some(a), Some(b)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if a != i64::MIN {
                return Rational::Small(a, b);
            }
        }
        Rational::Big(r)
    }

    fn to_ratio(&self) -> BigRational {
        match self {
            Rational::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn to_big(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(a, b) => (BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if b == d {
                return Rational::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(z)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(s) = x.checked_add(y) {
                    return Rational::from_i128(s, z);
                }
            }
        }
        Rational::from_ratio(self.to_ratio() + o.to_ratio())
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(a, b) => Rational::Small(-a, *b),
            Rational::Big(r) => Rational::Big(-r),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            return Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Rational::from_ratio(self.to_ratio() * o.to_ratio())
    }

    fn inv(&self) -> Rational {
        match self {
            Rational::Small(a, b) => Rational::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Rational::from_ratio(r.recip()),
        }
    }

    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    fn signum(&self) -> i32 {
        match self {
            Rational::Small(a, _) => a.signum() as i32,
            Rational::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_ratio().cmp(&other.to_ratio()),
        }
    }
}

/// A field element. Values of different fields never mix; doing so is a
/// programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { residue: u32, modulus: u32 },
}

impl Scalar {
    /// Build the reduced rational `num/den`.
    pub fn rational(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::Q(Rational::from_i128(num as i128, den as i128)))
    }

    pub fn rational_big(num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar::Q(Rational::from_big(num, den)))
    }

    pub fn modular(residue: i64, modulus: u32) -> Result<Scalar> {
        Ok(Field::prime(modulus as u64)?.int(residue))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { residue, .. } => *residue == 1,
        }
    }

    /// Numerator and denominator of a rational; `None` for residues.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Q(q) => Some(q.to_big()),
            Scalar::Fp { .. } => None,
        }
    }

    /// Sign of a rational; nonzero residues report 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Q(q) => q.signum(),
            Scalar::Fp { residue, .. } => (*residue != 0) as i32,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, modulus: q }) if p == q => Scalar::Fp {
                residue: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => panic!("mixed fields: {self} + {o}"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { residue, modulus } => Scalar::Fp {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, modulus: q }) if p == q => Scalar::Fp {
                residue: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => panic!("mixed fields: {self} * {o}"),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::Fp { residue, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *residue as u64;
                let mut e = p - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Scalar::Fp {
                    residue: acc as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(Rational::Small(a, 1)) => write!(f, "{a}"),
            Scalar::Q(Rational::Small(a, b)) => write!(f, "{a}/{b}"),
            Scalar::Q(Rational::Big(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg}: `{s}`"),
        };
        let s = s.trim();
        if let Some((r, p)) = s.split_once(" mod ") {
            let r: i64 = r.trim().parse().map_err(|_| bad("bad residue"))?;
            let p: u64 = p.trim().parse().map_err(|_| bad("bad modulus"))?;
            let field = Field::prime(p)?;
            if r < 0 || r >= p as i64 {
                return Err(bad("residue out of range"));
            }
            return Ok(field.int(r));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
        Scalar::rational_big(n, d)
    }
}
