use std::fmt::Write as _;

use super::monomial::{Monomial, MAX_VARS};
use super::order::MonoOrder;
use super::polynomial::Poly;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Mode {
    /// The polynomial ring `P = gr_n(R)`.
    Graded,
    /// The power series ring `R = k[[x_1..x_n]]`, presented by polynomials.
    Local,
}

/// Variables, coefficient field and mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: Field,
    mode: Mode,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], field: Field, mode: Mode) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::Invalid("a ring needs at least one variable".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} variables")));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = !n.is_empty()
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && n.chars().next().unwrap().is_ascii_alphabetic();
            if !ok {
                return Err(Error::Invalid(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ring { names, field, mode })
    }

    /// `x1, ..., xn` over ℚ.
    pub fn indexed(n: usize, mode: Mode) -> Result<Ring> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Ring::new(&names, Field::Rational, mode)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Same variables and field with the other mode.
    pub fn with_mode(&self, mode: Mode) -> Ring {
        Ring { mode, ..self.clone() }
    }

    /// Ambient order: negative degrevlex locally, degrevlex in the graded ring.
    pub fn default_order(&self) -> MonoOrder {
        match self.mode {
            Mode::Local => MonoOrder::NegDegRevLex,
            Mode::Graded => MonoOrder::DegRevLex,
        }
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(i, self.field)
    }

    pub fn int(&self, v: i64) -> Scalar {
        self.field.int(v)
    }

    pub fn check(&self, f: &Poly) -> Result<()> {
        if f.support_vars() > self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "polynomial uses {} variables, ring has {}",
                f.support_vars(),
                self.nvars()
            )));
        }
        if let Some((_, c)) = f.terms().next() {
            if c.field() != self.field {
                return Err(Error::ContextMismatch("coefficient field differs".into()));
            }
        }
        Ok(())
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "exponent vector of length {} in a ring with {} variables",
                exps.len(),
                self.nvars()
            )));
        }
        Monomial::from_exps(exps)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = Parser {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(f)
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            let f = self.parse(piece).map_err(|e| e.shifted(offset))?;
            out.push(f);
            offset += piece.len() + 1;
        }
        Ok(out)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, name) in self.names.iter().enumerate() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    fn fmt_terms<'a>(&self, terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
        let mut s = String::new();
        for (mon, c) in terms {
            let coef = match c {
                Scalar::Fp { residue, .. } => residue.to_string(),
                _ => c.to_string(),
            };
            let (neg, abs) = match coef.strip_prefix('-') {
                Some(a) => (true, a.to_string()),
                None => (false, coef),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mon == "1" {
                s.push_str(&abs);
            } else if abs == "1" {
                s.push_str(&mon);
            } else {
                let _ = write!(s, "{abs}*{mon}");
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn fmt_poly(&self, f: &Poly) -> String {
        self.fmt_terms(f.terms().map(|(m, c)| (self.fmt_monomial(m), c)))
    }

    /// Module element as `[f_1, ..., f_rank]`.
    pub fn fmt_vector(&self, v: &Vector, rank: usize) -> String {
        let comps: Vec<String> = v
            .component_terms(rank)
            .into_iter()
            .map(|ts| self.fmt_poly(&Poly::from_terms(ts)))
            .collect();
        format!("[{}]", comps.join(", "))
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e, self.ring.field));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: num_bigint::BigInt = self.digits().parse().unwrap();
                let mut den = num_bigint::BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err("expected a denominator"));
                    }
                    den = d.parse().unwrap();
                }
                let f = self.ring.field;
                let c = f
                    .big(&num)
                    .div(&f.big(&den))
                    .map_err(|_| self.err("zero denominator"))?;
                Ok(Poly::constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.names.iter().position(|n| n == name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::new(&["x", "y", "z", "t"], Field::Rational, Mode::Local).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring();
        let f = r.parse("x^2*y - x*t^3 - z^6").unwrap();
        assert_eq!(r.fmt_poly(&f), "-z^6 - x*t^3 + x^2*y");
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.initial_form().unwrap(), r.parse("x^2 * y").unwrap());
        let g = r.parse("3/2*x - (y + 1)^2").unwrap();
        assert_eq!(r.fmt_poly(&g), "-y^2 + 3/2*x - 2*y - 1");
        assert_eq!(r.parse("  0 ").unwrap(), Poly::zero());
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert_eq!(
            r.parse("x + w"),
            Err(Error::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert!(matches!(r.parse("x + "), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x )"), Err(Error::Parse { pos: 2, .. })));
        assert!(Ring::new(&["x", "x"], Field::Rational, Mode::Local).is_err());
        assert!(Ring::new::<&str>(&[], Field::Rational, Mode::Local).is_err());
    }

    #[test]
    fn prime_field_parse() {
        let r = Ring::new(&["x"], Field::Prime(7), Mode::Graded).unwrap();
        let f = r.parse("10*x + 1/3").unwrap();
        assert_eq!(r.fmt_poly(&f), "3*x + 5");
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(ts in prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..2), -9i64..10, 1i64..4), 0..6)) {
            let r = ring();
            let f = Poly::from_terms(ts.into_iter().map(|((a, b, c, d), n, den)| {
                (Monomial::new(&[a, b, c, d]), Scalar::rational(n, den).unwrap())
            }));
            prop_assert_eq!(r.parse(&r.fmt_poly(&f)).unwrap(), f);
        }
    }
}
