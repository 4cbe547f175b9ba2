//! Normalized rational functions in `F_q(T)` and their text syntax.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::poly::Poly;
use crate::ring::{impl_ring_ops, CommRing};

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let f = den.field().clone();
            return RatFn { num, den: Poly::one(&f) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.lc();
        if lc != Fq::ONE {
            let inv = n.field().inv(lc).unwrap();
            n = n.scale(inv);
            d = d.scale(inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field());
        RatFn { num: p, den: one }
    }

    pub fn zero(field: &Arc<FqField>) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Arc<FqField>) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn t(field: &Arc<FqField>) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn constant(field: &Arc<FqField>, c: Fq) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<RatFn> {
        if e >= 0 {
            Ok(CommRing::pow(self, e as u64))
        } else {
            Ok(CommRing::pow(&self.inv()?, e.unsigned_abs()))
        }
    }

    /// Formal derivative `d/dT`.
    pub fn derivative(&self) -> RatFn {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalize(n, self.den.mul(&self.den))
    }

    pub fn scale(&self, c: Fq) -> RatFn {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    /// `y` with `y^p = self`, if one exists.
    pub fn is_pth_power(&self) -> Option<RatFn> {
        let n = self.num.pth_root()?;
        let d = self.den.pth_root()?;
        Some(Self::normalize(n, d))
    }

    /// Evaluates at a point of `F_q` that is not a pole.
    pub fn eval(&self, x: Fq) -> Option<Fq> {
        let d = self.den.eval(x);
        self.num.field().div(self.num.eval(x), d)
    }

    /// Degree `deg num - deg den` (the negative of the order at infinity).
    pub fn degree(&self) -> i64 {
        self.num.degree() - self.den.degree()
    }

    pub fn parse(field: &Arc<FqField>, s: &str) -> Result<RatFn> {
        Parser::new(field, s)?.parse_all()
    }

    pub fn to_text(&self) -> String {
        let n = self.num.to_string();
        if self.den.is_one() {
            return n;
        }
        let d = self.den.to_string();
        let wrap = |s: String, simple: bool| if simple { s } else { format!("({s})") };
        let nsimple = !n.contains('+');
        let dsimple = !d.contains('+') && !d.contains('*');
        format!("{}/{}", wrap(n, nsimple), wrap(d, dsimple))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl CommRing for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.field())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn from_fq(&self, c: Fq) -> Self {
        RatFn::constant(self.field(), c)
    }
    fn characteristic(&self) -> u32 {
        self.field().p()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn frobenius(&self) -> Self {
        RatFn { num: self.num.frob(), den: self.den.frob() }
    }
}

impl_ring_ops!(RatFn);

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    T,
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    field: &'a Arc<FqField>,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: &'a Arc<FqField>, s: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' => {}
                '0'..='9' => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: String = chars[start..=i].iter().collect();
                    let n = lit.parse().map_err(|_| Error::Parse(format!("bad integer {lit}")))?;
                    toks.push(Tok::Num(n));
                }
                'T' | 't' => toks.push(Tok::T),
                'z' => {
                    if field.m() == 1 {
                        return Err(Error::Parse("generator z is unavailable over a prime field".into()));
                    }
                    toks.push(Tok::Z)
                }
                '+' => toks.push(Tok::Plus),
                '-' => toks.push(Tok::Minus),
                '*' => toks.push(Tok::Star),
                '/' => toks.push(Tok::Slash),
                '^' => toks.push(Tok::Caret),
                '(' => toks.push(Tok::LParen),
                ')' => toks.push(Tok::RParen),
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
            }
            i += 1;
        }
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        Ok(Parser { field, toks, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse_all(mut self) -> Result<RatFn> {
        let v = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", self.pos)));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| Error::Parse("division by zero".into()))?;
                }
                // implicit multiplication, e.g. "2T" or "(T+1)(T-1)"
                Some(Tok::T) | Some(Tok::Z) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.next();
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Num(n)) => n as i64,
                _ => return Err(Error::Parse("exponent must be an integer".into())),
            };
            let e = if neg { -e } else { e };
            return base.powi(e).map_err(|_| Error::Parse("zero to a negative power".into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn> {
        let f = self.field;
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFn::constant(f, f.from_int((n % f.p() as u64) as i64))),
            Some(Tok::T) => Ok(RatFn::t(f)),
            Some(Tok::Z) => Ok(RatFn::constant(f, f.generator())),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(Tok::Minus) => Ok(self.power()?.neg()),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
