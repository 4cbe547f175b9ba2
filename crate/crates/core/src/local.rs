//! Truncated Laurent series: the completion `k_v` at a degree-1 place or at
//! infinity, in the canonical uniformizer (`T - c`, or `u = 1/T`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::ring::{impl_ring_ops, CommRing};

/// Precision marker for series known exactly (finitely many nonzero terms).
pub const EXACT: i64 = i64::MAX / 8;

/// Relative precision used when inverting an exact non-monomial series.
pub const DEFAULT_INVERSE_PREC: i64 = 64;

fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// Series `sum_{i >= minval} c_i u^i + O(u^prec)`. Stored coefficients run
/// from `minval`; indices past the stored ones and below `prec` are zero.
#[derive(Clone)]
pub struct LaurentLocal {
    field: Arc<FqField>,
    place: Place,
    minval: i64,
    prec: i64,
    c: Vec<Fq>,
}

impl PartialEq for LaurentLocal {
    fn eq(&self, o: &Self) -> bool {
        self.place == o.place && self.prec == o.prec && self.minval == o.minval && self.c == o.c
    }
}

/// Rejects places that this model does not cover.
pub fn check_local_place(v: &Place) -> Result<()> {
    if v.degree() == 1 {
        Ok(())
    } else {
        Err(Error::UnsupportedPlace(format!("{v}: local expansions need a degree-1 place")))
    }
}

/// `n / d` as a power series to `len` terms; `d[0] != 0`.
fn series_div(field: &FqField, n: &[Fq], d: &[Fq], len: usize) -> Vec<Fq> {
    let inv = field.inv(d[0]).expect("unit constant term");
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut acc = n.get(i).copied().unwrap_or(Fq::ZERO);
        for j in 1..=i.min(d.len().saturating_sub(1)) {
            if !d[j].is_zero() {
                acc = field.sub(acc, field.mul(d[j], out[i - j]));
            }
        }
        out.push(field.mul(acc, inv));
    }
    out
}

impl LaurentLocal {
    pub fn new(field: &Arc<FqField>, place: &Place, minval: i64, prec: i64, c: Vec<Fq>) -> Self {
        let mut x = LaurentLocal { field: field.clone(), place: place.clone(), minval, prec, c };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.prec < EXACT {
            let keep = (self.prec - self.minval).max(0) as usize;
            self.c.truncate(keep);
        }
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead == self.c.len() {
            self.c.clear();
            self.minval = if self.prec < EXACT { self.prec } else { 0 };
        } else if lead > 0 {
            self.c.drain(..lead);
            self.minval += lead as i64;
        }
    }

    pub fn zero(field: &Arc<FqField>, place: &Place, prec: i64) -> Self {
        Self::new(field, place, prec, prec, Vec::new())
    }

    pub fn exact_zero(field: &Arc<FqField>, place: &Place) -> Self {
        Self::zero(field, place, EXACT)
    }

    /// Exact `c u^j`.
    pub fn monomial(field: &Arc<FqField>, place: &Place, c: Fq, j: i64) -> Self {
        Self::new(field, place, j, EXACT, vec![c])
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn minval(&self) -> i64 {
        self.minval
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.minval)
    }

    /// Valuation, or the precision when the series is zero to its precision.
    pub fn val_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Coefficient of `u^i`; `None` past the precision.
    pub fn coeff(&self, i: i64) -> Option<Fq> {
        if i >= self.prec {
            return None;
        }
        if i < self.minval {
            return Some(Fq::ZERO);
        }
        Some(self.c.get((i - self.minval) as usize).copied().unwrap_or(Fq::ZERO))
    }

    /// Indices with stored (possibly nonzero) coefficients.
    pub fn support_range(&self) -> std::ops::Range<i64> {
        self.minval..self.minval + self.c.len() as i64
    }

    pub fn with_prec(&self, n: i64) -> Self {
        Self::new(&self.field, &self.place, self.minval, self.prec.min(n), self.c.clone())
    }

    pub fn scale(&self, s: Fq) -> Self {
        let f = &self.field;
        Self::new(f, &self.place, self.minval, self.prec, self.c.iter().map(|&x| f.mul(x, s)).collect())
    }

    /// Multiplication by `u^j`.
    pub fn shift(&self, j: i64) -> Self {
        Self::new(&self.field, &self.place, self.minval + j, padd(self.prec, j), self.c.clone())
    }

    /// Laurent expansion of a global element, exact through index `prec - 1`.
    pub fn expand(x: &RatFn, v: &Place, prec: i64) -> Result<Self> {
        check_local_place(v)?;
        let f = x.field();
        if x.is_zero() {
            return Ok(Self::zero(f, v, prec));
        }
        let (n, d) = match v {
            Place::Finite(_) => {
                let c = v.linear_root().unwrap();
                (x.num().taylor_shift(c), x.den().taylor_shift(c))
            }
            Place::Infinity => (
                x.num().reverse(x.num().degree() as usize),
                x.den().reverse(x.den().degree() as usize),
            ),
        };
        let vn = n.coeffs().iter().take_while(|c| c.is_zero()).count();
        let vd = d.coeffs().iter().take_while(|c| c.is_zero()).count();
        let minval = match v {
            Place::Finite(_) => vn as i64 - vd as i64,
            Place::Infinity => x.den().degree() - x.num().degree() + vn as i64 - vd as i64,
        };
        if prec <= minval {
            return Ok(Self::zero(f, v, prec));
        }
        let len = (prec - minval) as usize;
        let coeffs = series_div(f, &n.coeffs()[vn..], &d.coeffs()[vd..], len);
        Ok(Self::new(f, v, minval, prec, coeffs))
    }

    /// Exact expansion of a polynomial in `T` at a degree-1 place (finite sum in `u`
    /// at finite places; at infinity, a polynomial `sum c_i T^i` is `sum c_i u^{-i}`).
    pub fn expand_poly_exact(x: &Poly, v: &Place) -> Result<Self> {
        check_local_place(v)?;
        let f = x.field();
        Ok(match v {
            Place::Finite(_) => {
                let c = v.linear_root().unwrap();
                Self::new(f, v, 0, EXACT, x.taylor_shift(c).coeffs().to_vec())
            }
            Place::Infinity => {
                let d = x.degree().max(0);
                Self::new(f, v, -d, EXACT, x.reverse(d as usize).coeffs().to_vec())
            }
        })
    }

    /// The finite sum of the known terms, as an element of `k`.
    pub fn to_ratfn(&self) -> RatFn {
        let f = &self.field;
        let u = self.place.uniformizer(f);
        let mut acc = RatFn::zero(f);
        for (k, &c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                let i = self.minval + k as i64;
                acc = acc.add(&u.powi(i).unwrap().scale(c));
            }
        }
        acc
    }

    /// At infinity: the polynomial part `sum_{n <= 0} c_n u^n` as a polynomial in `T`.
    pub fn polynomial_part(&self) -> Result<Poly> {
        if !self.place.is_infinity() {
            return Err(Error::InvalidPlace("polynomial part is taken at infinity".into()));
        }
        let f = &self.field;
        if self.minval > 0 || self.c.is_empty() {
            return Ok(Poly::zero(f));
        }
        let top = (-self.minval) as usize;
        let mut v = vec![Fq::ZERO; top + 1];
        for n in self.minval..=0 {
            if let Some(c) = self.coeff(n) {
                v[(-n) as usize] = c;
            }
        }
        Ok(Poly::new(f, v))
    }

    /// Part with indices `< n` (exact), and the remainder.
    pub fn split_at(&self, n: i64) -> (Self, Self) {
        let f = &self.field;
        let mut low = Vec::new();
        let mut high = Vec::new();
        for (k, &c) in self.c.iter().enumerate() {
            let i = self.minval + k as i64;
            if i < n {
                low.push(c);
            } else {
                high.push(c);
            }
        }
        let low_s = Self::new(f, &self.place, self.minval, EXACT, low);
        let hstart = self.minval.max(n);
        let high_s = Self::new(f, &self.place, hstart, self.prec, high);
        (low_s, high_s)
    }

    fn check_same(&self, o: &Self) {
        assert!(self.place == o.place, "series at different places: {} vs {}", self.place, o.place);
    }

    pub fn to_text(&self) -> String {
        let f = &self.field;
        let var = "u";
        let mut terms = Vec::new();
        for (k, &c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = f.elem_to_expr(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match k {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{k}"),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let tail = if self.is_exact() { String::new() } else { format!(" + O({var}^{})", self.prec) };
        format!("v={}; {var}^{}*({body}){tail}", self.place, self.minval)
    }
}

impl fmt::Debug for LaurentLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for LaurentLocal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl CommRing for LaurentLocal {
    fn zero_like(&self) -> Self {
        Self::exact_zero(&self.field, &self.place)
    }
    fn one_like(&self) -> Self {
        Self::monomial(&self.field, &self.place, Fq::ONE, 0)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let f = &self.field;
        let prec = self.prec.min(o.prec);
        if self.c.is_empty() {
            return o.with_prec(prec);
        }
        if o.c.is_empty() {
            return self.with_prec(prec);
        }
        let lo = self.minval.min(o.minval);
        let hi = (self.minval + self.c.len() as i64).max(o.minval + o.c.len() as i64).min(prec);
        let mut v = Vec::with_capacity((hi - lo).max(0) as usize);
        for i in lo..hi {
            let a = self.c.get((i - self.minval) as usize).filter(|_| i >= self.minval).copied().unwrap_or(Fq::ZERO);
            let b = o.c.get((i - o.minval) as usize).filter(|_| i >= o.minval).copied().unwrap_or(Fq::ZERO);
            v.push(f.add(a, b));
        }
        Self::new(f, &self.place, lo, prec, v)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, &self.place, self.minval, self.prec, self.c.iter().map(|&x| f.neg(x)).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        self.check_same(o);
        let f = &self.field;
        let va = self.val_or_prec();
        let vb = o.val_or_prec();
        let prec = padd(va, o.prec).min(padd(vb, self.prec));
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero(f, &self.place, prec);
        }
        let lo = self.minval + o.minval;
        let full = self.c.len() + o.c.len() - 1;
        let len = if prec >= EXACT { full } else { ((prec - lo).max(0) as usize).min(full) };
        let mut v = vec![Fq::ZERO; len];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Self::new(f, &self.place, lo, prec, v)
    }
    fn from_fq(&self, c: Fq) -> Self {
        Self::monomial(&self.field, &self.place, c, 0)
    }
    fn characteristic(&self) -> u32 {
        self.field.p()
    }
    fn try_inv(&self) -> Option<Self> {
        let v = self.valuation()?;
        let f = &self.field;
        if self.c.len() == 1 && self.is_exact() {
            return Some(Self::monomial(f, &self.place, f.inv(self.c[0]).unwrap(), -v));
        }
        let rel = if self.is_exact() { DEFAULT_INVERSE_PREC } else { self.prec - v };
        let one = [Fq::ONE];
        let inv = series_div(f, &one, &self.c, rel as usize);
        Some(Self::new(f, &self.place, -v, -v + rel, inv))
    }
    fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.p() as i64;
        if self.c.is_empty() {
            let prec = if self.prec >= EXACT { EXACT } else { self.prec * p };
            return Self::zero(f, &self.place, prec);
        }
        let mut v = vec![Fq::ZERO; (self.c.len() - 1) * p as usize + 1];
        for (k, &c) in self.c.iter().enumerate() {
            v[k * p as usize] = f.frob(c);
        }
        let prec = if self.prec >= EXACT { EXACT } else { self.prec * p };
        Self::new(f, &self.place, self.minval * p, prec, v)
    }
}

impl_ring_ops!(LaurentLocal);
