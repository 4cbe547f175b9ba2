//! Dense univariate polynomials over `F_q`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::field::{Fq, FqField};
use crate::ring::{impl_ring_ops, CommRing};

/// Polynomial with coefficients low to high; no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Arc<FqField>,
    c: Vec<Fq>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl Poly {
    pub fn new(field: &Arc<FqField>, mut c: Vec<Fq>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }

    pub fn zero(field: &Arc<FqField>) -> Self {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Arc<FqField>) -> Self {
        Self::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Arc<FqField>, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable `T`.
    pub fn t(field: &Arc<FqField>) -> Self {
        Self::monomial(field, Fq::ONE, 1)
    }

    pub fn monomial(field: &Arc<FqField>, c: Fq, d: usize) -> Self {
        let mut v = vec![Fq::ZERO; d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    /// `T - c`.
    pub fn linear(field: &Arc<FqField>, c: Fq) -> Self {
        Self::new(field, vec![field.neg(c), Fq::ONE])
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> Fq {
        self.c.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fq::ONE
    }

    pub fn scale(&self, s: Fq) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly::new(f, self.c.iter().map(|&x| f.mul(x, s)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; n];
        v.extend_from_slice(&self.c);
        Poly { field: self.field.clone(), c: v }
    }

    /// Truncation modulo `T^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(&self.field, self.c.iter().take(n).copied().collect())
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        if self.c.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = f.inv(d.lc()).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![Fq::ZERO; self.c.len() - dd];
        for i in (0..q.len()).rev() {
            let top = r[i + dd];
            if top.is_zero() {
                continue;
            }
            let coef = f.mul(top, inv);
            q[i] = coef;
            for (j, &dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] = f.sub(r[i + j], f.mul(coef, dj));
                }
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.lc()) {
            Some(i) => (r0.scale(i), s0.scale(i), t0.scale(i)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Big exponent `e = base^k` style powers done by repeated exponentiation.
    pub fn pow_mod_pow(&self, base_exp: u64, times: u32, m: &Poly) -> Poly {
        (0..times).fold(self.rem(m), |x, _| x.pow_mod(base_exp, m))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| f.mul(x, f.from_int(i as i64)))
            .collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.c.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(&self.field, c));
        }
        acc
    }

    /// `self(T + c)`.
    pub fn taylor_shift(&self, c: Fq) -> Poly {
        let g = Poly::new(&self.field, vec![c, Fq::ONE]);
        self.compose(&g)
    }

    /// Reversed polynomial `T^n self(1/T)` for `n >= deg`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut v = vec![Fq::ZERO; n + 1];
        for (i, &x) in self.c.iter().enumerate() {
            v[n - i] = x;
        }
        Poly::new(&self.field, v)
    }

    /// `x -> x^p` on coefficients and exponents.
    pub fn frob(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; (self.c.len() - 1) * p + 1];
        for (i, &x) in self.c.iter().enumerate() {
            v[i * p] = f.frob(x);
        }
        Poly { field: f.clone(), c: v }
    }

    /// `y` with `y^p = self`, if it exists.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        if self.c.iter().enumerate().any(|(i, x)| i % p != 0 && !x.is_zero()) {
            return None;
        }
        let v = self.c.iter().step_by(p).map(|&x| f.pth_root(x)).collect();
        Some(Poly::new(f, v))
    }

    /// Multiplicity of the (nonconstant) polynomial `pi` in `self != 0`.
    pub fn multiplicity(&self, pi: &Poly) -> u32 {
        assert!(!self.is_zero());
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(pi) {
            cur = q;
            n += 1;
        }
        n
    }

    /// Ben-Or irreducibility over `F_q`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.deg() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let q = self.field.q() as u64;
        let t = Poly::t(&self.field);
        let mut tq = t.clone();
        for _ in 1..=d / 2 {
            tq = tq.pow_mod(q, &f);
            if !f.gcd(&tq.sub(&t)).is_one() {
                return false;
            }
        }
        true
    }

    /// All monic polynomials of degree `d`, in enumeration order.
    pub fn monics_of_degree(field: &Arc<FqField>, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut n| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push(Fq((n % q) as u32));
                n /= q;
            }
            v.push(Fq::ONE);
            Poly::new(field, v)
        })
    }

    /// All polynomials of degree `< d` (including zero).
    pub fn all_below_degree(field: &Arc<FqField>, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut n| {
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(Fq((n % q) as u32));
                n /= q;
            }
            Poly::new(field, v)
        })
    }

    /// Renders in the variable `var`.
    pub fn to_string_var(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.elem_to_expr(c);
            let compound = cs.contains('+');
            let coef = if compound { format!("({cs})") } else { cs.clone() };
            let term = match i {
                0 => coef,
                _ => {
                    let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if c == Fq::ONE {
                        mon
                    } else {
                        format!("{coef}*{mon}")
                    }
                }
            };
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("T"))
    }
}

impl CommRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Poly::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut v = long.c.clone();
        for (i, &x) in short.c.iter().enumerate() {
            v[i] = f.add(v[i], x);
        }
        Poly::new(f, v)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        let f = &self.field;
        Poly { field: f.clone(), c: self.c.iter().map(|&x| f.neg(x)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![Fq::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = f.add(v[i + j], f.mul(x, y));
                }
            }
        }
        Poly::new(f, v)
    }
    fn from_fq(&self, c: Fq) -> Self {
        Poly::constant(&self.field, c)
    }
    fn characteristic(&self) -> u32 {
        self.field.p()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.c.len() == 1 {
            self.field.inv(self.c[0]).map(|i| Poly::constant(&self.field, i))
        } else {
            None
        }
    }
    fn frobenius(&self) -> Self {
        self.frob()
    }
}

impl_ring_ops!(Poly);

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<FqField> {
        FqField::new(3, 2).unwrap()
    }

    fn p(f: &Arc<FqField>, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f9();
        let a = p(&f, &[1, 2, 0, 1, 1]);
        let b = p(&f, &[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn xgcd_bezout() {
        let f = f9();
        let a = p(&f, &[1, 0, 1, 2]);
        let b = p(&f, &[2, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_monic());
    }

    #[test]
    fn frobenius_matches_pow() {
        let f = f9();
        let z = f.generator();
        let a = Poly::new(&f, vec![z, Fq::ONE, f.from_int(2)]);
        assert_eq!(a.frob(), CommRing::pow(&a, 3));
        assert_eq!(a.frob().pth_root().unwrap(), a);
        assert!(a.pth_root().is_none());
    }

    #[test]
    fn irreducibility() {
        let f = FqField::new(2, 1).unwrap();
        assert!(p(&f, &[1, 1, 1]).is_irreducible());
        assert!(!p(&f, &[1, 0, 1]).is_irreducible());
        let count = Poly::monics_of_degree(&f, 4).filter(|x| x.is_irreducible()).count();
        assert_eq!(count, 3);
        let f9 = f9();
        // (9^2 - 9)/2 = 36 monic irreducible quadratics over F_9
        assert_eq!(Poly::monics_of_degree(&f9, 2).filter(|x| x.is_irreducible()).count(), 36);
    }

    #[test]
    fn taylor_shift_and_compose() {
        let f = f9();
        let a = p(&f, &[1, 2, 1]); // (T+1)^2
        let shifted = a.taylor_shift(f.from_int(-1));
        assert_eq!(shifted, p(&f, &[0, 0, 1]));
    }
}
