//! Quotient algebras `R[Z]/(m(Z))` for monic `m`, and étale algebras
//! (separable `m`) used in place of points over a separable closure.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::ring::CommRing;

/// Element of `R[Z]/(m)`, stored as `deg m` coefficients low to high.
#[derive(Clone)]
pub struct Quotient<R: CommRing> {
    modulus: Arc<Vec<R>>,
    c: Vec<R>,
}

/// A monic modulus shared by all elements of one algebra.
pub type Modulus<R> = Arc<Vec<R>>;

impl<R: CommRing> PartialEq for Quotient<R> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<R: CommRing> fmt::Debug for Quotient<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x:?}")?;
        }
        write!(f, "]")
    }
}

/// Checks monicity; returns the shared modulus.
pub fn quotient_modulus<R: CommRing>(m: Vec<R>) -> Result<Modulus<R>> {
    let Some(top) = m.last() else {
        return Err(Error::PreconditionViolated("empty modulus".into()));
    };
    if m.len() < 2 {
        return Err(Error::PreconditionViolated("modulus must have positive degree".into()));
    }
    if *top != top.one_like() {
        return Err(Error::PreconditionViolated("modulus must be monic".into()));
    }
    Ok(Arc::new(m))
}

/// As [`quotient_modulus`], additionally requiring `gcd(m, m') = 1`.
///
/// The gcd runs Euclid over `R`; if a needed inverse does not exist in `R`,
/// separability cannot be decided this way and `NotSeparable` is not raised
/// unless a nontrivial common factor was actually found.
pub fn etale_modulus<R: CommRing>(m: Vec<R>) -> Result<Modulus<R>> {
    let m = quotient_modulus(m)?;
    let dm = poly_derivative(&m);
    match poly_gcd_degree(&m, &dm) {
        Some(0) => Ok(m),
        Some(_) => Err(Error::NotSeparable),
        None => Err(Error::PreconditionViolated("separability undecidable over this base".into())),
    }
}

fn trim<R: CommRing>(v: &mut Vec<R>) {
    while v.last().map_or(false, |x| x.is_zero()) {
        v.pop();
    }
}

fn poly_derivative<R: CommRing>(m: &[R]) -> Vec<R> {
    let mut d: Vec<R> = m.iter().enumerate().skip(1).map(|(i, x)| x.scale_int(i as i64)).collect();
    trim(&mut d);
    d
}

/// Degree of `gcd(a, b)` by Euclid over `R`, or `None` if an inverse is missing.
fn poly_gcd_degree<R: CommRing>(a: &[R], b: &[R]) -> Option<usize> {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if b.is_empty() {
        return Some(a.len().saturating_sub(1));
    }
    while !b.is_empty() {
        let inv = b.last().unwrap().try_inv()?;
        while a.len() >= b.len() {
            let coef = a.last().unwrap().mul(&inv);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = a[shift + j].sub(&coef.mul(bj));
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

impl<R: CommRing> Quotient<R> {
    pub fn modulus(&self) -> &Modulus<R> {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    fn base_zero(m: &Modulus<R>) -> R {
        m[0].zero_like()
    }

    pub fn from_coeffs(m: &Modulus<R>, mut c: Vec<R>) -> Self {
        let d = m.len() - 1;
        let z = Self::base_zero(m);
        if c.len() > d {
            reduce(&mut c, m);
        }
        c.resize(d, z);
        Quotient { modulus: m.clone(), c }
    }

    pub fn scalar(m: &Modulus<R>, r: R) -> Self {
        Self::from_coeffs(m, vec![r])
    }

    /// The class of `Z`.
    pub fn gen(m: &Modulus<R>) -> Self {
        let z = Self::base_zero(m);
        Self::from_coeffs(m, vec![z.clone(), z.one_like()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    /// The base-ring value, if all higher coordinates vanish.
    pub fn as_scalar(&self) -> Option<&R> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| &self.c[0])
    }

    pub fn base_mul(&self, r: &R) -> Self {
        Quotient { modulus: self.modulus.clone(), c: self.c.iter().map(|x| x.mul(r)).collect() }
    }

    /// Applies a ring map coefficientwise (e.g. Galois conjugation of the base).
    pub fn map_coeffs(&self, m: &Modulus<R>, f: impl Fn(&R) -> R) -> Self {
        Self::from_coeffs(m, self.c.iter().map(f).collect())
    }
}

fn reduce<R: CommRing>(c: &mut Vec<R>, m: &[R]) {
    let d = m.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for (j, mj) in m[..d].iter().enumerate() {
            if !mj.is_zero() {
                c[shift + j] = c[shift + j].sub(&top.mul(mj));
            }
        }
    }
}

impl<R: CommRing> CommRing for Quotient<R> {
    fn zero_like(&self) -> Self {
        let z = self.c[0].zero_like();
        Quotient { modulus: self.modulus.clone(), c: vec![z; self.c.len()] }
    }
    fn one_like(&self) -> Self {
        Self::scalar(&self.modulus, self.c[0].one_like())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect();
        Quotient { modulus: self.modulus.clone(), c }
    }
    fn sub(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a.sub(b)).collect();
        Quotient { modulus: self.modulus.clone(), c }
    }
    fn neg(&self) -> Self {
        Quotient { modulus: self.modulus.clone(), c: self.c.iter().map(|a| a.neg()).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.c.len();
        let z = self.c[0].zero_like();
        let mut prod = vec![z; 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].add(&a.mul(b));
                }
            }
        }
        reduce(&mut prod, &self.modulus);
        Quotient { modulus: self.modulus.clone(), c: prod }
    }
    fn from_fq(&self, c: Fq) -> Self {
        Self::scalar(&self.modulus, self.c[0].from_fq(c))
    }
    fn characteristic(&self) -> u32 {
        self.c[0].characteristic()
    }
    /// `(sum c_i Z^i)^p = sum c_i^p Z^{ip}`.
    fn frobenius(&self) -> Self {
        let p = self.characteristic() as usize;
        let d = self.c.len();
        let mut out = vec![self.c[0].zero_like(); p * (d - 1) + 1];
        for (i, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                out[i * p] = a.frobenius();
            }
        }
        reduce(&mut out, &self.modulus);
        out.resize(d, self.c[0].zero_like());
        Quotient { modulus: self.modulus.clone(), c: out }
    }
    fn try_inv(&self) -> Option<Self> {
        let s = self.as_scalar()?;
        s.try_inv().map(|i| Self::scalar(&self.modulus, i))
    }
}

/// `R[Z]/(Z^{p^e} - Z + beta)`-style Artin-Schreier moduli are separable
/// (derivative is the unit -1); this builds `Z^{n} + sum c_i Z^i` from sparse terms.
pub fn sparse_modulus<R: CommRing>(proto: &R, degree: usize, terms: &[(usize, R)]) -> Vec<R> {
    let mut m = vec![proto.zero_like(); degree + 1];
    m[degree] = proto.one_like();
    for (i, c) in terms {
        m[*i] = m[*i].add(c);
    }
    m
}
