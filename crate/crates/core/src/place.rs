//! Places of `F_q(T)`, valuations, residue fields, divisors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor;
use crate::field::{Fq, FqField};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// Monic irreducible `pi`.
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::InvalidPlace(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// The degree-1 place `T - c`.
    pub fn at(field: &Arc<FqField>, c: Fq) -> Place {
        Place::Finite(Poly::linear(field, c))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree() as usize,
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// `c` when this is the place `T - c`.
    pub fn linear_root(&self) -> Option<Fq> {
        match self {
            Place::Finite(pi) if pi.degree() == 1 => Some(pi.field().neg(pi.coeff(0))),
            _ => None,
        }
    }

    /// `"inf"`, or a monic irreducible polynomial expression such as `"T^2+T+z"`.
    pub fn parse(field: &Arc<FqField>, s: &str) -> Result<Place> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Place::Infinity);
        }
        let r = RatFn::parse(field, t)?;
        if !r.is_poly() {
            return Err(Error::InvalidPlace(format!("{t} is not a polynomial")));
        }
        Place::finite(r.num().clone())
    }

    /// Canonical uniformizer: `pi`, or `1/T` at infinity.
    pub fn uniformizer(&self, field: &Arc<FqField>) -> RatFn {
        match self {
            Place::Finite(pi) => RatFn::from_poly(pi.clone()),
            Place::Infinity => RatFn::t(field).inv().unwrap(),
        }
    }

    pub fn ord_poly(&self, x: &Poly) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            Place::Finite(pi) => x.multiplicity(pi) as i64,
            Place::Infinity => -x.degree(),
        })
    }

    pub fn ord(&self, x: &RatFn) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(match self {
            Place::Finite(pi) => x.num().multiplicity(pi) as i64 - x.den().multiplicity(pi) as i64,
            Place::Infinity => x.den().degree() - x.num().degree(),
        })
    }

    /// `ord` with `+inf` represented as `None` for zero.
    pub fn ord_opt(&self, x: &RatFn) -> Option<i64> {
        self.ord(x).ok()
    }

    pub fn residue_field(&self, field: &Arc<FqField>) -> ResidueField {
        match self {
            Place::Finite(pi) => ResidueField { modulus: pi.clone() },
            Place::Infinity => ResidueField { modulus: Poly::t(field) },
        }
    }

    /// Image of `x` in `k(v)`, as a polynomial reduced mod `pi` (a constant at infinity).
    pub fn residue(&self, x: &RatFn) -> Result<Poly> {
        let f = x.field();
        if x.is_zero() {
            return Ok(Poly::zero(f));
        }
        if self.ord(x)? < 0 {
            return Err(Error::PoleAtPlace(format!("{x} at {self}")));
        }
        match self {
            Place::Finite(pi) => {
                let dinv = x.den().inv_mod(pi).expect("denominator is a unit");
                Ok(x.num().mul(&dinv).rem(pi))
            }
            Place::Infinity => {
                if x.num().degree() < x.den().degree() {
                    Ok(Poly::zero(f))
                } else {
                    Ok(Poly::constant(f, f.div(x.num().lc(), x.den().lc()).unwrap()))
                }
            }
        }
    }

    /// `ord_v(db)`: `ord_v(b')` at finite places, `ord_inf(b') - 2` at infinity.
    pub fn ord_differential(&self, b: &RatFn) -> Result<i64> {
        let d = b.derivative();
        if d.is_zero() {
            return Err(Error::ExactDifferentialZero(b.to_string()));
        }
        let o = self.ord(&d)?;
        Ok(if self.is_infinity() { o - 2 } else { o })
    }

    /// Residue of `pi^{1 - m(p-1)} m^{-1} db/dpi` with the canonical uniformizer.
    pub fn diff_ratio(&self, b: &RatFn, m: i64) -> Result<Poly> {
        let pi = self.uniformizer(b.field());
        self.diff_ratio_with(b, m, &pi)
    }

    /// As [`Place::diff_ratio`] with an arbitrary uniformizer `w` (`ord_v(w) = 1`).
    pub fn diff_ratio_with(&self, b: &RatFn, m: i64, w: &RatFn) -> Result<Poly> {
        let f = b.field();
        let p = f.p() as i64;
        let od = self.ord_differential(b)?;
        if od + 1 != m * (p - 1) {
            return Err(Error::PreconditionViolated(format!(
                "ord(db) + 1 = {} is not m(p-1) with m = {m}",
                od + 1
            )));
        }
        if m.rem_euclid(p) == 0 {
            return Err(Error::PreconditionViolated(format!("m = {m} divisible by p")));
        }
        if self.ord(w)? != 1 {
            return Err(Error::PreconditionViolated(format!("{w} is not a uniformizer at {self}")));
        }
        let dw = w.derivative();
        let db_dw = b.derivative().div(&dw).map_err(|_| Error::PreconditionViolated("dw = 0".into()))?;
        let minv = f.inv(f.from_int(m)).unwrap();
        let x = w.powi(1 - m * (p - 1))?.mul(&db_dw).scale(minv);
        self.residue(&x)
    }

    /// Places of degree `d`, in enumeration order (infinity last among degree 1).
    pub fn of_degree(field: &Arc<FqField>, d: usize) -> Vec<Place> {
        let mut out: Vec<Place> = Poly::monics_of_degree(field, d)
            .filter(|p| p.is_irreducible())
            .map(Place::Finite)
            .collect();
        out.sort();
        if d == 1 {
            out.push(Place::Infinity);
        }
        out
    }

    /// Places where `x` has nonzero order.
    pub fn support(x: &RatFn) -> Vec<Place> {
        let mut out: Vec<Place> = factor::support(x.num())
            .into_iter()
            .chain(factor::support(x.den()))
            .map(Place::Finite)
            .collect();
        if x.degree() != 0 {
            out.push(Place::Infinity);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Places where `db` has nonzero order.
    pub fn differential_support(b: &RatFn) -> Result<Vec<Place>> {
        let d = b.derivative();
        if d.is_zero() {
            return Err(Error::ExactDifferentialZero(b.to_string()));
        }
        let mut out: Vec<Place> = Place::support(&d).into_iter().filter(|v| !v.is_infinity()).collect();
        if Place::Infinity.ord_differential(b)? != 0 {
            out.push(Place::Infinity);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        match self {
            Place::Finite(pi) => pi.to_string(),
            Place::Infinity => "inf".into(),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| match (self, other) {
                (Place::Infinity, Place::Infinity) => Ordering::Equal,
                (Place::Infinity, _) => Ordering::Greater,
                (_, Place::Infinity) => Ordering::Less,
                (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            })
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self.to_text())
    }
}

/// `F_q[T]/(pi)`; at infinity the modulus is `T` so elements are constants.
#[derive(Clone, Debug)]
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    pub fn degree(&self) -> usize {
        self.modulus.degree() as usize
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn reduce(&self, x: &Poly) -> Poly {
        x.rem(&self.modulus)
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        x.mul_mod(y, &self.modulus)
    }

    /// True iff `x` is a `(p-1)`st power in this finite field.
    pub fn is_pminus1_power(&self, x: &Poly) -> bool {
        let x = self.reduce(x);
        if x.is_zero() {
            return true;
        }
        // x^{(Q-1)/(p-1)} = x * x^p * ... * x^{p^{md-1}}
        let f = x.field().clone();
        let steps = f.m() as usize * self.degree();
        let mut acc = x.clone();
        let mut cur = x;
        for _ in 1..steps {
            cur = cur.pow_mod(f.p() as u64, &self.modulus);
            acc = self.mul(&acc, &cur);
        }
        acc.is_one()
    }

    /// Every element, for exhaustive checks on small fields.
    pub fn elements(&self) -> Vec<Poly> {
        Poly::all_below_degree(self.modulus.field(), self.degree()).collect()
    }
}

/// Finitely supported integer combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    pub coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn principal(x: &RatFn) -> Result<Divisor> {
        let mut d = Divisor::new();
        for v in Place::support(x) {
            let o = v.ord(x)?;
            d.set(v, o);
        }
        Ok(d)
    }

    pub fn get(&self, v: &Place) -> i64 {
        self.coeffs.get(v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Place, n: i64) {
        if n == 0 {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, n);
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(v, n)| v.degree() as i64 * n).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(v, n)| if *n == 1 { format!("[{v}]") } else { format!("{n}*[{v}]") })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
