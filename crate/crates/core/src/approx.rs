//! Weak and strong approximation on `P^1`: a global `beta` with prescribed
//! expansions at finitely many places.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::local::LaurentLocal;
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

#[derive(Clone, Debug)]
pub enum TargetValue {
    Local(LaurentLocal),
    Global(RatFn),
}

/// Requirement `ord_v(beta - value) >= n`.
#[derive(Clone, Debug)]
pub struct Target {
    pub place: Place,
    pub value: TargetValue,
    pub n: i64,
}

impl Target {
    pub fn local(value: LaurentLocal, n: i64) -> Self {
        Target { place: value.place().clone(), value: TargetValue::Local(value), n }
    }

    pub fn global(place: Place, value: RatFn, n: i64) -> Self {
        Target { place, value: TargetValue::Global(value), n }
    }

    /// The target as an element of `k` agreeing with it to order `n`.
    fn as_ratfn(&self) -> Result<RatFn> {
        match &self.value {
            TargetValue::Global(r) => Ok(r.clone()),
            TargetValue::Local(s) => {
                if s.prec() < self.n {
                    return Err(Error::InsufficientPrecision(format!(
                        "target at {} known to {} < {}",
                        self.place,
                        s.prec(),
                        self.n
                    )));
                }
                Ok(s.split_at(self.n).0.to_ratfn())
            }
        }
    }

    pub fn satisfied_by(&self, beta: &RatFn) -> Result<bool> {
        let t = self.as_ratfn()?;
        let d = beta.sub(&t);
        Ok(d.is_zero() || self.place.ord(&d)? >= self.n)
    }
}

/// `x mod pi^e` for `x` integral at `pi`.
fn reduce_mod(x: &RatFn, modulus: &Poly) -> Poly {
    let dinv = x.den().inv_mod(modulus).expect("denominator coprime to modulus");
    x.num().mul(&dinv).rem(modulus)
}

/// CRT in `F_q[T]`: `r ≡ r_i mod m_i` for pairwise coprime `m_i`.
pub fn crt(field: &Arc<FqField>, parts: &[(Poly, Poly)]) -> Poly {
    let mut acc = Poly::zero(field);
    let mut m = Poly::one(field);
    for (ri, mi) in parts {
        // acc + m * s with s ≡ (ri - acc) m^{-1} mod mi
        let minv = m.inv_mod(mi).expect("coprime moduli");
        let s = ri.sub(&acc).mul(&minv).rem(mi);
        acc = acc.add(&m.mul(&s));
        m = m.mul(mi);
        acc = acc.rem(&m);
    }
    acc
}

/// Finds `beta in k` meeting every target. With `integral`, `beta` has no
/// poles at finite places outside the targets.
pub fn approximate(field: &Arc<FqField>, targets: &[Target], integral: bool) -> Result<RatFn> {
    for (i, a) in targets.iter().enumerate() {
        if targets[..i].iter().any(|b| b.place == a.place) {
            return Err(Error::PreconditionViolated(format!("place {} repeated", a.place)));
        }
    }
    let finite: Vec<(&Target, Poly, RatFn)> = targets
        .iter()
        .filter_map(|t| match &t.place {
            Place::Finite(pi) => Some((t, pi.clone())),
            Place::Infinity => None,
        })
        .map(|(t, pi)| Ok((t, pi, t.as_ratfn()?)))
        .collect::<Result<_>>()?;

    // Q clears the target poles; R = beta Q is found by CRT
    let mut q = Poly::one(field);
    let mut pole = Vec::new();
    for (_, pi, t) in &finite {
        let e = if t.is_zero() { 0 } else { (-Place::Finite(pi.clone()).ord(t)?).max(0) };
        pole.push(e);
        q = q.mul(&CommRing::pow(pi, e as u64));
    }
    let mut parts = Vec::new();
    for ((tg, pi, t), &e) in finite.iter().zip(&pole) {
        let m = tg.n + e;
        if m <= 0 {
            continue;
        }
        let modulus = CommRing::pow(pi, m as u64);
        let qt = RatFn::from_poly(q.clone()).mul(t);
        parts.push((reduce_mod(&qt, &modulus), modulus));
    }
    let r = crt(field, &parts);
    let mut beta = RatFn::new(r, q)?;

    if let Some(inf) = targets.iter().find(|t| t.place.is_infinity()) {
        // correction D = P h with ord_{v_i}(P) >= n_i, so finite targets are kept
        let mut p = Poly::one(field);
        for (tg, pi, _) in &finite {
            p = p.mul(&CommRing::pow(pi, tg.n.max(0) as u64));
        }
        let need = inf.n + p.degree();
        let t = inf.as_ratfn()?;
        let z = t.sub(&beta).div(&RatFn::from_poly(p.clone()))?;
        let zs = LaurentLocal::expand(&z, &Place::Infinity, need.max(1))?;
        let mut h = RatFn::from_poly(zs.polynomial_part()?);
        let mut rest = zs.sub(&LaurentLocal::expand(&h, &Place::Infinity, need.max(1))?);
        if need > 1 {
            let w = first_place_outside(field, targets);
            let dw = w.degree() as i64;
            for idx in 1..need {
                let c = rest.coeff(idx).unwrap();
                if c.is_zero() {
                    continue;
                }
                if integral {
                    return Err(Error::IntegralityUnattainable(format!(
                        "infinity target to order {} needs poles outside the targets",
                        inf.n
                    )));
                }
                let j = (idx + dw - 1) / dw;
                let rr = j * dw - idx;
                let phi = RatFn::t(field)
                    .powi(rr)?
                    .div(&RatFn::from_poly(CommRing::pow(&w, j as u64)))?
                    .scale(c);
                rest = rest.sub(&LaurentLocal::expand(&phi, &Place::Infinity, need)?);
                h = h.add(&phi);
            }
        }
        beta = beta.add(&h.mul(&RatFn::from_poly(p)));
    }
    for t in targets {
        debug_assert!(t.satisfied_by(&beta)?, "approximation missed {}", t.place);
    }
    Ok(beta)
}

fn first_place_outside(field: &Arc<FqField>, targets: &[Target]) -> Poly {
    for d in 1.. {
        for v in Place::of_degree(field, d) {
            if let Place::Finite(pi) = &v {
                if !targets.iter().any(|t| t.place == v) {
                    return pi.clone();
                }
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pole_target() {
        let f = FqField::new(3, 2).unwrap();
        let v = Place::parse(&f, "T").unwrap();
        let t = Target::global(v, RatFn::parse(&f, "1/T").unwrap(), 1);
        let b = approximate(&f, &[t.clone()], true).unwrap();
        assert!(t.satisfied_by(&b).unwrap());
    }

    #[test]
    fn two_places_and_infinity() {
        let f = FqField::new(3, 2).unwrap();
        let v0 = Place::parse(&f, "T").unwrap();
        let v1 = Place::parse(&f, "T-1").unwrap();
        let s0 = LaurentLocal::expand(&RatFn::parse(&f, "1/T^2 + z").unwrap(), &v0, 3).unwrap();
        let s1 = LaurentLocal::expand(&RatFn::parse(&f, "2/(T-1)").unwrap(), &v1, 2).unwrap();
        let si = LaurentLocal::expand(&RatFn::parse(&f, "T^3 + 1/T^2").unwrap(), &Place::Infinity, 4).unwrap();
        let targets = vec![Target::local(s0, 3), Target::local(s1, 2), Target::local(si, 4)];
        let b = approximate(&f, &targets, false).unwrap();
        for t in &targets {
            assert!(t.satisfied_by(&b).unwrap());
        }
        assert!(matches!(approximate(&f, &targets, true), Err(Error::IntegralityUnattainable(_))));
    }

    #[test]
    fn infinity_truncation_is_polynomial_part() {
        let f = FqField::new(5, 1).unwrap();
        let z = RatFn::parse(&f, "(T^4 + 2*T + 1)/(T^2 + 1)").unwrap();
        let zs = LaurentLocal::expand(&z, &Place::Infinity, 6).unwrap();
        let alpha = RatFn::from_poly(zs.polynomial_part().unwrap());
        assert!(Place::Infinity.ord(&alpha.sub(&z)).unwrap() > 0);
        let b = approximate(&f, &[Target::local(zs, 1)], true).unwrap();
        assert_eq!(b, alpha);
    }

    #[test]
    fn higher_degree_place_global_target() {
        let f = FqField::new(2, 1).unwrap();
        let v = Place::parse(&f, "T^2+T+1").unwrap();
        let t = Target::global(v, RatFn::parse(&f, "T/(T^2+T+1)").unwrap(), 3);
        let b = approximate(&f, &[t.clone()], true).unwrap();
        assert!(t.satisfied_by(&b).unwrap());
    }
}
