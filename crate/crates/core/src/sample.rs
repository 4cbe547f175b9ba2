//! Random inputs and étale algebras hosting generic points, for property
//! tests and the acceptance suite.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::etale::{quotient_modulus, sparse_modulus, Modulus, Quotient};
use crate::field::{Fq, FqField};
use crate::groups::Pair;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

pub fn random_fq<R: Rng>(field: &FqField, rng: &mut R) -> Fq {
    Fq(rng.gen_range(0..field.q()))
}

/// Uniform among polynomials of degree `<= max_deg`.
pub fn random_poly<R: Rng>(field: &Arc<FqField>, rng: &mut R, max_deg: usize) -> Poly {
    Poly::new(field, (0..=max_deg).map(|_| random_fq(field, rng)).collect())
}

pub fn random_nonzero_poly<R: Rng>(field: &Arc<FqField>, rng: &mut R, max_deg: usize) -> Poly {
    loop {
        let p = random_poly(field, rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfn<R: Rng>(field: &Arc<FqField>, rng: &mut R, max_deg: usize) -> RatFn {
    let num = random_poly(field, rng, max_deg);
    let den = random_nonzero_poly(field, rng, max_deg);
    RatFn::new(num, den).expect("nonzero denominator")
}

pub fn random_nonzero_ratfn<R: Rng>(field: &Arc<FqField>, rng: &mut R, max_deg: usize) -> RatFn {
    loop {
        let r = random_ratfn(field, rng, max_deg);
        if !r.is_zero() {
            return r;
        }
    }
}

/// `B[X]/(X^{p^2} - X + a y0^{p^2})` and its point `(X, y0)` on `V`.
pub fn v_tower<B: CommRing>(a: &B, y0: &B) -> Result<(Modulus<B>, Pair<Quotient<B>>)> {
    let p = a.characteristic() as usize;
    let c0 = a.mul(&y0.frobenius_iter(2));
    let m = quotient_modulus(sparse_modulus(a, p * p, &[(1, a.one_like().neg()), (0, c0)]))?;
    let pt = (Quotient::gen(&m), Quotient::scalar(&m, y0.clone()));
    Ok((m, pt))
}

/// `B[Y]/(Y^p + s Y + a y1^p)` and its point `(Y, y1)`: on `W` for `s = 1`,
/// on `W^+` for `s = -1`.
pub fn w_tower<B: CommRing>(a: &B, y1: &B, s: i64) -> Result<(Modulus<B>, Pair<Quotient<B>>)> {
    let p = a.characteristic() as usize;
    let c0 = a.mul(&y1.frobenius());
    let m = quotient_modulus(sparse_modulus(a, p, &[(1, a.from_int(s)), (0, c0)]))?;
    let pt = (Quotient::gen(&m), Quotient::scalar(&m, y1.clone()));
    Ok((m, pt))
}

/// `B[zeta]/(zeta^2 + zeta + 1)`.
pub fn zeta_algebra<B: CommRing>(proto: &B) -> Result<Modulus<B>> {
    let one = proto.one_like();
    quotient_modulus(sparse_modulus(proto, 2, &[(0, one.clone()), (1, one)]))
}

/// `zeta -> zeta + 1` on `B[zeta]/(zeta^2 + zeta + 1)`.
pub fn sigma_zeta<B: CommRing>(x: &Quotient<B>) -> Quotient<B> {
    let c = x.coeffs();
    Quotient::from_coeffs(x.modulus(), vec![c[0].add(&c[1]), c[1].clone()])
}

/// Applies `f` to the coefficients of an element of `B[Z]/(m)` with `m` over
/// the fixed ring of `f`.
pub fn map_quotient<B: CommRing>(x: &Quotient<B>, f: &impl Fn(&B) -> B) -> Quotient<B> {
    x.map_coeffs(x.modulus(), f)
}

pub fn embed<B: CommRing>(m: &Modulus<B>, x: &B) -> Quotient<B> {
    Quotient::scalar(m, x.clone())
}

pub fn embed_pair<B: CommRing>(m: &Modulus<B>, v: &Pair<B>) -> Pair<Quotient<B>> {
    (embed(m, &v.0), embed(m, &v.1))
}
