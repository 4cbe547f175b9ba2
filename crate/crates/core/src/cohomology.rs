//! Connecting maps `delta_beta: V(k) -> H^1(k, W) = k/g(k^2)` of inner twists,
//! the constructive solver for `f(x, y) = lambda` over `k`, and local
//! nontrivial classes of `W`.

use serde::{Deserialize, Serialize};

use crate::additive::{functional_kills, image_member, local_nontrivial_witness, AdditiveMap, Decision, NonMemberCert, Window};
use crate::approx::{approximate, Target};
use crate::error::{Error, Result};
use crate::etale::{etale_modulus, sparse_modulus, Quotient};
use crate::field::Fq;
use crate::groups::{f_map, g_map, g_plus_map, h_alt, h_new, h_zeta, pair_scale, pair_sub, b_map, GroupKind, GroupSpec, Pair};
use crate::local::LaurentLocal;
use crate::place::Place;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

/// A class in `H^1(k, W) = k/g(k^2)` or `H^1(k, V) = k/f(k^2)`, by representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohClassRep {
    pub kind: String,
    pub rep: String,
    pub modulus: String,
}

impl CohClassRep {
    pub fn w(rep: &RatFn) -> Self {
        CohClassRep { kind: "W".into(), rep: rep.to_string(), modulus: "k/g(k^2)".into() }
    }

    pub fn w_local(rep: &LaurentLocal) -> Self {
        CohClassRep { kind: "W".into(), rep: rep.to_text(), modulus: "k_v/g(k_v^2)".into() }
    }
}

fn check_delta_input(spec: &GroupSpec, v: &Pair<RatFn>) -> Result<()> {
    match spec.kind {
        GroupKind::U | GroupKind::Udescended => {}
        GroupKind::Uzeta if spec.p() == 2 => {}
        k => return Err(Error::KindUnsupported(format!("no connecting map for {k} with p = {}", spec.p()))),
    }
    if !f_map(&spec.a, v).is_zero() {
        return Err(Error::OffCurve(format!("({}, {}) not on V", v.0, v.1)));
    }
    Ok(())
}

/// Closed form: `2 c^p beta` (p > 2), `c^2 beta` (zeta case),
/// `c^2 beta + c^3` (descended case).
pub fn delta_closed(spec: &GroupSpec, beta: &RatFn, v: &Pair<RatFn>) -> Result<RatFn> {
    check_delta_input(spec, v)?;
    let c = &v.0;
    Ok(match spec.kind {
        GroupKind::U => c.frobenius().mul(beta).scale_int(2),
        GroupKind::Uzeta => c.square().mul(beta),
        _ => c.square().mul(beta).add(&c.pow(3)),
    })
}

/// `g(n(v))` for the descended case, with `n(v) = zeta b(v)` computed over
/// `k(zeta)`; the result must be the scalar `c^3`.
pub fn descended_gn(a: &RatFn, v: &Pair<RatFn>) -> Result<RatFn> {
    let one = RatFn::one(a.field());
    let m = etale_modulus(sparse_modulus(&one, 2, &[(0, one.clone()), (1, one.clone())]))?;
    let zeta = Quotient::gen(&m);
    let emb = |r: &RatFn| Quotient::scalar(&m, r.clone());
    let vv = (emb(&v.0), emb(&v.1));
    let n = pair_scale(&zeta, &b_map(&vv));
    let val = g_map(&emb(a), &n);
    val.as_scalar().cloned().ok_or_else(|| Error::ValueNotRational(format!("g(n(v)) = {val:?}")))
}

/// `g(h(X, v)) - g(h(v, X)) + g(n(v))` with `X = (Z, 0)` in the étale
/// algebra `k[Z]/(Z^{p^2} - Z + beta)`, so that `f(X) = beta`.
pub fn delta_generic(spec: &GroupSpec, beta: &RatFn, v: &Pair<RatFn>) -> Result<RatFn> {
    check_delta_input(spec, v)?;
    let p = spec.p() as usize;
    let one = RatFn::one(beta.field());
    let m = etale_modulus(sparse_modulus(&one, p * p, &[(1, one.neg()), (0, beta.clone())]))?;
    let emb = |r: &RatFn| Quotient::scalar(&m, r.clone());
    let x = (Quotient::gen(&m), emb(&RatFn::zero(beta.field())));
    debug_assert_eq!(f_map(&emb(&spec.a), &x), emb(beta));
    let vv = (emb(&v.0), emb(&v.1));
    let a = emb(&spec.a);
    let val = match spec.kind {
        GroupKind::U => g_map(&a, &h_alt(&x, &vv)).sub(&g_map(&a, &h_alt(&vv, &x))),
        GroupKind::Uzeta => {
            let z = emb(&RatFn::constant(beta.field(), spec.zeta.ok_or_else(|| Error::ZetaMissing("spec without zeta".into()))?));
            g_plus_map(&a, &h_zeta(&z, &x, &vv)).sub(&g_plus_map(&a, &h_zeta(&z, &vv, &x)))
        }
        _ => {
            let gn = descended_gn(&spec.a, v)?;
            let c3 = v.0.pow(3);
            if gn != c3 {
                return Err(Error::ValueNotRational(format!("g(n(v)) = {gn}, expected {c3}")));
            }
            g_map(&a, &h_new(&x, &vv)).sub(&g_map(&a, &h_new(&vv, &x))).add(&emb(&gn))
        }
    };
    val.as_scalar().cloned().ok_or_else(|| Error::ValueNotRational(format!("{val:?}")))
}

/// `delta(v1 + v2) - delta(v1) - delta(v2)` with a preimage under `g` when one
/// is known in closed form.
#[derive(Clone, Debug)]
pub struct AdditivityCheck {
    pub difference: RatFn,
    pub preimage: Option<Pair<RatFn>>,
    pub certified: bool,
}

pub fn delta_additivity(spec: &GroupSpec, beta: &RatFn, v1: &Pair<RatFn>, v2: &Pair<RatFn>) -> Result<AdditivityCheck> {
    let s = (v1.0.add(&v2.0), v1.1.add(&v2.1));
    let difference = delta_closed(spec, beta, &s)?
        .sub(&delta_closed(spec, beta, v1)?)
        .sub(&delta_closed(spec, beta, v2)?);
    let zero = RatFn::zero(beta.field());
    let preimage = if difference.is_zero() {
        Some((zero.clone(), zero))
    } else if spec.kind == GroupKind::Udescended {
        // c1 c2^2 + c1^2 c2 = g(h_new(v1, v2)) on V
        Some(h_new(v1, v2))
    } else {
        None
    };
    let certified = match &preimage {
        Some(w) => w_map(spec, w) == difference,
        None => false,
    };
    Ok(AdditivityCheck { difference, preimage, certified })
}

fn w_map(spec: &GroupSpec, w: &Pair<RatFn>) -> RatFn {
    match spec.kind {
        GroupKind::Uzeta | GroupKind::Wplus => g_plus_map(&spec.a, w),
        _ => g_map(&spec.a, w),
    }
}

/// For `beta = f(X)` with `X` rational, `delta_beta(v)` has the preimage
/// `h(X, v) - h(v, X)`; returns it after checking.
pub fn trivial_twist_preimage(spec: &GroupSpec, x: &Pair<RatFn>, v: &Pair<RatFn>) -> Result<Option<Pair<RatFn>>> {
    let beta = f_map(&spec.a, x);
    let d = delta_closed(spec, &beta, v)?;
    let w = match spec.kind {
        GroupKind::U => pair_sub(&h_alt(x, v), &h_alt(v, x)),
        GroupKind::Uzeta => {
            let z = RatFn::constant(&spec.field, spec.zeta.unwrap());
            pair_sub(&h_zeta(&z, x, v), &h_zeta(&z, v, x))
        }
        _ => return Ok(None),
    };
    Ok((w_map(spec, &w) == d).then_some(w))
}

/// A local solution of `f(x, y) = lambda` at `v`.
#[derive(Clone, Debug)]
pub struct LocalWitness {
    pub place: Place,
    pub x: LaurentLocal,
    pub y: LaurentLocal,
}

/// Solves `f(x, y) = lambda` over `k` for `f(x, y) = x - x^{p^2} - a y^{p^2}`.
///
/// Step (i) clears the finite poles of `lambda` by approximating the local
/// witnesses; the remainder is a polynomial. Step (ii) solves it at infinity
/// (by the given witness or the local image), keeps the polynomial parts,
/// and checks that the residual, now integral everywhere and vanishing at
/// infinity, is zero.
pub fn solve_global_v(a: &RatFn, lambda: &RatFn, witnesses: &[LocalWitness]) -> Result<Pair<RatFn>> {
    let field = a.field().clone();
    let p = field.p() as i64;
    let pp = p * p;
    let fm = AdditiveMap::f(a);
    let zero = RatFn::zero(&field);
    if lambda.is_zero() {
        return Ok((zero.clone(), zero));
    }
    let mut x_targets = Vec::new();
    let mut y_targets = Vec::new();
    for v in Place::support(lambda) {
        if v.is_infinity() || v.ord(lambda)? >= 0 {
            continue;
        }
        let oa = v.ord(a)?;
        let ny = (-oa).div_euclid(pp) + i64::from((-oa).rem_euclid(pp) != 0);
        let ny = ny.max(0);
        let (x, y) = match witnesses.iter().find(|w| w.place == v) {
            Some(w) => {
                let check = fm.eval_local(&[w.x.clone(), w.y.clone()], 1)?;
                let lv = LaurentLocal::expand(lambda, &v, 1)?;
                if check.sub(&lv).val_or_prec() < 0 || w.x.prec() < 0 || w.y.prec() < ny {
                    return Err(Error::InsufficientPrecision(format!("witness at {v}")));
                }
                (w.x.clone(), w.y.clone())
            }
            None => {
                let w = Window::default_for(&fm, &v, v.ord(lambda)?)?;
                let lv = LaurentLocal::expand(lambda, &v, w.high)?;
                match image_member(&fm, &lv, Some(w))? {
                    Decision::Member { x, y } => (x, y),
                    _ => return Err(Error::NoConvergence(format!("no local solution found at {v}"))),
                }
            }
        };
        x_targets.push(Target::local(x, 0));
        y_targets.push(Target::local(y, ny));
    }
    let x1 = approximate(&field, &x_targets, true)?;
    let y1 = approximate(&field, &y_targets, true)?;
    let lam1 = lambda.sub(&fm.eval_global(&[x1.clone(), y1.clone()]));
    if !lam1.den().is_constant() {
        return Err(Error::NoConvergence(format!("finite poles remain in {lam1}")));
    }
    if lam1.is_zero() {
        return Ok((x1, y1));
    }
    let inf = Place::Infinity;
    let (xi, yi) = match witnesses.iter().find(|w| w.place.is_infinity()) {
        Some(w) => {
            let ex = LaurentLocal::expand(&x1, &inf, w.x.prec())?;
            let ey = LaurentLocal::expand(&y1, &inf, w.y.prec())?;
            (w.x.sub(&ex), w.y.sub(&ey))
        }
        None => {
            let d = lam1.degree().max(0);
            let prec = 2 * d + pp + 8;
            let l = LaurentLocal::expand(&lam1, &inf, prec)?;
            let w = Window::new(-d - 2, prec)?;
            match image_member(&fm, &l, Some(w))? {
                Decision::Member { x, y } => (x, y),
                _ => return Err(Error::NoConvergence("no local solution found at inf".into())),
            }
        }
    };
    let (ax, ay) = (RatFn::from_poly(xi.polynomial_part()?), RatFn::from_poly(yi.polynomial_part()?));
    let (x, y) = (x1.add(&ax), y1.add(&ay));
    let residual = lambda.sub(&fm.eval_global(&[x.clone(), y.clone()]));
    if !residual.is_zero() {
        return Err(Error::NoConvergence(format!("residual {residual} at inf")));
    }
    Ok((x, y))
}

/// A class of `H^1(k_v, W)` that is nonzero at `v`, trivial elsewhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Che1Witness {
    pub place: String,
    pub class: CohClassRep,
    pub certificate: NonMemberCert,
    /// Polynomial `F_p`-basis inputs of degree `<= height` whose image the
    /// certificate's functional was re-checked to kill.
    pub checked_height: usize,
    pub checked_inputs: usize,
    pub global_nonlifting: String,
}

pub fn che1_witness(spec: &GroupSpec, v: &Place, window: Option<Window>, height: usize) -> Result<Che1Witness> {
    if spec.kind != GroupKind::W {
        return Err(Error::KindUnsupported(format!("witness is for W, not {}", spec.kind)));
    }
    let g = AdditiveMap::g(&spec.a);
    let (mu, cert) = local_nontrivial_witness(&g, v, window)?;
    if image_member(&g, &mu, Some(cert.window))?.is_member() {
        return Err(Error::PreconditionViolated("trivial class".into()));
    }
    let field = &spec.field;
    let prec = cert.window.high;
    let zero = LaurentLocal::zero(field, v, prec);
    let mut checked = 0;
    for j in 0..=height as i64 {
        for k in 0..field.m() {
            let c = Fq(field.p().pow(k));
            let t = RatFn::from_poly(crate::poly::Poly::monomial(field, c, j as usize));
            let e = LaurentLocal::expand(&t, v, prec)?;
            for (x, y) in [(e.clone(), zero.clone()), (zero.clone(), e)] {
                if !functional_kills(&cert, &g, &x, &y)? {
                    return Err(Error::PreconditionViolated("certificate fails on a global input".into()));
                }
                checked += 1;
            }
        }
    }
    Ok(Che1Witness {
        place: v.to_text(),
        class: CohClassRep::w_local(&mu),
        certificate: cert,
        checked_height: height,
        checked_inputs: checked,
        global_nonlifting: "cited, not recomputed".into(),
    })
}

/// Rejects the zero class (or any local member) as a witness.
pub fn check_nontrivial(g: &AdditiveMap, lambda: &LaurentLocal, window: Option<Window>) -> Result<NonMemberCert> {
    match image_member(g, lambda, window)? {
        Decision::NonMember(c) => Ok(c),
        Decision::Member { .. } => Err(Error::PreconditionViolated("trivial class".into())),
        Decision::Inconclusive { reason } => Err(Error::WindowTooSmall(reason)),
    }
}
