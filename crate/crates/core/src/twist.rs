//! Inner twists `U_beta` whose connecting map is nonzero at every place of a
//! chosen set `S`, with independently re-checkable certificates.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::additive::{image_member, local_nontrivial_witness, AdditiveMap, Decision, NonMemberCert, Window};
use crate::approx::{approximate, Target};
use crate::cohomology::delta_closed;
use crate::error::{Error, Result};
use crate::field::FqField;
use crate::groups::{f_map, make_group, GroupKind, GroupSpec, Pair};
use crate::local::LaurentLocal;
use crate::place::Place;
use crate::points::enumerate_points;
use crate::ratfn::RatFn;
use crate::ring::CommRing;
use crate::tamagawa::{ratio_text, Assumption};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlaceCertificate {
    pub place: String,
    pub c: String,
    pub d: String,
    /// The coset `beta` must avoid.
    pub forbidden_coset: String,
    pub delta: String,
    pub certificate: NonMemberCert,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistCertificate {
    pub field: String,
    pub kind: GroupKind,
    pub a: String,
    pub group: String,
    pub places: Vec<String>,
    pub beta: String,
    pub per_place: Vec<PlaceCertificate>,
    pub v_points: usize,
    /// `#V(k) p^{-|S|}`, as `"num/den"`.
    pub bound: String,
    pub assumptions: Vec<Assumption>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

/// The `W`-side map whose image is `g(k_v^2)` for this kind.
pub fn w_additive(spec: &GroupSpec) -> AdditiveMap {
    match spec.kind {
        GroupKind::Uzeta => AdditiveMap::g_plus(&spec.a),
        _ => AdditiveMap::g(&spec.a),
    }
}

/// `#V(k) p^{-s}`.
pub fn twist_bound(v_points: usize, p: u32, s: usize) -> Ratio<i128> {
    Ratio::new(v_points as i128, (p as i128).pow(s as u32))
}

fn forbidden_text(spec: &GroupSpec, c: &RatFn) -> String {
    match spec.kind {
        GroupKind::U => format!("(2*({c})^{})^-1 g(k_v^2)", spec.p()),
        GroupKind::Uzeta => format!("({c})^-2 g(k_v^2)"),
        _ => format!("({c})^-2 g(k_v^2) + {c}"),
    }
}

/// The seed point `(1, 0)`, on `V` for every `a`.
fn seed_point(spec: &GroupSpec) -> Result<Pair<RatFn>> {
    let f = &spec.field;
    let v = (RatFn::one(f), RatFn::zero(f));
    if !f_map(&spec.a, &v).is_zero() {
        return Err(Error::SeedFailure("(1, 0) is not on V".into()));
    }
    Ok(v)
}

/// Builds `beta` with `delta_beta(c_v, d_v)` outside `g(k_v^2)` for all `v in S`.
pub fn twist_search(spec: &GroupSpec, places: &[Place], window: Option<Window>) -> Result<TwistCertificate> {
    if !spec.kind.is_extension() {
        return Err(Error::KindUnsupported(format!("twists are of U-kinds, not {}", spec.kind)));
    }
    if places.is_empty() {
        return Err(Error::PreconditionViolated("S is empty".into()));
    }
    for (i, v) in places.iter().enumerate() {
        if places[..i].contains(v) {
            return Err(Error::PreconditionViolated(format!("place {v} repeated")));
        }
    }
    let field = &spec.field;
    let g = w_additive(spec);
    let pt = seed_point(spec)?;
    let c = &pt.0;
    // delta = s * beta + t with s, t in k
    let (scale, shift) = match spec.kind {
        GroupKind::U => (c.frobenius().scale_int(2), RatFn::zero(field)),
        GroupKind::Uzeta => (c.square(), RatFn::zero(field)),
        _ => (c.square(), c.pow(3)),
    };
    let mut targets = Vec::new();
    for v in places {
        let (mu, _) = local_nontrivial_witness(&g, v, window)?;
        // beta_v = (mu - t) / s, so that delta_{beta_v} = mu
        // delta moves by s (beta - beta_v); order >= 1 lies in the image
        let n = 1 - v.ord(&scale)?;
        let prec = n.max(1) + 8;
        let s_loc = LaurentLocal::expand(&scale, v, prec)?;
        let t_loc = LaurentLocal::expand(&shift, v, prec)?;
        let beta_v = mu.with_prec(prec).sub(&t_loc).mul(&s_loc.try_inv().ok_or(Error::ZeroInput)?);
        targets.push(Target::local(beta_v, n));
    }
    let beta = approximate(field, &targets, false)?;
    let mut per_place = Vec::new();
    for v in places {
        let delta = delta_closed(spec, &beta, &pt)?;
        let cert = certify_place(&g, &delta, v, window)?;
        per_place.push(PlaceCertificate {
            place: v.to_text(),
            c: pt.0.to_string(),
            d: pt.1.to_string(),
            forbidden_coset: forbidden_text(spec, c),
            delta: delta.to_string(),
            certificate: cert,
        });
    }
    let vspec = make_group(GroupKind::V, field, &spec.a)?;
    let v_points = enumerate_points(&vspec)?.len();
    Ok(TwistCertificate {
        field: field.descriptor(),
        kind: spec.kind,
        a: spec.a.to_string(),
        group: spec.to_text(),
        places: places.iter().map(|v| v.to_text()).collect(),
        beta: beta.to_string(),
        per_place,
        v_points,
        bound: ratio_text(&twist_bound(v_points, spec.p(), places.len())),
        assumptions: vec![Assumption::ShaWTrivial],
    })
}

fn delta_window(g: &AdditiveMap, delta: &RatFn, v: &Place, window: Option<Window>) -> Result<Window> {
    let o = if delta.is_zero() { 0 } else { v.ord(delta)? };
    let d = Window::default_for(g, v, o)?;
    Ok(match window {
        Some(w) => Window { low: w.low.min(d.low), high: w.high.max(d.high) },
        None => d,
    })
}

fn certify_place(g: &AdditiveMap, delta: &RatFn, v: &Place, window: Option<Window>) -> Result<NonMemberCert> {
    let w = delta_window(g, delta, v, window)?;
    let loc = LaurentLocal::expand(delta, v, w.high)?;
    match image_member(g, &loc, Some(w))? {
        Decision::NonMember(c) => Ok(c),
        Decision::Member { .. } => Err(Error::PreconditionViolated(format!("delta lies in g(k_v^2) at {v}"))),
        Decision::Inconclusive { reason } => Err(Error::WindowTooSmall(reason)),
    }
}

/// Re-runs the exact and local checks of a certificate; no search.
pub fn certificate_verify(cert: &TwistCertificate) -> VerifyReport {
    let mut rep = VerifyReport::default();
    if let Err(e) = verify_inner(cert, &mut rep) {
        rep.failures.push(format!("malformed certificate: {e}"));
    }
    rep.ok = rep.failures.is_empty();
    rep
}

fn verify_inner(cert: &TwistCertificate, rep: &mut VerifyReport) -> Result<()> {
    let field = FqField::from_descriptor(&cert.field)?;
    let a = RatFn::parse(&field, &cert.a)?;
    let spec = make_group(cert.kind, &field, &a)?;
    let g = w_additive(&spec);
    let beta = RatFn::parse(&field, &cert.beta)?;
    if cert.places.len() != cert.per_place.len() || cert.places.is_empty() {
        rep.failures.push("place list does not match per-place entries".into());
    }
    for pc in &cert.per_place {
        let v = Place::parse(&field, &pc.place)?;
        let pt = (RatFn::parse(&field, &pc.c)?, RatFn::parse(&field, &pc.d)?);
        rep.checks += 1;
        if !f_map(&a, &pt).is_zero() {
            rep.failures.push(format!("{}: (c, d) not on V", pc.place));
            continue;
        }
        rep.checks += 1;
        if pt.0.is_zero() {
            rep.failures.push(format!("{}: c_v = 0", pc.place));
            continue;
        }
        let delta = delta_closed(&spec, &beta, &pt)?;
        let w = delta_window(&g, &delta, &v, Some(pc.certificate.window))?.enlarged(2);
        let loc = LaurentLocal::expand(&delta, &v, w.high)?;
        rep.checks += 1;
        match image_member(&g, &loc, Some(w))? {
            Decision::NonMember(_) => {}
            Decision::Member { .. } => rep.failures.push(format!("{}: delta_beta lies in g(k_v^2)", pc.place)),
            Decision::Inconclusive { reason } => rep.failures.push(format!("{}: inconclusive ({reason})", pc.place)),
        }
    }
    let vspec = make_group(GroupKind::V, &field, &a)?;
    let n = enumerate_points(&vspec)?.len();
    rep.checks += 1;
    if n != cert.v_points {
        rep.failures.push(format!("#V(k) = {n}, certificate says {}", cert.v_points));
    }
    rep.checks += 1;
    let expected = ratio_text(&twist_bound(n, field.p(), cert.per_place.len()));
    if expected != cert.bound {
        rep.failures.push(format!("bound {} != {expected}", cert.bound));
    }
    Ok(())
}
