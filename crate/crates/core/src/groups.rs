//! The groups `V_a`, `W_a`, `W_a^+` and the central extensions `U_a`,
//! `U_a^zeta` and the descended `U_a`, over any [`CommRing`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::ratfn::RatFn;
use crate::ring::CommRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    V,
    W,
    Wplus,
    U,
    Uzeta,
    Udescended,
}

impl GroupKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "V" => GroupKind::V,
            "W" => GroupKind::W,
            "Wplus" | "W+" => GroupKind::Wplus,
            "U" => GroupKind::U,
            "Uzeta" => GroupKind::Uzeta,
            "Udescended" => GroupKind::Udescended,
            _ => return Err(Error::Parse(format!("unknown group kind {s:?}"))),
        })
    }

    pub fn is_extension(self) -> bool {
        matches!(self, GroupKind::U | GroupKind::Uzeta | GroupKind::Udescended)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::V => "V",
            GroupKind::W => "W",
            GroupKind::Wplus => "Wplus",
            GroupKind::U => "U",
            GroupKind::Uzeta => "Uzeta",
            GroupKind::Udescended => "Udescended",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub field: Arc<FqField>,
    pub a: RatFn,
    pub zeta: Option<Fq>,
}

/// Validates the parameter and the kind against the field.
pub fn make_group(kind: GroupKind, field: &Arc<FqField>, a: &RatFn) -> Result<GroupSpec> {
    if a.is_pth_power().is_some() {
        return Err(Error::ParameterInKp(a.to_string()));
    }
    let p = field.p();
    let mut zeta = None;
    match kind {
        GroupKind::U if p == 2 => {
            return Err(Error::UnsupportedCharacteristic("U needs p > 2; use Uzeta or Udescended".into()))
        }
        GroupKind::Uzeta => {
            zeta = Some(field.find_zeta().map_err(|_| {
                Error::ZetaMissing(format!("no zeta in F_{} (needs F_{} inside)", field.q(), p * p))
            })?)
        }
        GroupKind::Udescended => {
            if p != 2 {
                return Err(Error::UnsupportedCharacteristic("descended U needs p = 2".into()));
            }
            if field.contains_subfield(2) {
                return Err(Error::PreconditionViolated("F_4 lies in k; use Uzeta".into()));
            }
        }
        _ => {}
    }
    Ok(GroupSpec { kind, field: field.clone(), a: a.clone(), zeta })
}

impl GroupSpec {
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Context over `R`, embedding `a` (and `zeta`) with the given maps.
    pub fn ctx<R: CommRing>(&self, a: R, zeta: Option<R>) -> GroupCtx<R> {
        GroupCtx { kind: self.kind, p: self.p(), a, zeta }
    }

    /// Context over `k` itself.
    pub fn ctx_k(&self) -> GroupCtx<RatFn> {
        let z = self.zeta.map(|z| RatFn::constant(&self.field, z));
        self.ctx(self.a.clone(), z)
    }

    /// `"U[p=3,q=9,a=T^2+2*T]"`.
    pub fn to_text(&self) -> String {
        format!("{}[p={},q={},a={}]", self.kind, self.p(), self.q(), self.a)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub type Pair<R> = (R, R);

pub fn pair_add<R: CommRing>(u: &Pair<R>, v: &Pair<R>) -> Pair<R> {
    (u.0.add(&v.0), u.1.add(&v.1))
}

pub fn pair_sub<R: CommRing>(u: &Pair<R>, v: &Pair<R>) -> Pair<R> {
    (u.0.sub(&v.0), u.1.sub(&v.1))
}

pub fn pair_neg<R: CommRing>(u: &Pair<R>) -> Pair<R> {
    (u.0.neg(), u.1.neg())
}

pub fn pair_scale<R: CommRing>(c: &R, u: &Pair<R>) -> Pair<R> {
    (c.mul(&u.0), c.mul(&u.1))
}

pub fn pair_is_zero<R: CommRing>(u: &Pair<R>) -> bool {
    u.0.is_zero() && u.1.is_zero()
}

/// `f(x, y) = x - x^{p^2} - a y^{p^2}`.
pub fn f_map<R: CommRing>(a: &R, v: &Pair<R>) -> R {
    v.0.sub(&v.0.frobenius_iter(2)).sub(&a.mul(&v.1.frobenius_iter(2)))
}

/// `g(x, y) = x + x^p + a y^p`.
pub fn g_map<R: CommRing>(a: &R, w: &Pair<R>) -> R {
    w.0.add(&w.0.frobenius()).add(&a.mul(&w.1.frobenius()))
}

/// `g^+(x, y) = x - x^p - a y^p`.
pub fn g_plus_map<R: CommRing>(a: &R, w: &Pair<R>) -> R {
    w.0.sub(&w.0.frobenius()).sub(&a.mul(&w.1.frobenius()))
}

/// `b(x, y) = (x^{p+1}, x y^p)`.
pub fn b_map<R: CommRing>(v: &Pair<R>) -> Pair<R> {
    (v.0.mul(&v.0.frobenius()), v.0.mul(&v.1.frobenius()))
}

/// `h(v, v') = (x x'^p - x^p x', x y'^p - x' y^p)`.
pub fn h_alt<R: CommRing>(v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
    (
        v.0.mul(&w.0.frobenius()).sub(&v.0.frobenius().mul(&w.0)),
        v.0.mul(&w.1.frobenius()).sub(&w.0.mul(&v.1.frobenius())),
    )
}

/// `h^+(v, v') = (x x'^p + x^p x', x y'^p + x' y^p)`.
pub fn h_plus<R: CommRing>(v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
    (
        v.0.mul(&w.0.frobenius()).add(&v.0.frobenius().mul(&w.0)),
        v.0.mul(&w.1.frobenius()).add(&w.0.mul(&v.1.frobenius())),
    )
}

/// `h_zeta(v, v') = h^+(v, zeta v')`.
pub fn h_zeta<R: CommRing>(zeta: &R, v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
    h_plus(v, &pair_scale(zeta, w))
}

/// `h_new(v, v') = (x x'^2, x y'^2)`.
pub fn h_new<R: CommRing>(v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
    (v.0.mul(&w.0.square()), v.0.mul(&w.1.square()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cocycle {
    Alternating,
    Symmetric,
    Zeta,
    New,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupPoint<R: CommRing> {
    /// A point of `V`, `W` or `W^+`.
    Two(Pair<R>),
    /// `(w; v)` for the extension kinds.
    Four { w: Pair<R>, v: Pair<R> },
}

impl<R: CommRing> GroupPoint<R> {
    pub fn w(&self) -> Option<&Pair<R>> {
        match self {
            GroupPoint::Four { w, .. } => Some(w),
            GroupPoint::Two(_) => None,
        }
    }

    pub fn v(&self) -> &Pair<R> {
        match self {
            GroupPoint::Four { v, .. } => v,
            GroupPoint::Two(v) => v,
        }
    }
}

impl GroupPoint<RatFn> {
    /// `"(w1, w2 ; v1, v2)"` or `"(x, y)"`.
    pub fn to_text(&self) -> String {
        match self {
            GroupPoint::Two((x, y)) => format!("({x}, {y})"),
            GroupPoint::Four { w, v } => format!("({}, {} ; {}, {})", w.0, w.1, v.0, v.1),
        }
    }

    pub fn parse(field: &Arc<FqField>, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("point must be parenthesized: {t}")))?;
        let parse_pair = |s: &str| -> Result<Pair<RatFn>> {
            let parts = split_top_level(s, ',');
            if parts.len() != 2 {
                return Err(Error::Parse(format!("expected two coordinates in {s:?}")));
            }
            Ok((RatFn::parse(field, &parts[0])?, RatFn::parse(field, &parts[1])?))
        };
        let halves = split_top_level(inner, ';');
        match halves.len() {
            1 => Ok(GroupPoint::Two(parse_pair(&halves[0])?)),
            2 => Ok(GroupPoint::Four { w: parse_pair(&halves[0])?, v: parse_pair(&halves[1])? }),
            _ => Err(Error::Parse(format!("too many ';' in {t}"))),
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(String::new());
        } else {
            out.last_mut().unwrap().push(ch);
        }
    }
    out
}

/// A group spec realized over a coefficient ring `R`.
#[derive(Clone, Debug)]
pub struct GroupCtx<R: CommRing> {
    pub kind: GroupKind,
    pub p: u32,
    pub a: R,
    pub zeta: Option<R>,
}

impl<R: CommRing> GroupCtx<R> {
    pub fn cocycle(&self) -> Option<Cocycle> {
        match self.kind {
            GroupKind::U => Some(Cocycle::Alternating),
            GroupKind::Uzeta => Some(Cocycle::Zeta),
            GroupKind::Udescended => Some(Cocycle::New),
            _ => None,
        }
    }

    pub fn h_variant(&self, c: Cocycle, v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
        match c {
            Cocycle::Alternating => h_alt(v, w),
            Cocycle::Symmetric => h_plus(v, w),
            Cocycle::Zeta => h_zeta(self.zeta.as_ref().expect("zeta"), v, w),
            Cocycle::New => h_new(v, w),
        }
    }

    /// The spec's cocycle.
    pub fn h(&self, v: &Pair<R>, w: &Pair<R>) -> Pair<R> {
        self.h_variant(self.cocycle().expect("extension kind"), v, w)
    }

    pub fn on_v(&self, v: &Pair<R>) -> bool {
        f_map(&self.a, v).is_zero()
    }

    pub fn on_w(&self, w: &Pair<R>) -> bool {
        g_map(&self.a, w).is_zero()
    }

    pub fn on_wplus(&self, w: &Pair<R>) -> bool {
        g_plus_map(&self.a, w).is_zero()
    }

    /// The additive map whose kernel is the W-part of this kind.
    pub fn w_equation(&self, w: &Pair<R>) -> R {
        match self.kind {
            GroupKind::Uzeta | GroupKind::Wplus => g_plus_map(&self.a, w),
            _ => g_map(&self.a, w),
        }
    }

    pub fn is_on_curve(&self, pt: &GroupPoint<R>) -> bool {
        match (self.kind, pt) {
            (GroupKind::V, GroupPoint::Two(v)) => self.on_v(v),
            (GroupKind::W, GroupPoint::Two(w)) => self.on_w(w),
            (GroupKind::Wplus, GroupPoint::Two(w)) => self.on_wplus(w),
            (GroupKind::U, GroupPoint::Four { w, v }) => self.on_w(w) && self.on_v(v),
            (GroupKind::Uzeta, GroupPoint::Four { w, v }) => self.on_wplus(w) && self.on_v(v),
            (GroupKind::Udescended, GroupPoint::Four { w, v }) => {
                self.on_v(v) && g_map(&self.a, w) == v.0.pow(3)
            }
            _ => false,
        }
    }

    pub fn check(&self, pt: &GroupPoint<R>) -> Result<()> {
        if self.is_on_curve(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!("point not on {}", self.kind)))
        }
    }

    pub fn identity(&self) -> GroupPoint<R> {
        let z = self.a.zero_like();
        let zz = (z.clone(), z);
        if self.kind.is_extension() {
            GroupPoint::Four { w: zz.clone(), v: zz }
        } else {
            GroupPoint::Two(zz)
        }
    }

    pub fn mul(&self, x: &GroupPoint<R>, y: &GroupPoint<R>) -> Result<GroupPoint<R>> {
        match (x, y) {
            (GroupPoint::Two(a), GroupPoint::Two(b)) if !self.kind.is_extension() => Ok(GroupPoint::Two(pair_add(a, b))),
            (GroupPoint::Four { w, v }, GroupPoint::Four { w: w2, v: v2 }) if self.kind.is_extension() => {
                Ok(GroupPoint::Four { w: pair_add(&pair_add(w, w2), &self.h(v, v2)), v: pair_add(v, v2) })
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// `(w, v)^{-1} = (-w - h(v, -v), -v)`.
    pub fn inverse(&self, x: &GroupPoint<R>) -> GroupPoint<R> {
        match x {
            GroupPoint::Two(a) => GroupPoint::Two(pair_neg(a)),
            GroupPoint::Four { w, v } => {
                let nv = pair_neg(v);
                GroupPoint::Four { w: pair_sub(&pair_neg(w), &self.h(v, &nv)), v: nv }
            }
        }
    }

    /// `x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: &GroupPoint<R>, y: &GroupPoint<R>) -> Result<GroupPoint<R>> {
        let xy = self.mul(x, y)?;
        let xyx = self.mul(&xy, &self.inverse(x))?;
        self.mul(&xyx, &self.inverse(y))
    }

    /// `b x b^{-1}`.
    pub fn conjugate(&self, b: &GroupPoint<R>, x: &GroupPoint<R>) -> Result<GroupPoint<R>> {
        let bx = self.mul(b, x)?;
        self.mul(&bx, &self.inverse(b))
    }

    pub fn is_identity(&self, x: &GroupPoint<R>) -> bool {
        match x {
            GroupPoint::Two(a) => pair_is_zero(a),
            GroupPoint::Four { w, v } => pair_is_zero(w) && pair_is_zero(v),
        }
    }
}

/// `[sigma](w, v) = (w + b(v), v)`, an isomorphism `U^zeta -> U^{zeta+1}`.
pub fn sigma_bracket<R: CommRing>(w: &Pair<R>, v: &Pair<R>) -> (Pair<R>, Pair<R>) {
    (pair_add(w, &b_map(v)), v.clone())
}

/// Outcome of the descent identities on a batch of samples.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DescentReport {
    pub cocycle_identity_checked: usize,
    pub homomorphism_checked: usize,
    pub cocycle_condition_checked: usize,
    pub b_lands_on_w_checked: usize,
    pub new_coordinates_checked: usize,
    pub failures: Vec<String>,
}

impl DescentReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the `p = 2` descent identities on sample points over a ring
/// containing `zeta` (`zeta^2 + zeta + 1 = 0`) with Galois action `sigma`
/// (`sigma(zeta) = zeta + 1`, so `sigma^{-1} = sigma`).
///
/// Each sample is `(w, v, v2)` with `v, v2` on `V` and `w` on `W^+`.
pub fn descent_twist<R: CommRing>(
    a: &R,
    zeta: &R,
    sigma: impl Fn(&R) -> R,
    samples: &[(Pair<R>, Pair<R>, Pair<R>)],
) -> DescentReport {
    let mut rep = DescentReport::default();
    let one = zeta.one_like();
    let zeta1 = zeta.add(&one);
    if !zeta.square().add(zeta).add(&one).is_zero() {
        rep.failures.push("zeta^2 + zeta + 1 != 0".into());
        return rep;
    }
    let sig_pair = |u: &Pair<R>| (sigma(&u.0), sigma(&u.1));
    let ctx = |z: &R| GroupCtx { kind: GroupKind::Uzeta, p: 2, a: a.clone(), zeta: Some(z.clone()) };
    let (cz, cz1) = (ctx(zeta), ctx(&zeta1));
    for (i, (w, v, v2)) in samples.iter().enumerate() {
        // h_{zeta+1} = h_zeta + h^+
        let lhs = h_zeta(&zeta1, v, v2);
        let rhs = pair_add(&h_zeta(zeta, v, v2), &h_plus(v, v2));
        rep.cocycle_identity_checked += 1;
        if lhs != rhs {
            rep.failures.push(format!("sample {i}: h_(zeta+1) != h_zeta + h^+"));
        }
        // [sigma] is a homomorphism U^zeta -> U^{zeta+1}
        let p1 = GroupPoint::Four { w: w.clone(), v: v.clone() };
        let w2 = b_map(v2);
        let p2 = GroupPoint::Four { w: w2.clone(), v: v2.clone() };
        let br = |pt: &GroupPoint<R>| match pt {
            GroupPoint::Four { w, v } => {
                let (w, v) = sigma_bracket(w, v);
                GroupPoint::Four { w, v }
            }
            other => other.clone(),
        };
        let left = br(&cz.mul(&p1, &p2).unwrap());
        let right = cz1.mul(&br(&p1), &br(&p2)).unwrap();
        rep.homomorphism_checked += 1;
        if left != right {
            rep.failures.push(format!("sample {i}: [sigma] not multiplicative"));
        }
        // sigma^*([sigma]) o [sigma] = id, with sigma^*([sigma]) = sigma o [sigma] o sigma^{-1}
        let (bw, bv) = sigma_bracket(w, v);
        let (sw, sv) = (sig_pair(&bw), sig_pair(&bv));
        let (tw, tv) = sigma_bracket(&sw, &sv);
        let (back_w, back_v) = (sig_pair(&tw), sig_pair(&tv));
        rep.cocycle_condition_checked += 1;
        if back_w != *w || back_v != *v {
            rep.failures.push(format!("sample {i}: sigma^*([sigma]) o [sigma] != id"));
        }
        if !cz1.on_wplus(&bw) && cz.on_wplus(w) && cz.on_v(v) {
            rep.failures.push(format!("sample {i}: [sigma] leaves the curve"));
        }
        // b(v) on W for v on V
        rep.b_lands_on_w_checked += 1;
        if cz.on_v(v) && !g_map(a, &b_map(v)).is_zero() {
            rep.failures.push(format!("sample {i}: b(v) not on W"));
        }
        // new coordinates alpha = w + zeta b(v): law becomes h_new
        let alpha = pair_add(w, &pair_scale(zeta, &b_map(v)));
        let alpha2 = pair_add(&w2, &pair_scale(zeta, &b_map(v2)));
        let GroupPoint::Four { w: prod_w, v: prod_v } = cz.mul(&p1, &p2).unwrap() else { unreachable!() };
        let prod_alpha = pair_add(&prod_w, &pair_scale(zeta, &b_map(&prod_v)));
        let via_new = pair_add(&pair_add(&alpha, &alpha2), &h_new(v, v2));
        rep.new_coordinates_checked += 1;
        if prod_alpha != via_new {
            rep.failures.push(format!("sample {i}: new-coordinate law mismatch"));
        }
        if cz.on_v(v) && cz.on_wplus(w) && g_map(a, &alpha) != v.0.pow(3) {
            rep.failures.push(format!("sample {i}: g(alpha) != c^3"));
        }
    }
    rep
}
