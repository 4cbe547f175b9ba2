//! Randomized group-law and descent suites over étale towers, shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wound_core::etale::{Modulus, Quotient};
use wound_core::field::{Fq, FqField};
use wound_core::groups::{
    descent_twist, h_alt, h_new, h_plus, h_zeta, make_group, pair_add, Cocycle, GroupCtx, GroupKind, GroupPoint, Pair,
};
use wound_core::points::enumerate_points;
use wound_core::poly::Poly;
use wound_core::ratfn::RatFn;
use wound_core::ring::CommRing;
use wound_core::sample::{embed, random_fq, random_poly, sigma_zeta, v_tower, w_tower, zeta_algebra};

#[derive(Debug, Default)]
pub struct Suite {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Suite {
    fn check(&mut self, ok: bool, what: &str) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(format!("instance {}: {what}", self.instances));
        }
    }
}

pub fn a_poly(field: &Arc<FqField>) -> Poly {
    // T(T - 1)
    Poly::new(field, vec![Fq::ZERO, field.neg(Fq::ONE), Fq::ONE])
}

type Q1 = Quotient<Poly>;
type Q2 = Quotient<Q1>;
type Q3 = Quotient<Q2>;

fn lift2(m1: &Modulus<Poly>, m2: &Modulus<Q1>, x: &Poly) -> Q2 {
    embed(m2, &embed(m1, x))
}

fn lift3(m1: &Modulus<Poly>, m2: &Modulus<Q1>, m3: &Modulus<Q2>, x: &Poly) -> Q3 {
    embed(m3, &lift2(m1, m2, x))
}

fn pair_up<B: CommRing>(m: &Modulus<B>, v: &Pair<B>) -> Pair<Quotient<B>> {
    (embed(m, &v.0), embed(m, &v.1))
}

fn four<R: CommRing>(w: Pair<R>, v: Pair<R>) -> GroupPoint<R> {
    GroupPoint::Four { w, v }
}

/// `lambda P + (c, 0)`.
fn combo<R: CommRing>(lambda: &R, c: &R, pt: &Pair<R>) -> Pair<R> {
    (lambda.mul(&pt.0).add(c), lambda.mul(&pt.1))
}

fn check_bilinear<R: CommRing>(
    s: &mut Suite,
    name: &str,
    h: impl Fn(&Pair<R>, &Pair<R>) -> Pair<R>,
    v1: &Pair<R>,
    v2: &Pair<R>,
    v3: &Pair<R>,
) {
    let left = h(&pair_add(v1, v2), v3) == pair_add(&h(v1, v3), &h(v2, v3));
    s.check(left, &format!("{name} not additive in the first slot"));
    let right = h(v1, &pair_add(v2, v3)) == pair_add(&h(v1, v2), &h(v1, v3));
    s.check(right, &format!("{name} not additive in the second slot"));
}

/// Group axioms for three points and a central candidate `(z, 0)`.
fn check_axioms<R: CommRing>(s: &mut Suite, ctx: &GroupCtx<R>, pts: &[GroupPoint<R>; 3], z: &Pair<R>) {
    let [p1, p2, p3] = pts;
    for pt in pts {
        s.check(ctx.is_on_curve(pt), "sample off curve");
    }
    let l = ctx.mul(&ctx.mul(p1, p2).unwrap(), p3).unwrap();
    let r = ctx.mul(p1, &ctx.mul(p2, p3).unwrap()).unwrap();
    s.check(l == r, "associativity");
    let e = ctx.identity();
    s.check(ctx.mul(&e, p1).unwrap() == *p1 && ctx.mul(p1, &e).unwrap() == *p1, "identity");
    let inv = ctx.inverse(p1);
    s.check(ctx.is_identity(&ctx.mul(p1, &inv).unwrap()), "right inverse");
    s.check(ctx.is_identity(&ctx.mul(&inv, p1).unwrap()), "left inverse");
    s.check(ctx.is_on_curve(&inv), "inverse off curve");
    s.check(ctx.is_on_curve(&ctx.mul(p1, p2).unwrap()), "product off curve");
    let zero = ctx.a.zero_like();
    let zp = four(z.clone(), (zero.clone(), zero.clone()));
    s.check(ctx.is_on_curve(&zp), "central candidate off curve");
    s.check(ctx.mul(&zp, p2).unwrap() == ctx.mul(p2, &zp).unwrap(), "W not central");
    let c = ctx.commutator(p1, p2).unwrap();
    s.check(c.v().0.is_zero() && c.v().1.is_zero(), "commutator has nonzero V-part");
    s.check(ctx.w_equation(c.w().unwrap()).is_zero(), "commutator not in W");
    let (v1, v2, v3) = (p1.v(), p2.v(), p3.v());
    check_bilinear(s, "h", |x, y| ctx.h(x, y), v1, v2, v3);
    check_bilinear(s, "h+", h_plus, v1, v2, v3);
    s.check(h_plus(v1, v2) == h_plus(v2, v1), "h+ not symmetric");
    match ctx.cocycle() {
        Some(Cocycle::Alternating) => {
            s.check(h_alt(v1, v1).0.is_zero() && h_alt(v1, v1).1.is_zero(), "h not alternating");
        }
        Some(Cocycle::Zeta) => {
            let zeta = ctx.zeta.clone().unwrap();
            check_bilinear(s, "h_zeta", |x, y| h_zeta(&zeta, x, y), v1, v2, v3);
            check_bilinear(s, "h_new", h_new, v1, v2, v3);
        }
        Some(Cocycle::New) => {
            check_bilinear(s, "h_alt", h_alt, v1, v2, v3);
        }
        _ => {}
    }
    s.instances += 1;
}

fn w_points(field: &Arc<FqField>, a: &Poly) -> Vec<Pair<RatFn>> {
    let spec = make_group(GroupKind::W, field, &RatFn::from_poly(a.clone())).unwrap();
    enumerate_points(&spec).unwrap().into_iter().map(|pt| pt.v().clone()).collect()
}

/// `U` over `F_{p^2}`, `p` odd, on `B[X]/(X^{p^2} - X + a y0^{p^2})`.
/// The V-parts are `F_q`-combinations of the generic point and `V(k)`; the
/// W-parts range over `W(k)`. `B` is `Poly` when `W(k)` has no poles.
pub fn u_suite(p: u32, n: usize, seed: u64) -> Suite {
    let field = FqField::new(p, 2).unwrap();
    let a = a_poly(&field);
    let wk = w_points(&field, &a);
    if wk.iter().all(|(x, y)| x.is_poly() && y.is_poly()) {
        u_suite_over(&field, |r: &RatFn| r.num().clone(), &wk, n, seed)
    } else {
        u_suite_over(&field, |r: &RatFn| r.clone(), &wk, n, seed)
    }
}

fn u_suite_over<B: CommRing>(
    field: &Arc<FqField>,
    conv: impl Fn(&RatFn) -> B,
    wk: &[Pair<RatFn>],
    n: usize,
    seed: u64,
) -> Suite {
    let p = field.p();
    let a = conv(&RatFn::from_poly(a_poly(field)));
    let wk: Vec<Pair<B>> = wk.iter().map(|(x, y)| (conv(x), conv(y))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite::default();
    for _ in 0..n {
        let y0 = conv(&RatFn::from_poly(random_poly(field, &mut rng, 1)));
        let (m, gp) = v_tower(&a, &y0).unwrap();
        let ctx = GroupCtx { kind: GroupKind::U, p, a: embed(&m, &a), zeta: None };
        let sc = |c: Fq| embed(&m, &conv(&RatFn::constant(field, c)));
        let pick = |rng: &mut ChaCha8Rng| {
            let v = combo(&sc(random_fq(field, rng)), &sc(random_fq(field, rng)), &gp);
            let w = pair_up(&m, &wk[rng.gen_range(0..wk.len())]);
            four(w, v)
        };
        let pts = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        let z = pair_up(&m, &wk[rng.gen_range(0..wk.len())]);
        check_axioms(&mut s, &ctx, &pts, &z);
    }
    s
}

fn w2_points(field: &Arc<FqField>) -> Vec<Pair<Poly>> {
    // x + x^2 + (T^2 + T) y^2 = 0 over F_2
    let t = Poly::t(field);
    let one = Poly::one(field);
    let zero = Poly::zero(field);
    vec![(zero.clone(), zero.clone()), (one.clone(), zero), (t.clone(), one.clone()), (t.add(&one), one)]
}

/// `U^zeta` over `F_4` on a V-tower topped by a W^+-tower.
pub fn uzeta_suite(n: usize, seed: u64) -> Suite {
    let field = FqField::new(2, 2).unwrap();
    let a = a_poly(&field);
    let zeta = field.find_zeta().unwrap();
    let wk = w2_points(&field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite::default();
    for _ in 0..n {
        let (y0, y1) = (random_poly(&field, &mut rng, 1), random_poly(&field, &mut rng, 1));
        let (m1, gv) = v_tower(&a, &y0).unwrap();
        let (m2, gw) = w_tower(&embed(&m1, &a), &embed(&m1, &y1), -1).unwrap();
        let lift = |x: &Poly| lift2(&m1, &m2, x);
        let gv = pair_up(&m2, &gv);
        let ctx = GroupCtx { kind: GroupKind::Uzeta, p: 2, a: lift(&a), zeta: Some(lift(&Poly::constant(&field, zeta))) };
        let sc = |c: Fq| lift(&Poly::constant(&field, c));
        let pick = |rng: &mut ChaCha8Rng| {
            let v = combo(&sc(random_fq(&field, rng)), &sc(random_fq(&field, rng)), &gv);
            let u = &wk[rng.gen_range(0..wk.len())];
            let u = (lift(&u.0), lift(&u.1));
            let w = if rng.gen_bool(0.5) { pair_add(&gw, &u) } else { u };
            four(w, v)
        };
        let pts = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        let z = pair_add(&gw, &(lift(&wk[2].0), lift(&wk[2].1)));
        check_axioms(&mut s, &ctx, &pts, &z);
    }
    s
}

/// The descended group over `F_2`: `g(w) = x^3`. Two W-towers supply `w`
/// over the V-parts `(X, y0)` and `(X + 1, y0)`.
pub fn descended_suite(n: usize, seed: u64) -> Suite {
    let field = FqField::new(2, 1).unwrap();
    let a = a_poly(&field);
    let wk = w2_points(&field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite::default();
    for _ in 0..n {
        let (y0, y1, y2) = (
            random_poly(&field, &mut rng, 1),
            random_poly(&field, &mut rng, 1),
            random_poly(&field, &mut rng, 1),
        );
        let (m1, gv) = v_tower(&a, &y0).unwrap();
        let x = gv.0.clone();
        let x1 = x.add(&x.one_like());
        // Y^2 + Y + a y^2 + x^3 = 0 puts (Y, y) on g(w) = x^3
        let (m2, _) = w_tower(&embed(&m1, &a), &embed(&m1, &y1), 1).unwrap();
        let m2 = shift_constant(&m2, &x.pow(3));
        let w1 = (Quotient::gen(&m2), lift2(&m1, &m2, &y1));
        let (m3, _) = w_tower(&embed(&m2, &embed(&m1, &a)), &lift2(&m1, &m2, &y2), 1).unwrap();
        let m3 = shift_constant(&m3, &embed(&m2, &x1.pow(3)));
        let w2 = (Quotient::gen(&m3), lift3(&m1, &m2, &m3, &y2));
        let lift = |x: &Poly| lift3(&m1, &m2, &m3, x);
        let up2 = |u: &Pair<Q1>| (embed(&m3, &embed(&m2, &u.0)), embed(&m3, &embed(&m2, &u.1)));
        let up1 = |u: &Pair<Q2>| (embed(&m3, &u.0), embed(&m3, &u.1));
        let pv = up2(&gv);
        let pv1 = (pv.0.add(&pv.0.one_like()), pv.1.clone());
        let (pw, pw1) = (up1(&w1), w2);
        let zero = lift(&Poly::zero(&field));
        let ctx = GroupCtx { kind: GroupKind::Udescended, p: 2, a: lift(&a), zeta: None };
        let pick = |rng: &mut ChaCha8Rng| {
            let u = &wk[rng.gen_range(0..wk.len())];
            let u = (lift(&u.0), lift(&u.1));
            match rng.gen_range(0..3) {
                0 => four(pair_add(&pw, &u), pv.clone()),
                1 => four(pair_add(&pw1, &u), pv1.clone()),
                _ => four(u, (zero.clone(), zero.clone())),
            }
        };
        let pts = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
        let z = (lift(&wk[2].0), lift(&wk[2].1));
        check_axioms(&mut s, &ctx, &pts, &z);
    }
    s
}

/// Adds `c` to the constant term of a monic modulus.
fn shift_constant<B: CommRing>(m: &Modulus<B>, c: &B) -> Modulus<B> {
    let mut v: Vec<B> = m.as_ref().clone();
    v[0] = v[0].add(c);
    Arc::new(v)
}

/// The descent identities over `Poly[zeta][X][Y]` with `q = 2`, on the
/// V-tower and a W^+-tower, `sigma` acting on `zeta`.
pub fn descent_suite(n: usize, seed: u64) -> wound_core::groups::DescentReport {
    let field = FqField::new(2, 1).unwrap();
    let a = a_poly(&field);
    let mz = zeta_algebra(&a).unwrap();
    let az = embed(&mz, &a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = wound_core::groups::DescentReport::default();
    for _ in 0..n {
        let y0 = embed(&mz, &random_poly(&field, &mut rng, 1));
        let y1 = embed(&mz, &random_poly(&field, &mut rng, 1));
        let (m1, gv) = v_tower(&az, &y0).unwrap();
        let (m2, gw) = w_tower(&embed(&m1, &az), &embed(&m1, &y1), -1).unwrap();
        let lift = |x: &Quotient<Poly>| embed(&m2, &embed(&m1, x));
        let zeta = lift(&Quotient::gen(&mz));
        let gv = pair_up(&m2, &gv);
        let f4 = |rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..4usize);
            let one = zeta.one_like();
            [zeta.zero_like(), one.clone(), zeta.clone(), zeta.add(&one)][i].clone()
        };
        let sample_v = |rng: &mut ChaCha8Rng| {
            let (l, c) = (f4(rng), f4(rng));
            combo(&l, &c, &gv)
        };
        let v = sample_v(&mut rng);
        let v2 = sample_v(&mut rng);
        let sigma = |x: &Q3b| x.map_coeffs(x.modulus(), |y: &Quotient<Quotient<Poly>>| {
            y.map_coeffs(y.modulus(), |z: &Quotient<Poly>| sigma_zeta(z))
        });
        let r = descent_twist(&lift(&az), &zeta, sigma, &[(gw.clone(), v, v2)]);
        total.cocycle_identity_checked += r.cocycle_identity_checked;
        total.homomorphism_checked += r.homomorphism_checked;
        total.cocycle_condition_checked += r.cocycle_condition_checked;
        total.b_lands_on_w_checked += r.b_lands_on_w_checked;
        total.new_coordinates_checked += r.new_coordinates_checked;
        total.failures.extend(r.failures);
    }
    total
}

type Q3b = Quotient<Quotient<Quotient<Poly>>>;
