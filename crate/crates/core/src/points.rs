//! Rational points of `V_a`, `W_a` and `W_a^+` over `k = F_q(T)`.
//!
//! A point is determined by `x`: the curve reads `y^P = -s (x + s x^P) / a`
//! with `(s, P) = (1, p)` for `W`, `(-1, p)` for `W^+`, `(-1, p^2)` for `V`,
//! and `y` is recovered by `P`-th root extraction.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::groups::{GroupKind, GroupPoint, GroupSpec};
use crate::linalg;
use crate::place::{Divisor, Place};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

/// `(s, e)` of the curve equation, `P = p^e`.
fn shape(kind: GroupKind) -> Result<(i32, u32)> {
    match kind {
        GroupKind::W => Ok((1, 1)),
        GroupKind::Wplus => Ok((-1, 1)),
        GroupKind::V => Ok((-1, 2)),
        k => Err(Error::KindUnsupported(format!("{k} has no point enumeration"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceBound {
    pub place: String,
    pub ord_a: i64,
    pub ord_da: i64,
    /// `ceil((ord a - ord da - 1) / (P - 1))`.
    pub differential_bound: i64,
    /// Whether `P | ord a`, needed for a pole of `x`.
    pub divisibility_ok: bool,
    /// Final lower bound on `ord x`.
    pub bound: i64,
}

#[derive(Clone, Debug)]
pub struct PoleBound {
    pub kind: GroupKind,
    /// `ord_v(x) >= -D_v`.
    pub divisor: Divisor,
    pub per_place: Vec<PlaceBound>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Pole bounds on `x` from `ord(dx) >= ord(x) - 1` and the curve equation.
pub fn pole_bounds(spec: &GroupSpec) -> Result<PoleBound> {
    let (_, e) = shape(spec.kind)?;
    let big_p = (spec.p() as i64).pow(e);
    if ceil_div(-1, big_p - 1) < 0 {
        // generic places already allow poles
        return Err(Error::InfinitePointSet);
    }
    let a = &spec.a;
    let mut places: Vec<Place> = Place::support(a);
    for v in Place::differential_support(a)? {
        if !places.contains(&v) {
            places.push(v);
        }
    }
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }
    places.sort();
    let mut divisor = Divisor::new();
    let mut per_place = Vec::new();
    for v in places {
        let ord_a = v.ord(a)?;
        let ord_da = v.ord_differential(a)?;
        let differential_bound = ceil_div(ord_a - ord_da - 1, big_p - 1);
        let divisibility_ok = ord_a.rem_euclid(big_p) == 0;
        let bound = if divisibility_ok { differential_bound.min(0) } else { 0 };
        if bound < 0 {
            divisor.set(v.clone(), -bound);
        }
        per_place.push(PlaceBound { place: v.to_text(), ord_a, ord_da, differential_bound, divisibility_ok, bound });
    }
    Ok(PoleBound { kind: spec.kind, divisor, per_place })
}

/// Basis of `L(D)` over `F_q` as numerators over the common denominator
/// `Q = prod pi^{D_v}`; returns `(Q, numerators)`.
pub fn riemann_roch_basis(field: &Arc<FqField>, d: &Divisor) -> (Poly, Vec<Poly>) {
    let mut q = Poly::one(field);
    let mut finite = Vec::new();
    for (v, &n) in &d.coeffs {
        if let Place::Finite(pi) = v {
            if n > 0 {
                q = q.mul(&CommRing::pow(pi, n as u64));
                finite.push((pi.clone(), n));
            }
        }
    }
    let d_inf = d.get(&Place::Infinity).max(0) as usize;
    let mut basis = Vec::new();
    for i in 0..=d_inf {
        basis.push(Poly::monomial(field, Fq::ONE, i).mul(&q));
    }
    for (pi, n) in &finite {
        for j in 1..=*n {
            let pj = CommRing::pow(pi, j as u64);
            let cof = q.div_exact(&pj).unwrap();
            for r in 0..pi.deg().unwrap() {
                basis.push(Poly::monomial(field, Fq::ONE, r).mul(&cof));
            }
        }
    }
    (q, basis)
}

/// `y` with `y^P = -s (x + s x^P) / a`, if it exists.
fn solve_y(spec: &GroupSpec, x: &RatFn) -> Option<RatFn> {
    let (s, e) = shape(spec.kind).ok()?;
    let xp = x.frobenius_iter(e);
    let inner = if s > 0 { x.add(&xp).neg() } else { x.sub(&xp) };
    let mut y = inner.div(&spec.a).ok()?;
    for _ in 0..e {
        y = y.is_pth_power()?;
    }
    Some(y)
}

fn point_of(spec: &GroupSpec, x: RatFn) -> Option<GroupPoint<RatFn>> {
    let y = solve_y(spec, &x)?;
    let pt = GroupPoint::Two((x, y));
    debug_assert!(spec.ctx_k().is_on_curve(&pt));
    Some(pt)
}

fn sort_points(mut pts: Vec<GroupPoint<RatFn>>) -> Vec<GroupPoint<RatFn>> {
    pts.sort_by(|a, b| {
        let (x, y) = (&a.v().0, &b.v().0);
        (x.den(), x.num()).cmp(&(y.den(), y.num()))
    });
    pts.dedup();
    pts
}

const DIRECT_LIMIT: u64 = 1 << 18;

/// All rational points, complete by [`pole_bounds`].
pub fn enumerate_points(spec: &GroupSpec) -> Result<Vec<GroupPoint<RatFn>>> {
    let bound = pole_bounds(spec)?;
    let field = &spec.field;
    let (den, basis) = riemann_roch_basis(field, &bound.divisor);
    let q = field.q() as u64;
    let total = (q as f64).powi(basis.len() as i32);
    let mut out = Vec::new();
    if total <= DIRECT_LIMIT as f64 {
        // every F_q-combination of the basis
        let count = q.pow(basis.len() as u32);
        for mut idx in 0..count {
            let mut n = Poly::zero(field);
            for b in &basis {
                let c = Fq((idx % q) as u32);
                idx /= q;
                if !c.is_zero() {
                    n = n.add(&b.scale(c));
                }
            }
            let x = RatFn::new(n, den.clone())?;
            if let Some(pt) = point_of(spec, x) {
                out.push(pt);
            }
        }
    } else {
        let deg_n = basis.iter().map(|b| b.degree()).max().unwrap_or(0).max(den.degree()) as usize;
        let kernel = KernelSolver::new(spec)?;
        for n in kernel.solutions(&den, deg_n)? {
            // deg n <= deg Q + D_inf keeps n/Q inside L(D)
            out.extend(point_of(spec, RatFn::new(n, den.clone())?));
        }
    }
    Ok(sort_points(out))
}

/// For a fixed denominator `d`, the `F_p`-space of numerators `n` with
/// `deg n <= h` such that `n/d` is the `x` of a point.
///
/// With `a = A/B`, `x = n/d` is a point iff
/// `(n d^{P-1} + s n^P) B A^{P-1}` is a `P`-th power, i.e. has no coefficient
/// at exponents prime to `P`. That condition is `F_p`-linear in `n`.
struct KernelSolver {
    field: Arc<FqField>,
    s: i32,
    big_p: usize,
    c: Poly,
    basis: Vec<Fq>,
    basis_frob: Vec<Fq>,
    digits: Vec<Vec<u8>>,
    const_dim: usize,
}

impl KernelSolver {
    fn new(spec: &GroupSpec) -> Result<Self> {
        let (s, e) = shape(spec.kind)?;
        let field = spec.field.clone();
        let p = field.p();
        let big_p = (p as usize).pow(e);
        let a = &spec.a;
        let c = a.den().mul(&CommRing::pow(a.num(), (big_p - 1) as u64));
        let basis: Vec<Fq> = (0..field.m()).map(|k| Fq(p.pow(k))).collect();
        let basis_frob = basis.iter().map(|&b| field.pow(b, big_p as u64)).collect();
        let digits = (0..field.m() as usize)
            .map(|t| field.elements().map(|x| field.coeffs(x)[t] as u8).collect())
            .collect();
        // constants c with c + s c^P = 0
        let consts = field
            .elements()
            .filter(|&x| {
                let xp = field.pow(x, big_p as u64);
                (if s > 0 { field.add(x, xp) } else { field.sub(x, xp) }).is_zero()
            })
            .count();
        let const_dim = (consts as f64).log(p as f64).round() as usize;
        Ok(KernelSolver { field, s, big_p, c, basis, basis_frob, digits, const_dim })
    }

    /// Feeds the rows of the linear condition on the coordinates of `n` (one
    /// per exponent `< top` prime to `P` and per `F_p`-digit) into `ech`,
    /// where `ev` holds `d^{P-1} C` at least up to `top`. Stops early once
    /// the rank reaches `stop`.
    fn feed_rows(&self, ev: &[Fq], h: usize, top: usize, stop: usize, ech: &mut linalg::Echelon) -> bool {
        let f = &*self.field;
        let cv = self.c.coeffs();
        let m = self.basis.len();
        let nb = m * (h + 1);
        let mut vals = vec![Fq::ZERO; nb];
        let mut row = vec![0u32; nb];
        for ex in (1..top).filter(|ex| ex % self.big_p != 0) {
            for j in 0..=h {
                let e1 = ex.checked_sub(j).and_then(|i| ev.get(i)).copied().unwrap_or(Fq::ZERO);
                let e2 = ex.checked_sub(j * self.big_p).and_then(|i| cv.get(i)).copied().unwrap_or(Fq::ZERO);
                for k in 0..m {
                    let v = f.mul(self.basis[k], e1);
                    let w = f.mul(self.basis_frob[k], e2);
                    vals[j * m + k] = if self.s > 0 { f.add(v, w) } else { f.sub(v, w) };
                }
            }
            for t in 0..m {
                let dt = &self.digits[t];
                for (r, x) in row.iter_mut().zip(&vals) {
                    *r = dt[x.0 as usize] as u32;
                }
                if ech.insert_slice(&mut row) && ech.rank() == stop {
                    return true;
                }
            }
        }
        false
    }

    fn numerator(&self, h: usize, coords: &[u32]) -> Poly {
        let f = &*self.field;
        let m = self.basis.len();
        let mut c = vec![Fq::ZERO; h + 1];
        for j in 0..=h {
            for k in 0..m {
                for _ in 0..coords[j * m + k] {
                    c[j] = f.add(c[j], self.basis[k]);
                }
            }
        }
        Poly::new(&self.field, c)
    }

    /// Numerators beyond the constant multiples of `d`, or all of them when
    /// the constants do not account for the kernel.
    fn solutions(&self, d: &Poly, h: usize) -> Result<Vec<Poly>> {
        let p = self.field.p();
        let m = self.basis.len();
        let nb = m * (h + 1);
        let expected = if d.degree() as usize <= h { nb - self.const_dim } else { nb };
        let stop = if expected < nb { expected } else { usize::MAX };
        let mut ech = linalg::Echelon::new(p);
        // low coefficients usually settle the rank
        let c_low = self.c.coeffs().iter().position(|x| !x.is_zero()).unwrap_or(0);
        let k0 = c_low + 3 * (h + 1) + self.big_p;
        let mut ev = mul_trunc(&self.field, &pow_trunc(&self.field, d.coeffs(), self.big_p - 1, k0), self.c.coeffs(), k0);
        if self.feed_rows(&ev, h, k0, stop, &mut ech) {
            return Ok(Vec::new());
        }
        ev = CommRing::pow(d, (self.big_p - 1) as u64).mul(&self.c).coeffs().to_vec();
        let top = (ev.len() + h).max(self.c.coeffs().len() + self.big_p * h);
        ech.clear();
        if self.feed_rows(&ev, h, top, stop, &mut ech) {
            return Ok(Vec::new());
        }
        let ns = linalg::nullspace(p, ech.rows(), nb);
        if ns.len() > 24 {
            return Err(Error::SearchTooLarge(format!("kernel of dimension {}", ns.len())));
        }
        let total = (p as u64).pow(ns.len() as u32);
        let mut out = Vec::new();
        for mut idx in 0..total {
            let mut v = vec![0u32; nb];
            for b in &ns {
                let c = (idx % p as u64) as u32;
                idx /= p as u64;
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi) % p;
                }
            }
            out.push(self.numerator(h, &v));
        }
        Ok(out)
    }
}

fn mul_trunc(f: &FqField, a: &[Fq], b: &[Fq], k: usize) -> Vec<Fq> {
    let mut out = vec![Fq::ZERO; k.min((a.len() + b.len()).saturating_sub(1))];
    for (i, &x) in a.iter().enumerate().take(out.len()) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out.len() - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn pow_trunc(f: &FqField, a: &[Fq], e: usize, k: usize) -> Vec<Fq> {
    let mut acc = vec![Fq::ONE];
    for _ in 0..e {
        acc = mul_trunc(f, &acc, a, k);
    }
    acc
}

/// Every point whose `x` is `n/d` with `deg n, deg d <= h`, by scanning all
/// monic denominators. Independent of [`pole_bounds`].
pub fn brute_force_points(spec: &GroupSpec, h: usize) -> Result<Vec<GroupPoint<RatFn>>> {
    let solver = KernelSolver::new(spec)?;
    let field = &spec.field;
    let mut xs: BTreeSet<(Poly, Poly)> = BTreeSet::new();
    // constants are found with d = 1
    for c in field.elements() {
        let x = RatFn::constant(field, c);
        if solve_y(spec, &x).is_some() {
            xs.insert((x.den().clone(), x.num().clone()));
        }
    }
    // with a over F_p, coefficientwise Frobenius permutes the points, so one
    // denominator per orbit suffices
    let a = &spec.a;
    let galois = a.num().coeffs().iter().chain(a.den().coeffs()).all(|&c| field.in_prime_field(c));
    let conj = |f: &Poly| Poly::new(field, f.coeffs().iter().map(|&c| field.frob(c)).collect());
    for deg in 0..=h {
        for d in Poly::monics_of_degree(field, deg) {
            if galois {
                let mut c = conj(&d);
                let mut minimal = true;
                while c != d {
                    if c < d {
                        minimal = false;
                        break;
                    }
                    c = conj(&c);
                }
                if !minimal {
                    continue;
                }
            }
            for n in solver.solutions(&d, h)? {
                let x = RatFn::new(n, d.clone())?;
                let (mut num, mut den) = (x.num().clone(), x.den().clone());
                for _ in 0..field.m() {
                    xs.insert((den.clone(), num.clone()));
                    if !galois {
                        break;
                    }
                    num = conj(&num);
                    den = conj(&den);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (den, num) in xs {
        let x = RatFn::new(num, den)?;
        match point_of(spec, x) {
            Some(pt) => out.push(pt),
            None => return Err(Error::PreconditionViolated("kernel produced a non-point".into())),
        }
    }
    Ok(sort_points(out))
}
