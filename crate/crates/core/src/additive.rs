//! Additive polynomial maps on `k_v^r`, Newton solving, and the decision
//! procedure for membership in their images.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fq, FqField};
use crate::linalg::{dot, Span};
use crate::local::{check_local_place, LaurentLocal};
use crate::place::Place;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

/// `coeff * X_input^{p^frob}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub input: usize,
    pub coeff: RatFn,
    pub frob: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditiveMap {
    pub inputs: usize,
    pub terms: Vec<Monomial>,
}

/// The recognized shape `x + s x^{p^e} + a y^{p^e}`.
#[derive(Clone, Debug)]
pub struct TwoTermShape {
    pub s: Fq,
    pub e: u32,
    pub a: RatFn,
}

impl AdditiveMap {
    fn shape_map(a: &RatFn, s: i64, e: u32) -> Self {
        let f = a.field();
        let one = RatFn::one(f);
        AdditiveMap {
            inputs: 2,
            terms: vec![
                Monomial { input: 0, coeff: one.clone(), frob: 0 },
                Monomial { input: 0, coeff: one.scale(f.from_int(s)), frob: e },
                Monomial { input: 1, coeff: a.scale(f.from_int(s)), frob: e },
            ],
        }
    }

    /// `g(x, y) = x + x^p + a y^p`, whose kernel is `W_a`.
    pub fn g(a: &RatFn) -> Self {
        Self::shape_map(a, 1, 1)
    }

    /// `x - x^p - a y^p`, whose kernel is `W_a^+`.
    pub fn g_plus(a: &RatFn) -> Self {
        Self::shape_map(a, -1, 1)
    }

    /// `f(x, y) = x - x^{p^2} - a y^{p^2}`, whose kernel is `V_a`.
    pub fn f(a: &RatFn) -> Self {
        Self::shape_map(a, -1, 2)
    }

    /// `(x, y) -> x`.
    pub fn projection(field: &Arc<FqField>) -> Self {
        AdditiveMap { inputs: 2, terms: vec![Monomial { input: 0, coeff: RatFn::one(field), frob: 0 }] }
    }

    pub fn field(&self) -> &Arc<FqField> {
        self.terms[0].coeff.field()
    }

    pub fn shape(&self) -> Option<TwoTermShape> {
        if self.inputs != 2 || self.terms.len() != 3 {
            return None;
        }
        let f = self.field();
        let (t0, t1, t2) = (&self.terms[0], &self.terms[1], &self.terms[2]);
        let one = RatFn::one(f);
        let ok = t0.input == 0
            && t0.frob == 0
            && t0.coeff == one
            && t1.input == 0
            && t2.input == 1
            && t1.frob == t2.frob
            && t1.frob >= 1
            && t1.coeff.is_constant()
            && (t1.coeff == one || t1.coeff == one.neg());
        if !ok {
            return None;
        }
        let s = t1.coeff.num().coeff(0);
        let a = t2.coeff.scale(f.inv(s).unwrap());
        Some(TwoTermShape { s, e: t1.frob, a })
    }

    fn has_principal_part(&self) -> bool {
        let one = RatFn::one(self.field());
        self.terms.iter().any(|t| t.input == 0 && t.frob == 0 && t.coeff == one)
    }

    pub fn eval_global(&self, x: &[RatFn]) -> RatFn {
        let f = self.field();
        self.terms.iter().fold(RatFn::zero(f), |acc, t| {
            acc.add(&t.coeff.mul(&x[t.input].frobenius_iter(t.frob)))
        })
    }

    /// Evaluation on series, to precision `out_prec` (or less if inputs are short).
    pub fn eval_local(&self, x: &[LaurentLocal], out_prec: i64) -> Result<LaurentLocal> {
        let v = x[0].place().clone();
        let f = self.field().clone();
        let mut acc = LaurentLocal::exact_zero(&f, &v);
        for t in &self.terms {
            let xp = x[t.input].frobenius_iter(t.frob);
            if t.coeff.is_zero() {
                continue;
            }
            let val = xp.val_or_prec().min(out_prec);
            let c = LaurentLocal::expand(&t.coeff, &v, out_prec - val)?;
            acc = acc.add(&c.mul(&xp));
        }
        Ok(acc.with_prec(out_prec))
    }
}

/// Solves `g(x, 0) = t` for `ord t >= 1` by the iteration `x <- x + (t - g(x, 0))`.
pub fn newton_solve(g: &AdditiveMap, t: &LaurentLocal, prec: i64) -> Result<LaurentLocal> {
    let v = t.place().clone();
    let f = t.field().clone();
    if !g.has_principal_part() {
        return Err(Error::KindUnsupported("map has no principal part x".into()));
    }
    if t.val_or_prec() < 1 {
        return Err(Error::NoConvergence(format!("target has order {} < 1", t.val_or_prec())));
    }
    let one = RatFn::one(&f);
    for term in &g.terms {
        if term.input != 0 || (term.frob == 0 && term.coeff == one) || term.coeff.is_zero() {
            continue;
        }
        let oc = v.ord(&term.coeff)?;
        if oc + f.p().pow(term.frob) as i64 <= 1 {
            return Err(Error::NoConvergence(format!("term {:?} does not gain valuation", term)));
        }
    }
    let prec = prec.min(t.prec());
    let zero = LaurentLocal::exact_zero(&f, &v);
    let mut x = t.with_prec(prec);
    for _ in 0..(prec.max(1) + 4) {
        let r = t.sub(&g.eval_local(&[x.clone(), zero.clone()], prec)?).with_prec(prec);
        if r.is_zero() {
            return Ok(x);
        }
        x = x.add(&r);
    }
    Err(Error::NoConvergence("residual did not vanish".into()))
}

/// Valuation window `[low, high)`: codomain indices at or past `high` are quotiented out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub low: i64,
    pub high: i64,
}

impl Window {
    pub fn new(low: i64, high: i64) -> Result<Self> {
        if low >= high {
            return Err(Error::WindowInvalid(low, high));
        }
        Ok(Window { low, high })
    }

    /// `low = ord(lambda) - p deg(v) - |ord_v(a)| - 2`, `high = p(-low) + 1`.
    pub fn default_for(g: &AdditiveMap, v: &Place, ord_lambda: i64) -> Result<Self> {
        let p = g.field().p() as i64;
        let oa = match g.terms.iter().find(|t| t.input == 1 && !t.coeff.is_zero()) {
            Some(t) => v.ord(&t.coeff)?,
            None => 0,
        };
        let low = ord_lambda.min(0) - p * v.degree() as i64 - oa.abs() - 2;
        Window::new(low, p * (-low) + 1)
    }

    pub fn enlarged(&self, by: i64) -> Window {
        Window { low: self.low - by, high: self.high + by * 2 }
    }
}

/// Per-input valuation ranges `[lower_i, upper_i)` of the input lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Orders `(o1, o_alpha lower bound)` for the split `a = alpha^p + a1` at `v`,
/// where `alpha^p` collects the exponents divisible by `p`.
pub fn pth_power_split(a: &RatFn, v: &Place) -> Result<(i64, i64)> {
    let p = a.field().p() as i64;
    let oa = v.ord(a)?;
    let mut span = 64;
    loop {
        let e = LaurentLocal::expand(a, v, oa + span)?;
        let mut o1 = None;
        let mut oalpha = None;
        for i in e.support_range() {
            let c = e.coeff(i).unwrap();
            if c.is_zero() {
                continue;
            }
            if i.rem_euclid(p) == 0 {
                oalpha.get_or_insert(i / p);
            } else {
                o1.get_or_insert(i);
            }
        }
        if let Some(o1) = o1 {
            let oalpha = oalpha.unwrap_or_else(|| ceil_div(oa + span, p));
            return Ok((o1, oalpha));
        }
        if span > 4096 {
            return Err(Error::ParameterInKp(format!("{a} looks like a pth power at {v}")));
        }
        span *= 4;
    }
}

/// The finite model of `g` on a window: image span of the input lattice in
/// the codomain `[cod_low, high)` (coordinates: index-major, then `F_p` digit).
pub struct LocalImage {
    pub g: AdditiveMap,
    pub place: Place,
    pub window: Window,
    pub input_box: InputBox,
    pub cod_low: i64,
    /// True when the lattice provably contains every preimage of elements of order `>= low`.
    pub complete: bool,
    span: Span,
    basis: Vec<(usize, i64, u32)>,
}

impl LocalImage {
    pub fn build(g: &AdditiveMap, v: &Place, window: Window) -> Result<Self> {
        check_local_place(v)?;
        let (l, h) = (window.low, window.high);
        if l >= h || h < 1 {
            return Err(Error::WindowInvalid(l, h));
        }
        if !g.has_principal_part() {
            return Err(Error::KindUnsupported("map has no principal part x".into()));
        }
        let field = g.field().clone();
        let p = field.p() as i64;
        let (input_box, complete) = Self::input_box(g, v, window)?;
        let mut cod_low = l;
        for t in &g.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let lo = v.ord(&t.coeff)? + p.pow(t.frob) * input_box.lower[t.input];
            cod_low = cod_low.min(lo);
        }
        let m = field.m() as usize;
        let dim = (h - cod_low) as usize * m;
        let mut span = Span::new(p as u32, dim);
        let mut basis = Vec::new();
        let coeff_exp: Vec<LaurentLocal> = g
            .terms
            .iter()
            .map(|t| {
                let need = h - p.pow(t.frob) * input_box.lower[t.input];
                LaurentLocal::expand(&t.coeff, v, need)
            })
            .collect::<Result<_>>()?;
        for i in 0..g.inputs {
            for j in input_box.lower[i]..input_box.upper[i] {
                for d in 0..m as u32 {
                    let c = Fq(field.p().pow(d));
                    let mono = LaurentLocal::monomial(&field, v, c, j);
                    let mut img = LaurentLocal::exact_zero(&field, v);
                    for (t, ce) in g.terms.iter().zip(&coeff_exp) {
                        if t.input == i {
                            img = img.add(&ce.mul(&mono.frobenius_iter(t.frob)));
                        }
                    }
                    let vec = vectorize(&img.with_prec(h), cod_low, h, &field)
                        .expect("basis image lies in the codomain");
                    span.insert(&vec);
                    basis.push((i, j, d));
                }
            }
        }
        Ok(LocalImage { g: g.clone(), place: v.clone(), window, input_box, cod_low, complete, span, basis })
    }

    /// Input lattice for a window. For `x + s x^p + a y^p` the box is
    /// `ord x >= min(L, xc)`, `ord y >= min(ceil((L - o1)/p), xc - o_alpha)` with
    /// `xc = ceil((p o_alpha - o1)/(p - 1))`; every preimage of an element of
    /// order `>= L` lies in it. Other maps get the box whose monomial images
    /// land at or above `L` (sound for membership only).
    pub fn input_box(g: &AdditiveMap, v: &Place, w: Window) -> Result<(InputBox, bool)> {
        let p = g.field().p() as i64;
        let (l, h) = (w.low, w.high);
        let mut upper = vec![i64::MIN; g.inputs];
        let mut naive = vec![i64::MIN; g.inputs];
        for t in &g.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let oc = v.ord(&t.coeff)?;
            let q = p.pow(t.frob);
            upper[t.input] = upper[t.input].max(ceil_div(h - oc, q));
            naive[t.input] = naive[t.input].max(ceil_div(l - oc, q));
        }
        for i in 0..g.inputs {
            if upper[i] == i64::MIN {
                upper[i] = 0;
                naive[i] = 0;
            }
        }
        if let Some(shape) = g.shape().filter(|s| s.e == 1) {
            let (o1, oalpha) = pth_power_split(&shape.a, v)?;
            let xc = ceil_div(p * oalpha - o1, p - 1);
            let lower = vec![l.min(xc), ceil_div(l - o1, p).min(xc - oalpha)];
            let lower: Vec<i64> = lower.iter().zip(&upper).map(|(&lo, &up)| lo.min(up)).collect();
            return Ok((InputBox { lower, upper }, true));
        }
        let lower = naive.iter().zip(&upper).map(|(&lo, &up)| lo.min(up)).collect();
        Ok((InputBox { lower, upper }, false))
    }

    pub fn codomain_dim(&self) -> usize {
        self.span.ambient()
    }

    pub fn image_dim(&self) -> usize {
        self.span.dim()
    }

    /// Input lattice basis as `(input, index, digit)`; the element is `z^digit u^index`.
    pub fn basis(&self) -> &[(usize, i64, u32)] {
        &self.basis
    }

    pub fn vectorize(&self, x: &LaurentLocal) -> Option<Vec<u32>> {
        vectorize(x, self.cod_low, self.window.high, self.g.field())
    }

    pub fn decide(&self, lambda: &LaurentLocal) -> Result<Decision> {
        let (l, h) = (self.window.low, self.window.high);
        if lambda.place() != &self.place {
            return Err(Error::InvalidPlace(format!("{} vs {}", lambda.place(), self.place)));
        }
        if lambda.prec() < h {
            return Ok(Decision::Inconclusive {
                reason: format!("lambda known to precision {} < {h}", lambda.prec()),
            });
        }
        let field = self.g.field().clone();
        let Some(vec) = self.vectorize(lambda) else {
            return Ok(Decision::Inconclusive {
                reason: format!("lambda has order {} below the codomain", lambda.val_or_prec()),
            });
        };
        if let Some(comb) = self.span.solve(&vec) {
            let mut xs: Vec<LaurentLocal> = (0..self.g.inputs).map(|_| LaurentLocal::exact_zero(&field, &self.place)).collect();
            for (&(i, j, d), &cf) in self.basis.iter().zip(&comb) {
                if cf != 0 {
                    let c = field.mul(Fq(field.p().pow(d)), field.from_int(cf as i64));
                    xs[i] = xs[i].add(&LaurentLocal::monomial(&field, &self.place, c, j));
                }
            }
            // push the residual (order >= high >= 1) into x
            let prec = lambda.prec().min(h.max(1) * 4 + 16);
            let r = lambda.sub(&self.g.eval_local(&xs, prec)?).with_prec(prec);
            if !r.is_zero() {
                let dx = newton_solve(&self.g, &r, prec)?;
                xs[0] = xs[0].add(&dx);
            }
            let y = xs.pop().unwrap();
            let x = xs.pop().unwrap();
            return Ok(Decision::Member { x, y });
        }
        if self.complete && lambda.val_or_prec() >= l {
            let phi = self.span.separating_functional(&vec).unwrap();
            return Ok(Decision::NonMember(self.certificate(phi)));
        }
        Ok(Decision::Inconclusive {
            reason: if self.complete {
                format!("lambda has order {} < window low {l}", lambda.val_or_prec())
            } else {
                "input lattice is not known to be complete for this map".into()
            },
        })
    }

    fn certificate(&self, phi: Vec<u32>) -> NonMemberCert {
        let m = self.g.field().m() as usize;
        let functional = phi
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| FunctionalEntry { index: self.cod_low + (k / m) as i64, digit: (k % m) as u32, value: x })
            .collect();
        NonMemberCert {
            place: self.place.to_text(),
            window: self.window,
            input_box: self.input_box.clone(),
            cod_low: self.cod_low,
            functional,
        }
    }

    /// First codomain monomial of order in `[low, high)` outside the image.
    pub fn first_nonmember(&self) -> Option<(LaurentLocal, NonMemberCert)> {
        if !self.complete {
            return None;
        }
        let field = self.g.field().clone();
        let m = field.m() as usize;
        for j in self.window.low..self.window.high {
            for d in 0..m as u32 {
                let mu = LaurentLocal::monomial(&field, &self.place, Fq(field.p().pow(d)), j);
                let vec = self.vectorize(&mu).unwrap();
                if let Some(phi) = self.span.separating_functional(&vec) {
                    return Some((mu, self.certificate(phi)));
                }
            }
        }
        None
    }
}

fn vectorize(x: &LaurentLocal, low: i64, high: i64, field: &FqField) -> Option<Vec<u32>> {
    let m = field.m() as usize;
    let mut out = vec![0u32; (high - low) as usize * m];
    for i in x.support_range() {
        if i >= high {
            break;
        }
        let c = x.coeff(i)?;
        if c.is_zero() {
            continue;
        }
        if i < low {
            return None;
        }
        let digits = field.coeffs(c);
        for (d, &cd) in digits.iter().enumerate() {
            out[(i - low) as usize * m + d] = cd;
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEntry {
    pub index: i64,
    pub digit: u32,
    pub value: u32,
}

/// An `F_p`-linear functional on codomain coefficients that vanishes on the
/// image of the input lattice and not on the tested element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMemberCert {
    pub place: String,
    pub window: Window,
    pub input_box: InputBox,
    pub cod_low: i64,
    pub functional: Vec<FunctionalEntry>,
}

impl NonMemberCert {
    /// `phi(x)`; `None` if `x` is not known to the window's precision.
    pub fn evaluate(&self, x: &LaurentLocal) -> Option<u32> {
        let field = x.field();
        let p = field.p();
        let mut acc = 0u64;
        for e in &self.functional {
            let c = x.coeff(e.index)?;
            let digit = field.coeffs(c)[e.digit as usize];
            acc += digit as u64 * e.value as u64;
        }
        Some((acc % p as u64) as u32)
    }
}

#[derive(Clone, Debug)]
pub enum Decision {
    Member { x: LaurentLocal, y: LaurentLocal },
    NonMember(NonMemberCert),
    Inconclusive { reason: String },
}

impl Decision {
    pub fn is_member(&self) -> bool {
        matches!(self, Decision::Member { .. })
    }
    pub fn is_non_member(&self) -> bool {
        matches!(self, Decision::NonMember(_))
    }
    pub fn verdict(&self) -> &'static str {
        match self {
            Decision::Member { .. } => "member",
            Decision::NonMember(_) => "non_member",
            Decision::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Decides `lambda in g(k_v^2)` on a window (default window if `None`).
pub fn image_member(g: &AdditiveMap, lambda: &LaurentLocal, window: Option<Window>) -> Result<Decision> {
    let v = lambda.place().clone();
    let w = match window {
        Some(w) => w,
        None => Window::default_for(g, &v, lambda.val_or_prec())?,
    };
    if w.low >= w.high {
        return Err(Error::WindowInvalid(w.low, w.high));
    }
    LocalImage::build(g, &v, w)?.decide(lambda)
}

/// Some `mu` with `mu not in g(k_v^2)`, with its certificate.
pub fn local_nontrivial_witness(
    g: &AdditiveMap,
    v: &Place,
    window: Option<Window>,
) -> Result<(LaurentLocal, NonMemberCert)> {
    let w = match window {
        Some(w) => w,
        None => Window::default_for(g, v, 0)?,
    };
    let img = LocalImage::build(g, v, w)?;
    img.first_nonmember().ok_or(Error::NotFound(w.low, w.high))
}

/// Checks that `phi` vanishes on `g(x, y)` for the given inputs.
pub fn functional_kills(cert: &NonMemberCert, g: &AdditiveMap, x: &LaurentLocal, y: &LaurentLocal) -> Result<bool> {
    let val = g.eval_local(&[x.clone(), y.clone()], cert.window.high)?;
    Ok(cert.evaluate(&val) == Some(0))
}

/// Dot product helper re-exported for oracles.
pub fn fp_dot(p: u32, a: &[u32], b: &[u32]) -> u32 {
    dot(p, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(p: u32, m: u32, place: &str) -> (Arc<FqField>, RatFn, Place) {
        let f = FqField::new(p, m).unwrap();
        let a = RatFn::parse(&f, "T*(T-1)").unwrap();
        let v = Place::parse(&f, place).unwrap();
        (f, a, v)
    }

    #[test]
    fn newton_telescopes() {
        let (f, _, v) = setup(3, 1, "T");
        let id_plus = AdditiveMap {
            inputs: 2,
            terms: vec![
                Monomial { input: 0, coeff: RatFn::one(&f), frob: 0 },
                Monomial { input: 0, coeff: RatFn::one(&f), frob: 1 },
            ],
        };
        let t = LaurentLocal::monomial(&f, &v, Fq::ONE, 1);
        let x = newton_solve(&id_plus, &t, 20).unwrap();
        // pi - pi^3 + pi^9 - ...
        assert_eq!(x.coeff(1), Some(Fq::ONE));
        assert_eq!(x.coeff(3), Some(f.from_int(-1)));
        assert_eq!(x.coeff(9), Some(Fq::ONE));
        assert_eq!(x.coeff(2), Some(Fq::ZERO));
        let zero = LaurentLocal::exact_zero(&f, &v);
        let back = id_plus.eval_local(&[x, zero.clone()], 20).unwrap();
        assert_eq!(back, t.with_prec(20));
        assert!(newton_solve(&id_plus, &zero.with_prec(10), 10).unwrap().is_zero());
    }

    #[test]
    fn high_order_targets_are_members() {
        let (f, a, v) = setup(3, 2, "T");
        let g = AdditiveMap::g(&a);
        let lam = LaurentLocal::expand(&RatFn::parse(&f, "T^2/(T+1)").unwrap(), &v, 30).unwrap();
        let d = image_member(&g, &lam, None).unwrap();
        let Decision::Member { x, y } = d else { panic!("expected member, got {d:?}") };
        assert_eq!(g.eval_local(&[x, y], 30).unwrap(), lam);
    }

    #[test]
    fn witness_certificates_kill_random_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, m, pl) in [(3, 2, "T"), (2, 2, "T-1"), (2, 1, "inf"), (3, 2, "inf")] {
            let (f, a, v) = setup(p, m, pl);
            let g = AdditiveMap::g(&a);
            let (mu, cert) = local_nontrivial_witness(&g, &v, None).unwrap();
            assert_ne!(cert.evaluate(&mu.with_prec(cert.window.high)), Some(0));
            assert!(image_member(&g, &mu, Some(cert.window)).unwrap().is_non_member());
            let q = f.q();
            for _ in 0..100 {
                let mut rand_series = |lo: i64, hi: i64| {
                    let c: Vec<Fq> = (lo..hi).map(|_| Fq(rng.gen_range(0..q))).collect();
                    LaurentLocal::new(&f, &v, lo, crate::local::EXACT, c)
                };
                let x = rand_series(cert.input_box.lower[0], cert.input_box.upper[0]);
                let y = rand_series(cert.input_box.lower[1], cert.input_box.upper[1]);
                assert!(functional_kills(&cert, &g, &x, &y).unwrap());
            }
        }
    }

    #[test]
    fn projection_is_onto() {
        let (f, _, v) = setup(3, 2, "T");
        let g = AdditiveMap::projection(&f);
        for w in [Window::new(-2, 3).unwrap(), Window::new(-6, 19).unwrap()] {
            assert!(matches!(local_nontrivial_witness(&g, &v, Some(w)), Err(Error::NotFound(_, _))));
        }
    }

    #[test]
    fn invalid_windows() {
        let (f, a, v) = setup(3, 2, "T");
        let g = AdditiveMap::g(&a);
        let lam = LaurentLocal::monomial(&f, &v, Fq::ONE, -1);
        assert_eq!(Window::new(3, 3), Err(Error::WindowInvalid(3, 3)));
        assert!(matches!(image_member(&g, &lam, Some(Window { low: 4, high: 2 })), Err(Error::WindowInvalid(4, 2))));
    }
}
