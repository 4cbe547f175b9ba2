//! Tamagawa numbers of the family `Y^p = X + b X^p` over `P^1`, and the
//! resulting discrepancy report for the extensions `U`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{make_group, GroupKind, GroupSpec};
use crate::place::Place;
use crate::points::enumerate_points;
use crate::ratfn::RatFn;
use crate::ring::CommRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Assumption {
    /// `Sha(W) = 0`, used but not recomputed.
    #[serde(rename = "ShaW_trivial")]
    ShaWTrivial,
}

impl Assumption {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ShaW_trivial" => Ok(Assumption::ShaWTrivial),
            _ => Err(Error::Parse(format!("unknown assumption {s:?}"))),
        }
    }
}

/// `W` rewritten as `Y^p = X + b X^p` through `X = -x/a`, `Y = y`.
#[derive(Clone, Debug)]
pub struct NormalizedW {
    pub b: RatFn,
    /// `b` as a power of `a`, e.g. `"(T^2+2*T)^2"`.
    pub b_text: String,
}

impl NormalizedW {
    /// `(X, Y)` for a point `(x, y)` of `W`.
    pub fn forward(&self, a: &RatFn, x: &RatFn, y: &RatFn) -> Result<(RatFn, RatFn)> {
        Ok((x.div(a)?.neg(), y.clone()))
    }

    /// `Y^p - X - b X^p`.
    pub fn equation(&self, x: &RatFn, y: &RatFn) -> RatFn {
        y.frobenius().sub(x).sub(&self.b.mul(&x.frobenius()))
    }
}

pub fn normalize_w(spec: &GroupSpec) -> Result<NormalizedW> {
    if spec.kind != GroupKind::W {
        return Err(Error::KindUnsupported(format!("normalization is for W, not {}", spec.kind)));
    }
    let e = spec.p() as i64 - 1;
    let b = spec.a.powi(e)?;
    let b_text = if e == 1 { spec.a.to_string() } else { format!("({})^{e}", spec.a) };
    Ok(NormalizedW { b, b_text })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRow {
    pub place: String,
    pub degree: usize,
    pub ord_db: i64,
    pub floor: i64,
}

/// `N = sum_v floor(ord_v(db) / (p(p-1))) deg(v)` with its per-place table.
pub fn compute_n(b: &RatFn) -> Result<(i64, Vec<NRow>)> {
    let p = b.field().p() as i64;
    let mut rows = Vec::new();
    let mut n = 0;
    for v in Place::differential_support(b)? {
        let ord_db = v.ord_differential(b)?;
        let floor = ord_db.div_euclid(p * (p - 1));
        n += floor * v.degree() as i64;
        rows.push(NRow { place: v.to_text(), degree: v.degree(), ord_db, floor });
    }
    Ok((n, rows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPlace {
    pub place: String,
    pub ord_db: i64,
    pub m: i64,
    pub residue: String,
    pub is_pminus1_power: bool,
}

/// Places with `ord_v(db) + 1 = m(p-1)` whose leading coefficient is a
/// `(p-1)`st power in `k(v)`; `l` counts the latter.
pub fn compute_l(b: &RatFn) -> Result<(i64, Vec<LPlace>)> {
    let f = b.field();
    let p = f.p() as i64;
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic("p = 2: every place qualifies".into()));
    }
    let mut out = Vec::new();
    for v in Place::differential_support(b)? {
        let ord_db = v.ord_differential(b)?;
        if (ord_db + 1).rem_euclid(p - 1) != 0 {
            continue;
        }
        let m = (ord_db + 1) / (p - 1);
        if m.rem_euclid(p) == 0 {
            return Err(Error::PreconditionViolated(format!("m = {m} at {v} is divisible by p")));
        }
        let r = v.diff_ratio(b, m)?;
        let verdict = v.residue_field(f).is_pminus1_power(&r);
        out.push(LPlace { place: v.to_text(), ord_db, m, residue: r.to_string(), is_pminus1_power: verdict });
    }
    let l = out.iter().filter(|x| x.is_pminus1_power).count() as i64;
    Ok((l, out))
}

/// The `l`-verdict at `v` recomputed with the uniformizer `pi (1 + pi)`.
pub fn l_verdict_with_unit(b: &RatFn, v: &Place) -> Result<(bool, bool)> {
    let f = b.field();
    let p = f.p() as i64;
    let m = (v.ord_differential(b)? + 1) / (p - 1);
    let pi = v.uniformizer(f);
    let pi2 = pi.mul(&RatFn::one(f).add(&pi));
    let rf = v.residue_field(f);
    Ok((rf.is_pminus1_power(&v.diff_ratio(b, m)?), rf.is_pminus1_power(&v.diff_ratio_with(b, m, &pi2)?)))
}

pub fn ratio_text(r: &Ratio<i128>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `"9"` for integers, `"1/3"` otherwise.
pub fn ratio_display(r: &Ratio<i128>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        ratio_text(r)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TamagawaReport {
    pub p: u32,
    pub q: u32,
    pub a: String,
    pub b: String,
    #[serde(rename = "N")]
    pub n: i64,
    pub l: i64,
    #[serde(rename = "NTable")]
    pub n_table: Vec<NRow>,
    #[serde(rename = "lPlaces")]
    pub l_places: Vec<LPlace>,
    #[serde(rename = "pointCount")]
    pub point_count: usize,
    pub genus: i64,
    pub tau: String,
    pub assumptions: Vec<Assumption>,
}

impl TamagawaReport {
    pub fn tau(&self) -> Ratio<i128> {
        tau_formula(self.p, self.q, self.genus, self.n, self.l, self.point_count)
    }
}

/// `q^{1-g+N} p^l / #W(k)`.
pub fn tau_formula(p: u32, q: u32, genus: i64, n: i64, l: i64, points: usize) -> Ratio<i128> {
    let p = p as i128;
    let e = 1 - genus + n;
    let qpow = Ratio::from_integer(q as i128);
    let qe = if e >= 0 { qpow.pow(e as i32) } else { qpow.recip().pow((-e) as i32) };
    qe * Ratio::from_integer(p.pow(l as u32)) / Ratio::from_integer(points as i128)
}

pub fn tamagawa_number(spec: &GroupSpec, assumptions: &[Assumption]) -> Result<TamagawaReport> {
    let norm = normalize_w(spec)?;
    let points = enumerate_points(spec)?;
    let (n, n_table) = compute_n(&norm.b)?;
    let (l, l_places) = compute_l(&norm.b)?;
    let mut r = TamagawaReport {
        p: spec.p(),
        q: spec.q(),
        a: spec.a.to_string(),
        b: norm.b_text,
        n,
        l,
        n_table,
        l_places,
        point_count: points.len(),
        genus: 0,
        tau: String::new(),
        assumptions: assumptions.to_vec(),
    };
    r.tau = ratio_display(&r.tau());
    Ok(r)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub group: String,
    pub tau_w: String,
    /// `#Ext^1(W, G_m) = tau(W) #Sha(W)`, known exactly only under `ShaW_trivial`.
    pub discrepancy_factor: Option<String>,
    pub discrepancy_lower_bound: String,
    /// Expected `Ext^1(W, G_m) = (Z/p)^2`.
    pub ext1_w_expected: String,
    pub ext1_w_consistent: Option<bool>,
    pub relation: String,
    pub verdict: String,
    pub assumptions: Vec<Assumption>,
}

/// The report's verdict for a given `tau(W)`.
pub fn discrepancy_verdict(tau_w: &Ratio<i128>) -> &'static str {
    if *tau_w == Ratio::from_integer(1) {
        "no counterexample detected"
    } else {
        "counterexample: tau(U) differs from #Ext^1(U, G_m) / #Sha(U)"
    }
}

pub fn counterexample_report(spec: &GroupSpec, assumptions: &[Assumption]) -> Result<CounterexampleReport> {
    if !spec.kind.is_extension() {
        return Err(Error::KindUnsupported(format!("report is for U-kinds, not {}", spec.kind)));
    }
    let p = spec.p();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic("no quantitative report for p = 2".into()));
    }
    let w = make_group(GroupKind::W, &spec.field, &spec.a)?;
    let tw = tamagawa_number(&w, assumptions)?;
    let tau = tw.tau();
    let sha_trivial = assumptions.contains(&Assumption::ShaWTrivial);
    let ext_order = Ratio::from_integer((p as i128) * (p as i128));
    Ok(CounterexampleReport {
        group: spec.to_text(),
        tau_w: ratio_display(&tau),
        discrepancy_factor: sha_trivial.then(|| ratio_display(&tau)),
        discrepancy_lower_bound: ratio_display(&tau),
        ext1_w_expected: format!("(Z/{p})^2"),
        ext1_w_consistent: sha_trivial.then_some(tau == ext_order),
        relation: "tau(U) = tau(W) * tau(V)".into(),
        verdict: discrepancy_verdict(&tau).into(),
        assumptions: assumptions.to_vec(),
    })
}
