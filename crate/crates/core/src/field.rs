//! Finite fields `F_q`, `q = p^m`, in log/exp-table representation.
//!
//! An element is stored as its coefficient vector over `F_p` with respect to
//! the power basis `1, z, ..., z^{m-1}` of `F_p[z]/(modulus)`, packed into a
//! single integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The modulus is the
//! lexicographically smallest monic irreducible polynomial of degree `m`, so
//! every rendering of an element is reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u32 = 1024;

/// Packed element of some [`FqField`]. Meaningless without its field.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FqField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus over `F_p`, low to high, length `m + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqField({})", self.descriptor())
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FqField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial helpers over `F_p` used only while building a field.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut r: Vec<u32> = r.into_iter().map(|x| x as u32).collect();
        rem(&mut r, m, p);
        r
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        pow(a, p - 2, p)
    }

    pub fn pow(a: u32, mut e: u32, p: u32) -> u32 {
        let (mut b, mut r) = (a as u64 % p as u64, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// In-place remainder modulo a nonzero polynomial.
    pub fn rem(a: &mut Vec<u32>, m: &[u32], p: u32) {
        trim(a);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p) as u64;
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] as u64 * lc_inv % p as u64;
            if c != 0 {
                for i in 0..=dm {
                    let s = top - dm + i;
                    a[s] = ((a[s] as u64 + (p as u64 - c) * m[i] as u64) % p as u64) as u32;
                }
            }
            trim(a);
        }
    }

    pub fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            rem(&mut a, &b, p);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut r: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    /// Ben-Or irreducibility test for a monic polynomial of degree `m >= 1`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=m / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u32];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let g = gcd(f.to_vec(), sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FqField {
    /// Builds `F_{p^m}` with the lexicographically smallest irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Arc<FqField>> {
        if !is_prime(p as u64) || m == 0 {
            return Err(Error::InvalidField(format!("p={p}, m={m}")));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or_else(|| Error::InvalidField(format!("p^m too large: {p}^{m}")))?;
        for n in 0..q {
            let mut f = digits(n, p, m as usize);
            f.push(1);
            if m == 1 || (f[0] != 0 && fp_poly::is_irreducible(&f, p)) {
                return Self::with_modulus(p, f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Builds the field for a field order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Arc<FqField>> {
        for p in 2..=q {
            if q % p == 0 {
                let (mut r, mut m) = (q, 0);
                while r % p == 0 {
                    r /= p;
                    m += 1;
                }
                if r != 1 || !is_prime(p) {
                    break;
                }
                return Self::new(p as u32, m);
            }
        }
        Err(Error::InvalidField(format!("q={q} is not a prime power")))
    }

    /// Builds the field from an explicit monic modulus (low to high).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Arc<FqField>> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("p={p} is not prime")));
        }
        let m = modulus.len().saturating_sub(1) as u32;
        if m == 0 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic over F_p".into()));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let q = (p as u64).pow(m);
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("field order {q} too large")));
        }
        let q = q as u32;
        let mut field = FqField {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) {
        let (p, m, q) = (self.p, self.m as usize, self.q);
        self.neg = (0..q)
            .map(|x| {
                let d = digits(x as u64, p, m);
                pack(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
            })
            .collect();
        // Find a primitive element by brute force on multiplicative orders.
        let order = q - 1;
        let prime_factors: Vec<u32> = (2..=order).filter(|&d| order % d == 0 && is_prime(d as u64)).collect();
        let mul_packed = |a: u32, b: u32| -> u32 {
            let r = fp_poly::mul_mod(&digits(a as u64, p, m), &digits(b as u64, p, m), &self.modulus, p);
            pack(&r, p)
        };
        let pow_packed = |a: u32, mut e: u32| -> u32 {
            let (mut b, mut r) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    r = mul_packed(r, b);
                }
                b = mul_packed(b, b);
                e >>= 1;
            }
            r
        };
        let gen = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| prime_factors.iter().all(|&l| pow_packed(g, order / l) != 1))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur;
            log[cur as usize] = i as u32;
            cur = mul_packed(cur, gen);
        }
        self.exp = exp;
        self.log = log;
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_digitwise(a, b);
                }
            }
            self.add_table = Some(t);
        }
    }

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let (mut r, mut scale) = (0u32, 1u32);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        r
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => Fq(t[(a.0 * self.q + b.0) as usize]),
            None => Fq(self.add_digitwise(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        let o = self.q - 1;
        Fq(self.exp[(if s >= o { s - o } else { s }) as usize])
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(Fq(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        let o = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fq(self.exp[((l * (e % o)) % o) as usize])
    }

    /// Frobenius `x -> x^p`.
    pub fn frob(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// The unique `y` with `y^p = x`; `F_q` is perfect so this always exists.
    pub fn pth_root(&self, x: Fq) -> Fq {
        // y = x^{p^{m-1}}
        self.pow(x, (self.p as u64).pow(self.m - 1))
    }

    /// The unique `y` with `y^{p^e} = x`.
    pub fn pth_root_iter(&self, x: Fq, e: u32) -> Fq {
        (0..e).fold(x, |y, _| self.pth_root(y))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `z` (the modulus' root) in `F_p[z]/(modulus)`.
    pub fn generator(&self) -> Fq {
        if self.m == 1 {
            // F_p: the "generator" is just 1 for parsing purposes.
            Fq::ONE
        } else {
            Fq(self.p)
        }
    }

    /// Multiplicative generator used for the log tables.
    pub fn primitive_element(&self) -> Fq {
        if self.q == 2 {
            Fq::ONE
        } else {
            Fq(self.exp[1])
        }
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.m as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fq {
        Fq(pack(c, self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// True iff `x` lies in the prime field.
    pub fn in_prime_field(&self, x: Fq) -> bool {
        x.0 < self.p
    }

    /// Whether `x` is a `(p-1)`st power in this field.
    pub fn is_pminus1_power(&self, x: Fq) -> bool {
        x.is_zero() || self.pow(x, ((self.q - 1) / (self.p - 1)) as u64) == Fq::ONE
    }

    /// Whether `F_{p^d}` embeds, i.e. `d | m`.
    pub fn contains_subfield(&self, d: u32) -> bool {
        self.m % d == 0
    }

    /// `zeta` with `zeta^2 + zeta + 1 = 0` when `p = 2`; an element of
    /// `F_{p^2} - F_p` otherwise. Deterministic: the smallest packed root.
    pub fn find_zeta(&self) -> Result<Fq> {
        if !self.contains_subfield(2) {
            return Err(Error::NotPresent(format!(
                "F_{}^2 is not contained in F_{}",
                self.p, self.q
            )));
        }
        if self.p == 2 {
            let z = self
                .elements()
                .find(|&z| self.add(self.add(self.mul(z, z), z), Fq::ONE).is_zero())
                .expect("F_4 embeds");
            return Ok(z);
        }
        // Elements of F_{p^2}: fixed by x -> x^{p^2}. Pick the smallest outside F_p.
        let p2 = (self.p as u64).pow(2);
        Ok(self
            .elements()
            .find(|&z| !self.in_prime_field(z) && self.pow(z, p2) == z)
            .expect("F_{p^2} embeds"))
    }

    /// Descriptor `p^m:modulus-coeffs` with modulus coefficients high to low.
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("{}^{}:{}", self.p, self.m, coeffs.join(","))
    }

    pub fn from_descriptor(s: &str) -> Result<Arc<FqField>> {
        let bad = || Error::Parse(format!("bad field descriptor {s:?}"));
        let (pm, modulus) = s.split_once(':').ok_or_else(bad)?;
        let (p, m) = pm.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let mut coeffs = modulus
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        coeffs.reverse();
        if coeffs.len() != m as usize + 1 {
            return Err(bad());
        }
        Self::with_modulus(p, coeffs)
    }

    /// Text form `c_{m-1},...,c_0`.
    pub fn elem_to_string(&self, a: Fq) -> String {
        let c: Vec<String> = self.coeffs(a).iter().rev().map(|c| c.to_string()).collect();
        c.join(",")
    }

    pub fn elem_from_string(&self, s: &str) -> Result<Fq> {
        let mut c = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&c| c < self.p)
                    .ok_or_else(|| Error::Parse(format!("bad element {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if c.len() != self.m as usize {
            return Err(Error::Parse(format!("element {s:?} needs {} coefficients", self.m)));
        }
        c.reverse();
        Ok(self.from_coeffs(&c))
    }

    /// Renders an element as a polynomial in the generator `z`, e.g. `2*z+1`.
    pub fn elem_to_expr(&self, a: Fq) -> String {
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{ci}*z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{ci}*z^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn digits(mut n: u64, p: u32, m: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(m);
    for _ in 0..m {
        d.push((n % p as u64) as u32);
        n /= p as u64;
    }
    d
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

/// Context-carrying field element, used where a standalone ring element is
/// needed (e.g. as the base ring of a quotient algebra).
#[derive(Clone)]
pub struct FqElem {
    pub field: Arc<FqField>,
    pub v: Fq,
}

impl FqElem {
    pub fn new(field: &Arc<FqField>, v: Fq) -> Self {
        FqElem { field: field.clone(), v }
    }

    pub fn pth_root(&self) -> FqElem {
        FqElem::new(&self.field, self.field.pth_root(self.v))
    }

    pub fn is_pminus1_power(&self) -> bool {
        self.field.is_pminus1_power(self.v)
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.elem_to_expr(self.v))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.elem_to_expr(self.v))
    }
}
