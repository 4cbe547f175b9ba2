//! Factorization in `F_q[T]`: squarefree, distinct-degree, equal-degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Fq;
use crate::poly::Poly;
use crate::ring::CommRing;

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (g, mult) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    // merge equal factors coming from different squarefree parts
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, n)) if *h == g => *n += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

/// Distinct monic irreducible factors.
pub fn support(f: &Poly) -> Vec<Poly> {
    factor(f).into_iter().map(|(g, _)| g).collect()
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = prod g^m`, each `g` squarefree (not necessarily distinct `m`).
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.p();
    let mut out = Vec::new();
    if f.degree() < 1 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining factor is a pth power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.q() as u64;
    let t = Poly::t(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut d = 0;
    while rest.degree() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&t));
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree() > 0 {
        let dd = rest.degree() as usize;
        out.push((rest, dd));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
pub fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree() as usize;
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let seed = f.coeffs().iter().fold(0xC0FFEEu64, |acc, x| acc.wrapping_mul(31).wrapping_add(x.0 as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.q() as u64;
    loop {
        let a = Poly::new(&field, (0..n).map(|_| Fq(rng.gen_range(0..q) as u32)).collect());
        if a.degree() < 1 {
            continue;
        }
        let b = if field.p() == 2 {
            // absolute trace a + a^2 + ... + a^{2^{m d - 1}}
            let steps = field.m() as usize * d;
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, f);
                acc = acc.add(&cur);
            }
            acc
        } else {
            // a^{(q^d - 1)/(q - 1)} then ^((q-1)/2)
            let mut norm = a.rem(f);
            let mut cur = norm.clone();
            for _ in 1..d {
                cur = cur.pow_mod(q, f);
                norm = norm.mul_mod(&cur, f);
            }
            norm.pow_mod((q - 1) / 2, f).sub(&Poly::one(&field))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h, d));
            return out;
        }
    }
}

/// Roots in `F_q`, sorted.
pub fn roots(f: &Poly) -> Vec<Fq> {
    let field = f.field().clone();
    let mut r: Vec<Fq> = factor(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| field.neg(g.coeff(0)))
        .collect();
    r.sort();
    r
}
