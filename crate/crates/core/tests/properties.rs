use std::sync::Arc;

use proptest::prelude::*;
use wound_core::cohomology::delta_additivity;
use wound_core::field::{Fq, FqField};
use wound_core::groups::{g_map, make_group, GroupKind, GroupPoint};
use wound_core::place::Place;
use wound_core::poly::Poly;
use wound_core::ratfn::RatFn;
use wound_core::ring::CommRing;

fn f9() -> Arc<FqField> {
    FqField::new(3, 2).unwrap()
}

fn poly(f: &Arc<FqField>, c: &[u32]) -> Poly {
    Poly::new(f, c.iter().map(|&x| Fq(x % f.q())).collect())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..9, 0..max_len)
}

fn nonzero_coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    coeffs(max_len).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

fn ratfn(f: &Arc<FqField>, n: &[u32], d: &[u32]) -> RatFn {
    RatFn::new(poly(f, n), poly(f, d)).unwrap()
}

proptest! {
    #[test]
    fn division_with_remainder(a in coeffs(12), d in nonzero_coeffs(6)) {
        let f = f9();
        let (a, d) = (poly(&f, &a), poly(&f, &d));
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.degree() < d.degree());
    }

    #[test]
    fn ratfn_text_round_trip(n in coeffs(6), d in nonzero_coeffs(5)) {
        let f = f9();
        let x = ratfn(&f, &n, &d);
        prop_assert_eq!(RatFn::parse(&f, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn ratfn_field_laws(n1 in coeffs(5), d1 in nonzero_coeffs(4), n2 in nonzero_coeffs(5), d2 in nonzero_coeffs(4)) {
        let f = f9();
        let (x, y) = (ratfn(&f, &n1, &d1), ratfn(&f, &n2, &d2));
        prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x.clone());
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        prop_assert_eq!(x.add(&y).frobenius(), x.frobenius().add(&y.frobenius()));
    }

    #[test]
    fn valuations_are_additive(n1 in nonzero_coeffs(5), d1 in nonzero_coeffs(4), n2 in nonzero_coeffs(5), c in 0u32..9) {
        let f = f9();
        let (x, y) = (ratfn(&f, &n1, &d1), ratfn(&f, &n2, &[1]));
        for v in [Place::at(&f, Fq(c)), Place::Infinity] {
            prop_assert_eq!(v.ord(&x.mul(&y)).unwrap(), v.ord(&x).unwrap() + v.ord(&y).unwrap());
        }
    }

    #[test]
    fn g_is_additive(x1 in coeffs(4), y1 in coeffs(4), x2 in coeffs(4), y2 in coeffs(4)) {
        let f = f9();
        let a = RatFn::parse(&f, "T*(T-1)").unwrap();
        let p = |c: &[u32]| RatFn::from_poly(poly(&f, c));
        let (u, w) = ((p(&x1), p(&y1)), (p(&x2), p(&y2)));
        let s = (u.0.add(&w.0), u.1.add(&w.1));
        prop_assert_eq!(g_map(&a, &s), g_map(&a, &u).add(&g_map(&a, &w)));
    }

    #[test]
    fn point_text_round_trip(c in coeffs(4), d in nonzero_coeffs(3), e in coeffs(3)) {
        let f = f9();
        let pt = GroupPoint::Four { w: (ratfn(&f, &c, &d), RatFn::zero(&f)), v: (ratfn(&f, &e, &[1]), ratfn(&f, &c, &[2])) };
        prop_assert_eq!(GroupPoint::parse(&f, &pt.to_text()).unwrap(), pt);
    }

    #[test]
    fn delta_is_additive_on_v_points(n in coeffs(4), d in nonzero_coeffs(3), i in 0u32..9, j in 0u32..9) {
        let f = f9();
        let s = make_group(GroupKind::U, &f, &RatFn::parse(&f, "T*(T-1)").unwrap()).unwrap();
        let beta = ratfn(&f, &n, &d);
        let v = |c: u32| (RatFn::constant(&f, Fq(c)), RatFn::zero(&f));
        let chk = delta_additivity(&s, &beta, &v(i), &v(j)).unwrap();
        prop_assert!(chk.difference.is_zero());
    }
}
