//! The commutative-ring abstraction the group law and connecting maps are
//! written against.
//!
//! Rings here carry their parameters at runtime (the field `F_q`, a modulus,
//! a precision), so constants are produced from an existing element rather
//! than from a context-free `zero()`.

use std::fmt::Debug;

use crate::field::{Fq, FqElem};

pub trait CommRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// Embeds a constant of the coefficient field `F_q`.
    fn from_fq(&self, c: Fq) -> Self;

    /// Characteristic of the ring.
    fn characteristic(&self) -> u32;

    /// Multiplicative inverse, when this element is known to be a unit.
    fn try_inv(&self) -> Option<Self> {
        None
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `x -> x^p`. Rings with cheap Frobenius override this.
    fn frobenius(&self) -> Self {
        self.pow(self.characteristic() as u64)
    }

    /// `x -> x^{p^e}`.
    fn frobenius_iter(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |x, _| x.frobenius())
    }

    fn from_int(&self, n: i64) -> Self {
        let p = self.characteristic() as i64;
        self.from_fq(Fq(n.rem_euclid(p) as u32))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&self.from_int(n))
    }
}

impl CommRing for FqElem {
    fn zero_like(&self) -> Self {
        FqElem::new(&self.field, Fq::ZERO)
    }
    fn one_like(&self) -> Self {
        FqElem::new(&self.field, Fq::ONE)
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        FqElem::new(&self.field, self.field.add(self.v, o.v))
    }
    fn sub(&self, o: &Self) -> Self {
        FqElem::new(&self.field, self.field.sub(self.v, o.v))
    }
    fn neg(&self) -> Self {
        FqElem::new(&self.field, self.field.neg(self.v))
    }
    fn mul(&self, o: &Self) -> Self {
        FqElem::new(&self.field, self.field.mul(self.v, o.v))
    }
    fn from_fq(&self, c: Fq) -> Self {
        FqElem::new(&self.field, c)
    }
    fn characteristic(&self) -> u32 {
        self.field.p()
    }
    fn try_inv(&self) -> Option<Self> {
        self.field.inv(self.v).map(|v| FqElem::new(&self.field, v))
    }
    fn pow(&self, e: u64) -> Self {
        FqElem::new(&self.field, self.field.pow(self.v, e))
    }
}

/// Implements the `std::ops` operators by delegating to [`CommRing`].
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $crate::ring::CommRing::add(&self, &o)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t {
                $crate::ring::CommRing::add(self, o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                $crate::ring::CommRing::sub(&self, &o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t {
                $crate::ring::CommRing::sub(self, o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                $crate::ring::CommRing::mul(&self, &o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t {
                $crate::ring::CommRing::mul(self, o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::CommRing::neg(&self)
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::CommRing::neg(self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;

impl_ring_ops!(FqElem);
