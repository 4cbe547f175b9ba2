//! Arithmetic of wound unipotent groups over rational function fields `F_q(T)`.

pub mod additive;
pub mod approx;
pub mod cohomology;
pub mod error;
pub mod etale;
pub mod factor;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod local;
pub mod place;
pub mod points;
pub mod poly;
pub mod ratfn;
pub mod ring;
pub mod sample;
pub mod tamagawa;
pub mod twist;

pub use error::{Error, Result};
pub use field::{Fq, FqElem, FqField};
pub use local::LaurentLocal;
pub use place::{Divisor, Place};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use ring::CommRing;
