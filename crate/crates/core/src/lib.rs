//! Census of geometrically non-simple fibers in one-parameter families of
//! genus-2 Jacobians `y^2 = f(x)(x - t)`.
//!
//! The crate has three independent layers:
//!
//! * a scanner ([`heights`], [`hyperelliptic`], [`classifier`], [`igusa`],
//!   [`harness`]) that walks every rational `t` of bounded height and tries
//!   to certify the fiber geometrically simple from Frobenius data;
//! * brute-force checks on finite symplectic modules `(Z/l^m)^{2g}`
//!   ([`symplectic`]): isotropic subgroups, the kernel lemma, group orders;
//! * the log-space bound pipeline ([`bounds`]): cover degrees, lifted
//!   heights, level optimization and the comparison curve.

pub mod bounds;
pub mod classifier;
mod error;
pub mod finite_field;
pub mod harness;
pub mod heights;
pub mod hyperelliptic;
pub mod igusa;
pub mod poly;
pub mod primes;
pub mod symplectic;

pub use error::{Error, Result};
pub use heights::{enumerate_rationals, mult_height, proj_height, ProjPoint, Rat};
pub use hyperelliptic::{FamilySpec, FrobeniusRecord, GenusTwoCurve};
pub use poly::IntPoly;
