//! Exact-arithmetic toolkit for generalized flag manifolds `G/K`.
//!
//! The crate builds root systems of the simple Lie algebras over the
//! rationals, decorates them with a Weyl basis (squared structure constants
//! and a consistent sign table), and derives from a parabolic choice the
//! complementary roots, T-roots and irreducible isotropy summands of the
//! corresponding flag manifold. On top of that sit:
//!
//! * equigeodesic vector tests and the closed-form `G_2` classifications
//!   ([`equigeodesic`]),
//! * zero-sum triples of T-roots and the curvature coefficient tensor
//!   ([`triples`]),
//! * scalar curvature, Einstein residuals, invariant almost complex
//!   structures and Kähler-Einstein metrics ([`einstein`]).
//!
//! Everything here is exact: rational numbers (`num-rational` big rationals)
//! and finite sums `Σ qᵢ√dᵢ` ([`quadext::QuadExt`]) — no floating point.
//! The companion CLI crate carries the numerical Einstein solver and IO.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod einstein;
pub mod equigeodesic;
pub mod flagspace;
pub mod quadext;
pub mod rootsystem;
pub mod triples;

pub use quadext::{QComplex, QuadExt, Rat};
pub use rootsystem::{LieType, Root, RootSystem, Series, WeylBasisData};

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Convenience constructor for a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for an integer rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// `r^k` for integer `k` (negative exponents invert; `r` must be nonzero then).
pub fn rat_pow(r: &Rat, k: i32) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let base = if k > 0 { r.clone() } else { r.recip() };
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Best-effort conversion to `f64` (numerator over denominator).
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Rescale a positive rational vector to the smallest positive integer vector.
///
/// Clears denominators with the lcm, then divides by the gcd of the entries.
pub fn smallest_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    assert!(!v.is_empty());
    let mut l = BigInt::one();
    for r in v {
        l = num_integer::lcm(l, r.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|r| (r * Rat::from(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = num_integer::gcd(g, n.abs());
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|n| n / &g).collect()
}

/// Render a rational as `p/q` (or `p` when the denominator is one).
pub fn rat_string(r: &Rat) -> String {
    use alloc::format;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
