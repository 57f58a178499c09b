//! Exact real numbers of the form `Σ q_d · √d` with rational `q_d` and
//! square-free positive integer radicands `d`.
//!
//! Square roots of distinct square-free integers are linearly independent
//! over the rationals, so such a sum is zero exactly when every coefficient
//! is zero. That makes vanishing of Weyl-basis bracket coefficients
//! (products of `±√N²` with rational tangent coefficients) decidable with
//! no tolerance at all.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Big rational, the scalar type of the whole crate.
pub type Rat = num_rational::BigRational;

/// Split `n > 0` as `f² · d` with `d` square-free; returns `(f, d)`.
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (f, d * m)
}

/// A finite sum `Σ q_d √d`, keyed by square-free radicand (`d = 1` is the
/// rational part). Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadExt {
    terms: BTreeMap<u64, Rat>,
}

impl QuadExt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut q = Self::default();
        q.push(1, r);
        q
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from(BigInt::from(n)))
    }

    /// Exact square root of a nonnegative rational: `√(p/q) = (f/q)·√d`
    /// with `pq = f²d`, `d` square-free.
    ///
    /// Panics if `r < 0` or if `p·q` does not fit in `u64` (structure
    /// constants of desk-scale root systems are far below that).
    pub fn sqrt_of(r: &Rat) -> Self {
        assert!(!r.is_negative(), "sqrt of a negative rational");
        if r.is_zero() {
            return Self::zero();
        }
        let p = r.numer();
        let q = r.denom();
        let pq = (p * q).to_u64().expect("radicand out of range");
        let (f, d) = squarefree_split(pq);
        let coeff = Rat::new(BigInt::from(f), q.clone());
        let mut out = Self::default();
        out.push(d, coeff);
        out
    }

    fn push(&mut self, d: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `√1`, i.e. the rational part.
    pub fn rational_part(&self) -> Rat {
        self.terms.get(&1).cloned().unwrap_or_else(Rat::zero)
    }

    /// `Some(q)` when the value is plain rational (no radical terms).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.terms.keys().all(|&d| d == 1) {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::default();
        for (d, q) in &self.terms {
            out.push(*d, q * c);
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * libm::sqrt(*d as f64))
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rat)> {
        self.terms.iter()
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.push(*d, c.clone());
        }
        out
    }
}

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        for (d, c) in &rhs.terms {
            self.push(*d, c.clone());
        }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.push(*d, -c.clone());
        }
        out
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        let mut out = QuadExt::default();
        for (d, c) in &self.terms {
            out.push(*d, -c.clone());
        }
        out
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let mut out = QuadExt::default();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // √d1·√d2 = g·√(d1d2/g²) with g = gcd(d1, d2).
                let g = num_integer::gcd(*d1, *d2);
                let rad = (d1 / g) * (d2 / g);
                out.push(rad, c1 * c2 * Rat::from(BigInt::from(g)));
            }
        }
        out
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                use alloc::format;
                if *d == 1 {
                    format!("{}", c)
                } else {
                    format!("{}*sqrt({})", c, d)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A complex number with [`QuadExt`] real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QComplex {
    pub re: QuadExt,
    pub im: QuadExt,
}

impl QComplex {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rat_pair(re: Rat, im: Rat) -> Self {
        Self { re: QuadExt::from_rat(re), im: QuadExt::from_rat(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiply by a real [`QuadExt`] scalar.
    pub fn scale_real(&self, m: &QuadExt) -> Self {
        Self { re: &self.re * m, im: &self.im * m }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn abs_f64(&self) -> f64 {
        let re = self.re.to_f64();
        let im = self.im.to_f64();
        libm::sqrt(re * re + im * im)
    }
}

impl AddAssign<&QComplex> for QComplex {
    fn add_assign(&mut self, rhs: &QComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Neg for &QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn squarefree_splits() {
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(8), (2, 2));
        assert_eq!(squarefree_split(96), (4, 6));
        assert_eq!(squarefree_split(49), (7, 1));
    }

    #[test]
    fn sqrt_arithmetic() {
        // √(1/8)·√(1/8) = 1/8
        let s = QuadExt::sqrt_of(&rat(1, 8));
        assert_eq!((&s * &s).as_rational(), Some(rat(1, 8)));
        // √2·√6 = 2√3
        let a = QuadExt::sqrt_of(&rat(2, 1));
        let b = QuadExt::sqrt_of(&rat(6, 1));
        let mut expect = QuadExt::zero();
        expect.push(3, rat(2, 1));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn independence_of_radicands() {
        // √2 + √3 - √2 - √3 = 0, but √2 - √3 ≠ 0.
        let a = QuadExt::sqrt_of(&rat(2, 1));
        let b = QuadExt::sqrt_of(&rat(3, 1));
        assert!((&(&a + &b) - &(&a + &b)).is_zero());
        assert!(!(&a - &b).is_zero());
    }

    #[test]
    fn complex_products() {
        let i = QComplex::from_rat_pair(rat(0, 1), rat(1, 1));
        let m1 = i.mul(&i);
        assert_eq!(m1, QComplex::from_rat_pair(rat(-1, 1), rat(0, 1)));
    }
}
