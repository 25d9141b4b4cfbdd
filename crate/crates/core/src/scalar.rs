//! Scalar abstraction over `f64` and the double-double type used for
//! extended-precision oracle runs.
//!
//! All numerical kernels (quadrature, Gram-Schmidt, polynomial arithmetic)
//! are generic over [`Real`] so the same code path serves both precisions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal real-arithmetic interface needed by the numerical kernels.
pub trait Real:
    Copy
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;

    /// `self^e` for a strictly positive base.
    fn powf64(self, e: f64) -> Self {
        if e == 0.0 {
            return Self::ONE;
        }
        (self.ln() * Self::from_f64(e)).exp()
    }

    fn powi(self, n: usize) -> Self {
        let mut acc = Self::ONE;
        let mut base = self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

impl Real for f64 {
    const ZERO: f64 = 0.0;
    const ONE: f64 = 1.0;

    fn from_f64(x: f64) -> f64 {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn powf64(self, e: f64) -> f64 {
        f64::powf(self, e)
    }
}

/// Unevaluated sum of two doubles giving roughly 32 significant digits.
///
/// Implements the classic error-free transformations (Dekker/Knuth) with
/// accurate addition and long division, plus the handful of transcendentals
/// the oracle path needs. Written against frozen 40-digit reference values;
/// see the tests at the bottom of this module.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

pub type Dd = DoubleDouble;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    const LN2: Dd = Dd::new(0.693_147_180_559_945_3, 2.319_046_813_846_299_6e-17);

    #[inline]
    fn mul_f64(self, x: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * x);
        Dd::new(hi, lo)
    }

    /// Exact scaling by a power of two.
    #[inline]
    fn scale(self, s: f64) -> Self {
        Dd::new(self.hi * s, self.lo * s)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd::new(hi, lo)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p1, p2 + self.hi * o.lo + self.lo * o.hi);
        Dd::new(hi, lo)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o.mul_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o.mul_f64(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo) + Dd::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    const ZERO: Dd = Dd::new(0.0, 0.0);
    const ONE: Dd = Dd::new(1.0, 0.0);

    fn from_f64(x: f64) -> Dd {
        Dd::new(x, 0.0)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::new(f64::NAN, 0.0);
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let d = self - Dd::new(p, e);
        let corr = d.hi / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, corr);
        Dd::new(hi, lo)
    }

    fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        // e^x = 2^k e^r with |r| <= ln(2)/2, then Taylor.
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        let mut sum = Dd::ONE + r;
        let mut term = r;
        for n in 2..=26 {
            term = term * r / Dd::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        sum.scale(f64::exp2(k))
    }

    fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(f64::NAN, 0.0);
        }
        // Newton iteration on y -> y + x e^{-y} - 1 from the f64 estimate.
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

/// Deterministic pairwise-tree reduction. The tree shape depends only on the
/// slice length, so the result is independent of execution order and thread
/// count when callers parallelize over disjoint subtrees.
pub fn pairwise_sum<S: Real>(xs: &[S]) -> S {
    match xs.len() {
        0 => S::ZERO,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n if n <= 8 => {
            let mut acc = xs[0];
            for &x in &xs[1..] {
                acc = acc + x;
            }
            acc
        }
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_dd(got: Dd, hi: f64, lo: f64, tol: f64) {
        let want = Dd::new(hi, lo);
        let diff = (got - want).abs().to_f64();
        let scale = want.abs().to_f64().max(1.0);
        assert!(
            diff <= tol * scale,
            "got {:?} want {:?} (diff {:e})",
            got,
            want,
            diff
        );
    }

    // Reference decompositions below were computed at 40 significant digits.

    #[test]
    fn dd_sqrt2() {
        let s = Dd::from_f64(2.0).sqrt();
        assert_dd(s, 1.4142135623730951, -9.667293313452913e-17, 1e-31);
    }

    #[test]
    fn dd_ln_and_exp() {
        let l3 = Dd::from_f64(3.0).ln();
        assert_dd(l3, 1.0986122886681098, -9.07129723500153e-17, 1e-30);
        let e = Dd::ONE.exp();
        assert_dd(e, 2.718281828459045, 1.4456468917292502e-16, 1e-30);
        let x = Dd::from_f64(1.2345).exp();
        assert_dd(x, 3.436659761170463, 1.5491976471340679e-16, 1e-30);
    }

    #[test]
    fn dd_powf() {
        let p = Dd::from_f64(0.37).powf64(-0.9);
        assert_dd(p, 2.446912549572951, -1.7534891551973684e-16, 1e-29);
    }

    #[test]
    fn dd_division_recovers_low_part() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert!(third.lo() != 0.0, "division must carry a low component");
        let back = third * Dd::from_f64(3.0);
        assert!((back - Dd::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn dd_arithmetic_identities() {
        let a = Dd::from_f64(0.1) + Dd::from_f64(0.2);
        let b = Dd::from_f64(0.3);
        // 0.1 + 0.2 != 0.3 in f64, but the DD residual is tiny and exactly tracked
        assert!((a - b).abs().to_f64() < 3e-17);
        let x = Dd::from_f64(1.0) / Dd::from_f64(7.0);
        let y = x * Dd::from_f64(7.0) - Dd::ONE;
        assert!(y.abs().to_f64() < 1e-31);
    }

    #[test]
    fn pairwise_sum_matches_naive_and_is_stable() {
        let xs: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let p = pairwise_sum(&xs);
        let exact: f64 = 7.485470860550344912656518204333900753675224378774; // H_1000
        assert!((p - exact).abs() < 1e-12);
    }
}
