//! Scalar special functions: log-Gamma, extended Pochhammer symbols, the
//! one-dimensional Jacobi chain coefficients at real indices, Jacobi norms,
//! and the quadratic form delta.

use crate::error::{Error, Result};
use crate::params::ModelParameters;
use crate::scalar::Real;

/// Stirling series coefficients B_{2n} / (2n (2n-1)) as exact fractions.
const STIRLING: [(f64, f64); 16] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
    (1723168255201.0, 2492028.0),
    (-7709321041217.0, 505920.0),
];

/// ln(2*pi)/2 split into two doubles.
const HALF_LN_2PI: (f64, f64) = (0.9189385332046728, -3.8782941580672414e-17);

/// Log-Gamma for strictly positive argument, accurate to the working
/// precision of `S` (Stirling series after shifting the argument past 24).
pub fn ln_gamma<S: Real>(x: S) -> S {
    debug_assert!(x.to_f64() > 0.0);
    let mut z = x;
    let mut shift = S::ONE;
    while z.to_f64() < 24.0 {
        shift = shift * z;
        z = z + S::ONE;
    }
    let iz2 = S::ONE / (z * z);
    let mut ser = S::ZERO;
    for &(num, den) in STIRLING.iter().rev() {
        ser = ser * iz2 + S::from_f64(num) / S::from_f64(den);
    }
    ser = ser / z;
    let half = S::from_f64(0.5);
    let hl2pi = S::from_f64(HALF_LN_2PI.0) + S::from_f64(HALF_LN_2PI.1);
    (z - half) * z.ln() - z + hl2pi + ser - shift.ln()
}

/// Gamma for strictly positive argument.
pub fn gamma_pos<S: Real>(x: S) -> S {
    ln_gamma(x).exp()
}

/// Beta function B(p, q) for strictly positive arguments.
pub fn beta_pos<S: Real>(p: S, q: S) -> S {
    (ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp()
}

/// Pochhammer symbol (a)_m with the extension (a)_{-1} = 1/(a-1).
///
/// The extension is forced by the k = n and k = n-1 edges of the closed-form
/// normalizations, which contain factors of the form (.)_{n-k-1}.
pub fn pochhammer(a: f64, m: i64) -> Result<f64> {
    if m < -1 {
        return Err(Error::IndexRange(format!("pochhammer needs m >= -1, got {m}")));
    }
    if m == -1 {
        if a == 1.0 {
            return Err(Error::Pole("pochhammer (1)_{-1}".into()));
        }
        return Ok(1.0 / (a - 1.0));
    }
    let mut r = 1.0;
    for i in 0..m {
        r *= a + i as f64;
    }
    Ok(r)
}

/// Rising-factorial product in generic precision, m >= 0.
pub fn poch<S: Real>(a: S, m: i64) -> S {
    debug_assert!(m >= 0);
    let mut r = S::ONE;
    for i in 0..m {
        r = r * (a + S::from_f64(i as f64));
    }
    r
}

fn check_pole(d: f64, what: &str) -> Result<()> {
    if d == 0.0 {
        return Err(Error::Pole(what.to_string()));
    }
    Ok(())
}

/// Coefficient a_x of the three-term recurrence of the Jacobi chain on [0,1],
/// evaluated at real index x. For integer x >= 0 these are the transition
/// probabilities of the classical Jacobi birth-death chain.
pub fn jacobi_a(x: f64, p: &ModelParameters) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    if x == 0.0 {
        // (x + a + b + 1) cancels against (2x + a + b + 1) at x = 0
        check_pole(a + b + 2.0, "jacobi_a at x=0")?;
        return Ok((a + 1.0) / (a + b + 2.0));
    }
    let d1 = 2.0 * x + a + b + 1.0;
    let d2 = 2.0 * x + a + b + 2.0;
    check_pole(d1, "jacobi_a: 2x+alpha+beta+1")?;
    check_pole(d2, "jacobi_a: 2x+alpha+beta+2")?;
    Ok((x + a + 1.0) * (x + a + b + 1.0) / (d1 * d2))
}

/// Coefficient c_x; c_0 = 0 by continuity.
pub fn jacobi_c(x: f64, p: &ModelParameters) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    if x == 0.0 {
        return Ok(0.0);
    }
    let d0 = 2.0 * x + a + b;
    let d1 = 2.0 * x + a + b + 1.0;
    check_pole(d0, "jacobi_c: 2x+alpha+beta")?;
    check_pole(d1, "jacobi_c: 2x+alpha+beta+1")?;
    Ok(x * (x + b) / (d0 * d1))
}

/// Coefficient b_x; b_0 = 1 - a_0 by continuity (a + b + c = 1).
pub fn jacobi_b(x: f64, p: &ModelParameters) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    if x == 0.0 {
        return Ok(1.0 - jacobi_a(0.0, p)?);
    }
    let d0 = 2.0 * x + a + b;
    let d1 = 2.0 * x + a + b + 1.0;
    let d2 = 2.0 * x + a + b + 2.0;
    check_pole(d0, "jacobi_b: 2x+alpha+beta")?;
    check_pole(d1, "jacobi_b: 2x+alpha+beta+1")?;
    check_pole(d2, "jacobi_b: 2x+alpha+beta+2")?;
    Ok((x + a + 1.0) * (x + 1.0) / (d1 * d2) + (x + b) * (x + a + b) / (d0 * d1))
}

/// Squared norm of the normalized Jacobi polynomial of (real) degree x under
/// the normalized Jacobi weight on [0,1].
pub fn jacobi_norm_sq(x: f64, p: &ModelParameters) -> Result<f64> {
    let (a, b) = (p.alpha, p.beta);
    let args = [
        a + 1.0,
        a + b + 2.0,
        x + 1.0,
        x + b + 1.0,
        b + 1.0,
        x + a + 1.0,
        x + a + b + 1.0,
    ];
    for &arg in &args {
        if arg <= 0.0 {
            return Err(Error::Domain(format!(
                "jacobi_norm_sq: nonpositive Gamma argument {arg}"
            )));
        }
    }
    let d = 2.0 * x + a + b + 1.0;
    check_pole(d, "jacobi_norm_sq: 2x+alpha+beta+1")?;
    let lg = ln_gamma(a + 1.0) + ln_gamma(a + b + 2.0) + ln_gamma(x + 1.0) + ln_gamma(x + b + 1.0)
        - ln_gamma(b + 1.0)
        - ln_gamma(x + a + 1.0)
        - ln_gamma(x + a + b + 1.0);
    Ok(lg.exp() / d)
}

/// delta(x, y) = (x - y)(x + y + alpha + beta + 1).
pub fn delta(x: f64, y: f64, p: &ModelParameters) -> f64 {
    (x - y) * (x + y + p.alpha + p.beta + 1.0)
}

/// Normalizing constant C of the weight, written with the Legendre
/// duplication formula so that every Gamma argument is strictly positive on
/// the admissible parameter set (the textbook form pairs Gamma(2a+2g+2)
/// against Gamma(a+g+1), which both blow up along alpha + gamma = -1).
pub fn norm_constant<S: Real>(p: &ModelParameters) -> Result<S> {
    p.validate()?;
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let f = S::from_f64;
    let num = ln_gamma(f(a + 1.0))
        + ln_gamma(f(b + 1.0))
        + ln_gamma(f(g + 1.0))
        + ln_gamma(f(a + g + 1.5))
        + ln_gamma(f(b + g + 1.5))
        + ln_gamma(f(a + b + g + 3.0));
    let den = ln_gamma(f(a + b + 2.0 * g + 3.0)) + ln_gamma(f(2.0 * a + 2.0 * b + 2.0 * g + 5.0));
    let ln_pi = S::from_f64(std::f64::consts::PI).ln();
    let pow2 = f(2.0).ln() * f(3.0 * a + 3.0 * b + 3.0 * g + 4.0);
    Ok((pow2 + num - den - ln_pi).exp())
}
