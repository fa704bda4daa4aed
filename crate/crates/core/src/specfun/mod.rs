//! Bessel kernels of orders 0 and 1.
//!
//! Both kinds are evaluated together because every consumer in the pipeline
//! needs the pair: the Green's function needs `J0 + iY0` and the indicator
//! needs `J1` and `Y1` at the same argument.
//!
//! For `x <= 8` the regular parts are Chebyshev expansions in `(x/8)^2`, with
//! the logarithmic and pole terms of `Y0`/`Y1` split off analytically. For
//! `x > 8` the modulus/phase auxiliaries `P`, `Q` are Chebyshev expansions in
//! `(8/x)^2`, with separate tables for `8 < x <= 16` and `x > 16`:
//!
//! ```text
//! J_n(x) = sqrt(2/(pi x)) (P_n cos(chi) - Q_n sin(chi))
//! Y_n(x) = sqrt(2/(pi x)) (P_n sin(chi) + Q_n cos(chi)),   chi = x - (2n+1) pi/4
//! ```
//!
//! The coefficient tables are produced by `tools/gen_bessel_coeffs.py`.

mod coeffs;

use std::f64::consts::{FRAC_1_PI, FRAC_2_PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const SPLIT: f64 = 8.0;
const FAR: f64 = 16.0;

#[inline(always)]
fn clenshaw(c: &[f64], t: f64) -> f64 {
    let t2 = 2.0 * t;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c[1..].iter().rev() {
        let b0 = t2 * b1 + (ck - b2);
        b2 = b1;
        b1 = b0;
    }
    t * b1 + (c[0] - b2)
}

/// Auxiliary pair `(P, x Q)` evaluated from the mid or far tables.
#[inline(always)]
fn auxiliaries(x: f64, inv: f64, mid: (&[f64], &[f64]), far: (&[f64], &[f64])) -> (f64, f64) {
    let u = (SPLIT * SPLIT) * inv * inv;
    if x <= FAR {
        let t = (u - 0.625) * (1.0 / 0.375);
        (clenshaw(mid.0, t), clenshaw(mid.1, t))
    } else {
        let t = 8.0 * u - 1.0;
        (clenshaw(far.0, t), clenshaw(far.1, t))
    }
}

// pi/2 split as 33 + 33 + 53 bits, so `n * PIO2_1` and `n * PIO2_2` are exact
// for |n| < 2^20.
const PIO2_1: f64 = 1.5707963267341256;
const PIO2_2: f64 = 6.077100506303966e-11;
const PIO2_3: f64 = 2.0222662487959506e-21;

/// `(sin r, cos r)` for `|r| <= pi/4` by truncated Taylor series (the first
/// omitted terms are below 1e-19).
#[inline(always)]
fn sin_cos_kernel(r: f64) -> (f64, f64) {
    const S: [f64; 8] = [
        -1.0 / 6.0,
        1.0 / 120.0,
        -1.0 / 5040.0,
        1.0 / 362880.0,
        -1.0 / 39916800.0,
        1.0 / 6227020800.0,
        -1.0 / 1307674368000.0,
        1.0 / 355687428096000.0,
    ];
    const C: [f64; 9] = [
        -1.0 / 2.0,
        1.0 / 24.0,
        -1.0 / 720.0,
        1.0 / 40320.0,
        -1.0 / 3628800.0,
        1.0 / 479001600.0,
        -1.0 / 87178291200.0,
        1.0 / 20922789888000.0,
        -1.0 / 6402373705728000.0,
    ];
    let z = r * r;
    let mut ps = S[7];
    for &c in S[..7].iter().rev() {
        ps = ps * z + c;
    }
    let mut pc = C[8];
    for &c in C[..8].iter().rev() {
        pc = pc * z + c;
    }
    (r + r * z * ps, 1.0 + z * pc)
}

/// `(sin x, cos x)` with a three-part Cody-Waite reduction by pi/2. Falls
/// back to the platform routine beyond the range where the reduction is exact.
#[inline(always)]
fn sin_cos(x: f64) -> (f64, f64) {
    if !(x.abs() < 1e5) {
        return x.sin_cos();
    }
    let n = (x * FRAC_2_PI).round();
    let r = ((x - n * PIO2_1) - n * PIO2_2) - n * PIO2_3;
    let (s, c) = sin_cos_kernel(r);
    match (n as i64) & 3 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Phase factors `(cos x + sin x, sin x - cos x)`.
#[inline(always)]
fn phase(x: f64) -> (f64, f64) {
    let (s, c) = sin_cos(x);
    (c + s, s - c)
}

/// `(J0(x), Y0(x))` for `x > 0`. Unchecked: `x = 0` yields `Y0 = -inf`.
#[inline]
pub fn j0_y0(x: f64) -> (f64, f64) {
    if x <= SPLIT {
        let t = x * x / (SPLIT * SPLIT / 2.0) - 1.0;
        let j0 = clenshaw(&coeffs::J0_SMALL, t);
        let y0 = FRAC_2_PI * x.ln() * j0 + clenshaw(&coeffs::Y0_SMALL, t);
        (j0, y0)
    } else {
        let inv = 1.0 / x;
        let (p, xq) = auxiliaries(x, inv, (&coeffs::P0_MID, &coeffs::Q0_MID), (&coeffs::P0_FAR, &coeffs::Q0_FAR));
        let q = xq * inv;
        let (cps, smc) = phase(x);
        let a = (inv * FRAC_1_PI).sqrt();
        (a * (p * cps - q * smc), a * (p * smc + q * cps))
    }
}

/// `(J1(x), Y1(x))` for `x > 0`. Unchecked: `x = 0` yields a non-finite `Y1`.
#[inline]
pub fn j1_y1(x: f64) -> (f64, f64) {
    if x <= SPLIT {
        let t = x * x / (SPLIT * SPLIT / 2.0) - 1.0;
        let j1 = x * clenshaw(&coeffs::J1_SMALL, t);
        let y1 = FRAC_2_PI * x.ln() * j1 - FRAC_2_PI / x + x * clenshaw(&coeffs::Y1_SMALL, t);
        (j1, y1)
    } else {
        let inv = 1.0 / x;
        let (p, xq) = auxiliaries(x, inv, (&coeffs::P1_MID, &coeffs::Q1_MID), (&coeffs::P1_FAR, &coeffs::Q1_FAR));
        let q = xq * inv;
        let (cps, smc) = phase(x);
        let a = (inv * FRAC_1_PI).sqrt();
        (a * (p * smc + q * cps), a * (q * smc - p * cps))
    }
}

/// Bessel function of the first kind, order 0 or 1.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_j needs finite x >= 0, got {x}")));
    }
    match order {
        0 if x == 0.0 => Ok(1.0),
        1 if x == 0.0 => Ok(0.0),
        0 => Ok(j0_y0(x).0),
        1 => Ok(j1_y1(x).0),
        _ => Err(Error::Domain(format!("bessel_j order {order} not supported (0 or 1)"))),
    }
}

/// Neumann function (Bessel of the second kind), order 0 or 1.
pub fn bessel_y(order: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("bessel_y needs finite x > 0 (log singularity at 0), got {x}")));
    }
    match order {
        0 => Ok(j0_y0(x).1),
        1 => Ok(j1_y1(x).1),
        _ => Err(Error::Domain(format!("bessel_y order {order} not supported (0 or 1)"))),
    }
}

/// Hankel function of the first kind, order 0: `J0(x) + i Y0(x)`.
pub fn hankel1_0(x: f64) -> Result<Complex64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("hankel1_0 needs finite x > 0, got {x}")));
    }
    let (j, y) = j0_y0(x);
    Ok(Complex64::new(j, y))
}
