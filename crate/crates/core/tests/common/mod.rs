//! Independent reference values for integration tests. Nothing here calls
//! into the library's numerics.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use subord::RegionKind;

/// e as a rational from `sum 1/n!` for n < 40; the tail is below 1e-47.
pub fn e_rational() -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for n in 1..40u32 {
        sum += &term;
        term /= BigRational::from_integer(BigInt::from(n));
    }
    sum
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

/// Case II left side in the limit of vanishing parameters, in exact
/// arithmetic: `1 - e`, doubled for the inverse hyperbolic sine domain.
pub fn case2_limit(h: RegionKind) -> BigRational {
    let one = BigRational::one();
    let base = &one - e_rational();
    if h == RegionKind::ArcSinh {
        BigRational::from_integer(BigInt::from(2)) * base
    } else {
        base
    }
}

/// Radius of the smallest disk about 1 holding each domain, from the
/// boundary geometry rather than the library's fit.
pub fn reference_radius(h: RegionKind) -> f64 {
    match h {
        RegionKind::Sine => 1.0_f64.sinh(),
        RegionKind::Cardioid => std::f64::consts::E,
        RegionKind::Crescent => std::f64::consts::SQRT_2,
        RegionKind::ArcSinh => std::f64::consts::FRAC_PI_2,
        RegionKind::Exp => std::f64::consts::E - 1.0,
    }
}

/// Truncated Taylor coefficients of `e^{αz}`.
pub fn exp_coeffs(alpha: f64, degree: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(degree + 1);
    let mut term = 1.0;
    for n in 0..=degree {
        c.push(term);
        term *= alpha / (n as f64 + 1.0);
    }
    c
}

/// True iff `w = 1 + ζ e^ζ` has a root `ζ` in the unit disk, decided by the
/// argument principle on `|ζ| = 1` applied to `ζ e^ζ - (w - 1)`.
pub fn cardioid_contains(re: f64, im: f64) -> bool {
    let n = 20_000;
    let (tr, ti) = (re - 1.0, im);
    let mut total = 0.0;
    let f = |t: f64| {
        let (c, s) = (t.cos(), t.sin());
        let m = c.exp();
        let (ec, es) = (m * s.cos(), m * s.sin());
        (c * ec - s * es - tr, c * es + s * ec - ti)
    };
    let mut prev = f(0.0);
    for j in 1..=n {
        let cur = f(std::f64::consts::TAU * j as f64 / n as f64);
        let cross = prev.0 * cur.1 - prev.1 * cur.0;
        let dot = prev.0 * cur.0 + prev.1 * cur.1;
        total += cross.atan2(dot);
        prev = cur;
    }
    (total / std::f64::consts::TAU).round() as i64 != 0
}
