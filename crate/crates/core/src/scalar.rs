//! Scalar abstraction shared by every numeric module.
//!
//! All of the geometry, admissibility and series arithmetic is written once
//! against [`Scalar`]; `f32` and `f64` are the provided instances.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Point on the unit circle at `turn` full turns (`turn = 0.25` is `i`).
///
/// Quarter turns are reduced exactly, so multiples of `1/4` land on `±1`, `±i`
/// without rounding residue. Boundary maps with branch points on the circle
/// rely on this.
pub fn unit_point<T: Scalar>(turn: T) -> Complex<T> {
    let four = T::lit(4.0);
    let q = (turn * four).floor();
    let frac = turn * four - q;
    let angle = frac * T::FRAC_PI_2();
    let (s, c) = if frac == T::zero() {
        (T::zero(), T::one())
    } else {
        angle.sin_cos()
    };
    let quadrant = q.to_i64().unwrap_or(0).rem_euclid(4);
    match quadrant {
        0 => Complex::new(c, s),
        1 => Complex::new(-s, c),
        2 => Complex::new(-c, -s),
        _ => Complex::new(s, -c),
    }
}

/// Angle in radians for a turn fraction.
#[inline]
pub fn turn_to_radians<T: Scalar>(turn: T) -> T {
    turn * T::TAU()
}

/// Golden-section maximisation of a unimodal function on `[lo, hi]`.
pub fn golden_max<T: Scalar, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> (T, T) {
    let (x, v) = golden_min(|t| -f(t), lo, hi, tol);
    (x, -v)
}

/// Golden-section minimisation of a unimodal function on `[lo, hi]`.
///
/// Returns `(argmin, min)`; the endpoints are never evaluated.
pub fn golden_min<T: Scalar, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, tol: T) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut c = hi - (hi - lo) * inv_phi;
    let mut d = lo + (hi - lo) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * inv_phi;
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * inv_phi;
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
