//! Truncated power series on the unit disk and the operators
//! `z^j p^(j)(z)` that make up the subordination left-hand side.
//!
//! Coefficients are stored densely, index = power. Series serialise to JSON
//! as an array of `[re, im]` pairs.

use std::fmt;

use num_complex::Complex;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default truncation degree for generated series.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Default distance kept from the unit circle when sampling.
pub const DEFAULT_MARGIN: f64 = 1e-3;

/// Truncated Taylor series `a_0 + a_1 z + ... + a_N z^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticSeries<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> AnalyticSeries<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }

    /// Truncation of `exp(alpha z)` to degree `degree`.
    pub fn exp_truncation(alpha: Complex<T>, degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut term = Complex::new(T::one(), T::zero());
        coeffs.push(term);
        for j in 1..=degree {
            term = term * alpha / T::from_usize_lossy(j);
            coeffs.push(term);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Truncation degree `N` (number of coefficients minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Smallest `n >= 1` with `a_n != 0`, i.e. the `n` for which the series
    /// lies in `H[a_0, n]`. `None` for a constant series.
    pub fn order_hint(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_zero_exact())
            .map(|(n, _)| n)
    }

    /// True when `a_0 = 1` exactly.
    pub fn is_normalized(&self) -> bool {
        self.coeffs[0] == Complex::new(T::one(), T::zero())
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                re: self.coeffs[0].re.as_f64(),
                im: self.coeffs[0].im.as_f64(),
            })
        }
    }

    /// Evaluates the series at `z`, which must lie in the open unit disk.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let modulus = z.norm();
        if !(modulus < T::one()) {
            return Err(Error::OutsideDisk {
                modulus: modulus.as_f64(),
            });
        }
        Ok(self.horner(z))
    }

    /// Horner evaluation without the disk check.
    #[inline]
    pub fn horner(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `z^j p^(j)(z)` for `j` in `1..=3`: coefficient `n` is scaled by the
    /// falling factorial `n (n-1) ... (n-j+1)`. The degree is unchanged.
    pub fn z_deriv_op(&self, j: usize) -> Result<Self> {
        if !(1..=3).contains(&j) {
            return Err(Error::DerivativeOrder(j));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * falling_factorial::<T>(n, j))
            .collect();
        Ok(Self { coeffs })
    }

    /// `p + g1 z p' + g2 z^2 p'' (+ g3 z^3 p''')`.
    pub fn lhs_operator(&self, g1: T, g2: T, g3: Option<T>) -> Result<Self> {
        positive("gamma1", g1)?;
        positive("gamma2", g2)?;
        if let Some(g3) = g3 {
            positive("gamma3", g3)?;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * lhs_multiplier(n, g1, g2, g3))
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplies every coefficient of index `>= 1` by `factor`.
    pub fn scale_tail(&self, factor: T) -> Self {
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(1) {
            *c *= factor;
        }
        Self { coeffs }
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Coefficient-wise sum; the shorter series is zero-padded.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex::new(T::zero(), T::zero());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(zero)
                    + other.coeffs.get(i).copied().unwrap_or(zero)
            })
            .collect();
        Self { coeffs }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialisation cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SeriesFormat(e.to_string()))
    }
}

/// `n (n-1) ... (n-j+1)`, zero when `j > n`.
pub fn falling_factorial<T: Scalar>(n: usize, j: usize) -> T {
    if j > n {
        return T::zero();
    }
    ((n - j + 1)..=n).fold(T::one(), |acc, f| acc * T::from_usize_lossy(f))
}

/// Factor multiplying `a_n` in the left-hand-side operator.
pub fn lhs_multiplier<T: Scalar>(n: usize, g1: T, g2: T, g3: Option<T>) -> T {
    let mut m = T::one() + g1 * falling_factorial(n, 1) + g2 * falling_factorial(n, 2);
    if let Some(g3) = g3 {
        m += g3 * falling_factorial(n, 3);
    }
    m
}

fn positive<T: Scalar>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive {
            name,
            value: value.as_f64(),
        })
    }
}

trait ExactZero {
    fn is_zero_exact(&self) -> bool;
}

impl<T: Scalar> ExactZero for Complex<T> {
    fn is_zero_exact(&self) -> bool {
        self.re == T::zero() && self.im == T::zero()
    }
}

impl<T: Scalar> Serialize for AnalyticSeries<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&[c.re.as_f64(), c.im.as_f64()])?;
        }
        seq.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for AnalyticSeries<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor<T>(std::marker::PhantomData<T>);

        impl<'de, T: Scalar> Visitor<'de> for PairsVisitor<T> {
            type Value = AnalyticSeries<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-empty array of [re, im] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some([re, im]) = seq.next_element::<[f64; 2]>()? {
                    coeffs.push(Complex::new(T::lit(re), T::lit(im)));
                }
                AnalyticSeries::new(coeffs).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(PairsVisitor(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn eval_constant_and_linear() {
        let one = AnalyticSeries::<f64>::one();
        assert_eq!(one.eval(c(0.5, 0.0)).unwrap(), c(1.0, 0.0));
        let lin = AnalyticSeries::from_real(&[1.0, 1.0]).unwrap();
        let v = lin.eval(c(0.0, 0.5)).unwrap();
        assert!((v - c(1.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn eval_exp_truncation() {
        let p = AnalyticSeries::exp_truncation(c(1.0, 0.0), 20);
        let v = p.eval(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5_f64.exp()).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn eval_rejects_points_off_the_disk() {
        let p = AnalyticSeries::<f64>::one();
        assert!(matches!(p.eval(c(1.0, 0.0)), Err(Error::OutsideDisk { .. })));
        assert!(matches!(p.eval(c(0.8, 0.7)), Err(Error::OutsideDisk { .. })));
        assert!(p.eval(c(0.999, 0.0)).is_ok());
    }

    #[test]
    fn empty_series_rejected() {
        assert_eq!(AnalyticSeries::<f64>::new(vec![]), Err(Error::EmptySeries));
    }

    #[test]
    fn monomial_rules() {
        let p = AnalyticSeries::from_real(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        let d1 = p.z_deriv_op(1).unwrap();
        assert_eq!(d1.coeffs(), &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let q = AnalyticSeries::from_real(&[1.0, 0.0, 1.0, 0.0]).unwrap();
        let d2 = q.z_deriv_op(2).unwrap();
        assert_eq!(d2.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(d2.degree(), 3);
        assert!(matches!(q.z_deriv_op(4), Err(Error::DerivativeOrder(4))));
        assert!(matches!(q.z_deriv_op(0), Err(Error::DerivativeOrder(0))));
    }

    #[test]
    fn third_derivative_matches_finite_differences() {
        // central third difference of exp at 0.3 with step 1e-4; for exp the
        // stencil collapses to e^z (sinh 2h - 2 sinh h) / h^3, avoiding cancellation
        let p = AnalyticSeries::exp_truncation(c(1.0, 0.0), 16);
        let z = 0.3_f64;
        let h = 1e-4_f64;
        let d3 = z.exp() * ((2.0 * h).sinh() - 2.0 * h.sinh()) / (h * h * h);
        let expected = z.powi(3) * d3;
        let got = p.z_deriv_op(3).unwrap().eval(c(z, 0.0)).unwrap();
        assert!((got.re - expected).abs() < 1e-6, "{} vs {}", got.re, expected);
    }

    #[test]
    fn lhs_examples() {
        let one = AnalyticSeries::<f64>::one();
        assert_eq!(one.lhs_operator(3.0, 4.0, Some(5.0)).unwrap(), one);

        let p = AnalyticSeries::from_real(&[1.0, 1.0]).unwrap();
        let l = p.lhs_operator(2.0, 5.0, None).unwrap();
        assert_eq!(l.coeffs(), &[c(1.0, 0.0), c(3.0, 0.0)]);

        // 1 + z^2: z p' = 2z^2, z^2 p'' = 2z^2, z^3 p''' = 0
        let q = AnalyticSeries::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let l = q.lhs_operator(1.0, 1.0, Some(1.0)).unwrap();
        assert_eq!(l.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)]);
    }

    #[test]
    fn lhs_rejects_non_positive_weights() {
        let p = AnalyticSeries::<f64>::one();
        assert!(matches!(
            p.lhs_operator(0.0, 1.0, None),
            Err(Error::NonPositive { name: "gamma1", .. })
        ));
        assert!(matches!(
            p.lhs_operator(1.0, -1.0, None),
            Err(Error::NonPositive { name: "gamma2", .. })
        ));
        assert!(matches!(
            p.lhs_operator(1.0, 1.0, Some(0.0)),
            Err(Error::NonPositive { name: "gamma3", .. })
        ));
    }

    #[test]
    fn order_hint_tracks_first_nonzero() {
        let p = AnalyticSeries::from_real(&[1.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(p.order_hint(), Some(3));
        assert_eq!(AnalyticSeries::<f64>::one().order_hint(), None);
    }

    #[test]
    fn json_layout() {
        let p = AnalyticSeries::new(vec![c(1.0, 0.0), c(0.5, -0.25)]).unwrap();
        assert_eq!(p.to_json(), "[[1.0,0.0],[0.5,-0.25]]");
        assert_eq!(AnalyticSeries::<f64>::from_json("[[1.0,0.0],[0.5,-0.25]]").unwrap(), p);
        assert!(AnalyticSeries::<f64>::from_json("[]").is_err());
        assert!(AnalyticSeries::<f64>::from_json("[[1.0]]").is_err());
    }

    #[test]
    fn single_precision_instance() {
        let p = AnalyticSeries::<f32>::exp_truncation(Complex::new(1.0, 0.0), 12);
        let v = p.eval(Complex::new(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5_f32.exp()).abs() < 1e-6);
    }

    fn series_strategy(len: usize) -> impl Strategy<Value = AnalyticSeries<f64>> {
        proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), len)
            .prop_map(|v| AnalyticSeries::new(v.into_iter().map(|(a, b)| C::new(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn lhs_is_linear(p in series_strategy(9), q in series_strategy(9), alpha in 0.0..=1.0f64,
                         g1 in 0.01..20.0f64, g2 in 0.01..5.0f64, g3 in 0.01..2.0f64) {
            let mix = p.scale(alpha).add(&q.scale(1.0 - alpha));
            let lhs = mix.lhs_operator(g1, g2, Some(g3)).unwrap();
            let rhs = p.lhs_operator(g1, g2, Some(g3)).unwrap().scale(alpha)
                .add(&q.lhs_operator(g1, g2, Some(g3)).unwrap().scale(1.0 - alpha));
            for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
            }
        }

        #[test]
        fn lhs_keeps_constant_term(p in series_strategy(6), g1 in 0.01..20.0f64, g2 in 0.01..5.0f64) {
            let l = p.lhs_operator(g1, g2, None).unwrap();
            prop_assert_eq!(l.coeffs()[0], p.coeffs()[0]);
        }

        #[test]
        fn horner_matches_power_sum(p in series_strategy(12), r in 0.0..0.99f64, phi in 0.0..std::f64::consts::TAU) {
            let z = C::from_polar(r, phi);
            let naive: C = p.coeffs().iter().enumerate().map(|(j, a)| a * z.powu(j as u32)).sum();
            prop_assert!((p.eval(z).unwrap() - naive).norm() <= 1e-12 * (1.0 + naive.norm()));
        }

        #[test]
        fn derivative_ops_match_finite_differences(p in series_strategy(17), phi in 0.0..std::f64::consts::TAU) {
            // fourth-order central stencils along the real direction at radius 0.5
            let z = C::from_polar(0.5, phi);
            let h = 2e-3;
            let f = |k: f64| p.horner(z + k * h);
            let d1 = (-f(2.0) + 8.0 * f(1.0) - 8.0 * f(-1.0) + f(-2.0)) / (12.0 * h);
            let d2 = (-f(2.0) + 16.0 * f(1.0) - 30.0 * f(0.0) + 16.0 * f(-1.0) - f(-2.0)) / (12.0 * h * h);
            let d3 = (-f(3.0) + 8.0 * f(2.0) - 13.0 * f(1.0) + 13.0 * f(-1.0) - 8.0 * f(-2.0) + f(-3.0))
                / (8.0 * h * h * h);
            let ops = [z * d1, z * z * d2, z * z * z * d3];
            for (j, fd) in ops.iter().enumerate() {
                let exact = p.z_deriv_op(j + 1).unwrap().eval(z).unwrap();
                prop_assert!((exact - fd).norm() <= 1e-6 * (1.0 + exact.norm()),
                    "j={} exact={} fd={}", j + 1, exact, fd);
            }
        }

        #[test]
        fn json_roundtrip(p in series_strategy(7)) {
            prop_assert_eq!(AnalyticSeries::<f64>::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
