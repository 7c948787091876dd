//! Closed-form hypothesis checks for the eight implications
//! `L[p] ≺ h ⇒ p ≺ e^z` and exploration of their parameter sets.
//!
//! Each implication carries two alternative hypotheses. Case I comes from
//! bounding `|ξ - 1|` below by `|γ1 s + γ2 t (+ γ3 u)| - |r - 1|`, Case II
//! from `|r - 1| - |γ1 s + ...|`. Margins are reported as the literal
//! left-hand side minus right-hand side of each stated inequality.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::regions::RegionKind;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Second,
    Third,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        match self {
            Order::Second => 2,
            Order::Third => 3,
        }
    }

    pub fn from_u8(n: u8) -> Result<Self> {
        match n {
            2 => Ok(Order::Second),
            3 => Ok(Order::Third),
            _ => Err(Error::InvalidParams(format!("order must be 2 or 3, got {n}"))),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

/// One implication instance: order, right-hand side and weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremSpec<T> {
    pub order: Order,
    pub h: RegionKind,
    pub gamma1: T,
    pub gamma2: T,
    pub gamma3: Option<T>,
    /// Boundary-touching constants, third order only (`k >= m >= 2`).
    pub m: Option<T>,
    pub k: Option<T>,
}

impl<T: Scalar> TheoremSpec<T> {
    pub fn second(h: RegionKind, gamma1: T, gamma2: T) -> Result<Self> {
        let spec = Self {
            order: Order::Second,
            h,
            gamma1,
            gamma2,
            gamma3: None,
            m: None,
            k: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn third(h: RegionKind, gamma1: T, gamma2: T, gamma3: T, m: T, k: T) -> Result<Self> {
        let spec = Self {
            order: Order::Third,
            h,
            gamma1,
            gamma2,
            gamma3: Some(gamma3),
            m: Some(m),
            k: Some(k),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.h.require_target()?;
        positive("gamma1", self.gamma1)?;
        positive("gamma2", self.gamma2)?;
        match self.order {
            Order::Second => {
                if self.gamma3.is_some() || self.m.is_some() || self.k.is_some() {
                    return Err(Error::InvalidParams(
                        "second-order specs take no gamma3, m or k".into(),
                    ));
                }
            }
            Order::Third => {
                let (g3, m, k) = match (self.gamma3, self.m, self.k) {
                    (Some(g3), Some(m), Some(k)) => (g3, m, k),
                    _ => {
                        return Err(Error::InvalidParams(
                            "third-order specs require gamma3, m and k".into(),
                        ))
                    }
                };
                positive("gamma3", g3)?;
                if !(m >= T::lit(2.0) && k >= m) {
                    return Err(Error::InvalidParams(format!(
                        "third order needs k >= m >= 2, got m = {m}, k = {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `m^2 + 3m(k - 1)`, the bound on `|m^2 w(θ) + 3m(k-1) y(θ)|`; zero for
    /// second order.
    pub fn third_order_weight(&self) -> T {
        match (self.m, self.k) {
            (Some(m), Some(k)) => third_order_weight(m, k),
            _ => T::zero(),
        }
    }

    /// `γ3 (m^2 + 3m(k-1))`, the third-order contribution to both hypotheses.
    pub fn third_order_term(&self) -> T {
        self.gamma3.unwrap_or_else(T::zero) * self.third_order_weight()
    }

    pub fn radius(&self) -> T {
        target_radius(self.h)
    }
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

pub fn third_order_weight<T: Scalar>(m: T, k: T) -> T {
    m * m + T::lit(3.0) * m * (k - T::one())
}

/// Radius of the smallest disk about 1 containing `h(D)`: `sinh 1`, `e`,
/// `sqrt 2`, `pi/2`. For `Exp` this is `e - 1`.
pub fn target_radius<T: Scalar>(h: RegionKind) -> T {
    match h {
        RegionKind::Sine => T::one().sinh(),
        RegionKind::Cardioid => T::E(),
        RegionKind::Crescent => T::SQRT_2(),
        RegionKind::ArcSinh => T::FRAC_PI_2(),
        RegionKind::Exp => T::E() - T::one(),
    }
}

/// Both sides of a stated inequality `lhs >= rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inequality<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: Scalar> Inequality<T> {
    pub fn margin(&self) -> T {
        self.lhs - self.rhs
    }

    pub fn holds(&self) -> bool {
        self.margin() >= T::zero()
    }
}

/// Case I: `γ1 - γ2 - γ3(m^2 + 3m(k-1)) - e(e+1) >= e R`, doubled on both
/// sides for `1 + asinh z` (`2(...) >= pi e`).
pub fn case1_inequality<T: Scalar>(spec: &TheoremSpec<T>) -> Inequality<T> {
    let e = T::E();
    let core = spec.gamma1 - spec.gamma2 - spec.third_order_term() - e * (e + T::one());
    match spec.h {
        RegionKind::ArcSinh => Inequality {
            lhs: T::lit(2.0) * core,
            rhs: T::PI() * e,
        },
        RegionKind::Sine => Inequality {
            lhs: core,
            rhs: e * T::one().sinh(),
        },
        RegionKind::Cardioid => Inequality {
            lhs: core,
            rhs: e * e,
        },
        RegionKind::Crescent | RegionKind::Exp => Inequality {
            lhs: core,
            rhs: T::SQRT_2() * e,
        },
    }
}

/// Case II as stated. Second order: `1 - e(1 + γ1 + γ2) >= R`; third
/// order: `1 - e - e(γ1 + γ2 + γ3(m^2 + 3m(k-1))) >= R`, except that the
/// sine statement asks for `e sinh 1`. Doubled for `1 + asinh z`.
pub fn case2_inequality<T: Scalar>(spec: &TheoremSpec<T>) -> Inequality<T> {
    let e = T::E();
    let core = T::one() - e - e * (spec.gamma1 + spec.gamma2 + spec.third_order_term());
    match (spec.order, spec.h) {
        (_, RegionKind::ArcSinh) => Inequality {
            lhs: T::lit(2.0) * core,
            rhs: T::PI(),
        },
        (Order::Third, RegionKind::Sine) => Inequality {
            lhs: core,
            rhs: e * T::one().sinh(),
        },
        (_, h) => Inequality {
            lhs: core,
            rhs: target_radius(h),
        },
    }
}

pub const NOTE_SINE_CASE2: &str =
    "third-order sine Case II is checked against e*sinh(1) as stated; the lower-bound chain only reaches sinh(1)";
pub const NOTE_CASE2_EMPTY: &str =
    "Case II left side is below 1 - e < 0 for every positive parameter; the hypothesis is never satisfiable";

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport<T> {
    pub case1_holds: bool,
    pub case1_margin: T,
    pub case2_holds: bool,
    pub case2_margin: T,
    pub radius: T,
    pub notes: Vec<&'static str>,
}

impl<T: Scalar> CaseReport<T> {
    pub fn either_holds(&self) -> bool {
        self.case1_holds || self.case2_holds
    }
}

pub fn check_condition<T: Scalar>(spec: &TheoremSpec<T>) -> CaseReport<T> {
    let c1 = case1_inequality(spec);
    let c2 = case2_inequality(spec);
    let mut notes = vec![NOTE_CASE2_EMPTY];
    if spec.order == Order::Third && spec.h == RegionKind::Sine {
        notes.push(NOTE_SINE_CASE2);
    }
    CaseReport {
        case1_holds: c1.holds(),
        case1_margin: c1.margin(),
        case2_holds: c2.holds(),
        case2_margin: c2.margin(),
        radius: spec.radius(),
        notes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Case {
    pub fn from_u8(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Case::One),
            2 => Ok(Case::Two),
            _ => Err(Error::InvalidParams(format!("case must be 1 or 2, got {n}"))),
        }
    }
}

/// Outcome of asking whether a hypothesis admits any positive parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport<T> {
    pub order: Order,
    pub h: RegionKind,
    pub case: Case,
    pub feasible: bool,
    /// Supremum of the left-hand side over positive parameters, attained in
    /// the limit `γ -> 0+` (Case II). `None` when unbounded (Case I).
    pub limit_lhs: Option<T>,
    pub rhs: T,
    pub limit_margin: Option<T>,
    pub witness: Option<TheoremSpec<T>>,
}

/// Decides feasibility of one hypothesis by monotonicity. Case II's left
/// side is strictly decreasing in every `γ` (and in `m`, `k`), so its
/// supremum is the `γ -> 0+` limit `1 - e` (doubled for `asinh`); Case I is
/// unbounded above in `γ1`.
pub fn case_feasibility<T: Scalar>(order: Order, h: RegionKind, case: Case, m: T, k: T) -> Result<FeasibilityReport<T>> {
    h.require_target()?;
    let spec_at = |g1: T, g2: T, g3: T| -> Result<TheoremSpec<T>> {
        match order {
            Order::Second => TheoremSpec::second(h, g1, g2),
            Order::Third => TheoremSpec::third(h, g1, g2, g3, m, k),
        }
    };
    // any positive point gives the right-hand side, which is parameter-free
    let probe = spec_at(T::one(), T::one(), T::one())?;
    match case {
        Case::One => {
            let g2 = T::lit(0.1);
            let g3 = T::lit(0.05);
            let base = spec_at(T::one(), g2, g3)?;
            let g1 = case1_frontier(&base) + T::one();
            let witness = spec_at(g1, g2, g3)?;
            debug_assert!(case1_inequality(&witness).holds());
            Ok(FeasibilityReport {
                order,
                h,
                case,
                feasible: true,
                limit_lhs: None,
                rhs: case1_inequality(&probe).rhs,
                limit_margin: None,
                witness: Some(witness),
            })
        }
        Case::Two => {
            let e = T::E();
            let scale = if h == RegionKind::ArcSinh { T::lit(2.0) } else { T::one() };
            let limit_lhs = scale * (T::one() - e);
            let rhs = case2_inequality(&probe).rhs;
            let limit_margin = limit_lhs - rhs;
            let mut witness = None;
            if limit_margin > T::zero() {
                let mut g = T::lit(1e-3);
                for _ in 0..60 {
                    let s = spec_at(g, g, g)?;
                    if case2_inequality(&s).holds() {
                        witness = Some(s);
                        break;
                    }
                    g /= T::lit(2.0);
                }
            }
            Ok(FeasibilityReport {
                order,
                h,
                case,
                feasible: witness.is_some(),
                limit_lhs: Some(limit_lhs),
                rhs,
                limit_margin: Some(limit_margin),
                witness,
            })
        }
    }
}

/// Case II feasibility at the minimal constants `m = k = 2`.
pub fn case2_feasibility<T: Scalar>(order: Order, h: RegionKind) -> Result<FeasibilityReport<T>> {
    case_feasibility(order, h, Case::Two, T::lit(2.0), T::lit(2.0))
}

/// Smallest `γ1` satisfying Case I with the other parameters of `spec`:
/// `γ2 + γ3(m^2 + 3m(k-1)) + e(e+1) + e R`.
pub fn case1_frontier<T: Scalar>(spec: &TheoremSpec<T>) -> T {
    let e = T::E();
    spec.gamma2 + spec.third_order_term() + e * (e + T::one()) + e * spec.radius()
}

/// Rectangular sweep over `(γ1, γ2)` with the remaining parameters fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct ExploreSpec<T> {
    pub order: Order,
    pub h: RegionKind,
    pub gamma1_range: (T, T),
    pub gamma2_range: (T, T),
    pub gamma1_steps: usize,
    pub gamma2_steps: usize,
    pub gamma3: Option<T>,
    pub m: Option<T>,
    pub k: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrid<T> {
    pub gamma1: Vec<T>,
    pub gamma2: Vec<T>,
    /// `mask[i][j]`: Case I holds at `(gamma1[j], gamma2[i])`.
    pub mask: Vec<Vec<bool>>,
    /// `(γ2, γ1)` points on the Case I frontier, one per `γ2` row.
    pub frontier: Vec<(T, T)>,
}

fn linspace<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / T::from_usize_lossy(n - 1);
    (0..n).map(|i| lo + step * T::from_usize_lossy(i)).collect()
}

pub fn explore_region<T: Scalar>(spec: &ExploreSpec<T>) -> Result<RegionGrid<T>> {
    let (g1_lo, g1_hi) = spec.gamma1_range;
    let (g2_lo, g2_hi) = spec.gamma2_range;
    if !(g1_lo > T::zero() && g2_lo > T::zero() && g1_hi >= g1_lo && g2_hi >= g2_lo) {
        return Err(Error::InvalidParams("grid bounds must be positive and ordered".into()));
    }
    if spec.gamma1_steps == 0 || spec.gamma2_steps == 0 {
        return Err(Error::InvalidParams("grid needs at least one step per axis".into()));
    }
    let gamma1 = linspace(g1_lo, g1_hi, spec.gamma1_steps);
    let gamma2 = linspace(g2_lo, g2_hi, spec.gamma2_steps);
    let at = |g1: T, g2: T| -> Result<TheoremSpec<T>> {
        match spec.order {
            Order::Second => TheoremSpec::second(spec.h, g1, g2),
            Order::Third => {
                let missing = || Error::InvalidParams("third order requires gamma3, m and k".into());
                TheoremSpec::third(
                    spec.h,
                    g1,
                    g2,
                    spec.gamma3.ok_or_else(missing)?,
                    spec.m.ok_or_else(missing)?,
                    spec.k.ok_or_else(missing)?,
                )
            }
        }
    };
    let mut mask = Vec::with_capacity(gamma2.len());
    let mut frontier = Vec::with_capacity(gamma2.len());
    for &g2 in &gamma2 {
        let row = gamma1
            .iter()
            .map(|&g1| at(g1, g2).map(|s| case1_inequality(&s).holds()))
            .collect::<Result<Vec<_>>>()?;
        mask.push(row);
        frontier.push((g2, case1_frontier(&at(g1_lo, g2)?)));
    }
    Ok(RegionGrid {
        gamma1,
        gamma2,
        mask,
        frontier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::min_enclosing_radius;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn sinh1() -> f64 {
        1.0_f64.sinh()
    }

    #[test]
    fn second_order_sine_case1() {
        let spec = TheoremSpec::second(RegionKind::Sine, 14.0, 0.1).unwrap();
        let r = check_condition(&spec);
        assert!(r.case1_holds);
        assert!((r.case1_margin - (14.0 - 0.1 - E * (E + 1.0) - E * sinh1())).abs() < 1e-12);
        assert!((r.case1_margin - 0.598134023144981).abs() < 1e-12);
        assert!(!r.case2_holds);
    }

    #[test]
    fn equal_unit_weights_fail_case2_everywhere() {
        for h in RegionKind::TARGETS {
            let spec = TheoremSpec::second(h, 1.0, 1.0).unwrap();
            let r = check_condition(&spec);
            assert!(!r.case2_holds);
            let scale = if h == RegionKind::ArcSinh { 2.0 } else { 1.0 };
            let rhs = if h == RegionKind::ArcSinh { std::f64::consts::PI } else { r.radius };
            assert!((r.case2_margin - (scale * (1.0 - 3.0 * E) - rhs)).abs() < 1e-12, "{h}");
        }
    }

    #[test]
    fn third_order_sine_case1() {
        let spec = TheoremSpec::third(RegionKind::Sine, 14.0_f64, 0.1, 0.05, 2.0, 2.0).unwrap();
        assert_eq!(spec.third_order_weight(), 10.0);
        let r = check_condition(&spec);
        assert!(r.case1_holds);
        assert!((r.case1_margin - 0.0981340231449805).abs() < 1e-12);
        assert!(r.notes.contains(&NOTE_SINE_CASE2));
    }

    #[test]
    fn arcsinh_uses_doubled_statement() {
        let spec = TheoremSpec::second(RegionKind::ArcSinh, 15.0, 0.1).unwrap();
        let c1 = case1_inequality(&spec);
        assert!((c1.lhs - 2.0 * (14.9 - E * (E + 1.0))).abs() < 1e-12);
        assert!((c1.rhs - std::f64::consts::PI * E).abs() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        assert!(TheoremSpec::second(RegionKind::Exp, 1.0, 1.0).is_err());
        assert!(TheoremSpec::second(RegionKind::Sine, 0.0, 1.0).is_err());
        assert!(TheoremSpec::second(RegionKind::Sine, 1.0, -1.0).is_err());
        assert!(TheoremSpec::third(RegionKind::Sine, 1.0, 1.0, 0.0, 2.0, 2.0).is_err());
        assert!(TheoremSpec::third(RegionKind::Sine, 1.0, 1.0, 1.0, 1.5, 2.0).is_err());
        assert!(TheoremSpec::third(RegionKind::Sine, 1.0, 1.0, 1.0, 3.0, 2.0).is_err());
        assert!(TheoremSpec::third(RegionKind::Sine, 1.0, 1.0, 1.0, 2.0, 3.0).is_ok());
    }

    #[test]
    fn case2_never_feasible() {
        for order in [Order::Second, Order::Third] {
            for h in RegionKind::TARGETS {
                let rep = case2_feasibility::<f64>(order, h).unwrap();
                assert!(!rep.feasible, "{order} {h}");
                assert!(rep.witness.is_none());
                assert!(rep.limit_margin.unwrap() < 0.0);
            }
        }
        let rep = case2_feasibility::<f64>(Order::Second, RegionKind::Sine).unwrap();
        assert!((rep.limit_lhs.unwrap() - (1.0 - E)).abs() < 1e-15);
        let rep = case2_feasibility::<f64>(Order::Third, RegionKind::ArcSinh).unwrap();
        assert!((rep.limit_lhs.unwrap() - 2.0 * (1.0 - E)).abs() < 1e-15);
    }

    #[test]
    fn case1_always_has_witness() {
        for order in [Order::Second, Order::Third] {
            for h in RegionKind::TARGETS {
                let rep = case_feasibility::<f64>(order, h, Case::One, 2.0, 2.0).unwrap();
                assert!(rep.feasible);
                assert!(check_condition(&rep.witness.unwrap()).case1_holds);
            }
        }
    }

    #[test]
    fn frontier_values() {
        let sine = TheoremSpec::second(RegionKind::Sine, 1.0, 1e-300).unwrap();
        assert!((case1_frontier(&sine) - E * (sinh1() + E + 1.0)).abs() < 1e-12);
        assert!((case1_frontier(&sine) - 13.301865976855).abs() < 1e-9);
        let cres = TheoremSpec::second(RegionKind::Crescent, 1.0_f64, 1e-300).unwrap();
        assert!((case1_frontier(&cres) - 13.9515689555488).abs() < 1e-9);
    }

    #[test]
    fn radius_matches_enclosing_disk() {
        for h in RegionKind::ALL {
            let closed: f64 = target_radius(h);
            let numeric: f64 = min_enclosing_radius(h);
            assert!((closed - numeric).abs() < 1e-9, "{h}");
        }
    }

    #[test]
    fn explore_mask_and_frontier() {
        for h in RegionKind::TARGETS {
            let spec = ExploreSpec {
                order: Order::Third,
                h,
                gamma1_range: (1.0, 40.0),
                gamma2_range: (0.01, 5.0),
                gamma1_steps: 79,
                gamma2_steps: 11,
                gamma3: Some(0.05),
                m: Some(2.0),
                k: Some(3.0),
            };
            let grid = explore_region(&spec).unwrap();
            assert_eq!(grid.mask.len(), 11);
            for (row, &(g2, f)) in grid.mask.iter().zip(&grid.frontier) {
                // once true, stays true in γ1
                let first = row.iter().position(|&b| b);
                if let Some(i) = first {
                    assert!(row[i..].iter().all(|&b| b));
                    assert!(grid.gamma1[i] >= f - 1e-12);
                }
                let below = TheoremSpec::third(h, f - 1e-6, g2, 0.05, 2.0, 3.0).unwrap();
                let above = TheoremSpec::third(h, f + 1e-6, g2, 0.05, 2.0, 3.0).unwrap();
                assert!(!check_condition(&below).case1_holds);
                assert!(check_condition(&above).case1_holds);
            }
        }
    }

    #[test]
    fn explore_rejects_bad_bounds() {
        let mut spec = ExploreSpec {
            order: Order::Second,
            h: RegionKind::Sine,
            gamma1_range: (0.0, 1.0),
            gamma2_range: (0.1, 1.0),
            gamma1_steps: 3,
            gamma2_steps: 3,
            gamma3: None,
            m: None,
            k: None,
        };
        assert!(explore_region::<f64>(&spec).is_err());
        spec.gamma1_range = (1.0, 2.0);
        spec.order = Order::Third;
        assert!(explore_region::<f64>(&spec).is_err());
    }

    proptest! {
        #[test]
        fn case1_margin_is_affine(g1 in 0.1..50.0f64, g2 in 0.1..10.0f64, g3 in 0.01..2.0f64,
                                  m in 2.0..5.0f64, dk in 0.0..3.0f64, hi in 0usize..4) {
            let h = RegionKind::TARGETS[hi];
            let k = m + dk;
            let scale = if h == RegionKind::ArcSinh { 2.0 } else { 1.0 };
            let d = 1e-3;
            let base = check_condition(&TheoremSpec::third(h, g1, g2, g3, m, k).unwrap()).case1_margin;
            let d1 = (check_condition(&TheoremSpec::third(h, g1 + d, g2, g3, m, k).unwrap()).case1_margin - base) / d;
            let d2 = (check_condition(&TheoremSpec::third(h, g1, g2 + d, g3, m, k).unwrap()).case1_margin - base) / d;
            let d3 = (check_condition(&TheoremSpec::third(h, g1, g2, g3 + d, m, k).unwrap()).case1_margin - base) / d;
            let q = m * m + 3.0 * m * (k - 1.0);
            prop_assert!((d1 - scale).abs() < 1e-8);
            prop_assert!((d2 + scale).abs() < 1e-8);
            prop_assert!((d3 + scale * q).abs() < 1e-6 * q);
        }

        #[test]
        fn holds_iff_margin_nonnegative(g1 in 0.1..50.0f64, g2 in 0.1..10.0f64, hi in 0usize..4) {
            let r = check_condition(&TheoremSpec::second(RegionKind::TARGETS[hi], g1, g2).unwrap());
            prop_assert_eq!(r.case1_holds, r.case1_margin >= 0.0);
            prop_assert_eq!(r.case2_holds, r.case2_margin >= 0.0);
        }
    }
}
