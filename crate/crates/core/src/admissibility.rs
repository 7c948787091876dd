//! Admissible boundary tuples for `q(z) = e^z` and numerical minimisation
//! of `|ξ - 1|` for the affine operator `ξ = r + γ1 s + γ2 t (+ γ3 u)`.
//!
//! With `ζ = e^{iθ}` the tuples are
//!
//! ```text
//! r = e^ζ,  s = m ζ e^ζ,  Re(1 + t/s) >= m(1 + cos θ),
//! Re(u/s) >= m^2 cos 2θ + 3m(k-1) cos θ.
//! ```
//!
//! Writing `t = s (A + i τ)` and `u = s (B + i τ3)` gives
//! `ξ - 1 = (r - 1) + s (β + i τ')` with real `β` and `τ' = γ2 τ + γ3 τ3`,
//! so the two imaginary freedoms collapse onto one line and the inner
//! minimum over `τ'` is a projection.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{golden_min, Scalar};
use crate::theorems::{Order, TheoremSpec};

/// `|q'(ζ)| = |q(ζ)| = e^{cos θ}`.
pub fn x_theta<T: Scalar>(theta: T) -> T {
    theta.cos().exp()
}

/// `Re(ζ q''/q') = cos θ`.
pub fn y_theta<T: Scalar>(theta: T) -> T {
    theta.cos()
}

/// `Re(ζ^2 q'''/q') = cos 2θ`.
pub fn w_theta<T: Scalar>(theta: T) -> T {
    (theta + theta).cos()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibilityParams<T> {
    pub m: T,
    /// Present iff third order.
    pub k: Option<T>,
    pub order: Order,
}

impl<T: Scalar> AdmissibilityParams<T> {
    pub fn second(m: T) -> Result<Self> {
        if !(m >= T::one()) {
            return Err(Error::InvalidParams(format!("second order needs m >= 1, got {m}")));
        }
        Ok(Self {
            m,
            k: None,
            order: Order::Second,
        })
    }

    pub fn third(m: T, k: T) -> Result<Self> {
        if !(m >= T::lit(2.0) && k >= m) {
            return Err(Error::InvalidParams(format!(
                "third order needs k >= m >= 2, got m = {m}, k = {k}"
            )));
        }
        Ok(Self {
            m,
            k: Some(k),
            order: Order::Third,
        })
    }

    /// Lower bound on `Re(1 + t/s)`.
    pub fn t_bound(&self, theta: T) -> T {
        self.m * (T::one() + y_theta(theta))
    }

    /// Lower bound on `Re(u/s)`; zero for second order.
    pub fn u_bound(&self, theta: T) -> T {
        match self.k {
            Some(k) => {
                let m = self.m;
                m * m * w_theta(theta) + T::lit(3.0) * m * (k - T::one()) * y_theta(theta)
            }
            None => T::zero(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibleTuple<T> {
    pub theta: T,
    pub r: Complex<T>,
    pub s: Complex<T>,
    pub t: Complex<T>,
    pub u: Option<Complex<T>>,
    pub params: AdmissibilityParams<T>,
}

impl<T: Scalar> AdmissibleTuple<T> {
    pub fn re_one_plus_t_over_s(&self) -> T {
        (Complex::new(T::one(), T::zero()) + self.t / self.s).re
    }

    pub fn re_u_over_s(&self) -> Option<T> {
        self.u.map(|u| (u / self.s).re)
    }

    /// `r + γ1 s + γ2 t + γ3 u`, with the `u` term dropped when absent.
    pub fn xi(&self, gamma1: T, gamma2: T, gamma3: Option<T>) -> Complex<T> {
        let mut v = self.r + self.s * gamma1 + self.t * gamma2;
        if let (Some(u), Some(g3)) = (self.u, gamma3) {
            v += u * g3;
        }
        v
    }
}

/// Builds the tuple with `t = s (m(1+y) + c - 1 + iτ)` and, for third order,
/// `u = s (m^2 w + 3m(k-1) y + c3 + iτ3)`. Zero slacks give equality in both
/// admissibility inequalities.
pub fn sample_admissible<T: Scalar>(
    params: &AdmissibilityParams<T>,
    theta: T,
    c_slack: T,
    tau: T,
    c3_slack: Option<T>,
    tau3: Option<T>,
) -> Result<AdmissibleTuple<T>> {
    if c_slack < T::zero() {
        return Err(Error::NonPositive {
            name: "c_slack",
            value: c_slack.as_f64(),
        });
    }
    let zeta = Complex::from_polar(T::one(), theta);
    let r = zeta.exp();
    let s = zeta * r * params.m;
    let t = s * Complex::new(params.t_bound(theta) + c_slack - T::one(), tau);
    let u = match (params.order, c3_slack, tau3) {
        (Order::Second, None, None) => None,
        (Order::Third, Some(c3), Some(t3)) => {
            if c3 < T::zero() {
                return Err(Error::NonPositive {
                    name: "c3_slack",
                    value: c3.as_f64(),
                });
            }
            Some(s * Complex::new(params.u_bound(theta) + c3, t3))
        }
        (Order::Second, _, _) => {
            return Err(Error::InvalidParams("second-order tuples take no u slack".into()))
        }
        (Order::Third, _, _) => {
            return Err(Error::InvalidParams("third-order tuples need c3_slack and tau3".into()))
        }
    };
    Ok(AdmissibleTuple {
        theta,
        r,
        s,
        t,
        u,
        params: *params,
    })
}

/// Search grid for [`min_xi_distance`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<T> {
    pub theta_samples: usize,
    /// Values of `m`; for third order also the candidate values of `k`.
    pub m_values: Vec<T>,
    /// Real slacks `c` (and `c3`) added to the admissibility lower bounds.
    pub slacks: Vec<T>,
    /// Initial half-width of the box for `τ` (and `τ3`).
    pub tau_half_width: T,
    /// How often the box may double before the minimiser counts as escaping.
    pub max_tau_doublings: u32,
    /// Grid local minima that receive golden-section refinement in `θ`.
    pub refine_candidates: usize,
}

impl<T: Scalar> GridSpec<T> {
    pub fn default_for(order: Order) -> Self {
        let m_values = match order {
            Order::Second => (0..=12).map(|i| T::one() + T::lit(0.25) * T::from_usize_lossy(i)).collect(),
            Order::Third => (0..=8).map(|i| T::lit(2.0) + T::lit(0.5) * T::from_usize_lossy(i)).collect(),
        };
        Self {
            theta_samples: 720,
            m_values,
            slacks: vec![T::zero(), T::lit(0.5), T::lit(5.0)],
            tau_half_width: T::lit(50.0),
            max_tau_doublings: 30,
            refine_candidates: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Argmin<T> {
    pub theta: T,
    pub m: T,
    pub k: Option<T>,
    pub tau: T,
    pub tau3: Option<T>,
    pub slack: T,
    pub slack3: Option<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct XiMinimum<T> {
    pub min_distance: T,
    pub argmin: Argmin<T>,
    pub target_radius: T,
    /// `min_distance >= target_radius - SOUNDNESS_TOL`.
    pub satisfied: bool,
    pub analytic_floor: T,
    /// Box doublings needed to contain the `τ` minimiser.
    pub tau_doublings: u32,
}

pub const SOUNDNESS_TOL: f64 = 1e-6;

/// Lower bound from the triangle-inequality chain:
/// `(γ1 - γ2 - γ3(m^2 + 3m(k-1)))/e - e - 1`.
pub fn analytic_floor<T: Scalar>(spec: &TheoremSpec<T>) -> T {
    (spec.gamma1 - spec.gamma2 - spec.third_order_term()) / T::E() - T::E() - T::one()
}

#[derive(Clone, Copy, Debug)]
struct Cell<T> {
    m: T,
    k: Option<T>,
    slack: T,
    slack3: Option<T>,
}

#[derive(Clone, Copy, Debug)]
struct Eval<T> {
    dist: T,
    tau_line: T,
}

/// `(m, k)` pairs admitted for a spec. Second order: every grid `m >= 1`.
/// Third order: the spec's own pair plus grid pairs `k >= m >= 2` whose
/// weight `m^2 + 3m(k-1)` does not exceed the spec's, which is the set the
/// hypothesis actually controls.
fn mk_pairs<T: Scalar>(spec: &TheoremSpec<T>, grid: &GridSpec<T>) -> Result<Vec<(T, Option<T>)>> {
    match spec.order {
        Order::Second => {
            let ms: Vec<_> = grid.m_values.iter().copied().filter(|&m| m >= T::one()).collect();
            if ms.is_empty() {
                return Err(Error::InvalidParams("grid has no m >= 1".into()));
            }
            Ok(ms.into_iter().map(|m| (m, None)).collect())
        }
        Order::Third => {
            let (m0, k0) = (spec.m.unwrap(), spec.k.unwrap());
            let cap = spec.third_order_weight();
            let mut pairs = vec![(m0, Some(k0))];
            for &m in &grid.m_values {
                for &k in &grid.m_values {
                    if m >= T::lit(2.0) && k >= m && crate::theorems::third_order_weight(m, k) <= cap && (m, k) != (m0, k0) {
                        pairs.push((m, Some(k)));
                    }
                }
            }
            Ok(pairs)
        }
    }
}

struct Objective<'a, T> {
    spec: &'a TheoremSpec<T>,
    line_scale: T,
}

impl<T: Scalar> Objective<'_, T> {
    /// Minimum of `|ξ - 1|` over the imaginary freedom at fixed `θ` and cell.
    /// Returns the distance and the unconstrained minimiser on the `τ'` line.
    fn eval(&self, theta: T, cell: &Cell<T>) -> Eval<T> {
        let spec = self.spec;
        let zeta = Complex::from_polar(T::one(), theta);
        let r = zeta.exp();
        let s = zeta * r * cell.m;
        let mut beta = spec.gamma1 + spec.gamma2 * (cell.m * (T::one() + y_theta(theta)) + cell.slack - T::one());
        if let (Some(g3), Some(k)) = (spec.gamma3, cell.k) {
            let m = cell.m;
            let bound = m * m * w_theta(theta) + T::lit(3.0) * m * (k - T::one()) * y_theta(theta);
            beta += g3 * (bound + cell.slack3.unwrap_or_else(T::zero));
        }
        let z = (r - T::one()) / s;
        Eval {
            dist: s.norm() * (z.re + beta).abs(),
            tau_line: -z.im,
        }
    }

    fn value(&self, theta: T, cell: &Cell<T>) -> T {
        self.eval(theta, cell).dist
    }
}

/// Numerical minimum of `|r + γ1 s + γ2 t (+ γ3 u) - 1|` over admissible
/// tuples on `grid`, refined in `θ` by golden section around the best grid
/// local minima.
///
/// The `τ` box starts at `±tau_half_width` and doubles until the minimiser
/// is interior (`|ξ - 1|` grows without bound in `|τ|`); the minimiser is
/// reported as `τ = τ3 = τ'/(γ2 + γ3)`.
pub fn min_xi_distance<T: Scalar>(spec: &TheoremSpec<T>, grid: &GridSpec<T>) -> Result<XiMinimum<T>> {
    spec.validate()?;
    if grid.theta_samples < 8 {
        return Err(Error::InvalidParams("theta grid needs at least 8 samples".into()));
    }
    if grid.slacks.is_empty() || grid.slacks.iter().any(|&c| c < T::zero()) {
        return Err(Error::InvalidParams("slacks must be a non-empty list of non-negative values".into()));
    }
    let third = spec.order == Order::Third;
    let mut cells = Vec::new();
    for (m, k) in mk_pairs(spec, grid)? {
        for &c in &grid.slacks {
            if third {
                for &c3 in &grid.slacks {
                    cells.push(Cell {
                        m,
                        k,
                        slack: c,
                        slack3: Some(c3),
                    });
                }
            } else {
                cells.push(Cell {
                    m,
                    k,
                    slack: c,
                    slack3: None,
                });
            }
        }
    }
    let obj = Objective {
        spec,
        line_scale: spec.gamma2 + spec.gamma3.unwrap_or_else(T::zero),
    };
    let n = grid.theta_samples;
    let step = T::TAU() / T::from_usize_lossy(n);
    let row_best: Vec<(T, usize)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let theta = step * T::from_usize_lossy(i);
            let mut best = (T::infinity(), 0);
            for (ci, cell) in cells.iter().enumerate() {
                let v = obj.value(theta, cell);
                if v < best.0 {
                    best = (v, ci);
                }
            }
            best
        })
        .collect();

    // local minima of the per-θ profile on the circle, best first
    let mut minima: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = row_best[(i + n - 1) % n].0;
            let next = row_best[(i + 1) % n].0;
            row_best[i].0 <= prev && row_best[i].0 <= next
        })
        .collect();
    minima.sort_by(|&a, &b| row_best[a].0.partial_cmp(&row_best[b].0).unwrap_or(std::cmp::Ordering::Equal));
    minima.truncate(grid.refine_candidates.max(1));

    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(8.0));
    let mut best: Option<(T, T, Cell<T>)> = None;
    for &i in &minima {
        let theta0 = step * T::from_usize_lossy(i);
        // the winning cell can change inside the bracket; refine each cell
        // that is within reach of the grid value
        for cell in &cells {
            let v0 = obj.value(theta0, cell);
            if v0 > row_best[i].0 + step * T::lit(100.0) {
                continue;
            }
            let refine = |centre: T, half: T| golden_min(|t| obj.value(t, cell), centre - half, centre + half, tol);
            let (t1, v1) = refine(theta0, step);
            let (t2, v2) = refine(t1, step / T::lit(4.0));
            if (v1 - v2).abs() > T::lit(SOUNDNESS_TOL) {
                return Err(Error::NonConvergence {
                    first: v1.as_f64(),
                    second: v2.as_f64(),
                });
            }
            let (t, v) = if v2 <= v1 { (t2, v2) } else { (t1, v1) };
            let (t, v) = if v0 < v { (theta0, v0) } else { (t, v) };
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, t, *cell));
            }
        }
    }
    let (dist, theta, cell) = best.expect("non-empty grid");
    let theta = theta.rem_euclid_tau();
    let e = obj.eval(theta, &cell);

    let mut half = grid.tau_half_width;
    let mut doublings = 0;
    let tau = e.tau_line / obj.line_scale;
    while tau.abs() > half {
        if doublings >= grid.max_tau_doublings {
            return Err(Error::NonConvergence {
                first: tau.as_f64(),
                second: half.as_f64(),
            });
        }
        half = half + half;
        doublings += 1;
    }

    let radius = spec.radius();
    Ok(XiMinimum {
        min_distance: dist,
        argmin: Argmin {
            theta,
            m: cell.m,
            k: cell.k,
            tau,
            tau3: third.then_some(tau),
            slack: cell.slack,
            slack3: cell.slack3,
        },
        target_radius: radius,
        satisfied: dist >= radius - T::lit(SOUNDNESS_TOL),
        analytic_floor: analytic_floor(spec),
        tau_doublings: doublings,
    })
}

trait RemTau {
    fn rem_euclid_tau(self) -> Self;
}

impl<T: Scalar> RemTau for T {
    fn rem_euclid_tau(self) -> T {
        let tau = T::TAU();
        self - (self / tau).floor() * tau
    }
}

impl<T: Scalar> Argmin<T> {
    /// Rebuilds the tuple at the minimiser, for independent re-evaluation.
    pub fn tuple(&self) -> Result<AdmissibleTuple<T>> {
        let params = match self.k {
            Some(k) => AdmissibilityParams::third(self.m, k)?,
            None => AdmissibilityParams::second(self.m)?,
        };
        sample_admissible(&params, self.theta, self.slack, self.tau, self.slack3, self.tau3)
    }
}
