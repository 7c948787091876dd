//! Sampling oracles for subordination on closed subdisks and Monte-Carlo
//! tests of the implication `L[p] ≺ h ⇒ p ≺ e^z`.
//!
//! Both `e^z` and every right-hand side `h` are univalent, so `g ≺ h` is
//! decided by `g(0) = h(0)` and `g(D) ⊆ h(D)`. The oracles test the second
//! condition on a polar grid of `|z| <= r_max`, which is a one-sided proxy
//! for the open disk.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::regions::{Region, Verdict};
use crate::scalar::Scalar;
use crate::series::AnalyticSeries;
use crate::theorems::{check_condition, Order, TheoremSpec};

pub const DEFAULT_R_MAX: f64 = 0.999;
pub const DEFAULT_RADIAL: usize = 256;
pub const DEFAULT_ANGULAR: usize = 512;
pub const DEFAULT_TOL: f64 = 1e-4;
/// `|Im log p|` beyond this on any sample means `p` left the principal
/// domain, far outside `{|log w| < 1}`.
pub const BRANCH_GUARD: f64 = std::f64::consts::PI - 0.1;

/// Polar sample grid of the closed disk `|z| <= r_max`: the origin plus
/// `radial` circles `r_max (i+1)/radial` with `angular` points each.
/// Points are stored outermost circle first so failing checks exit early.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskGrid<T> {
    pub r_max: T,
    pub radial: usize,
    pub angular: usize,
    points: Vec<Complex<T>>,
}

impl<T: Scalar> DiskGrid<T> {
    pub fn new(r_max: T, radial: usize, angular: usize) -> Result<Self> {
        if !(r_max > T::zero() && r_max < T::one()) {
            return Err(Error::InvalidParams(format!("r_max must lie in (0, 1), got {r_max}")));
        }
        if radial == 0 || angular < 4 {
            return Err(Error::InvalidParams("grid needs radial >= 1 and angular >= 4".into()));
        }
        let mut points = Vec::with_capacity(radial * angular + 1);
        let rf = T::from_usize_lossy(radial);
        let af = T::from_usize_lossy(angular);
        for i in (0..radial).rev() {
            let r = r_max * T::from_usize_lossy(i + 1) / rf;
            for j in 0..angular {
                points.push(Complex::from_polar(r, T::TAU() * T::from_usize_lossy(j) / af));
            }
        }
        points.push(Complex::new(T::zero(), T::zero()));
        Ok(Self {
            r_max,
            radial,
            angular,
            points,
        })
    }

    pub fn default_grid() -> Self {
        Self::new(T::lit(DEFAULT_R_MAX), DEFAULT_RADIAL, DEFAULT_ANGULAR).expect("default grid is valid")
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    /// Points on the outermost circle.
    pub fn rim(&self) -> &[Complex<T>] {
        &self.points[..self.angular]
    }

    /// The subset of this grid's points with `|z| <= r`; verdicts computed on
    /// it can only be weaker than on the full grid.
    pub fn restrict(&self, r: T) -> Self {
        let slack = T::epsilon() * T::lit(16.0);
        let points: Vec<_> = self.points.iter().copied().filter(|z| z.norm() <= r + slack).collect();
        let radial = (points.len().saturating_sub(1)) / self.angular;
        Self {
            r_max: r.min(self.r_max),
            radial,
            angular: self.angular,
            points,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SubordinationVerdict<T> {
    /// Every sample is inside with at least `tol` to spare; `margin` is the
    /// smallest margin seen.
    Yes { margin: T },
    /// A sample at `witness` is outside by more than `tol`.
    No { witness: Complex<T>, value: Complex<T> },
    Inconclusive { worst: T },
}

impl<T> SubordinationVerdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, SubordinationVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SubordinationVerdict::No { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SubordinationVerdict::Yes { .. } => "yes",
            SubordinationVerdict::No { .. } => "no",
            SubordinationVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

fn require_unit_constant<T: Scalar>(p: &AnalyticSeries<T>) -> Result<()> {
    p.require_normalized()
}

/// Tests `p ≺ e^z` via `max |Log p(z)|` over the grid.
///
/// A zero of `p`, or a sample with `|Im Log p| > π - 0.1`, is a `No`.
pub fn subordinate_to_exp<T: Scalar>(p: &AnalyticSeries<T>, grid: &DiskGrid<T>, tol: T) -> Result<SubordinationVerdict<T>> {
    require_unit_constant(p)?;
    let guard = T::lit(BRANCH_GUARD);
    let outside = (T::one() + tol) * (T::one() + tol);
    let half = T::lit(0.5);
    let mut worst2 = T::zero();
    for &z in grid.points() {
        let v = p.horner(z);
        let n2 = v.norm_sqr();
        if n2 == T::zero() {
            return Ok(SubordinationVerdict::No { witness: z, value: v });
        }
        // Log v = ln|v| + i arg v, without the hypot in Complex::ln
        let arg = v.im.atan2(v.re);
        if arg.abs() > guard {
            return Ok(SubordinationVerdict::No { witness: z, value: v });
        }
        let re = half * n2.ln();
        let m2 = re * re + arg * arg;
        if m2 >= outside {
            return Ok(SubordinationVerdict::No { witness: z, value: v });
        }
        worst2 = worst2.max(m2);
    }
    let worst = worst2.sqrt();
    Ok(if worst < T::one() - tol {
        SubordinationVerdict::Yes { margin: T::one() - worst }
    } else {
        SubordinationVerdict::Inconclusive { worst: T::one() - worst }
    })
}

/// Tests `g ≺ h` by classifying every `g(z)` on the grid against `region`.
/// Samples within `tol` of the boundary make the answer inconclusive unless
/// some other sample is clearly outside.
pub fn subordinate_to_region<T: Scalar>(g: &AnalyticSeries<T>, region: &Region<T>, grid: &DiskGrid<T>, tol: T) -> Result<SubordinationVerdict<T>> {
    require_unit_constant(g)?;
    let mut boundary = false;
    for &z in grid.points() {
        let v = g.horner(z);
        match region.verdict(v, tol) {
            Verdict::Inside => {}
            Verdict::Outside => return Ok(SubordinationVerdict::No { witness: z, value: v }),
            Verdict::Boundary => boundary = true,
        }
    }
    if boundary {
        return Ok(SubordinationVerdict::Inconclusive { worst: T::zero() });
    }
    // the bulk path only guarantees the band; report the smallest margin on
    // the rim, where the image comes closest to the boundary for these maps
    let margin = grid
        .rim()
        .iter()
        .map(|&z| region.quick_margin(g.horner(z)))
        .fold(T::infinity(), T::min);
    Ok(SubordinationVerdict::Yes { margin })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Precondition<T> {
    Pass { value: T },
    Fail { value: T },
}

impl<T> Precondition<T> {
    pub fn passed(&self) -> bool {
        matches!(self, Precondition::Pass { .. })
    }
}

/// `|z p'(z) e^{-ζ}| <= m` for `|z| <= r_max`, `|ζ| = 1`: since
/// `max |e^{-ζ}| = e`, this is `e max |z p'| <= m`. The maximum of `|z p'|`
/// lies on the rim by the maximum modulus principle.
pub fn derivative_bound_precondition<T: Scalar>(p: &AnalyticSeries<T>, m: T, grid: &DiskGrid<T>) -> Precondition<T> {
    let zp = p.z_deriv_op(1).expect("first derivative order is valid");
    let max = grid.rim().iter().map(|&z| zp.horner(z).norm()).fold(T::zero(), T::max);
    let value = T::E() * max;
    if value <= m {
        Precondition::Pass { value }
    } else {
        Precondition::Fail { value }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig<T> {
    pub degree: usize,
    /// Coefficient `a_j` is `rho^j` times a standard complex Gaussian.
    pub rho: T,
    pub max_halvings: u32,
    pub grid: DiskGrid<T>,
    pub tol: T,
    /// Run even when the Case I hypothesis fails.
    pub falsification: bool,
}

impl<T: Scalar> Default for GeneratorConfig<T> {
    fn default() -> Self {
        Self {
            degree: 8,
            rho: T::lit(0.5),
            max_halvings: 20,
            grid: DiskGrid::default_grid(),
            tol: T::lit(DEFAULT_TOL),
            falsification: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample<T> {
    pub trial: u64,
    pub p: AnalyticSeries<T>,
    pub witness: Complex<T>,
    pub value: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport<T> {
    pub trials: u64,
    pub antecedent_hits: u64,
    pub implication_violations: u64,
    /// Third order: draws whose tail could not be scaled under the
    /// derivative bound within the halving budget.
    pub precondition_rejections: u64,
    /// Antecedent verified but `p ≺ e^z` inconclusive in the tolerance band.
    pub inconclusive_consequents: u64,
    pub rng_seed: u64,
    pub counterexamples: Vec<Counterexample<T>>,
}

impl<T> ExperimentReport<T> {
    /// No trial produced a verified antecedent.
    pub fn generator_inadequate(&self) -> bool {
        self.trials > 0 && self.antecedent_hits == 0
    }
}

enum TrialOutcome<T> {
    Rejected,
    NoAntecedent,
    Holds,
    Inconclusive,
    Violation(Counterexample<T>),
}

/// Per-trial RNG: the ChaCha stream index is the trial number, so results do
/// not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Random `p` with `a_0 = 1`; third order also forces `a_1 = 0`.
pub fn draw_series<T: Scalar>(rng: &mut ChaCha8Rng, order: Order, config: &GeneratorConfig<T>) -> AnalyticSeries<T> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut coeffs = vec![Complex::new(T::one(), T::zero())];
    let mut weight = T::one();
    for j in 1..=config.degree.max(1) {
        weight *= config.rho;
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        let c = Complex::new(T::lit(re * half), T::lit(im * half)) * weight;
        coeffs.push(if j == 1 && order == Order::Third {
            Complex::new(T::zero(), T::zero())
        } else {
            c
        });
    }
    AnalyticSeries::new(coeffs).expect("non-empty coefficients")
}

struct Trial<'a, T> {
    spec: &'a TheoremSpec<T>,
    region: &'a Region<T>,
    config: &'a GeneratorConfig<T>,
}

impl<T: Scalar> Trial<'_, T> {
    fn lhs(&self, p: &AnalyticSeries<T>) -> AnalyticSeries<T> {
        p.lhs_operator(self.spec.gamma1, self.spec.gamma2, self.spec.gamma3)
            .expect("spec gammas validated")
    }

    fn run(&self, index: u64, seed: u64) -> TrialOutcome<T> {
        let mut rng = trial_rng(seed, index);
        let mut p = draw_series(&mut rng, self.spec.order, self.config);
        let half = T::lit(0.5);
        let mut budget = self.config.max_halvings;
        if let Some(m) = self.spec.m {
            while !derivative_bound_precondition(&p, m, &self.config.grid).passed() {
                if budget == 0 {
                    return TrialOutcome::Rejected;
                }
                p = p.scale_tail(half);
                budget -= 1;
            }
        }
        loop {
            let l = self.lhs(&p);
            let v = subordinate_to_region(&l, self.region, &self.config.grid, self.config.tol).expect("L(0) = 1");
            if v.is_yes() {
                break;
            }
            if budget == 0 {
                return TrialOutcome::NoAntecedent;
            }
            p = p.scale_tail(half);
            budget -= 1;
        }
        match subordinate_to_exp(&p, &self.config.grid, self.config.tol).expect("p(0) = 1") {
            SubordinationVerdict::Yes { .. } => TrialOutcome::Holds,
            SubordinationVerdict::Inconclusive { .. } => TrialOutcome::Inconclusive,
            SubordinationVerdict::No { witness, value } => TrialOutcome::Violation(Counterexample {
                trial: index,
                p,
                witness,
                value,
            }),
        }
    }
}

/// Monte-Carlo test of the implication. Each trial draws `p`, scales its
/// tail by halving until the third-order derivative bound and then `L ≺ h`
/// verify (or the budget runs out), and checks `p ≺ e^z`.
pub fn implication_experiment<T: Scalar>(spec: &TheoremSpec<T>, trials: u64, rng_seed: u64, config: &GeneratorConfig<T>) -> Result<ExperimentReport<T>> {
    spec.validate()?;
    if !config.falsification && !check_condition(spec).case1_holds {
        return Err(Error::InvalidParams(
            "hypothesis does not hold; enable falsification mode to probe it".into(),
        ));
    }
    if !(config.rho > T::zero()) {
        return Err(Error::NonPositive {
            name: "rho",
            value: config.rho.as_f64(),
        });
    }
    let region = Region::new(spec.h);
    let trial = Trial {
        spec,
        region: &region,
        config,
    };
    let outcomes: Vec<TrialOutcome<T>> = (0..trials).into_par_iter().map(|i| trial.run(i, rng_seed)).collect();
    let mut report = ExperimentReport {
        trials,
        antecedent_hits: 0,
        implication_violations: 0,
        precondition_rejections: 0,
        inconclusive_consequents: 0,
        rng_seed,
        counterexamples: Vec::new(),
    };
    for o in outcomes {
        match o {
            TrialOutcome::Rejected => report.precondition_rejections += 1,
            TrialOutcome::NoAntecedent => {}
            TrialOutcome::Holds => report.antecedent_hits += 1,
            TrialOutcome::Inconclusive => {
                report.antecedent_hits += 1;
                report.inconclusive_consequents += 1;
            }
            TrialOutcome::Violation(c) => {
                report.antecedent_hits += 1;
                report.implication_violations += 1;
                report.counterexamples.push(c);
            }
        }
    }
    Ok(report)
}

/// Verdicts for one stored `p`, as an experiment trial would compute them.
#[derive(Clone, Debug, PartialEq)]
pub struct Replay<T> {
    pub lhs: AnalyticSeries<T>,
    pub antecedent: SubordinationVerdict<T>,
    pub consequent: SubordinationVerdict<T>,
    pub precondition: Option<Precondition<T>>,
}

pub fn replay<T: Scalar>(spec: &TheoremSpec<T>, p: &AnalyticSeries<T>, grid: &DiskGrid<T>, tol: T) -> Result<Replay<T>> {
    spec.validate()?;
    p.require_normalized()?;
    let lhs = p.lhs_operator(spec.gamma1, spec.gamma2, spec.gamma3)?;
    let region = Region::new(spec.h);
    Ok(Replay {
        antecedent: subordinate_to_region(&lhs, &region, grid, tol)?,
        consequent: subordinate_to_exp(p, grid, tol)?,
        precondition: spec.m.map(|m| derivative_bound_precondition(p, m, grid)),
        lhs,
    })
}
