//! Command-line front end. Every command prints one report on standard
//! output; the report embeds the fully resolved configuration.
//!
//! Exit status: 0 on success, 2 on invalid input, 1 when a numerical
//! procedure fails to converge.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::admissibility::{min_xi_distance, GridSpec};
use crate::error::Error;
use crate::oracle::{self, DiskGrid, GeneratorConfig, Precondition, SubordinationVerdict};
use crate::regions::{boundary_curve, enclosing_disk, Region, RegionKind};
use crate::series::AnalyticSeries;
use crate::theorems::{self, Case, ExploreSpec, Order, TheoremSpec};
use crate::Complex64;

pub const THREADS_ENV: &str = "SUBORD_THREADS";

#[derive(Parser, Debug)]
#[command(name = "subord", version, about = "Differential subordination checks for the exponential function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Radius of the smallest disk about 1 containing a domain
    Radius {
        #[arg(long, value_parser = parse_region)]
        h: RegionKind,
    },
    /// Membership of a point in a domain
    Member {
        #[arg(long, value_parser = parse_region)]
        h: RegionKind,
        #[arg(long, allow_hyphen_values = true)]
        re: f64,
        #[arg(long, allow_hyphen_values = true)]
        im: f64,
        /// Half-width of the boundary band
        #[arg(long, default_value_t = crate::regions::DEFAULT_BOUNDARY_TOL)]
        tol: f64,
    },
    /// Boundary samples h(e^{iθ}) at uniform θ
    Boundary {
        #[arg(long, value_parser = parse_region)]
        h: RegionKind,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Case I / Case II hypothesis margins
    Check {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Numerical minimum of |ξ - 1| over admissible tuples
    Minimize {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 720)]
        theta_samples: usize,
        /// Largest m on the grid
        #[arg(long)]
        m_cap: Option<f64>,
    },
    /// Monte-Carlo test of the implication
    Experiment {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        generator: GeneratorArgs,
    },
    /// Case I mask over a (γ1, γ2) grid plus the analytic frontier
    Explore {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        order: u8,
        #[arg(long, value_parser = parse_region)]
        h: RegionKind,
        #[arg(long, default_value_t = 1.0)]
        g1_min: f64,
        #[arg(long, default_value_t = 40.0)]
        g1_max: f64,
        #[arg(long, default_value_t = 40)]
        g1_steps: usize,
        #[arg(long, default_value_t = 0.01)]
        g2_min: f64,
        #[arg(long, default_value_t = 5.0)]
        g2_max: f64,
        #[arg(long, default_value_t = 20)]
        g2_steps: usize,
        #[arg(long)]
        g3: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Whether a hypothesis admits any positive parameters
    Feasibility {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        order: u8,
        #[arg(long, value_parser = parse_region)]
        h: RegionKind,
        #[arg(long = "case", value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
        #[arg(long, default_value_t = 2.0)]
        m: f64,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
    },
    /// Re-run the checks of one trial on a stored series
    Replay {
        #[command(flatten)]
        spec: SpecArgs,
        /// Series as a JSON array of [re, im] pairs
        #[arg(long, conflicts_with = "p_file")]
        p: Option<String>,
        /// File holding the series JSON
        #[arg(long)]
        p_file: Option<std::path::PathBuf>,
        #[command(flatten)]
        generator: GeneratorArgs,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    order: u8,
    #[arg(long, value_parser = parse_region)]
    h: RegionKind,
    #[arg(long)]
    g1: f64,
    #[arg(long)]
    g2: f64,
    #[arg(long)]
    g3: Option<f64>,
    /// Third order only; defaults to 2
    #[arg(long)]
    m: Option<f64>,
    /// Third order only; defaults to 2
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Args, Debug)]
struct GeneratorArgs {
    #[arg(long, default_value_t = 8)]
    degree: usize,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, default_value_t = 20)]
    max_halvings: u32,
    #[arg(long, default_value_t = oracle::DEFAULT_R_MAX)]
    r_max: f64,
    #[arg(long, default_value_t = oracle::DEFAULT_RADIAL)]
    radial: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_ANGULAR)]
    angular: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_TOL)]
    tol: f64,
    /// Run even if the Case I hypothesis fails
    #[arg(long)]
    falsify: bool,
}

fn parse_region(s: &str) -> Result<RegionKind, String> {
    s.parse::<RegionKind>().map_err(|e| e.to_string())
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(err: &Error) -> Self {
        Self {
            code: if err.is_numerical() { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    let r = sig12(x);
    if r.is_finite() {
        json!(r)
    } else {
        Value::Null
    }
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn complex(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

/// Coefficients at full precision so stored series replay bit-exactly.
fn series_value(p: &AnalyticSeries<f64>) -> Value {
    serde_json::to_value(p).expect("series serialises")
}

fn with_config(mut report: Map<String, Value>, config: Value) -> String {
    report.insert("config".into(), config);
    let mut out = serde_json::to_string_pretty(&Value::Object(report)).expect("report serialises");
    out.push('\n');
    out
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

impl SpecArgs {
    fn resolve(&self) -> Result<TheoremSpec<f64>, Error> {
        match Order::from_u8(self.order)? {
            Order::Second => {
                if self.g3.is_some() || self.m.is_some() || self.k.is_some() {
                    return Err(Error::InvalidParams("--g3, --m and --k apply to order 3 only".into()));
                }
                TheoremSpec::second(self.h.require_target()?, self.g1, self.g2)
            }
            Order::Third => {
                let g3 = self
                    .g3
                    .ok_or_else(|| Error::InvalidParams("order 3 requires --g3".into()))?;
                TheoremSpec::third(self.h.require_target()?, self.g1, self.g2, g3, self.m.unwrap_or(2.0), self.k.unwrap_or(2.0))
            }
        }
    }
}

fn spec_value(spec: &TheoremSpec<f64>) -> Value {
    json!({
        "order": spec.order.as_u8(),
        "h": spec.h.name(),
        "g1": num(spec.gamma1),
        "g2": num(spec.gamma2),
        "g3": opt_num(spec.gamma3),
        "m": opt_num(spec.m),
        "k": opt_num(spec.k),
    })
}

impl GeneratorArgs {
    fn grid(&self) -> Result<DiskGrid<f64>, Error> {
        DiskGrid::new(self.r_max, self.radial, self.angular)
    }

    fn resolve(&self) -> Result<GeneratorConfig<f64>, Error> {
        if self.degree == 0 {
            return Err(Error::InvalidParams("--degree must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::NonPositive { name: "tol", value: self.tol });
        }
        Ok(GeneratorConfig {
            degree: self.degree,
            rho: self.rho,
            max_halvings: self.max_halvings,
            grid: self.grid()?,
            tol: self.tol,
            falsification: self.falsify,
        })
    }

    fn value(&self) -> Value {
        json!({
            "degree": self.degree,
            "rho": num(self.rho),
            "max_halvings": self.max_halvings,
            "r_max": num(self.r_max),
            "radial": self.radial,
            "angular": self.angular,
            "tol": num(self.tol),
            "falsify": self.falsify,
        })
    }
}

fn verdict_value(v: &SubordinationVerdict<f64>) -> Value {
    match *v {
        SubordinationVerdict::Yes { margin } => json!({"verdict": "yes", "margin": num(margin)}),
        SubordinationVerdict::No { witness, value } => {
            json!({"verdict": "no", "witness": complex(witness), "value": complex(value)})
        }
        SubordinationVerdict::Inconclusive { worst } => json!({"verdict": "inconclusive", "margin": num(worst)}),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status with the text destined for standard output and standard error.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::fail(&Error::InvalidParams(format!("thread pool: {e}"))),
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::fail(&e),
    }
}

fn dispatch(command: Command) -> Result<String, Error> {
    match command {
        Command::Radius { h } => {
            let fit = enclosing_disk::<f64>(h);
            Ok(with_config(
                obj(json!({"radius": num(fit.radius), "theta": num(fit.theta)})),
                json!({"command": "radius", "h": h.name()}),
            ))
        }
        Command::Member { h, re, im, tol } => {
            if !(tol >= 0.0) || !re.is_finite() || !im.is_finite() {
                return Err(Error::InvalidParams("point must be finite and tol non-negative".into()));
            }
            let region = Region::with_tolerance(h, tol);
            let m = region.membership(Complex64::new(re, im));
            Ok(with_config(
                obj(json!({
                    "region": h.name(),
                    "point": [num(re), num(im)],
                    "verdict": m.verdict,
                    "margin": num(m.margin),
                })),
                json!({"command": "member", "h": h.name(), "re": num(re), "im": num(im), "tol": num(tol)}),
            ))
        }
        Command::Boundary { h, n, format } => boundary(h, n, format),
        Command::Check { spec } => {
            let spec = spec.resolve()?;
            let r = theorems::check_condition(&spec);
            Ok(with_config(
                obj(json!({
                    "case1_holds": r.case1_holds,
                    "case1_margin": num(r.case1_margin),
                    "case2_holds": r.case2_holds,
                    "case2_margin": num(r.case2_margin),
                    "radius": num(r.radius),
                    "frontier_g1": num(theorems::case1_frontier(&spec)),
                    "notes": r.notes,
                })),
                json!({"command": "check", "spec": spec_value(&spec)}),
            ))
        }
        Command::Minimize { spec, theta_samples, m_cap } => {
            let spec = spec.resolve()?;
            let mut grid = GridSpec::default_for(spec.order);
            grid.theta_samples = theta_samples;
            if let Some(cap) = m_cap {
                grid.m_values.retain(|&m| m <= cap);
            }
            let res = min_xi_distance(&spec, &grid)?;
            let a = res.argmin;
            let report = json!({
                "spec": spec_value(&spec),
                "min_distance": num(res.min_distance),
                "argmin": {
                    "theta": num(a.theta),
                    "m": num(a.m),
                    "k": opt_num(a.k),
                    "tau": num(a.tau),
                    "tau3": opt_num(a.tau3),
                    "slacks": {"c": num(a.slack), "c3": opt_num(a.slack3)},
                },
                "target_radius": num(res.target_radius),
                "satisfied": res.satisfied,
                "analytic_floor": num(res.analytic_floor),
                "tau_doublings": res.tau_doublings,
            });
            let config = json!({
                "command": "minimize",
                "spec": spec_value(&spec),
                "grid": {
                    "theta_samples": grid.theta_samples,
                    "m_values": grid.m_values.iter().map(|&m| num(m)).collect::<Vec<_>>(),
                    "slacks": grid.slacks.iter().map(|&c| num(c)).collect::<Vec<_>>(),
                    "tau_half_width": num(grid.tau_half_width),
                    "max_tau_doublings": grid.max_tau_doublings,
                    "refine_candidates": grid.refine_candidates,
                },
            });
            Ok(with_config(obj(report), config))
        }
        Command::Experiment {
            spec,
            trials,
            seed,
            generator,
        } => {
            let spec = spec.resolve()?;
            let cfg = generator.resolve()?;
            let r = oracle::implication_experiment(&spec, trials, seed, &cfg)?;
            let counterexamples: Vec<Value> = r
                .counterexamples
                .iter()
                .map(|c| {
                    json!({
                        "trial": c.trial,
                        "p": series_value(&c.p),
                        "witness": [c.witness.re, c.witness.im],
                        "value": [c.value.re, c.value.im],
                    })
                })
                .collect();
            let report = json!({
                "trials": r.trials,
                "antecedent_hits": r.antecedent_hits,
                "implication_violations": r.implication_violations,
                "precondition_rejections": r.precondition_rejections,
                "inconclusive_consequents": r.inconclusive_consequents,
                "rng_seed": r.rng_seed,
                "generator_inadequate": r.generator_inadequate(),
                "counterexamples": counterexamples,
            });
            let config = json!({
                "command": "experiment",
                "spec": spec_value(&spec),
                "trials": trials,
                "seed": seed,
                "generator": generator.value(),
            });
            Ok(with_config(obj(report), config))
        }
        Command::Explore {
            order,
            h,
            g1_min,
            g1_max,
            g1_steps,
            g2_min,
            g2_max,
            g2_steps,
            g3,
            m,
            k,
            format,
        } => {
            let order = Order::from_u8(order)?;
            h.require_target()?;
            let (g3, m, k) = match order {
                Order::Second => {
                    if g3.is_some() || m.is_some() || k.is_some() {
                        return Err(Error::InvalidParams("--g3, --m and --k apply to order 3 only".into()));
                    }
                    (None, None, None)
                }
                Order::Third => (
                    Some(g3.ok_or_else(|| Error::InvalidParams("order 3 requires --g3".into()))?),
                    Some(m.unwrap_or(2.0)),
                    Some(k.unwrap_or(2.0)),
                ),
            };
            let spec = ExploreSpec {
                order,
                h,
                gamma1_range: (g1_min, g1_max),
                gamma2_range: (g2_min, g2_max),
                gamma1_steps: g1_steps,
                gamma2_steps: g2_steps,
                gamma3: g3,
                m,
                k,
            };
            let grid = theorems::explore_region(&spec)?;
            let config = json!({
                "command": "explore",
                "order": order.as_u8(),
                "h": h.name(),
                "g1_min": num(g1_min), "g1_max": num(g1_max), "g1_steps": g1_steps,
                "g2_min": num(g2_min), "g2_max": num(g2_max), "g2_steps": g2_steps,
                "g3": opt_num(g3), "m": opt_num(m), "k": opt_num(k),
                "format": format.name(),
            });
            Ok(match format {
                Format::Csv => {
                    let mut out = format!("# config: {config}\ng1,g2,case1\n");
                    for (row, &g2) in grid.mask.iter().zip(&grid.gamma2) {
                        for (&b, &g1) in row.iter().zip(&grid.gamma1) {
                            let _ = writeln!(out, "{},{},{}", sig12(g1), sig12(g2), b);
                        }
                    }
                    out.push_str("frontier_g2,frontier_g1\n");
                    for &(g2, g1) in &grid.frontier {
                        let _ = writeln!(out, "{},{}", sig12(g2), sig12(g1));
                    }
                    out
                }
                Format::Json => {
                    let mut cells = Vec::new();
                    for (row, &g2) in grid.mask.iter().zip(&grid.gamma2) {
                        for (&b, &g1) in row.iter().zip(&grid.gamma1) {
                            cells.push(json!({"g1": num(g1), "g2": num(g2), "case1": b}));
                        }
                    }
                    let frontier: Vec<Value> = grid
                        .frontier
                        .iter()
                        .map(|&(g2, g1)| json!({"g2": num(g2), "g1": num(g1)}))
                        .collect();
                    with_config(obj(json!({"mask": cells, "frontier": frontier})), config)
                }
            })
        }
        Command::Feasibility { order, h, case, m, k } => {
            let order = Order::from_u8(order)?;
            let case = Case::from_u8(case)?;
            let rep = theorems::case_feasibility(order, h, case, m, k)?;
            let report = json!({
                "feasible": rep.feasible,
                "limit_lhs": opt_num(rep.limit_lhs),
                "rhs": num(rep.rhs),
                "limit_margin": opt_num(rep.limit_margin),
                "witness": rep.witness.as_ref().map(spec_value),
                "method": match case {
                    Case::One => "Case I left side is unbounded in g1; witness placed above the frontier",
                    Case::Two => "Case II left side strictly decreases in every parameter; supremum is the g -> 0+ limit",
                },
            });
            let config = json!({
                "command": "feasibility",
                "order": order.as_u8(),
                "h": h.name(),
                "case": case,
                "m": if order == Order::Third { num(m) } else { Value::Null },
                "k": if order == Order::Third { num(k) } else { Value::Null },
            });
            Ok(with_config(obj(report), config))
        }
        Command::Replay {
            spec,
            p,
            p_file,
            generator,
        } => {
            let spec = spec.resolve()?;
            let text = match (p, p_file) {
                (Some(text), None) => text,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?,
                _ => return Err(Error::InvalidParams("replay needs --p or --p-file".into())),
            };
            let series = AnalyticSeries::<f64>::from_json(&text)?;
            let grid = generator.grid()?;
            let r = oracle::replay(&spec, &series, &grid, generator.tol)?;
            let precondition = r.precondition.map(|p| match p {
                Precondition::Pass { value } => json!({"passed": true, "value": num(value)}),
                Precondition::Fail { value } => json!({"passed": false, "value": num(value)}),
            });
            let violation = r.antecedent.is_yes() && r.consequent.is_no();
            let report = json!({
                "antecedent": verdict_value(&r.antecedent),
                "consequent": verdict_value(&r.consequent),
                "precondition": precondition,
                "violation": violation,
                "lhs": series_value(&r.lhs),
            });
            let config = json!({
                "command": "replay",
                "spec": spec_value(&spec),
                "p": series_value(&series),
                "generator": generator.value(),
            });
            Ok(with_config(obj(report), config))
        }
    }
}

fn boundary(h: RegionKind, n: usize, format: Format) -> Result<String, Error> {
    let curve = boundary_curve::<f64>(h, n)?;
    let config = json!({"command": "boundary", "h": h.name(), "n": n, "format": format.name()});
    let rows = curve.thetas().into_iter().zip(curve.samples().iter().copied());
    Ok(match format {
        Format::Csv => {
            let mut out = format!("# config: {config}\ntheta,re,im\n");
            for (t, w) in rows {
                let _ = writeln!(out, "{},{},{}", sig12(t), sig12(w.re), sig12(w.im));
            }
            out
        }
        Format::Json => {
            let samples: Vec<Value> = rows
                .map(|(t, w)| json!({"theta": num(t), "re": num(w.re), "im": num(w.im)}))
                .collect();
            with_config(obj(json!({"samples": samples, "closed": true})), config)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> Value {
        let mut full = vec!["subord"];
        full.extend_from_slice(args);
        let out = run(full);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn sig12_rounding() {
        assert_eq!(sig12(1.0_f64.sinh()), 1.17520119364);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-123456789.0123456), -123456789.012);
        assert!(sig12(f64::NAN).is_nan());
    }

    #[test]
    fn radius_command() {
        let v = run_ok(&["radius", "--h", "sine"]);
        assert_eq!(v["radius"].as_f64().unwrap(), 1.17520119364);
        assert_eq!(v["config"]["h"], "sine");
    }

    #[test]
    fn check_and_feasibility() {
        let v = run_ok(&["check", "--order", "3", "--h", "sine", "--g1", "14", "--g2", "0.1", "--g3", "0.05", "--m", "2", "--k", "2"]);
        assert_eq!(v["case1_holds"], true);
        assert_eq!(v["config"]["spec"]["m"].as_f64(), Some(2.0));
        let v = run_ok(&["feasibility", "--order", "2", "--h", "cardioid", "--case", "2"]);
        assert_eq!(v["feasible"], false);
    }

    #[test]
    fn validation_errors_exit_2() {
        for args in [
            vec!["subord", "radius", "--h", "circle"],
            vec!["subord", "check", "--order", "3", "--h", "sine", "--g1", "1", "--g2", "1"],
            vec!["subord", "check", "--order", "2", "--h", "exp", "--g1", "1", "--g2", "1"],
            vec!["subord", "check", "--order", "2", "--h", "sine", "--g1", "-1", "--g2", "1"],
            vec!["subord", "check", "--order", "4", "--h", "sine", "--g1", "1", "--g2", "1"],
        ] {
            let out = run(args.clone());
            assert_eq!(out.code, 2, "{args:?}");
            assert!(out.stdout.is_empty());
            assert!(!out.stderr.is_empty());
        }
        let out = run(["subord", "radius", "--h", "circle"]);
        assert!(out.stderr.contains("sine") && out.stderr.contains("crescent"), "{}", out.stderr);
    }

    #[test]
    fn boundary_csv_matches_json() {
        let csv = run(["subord", "boundary", "--h", "cardioid", "--n", "64"]);
        assert_eq!(csv.code, 0);
        let json_out = run_ok(&["boundary", "--h", "cardioid", "--n", "64", "--format", "json"]);
        let rows: Vec<&str> = csv.stdout.lines().skip(2).collect();
        assert_eq!(rows.len(), 64);
        for (row, s) in rows.iter().zip(json_out["samples"].as_array().unwrap()) {
            let f: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(f[0], s["theta"].as_f64().unwrap());
            assert_eq!(f[1], s["re"].as_f64().unwrap());
            assert_eq!(f[2], s["im"].as_f64().unwrap());
        }
        let first: Vec<f64> = rows[0].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(first[1], sig12(1.0 + std::f64::consts::E));
    }
}
