//! Named verification suites: each case checks one identity on one slice of
//! the parameter grid and records pass/fail with a residual or a witness.

mod exact;
mod numeric;

pub use exact::*;
pub use numeric::*;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;

use crate::error::{Error, Result};
use crate::laurent::Laurent2;
use crate::numkernel::{Comparison, NumericConfig};
use crate::pair::Pair;
use crate::scalar::{frac, QContext, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub id: String,
    /// The identity being checked, in words.
    pub identity: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub witness: Option<String>,
}

impl Case {
    /// An exact check: passes iff `outcome` is `Ok`; the error becomes the witness.
    pub fn exact(id: impl Into<String>, identity: &str, outcome: Result<()>) -> Self {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        Case { id: id.into(), identity: identity.into(), status, residual: None, witness }
    }

    /// A numeric check against `tol`.
    pub fn residual(id: impl Into<String>, identity: &str, residual: f64, tol: f64) -> Self {
        let pass = residual.is_finite() && residual < tol;
        Case {
            id: id.into(),
            identity: identity.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            witness: (!pass).then(|| format!("residual {residual:e} vs tolerance {tol:e}")),
        }
    }

    /// A check that already applied its own tolerance.
    pub fn comparison(id: impl Into<String>, identity: &str, outcome: Result<Comparison>) -> Self {
        Self::from_result(id, identity, outcome.map(|c| c.residual))
    }

    /// `Ok(residual)` passes; `ToleranceExceeded` fails with its value; any
    /// other error fails with the message as witness.
    pub fn from_result(id: impl Into<String>, identity: &str, outcome: Result<f64>) -> Self {
        let (status, residual, witness) = match outcome {
            Ok(r) => (Status::Pass, Some(r), None),
            Err(e @ Error::ToleranceExceeded { .. }) => {
                let Error::ToleranceExceeded { value, .. } = &e else { unreachable!() };
                (Status::Fail, Some(*value), Some(e.to_string()))
            }
            Err(e) => (Status::Fail, None, Some(e.to_string())),
        };
        Case { id: id.into(), identity: identity.into(), status, residual, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    QPoly,
    Macdonald,
    Sov,
    Transitions,
    NumKernel,
    Ruijsenaars,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::QPoly, Suite::Macdonald, Suite::Sov, Suite::Transitions, Suite::NumKernel, Suite::Ruijsenaars];

    pub fn name(self) -> &'static str {
        match self {
            Suite::QPoly => "qpoly",
            Suite::Macdonald => "macdonald",
            Suite::Sov => "sov",
            Suite::Transitions => "transitions",
            Suite::NumKernel => "numkernel",
            Suite::Ruijsenaars => "ruijsenaars",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Parameter grid for the exact suites.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGrid {
    pub s: Vec<Q>,
    pub g: Vec<u32>,
    pub xi: Vec<Q>,
    /// Largest `λ2 - λ1`.
    pub max_width: i64,
    /// Largest `|λ_i|`.
    pub bound: i64,
}

impl Default for ExactGrid {
    fn default() -> Self {
        ExactGrid {
            s: vec![frac(1, 2), frac(1, 3), frac(3, 5)],
            g: vec![1, 2, 3],
            xi: vec![frac(1, 1), frac(2, 1), frac(3, 2)],
            max_width: 6,
            bound: 6,
        }
    }
}

impl ExactGrid {
    pub fn pairs(&self) -> Vec<Pair> {
        Pair::grid(self.max_width, self.bound)
    }

    /// Every `(s, g, ξ)` combination.
    pub fn contexts(&self) -> Result<Vec<QContext>> {
        let mut out = Vec::new();
        for s in &self.s {
            for g in &self.g {
                for xi in &self.xi {
                    out.push(QContext::new(s.clone(), *g, xi.clone())?);
                }
            }
        }
        Ok(out)
    }

    /// One context per `(s, g)`, with the first `ξ`; for quantities that do
    /// not involve `ξ`.
    pub fn contexts_without_xi(&self) -> Result<Vec<QContext>> {
        let xi = self.xi.first().cloned().unwrap_or_else(|| frac(1, 1));
        let mut out = Vec::new();
        for s in &self.s {
            for g in &self.g {
                out.push(QContext::new(s.clone(), *g, xi.clone())?);
            }
        }
        Ok(out)
    }
}

/// Everything a suite run depends on.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub grid: ExactGrid,
    pub numeric: NumericConfig,
    pub seed: u64,
    /// Random symmetric polynomials per context in the operator checks.
    pub random_polys: usize,
    /// Random phase points in the classical checks.
    pub phase_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: ExactGrid::default(),
            numeric: NumericConfig::default(),
            seed: 0,
            random_polys: 4,
            phase_points: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Parameter names with their values, as strings.
    pub grid: Vec<(String, Vec<String>)>,
    pub cases: Vec<Case>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed())
    }
}

fn grid_description(suite: Suite, cfg: &VerifyConfig) -> Vec<(String, Vec<String>)> {
    let strs = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    let exact = matches!(suite, Suite::QPoly | Suite::Macdonald | Suite::Sov | Suite::Transitions | Suite::All);
    if exact {
        out.push(("s".into(), strs(&cfg.grid.s)));
        out.push(("g".into(), cfg.grid.g.iter().map(|g| g.to_string()).collect()));
        out.push(("xi".into(), strs(&cfg.grid.xi)));
        out.push(("max_width".into(), vec![cfg.grid.max_width.to_string()]));
        out.push(("bound".into(), vec![cfg.grid.bound.to_string()]));
    }
    if matches!(suite, Suite::Sov | Suite::Macdonald | Suite::All) {
        out.push(("random_polys".into(), vec![cfg.random_polys.to_string()]));
    }
    if matches!(suite, Suite::NumKernel | Suite::All) {
        out.push(("quad_points".into(), vec![cfg.numeric.quad_points.to_string()]));
        out.push(("tol_tight".into(), vec![format!("{:e}", cfg.numeric.tol_tight)]));
    }
    if matches!(suite, Suite::Ruijsenaars | Suite::All) {
        out.push(("phase_points".into(), vec![cfg.phase_points.to_string()]));
    }
    out.push(("seed".into(), vec![cfg.seed.to_string()]));
    out
}

/// Runs one suite, or all of them in order.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.numeric.validate()?;
    let start = Instant::now();
    let cases = match suite {
        Suite::QPoly => qpoly_cases(cfg)?,
        Suite::Macdonald => macdonald_cases(cfg)?,
        Suite::Sov => sov_cases(cfg)?,
        Suite::Transitions => transition_cases(cfg)?,
        Suite::NumKernel => numkernel_cases(cfg),
        Suite::Ruijsenaars => ruijsenaars_cases(cfg),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                for mut c in run_suite(s, cfg)?.cases {
                    c.id = format!("{}/{}", s.name(), c.id);
                    all.push(c);
                }
            }
            all
        }
    };
    Ok(SuiteReport { suite, grid: grid_description(suite, cfg), cases, elapsed_ms: start.elapsed().as_millis() })
}

/// A symmetric Laurent polynomial with `terms` monomial-symmetric summands
/// `m_{(a,b)}`, `|a|, |b| <= bound`, and small rational coefficients.
pub fn random_symmetric<R: Rng>(rng: &mut R, bound: i64, terms: usize) -> Laurent2 {
    let mut p = Laurent2::zero();
    for _ in 0..terms {
        let a = rng.random_range(-bound..=bound);
        let b = rng.random_range(-bound..=bound);
        let num: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
        let c = frac(num, rng.random_range(1..=4));
        p.add_term((a, b), c.clone());
        if a != b {
            p.add_term((b, a), c);
        }
    }
    p
}

pub(crate) fn ctx_label(ctx: &QContext) -> String {
    format!("s={},g={},xi={}", ctx.s(), ctx.g(), ctx.xi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn random_polynomials_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_symmetric(&mut rng, 3, 4);
            assert!(p.is_symmetric());
        }
    }

    #[test]
    fn default_grid_size() {
        let g = ExactGrid::default();
        assert_eq!(g.contexts().unwrap().len(), 27);
        assert_eq!(g.contexts_without_xi().unwrap().len(), 9);
        assert_eq!(g.pairs().len(), 70);
    }

    #[test]
    fn case_constructors() {
        assert!(Case::exact("a", "x", Ok(())).passed());
        let f = Case::exact("a", "x", Err(Error::NotSymmetric));
        assert!(!f.passed() && f.witness.is_some());
        assert!(!Case::residual("a", "x", 1.0, 0.5).passed());
        assert!(!Case::residual("a", "x", f64::NAN, 0.5).passed());
        let e = Error::ToleranceExceeded { what: "w".into(), value: 2.0, tol: 1.0 };
        let c = Case::from_result("a", "x", Err(e));
        assert_eq!(c.residual, Some(2.0));
    }
}
