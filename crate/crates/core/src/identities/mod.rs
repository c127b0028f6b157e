//! Registry of checkable identities: each id maps to a parameter schema and
//! evaluators for both sides.

pub(crate) mod formulas;
mod result;

pub use result::*;

use crate::error::{Error, Result};
use crate::numerics::{ComplexValue, PrecisionConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Named parameter values; integer parameters are carried as exact reals.
pub type Params = BTreeMap<String, ComplexValue>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityId {
    RamZetaOdd,
    RamGen,
    RamShifted,
    HybridHalf,
    ClosedOdd,
    ClosedM1,
    QuarterSum,
    QuarterPv,
    #[serde(rename = "SIGMA_2M")]
    Sigma2m,
    /// Wire id `DGKM`.
    #[serde(rename = "DGKM")]
    RaabeDigamma,
    RaabeSum,
    RaabeInt,
    RaabeClosed,
    Lipschitz,
    LambertRoutes,
    Glaisher,
    Schlomilch,
}

impl IdentityId {
    pub const ALL: [IdentityId; 17] = [
        IdentityId::RamZetaOdd,
        IdentityId::RamGen,
        IdentityId::RamShifted,
        IdentityId::HybridHalf,
        IdentityId::ClosedOdd,
        IdentityId::ClosedM1,
        IdentityId::QuarterSum,
        IdentityId::QuarterPv,
        IdentityId::Sigma2m,
        IdentityId::RaabeDigamma,
        IdentityId::RaabeSum,
        IdentityId::RaabeInt,
        IdentityId::RaabeClosed,
        IdentityId::Lipschitz,
        IdentityId::LambertRoutes,
        IdentityId::Glaisher,
        IdentityId::Schlomilch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::RamZetaOdd => "RAM_ZETA_ODD",
            IdentityId::RamGen => "RAM_GEN",
            IdentityId::RamShifted => "RAM_SHIFTED",
            IdentityId::HybridHalf => "HYBRID_HALF",
            IdentityId::ClosedOdd => "CLOSED_ODD",
            IdentityId::ClosedM1 => "CLOSED_M1",
            IdentityId::QuarterSum => "QUARTER_SUM",
            IdentityId::QuarterPv => "QUARTER_PV",
            IdentityId::Sigma2m => "SIGMA_2M",
            IdentityId::RaabeDigamma => "DGKM",
            IdentityId::RaabeSum => "RAABE_SUM",
            IdentityId::RaabeInt => "RAABE_INT",
            IdentityId::RaabeClosed => "RAABE_CLOSED",
            IdentityId::Lipschitz => "LIPSCHITZ",
            IdentityId::LambertRoutes => "LAMBERT_ROUTES",
            IdentityId::Glaisher => "GLAISHER",
            IdentityId::Schlomilch => "SCHLOMILCH",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        IdentityId::ALL.iter().copied().find(|id| id.as_str() == up).ok_or_else(|| {
            let names: Vec<_> = IdentityId::ALL.iter().map(|id| id.as_str()).collect();
            Error::spec(format!("unknown identity '{s}'; valid ids: {}", names.join(", ")))
        })
    }
}

/// Relative tolerance used for the pass/fail status of an identity.
pub fn tolerance(id: IdentityId) -> f64 {
    match id {
        IdentityId::RamGen | IdentityId::RamShifted | IdentityId::QuarterPv => 1e-5,
        IdentityId::RaabeInt => 1e-4,
        IdentityId::RaabeSum => 1e-6,
        _ => 1e-8,
    }
}

/// One parameter of an identity's schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub description: &'static str,
    /// Value used when the parameter is omitted.
    pub default: Option<f64>,
}

const fn req(name: &'static str, description: &'static str) -> ParamSpec {
    ParamSpec { name, description, default: None }
}

const fn opt(name: &'static str, description: &'static str, default: f64) -> ParamSpec {
    ParamSpec { name, description, default: Some(default) }
}

/// Registry entry returned by [`list_identities`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityInfo {
    pub id: IdentityId,
    pub params: Vec<ParamSpec>,
    pub hypotheses: &'static str,
    pub anchor: &'static str,
    pub tolerance: f64,
}

impl IdentityId {
    pub fn schema(self) -> Vec<ParamSpec> {
        use IdentityId::*;
        match self {
            RamZetaOdd => vec![req("m", "nonzero integer"), req("alpha", "Re > 0; beta = pi^2/alpha")],
            RamGen => vec![req("s", "Re s > 2"), req("alpha", "Re > 0; beta = 4pi^2/alpha")],
            RamShifted => vec![
                req("a", "shift in [0, 1)"),
                req("s", "Re s > 2"),
                req("alpha", "Re > 0; beta = 4pi^2/alpha"),
            ],
            HybridHalf => vec![req("m", "integer >= 1"), req("alpha", "Re > 0; beta = 4pi^2/alpha")],
            ClosedOdd => vec![req("m", "odd integer > 1")],
            ClosedM1 | Schlomilch => vec![],
            QuarterSum => vec![req("m", "integer > 1"), req("alpha", "Re > 0; beta = 4pi^2/alpha")],
            QuarterPv => vec![req("m", "integer > 1"), req("beta", "real > 0 (complex: ordinary integral)")],
            Sigma2m => vec![req("m", "integer >= 1"), req("y", "Re y > 0")],
            RaabeDigamma => vec![req("u", "Re u > 0")],
            RaabeSum => vec![req("z", "Re z > 0"), req("w", "Re w > 0")],
            RaabeInt => vec![req("z", "Re z > 0"), req("w", "Re w > 0")],
            RaabeClosed => vec![req("m", "integer >= 0"), req("w", "Re w > 0"), opt("y", "frequency > 0", 1.0)],
            Lipschitz => vec![req("a", "shift in [0, 1)"), req("s", "Re s > 1"), req("tau", "Im tau > 0")],
            LambertRoutes => vec![
                req("s", "Re s > 1 (Re s > 2 when a = 0)"),
                req("y", "Re y > 0"),
                req("a", "shift in [0, 1)"),
            ],
            Glaisher => vec![req("m", "odd integer > 1")],
        }
    }

    pub fn hypotheses(self) -> &'static str {
        use IdentityId::*;
        match self {
            RamZetaOdd => "m != 0, alpha*beta = pi^2",
            RamGen => "Re s > 2, alpha*beta = 4pi^2",
            RamShifted => "0 <= a < 1, Re s > 2, alpha*beta = 4pi^2",
            HybridHalf => "m >= 1, alpha*beta = 4pi^2 (m = 1 is a boundary case)",
            ClosedOdd => "m odd, m > 1",
            ClosedM1 | Schlomilch => "none",
            QuarterSum => "m > 1, alpha*beta = 4pi^2",
            QuarterPv => "m > 1, Re beta > 0",
            Sigma2m => "m >= 1, Re y > 0",
            RaabeDigamma => "Re u > 0",
            RaabeSum | RaabeInt => "Re z > 0, Re w > 0",
            RaabeClosed => "m >= 0, y > 0, Re w > 0",
            Lipschitz => "0 <= a < 1, Re s > 1, Im tau > 0",
            LambertRoutes => "0 <= a < 1, Re y > 0, Re s > 1 (Re s > 2 if a = 0)",
            Glaisher => "m odd, m > 1",
        }
    }

    /// What the identity states, in words.
    pub fn anchor(self) -> &'static str {
        use IdentityId::*;
        match self {
            RamZetaOdd => "Ramanujan's formula for zeta(2m+1)",
            RamGen => "Ramanujan's generalization with a principal-value cot integral",
            RamShifted => "shifted generalization of Ramanujan's formula with shift a",
            HybridHalf => "hybrid transformation between n and n-1/2 Lambert series",
            ClosedOdd => "closed form for the hybrid series at alpha = 2pi, odd m",
            ClosedM1 => "closed form for the hybrid series at m = 1",
            QuarterSum => "sum of the shifted formula at a = 1/4 and a = 3/4",
            QuarterPv => "sech-cot principal-value integral equals a mod-4 character Lambert series",
            Sigma2m => "transformation of sum sigma_2m(n) e^{-ny} via Shi and Chi",
            RaabeDigamma => "sum of Raabe cosine transforms equals a digamma combination",
            RaabeSum => "sum over n of the generalized Raabe transform at y = 2 pi n",
            RaabeInt => "integral over v of the generalized Raabe transform at y = 2 pi v",
            RaabeClosed => "integer-order generalized Raabe transform through Shi and Chi",
            Lipschitz => "Lipschitz summation formula",
            LambertRoutes => "shifted Lambert series through Hurwitz zeta values",
            Glaisher => "Glaisher's evaluation sum n^{2m-1}/(e^{2 pi n}-1) = B_2m/4m",
            Schlomilch => "Schlomilch's evaluation sum n/(e^{2 pi n}-1) = 1/24 - 1/(8 pi)",
        }
    }
}

/// The complete registry in a stable order.
pub fn list_identities() -> Vec<IdentityInfo> {
    IdentityId::ALL
        .iter()
        .map(|&id| IdentityInfo {
            id,
            params: id.schema(),
            hypotheses: id.hypotheses(),
            anchor: id.anchor(),
            tolerance: tolerance(id),
        })
        .collect()
}

/// Resolves `params` against the schema of `id`: fills defaults, rejects
/// unknown or missing names.
pub fn resolve_params(id: IdentityId, params: &Params) -> Result<Params> {
    let schema = id.schema();
    for name in params.keys() {
        if !schema.iter().any(|p| p.name == name) {
            let names: Vec<_> = schema.iter().map(|p| p.name).collect();
            return Err(Error::spec(format!(
                "{id} does not take parameter '{name}' (expects: {})",
                if names.is_empty() { "none".to_string() } else { names.join(", ") }
            )));
        }
    }
    let mut out = Params::new();
    for p in schema {
        match (params.get(p.name), p.default) {
            (Some(v), _) => {
                out.insert(p.name.to_string(), *v);
            }
            (None, Some(d)) => {
                out.insert(p.name.to_string(), ComplexValue::new(d, 0.0));
            }
            (None, None) => {
                return Err(Error::spec(format!("{id} requires parameter '{}' ({})", p.name, p.description)))
            }
        }
    }
    Ok(out)
}

/// Evaluates both sides of `id` at `params`.
pub fn check(id: IdentityId, params: &Params, cfg: &PrecisionConfig) -> Result<IdentityCheckResult> {
    cfg.validate()?;
    let resolved = resolve_params(id, params)?;
    formulas::evaluate(id, &resolved, cfg)
}

/// Like [`check`], but evaluation errors become a failed result instead of aborting.
pub fn check_or_record(id: IdentityId, params: &Params, cfg: &PrecisionConfig) -> IdentityCheckResult {
    check(id, params, cfg).unwrap_or_else(|e| {
        let echo = params.iter().map(|(k, v)| (k.clone(), *v)).collect();
        IdentityCheckResult::from_error(id, echo, tolerance(id), e.to_string())
    })
}

/// Cartesian product of named value lists, last name varying fastest.
pub fn grid_points(grid: &[(String, Vec<ComplexValue>)]) -> Vec<Params> {
    if grid.iter().any(|(_, vals)| vals.is_empty()) {
        return Vec::new();
    }
    let mut points = vec![Params::new()];
    for (name, vals) in grid {
        let mut next = Vec::with_capacity(points.len() * vals.len());
        for p in &points {
            for v in vals {
                let mut q = p.clone();
                q.insert(name.clone(), *v);
                next.push(q);
            }
        }
        points = next;
    }
    points
}

/// Summary of a grid run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub results: Vec<IdentityCheckResult>,
    pub max_rel_residual: f64,
    pub failures: usize,
}

impl GridReport {
    pub fn from_results(results: Vec<IdentityCheckResult>) -> Self {
        let max_rel_residual = results.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
        let failures = results.iter().filter(|r| !r.passed()).count();
        GridReport { results, max_rel_residual, failures }
    }
}

/// One result per grid point, in grid order; per-point errors are recorded in place.
pub fn grid_check(id: IdentityId, grid: &[(String, Vec<ComplexValue>)], cfg: &PrecisionConfig) -> GridReport {
    let results = grid_points(grid).iter().map(|p| check_or_record(id, p, cfg)).collect();
    GridReport::from_results(results)
}

pub(crate) fn finish(
    id: IdentityId,
    params: Vec<(String, crate::numerics::ComplexValue)>,
    sides: Sides,
    cfg: &PrecisionConfig,
) -> IdentityCheckResult {
    IdentityCheckResult::from_sides(id, params, sides, tolerance(id), cfg.abs_tol)
}
