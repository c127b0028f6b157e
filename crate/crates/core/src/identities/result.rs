use super::IdentityId;
use crate::numerics::ComplexValue;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Residual within tolerance but a diagnostic flag was raised.
    Degraded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Degraded => "degraded",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Series terms summed across both sides.
    pub terms: usize,
    /// Quadrature cells or panels integrated across both sides.
    pub cells: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckResult {
    pub identity: IdentityId,
    pub params: Vec<(String, ComplexValue)>,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    pub rel_residual: f64,
    /// Remainder bounds of the left and right evaluations.
    pub tail_bounds: (f64, f64),
    pub tolerance: f64,
    pub status: Status,
    pub diagnostics: Diagnostics,
    /// Absolute residual accepted when both sides are below it.
    pub abs_floor: f64,
    pub boundary_case: bool,
    /// Set when evaluation failed; `lhs`/`rhs` are then NaN.
    pub error: Option<String>,
}

/// Side values and bookkeeping gathered by an evaluator.
#[derive(Debug, Clone, Default)]
pub struct Sides {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub lhs_bound: f64,
    pub rhs_bound: f64,
    pub diagnostics: Diagnostics,
    /// Absolute floor used when both sides are near zero.
    pub abs_floor: Option<f64>,
    /// Marks a point outside the proven range; downgrades a pass to degraded.
    pub boundary_case: bool,
}

impl IdentityCheckResult {
    pub fn from_sides(
        identity: IdentityId,
        params: Vec<(String, ComplexValue)>,
        sides: Sides,
        tolerance: f64,
        abs_tol: f64,
    ) -> Self {
        let abs_residual = (sides.lhs - sides.rhs).norm();
        let scale = sides.lhs.norm().max(sides.rhs.norm());
        let rel_residual = abs_residual / scale.max(abs_tol);
        let floor = sides.abs_floor.unwrap_or(1e3 * abs_tol).max(1e3 * abs_tol);
        let mut r = IdentityCheckResult {
            identity,
            params,
            lhs: sides.lhs,
            rhs: sides.rhs,
            abs_residual,
            rel_residual,
            tail_bounds: (sides.lhs_bound, sides.rhs_bound),
            tolerance,
            status: Status::Fail,
            diagnostics: sides.diagnostics,
            abs_floor: floor,
            boundary_case: sides.boundary_case,
            error: None,
        };
        r.status = r.grade();
        r
    }

    fn grade(&self) -> Status {
        if self.error.is_some() || !self.abs_residual.is_finite() {
            return Status::Fail;
        }
        let near_zero = self.lhs.norm().max(self.rhs.norm()) < self.abs_floor;
        let ok = self.rel_residual <= self.tolerance || (near_zero && self.abs_residual <= self.abs_floor);
        if !ok {
            Status::Fail
        } else if self.boundary_case {
            Status::Degraded
        } else {
            Status::Pass
        }
    }

    /// Recomputes the status against a different relative tolerance.
    pub fn regrade(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.status = self.grade();
        self
    }

    pub fn from_error(
        identity: IdentityId,
        params: Vec<(String, ComplexValue)>,
        tolerance: f64,
        error: String,
    ) -> Self {
        let nan = ComplexValue::new(f64::NAN, f64::NAN);
        IdentityCheckResult {
            identity,
            params,
            lhs: nan,
            rhs: nan,
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            tail_bounds: (f64::NAN, f64::NAN),
            tolerance,
            status: Status::Fail,
            diagnostics: Diagnostics::default(),
            abs_floor: f64::NAN,
            boundary_case: false,
            error: Some(error),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
