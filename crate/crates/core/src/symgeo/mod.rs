//! Numerical verification of the Clifford and Chekanov constructions in
//! `R^4 = C^2` with `omega = dx1^dy1 + dx2^dy2` and primitive
//! `lambda = 1/2 sum (x_j dy_j - y_j dx_j)`.
//!
//! Both tori are parametrised from a neighbourhood of the zero section of
//! `T*L` with coordinates `(t1, t2, s1, s2)` and the symplectic form
//! `-d(s1 dt1 + s2 dt2)`.

mod chart;
mod fd;
mod flow;
mod loops;
mod monodromy;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use chart::{
    eval_chart, pullback_identity_residual, random_short_paths, symplectic_grid, symplectic_residual,
    tubular_delta, ChartPoint, ChartSpec,
};
pub use flow::{flow_image_distance, hamiltonian_residual, torus_invariance, FlowSpec, TORUS_TOLERANCE};
pub use loops::{
    action_integral, maslov_index, maslov_index_adaptive, monotonicity_constant, monotonicity_fit, LoopSpec, MonotonicityFit,
    MAX_LOOP_SAMPLES, MONOTONICITY_TOLERANCE,
};
pub use monodromy::{
    clifford_oracle, cotangent_lift_fiber, induced_monodromy, induced_monodromy_at, section_image,
    twist_exclusion, twist_exclusion_detail, MonodromyMeasurement, SectionImage, TwistExclusion,
    MAX_WINDING_DRIFT, ORACLE_TOLERANCE,
};

/// The two torus families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Clifford,
    Chekanov,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Clifford => "clifford",
            Family::Chekanov => "chekanov",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "clifford" => Ok(Family::Clifford),
            "chekanov" => Ok(Family::Chekanov),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown family '{s}', expected clifford or chekanov") }),
        }
    }
}

/// A point of `R^4` with `z_j = x_j + i y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point4 {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

impl Point4 {
    pub const fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self { x1, y1, x2, y2 }
    }

    pub fn from_complex(z1: Complex64, z2: Complex64) -> Self {
        Self::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn z1(&self) -> Complex64 {
        Complex64::new(self.x1, self.y1)
    }

    pub fn z2(&self) -> Complex64 {
        Complex64::new(self.x2, self.y2)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.y1, self.x2, self.y2]
    }

    pub fn from_array([x1, y1, x2, y2]: [f64; 4]) -> Self {
        Self::new(x1, y1, x2, y2)
    }

    pub fn norm(&self) -> f64 {
        self.to_array().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Point4) -> f64 {
        let (a, b) = (self.to_array(), other.to_array());
        (0..4).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
    }

    /// `lambda_p(v) = 1/2 sum (x_j v_{y_j} - y_j v_{x_j})`.
    pub fn liouville(&self, v: &Point4) -> f64 {
        0.5 * (self.x1 * v.y1 - self.y1 * v.x1 + self.x2 * v.y2 - self.y2 * v.x2)
    }

    /// `omega(u, v) = sum (u_{x_j} v_{y_j} - u_{y_j} v_{x_j})`.
    pub fn omega(u: &Point4, v: &Point4) -> f64 {
        u.x1 * v.y1 - u.y1 * v.x1 + u.x2 * v.y2 - u.y2 * v.x2
    }
}

/// Outcome of one numerical check: passes iff `max_residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// The check relies on a trusted external identity rather than a computation.
    #[serde(default)]
    pub oracle_backed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub metadata: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        // non-finite residuals are stored as f64::MAX so the report stays serialisable
        let max_residual = if max_residual.is_finite() { max_residual } else { f64::MAX };
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            oracle_backed: false,
            note: None,
            metadata: BTreeMap::new(),
        }
    }

    /// A check that could not be carried out.
    pub fn errored(name: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        Self::new(name, f64::MAX, tolerance).with_note(err.to_string())
    }

    pub fn with_meta(mut self, key: &str, value: f64) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn oracle_backed(mut self) -> Self {
        self.oracle_backed = true;
        self
    }
}
