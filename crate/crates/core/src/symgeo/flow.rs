//! The two unitary Hamiltonian flows.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chart::{ChartPoint, ChartSpec};
use super::{Family, Point4, VerificationReport};
use crate::error::{Error, Result};

/// Tolerance for the distance from a flowed torus point to the torus.
pub const TORUS_TOLERANCE: f64 = 1e-9;

const TIME_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowSpec {
    /// `A_t = (cos(pi t/2), -sin(pi t/2); sin(pi t/2), cos(pi t/2))` acting on `(z1, z2)`.
    CliffordRotation,
    /// `A_t(z1, z2) = (e^{i pi t} z1, z2)`.
    ChekanovHalfTurn,
}

impl FlowSpec {
    pub fn for_family(family: Family) -> Self {
        match family {
            Family::Clifford => FlowSpec::CliffordRotation,
            Family::Chekanov => FlowSpec::ChekanovHalfTurn,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            FlowSpec::CliffordRotation => Family::Clifford,
            FlowSpec::ChekanovHalfTurn => Family::Chekanov,
        }
    }

    pub fn flow_point(&self, t: f64, p: &Point4) -> Point4 {
        let (z1, z2) = (p.z1(), p.z2());
        match self {
            FlowSpec::CliffordRotation => {
                let (sin, cos) = (FRAC_PI_2 * t).sin_cos();
                Point4::from_complex(z1 * cos - z2 * sin, z1 * sin + z2 * cos)
            }
            FlowSpec::ChekanovHalfTurn => Point4::from_complex(z1 * Complex64::from_polar(1.0, PI * t), z2),
        }
    }

    pub fn hamiltonian(&self, p: &Point4) -> f64 {
        match self {
            FlowSpec::CliffordRotation => FRAC_PI_2 * (p.x2 * p.y1 - p.x1 * p.y2),
            FlowSpec::ChekanovHalfTurn => FRAC_PI_2 * (p.x1 * p.x1 + p.y1 * p.y1),
        }
    }

    /// `dH` in the order `(x1, y1, x2, y2)`.
    pub fn gradient(&self, p: &Point4) -> [f64; 4] {
        match self {
            FlowSpec::CliffordRotation => {
                [-FRAC_PI_2 * p.y2, FRAC_PI_2 * p.x2, FRAC_PI_2 * p.y1, -FRAC_PI_2 * p.x1]
            }
            FlowSpec::ChekanovHalfTurn => [PI * p.x1, PI * p.y1, 0.0, 0.0],
        }
    }

    /// `X_H` from `omega(X, .) = -dH`: `X^{x_j} = -dH/dy_j`, `X^{y_j} = dH/dx_j`.
    pub fn vector_field(&self, p: &Point4) -> Point4 {
        let [hx1, hy1, hx2, hy2] = self.gradient(p);
        Point4::new(-hy1, hx1, -hy2, hx2)
    }
}

/// `max_t |(A_{t+dt} p - A_{t-dt} p) / 2dt - X_H(A_t p)|` over `t in [0, 1]`.
pub fn hamiltonian_residual(fl: &FlowSpec, p: &Point4, dt: f64) -> Result<f64> {
    if !(dt > 0.0 && dt <= 1e-3) {
        return Err(Error::InvalidParameter(format!("dt must lie in (0, 1e-3], got {dt}")));
    }
    let mut worst = 0.0f64;
    for i in 0..=TIME_SAMPLES {
        let t = i as f64 / TIME_SAMPLES as f64;
        let (fwd, back) = (fl.flow_point(t + dt, p).to_array(), fl.flow_point(t - dt, p).to_array());
        let x = fl.vector_field(&fl.flow_point(t, p)).to_array();
        let err = (0..4).map(|k| ((fwd[k] - back[k]) / (2.0 * dt) - x[k]).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(err);
    }
    Ok(worst)
}

/// Max distance from `A_1(p)` to the torus `target` over an `n x n` grid of
/// points `p` on the torus `source`.
pub fn flow_image_distance(
    fl: &FlowSpec,
    c: &ChartSpec,
    source: [f64; 2],
    target: [f64; 2],
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("grid size must be positive".into()));
    }
    let [p1, p2] = c.periods();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let q = ChartPoint::new(p1 * i as f64 / n as f64, p2 * j as f64 / n as f64, source[0], source[1]);
            let image = fl.flow_point(1.0, &c.eval(&q)?);
            worst = worst.max(c.torus_distance(&image, target)?);
        }
    }
    Ok(worst)
}

const INVARIANCE_GRID: usize = 64;

/// Invariance of the monotone torus `{s = 0}` under the time-one map.
pub fn torus_invariance(fl: &FlowSpec, c: &ChartSpec) -> VerificationReport {
    let name = format!("{}.torus_invariance", c.family());
    if fl.family() != c.family() {
        let err = Error::InvalidParameter(format!("flow {fl:?} does not act on the {} chart", c.family()));
        return VerificationReport::errored(name, TORUS_TOLERANCE, &err);
    }
    match flow_image_distance(fl, c, [0.0, 0.0], [0.0, 0.0], INVARIANCE_GRID) {
        Ok(d) => VerificationReport::new(name, d, TORUS_TOLERANCE).with_meta("grid", INVARIANCE_GRID as f64),
        Err(e) => VerificationReport::errored(name, TORUS_TOLERANCE, &e),
    }
}
