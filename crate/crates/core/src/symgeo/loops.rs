//! Action and Maslov index of closed loops on a section torus.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chart::{ChartPoint, ChartSpec};
use super::fd::{five_point, wrap_angle};
use super::Point4;
use crate::error::{Error, Result};
use crate::exact::Int2Vec;

/// Relative tolerance for `alpha = c mu`.
pub const MONOTONICITY_TOLERANCE: f64 = 1e-6;

/// Sample cap for [`maslov_index_adaptive`].
pub const MAX_LOOP_SAMPLES: usize = 16384;

const TANGENT_STEP: f64 = 1e-3;
const FRAME_FLOOR: f64 = 1e-9;

/// The straight loop of class `homology` on the torus `{s = section}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    homology: Int2Vec,
    samples: usize,
    section: [f64; 2],
}

impl LoopSpec {
    pub fn new(homology: Int2Vec, samples: usize, section: [f64; 2]) -> Result<Self> {
        if homology.is_zero() {
            return Err(Error::InvalidLoop("homology class must be nonzero".into()));
        }
        if samples < 64 || !samples.is_power_of_two() {
            return Err(Error::InvalidLoop(format!("samples must be a power of two >= 64, got {samples}")));
        }
        if section.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidLoop(format!("non-finite section {section:?}")));
        }
        Ok(Self { homology, samples, section })
    }

    /// Loop of class `(p, q)` on the monotone torus.
    pub fn basis(p: i64, q: i64, samples: usize) -> Result<Self> {
        Self::new(Int2Vec::new(p, q), samples, [0.0, 0.0])
    }

    pub fn homology(&self) -> Int2Vec {
        self.homology
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn section(&self) -> [f64; 2] {
        self.section
    }

    pub fn with_samples(&self, samples: usize) -> Result<Self> {
        Self::new(self.homology, samples, self.section)
    }

    /// Chart point at loop parameter `tau` (period 1).
    pub fn chart_point(&self, c: &ChartSpec, tau: f64) -> ChartPoint {
        let [p1, p2] = c.periods();
        ChartPoint::new(
            self.homology.p as f64 * tau * p1,
            self.homology.q as f64 * tau * p2,
            self.section[0],
            self.section[1],
        )
    }

    /// The loop's sample points in `R^4`, excluding the repeated endpoint.
    pub fn points(&self, c: &ChartSpec) -> Result<Vec<Point4>> {
        (0..self.samples).map(|i| c.eval(&self.chart_point(c, self.tau(i)))).collect()
    }

    fn tau(&self, i: usize) -> f64 {
        i as f64 / self.samples as f64
    }
}

/// Periodic trapezoid rule for `int lambda` over the loop.
pub fn action_integral(c: &ChartSpec, lp: &LoopSpec) -> Result<f64> {
    c.check_domain(&lp.chart_point(c, 0.0), 0.0)?;
    let curve = |tau: f64| c.eval(&lp.chart_point(c, tau)).map(Point4::to_array);
    let mut sum = 0.0;
    for i in 0..lp.samples {
        let tau = lp.tau(i);
        let point = Point4::from_array(curve(tau)?);
        let velocity = Point4::from_array(five_point(curve, tau, TANGENT_STEP)?);
        sum += point.liouville(&velocity);
    }
    Ok(sum / lp.samples as f64)
}

/// `det W` for the tangent frame `(d/dt1, d/dt2)` viewed in `C^2`.
fn frame_determinant(c: &ChartSpec, at: &ChartPoint) -> Result<Complex64> {
    let tangent = |axis: usize| -> Result<Point4> {
        let curve = |x: f64| {
            let mut q = at.to_array();
            q[axis] = x;
            c.eval(&ChartPoint::from_array(q)).map(Point4::to_array)
        };
        five_point(curve, at.to_array()[axis], TANGENT_STEP).map(Point4::from_array)
    };
    let (u, v) = (tangent(0)?, tangent(1)?);
    Ok(u.z1() * v.z2() - v.z1() * u.z2())
}

/// Winding number of `det(W)^2 / |det(W)|^2` along the loop.
pub fn maslov_index(c: &ChartSpec, lp: &LoopSpec) -> Result<i64> {
    let mut phases = Vec::with_capacity(lp.samples);
    for i in 0..lp.samples {
        let det = frame_determinant(c, &lp.chart_point(c, lp.tau(i)))?;
        if det.norm() < FRAME_FLOOR {
            return Err(Error::FrameDegenerate(det.norm()));
        }
        phases.push(2.0 * det.arg());
    }
    let mut total = 0.0;
    for i in 0..lp.samples {
        let step = wrap_angle(phases[(i + 1) % lp.samples] - phases[i]);
        if step.abs() > FRAC_PI_2 {
            return Err(Error::Undersampled(step));
        }
        total += step;
    }
    Ok((total / TAU).round() as i64)
}

/// [`maslov_index`], doubling the samples while the phase steps are too large.
/// Returns the index and the number of samples that resolved it.
pub fn maslov_index_adaptive(c: &ChartSpec, lp: &LoopSpec) -> Result<(i64, usize)> {
    let mut current = *lp;
    loop {
        match maslov_index(c, &current) {
            Err(Error::Undersampled(_)) if current.samples < MAX_LOOP_SAMPLES => {
                current = current.with_samples(2 * current.samples)?;
            }
            other => return other.map(|mu| (mu, current.samples)),
        }
    }
}

/// Least-squares fit of `alpha(loop_i) = c mu(loop_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityFit {
    pub constant: f64,
    pub actions: [f64; 2],
    pub maslov: [i64; 2],
    /// `max_i |alpha_i - c mu_i| / max_i |alpha_i|`.
    pub relative_residual: f64,
}

pub fn monotonicity_fit(c: &ChartSpec, loops: &[LoopSpec; 2]) -> Result<MonotonicityFit> {
    let (h0, h1) = (loops[0].homology(), loops[1].homology());
    if h0.p as i128 * h1.q as i128 - h0.q as i128 * h1.p as i128 == 0 {
        return Err(Error::InvalidLoop("loops must span first homology".into()));
    }
    let actions = [action_integral(c, &loops[0])?, action_integral(c, &loops[1])?];
    let maslov = [maslov_index_adaptive(c, &loops[0])?.0, maslov_index_adaptive(c, &loops[1])?.0];
    let norm = (maslov[0] * maslov[0] + maslov[1] * maslov[1]) as f64;
    if norm == 0.0 {
        return Err(Error::NotMonotone("Maslov class vanishes on both loops".into()));
    }
    let scale = actions[0].abs().max(actions[1].abs());
    if scale == 0.0 {
        return Err(Error::NotMonotone("action class vanishes on both loops".into()));
    }
    let constant = (actions[0] * maslov[0] as f64 + actions[1] * maslov[1] as f64) / norm;
    let relative_residual =
        (0..2).map(|i| (actions[i] - constant * maslov[i] as f64).abs()).fold(0.0, f64::max) / scale;
    Ok(MonotonicityFit { constant, actions, maslov, relative_residual })
}

/// The constant `c` with `alpha = c mu`, or `NotMonotone` beyond 1e-6 relative.
pub fn monotonicity_constant(c: &ChartSpec, loops: &[LoopSpec; 2]) -> Result<f64> {
    let fit = monotonicity_fit(c, loops)?;
    if fit.relative_residual > MONOTONICITY_TOLERANCE {
        return Err(Error::NotMonotone(format!(
            "alpha = {:?} is not proportional to mu = {:?} (relative residual {:.3e})",
            fit.actions, fit.maslov, fit.relative_residual
        )));
    }
    Ok(fit.constant)
}
