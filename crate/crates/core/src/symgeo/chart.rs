//! Explicit parametrisations of a neighbourhood of each torus.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fd::{central_jacobian, five_point};
use super::{Family, Point4};
use crate::error::{Error, Result};

/// Cotangent coordinates `(t1, t2, s1, s2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ChartPoint {
    pub t1: f64,
    pub t2: f64,
    pub s1: f64,
    pub s2: f64,
}

impl ChartPoint {
    pub const fn new(t1: f64, t2: f64, s1: f64, s2: f64) -> Self {
        Self { t1, t2, s1, s2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t1, self.t2, self.s1, self.s2]
    }

    pub fn from_array([t1, t2, s1, s2]: [f64; 4]) -> Self {
        Self::new(t1, t2, s1, s2)
    }
}

/// Clifford `Phi` or Chekanov `Psi o Phi'`, both with radius parameter `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    family: Family,
    b: f64,
}

impl ChartSpec {
    pub fn new(family: Family, b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidParameter(format!("chart radius b must be positive, got {b}")));
        }
        Ok(Self { family, b })
    }

    pub fn clifford(b: f64) -> Result<Self> {
        Self::new(Family::Clifford, b)
    }

    pub fn chekanov(b: f64) -> Result<Self> {
        Self::new(Family::Chekanov, b)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Upper bound for the fiber coordinates, `pi b^2`.
    pub fn fiber_bound(&self) -> f64 {
        PI * self.b * self.b
    }

    /// Periods of `(t1, t2)`. The Chekanov `t2` is the angle `theta` itself.
    pub fn periods(&self) -> [f64; 2] {
        match self.family {
            Family::Clifford => [1.0, 1.0],
            Family::Chekanov => [1.0, TAU],
        }
    }

    /// Checks `s1 < pi b^2` (and `s2` for Clifford) with the given margin.
    pub fn check_domain(&self, p: &ChartPoint, margin: f64) -> Result<()> {
        let arr = p.to_array();
        if arr.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite chart point {arr:?}")));
        }
        let bound = self.fiber_bound() - margin;
        if p.s1 >= bound {
            return Err(Error::Domain(format!("s1 = {} must be below {bound}", p.s1)));
        }
        if self.family == Family::Clifford && p.s2 >= bound {
            return Err(Error::Domain(format!("s2 = {} must be below {bound}", p.s2)));
        }
        Ok(())
    }

    /// Radius `sqrt(b^2 - s/pi)`.
    pub fn fiber_radius(&self, s: f64) -> Result<f64> {
        let r2 = self.b * self.b - s / PI;
        if !(r2 > 0.0) {
            return Err(Error::Domain(format!("fiber value {s} outside the chart")));
        }
        Ok(r2.sqrt())
    }

    pub fn eval(&self, p: &ChartPoint) -> Result<Point4> {
        self.check_domain(p, 0.0)?;
        match self.family {
            Family::Clifford => {
                let (r1, r2) = (self.fiber_radius(p.s1)?, self.fiber_radius(p.s2)?);
                let (a1, a2) = (TAU * p.t1, TAU * p.t2);
                Ok(Point4::new(r1 * a1.cos(), r1 * a1.sin(), r2 * a2.cos(), r2 * a2.sin()))
            }
            Family::Chekanov => {
                let r = self.fiber_radius(p.s1)?;
                let a = TAU * p.t1;
                let (theta, s, theta_star, s_star) = (p.t2, r * a.cos(), p.s2, r * a.sin());
                Ok(psi(theta, s, theta_star, s_star))
            }
        }
    }

    fn eval_array(&self, x: [f64; 4]) -> Result<[f64; 4]> {
        self.eval(&ChartPoint::from_array(x)).map(Point4::to_array)
    }

    /// Angle coordinates of a point near the torus, in radians.
    /// Clifford: `(arg z1, arg z2)`. Chekanov: `(atan2(s*, s), theta)`.
    pub fn angles(&self, p: &Point4) -> [f64; 2] {
        match self.family {
            Family::Clifford => [p.y1.atan2(p.x1), p.y2.atan2(p.x2)],
            Family::Chekanov => {
                let (theta, s, _, s_star) = psi_inverse(p);
                [s_star.atan2(s), theta]
            }
        }
    }

    /// Distance from `p` to the section torus `{s = (c1, c2)}` measured in the
    /// defining equations of the torus.
    pub fn torus_distance(&self, p: &Point4, section: [f64; 2]) -> Result<f64> {
        match self.family {
            Family::Clifford => {
                let (r1, r2) = (self.fiber_radius(section[0])?, self.fiber_radius(section[1])?);
                Ok(((p.z1().norm() - r1).powi(2) + (p.z2().norm() - r2).powi(2)).sqrt())
            }
            Family::Chekanov => {
                let r = self.fiber_radius(section[0])?;
                let (_, s, theta_star, s_star) = psi_inverse(p);
                Ok(((theta_star - section[1]).powi(2) + (s.hypot(s_star) - r).powi(2)).sqrt())
            }
        }
    }
}

/// `Psi(theta, s, theta*, s*)`, displayed as `(x1, x2, y1, y2)` and repacked.
fn psi(theta: f64, s: f64, theta_star: f64, s_star: f64) -> Point4 {
    let (sin, cos) = theta.sin_cos();
    let (es, ems) = (s.exp(), (-s).exp());
    let x1 = es * cos;
    let x2 = es * sin;
    let y1 = ems * (-theta_star * sin + s_star * cos);
    let y2 = ems * (theta_star * cos + s_star * sin);
    Point4::new(x1, y1, x2, y2)
}

/// Inverse of [`psi`], returning `(theta, s, theta*, s*)` with `theta` in `(-pi, pi]`.
fn psi_inverse(p: &Point4) -> (f64, f64, f64, f64) {
    let s = p.x1.hypot(p.x2).ln();
    let theta = p.x2.atan2(p.x1);
    let (sin, cos) = theta.sin_cos();
    let es = s.exp();
    let s_star = es * (cos * p.y1 + sin * p.y2);
    let theta_star = es * (-sin * p.y1 + cos * p.y2);
    (theta, s, theta_star, s_star)
}

pub fn eval_chart(c: &ChartSpec, p: &ChartPoint) -> Result<Point4> {
    c.eval(p)
}

/// Fiber half-width of the sampled tubular neighbourhood, `min(0.1, pi b^2 / 4)`.
pub fn tubular_delta(b: f64) -> f64 {
    (PI * b * b / 4.0).min(0.1)
}

const OMEGA_DOM: [[f64; 4]; 4] = [
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
];

/// `max |J^T Omega_4 J - Omega_dom|` with `J` the central-difference Jacobian.
pub fn symplectic_residual(c: &ChartSpec, p: &ChartPoint, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h must be positive, got {h}")));
    }
    c.check_domain(p, 2.0 * h)?;
    let jac = central_jacobian(|x| c.eval_array(x), p.to_array(), h)?;
    let col = |j: usize| Point4::new(jac[0][j], jac[1][j], jac[2][j], jac[3][j]);
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let pulled = Point4::omega(&col(i), &col(j));
            worst = worst.max((pulled - OMEGA_DOM[i][j]).abs());
        }
    }
    Ok(worst)
}

/// Maximum residual over an `n^4` grid: `t` over one period, `s` over `[-delta, delta]`.
pub fn symplectic_grid(c: &ChartSpec, n: usize, delta: f64, h: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid size must be at least 2, got {n}")));
    }
    let [p1, p2] = c.periods();
    let fiber = |k: usize| -delta + 2.0 * delta * k as f64 / (n - 1) as f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let p = ChartPoint::new(p1 * i as f64 / n as f64, p2 * j as f64 / n as f64, fiber(k), fiber(l));
                    worst = worst.max(symplectic_residual(c, &p, h)?);
                }
            }
        }
    }
    Ok(worst)
}

const PATH_SAMPLES: usize = 2048;

/// Compares `int lambda` along `Phi` of the straight segment `a -> b` with
/// `pi b^2 (dt1 + dt2) - (s1 dt1 + s2 dt2)` integrated exactly.
pub fn pullback_identity_residual(c: &ChartSpec, a: &ChartPoint, b: &ChartPoint) -> Result<f64> {
    if c.family() != Family::Clifford {
        return Err(Error::InvalidParameter("the pullback identity is stated for the Clifford chart".into()));
    }
    let (pa, pb) = (a.to_array(), b.to_array());
    let at = |tau: f64| -> [f64; 4] { std::array::from_fn(|i| pa[i] + tau * (pb[i] - pa[i])) };
    let curve = |tau: f64| c.eval_array(at(tau));
    let h = 1e-3;
    c.check_domain(&ChartPoint::from_array(at(-2.0 * h)), 0.0)?;
    c.check_domain(&ChartPoint::from_array(at(1.0 + 2.0 * h)), 0.0)?;

    let mut numeric = 0.0;
    for i in 0..=PATH_SAMPLES {
        let tau = i as f64 / PATH_SAMPLES as f64;
        let point = Point4::from_array(curve(tau)?);
        let velocity = Point4::from_array(five_point(curve, tau, h)?);
        let weight = if i == 0 || i == PATH_SAMPLES { 0.5 } else { 1.0 };
        numeric += weight * point.liouville(&velocity);
    }
    numeric /= PATH_SAMPLES as f64;

    let area = c.fiber_bound();
    let (dt1, dt2) = (b.t1 - a.t1, b.t2 - a.t2);
    let (m1, m2) = (0.5 * (a.s1 + b.s1), 0.5 * (a.s2 + b.s2));
    let exact = dt1 * (area - m1) + dt2 * (area - m2);
    Ok((numeric - exact).abs())
}

/// Seeded short segments inside the sampled neighbourhood of the zero section.
pub fn random_short_paths(c: &ChartSpec, count: usize, seed: u64) -> Vec<(ChartPoint, ChartPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = tubular_delta(c.b());
    let [p1, p2] = c.periods();
    let step = 0.5 * delta;
    (0..count)
        .map(|_| {
            let a = ChartPoint::new(
                rng.gen_range(0.0..p1),
                rng.gen_range(0.0..p2),
                rng.gen_range(-delta..delta),
                rng.gen_range(-delta..delta),
            );
            let mut d = || rng.gen_range(-step..step);
            let b = ChartPoint::new(a.t1 + d(), a.t2 + d(), a.s1 + d(), a.s2 + d());
            (a, b)
        })
        .collect()
}
