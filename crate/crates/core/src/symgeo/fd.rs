//! Finite-difference stencils.

/// Central-difference Jacobian, `jac[i][j] = d f_i / d x_j`, error `O(h^2)`.
pub(crate) fn central_jacobian<F, E>(f: F, x: [f64; 4], h: f64) -> Result<[[f64; 4]; 4], E>
where
    F: Fn([f64; 4]) -> Result<[f64; 4], E>,
{
    let mut jac = [[0.0; 4]; 4];
    for j in 0..4 {
        let (mut plus, mut minus) = (x, x);
        plus[j] += h;
        minus[j] -= h;
        let (fp, fm) = (f(plus)?, f(minus)?);
        for i in 0..4 {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Five-point first derivative of a vector-valued curve, error `O(h^4)`.
pub(crate) fn five_point<F, E>(f: F, t: f64, h: f64) -> Result<[f64; 4], E>
where
    F: Fn(f64) -> Result<[f64; 4], E>,
{
    let (p2, p1, m1, m2) = (f(t + 2.0 * h)?, f(t + h)?, f(t - h)?, f(t - 2.0 * h)?);
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
    }
    Ok(out)
}

/// Wraps an angle difference into `(-pi, pi]`.
pub(crate) fn wrap_angle(d: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let w = d.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}
