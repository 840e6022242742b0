//! Induced action on first homology, cotangent lifts and the twist exclusion test.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::chart::ChartSpec;
use super::fd::wrap_angle;
use super::flow::FlowSpec;
use super::loops::LoopSpec;
use super::Family;
use crate::dihedral::{change_basis, g_of};
use crate::error::{Error, Result};
use crate::exact::Unimodular2;

/// Largest accepted distance of a measured winding number from an integer.
pub const MAX_WINDING_DRIFT: f64 = 0.01;

/// Tolerance used when comparing Clifford radii in [`twist_exclusion`].
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonodromyMeasurement {
    pub matrix: Unimodular2,
    /// Windings before rounding, column-major like `matrix`.
    pub raw: [[f64; 2]; 2],
    pub drift: f64,
}

/// Action of the time-one map on `H_1` in the basis given by `loops`.
pub fn induced_monodromy(fl: &FlowSpec, c: &ChartSpec, loops: &[LoopSpec; 2]) -> Result<MonodromyMeasurement> {
    induced_monodromy_at(fl, 1.0, c, loops)
}

pub fn induced_monodromy_at(
    fl: &FlowSpec,
    time: f64,
    c: &ChartSpec,
    loops: &[LoopSpec; 2],
) -> Result<MonodromyMeasurement> {
    let mut raw = [[0.0; 2]; 2];
    for (j, lp) in loops.iter().enumerate() {
        let angles: Vec<[f64; 2]> =
            lp.points(c)?.iter().map(|p| c.angles(&fl.flow_point(time, p))).collect();
        for axis in 0..2 {
            let n = angles.len();
            let total: f64 = (0..n).map(|i| wrap_angle(angles[(i + 1) % n][axis] - angles[i][axis])).sum();
            raw[j][axis] = total / TAU;
        }
    }
    let drift = raw.iter().flatten().map(|w| (w - w.round()).abs()).fold(0.0, f64::max);
    if drift > MAX_WINDING_DRIFT {
        return Err(Error::WindingDrift(drift));
    }
    let r = |j: usize, i: usize| raw[j][i].round() as i64;
    let matrix = Unimodular2::new(r(0, 0), r(1, 0), r(0, 1), r(1, 1))?;
    Ok(MonodromyMeasurement { matrix, raw, drift })
}

/// Fiber action `(M^{-1})^T` of the cotangent lift of `M`.
pub fn cotangent_lift_fiber(m: &Unimodular2) -> Result<Unimodular2> {
    Ok(m.invert()?.transpose())
}

/// A section torus and its image under the cotangent lift of a twist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionImage {
    pub twist: Unimodular2,
    pub source: [f64; 2],
    pub image: [f64; 2],
    pub source_radii: [f64; 2],
    pub image_radii: [f64; 2],
    /// Radii were obtained through the Chekanov-to-Clifford identification.
    pub oracle_backed: bool,
}

fn candidate_twist(family: Family, k: i64) -> Result<Unimodular2> {
    let g = *g_of(k).mat();
    match family {
        Family::Clifford => change_basis(&g, &Unimodular2::new(1, 1, 0, 1)?),
        Family::Chekanov => Ok(g),
    }
}

/// Clifford radii of the section torus `{s = (c1, c2)}`.
fn section_radii(family: Family, c: &ChartSpec, section: [f64; 2]) -> Result<[f64; 2]> {
    match family {
        Family::Clifford => Ok([c.fiber_radius(section[0])?, c.fiber_radius(section[1])?]),
        Family::Chekanov => {
            if section[1] == 0.0 {
                return Err(Error::Domain("the Chekanov identification needs c2 != 0".into()));
            }
            let r = c.fiber_radius(section[0])?;
            Ok([r, r + section[1].abs()])
        }
    }
}

pub fn section_image(family: Family, k: i64, c1: f64, c2: f64, b: f64) -> Result<SectionImage> {
    let c = ChartSpec::new(family, b)?;
    let twist = candidate_twist(family, k)?;
    let [a, bb, cc, d] = cotangent_lift_fiber(&twist)?.entries().map(|v| v as f64);
    let source = [c1, c2];
    let image = [a * c1 + bb * c2, cc * c1 + d * c2];
    Ok(SectionImage {
        twist,
        source,
        image,
        source_radii: section_radii(family, &c, source)?,
        image_radii: section_radii(family, &c, image)?,
        oracle_backed: family == Family::Chekanov,
    })
}

/// `{a, b} = {a', b'}` as unordered pairs within `tol`.
pub fn clifford_oracle(a: f64, b: f64, a2: f64, b2: f64, tol: f64) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= tol;
    (close(a, a2) && close(b, b2)) || (close(a, b2) && close(b, a2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistExclusion {
    pub excluded: bool,
    /// Smallest radius mismatch over both pairings.
    pub gap: f64,
    pub section: SectionImage,
}

pub fn twist_exclusion_detail(family: Family, b: f64, k: i64, eps: f64) -> Result<TwistExclusion> {
    let bound = std::f64::consts::PI * b * b / (4.0 * (k.unsigned_abs() as f64 + 2.0));
    if !(eps > 0.0 && eps < bound) {
        return Err(Error::EpsilonGuard { eps, bound });
    }
    let section = match family {
        Family::Clifford => section_image(family, k, 0.0, eps, b)?,
        Family::Chekanov => section_image(family, k, eps, eps, b)?,
    };
    let ([a, bb], [a2, b2]) = (section.source_radii, section.image_radii);
    let gap = ((a - a2).abs().max((bb - b2).abs())).min((a - b2).abs().max((bb - a2).abs()));
    let excluded = !clifford_oracle(a, bb, a2, b2, ORACLE_TOLERANCE);
    Ok(TwistExclusion { excluded, gap, section })
}

/// True iff the twist with parameter `k` cannot map the torus to itself.
pub fn twist_exclusion(family: Family, b: f64, k: i64, eps: f64) -> Result<bool> {
    twist_exclusion_detail(family, b, k, eps).map(|t| t.excluded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> [LoopSpec; 2] {
        [LoopSpec::basis(1, 0, 512).unwrap(), LoopSpec::basis(0, 1, 512).unwrap()]
    }

    #[test]
    fn clifford_monodromy_is_swap() {
        let c = ChartSpec::clifford(1.0).unwrap();
        let m = induced_monodromy(&FlowSpec::CliffordRotation, &c, &basis()).unwrap();
        assert_eq!(m.matrix, Unimodular2::new(0, 1, 1, 0).unwrap());
        assert!(m.drift < MAX_WINDING_DRIFT);
    }

    #[test]
    fn chekanov_monodromy_is_reflection() {
        let c = ChartSpec::chekanov(1.0).unwrap();
        let m = induced_monodromy(&FlowSpec::ChekanovHalfTurn, &c, &basis()).unwrap();
        assert_eq!(m.matrix, Unimodular2::new(1, 0, 0, -1).unwrap());
        assert!(m.drift < MAX_WINDING_DRIFT);
    }

    #[test]
    fn time_zero_is_identity() {
        for family in [Family::Clifford, Family::Chekanov] {
            let c = ChartSpec::new(family, 1.0).unwrap();
            let m = induced_monodromy_at(&FlowSpec::for_family(family), 0.0, &c, &basis()).unwrap();
            assert_eq!(m.matrix, Unimodular2::IDENTITY);
            assert!(m.drift < 1e-12);
        }
    }

    #[test]
    fn cotangent_lift_examples() {
        for k in -5..=5 {
            let gt = candidate_twist(Family::Clifford, k).unwrap();
            assert_eq!(gt, Unimodular2::new(1 - k, -k, k, 1 + k).unwrap());
            assert_eq!(cotangent_lift_fiber(&gt).unwrap(), Unimodular2::new(1 + k, -k, k, 1 - k).unwrap());
            let g = candidate_twist(Family::Chekanov, k).unwrap();
            assert_eq!(cotangent_lift_fiber(&g).unwrap(), Unimodular2::new(1, -k, 0, 1).unwrap());
        }
        assert_eq!(cotangent_lift_fiber(&Unimodular2::IDENTITY).unwrap(), Unimodular2::IDENTITY);
    }

    #[test]
    fn section_images() {
        let eps = 0.01;
        for k in -3..=3 {
            let cl = section_image(Family::Clifford, k, 0.0, eps, 1.0).unwrap();
            let expect = [-(k as f64) * eps, (1 - k) as f64 * eps];
            assert!((cl.image[0] - expect[0]).abs() < 1e-15 && (cl.image[1] - expect[1]).abs() < 1e-15);
            assert!(!cl.oracle_backed);
            let ch = section_image(Family::Chekanov, k, eps, eps, 1.0).unwrap();
            let expect = [(1 - k) as f64 * eps, eps];
            assert!((ch.image[0] - expect[0]).abs() < 1e-15 && (ch.image[1] - expect[1]).abs() < 1e-15);
            assert!(ch.oracle_backed);
        }
        let same = section_image(Family::Clifford, 0, 0.2, 0.3, 1.0).unwrap();
        assert_eq!(same.image, [0.2, 0.3]);
        assert!(section_image(Family::Chekanov, 1, 0.1, 0.0, 1.0).is_err());
        assert!(section_image(Family::Clifford, 0, 4.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(clifford_oracle(1.0, 2.0, 2.0, 1.0, 1e-6));
        assert!(clifford_oracle(1.0, 2.0, 1.0, 2.0, 1e-6));
        assert!(!clifford_oracle(1.0, 2.0, 1.0, 2.01, 1e-6));
    }

    #[test]
    fn exclusion_examples() {
        assert!(twist_exclusion(Family::Clifford, 1.0, 1, 0.01).unwrap());
        assert!(twist_exclusion(Family::Chekanov, 1.0, 2, 0.01).unwrap());
        for family in [Family::Clifford, Family::Chekanov] {
            assert!(!twist_exclusion(family, 1.0, 0, 0.01).unwrap());
        }
        assert!(matches!(twist_exclusion(Family::Clifford, 0.1, 5, 0.01), Err(Error::EpsilonGuard { .. })));
        assert!(twist_exclusion(Family::Clifford, 1.0, 1, 0.0).is_err());
    }
}
