//! Smallest enclosing caps, boundary-centered covers and covering-radius bounds.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::bodies::Body;
use crate::error::{Error, Result};
use crate::optimize::local_minima;
use crate::sphere::{circumcircle, distance, interpolate, SpherePoint, EPS_CLAIM, HALF_PI};
use crate::width::{is_constant_width, reducedness_certificate, thickness, CertificateOutcome};

const DETERMINER_SAMPLES: usize = 256;
const COVER_SAMPLES: usize = 512;
const POLISH_ROUNDS: usize = 200;
/// Points within this distance beyond the radius still count as covered.
const FEASIBLE: f64 = 1e-12;

/// A covering cap and the points that determine it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverResult {
    pub center: SpherePoint,
    pub radius: f64,
    pub support: Vec<SpherePoint>,
}

/// Best cap centered on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCover {
    pub center: SpherePoint,
    pub radius: f64,
}

struct Candidate {
    center: SpherePoint,
    radius: f64,
    support: Vec<usize>,
}

fn covers(points: &[SpherePoint], center: &SpherePoint, radius: f64) -> bool {
    points
        .iter()
        .all(|p| distance(center, p) <= radius + FEASIBLE)
}

/// Smallest cap containing a finite point set, by enumerating the caps
/// spanned by pairs (diametral) and acute triples (circumscribed).
fn smallest_cap_of_points(points: &[SpherePoint]) -> Result<Candidate> {
    let m = points.len();
    if m == 1 {
        return Ok(Candidate {
            center: points[0],
            radius: 0.0,
            support: vec![0],
        });
    }
    let mut pairs: Vec<Candidate> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let d = distance(&points[i], &points[j]);
            if d >= PI - 1e-12 {
                return Err(Error::NotInOpenHemisphere);
            }
            pairs.push(Candidate {
                center: interpolate(&points[i], &points[j], 0.5)?,
                radius: 0.5 * d,
                support: vec![i, j],
            });
        }
    }
    let lower = pairs.iter().map(|c| c.radius).fold(0.0, f64::max);
    if let Some(best) = pairs
        .iter()
        .filter(|c| c.radius >= lower)
        .find(|c| covers(points, &c.center, c.radius))
    {
        return Ok(Candidate {
            center: best.center,
            radius: best.radius,
            support: best.support.clone(),
        });
    }
    let mut triples: Vec<Candidate> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..m {
                for k in j + 1..m {
                    let (a, b, c) = (&points[i], &points[j], &points[k]);
                    let Ok((center, radius)) = circumcircle(a, b, c) else {
                        continue;
                    };
                    if radius < lower - FEASIBLE || radius >= HALF_PI {
                        continue;
                    }
                    // Only triangles containing their circumcenter determine a cap.
                    let inside = [(a, b), (b, c), (c, a)].iter().all(|(p, q)| {
                        let o = crate::sphere::triple(p, q, &center);
                        let s = crate::sphere::triple(a, b, c).signum();
                        o * s >= -1e-15
                    });
                    if inside {
                        out.push(Candidate {
                            center,
                            radius,
                            support: vec![i, j, k],
                        });
                    }
                }
            }
            out
        })
        .collect();
    triples.sort_by(|a, b| a.radius.total_cmp(&b.radius));
    triples
        .into_iter()
        .find(|c| covers(points, &c.center, c.radius))
        .ok_or(Error::NotInOpenHemisphere)
}

/// The smallest cap containing `B`.
///
/// Caps spanned by pairs and triples of 256 boundary samples (vertices
/// included; for polygons the vertices alone) give a first cap; it is then polished by adding the body's exact
/// farthest point from the current center and re-solving, until the cap
/// covers the whole body.
pub fn min_enclosing_cap(b: &Body) -> Result<CoverResult> {
    if let Body::Cap(c) = b {
        if c.is_hemisphere() {
            return Err(Error::NotInOpenHemisphere);
        }
        return Ok(CoverResult {
            center: c.center(),
            radius: c.radius(),
            support: Vec::new(),
        });
    }
    let boundary = b.boundary();
    // A cap holds a geodesic polygon exactly when it holds the vertices.
    let samples: Vec<SpherePoint> = match b {
        Body::Polygon(p) => p.vertices().to_vec(),
        _ => boundary
            .sample(DETERMINER_SAMPLES.max(boundary.len()))
            .into_iter()
            .map(|bp| bp.point)
            .collect(),
    };
    let first = smallest_cap_of_points(&samples)?;
    let mut center = first.center;
    let mut support: Vec<SpherePoint> = first.support.iter().map(|&i| samples[i]).collect();
    let mut active = support.clone();
    for _ in 0..POLISH_ROUNDS {
        let (far, bp) = boundary.farthest(&center);
        if far <= distance(&center, &support[0]) + FEASIBLE {
            break;
        }
        active.push(bp.point);
        let cap = smallest_cap_of_points(&active)?;
        center = cap.center;
        support = cap.support.iter().map(|&i| active[i]).collect();
        // Keep the support plus recent points so the active set stays small
        // without cycling.
        let recent = active.len().saturating_sub(12);
        let mut next = support.clone();
        for p in &active[recent..] {
            if !next.iter().any(|q| distance(p, q) < 1e-15) {
                next.push(*p);
            }
        }
        active = next;
    }
    let (radius, _) = boundary.farthest(&center);
    if radius >= HALF_PI {
        return Err(Error::NotInOpenHemisphere);
    }
    Ok(CoverResult {
        center,
        radius,
        support,
    })
}

/// Minimizes the farthest distance `max_{x ∈ B} |px|` over boundary points `p`.
pub fn boundary_centered_cover(b: &Body) -> Result<BoundaryCover> {
    if let Body::Cap(c) = b {
        if c.is_hemisphere() {
            return Err(Error::NotInOpenHemisphere);
        }
    }
    let boundary = b.boundary();
    let mut grids: Vec<Vec<f64>> = vec![Vec::new(); boundary.len()];
    for bp in boundary.sample(COVER_SAMPLES.max(boundary.len())) {
        grids[bp.piece].push(bp.t);
    }
    for (i, g) in grids.iter_mut().enumerate() {
        g.push(boundary.piece(i).sweep());
    }
    let (i, t, radius) = grids
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, ts)| {
            local_minima(|t| boundary.farthest(&boundary.point(i, t)).0, ts)
                .into_iter()
                .map(move |(t, r)| (i, t, r))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("boundary has pieces");
    Ok(BoundaryCover {
        center: boundary.point(i, t),
        radius,
    })
}

/// Body class that selects which covering theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    ConstantWidth,
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: f64,
    /// `bound − measured`; negative when the bound is violated.
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub thickness: f64,
    pub regime: Regime,
    pub measured_radius: f64,
    pub bounds: Vec<BoundCheck>,
    pub pass: bool,
}

const TWO_SQRT3_OVER_3: f64 = 1.154_700_538_379_251_5;

/// Covering radius of a constant-width `w ≤ 2π/3` body, attained by the Reuleaux triangle.
pub fn dekster_radius(w: f64) -> f64 {
    (TWO_SQRT3_OVER_3 * (w / 2.0).sin()).asin()
}

/// Covering radius bound for constant width `w ≥ π/2`.
pub fn wide_constant_width_radius(w: f64) -> f64 {
    w + (TWO_SQRT3_OVER_3 * (w / 2.0).cos()).asin() - HALF_PI
}

/// Covering radius bound for reduced bodies of thickness `Δ ≤ π/2`.
pub fn reduced_radius(delta: f64) -> f64 {
    (2f64.sqrt() * (delta / 2.0).tan()).atan()
}

/// Detects the regime and checks the applicable covering bounds.
pub fn covering_bound_report(b: &Body) -> Result<BoundReport> {
    let (delta, _) = thickness(b)?;
    if is_constant_width(b, delta, EPS_CLAIM)?.holds {
        return report(b, delta, Regime::ConstantWidth);
    }
    if matches!(b, Body::Polygon(_)) && delta < HALF_PI {
        let cert = reducedness_certificate(b, EPS_CLAIM)?;
        if cert.outcome == CertificateOutcome::CertifiedConsistentWithReduced {
            return report(b, delta, Regime::Reduced);
        }
    }
    Err(Error::RegimeUnknown)
}

/// Checks the bounds of a regime known from the construction, skipping
/// detection. Used for reduced bodies with arc edges such as quarter-disks.
pub fn covering_bound_report_as(b: &Body, regime: Regime) -> Result<BoundReport> {
    let (delta, _) = thickness(b)?;
    report(b, delta, regime)
}

fn report(b: &Body, delta: f64, regime: Regime) -> Result<BoundReport> {
    let measured = min_enclosing_cap(b)?.radius;
    let mut bounds = Vec::new();
    let mut push = |name: &'static str, bound: f64| {
        let slack = bound - measured;
        bounds.push(BoundCheck {
            name,
            bound,
            slack,
            holds: slack >= -EPS_CLAIM,
        });
    };
    match regime {
        Regime::ConstantWidth => {
            if delta <= 2.0 * PI / 3.0 {
                push("constant-width-dekster", dekster_radius(delta));
            }
            if delta >= HALF_PI {
                push("constant-width-wide", wide_constant_width_radius(delta));
            }
        }
        Regime::Reduced => {
            if delta <= HALF_PI {
                push("reduced", reduced_radius(delta));
            }
        }
    }
    if bounds.is_empty() {
        return Err(Error::RegimeUnknown);
    }
    let pass = bounds.iter().all(|c| c.holds);
    Ok(BoundReport {
        thickness: delta,
        regime,
        measured_radius: measured,
        bounds,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{
        boundary_sample, make_cap, make_quarter_disk, make_regular_reduced_polygon,
        make_reuleaux_odd_gon,
    };
    use crate::sphere::Frame;
    use approx::assert_abs_diff_eq;

    fn c() -> SpherePoint {
        SpherePoint::new(0.3, -0.4, 0.85).unwrap()
    }

    #[test]
    fn cap_covers_itself() {
        let cap = make_cap(c(), 0.6).unwrap();
        let r = min_enclosing_cap(&cap).unwrap();
        assert_abs_diff_eq!(r.radius, 0.6, epsilon = 1e-15);
        let bc = boundary_centered_cover(&cap).unwrap();
        assert_abs_diff_eq!(bc.radius, 1.2, epsilon = 1e-12);
    }

    #[test]
    fn reuleaux_triangle_radius() {
        for w in [0.5, 1.0, HALF_PI] {
            let b = make_reuleaux_odd_gon(c(), 3, w).unwrap();
            let r = min_enclosing_cap(&b).unwrap();
            assert_abs_diff_eq!(r.radius, dekster_radius(w), epsilon = 1e-9);
        }
    }

    #[test]
    fn wide_reuleaux_attains_wide_bound() {
        let b = make_reuleaux_odd_gon(c(), 3, 1.8).unwrap();
        let r = min_enclosing_cap(&b).unwrap();
        assert_abs_diff_eq!(r.radius, wide_constant_width_radius(1.8), epsilon = 1e-8);
    }

    #[test]
    fn quarter_disk_radius() {
        for d in [0.4, 0.8, 1.2] {
            let q = make_quarter_disk(c(), d, 0.4).unwrap();
            let r = min_enclosing_cap(&q).unwrap();
            assert_abs_diff_eq!(r.radius, reduced_radius(d), epsilon = 1e-8);
        }
    }

    #[test]
    fn minimality_and_uniqueness() {
        let q = make_quarter_disk(c(), 1.0, 0.0).unwrap();
        let r = min_enclosing_cap(&q).unwrap();
        let samples = boundary_sample(&q, 2000).unwrap();
        assert!(samples
            .iter()
            .any(|p| distance(p, &r.center) > r.radius - 1e-4));
        let f = Frame::at(r.center);
        for j in 0..8 {
            let moved = f.point_at(1e-3, PI / 4.0 * j as f64);
            let need = crate::width::farthest_point(&q, &moved).0;
            assert!(need > r.radius);
        }
    }

    #[test]
    fn reduced_polygons_boundary_cover() {
        for n in [3, 5, 7] {
            for d in [0.3, 1.1] {
                let b = make_regular_reduced_polygon(c(), n, d).unwrap();
                let bc = boundary_centered_cover(&b).unwrap();
                assert!(bc.radius <= d + 1e-9, "n={n} d={d} r={}", bc.radius);
                assert!(bc.radius >= min_enclosing_cap(&b).unwrap().radius);
            }
        }
    }

    #[test]
    fn regime_detection() {
        let r = covering_bound_report(&make_reuleaux_odd_gon(c(), 3, 1.0).unwrap()).unwrap();
        assert_eq!(r.regime, Regime::ConstantWidth);
        assert!(r.pass);
        assert!(r.bounds[0].slack.abs() < 1e-8);
        let p = covering_bound_report(&make_regular_reduced_polygon(c(), 5, 0.7).unwrap()).unwrap();
        assert_eq!(p.regime, Regime::Reduced);
        assert!(p.pass);
        let q = make_quarter_disk(c(), 0.9, 0.0).unwrap();
        assert!(matches!(
            covering_bound_report(&q),
            Err(Error::RegimeUnknown)
        ));
        let qr = covering_bound_report_as(&q, Regime::Reduced).unwrap();
        assert!(qr.pass && qr.bounds[0].slack.abs() < 1e-7);
    }
}
