//! Convex hull of a finite point set in an open hemisphere.
//!
//! Points are projected gnomonically from a witness pole, where geodesics
//! become straight lines, and the monotone chain runs on the projections with
//! the exact spherical orientation predicate.

use crate::error::{Error, Result};
use crate::sphere::{orient, Frame, SpherePoint, Vec3};

use super::ConvexPolygon;

const PERCEPTRON_STEPS: usize = 100_000;

/// Pole `m` with `p·m > 0` for every point, found by perceptron updates.
fn hemisphere_witness(points: &[SpherePoint]) -> Option<SpherePoint> {
    let mut m: Vec3 = points.iter().map(|p| *p.vec()).sum();
    if m.norm() < 1e-12 {
        m = *points[0].vec();
    }
    m = m.normalize();
    for _ in 0..PERCEPTRON_STEPS {
        let mn = m.normalize();
        let (worst, val) = points
            .iter()
            .map(|p| (p, p.vec().dot(&mn)))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if val > 1e-12 {
            return SpherePoint::from_vec(mn).ok();
        }
        m += worst.vec();
        if m.norm() < 1e-15 {
            return None;
        }
    }
    None
}

/// Smallest convex polygon containing `points`.
///
/// Points on hull edges are dropped; all points must lie in an open hemisphere.
pub fn convex_hull(points: &[SpherePoint]) -> Result<ConvexPolygon> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!("{} points", points.len())));
    }
    let m = hemisphere_witness(points).ok_or(Error::NotInOpenHemisphere)?;
    let frame = Frame::at(m);
    let (x, y) = (frame.x_axis(), frame.y_axis());
    let mut proj: Vec<(f64, f64, SpherePoint)> = points
        .iter()
        .map(|p| {
            let w = p.vec().dot(m.vec());
            (p.vec().dot(&x) / w, p.vec().dot(&y) / w, *p)
        })
        .collect();
    proj.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    proj.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);

    let mut lower: Vec<SpherePoint> = Vec::new();
    for (_, _, p) in &proj {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<SpherePoint> = Vec::new();
    for (_, _, p) in proj.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateInput("points are collinear".into()));
    }
    ConvexPolygon::new(lower)
}
