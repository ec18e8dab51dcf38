//! Closed-form body families.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::optimize::bisect_increasing;
use crate::regions::Cap;
use crate::sphere::{Frame, SpherePoint, HALF_PI};

use super::{Body, ConvexPolygon, DiskPolygon, Edge};

pub fn make_cap(c: SpherePoint, rho: f64) -> Result<Body> {
    Ok(Body::Cap(Cap::new(c, rho)?))
}

/// Sector of `B_Δ(c)` between two orthogonal radii, the first at `orientation`.
pub fn make_quarter_disk(c: SpherePoint, delta: f64, orientation: f64) -> Result<Body> {
    quarter_disk_in_frame(&Frame::with_heading(c, orientation), delta)
}

/// Quarter-disk with apex at the frame center and first radius along its x axis.
pub fn quarter_disk_in_frame(frame: &Frame, delta: f64) -> Result<Body> {
    if !(delta > 0.0 && delta < HALF_PI) {
        return Err(Error::BadThickness(delta));
    }
    let c = frame.center();
    let a = frame.point_at(delta, 0.0);
    let b = frame.point_at(delta, HALF_PI);
    let edges = vec![
        Edge::geodesic(c, a),
        Edge::arc(a, b, c, delta),
        Edge::geodesic(b, c),
    ];
    Ok(Body::Disk(DiskPolygon::new(edges)?))
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::BadParameters(format!(
            "vertex count must be odd and at least 3, got {n}"
        )));
    }
    Ok(())
}

/// Circumradius of the regular `n`-gon whose long diagonals have length `w ≤ π/2`.
pub fn reuleaux_circumradius(n: usize, w: f64) -> f64 {
    let s2 = (1.0 - w.cos()) / (1.0 + (PI / n as f64).cos());
    s2.sqrt().asin()
}

/// Spherical Reuleaux odd-gon of constant width `w ∈ (0, π)` centered at `c`.
pub fn make_reuleaux_odd_gon(c: SpherePoint, n: usize, w: f64) -> Result<Body> {
    reuleaux_in_frame(&Frame::at(c), n, w)
}

/// Reuleaux odd-gon with its first vertex along the frame's x axis.
///
/// For `w ≤ π/2` the boundary consists of `n` arcs of radius `w`, each centered
/// at the opposite vertex. Circles of radius above π/2 bound concave regions,
/// so for `w > π/2` the body is built as the polar of the Reuleaux odd-gon of
/// width `π − w`: `n` arcs of radius `w − π/2` joined by geodesic edges.
pub fn reuleaux_in_frame(frame: &Frame, n: usize, w: f64) -> Result<Body> {
    check_odd(n)?;
    if !(w > 0.0 && w < PI) {
        return Err(Error::BadParameters(format!("width {w} outside (0, pi)")));
    }
    if w > HALF_PI {
        let dual = reuleaux_in_frame(frame, n, PI - w)?;
        let boundary = dual.boundary().polar()?;
        return Body::from_boundary(&boundary, false);
    }
    let r = reuleaux_circumradius(n, w);
    let v: Vec<SpherePoint> = (0..n)
        .map(|i| frame.point_at(r, 2.0 * PI * i as f64 / n as f64))
        .collect();
    let edges = (0..n)
        .map(|i| Edge::arc(v[i], v[(i + 1) % n], v[(i + n.div_ceil(2)) % n], w))
        .collect();
    Ok(Body::Disk(DiskPolygon::new(edges)?))
}

/// Circumradius `r` of the regular `n`-gon whose vertex-to-opposite-edge
/// distance is `Δ`: the root of `r + arctan(tan r · cos(π/n)) = Δ`.
pub fn reduced_polygon_circumradius(n: usize, delta: f64) -> Result<f64> {
    let c = (PI / n as f64).cos();
    bisect_increasing(|r| r + (r.tan() * c).atan() - delta, 0.0, delta).ok_or(Error::NoSolution)
}

/// Regular geodesic odd-gon of thickness `Δ ∈ (0, π/2)`, a reduced polygon.
pub fn make_regular_reduced_polygon(c: SpherePoint, n: usize, delta: f64) -> Result<Body> {
    reduced_polygon_in_frame(&Frame::at(c), n, delta)
}

pub fn reduced_polygon_in_frame(frame: &Frame, n: usize, delta: f64) -> Result<Body> {
    check_odd(n)?;
    if !(delta > 0.0 && delta < HALF_PI) {
        return Err(Error::BadThickness(delta));
    }
    let r = reduced_polygon_circumradius(n, delta)?;
    let v = (0..n)
        .map(|i| frame.point_at(r, 2.0 * PI * i as f64 / n as f64))
        .collect();
    Ok(Body::Polygon(ConvexPolygon::new(v)?))
}
