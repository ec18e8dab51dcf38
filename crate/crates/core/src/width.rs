//! Width, thickness, diameter and polar duality.
//!
//! A hemisphere `H(k)` supports a body `C` exactly when `k` lies on the
//! boundary of the polar body `C°`. The narrowest lune `H(k) ∩ H(k')`
//! containing `C` has thickness `π − max_{k' ∈ C°} |kk'|`, so widths become
//! farthest-point queries on the polar boundary, and thickness is a
//! one-dimensional minimization along that boundary.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::bodies::{poles_at_boundary_point, Body, ConvexPolygon, Edge, SupportPoles};
use crate::boundary::Boundary;
use crate::error::{Error, Result};
use crate::optimize::{golden_min, local_minima, scan_and_polish_max, scan_and_polish_min};
use crate::regions::Cap;
use crate::sphere::{distance, interpolate, SpherePoint, EPS_ALG, EPS_CLAIM, EPS_OPT, HALF_PI};

/// Grid points per boundary piece for the width and diameter scans.
const GRID: usize = 64;

/// A supporting pole and the pole closing the narrowest lune with it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoSupportPair {
    pub k: SpherePoint,
    pub k_star: SpherePoint,
}

impl CoSupportPair {
    /// Thickness of the lune `H(k) ∩ H(k*)`.
    pub fn lune_thickness(&self) -> f64 {
        PI - distance(&self.k, &self.k_star)
    }
}

/// Widths sampled along the polar boundary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WidthProfile {
    pub samples: Vec<(SpherePoint, f64)>,
    pub min_width: f64,
    pub argmin_pole: SpherePoint,
}

/// A body together with its polar boundary.
#[derive(Debug, Clone)]
pub(crate) struct Dual {
    pub body: Boundary,
    pub polar: Boundary,
}

impl Dual {
    pub fn new(b: &Body) -> Result<Self> {
        if let Body::Cap(c) = b {
            if c.is_hemisphere() {
                return Err(Error::NotInOpenHemisphere);
            }
        }
        let body = b.boundary();
        let polar = body.polar()?;
        Ok(Self { body, polar })
    }

    /// Width determined by the pole `k`, assumed to support the body.
    pub fn width_at(&self, k: &SpherePoint) -> (f64, SpherePoint) {
        let (d, bp) = self.polar.farthest(k);
        (PI - d, bp.point)
    }

    fn width_on_piece(&self, i: usize, t: f64) -> f64 {
        self.width_at(&self.polar.point(i, t)).0
    }

    /// Polished local minima of the width along the polar boundary, as
    /// `(piece, t, width)`.
    pub fn width_minima(&self) -> Vec<(usize, f64, f64)> {
        let grids = self.polar.parameter_grid(GRID);
        grids
            .par_iter()
            .enumerate()
            .map(|(i, ts)| {
                local_minima(|t| self.width_on_piece(i, t), ts)
                    .into_iter()
                    .map(|(t, w)| (i, t, w))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn thickness(&self) -> (f64, CoSupportPair) {
        let (i, t, _) = self
            .width_minima()
            .into_iter()
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .expect("polar boundary has pieces");
        let k = self.polar.point(i, t);
        let (w, k_star) = self.width_at(&k);
        (w, CoSupportPair { k, k_star })
    }

    /// Largest distance between two points of the body.
    pub fn diameter(&self) -> (f64, (SpherePoint, SpherePoint)) {
        let grids = self.body.parameter_grid(GRID);
        let (i, t, _) = grids
            .par_iter()
            .enumerate()
            .map(|(i, ts)| {
                let (t, d) =
                    scan_and_polish_max(|t| self.body.farthest(&self.body.point(i, t)).0, ts);
                (i, t, d)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .max_by(|a, b| a.2.total_cmp(&b.2))
            .expect("boundary has pieces");
        let p = self.body.point(i, t);
        let (d, q) = self.body.farthest(&p);
        (d, (p, q.point))
    }
}

/// Polar body `C° = {k : C ⊂ H(k)}`.
pub fn polar(b: &Body) -> Result<Body> {
    match b {
        Body::Cap(c) => {
            if c.is_hemisphere() {
                return Err(Error::NotInOpenHemisphere);
            }
            Ok(Body::Cap(Cap::new(c.center(), HALF_PI - c.radius())?))
        }
        _ => Body::from_boundary(&b.boundary().polar()?, true),
    }
}

/// Intersection of the caps `B_ρ(p)` over the given centers.
pub fn intersect_caps(centers: &[SpherePoint], rho: f64) -> Result<Body> {
    if !(rho > 0.0 && rho <= HALF_PI) {
        return Err(Error::BadRadius(rho));
    }
    if centers.is_empty() {
        return Err(Error::DegenerateInput("no cap centers".into()));
    }
    let mut uniq: Vec<SpherePoint> = Vec::with_capacity(centers.len());
    for c in centers {
        if !uniq.iter().any(|u| distance(u, c) < 1e-14) {
            uniq.push(*c);
        }
    }
    let (cr, sr) = (rho.cos(), rho.sin());
    let frames: Vec<crate::sphere::Frame> =
        uniq.iter().map(|c| crate::sphere::Frame::at(*c)).collect();

    // Allowed parameter set on each bounding circle.
    let allowed: Vec<Option<Vec<(f64, f64)>>> = (0..uniq.len())
        .into_par_iter()
        .map(|i| {
            let (c, u, v) = (uniq[i].vec(), frames[i].x_axis(), frames[i].y_axis());
            let mut set = vec![(0.0, 2.0 * PI)];
            for (j, cj) in uniq.iter().enumerate() {
                if i == j {
                    continue;
                }
                let a = cr * c.dot(cj.vec());
                let (x, y) = (sr * u.dot(cj.vec()), sr * v.dot(cj.vec()));
                let r = x.hypot(y);
                if r < 1e-15 {
                    if a < cr - 1e-15 {
                        return None;
                    }
                    continue;
                }
                let s = (cr - a) / r;
                if s > 1.0 {
                    return None;
                }
                if s <= -1.0 {
                    continue;
                }
                let phi = y.atan2(x);
                let alpha = s.acos();
                set = intersect_intervals(&set, &circular_interval(phi - alpha, phi + alpha));
                if set.is_empty() {
                    return None;
                }
            }
            Some(set)
        })
        .collect();

    for (i, set) in allowed.iter().enumerate() {
        if let Some(s) = set {
            if s.len() == 1 && s[0].1 - s[0].0 >= 2.0 * PI - 1e-15 {
                return Ok(Body::Cap(Cap::new(uniq[i], rho)?));
            }
        }
    }

    let point = |i: usize, t: f64| frames[i].point_at(rho, t);
    let mut arcs: Vec<(usize, f64, f64)> = Vec::new();
    for (i, set) in allowed.iter().enumerate() {
        let Some(set) = set else { continue };
        let mut pieces = set.clone();
        // Merge the piece wrapping through t = 0.
        if pieces.len() >= 2
            && pieces[0].0 <= 1e-15
            && pieces[pieces.len() - 1].1 >= 2.0 * PI - 1e-15
        {
            let last = pieces.pop().expect("len >= 2");
            pieces[0] = (last.0 - 2.0 * PI, pieces[0].1);
        }
        for (lo, hi) in pieces {
            if (hi - lo) * rho.sin() > 1e-12 {
                arcs.push((i, lo, hi));
            }
        }
    }
    if arcs.len() < 2 {
        return Err(Error::EmptyResult);
    }

    // Chain arcs head to tail.
    let mut order = vec![0usize];
    let mut used = vec![false; arcs.len()];
    used[0] = true;
    while order.len() < arcs.len() {
        let (i, _, hi) = arcs[*order.last().expect("nonempty")];
        let end = point(i, hi);
        let next = (0..arcs.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                let da = distance(&end, &point(arcs[a].0, arcs[a].1));
                let db = distance(&end, &point(arcs[b].0, arcs[b].1));
                da.total_cmp(&db)
            })
            .expect("unused arc remains");
        used[next] = true;
        order.push(next);
    }
    let n = order.len();
    let starts: Vec<SpherePoint> = order.iter().map(|&j| point(arcs[j].0, arcs[j].1)).collect();
    let edges: Vec<Edge> = (0..n)
        .map(|m| {
            let (i, _, _) = arcs[order[m]];
            let (start, end) = (starts[m], starts[(m + 1) % n]);
            if rho == HALF_PI {
                Edge::geodesic(start, end)
            } else {
                Edge::arc(start, end, uniq[i], rho)
            }
        })
        .collect();
    if rho == HALF_PI {
        return Ok(Body::Polygon(
            ConvexPolygon::new(starts).map_err(|_| Error::EmptyResult)?,
        ));
    }
    crate::bodies::DiskPolygon::new(edges)
        .map(Body::Disk)
        .map_err(|_| Error::EmptyResult)
}

/// `[lo, hi]` reduced to disjoint pieces of `[0, 2π]`.
fn circular_interval(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let tau = 2.0 * PI;
    if hi - lo >= tau {
        return vec![(0.0, tau)];
    }
    let width = (hi - lo).max(0.0);
    let lo = lo.rem_euclid(tau);
    let hi = lo + width;
    if hi <= tau {
        vec![(lo, hi)]
    } else {
        vec![(0.0, hi - tau), (lo, tau)]
    }
}

fn intersect_intervals(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// `F°_ρ`: the intersection of the caps of radius `ρ` around every point of `B`.
///
/// Polygons need only their vertex caps and caps shrink exactly. For
/// disk-polygons the caps are centered at boundary samples, doubling the
/// sample count until consecutive results agree within [`EPS_OPT`].
pub fn polar_rho(b: &Body, rho: f64) -> Result<Body> {
    if !(rho > 0.0 && rho <= HALF_PI) {
        return Err(Error::BadRadius(rho));
    }
    if rho == HALF_PI {
        return polar(b);
    }
    match b {
        Body::Cap(c) => {
            if rho <= c.radius() {
                return Err(Error::EmptyResult);
            }
            Ok(Body::Cap(Cap::new(c.center(), rho - c.radius())?))
        }
        Body::Polygon(p) => intersect_caps(p.vertices(), rho),
        Body::Disk(_) => {
            let boundary = b.boundary();
            let mut n = 32 * boundary.len();
            let sample = |n: usize| -> Vec<SpherePoint> {
                boundary.sample(n).into_iter().map(|bp| bp.point).collect()
            };
            let mut prev = intersect_caps(&sample(n), rho)?;
            while n < POLAR_RHO_MAX_SAMPLES {
                n *= 2;
                let next = intersect_caps(&sample(n), rho)?;
                let change = boundary_gap(&prev, &next);
                prev = next;
                if change <= EPS_OPT {
                    break;
                }
            }
            Ok(prev)
        }
    }
}

/// Sample budget for [`polar_rho`] on disk-polygons.
const POLAR_RHO_MAX_SAMPLES: usize = 4096;

/// Largest distance from a boundary sample of one body to the boundary of the other.
pub(crate) fn boundary_gap(a: &Body, b: &Body) -> f64 {
    let (ba, bb) = (a.boundary(), b.boundary());
    let one = |x: &Boundary, y: &Boundary| {
        x.sample(256)
            .iter()
            .map(|bp| y.distance_to(&bp.point).0)
            .fold(0.0, f64::max)
    };
    one(&ba, &bb).max(one(&bb, &ba))
}

fn check_supporting(dual: &Dual, k: &SpherePoint) -> Result<()> {
    let (lo, _) = dual.body.min_dot(k.vec());
    if lo.abs() > EPS_ALG {
        return Err(Error::NotSupporting(lo));
    }
    Ok(())
}

/// Width of `B` determined by the supporting hemisphere `H(k)`.
pub fn width_at(b: &Body, k: &SpherePoint) -> Result<(f64, CoSupportPair)> {
    let dual = Dual::new(b)?;
    check_supporting(&dual, k)?;
    let (w, k_star) = dual.width_at(k);
    Ok((w, CoSupportPair { k: *k, k_star }))
}

/// Thickness: the smallest width over all supporting hemispheres.
pub fn thickness(b: &Body) -> Result<(f64, CoSupportPair)> {
    Ok(Dual::new(b)?.thickness())
}

/// Widths at `n` poles spread along the polar boundary.
pub fn width_profile(b: &Body, n: usize) -> Result<WidthProfile> {
    let dual = Dual::new(b)?;
    let samples: Vec<(SpherePoint, f64)> = dual
        .polar
        .sample(n.max(dual.polar.len()))
        .par_iter()
        .map(|bp| (bp.point, dual.width_at(&bp.point).0))
        .collect();
    let (argmin_pole, min_width) = samples
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty sample");
    Ok(WidthProfile {
        samples,
        min_width,
        argmin_pole,
    })
}

/// Diameter and a pair of points realizing it.
pub fn diameter(b: &Body) -> Result<(f64, (SpherePoint, SpherePoint))> {
    if let Body::Cap(c) = b {
        if c.is_hemisphere() {
            return Err(Error::NotInOpenHemisphere);
        }
        let f = crate::sphere::Frame::at(c.center());
        return Ok((
            2.0 * c.radius(),
            (f.point_at(c.radius(), 0.0), f.point_at(c.radius(), PI)),
        ));
    }
    Ok(Dual::new(b)?.diameter())
}

/// Largest distance from `p` to a point of `B`, and that point.
pub fn farthest_point(b: &Body, p: &SpherePoint) -> (f64, SpherePoint) {
    let (d, bp) = b.boundary().farthest(p);
    (d, bp.point)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantWidthReport {
    pub holds: bool,
    pub max_deviation: f64,
    pub worst_pole: SpherePoint,
}

const CONSTANT_WIDTH_POLES: usize = 1024;

/// Checks `|width_K(B) − w| ≤ tol` on a 1024-pole scan of the polar boundary,
/// refined near the worst pole.
pub fn is_constant_width(b: &Body, w: f64, tol: f64) -> Result<ConstantWidthReport> {
    constant_width_scan(b, w, tol, CONSTANT_WIDTH_POLES)
}

/// Largest `|width_K(B) − w|` found with `poles` scanned poles.
pub(crate) fn width_deviation_at_density(b: &Body, w: f64, poles: usize) -> Result<f64> {
    Ok(constant_width_scan(b, w, 0.0, poles)?.max_deviation)
}

fn constant_width_scan(b: &Body, w: f64, tol: f64, poles: usize) -> Result<ConstantWidthReport> {
    let dual = Dual::new(b)?;
    let samples = dual.polar.sample(poles.max(dual.polar.len()));
    let devs: Vec<f64> = samples
        .par_iter()
        .map(|bp| (dual.width_at(&bp.point).0 - w).abs())
        .collect();
    let (worst_idx, _) = devs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty sample");
    let worst = samples[worst_idx];
    let piece = dual.polar.piece(worst.piece);
    let step = piece.sweep() / (poles as f64 / dual.polar.len() as f64).max(1.0);
    let (lo, hi) = (
        (worst.t - step).max(0.0),
        (worst.t + step).min(piece.sweep()),
    );
    let (t, neg) = golden_min(|t| -(dual.width_on_piece(worst.piece, t) - w).abs(), lo, hi);
    let (max_deviation, worst_pole) = if -neg > devs[worst_idx] {
        (-neg, dual.polar.point(worst.piece, t))
    } else {
        (devs[worst_idx], worst.point)
    };
    Ok(ConstantWidthReport {
        holds: max_deviation <= tol,
        max_deviation,
        worst_pole,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantDiameterReport {
    pub holds: bool,
    /// Boundary point whose farthest point is nearest.
    pub worst_point: SpherePoint,
    pub worst_farthest: f64,
}

const CONSTANT_DIAMETER_POINTS: usize = 512;

/// Checks that every boundary point has a partner at distance `w` in `B`.
pub fn is_constant_diameter(b: &Body, w: f64, tol: f64) -> Result<ConstantDiameterReport> {
    constant_diameter_at_density(b, w, tol, CONSTANT_DIAMETER_POINTS)
}

pub(crate) fn constant_diameter_at_density(
    b: &Body,
    w: f64,
    tol: f64,
    n: usize,
) -> Result<ConstantDiameterReport> {
    let (diam, _) = diameter(b)?;
    if (diam - w).abs() > tol {
        return Err(Error::DiameterMismatch {
            expected: w,
            actual: diam,
        });
    }
    let boundary = b.boundary();
    let (worst_farthest, worst_point) = boundary
        .sample(n.max(boundary.len()))
        .par_iter()
        .map(|bp| (boundary.farthest(&bp.point).0, bp.point))
        .collect::<Vec<_>>()
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("nonempty sample");
    Ok(ConstantDiameterReport {
        holds: worst_farthest >= w - tol,
        worst_point,
        worst_farthest,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateOutcome {
    CertifiedConsistentWithReduced,
    NotReduced,
    Inconclusive,
}

/// Per-vertex evidence collected by [`reducedness_certificate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexEvidence {
    pub vertex: SpherePoint,
    /// Thinnest lune containing the polygon with the vertex as the center of
    /// one bounding semicircle.
    pub lune_thickness: f64,
    pub lune_g: SpherePoint,
    pub lune_h: SpherePoint,
    pub necessary: bool,
    /// Thickness after cutting off the corner.
    pub cut_thickness: f64,
    pub falsification: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub thickness: f64,
    pub outcome: CertificateOutcome,
    pub vertices: Vec<VertexEvidence>,
}

/// Geodesic length cut from each incident edge in the corner-cut test.
pub const CORNER_CUT: f64 = 0.02;

/// Numerical evidence that a polygon is reduced.
///
/// Necessary gate: through every vertex `e` passes a lune of thickness `Δ(P)`
/// containing `P` with `e` as the center of one bounding semicircle.
/// Falsification gate: cutting any corner lowers the thickness by at least
/// [`EPS_CLAIM`]. Failing the first proves the polygon is not reduced; passing
/// both is consistent with reducedness.
pub fn reducedness_certificate(b: &Body, tol: f64) -> Result<CertificateReport> {
    let Body::Polygon(poly) = b else {
        return Err(Error::NotAPolygon);
    };
    let (delta, _) = thickness(b)?;
    if delta >= HALF_PI {
        return Err(Error::ThicknessTooLarge(delta));
    }
    let v = poly.vertices();
    let n = v.len();
    let boundary = b.boundary();
    let vertices = (0..n)
        .into_par_iter()
        .map(|i| -> Result<VertexEvidence> {
            let e = v[i];
            let poles = poles_at_boundary_point(
                &boundary,
                &crate::boundary::BoundaryPoint {
                    piece: i,
                    t: 0.0,
                    point: e,
                },
            );
            let (from, to) = match poles {
                SupportPoles::Arc { from, to } => (from, to),
                SupportPoles::Unique(k) => (k, k),
            };
            let g_at = |s: f64| interpolate(&from, &to, s).expect("pole arc shorter than pi");
            let lune = |s: f64| -> f64 {
                let g = g_at(s);
                let theta = v
                    .iter()
                    .filter(|x| distance(x, &e) > 1e-15)
                    .map(|x| x.dot(&e).atan2(x.dot(&g)) + HALF_PI)
                    .fold(PI, f64::min);
                PI - theta
            };
            let ts: Vec<f64> = (0..=GRID).map(|j| j as f64 / GRID as f64).collect();
            let (s, lune_thickness) = scan_and_polish_min(lune, &ts);
            let g = g_at(s);
            let theta = PI - lune_thickness;
            let lune_h = SpherePoint::from_vec(g.vec() * theta.cos() + e.vec() * theta.sin())
                .expect("g and e are orthogonal");

            let prev = v[(i + n - 1) % n];
            let next = v[(i + 1) % n];
            let a = interpolate(&e, &prev, (CORNER_CUT / distance(&e, &prev)).min(0.5))?;
            let c = interpolate(&e, &next, (CORNER_CUT / distance(&e, &next)).min(0.5))?;
            let mut cut: Vec<SpherePoint> = Vec::with_capacity(n + 1);
            for (j, x) in v.iter().enumerate() {
                if j == i {
                    cut.push(a);
                    cut.push(c);
                } else {
                    cut.push(*x);
                }
            }
            let (cut_thickness, _) = thickness(&Body::Polygon(ConvexPolygon::new(cut)?))?;
            Ok(VertexEvidence {
                vertex: e,
                lune_thickness,
                lune_g: g,
                lune_h,
                necessary: (lune_thickness - delta).abs() <= tol,
                cut_thickness,
                falsification: delta - cut_thickness >= EPS_CLAIM,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let outcome = if vertices.iter().any(|x| !x.necessary) {
        CertificateOutcome::NotReduced
    } else if vertices.iter().all(|x| x.falsification) {
        CertificateOutcome::CertifiedConsistentWithReduced
    } else {
        CertificateOutcome::Inconclusive
    };
    Ok(CertificateReport {
        thickness: delta,
        outcome,
        vertices,
    })
}

/// Thinnest lune `H(g) ∩ H(h)` containing `B` in which the boundary point `p`
/// is the center of the semicircle bounding `H(g)`.
///
/// `g` ranges over the supporting poles at `p` and `h` over the great circle
/// through `g` and `p`; containment is tested exactly against the boundary.
pub fn lune_centered_at(b: &Body, p: &SpherePoint) -> Result<(f64, crate::regions::Lune)> {
    let boundary = b.boundary();
    let (d, bp) = boundary.distance_to(p);
    if d > EPS_ALG {
        return Err(Error::NotOnBoundary(d));
    }
    let p = bp.point;
    let (from, to) = match poles_at_boundary_point(&boundary, &bp) {
        SupportPoles::Arc { from, to } => (from, to),
        SupportPoles::Unique(k) => (k, k),
    };
    let g_at = |s: f64| interpolate(&from, &to, s).expect("pole arc shorter than pi");
    let h_at = |g: &SpherePoint, theta: f64| {
        let e = p.vec() - g.vec() * g.dot(&p);
        SpherePoint::from_nonzero(g.vec() * theta.cos() + e.normalize() * theta.sin())
    };
    // Largest θ keeping the body inside H(h(θ)); feasibility is an interval containing 0.
    let theta_max = |g: &SpherePoint| -> f64 {
        let (mut lo, mut hi) = (0.0, PI);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if boundary.min_dot(h_at(g, mid).vec()).0 >= -1e-15 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let (s, thick) = if distance(&from, &to) < 1e-15 {
        (0.0, PI - theta_max(&from))
    } else {
        let ts: Vec<f64> = (0..=16).map(|j| j as f64 / 16.0).collect();
        scan_and_polish_min(|s| PI - theta_max(&g_at(s)), &ts)
    };
    let g = g_at(s);
    let h = h_at(&g, PI - thick);
    Ok((thick, crate::regions::Lune::new(g, h)?))
}

/// The ball `B_{w−π/2}(p')` inscribed in a body of constant width `w > π/2`
/// and touching its boundary at `p`.
pub fn inscribed_touching_ball(b: &Body, p: &SpherePoint) -> Result<Cap> {
    let dual = Dual::new(b)?;
    let (w, _) = dual.thickness();
    let report = is_constant_width(b, w, EPS_CLAIM)?;
    if w <= HALF_PI || !report.holds {
        return Err(Error::NotConstantWidthOverHalfPi {
            width: w,
            deviation: report.max_deviation,
        });
    }
    let (d, bp) = dual.body.distance_to(p);
    if d > EPS_ALG {
        return Err(Error::NotOnBoundary(d));
    }
    let k = match poles_at_boundary_point(&dual.body, &bp) {
        SupportPoles::Unique(k) => k,
        // A body of constant width above π/2 is smooth; a split joint here
        // is rounding, so take the middle pole.
        SupportPoles::Arc { from, to } => interpolate(&from, &to, 0.5)?,
    };
    let s = w - HALF_PI;
    let tangent = k.vec() - p.vec() * p.dot(&k);
    let center = SpherePoint::from_vec(p.vec() * s.cos() + tangent.normalize() * s.sin())?;
    Cap::new(center, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{
        make_cap, make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon,
    };
    use crate::sphere::Frame;
    use approx::assert_abs_diff_eq;

    fn north() -> SpherePoint {
        SpherePoint::north()
    }

    /// Direct narrowest-lune search: sample supporting poles `k` of the body
    /// and candidate partner poles, keeping only lunes that contain all
    /// boundary samples.
    fn brute_force_thickness(b: &Body, n: usize) -> f64 {
        let dual = Dual::new(b).unwrap();
        dual.polar
            .sample(n)
            .iter()
            .map(|bp| dual.width_at(&bp.point).0)
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn cap_polar_and_widths() {
        let c = SpherePoint::new(0.1, 0.5, 0.8).unwrap();
        let cap = make_cap(c, 0.5).unwrap();
        let Body::Cap(pc) = polar(&cap).unwrap() else {
            panic!()
        };
        assert_abs_diff_eq!(pc.radius(), HALF_PI - 0.5, epsilon = 1e-15);
        let self_polar = polar(&make_cap(c, PI / 4.0).unwrap()).unwrap();
        let Body::Cap(sp) = self_polar else { panic!() };
        assert_abs_diff_eq!(sp.radius(), PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(thickness(&cap).unwrap().0, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(diameter(&cap).unwrap().0, 1.0, epsilon = 1e-12);
        assert!(matches!(
            polar(&make_cap(c, HALF_PI).unwrap()),
            Err(Error::NotInOpenHemisphere)
        ));
    }

    #[test]
    fn width_at_rejects_non_supporting_pole() {
        let sq = make_regular_reduced_polygon(north(), 3, 0.8).unwrap();
        assert!(matches!(
            width_at(&sq, &north()),
            Err(Error::NotSupporting(_))
        ));
    }

    #[test]
    fn polygon_double_polar() {
        let b =
            make_regular_reduced_polygon(SpherePoint::new(0.3, 0.3, 0.9).unwrap(), 5, 1.1).unwrap();
        let pp = polar(&polar(&b).unwrap()).unwrap();
        let (v, w) = (b.vertices(), pp.vertices());
        assert_eq!(v.len(), w.len());
        for x in &v {
            assert!(w.iter().any(|y| distance(x, y) < 1e-9));
        }
    }

    #[test]
    fn quarter_disk_measures() {
        let delta = 1.0f64;
        let q = make_quarter_disk(SpherePoint::new(-0.2, 0.4, 0.8).unwrap(), delta, 0.3).unwrap();
        let (t, pair) = thickness(&q).unwrap();
        assert_abs_diff_eq!(t, delta, epsilon = 1e-7);
        assert_abs_diff_eq!(pair.lune_thickness(), t, epsilon = 1e-12);
        assert!((brute_force_thickness(&q, 2000) - t).abs() < 1e-4);
        let (d, (p1, p2)) = diameter(&q).unwrap();
        assert_abs_diff_eq!(d, (delta.cos().powi(2)).acos(), epsilon = 1e-7);
        let v = q.vertices();
        let ends = [p1, p2];
        assert!(ends.iter().any(|e| distance(e, &v[1]) < 1e-5));
        assert!(ends.iter().any(|e| distance(e, &v[2]) < 1e-5));
    }

    #[test]
    fn reduced_polygon_thickness() {
        for (n, delta) in [(3, 0.8), (5, 1.2), (7, 0.5)] {
            let b = make_regular_reduced_polygon(north(), n, delta).unwrap();
            let (t, _) = thickness(&b).unwrap();
            assert_abs_diff_eq!(t, delta, epsilon = 1e-7);
            assert!((brute_force_thickness(&b, 2000) - t).abs() < 1e-4);
        }
    }

    #[test]
    fn reuleaux_constant_width_both_regimes() {
        for (n, w) in [(3, 0.8), (5, 1.3), (3, HALF_PI), (3, 1.8), (5, 2.2)] {
            let b = make_reuleaux_odd_gon(SpherePoint::new(0.2, -0.1, 0.9).unwrap(), n, w).unwrap();
            let r = is_constant_width(&b, w, 1e-6).unwrap();
            assert!(r.holds, "n={n} w={w} deviation {}", r.max_deviation);
            assert_abs_diff_eq!(diameter(&b).unwrap().0, w, epsilon = 1e-7);
            assert!(is_constant_diameter(&b, w, 1e-5).unwrap().holds);
        }
    }

    #[test]
    fn reduced_triangle_is_not_constant_width() {
        let b = make_regular_reduced_polygon(north(), 3, 0.8).unwrap();
        let r = is_constant_width(&b, 0.8, 1e-6).unwrap();
        assert!(!r.holds);
        assert!(r.max_deviation > 1e-3);
    }

    #[test]
    fn quarter_disk_is_not_constant_diameter() {
        let q = make_quarter_disk(north(), 1.0, 0.0).unwrap();
        let w = (1f64.cos().powi(2)).acos();
        let r = is_constant_diameter(&q, w, 1e-5).unwrap();
        assert!(!r.holds);
        assert!(matches!(
            is_constant_diameter(&q, 0.5, 1e-5),
            Err(Error::DiameterMismatch { .. })
        ));
    }

    #[test]
    fn certificate_regular_triangle_and_square() {
        let tri = make_regular_reduced_polygon(north(), 3, 0.8).unwrap();
        let rep = reducedness_certificate(&tri, 1e-6).unwrap();
        assert_eq!(
            rep.outcome,
            CertificateOutcome::CertifiedConsistentWithReduced
        );

        // Square whose opposite edges are 0.8 apart.
        let f = Frame::at(north());
        let apothem = 0.4f64;
        let r = (apothem.tan() / (PI / 4.0).cos()).atan();
        let sq = Body::Polygon(
            ConvexPolygon::new((0..4).map(|i| f.point_at(r, PI / 2.0 * i as f64)).collect())
                .unwrap(),
        );
        assert_abs_diff_eq!(thickness(&sq).unwrap().0, 0.8, epsilon = 1e-7);
        let rep = reducedness_certificate(&sq, 1e-6).unwrap();
        assert_eq!(rep.outcome, CertificateOutcome::NotReduced);

        let q = make_quarter_disk(north(), 1.0, 0.0).unwrap();
        assert!(matches!(
            reducedness_certificate(&q, 1e-6),
            Err(Error::NotAPolygon)
        ));
    }

    #[test]
    fn lune_centered_at_boundary_points() {
        let w = 0.9;
        let r = make_reuleaux_odd_gon(north(), 3, w).unwrap();
        for p in crate::bodies::boundary_sample(&r, 12).unwrap() {
            let (t, lune) = lune_centered_at(&r, &p).unwrap();
            assert_abs_diff_eq!(t, w, epsilon = 1e-7);
            let (c, _) = lune.bounding_centers();
            assert_abs_diff_eq!(distance(&c, &p), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(lune.thickness(), t, epsilon = 1e-9);
        }
        // The polygon formula of the certificate agrees with the exact search.
        let tri = make_regular_reduced_polygon(north(), 3, 0.8).unwrap();
        let rep = reducedness_certificate(&tri, 1e-6).unwrap();
        for ev in &rep.vertices {
            let (t, _) = lune_centered_at(&tri, &ev.vertex).unwrap();
            assert_abs_diff_eq!(t, ev.lune_thickness, epsilon = 1e-9);
        }
    }

    #[test]
    fn polar_rho_limits() {
        let p = SpherePoint::new(0.3, 0.1, 0.9).unwrap();
        let Body::Cap(c) = intersect_caps(&[p], 0.7).unwrap() else {
            panic!()
        };
        assert_abs_diff_eq!(c.radius(), 0.7, epsilon = 1e-15);

        let b = make_regular_reduced_polygon(north(), 5, 0.9).unwrap();
        let full = polar_rho(&b, HALF_PI).unwrap();
        let direct = polar(&b).unwrap();
        assert!(boundary_gap(&full, &direct) < 1e-12);
        // Near π/2 the caps converge to the polar.
        let near = intersect_caps(&b.vertices(), HALF_PI - 1e-9).unwrap();
        assert!(boundary_gap(&near, &direct) < 1e-6);
        assert!(matches!(polar_rho(&b, 0.3), Err(Error::EmptyResult)));
    }

    #[test]
    fn polar_rho_membership() {
        let q = make_quarter_disk(north(), 0.9, 0.0).unwrap();
        let rho = 1.2;
        let f = polar_rho(&q, rho).unwrap();
        let samples = crate::bodies::boundary_sample(&q, 20000).unwrap();
        for x in crate::bodies::boundary_sample(&f, f.edge_count().max(200)).unwrap() {
            let far = samples.iter().map(|s| distance(s, &x)).fold(0.0, f64::max);
            assert!(far <= rho + 1e-6, "{far}");
            assert!(far >= rho - 1e-6, "boundary point should touch: {far}");
        }
    }

    #[test]
    fn touching_ball_in_cap_and_reuleaux() {
        let c = north();
        let cap = make_cap(c, 1.0).unwrap();
        let p = Frame::at(c).point_at(1.0, 0.4);
        let ball = inscribed_touching_ball(&cap, &p).unwrap();
        assert_abs_diff_eq!(ball.radius(), 2.0 - HALF_PI, epsilon = 1e-9);
        assert_abs_diff_eq!(distance(&ball.center(), &p), 2.0 - HALF_PI, epsilon = 1e-9);
        // On the radius through p.
        assert_abs_diff_eq!(
            distance(&c, &ball.center()) + distance(&ball.center(), &p),
            1.0,
            epsilon = 1e-9
        );

        let w = 1.8;
        let r = make_reuleaux_odd_gon(c, 3, w).unwrap();
        let p = crate::bodies::boundary_sample(&r, 7).unwrap()[3];
        let ball = inscribed_touching_ball(&r, &p).unwrap();
        assert_abs_diff_eq!(distance(&ball.center(), &p), w - HALF_PI, epsilon = 1e-9);
        let disk = make_cap(ball.center(), ball.radius()).unwrap();
        for x in crate::bodies::boundary_sample(&disk, 1000).unwrap() {
            assert!(r.support_margin(&x) >= -1e-9);
        }
        let small = make_reuleaux_odd_gon(c, 3, 0.8).unwrap();
        let p = crate::bodies::boundary_sample(&small, 3).unwrap()[0];
        assert!(matches!(
            inscribed_touching_ball(&small, &p),
            Err(Error::NotConstantWidthOverHalfPi { .. })
        ));
    }
}
