//! Boundary curves shared by all body kinds.
//!
//! Every boundary piece is an arc of a (small or great) circle,
//! `x(t) = cos r · axis + sin r · (cos t · u + sin t · v)` for `t ∈ [0, sweep]`,
//! traversed counterclockwise around `axis` with the body on the axis side.
//! Geodesic edges have `r = π/2`; a cap is one closed piece with `sweep = 2π`.
//!
//! Linear functionals restricted to a piece are sinusoids in `t`, so extreme
//! dot products (and therefore farthest points and support margins) are exact.

use std::f64::consts::PI;

use nalgebra::Rotation3;

use crate::error::{Error, Result};
use crate::sphere::{distance, wrap_angle, SpherePoint, Vec3, HALF_PI};

/// Junction poles closer than this are treated as a smooth joint.
const SMOOTH_JOINT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Piece {
    axis: Vec3,
    radius: f64,
    u: Vec3,
    v: Vec3,
    sweep: f64,
}

/// Extremes of `c + a cos t + b sin t` over `t ∈ [0, sweep]`.
fn sinusoid_extremes(c: f64, a: f64, b: f64, sweep: f64) -> ((f64, f64), (f64, f64)) {
    let eval = |t: f64| c + a * t.cos() + b * t.sin();
    let mut lo = (eval(0.0), 0.0);
    let mut hi = lo;
    let end = (eval(sweep), sweep);
    let mut consider = |cand: (f64, f64)| {
        if cand.0 < lo.0 {
            lo = cand;
        }
        if cand.0 > hi.0 {
            hi = cand;
        }
    };
    consider(end);
    if a.hypot(b) > 0.0 {
        let phi = b.atan2(a);
        for t in [wrap_angle(phi), wrap_angle(phi + PI)] {
            if t <= sweep {
                consider((eval(t), t));
            }
        }
    }
    (lo, hi)
}

impl Piece {
    /// The geodesic edge from `a` to `b` (body on the left).
    pub fn geodesic(a: &SpherePoint, b: &SpherePoint) -> Result<Self> {
        let n = a.vec().cross(b.vec());
        if n.norm() < 1e-14 {
            return Err(Error::InvalidBody(format!(
                "geodesic edge endpoints coincide or are antipodal: {a:?} {b:?}"
            )));
        }
        let axis = n.normalize();
        let u = *a.vec();
        let v = axis.cross(&u);
        Ok(Self {
            axis,
            radius: HALF_PI,
            u,
            v,
            sweep: distance(a, b),
        })
    }

    /// Counterclockwise arc around `center` of angular radius `radius` from `start` to `end`.
    pub fn arc(
        center: &SpherePoint,
        radius: f64,
        start: &SpherePoint,
        end: &SpherePoint,
    ) -> Result<Self> {
        let axis = *center.vec();
        let us = start.vec() - axis * axis.dot(start.vec());
        let ue = end.vec() - axis * axis.dot(end.vec());
        if us.norm() < 1e-14 || ue.norm() < 1e-14 {
            return Err(Error::InvalidBody(
                "arc endpoint coincides with its center".into(),
            ));
        }
        let u = us.normalize();
        let v = axis.cross(&u);
        let e = ue.normalize();
        let mut sweep = wrap_angle(v.dot(&e).atan2(u.dot(&e)));
        if sweep < 1e-14 {
            sweep = 2.0 * PI;
        }
        Ok(Self {
            axis,
            radius,
            u,
            v,
            sweep,
        })
    }

    pub fn full_circle(center: &SpherePoint, radius: f64) -> Self {
        let frame = crate::sphere::Frame::at(*center);
        Self {
            axis: *center.vec(),
            radius,
            u: frame.x_axis(),
            v: frame.y_axis(),
            sweep: 2.0 * PI,
        }
    }

    pub fn axis(&self) -> SpherePoint {
        SpherePoint::from_nonzero(self.axis)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sweep(&self) -> f64 {
        self.sweep
    }

    pub fn is_geodesic(&self) -> bool {
        (self.radius - HALF_PI).abs() < 1e-15
    }

    pub fn is_closed(&self) -> bool {
        self.sweep >= 2.0 * PI
    }

    pub fn length(&self) -> f64 {
        self.radius.sin() * self.sweep
    }

    fn dir(&self, t: f64) -> Vec3 {
        self.u * t.cos() + self.v * t.sin()
    }

    pub fn point(&self, t: f64) -> SpherePoint {
        let (s, c) = self.radius.sin_cos();
        SpherePoint::from_nonzero(self.axis * c + self.dir(t) * s)
    }

    pub fn start(&self) -> SpherePoint {
        self.point(0.0)
    }

    pub fn end(&self) -> SpherePoint {
        self.point(self.sweep)
    }

    /// Pole of the hemisphere supporting the body at `point(t)`.
    pub fn pole(&self, t: f64) -> SpherePoint {
        let (s, c) = self.radius.sin_cos();
        SpherePoint::from_nonzero(self.axis * s - self.dir(t) * c)
    }

    /// The curve traced by [`Piece::pole`]; `None` when it is a single point.
    pub fn polar(&self) -> Option<Piece> {
        if self.is_geodesic() {
            return None;
        }
        Some(Self {
            axis: self.axis,
            radius: HALF_PI - self.radius,
            u: -self.u,
            v: -self.v,
            sweep: self.sweep,
        })
    }

    /// `(min, argmin)` of `w · point(t)`.
    pub fn min_dot(&self, w: &Vec3) -> (f64, f64) {
        let (s, c) = self.radius.sin_cos();
        let (lo, _) = sinusoid_extremes(
            c * w.dot(&self.axis),
            s * w.dot(&self.u),
            s * w.dot(&self.v),
            self.sweep,
        );
        lo
    }

    /// `(min, argmin)` of `w · pole(t)`.
    pub fn min_pole_dot(&self, w: &Vec3) -> (f64, f64) {
        let (s, c) = self.radius.sin_cos();
        let (lo, _) = sinusoid_extremes(
            s * w.dot(&self.axis),
            -c * w.dot(&self.u),
            -c * w.dot(&self.v),
            self.sweep,
        );
        lo
    }

    /// Distance from `p` to the piece and the parameter of the closest point.
    pub fn distance_to(&self, p: &SpherePoint) -> (f64, f64) {
        let w = p.vec() - self.axis * self.axis.dot(p.vec());
        let mut best = (distance(p, &self.start()), 0.0);
        let e = (distance(p, &self.end()), self.sweep);
        if e.0 < best.0 {
            best = e;
        }
        if w.norm() > 1e-15 {
            let t = wrap_angle(w.dot(&self.v).atan2(w.dot(&self.u)));
            if t <= self.sweep {
                let d = distance(p, &self.point(t));
                if d < best.0 {
                    best = (d, t);
                }
            }
        }
        best
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Self {
        Self {
            axis: rot * self.axis,
            radius: self.radius,
            u: rot * self.u,
            v: rot * self.v,
            sweep: self.sweep,
        }
    }
}

/// A point on a boundary, remembered with the piece and parameter producing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BoundaryPoint {
    pub piece: usize,
    pub t: f64,
    pub point: SpherePoint,
}

/// Closed, counterclockwise chain of pieces.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Boundary {
    pieces: Vec<Piece>,
}

impl Boundary {
    pub fn new(pieces: Vec<Piece>) -> Self {
        debug_assert!(!pieces.is_empty());
        Self { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &Piece {
        &self.pieces[i]
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn point(&self, piece: usize, t: f64) -> SpherePoint {
        self.pieces[piece].point(t)
    }

    pub fn vertices(&self) -> Vec<SpherePoint> {
        if self.pieces.len() == 1 && self.pieces[0].is_closed() {
            return Vec::new();
        }
        self.pieces.iter().map(Piece::start).collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum()
    }

    /// Point of the boundary minimizing `w · x`.
    pub fn min_dot(&self, w: &Vec3) -> (f64, BoundaryPoint) {
        let mut best: Option<(f64, BoundaryPoint)> = None;
        for (i, p) in self.pieces.iter().enumerate() {
            let (val, t) = p.min_dot(w);
            if best.as_ref().is_none_or(|b| val < b.0) {
                best = Some((
                    val,
                    BoundaryPoint {
                        piece: i,
                        t,
                        point: p.point(t),
                    },
                ));
            }
        }
        best.expect("boundary has pieces")
    }

    /// Farthest distance from `p` to the body bounded by this curve, and a
    /// point realizing it. Valid for bodies in an open hemisphere.
    pub fn farthest(&self, p: &SpherePoint) -> (f64, BoundaryPoint) {
        let (_, bp) = self.min_dot(p.vec());
        (distance(p, &bp.point), bp)
    }

    /// `min` over all supporting poles `k` of `p · k`: non-negative exactly
    /// when `p` lies in the body.
    pub fn support_margin(&self, p: &SpherePoint) -> f64 {
        self.pieces
            .iter()
            .map(|piece| piece.min_pole_dot(p.vec()).0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn distance_to(&self, p: &SpherePoint) -> (f64, BoundaryPoint) {
        let mut best: Option<(f64, BoundaryPoint)> = None;
        for (i, piece) in self.pieces.iter().enumerate() {
            let (d, t) = piece.distance_to(p);
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((
                    d,
                    BoundaryPoint {
                        piece: i,
                        t,
                        point: piece.point(t),
                    },
                ));
            }
        }
        best.expect("boundary has pieces")
    }

    /// Supporting poles at the joint between piece `i` and its successor.
    pub fn joint_poles(&self, i: usize) -> (SpherePoint, SpherePoint) {
        let a = &self.pieces[i];
        let b = &self.pieces[(i + 1) % self.pieces.len()];
        (a.pole(a.sweep()), b.pole(0.0))
    }

    /// Boundary of the polar body.
    pub fn polar(&self) -> Result<Boundary> {
        let mut out = Vec::with_capacity(2 * self.pieces.len());
        for (i, piece) in self.pieces.iter().enumerate() {
            if let Some(pp) = piece.polar() {
                out.push(pp);
            }
            if piece.is_closed() {
                continue;
            }
            let (k_end, k_next) = self.joint_poles(i);
            if distance(&k_end, &k_next) > SMOOTH_JOINT {
                out.push(Piece::geodesic(&k_end, &k_next)?);
            }
        }
        if out.len() < 2 && !out.first().is_some_and(Piece::is_closed) {
            return Err(Error::InvalidBody("polar boundary is degenerate".into()));
        }
        Ok(Boundary::new(out))
    }

    /// `n` boundary points: every piece start plus arc-length equidistributed
    /// interior points, allocated by largest remainder.
    pub fn sample(&self, n: usize) -> Vec<BoundaryPoint> {
        if self.pieces.len() == 1 && self.pieces[0].is_closed() {
            let piece = &self.pieces[0];
            return (0..n)
                .map(|j| {
                    let t = piece.sweep() * j as f64 / n as f64;
                    BoundaryPoint {
                        piece: 0,
                        t,
                        point: piece.point(t),
                    }
                })
                .collect();
        }
        let m = self.pieces.len();
        let extra = n.saturating_sub(m);
        let total = self.perimeter();
        let mut counts = vec![0usize; m];
        if extra > 0 && total > 0.0 {
            let quotas: Vec<f64> = self
                .pieces
                .iter()
                .map(|p| extra as f64 * p.length() / total)
                .collect();
            let mut assigned = 0;
            for (c, q) in counts.iter_mut().zip(&quotas) {
                *c = q.floor() as usize;
                assigned += *c;
            }
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| {
                let ra = quotas[a] - quotas[a].floor();
                let rb = quotas[b] - quotas[b].floor();
                rb.partial_cmp(&ra)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            for &i in order.iter().take(extra - assigned) {
                counts[i] += 1;
            }
        }
        let mut out = Vec::with_capacity(n.max(m));
        for (i, piece) in self.pieces.iter().enumerate() {
            let k = counts[i];
            for j in 0..=k {
                let t = piece.sweep() * j as f64 / (k + 1) as f64;
                out.push(BoundaryPoint {
                    piece: i,
                    t,
                    point: piece.point(t),
                });
            }
        }
        out
    }

    /// Evenly spaced parameters on each piece (endpoints included), at
    /// least `per_piece + 1` per piece.
    pub fn parameter_grid(&self, per_piece: usize) -> Vec<Vec<f64>> {
        self.pieces
            .iter()
            .map(|p| {
                let k = if p.is_closed() {
                    4 * per_piece
                } else {
                    per_piece
                };
                (0..=k).map(|j| p.sweep() * j as f64 / k as f64).collect()
            })
            .collect()
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Boundary {
        Boundary::new(self.pieces.iter().map(|p| p.rotate(rot)).collect())
    }

    /// A pole `m` with every boundary point strictly inside `H(m)`, if any.
    pub fn open_hemisphere_witness(&self) -> Option<SpherePoint> {
        let sum: Vec3 = self
            .sample(8 * self.pieces.len().max(4))
            .iter()
            .map(|bp| *bp.point.vec())
            .sum();
        // Perceptron steps toward the exact worst boundary point; they
        // terminate whenever a witness with positive margin exists.
        let mut acc = sum.normalize();
        for _ in 0..100_000 {
            let m = SpherePoint::from_vec(acc).ok()?;
            let (lo, worst) = self.min_dot(m.vec());
            if lo > 1e-12 {
                return Some(m);
            }
            acc += worst.point.vec();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::Frame;
    use approx::assert_abs_diff_eq;

    fn octant() -> Boundary {
        let e = [Vec3::x(), Vec3::y(), Vec3::z()].map(|v| SpherePoint::from_vec(v).unwrap());
        Boundary::new(
            (0..3)
                .map(|i| Piece::geodesic(&e[i], &e[(i + 1) % 3]).unwrap())
                .collect(),
        )
    }

    #[test]
    fn sinusoid_extremes_match_dense_scan() {
        for &(c, a, b, sweep) in &[
            (0.1, 0.4, -0.7, 2.0),
            (0.0, -1.0, 0.2, 0.5),
            (0.3, 0.0, 1.0, 2.0 * PI),
        ] {
            let ((lo, _), (hi, _)) = sinusoid_extremes(c, a, b, sweep);
            let scan: Vec<f64> = (0..=20000)
                .map(|j| {
                    let t = sweep * j as f64 / 20000.0;
                    c + a * t.cos() + b * t.sin()
                })
                .collect();
            let smin = scan.iter().cloned().fold(f64::INFINITY, f64::min);
            let smax = scan.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(lo <= smin + 1e-15 && smin - lo < 1e-7);
            assert!(hi >= smax - 1e-15 && hi - smax < 1e-7);
        }
    }

    #[test]
    fn octant_polar_is_octant() {
        let b = octant();
        let polar = b.polar().unwrap();
        assert_eq!(polar.len(), 3);
        for v in polar.vertices() {
            let near = b
                .vertices()
                .iter()
                .map(|w| distance(&v, w))
                .fold(f64::INFINITY, f64::min);
            assert_abs_diff_eq!(near, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn support_margin_sign() {
        let b = octant();
        let inside = SpherePoint::new(1.0, 1.0, 1.0).unwrap();
        assert!(b.support_margin(&inside) > 0.5);
        let outside = SpherePoint::new(-0.1, 1.0, 1.0).unwrap();
        assert!(b.support_margin(&outside) < 0.0);
    }

    #[test]
    fn arc_piece_geometry() {
        let f = Frame::at(SpherePoint::new(0.2, 0.3, 1.0).unwrap());
        let a = f.point_at(0.4, 0.0);
        let b = f.point_at(0.4, 1.0);
        let piece = Piece::arc(&f.center(), 0.4, &a, &b).unwrap();
        assert_abs_diff_eq!(piece.sweep(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(distance(&piece.end(), &b), 0.0, epsilon = 1e-12);
        // Supporting pole is pi/2 from the touching point and pi/2 - r from the center.
        let k = piece.pole(0.3);
        assert_abs_diff_eq!(distance(&k, &piece.point(0.3)), HALF_PI, epsilon = 1e-12);
        assert_abs_diff_eq!(distance(&k, &f.center()), HALF_PI - 0.4, epsilon = 1e-12);
        let (d, t) = piece.distance_to(&f.point_at(0.1, 0.5));
        assert_abs_diff_eq!(d, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(t, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn sample_counts_and_vertices() {
        let b = octant();
        let s = b.sample(3);
        assert_eq!(s.len(), 3);
        let s = b.sample(100);
        assert_eq!(s.len(), 100);
        for v in b.vertices() {
            assert!(s.iter().any(|bp| distance(&bp.point, &v) < 1e-15));
        }
    }
}
