//! Spherical convex bodies: caps, geodesic polygons and disk-polygons.
//!
//! A disk-polygon is bounded by geodesic edges and circular arcs; every arc
//! has radius at most π/2 and the body lies on the side of its center, which
//! is what keeps the body convex. Quarter-disks, Reuleaux odd-gons, polars of
//! bodies and intersections of caps are all disk-polygons.

mod hull;
mod shapes;

use nalgebra::Rotation3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{Boundary, BoundaryPoint, Piece};
use crate::error::{Error, Result};
use crate::regions::Cap;
use crate::sphere::{distance, orient, triple, SpherePoint, Vec3, EPS_ALG, HALF_PI};

pub use hull::convex_hull;
pub use shapes::{
    make_cap, make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon,
    quarter_disk_in_frame, reduced_polygon_circumradius, reduced_polygon_in_frame,
    reuleaux_circumradius, reuleaux_in_frame,
};

/// Geodesic polygon with strictly convex, counterclockwise vertex cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<SpherePoint>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<SpherePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidBody(format!(
                "polygon needs 3 vertices, got {n}"
            )));
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if distance(a, b) > std::f64::consts::PI - EPS_ALG {
                return Err(Error::NotInOpenHemisphere);
            }
            if orient(a, b, c) != 1 {
                return Err(Error::InvalidBody(format!(
                    "vertex cycle is not strictly convex and counterclockwise at index {}",
                    (i + 1) % n
                )));
            }
        }
        for i in 0..n {
            let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
            for p in &vertices {
                if triple(a, b, p) < -EPS_ALG {
                    return Err(Error::InvalidBody(
                        "vertex cycle winds more than once".into(),
                    ));
                }
            }
        }
        let poly = Self { vertices };
        if poly.boundary().open_hemisphere_witness().is_none() {
            return Err(Error::NotInOpenHemisphere);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[SpherePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn boundary(&self) -> Boundary {
        let n = self.vertices.len();
        Boundary::new(
            (0..n)
                .map(|i| {
                    Piece::geodesic(&self.vertices[i], &self.vertices[(i + 1) % n])
                        .expect("validated polygon edge")
                })
                .collect(),
        )
    }
}

/// Shape of one disk-polygon edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeKind {
    Geodesic,
    /// Counterclockwise arc around `center`; the body lies on the center side.
    CircularArc {
        center: SpherePoint,
        radius: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub start: SpherePoint,
    pub end: SpherePoint,
    #[serde(flatten)]
    pub kind: EdgeKind,
}

impl Edge {
    pub fn geodesic(start: SpherePoint, end: SpherePoint) -> Self {
        Self {
            start,
            end,
            kind: EdgeKind::Geodesic,
        }
    }

    pub fn arc(start: SpherePoint, end: SpherePoint, center: SpherePoint, radius: f64) -> Self {
        Self {
            start,
            end,
            kind: EdgeKind::CircularArc { center, radius },
        }
    }

    fn to_piece(self) -> Result<Piece> {
        match self.kind {
            EdgeKind::Geodesic => Piece::geodesic(&self.start, &self.end),
            EdgeKind::CircularArc { center, radius } => {
                if !(radius > 0.0 && radius <= HALF_PI) {
                    return Err(Error::InvalidBody(format!(
                        "arc radius {radius} outside (0, pi/2]"
                    )));
                }
                for p in [&self.start, &self.end] {
                    let off = (distance(&center, p) - radius).abs();
                    if off > 1e-9 {
                        return Err(Error::InvalidBody(format!(
                            "arc endpoint is {off:e} away from its circle"
                        )));
                    }
                }
                let piece = Piece::arc(&center, radius, &self.start, &self.end)?;
                if piece.sweep() >= std::f64::consts::PI {
                    return Err(Error::InvalidBody(format!(
                        "arc subtends {} of its circle, must be below pi",
                        piece.sweep()
                    )));
                }
                Ok(piece)
            }
        }
    }

    fn from_piece(piece: &Piece) -> Self {
        if piece.is_geodesic() {
            Edge::geodesic(piece.start(), piece.end())
        } else {
            Edge::arc(piece.start(), piece.end(), piece.axis(), piece.radius())
        }
    }
}

/// Convex body bounded by a cycle of geodesic edges and circular arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskPolygon {
    edges: Vec<Edge>,
    boundary: Boundary,
}

impl DiskPolygon {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let n = edges.len();
        if n < 2 {
            return Err(Error::InvalidBody(format!(
                "disk-polygon needs 2 edges, got {n}"
            )));
        }
        for i in 0..n {
            let gap = distance(&edges[i].end, &edges[(i + 1) % n].start);
            if gap > 1e-9 {
                return Err(Error::InvalidBody(format!(
                    "edges {i} and {} do not chain (gap {gap:e})",
                    (i + 1) % n
                )));
            }
        }
        let pieces = edges
            .iter()
            .map(|e| e.to_piece())
            .collect::<Result<Vec<_>>>()?;
        let boundary = Boundary::new(pieces);
        for i in 0..n {
            let (k_end, k_next) = boundary.joint_poles(i);
            let turn = triple(&k_end, &k_next, &edges[(i + 1) % n].start);
            if distance(&k_end, &k_next) > 1e-9 && turn < -EPS_ALG {
                return Err(Error::InvalidBody(format!("reflex joint after edge {i}")));
            }
        }
        let margin = boundary
            .sample((16 * n).min(4096).max(n))
            .par_iter()
            .map(|bp| boundary.support_margin(&bp.point))
            .reduce(|| f64::INFINITY, f64::min);
        if margin < -EPS_ALG {
            return Err(Error::InvalidBody(format!(
                "boundary leaves a supporting hemisphere (margin {margin:e}); not convex or not counterclockwise"
            )));
        }
        if boundary.open_hemisphere_witness().is_none() {
            return Err(Error::NotInOpenHemisphere);
        }
        Ok(Self { edges, boundary })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub(crate) fn boundary(&self) -> &Boundary {
        &self.boundary
    }
}

/// Any supported convex body.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Cap(Cap),
    Polygon(ConvexPolygon),
    Disk(DiskPolygon),
}

/// Supporting hemispheres at one boundary point, given by their poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupportPoles {
    /// Smooth boundary point: exactly one supporting hemisphere.
    Unique(SpherePoint),
    /// Corner: the poles fill the great-circle arc `from → to`.
    Arc { from: SpherePoint, to: SpherePoint },
}

impl SupportPoles {
    /// `n` poles evenly spread over the set (one for a unique pole).
    pub fn spread(&self, n: usize) -> Vec<SpherePoint> {
        match self {
            SupportPoles::Unique(k) => vec![*k],
            SupportPoles::Arc { from, to } => (0..n.max(2))
                .map(|j| {
                    crate::sphere::interpolate(from, to, j as f64 / (n.max(2) - 1) as f64)
                        .expect("corner poles are less than pi apart")
                })
                .collect(),
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, SupportPoles::Unique(_))
    }
}

impl Body {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Body::Cap(_) => "cap",
            Body::Polygon(_) => "polygon",
            Body::Disk(_) => "disk_polygon",
        }
    }

    pub(crate) fn boundary(&self) -> Boundary {
        match self {
            Body::Cap(c) => Boundary::new(vec![Piece::full_circle(&c.center(), c.radius())]),
            Body::Polygon(p) => p.boundary(),
            Body::Disk(d) => d.boundary().clone(),
        }
    }

    /// Builds a body from a closed boundary chain.
    pub(crate) fn from_boundary(b: &Boundary, polygon_if_geodesic: bool) -> Result<Body> {
        if b.len() == 1 && b.piece(0).is_closed() {
            let p = b.piece(0);
            return Ok(Body::Cap(Cap::new(p.axis(), p.radius())?));
        }
        if polygon_if_geodesic && b.pieces().iter().all(Piece::is_geodesic) {
            return Ok(Body::Polygon(ConvexPolygon::new(b.vertices())?));
        }
        let edges = b.pieces().iter().map(Edge::from_piece).collect();
        Ok(Body::Disk(DiskPolygon::new(edges)?))
    }

    /// Corner points; empty for a cap.
    pub fn vertices(&self) -> Vec<SpherePoint> {
        match self {
            Body::Cap(_) => Vec::new(),
            Body::Polygon(p) => p.vertices().to_vec(),
            Body::Disk(d) => d.edges().iter().map(|e| e.start).collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Body::Cap(_) => 0,
            Body::Polygon(p) => p.len(),
            Body::Disk(d) => d.edges().len(),
        }
    }

    /// A point of the interior: the normalized mean of boundary samples.
    pub fn interior_point(&self) -> SpherePoint {
        match self {
            Body::Cap(c) => c.center(),
            _ => {
                let b = self.boundary();
                let sum: Vec3 = b.sample(8 * b.len()).iter().map(|bp| *bp.point.vec()).sum();
                SpherePoint::from_nonzero(sum)
            }
        }
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        body_contains(self, p)
    }

    /// Signed containment margin: `min_k p·k` over the supporting poles `k`.
    /// Roughly the sine of the distance to the nearest supporting great circle.
    pub fn support_margin(&self, p: &SpherePoint) -> f64 {
        self.boundary().support_margin(p)
    }

    /// Distance from `p` to the boundary curve.
    pub fn boundary_distance(&self, p: &SpherePoint) -> f64 {
        self.boundary().distance_to(p).0
    }

    /// The smooth joints of the boundary are not corners; every other
    /// vertex is. A body is strictly convex when it has no geodesic edge.
    pub fn is_strictly_convex(&self) -> bool {
        self.boundary().pieces().iter().all(|p| !p.is_geodesic())
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> Body {
        match self {
            Body::Cap(c) => {
                Body::Cap(Cap::new(c.center().rotate(rot), c.radius()).expect("same radius"))
            }
            Body::Polygon(p) => Body::Polygon(ConvexPolygon {
                vertices: p.vertices().iter().map(|v| v.rotate(rot)).collect(),
            }),
            Body::Disk(d) => {
                let edges = d
                    .edges()
                    .iter()
                    .map(|e| Edge {
                        start: e.start.rotate(rot),
                        end: e.end.rotate(rot),
                        kind: match e.kind {
                            EdgeKind::Geodesic => EdgeKind::Geodesic,
                            EdgeKind::CircularArc { center, radius } => EdgeKind::CircularArc {
                                center: center.rotate(rot),
                                radius,
                            },
                        },
                    })
                    .collect();
                Body::Disk(DiskPolygon {
                    edges,
                    boundary: d.boundary().rotate(rot),
                })
            }
        }
    }
}

/// Closed membership test with [`EPS_ALG`] slack.
pub fn body_contains(body: &Body, p: &SpherePoint) -> bool {
    match body {
        Body::Cap(c) => c.contains(p),
        Body::Polygon(poly) => {
            let v = poly.vertices();
            let n = v.len();
            (0..n).all(|i| triple(&v[i], &v[(i + 1) % n], p) >= -EPS_ALG)
        }
        Body::Disk(d) => d.boundary().support_margin(p) >= -EPS_ALG,
    }
}

/// `n` deterministic boundary points, equidistributed by arc length on each
/// edge and including every vertex.
pub fn boundary_sample(body: &Body, n: usize) -> Result<Vec<SpherePoint>> {
    let minimum = match body {
        Body::Cap(_) => 4,
        _ => body.edge_count(),
    };
    if n < minimum {
        return Err(Error::BadParameters(format!(
            "need at least {minimum} samples, got {n}"
        )));
    }
    Ok(body
        .boundary()
        .sample(n)
        .into_iter()
        .map(|bp| bp.point)
        .collect())
}

/// Poles of the hemispheres supporting `body` at the boundary point `p`.
pub fn supporting_poles_at(body: &Body, p: &SpherePoint) -> Result<SupportPoles> {
    let b = body.boundary();
    let (d, bp) = b.distance_to(p);
    if d > EPS_ALG {
        return Err(Error::NotOnBoundary(d));
    }
    Ok(poles_at_boundary_point(&b, &bp))
}

pub(crate) fn poles_at_boundary_point(b: &Boundary, bp: &BoundaryPoint) -> SupportPoles {
    let piece = b.piece(bp.piece);
    let n = b.len();
    if piece.is_closed() {
        return SupportPoles::Unique(piece.pole(bp.t));
    }
    let near = |q: SpherePoint| distance(&bp.point, &q) <= EPS_ALG;
    let joint = if near(piece.start()) {
        Some((bp.piece + n - 1) % n)
    } else if near(piece.end()) {
        Some(bp.piece)
    } else {
        None
    };
    match joint {
        Some(j) => {
            let (from, to) = b.joint_poles(j);
            if distance(&from, &to) <= 1e-12 {
                SupportPoles::Unique(from)
            } else {
                SupportPoles::Arc { from, to }
            }
        }
        None => SupportPoles::Unique(piece.pole(bp.t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::Frame;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn square(half_diag: f64) -> Body {
        let f = Frame::at(SpherePoint::north());
        let v = (0..4)
            .map(|i| f.point_at(half_diag, PI / 2.0 * i as f64))
            .collect();
        Body::Polygon(ConvexPolygon::new(v).unwrap())
    }

    #[test]
    fn polygon_rejects_clockwise_and_small_inputs() {
        let f = Frame::at(SpherePoint::north());
        let mut v: Vec<_> = (0..4)
            .map(|i| f.point_at(0.5, PI / 2.0 * i as f64))
            .collect();
        assert!(ConvexPolygon::new(v[..2].to_vec()).is_err());
        v.reverse();
        assert!(ConvexPolygon::new(v).is_err());
    }

    #[test]
    fn polygon_rejects_double_winding() {
        let f = Frame::at(SpherePoint::north());
        let star = (0..5)
            .map(|i| f.point_at(0.5, 4.0 * PI / 5.0 * i as f64))
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
    }

    #[test]
    fn polygon_contains_vertices_and_center_not_antipode() {
        let sq = square(0.6);
        for v in sq.vertices() {
            assert!(body_contains(&sq, &v));
        }
        let c = sq.interior_point();
        assert!(body_contains(&sq, &c));
        assert!(!body_contains(&sq, &c.antipode()));
    }

    #[test]
    fn cap_samples_are_equally_spaced() {
        let cap = make_cap(SpherePoint::north(), 0.4).unwrap();
        let s = boundary_sample(&cap, 4).unwrap();
        assert_eq!(s.len(), 4);
        for i in 0..4 {
            let d = distance(&s[i], &s[(i + 1) % 4]);
            assert_abs_diff_eq!(d, distance(&s[0], &s[1]), epsilon = 1e-12);
        }
        assert!(boundary_sample(&cap, 3).is_err());
    }

    #[test]
    fn polygon_sample_with_vertex_count_returns_vertices() {
        let sq = square(0.6);
        let s = boundary_sample(&sq, 4).unwrap();
        for (a, b) in s.iter().zip(sq.vertices()) {
            assert_abs_diff_eq!(distance(a, &b), 0.0, epsilon = 1e-15);
        }
        assert!(boundary_sample(&sq, 3).is_err());
    }

    #[test]
    fn samples_lie_on_boundary_and_in_body() {
        let bodies = [
            square(0.7),
            make_quarter_disk(SpherePoint::north(), 0.9, 0.2).unwrap(),
            make_reuleaux_odd_gon(SpherePoint::new(0.1, 0.2, 0.9).unwrap(), 5, 1.0).unwrap(),
            make_reuleaux_odd_gon(SpherePoint::north(), 3, 1.8).unwrap(),
        ];
        for b in &bodies {
            for p in boundary_sample(b, 200).unwrap() {
                assert!(body_contains(b, &p));
                assert!(b.boundary_distance(&p) < EPS_ALG);
            }
        }
    }

    #[test]
    fn supporting_poles_on_cap() {
        let c = SpherePoint::north();
        let rho = 0.6;
        let cap = make_cap(c, rho).unwrap();
        let p = Frame::at(c).point_at(rho, 1.1);
        let SupportPoles::Unique(k) = supporting_poles_at(&cap, &p).unwrap() else {
            panic!("cap is smooth");
        };
        assert_abs_diff_eq!(distance(&k, &p), HALF_PI, epsilon = 1e-12);
        assert_abs_diff_eq!(distance(&k, &c), HALF_PI - rho, epsilon = 1e-12);
        // Tangency oracle: the whole cap sits in H(k).
        for q in boundary_sample(&cap, 400).unwrap() {
            assert!(q.dot(&k) >= -1e-12);
        }
    }

    #[test]
    fn supporting_poles_on_polygon() {
        let sq = square(0.6);
        let v = sq.vertices();
        let mid = crate::sphere::interpolate(&v[0], &v[1], 0.5).unwrap();
        let SupportPoles::Unique(k) = supporting_poles_at(&sq, &mid).unwrap() else {
            panic!("edge interior is smooth");
        };
        let expected = SpherePoint::from_vec(v[0].vec().cross(v[1].vec())).unwrap();
        assert_abs_diff_eq!(distance(&k, &expected), 0.0, epsilon = 1e-12);

        let poles = supporting_poles_at(&sq, &v[1]).unwrap();
        let SupportPoles::Arc { from, to } = poles else {
            panic!("vertex is a corner");
        };
        let next = SpherePoint::from_vec(v[1].vec().cross(v[2].vec())).unwrap();
        assert_abs_diff_eq!(distance(&from, &expected), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(distance(&to, &next), 0.0, epsilon = 1e-12);
        let samples = boundary_sample(&sq, 200).unwrap();
        for k in poles.spread(9) {
            assert!(samples.iter().all(|q| q.dot(&k) >= -1e-12));
        }
        let inside = sq.interior_point();
        assert!(matches!(
            supporting_poles_at(&sq, &inside),
            Err(Error::NotOnBoundary(_))
        ));
    }

    #[test]
    fn disk_polygon_rejects_broken_chain() {
        let f = Frame::at(SpherePoint::north());
        let a = f.point_at(0.5, 0.0);
        let b = f.point_at(0.5, 2.0);
        let c = f.point_at(0.5, 4.0);
        let e = vec![Edge::geodesic(a, b), Edge::geodesic(c, a)];
        assert!(DiskPolygon::new(e).is_err());
    }

    #[test]
    fn disk_polygon_rejects_concave_arc() {
        // Arc bulging inward: the body would sit on the far side of its center.
        let f = Frame::at(SpherePoint::north());
        let a = f.point_at(0.5, 0.0);
        let b = f.point_at(0.5, 2.0);
        let c = f.point_at(0.5, 4.0);
        let outside_center = f.point_at(1.2, 1.0);
        let r = distance(&outside_center, &a);
        let e = vec![
            Edge::arc(a, b, outside_center, r),
            Edge::geodesic(b, c),
            Edge::geodesic(c, a),
        ];
        assert!(DiskPolygon::new(e).is_err());
    }
}
