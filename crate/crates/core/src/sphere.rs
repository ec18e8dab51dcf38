//! Points, arcs and orientation primitives on the unit sphere S².
//!
//! Every point is stored as a unit 3-vector. Distances are measured with
//! `atan2(|a×b|, a·b)`, which keeps full precision near 0 and near π where
//! `acos(a·b)` does not.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Threshold on raw triple products and membership tests.
pub const EPS_ALG: f64 = 1e-9;
/// Convergence target of the one-dimensional optimizers.
pub const EPS_OPT: f64 = 1e-7;
/// Tolerance at which numeric theorem checks are judged.
pub const EPS_CLAIM: f64 = 1e-6;

/// The three tolerance levels used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerance {
    pub eps_alg: f64,
    pub eps_opt: f64,
    pub eps_claim: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_alg: EPS_ALG,
            eps_opt: EPS_OPT,
            eps_claim: EPS_CLAIM,
        }
    }
}

impl Tolerance {
    pub fn new(eps_alg: f64, eps_opt: f64, eps_claim: f64) -> Result<Self> {
        let tol = Self {
            eps_alg,
            eps_opt,
            eps_claim,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Checks `0 < eps_alg < eps_opt < eps_claim < 1e-3`.
    pub fn validate(&self) -> Result<()> {
        let ordered = 0.0 < self.eps_alg
            && self.eps_alg < self.eps_opt
            && self.eps_opt < self.eps_claim
            && self.eps_claim < 1e-3;
        if ordered {
            Ok(())
        } else {
            Err(Error::BadTolerance(format!(
                "need 0 < eps_alg < eps_opt < eps_claim < 1e-3, got {} / {} / {}",
                self.eps_alg, self.eps_opt, self.eps_claim
            )))
        }
    }
}

/// A point of the unit sphere.
#[derive(Clone, Copy, PartialEq)]
pub struct SpherePoint(Vec3);

impl SpherePoint {
    /// Normalizes `(x, y, z)` onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self(v / n))
    }

    /// Normalizes a vector already known to be far from zero.
    pub(crate) fn from_nonzero(v: Vec3) -> Self {
        let n = v.norm();
        debug_assert!(n > 0.0, "normalizing a zero vector");
        Self(v / n)
    }

    /// Point at colatitude `theta` and longitude `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        Self(Vec3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ))
    }

    pub fn north() -> Self {
        Self(Vec3::z())
    }

    pub fn vec(&self) -> &Vec3 {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn rotate(&self, rot: &Rotation3<f64>) -> SpherePoint {
        SpherePoint::from_nonzero(rot * self.0)
    }

    pub fn antipode(&self) -> SpherePoint {
        antipode(self)
    }

    pub fn distance(&self, other: &SpherePoint) -> f64 {
        distance(self, other)
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12}, {:.12}, {:.12})", self.0.x, self.0.y, self.0.z)
    }
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(deserializer)?;
        let v = Vec3::new(x, y, z);
        // Vectors that are unit up to rounding are kept bit-for-bit so that
        // saving a loaded body reproduces the same file.
        if (v.norm() - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(SpherePoint(v));
        }
        SpherePoint::from_vec(v).map_err(serde::de::Error::custom)
    }
}

/// Spherical distance: the angle between the two unit vectors, in `[0, π]`.
pub fn distance(a: &SpherePoint, b: &SpherePoint) -> f64 {
    a.0.cross(&b.0).norm().atan2(a.0.dot(&b.0))
}

pub fn antipode(p: &SpherePoint) -> SpherePoint {
    SpherePoint(-p.0)
}

/// Unit-speed point on the arc `ab` at fraction `t` of its length.
pub fn interpolate(a: &SpherePoint, b: &SpherePoint, t: f64) -> Result<SpherePoint> {
    let d = distance(a, b);
    if d > PI - EPS_ALG {
        return Err(Error::AntipodalEndpoints(d));
    }
    if d == 0.0 {
        return Ok(*a);
    }
    let dir = (b.0 - a.0 * a.0.dot(&b.0)).normalize();
    let s = t * d;
    Ok(SpherePoint::from_nonzero(a.0 * s.cos() + dir * s.sin()))
}

/// Sign of the triple product `a·(b×c)`; magnitudes below [`EPS_ALG`] count as zero.
pub fn orient(a: &SpherePoint, b: &SpherePoint, c: &SpherePoint) -> i8 {
    let v = triple(a, b, c);
    if v.abs() < EPS_ALG {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

pub(crate) fn triple(a: &SpherePoint, b: &SpherePoint, c: &SpherePoint) -> f64 {
    a.0.dot(&b.0.cross(&c.0))
}

/// Center and radius of the small circle through three points.
///
/// Of the two antipodal centers equidistant from the points, the one giving
/// the smaller radius is returned.
pub fn circumcircle(
    a: &SpherePoint,
    b: &SpherePoint,
    c: &SpherePoint,
) -> Result<(SpherePoint, f64)> {
    if orient(a, b, c) == 0 {
        return Err(Error::DegenerateTriple);
    }
    let n = (b.0 - a.0).cross(&(c.0 - a.0));
    let mut center = SpherePoint::from_vec(n).map_err(|_| Error::DegenerateTriple)?;
    if center.dot(a) < 0.0 {
        center = antipode(&center);
    }
    let radius = distance(&center, a);
    Ok((center, radius))
}

/// The shorter great-circle arc between two non-antipodal points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    a: SpherePoint,
    b: SpherePoint,
}

impl GeodesicArc {
    pub fn new(a: SpherePoint, b: SpherePoint) -> Result<Self> {
        let d = distance(&a, &b);
        if d > PI - EPS_ALG {
            return Err(Error::AntipodalEndpoints(d));
        }
        Ok(Self { a, b })
    }

    pub fn start(&self) -> SpherePoint {
        self.a
    }

    pub fn end(&self) -> SpherePoint {
        self.b
    }

    pub fn length(&self) -> f64 {
        distance(&self.a, &self.b)
    }

    pub fn point_at(&self, t: f64) -> SpherePoint {
        interpolate(&self.a, &self.b, t).expect("arc endpoints checked on construction")
    }

    pub fn midpoint(&self) -> SpherePoint {
        self.point_at(0.5)
    }

    /// Distance from `p` to the closest point of the arc.
    pub fn distance_to(&self, p: &SpherePoint) -> f64 {
        let len = self.length();
        if len < 1e-15 {
            return distance(&self.a, p);
        }
        let pole = SpherePoint::from_nonzero(self.a.0.cross(&self.b.0));
        let proj = p.0 - pole.0 * pole.0.dot(&p.0);
        if proj.norm() > 1e-15 {
            let foot = SpherePoint::from_nonzero(proj);
            if (distance(&self.a, &foot) + distance(&foot, &self.b) - len).abs() < 1e-12 {
                return distance(p, &foot);
            }
        }
        distance(p, &self.a).min(distance(p, &self.b))
    }
}

/// An orthonormal frame `(center, x, y)` with `x × y = center`.
///
/// Constructors place bodies in a frame so that rotating the frame rotates the
/// body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    center: SpherePoint,
    x: Vec3,
    y: Vec3,
}

impl Frame {
    /// Frame at `center` with a deterministic choice of tangent axes.
    pub fn at(center: SpherePoint) -> Self {
        let c = center.0;
        let helper = if c.z.abs() < 0.9 {
            Vec3::z()
        } else {
            Vec3::x()
        };
        let x = helper.cross(&c).normalize();
        let y = c.cross(&x);
        Self { center, x, y }
    }

    /// Frame at `center` with tangent axes turned by `heading` radians.
    pub fn with_heading(center: SpherePoint, heading: f64) -> Self {
        let base = Self::at(center);
        let (s, co) = heading.sin_cos();
        let x = base.x * co + base.y * s;
        let y = center.0.cross(&x);
        Self { center, x, y }
    }

    pub fn center(&self) -> SpherePoint {
        self.center
    }

    pub fn x_axis(&self) -> Vec3 {
        self.x
    }

    pub fn y_axis(&self) -> Vec3 {
        self.y
    }

    /// Point at distance `radius` from the center in direction `azimuth`.
    pub fn point_at(&self, radius: f64, azimuth: f64) -> SpherePoint {
        let dir = self.x * azimuth.cos() + self.y * azimuth.sin();
        SpherePoint::from_nonzero(self.center.0 * radius.cos() + dir * radius.sin())
    }

    pub fn rotated(&self, rot: &Rotation3<f64>) -> Self {
        Self {
            center: self.center.rotate(rot),
            x: rot * self.x,
            y: rot * self.y,
        }
    }
}

/// Wraps an angle into `[0, 2π)`.
pub(crate) fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

pub(crate) const HALF_PI: f64 = FRAC_PI_2;
