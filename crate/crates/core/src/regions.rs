//! Hemispheres, caps and lunes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{distance, SpherePoint, EPS_ALG, HALF_PI};

/// Closed hemisphere `H(m)`: all points within π/2 of its pole `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hemisphere {
    pub pole: SpherePoint,
}

impl Hemisphere {
    pub fn new(pole: SpherePoint) -> Self {
        Self { pole }
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        p.dot(&self.pole) >= -EPS_ALG
    }
}

/// Spherical ball `B_ρ(c)` with `ρ ∈ (0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    center: SpherePoint,
    radius: f64,
}

impl Cap {
    pub fn new(center: SpherePoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= HALF_PI) {
            return Err(Error::BadRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> SpherePoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_hemisphere(&self) -> bool {
        self.radius == HALF_PI
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        distance(&self.center, p) <= self.radius + EPS_ALG
    }
}

/// Intersection `H(g) ∩ H(h)` of two distinct, non-opposite hemispheres.
///
/// Only the poles are stored; bounding semicircles and corners are derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lune {
    g: SpherePoint,
    h: SpherePoint,
}

impl Lune {
    pub fn new(g: SpherePoint, h: SpherePoint) -> Result<Self> {
        let d = distance(&g, &h);
        if !(EPS_ALG..=PI - EPS_ALG).contains(&d) {
            return Err(Error::DegenerateLune(d));
        }
        Ok(Self { g, h })
    }

    pub fn g(&self) -> SpherePoint {
        self.g
    }

    pub fn h(&self) -> SpherePoint {
        self.h
    }

    /// Thickness: π minus the distance of the two poles.
    pub fn thickness(&self) -> f64 {
        PI - distance(&self.g, &self.h)
    }

    /// Centers `(c_{G/H}, c_{H/G})` of the two bounding semicircles.
    ///
    /// `c_{G/H}` lies on the boundary of `H(g)` and is the point of that great
    /// circle deepest inside `H(h)`.
    pub fn bounding_centers(&self) -> (SpherePoint, SpherePoint) {
        let (g, h) = (self.g.vec(), self.h.vec());
        let gh = g.dot(h);
        let c_gh = SpherePoint::from_nonzero(h - g * gh);
        let c_hg = SpherePoint::from_nonzero(g - h * gh);
        (c_gh, c_hg)
    }

    /// The two (antipodal) corners, ordered by the sign of `g × h`.
    pub fn corners(&self) -> (SpherePoint, SpherePoint) {
        let c = SpherePoint::from_nonzero(self.g.vec().cross(self.h.vec()));
        (c, c.antipode())
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        Hemisphere::new(self.g).contains(p) && Hemisphere::new(self.h).contains(p)
    }
}

pub fn lune_thickness(l: &Lune) -> f64 {
    l.thickness()
}

pub fn lune_bounding_centers(l: &Lune) -> (SpherePoint, SpherePoint) {
    l.bounding_centers()
}

pub fn lune_corners(l: &Lune) -> (SpherePoint, SpherePoint) {
    l.corners()
}

/// Any of the three closed region kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    Hemisphere(Hemisphere),
    Cap(Cap),
    Lune(Lune),
}

pub fn region_contains(region: &Region, p: &SpherePoint) -> bool {
    match region {
        Region::Hemisphere(h) => h.contains(p),
        Region::Cap(c) => c.contains(p),
        Region::Lune(l) => l.contains(p),
    }
}
