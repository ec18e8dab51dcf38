//! Executable checks of the theorems on reduced bodies, constant width,
//! diameter and covering radii, and a search harness for the open question
//! whether constant diameter implies constant width below π/2.
//!
//! Every suite turns a theorem into numeric claims `lhs ≤ rhs` or
//! `lhs = rhs` on generated bodies. The worst violation over all claims is
//! compared with `eps_claim`. In inverted mode each comparison is negated, so
//! a suite that still passes is not testing anything.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{
    boundary_sample, make_cap, quarter_disk_in_frame, reduced_polygon_in_frame,
    reuleaux_circumradius, reuleaux_in_frame, supporting_poles_at, Body,
};
use crate::covering::{
    boundary_centered_cover, covering_bound_report, covering_bound_report_as, dekster_radius,
    min_enclosing_cap, Regime,
};
use crate::error::{Error, Result};
use crate::regions::Lune;
use crate::sphere::{distance, interpolate, Frame, GeodesicArc, SpherePoint, Tolerance, HALF_PI};
use crate::width::{
    constant_diameter_at_density, diameter, inscribed_touching_ball, intersect_caps,
    is_constant_width, lune_centered_at, polar, thickness, Dual,
};

/// Registered theorem suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T_I_main")]
    IMain,
    #[serde(rename = "T_I_segment")]
    ISegment,
    #[serde(rename = "T_I_constant")]
    IConstant,
    #[serde(rename = "T_I_strict")]
    IStrict,
    #[serde(rename = "T_I_lune_at_p")]
    ILuneAtP,
    #[serde(rename = "T_II_convexhull")]
    IIConvexHull,
    #[serde(rename = "T_II_touching")]
    IITouching,
    #[serde(rename = "T_II_diam_w")]
    IIDiamW,
    #[serde(rename = "T_II_iff")]
    IIIff,
    #[serde(rename = "T_III_diam_bound")]
    IIIDiamBound,
    #[serde(rename = "T_III_precise")]
    IIIPrecise,
    #[serde(rename = "T_IV_bounds")]
    IVBounds,
    #[serde(rename = "T_IV_dual")]
    IVDual,
    #[serde(rename = "T_V_cover")]
    VCover,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::IMain,
        TheoremId::ISegment,
        TheoremId::IConstant,
        TheoremId::IStrict,
        TheoremId::ILuneAtP,
        TheoremId::IIConvexHull,
        TheoremId::IITouching,
        TheoremId::IIDiamW,
        TheoremId::IIIff,
        TheoremId::IIIDiamBound,
        TheoremId::IIIPrecise,
        TheoremId::IVBounds,
        TheoremId::IVDual,
        TheoremId::VCover,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::IMain => "T_I_main",
            TheoremId::ISegment => "T_I_segment",
            TheoremId::IConstant => "T_I_constant",
            TheoremId::IStrict => "T_I_strict",
            TheoremId::ILuneAtP => "T_I_lune_at_p",
            TheoremId::IIConvexHull => "T_II_convexhull",
            TheoremId::IITouching => "T_II_touching",
            TheoremId::IIDiamW => "T_II_diam_w",
            TheoremId::IIIff => "T_II_iff",
            TheoremId::IIIDiamBound => "T_III_diam_bound",
            TheoremId::IIIPrecise => "T_III_precise",
            TheoremId::IVBounds => "T_IV_bounds",
            TheoremId::IVDual => "T_IV_dual",
            TheoremId::VCover => "T_V_cover",
        }
    }

    /// Number of generated cases when the generator spec leaves it open.
    pub fn default_cases(&self) -> usize {
        match self {
            TheoremId::IIIDiamBound | TheoremId::IIConvexHull => 50,
            TheoremId::IITouching => 8,
            TheoremId::IVBounds => 12,
            _ => 20,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheoremId(s.to_string()))
    }
}

/// How many bodies a suite generates and how densely it samples them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub cases: Option<usize>,
    /// Multiplier on per-body sample counts.
    pub density: usize,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            cases: None,
            density: 1,
        }
    }
}

impl GeneratorSpec {
    pub fn with_cases(cases: usize) -> Self {
        Self {
            cases: Some(cases),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SuiteOptions {
    pub tolerance: Tolerance,
    /// Negate every comparison (mutation check).
    pub invert: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteReport {
    pub theorem_id: TheoremId,
    pub cases_run: usize,
    pub worst_violation: f64,
    pub pass: bool,
    pub seed: u64,
}

/// Accumulates claim violations.
struct Checker {
    eps: f64,
    invert: bool,
    worst: f64,
}

impl Checker {
    fn record(&mut self, v: f64) {
        let v = if v.is_nan() { f64::MAX } else { v };
        self.worst = self.worst.max(v);
    }

    /// Claim `lhs ≤ rhs`.
    fn le(&mut self, lhs: f64, rhs: f64) {
        let v = if self.invert {
            (rhs + 2.0 * self.eps - lhs).max(0.0)
        } else {
            (lhs - rhs).max(0.0)
        };
        self.record(v);
    }

    /// Claim `lhs = rhs`.
    fn eq(&mut self, lhs: f64, rhs: f64) {
        let v = if self.invert {
            (2.0 * self.eps - (lhs - rhs).abs()).max(0.0)
        } else {
            (lhs - rhs).abs()
        };
        self.record(v);
    }

    fn holds(&mut self, cond: bool) {
        self.le(if cond { 0.0 } else { 1.0 }, 0.0);
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    let z: f64 = rng.random_range(-1.0..1.0);
    SpherePoint::from_spherical(z.acos(), rng.random_range(0.0..2.0 * PI))
}

fn random_frame(rng: &mut ChaCha8Rng) -> Frame {
    let c = random_point(rng);
    Frame::with_heading(c, rng.random_range(0.0..2.0 * PI))
}

fn odd_n(rng: &mut ChaCha8Rng) -> usize {
    [3, 5, 7][rng.random_range(0..3)]
}

/// Runs one suite with default tolerances.
pub fn run_suite(id: TheoremId, spec: &GeneratorSpec, seed: u64) -> Result<SuiteReport> {
    run_suite_with(id, spec, seed, &SuiteOptions::default())
}

pub fn run_suite_with(
    id: TheoremId,
    spec: &GeneratorSpec,
    seed: u64,
    opts: &SuiteOptions,
) -> Result<SuiteReport> {
    opts.tolerance.validate()?;
    let cases = spec.cases.unwrap_or_else(|| id.default_cases());
    let density = spec.density.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ck = Checker {
        eps: opts.tolerance.eps_claim,
        invert: opts.invert,
        worst: 0.0,
    };
    let tol = &opts.tolerance;
    for case in 0..cases {
        let g = Gen {
            rng: &mut rng,
            case,
            density,
            tol,
        };
        match id {
            TheoremId::IMain => t_i_main(&mut ck, g)?,
            TheoremId::ISegment => t_i_segment(&mut ck, g)?,
            TheoremId::IConstant => t_i_constant(&mut ck, g)?,
            TheoremId::IStrict => t_i_strict(&mut ck, g)?,
            TheoremId::ILuneAtP => t_i_lune_at_p(&mut ck, g)?,
            TheoremId::IIConvexHull => t_ii_convexhull(&mut ck, g)?,
            TheoremId::IITouching => t_ii_touching(&mut ck, g)?,
            TheoremId::IIDiamW => t_ii_diam_w(&mut ck, g)?,
            TheoremId::IIIff => t_ii_iff(&mut ck, g)?,
            TheoremId::IIIDiamBound => t_iii_diam_bound(&mut ck, g)?,
            TheoremId::IIIPrecise => t_iii_precise(&mut ck, g)?,
            TheoremId::IVBounds => t_iv_bounds(&mut ck, g)?,
            TheoremId::IVDual => t_iv_dual(&mut ck, g)?,
            TheoremId::VCover => t_v_cover(&mut ck, g)?,
        }
    }
    Ok(SuiteReport {
        theorem_id: id,
        cases_run: cases,
        worst_violation: ck.worst,
        pass: ck.worst <= opts.tolerance.eps_claim,
        seed,
    })
}

/// Per-case generator state.
struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    case: usize,
    density: usize,
    tol: &'a Tolerance,
}

impl Gen<'_> {
    fn reduced_polygon(&mut self, n: usize, delta: f64) -> Result<Body> {
        let f = random_frame(self.rng);
        reduced_polygon_in_frame(&f, n, delta)
    }

    fn reuleaux(&mut self, n: usize, w: f64) -> Result<Body> {
        let f = random_frame(self.rng);
        reuleaux_in_frame(&f, n, w)
    }

    fn cap(&mut self, rho: f64) -> Result<Body> {
        let c = random_point(self.rng);
        make_cap(c, rho)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}

/// Width-minimizing co-support pairs in polar boundary order, deduplicated.
fn minimal_width_pairs(dual: &Dual, slack: f64) -> Vec<(SpherePoint, SpherePoint)> {
    let minima = dual.width_minima();
    let best = minima.iter().map(|m| m.2).fold(f64::INFINITY, f64::min);
    let mut out: Vec<(SpherePoint, SpherePoint)> = Vec::new();
    for (i, t, w) in minima {
        if w > best + slack {
            continue;
        }
        let k = dual.polar.point(i, t);
        if out.iter().any(|(q, _)| distance(q, &k) < 1e-6) {
            continue;
        }
        out.push((k, dual.width_at(&k).1));
    }
    out
}

/// Two adjacent minimal-width lunes of a regular reduced triangle in a
/// random position: their four semicircle centers lie on the boundary and
/// the arcs joining the centers on either side have equal length.
fn t_i_main(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let delta = g.uniform(0.3, 1.4);
    let body = g.reduced_polygon(3, delta)?;
    let dual = Dual::new(&body)?;
    let pairs = minimal_width_pairs(&dual, 1e-7);
    ck.holds(pairs.len() >= 2);
    if pairs.len() < 2 {
        return Ok(());
    }
    let (a1, b1) = Lune::new(pairs[0].0, pairs[0].1)?.bounding_centers();
    let (a2, b2) = Lune::new(pairs[1].0, pairs[1].1)?.bounding_centers();
    for x in [a1, a2, b1, b2] {
        ck.le(body.boundary_distance(&x), 0.0);
    }
    ck.eq(distance(&a1, &a2), distance(&b1, &b2));
    Ok(())
}

/// Every edge of a reduced polygon: its pole gives minimal width, and the
/// center of the semicircle through the edge lies on the edge.
fn t_i_segment(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let n = odd_n(g.rng);
    let delta = g.uniform(0.2, 1.4);
    let body = g.reduced_polygon(n, delta)?;
    let dual = Dual::new(&body)?;
    let (thick, _) = dual.thickness();
    let v = body.vertices();
    for i in 0..v.len() {
        let (x1, x2) = (v[i], v[(i + 1) % v.len()]);
        let k = SpherePoint::from_vec(x1.vec().cross(x2.vec()))?;
        let (w, k_star) = dual.width_at(&k);
        ck.eq(w, thick);
        let (c, _) = Lune::new(k, k_star)?.bounding_centers();
        ck.le(GeodesicArc::new(x1, x2)?.distance_to(&c), 0.0);
    }
    Ok(())
}

/// Bodies of thickness at least π/2 are of constant width and smooth.
fn t_i_constant(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (body, w) = if g.case.is_multiple_of(2) {
        let rho = g.uniform(PI / 4.0, HALF_PI - 0.01);
        (g.cap(rho)?, 2.0 * rho)
    } else {
        let n = [3, 5][g.case / 2 % 2];
        let w = g.uniform(HALF_PI + 0.05, 2.6);
        (g.reuleaux(n, w)?, w)
    };
    let (thick, _) = thickness(&body)?;
    ck.le(HALF_PI, thick + g.tol.eps_claim);
    ck.le(
        is_constant_width(&body, w, g.tol.eps_claim)?.max_deviation,
        0.0,
    );
    for p in boundary_sample(&body, (32 * g.density).max(body.edge_count()))? {
        ck.holds(supporting_poles_at(&body, &p)?.is_unique());
    }
    Ok(())
}

/// Below π/2 a reduced body is of constant width exactly when it is
/// strictly convex.
fn t_i_strict(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let n = odd_n(g.rng);
    if g.case.is_multiple_of(2) {
        let delta = g.uniform(0.2, 1.4);
        let body = g.reduced_polygon(n, delta)?;
        let (thick, _) = thickness(&body)?;
        ck.holds(!body.is_strictly_convex());
        let dev = is_constant_width(&body, thick, g.tol.eps_claim)?.max_deviation;
        ck.le(10.0 * g.tol.eps_claim, dev);
    } else {
        let w = g.uniform(0.2, HALF_PI - 0.05);
        let body = g.reuleaux(n, w)?;
        ck.holds(body.is_strictly_convex());
        ck.le(
            is_constant_width(&body, w, g.tol.eps_claim)?.max_deviation,
            0.0,
        );
    }
    Ok(())
}

/// Through every boundary point of a constant-width body passes a lune of
/// thickness `w` containing the body, centered at that point.
fn t_i_lune_at_p(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (body, w) = if g.case.is_multiple_of(3) {
        let rho = g.uniform(0.1, HALF_PI - 0.05);
        (g.cap(rho)?, 2.0 * rho)
    } else {
        let n = [3, 5][g.case % 2];
        let w = g.uniform(0.3, 2.5);
        (g.reuleaux(n, w)?, w)
    };
    for p in boundary_sample(&body, (16 * g.density).max(body.edge_count()))? {
        let (t, lune) = lune_centered_at(&body, &p)?;
        ck.eq(t, w);
        let (c, _) = lune.bounding_centers();
        ck.le(distance(&c, &p), 0.0);
    }
    Ok(())
}

/// `B_μ(x') ⊂ conv(B_μ(x₁') ∪ B_μ(x₂'))` for `x'` on the arc `x₁'x₂'`.
/// The hull is the polar of the lens `B_{π/2−μ}(x₁') ∩ B_{π/2−μ}(x₂')`.
fn t_ii_convexhull(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (hull, x_mid, mu) = lemma_configuration(&mut g)?;
    let ball = make_cap(x_mid, mu)?;
    for y in boundary_sample(&ball, 200 * g.density)? {
        ck.le(-hull.support_margin(&y), 0.0);
    }
    Ok(())
}

fn lemma_configuration(g: &mut Gen) -> Result<(Body, SpherePoint, f64)> {
    let mu = g.uniform(0.05, 0.6);
    let f = random_frame(g.rng);
    let d = g.uniform(0.1, (PI - 2.0 * mu - 0.3).min(2.0));
    let x1 = f.center();
    let x2 = f.point_at(d, g.uniform(0.0, 2.0 * PI));
    let t = g.uniform(0.0, 1.0);
    let x = interpolate(&x1, &x2, t)?;
    let lens = intersect_caps(&[x1, x2], HALF_PI - mu)?;
    Ok((polar(&lens)?, x, mu))
}

/// Inscribed ball of radius `w − π/2` touching a constant-width body.
fn t_ii_touching(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (body, w) = if g.case.is_multiple_of(2) {
        let n = [3, 5][g.case / 2 % 2];
        let w = g.uniform(HALF_PI + 0.05, 2.6);
        (g.reuleaux(n, w)?, w)
    } else {
        let rho = g.uniform(PI / 4.0 + 0.03, HALF_PI - 0.02);
        (g.cap(rho)?, 2.0 * rho)
    };
    for p in boundary_sample(&body, (8 * g.density).max(body.edge_count()))? {
        let ball = inscribed_touching_ball(&body, &p)?;
        ck.eq(distance(&ball.center(), &p), w - HALF_PI);
        for y in boundary_sample(&make_cap(ball.center(), ball.radius())?, 64 * g.density)? {
            ck.le(-body.support_margin(&y), 0.0);
        }
    }
    Ok(())
}

fn constant_width_body(g: &mut Gen) -> Result<(Body, f64)> {
    if g.case.is_multiple_of(4) {
        let rho = g.uniform(0.1, HALF_PI - 0.02);
        Ok((g.cap(rho)?, 2.0 * rho))
    } else {
        let n = odd_n(g.rng);
        let w = g.uniform(0.2, 2.6);
        Ok((g.reuleaux(n, w)?, w))
    }
}

/// A body of constant width `w` has diameter `w`.
fn t_ii_diam_w(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (body, w) = constant_width_body(&mut g)?;
    ck.eq(diameter(&body)?.0, w);
    ck.eq(thickness(&body)?.0, w);
    Ok(())
}

/// Constant width implies constant diameter; from π/2 on the converse holds too.
fn t_ii_iff(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let (body, w) = constant_width_body(&mut g)?;
    let (diam, _) = diameter(&body)?;
    ck.eq(diam, w);
    let report = constant_diameter_at_density(&body, diam, f64::INFINITY, 512 * g.density)?;
    ck.le(diam - report.worst_farthest, 0.0);
    if diam >= HALF_PI {
        ck.le(
            is_constant_width(&body, diam, g.tol.eps_claim)?.max_deviation,
            0.0,
        );
    }
    Ok(())
}

/// `diam(R) ≤ arccos(cos² Δ(R))`, with equality for quarter-disks.
fn t_iii_diam_bound(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let delta = g.uniform(0.2, 1.4);
    if g.case % 5 == 4 {
        let f = random_frame(g.rng);
        let body = quarter_disk_in_frame(&f, delta)?;
        let (thick, _) = thickness(&body)?;
        ck.eq(diameter(&body)?.0, thick.cos().powi(2).acos());
    } else {
        let n = odd_n(g.rng);
        let body = g.reduced_polygon(n, delta)?;
        let (thick, _) = thickness(&body)?;
        ck.le(diameter(&body)?.0, thick.cos().powi(2).acos());
    }
    Ok(())
}

/// For reduced bodies, `diam = π/2` exactly when `Δ = π/2`.
fn t_iii_precise(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let body = match g.case % 4 {
        0 | 1 => {
            let n = odd_n(g.rng);
            let delta = g.uniform(0.2, 1.4);
            g.reduced_polygon(n, delta)?
        }
        2 => {
            let f = random_frame(g.rng);
            let delta = g.uniform(0.2, 1.4);
            quarter_disk_in_frame(&f, delta)?
        }
        _ => {
            let body = if g.case % 8 == 3 {
                g.cap(PI / 4.0)?
            } else {
                let n = odd_n(g.rng);
                g.reuleaux(n, HALF_PI)?
            };
            ck.eq(thickness(&body)?.0, HALF_PI);
            ck.eq(diameter(&body)?.0, HALF_PI);
            return Ok(());
        }
    };
    let (thick, _) = thickness(&body)?;
    let (diam, _) = diameter(&body)?;
    ck.le(thick, HALF_PI);
    ck.le(diam, HALF_PI);
    Ok(())
}

/// The three covering radius bounds; sharp for Reuleaux triangles of width
/// at most π/2 and for quarter-disks.
fn t_iv_bounds(ck: &mut Checker, mut g: Gen) -> Result<()> {
    const WIDTHS: [f64; 4] = [0.6, 1.0, HALF_PI, 1.8];
    match g.case % 6 {
        i @ 0..=3 => {
            let w = WIDTHS[i];
            let body = g.reuleaux(3, w)?;
            let report = covering_bound_report(&body)?;
            ck.holds(report.regime == Regime::ConstantWidth);
            for b in &report.bounds {
                ck.le(report.measured_radius, b.bound);
            }
            if w <= HALF_PI {
                ck.eq(report.measured_radius, dekster_radius(w));
            }
        }
        4 => {
            let n = odd_n(g.rng);
            let delta = g.uniform(0.2, 1.4);
            let report = covering_bound_report(&g.reduced_polygon(n, delta)?)?;
            ck.holds(report.regime == Regime::Reduced);
            for b in &report.bounds {
                ck.le(report.measured_radius, b.bound);
            }
        }
        _ => {
            let f = random_frame(g.rng);
            let delta = g.uniform(0.2, 1.4);
            let report =
                covering_bound_report_as(&quarter_disk_in_frame(&f, delta)?, Regime::Reduced)?;
            for b in &report.bounds {
                ck.eq(report.measured_radius, b.bound);
            }
        }
    }
    Ok(())
}

/// The polar of a body of constant width `w` has constant width `π − w`.
fn t_iv_dual(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let n = odd_n(g.rng);
    let w = g.uniform(0.2, HALF_PI - 0.05);
    let body = g.reuleaux(n, w)?;
    let dual = polar(&body)?;
    ck.eq(thickness(&dual)?.0, PI - w);
    ck.le(
        is_constant_width(&dual, PI - w, g.tol.eps_claim)?.max_deviation,
        0.0,
    );
    Ok(())
}

/// A reduced polygon fits in a cap of radius `Δ` centered on its boundary.
fn t_v_cover(ck: &mut Checker, mut g: Gen) -> Result<()> {
    let n = odd_n(g.rng);
    let delta = g.uniform(0.2, 1.4);
    let body = g.reduced_polygon(n, delta)?;
    let (thick, _) = thickness(&body)?;
    let cover = boundary_centered_cover(&body)?;
    ck.le(cover.radius, thick);
    ck.le(min_enclosing_cap(&body)?.radius, cover.radius);
    Ok(())
}

/// A candidate with constant diameter whose width varies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlaggedCase {
    pub trial: usize,
    pub vertices: usize,
    pub diameter: f64,
    pub width_deviation: f64,
    pub recheck_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub trials: usize,
    /// Candidates passing the constant-diameter test.
    pub constant_diameter: usize,
    pub flagged: Vec<FlaggedCase>,
    pub summary: String,
}

/// Random ball polygons (intersections of caps of radius `w` around perturbed
/// regular odd-gons) are screened for constant diameter, and those passing
/// are checked for constant width. A candidate is flagged only when the width
/// deviation exceeds `10·eps_claim` and survives a re-check at doubled
/// sampling density. Flags call for triage, they do not settle the question.
pub fn search_constant_diameter_counterexample(seed: u64, trials: usize) -> Result<SearchReport> {
    if trials == 0 {
        return Err(Error::BadParameters("trials must be at least 1".into()));
    }
    let eps = crate::sphere::EPS_CLAIM;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant_diameter = 0;
    let mut flagged = Vec::new();
    for trial in 0..trials {
        let n = odd_n(&mut rng);
        let w = rng.random_range(0.3..1.4);
        let amplitude = if trial % 4 == 0 {
            0.0
        } else {
            rng.random_range(0.0..0.02) * w
        };
        let frame = random_frame(&mut rng);
        let r = reuleaux_circumradius(n, w);
        let centers: Vec<SpherePoint> = (0..n)
            .map(|i| {
                let v = frame.point_at(r, 2.0 * PI * i as f64 / n as f64);
                let shift = rng.random_range(0.0..amplitude.max(f64::MIN_POSITIVE));
                Frame::at(v).point_at(shift, rng.random_range(0.0..2.0 * PI))
            })
            .collect();
        let Ok(body) = intersect_caps(&centers, w) else {
            continue;
        };
        let Ok((diam, _)) = diameter(&body) else {
            continue;
        };
        if !constant_diameter_at_density(&body, diam, eps, 512)?.holds {
            continue;
        }
        constant_diameter += 1;
        let dev = is_constant_width(&body, diam, eps)?.max_deviation;
        if dev <= 10.0 * eps {
            continue;
        }
        let still_constant_diameter = constant_diameter_at_density(&body, diam, eps, 1024)?.holds;
        let recheck = crate::width::width_deviation_at_density(&body, diam, 2048)?;
        if still_constant_diameter && recheck > 10.0 * eps {
            flagged.push(FlaggedCase {
                trial,
                vertices: n,
                diameter: diam,
                width_deviation: dev,
                recheck_deviation: recheck,
            });
        }
    }
    let summary = if flagged.is_empty() {
        format!("no counterexample found in {trials} trials")
    } else {
        format!(
            "{} flagged candidates need triage for numerical artifacts; this is not a disproof",
            flagged.len()
        )
    };
    Ok(SearchReport {
        seed,
        trials,
        constant_diameter,
        flagged,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            assert_eq!(
                serde_json::to_string(&id).unwrap(),
                format!("\"{}\"", id.as_str())
            );
        }
        assert!(matches!(
            "bogus".parse::<TheoremId>(),
            Err(Error::UnknownTheoremId(_))
        ));
    }

    #[test]
    fn checker_inversion() {
        let mut ck = Checker {
            eps: 1e-6,
            invert: false,
            worst: 0.0,
        };
        ck.le(1.0, 2.0);
        ck.eq(1.0, 1.0);
        assert_eq!(ck.worst, 0.0);
        ck.invert = true;
        ck.le(1.0, 2.0);
        assert!(ck.worst > 1e-6);
        let mut ck = Checker {
            eps: 1e-6,
            invert: true,
            worst: 0.0,
        };
        ck.eq(1.0, 1.0);
        assert!(ck.worst > 1e-6);
    }

    #[test]
    fn suites_are_deterministic() {
        let spec = GeneratorSpec::with_cases(3);
        let a = run_suite(TheoremId::ISegment, &spec, 11).unwrap();
        let b = run_suite(TheoremId::ISegment, &spec, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.pass);
    }

    #[test]
    fn search_rejects_zero_trials() {
        assert!(search_constant_diameter_counterexample(1, 0).is_err());
    }
}
