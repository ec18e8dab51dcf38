//! SVG figures of bodies, lunes and enclosing caps.

use std::f64::consts::PI;
use std::fmt::Write;
use std::str::FromStr;

use crate::bodies::Body;
use crate::boundary::Piece;
use crate::covering::min_enclosing_cap;
use crate::error::{Error, Result};
use crate::regions::Lune;
use crate::sphere::{distance, Frame, SpherePoint};

const SIZE: f64 = 1000.0;
const SCALE_RADIUS: f64 = 450.0;
/// Gnomonic clipping: only points with `p·c` above this are drawn.
const GNOMONIC_MIN_DOT: f64 = 0.05;
const VIEW_MARGIN: f64 = 500.0;
const ARC_STEPS: usize = 96;
const CIRCLE_STEPS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Projection {
    #[default]
    Orthographic,
    /// Central projection; great circles become straight lines.
    Gnomonic,
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orthographic" => Ok(Projection::Orthographic),
            "gnomonic" => Ok(Projection::Gnomonic),
            _ => Err(Error::BadParameters(format!("unknown projection {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PlotOptions {
    pub projection: Projection,
    /// Projection center; defaults to the body's interior point.
    pub center: Option<SpherePoint>,
    pub lune: Option<Lune>,
    pub with_cap: bool,
}

struct Projector {
    frame: Frame,
    projection: Projection,
    scale: f64,
}

impl Projector {
    fn plane(&self, p: &SpherePoint) -> Option<(f64, f64)> {
        let w = p.vec().dot(self.frame.center().vec());
        let (x, y) = (
            p.vec().dot(&self.frame.x_axis()),
            p.vec().dot(&self.frame.y_axis()),
        );
        match self.projection {
            Projection::Orthographic => (w >= 0.0).then_some((x, y)),
            Projection::Gnomonic => (w > GNOMONIC_MIN_DOT).then(|| (x / w, y / w)),
        }
    }

    fn screen(&self, p: &SpherePoint) -> Option<(f64, f64)> {
        self.plane(p)
            .map(|(x, y)| (SIZE / 2.0 + self.scale * x, SIZE / 2.0 - self.scale * y))
    }

    /// Path data for a polyline, split where it leaves the visible region
    /// or strays far outside the view box.
    fn path(&self, pts: &[SpherePoint]) -> String {
        let in_view = |&(x, y): &(f64, f64)| {
            (-VIEW_MARGIN..=SIZE + VIEW_MARGIN).contains(&x)
                && (-VIEW_MARGIN..=SIZE + VIEW_MARGIN).contains(&y)
        };
        let mut d = String::new();
        let mut pen_down = false;
        for p in pts {
            match self.screen(p).filter(in_view) {
                Some((x, y)) => {
                    let cmd = if pen_down { 'L' } else { 'M' };
                    if !d.is_empty() {
                        d.push(' ');
                    }
                    write!(d, "{cmd} {x:.3} {y:.3}").unwrap();
                    pen_down = true;
                }
                None => pen_down = false,
            }
        }
        d
    }

    /// Screen radius of a circle around the projection center.
    fn centered_radius(&self, rho: f64) -> f64 {
        self.scale
            * match self.projection {
                Projection::Orthographic => rho.sin(),
                Projection::Gnomonic => rho.tan(),
            }
    }
}

fn circle_points(center: &SpherePoint, radius: f64, n: usize) -> Vec<SpherePoint> {
    let f = Frame::at(*center);
    (0..=n)
        .map(|i| f.point_at(radius, 2.0 * PI * i as f64 / n as f64))
        .collect()
}

fn piece_points(piece: &Piece, steps: usize) -> Vec<SpherePoint> {
    (0..=steps)
        .map(|i| piece.point(piece.sweep() * i as f64 / steps as f64))
        .collect()
}

/// Draws `body` as an SVG 1.1 document with a 1000×1000 view box.
pub fn render_svg(body: &Body, opts: &PlotOptions) -> Result<String> {
    let center = opts.center.unwrap_or_else(|| body.interior_point());
    let cover = min_enclosing_cap(body)?;
    let mut proj = Projector {
        frame: Frame::at(center),
        projection: opts.projection,
        scale: 1.0,
    };
    let boundary = body.boundary();
    let extent = circle_points(&cover.center, cover.radius, CIRCLE_STEPS)
        .iter()
        .chain(
            boundary
                .sample(CIRCLE_STEPS.max(boundary.len()))
                .iter()
                .map(|bp| &bp.point),
        )
        .filter_map(|p| proj.plane(p))
        .map(|(x, y)| x.hypot(y))
        .fold(0.0, f64::max);
    if extent.is_nan() || extent <= 0.0 {
        return Err(Error::BadParameters(
            "body is not visible from the projection center".into(),
        ));
    }
    proj.scale = SCALE_RADIUS / extent;
    let centered = |c: &SpherePoint| distance(c, &center) < 1e-6;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1000 1000" width="1000" height="1000">"#
    )
    .unwrap();
    writeln!(
        svg,
        "<style>.edge{{fill:none;stroke:#1f3b73;stroke-width:3}} .lune{{fill:none;stroke:#b8322a;stroke-width:2;stroke-dasharray:8 5}} .lune-center{{fill:#b8322a}} .cap{{fill:none;stroke:#2c7a3f;stroke-width:2}}</style>"
    )
    .unwrap();
    writeln!(svg, r#"<rect width="1000" height="1000" fill="white"/>"#).unwrap();

    writeln!(svg, r#"<g id="body">"#).unwrap();
    for piece in boundary.pieces() {
        if piece.is_closed() && centered(&piece.axis()) {
            let r = proj.centered_radius(piece.radius());
            writeln!(
                svg,
                r#"<circle class="edge" cx="500.000" cy="500.000" r="{r:.3}"/>"#
            )
            .unwrap();
            continue;
        }
        let (class, pts) = if piece.is_geodesic() {
            let straight = opts.projection == Projection::Gnomonic
                && proj.screen(&piece.start()).is_some()
                && proj.screen(&piece.end()).is_some();
            let steps = if straight { 1 } else { ARC_STEPS };
            ("edge geodesic", piece_points(piece, steps))
        } else {
            ("edge arc", piece_points(piece, ARC_STEPS))
        };
        writeln!(svg, r#"<path class="{class}" d="{}"/>"#, proj.path(&pts)).unwrap();
    }
    writeln!(svg, "</g>").unwrap();

    if let Some(lune) = &opts.lune {
        let (k1, _) = lune.corners();
        let (c_gh, c_hg) = lune.bounding_centers();
        writeln!(svg, r#"<g id="lune">"#).unwrap();
        for c in [c_gh, c_hg] {
            let pts: Vec<SpherePoint> = (0..=180)
                .map(|i| {
                    let t = PI * i as f64 / 180.0;
                    SpherePoint::from_vec(k1.vec() * t.cos() + c.vec() * t.sin())
                        .expect("corner and center are orthogonal")
                })
                .collect();
            writeln!(svg, r#"<path class="lune" d="{}"/>"#, proj.path(&pts)).unwrap();
        }
        for c in [c_gh, c_hg] {
            if let Some((x, y)) = proj.screen(&c) {
                writeln!(
                    svg,
                    r#"<circle class="lune-center" cx="{x:.3}" cy="{y:.3}" r="6"/>"#
                )
                .unwrap();
            }
        }
        writeln!(svg, "</g>").unwrap();
    }

    if opts.with_cap {
        if centered(&cover.center) {
            let r = proj.centered_radius(cover.radius);
            writeln!(
                svg,
                r#"<circle class="cap" cx="500.000" cy="500.000" r="{r:.3}"/>"#
            )
            .unwrap();
        } else {
            let pts = circle_points(&cover.center, cover.radius, CIRCLE_STEPS);
            writeln!(svg, r#"<path class="cap" d="{}"/>"#, proj.path(&pts)).unwrap();
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{make_cap, make_regular_reduced_polygon, make_reuleaux_odd_gon};
    use crate::width::thickness;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    fn attr(el: &str, name: &str) -> f64 {
        let key = format!(r#"{name}=""#);
        let start = el.find(&key).unwrap() + key.len();
        el[start..].split('"').next().unwrap().parse().unwrap()
    }

    #[test]
    fn reuleaux_with_cap_structure() {
        let b = make_reuleaux_odd_gon(SpherePoint::new(0.1, 0.2, 1.0).unwrap(), 3, 1.0).unwrap();
        let svg = render_svg(
            &b,
            &PlotOptions {
                with_cap: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(count(&svg, r#"<path class="edge arc""#), 3);
        assert_eq!(count(&svg, "<circle"), 1);
        let circle = svg.lines().find(|l| l.starts_with("<circle")).unwrap();
        assert!(attr(circle, "r") <= SCALE_RADIUS + 1e-6);
        assert_eq!(
            render_svg(
                &b,
                &PlotOptions {
                    with_cap: true,
                    ..Default::default()
                }
            )
            .unwrap(),
            svg
        );
    }

    #[test]
    fn gnomonic_geodesics_are_segments() {
        let b = make_regular_reduced_polygon(SpherePoint::north(), 5, 1.2).unwrap();
        let opts = PlotOptions {
            projection: Projection::Gnomonic,
            ..Default::default()
        };
        let svg = render_svg(&b, &opts).unwrap();
        let edges: Vec<&str> = svg
            .lines()
            .filter(|l| l.contains("edge geodesic"))
            .collect();
        assert_eq!(edges.len(), 5);
        for e in edges {
            assert_eq!(e.matches('L').count(), 1);
            assert_eq!(e.matches('M').count(), 1);
        }
    }

    #[test]
    fn lune_centers_land_on_the_boundary() {
        let b = make_regular_reduced_polygon(SpherePoint::new(0.4, -0.1, 0.9).unwrap(), 3, 0.9)
            .unwrap();
        let (_, pair) = thickness(&b).unwrap();
        let lune = Lune::new(pair.k, pair.k_star).unwrap();
        let (c1, c2) = lune.bounding_centers();
        assert!(b.boundary_distance(&c1).max(b.boundary_distance(&c2)) < 1e-6);
        let svg = render_svg(
            &b,
            &PlotOptions {
                lune: Some(lune),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(count(&svg, r#"class="lune-center""#), 2);
        assert_eq!(count(&svg, r#"<path class="lune""#), 2);
    }

    #[test]
    fn offset_cap_is_a_path() {
        let b = make_cap(SpherePoint::north(), 0.5).unwrap();
        let opts = PlotOptions {
            center: Some(SpherePoint::new(0.2, 0.0, 1.0).unwrap()),
            ..Default::default()
        };
        let svg = render_svg(&b, &opts).unwrap();
        assert_eq!(count(&svg, "<circle"), 0);
        assert_eq!(count(&svg, r#"<path class="edge arc""#), 1);
        assert!("mercator".parse::<Projection>().is_err());
    }
}
