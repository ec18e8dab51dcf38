//! Constructing bodies and writing them as versioned JSON.

use lune::bodies::{
    boundary_sample, convex_hull, make_cap, make_quarter_disk, make_regular_reduced_polygon,
    make_reuleaux_odd_gon, Body,
};
use lune::io::BodyDocument;
use lune::sphere::SpherePoint;

fn describe(name: &str, b: &Body) {
    println!(
        "{name:<22} kind={:<13} edges={:<2} strictly_convex={}",
        b.kind_name(),
        b.edge_count(),
        b.is_strictly_convex()
    );
}

fn main() -> lune::Result<()> {
    let c = SpherePoint::north();
    describe("cap(0.6)", &make_cap(c, 0.6)?);
    describe("quarter-disk(1.0)", &make_quarter_disk(c, 1.0, 0.0)?);
    describe("reuleaux(3, 1.0)", &make_reuleaux_odd_gon(c, 3, 1.0)?);
    // Past pi/2 the Reuleaux body alternates short arcs with geodesic edges.
    describe("reuleaux(3, 1.8)", &make_reuleaux_odd_gon(c, 3, 1.8)?);
    describe(
        "reduced 5-gon(0.9)",
        &make_regular_reduced_polygon(c, 5, 0.9)?,
    );

    let pts: Vec<SpherePoint> = boundary_sample(&make_cap(c, 0.5)?, 12)?
        .into_iter()
        .chain([c])
        .collect();
    let hull = Body::Polygon(convex_hull(&pts)?);
    describe("hull of 13 points", &hull);

    let doc = BodyDocument::from_body(&make_reuleaux_odd_gon(c, 3, 1.0)?)
        .with_metadata("note", "example");
    let text = doc.to_json();
    let back = BodyDocument::parse(&text, true)?.to_body()?;
    println!(
        "json round trip: {} bytes, kind {}",
        text.len(),
        back.kind_name()
    );
    Ok(())
}
