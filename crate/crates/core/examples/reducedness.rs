//! Numerical reducedness certificate for polygons.

use lune::bodies::{make_regular_reduced_polygon, Body, ConvexPolygon};
use lune::sphere::{Frame, SpherePoint, EPS_CLAIM};
use lune::width::{lune_centered_at, reducedness_certificate};

fn main() -> lune::Result<()> {
    let f = Frame::at(SpherePoint::north());
    let tri = make_regular_reduced_polygon(f.center(), 3, 0.8)?;
    let square = Body::Polygon(ConvexPolygon::new(
        (0..4)
            .map(|i| f.point_at(0.6, i as f64 * std::f64::consts::FRAC_PI_2))
            .collect(),
    )?);

    for (name, b) in [("regular triangle", &tri), ("square", &square)] {
        let report = reducedness_certificate(b, EPS_CLAIM)?;
        println!(
            "{name}: thickness {:.9}, outcome {:?}",
            report.thickness, report.outcome
        );
        for v in &report.vertices {
            println!(
                "  vertex lune {:.9}  necessary {}  corner cut -> {:.9}",
                v.lune_thickness, v.necessary, v.cut_thickness
            );
        }
    }

    // Thinnest lune containing the body with a given boundary point as a semicircle center.
    let v = tri.vertices()[0];
    let (t, _) = lune_centered_at(&tri, &v)?;
    println!("lune centered at a triangle vertex: {t:.9}");
    Ok(())
}
