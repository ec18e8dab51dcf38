//! Writes SVG figures to `target/figures/`.

use std::fs;
use std::path::Path;

use lune::bodies::{make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon};
use lune::regions::Lune;
use lune::sphere::SpherePoint;
use lune::svg::{render_svg, PlotOptions, Projection};
use lune::width::thickness;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new("target/figures");
    fs::create_dir_all(dir)?;
    let c = SpherePoint::north();

    let r = make_reuleaux_odd_gon(c, 3, 1.0)?;
    let svg = render_svg(
        &r,
        &PlotOptions {
            with_cap: true,
            ..Default::default()
        },
    )?;
    fs::write(dir.join("reuleaux_cap.svg"), svg)?;

    let tri = make_regular_reduced_polygon(c, 3, 0.9)?;
    let (_, pair) = thickness(&tri)?;
    let opts = PlotOptions {
        projection: Projection::Gnomonic,
        lune: Some(Lune::new(pair.k, pair.k_star)?),
        ..Default::default()
    };
    fs::write(dir.join("triangle_lune.svg"), render_svg(&tri, &opts)?)?;

    let q = make_quarter_disk(c, 1.0, 0.0)?;
    let opts = PlotOptions {
        with_cap: true,
        ..Default::default()
    };
    fs::write(dir.join("quarter_disk.svg"), render_svg(&q, &opts)?)?;

    println!("wrote 3 figures to {}", dir.display());
    Ok(())
}
