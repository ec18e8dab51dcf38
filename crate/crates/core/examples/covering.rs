//! Smallest covering caps and the covering theorems they are measured against.

use std::f64::consts::FRAC_PI_2;

use lune::bodies::{make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon};
use lune::covering::{
    boundary_centered_cover, covering_bound_report, dekster_radius, min_enclosing_cap,
};
use lune::sphere::SpherePoint;

fn main() -> lune::Result<()> {
    let c = SpherePoint::north();
    for w in [0.5, 1.0, FRAC_PI_2] {
        let r = make_reuleaux_odd_gon(c, 3, w)?;
        let cap = min_enclosing_cap(&r)?;
        println!(
            "reuleaux w={w:.4}: cap radius {:.9}, Dekster {:.9}",
            cap.radius,
            dekster_radius(w)
        );
    }

    let q = make_quarter_disk(c, 0.8, 0.0)?;
    let cap = min_enclosing_cap(&q)?;
    println!(
        "quarter-disk 0.8: cap radius {:.9}, arctan(sqrt2 tan 0.4) = {:.9}, support {}",
        cap.radius,
        (2f64.sqrt() * 0.4f64.tan()).atan(),
        cap.support.len()
    );

    for n in [3, 5, 7] {
        let p = make_regular_reduced_polygon(c, n, 1.1)?;
        let cover = boundary_centered_cover(&p)?;
        let report = covering_bound_report(&p)?;
        println!(
            "reduced {n}-gon 1.1: boundary cover {:.9} <= 1.1, regime {:?}, all bounds hold: {}",
            cover.radius, report.regime, report.pass
        );
    }
    Ok(())
}
