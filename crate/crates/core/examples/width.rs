//! Width in a direction, thickness and diameter.

use std::f64::consts::FRAC_PI_3;

use lune::bodies::{make_quarter_disk, make_regular_reduced_polygon};
use lune::sphere::SpherePoint;
use lune::width::{diameter, thickness, width_at, width_profile};

fn main() -> lune::Result<()> {
    let c = SpherePoint::north();
    let q = make_quarter_disk(c, FRAC_PI_3, 0.0)?;

    let (delta, pair) = thickness(&q)?;
    let (diam, _) = diameter(&q)?;
    println!("quarter-disk, delta = pi/3");
    println!("  thickness      {delta:.9}");
    println!(
        "  diameter       {diam:.9}  (arccos(cos^2 delta) = {:.9})",
        (FRAC_PI_3.cos().powi(2)).acos()
    );
    println!("  attained at k = {:?}", pair.k);

    // Pole on the bisector at the apex: its hemisphere supports the body at the apex.
    let v = q.vertices();
    let m = lune::sphere::interpolate(&v[1], &v[2], 0.5)?;
    let k = SpherePoint::from_vec(m.vec() - v[0].vec() * m.dot(&v[0]))?;
    let (w, p) = width_at(&q, &k)?;
    println!(
        "  width_at(k)    {w:.9}, lune thickness {:.9}",
        p.lune_thickness()
    );

    let r = make_regular_reduced_polygon(c, 5, 0.9)?;
    let prof = width_profile(&r, 200)?;
    let max = prof.samples.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    println!("reduced pentagon, delta = 0.9");
    println!("  width ranges over [{:.9}, {max:.9}]", prof.min_width);
    Ok(())
}
