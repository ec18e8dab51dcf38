//! Lunes: thickness, corners and the centers of the bounding semicircles.

use lune::regions::{lune_bounding_centers, lune_corners, lune_thickness, Lune};
use lune::sphere::{distance, SpherePoint};

fn main() -> lune::Result<()> {
    let g = SpherePoint::new(0.0, -0.3, 1.0)?;
    let h = SpherePoint::new(0.2, 0.6, 1.0)?;
    let lune = Lune::new(g, h)?;

    let (c_gh, c_hg) = lune_bounding_centers(&lune);
    let (k1, k2) = lune_corners(&lune);
    println!("thickness          {:.9}", lune_thickness(&lune));
    println!(
        "pi - |gh|          {:.9}",
        std::f64::consts::PI - distance(&g, &h)
    );
    println!("|c_gh c_hg|        {:.9}", distance(&c_gh, &c_hg));
    println!("corners apart      {:.9}", distance(&k1, &k2));

    // The segment between the two centers crosses the lune at its narrowest.
    let mid = lune::sphere::interpolate(&c_gh, &c_hg, 0.5)?;
    println!("midpoint inside    {}", lune.contains(&mid));
    println!("g inside           {}", lune.contains(&g));
    Ok(())
}
