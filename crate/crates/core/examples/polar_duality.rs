//! Polar bodies: caps swap radius with pi/2 - radius, corners swap with edges.

use std::f64::consts::PI;

use lune::bodies::{make_cap, make_regular_reduced_polygon, make_reuleaux_odd_gon};
use lune::sphere::SpherePoint;
use lune::width::{polar, polar_rho, thickness};

fn main() -> lune::Result<()> {
    let c = SpherePoint::north();

    let cap = make_cap(c, 0.4)?;
    println!(
        "polar(cap 0.4) thickness   {:.9}  (2(pi/2 - 0.4))",
        thickness(&polar(&cap)?)?.0
    );

    for w in [0.5, 0.9, 1.2] {
        let r = make_reuleaux_odd_gon(c, 3, w)?;
        let p = polar(&r)?;
        println!(
            "reuleaux w={w}: polar has {} edges, thickness {:.9}, pi - w = {:.9}",
            p.edge_count(),
            thickness(&p)?.0,
            PI - w
        );
    }

    let tri = make_regular_reduced_polygon(c, 3, 0.8)?;
    let p = polar(&tri)?;
    println!(
        "polar(triangle) is a {} with {} vertices",
        p.kind_name(),
        p.vertices().len()
    );
    let back = polar(&p)?;
    println!("double polar has {} vertices", back.vertices().len());

    // The rho-polar: points at distance at least rho from every point of B, reflected.
    let rp = polar_rho(&tri, 0.9)?;
    println!(
        "polar_rho(triangle, 0.9): {} with {} edges",
        rp.kind_name(),
        rp.edge_count()
    );
    Ok(())
}
