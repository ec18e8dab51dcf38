//! Constant width versus constant diameter, and the touching inner ball.

use std::f64::consts::FRAC_PI_2;

use lune::bodies::{boundary_sample, make_quarter_disk, make_reuleaux_odd_gon};
use lune::sphere::{distance, SpherePoint};
use lune::width::{diameter, inscribed_touching_ball, is_constant_diameter, is_constant_width};

fn main() -> lune::Result<()> {
    let c = SpherePoint::north();
    for (n, w) in [(3, 0.8), (5, FRAC_PI_2), (3, 1.8)] {
        let b = make_reuleaux_odd_gon(c, n, w)?;
        let cw = is_constant_width(&b, w, 1e-6)?;
        let cd = is_constant_diameter(&b, w, 1e-6)?;
        println!(
            "reuleaux n={n} w={w:.4}: constant width {} (dev {:.1e}), constant diameter {}, diam {:.9}",
            cw.holds,
            cw.max_deviation,
            cd.holds,
            diameter(&b)?.0
        );
    }

    let q = make_quarter_disk(c, 1.0, 0.0)?;
    let (d, _) = diameter(&q)?;
    println!(
        "quarter-disk: constant diameter {}",
        is_constant_diameter(&q, d, 1e-6)?.holds
    );

    // Above pi/2, every boundary point p has a ball of radius w - pi/2 inside
    // the body touching it at p.
    let b = make_reuleaux_odd_gon(c, 3, 1.8)?;
    for p in boundary_sample(&b, 6)? {
        let ball = inscribed_touching_ball(&b, &p)?;
        println!(
            "  touching ball radius {:.9}, |pp'| = {:.9}",
            ball.radius(),
            distance(&p, &ball.center())
        );
    }
    Ok(())
}
