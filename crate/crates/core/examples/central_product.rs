//! Builds the central product of a 48-element subgroup of GL(2,7) with itself and lists its
//! orbits on GF(7)^4.

use orbitforge::action::{enumerate_orbits, is_faithful, is_irreducible, Caps};
use orbitforge::constructions::{build_example2, example2_factor};

fn main() -> orbitforge::Result<()> {
    let factor = example2_factor()?;
    println!(
        "factor: |N_GL(2,7)(Q)| = {}, |H| = {}, |Z(H)| = {}, involutions in H = {}",
        factor.normalizer_order, factor.order, factor.center_order, factor.involutions
    );
    let g = build_example2()?;
    let caps = Caps::default();
    let report = enumerate_orbits(&g, caps, 1)?;
    println!("|G| = {}", g.group_order());
    println!("orbit lengths: {:?}", report.orbit_lengths);
    println!("faithful: {}", is_faithful(&g, caps)?.faithful);
    println!("irreducible: {}", is_irreducible(&g, None, caps)?);
    println!("p-regular: {:?}, regular: {}", report.p_regular, report.regular);
    Ok(())
}
