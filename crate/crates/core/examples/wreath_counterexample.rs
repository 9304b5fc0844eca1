//! `Z_3 ≀ Z_5` on `GF(2)^10`: p-regular orbits for every prime, but no regular orbit.

use orbitforge::action::{enumerate_orbits, Caps};
use orbitforge::constructions::{build_example1, example1_spec};

fn main() -> orbitforge::Result<()> {
    let spec = example1_spec();
    let g = build_example1()?;
    println!("blocks: {}, inner field size: {}, |G| = {}", spec.m, spec.ctx.size(), g.group_order());
    let caps = Caps::default();
    let report = enumerate_orbits(&g, caps, 1)?;
    println!("orbit lengths: {:?}", report.orbit_lengths);
    println!("p-regular: {:?}", report.p_regular);
    let zhang = orbitforge::action::zhang_implication_report(&g, caps, 1)?;
    println!(
        "faithful: {}, irreducible: {}, regular orbit: {}, counterexample: {}",
        zhang.faithful, zhang.irreducible, zhang.regular_exists, zhang.is_zhang_counterexample
    );
    Ok(())
}
