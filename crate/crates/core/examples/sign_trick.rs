//! Builds a vector with trivial stabilizer in an odd-order wreath product over odd
//! characteristic from a regular vector of the base group and a block partition.

use std::sync::Arc;

use orbitforge::action::Caps;
use orbitforge::constructions::{sign_trick_witness, trivial_stabilizer_partition, WreathSpec};
use orbitforge::field::make_field;
use orbitforge::perm::Perm;
use orbitforge::semilinear::SemilinearMap;

fn main() -> orbitforge::Result<()> {
    let ctx = Arc::new(make_field(7, 1, 1)?);
    // H = squares in GF(7)^×, order 3; top group Z_3
    let spec = WreathSpec {
        ctx: ctx.clone(),
        inner_gens: vec![SemilinearMap::multiplication(&ctx, 2)],
        m: 3,
        top_gens: vec![Perm::cycle(3)],
    };
    let caps = Caps::default();
    let (a1, a2) = trivial_stabilizer_partition(&spec.top_group(caps)?)?;
    println!("partition: A1 = {a1:?}, A2 = {a2:?}");
    let z = vec![ctx.one(); spec.m];
    let w = sign_trick_witness(&spec, &z, (&a1, &a2), caps)?;
    println!("H-orbits on GF(7)^×: sizes {:?}, signs {:?}", w.assignment.orbit_sizes, w.assignment.signs);
    println!("negation pairs orbits: {}", w.assignment.pairing_holds(&ctx));
    let y: Vec<i64> = w.y.iter().map(|&v| ctx.to_vector(v) as i64).collect();
    println!("y = {y:?}, |C_G(y)| = {}", w.stabilizer_order);
    Ok(())
}
