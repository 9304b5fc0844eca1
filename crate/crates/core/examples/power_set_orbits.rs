//! Subsets of the blocks with trivial stabilizer in odd-order permutation groups.

use orbitforge::perm::{power_set_regular_orbit, Perm, PermGroup};

fn main() -> orbitforge::Result<()> {
    let z3 = PermGroup::cyclic(3);
    let groups = [
        ("Z_7", PermGroup::cyclic(7)),
        ("7:3", PermGroup::affine(7, 2)?),
        ("13:3", PermGroup::affine(13, 3)?),
        ("Z_3 ≀ Z_3", PermGroup::wreath(&z3, &z3)?),
        ("S_3", PermGroup::new(3, vec![Perm::cycle(3), Perm::from_one_line(&[2, 1, 3])?])?),
    ];
    for (name, g) in groups {
        let witness = power_set_regular_orbit(&g)?;
        println!(
            "{name}: degree {}, order {}, subset with trivial stabilizer: {:?}",
            g.degree(),
            g.order(),
            witness
        );
    }
    Ok(())
}
