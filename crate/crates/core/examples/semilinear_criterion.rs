//! Decides regular orbits of subgroups of the semilinear group through norm-one subgroups,
//! and cross-checks against a direct scan.

use std::sync::Arc;

use orbitforge::field::make_field;
use orbitforge::semilinear::{
    covering_prime_witness, gn_group, prop2_criterion, SemilinearGroup, SemilinearMap,
};

fn main() -> orbitforge::Result<()> {
    let gf4 = Arc::new(make_field(2, 1, 2)?);
    let gf16 = Arc::new(make_field(2, 1, 4)?);
    let gf27 = Arc::new(make_field(3, 1, 3)?);
    let groups = [
        ("Γ(4)", SemilinearGroup::full(gf4)?),
        ("Γ₀(16)", SemilinearGroup::multiplications_group(gf16.clone())?),
        ("GN(16, 2)", gn_group(gf16.clone(), 2)?),
        ("Γ(27)", SemilinearGroup::full(gf27.clone())?),
        ("⟨x -> x^3, x -> g^2 x⟩ on GF(27)", SemilinearGroup::generate(
            gf27.clone(),
            &[SemilinearMap::galois(&gf27, 1), SemilinearMap::multiplication(&gf27, 2)],
        )?),
    ];
    for (name, group) in groups {
        let decision = prop2_criterion(&group)?;
        let scan = group.first_regular_vector().is_some();
        println!(
            "{name}: |A| = {}, regular orbit: {} ({:?}), scan agrees: {}",
            group.order(),
            decision.has_regular_orbit,
            decision.witness,
            scan == decision.has_regular_orbit
        );
        if !decision.has_regular_orbit {
            let w = covering_prime_witness(&group)?;
            println!("  every vector is fixed by an element of order {}", w.s);
        }
    }
    Ok(())
}
