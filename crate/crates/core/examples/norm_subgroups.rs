//! Norm-one subgroups `N_s` of `GF(q^n)^×` and the arithmetic of their prime divisors.

use orbitforge::field::make_field;
use orbitforge::semilinear::{norm_one_subgroup, norm_subgroup_prime_analysis};

fn main() -> orbitforge::Result<()> {
    for (p, k, n) in [(2, 1, 4), (2, 1, 6), (3, 1, 3), (5, 1, 2), (2, 3, 3)] {
        let ctx = make_field(p, k, n)?;
        for s in orbitforge::arith::prime_divisors(n as u64) {
            let sub = norm_one_subgroup(&ctx, s)?;
            let analysis = norm_subgroup_prime_analysis(&ctx, s)?;
            println!(
                "GF({}^{}), s = {s}: |N_s| = {} = {:?}, every prime r >= s with r = s or r = 1 mod s: {}",
                ctx.q(),
                n,
                sub.order(),
                analysis.factorization,
                analysis.all_hold()
            );
        }
    }
    Ok(())
}
