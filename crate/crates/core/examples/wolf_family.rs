//! `Γ₀(q^n) ≀ Z_m` with `gcd(q^n - 1, m) = 1`: two orbits are enough for p-regularity, yet
//! no orbit is regular.

use orbitforge::constructions::wolf_family;

fn main() -> orbitforge::Result<()> {
    for (p, k, n, m) in [(3, 1, 1, 3), (2, 1, 2, 2), (7, 1, 1, 5), (2, 1, 3, 2), (5, 1, 1, 3)] {
        let family = wolf_family(p, k, n, m)?;
        let v = &family.verification;
        println!(
            "q^n = {}, m = {m}: |G| = {}, |C| = {}/{}, |D| = {}/{}, p-regular: {:?}, regular: {}, holds: {}",
            (p as u64).pow(k * n),
            v.group_order,
            v.c_size,
            v.c_expected,
            v.d_size,
            v.d_expected,
            v.p_regular,
            v.regular_exists,
            v.holds()
        );
    }
    Ok(())
}
