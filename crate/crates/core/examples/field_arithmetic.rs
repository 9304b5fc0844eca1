//! Builds GF((3^2)^2) from Zech tables and exercises its arithmetic.

use orbitforge::field::make_field;

fn main() -> orbitforge::Result<()> {
    let ctx = make_field(3, 2, 2)?;
    println!("q = {}, |F| = {}, degree over GF(3) = {}", ctx.q(), ctx.size(), ctx.degree());
    println!("primitive polynomial (low to high): {:?}", ctx.poly());

    let g = ctx.primitive();
    let x = ctx.add(g, ctx.one());
    println!("g + 1 = g^{}", x.exponent().expect("nonzero"));
    println!("(g + 1)^-1 = g^{}", ctx.inv(x)?.exponent().expect("nonzero"));
    println!("coordinates of g + 1 over GF(3): {}", ctx.to_vector(x));

    // x -> x^q fixes exactly GF(q)
    let fixed = ctx.elements().filter(|&v| ctx.frobenius(v, 1) == v).count();
    println!("elements fixed by x -> x^q: {fixed}");

    let norm = ctx.norm_map(2, x)?;
    println!("N(g + 1) to GF(q) = {:?}, lies in GF(q): {}", norm, ctx.in_subfield(norm, 1));
    Ok(())
}
