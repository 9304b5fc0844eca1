//! Reads a JSON group spec (or uses a built-in one) and prints its orbit report.
//!
//! `cargo run --example orbit_report -- spec.json [workers]`

use orbitforge::action::Caps;
use orbitforge::GroupSpecFile;

const DEFAULT: &str = r#"{
  "action": {"kind": "wreath", "m": 3, "top_gens": [[2, 3, 1]]},
  "field": {"p": 2, "k": 1, "n": 2},
  "generators": [{"twist": 1, "scalar": 0}, {"twist": 0, "scalar": 1}]
}"#;

fn main() -> orbitforge::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = match args.next() {
        Some(path) => GroupSpecFile::from_path(path.as_ref())?,
        None => GroupSpecFile::from_json(DEFAULT)?,
    };
    let workers = args.next().and_then(|w| w.parse().ok()).unwrap_or(1);
    let caps = Caps::from_env();
    let inst = spec.to_instance(caps)?;
    println!("{} action, |G| = {}, {} points", inst.kind(), inst.group_order(), inst.point_count());
    let report = inst.enumerate_orbits(caps, workers)?;
    let stabs: Vec<u64> = report.orbits.iter().map(|o| o.stab_order).collect();
    println!("orbit lengths: {:?}", report.orbit_lengths);
    println!("stabilizer orders: {stabs:?}");
    println!("regular: {}, p-regular: {:?}", report.regular, report.p_regular);
    let zhang = inst.zhang_report(caps, workers)?;
    println!("faithful: {}, irreducible: {}, counterexample: {}", zhang.faithful, zhang.irreducible, zhang.is_zhang_counterexample);
    Ok(())
}
