//! Seeded random search for faithful irreducible groups with p-regular orbits for every
//! prime but no regular orbit.

use orbitforge::action::Caps;
use orbitforge::search::{replay, run_search, SearchConfig};

const CONFIG: &str = r#"{
  "seed": 2024,
  "samples": 40,
  "fields": [{"p": 2, "k": 1, "n": 4}, {"p": 2, "k": 1, "n": 6}, {"p": 3, "k": 1, "n": 4}],
  "wreaths": [{"field": {"p": 2, "k": 1, "n": 2}, "m": 3}],
  "matrix": [{"p": 3, "dim": 3}],
  "include_examples": true,
  "workers": 4
}"#;

fn main() -> orbitforge::Result<()> {
    let cfg = SearchConfig::from_json(CONFIG)?;
    let caps = Caps::from_env();
    let output = run_search(&cfg, caps, |_| {})?;
    println!("{}", serde_json::to_string_pretty(&output.summary).expect("summary"));
    for found in &output.counterexamples {
        let r = &found.report;
        println!(
            "#{} {}: |G| = {}, p = {}, orbit lengths {:?}",
            found.index,
            found.source,
            r.group_order,
            r.characteristic,
            found.orbits.orbit_lengths
        );
        assert_eq!(replay(found, caps)?, found.orbits);
    }
    Ok(())
}
