//! The `orbitforge` command line. Exit codes: 0 success, 1 a failed claim or a disagreement
//! with a brute-force oracle, 2 bad input, 3 a cap was exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::action::{enumerate_orbits, is_faithful, is_irreducible, Caps};
use crate::arith::prime_divisors;
use crate::constructions::{build_example1, build_example2_capped, wolf_family_with};
use crate::error::{Error, Result};
use crate::field::make_field;
use crate::groupspec::GroupSpecFile;
use crate::perm::{Perm, PermGroup};
use crate::search::{persist_counterexamples, run_search, SearchConfig};
use crate::semilinear::{norm_one_subgroup, prop2_criterion, SemilinearMap};

#[derive(Debug, Parser)]
#[command(name = "orbitforge", version, about = "Regular and p-regular orbits of finite linear groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orbit report of the group in a spec file, as JSON.
    Orbits {
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Checks the claims made about one of the built-in constructions.
    Verify {
        name: Example,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Norm-subgroup regular-orbit criterion for a semilinear spec, with a brute-force check.
    Prop2 { spec: PathBuf },
    /// Seeded random search; accepted records go to stdout as JSON lines.
    Search {
        config: PathBuf,
        /// Appends counterexamples here as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Field construction data for GF((p^k)^n).
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Smallest subset with trivial set-stabilizer for a permutation group spec.
    Gluck { spec: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Example {
    Example1,
    Example2,
    Wolf,
}

/// `{"degree": m, "generators": [[..one-line images, 1-based..], ..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermSpecFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub claim: String,
    pub pass: bool,
}

impl Claim {
    fn new(claim: impl Into<String>, pass: bool) -> Self {
        Claim { claim: claim.into(), pass }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ElementCapExceeded { .. }
        | Error::PointCapExceeded { .. }
        | Error::SizeCapExceeded { .. }
        | Error::DegreeCapExceeded { .. } => 3,
        Error::ConstructionFailed(_) => 1,
        _ => 2,
    }
}

fn line(out: &mut dyn Write, text: &str) {
    // a closed stdout is not worth a panic
    let _ = writeln!(out, "{text}");
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let caps = Caps::from_env();
    match dispatch(cli.command, caps, out, err) {
        Ok(code) => code,
        Err(e) => {
            line(err, &format!("error: {e}"));
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, caps: Caps, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Orbits { spec, workers } => {
            let inst = GroupSpecFile::from_path(&spec)?.to_instance(caps)?;
            line(out, &inst.enumerate_orbits(caps, workers)?.to_json());
            Ok(0)
        }
        Command::Verify { name, p, k, n, m, json, workers } => {
            let claims = match name {
                Example::Example1 => verify_example1(caps, workers)?,
                Example::Example2 => verify_example2(caps, workers)?,
                Example::Wolf => {
                    let (Some(p), Some(n), Some(m)) = (p, n, m) else {
                        return Err(Error::InvalidParameter("wolf needs --p, --n and --m".into()));
                    };
                    verify_wolf(p, k.unwrap_or(1), n, m, caps, workers)?
                }
            };
            let all = claims.iter().all(|c| c.pass);
            if json {
                let name = format!("{name:?}").to_lowercase();
                line(out, &json!({"example": name, "claims": claims, "pass": all}).to_string());
            } else {
                for c in &claims {
                    line(out, &format!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.claim));
                }
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Prop2 { spec } => {
            let group = GroupSpecFile::from_path(&spec)?.semilinear_group(caps)?;
            let decision = prop2_criterion(&group)?;
            let ctx = group.ctx();
            // independent scan over every vector and every element
            let oracle = ctx.elements().any(|v| {
                group
                    .elements()
                    .iter()
                    .all(|g| *g == SemilinearMap::IDENTITY || g.apply(ctx, v) != v)
            });
            let agrees = oracle == decision.has_regular_orbit;
            line(
                out,
                &json!({
                    "has_regular_orbit": decision.has_regular_orbit,
                    "witness": decision.witness,
                    "oracle_agrees": agrees,
                    "group_order": group.order(),
                    "outer_primes": decision.outer_primes,
                })
                .to_string(),
            );
            Ok(if agrees { 0 } else { 1 })
        }
        Command::Search { config, out: results } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Schema(format!("{}: {e}", config.display())))?;
            let cfg = SearchConfig::from_json(&text)?;
            let output = run_search(&cfg, caps, |r| {
                line(out, &serde_json::to_string(r).expect("record serializes"))
            })?;
            if let Some(path) = results {
                persist_counterexamples(&path, &output.counterexamples)?;
            }
            line(err, &serde_json::to_string(&output.summary).expect("summary serializes"));
            if output.summary.odd_order_counterexamples > 0 {
                line(err, "odd-order counterexample found over odd characteristic");
                return Ok(1);
            }
            Ok(0)
        }
        Command::FieldInfo { p, k, n } => {
            let ctx = make_field(p, k, n)?;
            let norm_orders: Vec<_> = prime_divisors(n as u64)
                .into_iter()
                .map(|s| norm_one_subgroup(&ctx, s).map(|g| json!({"s": s, "order": g.order()})))
                .collect::<Result<_>>()?;
            line(
                out,
                &json!({
                    "p": p, "k": k, "n": n,
                    "q": ctx.q(),
                    "size": ctx.size(),
                    "degree": ctx.degree(),
                    "polynomial": ctx.poly(),
                    "multiplicative_order": ctx.mult_order(),
                    "norm_one_subgroups": norm_orders,
                })
                .to_string(),
            );
            Ok(0)
        }
        Command::Gluck { spec } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| Error::Schema(format!("{}: {e}", spec.display())))?;
            let file: PermSpecFile =
                serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
            let gens = file
                .generators
                .iter()
                .map(|g| Perm::from_one_line(g))
                .collect::<Result<Vec<_>>>()?;
            let group = PermGroup::with_cap(file.degree, gens, caps.elements)?;
            let witness = crate::perm::power_set_regular_orbit(&group)?;
            let stab = witness.as_ref().map(|w| {
                group.set_stabilizer_order(w.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1)))
            });
            let odd = group.order() % 2 == 1;
            let transitive = group.is_transitive();
            line(
                out,
                &json!({
                    "degree": file.degree,
                    "order": group.order(),
                    "transitive": transitive,
                    "odd_order": odd,
                    "witness": witness,
                    "stabilizer_order": stab,
                })
                .to_string(),
            );
            // an odd transitive group without a witness would contradict the power-set lemma
            Ok(if odd && transitive && witness.is_none() { 1 } else { 0 })
        }
    }
}

pub fn verify_example1(caps: Caps, workers: usize) -> Result<Vec<Claim>> {
    let g = build_example1()?;
    let report = enumerate_orbits(&g, caps, workers)?;
    let faithful = is_faithful(&g, caps)?.faithful;
    let reps: Vec<u64> = report.orbits.iter().map(|o| o.rep).collect();
    let irreducible = is_irreducible(&g, Some(&reps), caps)?;
    Ok(vec![
        Claim::new("Z3 wr Z5 acts faithfully and irreducibly on GF(2)^10", faithful && irreducible),
        Claim::new(
            "has a 3-regular orbit and a 5-regular orbit",
            report.p_regular.get(&3) == Some(&true) && report.p_regular.get(&5) == Some(&true),
        ),
        Claim::new("has no regular orbit", !report.regular),
    ])
}

pub fn verify_example2(caps: Caps, workers: usize) -> Result<Vec<Claim>> {
    let g = build_example2_capped(caps)?;
    let report = enumerate_orbits(&g, caps, workers)?;
    let faithful = is_faithful(&g, caps)?.faithful;
    let reps: Vec<u64> = report.orbits.iter().map(|o| o.rep).collect();
    let irreducible = is_irreducible(&g, Some(&reps), caps)?;
    Ok(vec![
        Claim::new("|G| = 1152", g.group_order() == 1152),
        Claim::new("G acts faithfully and irreducibly on GF(7)^4", faithful && irreducible),
        Claim::new(
            "has a 2-regular orbit and a 3-regular orbit",
            report.p_regular.get(&2) == Some(&true) && report.p_regular.get(&3) == Some(&true),
        ),
        Claim::new("has no regular orbit", !report.regular),
    ])
}

pub fn verify_wolf(p: u64, k: u32, n: u32, m: usize, caps: Caps, workers: usize) -> Result<Vec<Claim>> {
    let w = wolf_family_with(p, k, n, m, caps, workers)?;
    let v = &w.verification;
    Ok(vec![
        Claim::new(format!("C has size |G|/m = {}", v.c_expected), v.c_size == v.c_expected),
        Claim::new(format!("D has size m(q^n - 1) = {}", v.d_expected), v.d_size == v.d_expected),
        Claim::new(
            "C is p-regular for every p | q^n - 1 and D for every p | m",
            v.c_p_regular.values().chain(v.d_p_regular.values()).all(|&b| b),
        ),
        Claim::new("has a p-regular orbit for every prime p dividing |G|", v.p_regular.values().all(|&b| b)),
        Claim::new("has no regular orbit", !v.regular_exists),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("orbitforge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verify_commands() {
        let (code, out, _) = run_args(&["verify", "example1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3);
        let (code, _, err) = run_args(&["verify", "wolf", "--p", "2", "--k", "1", "--n", "2", "--m", "3"]);
        assert_eq!(code, 2, "{err}");
        let (code, out, _) = run_args(&["verify", "wolf", "--p", "2", "--n", "2", "--m", "2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn field_info_and_bad_args() {
        let (code, out, _) = run_args(&["field-info", "--p", "3", "--n", "4"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["size"], 81);
        assert_eq!(run_args(&["field-info", "--p", "4"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }
}
