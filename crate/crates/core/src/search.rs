//! Seeded random search for faithful irreducible instances with a p-regular orbit for every
//! prime but no regular orbit.
//!
//! Attempt `i` draws from its own ChaCha stream, so the accepted records depend only on the
//! seed and the configuration, never on the worker count.

use std::io::Write;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{
    element_order, element_pow, enumerate_orbits, is_irreducible, Action, ActionInstance, Caps,
    MatrixAction, OrbitReport, ZhangReport,
};
use crate::arith::{checked_pow, p_part};
use crate::constructions::{example1_spec, example2_factor, WreathSpec};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldContext, FieldParams};
use crate::groupspec::GroupSpecFile;
use crate::linalg::PrimeMatrix;
use crate::perm::Perm;
use crate::semilinear::SemilinearMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub min: usize,
    pub max: usize,
}

/// `H ≀ Z_m` over one field, independent of the `blocks` range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathAmbient {
    pub field: FieldParams,
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixAmbient {
    pub p: u32,
    pub dim: usize,
}

fn default_blocks() -> Range {
    Range { min: 1, max: 1 }
}

fn default_generators() -> Range {
    Range { min: 1, max: 3 }
}

fn default_workers() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    /// Accepted (faithful, irreducible) instances to emit.
    pub samples: usize,
    /// Defaults to `50 · samples`.
    #[serde(default)]
    pub max_attempts: Option<usize>,
    #[serde(default)]
    pub fields: Vec<FieldParams>,
    /// Block counts for `H ≀ Z_m` ambients; `m = 1` is `Γ(q^n)` itself.
    #[serde(default = "default_blocks")]
    pub blocks: Range,
    #[serde(default)]
    pub wreaths: Vec<WreathAmbient>,
    #[serde(default)]
    pub matrix: Vec<MatrixAmbient>,
    #[serde(default = "default_generators")]
    pub generators: Range,
    /// `Some(true)`: odd order only; `Some(false)`: even order only.
    #[serde(default)]
    pub odd_order: Option<bool>,
    #[serde(default)]
    pub odd_characteristic: Option<bool>,
    /// Places `Z_3 ≀ Z_5` on `GF(2)^10` and the central product on `GF(7)^4` ahead of the
    /// random stream, subject to the filters.
    #[serde(default)]
    pub include_examples: bool,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

impl SearchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SearchConfig =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Schema(m.into()));
        if self.blocks.min == 0 || self.blocks.min > self.blocks.max {
            return bad("blocks range must satisfy 1 <= min <= max");
        }
        if self.generators.min == 0 || self.generators.min > self.generators.max {
            return bad("generators range must satisfy 1 <= min <= max");
        }
        if self.fields.is_empty()
            && self.wreaths.is_empty()
            && self.matrix.is_empty()
            && !self.include_examples
        {
            return bad("no ambient groups configured");
        }
        for f in self.fields.iter().chain(self.wreaths.iter().map(|w| &w.field)) {
            make_field(f.p, f.k, f.n)?;
        }
        if self.wreaths.iter().any(|w| w.m == 0) {
            return bad("wreath block counts must be positive");
        }
        for a in &self.matrix {
            if !crate::arith::is_prime(a.p as u64) || a.dim == 0 {
                return bad("matrix ambients need a prime p and positive dim");
            }
        }
        Ok(())
    }

    fn attempts(&self) -> usize {
        self.max_attempts.unwrap_or(self.samples.saturating_mul(50))
    }

    fn characteristic_ok(&self, p: u64) -> bool {
        self.odd_characteristic.is_none_or(|odd| odd == (p % 2 == 1))
    }

    fn order_ok(&self, order: u64) -> bool {
        self.odd_order.is_none_or(|odd| odd == (order % 2 == 1))
    }
}

#[derive(Debug, Clone)]
enum Ambient {
    Field { ctx: Arc<FieldContext>, m: usize },
    Matrix(MatrixAmbient),
}

fn ambients(cfg: &SearchConfig, caps: Caps) -> Result<Vec<Ambient>> {
    let mut pairs: Vec<(FieldParams, usize)> = Vec::new();
    for &f in &cfg.fields {
        pairs.extend((cfg.blocks.min..=cfg.blocks.max).map(|m| (f, m)));
    }
    pairs.extend(cfg.wreaths.iter().map(|w| (w.field, w.m)));
    let mut out = Vec::new();
    for (f, m) in pairs {
        if !cfg.characteristic_ok(f.p) {
            continue;
        }
        // Z_m on top has even order for even m
        if cfg.odd_order == Some(true) && m % 2 == 0 {
            continue;
        }
        let ctx = Arc::new(make_field(f.p, f.k, f.n)?);
        if checked_pow(ctx.size(), m as u32).is_none_or(|pts| pts > caps.points) {
            continue;
        }
        out.push(Ambient::Field { ctx, m });
    }
    for &a in &cfg.matrix {
        if cfg.characteristic_ok(a.p as u64)
            && checked_pow(a.p as u64, a.dim as u32).is_some_and(|pts| pts <= caps.points)
        {
            out.push(Ambient::Matrix(a));
        }
    }
    Ok(out)
}

/// Replaces `g` by its power of odd order.
fn odd_part<A: Action>(action: &A, g: &A::Element, order: u64) -> A::Element {
    element_pow(action, g, p_part(order, 2))
}

fn sample_semilinear(rng: &mut ChaCha8Rng, ctx: &FieldContext, odd: bool) -> SemilinearMap {
    let g = SemilinearMap { twist: rng.gen_range(0..ctx.n()), scalar: rng.gen_range(0..ctx.mult_order() as u32) };
    if odd {
        g.pow(ctx, p_part(g.order(ctx), 2))
    } else {
        g
    }
}

fn sample_matrix(rng: &mut ChaCha8Rng, a: MatrixAmbient, odd: bool) -> PrimeMatrix {
    let m = loop {
        let entries = (0..a.dim * a.dim).map(|_| rng.gen_range(0..a.p)).collect();
        let m = PrimeMatrix::new(a.dim, a.p, entries).expect("square");
        if m.is_invertible() {
            break m;
        }
    };
    if odd {
        let action = MatrixAction::new(a.dim, a.p);
        // element orders in GL(d, p) are below p^d
        let order = element_order(&action, &m, (a.p as u64).pow(a.dim as u32)).expect("finite");
        odd_part(&action, &m, order)
    } else {
        m
    }
}

fn sample_spec(cfg: &SearchConfig, ambients: &[Ambient], index: u64) -> GroupSpecFile {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let ambient = ambients.choose(&mut rng).expect("nonempty ambients");
    let count = rng.gen_range(cfg.generators.min..=cfg.generators.max);
    let odd = cfg.odd_order == Some(true);
    match ambient {
        Ambient::Field { ctx, m } => {
            let gens: Vec<SemilinearMap> = (0..count).map(|_| sample_semilinear(&mut rng, ctx, odd)).collect();
            if *m == 1 {
                GroupSpecFile::semilinear(ctx.params(), &gens)
            } else {
                GroupSpecFile::wreath(&WreathSpec {
                    ctx: ctx.clone(),
                    inner_gens: gens,
                    m: *m,
                    top_gens: vec![Perm::cycle(*m)],
                })
            }
        }
        Ambient::Matrix(a) => {
            let gens: Vec<PrimeMatrix> = (0..count).map(|_| sample_matrix(&mut rng, *a, odd)).collect();
            GroupSpecFile::matrix(&gens, a.p, a.dim)
        }
    }
}

/// Specs of the two explicit counterexamples.
pub fn example_specs() -> Result<Vec<(String, GroupSpecFile)>> {
    let e1 = GroupSpecFile::wreath(&example1_spec());
    let id = PrimeMatrix::identity(2, 7);
    let factor = example2_factor()?;
    let mut gens: Vec<PrimeMatrix> = factor.generators.iter().map(|h| h.kron(&id)).collect();
    gens.extend(factor.generators.iter().map(|h| id.kron(h)));
    let e2 = GroupSpecFile::matrix(&gens, 7, 4);
    Ok(vec![("example1".into(), e1), ("example2".into(), e2)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Accepted,
    ParityRejected,
    Unfaithful,
    Reducible,
    Skipped(String),
}

/// One evaluated attempt.
#[derive(Debug, Clone, Serialize)]
pub struct Evaluation {
    pub index: u64,
    pub source: String,
    pub spec: GroupSpecFile,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ZhangReport>,
    #[serde(skip)]
    pub orbits: Option<OrbitReport>,
}

/// Emitted for each accepted instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub index: u64,
    pub source: String,
    pub spec: GroupSpecFile,
    pub report: ZhangReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub element_cap: usize,
    pub point_cap: u64,
    pub version: String,
}

/// A persisted counterexample, replayable through its spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub run: RunMetadata,
    pub index: u64,
    pub source: String,
    pub spec: GroupSpecFile,
    pub report: ZhangReport,
    pub orbits: OrbitReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub attempts: u64,
    pub accepted: u64,
    pub parity_rejected: u64,
    pub unfaithful: u64,
    pub reducible: u64,
    /// Attempts dropped on a cap or construction error.
    pub skipped: u64,
    pub counterexamples: u64,
    /// Counterexamples of odd order over odd characteristic.
    pub odd_order_counterexamples: u64,
}

type Analysis = (Outcome, Option<(ZhangReport, OrbitReport)>);

fn analyze(cfg: &SearchConfig, caps: Caps, spec: &GroupSpecFile) -> Result<Analysis> {
    let inst: ActionInstance = spec.to_instance(caps)?;
    if !cfg.order_ok(inst.group_order()) {
        return Ok((Outcome::ParityRejected, None));
    }
    if !inst.is_faithful(caps)?.faithful {
        return Ok((Outcome::Unfaithful, None));
    }
    let orbits = inst.enumerate_orbits(caps, 1)?;
    let reps: Vec<u64> = orbits.orbits.iter().map(|o| o.rep).collect();
    let irreducible = match &inst {
        ActionInstance::Semilinear(i) => is_irreducible(i, Some(&reps), caps)?,
        ActionInstance::Matrix(i) => is_irreducible(i, Some(&reps), caps)?,
        ActionInstance::Wreath(i) => is_irreducible(i, Some(&reps), caps)?,
    };
    if !irreducible {
        return Ok((Outcome::Reducible, None));
    }
    let report = ZhangReport::from_parts(&orbits, inst.characteristic(), true, true);
    Ok((Outcome::Accepted, Some((report, orbits))))
}

fn evaluate(cfg: &SearchConfig, caps: Caps, index: u64, source: String, spec: GroupSpecFile) -> Evaluation {
    let (outcome, analysis) = match analyze(cfg, caps, &spec) {
        Ok(a) => a,
        Err(e) => (Outcome::Skipped(e.to_string()), None),
    };
    let (report, orbits) = analysis.map_or((None, None), |(r, o)| (Some(r), Some(o)));
    Evaluation { index, source, spec, outcome, report, orbits }
}

pub struct SearchOutput {
    pub records: Vec<SearchRecord>,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub summary: SearchSummary,
}

/// Runs the search; `on_record` sees accepted records in attempt order.
pub fn run_search<F: FnMut(&SearchRecord)>(
    cfg: &SearchConfig,
    caps: Caps,
    mut on_record: F,
) -> Result<SearchOutput> {
    cfg.validate()?;
    let ambients = ambients(cfg, caps)?;
    let metadata = RunMetadata {
        seed: cfg.seed,
        element_cap: caps.elements,
        point_cap: caps.points,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let mut seeded: Vec<(String, GroupSpecFile)> = Vec::new();
    if cfg.include_examples {
        seeded = example_specs()?
            .into_iter()
            .filter(|(_, s)| cfg.characteristic_ok(s.field.p))
            .collect();
    }
    let total = seeded.len() + if ambients.is_empty() { 0 } else { cfg.attempts() };
    let source_of = |i: usize| -> (String, GroupSpecFile) {
        if i < seeded.len() {
            seeded[i].clone()
        } else {
            let idx = (i - seeded.len()) as u64;
            (format!("random:{idx}"), sample_spec(cfg, &ambients, idx))
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let batch = 8 * cfg.workers.max(1);

    let mut out = SearchOutput { records: Vec::new(), counterexamples: Vec::new(), summary: SearchSummary::default() };
    let mut next = 0usize;
    while next < total && out.records.len() < cfg.samples {
        let end = (next + batch).min(total);
        let evals: Vec<Evaluation> = pool.install(|| {
            (next..end)
                .into_par_iter()
                .map(|i| {
                    let (source, spec) = source_of(i);
                    evaluate(cfg, caps, i as u64, source, spec)
                })
                .collect()
        });
        next = end;
        for e in evals {
            if out.records.len() >= cfg.samples {
                break;
            }
            let s = &mut out.summary;
            s.attempts += 1;
            match &e.outcome {
                Outcome::ParityRejected => s.parity_rejected += 1,
                Outcome::Unfaithful => s.unfaithful += 1,
                Outcome::Reducible => s.reducible += 1,
                Outcome::Skipped(_) => s.skipped += 1,
                Outcome::Accepted => {}
            }
            let (Some(report), Some(orbits)) = (e.report, e.orbits) else { continue };
            s.accepted += 1;
            let record = SearchRecord { index: e.index, source: e.source, spec: e.spec, report };
            on_record(&record);
            if record.report.is_zhang_counterexample {
                s.counterexamples += 1;
                if record.report.contradicts_odd_order_theorem() {
                    s.odd_order_counterexamples += 1;
                }
                out.counterexamples.push(CounterexampleRecord {
                    run: metadata.clone(),
                    index: record.index,
                    source: record.source.clone(),
                    spec: record.spec.clone(),
                    report: record.report.clone(),
                    orbits,
                });
            }
            out.records.push(record);
        }
    }
    Ok(out)
}

/// Appends counterexamples as JSON lines.
pub fn persist_counterexamples(path: &std::path::Path, records: &[CounterexampleRecord]) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidParameter(format!("{}: {e}", path.display()));
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    for r in records {
        writeln!(file, "{}", serde_json::to_string(r).expect("record serializes")).map_err(io)?;
    }
    file.flush().map_err(io)
}

/// Re-derives the orbit data of a persisted counterexample.
pub fn replay(record: &CounterexampleRecord, caps: Caps) -> Result<OrbitReport> {
    let inst = record.spec.to_instance(caps)?;
    match &inst {
        ActionInstance::Semilinear(i) => enumerate_orbits(i, caps, 1),
        ActionInstance::Matrix(i) => enumerate_orbits(i, caps, 1),
        ActionInstance::Wreath(i) => enumerate_orbits(i, caps, 1),
    }
}
