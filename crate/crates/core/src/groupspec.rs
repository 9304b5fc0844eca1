//! JSON group specifications:
//! `{"action": {"kind": "semilinear" | "matrix" | "wreath", ..}, "field": {p, k, n},
//! "generators": [..]}`.
//!
//! Semilinear and wreath generators are `{"twist": t, "scalar": e}` maps of the inner field
//! (wreath specs list the generators of `H` and add `"m"` and `"top_gens"`); matrix
//! generators are row-major integer lists with entries in `0..p`, and the matrix kind adds
//! `"dim"`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::action::{ActionInstance, Caps, Instance, MatrixAction, SemilinearAction};
use crate::constructions::{build_wreath_capped, WreathSpec};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldContext, FieldParams};
use crate::linalg::PrimeMatrix;
use crate::perm::Perm;
use crate::semilinear::{SemilinearGroup, SemilinearMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ActionSpec {
    Semilinear,
    Matrix { dim: usize },
    Wreath { m: usize, top_gens: Vec<Perm> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub action: ActionSpec,
    pub field: FieldParams,
    pub generators: Vec<Value>,
}

fn schema<E: std::fmt::Display>(e: E) -> Error {
    Error::Schema(e.to_string())
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(schema)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn semilinear(field: FieldParams, gens: &[SemilinearMap]) -> Self {
        GroupSpecFile {
            action: ActionSpec::Semilinear,
            field,
            generators: gens.iter().map(|g| serde_json::to_value(g).expect("map")).collect(),
        }
    }

    pub fn matrix(gens: &[PrimeMatrix], p: u32, dim: usize) -> Self {
        GroupSpecFile {
            action: ActionSpec::Matrix { dim },
            field: FieldParams { p: p as u64, k: 1, n: 1 },
            generators: gens.iter().map(|g| serde_json::json!(g.entries())).collect(),
        }
    }

    pub fn wreath(spec: &WreathSpec) -> Self {
        GroupSpecFile {
            action: ActionSpec::Wreath { m: spec.m, top_gens: spec.top_gens.clone() },
            field: spec.ctx.params(),
            generators: spec
                .inner_gens
                .iter()
                .map(|g| serde_json::to_value(g).expect("map"))
                .collect(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.action {
            ActionSpec::Semilinear => "semilinear",
            ActionSpec::Matrix { .. } => "matrix",
            ActionSpec::Wreath { .. } => "wreath",
        }
    }

    fn context(&self) -> Result<Arc<FieldContext>> {
        let FieldParams { p, k, n } = self.field;
        Ok(Arc::new(make_field(p, k, n)?))
    }

    fn semilinear_gens(&self, ctx: &FieldContext) -> Result<Vec<SemilinearMap>> {
        self.generators
            .iter()
            .map(|v| {
                let g: SemilinearMap = serde_json::from_value(v.clone()).map_err(schema)?;
                g.validate(ctx).map_err(schema)?;
                Ok(g)
            })
            .collect()
    }

    fn matrix_gens(&self, dim: usize) -> Result<Vec<PrimeMatrix>> {
        let FieldParams { p, k, n } = self.field;
        if k != 1 || n != 1 {
            return Err(Error::Schema("matrix specs need a prime field (k = n = 1)".into()));
        }
        if !crate::arith::is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrime(p));
        }
        if dim == 0 {
            return Err(Error::Schema("matrix dimension must be positive".into()));
        }
        self.generators
            .iter()
            .map(|v| {
                let entries: Vec<u64> = serde_json::from_value(v.clone()).map_err(schema)?;
                if let Some(&x) = entries.iter().find(|&&x| x >= p) {
                    return Err(Error::Schema(format!("matrix entry {x} not below p = {p}")));
                }
                let m = PrimeMatrix::new(dim, p as u32, entries.into_iter().map(|x| x as u32).collect())?;
                if !m.is_invertible() {
                    return Err(Error::Schema("matrix generator is singular".into()));
                }
                Ok(m)
            })
            .collect()
    }

    /// The inner wreath data, for wreath specs.
    pub fn wreath_spec(&self) -> Result<WreathSpec> {
        let ActionSpec::Wreath { m, top_gens } = &self.action else {
            return Err(Error::Schema(format!("expected a wreath spec, got {}", self.kind())));
        };
        let ctx = self.context()?;
        let inner_gens = self.semilinear_gens(&ctx)?;
        Ok(WreathSpec { ctx, inner_gens, m: *m, top_gens: top_gens.clone() })
    }

    /// The subgroup of `Γ(q^n)`, for semilinear specs.
    pub fn semilinear_group(&self, caps: Caps) -> Result<SemilinearGroup> {
        if self.action != ActionSpec::Semilinear {
            return Err(Error::Schema(format!("expected a semilinear spec, got {}", self.kind())));
        }
        let ctx = self.context()?;
        let gens = self.semilinear_gens(&ctx)?;
        SemilinearGroup::generate_capped(ctx, &gens, caps.elements)
    }

    pub fn to_instance(&self, caps: Caps) -> Result<ActionInstance> {
        match &self.action {
            ActionSpec::Semilinear => {
                let ctx = self.context()?;
                let gens = self.semilinear_gens(&ctx)?;
                Ok(Instance::new(SemilinearAction::new(ctx), gens, caps)?.into())
            }
            ActionSpec::Matrix { dim } => {
                let gens = self.matrix_gens(*dim)?;
                let action = MatrixAction::new(*dim, self.field.p as u32);
                Ok(Instance::new(action, gens, caps)?.into())
            }
            ActionSpec::Wreath { .. } => {
                let spec = self.wreath_spec()?;
                Ok(build_wreath_capped(&spec, caps)?.into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semilinear_round_trip() {
        let text = r#"{"action":{"kind":"semilinear"},"field":{"p":2,"k":1,"n":4},"generators":[{"twist":0,"scalar":1}]}"#;
        let spec = GroupSpecFile::from_json(text).unwrap();
        assert_eq!(GroupSpecFile::from_json(&spec.to_json()).unwrap(), spec);
        let inst = spec.to_instance(Caps::default()).unwrap();
        assert_eq!(inst.group_order(), 15);
        assert_eq!(inst.enumerate_orbits(Caps::default(), 1).unwrap().orbit_lengths, vec![1, 15]);
    }

    #[test]
    fn matrix_and_wreath() {
        let text = r#"{"action":{"kind":"matrix","dim":2},"field":{"p":7,"k":1,"n":1},"generators":[[6,0,0,6]]}"#;
        let inst = GroupSpecFile::from_json(text).unwrap().to_instance(Caps::default()).unwrap();
        assert_eq!(inst.group_order(), 2);
        let text = r#"{"action":{"kind":"wreath","m":5,"top_gens":[[2,3,4,5,1]]},"field":{"p":2,"k":1,"n":2},"generators":[{"twist":0,"scalar":1}]}"#;
        let spec = GroupSpecFile::from_json(text).unwrap();
        assert_eq!(spec.to_instance(Caps::default()).unwrap().group_order(), 1215);
        assert_eq!(GroupSpecFile::wreath(&spec.wreath_spec().unwrap()), spec);
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"action":{"kind":"cube"},"field":{"p":2,"k":1,"n":2},"generators":[]}"#,
            r#"{"action":{"kind":"matrix","dim":2},"field":{"p":7,"k":1,"n":1},"generators":[[7,0,0,1]]}"#,
            r#"{"action":{"kind":"matrix","dim":2},"field":{"p":7,"k":1,"n":1},"generators":[[1,2,2,4]]}"#,
            r#"{"action":{"kind":"matrix","dim":2},"field":{"p":7,"k":1,"n":1},"generators":[[1,0,0]]}"#,
            r#"{"action":{"kind":"semilinear"},"field":{"p":2,"k":1,"n":2},"generators":[{"twist":2,"scalar":0}]}"#,
            r#"{"action":{"kind":"semilinear"},"field":{"p":2,"k":1,"n":2},"generators":[],"extra":1}"#,
        ];
        for text in bad {
            let r = GroupSpecFile::from_json(text).and_then(|s| s.to_instance(Caps::default()));
            assert!(matches!(r, Err(Error::Schema(_))), "{text}: {r:?}");
        }
    }
}
