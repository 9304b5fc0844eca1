//! Finite groups acting linearly on finite vector spaces whose points are indexed
//! `0..|V|`.
//!
//! Three backends implement [`Action`]: semilinear maps on `GF(q^n)`, matrices over a prime
//! field, and block-permuting wreath elements over `GF(q^n)^m`. Orbit enumeration only needs
//! generators; element lists come from closure under the element cap.

mod analysis;
mod backends;
mod orbits;

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

pub use analysis::{
    is_faithful, is_irreducible, spin_dimension, zhang_implication_report, FaithfulnessReport,
    ZhangReport,
};
pub use backends::{MatrixAction, SemilinearAction, WreathAction, WreathElement};
pub use orbits::{enumerate_orbits, has_p_regular_orbit, OrbitReport, OrbitSummary};

use crate::error::{Error, Result};
use crate::linalg::PrimeMatrix;
use crate::semilinear::DEFAULT_ELEMENT_CAP;

pub const DEFAULT_POINT_CAP: u64 = 1 << 24;

/// Element and point caps, overridable through `ORBITFORGE_ELEMENT_CAP` and
/// `ORBITFORGE_POINT_CAP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub points: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { elements: DEFAULT_ELEMENT_CAP, points: DEFAULT_POINT_CAP }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = std::env::var("ORBITFORGE_ELEMENT_CAP").ok().and_then(|s| s.parse().ok()) {
            caps.elements = v;
        }
        if let Some(v) = std::env::var("ORBITFORGE_POINT_CAP").ok().and_then(|s| s.parse().ok()) {
            caps.points = v;
        }
        caps
    }
}

/// A group acting GF(p)-linearly on an indexed vector space. `compose(a, b)` is `a ∘ b`:
/// acting by it equals acting by `b`, then by `a`.
pub trait Action: Send + Sync {
    type Element: Clone + Eq + Hash + Ord + Send + Sync + Debug;

    fn identity(&self) -> Self::Element;
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn point_count(&self) -> u64;
    fn apply(&self, g: &Self::Element, point: u64) -> u64;
    /// Characteristic of the underlying field.
    fn prime(&self) -> u64;
    /// Dimension over the prime field.
    fn dimension(&self) -> usize;
    /// Coordinates over the prime field of a point.
    fn coords(&self, point: u64) -> Vec<u32>;
    fn point(&self, coords: &[u32]) -> u64;
}

/// Breadth-first closure of a generating set, deduplicated by element equality.
pub fn closure<A: Action>(
    action: &A,
    generators: &[A::Element],
    cap: usize,
) -> Result<Vec<A::Element>> {
    let id = action.identity();
    let mut seen: HashSet<A::Element> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = action.compose(&x, g);
            if !seen.contains(&y) {
                if elements.len() >= cap {
                    return Err(Error::ElementCapExceeded { cap });
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

pub fn element_pow<A: Action>(action: &A, g: &A::Element, mut e: u64) -> A::Element {
    let mut acc = action.identity();
    let mut base = g.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = action.compose(&acc, &base);
        }
        base = action.compose(&base, &base);
        e >>= 1;
    }
    acc
}

/// Order of an element by repeated multiplication, `None` past `limit`.
pub fn element_order<A: Action>(action: &A, g: &A::Element, limit: u64) -> Option<u64> {
    let id = action.identity();
    let mut x = g.clone();
    let mut k = 1;
    while x != id {
        if k >= limit {
            return None;
        }
        x = action.compose(&x, g);
        k += 1;
    }
    Some(k)
}

/// A generated group together with its action and order.
#[derive(Debug, Clone)]
pub struct Instance<A: Action> {
    action: A,
    generators: Vec<A::Element>,
    group_order: u64,
}

impl<A: Action> Instance<A> {
    /// Computes the group order by closure.
    pub fn new(action: A, generators: Vec<A::Element>, caps: Caps) -> Result<Self> {
        let group_order = closure(&action, &generators, caps.elements)?.len() as u64;
        Ok(Instance { action, generators, group_order })
    }

    /// Uses an order known from the construction.
    pub fn with_order(action: A, generators: Vec<A::Element>, group_order: u64) -> Self {
        Instance { action, generators, group_order }
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn generators(&self) -> &[A::Element] {
        &self.generators
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn point_count(&self) -> u64 {
        self.action.point_count()
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<A::Element>> {
        closure(&self.action, &self.generators, cap)
    }

    /// The same group as matrices over the prime field, in the coordinate basis of the
    /// action. Matrix point indices are the packed coordinates.
    pub fn to_matrix_instance(&self) -> Instance<MatrixAction> {
        let d = self.action.dimension();
        let p = self.action.prime() as u32;
        let basis: Vec<u64> = (0..d)
            .map(|j| {
                let mut e = vec![0u32; d];
                e[j] = 1;
                self.action.point(&e)
            })
            .collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let cols: Vec<Vec<u32>> =
                    basis.iter().map(|&b| self.action.coords(self.action.apply(g, b))).collect();
                PrimeMatrix::from_columns(p, &cols)
            })
            .collect();
        Instance::with_order(MatrixAction::new(d, p), gens, self.group_order)
    }
}

/// An action instance with any of the three backends.
#[derive(Debug, Clone)]
pub enum ActionInstance {
    Semilinear(Instance<SemilinearAction>),
    Matrix(Instance<MatrixAction>),
    Wreath(Instance<WreathAction>),
}

macro_rules! dispatch {
    ($self:expr, $inst:ident => $body:expr) => {
        match $self {
            ActionInstance::Semilinear($inst) => $body,
            ActionInstance::Matrix($inst) => $body,
            ActionInstance::Wreath($inst) => $body,
        }
    };
}

impl ActionInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            ActionInstance::Semilinear(_) => "semilinear",
            ActionInstance::Matrix(_) => "matrix",
            ActionInstance::Wreath(_) => "wreath",
        }
    }

    pub fn group_order(&self) -> u64 {
        dispatch!(self, i => i.group_order())
    }

    pub fn point_count(&self) -> u64 {
        dispatch!(self, i => i.point_count())
    }

    pub fn characteristic(&self) -> u64 {
        dispatch!(self, i => i.action().prime())
    }

    pub fn dimension(&self) -> usize {
        dispatch!(self, i => i.action().dimension())
    }

    pub fn generator_count(&self) -> usize {
        dispatch!(self, i => i.generators().len())
    }

    pub fn enumerate_orbits(&self, caps: Caps, workers: usize) -> Result<OrbitReport> {
        dispatch!(self, i => enumerate_orbits(i, caps, workers))
    }

    pub fn is_faithful(&self, caps: Caps) -> Result<FaithfulnessReport> {
        dispatch!(self, i => is_faithful(i, caps).map(|r| r.summary()))
    }

    pub fn is_irreducible(&self, caps: Caps) -> Result<bool> {
        dispatch!(self, i => is_irreducible(i, None, caps))
    }

    pub fn to_matrix_instance(&self) -> Instance<MatrixAction> {
        dispatch!(self, i => i.to_matrix_instance())
    }

    pub fn zhang_report(&self, caps: Caps, workers: usize) -> Result<ZhangReport> {
        dispatch!(self, i => zhang_implication_report(i, caps, workers))
    }

    /// Stabilizer order of a single point, by element scan.
    pub fn stabilizer_order(&self, point: u64, caps: Caps) -> Result<u64> {
        dispatch!(self, i => {
            let elements = i.elements(caps.elements)?;
            Ok(elements.iter().filter(|g| i.action().apply(g, point) == point).count() as u64)
        })
    }
}

impl From<Instance<SemilinearAction>> for ActionInstance {
    fn from(i: Instance<SemilinearAction>) -> Self {
        ActionInstance::Semilinear(i)
    }
}

impl From<Instance<MatrixAction>> for ActionInstance {
    fn from(i: Instance<MatrixAction>) -> Self {
        ActionInstance::Matrix(i)
    }
}

impl From<Instance<WreathAction>> for ActionInstance {
    fn from(i: Instance<WreathAction>) -> Self {
        ActionInstance::Wreath(i)
    }
}
