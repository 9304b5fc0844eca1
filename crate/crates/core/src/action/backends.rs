use std::sync::Arc;

use serde::Serialize;

use super::Action;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::PrimeMatrix;
use crate::perm::Perm;
use crate::semilinear::SemilinearMap;

fn digits(mut x: u64, base: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (x % base) as u32;
            x /= base;
            d
        })
        .collect()
}

fn undigits(coords: &[u32], base: u64) -> u64 {
    coords.iter().rev().fold(0u64, |acc, &d| acc * base + d as u64)
}

/// `Γ(q^n)` on `GF(q^n)`; point index is `0` for zero and `e + 1` for `g^e`.
#[derive(Debug, Clone)]
pub struct SemilinearAction {
    ctx: Arc<FieldContext>,
}

impl SemilinearAction {
    pub fn new(ctx: Arc<FieldContext>) -> Self {
        SemilinearAction { ctx }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }
}

impl Action for SemilinearAction {
    type Element = SemilinearMap;

    fn identity(&self) -> SemilinearMap {
        SemilinearMap::IDENTITY
    }

    fn compose(&self, a: &SemilinearMap, b: &SemilinearMap) -> SemilinearMap {
        a.then_after(&self.ctx, b)
    }

    fn point_count(&self) -> u64 {
        self.ctx.size()
    }

    #[inline]
    fn apply(&self, g: &SemilinearMap, point: u64) -> u64 {
        if point == 0 {
            0
        } else {
            g.apply_exp(&self.ctx, (point - 1) as u32) as u64 + 1
        }
    }

    fn prime(&self) -> u64 {
        self.ctx.p()
    }

    fn dimension(&self) -> usize {
        self.ctx.degree() as usize
    }

    fn coords(&self, point: u64) -> Vec<u32> {
        let v = self.ctx.to_vector(self.ctx.from_code(point));
        digits(v as u64, self.ctx.p(), self.dimension())
    }

    fn point(&self, coords: &[u32]) -> u64 {
        let v = undigits(coords, self.ctx.p()) as u32;
        self.ctx.code(self.ctx.from_vector(v))
    }
}

/// `GL(d, p)` acting on column vectors; point index is `Σ x_i p^i`.
#[derive(Debug, Clone)]
pub struct MatrixAction {
    dim: usize,
    p: u32,
}

impl MatrixAction {
    pub fn new(dim: usize, p: u32) -> Self {
        MatrixAction { dim, p }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Action for MatrixAction {
    type Element = PrimeMatrix;

    fn identity(&self) -> PrimeMatrix {
        PrimeMatrix::identity(self.dim, self.p)
    }

    fn compose(&self, a: &PrimeMatrix, b: &PrimeMatrix) -> PrimeMatrix {
        a.mul(b)
    }

    fn point_count(&self) -> u64 {
        (self.p as u64).saturating_pow(self.dim as u32)
    }

    fn apply(&self, g: &PrimeMatrix, point: u64) -> u64 {
        self.point(&g.apply(&self.coords(point)))
    }

    fn prime(&self) -> u64 {
        self.p as u64
    }

    fn dimension(&self) -> usize {
        self.dim
    }

    fn coords(&self, point: u64) -> Vec<u32> {
        digits(point, self.p as u64, self.dim)
    }

    fn point(&self, coords: &[u32]) -> u64 {
        undigits(coords, self.p as u64)
    }
}

/// An element `((g_1, .., g_m); π)` of `Γ(q^n) ≀ S_m`, sending block `j` to block `π(j)`
/// after applying `g_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElement {
    pub parts: Vec<SemilinearMap>,
    pub perm: Perm,
}

impl WreathElement {
    pub fn identity(m: usize) -> Self {
        WreathElement { parts: vec![SemilinearMap::IDENTITY; m], perm: Perm::identity(m) }
    }

    /// `(h, 1, .., 1; id)`
    pub fn in_first_block(h: SemilinearMap, m: usize) -> Self {
        let mut e = Self::identity(m);
        e.parts[0] = h;
        e
    }

    pub fn top(perm: Perm) -> Self {
        WreathElement { parts: vec![SemilinearMap::IDENTITY; perm.degree()], perm }
    }

    pub fn is_base(&self) -> bool {
        self.perm.is_identity()
    }
}

/// `Γ(q^n) ≀ S_m` on `GF(q^n)^m`; a vector `(v_1, .., v_m)` has index
/// `Σ code(v_i)·(q^n)^{i-1}`.
#[derive(Debug, Clone)]
pub struct WreathAction {
    ctx: Arc<FieldContext>,
    blocks: usize,
    points: u64,
}

impl WreathAction {
    pub fn new(ctx: Arc<FieldContext>, blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::InvalidParameter("block count must be positive".into()));
        }
        let points = crate::arith::checked_pow(ctx.size(), blocks as u32).ok_or(
            Error::PointCapExceeded { points: u64::MAX, cap: super::DEFAULT_POINT_CAP },
        )?;
        Ok(WreathAction { ctx, blocks, points })
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Per-block field elements of a point.
    pub fn decode(&self, point: u64) -> Vec<FieldElement> {
        digits(point, self.ctx.size(), self.blocks)
            .into_iter()
            .map(|c| self.ctx.from_code(c as u64))
            .collect()
    }

    pub fn encode(&self, vector: &[FieldElement]) -> u64 {
        let codes: Vec<u32> = vector.iter().map(|&x| self.ctx.code(x) as u32).collect();
        undigits(&codes, self.ctx.size())
    }

    /// Action on a single block entry.
    pub fn block_apply(&self, h: &SemilinearMap, v: FieldElement) -> FieldElement {
        h.apply(&self.ctx, v)
    }
}

impl Action for WreathAction {
    type Element = WreathElement;

    fn identity(&self) -> WreathElement {
        WreathElement::identity(self.blocks)
    }

    fn compose(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let parts = (0..self.blocks)
            .map(|j| a.parts[b.perm.image(j)].then_after(&self.ctx, &b.parts[j]))
            .collect();
        WreathElement { parts, perm: a.perm.after(&b.perm) }
    }

    fn point_count(&self) -> u64 {
        self.points
    }

    fn apply(&self, g: &WreathElement, point: u64) -> u64 {
        let size = self.ctx.size();
        let mut rest = point;
        let mut out = vec![0u64; self.blocks];
        for j in 0..self.blocks {
            let code = rest % size;
            rest /= size;
            let moved = if code == 0 {
                0
            } else {
                g.parts[j].apply_exp(&self.ctx, (code - 1) as u32) as u64 + 1
            };
            out[g.perm.image(j)] = moved;
        }
        out.iter().rev().fold(0u64, |acc, &c| acc * size + c)
    }

    fn prime(&self) -> u64 {
        self.ctx.p()
    }

    fn dimension(&self) -> usize {
        self.ctx.degree() as usize * self.blocks
    }

    fn coords(&self, point: u64) -> Vec<u32> {
        let d = self.ctx.degree() as usize;
        self.decode(point)
            .into_iter()
            .flat_map(|x| digits(self.ctx.to_vector(x) as u64, self.ctx.p(), d))
            .collect()
    }

    fn point(&self, coords: &[u32]) -> u64 {
        let d = self.ctx.degree() as usize;
        let vector: Vec<FieldElement> = coords
            .chunks(d)
            .map(|c| self.ctx.from_vector(undigits(c, self.ctx.p()) as u32))
            .collect();
        self.encode(&vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::closure;
    use crate::field::make_field;

    #[test]
    fn wreath_composition_matches_action() {
        let ctx = Arc::new(make_field(3, 1, 1).unwrap());
        let w = WreathAction::new(ctx.clone(), 3).unwrap();
        let gens = vec![
            WreathElement::in_first_block(SemilinearMap::multiplication(&ctx, 1), 3),
            WreathElement::top(Perm::cycle(3)),
        ];
        let elements = closure(&w, &gens, 1000).unwrap();
        assert_eq!(elements.len(), 2usize.pow(3) * 3);
        for a in elements.iter().take(12) {
            for b in &elements {
                let ab = w.compose(a, b);
                for v in 0..w.point_count() {
                    assert_eq!(w.apply(&ab, v), w.apply(a, w.apply(b, v)));
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let ctx = Arc::new(make_field(2, 1, 2).unwrap());
        let w = WreathAction::new(ctx.clone(), 2).unwrap();
        for v in 0..w.point_count() {
            assert_eq!(w.point(&w.coords(v)), v);
        }
        let s = SemilinearAction::new(ctx);
        for v in 0..4 {
            assert_eq!(s.point(&s.coords(v)), v);
        }
        let m = MatrixAction::new(3, 5);
        for v in 0..125 {
            assert_eq!(m.point(&m.coords(v)), v);
        }
    }

    #[test]
    fn wreath_indexing_is_positional() {
        let ctx = Arc::new(make_field(2, 1, 2).unwrap());
        let w = WreathAction::new(ctx.clone(), 3).unwrap();
        let v = [FieldElement::Exp(0), FieldElement::Zero, FieldElement::Exp(2)];
        // code(1) + 0·4 + code(g^2)·16
        assert_eq!(w.encode(&v), 1 + 3 * 16);
        assert_eq!(w.decode(49), v.to_vec());
    }
}
