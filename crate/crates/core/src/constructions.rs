//! Explicit groups: wreath products over semilinear groups, the 2401-point central product,
//! the cyclic wreath family without regular orbits, and sign-paired regular vectors for odd
//! wreath products.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::action::{
    enumerate_orbits, Action, Caps, Instance, MatrixAction, OrbitReport, WreathAction,
    WreathElement,
};
use crate::arith::{checked_pow, gcd, prime_divisors};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldContext, FieldElement};
use crate::linalg::PrimeMatrix;
use crate::perm::{mask_to_points, Perm, PermGroup};
use crate::semilinear::{SemilinearGroup, SemilinearMap};

/// `H ≀ S` with `H ≤ Γ(q^n)` given by generators and `S` a transitive group on `m` blocks.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    pub ctx: Arc<FieldContext>,
    pub inner_gens: Vec<SemilinearMap>,
    pub m: usize,
    pub top_gens: Vec<Perm>,
}

impl WreathSpec {
    pub fn inner_group(&self, caps: Caps) -> Result<SemilinearGroup> {
        for g in &self.inner_gens {
            g.validate(&self.ctx).map_err(|e| Error::ContextMismatch(e.to_string()))?;
        }
        SemilinearGroup::generate_capped(self.ctx.clone(), &self.inner_gens, caps.elements)
    }

    pub fn top_group(&self, caps: Caps) -> Result<PermGroup> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("block count must be positive".into()));
        }
        if let Some(g) = self.top_gens.iter().find(|g| g.degree() != self.m) {
            return Err(Error::ContextMismatch(format!(
                "top generator {:?} does not act on {} blocks",
                g.to_one_line(),
                self.m
            )));
        }
        let top = PermGroup::with_cap(self.m, self.top_gens.clone(), caps.elements)?;
        if !top.is_transitive() {
            return Err(Error::IntransitiveTop { m: self.m });
        }
        Ok(top)
    }
}

/// Generators `(h, 1, .., 1; id)` and `(1, .., 1; π)`, with order `|H|^m·|S|`.
pub fn build_wreath(spec: &WreathSpec) -> Result<Instance<WreathAction>> {
    build_wreath_capped(spec, Caps::default())
}

pub fn build_wreath_capped(spec: &WreathSpec, caps: Caps) -> Result<Instance<WreathAction>> {
    let inner = spec.inner_group(caps)?;
    let top = spec.top_group(caps)?;
    let order = checked_pow(inner.order(), spec.m as u32)
        .and_then(|b| b.checked_mul(top.order()))
        .ok_or_else(|| Error::InvalidParameter("wreath order overflows u64".into()))?;
    let action = WreathAction::new(spec.ctx.clone(), spec.m)?;
    let mut gens: Vec<WreathElement> = spec
        .inner_gens
        .iter()
        .map(|&h| WreathElement::in_first_block(h, spec.m))
        .collect();
    gens.extend(spec.top_gens.iter().cloned().map(WreathElement::top));
    Ok(Instance::with_order(action, gens, order))
}

/// `Z_3 = Γ₀(4)` wreathed with `Z_5`, acting on `GF(2)^10`.
pub fn example1_spec() -> WreathSpec {
    let ctx = Arc::new(make_field(2, 1, 2).expect("GF(4)"));
    let h = SemilinearMap::multiplication(&ctx, 1);
    WreathSpec { ctx, inner_gens: vec![h], m: 5, top_gens: vec![Perm::cycle(5)] }
}

pub fn build_example1() -> Result<Instance<WreathAction>> {
    build_wreath(&example1_spec())
}

/// Generators of the quaternion group used for the central product.
pub fn q8_generators() -> [PrimeMatrix; 2] {
    [
        PrimeMatrix::from_signed(2, 7, &[0, -1, 1, 0]).expect("2x2"),
        PrimeMatrix::from_signed(2, 7, &[2, 3, 3, -2]).expect("2x2"),
    ]
}

fn matrix_closure(gens: &[PrimeMatrix], identity: &PrimeMatrix, cap: usize) -> Option<Vec<PrimeMatrix>> {
    let action = MatrixAction::new(identity.dim(), identity.p());
    let mut elements = crate::action::closure(&action, gens, cap).ok()?;
    elements.sort_unstable();
    Some(elements)
}

/// The degree-2 group `H` of order 48 containing `Q`, and the data that qualified it.
#[derive(Debug, Clone, Serialize)]
pub struct Example2Factor {
    pub generators: Vec<PrimeMatrix>,
    pub order: u64,
    pub normalizer_order: u64,
    pub center_order: u64,
    /// Element orders of `H/Q`, sorted.
    pub quotient_order_profile: Vec<u64>,
    /// Number of elements of order 2 in `H`.
    pub involutions: u64,
}

/// Searches the normalizer of `Q` in `GL(2,7)` for the first `H = ⟨Q, x, y⟩` of order 48
/// with `|Z(H)| = 2` and `H/Q` non-abelian of order 6.
pub fn example2_factor() -> Result<Example2Factor> {
    let [a, b] = q8_generators();
    let id = PrimeMatrix::identity(2, 7);
    let a2 = a.mul(&a);
    if a.pow(4) != id || b.mul(&b) != a2 || a2 == id {
        return Err(Error::ConstructionFailed("quaternion relations fail".into()));
    }
    let b_inv = b.inverse().expect("b invertible");
    if b.mul(&a).mul(&b_inv) != a.pow(3) {
        return Err(Error::ConstructionFailed("quaternion relations fail".into()));
    }
    let q = matrix_closure(&[a.clone(), b.clone()], &id, 64).expect("Q8 closes");
    if q.len() != 8 {
        return Err(Error::ConstructionFailed(format!("|Q| = {}", q.len())));
    }
    let q_set: HashSet<&PrimeMatrix> = q.iter().collect();

    let mut normalizer = Vec::new();
    for code in 0..7u32.pow(4) {
        let entries: Vec<u32> = (0..4).map(|i| code / 7u32.pow(i) % 7).collect();
        let g = PrimeMatrix::new(2, 7, entries).expect("2x2");
        let Some(gi) = g.inverse() else { continue };
        if q_set.contains(&g.mul(&a).mul(&gi)) && q_set.contains(&g.mul(&b).mul(&gi)) {
            normalizer.push(g);
        }
    }
    normalizer.sort_unstable();

    let coset_key = |h: &PrimeMatrix| -> PrimeMatrix {
        q.iter().map(|x| h.mul(x)).min().expect("nonempty")
    };
    let mut tried: HashSet<Vec<PrimeMatrix>> = HashSet::new();
    for x in &normalizer {
        for y in &normalizer {
            let gens = vec![a.clone(), b.clone(), x.clone(), y.clone()];
            let Some(h) = matrix_closure(&gens, &id, 49) else { continue };
            if h.len() != 48 || !tried.insert(h.clone()) {
                continue;
            }
            let center = h
                .iter()
                .filter(|z| gens.iter().all(|g| z.mul(g) == g.mul(z)))
                .count() as u64;
            let mut profile: Vec<u64> = Vec::new();
            let mut seen = HashSet::new();
            for e in &h {
                if seen.insert(coset_key(e)) {
                    let mut k = 1u64;
                    let mut p = e.clone();
                    while !q_set.contains(&p) {
                        p = p.mul(e);
                        k += 1;
                    }
                    profile.push(k);
                }
            }
            profile.sort_unstable();
            if center == 2 && profile == [1, 2, 2, 2, 3, 3] {
                let involutions = h.iter().filter(|e| **e != id && e.mul(e) == id).count() as u64;
                return Ok(Example2Factor {
                    generators: gens,
                    order: 48,
                    normalizer_order: normalizer.len() as u64,
                    center_order: center,
                    quotient_order_profile: profile,
                    involutions,
                });
            }
        }
    }
    Err(Error::ConstructionFailed("no qualifying subgroup of order 48".into()))
}

/// `⟨h⊗I, I⊗h⟩ ≤ GL(4,7)`, the central product of `H` with itself.
pub fn build_example2() -> Result<Instance<MatrixAction>> {
    build_example2_capped(Caps::default())
}

pub fn build_example2_capped(caps: Caps) -> Result<Instance<MatrixAction>> {
    let factor = example2_factor()?;
    let id = PrimeMatrix::identity(2, 7);
    let mut gens: Vec<PrimeMatrix> = factor.generators.iter().map(|h| h.kron(&id)).collect();
    gens.extend(factor.generators.iter().map(|h| id.kron(h)));
    Instance::new(MatrixAction::new(4, 7), gens, caps)
}

/// Checked claims about an instance of the cyclic wreath family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WolfVerification {
    pub group_order: u64,
    /// Orbit of the all-ones vector.
    pub c_size: u64,
    pub c_expected: u64,
    /// Orbit of `(1, 0, .., 0)`.
    pub d_size: u64,
    pub d_expected: u64,
    /// `C` is p-regular for each prime dividing `q^n - 1`.
    pub c_p_regular: BTreeMap<u64, bool>,
    /// `D` is p-regular for each prime dividing `m`.
    pub d_p_regular: BTreeMap<u64, bool>,
    pub p_regular: BTreeMap<u64, bool>,
    pub regular_exists: bool,
}

impl WolfVerification {
    pub fn holds(&self) -> bool {
        self.c_size == self.c_expected
            && self.d_size == self.d_expected
            && self.c_p_regular.values().all(|&b| b)
            && self.d_p_regular.values().all(|&b| b)
            && self.p_regular.values().all(|&b| b)
            && !self.regular_exists
    }
}

#[derive(Debug, Clone)]
pub struct WolfFamily {
    pub instance: Instance<WreathAction>,
    pub report: OrbitReport,
    pub verification: WolfVerification,
}

pub fn wolf_spec(p: u64, k: u32, n: u32, m: usize) -> Result<WreathSpec> {
    let ctx = Arc::new(make_field(p, k, n)?);
    let size = ctx.size();
    if size <= 2 {
        return Err(Error::DegenerateField { size });
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!("block count {m} must exceed 1")));
    }
    let g = gcd(size - 1, m as u64);
    if g != 1 {
        return Err(Error::GcdViolation { gcd: g });
    }
    let h = SemilinearMap::multiplication(&ctx, 1);
    Ok(WreathSpec { ctx, inner_gens: vec![h], m, top_gens: vec![Perm::cycle(m)] })
}

/// `Γ₀(q^n) ≀ Z_m` with `gcd(q^n - 1, m) = 1`, verified by full orbit enumeration.
pub fn wolf_family(p: u64, k: u32, n: u32, m: usize) -> Result<WolfFamily> {
    wolf_family_with(p, k, n, m, Caps::default(), 1)
}

pub fn wolf_family_with(
    p: u64,
    k: u32,
    n: u32,
    m: usize,
    caps: Caps,
    workers: usize,
) -> Result<WolfFamily> {
    let spec = wolf_spec(p, k, n, m)?;
    let instance = build_wreath_capped(&spec, caps)?;
    let report = enumerate_orbits(&instance, caps, workers)?;
    let action = instance.action();
    let size = spec.ctx.size();
    let units = size - 1;
    let order = instance.group_order();
    let ones = action.encode(&vec![FieldElement::Exp(0); m]);
    let single = 1u64;
    let stab_of = |point: u64| -> Result<(u64, u64)> {
        let rep = orbit_min(action, instance.generators(), point);
        let o = report
            .orbit_with_rep(rep)
            .ok_or_else(|| Error::ConstructionFailed("orbit missing from report".into()))?;
        Ok((o.length, o.stab_order))
    };
    let (c_size, c_stab) = stab_of(ones)?;
    let (d_size, d_stab) = stab_of(single)?;
    let verification = WolfVerification {
        group_order: order,
        c_size,
        c_expected: order / m as u64,
        d_size,
        d_expected: m as u64 * units,
        c_p_regular: prime_divisors(units).into_iter().map(|r| (r, c_stab % r != 0)).collect(),
        d_p_regular: prime_divisors(m as u64).into_iter().map(|r| (r, d_stab % r != 0)).collect(),
        p_regular: report.p_regular.clone(),
        regular_exists: report.regular,
    };
    Ok(WolfFamily { instance, report, verification })
}

/// Smallest point index in the orbit of `point`.
fn orbit_min<A: Action>(action: &A, gens: &[A::Element], point: u64) -> u64 {
    orbit_points(action, gens, point).into_iter().min().unwrap_or(point)
}

fn orbit_points<A: Action>(action: &A, gens: &[A::Element], point: u64) -> Vec<u64> {
    let mut seen = HashSet::new();
    seen.insert(point);
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head];
        head += 1;
        for g in gens {
            let y = action.apply(g, x);
            if seen.insert(y) {
                orbit.push(y);
            }
        }
    }
    orbit
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Signs on the `H`-orbits of `GF(q^n)^×`, paired by `v ↦ -v`, plus the block transports.
#[derive(Debug, Clone, Serialize)]
pub struct SignAssignment {
    /// Orbit id of each nonzero element, indexed by exponent.
    pub orbit_of: Vec<u32>,
    pub orbit_sizes: Vec<u64>,
    pub signs: Vec<Sign>,
    /// `g_i` with `V_1 g_i = V_i`, products of top generators found breadth-first.
    pub transports: Vec<WreathElement>,
}

impl SignAssignment {
    /// Sign of the orbit of a nonzero `v` sitting in block `block` (0-based).
    pub fn sign(&self, action: &WreathAction, block: usize, v: FieldElement) -> Sign {
        let m = action.blocks();
        let mut vector = vec![FieldElement::Zero; m];
        vector[block] = v;
        let g_inv = invert_wreath(action, &self.transports[block]);
        let back = action.decode(action.apply(&g_inv, action.encode(&vector)));
        let e = back[0].exponent().expect("transport keeps v nonzero in block 1");
        self.signs[self.orbit_of[e as usize] as usize]
    }

    /// Each orbit is distinct from its negative, with the opposite sign and the same size.
    pub fn pairing_holds(&self, ctx: &FieldContext) -> bool {
        (0..self.orbit_of.len() as u32).all(|e| {
            let v = FieldElement::Exp(e);
            let w = ctx.neg(v).exponent().expect("nonzero");
            let (a, b) = (self.orbit_of[e as usize] as usize, self.orbit_of[w as usize] as usize);
            a != b && self.signs[a] != self.signs[b] && self.orbit_sizes[a] == self.orbit_sizes[b]
        })
    }
}

fn invert_wreath(action: &WreathAction, g: &WreathElement) -> WreathElement {
    let ctx = action.ctx();
    let inv = g.perm.inverse();
    let parts = (0..action.blocks())
        .map(|j| g.parts[inv.image(j)].inverse(ctx))
        .collect();
    WreathElement { parts, perm: inv }
}

#[derive(Debug, Clone, Serialize)]
pub struct SignWitness {
    pub y: Vec<FieldElement>,
    pub assignment: SignAssignment,
    /// `|C_G(y)|` from a scan of all group elements.
    pub stabilizer_order: u64,
}

/// A vector with trivial stabilizer in an odd-order `H ≀ S` over odd characteristic, built
/// from `z` (regular for the base group) and a block partition `(A_1, A_2)` (1-based) with
/// `Stab_S(A_1) = 1`: blocks in `A_1` get the '+' form of `z_i`, blocks in `A_2` the '−'
/// form.
pub fn sign_trick_witness(
    spec: &WreathSpec,
    z: &[FieldElement],
    partition: (&[usize], &[usize]),
    caps: Caps,
) -> Result<SignWitness> {
    let ctx = spec.ctx.clone();
    let inner = spec.inner_group(caps)?;
    let top = spec.top_group(caps)?;
    let instance = build_wreath_capped(spec, caps)?;
    let order = instance.group_order();
    if order % 2 == 0 {
        return Err(Error::EvenOrder(order));
    }
    if ctx.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let m = spec.m;
    if z.len() != m {
        return Err(Error::InvalidParameter(format!("vector has {} blocks, expected {m}", z.len())));
    }
    for &x in z {
        ctx.check(x)?;
    }
    if z.iter().any(|x| x.is_zero()) || !z.iter().all(|&x| inner.stabilizer_is_trivial(x)) {
        return Err(Error::BaseStabilizerNontrivial);
    }
    let (a1, a2) = partition;
    let mut covered: Vec<usize> = a1.iter().chain(a2).copied().collect();
    covered.sort_unstable();
    if covered != (1..=m).collect::<Vec<_>>() {
        return Err(Error::InvalidParameter("partition does not cover the blocks exactly".into()));
    }
    let mask = a1.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
    if top.set_stabilizer_order(mask) != 1 {
        return Err(Error::PartitionStabilized);
    }

    let assignment = sign_assignment(&ctx, &inner, &instance)?;
    let action = instance.action();
    let y: Vec<FieldElement> = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            let want = if a1.contains(&(i + 1)) { Sign::Plus } else { Sign::Minus };
            if assignment.sign(action, i, zi) == want {
                zi
            } else {
                ctx.neg(zi)
            }
        })
        .collect();

    let point = action.encode(&y);
    let stabilizer_order = instance
        .elements(caps.elements)?
        .iter()
        .filter(|g| action.apply(g, point) == point)
        .count() as u64;
    if stabilizer_order != 1 {
        return Err(Error::ConstructionFailed(format!(
            "sign-paired vector has stabilizer of order {stabilizer_order}"
        )));
    }
    Ok(SignWitness { y, assignment, stabilizer_order })
}

fn sign_assignment(
    ctx: &FieldContext,
    inner: &SemilinearGroup,
    instance: &Instance<WreathAction>,
) -> Result<SignAssignment> {
    let units = ctx.mult_order() as usize;
    let gens = inner.elements();
    let mut orbit_of = vec![u32::MAX; units];
    let mut orbit_sizes = Vec::new();
    // exponent order is point-index order, so orbits are discovered by minimal representative
    for seed in 0..units {
        if orbit_of[seed] != u32::MAX {
            continue;
        }
        let id = orbit_sizes.len() as u32;
        let mut size = 0;
        for g in gens {
            let e = g.apply_exp(ctx, seed as u32) as usize;
            if orbit_of[e] == u32::MAX {
                orbit_of[e] = id;
                size += 1;
            }
        }
        orbit_sizes.push(size);
    }
    let mut signs: Vec<Option<Sign>> = vec![None; orbit_sizes.len()];
    for e in 0..units as u32 {
        let o = orbit_of[e as usize] as usize;
        if signs[o].is_some() {
            continue;
        }
        let neg = orbit_of[ctx.neg(FieldElement::Exp(e)).exponent().expect("nonzero") as usize]
            as usize;
        if neg == o {
            return Err(Error::ConstructionFailed("an orbit is closed under negation".into()));
        }
        signs[o] = Some(Sign::Plus);
        signs[neg] = Some(Sign::Minus);
    }
    let signs = signs.into_iter().map(|s| s.expect("every orbit signed")).collect();

    let action = instance.action();
    let m = action.blocks();
    let top_gens: Vec<&WreathElement> =
        instance.generators().iter().filter(|g| !g.is_base()).collect();
    let mut transports: Vec<Option<WreathElement>> = vec![None; m];
    transports[0] = Some(WreathElement::identity(m));
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        let gi = transports[i].clone().expect("visited");
        for t in &top_gens {
            let j = t.perm.image(i);
            if transports[j].is_none() {
                transports[j] = Some(action.compose(t, &gi));
                queue.push(j);
            }
        }
    }
    let transports = transports
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::IntransitiveTop { m })?;
    Ok(SignAssignment { orbit_of, orbit_sizes, signs, transports })
}

/// `(A_1, A_2)` with `A_1` the first nonempty subset (binary order) whose set-stabilizer in
/// `S` is trivial; points are 1-based.
pub fn trivial_stabilizer_partition(top: &PermGroup) -> Result<(Vec<usize>, Vec<usize>)> {
    if top.order() % 2 == 0 {
        return Err(Error::EvenOrder(top.order()));
    }
    if !top.is_transitive() {
        return Err(Error::IntransitiveTop { m: top.degree() });
    }
    let m = top.degree();
    if m == 1 {
        return Ok((vec![1], vec![]));
    }
    let mask = top.first_regular_subset(true)?.ok_or(Error::NoPartitionFound)?;
    let full = (1u64 << m) - 1;
    Ok((mask_to_points(mask, m), mask_to_points(full & !mask, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::SemilinearAction;

    fn gf(p: u64, n: u32) -> Arc<FieldContext> {
        Arc::new(make_field(p, 1, n).unwrap())
    }

    #[test]
    fn example1_order_by_closure() {
        let inst = build_example1().unwrap();
        assert_eq!(inst.group_order(), 1215);
        assert_eq!(inst.elements(2000).unwrap().len(), 1215);
        assert_eq!(inst.point_count(), 1024);
    }

    #[test]
    fn z5_wreath_z3_over_gf11() {
        let ctx = gf(11, 1);
        // 3 has order 5 modulo 11
        let e3 = ctx.from_int(3).exponent().unwrap() as i64;
        let spec = WreathSpec {
            ctx: ctx.clone(),
            inner_gens: vec![SemilinearMap::multiplication(&ctx, e3)],
            m: 3,
            top_gens: vec![Perm::cycle(3)],
        };
        let inst = build_wreath(&spec).unwrap();
        assert_eq!(inst.group_order(), 375);
        assert_eq!(inst.elements(1000).unwrap().len(), 375);
        let report = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
        assert!(report.regular);
        let v: Vec<_> = [1, 2, 3].iter().map(|&x| ctx.from_int(x)).collect();
        let point = inst.action().encode(&v);
        let fixing = inst
            .elements(1000)
            .unwrap()
            .iter()
            .filter(|g| inst.action().apply(g, point) == point)
            .count();
        assert_eq!(fixing, 1);
    }

    #[test]
    fn degenerate_wreath_matches_inner_action() {
        let ctx = gf(3, 2);
        let h = SemilinearMap::multiplication(&ctx, 2);
        let spec = WreathSpec { ctx: ctx.clone(), inner_gens: vec![h], m: 1, top_gens: vec![] };
        let w = build_wreath(&spec).unwrap();
        let s = Instance::new(SemilinearAction::new(ctx), vec![h], Caps::default()).unwrap();
        assert_eq!(w.group_order(), s.group_order());
        assert_eq!(
            enumerate_orbits(&w, Caps::default(), 1).unwrap(),
            enumerate_orbits(&s, Caps::default(), 1).unwrap()
        );
    }

    #[test]
    fn wreath_errors() {
        let ctx = gf(3, 1);
        let h = SemilinearMap::multiplication(&ctx, 1);
        let spec = WreathSpec {
            ctx: ctx.clone(),
            inner_gens: vec![h],
            m: 3,
            top_gens: vec![Perm::from_one_line(&[2, 1, 3]).unwrap()],
        };
        assert!(matches!(build_wreath(&spec), Err(Error::IntransitiveTop { m: 3 })));
        let spec = WreathSpec {
            ctx,
            inner_gens: vec![SemilinearMap { twist: 0, scalar: 7 }],
            m: 1,
            top_gens: vec![],
        };
        assert!(matches!(build_wreath(&spec), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn wolf_small_cases() {
        let w = wolf_family(2, 1, 2, 2).unwrap();
        assert_eq!(w.instance.group_order(), 18);
        assert_eq!(w.verification.c_size, 9);
        assert_eq!(w.verification.d_size, 6);
        assert!(w.verification.holds());
        let w = wolf_family(2, 1, 3, 2).unwrap();
        assert_eq!(w.instance.group_order(), 98);
        assert_eq!(w.verification.d_size, 14);
        assert!(w.verification.holds());
        assert!(matches!(wolf_family(2, 1, 2, 3), Err(Error::GcdViolation { gcd: 3 })));
        assert!(matches!(wolf_family(2, 1, 1, 3), Err(Error::DegenerateField { size: 2 })));
    }

    #[test]
    fn sign_trick_on_gf11() {
        let ctx = gf(11, 1);
        let e3 = ctx.from_int(3).exponent().unwrap() as i64;
        let spec = WreathSpec {
            ctx: ctx.clone(),
            inner_gens: vec![SemilinearMap::multiplication(&ctx, e3)],
            m: 3,
            top_gens: vec![Perm::cycle(3)],
        };
        let z: Vec<_> = [1, 1, 2].iter().map(|&x| ctx.from_int(x)).collect();
        let w = sign_trick_witness(&spec, &z, (&[1], &[2, 3]), Caps::default()).unwrap();
        let expected: Vec<_> = [1, 10, 2].iter().map(|&x| ctx.from_int(x)).collect();
        assert_eq!(w.y, expected);
        assert_eq!(w.stabilizer_order, 1);
        assert!(w.assignment.pairing_holds(&ctx));
        assert_eq!(w.assignment.orbit_sizes, vec![5, 5]);
    }

    #[test]
    fn sign_trick_degenerate_and_errors() {
        let ctx = gf(7, 1);
        // 2 has order 3 modulo 7
        let h = SemilinearMap::multiplication(&ctx, ctx.from_int(2).exponent().unwrap() as i64);
        let spec = WreathSpec { ctx: ctx.clone(), inner_gens: vec![h], m: 1, top_gens: vec![] };
        let z = vec![ctx.from_int(3)];
        let w = sign_trick_witness(&spec, &z, (&[1], &[]), Caps::default()).unwrap();
        assert!(w.y[0] == z[0] || w.y[0] == ctx.neg(z[0]));

        let spec = WreathSpec { ctx: ctx.clone(), inner_gens: vec![h], m: 3, top_gens: vec![Perm::cycle(3)] };
        let z = vec![ctx.one(), ctx.from_int(3), ctx.from_int(5)];
        let w = sign_trick_witness(&spec, &z, (&[1], &[2, 3]), Caps::default()).unwrap();
        assert_eq!(w.stabilizer_order, 1);
        let z0 = vec![ctx.one(), FieldElement::Zero, ctx.one()];
        assert!(matches!(
            sign_trick_witness(&spec, &z0, (&[1], &[2, 3]), Caps::default()),
            Err(Error::BaseStabilizerNontrivial)
        ));
        assert!(matches!(
            sign_trick_witness(&spec, &z, (&[1, 2, 3], &[]), Caps::default()),
            Err(Error::PartitionStabilized)
        ));
        let even = WreathSpec {
            ctx: ctx.clone(),
            inner_gens: vec![SemilinearMap::multiplication(&ctx, 1)],
            m: 1,
            top_gens: vec![],
        };
        assert!(matches!(
            sign_trick_witness(&even, &[ctx.one()], (&[1], &[]), Caps::default()),
            Err(Error::EvenOrder(6))
        ));
        let c2 = gf(2, 2);
        let odd2 = WreathSpec {
            ctx: c2.clone(),
            inner_gens: vec![SemilinearMap::multiplication(&c2, 1)],
            m: 1,
            top_gens: vec![],
        };
        assert!(matches!(
            sign_trick_witness(&odd2, &[c2.one()], (&[1], &[]), Caps::default()),
            Err(Error::EvenCharacteristic)
        ));
    }

    #[test]
    fn partitions() {
        assert_eq!(trivial_stabilizer_partition(&PermGroup::cyclic(3)).unwrap(), (vec![1], vec![2, 3]));
        assert_eq!(trivial_stabilizer_partition(&PermGroup::cyclic(5)).unwrap().0, vec![1]);
        assert_eq!(trivial_stabilizer_partition(&PermGroup::cyclic(1)).unwrap(), (vec![1], vec![]));
        let s3 = PermGroup::new(3, vec![Perm::cycle(3), Perm::from_one_line(&[2, 1, 3]).unwrap()]).unwrap();
        assert!(matches!(trivial_stabilizer_partition(&s3), Err(Error::EvenOrder(6))));
        let c3 = PermGroup::cyclic(3);
        let w = PermGroup::wreath(&c3, &c3).unwrap();
        let (a1, a2) = trivial_stabilizer_partition(&w).unwrap();
        assert_eq!(a1.len() + a2.len(), 9);
        let mask = a1.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
        assert_eq!(w.set_stabilizer_order(mask), 1);
    }

    #[test]
    fn example2_factor_is_qualified() {
        let f = example2_factor().unwrap();
        assert_eq!(f.order, 48);
        assert_eq!(f.center_order, 2);
        assert_eq!(f.quotient_order_profile, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn kronecker_factors_commute() {
        let [a, b] = q8_generators();
        let i = PrimeMatrix::identity(2, 7);
        assert_eq!(a.kron(&i).mul(&i.kron(&b)), a.kron(&b));
        assert_eq!(i.kron(&b).mul(&a.kron(&i)), a.kron(&b));
    }
}
