//! The semilinear group `Γ(q^n)` acting on `GF(q^n)`, norm-one subgroups, and the
//! regular-orbit criterion for subgroups of `Γ(q^n)`.
//!
//! Conventions: a map `(t, a)` sends `v` to `a·v^{q^t}`; composition `f ∘ g` applies `g`
//! first; conjugating a subgroup `A` by a multiplication `z` means `z ∘ A ∘ z^{-1}`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, gcd, is_prime, lcm, mul_mod, prime_divisors};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// `v -> a·v^{q^twist}` with `a = g^scalar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemilinearMap {
    pub twist: u32,
    pub scalar: u32,
}

impl SemilinearMap {
    pub const IDENTITY: SemilinearMap = SemilinearMap { twist: 0, scalar: 0 };

    pub fn new(ctx: &FieldContext, twist: u32, scalar: FieldElement) -> Result<Self> {
        let scalar = match ctx.check(scalar).map_err(|e| Error::NotInGqn(e.to_string()))? {
            FieldElement::Zero => return Err(Error::NotInGqn("zero scalar".into())),
            FieldElement::Exp(e) => e,
        };
        if twist >= ctx.n() {
            return Err(Error::NotInGqn(format!("twist {twist} not below n = {}", ctx.n())));
        }
        Ok(SemilinearMap { twist, scalar })
    }

    /// Pure multiplication `v -> g^e·v`.
    pub fn multiplication(ctx: &FieldContext, e: i64) -> Self {
        SemilinearMap { twist: 0, scalar: e.rem_euclid(ctx.mult_order() as i64) as u32 }
    }

    /// Pure field automorphism `v -> v^{q^t}`.
    pub fn galois(ctx: &FieldContext, t: u32) -> Self {
        SemilinearMap { twist: t % ctx.n(), scalar: 0 }
    }

    pub fn scalar_element(&self) -> FieldElement {
        FieldElement::Exp(self.scalar)
    }

    pub fn is_multiplication(&self) -> bool {
        self.twist == 0
    }

    pub fn is_pure_galois(&self) -> bool {
        self.twist != 0 && self.scalar == 0
    }

    pub fn validate(&self, ctx: &FieldContext) -> Result<()> {
        if self.twist >= ctx.n() || self.scalar as u64 >= ctx.mult_order() {
            return Err(Error::ContextMismatch(format!(
                "({}, {}) is not an element of Γ({}^{})",
                self.twist,
                self.scalar,
                ctx.q(),
                ctx.n()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, ctx: &FieldContext, v: FieldElement) -> FieldElement {
        match v {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(e) => FieldElement::Exp(self.apply_exp(ctx, e)),
        }
    }

    #[inline]
    pub fn apply_exp(&self, ctx: &FieldContext, e: u32) -> u32 {
        let m = ctx.mult_order();
        ((self.scalar as u64 + mul_mod(e as u64, ctx.q_pow(self.twist), m)) % m) as u32
    }

    /// `self ∘ other` without range checks.
    #[inline]
    pub fn then_after(&self, ctx: &FieldContext, other: &SemilinearMap) -> SemilinearMap {
        let m = ctx.mult_order();
        SemilinearMap {
            twist: (self.twist + other.twist) % ctx.n(),
            scalar: ((self.scalar as u64 + mul_mod(other.scalar as u64, ctx.q_pow(self.twist), m))
                % m) as u32,
        }
    }

    pub fn inverse(&self, ctx: &FieldContext) -> SemilinearMap {
        let n = ctx.n();
        let m = ctx.mult_order();
        let back = (n - self.twist) % n;
        let s = mul_mod(self.scalar as u64, ctx.q_pow(back), m);
        SemilinearMap { twist: back, scalar: ((m - s) % m) as u32 }
    }

    pub fn pow(&self, ctx: &FieldContext, mut e: u64) -> SemilinearMap {
        let mut acc = SemilinearMap::IDENTITY;
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then_after(ctx, &base);
            }
            base = base.then_after(ctx, &base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, ctx: &FieldContext) -> u64 {
        let n = ctx.n() as u64;
        let m = ctx.mult_order();
        let twist_order = n / gcd(n, self.twist as u64);
        // f^d = (0, a·(1 + q^t + ... + q^{t(d-1)}))
        let mut factor = 0u64;
        let mut qt = 1u64;
        for _ in 0..twist_order {
            factor = (factor + qt) % m;
            qt = mul_mod(qt, ctx.q_pow(self.twist), m);
        }
        let c = mul_mod(self.scalar as u64, factor, m);
        twist_order * (m / gcd(c, m))
    }

    /// `z ∘ self ∘ z^{-1}` for the multiplication `z = g^e`.
    pub fn conjugate_by(&self, ctx: &FieldContext, e: u64) -> SemilinearMap {
        let m = ctx.mult_order();
        let shift = mul_mod(e % m, (ctx.q_pow(self.twist) + m - 1) % m, m);
        SemilinearMap { twist: self.twist, scalar: ((self.scalar as u64 + m - shift) % m) as u32 }
    }
}

pub fn compose(ctx: &FieldContext, f: &SemilinearMap, g: &SemilinearMap) -> Result<SemilinearMap> {
    f.validate(ctx)?;
    g.validate(ctx)?;
    Ok(f.then_after(ctx, g))
}

/// A subgroup of `Γ(q^n)` held as its sorted element list.
#[derive(Debug, Clone)]
pub struct SemilinearGroup {
    ctx: Arc<FieldContext>,
    elements: Vec<SemilinearMap>,
}

impl PartialEq for SemilinearGroup {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.elements == other.elements
    }
}

impl SemilinearGroup {
    pub fn generate(ctx: Arc<FieldContext>, gens: &[SemilinearMap]) -> Result<Self> {
        Self::generate_capped(ctx, gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_capped(
        ctx: Arc<FieldContext>,
        gens: &[SemilinearMap],
        cap: usize,
    ) -> Result<Self> {
        for g in gens {
            g.validate(&ctx).map_err(|e| Error::NotInGqn(e.to_string()))?;
        }
        let mut seen: HashSet<SemilinearMap> = HashSet::new();
        let mut elements = vec![SemilinearMap::IDENTITY];
        seen.insert(SemilinearMap::IDENTITY);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for g in gens {
                let y = x.then_after(&ctx, g);
                if seen.insert(y) {
                    if elements.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    elements.push(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(SemilinearGroup { ctx, elements })
    }

    /// Builds a group from an explicit element set, rejecting sets that are not subgroups.
    pub fn from_elements(ctx: Arc<FieldContext>, elements: &[SemilinearMap]) -> Result<Self> {
        for x in elements {
            x.validate(&ctx).map_err(|e| Error::NotInGqn(e.to_string()))?;
        }
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let set: HashSet<_> = sorted.iter().copied().collect();
        if !set.contains(&SemilinearMap::IDENTITY) {
            return Err(Error::NotASubgroup);
        }
        for a in &sorted {
            for b in &sorted {
                if !set.contains(&a.then_after(&ctx, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(SemilinearGroup { ctx, elements: sorted })
    }

    /// The full group `Γ(q^n)`.
    pub fn full(ctx: Arc<FieldContext>) -> Result<Self> {
        let gens = [SemilinearMap::galois(&ctx, 1), SemilinearMap::multiplication(&ctx, 1)];
        Self::generate(ctx, &gens)
    }

    /// The multiplications `Γ₀(q^n)`.
    pub fn multiplications_group(ctx: Arc<FieldContext>) -> Result<Self> {
        let g = SemilinearMap::multiplication(&ctx, 1);
        Self::generate(ctx, &[g])
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn elements(&self) -> &[SemilinearMap] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &SemilinearMap) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// `B = A ∩ Γ₀` as sorted elements.
    pub fn multiplication_part(&self) -> Vec<SemilinearMap> {
        self.elements.iter().copied().filter(|x| x.is_multiplication()).collect()
    }

    /// Primes `t` such that some element outside `Γ₀` has order exactly `t`.
    pub fn outer_prime_orders(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .elements
            .iter()
            .filter(|x| !x.is_multiplication())
            .map(|x| x.order(&self.ctx))
            .filter(|&o| is_prime(o))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    pub fn conjugate_by(&self, e: u64) -> SemilinearGroup {
        let mut elements: Vec<_> =
            self.elements.iter().map(|x| x.conjugate_by(&self.ctx, e)).collect();
        elements.sort_unstable();
        SemilinearGroup { ctx: self.ctx.clone(), elements }
    }

    pub fn stabilizer_is_trivial(&self, v: FieldElement) -> bool {
        self.elements
            .iter()
            .all(|x| *x == SemilinearMap::IDENTITY || x.apply(&self.ctx, v) != v)
    }

    /// The smallest vector (zero first, then ascending exponents) with trivial stabilizer.
    pub fn first_regular_vector(&self) -> Option<FieldElement> {
        let m = self.ctx.mult_order();
        if self.stabilizer_is_trivial(FieldElement::Zero) {
            return Some(FieldElement::Zero);
        }
        (0..m as u32)
            .into_par_iter()
            .find_first(|&e| self.stabilizer_is_trivial(FieldElement::Exp(e)))
            .map(FieldElement::Exp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormOneSubgroup {
    pub s: u64,
    pub elements: Vec<FieldElement>,
    pub generator: FieldElement,
}

impl NormOneSubgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// `N = {x : N_σ(x) = 1}` for the order-`s` Galois subgroup. In the cyclic group of units
/// these are exactly the powers `g^{j(q^{n/s}-1)}`.
pub fn norm_one_subgroup(ctx: &FieldContext, s: u64) -> Result<NormOneSubgroup> {
    let step = ctx.fixed_field_units(s)?;
    let m = ctx.mult_order();
    let elements = (0..m / step).map(|j| FieldElement::Exp((j * step) as u32)).collect();
    Ok(NormOneSubgroup { s, elements, generator: FieldElement::Exp((step % m) as u32) })
}

/// The smallest `y` with `σ(y)/y = x`, where `σ: v -> v^{q^{n/s}}`.
pub fn norm_kernel_preimage(ctx: &FieldContext, s: u64, x: FieldElement) -> Result<FieldElement> {
    let step = ctx.fixed_field_units(s)?;
    let e = match ctx.check(x)? {
        FieldElement::Zero => return Err(Error::NotInN),
        FieldElement::Exp(e) => e as u64,
    };
    if e % step != 0 {
        return Err(Error::NotInN);
    }
    arith::solve_linear_congruence(step, e, ctx.mult_order())
        .map(|y| FieldElement::Exp(y as u32))
        .ok_or(Error::NotInN)
}

/// `GN(q^n, s) = ⟨σ⟩ ⋉ N`.
pub fn gn_group(ctx: Arc<FieldContext>, s: u64) -> Result<SemilinearGroup> {
    let step = ctx.fixed_field_units(s)?;
    let sigma = SemilinearMap::galois(&ctx, ctx.n() / s as u32);
    let gen = SemilinearMap::multiplication(&ctx, step as i64);
    SemilinearGroup::generate(ctx, &[sigma, gen])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeDivisorCheck {
    pub r: u64,
    pub witness: FieldElement,
    /// `r >= s` and (`r = s` or `r ≡ 1 mod s`).
    pub congruence_holds: bool,
    /// For `r ≠ s`: `⟨σ⟩⟨b⟩` has order `sr` and `σ` centralizes no nonidentity power of `b`.
    pub frobenius_group: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormAnalysis {
    pub s: u64,
    pub order: u64,
    pub factorization: Vec<(u64, u32)>,
    pub primes: Vec<PrimeDivisorCheck>,
}

impl NormAnalysis {
    pub fn all_hold(&self) -> bool {
        self.primes
            .iter()
            .all(|c| c.congruence_holds && c.frobenius_group.unwrap_or(true))
    }
}

pub fn norm_subgroup_prime_analysis(ctx: &FieldContext, s: u64) -> Result<NormAnalysis> {
    let n_sub = norm_one_subgroup(ctx, s)?;
    let order = n_sub.order();
    let step = ctx.fixed_field_units(s)?;
    let sigma = SemilinearMap::galois(ctx, ctx.n() / s as u32);
    let mut primes = Vec::new();
    for (r, _) in factorize(order) {
        let witness = ctx.exp((step * (order / r)) as i64);
        let b = SemilinearMap { twist: 0, scalar: witness.exponent().unwrap_or(0) };
        let congruence_holds = r >= s && (r == s || r % s == 1);
        let frobenius_group = (r != s).then(|| {
            let sigma_powers: Vec<_> = (1..s).map(|j| sigma.pow(ctx, j)).collect();
            let b_powers: Vec<_> = (1..r).map(|i| b.pow(ctx, i)).collect();
            let fixed_point_free = sigma_powers.iter().all(|sj| {
                let sj_inv = sj.inverse(ctx);
                b_powers.iter().all(|bi| sj.then_after(ctx, bi).then_after(ctx, &sj_inv) != *bi)
            });
            let mut product: HashSet<SemilinearMap> = HashSet::new();
            for j in 0..s {
                for i in 0..r {
                    product.insert(sigma.pow(ctx, j).then_after(ctx, &b.pow(ctx, i)));
                }
            }
            // closed under multiplication by the two generators
            let closed = product.iter().all(|x| {
                product.contains(&x.then_after(ctx, &sigma)) && product.contains(&x.then_after(ctx, &b))
            });
            fixed_point_free && closed && product.len() as u64 == s * r
        });
        primes.push(PrimeDivisorCheck { r, witness, congruence_holds, frobenius_group });
    }
    Ok(NormAnalysis { s, order, factorization: factorize(order), primes })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Standardization {
    /// Exponent of the conjugating multiplication `z`.
    pub conjugator: FieldElement,
    pub conjugated: SemilinearGroup,
    /// For every prime `t` with an element of order `t` outside `Γ₀`, a pure Galois element
    /// of order `t` in the conjugate.
    pub galois: BTreeMap<u64, SemilinearMap>,
    /// Whether the exhaustive conjugator search was needed.
    pub used_fallback: bool,
}

fn pure_galois_of_order(group: &SemilinearGroup, t: u64) -> Option<SemilinearMap> {
    group
        .elements()
        .iter()
        .copied()
        .find(|x| x.is_pure_galois() && x.order(&group.ctx) == t)
}

fn standardized_for(group: &SemilinearGroup, primes: &[u64]) -> Option<BTreeMap<u64, SemilinearMap>> {
    primes.iter().map(|&t| pure_galois_of_order(group, t).map(|x| (t, x))).collect()
}

/// Conjugates `A` by a multiplication so that, for each prime `t` such that `A` has an
/// element of order `t` outside `Γ₀`, the conjugate contains a pure field automorphism of
/// order `t`. Primes are handled in increasing order; each step only uses conjugators in the
/// fixed field of the automorphisms already obtained, so earlier steps are preserved.
pub fn standardize_subgroup(group: &SemilinearGroup) -> Result<Standardization> {
    let ctx = group.ctx().clone();
    let m = ctx.mult_order();
    let primes = group.outer_prime_orders();
    let mut current = group.clone();
    let mut total: u64 = 0;
    // conjugators must be multiples of `lattice` to fix the automorphisms pinned so far
    let mut lattice: u64 = 1;
    let mut stalled = false;

    for &t in &primes {
        let pinned = match pure_galois_of_order(&current, t) {
            Some(x) => Some(x),
            None => {
                let mut step = None;
                for x in current.elements().iter().filter(|x| !x.is_multiplication()) {
                    if x.order(&ctx) != t {
                        continue;
                    }
                    // z^{q^j - 1} = a with z in the allowed lattice
                    let c = (ctx.q_pow(x.twist) + m - 1) % m;
                    if let Some(u) = arith::solve_linear_congruence(
                        mul_mod(lattice, c, m),
                        x.scalar as u64,
                        m,
                    ) {
                        step = Some(mul_mod(lattice, u, m));
                        break;
                    }
                }
                match step {
                    Some(w) => {
                        current = current.conjugate_by(w);
                        total = (total + w) % m;
                        pure_galois_of_order(&current, t)
                    }
                    None => None,
                }
            }
        };
        match pinned {
            Some(sigma) => {
                let c = (ctx.q_pow(sigma.twist) + m - 1) % m;
                lattice = lcm(lattice, m / gcd(c, m));
            }
            None => {
                stalled = true;
                break;
            }
        }
    }

    if !stalled {
        if let Some(galois) = standardized_for(&current, &primes) {
            return Ok(Standardization {
                conjugator: FieldElement::Exp(total as u32),
                conjugated: current,
                galois,
                used_fallback: false,
            });
        }
    }
    for z in 0..m {
        let candidate = group.conjugate_by(z);
        if let Some(galois) = standardized_for(&candidate, &primes) {
            return Ok(Standardization {
                conjugator: FieldElement::Exp(z as u32),
                conjugated: candidate,
                galois,
                used_fallback: true,
            });
        }
    }
    Err(Error::ConstructionFailed("no standardizing conjugator exists".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop2Witness {
    RegularVector(FieldElement),
    FailingPrime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop2Decision {
    pub has_regular_orbit: bool,
    pub witness: Prop2Witness,
    pub conjugator: FieldElement,
    pub outer_primes: Vec<u64>,
    pub multiplication_order: u64,
}

/// Decides whether `A` has a regular orbit on the field through the norm-one subgroups:
/// it does exactly when no prime `s` with an element of order `s` outside `Γ₀` has
/// `N_s ⊆ A ∩ Γ₀`.
pub fn prop2_criterion(group: &SemilinearGroup) -> Result<Prop2Decision> {
    let ctx = group.ctx();
    let std = standardize_subgroup(group)?;
    let b_order = std.conjugated.multiplication_part().len() as u64;
    let primes: Vec<u64> = std.galois.keys().copied().collect();
    for &s in &primes {
        // B and N_s are subgroups of the cyclic unit group
        let n_s = norm_one_subgroup(ctx, s)?;
        if b_order % n_s.order() == 0 {
            return Ok(Prop2Decision {
                has_regular_orbit: false,
                witness: Prop2Witness::FailingPrime(s),
                conjugator: std.conjugator,
                outer_primes: primes,
                multiplication_order: b_order,
            });
        }
    }
    let v = group.first_regular_vector().ok_or_else(|| {
        Error::ConstructionFailed("criterion holds but no regular vector was found".into())
    })?;
    Ok(Prop2Decision {
        has_regular_orbit: true,
        witness: Prop2Witness::RegularVector(v),
        conjugator: std.conjugator,
        outer_primes: primes,
        multiplication_order: b_order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringWitness {
    pub s: u64,
    /// For every vector in canonical order, the smallest element of order `s` fixing it.
    pub certificate: Vec<(FieldElement, SemilinearMap)>,
}

/// For a group with no regular orbit, a prime `s` such that every vector is fixed by an
/// element of order `s`.
pub fn covering_prime_witness(group: &SemilinearGroup) -> Result<CoveringWitness> {
    if group.first_regular_vector().is_some() {
        return Err(Error::HasRegularOrbit);
    }
    let ctx = group.ctx();
    let points: Vec<FieldElement> = ctx.elements().collect();
    for s in group.outer_prime_orders() {
        let of_order: Vec<SemilinearMap> = group
            .elements()
            .iter()
            .copied()
            .filter(|x| x.order(ctx) == s)
            .collect();
        let certificate: Option<Vec<_>> = points
            .par_iter()
            .map(|&v| of_order.iter().find(|x| x.apply(ctx, v) == v).map(|x| (v, *x)))
            .collect();
        if let Some(certificate) = certificate {
            return Ok(CoveringWitness { s, certificate });
        }
    }
    Err(Error::ConstructionFailed("no covering prime found".into()))
}

/// Prime divisors of `|N|` other than `s`, for reporting.
pub fn norm_order_primes(ctx: &FieldContext, s: u64) -> Result<Vec<u64>> {
    let n = norm_one_subgroup(ctx, s)?;
    Ok(prime_divisors(n.order()).into_iter().filter(|&r| r != s).collect())
}
