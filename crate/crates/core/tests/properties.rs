use std::sync::Arc;

use proptest::prelude::*;

use orbitforge::action::{
    enumerate_orbits, Action, Caps, Instance, MatrixAction, SemilinearAction, WreathAction,
    WreathElement,
};
use orbitforge::constructions::{build_wreath, sign_trick_witness, WreathSpec};
use orbitforge::field::{make_field, FieldContext, FieldElement};
use orbitforge::linalg::PrimeMatrix;
use orbitforge::perm::Perm;
use orbitforge::semilinear::{SemilinearGroup, SemilinearMap};

const FIELDS: [(u64, u32, u32); 8] =
    [(2, 1, 2), (2, 1, 4), (2, 2, 2), (3, 1, 2), (3, 1, 3), (5, 1, 2), (7, 1, 1), (3, 2, 2)];

fn field(i: usize) -> Arc<FieldContext> {
    let (p, k, n) = FIELDS[i % FIELDS.len()];
    Arc::new(make_field(p, k, n).unwrap())
}

fn element(ctx: &FieldContext, raw: u64) -> FieldElement {
    ctx.from_code(raw % ctx.size())
}

fn map(ctx: &FieldContext, t: u32, a: u64) -> SemilinearMap {
    SemilinearMap { twist: t % ctx.n(), scalar: (a % ctx.mult_order()) as u32 }
}

/// Brute-force order as a permutation of the field.
fn permutation_order(ctx: &FieldContext, g: &SemilinearMap) -> u64 {
    let mut x = *g;
    let mut k = 1;
    while !ctx.elements().all(|v| x.apply(ctx, v) == v) {
        x = x.then_after(ctx, g);
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(i in 0usize..8, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let ctx = field(i);
        let (a, b, c) = (element(&ctx, a), element(&ctx, b), element(&ctx, c));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.sub(ctx.add(a, b), b), a);
        prop_assert_eq!(ctx.from_vector(ctx.to_vector(a)), a);
        // Frobenius is additive
        prop_assert_eq!(ctx.frobenius(ctx.add(a, b), 1), ctx.add(ctx.frobenius(a, 1), ctx.frobenius(b, 1)));
    }

    #[test]
    fn semilinear_composition_and_order(i in 0usize..8, t1 in 0u32..6, a1 in 0u64..10_000, t2 in 0u32..6, a2 in 0u64..10_000, v in 0u64..1000) {
        let ctx = field(i);
        let (f, g) = (map(&ctx, t1, a1), map(&ctx, t2, a2));
        let v = element(&ctx, v);
        prop_assert_eq!(f.then_after(&ctx, &g).apply(&ctx, v), f.apply(&ctx, g.apply(&ctx, v)));
        prop_assert_eq!(f.inverse(&ctx).apply(&ctx, f.apply(&ctx, v)), v);
        prop_assert_eq!(f.order(&ctx), permutation_order(&ctx, &f));
        // additive over the prime field
        let w = element(&ctx, a2);
        prop_assert_eq!(f.apply(&ctx, ctx.add(v, w)), ctx.add(f.apply(&ctx, v), f.apply(&ctx, w)));
    }

    #[test]
    fn norm_is_multiplicative(i in 0usize..8, a in 1u64..10_000, b in 1u64..10_000) {
        let ctx = field(i);
        let (x, y) = (ctx.exp(a as i64), ctx.exp(b as i64));
        for s in orbitforge::arith::prime_divisors(ctx.n() as u64) {
            prop_assert_eq!(
                ctx.norm_map(s, ctx.mul(x, y)).unwrap(),
                ctx.mul(ctx.norm_map(s, x).unwrap(), ctx.norm_map(s, y).unwrap())
            );
        }
    }

    #[test]
    fn semilinear_and_matrix_backends_agree(i in 0usize..8, raw in proptest::collection::vec((0u32..6, 0u64..10_000), 1..3)) {
        let ctx = field(i);
        let gens: Vec<SemilinearMap> = raw.iter().map(|&(t, a)| map(&ctx, t, a)).collect();
        let inst = Instance::new(SemilinearAction::new(ctx.clone()), gens, Caps::default()).unwrap();
        let mat = inst.to_matrix_instance();
        let closed = Instance::new(mat.action().clone(), mat.generators().to_vec(), Caps::default()).unwrap();
        prop_assert_eq!(closed.group_order(), inst.group_order());
        let a = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
        let b = enumerate_orbits(&mat, Caps::default(), 1).unwrap();
        prop_assert_eq!(a.orbit_lengths, b.orbit_lengths);
    }

    #[test]
    fn wreath_action_is_a_homomorphism(seed in 0u64..1_000, picks in proptest::collection::vec(0usize..100, 3)) {
        let ctx = field(3);
        let w = WreathAction::new(ctx.clone(), 3).unwrap();
        let gens = vec![
            WreathElement::in_first_block(map(&ctx, 1, seed), 3),
            WreathElement::in_first_block(map(&ctx, 0, seed / 7 + 1), 3),
            WreathElement::top(Perm::cycle(3)),
        ];
        let elements = orbitforge::action::closure(&w, &gens, 100_000).unwrap();
        let pick = |k: usize| elements[picks[k] * elements.len() / 100].clone();
        let (a, b, c) = (pick(0), pick(1), pick(2));
        let ab = w.compose(&a, &b);
        prop_assert_eq!(w.compose(&ab, &c), w.compose(&a, &w.compose(&b, &c)));
        for v in (0..w.point_count()).step_by(37) {
            prop_assert_eq!(w.apply(&ab, v), w.apply(&a, w.apply(&b, v)));
        }
    }

    #[test]
    fn wreath_and_matrix_realization_agree(seed in 0u64..1_000) {
        let ctx = field(0);
        let spec = WreathSpec {
            ctx: ctx.clone(),
            inner_gens: vec![map(&ctx, (seed % 2) as u32, seed)],
            m: 3,
            top_gens: vec![Perm::cycle(3)],
        };
        let inst = build_wreath(&spec).unwrap();
        let mat = inst.to_matrix_instance();
        prop_assert_eq!(
            enumerate_orbits(&inst, Caps::default(), 1).unwrap().orbit_lengths,
            enumerate_orbits(&mat, Caps::default(), 2).unwrap().orbit_lengths
        );
        let closed = Instance::new(MatrixAction::new(6, 2), mat.generators().to_vec(), Caps::default()).unwrap();
        prop_assert_eq!(closed.group_order(), inst.group_order());
    }

    /// For odd |H| over odd characteristic, `v ↦ -v` pairs distinct H-orbits of equal size.
    #[test]
    fn negation_pairs_orbits(i in 0usize..4, raw in proptest::collection::vec((0u32..6, 0u64..10_000), 1..3)) {
        let odd = [(3u64, 1u32, 3u32), (7, 1, 2), (5, 1, 3), (13, 1, 1)];
        let (p, k, n) = odd[i];
        let ctx = Arc::new(make_field(p, k, n).unwrap());
        let gens: Vec<SemilinearMap> = raw
            .iter()
            .map(|&(t, a)| {
                let g = map(&ctx, t, a);
                let o = g.order(&ctx);
                g.pow(&ctx, orbitforge::arith::p_part(o, 2))
            })
            .collect();
        let h = SemilinearGroup::generate(ctx.clone(), &gens).unwrap();
        prop_assert_eq!(h.order() % 2, 1);
        let regular = ctx.elements().find(|&v| !v.is_zero() && h.stabilizer_is_trivial(v));
        prop_assume!(regular.is_some());
        let spec = WreathSpec { ctx: ctx.clone(), inner_gens: gens, m: 1, top_gens: vec![] };
        let w = sign_trick_witness(&spec, &[regular.unwrap()], (&[1], &[]), Caps::default()).unwrap();
        prop_assert!(w.assignment.pairing_holds(&ctx));
    }

    /// Block-diagonal core `N = H^m` of odd order: p-regular orbits for all p force a
    /// regular orbit.
    #[test]
    fn odd_block_core_property(i in 0usize..3, m in 1usize..4, raw in proptest::collection::vec((0u32..6, 0u64..10_000), 1..3)) {
        let odd = [(3u64, 1u32, 3u32), (7, 1, 1), (13, 1, 1)];
        let (p, k, n) = odd[i];
        let ctx = Arc::new(make_field(p, k, n).unwrap());
        let inner: Vec<SemilinearMap> = raw
            .iter()
            .map(|&(t, a)| {
                let g = map(&ctx, t, a);
                g.pow(&ctx, orbitforge::arith::p_part(g.order(&ctx), 2))
            })
            .collect();
        let w = WreathAction::new(ctx.clone(), m).unwrap();
        let mut gens = Vec::new();
        for block in 0..m {
            for &h in &inner {
                let mut e = WreathElement::identity(m);
                e.parts[block] = h;
                gens.push(e);
            }
        }
        let core = Instance::new(w, gens, Caps::default()).unwrap();
        prop_assert_eq!(core.group_order() % 2, 1);
        let report = enumerate_orbits(&core, Caps::default(), 1).unwrap();
        if report.p_regular.values().all(|&b| b) {
            prop_assert!(report.regular);
        }
    }
}

#[test]
fn minus_identity_fixes_only_zero() {
    let m = PrimeMatrix::scalar(2, 7, 6);
    let inst = Instance::new(MatrixAction::new(2, 7), vec![m], Caps::default()).unwrap();
    let report = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
    assert_eq!(report.orbit_lengths[0], 1);
    assert!(report.orbit_lengths[1..].iter().all(|&l| l == 2));
}

#[test]
fn redundant_identity_generator_keeps_action_faithful() {
    let ctx = Arc::new(make_field(2, 1, 2).unwrap());
    let w = WreathAction::new(ctx.clone(), 2).unwrap();
    // the block swap squared is the identity
    let swap = WreathElement::top(Perm::cycle(2));
    let trivial = w.compose(&swap, &swap);
    let inst = Instance::new(w, vec![swap, trivial.clone()], Caps::default()).unwrap();
    let f = orbitforge::action::is_faithful(&inst, Caps::default()).unwrap();
    assert!(f.faithful);
    assert_eq!(f.kernel, vec![trivial]);
}
