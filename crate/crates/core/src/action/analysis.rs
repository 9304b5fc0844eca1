use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{enumerate_orbits, Action, Caps, Instance, OrbitReport};
use crate::error::Result;
use crate::linalg::{EchelonBasis, PrimeMatrix};

#[derive(Debug, Clone)]
pub struct Faithfulness<E> {
    pub faithful: bool,
    /// Elements acting trivially on every vector.
    pub kernel: Vec<E>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulnessReport {
    pub faithful: bool,
    pub kernel_order: u64,
}

impl<E> Faithfulness<E> {
    pub fn summary(&self) -> FaithfulnessReport {
        FaithfulnessReport { faithful: self.faithful, kernel_order: self.kernel.len() as u64 }
    }
}

/// The kernel of the action. All backends act linearly over the prime field, so an element
/// is in the kernel iff it fixes each coordinate basis vector.
pub fn is_faithful<A: Action>(instance: &Instance<A>, caps: Caps) -> Result<Faithfulness<A::Element>> {
    let action = instance.action();
    let d = action.dimension();
    let basis: Vec<u64> = (0..d)
        .map(|j| {
            let mut e = vec![0u32; d];
            e[j] = 1;
            action.point(&e)
        })
        .collect();
    let kernel: Vec<A::Element> = instance
        .elements(caps.elements)?
        .into_iter()
        .filter(|g| basis.iter().all(|&b| action.apply(g, b) == b))
        .collect();
    Ok(Faithfulness { faithful: kernel.len() == 1, kernel })
}

/// Dimension of the smallest subspace containing `v` and invariant under `gens`.
pub fn spin_dimension(gens: &[PrimeMatrix], p: u32, v: Vec<u32>) -> usize {
    let mut basis = EchelonBasis::new(p);
    if !basis.insert(v.clone()) {
        return 0;
    }
    let mut queue = vec![v];
    while let Some(w) = queue.pop() {
        for g in gens {
            let u = g.apply(&w);
            if basis.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    basis.len()
}

/// Spinning test on the prime-field matrix realization: the module is irreducible iff every
/// nonzero vector spins up to the whole space. Spin dimensions are constant on orbits, so one
/// representative per orbit suffices; `orbit_reps` may supply them.
pub fn is_irreducible<A: Action>(
    instance: &Instance<A>,
    orbit_reps: Option<&[u64]>,
    caps: Caps,
) -> Result<bool> {
    let action = instance.action();
    let d = action.dimension();
    let p = action.prime() as u32;
    let matrices = instance.to_matrix_instance();
    let reps: Vec<u64> = match orbit_reps {
        Some(r) => r.to_vec(),
        None => enumerate_orbits(instance, caps, 1)?.orbits.iter().map(|o| o.rep).collect(),
    };
    Ok(reps
        .into_iter()
        .filter(|&r| r != 0)
        .all(|r| spin_dimension(matrices.generators(), p, action.coords(r)) == d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZhangReport {
    pub group_order: u64,
    pub characteristic: u64,
    pub faithful: bool,
    pub irreducible: bool,
    pub primes: Vec<u64>,
    pub p_regular: BTreeMap<u64, bool>,
    pub regular_exists: bool,
    /// Faithful, irreducible, p-regular for every prime dividing the order, yet no regular
    /// orbit.
    pub is_zhang_counterexample: bool,
    pub order_odd: bool,
    pub characteristic_odd: bool,
    /// Odd order, odd characteristic, faithful and irreducible: a counterexample here would
    /// contradict the odd-order theorem.
    pub odd_order_hypotheses: bool,
}

impl ZhangReport {
    pub fn from_parts(
        report: &OrbitReport,
        characteristic: u64,
        faithful: bool,
        irreducible: bool,
    ) -> Self {
        let all_p_regular = report.p_regular.values().all(|&b| b);
        let order_odd = report.group_order % 2 == 1;
        let characteristic_odd = characteristic % 2 == 1;
        ZhangReport {
            group_order: report.group_order,
            characteristic,
            faithful,
            irreducible,
            primes: report.p_regular.keys().copied().collect(),
            p_regular: report.p_regular.clone(),
            regular_exists: report.regular,
            is_zhang_counterexample: faithful && irreducible && all_p_regular && !report.regular,
            order_odd,
            characteristic_odd,
            odd_order_hypotheses: faithful && irreducible && order_odd && characteristic_odd,
        }
    }

    pub fn contradicts_odd_order_theorem(&self) -> bool {
        self.odd_order_hypotheses && self.is_zhang_counterexample
    }
}

pub fn zhang_implication_report<A: Action>(
    instance: &Instance<A>,
    caps: Caps,
    workers: usize,
) -> Result<ZhangReport> {
    let report = enumerate_orbits(instance, caps, workers)?;
    let faithful = is_faithful(instance, caps)?.faithful;
    let reps: Vec<u64> = report.orbits.iter().map(|o| o.rep).collect();
    let irreducible = is_irreducible(instance, Some(&reps), caps)?;
    Ok(ZhangReport::from_parts(&report, instance.action().prime(), faithful, irreducible))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::action::{MatrixAction, SemilinearAction};
    use crate::field::make_field;
    use crate::semilinear::SemilinearMap;

    #[test]
    fn gf4_multiplication_on_gf2_squared_is_irreducible() {
        let ctx = Arc::new(make_field(2, 1, 2).unwrap());
        let g = SemilinearMap::multiplication(&ctx, 1);
        let inst = Instance::new(SemilinearAction::new(ctx), vec![g], Caps::default()).unwrap();
        assert!(is_irreducible(&inst, None, Caps::default()).unwrap());
        assert!(is_faithful(&inst, Caps::default()).unwrap().faithful);
    }

    #[test]
    fn identity_group_is_reducible() {
        let inst = Instance::new(MatrixAction::new(2, 3), vec![], Caps::default()).unwrap();
        assert!(!is_irreducible(&inst, None, Caps::default()).unwrap());
    }

    #[test]
    fn minus_identity_is_faithful() {
        let m = PrimeMatrix::scalar(2, 7, 6);
        let inst = Instance::new(MatrixAction::new(2, 7), vec![m], Caps::default()).unwrap();
        assert_eq!(inst.group_order(), 2);
        let f = is_faithful(&inst, Caps::default()).unwrap();
        assert!(f.faithful);
        assert_eq!(f.kernel, vec![PrimeMatrix::identity(2, 7)]);
    }

    #[test]
    fn semilinear_matrix_realization_preserves_orbits() {
        let ctx = Arc::new(make_field(2, 1, 4).unwrap());
        let gens = vec![SemilinearMap { twist: 1, scalar: 3 }, SemilinearMap::multiplication(&ctx, 5)];
        let inst = Instance::new(SemilinearAction::new(ctx), gens, Caps::default()).unwrap();
        let mat = inst.to_matrix_instance();
        let a = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
        let b = enumerate_orbits(&mat, Caps::default(), 1).unwrap();
        assert_eq!(a.orbit_lengths, b.orbit_lengths);
        assert_eq!(
            Instance::new(mat.action().clone(), mat.generators().to_vec(), Caps::default())
                .unwrap()
                .group_order(),
            inst.group_order()
        );
    }
}
