use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Action, Caps, Instance};
use crate::arith::{gcd, prime_divisors};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub length: u64,
    /// Smallest point index in the orbit.
    pub rep: u64,
    pub stab_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub group_order: u64,
    pub orbit_lengths: Vec<u64>,
    pub regular: bool,
    /// For each prime dividing the group order, whether some orbit is p-regular.
    pub p_regular: BTreeMap<u64, bool>,
    /// Sorted by `(length, rep)`.
    pub orbits: Vec<OrbitSummary>,
}

impl OrbitReport {
    pub fn from_orbits(group_order: u64, mut raw: Vec<(u64, u64)>) -> Self {
        raw.sort_unstable();
        let orbits: Vec<OrbitSummary> = raw
            .into_iter()
            .map(|(length, rep)| OrbitSummary { length, rep, stab_order: group_order / length })
            .collect();
        let orbit_lengths = orbits.iter().map(|o| o.length).collect();
        let regular = orbits.iter().any(|o| o.stab_order == 1);
        let p_regular = prime_divisors(group_order)
            .into_iter()
            .map(|p| (p, orbits.iter().any(|o| o.stab_order % p != 0)))
            .collect();
        OrbitReport { group_order, orbit_lengths, regular, p_regular, orbits }
    }

    pub fn point_count(&self) -> u64 {
        self.orbit_lengths.iter().sum()
    }

    /// The orbit containing the given representative.
    pub fn orbit_with_rep(&self, rep: u64) -> Option<&OrbitSummary> {
        self.orbits.iter().find(|o| o.rep == rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("orbit report serializes")
    }
}

/// Whether some orbit has stabilizer order coprime to `p`. Vacuously true when `p` does not
/// divide the group order.
pub fn has_p_regular_orbit(report: &OrbitReport, p: u64) -> bool {
    if report.group_order % p != 0 {
        return true;
    }
    report.orbits.iter().any(|o| gcd(o.stab_order, p) == 1)
}

/// Orbits of the group on all points. With one worker this is a breadth-first sweep over
/// ascending seeds; with more, generator images are computed in parallel and merged with a
/// union-find. Both give the same canonically sorted report.
pub fn enumerate_orbits<A: Action>(
    instance: &Instance<A>,
    caps: Caps,
    workers: usize,
) -> Result<OrbitReport> {
    let points = instance.point_count();
    if points > caps.points || points > u32::MAX as u64 {
        return Err(Error::PointCapExceeded { points, cap: caps.points });
    }
    let raw = if workers <= 1 {
        bfs_orbits(instance)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| union_find_orbits(instance))
    };
    let report = OrbitReport::from_orbits(instance.group_order(), raw);
    debug_assert_eq!(report.point_count(), points);
    Ok(report)
}

fn bfs_orbits<A: Action>(instance: &Instance<A>) -> Vec<(u64, u64)> {
    let n = instance.point_count() as usize;
    let action = instance.action();
    let gens = instance.generators();
    let mut visited = vec![false; n];
    let mut queue: Vec<u32> = Vec::new();
    let mut out = Vec::new();
    for seed in 0..n {
        if visited[seed] {
            continue;
        }
        visited[seed] = true;
        queue.clear();
        queue.push(seed as u32);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as u64;
            head += 1;
            for g in gens {
                let y = action.apply(g, x) as usize;
                if !visited[y] {
                    visited[y] = true;
                    queue.push(y as u32);
                }
            }
        }
        out.push((queue.len() as u64, seed as u64));
    }
    out
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union_find_orbits<A: Action>(instance: &Instance<A>) -> Vec<(u64, u64)> {
    let n = instance.point_count() as usize;
    let action = instance.action();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for g in instance.generators() {
        let images: Vec<u32> = (0..n as u64)
            .into_par_iter()
            .map(|x| action.apply(g, x) as u32)
            .collect();
        for (x, &y) in images.iter().enumerate() {
            let (a, b) = (find(&mut parent, x as u32), find(&mut parent, y));
            if a != b {
                // the smaller index stays root, so roots are orbit minima
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut counts = vec![0u64; n];
    for x in 0..n as u32 {
        let r = find(&mut parent, x);
        counts[r as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(r, c)| (c, r as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::action::{MatrixAction, SemilinearAction, WreathAction};
    use crate::field::make_field;
    use crate::semilinear::SemilinearMap;

    #[test]
    fn trivial_group_on_plane() {
        // GF(4)^2 as two blocks
        let ctx = Arc::new(make_field(2, 1, 2).unwrap());
        let inst = Instance::new(WreathAction::new(ctx, 2).unwrap(), vec![], Caps::default()).unwrap();
        let r = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
        assert_eq!(r.orbit_lengths, vec![1; 16]);
        assert!(r.regular);
        assert!(r.p_regular.is_empty());
        let inst = Instance::new(MatrixAction::new(2, 3), vec![], Caps::default()).unwrap();
        assert_eq!(enumerate_orbits(&inst, Caps::default(), 2).unwrap().orbit_lengths, vec![1; 9]);
    }

    #[test]
    fn multiplications_of_gf9() {
        let ctx = Arc::new(make_field(3, 1, 2).unwrap());
        let g = SemilinearMap::multiplication(&ctx, 1);
        let inst = Instance::new(SemilinearAction::new(ctx), vec![g], Caps::default()).unwrap();
        let r = enumerate_orbits(&inst, Caps::default(), 1).unwrap();
        assert_eq!(r.orbit_lengths, vec![1, 8]);
        assert!(r.regular);
        assert_eq!(r, enumerate_orbits(&inst, Caps::default(), 4).unwrap());
        assert!(has_p_regular_orbit(&r, 2));
        assert!(has_p_regular_orbit(&r, 5));
    }

    #[test]
    fn point_cap() {
        let ctx = Arc::new(make_field(3, 1, 2).unwrap());
        let inst = Instance::new(SemilinearAction::new(ctx), vec![], Caps::default()).unwrap();
        let caps = Caps { points: 8, ..Caps::default() };
        assert!(matches!(enumerate_orbits(&inst, caps, 1), Err(Error::PointCapExceeded { .. })));
    }

    #[test]
    fn json_shape() {
        let r = OrbitReport::from_orbits(6, vec![(3, 1), (1, 0), (6, 4)]);
        assert_eq!(
            r.to_json(),
            r#"{"group_order":6,"orbit_lengths":[1,3,6],"regular":true,"p_regular":{"2":true,"3":true},"orbits":[{"length":1,"rep":0,"stab_order":6},{"length":3,"rep":1,"stab_order":2},{"length":6,"rep":4,"stab_order":1}]}"#
        );
    }
}
