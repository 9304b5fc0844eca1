//! Permutation groups of small degree: top groups of wreath products and the power-set
//! regular-orbit scan.

use std::collections::HashSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted by the subset scan.
pub const SUBSET_SCAN_CAP: usize = 20;

/// A permutation of `{0, .., m-1}`, serialized 1-based as its one-line image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m as u32).collect())
    }

    /// `i -> i + 1 mod m`.
    pub fn cycle(m: usize) -> Self {
        Perm((0..m as u32).map(|i| (i + 1) % m as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x as usize >= m || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Schema(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    /// From a 1-based one-line image list such as `[2, 3, 1]`.
    pub fn from_one_line(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Schema("permutation images are 1-based".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    pub fn to_one_line(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn image_of_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.0[i];
        }
        out
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<u32>::deserialize(deserializer)?;
        Perm::from_one_line(&raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, crate::semilinear::DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Schema(format!(
                "generator {:?} has degree {} instead of {degree}",
                g.to_one_line(),
                g.degree()
            )));
        }
        let id = Perm::identity(degree);
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut elements = vec![id];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &generators {
                let y = x.after(g);
                if !seen.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(PermGroup { degree, generators, elements })
    }

    pub fn cyclic(m: usize) -> Self {
        let gens = if m > 1 { vec![Perm::cycle(m)] } else { vec![] };
        PermGroup::new(m, gens).expect("cyclic group closure")
    }

    /// Imprimitive wreath product `inner ≀ outer` on `inner.degree · outer.degree` points,
    /// point `(block b, position i)` numbered `b·inner.degree + i`.
    pub fn wreath(inner: &PermGroup, outer: &PermGroup) -> Result<Self> {
        let (a, b) = (inner.degree, outer.degree);
        let mut gens = Vec::new();
        for h in &inner.generators {
            let mut img: Vec<u32> = (0..(a * b) as u32).collect();
            for i in 0..a {
                img[i] = h.image(i) as u32;
            }
            gens.push(Perm(img));
        }
        for s in &outer.generators {
            let img = (0..a * b)
                .map(|x| (s.image(x / a) * a + x % a) as u32)
                .collect();
            gens.push(Perm(img));
        }
        PermGroup::new(a * b, gens)
    }

    /// `x -> a·x + b` on `Z_p` for `a` in the subgroup generated by `mult`.
    pub fn affine(p: usize, mult: usize) -> Result<Self> {
        let shift = Perm((0..p as u32).map(|x| (x + 1) % p as u32).collect());
        let scale = Perm::from_images((0..p).map(|x| ((x * mult) % p) as u32).collect())?;
        PermGroup::new(p, vec![shift, scale])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).len() == self.degree
    }

    /// Order of the stabilizer of the subset given as a bitmask (bit `i` is point `i + 1`).
    pub fn set_stabilizer_order(&self, mask: u64) -> u64 {
        self.elements.iter().filter(|g| g.image_of_mask(mask) == mask).count() as u64
    }

    fn stabilizer_is_trivial(&self, mask: u64) -> bool {
        self.elements
            .iter()
            .all(|g| g.is_identity() || g.image_of_mask(mask) != mask)
    }

    /// Smallest subset in binary-encoding order whose set-stabilizer is trivial, as a
    /// bitmask.
    pub fn first_regular_subset(&self, skip_empty: bool) -> Result<Option<u64>> {
        if self.degree > SUBSET_SCAN_CAP {
            return Err(Error::DegreeCapExceeded { degree: self.degree, cap: SUBSET_SCAN_CAP });
        }
        let start = u64::from(skip_empty);
        Ok((start..1u64 << self.degree).find(|&mask| self.stabilizer_is_trivial(mask)))
    }
}

pub fn mask_to_points(mask: u64, degree: usize) -> Vec<usize> {
    (0..degree).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn is_transitive(group: &PermGroup) -> bool {
    group.is_transitive()
}

/// The smallest subset (1-based points) with trivial set-stabilizer, if any.
pub fn power_set_regular_orbit(group: &PermGroup) -> Result<Option<Vec<usize>>> {
    Ok(group
        .first_regular_subset(false)?
        .map(|mask| mask_to_points(mask, group.degree())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u32]) -> Perm {
        Perm::from_one_line(images).unwrap()
    }

    #[test]
    fn composition_and_inverse() {
        let c = perm(&[2, 3, 1]);
        assert_eq!(c.after(&c).after(&c), Perm::identity(3));
        assert_eq!(c.after(&c.inverse()), Perm::identity(3));
        let t = perm(&[2, 1, 3]);
        // apply t first: 1 -> 2 -> 3
        assert_eq!(c.after(&t).image(0), 2);
        assert!(Perm::from_one_line(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
    }

    #[test]
    fn transitivity() {
        assert!(PermGroup::cyclic(5).is_transitive());
        let g = PermGroup::new(3, vec![perm(&[2, 1, 3])]).unwrap();
        assert!(!g.is_transitive());
        let w = PermGroup::wreath(&PermGroup::cyclic(3), &PermGroup::cyclic(3)).unwrap();
        assert_eq!(w.order(), 81);
        assert!(w.is_transitive());
    }

    #[test]
    fn power_set_examples() {
        assert_eq!(power_set_regular_orbit(&PermGroup::cyclic(3)).unwrap(), Some(vec![1]));
        assert_eq!(power_set_regular_orbit(&PermGroup::cyclic(5)).unwrap(), Some(vec![1]));
        let s3 = PermGroup::new(3, vec![perm(&[2, 3, 1]), perm(&[2, 1, 3])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(power_set_regular_orbit(&s3).unwrap(), None);
        let w = PermGroup::wreath(&PermGroup::cyclic(3), &PermGroup::cyclic(3)).unwrap();
        let subset = power_set_regular_orbit(&w).unwrap().unwrap();
        let mask = subset.iter().fold(0u64, |m, &i| m | 1 << (i - 1));
        assert_eq!(w.set_stabilizer_order(mask), 1);
        let big = PermGroup::cyclic(21);
        assert!(matches!(power_set_regular_orbit(&big), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn one_line_wire_format() {
        let json = serde_json::to_string(&Perm::cycle(3)).unwrap();
        assert_eq!(json, "[2,3,1]");
        let back: Perm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Perm::cycle(3));
    }
}
