//! Dense square matrices over a prime field `GF(p)`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeMatrix {
    dim: usize,
    p: u32,
    /// row-major, reduced mod p
    entries: Vec<u32>,
}

impl PrimeMatrix {
    pub fn new(dim: usize, p: u32, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Schema(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(PrimeMatrix { dim, p, entries })
    }

    /// From signed integers, reduced mod `p`.
    pub fn from_signed(dim: usize, p: u32, entries: &[i64]) -> Result<Self> {
        Self::new(dim, p, entries.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect())
    }

    pub fn identity(dim: usize, p: u32) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % p;
        }
        PrimeMatrix { dim, p, entries }
    }

    pub fn scalar(dim: usize, p: u32, c: u32) -> Self {
        let mut m = Self::identity(dim, p);
        for i in 0..dim {
            m.entries[i * dim + i] = c % p;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, columns: &[Vec<u32>]) -> Self {
        let dim = columns.len();
        let mut entries = vec![0; dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                entries[i * dim + j] = x % p;
            }
        }
        PrimeMatrix { dim, p, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &PrimeMatrix) -> PrimeMatrix {
        let d = self.dim;
        let p = self.p as u64;
        let mut entries = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0u64;
                for k in 0..d {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                entries[i * d + j] = (acc % p) as u32;
            }
        }
        PrimeMatrix { dim: d, p: self.p, entries }
    }

    /// `M·v` for a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.dim)
            .map(|i| {
                let acc: u64 = (0..self.dim).map(|k| self.get(i, k) as u64 * v[k] as u64).sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> PrimeMatrix {
        let mut acc = Self::identity(self.dim, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &PrimeMatrix) -> PrimeMatrix {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let p = self.p as u64;
        let mut entries = vec![0u32; d * d];
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j) as u64;
                for k in 0..b {
                    for l in 0..b {
                        entries[(i * b + k) * d + (j * b + l)] =
                            (x * other.get(k, l) as u64 % p) as u32;
                    }
                }
            }
        }
        PrimeMatrix { dim: d, p: self.p, entries }
    }

    pub fn inverse(&self) -> Option<PrimeMatrix> {
        let d = self.dim;
        let p = self.p as u64;
        let mut aug: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                let mut row: Vec<u64> = (0..d).map(|j| self.get(i, j) as u64).collect();
                row.extend((0..d).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, pivot);
            let inv = inv_mod(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..d {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in 0..2 * d {
                        aug[r][c] = (aug[r][c] + (p - f) * aug[col][c]) % p;
                    }
                }
            }
        }
        let entries = aug.iter().flat_map(|row| row[d..].iter().map(|&x| x as u32)).collect();
        Some(PrimeMatrix { dim: d, p: self.p, entries })
    }

    pub fn is_invertible(&self) -> bool {
        rank(self.p, (0..self.dim).map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec()).collect()) == self.dim
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Rank of a list of row vectors over `GF(p)`.
pub fn rank(p: u32, rows: Vec<Vec<u32>>) -> usize {
    let mut basis = EchelonBasis::new(p);
    for r in rows {
        basis.insert(r);
    }
    basis.len()
}

/// Incrementally maintained row-echelon basis of a subspace of `GF(p)^d`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    p: u64,
    /// (pivot column, normalized row)
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u32) -> Self {
        EchelonBasis { p: p as u64, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        for (pivot, row) in &self.rows {
            let f = w[*pivot];
            if f != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        w
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let mut w = self.reduce(&v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pivot], self.p);
        for x in w.iter_mut() {
            *x = *x * inv % self.p;
        }
        self.rows.push((pivot, w));
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.iter().map(|&x| x as u32).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_kron() {
        let a = PrimeMatrix::from_signed(2, 7, &[0, -1, 1, 0]).unwrap();
        let b = PrimeMatrix::from_signed(2, 7, &[2, 3, 3, -2]).unwrap();
        assert_eq!(a.mul(&a.inverse().unwrap()), PrimeMatrix::identity(2, 7));
        assert_eq!(b.mul(&b.inverse().unwrap()), PrimeMatrix::identity(2, 7));
        let i2 = PrimeMatrix::identity(2, 7);
        let left = a.kron(&i2).mul(&i2.kron(&b));
        assert_eq!(left, a.kron(&b));
        assert_eq!(i2.kron(&b).mul(&a.kron(&i2)), a.kron(&b));
        assert!(PrimeMatrix::from_signed(2, 7, &[1, 2, 2, 4]).unwrap().inverse().is_none());
        assert!(!PrimeMatrix::from_signed(2, 7, &[1, 2, 2, 4]).unwrap().is_invertible());
    }

    #[test]
    fn echelon_span() {
        let mut basis = EchelonBasis::new(3);
        assert!(basis.insert(vec![1, 2, 0]));
        assert!(!basis.insert(vec![2, 1, 0]));
        assert!(basis.insert(vec![0, 0, 1]));
        assert!(basis.contains(&[1, 2, 2]));
        assert!(!basis.contains(&[1, 0, 0]));
        assert_eq!(basis.len(), 2);
    }
}
