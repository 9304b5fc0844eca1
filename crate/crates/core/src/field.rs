//! Finite fields `GF(q^n)` with `q = p^k`, stored as discrete-log tables.
//!
//! Every nonzero element is kept as its exponent with respect to a fixed primitive
//! element `g`, so multiplication is exponent addition mod `q^n - 1` and the Frobenius
//! `x -> x^{q^t}` is exponent multiplication by `q^t`. Addition goes through a Zech
//! logarithm table. The additive ("vector") view of an element is its coefficient list
//! in the polynomial basis `1, x, ..., x^{kn-1}` packed base `p`, low degree first.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, checked_pow, is_prime, pow_mod, prime_divisors};
use crate::error::{Error, Result};

pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

/// A field element: zero, or `g^e` with `e` reduced mod `q^n - 1`.
///
/// The derived order (`Zero` first, then ascending exponents) is the canonical order used
/// for minimal witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Zero,
    Exp(u32),
}

impl FieldElement {
    pub fn is_zero(self) -> bool {
        matches!(self, FieldElement::Zero)
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            FieldElement::Zero => None,
            FieldElement::Exp(e) => Some(e),
        }
    }

    /// Wire encoding: `-1` for zero, otherwise the exponent.
    pub fn to_wire(self) -> i64 {
        match self {
            FieldElement::Zero => -1,
            FieldElement::Exp(e) => e as i64,
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.to_wire())
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = i64::deserialize(deserializer)?;
        match raw {
            -1 => Ok(FieldElement::Zero),
            e if e >= 0 && e <= u32::MAX as i64 => Ok(FieldElement::Exp(e as u32)),
            other => Err(serde::de::Error::custom(format!("invalid field element {other}"))),
        }
    }
}

/// `{"p": .., "k": .., "n": ..}` as it appears in group-spec files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub k: u32,
    pub n: u32,
}

pub struct FieldContext {
    p: u64,
    k: u32,
    n: u32,
    q: u64,
    size: u64,
    /// Coefficients `c_0..c_{kn}` of the monic primitive polynomial.
    poly: Vec<u64>,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
    zech: Vec<u32>,
    /// `q^t mod (q^n - 1)` for `t` in `0..n`.
    q_pows: Vec<u64>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("n", &self.n)
            .field("poly", &self.poly)
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.n == other.n
    }
}

impl Eq for FieldContext {}

pub fn make_field(p: u64, k: u32, n: u32) -> Result<FieldContext> {
    FieldContext::with_cap(p, k, n, DEFAULT_FIELD_CAP)
}

impl FieldContext {
    pub fn new(params: FieldParams) -> Result<Self> {
        make_field(params.p, params.k, params.n)
    }

    pub fn with_cap(p: u64, k: u32, n: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!("k = {k}, n = {n} must be positive")));
        }
        let degree = k
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidParameter("degree overflow".into()))?;
        let size = match checked_pow(p, degree) {
            Some(s) if s <= cap => s,
            _ => {
                return Err(Error::SizeCapExceeded {
                    size: (p as u128).saturating_pow(degree),
                    cap,
                })
            }
        };
        let q = p.pow(k);
        let poly = smallest_primitive_polynomial(p, degree)
            .ok_or(Error::NoPrimitivePolynomial { p, degree })?;

        let m = size - 1;
        let d = degree as usize;
        let mut exp_table = vec![0u32; m as usize];
        let mut log_table = vec![NONE; size as usize];
        let mut digits = vec![0u64; d];
        digits[0] = 1;
        for e in 0..m as usize {
            let packed = pack(&digits, p);
            if log_table[packed as usize] != NONE {
                return Err(Error::NoPrimitivePolynomial { p, degree });
            }
            exp_table[e] = packed;
            log_table[packed as usize] = e as u32;
            // multiply by x modulo the polynomial
            let lead = digits[d - 1];
            for i in (1..d).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if lead != 0 {
                for (i, digit) in digits.iter_mut().enumerate() {
                    *digit = (*digit + lead * (p - poly[i])) % p;
                }
            }
        }
        let zech = exp_table
            .iter()
            .map(|&v| {
                let d0 = v as u64 % p;
                let plus_one = v as u64 - d0 + (d0 + 1) % p;
                if plus_one == 0 {
                    NONE
                } else {
                    log_table[plus_one as usize]
                }
            })
            .collect();
        let q_pows = (0..n).map(|t| pow_mod(q, t as u64, m.max(1))).collect();
        Ok(FieldContext { p, k, n, q, size, poly, exp_table, log_table, zech, q_pows })
    }

    pub fn params(&self) -> FieldParams {
        FieldParams { p: self.p, k: self.k, n: self.n }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements, `q^n`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Order of the multiplicative group, `q^n - 1`.
    pub fn mult_order(&self) -> u64 {
        self.size - 1
    }

    /// Dimension over the prime field, `k·n`.
    pub fn degree(&self) -> u32 {
        self.k * self.n
    }

    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp_table
    }

    pub fn log_table(&self) -> &[u32] {
        &self.log_table
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::Exp(0)
    }

    pub fn primitive(&self) -> FieldElement {
        self.exp(1)
    }

    /// `g^e` for any integer exponent.
    pub fn exp(&self, e: i64) -> FieldElement {
        let m = self.mult_order() as i64;
        FieldElement::Exp(e.rem_euclid(m) as u32)
    }

    /// Checks that an element is in range for this context.
    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        match x {
            FieldElement::Exp(e) if e as u64 >= self.mult_order() => Err(Error::ContextMismatch(
                format!("exponent {e} out of range for GF({})", self.size),
            )),
            _ => Ok(x),
        }
    }

    pub fn to_vector(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(e) => self.exp_table[e as usize],
        }
    }

    pub fn from_vector(&self, v: u32) -> FieldElement {
        if v == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(self.log_table[v as usize])
        }
    }

    /// The prime-field element with integer value `value mod p`.
    pub fn from_int(&self, value: i64) -> FieldElement {
        self.from_vector(value.rem_euclid(self.p as i64) as u32)
    }

    /// Point code used for vector indexing: `0` for zero, `e + 1` otherwise.
    pub fn code(&self, x: FieldElement) -> u64 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(e) => e as u64 + 1,
        }
    }

    pub fn from_code(&self, code: u64) -> FieldElement {
        if code == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp((code - 1) as u32)
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        std::iter::once(FieldElement::Zero)
            .chain((0..self.mult_order() as u32).map(FieldElement::Exp))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Exp(x), FieldElement::Exp(y)) => {
                FieldElement::Exp(((x as u64 + y as u64) % self.mult_order()) as u32)
            }
            _ => FieldElement::Zero,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match a {
            FieldElement::Zero => Err(Error::ZeroInput),
            FieldElement::Exp(x) => Ok(self.exp(-(x as i64))),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        match a {
            FieldElement::Zero if e == 0 => self.one(),
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(x) => {
                FieldElement::Exp(arith::mul_mod(x as u64, e, self.mult_order()) as u32)
            }
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Zero, y) | (y, FieldElement::Zero) => y,
            (FieldElement::Exp(x), FieldElement::Exp(y)) => {
                let m = self.mult_order();
                let diff = (y as u64 + m - x as u64) % m;
                match self.zech[diff as usize] {
                    NONE => FieldElement::Zero,
                    z => FieldElement::Exp(((x as u64 + z as u64) % m) as u32),
                }
            }
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(x) if self.p == 2 => FieldElement::Exp(x),
            FieldElement::Exp(x) => {
                let m = self.mult_order();
                FieldElement::Exp(((x as u64 + m / 2) % m) as u32)
            }
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// `q^t mod (q^n - 1)`, `t` taken mod `n`.
    pub fn q_pow(&self, t: u32) -> u64 {
        self.q_pows[(t % self.n) as usize]
    }

    /// The Frobenius power `x -> x^{q^t}`.
    pub fn frobenius(&self, x: FieldElement, t: u32) -> FieldElement {
        match x {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Exp(e) => FieldElement::Exp(
                arith::mul_mod(e as u64, self.q_pow(t), self.mult_order()) as u32,
            ),
        }
    }

    /// Whether `x` lies in the subfield `GF(q^d)`, `d | n`.
    pub fn in_subfield(&self, x: FieldElement, d: u32) -> bool {
        match x {
            FieldElement::Zero => true,
            FieldElement::Exp(e) => {
                let sub = self.q.pow(d) - 1;
                (e as u64) % (self.mult_order() / sub) == 0
            }
        }
    }

    fn check_galois_prime(&self, s: u64) -> Result<u32> {
        if !is_prime(s) {
            return Err(Error::NonPrime(s));
        }
        if self.n as u64 % s != 0 {
            return Err(Error::SNotDividingN { s, n: self.n });
        }
        Ok(self.n / s as u32)
    }

    /// `q^{n/s} - 1`, the order of the fixed field of the order-`s` Galois subgroup minus one.
    pub fn fixed_field_units(&self, s: u64) -> Result<u64> {
        let step = self.check_galois_prime(s)?;
        Ok(self.q.pow(step) - 1)
    }

    /// Norm `N_σ(y) = y · σ(y) ··· σ^{s-1}(y)` for `σ: x -> x^{q^{n/s}}`.
    pub fn norm_map(&self, s: u64, y: FieldElement) -> Result<FieldElement> {
        let fixed = self.fixed_field_units(s)?;
        let e = match self.check(y)? {
            FieldElement::Zero => return Err(Error::ZeroInput),
            FieldElement::Exp(e) => e as u64,
        };
        let v = self.mult_order() / fixed;
        Ok(FieldElement::Exp(arith::mul_mod(e, v, self.mult_order()) as u32))
    }
}

pub fn norm_map(ctx: &FieldContext, s: u64, y: FieldElement) -> Result<FieldElement> {
    ctx.norm_map(s, y)
}

fn pack(digits: &[u64], p: u64) -> u32 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..d {
            prod[i - d + j] = (prod[i - d + j] + c * (p - f[j])) % p;
        }
    }
    prod.truncate(d);
    prod
}

fn poly_pow_x(exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut base = vec![0u64; d];
    if d == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u64; d];
    acc[0] = 1;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// Whether the residue class of `x` has order `p^deg - 1` modulo the monic `f`.
pub fn is_primitive_polynomial(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 || f[0] == 0 {
        return false;
    }
    let order = p.pow(d as u32) - 1;
    let mut one = vec![0u64; d];
    one[0] = 1;
    if poly_pow_x(order, f, p) != one {
        return false;
    }
    prime_divisors(order)
        .into_iter()
        .all(|r| poly_pow_x(order / r, f, p) != one)
}

/// Lexicographically smallest monic primitive polynomial of the given degree, comparing
/// coefficients from the constant term upward. Returned low degree first, including the
/// leading 1.
pub fn smallest_primitive_polynomial(p: u64, degree: u32) -> Option<Vec<u64>> {
    let d = degree as usize;
    let total = checked_pow(p, degree)?;
    let mut f = vec![0u64; d + 1];
    f[d] = 1;
    for idx in 0..total {
        // c_0 is the most significant digit of idx
        let mut rest = idx;
        for j in (0..d).rev() {
            f[j] = rest % p;
            rest /= p;
        }
        if is_primitive_polynomial(&f, p) {
            return Some(f);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_norm(ctx: &FieldContext, s: u64, y: FieldElement) -> FieldElement {
        let step = ctx.n() / s as u32;
        (0..s as u32).fold(ctx.one(), |acc, i| ctx.mul(acc, ctx.frobenius(y, step * i)))
    }

    #[test]
    fn gf4_basics() {
        let ctx = make_field(2, 1, 2).unwrap();
        assert_eq!(ctx.size(), 4);
        assert_eq!(ctx.mult_order(), 3);
        assert_eq!(ctx.poly(), &[1, 1, 1]);
        let g = ctx.primitive();
        assert_eq!(ctx.pow(g, 3), ctx.one());
        // g^2 = g + 1
        assert_eq!(ctx.add(g, ctx.one()), ctx.pow(g, 2));
    }

    #[test]
    fn gf49_and_gf81_round_trip() {
        let ctx = make_field(7, 1, 2).unwrap();
        assert_eq!(ctx.size(), 49);
        let ctx = make_field(3, 1, 4).unwrap();
        assert_eq!(ctx.size(), 81);
        for e in 0..80u32 {
            let x = FieldElement::Exp(e);
            assert_eq!(ctx.from_vector(ctx.to_vector(x)), x);
        }
        let mut seen: Vec<u32> = (0..80).map(|e| ctx.to_vector(FieldElement::Exp(e))).collect();
        seen.sort_unstable();
        assert_eq!(seen, (1..81).collect::<Vec<_>>());
    }

    #[test]
    fn primitive_polynomials_are_lexicographically_first() {
        // brute force: enumerate monic polys in the same order and test the order of x
        // directly by repeated multiplication.
        for (p, d) in [(2u64, 3u32), (2, 4), (3, 2), (5, 2), (3, 3), (7, 1), (11, 1)] {
            let found = smallest_primitive_polynomial(p, d).unwrap();
            let total = p.pow(d);
            let mut first = None;
            for idx in 0..total {
                let mut f = vec![0u64; d as usize + 1];
                f[d as usize] = 1;
                let mut rest = idx;
                for j in (0..d as usize).rev() {
                    f[j] = rest % p;
                    rest /= p;
                }
                if f[0] == 0 {
                    continue;
                }
                // order of x by stepping
                let mut one = vec![0u64; d as usize];
                one[0] = 1;
                let x = poly_pow_x(1, &f, p);
                let mut cur = x.clone();
                let mut order = 1;
                while cur != one && order <= total {
                    cur = poly_mul_mod(&cur, &x, &f, p);
                    order += 1;
                }
                if order == total - 1 {
                    first = Some(f);
                    break;
                }
            }
            assert_eq!(Some(found), first, "p={p} d={d}");
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        for (p, k, n) in [(2, 1, 4), (3, 1, 2), (2, 2, 3), (5, 1, 2), (3, 2, 2)] {
            let ctx = make_field(p, k, n).unwrap();
            let m = ctx.mult_order();
            let g = ctx.primitive();
            assert_eq!(ctx.pow(g, m), ctx.one());
            for d in 1..m {
                if m % d == 0 {
                    assert_ne!(ctx.pow(g, d), ctx.one());
                }
            }
        }
    }

    #[test]
    fn addition_matches_vector_arithmetic() {
        let ctx = make_field(3, 1, 3).unwrap();
        let p = ctx.p() as u32;
        for a in ctx.elements() {
            for b in ctx.elements() {
                let (mut va, mut vb) = (ctx.to_vector(a), ctx.to_vector(b));
                let mut sum = 0u32;
                let mut place = 1u32;
                for _ in 0..3 {
                    sum += ((va % p + vb % p) % p) * place;
                    va /= p;
                    vb /= p;
                    place *= p;
                }
                assert_eq!(ctx.to_vector(ctx.add(a, b)), sum);
            }
            assert_eq!(ctx.add(a, ctx.neg(a)), FieldElement::Zero);
        }
    }

    #[test]
    fn frobenius_fixes_base_field_and_has_order_n() {
        for (p, k, n) in [(2, 1, 4), (2, 2, 3), (3, 1, 4), (5, 1, 2)] {
            let ctx = make_field(p, k, n).unwrap();
            let fixed = ctx.elements().filter(|&x| ctx.frobenius(x, 1) == x).count();
            assert_eq!(fixed as u64, ctx.q());
            for x in ctx.elements() {
                let mut y = x;
                for _ in 0..n {
                    y = ctx.frobenius(y, 1);
                }
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn norm_examples() {
        let gf4 = make_field(2, 1, 2).unwrap();
        assert_eq!(gf4.norm_map(2, gf4.primitive()).unwrap(), gf4.one());

        let gf9 = make_field(3, 1, 2).unwrap();
        let n = gf9.norm_map(2, gf9.primitive()).unwrap();
        assert_eq!(n, FieldElement::Exp(4));
        assert_eq!(n, brute_norm(&gf9, 2, gf9.primitive()));
        assert_eq!(n, gf9.from_int(-1));

        let gf81 = make_field(3, 1, 4).unwrap();
        let n = gf81.norm_map(2, gf81.primitive()).unwrap();
        assert_eq!(n, FieldElement::Exp(10));
        assert_eq!(gf81.frobenius(n, 2), n);
        assert!(gf81.in_subfield(n, 2));
    }

    #[test]
    fn norm_errors() {
        let ctx = make_field(2, 1, 4).unwrap();
        assert_eq!(ctx.norm_map(2, FieldElement::Zero), Err(Error::ZeroInput));
        assert_eq!(ctx.norm_map(3, ctx.one()), Err(Error::SNotDividingN { s: 3, n: 4 }));
        assert_eq!(ctx.norm_map(4, ctx.one()), Err(Error::NonPrime(4)));
    }

    #[test]
    fn norm_is_multiplicative_and_equidistributed() {
        for (p, k, n, s) in [(2, 1, 4, 2), (3, 1, 4, 2), (2, 1, 6, 3), (2, 2, 3, 3), (2, 1, 12, 2)] {
            let ctx = make_field(p, k, n).unwrap();
            let m = ctx.mult_order();
            let fixed = ctx.fixed_field_units(s).unwrap();
            let mut fibers = std::collections::HashMap::new();
            for e in 0..m as u32 {
                let y = FieldElement::Exp(e);
                let ny = ctx.norm_map(s, y).unwrap();
                assert!(ctx.in_subfield(ny, n / s as u32));
                *fibers.entry(ny).or_insert(0u64) += 1;
            }
            assert_eq!(fibers.len() as u64, fixed);
            assert!(fibers.values().all(|&c| c == m / fixed));
            if m <= 255 {
                for a in 0..m as u32 {
                    for b in 0..m as u32 {
                        let (x, y) = (FieldElement::Exp(a), FieldElement::Exp(b));
                        assert_eq!(
                            ctx.norm_map(s, ctx.mul(x, y)).unwrap(),
                            ctx.mul(ctx.norm_map(s, x).unwrap(), ctx.norm_map(s, y).unwrap())
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, 2).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(make_field(2, 1, 25), Err(Error::SizeCapExceeded { .. })));
        assert!(matches!(make_field(3, 0, 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn wire_encoding() {
        let json = serde_json::to_string(&[FieldElement::Zero, FieldElement::Exp(5)]).unwrap();
        assert_eq!(json, "[-1,5]");
        let back: Vec<FieldElement> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![FieldElement::Zero, FieldElement::Exp(5)]);
        assert!(serde_json::from_str::<FieldElement>("-2").is_err());
    }
}
