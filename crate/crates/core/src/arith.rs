//! Small integer helpers: primality, factorization, modular arithmetic.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The `p`-part of `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact integer power, `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest `x` in `[0, m)` with `a·x ≡ c (mod m)`, if any.
pub fn solve_linear_congruence(a: u64, c: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let a = a % m;
    let c = c % m;
    let g = gcd(a, m);
    if c % g != 0 {
        return None;
    }
    let m_red = m / g;
    let (_, inv, _) = ext_gcd((a / g) as i128, m_red as i128);
    let inv = inv.rem_euclid(m_red as i128) as u64;
    // All solutions are x0 + k·m_red; x0 is the least one.
    Some(mul_mod(c / g, inv, m_red))
}

/// Multiplicative order of `a` modulo `m` given `a` is a unit and `group_order` is a multiple
/// of that order.
pub fn order_dividing(a: u64, m: u64, group_order: u64) -> u64 {
    let mut order = group_order;
    for (r, _) in factorize(group_order) {
        while order % r == 0 && pow_mod(a, order / r, m) == 1 {
            order /= r;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_primes() {
        assert_eq!(factorize(1152), vec![(2, 7), (3, 2)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_divisors(63), vec![3, 7]);
        assert!(is_prime(2) && is_prime(7) && is_prime(65537));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
        assert_eq!(p_part(1152, 2), 128);
        assert_eq!(p_part(1215, 5), 5);
    }

    #[test]
    fn congruence_solver_is_minimal() {
        for m in 1..40u64 {
            for a in 0..m {
                for c in 0..m {
                    let brute = (0..m).find(|x| (a * x) % m == c);
                    assert_eq!(solve_linear_congruence(a, c, m), brute, "a={a} c={c} m={m}");
                }
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(order_dividing(3, 11, 10), 5);
        assert_eq!(order_dividing(8, 11, 10), 10);
        assert_eq!(order_dividing(1, 11, 10), 1);
    }
}
