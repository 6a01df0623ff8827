//! Small integer helpers shared by the permutation and group code.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn prime_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && prime_part(n, p) == n
}

/// Exponent `e` with `x^e` equal to the `p`-part of an element of order `order`:
/// `e ≡ 1 (mod p^a)` and `e ≡ 0 (mod order / p^a)`.
pub fn prime_part_exponent(order: u64, p: u64) -> u64 {
    let pa = prime_part(order, p);
    if pa == 1 {
        return 0;
    }
    let m = order / pa;
    let inv = mod_inverse(m % pa, pa);
    (m * inv) % order
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i128) as u64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Exponent of `p` in `n!` (Legendre).
pub fn factorial_prime_exponent(n: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q as u32;
        q /= p;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1451520), vec![(2, 9), (3, 4), (5, 1), (7, 1)]);
    }

    #[test]
    fn part_exponents() {
        assert_eq!(prime_part_exponent(6, 2), 3);
        assert_eq!(prime_part_exponent(6, 3), 4);
        assert_eq!(prime_part_exponent(5, 2), 0);
        assert_eq!(prime_part_exponent(8, 2), 1);
        for order in 1..200u64 {
            for &(p, _) in &factorize(order) {
                let e = prime_part_exponent(order, p);
                let pa = prime_part(order, p);
                assert_eq!(e % pa, 1 % pa);
                assert_eq!(e % (order / pa), 0);
            }
        }
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_prime_exponent(4, 2), 3);
        assert_eq!(factorial_prime_exponent(10, 3), 4);
    }
}
