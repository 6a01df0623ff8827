//! Arithmetic in small finite fields GF(p^k), k ≤ 3.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of the code
//! are the coefficients of a polynomial in the generator `x`, constant term
//! first. The pinned moduli are `x²+x+1` for GF(4), `x³+x+1` for GF(8) and
//! `x²+1` for GF(9); other orders use the least monic irreducible.

use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SmallField {
    p: usize,
    k: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl SmallField {
    /// Largest supported order.
    pub const MAX_ORDER: usize = 4096;

    pub fn new(q: usize) -> Result<Self> {
        let factors = arith::factorize(q as u64);
        let &[(p, k)] = factors.as_slice() else {
            return Err(Error::UnsupportedParameter(format!("{q} is not a prime power")));
        };
        let (p, k) = (p as usize, k as usize);
        if k > 3 || q > Self::MAX_ORDER {
            return Err(Error::UnsupportedParameter(format!(
                "GF({q}) has extension degree {k}; only k <= 3 is supported"
            )));
        }
        let modulus = match q {
            4 => vec![1, 1, 1],
            8 => vec![1, 1, 0, 1],
            9 => vec![1, 0, 1],
            _ if k == 1 => vec![0, 1],
            _ => least_irreducible(p, k),
        };
        Ok(Self::with_modulus(p, k, &modulus))
    }

    fn with_modulus(p: usize, k: usize, modulus: &[usize]) -> Self {
        let q = p.pow(k as u32);
        let digits = |a: usize| -> Vec<usize> { (0..k).map(|i| a / p.pow(i as u32) % p).collect() };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u16;
                // Schoolbook product, then reduce by the monic modulus.
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, m) in modulus.iter().take(k).enumerate() {
                            prod[deg - k + i] = (prod[deg - k + i] + (p - c) * m) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = encode(&prod[..k]) as u16;
            }
        }
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u16;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Self { p, k, add, mul, neg, inv }
    }

    pub fn order(&self) -> usize {
        self.neg.len()
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: usize) -> usize {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }

    /// The least element (by code) of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> usize {
        let q = self.order();
        (1..q)
            .find(|&a| {
                let mut x = a;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul(x, a);
                    ord += 1;
                }
                ord == q - 1
            })
            .expect("finite field has a primitive element")
    }
}

fn least_irreducible(p: usize, k: usize) -> Vec<usize> {
    // Degree 2 and 3 polynomials are irreducible iff they have no roots.
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut coeffs: Vec<usize> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        coeffs.push(1);
        let has_root = (0..p).any(|x| {
            coeffs
                .iter()
                .rev()
                .fold(0, |acc, &c| (acc * x + c) % p)
                == 0
        });
        if !has_root {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial exists in every degree")
}
