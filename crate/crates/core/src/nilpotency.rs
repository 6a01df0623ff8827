//! Pairwise nilpotency test for ⟨x, y⟩ without enumerating the subgroup.
//!
//! Write `x_p` for the `p`-part of `x`. Then ⟨x, y⟩ is nilpotent iff
//!
//! * `x_p` and `y_q` commute for all primes `p ≠ q`, and
//! * ⟨x_p, y_p⟩ is a `p`-group for every prime `p`.
//!
//! Under the first condition the groups ⟨x_p, y_p⟩ centralize each other, so
//! ⟨x, y⟩ is their direct product. The second condition is decided by a
//! closure that stops at the first element of non-`p`-power order or once
//! the `p`-part of the ambient order is exceeded.

use hashbrown::HashSet;

use crate::arith;
use crate::perm::{self, Permutation};

/// An element with its prime-power parts precomputed.
#[derive(Clone, Debug)]
pub struct PreparedElement {
    images: Vec<u8>,
    parts: Vec<(u64, Vec<u8>)>,
}

impl PreparedElement {
    pub fn new(x: &[u8]) -> Self {
        let mut scratch = Scratch::new(x.len());
        let order = scratch.load(x);
        let parts = arith::factorize(order)
            .into_iter()
            .map(|(p, _)| {
                let mut part = vec![0u8; x.len()];
                scratch.power_into(arith::prime_part_exponent(order, p), &mut part);
                (p, part)
            })
            .collect();
        Self {
            images: x.to_vec(),
            parts,
        }
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }
}

/// Reusable buffers for one worker.
#[derive(Clone, Debug)]
pub struct Scratch {
    flat: Vec<u8>,
    starts: Vec<u16>,
    seen: Vec<bool>,
    parts: Vec<(u64, Vec<u8>)>,
    a: Vec<u8>,
    b: Vec<u8>,
}

impl Scratch {
    pub fn new(degree: usize) -> Self {
        Self {
            flat: Vec::with_capacity(degree),
            starts: Vec::with_capacity(degree + 1),
            seen: vec![false; degree],
            parts: Vec::new(),
            a: vec![0; degree],
            b: vec![0; degree],
        }
    }

    /// Records the cycles of `y`; returns its order.
    fn load(&mut self, y: &[u8]) -> u64 {
        self.flat.clear();
        self.starts.clear();
        self.seen.clear();
        self.seen.resize(y.len(), false);
        let mut order = 1;
        for start in 0..y.len() {
            if self.seen[start] {
                continue;
            }
            self.starts.push(self.flat.len() as u16);
            let mut pt = start;
            while !self.seen[pt] {
                self.seen[pt] = true;
                self.flat.push(pt as u8);
                pt = y[pt] as usize;
            }
            let len = (self.flat.len() - *self.starts.last().unwrap() as usize) as u64;
            order = arith::lcm(order, len);
        }
        self.starts.push(self.flat.len() as u16);
        order
    }

    /// Writes `y^e` for the last loaded `y`.
    fn power_into(&self, e: u64, out: &mut [u8]) {
        for w in self.starts.windows(2) {
            let (s, t) = (w[0] as usize, w[1] as usize);
            let len = t - s;
            let shift = (e % len as u64) as usize;
            for k in 0..len {
                let mut j = k + shift;
                if j >= len {
                    j -= len;
                }
                out[self.flat[s + k] as usize] = self.flat[s + j];
            }
        }
    }
}

/// Decides nilpotency of 2-generated subgroups, optionally knowing the order
/// of a group containing them (which bounds the `p`-subgroup closures).
#[derive(Clone, Debug)]
pub struct NilpotencyTester {
    degree: usize,
    ambient_order: Option<u64>,
}

impl NilpotencyTester {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            ambient_order: None,
        }
    }

    pub fn within_group_of_order(degree: usize, order: u64) -> Self {
        Self {
            degree,
            ambient_order: Some(order),
        }
    }

    pub fn scratch(&self) -> Scratch {
        Scratch::new(self.degree)
    }

    fn p_subgroup_cap(&self, p: u64) -> u64 {
        match self.ambient_order {
            Some(n) => arith::prime_part(n, p),
            None => {
                let e = arith::factorial_prime_exponent(self.degree as u64, p);
                p.checked_pow(e).unwrap_or(u64::MAX)
            }
        }
    }

    /// Whether ⟨x, y⟩ is nilpotent.
    pub fn accepts(&self, x: &PreparedElement, y: &[u8], s: &mut Scratch) -> bool {
        if perm::commute(&x.images, y) {
            return true;
        }
        let order = s.load(y);
        let mut parts = std::mem::take(&mut s.parts);
        let mut used = 0;
        let mut ok = true;
        'primes: for (q, _) in arith::factorize(order) {
            if used == parts.len() {
                parts.push((0, vec![0u8; self.degree]));
            }
            let slot = &mut parts[used];
            slot.0 = q;
            s.power_into(arith::prime_part_exponent(order, q), &mut slot.1);
            for (p, xp) in &x.parts {
                if *p != q && !perm::commute(xp, &slot.1) {
                    ok = false;
                    break 'primes;
                }
            }
            used += 1;
        }
        if ok {
            for (p, xp) in &x.parts {
                if let Some((_, yp)) = parts[..used].iter().find(|(q, _)| q == p) {
                    if !self.generates_p_group(xp, yp, *p, s) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        s.parts = parts;
        ok
    }

    /// Whether ⟨a, b⟩ is a `p`-group, for `p`-elements `a`, `b`.
    fn generates_p_group(&self, a: &[u8], b: &[u8], p: u64, s: &mut Scratch) -> bool {
        if perm::commute(a, b) {
            return true;
        }
        perm::compose_into(a, b, &mut s.a);
        if !arith::is_power_of(perm::order_of(&s.a), p) {
            return false;
        }
        perm::invert_into(b, &mut s.b);
        perm::compose_into(a, &s.b, &mut s.a);
        if !arith::is_power_of(perm::order_of(&s.a), p) {
            return false;
        }
        bounded_p_closure(a, b, p, self.p_subgroup_cap(p))
    }

    pub fn is_nilpotent_pair(&self, x: &[u8], y: &[u8]) -> bool {
        let prepared = PreparedElement::new(x);
        self.accepts(&prepared, y, &mut self.scratch())
    }
}

fn bounded_p_closure(a: &[u8], b: &[u8], p: u64, cap: u64) -> bool {
    let degree = a.len();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let id: Vec<u8> = (0..degree as u8).collect();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut product = vec![0u8; degree];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in [a, b] {
            perm::compose_into(&current, g, &mut product);
            if seen.contains(&product) {
                continue;
            }
            if !arith::is_power_of(perm::order_of(&product), p) {
                return false;
            }
            seen.insert(product.clone());
            if seen.len() as u64 > cap {
                return false;
            }
            queue.push(product.clone());
        }
    }
    true
}

/// Whether ⟨x, y⟩ is nilpotent.
pub fn is_nilpotent_pair(x: &Permutation, y: &Permutation) -> bool {
    if x.degree() != y.degree() {
        return false;
    }
    NilpotencyTester::new(x.degree()).is_nilpotent_pair(x.images(), y.images())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn small_cases() {
        let p = c("(1 2 3 4)(5 6)", 6);
        assert!(is_nilpotent_pair(&p, &p));
        assert!(is_nilpotent_pair(&p, &p.pow(3)));
        assert!(!is_nilpotent_pair(&c("(1 2)", 3), &c("(1 3)", 3)));
        // ⟨(1 2 3 4), (1 3)⟩ is dihedral of order 8.
        assert!(is_nilpotent_pair(&c("(1 2 3 4)", 4), &c("(1 3)", 4)));
        // (1 2)(3 4) and (1 2 3): Alt(4).
        assert!(!is_nilpotent_pair(&c("(1 2)(3 4)", 4), &c("(1 2 3)", 4)));
        // Disjoint elements of coprime order generate a cyclic group.
        assert!(is_nilpotent_pair(&c("(1 2)", 5), &c("(3 4 5)", 5)));
        assert!(is_nilpotent_pair(&Permutation::identity(5), &c("(1 2 3)(4 5)", 5)));
    }

    #[test]
    fn powers_via_cycles() {
        let y = c("(1 2 3 4 5 6)(7 8)", 8);
        let mut s = Scratch::new(8);
        assert_eq!(s.load(y.images()), 6);
        for e in 0..12 {
            let mut out = vec![0u8; 8];
            s.power_into(e, &mut out);
            assert_eq!(out, y.pow(e as i64).images());
        }
    }
}
