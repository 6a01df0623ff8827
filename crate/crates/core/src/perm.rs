//! Permutations of the points `{1..n}` stored as image tables.
//!
//! Products are read left to right: `p.compose(&q)` applies `p` first and
//! then `q`, so `(1 2)·(2 3) = (1 3 2)`. Points are 1-indexed in every
//! textual form and 0-indexed in the image table.

use std::fmt;
use std::str::FromStr;

use crate::arith;
use crate::error::{Error, Result};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// An immutable permutation. Equality, ordering and hashing all go through
/// the image table, so `Ord` is the lexicographic order on image tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    /// The identity on `degree` points.
    ///
    /// Panics if `degree` is 0 or larger than [`MAX_DEGREE`].
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 0-indexed images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut seen = vec![false; degree];
        for &i in images {
            if i >= degree || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on {degree} points"
                )));
            }
        }
        Ok(Self {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation from 1-indexed images (`[2, 3, 1]` is `(1 2 3)`).
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("point 0 in 1-indexed image list".into()));
        }
        let zero: Vec<usize> = images.iter().map(|&i| i - 1).collect();
        Self::from_images(&zero)
    }

    /// Builds a permutation of `degree` points from disjoint 1-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice in cycle notation"
                    )));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = next - 1;
            }
        }
        Self::from_images(&images)
    }

    /// Wraps a raw image table that is already known to be a permutation.
    pub(crate) fn from_slice_unchecked(images: &[u8]) -> Self {
        debug_assert!(is_bijection(images));
        Self {
            images: images.into(),
        }
    }

    /// Parses a comma-separated 1-indexed image list such as `2,3,1,5,4`.
    pub fn parse_image_list(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad image {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` on `degree` points.
    /// Commas between points are accepted; `()` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = body[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if points.len() > 1 {
                cycles.push(points);
            }
            rest = body[end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    /// Parses either notation: cycle notation if the string starts with `(`,
    /// otherwise an image list. `degree` is required for cycle notation.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('(') {
            let degree = degree.ok_or_else(|| {
                Error::Parse(format!("degree needed to read cycle notation {t:?}"))
            })?;
            Self::parse_cycles(t, degree)
        } else {
            let p = Self::parse_image_list(t)?;
            match degree {
                Some(d) if d != p.degree() => Err(Error::DegreeMismatch {
                    left: d,
                    right: p.degree(),
                }),
                _ => Ok(p),
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-indexed image table.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of a 1-indexed point.
    pub fn image_of(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        is_identity(&self.images)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_degrees(self.degree(), other.degree())?;
        Ok(self.then(other))
    }

    /// Unchecked in release builds; callers guarantee equal degrees.
    pub(crate) fn then(&self, other: &Self) -> Self {
        let mut out = vec![0u8; self.degree()];
        compose_into(&self.images, &other.images, &mut out);
        Self {
            images: out.into(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.degree()];
        invert_into(&self.images, &mut out);
        Self {
            images: out.into(),
        }
    }

    /// `self^e`; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Self {
        let mut out = vec![0u8; self.degree()];
        let mut seen = vec![false; self.degree()];
        let mut cycle = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            cycle.clear();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.images[pt] as usize;
            }
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (k, &pt) in cycle.iter().enumerate() {
                out[pt] = cycle[(k + shift) % cycle.len()] as u8;
            }
        }
        Self {
            images: out.into(),
        }
    }

    /// Smallest `k ≥ 1` with `self^k` the identity.
    pub fn order(&self) -> u64 {
        order_of(&self.images)
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let degree = self.degree();
        let mut seen = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 0..degree {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt + 1);
                pt = self.images[pt] as usize;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        CycleDecomposition { degree, cycles }
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// `x⁻¹ y⁻¹ x y`, read left to right.
    pub fn commutator(x: &Self, y: &Self) -> Result<Self> {
        check_degrees(x.degree(), y.degree())?;
        Ok(x.inverse().then(&y.inverse()).then(x).then(y))
    }

    /// Conjugate `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        check_degrees(self.degree(), g.degree())?;
        Ok(g.inverse().then(self).then(g))
    }

    /// The power of `self` whose order is the `prime`-part of `self.order()`.
    /// The parts over all primes dividing the order commute and multiply to
    /// `self`.
    pub fn prime_power_part(&self, prime: u64) -> Result<Self> {
        if !arith::is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let e = arith::prime_part_exponent(self.order(), prime);
        Ok(self.pow(e as i64))
    }

    /// Comma-separated 1-indexed images, e.g. `2,3,1,5,4`.
    pub fn to_image_list(&self) -> String {
        self.images
            .iter()
            .map(|&i| (i as usize + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Result<Self> {
        if degree < self.degree() || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u8..degree as u8);
        Ok(Self {
            images: images.into(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycles().fmt(f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Image-list form only; cycle notation needs an explicit degree.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_image_list(s)
    }
}

/// Disjoint cycles of length at least 2, canonically ordered: each cycle
/// starts at its smallest point and cycles are sorted by that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn to_permutation(&self) -> Result<Permutation> {
        Permutation::from_cycles(self.degree, &self.cycles)
    }

    /// Cycle lengths including fixed points, sorted decreasingly.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles.iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for c in &self.cycles {
            f.write_str("(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{pt}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn check_degrees(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DegreeMismatch { left: a, right: b });
    }
    Ok(())
}

// Slice-level kernels used by the counting loops.

#[inline]
pub(crate) fn compose_into(p: &[u8], q: &[u8], out: &mut [u8]) {
    debug_assert_eq!(p.len(), q.len());
    for (o, &i) in out.iter_mut().zip(p) {
        *o = q[i as usize];
    }
}

#[inline]
pub(crate) fn invert_into(p: &[u8], out: &mut [u8]) {
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
}

#[inline]
pub(crate) fn is_identity(p: &[u8]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

#[inline]
pub(crate) fn commute(p: &[u8], q: &[u8]) -> bool {
    p.iter()
        .zip(q)
        .all(|(&a, &b)| q[a as usize] == p[b as usize])
}

pub(crate) fn order_of(p: &[u8]) -> u64 {
    let mut seen = [0u64; 4];
    let mut order = 1u64;
    for start in 0..p.len() {
        if seen[start >> 6] >> (start & 63) & 1 == 1 {
            continue;
        }
        let mut len = 0u64;
        let mut pt = start;
        while seen[pt >> 6] >> (pt & 63) & 1 == 0 {
            seen[pt >> 6] |= 1 << (pt & 63);
            len += 1;
            pt = p[pt] as usize;
        }
        order = arith::lcm(order, len);
    }
    order
}

fn is_bijection(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}
