//! Finite permutation groups with lazily enumerated element tables.

use std::fmt;
use std::hash::BuildHasher;
use std::sync::OnceLock;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};

/// Largest group the engine will enumerate.
pub const ELEMENT_CAP: u64 = 4_000_000;

/// A set of permutations of one degree, stored contiguously with a hash
/// index. Index 0 is always the first inserted element (the identity for
/// tables built by [`closure`]).
#[derive(Clone)]
pub struct ElementTable {
    degree: usize,
    data: Vec<u8>,
    index: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl ElementTable {
    pub fn new(degree: usize) -> Self {
        Self::with_capacity(degree, 0)
    }

    pub fn with_capacity(degree: usize, capacity: usize) -> Self {
        Self {
            degree,
            data: Vec::with_capacity(capacity * degree),
            index: HashTable::with_capacity(capacity),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub fn from_elements<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut t = Self::new(degree);
        for p in elements {
            t.insert(p.images());
        }
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Raw 0-indexed image table of element `i`.
    pub fn get(&self, i: usize) -> &[u8] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn permutation(&self, i: usize) -> Permutation {
        Permutation::from_slice_unchecked(self.get(i))
    }

    pub fn position(&self, images: &[u8]) -> Option<usize> {
        let hash = self.hasher.hash_one(images);
        self.index
            .find(hash, |&i| self.get(i as usize) == images)
            .map(|&i| i as usize)
    }

    pub fn contains(&self, images: &[u8]) -> bool {
        self.position(images).is_some()
    }

    /// Inserts if absent; returns the index and whether it was new.
    pub fn insert(&mut self, images: &[u8]) -> (usize, bool) {
        debug_assert_eq!(images.len(), self.degree);
        let hash = self.hasher.hash_one(images);
        if let Some(&i) = self.index.find(hash, |&i| {
            &self.data[i as usize * self.degree..(i as usize + 1) * self.degree] == images
        }) {
            return (i as usize, false);
        }
        let i = self.len();
        self.data.extend_from_slice(images);
        let (data, degree, hasher) = (&self.data, self.degree, &self.hasher);
        self.index.insert_unique(hash, i as u32, |&j| {
            hasher.hash_one(&data[j as usize * degree..(j as usize + 1) * degree])
        });
        (i, true)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.degree.max(1)).take(self.len())
    }

    pub fn permutations(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.iter().map(Permutation::from_slice_unchecked)
    }
}

impl fmt::Debug for ElementTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElementTable")
            .field("degree", &self.degree)
            .field("len", &self.len())
            .finish()
    }
}

/// Breadth-first closure of `gens` on `degree` points, failing once more
/// than `cap` elements appear.
pub fn closure(degree: usize, gens: &[Permutation], cap: u64) -> Result<ElementTable> {
    closure_with_hint(degree, gens, cap, 0)
}

pub(crate) fn closure_with_hint(
    degree: usize,
    gens: &[Permutation],
    cap: u64,
    hint: usize,
) -> Result<ElementTable> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let mut table = ElementTable::with_capacity(degree, hint);
    table.insert(Permutation::identity(degree).images());
    let mut current = vec![0u8; degree];
    let mut product = vec![0u8; degree];
    let mut next = 0;
    while next < table.len() {
        current.copy_from_slice(table.get(next));
        for g in gens {
            perm::compose_into(&current, g.images(), &mut product);
            let (_, fresh) = table.insert(&product);
            if fresh && table.len() as u64 > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        next += 1;
    }
    Ok(table)
}

/// Conjugacy classes of a group, with lexicographically least
/// representatives.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    /// Class id of every element, indexed like the group's element table.
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, u64)> {
        self.representatives.iter().zip(self.sizes.iter().copied())
    }
}

/// A permutation group given by generators. The element table and the
/// conjugacy classes are computed on first use and cached.
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    declared_order: Option<u64>,
    elements: OnceLock<ElementTable>,
    classes: OnceLock<ConjugacyClasses>,
}

impl FiniteGroup {
    /// A group on `degree` points; an empty generator list gives the
    /// trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > perm::MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let name = format!("<{} generators on {degree} points>", generators.len());
        Ok(Self {
            name,
            degree,
            generators,
            declared_order: None,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Wraps an already enumerated element set.
    pub fn from_table(table: ElementTable, generators: Vec<Permutation>) -> Result<Self> {
        let g = Self::new(table.degree(), generators)?;
        let _ = g.elements.set(table);
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Records the theoretical order; enumeration then checks it and refuses
    /// to start when it exceeds [`ELEMENT_CAP`].
    pub fn with_declared_order(mut self, order: u64) -> Self {
        self.declared_order = Some(order);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn declared_order(&self) -> Option<u64> {
        self.declared_order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn elements(&self) -> Result<&ElementTable> {
        if let Some(t) = self.elements.get() {
            return Ok(t);
        }
        let hint = match self.declared_order {
            Some(n) if n > ELEMENT_CAP => {
                return Err(Error::CapExceeded { cap: ELEMENT_CAP });
            }
            Some(n) => n as usize,
            None => 0,
        };
        let table = closure_with_hint(self.degree, &self.generators, ELEMENT_CAP, hint)?;
        if let Some(expected) = self.declared_order {
            if expected != table.len() as u64 {
                return Err(Error::OrderMismatch {
                    group: self.name.clone(),
                    expected,
                    computed: table.len() as u64,
                });
            }
        }
        Ok(self.elements.get_or_init(|| table))
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.elements()?.len() as u64)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.elements()?.contains(p.images()))
    }

    pub(crate) fn classes_cell(&self) -> &OnceLock<ConjugacyClasses> {
        &self.classes
    }

    /// Generators pairwise commute.
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| perm::commute(a.images(), b.images()))
        })
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}
