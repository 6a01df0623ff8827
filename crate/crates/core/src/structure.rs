//! Group-theoretic predicates and counts built on element tables.

use std::collections::{BTreeSet, HashMap};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{closure, ConjugacyClasses, ElementTable, FiniteGroup, ELEMENT_CAP};
use crate::perm::{self, Permutation};

pub use crate::nilpotency::is_nilpotent_pair;

/// Conjugacy classes of `g`, computed by orbit-partitioning the element
/// table under conjugation by the generators. Cached on the group.
pub fn conjugacy_classes(g: &FiniteGroup) -> Result<&ConjugacyClasses> {
    if let Some(c) = g.classes_cell().get() {
        return Ok(c);
    }
    let table = g.elements()?;
    let moves: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|h| (h.inverse(), h.clone()))
        .collect();
    let (class_of, sizes) = orbit_partition(table, &moves);
    let best = least_members(table, &class_of, sizes.len(), |x, _| x.to_vec());
    let classes = ConjugacyClasses {
        representatives: best.into_iter().map(|i| table.permutation(i)).collect(),
        sizes,
        class_of,
    };
    Ok(g.classes_cell().get_or_init(|| classes))
}

/// Orbits of `table` under the maps `x ↦ l·x·r` for `(l, r)` in `moves`.
/// Returns the orbit id of every element and the orbit sizes.
fn orbit_partition(table: &ElementTable, moves: &[(Permutation, Permutation)]) -> (Vec<u32>, Vec<u64>) {
    const UNSEEN: u32 = u32::MAX;
    let n = table.len();
    let degree = table.degree();
    let mut orbit_of = vec![UNSEEN; n];
    let mut sizes = Vec::new();
    let mut out = vec![0u8; degree];
    let mut tmp = vec![0u8; degree];
    let mut queue = Vec::new();
    for start in 0..n {
        if orbit_of[start] != UNSEEN {
            continue;
        }
        let id = sizes.len() as u32;
        orbit_of[start] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (l, r) in moves {
                perm::compose_into(l.images(), table.get(x), &mut tmp);
                perm::compose_into(&tmp, r.images(), &mut out);
                let j = table
                    .position(&out)
                    .expect("orbit stays inside the element table");
                if orbit_of[j] == UNSEEN {
                    orbit_of[j] = id;
                    queue.push(j);
                }
            }
        }
        sizes.push(queue.len() as u64);
    }
    (orbit_of, sizes)
}

/// Index of the member with the least key in each orbit.
fn least_members(
    table: &ElementTable,
    orbit_of: &[u32],
    orbits: usize,
    key: impl Fn(&[u8], &mut Vec<u8>) -> Vec<u8>,
) -> Vec<usize> {
    let mut best: Vec<Option<(Vec<u8>, usize)>> = vec![None; orbits];
    let mut buf = Vec::new();
    for (i, x) in table.iter().enumerate() {
        let k = key(x, &mut buf);
        let slot = &mut best[orbit_of[i] as usize];
        if slot.as_ref().is_none_or(|(b, _)| k < *b) {
            *slot = Some((k, i));
        }
    }
    best.into_iter().map(|b| b.expect("orbits are nonempty").1).collect()
}

/// Whether `h` is nilpotent, decided by Sylow normality: for each prime `p`
/// a Sylow `p`-subgroup is grown greedily from `p`-elements and checked for
/// invariance under conjugation by all of `h`.
pub fn is_nilpotent_subgroup(h: &ElementTable) -> bool {
    let order = h.len() as u64;
    let degree = h.degree();
    for (p, _) in arith::factorize(order) {
        let target = arith::prime_part(order, p);
        let p_elements: Vec<Permutation> = h
            .permutations()
            .filter(|x| arith::is_power_of(x.order(), p) && !x.is_identity())
            .collect();
        let mut sylow_gens: Vec<Permutation> = Vec::new();
        let mut sylow = closure(degree, &[], 1).expect("trivial group");
        for e in &p_elements {
            if sylow.len() as u64 == target {
                break;
            }
            if sylow.contains(e.images()) {
                continue;
            }
            let mut gens = sylow_gens.clone();
            gens.push(e.clone());
            let candidate = closure(degree, &gens, target).ok();
            if let Some(c) = candidate.filter(|c| arith::is_power_of(c.len() as u64, p)) {
                sylow = c;
                sylow_gens = gens;
            }
        }
        debug_assert_eq!(sylow.len() as u64, target, "greedy p-subgroup is Sylow");
        let normal = h.permutations().all(|g| {
            let g_inv = g.inverse();
            sylow_gens
                .iter()
                .all(|s| sylow.contains(g_inv.then(s).then(&g).images()))
        });
        if !normal {
            return false;
        }
    }
    true
}

/// Normal closure in the group generated by `conjugators` of the subgroup
/// generated by `seeds`.
pub fn normal_closure(
    degree: usize,
    seeds: &[Permutation],
    conjugators: &[Permutation],
) -> Result<(Vec<Permutation>, ElementTable)> {
    let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut table = closure(degree, &gens, ELEMENT_CAP)?;
    let inverses: Vec<Permutation> = conjugators.iter().map(Permutation::inverse).collect();
    let mut i = 0;
    while i < gens.len() {
        for (h, h_inv) in conjugators.iter().zip(&inverses) {
            let c = h_inv.then(&gens[i]).then(h);
            if !table.contains(c.images()) {
                gens.push(c);
                table = closure(degree, &gens, ELEMENT_CAP)?;
            }
        }
        i += 1;
    }
    Ok((gens, table))
}

/// Derived series: true iff it reaches the trivial group.
pub fn is_solvable(g: &FiniteGroup) -> Result<bool> {
    let degree = g.degree();
    let mut gens: Vec<Permutation> = g.generators().to_vec();
    let mut order = g.order()?;
    let max_steps = 64 - order.leading_zeros() + 1;
    for _ in 0..max_steps {
        if order == 1 {
            return Ok(true);
        }
        let mut commutators = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = Permutation::commutator(a, b)?;
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        let (derived_gens, derived) = normal_closure(degree, &commutators, &gens)?;
        let derived_order = derived.len() as u64;
        if derived_order == order {
            return Ok(false);
        }
        gens = derived_gens;
        order = derived_order;
    }
    Ok(order == 1)
}

/// Number of ordered pairs `(a, b)` of `h` with ⟨a, b⟩ = `h`. Refuses when
/// `|h|²` exceeds `pair_budget`.
pub fn generating_pairs_count(h: &ElementTable, pair_budget: u64) -> Result<u64> {
    let n = h.len() as u64;
    if n * n > pair_budget {
        return Err(Error::BudgetExceeded(format!(
            "{} pairs exceed the budget of {pair_budget}",
            n * n
        )));
    }
    let elems: Vec<Permutation> = h.permutations().collect();
    let mut count = 0;
    for a in &elems {
        for b in &elems {
            if let Ok(t) = closure(h.degree(), &[a.clone(), b.clone()], n) {
                if t.len() as u64 == n {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Whether every generator of `n` conjugated by every generator of `g`
/// stays in `n`.
pub fn is_normal_in(n: &FiniteGroup, g: &FiniteGroup) -> Result<bool> {
    let table = n.elements()?;
    for h in g.generators() {
        let h_inv = h.inverse();
        for x in n.generators() {
            if !table.contains(h_inv.then(x).then(h).images()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g` acting on the right cosets of a normal subgroup, with coset
/// representatives for lifting.
#[derive(Debug)]
pub struct QuotientMap {
    quotient: FiniteGroup,
    coset_reps: Vec<Permutation>,
}

impl QuotientMap {
    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_representatives(&self) -> &[Permutation] {
        &self.coset_reps
    }

    /// A preimage of a quotient element: the representative of the coset
    /// that the first coset (the subgroup itself) is sent to.
    pub fn lift(&self, q: &Permutation) -> Permutation {
        self.coset_reps[q.images()[0] as usize].clone()
    }

    /// Image of `g` in the quotient by `n`, which must be the subgroup this
    /// map was built from.
    pub fn project(&self, g: &Permutation, n: &FiniteGroup) -> Result<Permutation> {
        let table = n.elements()?;
        let inverses: Vec<Permutation> = self.coset_reps.iter().map(Permutation::inverse).collect();
        let images = self
            .coset_reps
            .iter()
            .map(|c| {
                let x = c.then(g);
                inverses
                    .iter()
                    .position(|ci| table.contains(x.then(ci).images()))
                    .ok_or(Error::NotAMember)
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }
}

/// Permutation representation of `g / n` on the right cosets of `n`.
pub fn quotient_group(g: &FiniteGroup, n: &FiniteGroup) -> Result<QuotientMap> {
    if g.degree() != n.degree() {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: n.degree(),
        });
    }
    if !is_normal_in(n, g)? {
        return Err(Error::NotNormal);
    }
    let table = n.elements()?;
    let find = |reps: &[Permutation], x: &Permutation| {
        reps.iter()
            .position(|c| table.contains(x.then(&c.inverse()).images()))
    };
    let mut reps = vec![g.identity()];
    let mut actions: Vec<Vec<usize>> = vec![Vec::new(); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (k, s) in g.generators().iter().enumerate() {
            let x = reps[i].then(s);
            let j = match find(&reps, &x) {
                Some(j) => j,
                None => {
                    if reps.len() >= perm::MAX_DEGREE {
                        return Err(Error::UnsupportedDegree(reps.len() + 1));
                    }
                    reps.push(x);
                    reps.len() - 1
                }
            };
            actions[k].push(j);
        }
        i += 1;
    }
    let index = reps.len();
    let gens = actions
        .iter()
        .map(|a| Permutation::from_images(a))
        .collect::<Result<Vec<_>>>()?;
    let quotient = FiniteGroup::new(index, gens)?.with_name(format!("{}/{}", g.name(), n.name()));
    Ok(QuotientMap {
        quotient,
        coset_reps: reps,
    })
}

/// Orbits of `n` acting by conjugation on the coset `n·g`.
#[derive(Clone, Debug)]
pub struct CosetOrbitPartition {
    pub coset_rep: Permutation,
    /// `(representative, orbit size)`; representatives are lexicographically
    /// least in their orbit.
    pub orbits: Vec<(Permutation, u64)>,
}

impl CosetOrbitPartition {
    pub fn total(&self) -> u64 {
        self.orbits.iter().map(|(_, s)| s).sum()
    }
}

/// Orbits of the normal subgroup `n` acting by conjugation on `n·g`.
/// `g` must normalize `n`; membership of `g` in an ambient group is the
/// caller's concern.
pub fn coset_orbit_partition(n: &FiniteGroup, g: &Permutation) -> Result<CosetOrbitPartition> {
    if n.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: n.degree(),
            right: g.degree(),
        });
    }
    let table = n.elements()?;
    if table.contains(g.images()) {
        let classes = conjugacy_classes(n)?;
        return Ok(CosetOrbitPartition {
            coset_rep: g.clone(),
            orbits: classes.iter().map(|(r, s)| (r.clone(), s)).collect(),
        });
    }
    let g_inv = g.inverse();
    for h in n.generators() {
        if !table.contains(g_inv.then(h).then(g).images()) {
            return Err(Error::NotNormal);
        }
    }
    // m ∈ n stands for m·g; conjugating by h gives (h⁻¹·m·(g h g⁻¹))·g.
    let moves: Vec<(Permutation, Permutation)> = n
        .generators()
        .iter()
        .map(|h| (h.inverse(), g.then(h).then(&g_inv)))
        .collect();
    let (orbit_of, sizes) = orbit_partition(table, &moves);
    let best = least_members(table, &orbit_of, sizes.len(), |m, buf| {
        buf.resize(m.len(), 0);
        perm::compose_into(m, g.images(), buf);
        buf.clone()
    });
    let mut orbits: Vec<(Permutation, u64)> = best
        .into_iter()
        .zip(sizes)
        .map(|(i, size)| (table.permutation(i).then(g), size))
        .collect();
    orbits.sort();
    Ok(CosetOrbitPartition {
        coset_rep: g.clone(),
        orbits,
    })
}

/// Largest group accepted by [`subgroups_of_small_group`].
pub const SMALL_GROUP_CAP: usize = 200;

type Bits = [u64; 4];

fn bit(b: &Bits, i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i >> 6] |= 1 << (i & 63);
}

/// Every subgroup of a group of order at most 200, each as an element table
/// starting with the identity. Sorted by order, then by element list.
pub fn subgroups_of_small_group(q: &FiniteGroup) -> Result<Vec<ElementTable>> {
    let table = q.elements()?;
    let n = table.len();
    if n > SMALL_GROUP_CAP {
        return Err(Error::CapExceeded {
            cap: SMALL_GROUP_CAP as u64,
        });
    }
    let mut mult = vec![0u16; n * n];
    let mut buf = vec![0u8; q.degree()];
    for i in 0..n {
        for j in 0..n {
            perm::compose_into(table.get(i), table.get(j), &mut buf);
            mult[i * n + j] = table.position(&buf).expect("closed") as u16;
        }
    }
    let generate = |gens: &[usize]| -> Bits {
        let mut bits = [0u64; 4];
        set_bit(&mut bits, 0);
        let mut members = vec![0usize];
        let mut head = 0;
        while head < members.len() {
            let m = members[head];
            head += 1;
            for &g in gens {
                let p = mult[m * n + g] as usize;
                if !bit(&bits, p) {
                    set_bit(&mut bits, p);
                    members.push(p);
                }
            }
        }
        bits
    };
    let mut seen: HashMap<Bits, usize> = HashMap::new();
    let mut found: Vec<(Bits, Vec<usize>)> = Vec::new();
    for x in 0..n {
        let bits = generate(&[x]);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(bits) {
            e.insert(found.len());
            found.push((bits, vec![x]));
        }
    }
    let cyclic_count = found.len();
    let mut i = 0;
    while i < found.len() {
        for c in 0..cyclic_count {
            let x = found[c].1[0];
            if bit(&found[i].0, x) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.push(x);
            let bits = generate(&gens);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(bits) {
                e.insert(found.len());
                found.push((bits, gens));
            }
        }
        i += 1;
    }
    let mut subgroups: Vec<(usize, Vec<Permutation>, ElementTable)> = found
        .into_iter()
        .map(|(bits, _)| {
            let members: Vec<Permutation> =
                (0..n).filter(|&i| bit(&bits, i)).map(|i| table.permutation(i)).collect();
            let mut sorted = members.clone();
            sorted.sort();
            let t = ElementTable::from_elements(q.degree(), &members);
            (members.len(), sorted, t)
        })
        .collect();
    subgroups.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(subgroups.into_iter().map(|(_, _, t)| t).collect())
}

/// Whether `g` is nonabelian and has no proper nontrivial normal subgroup.
///
/// For each nontrivial class `C`, the normal closure of `C` is the union of
/// the classes reachable from `C` by right multiplication with members of
/// `C`; `g` is simple iff every such closure covers all classes.
pub fn is_nonabelian_simple(g: &FiniteGroup) -> Result<bool> {
    let order = g.order()?;
    if order == 1 || g.is_abelian() {
        return Ok(false);
    }
    let table = g.elements()?;
    let classes = conjugacy_classes(g)?;
    let k = classes.len();
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (i, &c) in classes.class_of.iter().enumerate() {
        members[c as usize].push(i as u32);
    }
    let mut buf = vec![0u8; g.degree()];
    let identity_class = classes.class_of[0];
    for c in 0..k {
        if c as u32 == identity_class {
            continue;
        }
        let mut reached = vec![false; k];
        reached[c] = true;
        let mut count = 1;
        // Sparse sampling usually covers everything; finish exhaustively.
        for stride in [members[c].len().div_ceil(16).max(1), 1] {
            let mut frontier: Vec<usize> = (0..k).filter(|&j| reached[j]).collect();
            while let Some(j) = frontier.pop() {
                let rep = classes.representatives[j].images();
                for &m in members[c].iter().step_by(stride) {
                    perm::compose_into(rep, table.get(m as usize), &mut buf);
                    let t = classes.class_of[table.position(&buf).expect("closed")] as usize;
                    if !reached[t] {
                        reached[t] = true;
                        count += 1;
                        frontier.push(t);
                    }
                }
                if count == k {
                    break;
                }
            }
            if count == k {
                break;
            }
        }
        if count < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjugacy classes of subgroups of a small group, as lists of indices
/// into `subgroups`. Classes and their members keep the input order.
pub fn subgroup_classes(q: &FiniteGroup, subgroups: &[ElementTable]) -> Result<Vec<Vec<usize>>> {
    let key = |t: &ElementTable| -> BTreeSet<Vec<u8>> { t.iter().map(<[u8]>::to_vec).collect() };
    let index: HashMap<BTreeSet<Vec<u8>>, usize> =
        subgroups.iter().enumerate().map(|(i, s)| (key(s), i)).collect();
    let elements: Vec<Permutation> = q.elements()?.permutations().collect();
    let mut class_id = vec![usize::MAX; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..subgroups.len() {
        if class_id[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = BTreeSet::new();
        for g in &elements {
            let g_inv = g.inverse();
            let conj: BTreeSet<Vec<u8>> = subgroups[i]
                .permutations()
                .map(|x| g_inv.then(&x).then(g).images().to_vec())
                .collect();
            let j = index[&conj];
            class_id[j] = id;
            members.insert(j);
        }
        classes.push(members.into_iter().collect());
    }
    Ok(classes)
}
