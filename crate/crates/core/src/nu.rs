//! Nilpotency probabilities: `ν(G)`, the coset-relative `ν_{g1,g2}(G,N)`,
//! the generation probability `π_{g1,g2}`, `τ(T,S)`, `ν̃(S)`, Monte Carlo
//! estimates and the alternating-group bound.
//!
//! Exact counts are class-reduced: `N` acts by conjugation on the coset
//! `N·g1` and on `N·g2` simultaneously, preserving nilpotency of
//! ⟨x, y⟩, so the outer sum runs over orbit representatives of `N·g1`
//! weighted by orbit size. Counts are exact integers and the parallel
//! reduction is a plain sum, so results do not depend on scheduling.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::catalog::AlmostSimplePair;
use crate::error::{Error, Result};
use crate::fraction::ExactFraction;
use crate::group::{closure, ElementTable, FiniteGroup};
use crate::nilpotency::{NilpotencyTester, PreparedElement};
use crate::perm::{self, Permutation};
use crate::structure::{self, QuotientMap};

/// Default cap on pair evaluations for exact methods.
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000_000;

const CHUNK: usize = 4096;
const MC_BATCH: u64 = 1024;
/// Seed for choosing which generating coset pairs evaluate `τ`.
const PAIR_CHOICE_SEED: u64 = 0x6e69_6c70;

/// Limits on exact computations.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_pairs: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_pairs: DEFAULT_PAIR_BUDGET,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_pairs: u64::MAX,
            deadline: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    fn check_pairs(&self, pairs: u64, what: &str) -> Result<()> {
        if pairs > self.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "{what} needs {pairs} pair evaluations, budget is {}; use monte-carlo",
                self.max_pairs
            )));
        }
        Ok(())
    }

    fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("time limit reached".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactFull,
    ExactClasses,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactFull => "exact-full",
            Method::ExactClasses => "exact-classes",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "exact-full" => Ok(Method::ExactFull),
            "classes" | "exact-classes" => Ok(Method::ExactClasses),
            "mc" | "monte-carlo" => Ok(Method::MonteCarlo),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// A Monte Carlo estimate with its confidence interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
    pub confidence: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NuValue {
    Exact(ExactFraction),
    Estimated(Estimate),
}

/// Result record of a probability computation.
#[derive(Clone, Debug)]
pub struct NuReport {
    pub group: String,
    pub order: u64,
    pub method: Method,
    pub value: NuValue,
    /// Favorable pairs (exact) or favorable samples (Monte Carlo).
    pub favorable: u64,
    /// `|N|²` or `|G|²` (exact), or the sample count.
    pub total: u64,
    pub elapsed: Duration,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl NuReport {
    pub fn exact(&self) -> Option<&ExactFraction> {
        match &self.value {
            NuValue::Exact(v) => Some(v),
            NuValue::Estimated(_) => None,
        }
    }

    pub fn estimate(&self) -> Option<&Estimate> {
        match &self.value {
            NuValue::Estimated(e) => Some(e),
            NuValue::Exact(_) => None,
        }
    }

    pub fn point(&self) -> f64 {
        match &self.value {
            NuValue::Exact(v) => v.to_f64(),
            NuValue::Estimated(e) => e.point,
        }
    }
}

/// Counts `y` in `table·right` (or `table` itself) with ⟨x, y⟩ nilpotent.
fn count_partners(
    tester: &NilpotencyTester,
    x: &PreparedElement,
    table: &ElementTable,
    right: Option<&[u8]>,
    budget: &Budget,
) -> Result<u64> {
    let n = table.len();
    let degree = table.degree();
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map_init(
            || (tester.scratch(), vec![0u8; degree]),
            |(scratch, y), c| {
                budget.check_time()?;
                let mut count = 0u64;
                for i in c * CHUNK..n.min((c + 1) * CHUNK) {
                    let hit = match right {
                        Some(g) => {
                            perm::compose_into(table.get(i), g, y);
                            tester.accepts(x, y, scratch)
                        }
                        None => tester.accepts(x, table.get(i), scratch),
                    };
                    count += hit as u64;
                }
                Ok(count)
            },
        )
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Exact `ν(G)`.
pub fn nu_exact(g: &FiniteGroup, method: Method, budget: &Budget) -> Result<NuReport> {
    let start = Instant::now();
    let table = g.elements()?;
    let n = table.len() as u64;
    let tester = NilpotencyTester::within_group_of_order(g.degree(), n);
    let favorable = match method {
        Method::ExactFull => {
            budget.check_pairs(n * n, "full enumeration")?;
            let mut total = 0;
            for x in table.iter() {
                total += count_partners(&tester, &PreparedElement::new(x), table, None, budget)?;
            }
            total
        }
        Method::ExactClasses => {
            let classes = structure::conjugacy_classes(g)?;
            budget.check_pairs(classes.len() as u64 * n, "class-reduced count")?;
            let mut total = 0;
            for (rep, size) in classes.iter() {
                let x = PreparedElement::new(rep.images());
                total += size * count_partners(&tester, &x, table, None, budget)?;
            }
            total
        }
        Method::MonteCarlo => {
            return Err(Error::InvalidArgument("use monte_carlo_nu for sampling".into()))
        }
    };
    Ok(NuReport {
        group: g.name().to_string(),
        order: n,
        method,
        value: NuValue::Exact(ExactFraction::ratio(favorable, n * n)),
        favorable,
        total: n * n,
        elapsed: start.elapsed(),
        witness: None,
        notes: Vec::new(),
    })
}

/// An ambient group `G`, a normal subgroup `N` and coset representatives
/// `g1`, `g2` in `G`.
#[derive(Clone, Debug)]
pub struct CosetContext {
    pub ambient: Arc<FiniteGroup>,
    pub normal: Arc<FiniteGroup>,
    pub rep1: Permutation,
    pub rep2: Permutation,
}

impl CosetContext {
    /// Checks that the representatives lie in the ambient group and that
    /// `normal` is a normal subgroup of it.
    pub fn new(
        ambient: Arc<FiniteGroup>,
        normal: Arc<FiniteGroup>,
        rep1: Permutation,
        rep2: Permutation,
    ) -> Result<Self> {
        let degree = ambient.degree();
        for d in [normal.degree(), rep1.degree(), rep2.degree()] {
            if d != degree {
                return Err(Error::DegreeMismatch { left: degree, right: d });
            }
        }
        if !Arc::ptr_eq(&ambient, &normal) {
            for h in normal.generators() {
                if !ambient.contains(h)? {
                    return Err(Error::NotAMember);
                }
            }
            if !structure::is_normal_in(&normal, &ambient)? {
                return Err(Error::NotNormal);
            }
        }
        if !ambient.contains(&rep1)? || !ambient.contains(&rep2)? {
            return Err(Error::NotAMember);
        }
        Ok(Self {
            ambient,
            normal,
            rep1,
            rep2,
        })
    }

    /// The context `(G, G, id, id)`.
    pub fn trivial(g: Arc<FiniteGroup>) -> Self {
        let id = g.identity();
        Self {
            ambient: g.clone(),
            normal: g,
            rep1: id.clone(),
            rep2: id,
        }
    }

    fn describe(&self) -> String {
        format!(
            "{} in {}, cosets of {} and {}",
            self.normal.name(),
            self.ambient.name(),
            self.rep1,
            self.rep2
        )
    }

    fn right_factor(&self, rep: &Permutation) -> Result<Option<Vec<u8>>> {
        Ok(if self.normal.elements()?.contains(rep.images()) && rep.is_identity() {
            None
        } else {
            Some(rep.images().to_vec())
        })
    }
}

/// Exact `ν_{g1,g2}(G,N)`: the fraction of `(n1, n2) ∈ N²` with
/// ⟨n1·g1, n2·g2⟩ nilpotent.
pub fn nu_coset(ctx: &CosetContext, method: Method, budget: &Budget) -> Result<NuReport> {
    let start = Instant::now();
    let table = ctx.normal.elements()?;
    let n = table.len() as u64;
    let tester = NilpotencyTester::within_group_of_order(ctx.ambient.degree(), ctx.ambient.order()?);
    let right2 = ctx.right_factor(&ctx.rep2)?;
    let favorable = match method {
        Method::ExactClasses => {
            let partition = structure::coset_orbit_partition(&ctx.normal, &ctx.rep1)?;
            budget.check_pairs(partition.orbits.len() as u64 * n, "class-reduced coset count")?;
            let mut total = 0;
            for (rep, size) in &partition.orbits {
                let x = PreparedElement::new(rep.images());
                total += size * count_partners(&tester, &x, table, right2.as_deref(), budget)?;
            }
            total
        }
        Method::ExactFull => {
            budget.check_pairs(n * n, "full coset enumeration")?;
            let mut total = 0;
            let mut x = vec![0u8; ctx.ambient.degree()];
            for m in table.iter() {
                perm::compose_into(m, ctx.rep1.images(), &mut x);
                let x = PreparedElement::new(&x);
                total += count_partners(&tester, &x, table, right2.as_deref(), budget)?;
            }
            total
        }
        Method::MonteCarlo => {
            return Err(Error::InvalidArgument("use monte_carlo_nu for sampling".into()))
        }
    };
    Ok(NuReport {
        group: ctx.describe(),
        order: n,
        method,
        value: NuValue::Exact(ExactFraction::ratio(favorable, n * n)),
        favorable,
        total: n * n,
        elapsed: start.elapsed(),
        witness: None,
        notes: Vec::new(),
    })
}

/// `π_{g1,g2}`: the fraction of `(n1, n2) ∈ N²` with `N ≤ ⟨n1·g1, n2·g2⟩`.
/// Intended for small normal subgroups; each pair costs a closure.
pub fn pi_coset(ctx: &CosetContext, budget: &Budget) -> Result<ExactFraction> {
    let table = ctx.normal.elements()?;
    let n = table.len() as u64;
    let ambient_order = ctx.ambient.order()?;
    let partition = structure::coset_orbit_partition(&ctx.normal, &ctx.rep1)?;
    let cost = (partition.orbits.len() as u64)
        .saturating_mul(n)
        .saturating_mul(ambient_order);
    budget.check_pairs(cost, "generation count (pairs × closure size)")?;
    let degree = ctx.ambient.degree();
    let mut favorable = 0u64;
    for (x, size) in &partition.orbits {
        let count: u64 = (0..table.len())
            .into_par_iter()
            .map(|i| {
                let y = table.permutation(i).then(&ctx.rep2);
                let h = closure(degree, &[x.clone(), y], ambient_order).expect("subgroup of ambient");
                ctx.normal.generators().iter().all(|s| h.contains(s.images())) as u64
            })
            .sum();
        budget.check_time()?;
        favorable += size * count;
    }
    Ok(ExactFraction::ratio(favorable, n * n))
}

/// `τ(T, S)` for one subgroup `T/S` of the outer quotient, evaluated on
/// several generating coset pairs.
#[derive(Clone, Debug)]
pub struct TauReport {
    pub value: ExactFraction,
    /// `|T/S|`.
    pub quotient_order: u64,
    /// Generating pairs of `T/S` (in the quotient representation) that were
    /// evaluated, and their lifts to the ambient group.
    pub quotient_pairs: Vec<(Permutation, Permutation)>,
    pub lifted_pairs: Vec<(Permutation, Permutation)>,
    /// `ν_{g1,g2}` for every evaluated pair; all equal.
    pub values: Vec<ExactFraction>,
    /// Number of generating pairs of `T/S`.
    pub generating_pair_count: u64,
    pub favorable: u64,
    pub total: u64,
}

/// The outer quotient `A/S` of an almost simple pair.
pub struct OuterQuotient<'a> {
    pair: &'a AlmostSimplePair,
    map: QuotientMap,
}

impl<'a> OuterQuotient<'a> {
    pub fn new(pair: &'a AlmostSimplePair) -> Result<Self> {
        let map = structure::quotient_group(&pair.ambient, &pair.socle)?;
        Ok(Self { pair, map })
    }

    pub fn quotient(&self) -> &FiniteGroup {
        self.map.quotient()
    }

    pub fn map(&self) -> &QuotientMap {
        &self.map
    }

    /// Image of an ambient element in the quotient.
    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        self.map.project(g, &self.pair.socle)
    }

    /// `τ` for the preimage of the subgroup `u` of `A/S`, computed as
    /// `ν_{g1,g2}(A, S)` on up to three distinct generating pairs of `u`.
    pub fn tau(&self, u: &ElementTable, budget: &Budget) -> Result<TauReport> {
        let qdeg = self.quotient().degree();
        let elems: Vec<Permutation> = u.permutations().collect();
        let order = elems.len() as u64;
        let mut generating = Vec::new();
        for a in &elems {
            for b in &elems {
                if closure(qdeg, &[a.clone(), b.clone()], order)?.len() as u64 == order {
                    generating.push((a.clone(), b.clone()));
                }
            }
        }
        if generating.is_empty() {
            return Err(Error::NotTwoGenerated);
        }
        let count = generating.len() as u64;
        let mut chosen = generating;
        chosen.shuffle(&mut ChaCha8Rng::seed_from_u64(PAIR_CHOICE_SEED));
        chosen.truncate(3);
        chosen.sort();
        let mut values = Vec::new();
        let mut lifted = Vec::new();
        let mut counts = (0, 0);
        for (a, b) in &chosen {
            let (g1, g2) = (self.map.lift(a), self.map.lift(b));
            let ctx = CosetContext::new(
                self.pair.ambient.clone(),
                self.pair.socle.clone(),
                g1.clone(),
                g2.clone(),
            )?;
            let report = nu_coset(&ctx, Method::ExactClasses, budget)?;
            counts = (report.favorable, report.total);
            values.push(report.exact().expect("exact method").clone());
            lifted.push((g1, g2));
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            let listed: Vec<String> = values.iter().map(ToString::to_string).collect();
            return Err(Error::TauNotConstant(listed.join(", ")));
        }
        Ok(TauReport {
            value: values[0].clone(),
            quotient_order: order,
            quotient_pairs: chosen,
            lifted_pairs: lifted,
            values,
            generating_pair_count: count,
            favorable: counts.0,
            total: counts.1,
        })
    }
}

/// `τ(T, S)` for a subgroup `T` with `S ≤ T ≤ A`.
pub fn tau(pair: &AlmostSimplePair, subgroup: &FiniteGroup, budget: &Budget) -> Result<TauReport> {
    for s in pair.socle.generators() {
        if !subgroup.contains(s)? {
            return Err(Error::InvalidArgument("subgroup does not contain the socle".into()));
        }
    }
    let outer = OuterQuotient::new(pair)?;
    let images = subgroup
        .generators()
        .iter()
        .map(|g| {
            if !pair.ambient.contains(g)? {
                return Err(Error::NotAMember);
            }
            outer.project(g)
        })
        .collect::<Result<Vec<_>>>()?;
    let u = closure(outer.quotient().degree(), &images, crate::group::ELEMENT_CAP)?;
    outer.tau(&u, budget)
}

/// One conjugacy class of nilpotent subgroups `T/S` and its `τ`.
#[derive(Clone, Debug)]
pub struct TauEntry {
    /// Number of conjugate subgroups in the class.
    pub class_size: usize,
    /// Least generating pair of the class representative in `A/S`.
    pub quotient_generators: (Permutation, Permutation),
    pub report: TauReport,
}

impl TauEntry {
    pub fn describe(&self) -> String {
        format!(
            "T/S of order {} generated by {} and {} in A/S",
            self.report.quotient_order, self.quotient_generators.0, self.quotient_generators.1
        )
    }
}

/// `ν̃(S)` with the subgroup that attains it.
#[derive(Clone, Debug)]
pub struct NuTildeReport {
    pub label: String,
    pub value: ExactFraction,
    pub witness: TauEntry,
    /// Every nilpotent class, in subgroup order.
    pub entries: Vec<TauEntry>,
    /// Classes with non-nilpotent `T/S`; their contexts contribute 0.
    pub skipped_non_nilpotent: usize,
    pub elapsed: Duration,
}

/// `ν̃(S)`: the maximum of `τ(T, S)` over subgroups `S ≤ T ≤ A` with `T/S`
/// nilpotent. Pairs `(a1, a2)` whose image in `A/S` generates a
/// non-nilpotent group give value 0 (quotients of nilpotent groups are
/// nilpotent) and are skipped.
pub fn nu_tilde(pair: &AlmostSimplePair, budget: &Budget) -> Result<NuTildeReport> {
    let start = Instant::now();
    let outer = OuterQuotient::new(pair)?;
    let q = outer.quotient();
    let subgroups = structure::subgroups_of_small_group(q)?;
    let classes = structure::subgroup_classes(q, &subgroups)?;
    let mut entries = Vec::new();
    let mut skipped = 0;
    for class in &classes {
        let u = &subgroups[class[0]];
        if !structure::is_nilpotent_subgroup(u) {
            skipped += 1;
            continue;
        }
        let report = outer.tau(u, budget)?;
        let quotient_generators = least_generating_pair(u, q.degree())?;
        entries.push(TauEntry {
            class_size: class.len(),
            quotient_generators,
            report,
        });
    }
    let witness = entries
        .iter()
        .max_by(|a, b| {
            a.report
                .value
                .cmp(&b.report.value)
                .then(b.report.quotient_order.cmp(&a.report.quotient_order))
                .then(b.quotient_generators.cmp(&a.quotient_generators))
        })
        .cloned()
        .ok_or(Error::NoGeneratingPair)?;
    Ok(NuTildeReport {
        label: pair.label.clone(),
        value: witness.report.value.clone(),
        witness,
        entries,
        skipped_non_nilpotent: skipped,
        elapsed: start.elapsed(),
    })
}

/// Monte Carlo counterpart of [`nu_tilde`]: estimates `τ` for each class of
/// nilpotent `T/S` on its least generating pair and returns the largest
/// point estimate with a description of its subgroup.
pub fn nu_tilde_monte_carlo(
    pair: &AlmostSimplePair,
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<(Estimate, String)> {
    let outer = OuterQuotient::new(pair)?;
    let q = outer.quotient();
    let subgroups = structure::subgroups_of_small_group(q)?;
    let mut best: Option<(Estimate, String)> = None;
    for class in structure::subgroup_classes(q, &subgroups)? {
        let u = &subgroups[class[0]];
        if !structure::is_nilpotent_subgroup(u) {
            continue;
        }
        let (a, b) = least_generating_pair(u, q.degree())?;
        let ctx = CosetContext::new(
            pair.ambient.clone(),
            pair.socle.clone(),
            outer.map.lift(&a),
            outer.map.lift(&b),
        )?;
        let report = monte_carlo_nu(McTarget::Coset(&ctx), samples, seed, confidence)?;
        let estimate = report.estimate().expect("sampled").clone();
        if best.as_ref().is_none_or(|(e, _)| estimate.point > e.point) {
            let desc = format!("T/S of order {} generated by {a} and {b} in A/S", u.len());
            best = Some((estimate, desc));
        }
    }
    best.ok_or(Error::NoGeneratingPair)
}

fn least_generating_pair(u: &ElementTable, degree: usize) -> Result<(Permutation, Permutation)> {
    let mut elems: Vec<Permutation> = u.permutations().collect();
    elems.sort();
    for a in &elems {
        for b in &elems {
            if closure(degree, &[a.clone(), b.clone()], u.len() as u64)?.len() == u.len() {
                return Ok((a.clone(), b.clone()));
            }
        }
    }
    Err(Error::NotTwoGenerated)
}

/// What a Monte Carlo run samples.
#[derive(Clone, Copy, Debug)]
pub enum McTarget<'a> {
    /// Uniform pairs of `G`.
    Group(&'a FiniteGroup),
    /// Uniform `(n1, n2) ∈ N²`, testing ⟨n1·g1, n2·g2⟩.
    Coset(&'a CosetContext),
}

/// Two-sided Wilson score interval.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2n = z * z / n;
    let center = (p + z2n / 2.0) / (1.0 + z2n);
    let half = z / (1.0 + z2n) * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Frequency estimate of `ν` (or `ν_{g1,g2}`) from `samples` independent
/// uniform pairs, with a Wilson interval. Sample batches draw from ChaCha8
/// streams indexed by batch number, so the result depends only on `seed`.
pub fn monte_carlo_nu(target: McTarget<'_>, samples: u64, seed: u64, confidence: f64) -> Result<NuReport> {
    if samples < 100 {
        return Err(Error::InvalidArgument(format!("{samples} samples; need at least 100")));
    }
    if !(0.0..1.0).contains(&confidence) || confidence == 0.0 {
        return Err(Error::InvalidArgument(format!("confidence {confidence}")));
    }
    let start = Instant::now();
    let (name, ambient_order, table, reps) = match target {
        McTarget::Group(g) => (g.name().to_string(), g.order()?, g.elements()?, None),
        McTarget::Coset(ctx) => (
            ctx.describe(),
            ctx.ambient.order()?,
            ctx.normal.elements()?,
            Some((ctx.rep1.images(), ctx.rep2.images())),
        ),
    };
    let degree = table.degree();
    let tester = NilpotencyTester::within_group_of_order(degree, ambient_order);
    let n = table.len();
    let favorable: u64 = (0..samples.div_ceil(MC_BATCH))
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let mut scratch = tester.scratch();
            let (mut x, mut y) = (vec![0u8; degree], vec![0u8; degree]);
            let len = MC_BATCH.min(samples - batch * MC_BATCH);
            let mut hits = 0;
            for _ in 0..len {
                let i = rng.random_range(0..n);
                let j = rng.random_range(0..n);
                match reps {
                    Some((g1, g2)) => {
                        perm::compose_into(table.get(i), g1, &mut x);
                        perm::compose_into(table.get(j), g2, &mut y);
                    }
                    None => {
                        x.copy_from_slice(table.get(i));
                        y.copy_from_slice(table.get(j));
                    }
                }
                hits += tester.accepts(&PreparedElement::new(&x), &y, &mut scratch) as u64;
            }
            hits
        })
        .sum();
    let (lo, hi) = wilson_interval(favorable, samples, confidence);
    Ok(NuReport {
        group: name,
        order: n as u64,
        method: Method::MonteCarlo,
        value: NuValue::Estimated(Estimate {
            point: favorable as f64 / samples as f64,
            lo,
            hi,
            confidence,
            samples,
        }),
        favorable,
        total: samples,
        elapsed: start.elapsed(),
        witness: None,
        notes: Vec::new(),
    })
}

/// `1 − π_n − π_{n−1}/n`, the upper bound on `ν̃(Alt(n))` for `n ≥ 10`
/// given lower bounds `π_n`, `π_{n−1}` on the generation probabilities.
/// The result is not clamped and may be negative.
pub fn alt_bound(pi_n: &ExactFraction, pi_n_minus_1: &ExactFraction, n: u64) -> Result<ExactFraction> {
    if n < 10 {
        return Err(Error::InvalidArgument(format!("n = {n}; the bound needs n >= 10")));
    }
    for p in [pi_n, pi_n_minus_1] {
        if !p.is_probability() {
            return Err(Error::InvalidArgument(format!("{p} is not in [0, 1]")));
        }
    }
    let n = ExactFraction::from(n);
    Ok(&(&ExactFraction::one() - pi_n) - &(pi_n_minus_1 / &n))
}

/// The solvability threshold check for one group.
#[derive(Clone, Debug)]
pub struct ThresholdVerdict {
    pub group: String,
    pub nu: ExactFraction,
    pub exceeds_threshold: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    /// `ν > 1/12 ⇒ solvable`.
    pub consistent: bool,
}

/// Computes `ν(G)` exactly and checks that `ν(G) > 1/12` implies `G`
/// solvable. An inconsistent verdict indicates a defect in this engine.
pub fn solvability_threshold_check(g: &FiniteGroup, budget: &Budget) -> Result<ThresholdVerdict> {
    let nu = nu_exact(g, Method::ExactClasses, budget)?
        .exact()
        .expect("exact method")
        .clone();
    let threshold = ExactFraction::ratio(1, 12);
    let exceeds = nu > threshold;
    let solvable = structure::is_solvable(g)?;
    let nilpotent = structure::is_nilpotent_subgroup(g.elements()?);
    Ok(ThresholdVerdict {
        group: g.name().to_string(),
        nu,
        exceeds_threshold: exceeds,
        solvable,
        nilpotent,
        consistent: !exceeds || solvable,
    })
}
