#![allow(dead_code)]

use nilprob::group::{closure, ELEMENT_CAP};
use nilprob::structure::is_nilpotent_subgroup;
use nilprob::{build, ExactFraction, FiniteGroup, Permutation};

pub fn group(spec: &str) -> FiniteGroup {
    build(&spec.parse().unwrap()).unwrap()
}

pub fn cycles(s: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(s, degree).unwrap()
}

pub fn frac(s: &str) -> ExactFraction {
    s.parse().unwrap()
}

/// Nilpotency of ⟨x, y⟩ decided on the generated subgroup itself.
pub fn oracle_nilpotent(x: &Permutation, y: &Permutation) -> bool {
    let h = closure(x.degree(), &[x.clone(), y.clone()], ELEMENT_CAP).unwrap();
    is_nilpotent_subgroup(&h)
}

/// `ν(G)` by testing every ordered pair with the subgroup oracle.
pub fn brute_force_nu(g: &FiniteGroup) -> ExactFraction {
    let elems: Vec<Permutation> = g.elements().unwrap().permutations().collect();
    let mut favorable = 0u64;
    for x in &elems {
        for y in &elems {
            favorable += oracle_nilpotent(x, y) as u64;
        }
    }
    let n = elems.len() as u64;
    ExactFraction::ratio(favorable, n * n)
}
