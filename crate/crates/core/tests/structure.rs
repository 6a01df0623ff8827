mod common;

use common::{cycles, group, oracle_nilpotent};
use nilprob::group::closure;
use nilprob::structure::{
    conjugacy_classes, coset_orbit_partition, generating_pairs_count, is_nilpotent_pair,
    is_nilpotent_subgroup, is_nonabelian_simple, is_solvable, quotient_group, subgroup_classes,
    subgroups_of_small_group,
};
use nilprob::{FiniteGroup, Permutation};

fn sorted_sizes(g: &FiniteGroup) -> Vec<u64> {
    let mut s = conjugacy_classes(g).unwrap().sizes.clone();
    s.sort();
    s
}

#[test]
fn closure_examples() {
    let t = closure(3, &[cycles("(1 2)", 3)], 10).unwrap();
    assert_eq!(t.len(), 2);
    let t = closure(3, &[cycles("(1 2)", 3), cycles("(1 2 3)", 3)], 10).unwrap();
    assert_eq!(t.len(), 6);
    let alt5 = group("alt:5");
    assert_eq!(closure(5, alt5.generators(), 100).unwrap().len(), 60);
    assert!(closure(5, alt5.generators(), 59).is_err());
}

#[test]
fn class_sizes() {
    assert_eq!(sorted_sizes(&group("sym:3")), vec![1, 2, 3]);
    assert_eq!(sorted_sizes(&group("alt:5")), vec![1, 12, 12, 15, 20]);
    assert_eq!(sorted_sizes(&group("cyc:5")), vec![1; 5]);
}

#[test]
fn class_representatives_are_least_and_pairwise_nonconjugate() {
    let g = group("sym:5");
    let table = g.elements().unwrap();
    let classes = conjugacy_classes(&g).unwrap();
    assert_eq!(classes.sizes.iter().sum::<u64>(), 120);
    // Brute-force classes: conjugate each representative by all of G.
    let elems: Vec<Permutation> = table.permutations().collect();
    for (rep, size) in classes.iter() {
        let class: std::collections::BTreeSet<Permutation> =
            elems.iter().map(|h| rep.conjugate_by(h).unwrap()).collect();
        assert_eq!(class.len() as u64, size);
        assert_eq!(class.iter().next().unwrap(), rep);
        for other in &classes.representatives {
            assert_eq!(class.contains(other), other == rep);
        }
    }
}

#[test]
fn subgroup_nilpotency_oracle() {
    let d8 = group("dih:4");
    assert_eq!(d8.order().unwrap(), 8);
    assert!(is_nilpotent_subgroup(d8.elements().unwrap()));
    assert!(!is_nilpotent_subgroup(group("sym:3").elements().unwrap()));
    assert!(!is_nilpotent_subgroup(group("alt:4").elements().unwrap()));
    assert!(is_nilpotent_subgroup(group("cyc:12").elements().unwrap()));
    // C2 x C6 ≅ C2 x C2 x C3 on 5 points: nilpotent, not a p-group.
    let g = FiniteGroup::new(5, vec![cycles("(1 2)", 5), cycles("(3 4 5)", 5), cycles("(1 2)", 5)]).unwrap();
    assert!(is_nilpotent_subgroup(g.elements().unwrap()));
}

#[test]
fn pair_test_matches_oracle_on_sym4() {
    let elems: Vec<Permutation> = group("sym:4").elements().unwrap().permutations().collect();
    for x in &elems {
        for y in &elems {
            assert_eq!(is_nilpotent_pair(x, y), oracle_nilpotent(x, y), "{x} {y}");
        }
    }
}

#[test]
fn pair_test_examples() {
    let p = cycles("(1 2 3 4 5 6 7 8)", 8);
    assert!(is_nilpotent_pair(&p, &p.pow(3)));
    assert!(!is_nilpotent_pair(&cycles("(1 2)", 3), &cycles("(1 3)", 3)));
}

#[test]
fn solvability() {
    assert!(is_solvable(&group("sym:4")).unwrap());
    assert!(!is_solvable(&group("alt:5")).unwrap());
    assert!(is_solvable(&group("dih:8")).unwrap());
    assert!(is_solvable(&group("cyc:1")).unwrap());
    assert!(!is_solvable(&group("sym:5")).unwrap());
    assert!(is_solvable(&group("pgl2:3")).unwrap());
}

#[test]
fn nilpotent_implies_solvable() {
    for spec in ["cyc:8", "dih:4", "dih:8", "sym:2", "cyc:1"] {
        let g = group(spec);
        if is_nilpotent_subgroup(g.elements().unwrap()) {
            assert!(is_solvable(&g).unwrap(), "{spec}");
        }
    }
}

#[test]
fn generating_pairs() {
    let v4 = closure(4, &[cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)], 10).unwrap();
    assert_eq!(generating_pairs_count(&v4, 1000).unwrap(), 6);
    let trivial = closure(3, &[], 1).unwrap();
    assert_eq!(generating_pairs_count(&trivial, 1000).unwrap(), 1);
    // Sym(3): brute force with a naive set-based closure.
    let sym3 = group("sym:3");
    let elems: Vec<Permutation> = sym3.elements().unwrap().permutations().collect();
    let brute = elems
        .iter()
        .flat_map(|a| elems.iter().map(move |b| (a, b)))
        .filter(|(a, b)| {
            let mut set = std::collections::BTreeSet::new();
            let mut frontier = vec![Permutation::identity(3)];
            while let Some(x) = frontier.pop() {
                if set.insert(x.clone()) {
                    frontier.push(x.compose(a).unwrap());
                    frontier.push(x.compose(b).unwrap());
                }
            }
            set.len() == 6
        })
        .count() as u64;
    assert_eq!(brute, 18);
    assert_eq!(generating_pairs_count(sym3.elements().unwrap(), 1000).unwrap(), brute);
    assert!(generating_pairs_count(sym3.elements().unwrap(), 10).is_err());
}

#[test]
fn quotients() {
    let sym3 = group("sym:3");
    let alt3 = group("alt:3");
    let q = quotient_group(&sym3, &alt3).unwrap();
    assert_eq!(q.quotient().order().unwrap(), 2);

    let sym4 = group("sym:4");
    let v4 = FiniteGroup::new(4, vec![cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)]).unwrap();
    let q = quotient_group(&sym4, &v4).unwrap();
    let quotient = q.quotient();
    assert_eq!(quotient.order().unwrap() * 4, 24);
    assert_eq!(quotient.order().unwrap(), 6);
    assert!(!quotient.is_abelian());
    let elems: Vec<Permutation> = quotient.elements().unwrap().permutations().collect();
    assert!(elems.iter().any(|a| elems.iter().any(|b| a.compose(b).unwrap() != b.compose(a).unwrap())));

    let q = quotient_group(&sym4, &sym4).unwrap();
    assert_eq!(q.quotient().order().unwrap(), 1);

    let not_normal = FiniteGroup::new(4, vec![cycles("(1 2)", 4)]).unwrap();
    assert!(quotient_group(&sym4, &not_normal).is_err());
}

#[test]
fn projection_is_a_homomorphism() {
    let sym4 = group("sym:4");
    let v4 = FiniteGroup::new(4, vec![cycles("(1 2)(3 4)", 4), cycles("(1 3)(2 4)", 4)]).unwrap();
    let q = quotient_group(&sym4, &v4).unwrap();
    let elems: Vec<Permutation> = sym4.elements().unwrap().permutations().collect();
    for a in &elems {
        let pa = q.project(a, &v4).unwrap();
        assert_eq!(q.project(&q.lift(&pa), &v4).unwrap(), pa);
        for b in &elems {
            let lhs = q.project(&a.compose(b).unwrap(), &v4).unwrap();
            assert_eq!(lhs, pa.compose(&q.project(b, &v4).unwrap()).unwrap());
        }
    }
}

#[test]
fn coset_partitions() {
    let sym3 = group("sym:3");
    let p = coset_orbit_partition(&sym3, &Permutation::identity(3)).unwrap();
    let mut sizes: Vec<u64> = p.orbits.iter().map(|o| o.1).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);

    let trivial = FiniteGroup::new(3, vec![]).unwrap();
    let g = cycles("(1 2)", 3);
    let p = coset_orbit_partition(&trivial, &g).unwrap();
    assert_eq!(p.orbits, vec![(g, 1)]);

    let alt5 = group("alt:5");
    let t = cycles("(1 2)", 5);
    let p = coset_orbit_partition(&alt5, &t).unwrap();
    assert_eq!(p.total(), 60);
    let table = alt5.elements().unwrap();
    for (x, _) in &p.orbits {
        assert!(x.is_identity() || !table.contains(x.images()));
        assert!(table.contains(x.compose(&t.inverse()).unwrap().images()));
    }
    // The odd coset holds transpositions (10), 4-cycles (30) and products
    // of a transposition and a disjoint 3-cycle (20); each type is one orbit.
    let mut sizes: Vec<u64> = p.orbits.iter().map(|o| o.1).collect();
    sizes.sort();
    assert_eq!(sizes, vec![10, 20, 30]);
}

#[test]
fn weighted_orbit_counts_match_full_counts() {
    let sym4 = group("sym:4");
    let alt4 = group("alt:4");
    let t = cycles("(1 2)", 4);
    let coset: Vec<Permutation> = alt4
        .elements()
        .unwrap()
        .permutations()
        .map(|n| n.compose(&t).unwrap())
        .collect();
    let full: u64 = coset
        .iter()
        .map(|x| coset.iter().filter(|y| is_nilpotent_pair(x, y)).count() as u64)
        .sum();
    let p = coset_orbit_partition(&alt4, &t).unwrap();
    let weighted: u64 = p
        .orbits
        .iter()
        .map(|(x, w)| w * coset.iter().filter(|y| is_nilpotent_pair(x, y)).count() as u64)
        .sum();
    assert_eq!(weighted, full);
    assert_eq!(sym4.order().unwrap(), 24);
}

#[test]
fn subgroup_counts() {
    let subs = subgroups_of_small_group(&group("cyc:6")).unwrap();
    assert_eq!(subs.len(), 4);
    let subs = subgroups_of_small_group(&group("sym:3")).unwrap();
    assert_eq!(subs.len(), 6);
    let subs = subgroups_of_small_group(&group("sym:4")).unwrap();
    assert_eq!(subs.len(), 30);

    // C2 x Sym(3) = D12: 16 subgroups, 13 of them nilpotent, in 7 classes.
    let d12 = group("dih:6");
    assert_eq!(d12.order().unwrap(), 12);
    let subs = subgroups_of_small_group(&d12).unwrap();
    assert_eq!(subs.len(), 16);
    let nilpotent: Vec<usize> = (0..subs.len()).filter(|&i| is_nilpotent_subgroup(&subs[i])).collect();
    assert_eq!(nilpotent.len(), 13);
    let classes = subgroup_classes(&d12, &subs).unwrap();
    let nilpotent_classes = classes.iter().filter(|c| is_nilpotent_subgroup(&subs[c[0]])).count();
    assert_eq!(nilpotent_classes, 7);
    assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 16);
}

#[test]
fn simplicity() {
    assert!(is_nonabelian_simple(&group("alt:5")).unwrap());
    assert!(is_nonabelian_simple(&group("psl2:7")).unwrap());
    assert!(!is_nonabelian_simple(&group("sym:5")).unwrap());
    assert!(!is_nonabelian_simple(&group("alt:4")).unwrap());
    assert!(!is_nonabelian_simple(&group("cyc:5")).unwrap());
}
