use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trigal::permgrp::{builtin_group, CycleType, GroupHandle, GroupName, Permutation};

/// Partition numbers by the standard coin-change recurrence.
fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

/// Size of the orbit of `(0, 1, ..., k-1)` on ordered k-tuples, by BFS.
fn tuple_orbit_size(g: &GroupHandle, k: usize) -> usize {
    let start: Vec<usize> = (0..k).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(t) = queue.pop() {
        for x in g.generators() {
            let u: Vec<usize> = t.iter().map(|&i| x.image(i)).collect();
            if seen.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    seen.len()
}

fn bfs_transitivity(g: &GroupHandle, max_k: usize) -> usize {
    let n = g.degree();
    let mut k = 0;
    while k < max_k.min(n) {
        let falling: usize = (0..=k).map(|i| n - i).product();
        if tuple_orbit_size(g, k + 1) != falling {
            break;
        }
        k += 1;
    }
    k
}

fn group(s: &str) -> GroupHandle {
    builtin_group(s.parse().unwrap()).unwrap()
}

#[test]
fn symmetric_cycle_types_are_all_partitions() {
    for n in 1..=10 {
        let s = builtin_group(GroupName::Symmetric(n)).unwrap();
        assert_eq!(s.cycle_type_set().unwrap().len(), partition_count(n), "n = {n}");
    }
}

#[test]
fn alternating_cycle_types_are_even_partitions() {
    for n in 3..=9 {
        let a = builtin_group(GroupName::Alternating(n)).unwrap();
        let types = a.cycle_type_set().unwrap();
        assert!(types.iter().all(CycleType::is_even));
        let s = builtin_group(GroupName::Symmetric(n)).unwrap().cycle_type_set().unwrap();
        let even: BTreeSet<_> = s.into_iter().filter(CycleType::is_even).collect();
        assert_eq!(types, even);
    }
}

#[test]
fn transitivity_of_full_groups() {
    for n in 3..=8 {
        let a = builtin_group(GroupName::Alternating(n)).unwrap();
        assert_eq!(a.transitivity_degree(n), n - 2, "A{n}");
        assert_eq!(bfs_transitivity(&a, n), n - 2);
        let s = builtin_group(GroupName::Symmetric(n)).unwrap();
        for max_k in 1..=n + 1 {
            assert_eq!(s.transitivity_degree(max_k), max_k.min(n));
        }
    }
    assert_eq!(group("A5").transitivity_degree(4), 3);
}

#[test]
fn pgl2_is_sharply_three_transitive() {
    for q in [4u64, 5, 7, 8, 9, 11] {
        let g = builtin_group(GroupName::Pgl { d: 2, q }).unwrap();
        let q128 = q as u128;
        assert_eq!(g.order(), (q128 + 1) * q128 * (q128 - 1));
        assert_eq!(g.transitivity_degree(4), 3, "q = {q}");
        assert_eq!(bfs_transitivity(&g, 4), 3);
    }
}

#[test]
fn bsgs_transitivity_agrees_with_tuple_bfs() {
    for s in [
        "AGL(1,8)", "AGammaL(1,8)", "AGL(2,3)", "PSL(2,8)", "PGL(3,2)", "PSL(2,11)@11", "M11@11",
        "M11@12", "M12", "C7", "A6",
    ] {
        let g = group(s);
        assert_eq!(g.transitivity_degree(4), bfs_transitivity(&g, 4), "{s}");
    }
    assert_eq!(group("M12").transitivity_degree(5), 5);
    assert_eq!(group("M11@11").transitivity_degree(5), 4);
    assert_eq!(group("M11@12").transitivity_degree(5), 3);
}

#[test]
fn two_transitive_groups_are_primitive() {
    for s in [
        "AGL(1,9)", "AGL(1,8)", "AGL(2,3)", "AGammaL(1,16)", "PGL(2,5)", "PSL(2,7)", "PGL(3,3)",
        "PSL(2,11)@11", "M11@11", "M11@12", "M12", "M22", "Aut(M22)", "M23", "M24", "S6", "A7",
    ] {
        let g = group(s);
        assert!(g.transitivity_degree(2) >= 2, "{s}");
        assert!(g.is_primitive(), "{s}");
    }
    let imprimitive = GroupHandle::new(
        6,
        vec![
            Permutation::from_cycles(6, "(0,1,2,3,4,5)").unwrap(),
            Permutation::from_cycles(6, "(1,5)(2,4)").unwrap(),
        ],
    )
    .unwrap();
    assert!(!imprimitive.is_primitive());
}

#[test]
fn orders_divide_factorial_and_membership_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in [
        "S7", "A8", "C13", "AGL(1,8)", "AGammaL(1,9)", "AGL(2,4)", "PGL(2,7)", "PSL(2,9)",
        "PGammaL(2,8)", "PSL(3,3)", "M11@11", "M12", "M22", "M24",
    ] {
        let g = group(s);
        let n = g.degree() as u128;
        let factorial: u128 = (1..=n).product();
        assert_eq!(factorial % g.order(), 0, "{s}");
        let gens = g.generators().to_vec();
        for gen in &gens {
            assert!(g.contains(gen));
        }
        let mut word = Permutation::identity(g.degree());
        for _ in 0..10_000 {
            let x = &gens[rand::Rng::gen_range(&mut rng, 0..gens.len())];
            word = word.then(x);
            assert!(g.contains(&word), "{s}");
        }
    }
    let a5 = group("A5");
    assert!(!a5.contains(&Permutation::from_cycles(5, "(0,1)").unwrap()));
}

#[test]
fn streamed_elements_are_members_and_distinct() {
    for s in ["PGL(2,5)", "AGL(1,8)", "M11@11", "PSL(2,11)@11"] {
        let g = group(s);
        let mut seen = HashSet::new();
        g.for_each_element(|x| {
            assert!(g.contains(x));
            seen.insert(x.clone());
        });
        assert_eq!(seen.len() as u128, g.order(), "{s}");
    }
}
