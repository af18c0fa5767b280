//! Regenerates `data/mathieu_generators.txt`.
//!
//! Starts from the standard 1-based generators of M12 and M24, checks
//! their orders, then finds two-element generating sets for each listed
//! action by seeded random search inside point stabilizers. Every group
//! written out is re-checked by Schreier–Sims.
//!
//! Usage: cargo run --release --example derive_generators -- OUT_PATH

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trigal::permgrp::{GroupHandle, Permutation};

/// Cycle notation over 1-based points.
fn gap(n: usize, s: &str) -> Permutation {
    let mut out = String::new();
    let mut num = String::new();
    for ch in s.chars() {
        if ch.is_ascii_digit() {
            num.push(ch);
        } else {
            if !num.is_empty() {
                out.push_str(&(num.parse::<usize>().unwrap() - 1).to_string());
                num.clear();
            }
            out.push(ch);
        }
    }
    Permutation::from_cycles(n, &out).unwrap()
}

fn restrict(g: &Permutation, k: usize) -> Permutation {
    let img: Vec<usize> = (0..k).map(|i| g.image(i)).collect();
    Permutation::from_images(img).expect("restriction preserves the first k points")
}

/// Uniform random element of `g` fixing each point of `fixed`.
fn random_fixing(g: &GroupHandle, fixed: &[usize], rng: &mut ChaCha8Rng) -> Permutation {
    loop {
        let x = g.random_element(rng);
        if fixed.iter().all(|&p| x.image(p) == p) {
            return x;
        }
    }
}

fn search(
    label: &str,
    degree: usize,
    order: u128,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Permutation,
) -> (String, Vec<Permutation>) {
    for _ in 0..100_000 {
        let a = draw(rng);
        let b = draw(rng);
        let h = GroupHandle::new(degree, vec![a.clone(), b.clone()]).unwrap();
        if h.order() == order && h.is_transitive() {
            return (label.to_string(), vec![a, b]);
        }
    }
    panic!("no generating pair found for {label}");
}

fn main() {
    let out_path = std::env::args().nth(1).expect("output path");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let m12 = GroupHandle::new(
        12,
        vec![
            gap(12, "(1,2,3,4,5,6,7,8,9,10,11)"),
            gap(12, "(3,7,11,8)(4,10,5,6)"),
            gap(12, "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"),
        ],
    )
    .unwrap();
    assert_eq!(m12.order(), 95040);
    let m24 = GroupHandle::new(
        24,
        vec![
            gap(24, "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)"),
            gap(24, "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)"),
            gap(24, "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)"),
        ],
    )
    .unwrap();
    assert_eq!(m24.order(), 244823040);

    let mut rows = Vec::new();
    rows.push(search("M11@11", 11, 7920, &mut rng, |r| restrict(&random_fixing(&m12, &[11], r), 11)));
    let m11 = GroupHandle::new(11, rows[0].1.clone()).unwrap();
    rows.push(search("M11@12", 12, 7920, &mut rng, |r| m12.random_element(r)));
    rows.push(search("M12", 12, 95040, &mut rng, |r| m12.random_element(r)));
    rows.push(search("M22", 22, 443520, &mut rng, |r| restrict(&random_fixing(&m24, &[22, 23], r), 22)));
    let m22 = GroupHandle::new(22, rows[3].1.clone()).unwrap();
    let swap = loop {
        let x = m24.random_element(&mut rng);
        if x.image(22) == 23 && x.image(23) == 22 {
            break restrict(&x, 22);
        }
    };
    // Aut(M22): M22 extended by an element interchanging the two fixed points
    rows.push(search("Aut(M22)", 22, 887040, &mut rng, |r| {
        let x = m22.random_element(r);
        if rand::Rng::gen_bool(r, 0.5) { x.then(&swap) } else { x }
    }));
    rows.push(search("M23", 23, 10200960, &mut rng, |r| restrict(&random_fixing(&m24, &[23], r), 23)));
    rows.push(search("M24", 24, 244823040, &mut rng, |r| m24.random_element(r)));
    rows.push(search("PSL(2,11)@11", 11, 660, &mut rng, |r| m11.random_element(r)));

    let mut text = String::from(
        "# NAME degree generators (0-based cycle notation, two per group)\n",
    );
    for (label, gens) in &rows {
        let h = GroupHandle::new(gens[0].degree(), gens.clone()).unwrap();
        eprintln!("{label}: order {}", h.order());
        let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        text.push_str(&format!("{label} {} {}\n", gens[0].degree(), g.join(" ")));
    }
    std::fs::write(&out_path, text).unwrap();
}
