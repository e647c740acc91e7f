//! Seeded randomness for searches with exact certificates.

use crate::field::{Field, Rat};
use crate::quiver::{Path, Presentation, Quiver, Relation};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random scalar: an integer in `[-1000, 1000]` over ℚ, a residue over 𝔽ₚ.
pub fn scalar(k: Field, rng: &mut Rng) -> Rat {
    match k {
        Field::Rationals => Rat::int((rng.next_u64() % 2001) as i64 - 1000),
        Field::Prime(p) => Rat::int((rng.next_u64() % p as u64) as i64),
    }
}

fn below(rng: &mut Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A random finite-dimensional presentation with `1..=max_vertices`
/// vertices and at most `max_arrows` arrows.
///
/// Arrows go from a vertex to itself or to a later one, with at most one
/// loop per vertex and every loop squaring to zero, so all paths are short.
/// A few extra zero relations and binomial relations between parallel paths
/// are added, and the idempotent `e` is a random nonempty vertex set.
pub fn random_presentation(k: Field, seed: u64, max_vertices: usize, max_arrows: usize) -> Presentation {
    let mut rng = rng(seed);
    let n = 1 + below(&mut rng, max_vertices.max(1));
    let mut q = Quiver::new();
    for v in 0..n {
        q.add_vertex(&format!("{}", v + 1)).unwrap();
    }
    let m = below(&mut rng, max_arrows + 1);
    let mut looped = vec![false; n];
    let mut loops = Vec::new();
    for i in 0..m {
        let s = below(&mut rng, n);
        let mut t = s + below(&mut rng, n - s);
        if t == s && looped[s] {
            if s + 1 == n {
                continue;
            }
            t = s + 1 + below(&mut rng, n - s - 1);
        }
        let a = q.add_arrow(&format!("a{}", i), &format!("{}", s + 1), &format!("{}", t + 1)).unwrap();
        if s == t {
            looped[s] = true;
            loops.push(a);
        }
    }
    let mut relations: Vec<Relation> =
        loops.iter().map(|x| Relation { terms: vec![(Rat::ONE, q.path(&[*x, *x]).unwrap())] }).collect();

    let mut paths: Vec<Path> = (0..q.arrows.len()).map(|a| q.arrow_path(a)).collect();
    let mut frontier = paths.clone();
    for _ in 1..3 {
        let mut next = Vec::new();
        for p in &frontier {
            for a in 0..q.arrows.len() {
                if let Some(x) = p.concat(&q.arrow_path(a)) {
                    if !(x.arrows.windows(2).any(|w| w[0] == w[1])) {
                        next.push(x);
                    }
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let long: Vec<&Path> = paths.iter().filter(|p| p.len() >= 2).collect();
    for _ in 0..below(&mut rng, 3) {
        if long.is_empty() {
            break;
        }
        let p = long[below(&mut rng, long.len())];
        let parallel: Vec<&&Path> =
            long.iter().filter(|x| x.source == p.source && x.target == p.target && **x != p).collect();
        if parallel.is_empty() || rng.next_u64().is_multiple_of(2) {
            relations.push(Relation { terms: vec![(Rat::ONE, p.clone())] });
        } else {
            let x = parallel[below(&mut rng, parallel.len())];
            let c = loop {
                let c = k.from_rat(&Rat::int(1 + below(&mut rng, 4) as i64)).unwrap();
                if !c.is_zero() {
                    break c;
                }
            };
            relations.push(Relation { terms: vec![(Rat::ONE, p.clone()), (k.neg(&c), (*x).clone())] });
        }
    }

    let mut e: Vec<usize> = (0..n).filter(|_| rng.next_u64().is_multiple_of(2)).collect();
    if e.is_empty() {
        e.push(below(&mut rng, n));
    }
    let mut pres = Presentation::new(k, q);
    pres.relations = relations;
    pres.idempotents = vec![("e".into(), e)];
    pres
}
