//! Shared corpus for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toricface::complex::{build_complex, GeneratorSystem, MonoidalComplex};
use toricface::document::ComplexDocument;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn load(name: &str) -> MonoidalComplex {
    let text = std::fs::read_to_string(data_path(name)).expect("data file");
    ComplexDocument::parse(&text).expect("parses").build().expect("builds")
}

pub fn complex(d: usize, gens: &[Vec<i64>], facets: &[Vec<usize>]) -> MonoidalComplex {
    build_complex(GeneratorSystem::from_ints(d, gens).unwrap(), facets).unwrap()
}

pub fn polynomial_ring(n: usize) -> MonoidalComplex {
    let gens: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    complex(n, &gens, &[(0..n).collect()])
}

pub fn two_rays() -> MonoidalComplex {
    complex(2, &[vec![1, 0], vec![0, 1]], &[vec![0], vec![1]])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn maximal(sets: Vec<BTreeSet<usize>>) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for s in &sets {
        if !sets.iter().any(|t| t != s && s.is_subset(t)) && !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// A complex on coordinate cones of `R^d`.
///
/// The fan is given by facets of coordinate sets. Every facet monoid is
/// generated by the chosen lattice points of coordinate sum `k` supported in
/// it, which always contain `k e_i` for each coordinate `i` of the facet.
/// Taking all chosen points of a support makes the monoids compatible.
pub fn coordinate_complex(d: usize, k: i64, cells: &[BTreeSet<usize>], extra: &[Vec<i64>]) -> MonoidalComplex {
    let mut points: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| if i == j { k } else { 0 }).collect()).collect();
    for p in extra {
        if !points.contains(p) {
            points.push(p.clone());
        }
    }
    let support = |p: &Vec<i64>| -> BTreeSet<usize> { (0..d).filter(|&i| p[i] != 0).collect() };
    let facets: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| (0..points.len()).filter(|&j| support(&points[j]).is_subset(c)).collect())
        .collect();
    complex(d, &points, &facets)
}

/// Random coordinate complex with at most `max_n` generators and at least two
/// facets when `multi` is set.
pub fn random_complex(r: &mut ChaCha8Rng, max_n: usize, multi: bool) -> MonoidalComplex {
    loop {
        let d = r.gen_range(2..=3usize);
        let k = r.gen_range(1..=2i64);
        let mut cells: Vec<BTreeSet<usize>> = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let size = r.gen_range(1..=d);
            let mut coords: Vec<usize> = (0..d).collect();
            coords.shuffle(r);
            cells.push(coords[..size].iter().copied().collect());
        }
        let covered: BTreeSet<usize> = cells.iter().flatten().copied().collect();
        for i in 0..d {
            if !covered.contains(&i) {
                cells.push(BTreeSet::from([i]));
            }
        }
        let cells = maximal(cells);
        if multi && cells.len() < 2 {
            continue;
        }
        let mut extra = Vec::new();
        if k == 2 {
            for c in &cells {
                let c: Vec<usize> = c.iter().copied().collect();
                for a in 0..c.len() {
                    for b in a + 1..c.len() {
                        if r.gen_bool(0.5) {
                            let mut p = vec![0; d];
                            p[c[a]] = 1;
                            p[c[b]] = 1;
                            extra.push(p);
                        }
                    }
                }
            }
        }
        let cx = coordinate_complex(d, k, &cells, &extra);
        if cx.n() <= max_n {
            return cx;
        }
    }
}

/// The cliques of a graph on `n` vertices.
pub fn flag_complex(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut cliques = Vec::new();
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| adj(a, b))) {
            cliques.push(s.into_iter().collect());
        }
    }
    maximal(cliques)
}

/// Stanley-Reisner ring of the clique complex of a random graph.
pub fn random_flag_sr(r: &mut ChaCha8Rng, max_vertices: usize) -> MonoidalComplex {
    let n = r.gen_range(2..=max_vertices);
    let p = r.gen_range(0.3..0.8);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    coordinate_complex(n, 1, &flag_complex(n, &edges), &[])
}
