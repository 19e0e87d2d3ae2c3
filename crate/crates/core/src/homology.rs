//! Relative reduced homology of simplicial pairs over a field.
//!
//! The empty simplex is a genuine face of dimension -1. It contributes to the
//! relative chain complex exactly when it is a face of the big complex but not
//! of the subcomplex.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use thiserror::Error;

use crate::numeric::{sparse_rank, FieldChoice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("face {0:?} is missing its subface {1:?}")]
    NotClosed(Vec<usize>, Vec<usize>),
    #[error("subcomplex face {0:?} is not a face of the complex")]
    NotContained(Vec<usize>),
}

/// A simplicial complex with a subcomplex. Faces are sorted vertex lists; the
/// vertex order fixes the orientation of every simplex.
#[derive(Debug, Clone)]
pub struct SimplicialPair {
    faces: Vec<Vec<usize>>,
    sub: HashSet<Vec<usize>>,
}

impl SimplicialPair {
    /// Checks that both lists are closed under taking subsets and that the
    /// second is contained in the first. Vertex lists are sorted on input.
    pub fn new(faces: Vec<Vec<usize>>, sub: Vec<Vec<usize>>) -> Result<Self, PairError> {
        let norm = |mut f: Vec<usize>| {
            f.sort_unstable();
            f.dedup();
            f
        };
        let faces: Vec<Vec<usize>> = faces.into_iter().map(norm).collect();
        let sub: Vec<Vec<usize>> = sub.into_iter().map(norm).collect();
        let all: HashSet<&Vec<usize>> = faces.iter().collect();
        for (list, set) in [(&faces, &all), (&sub, &sub.iter().collect::<HashSet<_>>())] {
            for f in list.iter() {
                for k in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(k);
                    if !set.contains(&g) {
                        return Err(PairError::NotClosed(f.clone(), g));
                    }
                }
            }
        }
        if let Some(f) = sub.iter().find(|f| !all.contains(f)) {
            return Err(PairError::NotContained(f.clone()));
        }
        let mut uniq: Vec<Vec<usize>> = faces.into_iter().collect::<HashSet<_>>().into_iter().collect();
        uniq.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(SimplicialPair { faces: uniq, sub: sub.into_iter().collect() })
    }

    /// Builds a pair whose closure properties the caller guarantees. Faces are
    /// assumed sorted and distinct.
    pub(crate) fn from_parts(faces: Vec<Vec<usize>>, sub: HashSet<Vec<usize>>) -> Self {
        SimplicialPair { faces, sub }
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn in_subcomplex(&self, f: &[usize]) -> bool {
        self.sub.contains(f)
    }

    /// Relative faces, i.e. faces outside the subcomplex, grouped by dimension.
    fn relative_cells(&self) -> BTreeMap<i64, Vec<&Vec<usize>>> {
        let mut cells: BTreeMap<i64, Vec<&Vec<usize>>> = BTreeMap::new();
        for f in &self.faces {
            if !self.sub.contains(f) {
                cells.entry(f.len() as i64 - 1).or_default().push(f);
            }
        }
        cells
    }
}

/// Dimensions of `H̃_ℓ(Δ, Δ'; k)` for `ℓ` in `dims`.
///
/// The value for `ℓ` is exact as long as the pair contains all faces of
/// dimension `ℓ + 1`; callers that truncate a complex must stop one below the
/// top dimension they supplied.
pub fn relative_reduced_homology_dims(
    pair: &SimplicialPair,
    k: FieldChoice,
    dims: RangeInclusive<i64>,
) -> BTreeMap<i64, usize> {
    let cells = pair.relative_cells();
    let index: HashMap<&Vec<usize>, usize> =
        cells.values().flat_map(|v| v.iter().enumerate().map(|(i, f)| (*f, i))).collect();
    let count = |l: i64| cells.get(&l).map_or(0, Vec::len);
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut rank_of = |l: i64| -> usize {
        *ranks.entry(l).or_insert_with(|| {
            let rows = boundary_rows(cells.get(&l).map_or(&[][..], |v| &v[..]), &index, pair);
            sparse_rank(rows, k)
        })
    };
    let mut out = BTreeMap::new();
    for l in dims.clone() {
        let h = count(l) - rank_of(l) - rank_of(l + 1);
        out.insert(l, h);
    }
    let top = cells.keys().next_back().copied().unwrap_or(-1);
    if *dims.start() <= -1 && *dims.end() >= top {
        let euler_cells: i64 = cells.iter().map(|(l, v)| sign(*l) * v.len() as i64).sum();
        let euler_h: i64 = out.iter().map(|(l, h)| sign(*l) * *h as i64).sum();
        assert_eq!(euler_cells, euler_h, "Euler characteristic mismatch");
    }
    out
}

fn sign(l: i64) -> i64 {
    if l.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Rows of the boundary map on the given cells: one row per cell, one column
/// per relative facet of it.
fn boundary_rows(
    cells: &[&Vec<usize>],
    index: &HashMap<&Vec<usize>, usize>,
    pair: &SimplicialPair,
) -> Vec<Vec<(usize, BigInt)>> {
    cells
        .iter()
        .map(|f| {
            let mut row: Vec<(usize, BigInt)> = (0..f.len())
                .filter_map(|p| {
                    let mut g = (*f).clone();
                    g.remove(p);
                    if pair.sub.contains(&g) {
                        return None;
                    }
                    let col = *index.get(&g).expect("pair is closed under subsets");
                    Some((col, BigInt::from(if p % 2 == 0 { 1 } else { -1 })))
                })
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect()
}

/// Checks `∂∘∂ = 0` on the relative chain complex in every dimension.
pub fn boundary_squares_to_zero(pair: &SimplicialPair) -> bool {
    let cells = pair.relative_cells();
    for v in cells.values() {
        for f in v {
            let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
            for p in 0..f.len() {
                let mut g = (*f).clone();
                g.remove(p);
                if pair.sub.contains(&g) {
                    continue;
                }
                let s1 = if p % 2 == 0 { 1 } else { -1 };
                for q in 0..g.len() {
                    let mut h = g.clone();
                    h.remove(q);
                    if pair.sub.contains(&h) {
                        continue;
                    }
                    let s2 = if q % 2 == 0 { 1 } else { -1 };
                    *acc.entry(h).or_insert(0) += s1 * s2;
                }
            }
            if acc.values().any(|&c| c != 0) {
                return false;
            }
        }
    }
    true
}
