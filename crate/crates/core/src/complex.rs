//! Monoidal complexes given by a global system of degree-one generators and
//! the index sets of the generators spanning each maximal cone.
//!
//! Face monoids are never stored. A face `D` of a facet `C` carries the monoid
//! `M_C ∩ D`, and every question about it is answered by membership tests in
//! the facet monoids.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{to_bigints, IntMatrix};
use crate::polyhedral::{validate_fan, Cone, ConeError, Fan, FanViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("generator {index} has length {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("generators {first} and {second} coincide")]
    DuplicateGenerator { first: usize, second: usize },
    #[error("facet {facet} refers to generator {index}, which does not exist")]
    IndexOutOfRange { facet: usize, index: usize },
    #[error("facet {0} has no generators")]
    EmptyFacet(usize),
    #[error("generator {0} belongs to no facet")]
    UnusedGenerator(usize),
    #[error("no facets given")]
    NoFacets,
    #[error("the cone of facet {facet} is a face of the cone of facet {other}")]
    NotMaximal { facet: usize, other: usize },
    #[error("facet {facet} has no linear functional taking the value 1 on all its generators")]
    NotHomogeneous { facet: usize },
    #[error(transparent)]
    Fan(#[from] FanViolation),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("selection is not a subfan: {0}")]
    NotASubfan(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("membership search needs degree {degree}, above the bound {bound}")]
    BoundExceeded { degree: usize, bound: usize },
}

/// Ordered list of distinct nonzero integer vectors `a_1, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSystem {
    ambient_dim: usize,
    gens: Vec<Vec<BigInt>>,
}

impl GeneratorSystem {
    pub fn new(ambient_dim: usize, gens: Vec<Vec<BigInt>>) -> Result<Self, ComplexError> {
        let mut seen: BTreeMap<&Vec<BigInt>, usize> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.len() != ambient_dim {
                return Err(ComplexError::DimensionMismatch {
                    index: i,
                    expected: ambient_dim,
                    found: g.len(),
                });
            }
            if g.iter().all(Zero::is_zero) {
                return Err(ComplexError::ZeroGenerator(i));
            }
            if let Some(&first) = seen.get(g) {
                return Err(ComplexError::DuplicateGenerator { first, second: i });
            }
            seen.insert(g, i);
        }
        Ok(GeneratorSystem { ambient_dim, gens })
    }

    pub fn from_ints(ambient_dim: usize, gens: &[Vec<i64>]) -> Result<Self, ComplexError> {
        Self::new(ambient_dim, gens.iter().map(|g| to_bigints(g)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, j: usize) -> &[BigInt] {
        &self.gens[j]
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.gens
    }
}

/// A monoidal complex on a rational pointed fan whose facet monoids are
/// generated in degree one by subsets of a global generator list.
#[derive(Debug, Clone)]
pub struct MonoidalComplex {
    gens: GeneratorSystem,
    facets: Vec<Vec<usize>>,
    cones: Vec<Cone>,
    fan: Fan,
    gradings: Vec<Vec<BigRational>>,
}

/// Builds the complex with the given generators and facet index sets.
///
/// The cone of each facet is spanned by its generators; the cones must form a
/// fan in which every listed cone is maximal.
pub fn build_complex(
    gens: GeneratorSystem,
    facets: &[Vec<usize>],
) -> Result<MonoidalComplex, ComplexError> {
    let n = gens.len();
    let d = gens.ambient_dim();
    if facets.is_empty() {
        return Err(ComplexError::NoFacets);
    }
    let mut used = vec![false; n];
    let mut sets = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        if f.is_empty() {
            return Err(ComplexError::EmptyFacet(i));
        }
        let mut s: Vec<usize> = f.clone();
        s.sort_unstable();
        s.dedup();
        if let Some(&j) = s.iter().find(|&&j| j >= n) {
            return Err(ComplexError::IndexOutOfRange { facet: i, index: j });
        }
        for &j in &s {
            used[j] = true;
        }
        sets.push(s);
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Err(ComplexError::UnusedGenerator(j));
    }
    let mut cones = Vec::with_capacity(sets.len());
    for s in &sets {
        let rays: Vec<Vec<BigInt>> = s.iter().map(|&j| gens.gens[j].clone()).collect();
        cones.push(Cone::from_rays(d, &rays)?);
    }
    for (i, a) in cones.iter().enumerate() {
        for (j, b) in cones.iter().enumerate() {
            if i != j && a.is_face_of(b) {
                return Err(ComplexError::NotMaximal { facet: i, other: j });
            }
        }
    }
    let fan = validate_fan(d, &cones)?;
    let mut gradings = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let rows: Vec<Vec<BigInt>> = s.iter().map(|&j| gens.gens[j].clone()).collect();
        let m = IntMatrix::from_big_rows(&rows, d);
        let ones = vec![BigRational::one(); s.len()];
        match crate::numeric::solve_rational(&m, &ones) {
            Some(w) => gradings.push(w),
            None => return Err(ComplexError::NotHomogeneous { facet: i }),
        }
    }
    Ok(MonoidalComplex { gens, facets: sets, cones, fan, gradings })
}

/// First failure found by [`MonoidalComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationFailure {
    /// `element` lies in the monoid of `facet` and in the common face, but not
    /// in the monoid of `other`.
    #[error("facets {facet} and {other} disagree on the face {face:?}: {element:?} lies only in the monoid of facet {facet}")]
    Incompatible { facet: usize, other: usize, face: Box<Cone>, element: Vec<BigInt> },
    #[error("generators {indices:?} of facet {facet} lie on the common face {face:?} but facet {other} does not list them")]
    UnlistedGenerators { facet: usize, other: usize, face: Box<Cone>, indices: Vec<usize> },
    #[error(transparent)]
    Search(#[from] ComplexError),
}

impl MonoidalComplex {
    pub fn generators(&self) -> &GeneratorSystem {
        &self.gens
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gens.ambient_dim()
    }

    /// Sorted generator index sets of the facets, in input order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// A rational functional equal to 1 on every generator of facet `i`.
    pub fn grading(&self, i: usize) -> &[BigRational] {
        &self.gradings[i]
    }

    /// Degree of `v` in facet `i`, if `v` lies in the cone and the degree is a
    /// nonnegative integer.
    pub fn degree_in(&self, i: usize, v: &[BigInt]) -> Option<usize> {
        if !self.cones[i].contains(v) {
            return None;
        }
        let w: BigRational = self.gradings[i]
            .iter()
            .zip(v)
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .fold(BigRational::zero(), |s, x| s + x);
        if !w.is_integer() || w.is_negative() {
            return None;
        }
        usize::try_from(w.to_integer()).ok()
    }

    /// Searches for generators of facet `i` summing to `v`. The number of
    /// summands is forced by the grading. Returns the sorted generator indices
    /// of one decomposition, or `None` when `v` is not in the facet monoid.
    pub fn monoid_membership(
        &self,
        i: usize,
        v: &[BigInt],
        bound: Option<usize>,
    ) -> Result<Option<Vec<usize>>, ComplexError> {
        let Some(m) = self.degree_in(i, v) else { return Ok(None) };
        if let Some(b) = bound {
            if m > b {
                return Err(ComplexError::BoundExceeded { degree: m, bound: b });
            }
        }
        let mut acc = Vec::with_capacity(m);
        let found = self.decompose(i, v.to_vec(), m, 0, &mut acc);
        Ok(found.then_some(acc))
    }

    fn decompose(&self, i: usize, v: Vec<BigInt>, m: usize, start: usize, acc: &mut Vec<usize>) -> bool {
        if m == 0 {
            return v.iter().all(Zero::is_zero);
        }
        let facet = &self.facets[i];
        for (k, &j) in facet.iter().enumerate().skip(start) {
            let g = &self.gens.gens[j];
            let r: Vec<BigInt> = v.iter().zip(g).map(|(a, b)| a - b).collect();
            if !self.cones[i].contains(&r) {
                continue;
            }
            acc.push(j);
            if self.decompose(i, r, m - 1, k, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }

    /// Checks that any two facets induce the same monoid on their common face.
    ///
    /// Facet monoids are generated in degree one, so the face monoids agree
    /// exactly when each side's generators on the face lie in the other
    /// side's monoid. `degree_bound` caps the membership searches.
    pub fn validate(&self, degree_bound: usize) -> Result<(), ValidationFailure> {
        let r = self.facets.len();
        let mut shared = Vec::new();
        for a in 0..r {
            for b in 0..r {
                if a == b {
                    continue;
                }
                let face = self.cones[a].intersect(&self.cones[b]).map_err(ComplexError::from)?;
                let on_face: Vec<usize> = self.facets[a]
                    .iter()
                    .copied()
                    .filter(|&j| face.contains(&self.gens.gens[j]))
                    .collect();
                for &j in &on_face {
                    let v = &self.gens.gens[j];
                    if self.monoid_membership(b, v, Some(degree_bound))?.is_none() {
                        return Err(ValidationFailure::Incompatible {
                            facet: a,
                            other: b,
                            face: Box::new(face.clone()),
                            element: v.clone(),
                        });
                    }
                }
                shared.push((a, b, face, on_face));
            }
        }
        // equal face monoids have equal degree-one parts
        for (a, b, face, on_face) in shared {
            let missing: Vec<usize> =
                on_face.into_iter().filter(|j| !self.facets[b].contains(j)).collect();
            if !missing.is_empty() {
                return Err(ValidationFailure::UnlistedGenerators { facet: a, other: b, face: Box::new(face), indices: missing });
            }
        }
        Ok(())
    }

    pub fn nerve(&self) -> NerveComplex {
        NerveComplex::new(self.n(), self.facets.clone())
    }

    /// Distinct lattice points of degree `t` in the monoid of facet `i`.
    pub fn facet_elements(&self, i: usize, t: usize) -> BTreeSet<Vec<BigInt>> {
        let mut layer: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        layer.insert(vec![BigInt::zero(); self.ambient_dim()]);
        for _ in 0..t {
            let mut next = BTreeSet::new();
            for v in &layer {
                for &j in &self.facets[i] {
                    next.insert(v.iter().zip(&self.gens.gens[j]).map(|(a, b)| a + b).collect());
                }
            }
            layer = next;
        }
        layer
    }

    /// Distinct elements of degree `t` in the union of all facet monoids.
    pub fn elements_of_degree(&self, t: usize) -> BTreeSet<Vec<BigInt>> {
        (0..self.facets.len()).flat_map(|i| self.facet_elements(i, t)).collect()
    }

    /// Values `H(0), ..., H(max_degree)` of the Hilbert function of the toric
    /// face ring, counted as lattice points of the monoids.
    pub fn hilbert_function(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|t| self.elements_of_degree(t).len()).collect()
    }

    /// Restricts to the complex with one facet per selected index.
    pub fn facet_subcomplex(&self, i: usize) -> MonoidalComplex {
        restricted_subcomplex(self, &[self.facets[i].clone()])
            .expect("a facet is always a subfan")
            .complex
    }
}

/// Simplicial complex on `0..n` given by its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerveComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl NerveComplex {
    /// Keeps only the inclusion-maximal sets, sorted.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Self {
        let mut sets: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        sets.sort();
        sets.dedup();
        let facets = sets
            .iter()
            .filter(|s| !sets.iter().any(|t| t != *s && is_subset(s, t)))
            .cloned()
            .collect();
        NerveComplex { n, facets }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Whether the sorted set `s` is a face.
    pub fn contains(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(s, f))
    }

    /// Whether the support of an exponent vector is a face.
    pub fn contains_support(&self, exponents: &[u32]) -> bool {
        let s: Vec<usize> = (0..exponents.len()).filter(|&i| exponents[i] > 0).collect();
        self.contains(&s)
    }

    /// All faces, sorted by size and then lexicographically. The empty face
    /// comes first.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            for mask in 0u64..(1u64 << f.len()) {
                all.insert((0..f.len()).filter(|&b| mask >> b & 1 == 1).map(|b| f[b]).collect());
            }
        }
        let mut v: Vec<Vec<usize>> = all.into_iter().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    /// Minimal non-faces, sorted by size and then lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let faces = self.faces();
        let face_set: BTreeSet<&Vec<usize>> = faces.iter().collect();
        let mut out = Vec::new();
        for f in &faces {
            let lo = f.last().map_or(0, |&m| m + 1);
            for v in lo..self.n {
                let mut s = f.clone();
                s.push(v);
                if face_set.contains(&s) {
                    continue;
                }
                let minimal = (0..s.len()).all(|k| {
                    let mut t = s.clone();
                    t.remove(k);
                    face_set.contains(&t)
                });
                if minimal {
                    out.push(s);
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Flag means every minimal non-face has two elements.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|s| s.len() == 2)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Veronese subcomplex: same fan, generated by all degree-`m` elements.
/// Generators are ordered lexicographically by coordinates; `m = 1` returns a
/// copy of the input.
pub fn veronese(cx: &MonoidalComplex, m: usize) -> Result<MonoidalComplex, ComplexError> {
    if m == 0 {
        return Err(ComplexError::InvalidArgument("veronese degree must be at least 1".into()));
    }
    if m == 1 {
        return Ok(cx.clone());
    }
    let per_facet: Vec<BTreeSet<Vec<BigInt>>> =
        (0..cx.facets.len()).map(|i| cx.facet_elements(i, m)).collect();
    let all: BTreeSet<&Vec<BigInt>> = per_facet.iter().flatten().collect();
    let gens: Vec<Vec<BigInt>> = all.into_iter().cloned().collect();
    let index: BTreeMap<&Vec<BigInt>, usize> = gens.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let facets: Vec<Vec<usize>> =
        per_facet.iter().map(|s| s.iter().map(|v| index[v]).collect()).collect();
    let gs = GeneratorSystem::new(cx.ambient_dim(), gens.clone())?;
    build_complex(gs, &facets)
}

fn embed(v: &[BigInt], before: usize, after: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); before];
    out.extend(v.iter().cloned());
    out.extend(std::iter::repeat_n(BigInt::zero(), after));
    out
}

/// Join of two complexes in orthogonal coordinates. Its ring is the tensor
/// product of the two toric face rings.
pub fn tensor_join(a: &MonoidalComplex, b: &MonoidalComplex) -> Result<MonoidalComplex, ComplexError> {
    let (d, e, n) = (a.ambient_dim(), b.ambient_dim(), a.n());
    let mut gens: Vec<Vec<BigInt>> = a.gens.gens.iter().map(|g| embed(g, 0, e)).collect();
    gens.extend(b.gens.gens.iter().map(|g| embed(g, d, 0)));
    let mut facets = Vec::new();
    for f in &a.facets {
        for g in &b.facets {
            let mut s = f.clone();
            s.extend(g.iter().map(|j| j + n));
            facets.push(s);
        }
    }
    build_complex(GeneratorSystem::new(d + e, gens)?, &facets)
}

/// Union of the two fans in orthogonal coordinates, glued at the origin.
pub fn fiber_union(a: &MonoidalComplex, b: &MonoidalComplex) -> Result<MonoidalComplex, ComplexError> {
    let (d, e, n) = (a.ambient_dim(), b.ambient_dim(), a.n());
    let mut gens: Vec<Vec<BigInt>> = a.gens.gens.iter().map(|g| embed(g, 0, e)).collect();
    gens.extend(b.gens.gens.iter().map(|g| embed(g, d, 0)));
    let mut facets = a.facets.clone();
    facets.extend(b.facets.iter().map(|g| g.iter().map(|j| j + n).collect()));
    build_complex(GeneratorSystem::new(d + e, gens)?, &facets)
}

/// Segre product. Generators are the pairs `(a_i, b_j)` with `i` and `j` in a
/// common pair of facets, ordered by `(i, j)`.
pub fn segre(a: &MonoidalComplex, b: &MonoidalComplex) -> Result<MonoidalComplex, ComplexError> {
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for f in &a.facets {
        for g in &b.facets {
            for &i in f {
                for &j in g {
                    pairs.insert((i, j));
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let gens: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut v = a.gens.gens[i].clone();
            v.extend(b.gens.gens[j].iter().cloned());
            v
        })
        .collect();
    let index = &index;
    let mut facets = Vec::new();
    for f in &a.facets {
        for g in &b.facets {
            facets.push(f.iter().flat_map(|&i| g.iter().map(move |&j| index[&(i, j)])).collect());
        }
    }
    build_complex(GeneratorSystem::new(a.ambient_dim() + b.ambient_dim(), gens)?, &facets)
}

/// Result of [`restricted_subcomplex`].
#[derive(Debug, Clone)]
pub struct Restriction {
    pub complex: MonoidalComplex,
    /// Old generator index of each new generator.
    pub kept: Vec<usize>,
    /// Whether every nerve face of the original complex supported on the kept
    /// generators is a nerve face of the subcomplex.
    pub is_restricted: bool,
}

/// Subcomplex on the cones of `cx` spanned by the selected generator sets.
///
/// Each selected set must be exactly the generators of some face of a facet.
/// Sets contained in other selected sets are dropped.
pub fn restricted_subcomplex(
    cx: &MonoidalComplex,
    selection: &[Vec<usize>],
) -> Result<Restriction, ComplexError> {
    if selection.is_empty() {
        return Err(ComplexError::NotASubfan("empty selection".into()));
    }
    let mut sets = Vec::new();
    for s in selection {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(ComplexError::NotASubfan("empty cone selected".into()));
        }
        if let Some(&j) = s.iter().find(|&&j| j >= cx.n()) {
            return Err(ComplexError::NotASubfan(format!("generator {j} does not exist")));
        }
        let rays: Vec<Vec<BigInt>> = s.iter().map(|&j| cx.gens.gens[j].clone()).collect();
        let c = Cone::from_rays(cx.ambient_dim(), &rays)?;
        let is_face = (0..cx.facets.len()).any(|i| {
            is_subset(&s, &cx.facets[i])
                && c.is_face_of(&cx.cones[i])
                && cx.facets[i].iter().filter(|&&j| c.contains(&cx.gens.gens[j])).count() == s.len()
        });
        if !is_face {
            return Err(ComplexError::NotASubfan(format!("{s:?} does not span a face of the fan")));
        }
        sets.push(s);
    }
    let maximal = NerveComplex::new(cx.n(), sets).facets().to_vec();
    let kept: Vec<usize> = maximal.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let relabel: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let gens: Vec<Vec<BigInt>> = kept.iter().map(|&j| cx.gens.gens[j].clone()).collect();
    let facets: Vec<Vec<usize>> =
        maximal.iter().map(|s| s.iter().map(|j| relabel[j]).collect()).collect();
    let complex = build_complex(GeneratorSystem::new(cx.ambient_dim(), gens)?, &facets)?;
    let sub_nerve = complex.nerve();
    let is_restricted = cx.facets.iter().all(|f| {
        let inside: Vec<usize> = f.iter().filter_map(|j| relabel.get(j).copied()).collect();
        sub_nerve.contains(&inside)
    });
    Ok(Restriction { complex, kept, is_restricted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cx(d: usize, gens: &[Vec<i64>], facets: &[Vec<usize>]) -> MonoidalComplex {
        build_complex(GeneratorSystem::from_ints(d, gens).unwrap(), facets).unwrap()
    }

    fn quadrants() -> MonoidalComplex {
        cx(
            3,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 1, 0]],
            &[vec![0, 1, 3], vec![0, 2], vec![1, 2]],
        )
    }

    fn polynomial(n: usize) -> MonoidalComplex {
        let gens: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        cx(n, &gens, &[(0..n).collect()])
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        to_bigints(v)
    }

    #[test]
    fn builds_three_quadrants() {
        let c = quadrants();
        assert_eq!(c.n(), 4);
        assert_eq!(c.fan().facet_indices().len(), 3);
        assert_eq!(c.fan().ray_count(), 3);
        assert!(c.validate(6).is_ok());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(c.grading(1), &[half.clone(), BigRational::zero(), half][..]);
    }

    #[test]
    fn polynomial_ring_is_one_simplex() {
        let c = polynomial(3);
        assert!(c.validate(4).is_ok());
        assert_eq!(c.nerve().facets(), &[vec![0, 1, 2]]);
        assert!(c.nerve().minimal_nonfaces().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let g = GeneratorSystem::from_ints(2, &[vec![1, 0], vec![1, 0]]);
        assert_eq!(g.unwrap_err(), ComplexError::DuplicateGenerator { first: 0, second: 1 });
        let g = GeneratorSystem::from_ints(2, &[vec![1, 0], vec![0, 2]]).unwrap();
        assert!(matches!(build_complex(g.clone(), &[vec![0, 2]]), Err(ComplexError::IndexOutOfRange { .. })));
        assert!(matches!(build_complex(g.clone(), &[vec![0]]), Err(ComplexError::UnusedGenerator(1))));
        assert!(matches!(build_complex(g, &[vec![0, 1], vec![0]]), Err(ComplexError::NotMaximal { .. })));
        let g = GeneratorSystem::from_ints(2, &[vec![1, 0], vec![1, 2], vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(build_complex(g, &[vec![0, 1], vec![2, 3]]), Err(ComplexError::Fan(_))));
        // (1,0), (2,1), (3,1) span a 2-cone but do not lie on an affine line
        let g = GeneratorSystem::from_ints(2, &[vec![1, 0], vec![2, 1], vec![3, 1]]).unwrap();
        assert!(matches!(build_complex(g, &[vec![0, 1, 2]]), Err(ComplexError::NotHomogeneous { facet: 0 })));
    }

    #[test]
    fn membership_uses_the_grading() {
        let c = quadrants();
        assert_eq!(c.monoid_membership(0, &big(&[1, 1, 0]), None).unwrap(), Some(vec![3]));
        assert_eq!(c.monoid_membership(0, &big(&[1, 0, 0]), None).unwrap(), None);
        let w = c.monoid_membership(0, &big(&[2, 2, 0]), None).unwrap().unwrap();
        assert!(w == vec![0, 1] || w == vec![3, 3]);
        assert_eq!(c.monoid_membership(0, &big(&[3, 1, 0]), None).unwrap(), Some(vec![0, 3]));
        assert_eq!(c.monoid_membership(1, &big(&[2, 2, 0]), None).unwrap(), None);
        assert!(matches!(
            c.monoid_membership(0, &big(&[8, 8, 0]), Some(4)),
            Err(ComplexError::BoundExceeded { degree: 8, bound: 4 })
        ));
    }

    #[test]
    fn incompatible_face_monoids_are_reported() {
        // the ray through (1,0,0) carries 2N in one facet and N in another
        let c = cx(
            3,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 1, 0], vec![1, 0, 0]],
            &[vec![0, 1, 3], vec![4, 2], vec![1, 2]],
        );
        match c.validate(6).unwrap_err() {
            ValidationFailure::Incompatible { facet, other, element, .. } => {
                assert_eq!((facet, other), (1, 0));
                assert_eq!(element, big(&[1, 0, 0]));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn nerve_of_three_quadrants() {
        let nv = quadrants().nerve();
        assert_eq!(nv.facets(), &[vec![0, 1, 3], vec![0, 2], vec![1, 2]]);
        assert_eq!(nv.minimal_nonfaces(), vec![vec![2, 3], vec![0, 1, 2]]);
        assert!(!nv.is_flag());
        assert!(!nv.contains(&[2, 3]));
    }

    #[test]
    fn nerve_of_six_points() {
        let c = cx(
            3,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            &[vec![0, 1, 5], vec![2, 0, 4], vec![1, 2, 3]],
        );
        assert!(c.validate(6).is_ok());
        let expected: Vec<Vec<usize>> =
            vec![vec![0, 3], vec![1, 4], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 5], vec![0, 1, 2]];
        assert_eq!(c.nerve().minimal_nonfaces(), expected);
    }

    #[test]
    fn veronese_of_plane_and_line() {
        let line = cx(1, &[vec![1]], &[vec![0]]);
        let v = veronese(&line, 2).unwrap();
        assert_eq!(v.generators().vectors(), &[big(&[2])][..]);
        let plane = polynomial(2);
        let v = veronese(&plane, 2).unwrap();
        assert_eq!(v.generators().vectors(), &[big(&[0, 2]), big(&[1, 1]), big(&[2, 0])][..]);
        assert!(v.validate(6).is_ok());
        assert_eq!(veronese(&quadrants(), 1).unwrap().facets(), quadrants().facets());
    }

    #[test]
    fn hilbert_functions_of_constructions() {
        let a = quadrants();
        let b = cx(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]);
        let ha = a.hilbert_function(5);
        let hb = b.hilbert_function(5);
        assert_eq!(ha, vec![1, 4, 8, 12, 16, 20]);
        let j = tensor_join(&a, &b).unwrap().hilbert_function(5);
        let f = fiber_union(&a, &b).unwrap().hilbert_function(5);
        let s = segre(&a, &b).unwrap().hilbert_function(5);
        for t in 0..=5 {
            assert_eq!(j[t], (0..=t).map(|u| ha[u] * hb[t - u]).sum::<usize>());
            assert_eq!(f[t], ha[t] + hb[t] - usize::from(t == 0));
            assert_eq!(s[t], ha[t] * hb[t]);
        }
    }

    #[test]
    fn segre_of_two_planes() {
        let s = segre(&polynomial(2), &polynomial(2)).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.generators().get(1), &big(&[1, 0, 0, 1])[..]);
        assert_eq!(s.facets(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn union_of_two_rays() {
        let r = cx(1, &[vec![1]], &[vec![0]]);
        let u = fiber_union(&r, &r).unwrap();
        assert_eq!(u.nerve().minimal_nonfaces(), vec![vec![0, 1]]);
        let j = tensor_join(&r, &r).unwrap();
        assert_eq!(j.nerve().facets(), &[vec![0, 1]]);
    }

    #[test]
    fn restrictions() {
        let c = quadrants();
        let one = restricted_subcomplex(&c, &[vec![0, 1, 3]]).unwrap();
        assert!(one.is_restricted);
        assert_eq!(one.kept, vec![0, 1, 3]);
        let rays = restricted_subcomplex(&c, &[vec![0], vec![1]]).unwrap();
        assert!(!rays.is_restricted);
        assert_eq!(rays.complex.facets(), &[vec![0], vec![1]]);
        let all = restricted_subcomplex(&c, c.facets()).unwrap();
        assert!(all.is_restricted);
        assert!(matches!(restricted_subcomplex(&c, &[vec![0, 1]]), Err(ComplexError::NotASubfan(_))));
        assert!(matches!(restricted_subcomplex(&c, &[vec![2, 3]]), Err(ComplexError::NotASubfan(_))));
    }

    proptest! {
        #[test]
        fn nerve_faces_are_closed_under_subsets(
            facets in proptest::collection::vec(proptest::collection::btree_set(0usize..6, 1..4), 1..4)
        ) {
            let nv = NerveComplex::new(6, facets.into_iter().map(|s| s.into_iter().collect()).collect());
            let faces = nv.faces();
            for f in &faces {
                for k in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(k);
                    prop_assert!(nv.contains(&g));
                }
            }
            for s in nv.minimal_nonfaces() {
                prop_assert!(!nv.contains(&s));
            }
        }

        #[test]
        fn generators_have_degree_one(shift in 0i64..3) {
            let c = cx(
                3,
                &[vec![2, 0, shift], vec![0, 2, shift], vec![1, 1, shift], vec![0, 0, 1]],
                &[vec![0, 1, 2], vec![0, 3], vec![1, 3]],
            );
            for (i, f) in c.facets().iter().enumerate() {
                for &j in f {
                    prop_assert_eq!(c.degree_in(i, c.generators().get(j)), Some(1));
                }
            }
        }
    }
}
