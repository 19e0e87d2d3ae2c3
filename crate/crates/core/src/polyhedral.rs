//! Rational pointed cones, their faces, and fans.
//!
//! Cones carry both descriptions: extremal rays (primitive, sorted) and an
//! H-description made of facet inequalities plus a basis of the linear
//! equations cutting out the span. Conversion between the two goes through
//! the double description method, which is plenty for the small dimensions
//! handled here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::numeric::{dot, hermite_rows, primitive};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cone contains the line through {0:?}")]
    NotPointed(Vec<BigInt>),
    #[error("expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector given as a ray")]
    ZeroRay,
}

/// A rational pointed cone in `R^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<BigInt>>,
    inequalities: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "cone[{}]", rays.join(" "))
    }
}

impl Cone {
    /// Cone spanned by `rays` in `R^d`.
    pub fn from_rays(d: usize, rays: &[Vec<BigInt>]) -> Result<Cone, ConeError> {
        for r in rays {
            if r.len() != d {
                return Err(ConeError::DimensionMismatch { expected: d, found: r.len() });
            }
            if r.iter().all(Zero::is_zero) {
                return Err(ConeError::ZeroRay);
            }
        }
        // The dual cone {h : h.r >= 0} has the facet normals as extreme rays
        // and the equations of the span as lineality.
        let (equations, inequalities) = double_description(d, rays);
        let mut constraints = inequalities.clone();
        for e in &equations {
            constraints.push(e.clone());
            constraints.push(e.iter().map(|x| -x).collect());
        }
        let (lineality, extreme) = double_description(d, &constraints);
        if let Some(line) = lineality.into_iter().next() {
            return Err(ConeError::NotPointed(line));
        }
        Ok(Cone {
            ambient_dim: d,
            rays: sorted_unique(extreme),
            inequalities: sorted_unique(inequalities),
            equations: hermite_rows(equations),
        })
    }

    /// Convenience wrapper for machine-integer rays.
    pub fn from_int_rays(d: usize, rays: &[Vec<i64>]) -> Result<Cone, ConeError> {
        let rays: Vec<Vec<BigInt>> =
            rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Cone::from_rays(d, &rays)
    }

    /// Cone cut out by `h(x) >= 0` for each `h`.
    pub fn from_halfspaces(d: usize, halfspaces: &[Vec<BigInt>]) -> Result<Cone, ConeError> {
        for h in halfspaces {
            if h.len() != d {
                return Err(ConeError::DimensionMismatch { expected: d, found: h.len() });
            }
        }
        let (lineality, extreme) = double_description(d, halfspaces);
        if let Some(line) = lineality.into_iter().next() {
            return Err(ConeError::NotPointed(line));
        }
        Cone::from_rays(d, &extreme)
    }

    pub fn zero(d: usize) -> Cone {
        Cone::from_rays(d, &[]).expect("zero cone")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extremal rays, primitive and sorted lexicographically.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    /// Facet normals: `h(x) >= 0` on the cone, with equality on a facet.
    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.inequalities
    }

    /// Linear forms vanishing on the span of the cone.
    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// The full H-description: facet normals followed by each equation `e`
    /// written as the pair `e >= 0`, `-e >= 0`.
    pub fn halfspaces(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.inequalities.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.ambient_dim
            && self.inequalities.iter().all(|h| !dot(h, x).is_negative())
            && self.equations.iter().all(|e| dot(e, x).is_zero())
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[BigInt]) -> bool {
        self.contains(x) && self.inequalities.iter().all(|h| dot(h, x).is_positive())
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
    }

    /// All faces, from the zero cone up to the cone itself, sorted by
    /// dimension and then by rays.
    pub fn faces(&self) -> Vec<Cone> {
        let ray_sets: Vec<BTreeSet<usize>> = self
            .inequalities
            .iter()
            .map(|h| (0..self.rays.len()).filter(|&i| dot(h, &self.rays[i]).is_zero()).collect())
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack = vec![(0..self.rays.len()).collect::<BTreeSet<usize>>()];
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for f in &ray_sets {
                let t: BTreeSet<usize> = s.intersection(f).copied().collect();
                if !seen.contains(&t) {
                    stack.push(t);
                }
            }
        }
        seen.insert(BTreeSet::new());
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|s| {
                let rays: Vec<Vec<BigInt>> = s.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_rays(self.ambient_dim, &rays).expect("face of a pointed cone")
            })
            .collect();
        faces.sort_by(|a, b| (a.dim(), &a.rays).cmp(&(b.dim(), &b.rays)));
        faces.dedup();
        faces
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_dim != other.ambient_dim || !self.is_subset_of(other) {
            return false;
        }
        let tight: Vec<&Vec<BigInt>> = other
            .inequalities
            .iter()
            .filter(|h| self.rays.iter().all(|r| dot(h, r).is_zero()))
            .collect();
        let spanned: Vec<&Vec<BigInt>> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|h| dot(h, r).is_zero()))
            .collect();
        spanned.len() == self.rays.len() && spanned.iter().zip(&self.rays).all(|(a, b)| *a == b)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut hs = self.halfspaces();
        hs.extend(other.halfspaces());
        Cone::from_halfspaces(self.ambient_dim, &hs)
    }
}

fn sorted_unique(mut v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    for x in v.iter_mut() {
        *x = primitive(x);
    }
    v.sort();
    v.dedup();
    v
}

/// Double description of `{x in R^d : a.x >= 0 for all a}`.
///
/// Returns `(lineality basis, extreme rays modulo lineality)`. Constraints are
/// added one at a time; while a constraint is not orthogonal to the current
/// lineality space it is absorbed by a pivot, afterwards new rays come from
/// adjacent pairs of rays on opposite sides (combinatorial adjacency test).
pub fn double_description(
    d: usize,
    constraints: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lineality: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<&Vec<BigInt>> = Vec::new();

    for a in constraints {
        if let Some(p) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(p);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            let project = |v: &Vec<BigInt>| -> Vec<BigInt> {
                let t = dot(a, v);
                let w: Vec<BigInt> = v.iter().zip(&l0).map(|(x, y)| &s * x - &t * y).collect();
                primitive(&w)
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(&l0));
            processed.push(a);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let zero_set = |r: &Vec<BigInt>, procs: &[&Vec<BigInt>]| -> BTreeSet<usize> {
            procs.iter().enumerate().filter(|(_, h)| dot(h, r).is_zero()).map(|(i, _)| i).collect()
        };
        let zsets: Vec<BTreeSet<usize>> = rays.iter().map(|r| zero_set(r, &processed)).collect();
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                next.push(r.clone());
            }
        }
        for (i, vi) in values.iter().enumerate() {
            if !vi.is_positive() {
                continue;
            }
            for (j, vj) in values.iter().enumerate() {
                if !vj.is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> = zsets[i].intersection(&zsets[j]).copied().collect();
                let adjacent = (0..rays.len())
                    .filter(|&k| k != i && k != j)
                    .all(|k| !common.is_subset(&zsets[k]));
                if adjacent {
                    let w: Vec<BigInt> = rays[j]
                        .iter()
                        .zip(&rays[i])
                        .map(|(n, p)| vi * n - vj * p)
                        .collect();
                    next.push(primitive(&w));
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(a);
    }
    (lineality, rays)
}

/// A fan closed under faces, with its face lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<Cone>,
    facets: Vec<usize>,
    /// `faces_of[i]` lists the indices of the faces of cone `i` (itself included).
    faces_of: Vec<Vec<usize>>,
}

/// Why a list of cones fails to be a fan.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanViolation {
    #[error("{first:?} and {second:?} meet in {intersection:?}, which is not a common face")]
    BadIntersection { first: Box<Cone>, second: Box<Cone>, intersection: Box<Cone> },
    #[error(transparent)]
    Cone(#[from] ConeError),
}

impl Fan {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Indices (into `cones`) of the maximal cones, in cone order.
    pub fn facet_indices(&self) -> &[usize] {
        &self.facets
    }

    pub fn facets(&self) -> impl Iterator<Item = &Cone> {
        self.facets.iter().map(|&i| &self.cones[i])
    }

    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces_of[i]
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search_by(|x| cone_key(x).cmp(&cone_key(c))).ok()
    }

    /// Number of extremal rays of the fan.
    pub fn ray_count(&self) -> usize {
        self.cones.iter().filter(|c| c.dim() == 1).count()
    }
}

fn cone_key(c: &Cone) -> (usize, &Vec<Vec<BigInt>>) {
    (c.dim(), &c.rays)
}

/// Checks that any two of `cones` meet in a common face, then closes the
/// collection under taking faces. The zero cone plays the role of the empty intersection.
pub fn validate_fan(d: usize, cones: &[Cone]) -> Result<Fan, FanViolation> {
    for c in cones {
        if c.ambient_dim() != d {
            return Err(ConeError::DimensionMismatch { expected: d, found: c.ambient_dim() }.into());
        }
    }
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            let meet = a.intersect(b)?;
            if !meet.is_face_of(a) || !meet.is_face_of(b) {
                return Err(FanViolation::BadIntersection {
                    first: Box::new(a.clone()),
                    second: Box::new(b.clone()),
                    intersection: Box::new(meet),
                });
            }
        }
    }
    let mut all: BTreeMap<(usize, Vec<Vec<BigInt>>), Cone> = BTreeMap::new();
    all.insert((0, vec![]), Cone::zero(d));
    for c in cones {
        if all.contains_key(&(c.dim(), c.rays.clone())) {
            continue;
        }
        for f in c.faces() {
            all.entry((f.dim(), f.rays.clone())).or_insert(f);
        }
    }
    let list: Vec<Cone> = all.into_values().collect();
    let faces_of: Vec<Vec<usize>> = list
        .iter()
        .map(|c| (0..list.len()).filter(|&j| list[j].dim() <= c.dim() && list[j].is_face_of(c)).collect())
        .collect();
    let facets: Vec<usize> = (0..list.len())
        .filter(|&i| !(0..list.len()).any(|j| j != i && faces_of[j].contains(&i)))
        .collect();
    Ok(Fan { ambient_dim: d, cones: list, facets, faces_of })
}
