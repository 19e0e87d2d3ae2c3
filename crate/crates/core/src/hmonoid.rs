//! The monoid `H = N^n / ~` with `a ~ b` iff `X^a - X^b` lies in the binomial
//! part `B` of the presentation, together with its monomial ideal `J` and the
//! pairs of order complexes of divisor intervals.
//!
//! Classes are represented by normal forms modulo a Gröbner basis of `B`.
//! Up to a degree bound, all classes are enumerated once into an [`HTable`]
//! whose edges record addition of a generator; divisibility then becomes
//! reachability along those edges.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{MonoidalComplex, NerveComplex};
use crate::homology::SimplicialPair;
use crate::ideal::{presentation_ideal, Exponents, GroebnerBasis, Presentation, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HError {
    #[error("two witnesses of the difference {upper:?} - {lower:?} disagree on membership in J")]
    WitnessConflict { lower: Exponents, upper: Exponents },
    #[error("element {0:?} has degree above the table bound {1}")]
    OutOfRange(Exponents, usize),
    #[error("interval below {lambda:?} has {size} elements, above the cap {cap}")]
    IntervalTooLarge { lambda: Exponents, size: usize, cap: usize },
}

/// Canonical forms in `H` and the ideal `J`.
#[derive(Debug, Clone)]
pub struct HContext {
    n: usize,
    nerve: NerveComplex,
    gb: Arc<GroebnerBasis>,
}

impl HContext {
    pub fn new(pres: &Presentation, order: &TermOrder) -> Self {
        HContext { n: pres.n, nerve: pres.nerve.clone(), gb: pres.binomial_part.gb(order) }
    }

    /// Context under the default graded reverse lexicographic order.
    pub fn from_complex(cx: &MonoidalComplex) -> Self {
        Self::new(&presentation_ideal(cx), &TermOrder::grevlex(cx.n()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nerve(&self) -> &NerveComplex {
        &self.nerve
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Normal form of `X^a` modulo the binomial part.
    pub fn canonical(&self, a: &[u32]) -> Exponents {
        self.gb.reduce_monomial(a).expect("the binomial part contains no monomials")
    }

    /// Whether the class of `a` lies in `J`, i.e. its support is not a face of
    /// the nerve. The answer is the same for every representative.
    pub fn in_j(&self, a: &[u32]) -> bool {
        !self.nerve.contains_support(a)
    }

    /// Classes of degree `j`, as canonical forms of all multisets of `j`
    /// generators.
    pub fn elements_of_degree(&self, j: usize) -> BTreeSet<Exponents> {
        let mut out = BTreeSet::new();
        let mut e = vec![0u32; self.n];
        self.multisets(j, 0, &mut e, &mut out);
        out
    }

    fn multisets(&self, left: usize, start: usize, e: &mut Exponents, out: &mut BTreeSet<Exponents>) {
        if left == 0 {
            out.insert(self.canonical(e));
            return;
        }
        for v in start..self.n {
            e[v] += 1;
            self.multisets(left - 1, v, e, out);
            e[v] -= 1;
        }
    }

    /// Some `δ` with `γ + δ = λ` in `H`, found by searching the degree
    /// stratum `|λ| - |γ|`.
    pub fn divides(&self, gamma: &[u32], lambda: &[u32]) -> Option<Exponents> {
        let (dg, dl) = (deg(gamma), deg(lambda));
        if dg > dl {
            return None;
        }
        let target = self.canonical(lambda);
        self.elements_of_degree(dl - dg).into_iter().find(|d| {
            let s: Exponents = gamma.iter().zip(d).map(|(x, y)| x + y).collect();
            self.canonical(&s) == target
        })
    }

    /// All witnesses `δ` with `γ + δ = λ`.
    pub fn all_differences(&self, gamma: &[u32], lambda: &[u32]) -> Vec<Exponents> {
        let (dg, dl) = (deg(gamma), deg(lambda));
        if dg > dl {
            return Vec::new();
        }
        let target = self.canonical(lambda);
        self.elements_of_degree(dl - dg)
            .into_iter()
            .filter(|d| {
                let s: Exponents = gamma.iter().zip(d).map(|(x, y)| x + y).collect();
                self.canonical(&s) == target
            })
            .collect()
    }
}

fn deg(a: &[u32]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

/// All classes of `H` up to a degree bound, with generator-addition edges.
#[derive(Debug, Clone)]
pub struct HTable {
    ctx: HContext,
    max_degree: usize,
    elems: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    degree: Vec<usize>,
    in_j: Vec<bool>,
    /// `succ[x][k]` is the class of `x + e_k`, for `x` below the top degree.
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    by_degree: Vec<Vec<usize>>,
}

impl HTable {
    pub fn new(ctx: HContext, max_degree: usize) -> Self {
        let n = ctx.n;
        let zero = vec![0u32; n];
        let mut t = HTable {
            max_degree,
            elems: vec![zero.clone()],
            index: HashMap::from([(zero.clone(), 0)]),
            degree: vec![0],
            in_j: vec![false],
            succ: Vec::new(),
            pred: vec![Vec::new()],
            by_degree: vec![vec![0]],
            ctx,
        };
        for j in 0..max_degree {
            let mut next = Vec::new();
            for &x in &t.by_degree[j].clone() {
                let mut row = Vec::with_capacity(n);
                for k in 0..n {
                    let mut v = t.elems[x].clone();
                    v[k] += 1;
                    let c = t.ctx.canonical(&v);
                    let id = match t.index.get(&c) {
                        Some(&id) => id,
                        None => {
                            let id = t.elems.len();
                            t.in_j.push(t.ctx.in_j(&c));
                            t.index.insert(c.clone(), id);
                            t.elems.push(c);
                            t.degree.push(j + 1);
                            t.pred.push(Vec::new());
                            next.push(id);
                            id
                        }
                    };
                    if !t.pred[id].contains(&x) {
                        t.pred[id].push(x);
                    }
                    row.push(id);
                }
                if t.succ.len() <= x {
                    t.succ.resize(x + 1, Vec::new());
                }
                t.succ[x] = row;
            }
            next.sort_by(|a, b| t.elems[*a].cmp(&t.elems[*b]));
            t.by_degree.push(next);
        }
        t
    }

    pub fn context(&self) -> &HContext {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, id: usize) -> &Exponents {
        &self.elems[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.degree[id]
    }

    pub fn is_in_j(&self, id: usize) -> bool {
        self.in_j[id]
    }

    /// Ids of the classes of degree `j`, sorted by exponent vector.
    pub fn of_degree(&self, j: usize) -> &[usize] {
        self.by_degree.get(j).map_or(&[][..], |v| &v[..])
    }

    /// Id of the class of `a`, if its degree is within the table.
    pub fn id_of(&self, a: &[u32]) -> Option<usize> {
        self.index.get(&self.ctx.canonical(a)).copied()
    }

    /// Class of `x + e_k`; `x` must be below the top degree.
    pub fn add_generator(&self, x: usize, k: usize) -> usize {
        self.succ[x][k]
    }

    /// Class of `x + y`, when its degree is within the table.
    pub fn add(&self, x: usize, y: usize) -> Option<usize> {
        if self.degree[x] + self.degree[y] > self.max_degree {
            return None;
        }
        let mut cur = x;
        for (k, &e) in self.elems[y].iter().enumerate() {
            for _ in 0..e {
                cur = self.succ[cur][k];
            }
        }
        Some(cur)
    }

    /// Number of classes of degree `j` outside `J`: the Hilbert function of
    /// the toric face ring.
    pub fn hilbert_function(&self, j: usize) -> usize {
        self.of_degree(j).iter().filter(|&&x| !self.in_j[x]).count()
    }

    /// Strict divisors of `lambda` other than 0, by increasing degree.
    pub fn interval(&self, lambda: usize) -> Vec<usize> {
        let mut seen: HashSet<usize> = HashSet::from([lambda]);
        let mut stack = vec![lambda];
        while let Some(x) = stack.pop() {
            for &p in &self.pred[x] {
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().filter(|&x| x != lambda && x != 0).collect();
        v.sort_by(|a, b| (self.degree[*a], &self.elems[*a]).cmp(&(self.degree[*b], &self.elems[*b])));
        v
    }

    /// The divisor pair of `lambda`. `cap` bounds the interval size.
    pub fn divisor_pair(&self, lambda: usize, cap: Option<usize>) -> Result<DivisorPair, HError> {
        let interval = self.interval(lambda);
        if let Some(c) = cap {
            if interval.len() > c {
                return Err(HError::IntervalTooLarge {
                    lambda: self.elems[lambda].clone(),
                    size: interval.len(),
                    cap: c,
                });
            }
        }
        // local numbering: 0 is the zero class, 1..=m the interval, m + 1 is lambda
        let mut nodes = vec![0];
        nodes.extend(&interval);
        nodes.push(lambda);
        let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let size = nodes.len();
        let mut less = vec![vec![false; size]; size];
        let mut jdiff = vec![vec![false; size]; size];
        for (a, &start) in nodes.iter().enumerate().take(size - 1) {
            // breadth-first by degree, carrying a difference class along each path
            let mut level: BTreeMap<usize, usize> = BTreeMap::from([(start, 0)]);
            while !level.is_empty() {
                let mut next: BTreeMap<usize, usize> = BTreeMap::new();
                for (&beta, &delta) in &level {
                    if beta == lambda {
                        continue;
                    }
                    for k in 0..self.ctx.n {
                        let b2 = self.succ[beta][k];
                        let Some(&lb) = local.get(&b2) else { continue };
                        let d2 = self.succ[delta][k];
                        match next.get(&b2) {
                            None => {
                                next.insert(b2, d2);
                            }
                            Some(&d) if d != d2 && self.in_j[d] != self.in_j[d2] => {
                                return Err(HError::WitnessConflict {
                                    lower: self.elems[start].clone(),
                                    upper: self.elems[b2].clone(),
                                });
                            }
                            Some(_) => {}
                        }
                        less[a][lb] = true;
                    }
                }
                for (&beta, &delta) in &next {
                    jdiff[a][local[&beta]] = self.in_j[delta];
                }
                level = next;
            }
        }
        Ok(DivisorPair { lambda, nodes, less, jdiff })
    }
}

/// The open interval `(0, λ)` of `H` with the order relation and the
/// `J`-membership of differences.
#[derive(Debug, Clone)]
pub struct DivisorPair {
    lambda: usize,
    /// Table ids: the zero class, the interval by increasing degree, `λ`.
    nodes: Vec<usize>,
    less: Vec<Vec<bool>>,
    jdiff: Vec<Vec<bool>>,
}

impl DivisorPair {
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Table ids of the interval elements, by increasing degree.
    pub fn interval(&self) -> &[usize] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Whether the chain (in local vertex numbers `1..=m`) lies in `Δ_{λ,J}`.
    fn chain_in_j(&self, chain: &[usize]) -> bool {
        let mut prev = 0;
        for &c in chain.iter().chain(std::iter::once(&self.top())) {
            if self.jdiff[prev][c] {
                return true;
            }
            prev = c;
        }
        false
    }

    /// Chains of the interval with at most `max_vertices` elements, including
    /// the empty chain. Vertices are numbered `0..m` in interval order.
    pub fn chains(&self, max_vertices: usize) -> Vec<Vec<usize>> {
        let m = self.nodes.len() - 2;
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_vertices {
            let mut next = Vec::new();
            for c in &frontier {
                let start = c.last().map_or(1, |&l| l + 1);
                for v in start..=m {
                    if c.last().is_none_or(|&l| self.less[l][v]) {
                        let mut d = c.clone();
                        d.push(v);
                        next.push(d);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        for c in &mut out {
            for v in c.iter_mut() {
                *v -= 1;
            }
        }
        out
    }

    /// The pair `(Δ_λ, Δ_{λ,J})` truncated to chains of at most
    /// `max_vertices` elements.
    pub fn simplicial_pair(&self, max_vertices: usize) -> SimplicialPair {
        let chains = self.chains(max_vertices);
        let sub: HashSet<Vec<usize>> = chains
            .iter()
            .filter(|c| {
                let shifted: Vec<usize> = c.iter().map(|v| v + 1).collect();
                self.chain_in_j(&shifted)
            })
            .cloned()
            .collect();
        SimplicialPair::from_parts(chains, sub)
    }
}
