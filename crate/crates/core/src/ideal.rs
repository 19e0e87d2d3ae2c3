//! Ideals generated by monomials and pure-difference binomials.
//!
//! Buchberger's algorithm keeps this class closed: S-polynomials and
//! reductions of monomials and binomials `X^a - X^b` are again monomials or
//! such binomials, so every coefficient is `±1` and no field arithmetic is
//! needed. The reduced Gröbner basis does not depend on the field.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::complex::{MonoidalComplex, NerveComplex};
use crate::numeric::{integer_kernel, IntMatrix};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("unsupported generator {0:?}: only monomials and differences of two monomials are allowed")]
    UnsupportedGenerator(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("variable X{index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("invalid term order {0:?}")]
    BadOrder(String),
}

/// A monomial order given by a priority list of variables, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    Lex(Vec<usize>),
    Grevlex(Vec<usize>),
    /// Compares the variables in `block` by degree and then reverse
    /// lexicographically; ties are broken by `rest`. Any monomial involving
    /// the block is larger than every monomial free of it.
    Elimination { block: Vec<usize>, rest: Box<TermOrder> },
}

impl TermOrder {
    /// Lexicographic order with `X1 > X2 > ... > Xn`.
    pub fn lex(n: usize) -> Self {
        TermOrder::Lex((0..n).collect())
    }

    /// Graded reverse lexicographic order with `X1 > X2 > ... > Xn`.
    pub fn grevlex(n: usize) -> Self {
        TermOrder::Grevlex((0..n).collect())
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex(p) => {
                for &i in p {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Grevlex(p) => grevlex_on(p, a, b),
            TermOrder::Elimination { block, rest } => match grevlex_on(block, a, b) {
                Ordering::Equal => rest.compare(a, b),
                o => o,
            },
        }
    }

    /// Number of variables the order is defined on.
    pub fn num_vars(&self) -> usize {
        match self {
            TermOrder::Lex(p) | TermOrder::Grevlex(p) => p.len(),
            TermOrder::Elimination { rest, .. } => rest.num_vars(),
        }
    }

    /// The same order with one more variable appended as the smallest.
    fn widen(&self) -> TermOrder {
        let n = self.num_vars();
        match self {
            TermOrder::Lex(p) => TermOrder::Lex(p.iter().copied().chain([n]).collect()),
            TermOrder::Grevlex(p) => TermOrder::Grevlex(p.iter().copied().chain([n]).collect()),
            TermOrder::Elimination { block, rest } => {
                TermOrder::Elimination { block: block.clone(), rest: Box::new(rest.widen()) }
            }
        }
    }

    /// Order induced on the subring in the variables `vars`, renumbered
    /// `0..vars.len()` in the given sequence.
    pub fn restrict(&self, vars: &[usize]) -> TermOrder {
        let local: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let map = |p: &Vec<usize>| p.iter().filter_map(|v| local.get(v).copied()).collect();
        match self {
            TermOrder::Lex(p) => TermOrder::Lex(map(p)),
            TermOrder::Grevlex(p) => TermOrder::Grevlex(map(p)),
            TermOrder::Elimination { block, rest } => {
                let b: Vec<usize> = map(block);
                if b.is_empty() {
                    rest.restrict(vars)
                } else {
                    TermOrder::Elimination { block: b, rest: Box::new(rest.restrict(vars)) }
                }
            }
        }
    }

    /// Parses `lex`, `grevlex`, or either followed by `:` and a comma
    /// separated list of 1-based variables from largest to smallest.
    pub fn parse(s: &str, n: usize) -> Result<TermOrder, IdealError> {
        let bad = || IdealError::BadOrder(s.to_string());
        let (kind, perm) = match s.split_once(':') {
            Some((k, p)) => (k.trim(), Some(p)),
            None => (s.trim(), None),
        };
        let p: Vec<usize> = match perm {
            None => (0..n).collect(),
            Some(p) => {
                let v: Vec<usize> = p
                    .split(',')
                    .map(|x| {
                        let x = x.trim();
                        let x = x.strip_prefix('X').or_else(|| x.strip_prefix('x')).unwrap_or(x);
                        x.parse::<usize>().ok().filter(|&i| (1..=n).contains(&i)).map(|i| i - 1)
                    })
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                let distinct: BTreeSet<usize> = v.iter().copied().collect();
                if v.len() != n || distinct.len() != n {
                    return Err(bad());
                }
                v
            }
        };
        match kind {
            "lex" => Ok(TermOrder::Lex(p)),
            "grevlex" | "revlex" => Ok(TermOrder::Grevlex(p)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &[usize]| p.iter().map(|i| format!("X{}", i + 1)).collect::<Vec<_>>().join(">");
        match self {
            TermOrder::Lex(p) => write!(f, "lex({})", list(p)),
            TermOrder::Grevlex(p) => write!(f, "grevlex({})", list(p)),
            TermOrder::Elimination { block, rest } => write!(f, "elim({}; {rest})", list(block)),
        }
    }
}

fn grevlex_on(p: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = p.iter().map(|&i| u64::from(a[i])).sum();
    let db: u64 = p.iter().map(|&i| u64::from(b[i])).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &i in p.iter().rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// `a - b + c`, assuming `b` divides `a`.
fn shift(a: &[u32], b: &[u32], c: &[u32]) -> Exponents {
    a.iter().zip(b).zip(c).map(|((x, y), z)| x - y + z).collect()
}

/// A monomial `X^a` or a binomial `X^a - X^b` with `a != b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Poly {
    Monomial(Exponents),
    Binomial(Exponents, Exponents),
}

impl Poly {
    /// `X^a - X^b`, or `None` when the two terms cancel.
    pub fn binomial(a: Exponents, b: Exponents) -> Option<Poly> {
        (a != b).then_some(Poly::Binomial(a, b))
    }

    pub fn n(&self) -> usize {
        match self {
            Poly::Monomial(a) | Poly::Binomial(a, _) => a.len(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, Poly::Monomial(_))
    }

    pub fn terms(&self) -> Vec<&Exponents> {
        match self {
            Poly::Monomial(a) => vec![a],
            Poly::Binomial(a, b) => vec![a, b],
        }
    }

    /// Largest total degree of a term.
    pub fn degree(&self) -> u32 {
        self.terms().into_iter().map(|t| degree(t)).max().unwrap_or(0)
    }

    /// Puts the leading term first. The sign change is immaterial for the
    /// ideal.
    pub fn oriented(self, order: &TermOrder) -> Poly {
        match self {
            Poly::Binomial(a, b) if order.compare(&a, &b) == Ordering::Less => Poly::Binomial(b, a),
            p => p,
        }
    }

    pub fn lead(&self) -> &Exponents {
        match self {
            Poly::Monomial(a) | Poly::Binomial(a, _) => a,
        }
    }

    pub fn tail(&self) -> Option<&Exponents> {
        match self {
            Poly::Monomial(_) => None,
            Poly::Binomial(_, b) => Some(b),
        }
    }

    /// Multiplies by `X^m`.
    pub fn times(&self, m: &[u32]) -> Poly {
        let mul = |a: &Exponents| a.iter().zip(m).map(|(x, y)| x + y).collect();
        match self {
            Poly::Monomial(a) => Poly::Monomial(mul(a)),
            Poly::Binomial(a, b) => Poly::Binomial(mul(a), mul(b)),
        }
    }

    /// Maps variable `k` to variable `vars[k]` of a ring with `n` variables.
    pub fn embed(&self, vars: &[usize], n: usize) -> Poly {
        let e = |a: &Exponents| {
            let mut out = vec![0; n];
            for (k, &v) in vars.iter().enumerate() {
                out[v] = a[k];
            }
            out
        };
        match self {
            Poly::Monomial(a) => Poly::Monomial(e(a)),
            Poly::Binomial(a, b) => Poly::Binomial(e(a), e(b)),
        }
    }

    /// Parses `X1*X2 - X4^2`, `X3*X4` or `1` in a ring with `n` variables.
    pub fn parse(s: &str, n: usize) -> Result<Poly, IdealError> {
        let t = s.trim();
        if t.contains('+') {
            return Err(IdealError::UnsupportedGenerator(s.to_string()));
        }
        let parts: Vec<&str> = t.split('-').collect();
        match parts.as_slice() {
            [m] => Ok(Poly::Monomial(parse_monomial(m, n, s)?)),
            [a, b] if !a.trim().is_empty() => {
                let (a, b) = (parse_monomial(a, n, s)?, parse_monomial(b, n, s)?);
                Poly::binomial(a, b).ok_or_else(|| IdealError::UnsupportedGenerator(s.to_string()))
            }
            _ => Err(IdealError::UnsupportedGenerator(s.to_string())),
        }
    }
}

fn parse_monomial(t: &str, n: usize, whole: &str) -> Result<Exponents, IdealError> {
    let err = |reason: &str| IdealError::Parse { input: whole.to_string(), reason: reason.to_string() };
    let t = t.trim();
    let mut e = vec![0u32; n];
    if t == "1" {
        return Ok(e);
    }
    if t.is_empty() {
        return Err(err("empty term"));
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (var, pow) = match factor.split_once('^') {
            Some((v, p)) => (v.trim(), p.trim().parse::<u32>().map_err(|_| err("bad exponent"))?),
            None => (factor, 1),
        };
        let Some(idx) = var.strip_prefix('X').or_else(|| var.strip_prefix('x')) else {
            return Err(IdealError::UnsupportedGenerator(whole.to_string()));
        };
        let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
        if idx == 0 || idx > n {
            return Err(IdealError::VariableOutOfRange { index: idx, n });
        }
        e[idx - 1] += pow;
    }
    Ok(e)
}

/// Writes `X1*X2^2`, or `1` for the empty monomial.
pub fn render_monomial(a: &[u32]) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("X{}", i + 1) } else { format!("X{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poly::Monomial(a) => write!(f, "{}", render_monomial(a)),
            Poly::Binomial(a, b) => write!(f, "{} - {}", render_monomial(a), render_monomial(b)),
        }
    }
}

/// Writes a generator list as `(g1, g2, ...)`.
pub fn render_list(ps: &[Poly]) -> String {
    format!("({})", ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

/// Reduced Gröbner basis, sorted by increasing leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: usize,
    order: TermOrder,
    elems: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elems
    }

    /// Elements sorted by decreasing leading term, the usual display order.
    pub fn display_elements(&self) -> Vec<Poly> {
        self.elems.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|p| matches!(p, Poly::Monomial(a) if a.iter().all(|&e| e == 0)))
    }

    pub fn max_degree(&self) -> u32 {
        self.elems.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.elems.iter().map(|p| p.lead().clone()).collect()
    }

    /// Normal form of `X^m`: a single monomial, or `None` when `X^m` lies in
    /// the ideal.
    pub fn reduce_monomial(&self, m: &[u32]) -> Option<Exponents> {
        reduce_term(m.to_vec(), &self.elems)
    }

    /// Like [`reduce_monomial`](Self::reduce_monomial), also returning the
    /// leading terms used at each step.
    pub fn reduce_monomial_traced(&self, m: &[u32]) -> (Option<Exponents>, Vec<usize>) {
        let mut m = m.to_vec();
        let mut trace = Vec::new();
        loop {
            let Some(k) = self.elems.iter().position(|e| divides(e.lead(), &m)) else {
                return (Some(m), trace);
            };
            trace.push(k);
            match &self.elems[k] {
                Poly::Monomial(_) => return (None, trace),
                Poly::Binomial(a, b) => m = shift(&m, a, b),
            }
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Option<Poly> {
        reduce_poly(p, &self.elems).map(|q| q.oriented(&self.order))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_none()
    }
}

fn reduce_term(mut m: Exponents, g: &[Poly]) -> Option<Exponents> {
    loop {
        match g.iter().find(|e| divides(e.lead(), &m)) {
            None => return Some(m),
            Some(Poly::Monomial(_)) => return None,
            Some(Poly::Binomial(a, b)) => m = shift(&m, a, b),
        }
    }
}

fn reduce_poly(p: &Poly, g: &[Poly]) -> Option<Poly> {
    match p {
        Poly::Monomial(a) => reduce_term(a.clone(), g).map(Poly::Monomial),
        Poly::Binomial(a, b) => match (reduce_term(a.clone(), g), reduce_term(b.clone(), g)) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(Poly::Monomial(x)),
            (Some(x), Some(y)) => Poly::binomial(x, y),
        },
    }
}

fn s_poly(f: &Poly, g: &Poly) -> Option<Poly> {
    let l = lcm(f.lead(), g.lead());
    let side = |p: &Poly| p.tail().map(|t| shift(&l, p.lead(), t));
    match (side(f), side(g)) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(Poly::Monomial(x)),
        (Some(x), Some(y)) => Poly::binomial(x, y),
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `n` variables.
///
/// Pairs are processed smallest least common multiple first. Pairs with
/// coprime leading terms and pairs covered by the chain criterion are
/// skipped.
pub fn buchberger(n: usize, gens: &[Poly], order: &TermOrder) -> GroebnerBasis {
    assert_eq!(order.num_vars(), n, "term order defined on the wrong number of variables");
    let mut g: Vec<Poly> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut inputs: Vec<Poly> = gens.iter().map(|p| p.clone().oriented(order)).collect();
    inputs.sort_by(|a, b| order.compare(a.lead(), b.lead()).then_with(|| a.cmp(b)));
    for p in inputs {
        if let Some(r) = reduce_poly(&p, &g) {
            add_element(&mut g, &mut pending, r.oriented(order));
        }
    }
    while let Some(&(i, j)) = pending.iter().min_by(|x, y| {
        let lx = lcm(g[x.0].lead(), g[x.1].lead());
        let ly = lcm(g[y.0].lead(), g[y.1].lead());
        order.compare(&lx, &ly).then_with(|| x.cmp(y))
    }) {
        pending.remove(&(i, j));
        let (fi, fj) = (&g[i], &g[j]);
        if fi.lead().iter().zip(fj.lead()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(fi.lead(), fj.lead());
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lead(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if let Some(s) = s_poly(fi, fj) {
            if let Some(r) = reduce_poly(&s, &g) {
                add_element(&mut g, &mut pending, r.oriented(order));
            }
        }
    }
    GroebnerBasis { n, order: order.clone(), elems: interreduce(g, order) }
}

fn add_element(g: &mut Vec<Poly>, pending: &mut BTreeSet<(usize, usize)>, p: Poly) {
    let k = g.len();
    g.push(p);
    for i in 0..k {
        pending.insert((i, k));
    }
}

fn interreduce(g: Vec<Poly>, order: &TermOrder) -> Vec<Poly> {
    let mut g = g;
    g.sort_by(|a, b| order.compare(a.lead(), b.lead()).then_with(|| a.is_monomial().cmp(&b.is_monomial()).reverse()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| divides(q.lead(), p.lead())) {
            minimal.retain(|q| !divides(p.lead(), q.lead()));
            minimal.push(p);
        }
    }
    let reduced: Vec<Poly> = minimal
        .iter()
        .map(|p| match p {
            Poly::Monomial(_) => p.clone(),
            Poly::Binomial(a, b) => match reduce_term(b.clone(), &minimal) {
                None => Poly::Monomial(a.clone()),
                Some(t) => Poly::Binomial(a.clone(), t),
            },
        })
        .collect();
    let mut reduced = reduced;
    reduced.sort_by(|a, b| order.compare(a.lead(), b.lead()));
    reduced
}

/// Ideal in `n` variables generated by monomials and pure binomials, with a
/// cache of reduced Gröbner bases per term order.
pub struct Ideal {
    n: usize,
    gens: Vec<Poly>,
    cache: Mutex<BTreeMap<TermOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache poisoned").clone();
        Ideal { n: self.n, gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal[{}]{}", self.n, render_list(&self.gens))
    }
}

impl Ideal {
    pub fn new(n: usize, gens: Vec<Poly>) -> Self {
        assert!(gens.iter().all(|p| p.n() == n), "generator in the wrong number of variables");
        Ideal { n, gens, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    /// The ideal generated by the given variables (0-based).
    pub fn variables(n: usize, vars: &[usize]) -> Self {
        Self::new(n, vars.iter().map(|&v| Poly::Monomial(unit_vector(n, v))).collect())
    }

    pub fn parse(n: usize, gens: &[&str]) -> Result<Self, IdealError> {
        Ok(Self::new(n, gens.iter().map(|s| Poly::parse(s, n)).collect::<Result<_, _>>()?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis for `order`, computed once per order.
    pub fn gb(&self, order: &TermOrder) -> Arc<GroebnerBasis> {
        if let Some(g) = self.cache.lock().expect("cache poisoned").get(order) {
            return Arc::clone(g);
        }
        let g = Arc::new(buchberger(self.n, &self.gens, order));
        self.cache.lock().expect("cache poisoned").entry(order.clone()).or_insert(g).clone()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.n, other.n);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.n, gens)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(self.n, gens)
    }

    pub fn contains(&self, p: &Poly, order: &TermOrder) -> bool {
        self.gb(order).contains(p)
    }

    /// A minimal generating set for a homogeneous ideal: generators are added
    /// by increasing degree (binomials before monomials, larger leading term
    /// first) and kept when not already in the ideal of those kept.
    pub fn minimal_generators(&self, order: &TermOrder) -> Vec<Poly> {
        let mut cand: Vec<Poly> = self.gens.iter().map(|p| p.clone().oriented(order)).collect();
        cand.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.is_monomial().cmp(&b.is_monomial()))
                .then_with(|| order.compare(b.lead(), a.lead()))
                .then_with(|| a.cmp(b))
        });
        cand.dedup();
        let mut kept: Vec<Poly> = Vec::new();
        let mut gb = buchberger(self.n, &[], order);
        for p in cand {
            if !gb.contains(&p) {
                kept.push(p);
                gb = buchberger(self.n, &kept, order);
            }
        }
        kept
    }
}

fn unit_vector(n: usize, v: usize) -> Exponents {
    let mut e = vec![0; n];
    e[v] = 1;
    e
}

/// Whether two ideals have the same reduced Gröbner basis for `order`.
pub fn ideal_equal(a: &Ideal, b: &Ideal, order: &TermOrder) -> bool {
    a.n == b.n && a.gb(order).elements() == b.gb(order).elements()
}

/// Monomial ideal of leading terms of the reduced Gröbner basis.
pub fn initial_ideal(i: &Ideal, order: &TermOrder) -> Ideal {
    Ideal::new(i.n, i.gb(order).leading_monomials().into_iter().map(Poly::Monomial).collect())
}

fn lift(p: &Poly, t_exp: u32) -> Poly {
    let l = |a: &Exponents| {
        let mut v = a.clone();
        v.push(t_exp);
        v
    };
    match p {
        Poly::Monomial(a) => Poly::Monomial(l(a)),
        Poly::Binomial(a, b) => Poly::Binomial(l(a), l(b)),
    }
}

/// Gröbner basis elements free of the auxiliary last variable, with it
/// dropped.
fn eliminate_last(g: &GroebnerBasis) -> Vec<Poly> {
    let n = g.n - 1;
    g.elements()
        .iter()
        .filter(|p| p.terms().iter().all(|t| t[n] == 0))
        .map(|p| match p {
            Poly::Monomial(a) => Poly::Monomial(a[..n].to_vec()),
            Poly::Binomial(a, b) => Poly::Binomial(a[..n].to_vec(), b[..n].to_vec()),
        })
        .collect()
}

fn elimination_order(n: usize, rest: &TermOrder) -> TermOrder {
    TermOrder::Elimination { block: vec![n], rest: Box::new(rest.widen()) }
}

/// `I : f^∞`, computed by eliminating `t` from `I + (t f - 1)`.
pub fn saturate(i: &Ideal, f: &[u32]) -> Ideal {
    let n = i.n;
    let mut gens: Vec<Poly> = i.gens.iter().map(|p| lift(p, 0)).collect();
    let mut tf = f.to_vec();
    tf.push(1);
    gens.push(Poly::Binomial(tf, vec![0; n + 1]));
    let g = buchberger(n + 1, &gens, &elimination_order(n, &TermOrder::grevlex(n)));
    Ideal::new(n, eliminate_last(&g))
}

/// `I : x_v^∞` for every variable in turn.
pub fn saturate_all_variables(i: &Ideal) -> Ideal {
    let mut cur = i.clone();
    for v in 0..i.n {
        cur = saturate(&cur, &unit_vector(i.n, v));
    }
    cur
}

/// `I : X^f`, computed as `(I ∩ (X^f)) / X^f` with the intersection obtained
/// by eliminating `t` from `t I + (1 - t) X^f`.
pub fn colon(i: &Ideal, f: &[u32]) -> Ideal {
    let n = i.n;
    let mut gens: Vec<Poly> = i.gens.iter().map(|p| lift(p, 1)).collect();
    let mut tf = f.to_vec();
    tf.push(1);
    let mut f0 = f.to_vec();
    f0.push(0);
    gens.push(Poly::Binomial(f0, tf));
    let g = buchberger(n + 1, &gens, &elimination_order(n, &TermOrder::grevlex(n)));
    let quotient = eliminate_last(&g)
        .into_iter()
        .map(|p| {
            let div = |a: &Exponents| -> Exponents {
                debug_assert!(divides(f, a));
                a.iter().zip(f).map(|(x, y)| x - y).collect()
            };
            match p {
                Poly::Monomial(a) => Poly::Monomial(div(&a)),
                Poly::Binomial(a, b) => Poly::Binomial(div(&a), div(&b)),
            }
        })
        .collect();
    Ideal::new(n, quotient)
}

/// Colon by the variable `v`.
pub fn colon_variable(i: &Ideal, v: usize) -> Ideal {
    colon(i, &unit_vector(i.n, v))
}

/// Toric ideal of the monoid generated by the given vectors: the lattice
/// ideal of a kernel basis, saturated by every variable.
pub fn toric_ideal(gens: &[Vec<BigInt>]) -> Ideal {
    let n = gens.len();
    if n == 0 {
        return Ideal::zero(0);
    }
    let d = gens[0].len();
    let mut m = IntMatrix::zeros(d, n);
    for (j, g) in gens.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    let basis = integer_kernel(&m);
    if basis.is_empty() {
        return Ideal::zero(n);
    }
    let lattice: Vec<Poly> = basis
        .iter()
        .map(|u| {
            let pos = u.iter().map(|x| if x.sign() == num_bigint::Sign::Plus { to_exp(x) } else { 0 }).collect();
            let neg = u.iter().map(|x| if x.sign() == num_bigint::Sign::Minus { to_exp(&-x) } else { 0 }).collect();
            Poly::Binomial(pos, neg)
        })
        .collect();
    let sat = saturate_all_variables(&Ideal::new(n, lattice));
    let gb = sat.gb(&TermOrder::grevlex(n));
    Ideal::new(n, gb.display_elements())
}

fn to_exp(x: &BigInt) -> u32 {
    x.to_u32().expect("exponent does not fit in 32 bits")
}

/// Toric ideal of one facet, in the variables of its generators.
#[derive(Debug, Clone)]
pub struct FacetIdeal {
    /// Global indices of the facet's generators, increasing.
    pub vars: Vec<usize>,
    /// The toric ideal in `vars.len()` local variables.
    pub local: Ideal,
}

/// The presentation `I = A + sum_i S I_{C_i}` of a toric face ring.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub n: usize,
    pub nerve: NerveComplex,
    /// Squarefree monomials of the minimal non-faces of the nerve.
    pub monomial_part: Vec<Poly>,
    pub facet_ideals: Vec<FacetIdeal>,
    /// Sum of the facet toric ideals extended to all variables.
    pub binomial_part: Ideal,
    pub ideal: Ideal,
}

pub fn presentation_ideal(cx: &MonoidalComplex) -> Presentation {
    let n = cx.n();
    let nerve = cx.nerve();
    let monomial_part: Vec<Poly> = nerve
        .minimal_nonfaces()
        .iter()
        .map(|s| {
            let mut e = vec![0; n];
            for &v in s {
                e[v] = 1;
            }
            Poly::Monomial(e)
        })
        .collect();
    let facet_ideals: Vec<FacetIdeal> = facet_toric_ideals(cx);
    let binomials: Vec<Poly> = facet_ideals
        .iter()
        .flat_map(|f| f.local.generators().iter().map(|p| p.embed(&f.vars, n)).collect::<Vec<_>>())
        .collect();
    let binomial_part = Ideal::new(n, binomials);
    let ideal = binomial_part.with(monomial_part.iter().cloned());
    Presentation { n, nerve, monomial_part, facet_ideals, binomial_part, ideal }
}

#[cfg(feature = "parallel")]
fn facet_toric_ideals(cx: &MonoidalComplex) -> Vec<FacetIdeal> {
    use rayon::prelude::*;
    cx.facets().par_iter().map(|f| facet_ideal(cx, f)).collect()
}

#[cfg(not(feature = "parallel"))]
fn facet_toric_ideals(cx: &MonoidalComplex) -> Vec<FacetIdeal> {
    cx.facets().iter().map(|f| facet_ideal(cx, f)).collect()
}

fn facet_ideal(cx: &MonoidalComplex, f: &[usize]) -> FacetIdeal {
    let gens: Vec<Vec<BigInt>> = f.iter().map(|&j| cx.generators().get(j).to_vec()).collect();
    FacetIdeal { vars: f.to_vec(), local: toric_ideal(&gens) }
}

impl Presentation {
    /// Minimal generators of `I` under the default order.
    pub fn minimal_generators(&self) -> Vec<Poly> {
        self.ideal.minimal_generators(&TermOrder::grevlex(self.n))
    }
}
