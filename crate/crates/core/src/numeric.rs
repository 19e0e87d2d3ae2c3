//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers. Ranks over the
//! rationals use fraction-free elimination, ranks over a prime field reduce
//! entries modulo `p` first. There is no floating point anywhere.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix with row-major storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<R: AsRef<[i64]>>(rows: usize, columns: &[R]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.as_ref().len(), rows, "column length mismatch");
            for (i, &x) in c.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `col[dst] -= factor * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] -= s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Coefficient field for ranks and homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldChoice {
    Rationals,
    PrimeField(u64),
}

impl FieldChoice {
    /// Checked constructor for prime fields.
    pub fn prime(p: u64) -> Option<Self> {
        is_prime(p).then_some(FieldChoice::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rationals => 0,
            FieldChoice::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "QQ"),
            FieldChoice::PrimeField(p) => write!(f, "ZZ/{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Basis of the integer kernel `{v in Z^cols : M v = 0}`.
///
/// Unimodular column operations bring `M` to column echelon form while the
/// same operations are applied to an identity matrix; the transformed columns
/// sitting over zero columns span the kernel lattice. The basis is then put
/// in row Hermite normal form so the output does not depend on the path the
/// elimination took.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut pivot_col = 0;
    for r in 0..a.rows() {
        if pivot_col == a.cols() {
            break;
        }
        loop {
            // smallest nonzero |entry| among the active columns, leftmost on ties
            let mut best: Option<usize> = None;
            for c in pivot_col..a.cols() {
                if a[(r, c)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(c),
                    Some(b) if a[(r, c)].abs() < a[(r, b)].abs() => best = Some(c),
                    _ => {}
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(pivot_col, b);
            u.swap_cols(pivot_col, b);
            let mut done = true;
            for c in pivot_col + 1..a.cols() {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let q = a[(r, c)].div_floor(&a[(r, pivot_col)]);
                a.col_axpy(c, pivot_col, &q);
                u.col_axpy(c, pivot_col, &q);
                if !a[(r, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = (pivot_col..u.cols())
        .map(|c| (0..u.rows()).map(|i| u[(i, c)].clone()).collect())
        .collect();
    hermite_rows(basis)
}

/// Row-style Hermite normal form of a list of integer vectors spanning a
/// lattice; zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r0 = 0;
    for c in 0..cols {
        if r0 == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(r0) {
                if row[c].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) if row[c].abs() < rows[b][c].abs() => best = Some(i),
                    _ => {}
                }
            }
            let Some(b) = best else { break };
            rows.swap(r0, b);
            let mut done = true;
            for i in r0 + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r0][c]);
                let pivot = rows[r0].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[r0][c].is_negative() {
                    for x in rows[r0].iter_mut() {
                        *x = -&*x;
                    }
                }
                // reduce entries above the pivot into [0, pivot)
                for i in 0..r0 {
                    let q = rows[i][c].div_floor(&rows[r0][c]);
                    if !q.is_zero() {
                        let pivot = rows[r0].clone();
                        for (x, p) in rows[i].iter_mut().zip(&pivot) {
                            *x -= &q * p;
                        }
                    }
                }
                r0 += 1;
                break;
            }
        }
    }
    rows.truncate(r0);
    rows
}

/// Rank of `m` over the chosen field.
pub fn field_rank(m: &IntMatrix, k: FieldChoice) -> usize {
    let rows: Vec<Vec<(usize, BigInt)>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    sparse_rank(rows, k)
}

/// Rank of a sparse matrix given as rows of `(column, value)` pairs sorted by
/// column. This is the workhorse behind homology computations.
pub fn sparse_rank(rows: Vec<Vec<(usize, BigInt)>>, k: FieldChoice) -> usize {
    match k {
        FieldChoice::Rationals => {
            // Fast path in i64 with overflow detection, exact fallback in BigInt.
            let small: Option<Vec<Vec<(usize, i64)>>> = rows
                .iter()
                .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|v| (*c, v))).collect())
                .collect();
            if let Some(small) = small {
                if let Some(r) = rank_fraction_free::<i64>(small) {
                    return r;
                }
            }
            rank_fraction_free::<BigInt>(rows).expect("bigint elimination cannot overflow")
        }
        FieldChoice::PrimeField(p) => {
            let pb = BigInt::from(p);
            let reduced = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .filter_map(|(c, v)| {
                            let x = v.mod_floor(&pb).to_u64().unwrap();
                            (x != 0).then_some((c, x))
                        })
                        .collect()
                })
                .collect();
            rank_mod_p(reduced, p)
        }
    }
}

/// Integer arithmetic used by fraction-free elimination. `None` signals
/// overflow and makes the caller retry with arbitrary precision.
trait ExactInt: Clone + PartialEq + fmt::Debug {
    fn vanishes(&self) -> bool;
    fn mul_checked(&self, other: &Self) -> Option<Self>;
    fn sub_checked(&self, other: &Self) -> Option<Self>;
    fn neg_checked(&self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ExactInt for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn neg_checked(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl ExactInt for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_checked(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_checked(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn neg_checked(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Fraction-free sparse elimination: each reduction step replaces a row by
/// `p * row - r * pivot_row` and divides by the row content, so entries stay
/// small on the +-1 boundary matrices this is used for.
fn rank_fraction_free<T: ExactInt>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !v.vanishes());
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                None => {
                    normalize_content(&mut row);
                    pivots.insert(lead, row);
                    break;
                }
                Some(piv) => row = eliminate(&row, piv)?,
            }
        }
    }
    Some(pivots.len())
}

/// `p * row - r * piv` where `p`, `r` are the leading entries; the leading
/// column cancels.
fn eliminate<T: ExactInt>(row: &[(usize, T)], piv: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let p = &piv[0].1;
    let r = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = match ci.cmp(&cj) {
            Ordering::Equal => {
                let v = p.mul_checked(&row[i].1)?.sub_checked(&r.mul_checked(&piv[j].1)?)?;
                i += 1;
                j += 1;
                (ci, v)
            }
            Ordering::Less => {
                let v = p.mul_checked(&row[i].1)?;
                i += 1;
                (ci, v)
            }
            Ordering::Greater => {
                let v = r.mul_checked(&piv[j].1)?.neg_checked()?;
                j += 1;
                (cj, v)
            }
        };
        if !val.vanishes() {
            out.push((col, val));
        }
    }
    normalize_content(&mut out);
    Some(out)
}

fn normalize_content<T: ExactInt>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.gcd_with(&first.1);
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd_with(v);
    }
    if !g.is_unit() && !g.vanishes() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn rank_mod_p(rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        // Fermat
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, base);
            }
            base = mulm(base, base);
            e >>= 1;
        }
        acc
    };
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for mut row in rows {
        while let Some(&(lead, lv)) = row.first() {
            match pivots.get(&lead) {
                None => {
                    let s = inv(lv);
                    for e in row.iter_mut() {
                        e.1 = mulm(e.1, s);
                    }
                    pivots.insert(lead, row);
                    break;
                }
                Some(piv) => {
                    // row -= lv * piv  (piv is monic)
                    let mut out = Vec::with_capacity(row.len() + piv.len());
                    let (mut i, mut j) = (1, 1);
                    while i < row.len() || j < piv.len() {
                        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
                        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
                        match ci.cmp(&cj) {
                            Ordering::Equal => {
                                let v = (row[i].1 + p - mulm(lv, piv[j].1)) % p;
                                if v != 0 {
                                    out.push((ci, v));
                                }
                                i += 1;
                                j += 1;
                            }
                            Ordering::Less => {
                                out.push(row[i]);
                                i += 1;
                            }
                            Ordering::Greater => {
                                let v = (p - mulm(lv, piv[j].1)) % p;
                                if v != 0 {
                                    out.push((cj, v));
                                }
                                j += 1;
                            }
                        }
                    }
                    row = out;
                }
            }
        }
    }
    pivots.len()
}

/// Some rational solution of `M x = b`, with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve_rational(m: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> =
                m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r0 = 0;
    for c in 0..cols {
        let Some(p) = (r0..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r0, p);
        let inv = aug[r0][c].recip();
        for x in aug[r0].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r0 && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot = aug[r0].clone();
                for (x, p) in aug[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivot_cols.push(c);
        r0 += 1;
        if r0 == rows {
            break;
        }
    }
    if aug[r0..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Greatest common divisor of a list of integers (0 for the empty or zero list).
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
