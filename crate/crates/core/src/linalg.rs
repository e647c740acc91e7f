//! Exact linear algebra: dense matrices, sparse incremental elimination,
//! subspaces in reduced echelon form, kernels and quotient spaces.

use crate::field::{Field, Rat};
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

/// Dense vector of scalars.
pub type Vector = Vec<Rat>;
/// Sparse vector: strictly increasing indices, nonzero values.
pub type Sparse = Vec<(usize, Rat)>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rat::ZERO; n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rat::ONE;
    v
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn to_sparse(v: &[Rat]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(n: usize, v: &Sparse) -> Vector {
    let mut out = zero_vec(n);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn vec_add(k: Field, a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
}

pub fn vec_sub(k: Field, a: &[Rat], b: &[Rat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
}

pub fn vec_scale(k: Field, c: &Rat, a: &[Rat]) -> Vector {
    a.iter().map(|x| k.mul(c, x)).collect()
}

/// `acc += c * v`
pub fn axpy(k: Field, acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = k.mul_add(a, c, x);
        }
    }
}

pub fn dot(k: Field, a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = k.mul_add(&s, x, y);
        }
    }
    s
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Rat::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::ONE);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.data[i * cols..(i + 1) * cols].clone_from_slice(r);
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vector]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, k: Field, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let orow = o.row(l);
                let base = i * o.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] = k.mul_add(&out.data[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: Field, v: &[Rat]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(k, self.row(i), v)).collect()
    }

    pub fn add(&self, k: Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: vec_add(k, &self.data, &o.data) }
    }

    pub fn sub(&self, k: Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: vec_sub(k, &self.data, &o.data) }
    }

    pub fn scale(&self, k: Field, c: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: vec_scale(k, c, &self.data) }
    }

    /// `self += c * o`
    pub fn axpy(&mut self, k: Field, c: &Rat, o: &Mat) {
        axpy(k, &mut self.data, c, &o.data);
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rank(&self, k: Field) -> usize {
        rank(k, self)
    }
}

/// Incremental row reduction over sparse rows.
///
/// Rows are stored with leading coefficient one; every stored row has zero
/// entries at the pivot columns of rows inserted before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<Sparse>,
    pivot_cols: Vec<usize>,
    row_of_col: Vec<usize>,
    acc: Vec<Rat>,
    mark: Vec<bool>,
}

const NONE: usize = usize::MAX;

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            row_of_col: vec![NONE; ncols],
            acc: vec![Rat::ZERO; ncols],
            mark: vec![false; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.row_of_col[c] != NONE
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&mut self, v: &Sparse) -> Sparse {
        let k = self.field;
        let mut heap = BinaryHeap::new();
        for (j, x) in v {
            self.acc[*j] = x.clone();
            self.mark[*j] = true;
            heap.push(Reverse(*j));
        }
        let mut out = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            self.mark[c] = false;
            let x = core::mem::take(&mut self.acc[c]);
            if x.is_zero() {
                continue;
            }
            let r = self.row_of_col[c];
            if r == NONE {
                out.push((c, x));
                continue;
            }
            for (j, y) in &self.rows[r] {
                if *j == c {
                    continue;
                }
                self.acc[*j] = k.sub(&self.acc[*j], &k.mul(&x, y));
                if !self.mark[*j] {
                    self.mark[*j] = true;
                    heap.push(Reverse(*j));
                }
            }
        }
        out
    }

    pub fn reduce_dense(&mut self, v: &[Rat]) -> Sparse {
        self.reduce(&to_sparse(v))
    }

    /// Inserts `v`; returns true when it was independent of the current rows.
    pub fn insert(&mut self, v: &Sparse) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let k = self.field;
        let lead = r[0].0;
        let inv = k.inv(&r[0].1).expect("nonzero leading entry");
        let row: Sparse = r.into_iter().map(|(j, x)| (j, k.mul(&x, &inv))).collect();
        self.row_of_col[lead] = self.rows.len();
        self.pivot_cols.push(lead);
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, v: &[Rat]) -> bool {
        self.insert(&to_sparse(v))
    }

    pub fn contains(&mut self, v: &[Rat]) -> bool {
        self.reduce_dense(v).is_empty()
    }

    /// Fully reduced rows sorted by pivot column, with their pivots.
    pub fn rref(&self) -> (Vec<usize>, Vec<Sparse>) {
        let k = self.field;
        let n = self.rows.len();
        let mut reduced: Vec<Sparse> = vec![Vec::new(); n];
        for idx in (0..n).rev() {
            let mut acc: Sparse = self.rows[idx].clone();
            let targets: Vec<(usize, Rat)> = acc
                .iter()
                .filter(|(j, _)| *j != self.pivot_cols[idx] && self.row_of_col[*j] != NONE)
                .cloned()
                .collect();
            for (j, x) in targets {
                let other = &reduced[self.row_of_col[j]];
                acc = sparse_axpy(k, &acc, &k.neg(&x), other);
            }
            reduced[idx] = acc;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.pivot_cols[i]);
        let pivots = order.iter().map(|&i| self.pivot_cols[i]).collect();
        let rows = order.into_iter().map(|i| core::mem::take(&mut reduced[i])).collect();
        (pivots, rows)
    }

    /// Basis of `{x : r·x = 0 for every inserted row r}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let k = self.field;
        let (pivots, rows) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for p in &pivots {
            is_pivot[*p] = true;
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f] {
                continue;
            }
            let mut v = zero_vec(self.ncols);
            v[f] = Rat::ONE;
            for (p, row) in pivots.iter().zip(&rows) {
                if let Ok(pos) = row.binary_search_by_key(&f, |(j, _)| *j) {
                    v[*p] = k.neg(&row[pos].1);
                }
            }
            out.push(v);
        }
        out
    }
}

/// `a + c*b` for sparse vectors.
pub fn sparse_axpy(k: Field, a: &Sparse, c: &Rat, b: &Sparse) -> Sparse {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = k.mul(c, &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = k.mul_add(&a[i].1, c, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank(k: Field, m: &Mat) -> usize {
    let mut e = Echelon::new(k, m.cols);
    for i in 0..m.rows {
        e.insert_dense(m.row(i));
    }
    e.rank()
}

/// Rank of the span of the given vectors.
pub fn rank_of(k: Field, n: usize, vs: &[Vector]) -> usize {
    let mut e = Echelon::new(k, n);
    for v in vs {
        e.insert_dense(v);
    }
    e.rank()
}

/// Basis of the right null space of `m`.
pub fn kernel_basis(k: Field, m: &Mat) -> Vec<Vector> {
    let mut e = Echelon::new(k, m.cols);
    for i in 0..m.rows {
        e.insert_dense(m.row(i));
    }
    e.kernel()
}

/// Basis of `{x : r·x = 0}` for sparse equation rows `r` over `n` unknowns.
pub fn solve_homogeneous<I: IntoIterator<Item = Sparse>>(k: Field, n: usize, eqs: I) -> Vec<Vector> {
    let mut e = Echelon::new(k, n);
    for r in eqs {
        e.insert(&r);
        if e.rank() == n {
            break;
        }
    }
    e.kernel()
}

/// Linear algebra errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, found: usize },
}

impl core::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
        }
    }
}

/// Some solution of `m·x = b`, or `None` when inconsistent.
pub fn solve(k: Field, m: &Mat, b: &[Rat]) -> Result<Option<Vector>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let n = m.cols;
    let mut e = Echelon::new(k, n + 1);
    for i in 0..m.rows {
        let mut row = to_sparse(m.row(i));
        if !b[i].is_zero() {
            row.push((n, b[i].clone()));
        }
        e.insert(&row);
    }
    let (pivots, rows) = e.rref();
    let mut x = zero_vec(n);
    for (p, row) in pivots.iter().zip(&rows) {
        if *p == n {
            return Ok(None);
        }
        if let Some((j, v)) = row.last() {
            if *j == n {
                x[*p] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

/// Some `x` with `m·x = b` for a matrix right-hand side, or `None`.
pub fn solve_columns(k: Field, m: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    if b.rows != m.rows {
        return Err(LinalgError::DimensionMismatch { expected: m.rows, found: b.rows });
    }
    let n = m.cols;
    let mut e = Echelon::new(k, n + b.cols);
    for i in 0..m.rows {
        let mut row = to_sparse(m.row(i));
        row.extend(to_sparse(b.row(i)).into_iter().map(|(j, x)| (n + j, x)));
        e.insert(&row);
    }
    let (pivots, rows) = e.rref();
    let mut x = Mat::zeros(n, b.cols);
    for (p, row) in pivots.iter().zip(&rows) {
        if *p >= n {
            return Ok(None);
        }
        for (j, v) in row {
            if *j >= n {
                x.set(*p, j - n, v.clone());
            }
        }
    }
    Ok(Some(x))
}

pub fn inverse(k: Field, m: &Mat) -> Option<Mat> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut e = Echelon::new(k, 2 * n);
    for i in 0..n {
        let mut row = to_sparse(m.row(i));
        row.push((n + i, Rat::ONE));
        e.insert(&row);
    }
    let (pivots, rows) = e.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for (i, row) in rows.iter().take(n).enumerate() {
        for (j, x) in row {
            if *j >= n {
                inv.set(i, j - n, x.clone());
            }
        }
    }
    Some(inv)
}

/// Subspace of `k^ambient` with a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_echelon(e: &Echelon) -> Subspace {
        let (pivots, rows) = e.rref();
        let basis = rows.iter().map(|r| to_dense(e.ncols(), r)).collect();
        Subspace { ambient: e.ncols(), basis, pivots }
    }

    pub fn span(k: Field, ambient: usize, vs: &[Vector]) -> Subspace {
        let mut e = Echelon::new(k, ambient);
        for v in vs {
            e.insert_dense(v);
        }
        Subspace::from_echelon(&e)
    }

    pub fn span_sparse<'a, I: IntoIterator<Item = &'a Sparse>>(k: Field, ambient: usize, vs: I) -> Subspace {
        let mut e = Echelon::new(k, ambient);
        for v in vs {
            e.insert(v);
        }
        Subspace::from_echelon(&e)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` with respect to `basis`, or `None` when `v` lies outside.
    pub fn coords(&self, k: Field, v: &[Rat]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|p| v[*p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                for (x, y) in r.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = k.sub(x, &k.mul(ci, y));
                    }
                }
            }
        }
        if is_zero_vec(&r) {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords_unchecked(&self, v: &[Rat]) -> Vector {
        self.pivots.iter().map(|p| v[*p].clone()).collect()
    }

    pub fn contains(&self, k: Field, v: &[Rat]) -> bool {
        self.coords(k, v).is_some()
    }

    pub fn contains_space(&self, k: Field, o: &Subspace) -> bool {
        o.basis.iter().all(|b| self.contains(k, b))
    }

    pub fn combine(&self, k: Field, c: &[Rat]) -> Vector {
        let mut v = zero_vec(self.ambient);
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(k, &mut v, ci, b);
        }
        v
    }

    pub fn sum(&self, k: Field, o: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Subspace::span(k, self.ambient, &vs)
    }

    pub fn intersect(&self, k: Field, o: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| k.neg(x)).collect::<Vector>()));
        let m = Mat::from_cols(self.ambient, &cols);
        let ker = kernel_basis(k, &m);
        let vs: Vec<Vector> = ker.iter().map(|c| self.combine(k, &c[..self.dim()])).collect();
        Subspace::span(k, self.ambient, &vs)
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_mat(&self) -> Mat {
        Mat::from_cols(self.ambient, &self.basis)
    }
}

/// A quotient `k^n / span(relations)` with a projection and a section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: usize,
    pub relations: Subspace,
    /// Ambient indices that survive as quotient coordinates.
    pub free: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Quotient {
        let mut is_pivot = vec![false; relations.ambient];
        for p in &relations.pivots {
            is_pivot[*p] = true;
        }
        let free = (0..relations.ambient).filter(|i| !is_pivot[*i]).collect();
        Quotient { ambient: relations.ambient, relations, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn project(&self, k: Field, v: &[Rat]) -> Vector {
        let mut out: Vector = self.free.iter().map(|i| v[*i].clone()).collect();
        for (p, row) in self.relations.pivots.iter().zip(&self.relations.basis) {
            let c = &v[*p];
            if c.is_zero() {
                continue;
            }
            for (o, i) in out.iter_mut().zip(&self.free) {
                if !row[*i].is_zero() {
                    *o = k.sub(o, &k.mul(c, &row[*i]));
                }
            }
        }
        out
    }

    pub fn lift(&self, q: &[Rat]) -> Vector {
        let mut v = zero_vec(self.ambient);
        for (x, i) in q.iter().zip(&self.free) {
            v[*i] = x.clone();
        }
        v
    }

    pub fn projection(&self, k: Field) -> Mat {
        let cols: Vec<Vector> = (0..self.ambient).map(|i| self.project(k, &unit_vec(self.ambient, i))).collect();
        Mat::from_cols(self.dim(), &cols)
    }

    pub fn section(&self) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|i| self.lift(&unit_vec(self.dim(), i))).collect();
        Mat::from_cols(self.ambient, &cols)
    }
}

/// Projection and section matrices of `k^n / span(relations)`.
pub fn quotient_space(k: Field, ambient: usize, relations: &[Vector]) -> (Mat, Mat) {
    let q = Quotient::new(Subspace::span(k, ambient, relations));
    (q.projection(k), q.section())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn m(rows: &[&[i64]]) -> Mat {
        let c = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(c, &rows.iter().map(|r| r.iter().map(|x| Rat::int(*x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(Q, &Mat::identity(2)), 2);
        assert_eq!(rank(Q, &Mat::zeros(3, 4)), 0);
        assert_eq!(rank(Q, &m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(Q, &Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(Q, &Mat::zeros(2, 3)).len(), 3);
        let k = kernel_basis(Q, &m(&[&[1, 1]]));
        assert_eq!(k, vec![vec![Rat::int(-1), Rat::ONE]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Rat::int(3), Rat::int(-2)];
        assert_eq!(solve(Q, &Mat::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(Q, &Mat::zeros(2, 2), &b).unwrap(), None);
        assert_eq!(solve(Q, &m(&[&[2]]), &[Rat::ONE]).unwrap(), Some(vec![Rat::new(1, 2)]));
        assert!(solve(Q, &m(&[&[2]]), &b).is_err());
    }

    #[test]
    fn quotient_examples() {
        let (p, s) = quotient_space(Q, 3, &[]);
        assert_eq!(p, Mat::identity(3));
        assert_eq!(s, Mat::identity(3));
        let (p, _) = quotient_space(Q, 2, &[unit_vec(2, 0), unit_vec(2, 1)]);
        assert_eq!(p.rows, 0);
        let (p, s) = quotient_space(Q, 2, &[vec![Rat::ONE, Rat::int(-1)]]);
        assert_eq!(p.rows, 1);
        assert_eq!(p.mul(Q, &s), Mat::identity(1));
        assert!(p.mul_vec(Q, &[Rat::ONE, Rat::int(-1)]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(Q, &a).unwrap();
        assert_eq!(a.mul(Q, &inv), Mat::identity(2));
        assert!(inverse(Q, &m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(Q, 3, &[unit_vec(3, 0), unit_vec(3, 1)]);
        let b = Subspace::span(Q, 3, &[unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(a.intersect(Q, &b).dim(), 1);
        assert_eq!(a.sum(Q, &b).dim(), 3);
        let v = vec![Rat::int(2), Rat::int(5), Rat::ZERO];
        assert_eq!(a.coords(Q, &v), Some(vec![Rat::int(2), Rat::int(5)]));
        assert_eq!(b.coords(Q, &v), None);
    }

    #[test]
    fn prime_field_rank_differs() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(rank(Q, &a), 2);
        let f2 = Field::prime(2).unwrap();
        let a2 = Mat::from_rows(2, &a.row_vecs().iter().map(|r| r.iter().map(|x| f2.from_rat(x).unwrap()).collect()).collect::<Vec<_>>());
        assert_eq!(rank(f2, &a2), 1);
    }
}
