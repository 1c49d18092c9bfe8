//! Sparse exact linear algebra over Q(q).

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, QScalar)>;

/// Accumulates `(index, value)` contributions into a sorted sparse vector.
#[derive(Default, Clone, Debug)]
pub struct Accum {
    map: BTreeMap<usize, QScalar>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, v: &QScalar) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&idx) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    self.map.remove(&idx);
                }
            }
            None => {
                self.map.insert(idx, v.clone());
            }
        }
    }

    pub fn add_vec(&mut self, v: &[(usize, QScalar)], scale: &QScalar) {
        if scale.is_zero() {
            return;
        }
        for (i, x) in v {
            if scale.is_one() {
                self.add(*i, x);
            } else {
                self.add(*i, &(x * scale));
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn finish(self) -> SparseVec {
        self.map.into_iter().collect()
    }
}

pub fn vec_scale(v: &[(usize, QScalar)], s: &QScalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

/// `a + s * b` for sorted sparse vectors.
pub fn vec_axpy(a: &[(usize, QScalar)], s: &QScalar, b: &[(usize, QScalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = &b[j].1 * s;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * s);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn vec_get(v: &[(usize, QScalar)], idx: usize) -> Option<&QScalar> {
    v.binary_search_by_key(&idx, |t| t.0).ok().map(|k| &v[k].1)
}

/// Column-major sparse matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| QScalar::one()).collect())
    }

    pub fn diagonal(d: Vec<QScalar>) -> Self {
        let n = d.len();
        let cols = d
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x)] })
            .collect();
        Self { rows: n, cols }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(r, _)| *r < rows)));
        Self { rows, cols }
    }

    pub fn from_triplets(rows: usize, ncols: usize, triplets: &[(usize, usize, QScalar)]) -> Result<Self> {
        let mut acc: Vec<Accum> = vec![Accum::new(); ncols];
        for (r, c, v) in triplets {
            if *r >= rows || *c >= ncols {
                return Err(Error::Shape(format!("entry ({r},{c}) outside {rows}x{ncols}")));
            }
            acc[*c].add(*r, v);
        }
        Ok(Self { rows, cols: acc.into_iter().map(Accum::finish).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, QScalar)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> QScalar {
        vec_get(&self.cols[c], r).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Nonzero entries as `(row, col, value)`, sorted by row then column.
    pub fn triplets(&self) -> Vec<(usize, usize, QScalar)> {
        let mut t: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        t.sort_by_key(|x| (x.0, x.1));
        t
    }

    pub fn apply(&self, v: &[(usize, QScalar)]) -> SparseVec {
        let mut acc = Accum::new();
        for (j, x) in v {
            acc.add_vec(&self.cols[*j], x);
        }
        acc.finish()
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    fn check_same_shape(&self, other: &SparseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &QScalar, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other)?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| vec_axpy(a, s, b))
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.axpy(&QScalar::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.axpy(&QScalar::from_int(-1), other)
    }

    pub fn scale(&self, s: &QScalar) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| vec_scale(c, s)).collect() }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut acc: Vec<Vec<(usize, QScalar)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                acc[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols(), cols: acc }
    }

    /// Keeps rows in `rows` (renumbered in the given order) and drops the rest.
    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: SparseVec =
                    c.iter().filter_map(|(r, x)| pos.get(r).map(|p| (*p, x.clone()))).collect();
                v.sort_by_key(|t| t.0);
                v
            })
            .collect();
        SparseMatrix { rows: keep.len(), cols }
    }

    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: keep.iter().map(|c| self.cols[*c].clone()).collect() }
    }

    pub fn map_entries<F: Fn(&QScalar) -> QScalar>(&self, f: F) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(r, v)| (*r, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// Matrix of exact rational values at `q = q0`.
    pub fn eval_at(&self, q0: &BigRational) -> Result<Vec<(usize, usize, BigRational)>> {
        self.triplets()
            .into_iter()
            .map(|(r, c, v)| Ok((r, c, v.eval_at(q0)?)))
            .collect()
    }

    /// Same matrix with every entry replaced by its constant value at `q = q0`.
    pub fn at_point(&self, q0: &BigRational) -> Result<SparseMatrix> {
        let t: Vec<_> = self.eval_at(q0)?.into_iter().map(|(r, c, x)| (r, c, QScalar::from_rational(&x))).collect();
        SparseMatrix::from_triplets(self.rows, self.cols.len(), &t)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.rows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }
}

/// Incremental row-echelon basis of a subspace of `Q(q)^dim`.
///
/// Inserted vectors are remembered in order; `coordinates` expresses a vector
/// in the span as a combination of them.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, SparseVec)>,
    pivots: HashMap<usize, usize>,
    // combination of originals equal to each stored row
    combos: Vec<SparseVec>,
    originals: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: HashMap::new(), combos: Vec::new(), originals: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns the residual and the row coefficients used.
    fn reduce_inner(&self, v: &[(usize, QScalar)]) -> (SparseVec, Vec<(usize, QScalar)>) {
        let mut r: SparseVec = v.to_vec();
        let mut used = Vec::new();
        for (k, (p, row)) in self.rows.iter().enumerate() {
            if let Some(c) = vec_get(&r, *p).cloned() {
                r = vec_axpy(&r, &(-&c), row);
                used.push((k, c));
            }
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[(usize, QScalar)]) -> SparseVec {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &[(usize, QScalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns its original index when it was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let (r, used) = self.reduce_inner(&v);
        if r.is_empty() {
            return None;
        }
        let idx = self.originals;
        self.originals += 1;
        let (p, lead) = (r[0].0, r[0].1.clone());
        let inv = lead.inv().expect("nonzero pivot");
        let row = vec_scale(&r, &inv);
        let mut combo = Accum::new();
        combo.add(idx, &QScalar::one());
        for (k, c) in &used {
            combo.add_vec(&self.combos[*k], &(-c));
        }
        let combo = vec_scale(&combo.finish(), &inv);
        self.pivots.insert(p, self.rows.len());
        self.rows.push((p, row));
        self.combos.push(combo);
        Some(idx)
    }

    /// Coordinates of `v` in terms of the independent inserted vectors.
    pub fn coordinates(&self, v: &[(usize, QScalar)]) -> Option<SparseVec> {
        let (r, used) = self.reduce_inner(v);
        if !r.is_empty() {
            return None;
        }
        let mut acc = Accum::new();
        for (k, c) in &used {
            acc.add_vec(&self.combos[*k], c);
        }
        Some(acc.finish())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }
}

/// Basis of the kernel of the linear map whose columns are `cols`.
pub fn kernel(rows: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(rows);
    let mut kernel = Vec::new();
    let mut independent = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        match e.coordinates(c) {
            Some(coords) => {
                // c_j - sum coords_k c_{independent[k]} = 0
                let mut acc = Accum::new();
                acc.add(j, &QScalar::one());
                for (k, x) in coords {
                    acc.add(independent[k], &(-&x));
                }
                kernel.push(acc.finish());
            }
            None => {
                e.insert(c.clone());
                independent.push(j);
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, x)| (i, QScalar::from_int(x))).collect()
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        assert_eq!(e.insert(v(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(e.insert(v(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(v(&[(0, 1), (2, -1)])), None);
        let c = e.coordinates(&v(&[(0, 2), (2, -2)])).unwrap();
        assert_eq!(c, v(&[(0, 2), (1, -2)]));
        assert!(e.coordinates(&v(&[(2, 1)])).is_none());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_and_rank() {
        let cols = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)])];
        let k = kernel(2, &cols);
        assert_eq!(k, vec![v(&[(0, -2), (1, 1)])]);
        let m = SparseMatrix::from_columns(2, cols);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = SparseMatrix::from_triplets(
            2,
            2,
            &[(0, 1, QScalar::one()), (1, 0, QScalar::q_pow(1))],
        )
        .unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, SparseMatrix::diagonal(vec![QScalar::q_pow(1), QScalar::q_pow(1)]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
