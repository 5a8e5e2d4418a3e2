//! Exact sparse linear algebra: echelon forms, kernels, quotient coordinates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `v + c * w`.
pub fn axpy(v: &[(usize, Scalar)], c: &Scalar, w: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            let x = c * &w[j].1;
            if !x.is_zero() {
                out.push((w[j].0, x));
            }
            j += 1;
        } else {
            let x = &v[i].1 + &(c * &w[j].1);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn entry(v: &[(usize, Scalar)], i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(k, _)| *k).ok().map(|k| &v[k].1)
}

/// Collects `(index, value)` pairs with repeated indices summed.
pub fn collect_sparse(field: FieldDescriptor, items: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in items {
        let e = acc.entry(i).or_insert_with(|| field.zero());
        *e += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: FieldDescriptor,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from triplets; repeated positions are summed.
    pub fn from_triplets(
        field: FieldDescriptor,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, x) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            per_row[r].push((c, x));
        }
        let data = per_row
            .into_iter()
            .map(|row| collect_sparse(field, row))
            .collect();
        SparseMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_dense(field: FieldDescriptor, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let trip = rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(move |(j, &x)| (i, j, field.from_i64(x)))
        });
        Self::from_triplets(field, rows.len(), cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        entry(&self.data[r], c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                cols[*j].push((i, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data: cols,
        }
    }

    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> Result<SparseVec, LinalgError> {
        if let Some((i, _)) = v.last() {
            if *i >= self.cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: self.cols,
                    got: i + 1,
                });
            }
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = self.field.zero();
            let (mut a, mut b) = (0, 0);
            while a < row.len() && b < v.len() {
                match row[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        s += &(&row[a].1 * &v[b].1);
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc = Vec::new();
            for (k, x) in row {
                acc = axpy(&acc, x, &other.data[*k]);
            }
            data.push(acc);
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data,
        })
    }

    /// Coordinate triplet dump, one `row col value` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} {} {}", self.rows, self.cols, self.field);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                let _ = writeln!(s, "{i} {j} {x}");
            }
        }
        s
    }
}

/// Subspace in reduced row-echelon form: each vector has leading entry 1
/// at its pivot and zeros at every other pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    field: FieldDescriptor,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn empty(field: FieldDescriptor, ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            field,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(
        field: FieldDescriptor,
        ambient: usize,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let mut b = Self::empty(field, ambient);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace: the canonical coset representative.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut v = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if let Some(c) = entry(&v, p) {
                let c = -c.clone();
                v = axpy(&v, &c, b);
            }
        }
        v
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let r = scale(&r, &lead.inverse().expect("nonzero"));
        for b in self.vectors.iter_mut() {
            if let Some(c) = entry(b, p) {
                let c = -c.clone();
                *b = axpy(b, &c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.vectors.insert(at, r);
        true
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        let coords: SparseVec = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| entry(v, p).map(|c| (k, c.clone())))
            .collect();
        let mut rest = v.to_vec();
        for (k, c) in &coords {
            rest = axpy(&rest, &-c.clone(), &self.vectors[*k]);
        }
        rest.is_empty().then_some(coords)
    }
}

pub fn quotient_coords(v: &[(usize, Scalar)], image: &SubspaceBasis) -> Result<SparseVec, LinalgError> {
    if let Some((i, _)) = v.last() {
        if *i >= image.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: image.ambient,
                got: i + 1,
            });
        }
    }
    Ok(image.reduce(v))
}

#[derive(Debug, Clone)]
pub struct Echelon {
    pub rank: usize,
    pub row_space: SubspaceBasis,
    pub kernel: SubspaceBasis,
}

pub fn echelon(m: &SparseMatrix) -> Echelon {
    let row_space = SubspaceBasis::spanned_by(m.field, m.cols, m.data.iter().cloned());
    let rank = row_space.dim();
    let mut is_pivot = vec![false; m.cols];
    for &p in &row_space.pivots {
        is_pivot[p] = true;
    }
    let mut kernel_vectors = Vec::with_capacity(m.cols - rank);
    for f in (0..m.cols).filter(|&f| !is_pivot[f]) {
        let mut v: SparseVec = row_space
            .vectors
            .iter()
            .zip(&row_space.pivots)
            .filter_map(|(b, &p)| entry(b, f).map(|c| (p, -c.clone())))
            .collect();
        v.push((f, m.field.one()));
        v.sort_by_key(|(i, _)| *i);
        kernel_vectors.push(v);
    }
    let kernel = SubspaceBasis::spanned_by(m.field, m.cols, kernel_vectors);
    Echelon {
        rank,
        row_space,
        kernel,
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    SubspaceBasis::spanned_by(m.field, m.cols, m.data.iter().cloned()).dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn identity_and_zero() {
        let id = SparseMatrix::from_dense(Q, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let e = echelon(&id);
        assert_eq!((e.rank, e.kernel.dim()), (3, 0));
        let z = SparseMatrix::zero(Q, 2, 5);
        let e = echelon(&z);
        assert_eq!((e.rank, e.kernel.dim()), (0, 5));
    }

    #[test]
    fn rank_one_example() {
        let m = SparseMatrix::from_dense(Q, &[vec![1, 1, 0, 0], vec![2, 2, 0, 0]]);
        let e = echelon(&m);
        assert_eq!((e.rank, e.kernel.dim()), (1, 3));
        for v in e.kernel.vectors() {
            assert!(m.mul_vec(v).unwrap().is_empty());
        }
    }

    #[test]
    fn quotient_examples() {
        let img = SubspaceBasis::spanned_by(Q, 2, [vec![(0, Q.one())]]);
        let v = vec![(0, Q.one()), (1, Q.one())];
        assert_eq!(quotient_coords(&v, &img).unwrap(), vec![(1, Q.one())]);
        assert!(quotient_coords(&[(0, Q.from_i64(5))], &img).unwrap().is_empty());
        let zero = SubspaceBasis::empty(Q, 2);
        assert_eq!(quotient_coords(&v, &zero).unwrap(), v);
        assert!(quotient_coords(&[(2, Q.one())], &img).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let b = SubspaceBasis::spanned_by(
            Q,
            3,
            [
                vec![(0, Q.one()), (1, Q.from_i64(2))],
                vec![(1, Q.one()), (2, Q.from_i64(-1))],
            ],
        );
        let v = vec![(0, Q.from_i64(3)), (1, Q.from_i64(7)), (2, Q.from_i64(-1))];
        let c = b.coordinates(&v).unwrap();
        let mut back = Vec::new();
        for (k, x) in &c {
            back = axpy(&back, x, &b.vectors()[*k]);
        }
        assert_eq!(back, v);
        assert!(b.coordinates(&[(2, Q.one())]).is_none());
    }

    #[test]
    fn triplet_dump() {
        let m = SparseMatrix::from_dense(FieldDescriptor::PrimeField(5), &[vec![0, 3], vec![6, 0]]);
        assert_eq!(m.to_triplet_text(), "# 2 2 fp:5\n0 1 3\n1 0 1\n");
    }
}
