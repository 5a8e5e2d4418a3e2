//! Normalized bar complex relative to the vertex subalgebra `E`.
//!
//! A degree-`n` cell is a composable tuple `(x_1, ..., x_n)` of radical
//! basis paths (`s(x_i) = t(x_{i+1})`); degree-0 cells are vertices. The
//! cochain space `C^n` has basis `(cell, b)` with `b` a basis path parallel
//! to the cell, i.e. from `s(x_n)` to `t(x_1)`.

use std::collections::HashMap;

use crate::field::Scalar;
use crate::linalg::{collect_sparse, SparseMatrix, SparseVec};
use crate::rewrite::QuotientAlgebra;

#[derive(Debug, Clone)]
pub struct Cells {
    degree: usize,
    cells: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// `(target, source)` of each cell.
    ends: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Cells {
    fn new(alg: &QuotientAlgebra, degree: usize, prev: Option<&Cells>) -> Cells {
        let cells: Vec<Vec<usize>> = match (degree, prev) {
            (0, _) => (0..alg.quiver().num_vertices()).map(|v| vec![v]).collect(),
            (1, _) => alg.radical_basis().into_iter().map(|x| vec![x]).collect(),
            (_, Some(prev)) => {
                let rad = alg.radical_basis();
                let mut out = Vec::new();
                for c in &prev.cells {
                    let last = *c.last().unwrap();
                    for &x in &rad {
                        if alg.target(x) == alg.source(last) {
                            let mut d = c.clone();
                            d.push(x);
                            out.push(d);
                        }
                    }
                }
                out
            }
            _ => unreachable!("cells are built degree by degree"),
        };
        let ends: Vec<(usize, usize)> = cells
            .iter()
            .map(|c| {
                if degree == 0 {
                    (c[0], c[0])
                } else {
                    (alg.target(c[0]), alg.source(*c.last().unwrap()))
                }
            })
            .collect();
        let mut offsets = Vec::with_capacity(cells.len());
        let mut dim = 0;
        for &(t, s) in &ends {
            offsets.push(dim);
            dim += alg.between(t, s).len();
        }
        let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Cells {
            degree,
            cells,
            index,
            ends,
            offsets,
            dim,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, k: usize) -> &[usize] {
        &self.cells[k]
    }

    pub fn find(&self, cell: &[usize]) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn ends(&self, k: usize) -> (usize, usize) {
        self.ends[k]
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// Dimension of the cochain space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cell index owning a cochain coordinate.
    pub fn cell_of(&self, coord: usize) -> usize {
        self.offsets.partition_point(|&o| o <= coord) - 1
    }
}

#[derive(Debug, Clone)]
pub struct BarComplex {
    alg: QuotientAlgebra,
    nmax: usize,
    cells: Vec<Cells>,
    /// `diffs[n]`: `C^n -> C^{n+1}` as a `dim C^{n+1} x dim C^n` matrix.
    diffs: Vec<SparseMatrix>,
    /// Position of each basis element inside its `between` list.
    slot: Vec<usize>,
}

impl BarComplex {
    /// Builds cochain spaces up to degree `nmax + 1` and differentials up
    /// to `d^nmax`.
    pub fn new(alg: &QuotientAlgebra, nmax: usize) -> BarComplex {
        let mut cells: Vec<Cells> = Vec::with_capacity(nmax + 2);
        for n in 0..=nmax + 1 {
            let c = Cells::new(alg, n, cells.last());
            cells.push(c);
        }
        let mut slot = vec![0; alg.dim()];
        for t in 0..alg.quiver().num_vertices() {
            for s in 0..alg.quiver().num_vertices() {
                for (j, &b) in alg.between(t, s).iter().enumerate() {
                    slot[b] = j;
                }
            }
        }
        let mut bar = BarComplex {
            alg: alg.clone(),
            nmax,
            cells,
            diffs: Vec::new(),
            slot,
        };
        bar.diffs = (0..=nmax).map(|n| bar.differential(n)).collect();
        bar
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.alg
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn cells(&self, n: usize) -> &Cells {
        &self.cells[n]
    }

    /// `dim C^n` for `n = 0..=nmax+1`.
    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.dim()).collect()
    }

    pub fn d(&self, n: usize) -> &SparseMatrix {
        &self.diffs[n]
    }

    /// Adds `delta` to one entry of `d^n`; used to exercise failure paths.
    pub fn perturb(&mut self, n: usize, row: usize, col: usize, delta: Scalar) {
        let d = &self.diffs[n];
        let mut trip: Vec<(usize, usize, Scalar)> = (0..d.rows())
            .flat_map(|r| d.row(r).iter().map(move |(c, x)| (r, *c, x.clone())))
            .collect();
        trip.push((row, col, delta));
        self.diffs[n] = SparseMatrix::from_triplets(d.field(), d.rows(), d.cols(), trip);
    }

    /// `d^{n+1} d^n = 0` for every `n < nmax`.
    pub fn is_complex(&self) -> bool {
        (0..self.nmax).all(|n| {
            self.diffs[n + 1]
                .mul(&self.diffs[n])
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    fn coord(&self, n: usize, cell: usize, b: usize) -> usize {
        self.cells[n].offset(cell) + self.slot[b]
    }

    /// Cell of degree `n` obtained by dropping/merging entries of a
    /// degree-`n+1` cell; degree 0 cells are named by their vertex.
    fn face_index(&self, n: usize, tuple: &[usize], vertex: usize) -> Option<usize> {
        if n == 0 {
            self.cells[0].find(&[vertex])
        } else {
            self.cells[n].find(tuple)
        }
    }

    fn differential(&self, n: usize) -> SparseMatrix {
        let alg = &self.alg;
        let field = alg.field();
        let (lo, hi) = (&self.cells[n], &self.cells[n + 1]);
        let mut trip: Vec<(usize, usize, Scalar)> = Vec::new();
        let sign = |k: usize| if k % 2 == 0 { field.one() } else { -field.one() };
        for k in 0..hi.len() {
            let c = hi.cell(k);
            let (t, s) = hi.ends(k);
            // x_1 . f(x_2, ..., x_{n+1})
            let x1 = c[0];
            if let Some(j) = self.face_index(n, &c[1..], alg.source(x1)) {
                let (jt, js) = lo.ends(j);
                for &b in alg.between(jt, js) {
                    for (b2, lam) in alg.mul_basis(x1, b) {
                        trip.push((self.coord(n + 1, k, *b2), self.coord(n, j, b), lam.clone()));
                    }
                }
            }
            // inner faces
            for i in 1..=n {
                for (y, lam) in alg.mul_basis(c[i - 1], c[i]) {
                    let mut tuple = Vec::with_capacity(n);
                    tuple.extend_from_slice(&c[..i - 1]);
                    tuple.push(*y);
                    tuple.extend_from_slice(&c[i + 1..]);
                    let j = lo.find(&tuple).expect("products of radical paths are radical");
                    let coef = &sign(i) * lam;
                    for &b in alg.between(t, s) {
                        trip.push((self.coord(n + 1, k, b), self.coord(n, j, b), coef.clone()));
                    }
                }
            }
            // f(x_1, ..., x_n) . x_{n+1}
            let xl = c[n];
            if let Some(j) = self.face_index(n, &c[..n], alg.target(xl)) {
                let (jt, js) = lo.ends(j);
                let sg = sign(n + 1);
                for &b in alg.between(jt, js) {
                    for (b2, lam) in alg.mul_basis(b, xl) {
                        trip.push((
                            self.coord(n + 1, k, *b2),
                            self.coord(n, j, b),
                            &sg * lam,
                        ));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(field, hi.dim(), lo.dim(), trip)
    }

    /// Values of a degree-`n` cochain, one algebra vector per cell.
    pub fn values(&self, n: usize, f: &[(usize, Scalar)]) -> Vec<SparseVec> {
        let cells = &self.cells[n];
        let mut out = vec![Vec::new(); cells.len()];
        for (coord, c) in f {
            let k = cells.cell_of(*coord);
            let (t, s) = cells.ends(k);
            let b = self.alg.between(t, s)[coord - cells.offset(k)];
            out[k].push((b, c.clone()));
        }
        for v in &mut out {
            v.sort_by_key(|(i, _)| *i);
        }
        out
    }

    /// Assembles a degree-`n` cochain from per-cell algebra values.
    pub fn assemble(&self, n: usize, values: impl IntoIterator<Item = (usize, SparseVec)>) -> SparseVec {
        let items = values.into_iter().flat_map(|(k, v)| {
            v.into_iter()
                .map(move |(b, c)| (self.cells[n].offset(k) + self.slot[b], c))
        });
        collect_sparse(self.alg.field(), items)
    }

    /// `(f ∪ g)(x_1..x_{p+q}) = f(x_1..x_p) g(x_{p+1}..x_{p+q})`.
    pub fn cup(&self, p: usize, f: &[(usize, Scalar)], q: usize, g: &[(usize, Scalar)]) -> SparseVec {
        let n = p + q;
        assert!(n < self.cells.len(), "cup lands above the computed degree");
        let fv = self.values(p, f);
        let gv = self.values(q, g);
        let cells = &self.cells[n];
        let mut out = Vec::new();
        for k in 0..cells.len() {
            let c = cells.cell(k);
            let (fi, gi) = if n == 0 {
                (Some(c[0]), Some(c[0]))
            } else {
                let mid = if p == 0 {
                    self.alg.target(c[0])
                } else {
                    self.alg.source(c[p - 1])
                };
                (
                    self.face_index(p, &c[..p], mid),
                    self.face_index(q, &c[p..], mid),
                )
            };
            let (Some(fi), Some(gi)) = (fi, gi) else { continue };
            if fv[fi].is_empty() || gv[gi].is_empty() {
                continue;
            }
            let v = self.alg.mul(&fv[fi], &gv[gi]);
            if !v.is_empty() {
                out.push((k, v));
            }
        }
        self.assemble(n, out)
    }

    /// Gerstenhaber circle product
    /// `f ∘ g = Σ_i (-1)^{i(q-1)} f(x_1..x_i, g(x_{i+1}..x_{i+q}), ..)`,
    /// with values of `g` projected to the radical.
    pub fn circle(&self, p: usize, f: &[(usize, Scalar)], q: usize, g: &[(usize, Scalar)]) -> SparseVec {
        if p == 0 {
            return Vec::new();
        }
        let n = p + q - 1;
        assert!(n < self.cells.len(), "circle product lands above the computed degree");
        let field = self.alg.field();
        let fv = self.values(p, f);
        let gv = self.values(q, g);
        let cells = &self.cells[n];
        let mut out = Vec::new();
        for k in 0..cells.len() {
            let c: &[usize] = if n == 0 { &[] } else { cells.cell(k) };
            let mut acc: SparseVec = Vec::new();
            for i in 0..p {
                let ginput = if q == 0 {
                    let v = if n == 0 {
                        cells.cell(k)[0]
                    } else if i == 0 {
                        self.alg.target(c[0])
                    } else {
                        self.alg.source(c[i - 1])
                    };
                    self.face_index(0, &[], v)
                } else {
                    self.face_index(q, &c[i..i + q], 0)
                };
                let Some(gi) = ginput else { continue };
                let sign = if (i * (q + 1)) % 2 == 0 { field.one() } else { -field.one() };
                for (y, lam) in &gv[gi] {
                    if !self.alg.is_radical(*y) {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(p);
                    tuple.extend_from_slice(&c[..i]);
                    tuple.push(*y);
                    tuple.extend_from_slice(&c[i + q..]);
                    let fi = self.cells[p].find(&tuple).expect("insertion keeps composability");
                    let coef = &sign * lam;
                    acc = crate::linalg::axpy(&acc, &coef, &fv[fi]);
                }
            }
            if !acc.is_empty() {
                out.push((k, acc));
            }
        }
        self.assemble(n, out)
    }

    /// `[f, g] = f ∘ g - (-1)^{(p-1)(q-1)} g ∘ f`.
    pub fn bracket(&self, p: usize, f: &[(usize, Scalar)], q: usize, g: &[(usize, Scalar)]) -> SparseVec {
        let a = self.circle(p, f, q, g);
        let b = self.circle(q, g, p, f);
        let odd = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 1;
        let field = self.alg.field();
        let c = if odd { field.one() } else { -field.one() };
        crate::linalg::axpy(&a, &c, &b)
    }

    /// Applies `d^n` to a cochain.
    pub fn apply_d(&self, n: usize, f: &[(usize, Scalar)]) -> SparseVec {
        self.diffs[n].mul_vec(f).expect("cochain lies in C^n")
    }
}
