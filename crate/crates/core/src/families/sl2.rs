//! `sl2` toolkit: Killing pairing, tensors `Ψ ∈ sl2 ⊗ sl2`, stabilizers and
//! the eigenvalue-4 space of `Ψ†Ψ`.
//!
//! Basis order is `(e, h, f)` with the standard 2x2 matrices. A tensor is
//! read as the endomorphism `x ↦ x ⊣ Ψ`, so that `Ψ ⊢ (x ⊣ Ψ) = Ψ†Ψ(x)`.

use std::fmt;

use rand::Rng;

use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{echelon, SparseMatrix};

use super::FamilyError;

pub type Mat2 = [[Scalar; 2]; 2];
pub type Mat3 = [[Scalar; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SL2Element {
    pub e: Scalar,
    pub h: Scalar,
    pub f: Scalar,
}

impl SL2Element {
    pub fn new(e: Scalar, h: Scalar, f: Scalar) -> Self {
        SL2Element { e, h, f }
    }

    pub fn from_i64(field: FieldDescriptor, e: i64, h: i64, f: i64) -> Self {
        Self::new(field.from_i64(e), field.from_i64(h), field.from_i64(f))
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_i64(field, 0, 0, 0)
    }

    /// `k`-th basis vector of `(e, h, f)`.
    pub fn basis(field: FieldDescriptor, k: usize) -> Self {
        let mut c = [0; 3];
        c[k] = 1;
        Self::from_i64(field, c[0], c[1], c[2])
    }

    pub fn coords(&self) -> [Scalar; 3] {
        [self.e.clone(), self.h.clone(), self.f.clone()]
    }

    pub fn from_coords(c: [Scalar; 3]) -> Self {
        let [e, h, f] = c;
        SL2Element { e, h, f }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.e.field()
    }

    /// `[[h, e], [f, -h]]`.
    pub fn matrix(&self) -> Mat2 {
        [
            [self.h.clone(), self.e.clone()],
            [self.f.clone(), -self.h.clone()],
        ]
    }

    /// Inverse of [`matrix`](Self::matrix); `None` unless traceless.
    pub fn from_matrix(m: &Mat2) -> Option<Self> {
        if !(&m[0][0] + &m[1][1]).is_zero() {
            return None;
        }
        Some(SL2Element {
            e: m[0][1].clone(),
            h: m[0][0].clone(),
            f: m[1][0].clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.h.is_zero() && self.f.is_zero()
    }
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let c = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]]
}

pub fn mat2_identity(field: FieldDescriptor) -> Mat2 {
    [[field.one(), field.zero()], [field.zero(), field.one()]]
}

pub fn mat2_det(a: &Mat2) -> Scalar {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

fn mat2_inverse_unimodular(a: &Mat2) -> Mat2 {
    [
        [a[1][1].clone(), -a[0][1].clone()],
        [-a[1][0].clone(), a[0][0].clone()],
    ]
}

/// `k(a, b) = tr(ab)`.
pub fn sl2_killing(a: &SL2Element, b: &SL2Element) -> Scalar {
    let m = mat2_mul(&a.matrix(), &b.matrix());
    &m[0][0] + &m[1][1]
}

/// `[a, b] = ab - ba`.
pub fn sl2_bracket(a: &SL2Element, b: &SL2Element) -> SL2Element {
    let (am, bm) = (a.matrix(), b.matrix());
    let (ab, ba) = (mat2_mul(&am, &bm), mat2_mul(&bm, &am));
    let d = [
        [&ab[0][0] - &ba[0][0], &ab[0][1] - &ba[0][1]],
        [&ab[1][0] - &ba[1][0], &ab[1][1] - &ba[1][1]],
    ];
    SL2Element::from_matrix(&d).expect("commutators are traceless")
}

/// `Ψ = Σ a_ij g_i ⊗ g_j` over `(e, h, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTensor {
    pub field: FieldDescriptor,
    pub a: Mat3,
}

const LETTERS: [char; 3] = ['e', 'h', 'f'];

impl PsiTensor {
    pub fn zero(field: FieldDescriptor) -> Self {
        PsiTensor {
            field,
            a: std::array::from_fn(|_| std::array::from_fn(|_| field.zero())),
        }
    }

    pub fn from_i64(field: FieldDescriptor, a: [[i64; 3]; 3]) -> Self {
        PsiTensor {
            field,
            a: std::array::from_fn(|i| std::array::from_fn(|j| field.from_i64(a[i][j]))),
        }
    }

    /// `u ⊗ v`.
    pub fn outer(u: &SL2Element, v: &SL2Element) -> Self {
        let (uc, vc) = (u.coords(), v.coords());
        PsiTensor {
            field: u.field(),
            a: std::array::from_fn(|i| std::array::from_fn(|j| &uc[i] * &vc[j])),
        }
    }

    pub fn add(&self, other: &PsiTensor) -> PsiTensor {
        PsiTensor {
            field: self.field,
            a: std::array::from_fn(|i| std::array::from_fn(|j| &self.a[i][j] + &other.a[i][j])),
        }
    }

    /// Parses `ee:2,ff:2,hh:1`; omitted tokens are zero, a bare token
    /// means coefficient 1, repeated tokens add up.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<Self, FamilyError> {
        let mut psi = Self::zero(field);
        let bad = |m: String| FamilyError::BadPsi(m);
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (name, coeff) = match tok.split_once(':') {
                Some((n, c)) => (n.trim(), c.trim()),
                None => (tok, "1"),
            };
            let idx: Vec<usize> = name
                .chars()
                .map(|ch| LETTERS.iter().position(|&l| l == ch))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad(format!("unknown basis pair `{name}`")))?;
            if idx.len() != 2 {
                return Err(bad(format!("`{name}` must name two of e, h, f")));
            }
            let c = field
                .parse_scalar(coeff)
                .map_err(|e| bad(format!("`{tok}`: {e}")))?;
            psi.a[idx[0]][idx[1]] += &c;
        }
        Ok(psi)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|x| x.is_zero())
    }

    /// Flipped tensor `Σ a_ji g_i ⊗ g_j`.
    pub fn flipped(&self) -> PsiTensor {
        PsiTensor {
            field: self.field,
            a: std::array::from_fn(|i| std::array::from_fn(|j| self.a[j][i].clone())),
        }
    }

    /// Matrix of `x ↦ x ⊣ Ψ` in the basis `(e, h, f)` (columns are images).
    pub fn endomorphism(&self) -> Mat3 {
        let f = self.field;
        let mut m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| f.zero()));
        for k in 0..3 {
            let img = contract(self, &SL2Element::basis(f, k), Side::Left).coords();
            for (i, x) in img.into_iter().enumerate() {
                m[i][k] = x;
            }
        }
        m
    }
}

impl fmt::Display for PsiTensor {
    /// Canonical literal, row-major over `(e, h, f)`; `0` for the zero tensor.
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if !self.a[i][j].is_zero() {
                    parts.push(format!("{}{}:{}", LETTERS[i], LETTERS[j], self.a[i][j]));
                }
            }
        }
        if parts.is_empty() {
            write!(fm, "0")
        } else {
            write!(fm, "{}", parts.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `v ⊣ Ψ`: pairs `v` with the first factor.
    Left,
    /// `Ψ ⊢ v`: pairs `v` with the second factor.
    Right,
}

pub fn contract(psi: &PsiTensor, v: &SL2Element, side: Side) -> SL2Element {
    let f = psi.field;
    let k: Vec<Scalar> = (0..3)
        .map(|i| sl2_killing(v, &SL2Element::basis(f, i)))
        .collect();
    let mut out = [f.zero(), f.zero(), f.zero()];
    for i in 0..3 {
        for j in 0..3 {
            match side {
                Side::Left => out[j] += &(&psi.a[i][j] * &k[i]),
                Side::Right => out[i] += &(&psi.a[i][j] * &k[j]),
            }
        }
    }
    SL2Element::from_coords(out)
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = a[0][0].zero_like();
            for k in 0..3 {
                s += &(&a[i][k] * &b[k][j]);
            }
            s
        })
    })
}

/// Matrix of `Ψ†Ψ`, i.e. `x ↦ Ψ ⊢ (x ⊣ Ψ)`.
pub fn psi_dagger_psi(psi: &PsiTensor) -> Mat3 {
    mat3_mul(&psi.flipped().endomorphism(), &psi.endomorphism())
}

fn mat3_to_sparse(field: FieldDescriptor, m: &Mat3) -> SparseMatrix {
    let trip = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (i, j, m[i][j].clone()));
    SparseMatrix::from_triplets(field, 3, 3, trip)
}

/// `dim {x : Ψ†Ψ x = 4x}`.
pub fn jj_dim(psi: &PsiTensor) -> usize {
    let f = psi.field;
    let mut m = psi_dagger_psi(psi);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= &f.from_i64(4);
    }
    echelon(&mat3_to_sparse(f, &m)).kernel.dim()
}

/// 2x2 matrix acting on `L(1)` with basis `(x, y)`.
fn rho(g: &SL2Element) -> Mat2 {
    g.matrix()
}

type Mat4 = [[Scalar; 4]; 4];

fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r / 2][c / 2] * &b[r % 2][c % 2]))
}

fn mat4_zero(f: FieldDescriptor) -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| f.zero()))
}

fn mat4_add_assign(a: &mut Mat4, b: &Mat4, c: &Scalar) {
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] += &(&b[i][j] * c);
        }
    }
}

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = a[0][0].zero_like();
            for k in 0..4 {
                s += &(&a[i][k] * &b[k][j]);
            }
            s
        })
    })
}

/// `Ψ` acting on `L(1) ⊗ L(1)` by the Kronecker product, basis
/// `(x⊗x, x⊗y, y⊗x, y⊗y)`.
pub fn psi_kronecker(psi: &PsiTensor) -> [[Scalar; 4]; 4] {
    let f = psi.field;
    let mut m = mat4_zero(f);
    for i in 0..3 {
        for j in 0..3 {
            if psi.a[i][j].is_zero() {
                continue;
            }
            let k = kron(&rho(&SL2Element::basis(f, i)), &rho(&SL2Element::basis(f, j)));
            mat4_add_assign(&mut m, &k, &psi.a[i][j]);
        }
    }
    m
}

/// Solution space dimension of a linear system given as a function from
/// unknown index to its (flattened) coefficient column.
fn solution_dim(field: FieldDescriptor, unknowns: usize, columns: impl Fn(usize) -> Vec<Scalar>) -> usize {
    let cols: Vec<Vec<Scalar>> = (0..unknowns).map(columns).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let trip = cols
        .iter()
        .enumerate()
        .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, x)| (i, j, x.clone())));
    echelon(&SparseMatrix::from_triplets(field, rows, unknowns, trip)).kernel.dim()
}

fn flatten(m: &Mat4) -> Vec<Scalar> {
    m.iter().flatten().cloned().collect()
}

/// `u ⊗ 1 + 1 ⊗ w` on `L(1) ⊗ L(1)`.
fn split_action(u: &Mat2, w: &Mat2) -> Mat4 {
    let f = u[0][0].field();
    let id = mat2_identity(f);
    let mut m = kron(u, &id);
    mat4_add_assign(&mut m, &kron(&id, w), &f.one());
    m
}

/// `dim {(u1, u2) ∈ sl2 ⊕ sl2 : [u2 ⊗ 1 + 1 ⊗ u1, Ψ] = 0}`.
pub fn stab_dim(psi: &PsiTensor) -> usize {
    let f = psi.field;
    let p = psi_kronecker(psi);
    let zero2: Mat2 = [[f.zero(), f.zero()], [f.zero(), f.zero()]];
    solution_dim(f, 6, |k| {
        let g = rho(&SL2Element::basis(f, k % 3));
        let a = if k < 3 { split_action(&zero2, &g) } else { split_action(&g, &zero2) };
        let mut c = mat4_mul(&a, &p);
        mat4_add_assign(&mut c, &mat4_mul(&p, &a), &-f.one());
        flatten(&c)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelModelReport {
    /// Solutions `(f1, f2, f3, f4) ∈ k(1,0,0,0) ⊕ sl2^4` of
    /// `(1+Ψ)(f2⊗1 + 1⊗f3) = (f4⊗1 + 1⊗f1)(1+Ψ)`.
    pub total: usize,
    pub stab: usize,
    pub jj: usize,
}

pub fn kernel_model_dims(psi: &PsiTensor) -> Result<KernelModelReport, FamilyError> {
    let f = psi.field;
    let mut one_plus = psi_kronecker(psi);
    for (i, row) in one_plus.iter_mut().enumerate() {
        row[i] += &f.one();
    }
    let zero2: Mat2 = [[f.zero(), f.zero()], [f.zero(), f.zero()]];
    // unknown 0: c (identity in f1); 1 + 3i + k: basis g_k in f_{i+1}
    let total = solution_dim(f, 13, |u| {
        let (slot, g) = if u == 0 {
            (0, mat2_identity(f))
        } else {
            ((u - 1) / 3, rho(&SL2Element::basis(f, (u - 1) % 3)))
        };
        // LHS - RHS as a function of this unknown alone
        let m = match slot {
            0 => {
                let r = mat4_mul(&split_action(&zero2, &g), &one_plus);
                scale4(&r, &-f.one())
            }
            1 => mat4_mul(&one_plus, &split_action(&g, &zero2)),
            2 => mat4_mul(&one_plus, &split_action(&zero2, &g)),
            _ => {
                let r = mat4_mul(&split_action(&g, &zero2), &one_plus);
                scale4(&r, &-f.one())
            }
        };
        flatten(&m)
    });
    let report = KernelModelReport {
        total,
        stab: stab_dim(psi),
        jj: jj_dim(psi),
    };
    if report.total != report.stab + report.jj {
        return Err(FamilyError::KernelModelMismatch {
            total: report.total,
            stab: report.stab,
            jj: report.jj,
        });
    }
    Ok(report)
}

fn scale4(m: &Mat4, c: &Scalar) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| &m[i][j] * c))
}

/// `Ad(g) ⊗ Ad(h)` applied to `Ψ`; `g`, `h` must have determinant 1.
pub fn orbit_conjugate(psi: &PsiTensor, g: &Mat2, h: &Mat2) -> Result<PsiTensor, FamilyError> {
    if !mat2_det(g).is_one() || !mat2_det(h).is_one() {
        return Err(FamilyError::NotUnimodular);
    }
    let ad = |m: &Mat2, x: &SL2Element| -> SL2Element {
        let c = mat2_mul(&mat2_mul(m, &x.matrix()), &mat2_inverse_unimodular(m));
        SL2Element::from_matrix(&c).expect("conjugation keeps the trace")
    };
    let f = psi.field;
    let mut out = PsiTensor::zero(f);
    for i in 0..3 {
        for j in 0..3 {
            if psi.a[i][j].is_zero() {
                continue;
            }
            let gi = ad(g, &SL2Element::basis(f, i));
            let hj = ad(h, &SL2Element::basis(f, j));
            let mut t = PsiTensor::outer(&gi, &hj);
            for row in t.a.iter_mut() {
                for x in row.iter_mut() {
                    *x = &*x * &psi.a[i][j];
                }
            }
            out = out.add(&t);
        }
    }
    Ok(out)
}

/// Tensor with integer entries drawn uniformly from `[-bound, bound]`.
pub fn random_psi<R: Rng>(rng: &mut R, field: FieldDescriptor, bound: i64) -> PsiTensor {
    let a: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-bound..=bound)));
    PsiTensor::from_i64(field, a)
}

/// Product of a few elementary unimodular matrices with entries in `[-2, 2]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, field: FieldDescriptor) -> Mat2 {
    let mut m = mat2_identity(field);
    for k in 0..3 {
        let t = field.from_i64(rng.gen_range(-2..=2));
        let el = if k % 2 == 0 {
            [[field.one(), t], [field.zero(), field.one()]]
        } else {
            [[field.one(), field.zero()], [t, field.one()]]
        };
        m = mat2_mul(&m, &el);
    }
    m
}

/// The `(stab, 𝔍)` pairs that occur.
pub const FEASIBLE: [(usize, usize); 10] = [
    (6, 0),
    (3, 3),
    (3, 0),
    (2, 1),
    (2, 0),
    (1, 2),
    (1, 1),
    (1, 0),
    (0, 1),
    (0, 0),
];

pub fn is_feasible(stab: usize, jj: usize) -> bool {
    FEASIBLE.contains(&(stab, jj))
}

/// The nine example tensors with their `(stab, 𝔍)` and `HH` dimensions.
pub fn psi_examples() -> Vec<(&'static str, (usize, usize), [usize; 3])> {
    vec![
        ("ee:2,ff:2,hh:1", (3, 3), [1, 6, 9]),
        ("ee:1", (3, 0), [1, 3, 6]),
        ("ee:1,eh:1,he:1,hh:1", (2, 1), [1, 3, 6]),
        ("ee:1,hh:1,ef:2,fe:2", (1, 2), [1, 3, 6]),
        ("ee:1,eh:1,ef:1,he:1,hh:1,hf:1,fe:1,fh:1,ff:1", (2, 0), [1, 2, 5]),
        ("ee:1,ff:1,hh:1", (1, 1), [1, 2, 5]),
        ("ee:1,ff:1", (1, 0), [1, 1, 4]),
        ("ee:1,hh:1,ff:1,ef:2,fe:2", (0, 1), [1, 1, 4]),
        ("ee:1,hh:2,ef:1,fe:1", (0, 0), [1, 0, 3]),
    ]
}
