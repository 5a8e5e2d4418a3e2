//! Hochschild cohomology: dimensions, class representatives, cup products
//! and Gerstenhaber brackets.

pub mod bar;
pub mod small;

use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::{echelon, SparseVec, SubspaceBasis};
use crate::rewrite::QuotientAlgebra;

pub use bar::{BarComplex, Cells};
pub use small::SmallComplex;

pub const DEFAULT_NMAX: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("small complex gives HH dims {small:?}, bar complex gives {bar:?}")]
    ComplexMismatch { small: Vec<usize>, bar: Vec<usize> },
    #[error("degree {0} exceeds the computed range")]
    DegreeOutOfRange(usize),
    #[error("cochain of degree {0} is not a cocycle")]
    NotACocycle(usize),
    #[error("classes belong to different algebras")]
    AlgebraMismatch,
}

/// `HH^n` as cocycles modulo coboundaries.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: usize,
    pub cocycles: SubspaceBasis,
    pub coboundaries: SubspaceBasis,
    /// Cocycle representatives reduced modulo coboundaries, in echelon form.
    pub classes: SubspaceBasis,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    /// Coordinates of the class of `z`; `None` if `z` is not a cocycle.
    pub fn coords(&self, z: &[(usize, Scalar)]) -> Option<SparseVec> {
        if !self.cocycles.contains(z) {
            return None;
        }
        let r = self.coboundaries.reduce(z);
        Some(
            self.classes
                .coordinates(&r)
                .expect("reduced cocycle lies in the span of class representatives"),
        )
    }

    pub fn representative(&self, k: usize) -> &SparseVec {
        &self.classes.vectors()[k]
    }
}

#[derive(Debug, Clone)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: SparseVec,
    pub coords: SparseVec,
}

/// Bar complex together with cohomology in degrees `0..=nmax`.
#[derive(Debug, Clone)]
pub struct HochschildComputation {
    bar: BarComplex,
    hh: Vec<Cohomology>,
}

impl HochschildComputation {
    pub fn new(alg: &QuotientAlgebra, nmax: usize) -> Self {
        Self::from_bar(BarComplex::new(alg, nmax))
    }

    pub fn from_bar(bar: BarComplex) -> Self {
        let nmax = bar.nmax();
        let field = bar.algebra().field();
        let mut hh = Vec::with_capacity(nmax + 1);
        let mut prev_image = SubspaceBasis::empty(field, bar.cells(0).dim());
        for n in 0..=nmax {
            let e = echelon(bar.d(n));
            let cocycles = e.kernel;
            let reps = cocycles.vectors().iter().map(|z| prev_image.reduce(z));
            let classes = SubspaceBasis::spanned_by(field, bar.cells(n).dim(), reps);
            let next_image = echelon(&bar.d(n).transpose()).row_space;
            hh.push(Cohomology {
                degree: n,
                cocycles,
                coboundaries: prev_image,
                classes,
            });
            prev_image = next_image;
        }
        HochschildComputation { bar, hh }
    }

    pub fn bar(&self) -> &BarComplex {
        &self.bar
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        self.bar.algebra()
    }

    pub fn nmax(&self) -> usize {
        self.bar.nmax()
    }

    pub fn hh(&self, n: usize) -> Result<&Cohomology, HochschildError> {
        self.hh.get(n).ok_or(HochschildError::DegreeOutOfRange(n))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.hh.iter().map(|h| h.dim()).collect()
    }

    /// `dim C^n` for `n = 0..=nmax+1`.
    pub fn cochain_dims(&self) -> Vec<usize> {
        self.bar.dims()
    }

    /// `Σ (-1)^n dim C^n`, available when `C^{nmax+1} = 0`.
    pub fn euler(&self) -> Option<i64> {
        let dims = self.cochain_dims();
        if *dims.last().unwrap() != 0 {
            return None;
        }
        Some(alternating(&dims))
    }

    pub fn hh_euler(&self) -> i64 {
        alternating(&self.dims())
    }

    pub fn classes(&self, n: usize) -> Result<Vec<CohomologyClass>, HochschildError> {
        let h = self.hh(n)?;
        Ok((0..h.dim())
            .map(|k| CohomologyClass {
                degree: n,
                representative: h.representative(k).clone(),
                coords: vec![(k, self.algebra().field().one())],
            })
            .collect())
    }

    pub fn class_of(&self, n: usize, z: &[(usize, Scalar)]) -> Result<CohomologyClass, HochschildError> {
        let coords = self.hh(n)?.coords(z).ok_or(HochschildError::NotACocycle(n))?;
        Ok(CohomologyClass {
            degree: n,
            representative: z.to_vec(),
            coords,
        })
    }

    /// Class of `1`; fails only if the differentials are inconsistent.
    pub fn unit(&self) -> Result<CohomologyClass, HochschildError> {
        let alg = self.algebra();
        let z = self.bar.assemble(
            0,
            (0..alg.quiver().num_vertices()).map(|v| (v, vec![(alg.idempotent(v), alg.field().one())])),
        );
        self.class_of(0, &z)
    }

    pub fn cup(&self, f: &CohomologyClass, g: &CohomologyClass) -> Result<CohomologyClass, HochschildError> {
        let n = f.degree + g.degree;
        self.hh(n)?;
        let z = self
            .bar
            .cup(f.degree, &f.representative, g.degree, &g.representative);
        self.class_of(n, &z)
    }

    pub fn bracket(&self, f: &CohomologyClass, g: &CohomologyClass) -> Result<CohomologyClass, HochschildError> {
        let n = (f.degree + g.degree).saturating_sub(1);
        if f.degree + g.degree == 0 {
            return Ok(CohomologyClass {
                degree: 0,
                representative: Vec::new(),
                coords: Vec::new(),
            });
        }
        self.hh(n)?;
        let z = self
            .bar
            .bracket(f.degree, &f.representative, g.degree, &g.representative);
        self.class_of(n, &z)
    }

    /// Rank of `HH^1 ⊗ HH^1 -> HH^2` under the cup product.
    pub fn cup_rank(&self) -> Result<usize, HochschildError> {
        self.product_rank(1, 1, 2, |a, b| self.cup(a, b))
    }

    /// Rank of the bracket `HH^1 ⊗ HH^1 -> HH^1`.
    pub fn hh1_bracket_rank(&self) -> Result<usize, HochschildError> {
        self.product_rank(1, 1, 1, |a, b| self.bracket(a, b))
    }

    fn product_rank(
        &self,
        p: usize,
        q: usize,
        target: usize,
        op: impl Fn(&CohomologyClass, &CohomologyClass) -> Result<CohomologyClass, HochschildError>,
    ) -> Result<usize, HochschildError> {
        let (fs, gs) = (self.classes(p)?, self.classes(q)?);
        let dim = self.hh(target)?.dim();
        let mut span = SubspaceBasis::empty(self.algebra().field(), dim);
        for f in &fs {
            for g in &gs {
                span.insert(op(f, g)?.coords);
                if span.dim() == dim {
                    return Ok(dim);
                }
            }
        }
        Ok(span.dim())
    }
}

fn alternating(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Dimensions and consistency data of one computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HHReport {
    pub hh: Vec<usize>,
    pub bar_dims: Vec<usize>,
    pub small_dims: Option<[usize; 3]>,
    pub small_hh: Option<[usize; 3]>,
    pub euler: Option<i64>,
}

/// Computes HH through the bar complex and, when available, the small
/// complex; the two must agree.
pub fn hh_report(alg: &QuotientAlgebra, nmax: usize) -> Result<(HochschildComputation, HHReport), HochschildError> {
    let comp = HochschildComputation::new(alg, nmax);
    let hh = comp.dims();
    let small = SmallComplex::new(alg);
    let small_hh = small.as_ref().map(|s| s.hh_dims());
    if let Some(s) = small_hh {
        let agree = hh
            .iter()
            .enumerate()
            .all(|(i, &d)| d == s.get(i).copied().unwrap_or(0));
        if !agree {
            return Err(HochschildError::ComplexMismatch {
                small: s.to_vec(),
                bar: hh.clone(),
            });
        }
    }
    let report = HHReport {
        bar_dims: comp.cochain_dims(),
        euler: comp.euler(),
        small_dims: small.as_ref().map(|s| s.dims()),
        small_hh,
        hh,
    };
    Ok((comp, report))
}
