//! Built-in algebras: torus incidence algebras, `(Λ⊗Λ)_Ψ`, `Π`, the
//! Kronecker algebra, random monomial algebras, and the `sl2` toolkit.

pub mod cells;
pub mod incidence;
pub mod monomial;
pub mod p1p1;
pub mod pi;
pub mod sl2;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};
use crate::presentation::{BoundQuiverPresentation, PresentationError};
use crate::quiver::QuiverError;
use crate::rewrite::RewriteError;

pub use cells::{torus_cubical_complex, torus_simplicial_complex, CellComplexData, CellError};
pub use incidence::{angle_functional_check, angle_labelling, incidence_presentation};
pub use monomial::{random_monomial_presentation, MonomialLimits};
pub use p1p1::{kronecker_presentation, p1p1_presentation};
pub use pi::pi_presentation;
pub use sl2::{jj_dim, kernel_model_dims, psi_dagger_psi, stab_dim, PsiTensor, SL2Element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("the deformation parameter must be nonzero")]
    ZeroParameter,
    #[error("parameter lies in a different field")]
    FieldMismatch,
    #[error(transparent)]
    Cells(#[from] CellError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("{0} is not a cube root of unity")]
    NotCubeRoot(String),
    #[error("no corner labelling satisfies the local rules")]
    NoLabelling,
    #[error("the small complex is not available for this algebra")]
    NoSmallComplex,
    #[error("bad tensor literal: {0}")]
    BadPsi(String),
    #[error("kernel model has dimension {total}, but stab + J = {stab} + {jj}")]
    KernelModelMismatch { total: usize, stab: usize, jj: usize },
    #[error("conjugating matrices must have determinant 1")]
    NotUnimodular,
    #[error("this family needs characteristic other than {0}")]
    UnsupportedCharacteristic(u64),
    #[error("unknown family `{0}` (expected torus-s, torus-c, p1p1, pi or kronecker)")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    TorusS,
    TorusC,
    P1P1,
    Pi,
    Kronecker,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::TorusS,
        Family::TorusC,
        Family::P1P1,
        Family::Pi,
        Family::Kronecker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TorusS => "torus-s",
            Family::TorusC => "torus-c",
            Family::P1P1 => "p1p1",
            Family::Pi => "pi",
            Family::Kronecker => "kronecker",
        }
    }

    pub fn uses_q(self) -> bool {
        matches!(self, Family::TorusS | Family::TorusC)
    }

    pub fn uses_psi(self) -> bool {
        self == Family::P1P1
    }

    /// Builds the presentation; `q` defaults to 1 and `Ψ` to 0.
    pub fn presentation(
        self,
        field: FieldDescriptor,
        q: Option<&Scalar>,
        psi: Option<&PsiTensor>,
    ) -> Result<BoundQuiverPresentation, FamilyError> {
        let one = field.one();
        let q = q.unwrap_or(&one);
        if !self.uses_q() && field.characteristic() == 2 {
            return Err(FamilyError::UnsupportedCharacteristic(2));
        }
        if self.uses_q() && field.characteristic() == 3 && q.pow(3).is_one() {
            log::warn!("characteristic 3: q = {q} is a cube root of unity only trivially");
        }
        match self {
            Family::TorusS => incidence_presentation(&torus_simplicial_complex(), field, q),
            Family::TorusC => incidence_presentation(&torus_cubical_complex(), field, q),
            Family::P1P1 => match psi {
                Some(p) if p.field != field => Err(FamilyError::FieldMismatch),
                Some(p) => p1p1_presentation(p),
                None => p1p1_presentation(&PsiTensor::zero(field)),
            },
            Family::Pi => Ok(pi_presentation(field)),
            Family::Kronecker => Ok(kronecker_presentation(field)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}
