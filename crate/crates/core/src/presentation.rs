//! Bound quiver presentations `kQ/(R)`.

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};
use crate::quiver::{AlgebraElement, Path, Quiver, QuiverError};

/// Path order used to pick leading terms: length first, then arrow
/// precedence read left to right in written order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPolicy {
    /// `rank[a]`: larger rank means larger arrow.
    rank: Vec<usize>,
}

impl OrderPolicy {
    /// Arrows listed first are largest.
    pub fn default_for(quiver: &Quiver) -> Self {
        let n = quiver.num_arrows();
        OrderPolicy {
            rank: (0..n).map(|i| n - 1 - i).collect(),
        }
    }

    /// `precedence` lists every arrow exactly once, largest first.
    pub fn from_precedence(quiver: &Quiver, precedence: &[usize]) -> Result<Self, String> {
        let n = quiver.num_arrows();
        let mut rank = vec![usize::MAX; n];
        if precedence.len() != n {
            return Err(format!(
                "order lists {} arrows, quiver has {n}",
                precedence.len()
            ));
        }
        for (pos, &a) in precedence.iter().enumerate() {
            if a >= n || rank[a] != usize::MAX {
                return Err("order must list every arrow exactly once".into());
            }
            rank[a] = n - 1 - pos;
        }
        Ok(OrderPolicy { rank })
    }

    /// Arrow indices from largest to smallest.
    pub fn precedence(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank.len()).collect();
        idx.sort_by_key(|&a| std::cmp::Reverse(self.rank[a]));
        idx
    }

    pub fn is_default(&self) -> bool {
        let n = self.rank.len();
        self.rank.iter().enumerate().all(|(i, &r)| r == n - 1 - i)
    }

    pub fn cmp_paths(&self, p: &Path, q: &Path) -> std::cmp::Ordering {
        p.len()
            .cmp(&q.len())
            .then_with(|| {
                let pw = p.arrows().iter().rev().map(|&a| self.rank[a]);
                let qw = q.arrows().iter().rev().map(|&a| self.rank[a]);
                pw.cmp(qw)
            })
            .then_with(|| p.cmp(q))
    }

    pub fn leading_path<'a>(&self, e: &'a AlgebraElement) -> Option<&'a Path> {
        e.paths().max_by(|a, b| self.cmp_paths(a, b))
    }
}

/// A relation together with an optional designated leading path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub element: AlgebraElement,
    pub lead: Option<Path>,
}

impl Relation {
    pub fn new(element: AlgebraElement) -> Self {
        Relation {
            element,
            lead: None,
        }
    }

    /// `lead = rest`, stored as `lead - rest`.
    pub fn with_lead(lead: Path, rest: &AlgebraElement) -> Self {
        let field = rest.field();
        let mut element = AlgebraElement::from_path(field, lead.clone());
        element.add_scaled(rest, &-field.one());
        Relation {
            element,
            lead: Some(lead),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("relation {index}: {message}")]
    BadRelation { index: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiverPresentation {
    pub quiver: Quiver,
    pub field: FieldDescriptor,
    pub relations: Vec<Relation>,
    pub order: OrderPolicy,
}

impl BoundQuiverPresentation {
    pub fn new(
        quiver: Quiver,
        field: FieldDescriptor,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        let order = OrderPolicy::default_for(&quiver);
        Self::with_order(quiver, field, relations, order)
    }

    pub fn with_order(
        quiver: Quiver,
        field: FieldDescriptor,
        relations: Vec<Relation>,
        order: OrderPolicy,
    ) -> Result<Self, PresentationError> {
        let pres = BoundQuiverPresentation {
            quiver,
            field,
            relations,
            order,
        };
        pres.validate()?;
        Ok(pres)
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        for (index, rel) in self.relations.iter().enumerate() {
            let bad = |message: String| PresentationError::BadRelation { index, message };
            let e = &rel.element;
            if e.field() != self.field {
                return Err(bad(format!("coefficients over {} expected", self.field)));
            }
            if let Some(p) = e.paths().find(|p| p.len() < 2) {
                return Err(QuiverError::ShortRelation(p.len()).into());
            }
            if !e.is_parallel() {
                return Err(QuiverError::NotParallel(self.quiver.element_to_string(e)).into());
            }
            let mut lens = e.paths().map(|p| p.len());
            if let Some(l0) = lens.next() {
                if lens.any(|l| l != l0) {
                    return Err(
                        QuiverError::Inhomogeneous(self.quiver.element_to_string(e)).into()
                    );
                }
            }
            if let Some(lead) = &rel.lead {
                if e.coefficient(lead).is_zero() {
                    return Err(bad(format!(
                        "designated leading path {} does not occur",
                        self.quiver.path_name(lead)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }
}
