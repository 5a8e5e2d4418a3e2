//! The Kronecker square `Λ ⊗ Λ` and its deformations `(Λ ⊗ Λ)_Ψ`.

use crate::field::FieldDescriptor;
use crate::presentation::{BoundQuiverPresentation, Relation};
use crate::quiver::{AlgebraElement, Path, Quiver};

use super::sl2::{psi_kronecker, PsiTensor};
use super::FamilyError;

/// Vertex `(i, j)` is named `v{i}{j}`. Arrows `xl{j}, yl{j}` act in the
/// first factor (`(1,j) -> (2,j)`), `xr{i}, yr{i}` in the second
/// (`(i,1) -> (i,2)`).
pub fn kronecker_square_quiver() -> Quiver {
    let mut q = Quiver::new();
    for name in ["v11", "v12", "v21", "v22"] {
        q.add_vertex(name).unwrap();
    }
    for (name, s, t) in [
        ("xl1", "v11", "v21"),
        ("yl1", "v11", "v21"),
        ("xl2", "v12", "v22"),
        ("yl2", "v12", "v22"),
        ("xr1", "v11", "v12"),
        ("yr1", "v11", "v12"),
        ("xr2", "v21", "v22"),
        ("yr2", "v21", "v22"),
    ] {
        q.add_arrow_by_name(name, s, t).unwrap();
    }
    q
}

const LETTER: [&str; 2] = ["x", "y"];

/// `ū(α, β)`: `β` in the second factor, then `α` in the first.
fn upper(q: &Quiver, a: usize, b: usize) -> Path {
    q.path_from_names(&[&format!("{}l2", LETTER[a]), &format!("{}r1", LETTER[b])])
        .unwrap()
}

/// `u(α, β)`: `α` in the first factor, then `β` in the second.
fn lower(q: &Quiver, a: usize, b: usize) -> Path {
    q.path_from_names(&[&format!("{}r2", LETTER[b]), &format!("{}l1", LETTER[a])])
        .unwrap()
}

/// Relations `ū = u + Ψ(u)` for `u = α ⊗ β`, `sl2` acting on `{x, y}` as
/// on `L(1)`.
pub fn p1p1_presentation(psi: &PsiTensor) -> Result<BoundQuiverPresentation, FamilyError> {
    let field = psi.field;
    let q = kronecker_square_quiver();
    let kron = psi_kronecker(psi);
    let mut relations = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let col = 2 * a + b;
            let mut rest = AlgebraElement::from_path(field, lower(&q, a, b));
            for r in 0..4 {
                let c = &kron[r][col];
                if !c.is_zero() {
                    rest.add_term(lower(&q, r / 2, r % 2), c.clone());
                }
            }
            relations.push(Relation::with_lead(upper(&q, a, b), &rest));
        }
    }
    Ok(BoundQuiverPresentation::new(q, field, relations)?)
}

pub fn kronecker_presentation(field: FieldDescriptor) -> BoundQuiverPresentation {
    let mut q = Quiver::new();
    q.add_vertex("v1").unwrap();
    q.add_vertex("v2").unwrap();
    q.add_arrow_by_name("x", "v1", "v2").unwrap();
    q.add_arrow_by_name("y", "v1", "v2").unwrap();
    BoundQuiverPresentation::new(q, field, Vec::new()).unwrap()
}
