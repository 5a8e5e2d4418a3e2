//! The algebra `Π` on the quiver `Q⁽⁴⁾`.

use crate::field::FieldDescriptor;
use crate::presentation::{BoundQuiverPresentation, Relation};
use crate::quiver::{AlgebraElement, Quiver};

/// `y2 x1 x0 = x2 x1 y0` and `x2 y1 y0 = y2 y1 x0`, left sides leading.
pub fn pi_presentation(field: FieldDescriptor) -> BoundQuiverPresentation {
    let mut q = Quiver::new();
    for v in ["v1", "v2", "v3", "v4"] {
        q.add_vertex(v).unwrap();
    }
    for i in 0..3 {
        let (s, t) = (format!("v{}", i + 1), format!("v{}", i + 2));
        q.add_arrow_by_name(format!("x{i}"), &s, &t).unwrap();
        q.add_arrow_by_name(format!("y{i}"), &s, &t).unwrap();
    }
    let rel = |lead: [&str; 3], rest: [&str; 3]| {
        let l = q.path_from_names(&lead).unwrap();
        let r = AlgebraElement::from_path(field, q.path_from_names(&rest).unwrap());
        Relation::with_lead(l, &r)
    };
    let relations = vec![
        rel(["y2", "x1", "x0"], ["x2", "x1", "y0"]),
        rel(["x2", "y1", "y0"], ["y2", "y1", "x0"]),
    ];
    BoundQuiverPresentation::new(q, field, relations).unwrap()
}
