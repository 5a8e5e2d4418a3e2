//! q-deformed incidence algebras of oriented 2-dimensional cell complexes
//! and the angle-labelling functional.

use crate::field::{FieldDescriptor, Scalar};
use crate::hochschild::SmallComplex;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::presentation::{BoundQuiverPresentation, Relation};
use crate::quiver::{AlgebraElement, Path, Quiver};
use crate::rewrite::QuotientAlgebra;

use super::cells::CellComplexData;
use super::FamilyError;

/// Quiver data of the face poset: which arrow goes where.
#[derive(Debug, Clone)]
pub struct IncidenceQuiver {
    pub quiver: Quiver,
    /// `alpha[(v, e)]`: arrow from vertex cell `v` to edge cell `e`.
    pub alpha: std::collections::HashMap<(usize, usize), usize>,
    /// `beta[(e, f)]`: arrow from edge cell `e` to face cell `f`.
    pub beta: std::collections::HashMap<(usize, usize), usize>,
    /// Corners `(vertex, face, leading edge, other edge)`, one per relation.
    pub corners: Vec<(usize, usize, usize, usize)>,
}

pub fn incidence_quiver(cells: &CellComplexData) -> Result<IncidenceQuiver, FamilyError> {
    cells.validate()?;
    cells.check_coherent()?;
    let mut q = Quiver::new();
    let nv = cells.vertex_names.len();
    let ne = cells.edges.len();
    for name in cells
        .vertex_names
        .iter()
        .chain(&cells.edge_names)
        .chain(&cells.face_names)
    {
        q.add_vertex(name.clone())?;
    }
    let mut alpha = std::collections::HashMap::new();
    for (e, &(a, b)) in cells.edges.iter().enumerate() {
        for v in [a, b] {
            let name = format!("a_{}_{}", cells.vertex_names[v], cells.edge_names[e]);
            alpha.insert((v, e), q.add_arrow(name, v, nv + e)?);
        }
    }
    let mut beta = std::collections::HashMap::new();
    for (f, face) in cells.faces.iter().enumerate() {
        for &e in &face.edges {
            let name = format!("b_{}_{}", cells.edge_names[e], cells.face_names[f]);
            beta.insert((e, f), q.add_arrow(name, nv + e, nv + ne + f)?);
        }
    }
    let corners = cells
        .faces
        .iter()
        .enumerate()
        .flat_map(|(f, face)| face.corners().map(move |(v, next, prev)| (v, f, next, prev)))
        .collect();
    Ok(IncidenceQuiver {
        quiver: q,
        alpha,
        beta,
        corners,
    })
}

impl IncidenceQuiver {
    /// The path vertex -> edge -> face through `e`.
    pub fn corner_path(&self, v: usize, e: usize, f: usize) -> Path {
        self.quiver
            .path_from_traversal(vec![self.alpha[&(v, e)], self.beta[&(e, f)]])
            .expect("incidence arrows compose")
    }
}

/// One relation `m = q n` per corner: `m` runs through the edge leaving the
/// vertex along the face's orientation, `n` through the other edge.
pub fn incidence_presentation(
    cells: &CellComplexData,
    field: FieldDescriptor,
    q: &Scalar,
) -> Result<BoundQuiverPresentation, FamilyError> {
    if q.is_zero() {
        return Err(FamilyError::ZeroParameter);
    }
    if q.field() != field {
        return Err(FamilyError::FieldMismatch);
    }
    let iq = incidence_quiver(cells)?;
    let relations = iq
        .corners
        .iter()
        .map(|&(v, f, lead, other)| {
            let m = iq.corner_path(v, lead, f);
            let n = iq.corner_path(v, other, f);
            Relation::with_lead(m, &AlgebraElement::monomial(n, q.clone()))
        })
        .collect();
    Ok(BoundQuiverPresentation::new(iq.quiver, field, relations)?)
}

/// Labels in `Z/3` for every corner (in relation order) such that labels
/// rise by one clockwise around each face and counterclockwise around each
/// vertex. `None` if the local rules are inconsistent.
pub fn angle_labelling(cells: &CellComplexData) -> Option<Vec<u8>> {
    let iq = incidence_quiver(cells).ok()?;
    let idx: std::collections::HashMap<(usize, usize), usize> = iq
        .corners
        .iter()
        .enumerate()
        .map(|(i, &(v, f, _, _))| ((v, f), i))
        .collect();
    // constraints (from, to): label[to] = label[from] + 1
    let mut steps: Vec<(usize, usize)> = Vec::new();
    for (f, face) in cells.faces.iter().enumerate() {
        let k = face.len();
        for i in 0..k {
            let v = face.vertices[i];
            let prev = face.vertices[(i + k - 1) % k];
            steps.push((idx[&(v, f)], idx[&(prev, f)]));
        }
    }
    for &(v, f, _, prev_edge) in &iq.corners {
        let other = cells
            .faces
            .iter()
            .enumerate()
            .find(|(g, face)| *g != f && face.edges.contains(&prev_edge))
            .map(|(g, _)| g)?;
        steps.push((idx[&(v, f)], idx[&(v, other)]));
    }
    let n = iq.corners.len();
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for &(a, b) in &steps {
        adj[a].push((b, 1));
        adj[b].push((a, 2));
    }
    let mut label: Vec<Option<u8>> = vec![None; n];
    for s in 0..n {
        if label[s].is_some() {
            continue;
        }
        label[s] = Some(0);
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            let la = label[a].unwrap();
            for &(b, d) in &adj[a] {
                let want = (la + d) % 3;
                match label[b] {
                    None => {
                        label[b] = Some(want);
                        stack.push(b);
                    }
                    Some(lb) if lb != want => return None,
                    _ => {}
                }
            }
        }
    }
    label.into_iter().collect()
}

/// Functional on the top term of the small complex taking value `q^label`
/// on each corner.
pub fn angle_functional(small: &SmallComplex, labels: &[u8], q: &Scalar) -> SparseVec {
    small
        .term2
        .iter()
        .enumerate()
        .map(|(i, &(r, _))| (i, q.pow(labels[r] as u64)))
        .collect()
}

/// Values of the functional on the images `d1(a ‖ p)` of all generators.
pub fn functional_on_image(d1: &SparseMatrix, functional: &SparseVec) -> Vec<Scalar> {
    let t = d1.transpose();
    (0..t.rows())
        .map(|c| {
            let mut s = d1.field().zero();
            for (r, x) in t.row(c) {
                if let Some(y) = crate::linalg::entry(functional, *r) {
                    s += &(x * y);
                }
            }
            s
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct AngleCheck {
    pub labels: Vec<u8>,
    /// Functional evaluated on `d1` of each generator.
    pub values: Vec<Scalar>,
    /// Same, against the matrix that keeps leading paths unreduced.
    pub unreduced_values: Vec<Scalar>,
}

impl AngleCheck {
    pub fn annihilates_image(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn annihilates_unreduced(&self) -> bool {
        self.unreduced_values.iter().all(|v| v.is_zero())
    }
}

/// Requires `q^3 = 1`.
pub fn angle_functional_check(
    cells: &CellComplexData,
    field: FieldDescriptor,
    q: &Scalar,
) -> Result<AngleCheck, FamilyError> {
    if !q.pow(3).is_one() {
        return Err(FamilyError::NotCubeRoot(q.to_string()));
    }
    let labels = angle_labelling(cells).ok_or(FamilyError::NoLabelling)?;
    let pres = incidence_presentation(cells, field, q)?;
    let alg = QuotientAlgebra::new(&pres)?;
    let small = SmallComplex::new(&alg).ok_or(FamilyError::NoSmallComplex)?;
    let phi = angle_functional(&small, &labels, q);
    let values = functional_on_image(&small.d1, &phi);
    let unreduced = unreduced_d1(&small, &alg);
    let unreduced_values = functional_on_image(&unreduced, &phi);
    Ok(AngleCheck {
        labels,
        values,
        unreduced_values,
    })
}

/// Variant of `d1` for relations `m = q n` that records a substitution
/// inside the leading path `m` with coefficient 1 on `(m ‖ n)` instead of
/// rewriting `m` to `q n`.
pub fn unreduced_d1(small: &SmallComplex, alg: &QuotientAlgebra) -> SparseMatrix {
    let field = alg.field();
    let rules = alg.system().rules();
    let mut trip = Vec::new();
    for (col, &(a, p)) in small.term1.iter().enumerate() {
        if alg.basis()[p] != alg.quiver().arrow_path(a) {
            continue;
        }
        for (row, &(r, _)) in small.term2.iter().enumerate() {
            let rule = &rules[r];
            let in_lead = rule.lead.arrows().iter().filter(|&&x| x == a).count();
            let mut c = field.from_i64(in_lead as i64);
            for (n, d) in rule.rest.terms() {
                let k = n.arrows().iter().filter(|&&x| x == a).count();
                c -= &(d * &field.from_i64(k as i64));
            }
            if !c.is_zero() {
                trip.push((row, col, c));
            }
        }
    }
    SparseMatrix::from_triplets(field, small.term2.len(), small.term1.len(), trip)
}
