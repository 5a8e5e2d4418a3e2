//! Three-term complex for algebras whose quiver has no paths of length 3:
//! `k(Q_0 ‖ B) -> k(Q_1 ‖ B) -> k(L ‖ B)`, where `B` is the basis of
//! irreducible paths and `L` the set of leading paths.

use crate::linalg::{rank, SparseMatrix};
use crate::quiver::{AlgebraElement, Path};
use crate::rewrite::QuotientAlgebra;

#[derive(Debug, Clone)]
pub struct SmallComplex {
    /// `(vertex, basis element)` with the basis element a loop at the vertex.
    pub term0: Vec<(usize, usize)>,
    /// `(arrow, basis element parallel to it)`.
    pub term1: Vec<(usize, usize)>,
    /// `(rule, basis element parallel to its leading path)`.
    pub term2: Vec<(usize, usize)>,
    pub d0: SparseMatrix,
    pub d1: SparseMatrix,
}

impl SmallComplex {
    /// `None` unless the quiver has no length-3 paths.
    pub fn new(alg: &QuotientAlgebra) -> Option<SmallComplex> {
        let q = alg.quiver();
        if q.longest_path_length().is_none_or(|l| l >= 3) {
            return None;
        }
        let field = alg.field();
        let rules = alg.system().rules();
        let mut term0 = Vec::new();
        for v in 0..q.num_vertices() {
            for &b in alg.between(v, v) {
                term0.push((v, b));
            }
        }
        let mut term1 = Vec::new();
        for (a, arr) in q.arrows().iter().enumerate() {
            for &b in alg.between(arr.target, arr.source) {
                term1.push((a, b));
            }
        }
        let mut term2 = Vec::new();
        for (r, rule) in rules.iter().enumerate() {
            for &b in alg.between(rule.lead.target(), rule.lead.source()) {
                term2.push((r, b));
            }
        }
        let pos1 = |a: usize, b: usize| term1.iter().position(|&x| x == (a, b));
        let pos2 = |r: usize, b: usize| term2.iter().position(|&x| x == (r, b));

        // d0(e_v ‖ p) = Σ_{s(a)=v} (a ‖ a p) - Σ_{t(a)=v} (a ‖ p a)
        let mut trip = Vec::new();
        for (col, &(v, p)) in term0.iter().enumerate() {
            for (a, arr) in q.arrows().iter().enumerate() {
                let ai = alg.basis_index(&q.arrow_path(a));
                let Some(ai) = ai else { continue };
                if arr.source == v {
                    for (b, c) in alg.mul_basis(ai, p) {
                        trip.push((pos1(a, *b).unwrap(), col, c.clone()));
                    }
                }
                if arr.target == v {
                    for (b, c) in alg.mul_basis(p, ai) {
                        trip.push((pos1(a, *b).unwrap(), col, -c.clone()));
                    }
                }
            }
        }
        let d0 = SparseMatrix::from_triplets(field, term1.len(), term0.len(), trip);

        // d1(a ‖ p) evaluates the derivation a -> p on every relation
        let mut trip = Vec::new();
        for (col, &(a, p)) in term1.iter().enumerate() {
            let image = alg.basis()[p].clone();
            for (r, rule) in rules.iter().enumerate() {
                let mut rel = AlgebraElement::from_path(field, rule.lead.clone());
                rel.add_scaled(&rule.rest, &-field.one());
                let der = derivation(&rel, a, &image, alg);
                for (b, c) in alg.element_coords(&der) {
                    trip.push((pos2(r, b).unwrap(), col, c));
                }
            }
        }
        let d1 = SparseMatrix::from_triplets(field, term2.len(), term1.len(), trip);
        Some(SmallComplex {
            term0,
            term1,
            term2,
            d0,
            d1,
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.term0.len(), self.term1.len(), self.term2.len()]
    }

    pub fn hh_dims(&self) -> [usize; 3] {
        let r0 = rank(&self.d0);
        let r1 = rank(&self.d1);
        let [t0, t1, t2] = self.dims();
        [t0 - r0, t1 - r1 - r0, t2 - r1]
    }

    pub fn euler(&self) -> i64 {
        let [t0, t1, t2] = self.dims();
        t0 as i64 - t1 as i64 + t2 as i64
    }
}

/// Extends `a -> image` (other arrows to 0) as a derivation of the free
/// path algebra and applies it to `e`.
fn derivation(e: &AlgebraElement, a: usize, image: &Path, alg: &QuotientAlgebra) -> AlgebraElement {
    let q = alg.quiver();
    let mut out = AlgebraElement::zero(alg.field());
    for (path, c) in e.terms() {
        for (pos, &x) in path.arrows().iter().enumerate() {
            if x != a {
                continue;
            }
            let head = path.head(pos, q);
            let tail = path.tail(pos + 1, q);
            let w = tail
                .compose(&image.compose(&head).expect("image is parallel to the arrow"))
                .expect("image is parallel to the arrow");
            out.add_term(w, c.clone());
        }
    }
    out
}
