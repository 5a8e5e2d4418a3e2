//! Seeded random monomial algebras on acyclic quivers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FieldDescriptor;
use crate::presentation::{BoundQuiverPresentation, Relation};
use crate::quiver::{AlgebraElement, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialLimits {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_relations: usize,
    pub max_relation_len: usize,
}

impl Default for MonomialLimits {
    fn default() -> Self {
        MonomialLimits {
            max_vertices: 5,
            max_arrows: 7,
            max_relations: 4,
            max_relation_len: 3,
        }
    }
}

/// Arrows only go from lower to higher vertex index; relations are
/// distinct paths of length at least 2.
pub fn random_monomial_presentation(seed: u64, limits: MonomialLimits, field: FieldDescriptor) -> BoundQuiverPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=limits.max_vertices.clamp(2, 6));
    let mut q = Quiver::new();
    for v in 0..n {
        q.add_vertex(format!("v{v}")).unwrap();
    }
    let arrows = rng.gen_range(1..=limits.max_arrows.max(1));
    for k in 0..arrows {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        q.add_arrow(format!("a{k}"), s, t).unwrap();
    }
    let mut candidates: Vec<_> = q
        .enumerate_paths(limits.max_relation_len.max(2))
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect();
    candidates.shuffle(&mut rng);
    let count = rng.gen_range(0..=limits.max_relations).min(candidates.len());
    let mut chosen: Vec<_> = candidates.into_iter().take(count).collect();
    chosen.sort();
    let relations = chosen
        .into_iter()
        .map(|p| Relation::new(AlgebraElement::from_path(field, p)))
        .collect();
    BoundQuiverPresentation::new(q, field, relations).unwrap()
}

/// `1 -> 2 -> 3` with `b a = 0`.
pub fn a3_radical_square_zero(field: FieldDescriptor) -> BoundQuiverPresentation {
    let mut q = Quiver::new();
    for v in ["v1", "v2", "v3"] {
        q.add_vertex(v).unwrap();
    }
    q.add_arrow_by_name("a", "v1", "v2").unwrap();
    q.add_arrow_by_name("b", "v2", "v3").unwrap();
    let p = q.path_from_names(&["b", "a"]).unwrap();
    BoundQuiverPresentation::new(q, field, vec![Relation::new(AlgebraElement::from_path(field, p))]).unwrap()
}
