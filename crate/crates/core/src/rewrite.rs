//! Reduction systems on path algebras, the diamond lemma, completion and
//! the finite-dimensional quotient algebra.
//!
//! Rules are `leading path -> rest`. Leading terms either come from the
//! presentation's [`OrderPolicy`] or are designated per relation; in the
//! latter case termination is not implied by the order and is checked on
//! the (finite) rewrite graph instead.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};
use crate::presentation::{BoundQuiverPresentation, OrderPolicy};
use crate::quiver::{AlgebraElement, Path, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("reduction system does not terminate (rewrite cycle through {0})")]
    NonTerminating(String),
    #[error("completion needs a rule of length {needed}, beyond the bound {bound}")]
    LengthBoundExceeded { bound: usize, needed: usize },
    #[error("quotient algebra is infinite-dimensional (irreducible paths of length {0} exist)")]
    InfiniteDimensional(usize),
    #[error("reduction system is not confluent: {0} unresolved ambiguities")]
    NotConfluent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lead: Path,
    pub rest: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct ReductionSystem {
    quiver: Quiver,
    field: FieldDescriptor,
    order: OrderPolicy,
    rules: Vec<Rule>,
    by_lead: HashMap<Vec<usize>, usize>,
    lead_lengths: Vec<usize>,
    warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    /// The word on which both rules apply.
    pub word: Path,
    /// `(rule, traversal position)` for both reductions.
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// Difference of the two normal forms.
    pub s_element: AlgebraElement,
}

impl Ambiguity {
    pub fn resolved(&self) -> bool {
        self.s_element.is_zero()
    }
}

#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub ambiguities: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn unresolved(&self) -> usize {
        self.ambiguities.iter().filter(|a| !a.resolved()).count()
    }
}

impl ReductionSystem {
    /// Builds the rules of a presentation. A relation whose leading path is
    /// already a leading path is reduced first; relations reducing to zero
    /// are dropped with a warning.
    pub fn from_presentation(pres: &BoundQuiverPresentation) -> Result<Self, RewriteError> {
        let mut sys = ReductionSystem {
            quiver: pres.quiver.clone(),
            field: pres.field,
            order: pres.order.clone(),
            rules: Vec::new(),
            by_lead: HashMap::new(),
            lead_lengths: Vec::new(),
            warnings: Vec::new(),
        };
        for (i, rel) in pres.relations.iter().enumerate() {
            let lead = rel
                .lead
                .clone()
                .or_else(|| pres.order.leading_path(&rel.element).cloned());
            let Some(lead) = lead else { continue };
            if sys.by_lead.contains_key(lead.arrows()) {
                let reduced = sys.normal_form(&rel.element);
                if reduced.is_zero() {
                    let msg = format!(
                        "relation {} ({}) reduces to zero and was dropped",
                        i + 1,
                        sys.quiver.element_to_string(&rel.element)
                    );
                    log::warn!("{msg}");
                    sys.warnings.push(msg);
                } else {
                    let l = sys.order.leading_path(&reduced).unwrap().clone();
                    sys.push_rule_from(&reduced, l);
                }
            } else {
                sys.push_rule_from(&rel.element, lead);
            }
        }
        sys.check_termination()?;
        Ok(sys)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Adds `lead -> lead - e/c` where `c` is the coefficient of `lead` in `e`.
    fn push_rule_from(&mut self, e: &AlgebraElement, lead: Path) {
        let c = e.coefficient(&lead);
        let inv = c.inverse().expect("leading coefficient is nonzero");
        let mut rest = AlgebraElement::zero(self.field);
        for (p, d) in e.terms() {
            if *p != lead {
                rest.add_term(p.clone(), -(d * &inv));
            }
        }
        self.by_lead.insert(lead.arrows().to_vec(), self.rules.len());
        if !self.lead_lengths.contains(&lead.len()) {
            self.lead_lengths.push(lead.len());
            self.lead_lengths.sort_unstable();
        }
        self.rules.push(Rule { lead, rest });
    }

    /// All `(position, rule)` sites where a leading path occurs in `p`.
    pub fn sites(&self, p: &Path) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let arrows = p.arrows();
        for &l in &self.lead_lengths {
            if l > arrows.len() {
                break;
            }
            for pos in 0..=arrows.len() - l {
                if let Some(&r) = self.by_lead.get(&arrows[pos..pos + l]) {
                    out.push((pos, r));
                }
            }
        }
        out
    }

    fn first_site(&self, p: &Path) -> Option<(usize, usize)> {
        let arrows = p.arrows();
        for pos in 0..arrows.len() {
            for &l in &self.lead_lengths {
                if pos + l > arrows.len() {
                    break;
                }
                if let Some(&r) = self.by_lead.get(&arrows[pos..pos + l]) {
                    return Some((pos, r));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, p: &Path) -> bool {
        self.first_site(p).is_none()
    }

    /// One rewrite of path `p` at traversal position `pos` with `rule`.
    pub fn rewrite_at(&self, p: &Path, pos: usize, rule: usize) -> AlgebraElement {
        let r = &self.rules[rule];
        let head = p.head(pos, &self.quiver);
        let tail = p.tail(pos + r.lead.len(), &self.quiver);
        let mut out = AlgebraElement::zero(self.field);
        for (q, c) in r.rest.terms() {
            let w = tail
                .compose(&q.compose(&head).expect("rest is parallel to its lead"))
                .expect("rest is parallel to its lead");
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn normal_form(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut done = AlgebraElement::zero(self.field);
        let mut work: BTreeMap<Path, Scalar> = e.terms().map(|(p, c)| (p.clone(), c.clone())).collect();
        while let Some((p, c)) = work.pop_last() {
            match self.first_site(&p) {
                None => done.add_term(p, c),
                Some((pos, r)) => {
                    for (q, d) in self.rewrite_at(&p, pos, r).terms() {
                        accumulate(&mut work, q.clone(), d * &c);
                    }
                }
            }
        }
        done
    }

    /// Normal form computed with random choices of term and site; equal to
    /// [`normal_form`](Self::normal_form) whenever the system is confluent.
    pub fn normal_form_random<R: Rng>(&self, e: &AlgebraElement, rng: &mut R) -> AlgebraElement {
        let mut work: Vec<(Path, Scalar)> = e.terms().map(|(p, c)| (p.clone(), c.clone())).collect();
        let mut done = AlgebraElement::zero(self.field);
        while !work.is_empty() {
            let i = rng.gen_range(0..work.len());
            let (p, c) = work.swap_remove(i);
            let sites = self.sites(&p);
            if sites.is_empty() {
                done.add_term(p, c);
            } else {
                let (pos, r) = sites[rng.gen_range(0..sites.len())];
                for (q, d) in self.rewrite_at(&p, pos, r).terms() {
                    work.push((q.clone(), d * &c));
                }
            }
        }
        done
    }

    fn respects_order(&self) -> bool {
        self.rules.iter().all(|r| {
            r.rest
                .paths()
                .all(|p| self.order.cmp_paths(p, &r.lead) == std::cmp::Ordering::Less)
        })
    }

    /// Rules that respect the order terminate. Otherwise the one-step
    /// rewrite graph on paths must be acyclic; this needs a finite path set.
    fn check_termination(&self) -> Result<(), RewriteError> {
        if self.respects_order() {
            return Ok(());
        }
        let Some(maxlen) = self.quiver.longest_path_length() else {
            return Err(RewriteError::NonTerminating(
                "designated leading terms on a quiver with oriented cycles".into(),
            ));
        };
        let paths: Vec<Path> = self
            .quiver
            .enumerate_paths(maxlen)
            .into_iter()
            .filter(|p| p.len() >= 2)
            .collect();
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut succ = vec![Vec::new(); paths.len()];
        for (i, p) in paths.iter().enumerate() {
            for (pos, r) in self.sites(p) {
                for q in self.rewrite_at(p, pos, r).paths() {
                    if let Some(&j) = index.get(q) {
                        succ[i].push(j);
                    }
                }
            }
        }
        // iterative three-colour DFS
        let mut colour = vec![0u8; paths.len()];
        for s in 0..paths.len() {
            if colour[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            colour[s] = 1;
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                if *k < succ[v].len() {
                    let w = succ[v][*k];
                    *k += 1;
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => {
                            return Err(RewriteError::NonTerminating(
                                self.quiver.path_name(&paths[w]),
                            ))
                        }
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(())
    }

    /// Enumerates overlap and inclusion ambiguities between leading paths.
    pub fn ambiguities(&self) -> Vec<(AmbiguityKind, Path, (usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            let a = ri.lead.arrows();
            for (j, rj) in self.rules.iter().enumerate() {
                let b = rj.lead.arrows();
                // overlap: a at 0, b at k with 0 < k < |a| < k + |b|
                for k in 1..a.len() {
                    let shared = a.len() - k;
                    if shared < b.len() && a[k..] == b[..shared] {
                        let mut w = a.to_vec();
                        w.extend_from_slice(&b[shared..]);
                        let word = self.quiver.path_from_traversal(w).expect("overlap is a path");
                        out.push((AmbiguityKind::Overlap, word, (i, 0), (j, k)));
                    }
                }
                if i != j && b.len() <= a.len() {
                    for pos in ri.lead.occurrences(&rj.lead) {
                        out.push((AmbiguityKind::Inclusion, ri.lead.clone(), (i, 0), (j, pos)));
                    }
                }
            }
        }
        out
    }

    pub fn check_confluence(&self) -> ConfluenceReport {
        self.check_confluence_traced(None)
    }

    /// Like [`check_confluence`](Self::check_confluence), writing one block
    /// per ambiguity to `trace`.
    pub fn check_confluence_traced(&self, mut trace: Option<&mut String>) -> ConfluenceReport {
        let mut ambiguities = Vec::new();
        for (kind, word, first, second) in self.ambiguities() {
            let left = self.normal_form(&self.rewrite_at(&word, first.1, first.0));
            let right = self.normal_form(&self.rewrite_at(&word, second.1, second.0));
            let s_element = left.sub(&right);
            if let Some(t) = trace.as_deref_mut() {
                let _ = writeln!(
                    t,
                    "{:?} on {}: rules {} @{} / {} @{}\n  nf1 = {}\n  nf2 = {}\n  S = {}",
                    kind,
                    self.quiver.path_name(&word),
                    first.0,
                    first.1,
                    second.0,
                    second.1,
                    self.quiver.element_to_string(&left),
                    self.quiver.element_to_string(&right),
                    self.quiver.element_to_string(&s_element)
                );
            }
            ambiguities.push(Ambiguity {
                kind,
                word,
                first,
                second,
                s_element,
            });
        }
        ConfluenceReport {
            confluent: ambiguities.iter().all(|a| a.resolved()),
            ambiguities,
        }
    }

    /// Completion: adds the nonzero S-elements as new rules until every
    /// ambiguity resolves.
    pub fn complete(&self, length_bound: usize) -> Result<ReductionSystem, RewriteError> {
        let mut sys = self.clone();
        loop {
            let report = sys.check_confluence();
            if report.confluent {
                return Ok(sys);
            }
            let mut added = false;
            for amb in report.ambiguities.iter().filter(|a| !a.resolved()) {
                let s = sys.normal_form(&amb.s_element);
                if s.is_zero() {
                    continue;
                }
                let lead = sys.order.leading_path(&s).unwrap().clone();
                if lead.len() > length_bound {
                    return Err(RewriteError::LengthBoundExceeded {
                        bound: length_bound,
                        needed: lead.len(),
                    });
                }
                log::debug!(
                    "completion adds {} -> ... from {}",
                    sys.quiver.path_name(&lead),
                    sys.quiver.path_name(&amb.word)
                );
                sys.push_rule_from(&s, lead);
                added = true;
            }
            if !added {
                return Ok(sys);
            }
            sys.check_termination()?;
        }
    }

    /// Default completion bound: the longest path length, or the longest
    /// leading path plus eight for quivers with cycles.
    pub fn default_length_bound(&self) -> usize {
        self.quiver.longest_path_length().unwrap_or_else(|| {
            self.rules.iter().map(|r| r.lead.len()).max().unwrap_or(0) + 8
        })
    }
}

fn accumulate(work: &mut BTreeMap<Path, Scalar>, p: Path, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match work.entry(p) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Sparse vector over the basis of a [`QuotientAlgebra`], sorted by index.
pub type AVec = Vec<(usize, Scalar)>;

pub(crate) fn avec_accumulate(acc: &mut BTreeMap<usize, Scalar>, i: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(i) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Finite-dimensional algebra `kQ/(R)` on the basis of irreducible paths.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    presentation: BoundQuiverPresentation,
    system: ReductionSystem,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `products[(i, j)]` = `b_i * b_j` for composable pairs with nonzero product.
    products: HashMap<(usize, usize), AVec>,
    /// Basis indices of paths from `s` to `t`, keyed `(t, s)`.
    between: HashMap<(usize, usize), Vec<usize>>,
    idempotents: Vec<usize>,
}

impl QuotientAlgebra {
    pub fn new(pres: &BoundQuiverPresentation) -> Result<Self, RewriteError> {
        let sys = ReductionSystem::from_presentation(pres)?;
        let bound = sys.default_length_bound();
        let sys = sys.complete(bound)?;
        let report = sys.check_confluence();
        if !report.confluent {
            return Err(RewriteError::NotConfluent(report.unresolved()));
        }
        let basis = irreducible_paths(&sys)?;
        Ok(Self::from_parts(pres.clone(), sys, basis))
    }

    fn from_parts(presentation: BoundQuiverPresentation, system: ReductionSystem, basis: Vec<Path>) -> Self {
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            between.entry((p.target(), p.source())).or_default().push(i);
        }
        let idempotents = (0..presentation.quiver.num_vertices())
            .map(|v| index[&Path::trivial(v)])
            .collect();
        let mut alg = QuotientAlgebra {
            presentation,
            system,
            basis,
            index,
            products: HashMap::new(),
            between,
            idempotents,
        };
        let mut products = HashMap::new();
        for (i, p) in alg.basis.iter().enumerate() {
            for (j, q) in alg.basis.iter().enumerate() {
                if let Some(pq) = p.compose(q) {
                    let v = alg.path_coords(&pq);
                    if !v.is_empty() {
                        products.insert((i, j), v);
                    }
                }
            }
        }
        alg.products = products;
        alg
    }

    pub fn presentation(&self) -> &BoundQuiverPresentation {
        &self.presentation
    }

    pub fn system(&self) -> &ReductionSystem {
        &self.system
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn field(&self) -> FieldDescriptor {
        self.presentation.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Dimensions of the length-graded pieces.
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.basis.iter().map(|p| p.len()).max().unwrap_or(0);
        let mut d = vec![0; top + 1];
        for p in &self.basis {
            d[p.len()] += 1;
        }
        d
    }

    /// Basis elements from `s` to `t`.
    pub fn between(&self, t: usize, s: usize) -> &[usize] {
        self.between.get(&(t, s)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn is_radical(&self, i: usize) -> bool {
        !self.basis[i].is_trivial()
    }

    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.is_radical(i)).collect()
    }

    pub fn source(&self, i: usize) -> usize {
        self.basis[i].source()
    }

    pub fn target(&self, i: usize) -> usize {
        self.basis[i].target()
    }

    /// `b_i * b_j` (first `b_j`).
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.products.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn mul(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> AVec {
        let mut acc = BTreeMap::new();
        for (i, c) in a {
            for (j, d) in b {
                let cd = c * d;
                for (k, e) in self.mul_basis(*i, *j) {
                    avec_accumulate(&mut acc, *k, &cd * e);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Coordinates of (the class of) a path.
    pub fn path_coords(&self, p: &Path) -> AVec {
        self.element_coords(&AlgebraElement::from_path(self.field(), p.clone()))
    }

    pub fn element_coords(&self, e: &AlgebraElement) -> AVec {
        let nf = self.system.normal_form(e);
        let mut v: AVec = nf
            .terms()
            .map(|(p, c)| (self.index[p], c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn unit(&self) -> AVec {
        self.idempotents
            .iter()
            .map(|&i| (i, self.field().one()))
            .collect()
    }

    pub fn structure_constant_count(&self) -> usize {
        self.products.len()
    }
}

/// Irreducible paths, graded by length. Quivers with cycles are explored
/// until a length bound past which an infinite family must exist.
fn irreducible_paths(sys: &ReductionSystem) -> Result<Vec<Path>, RewriteError> {
    let q = sys.quiver();
    let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = (0..q.num_arrows())
        .map(|a| q.arrow_path(a))
        .filter(|p| sys.is_irreducible(p))
        .collect();
    let max_lead = sys.rules().iter().map(|r| r.lead.len()).max().unwrap_or(1);
    let mut len = 1;
    let mut seen_words: HashSet<Vec<usize>> = HashSet::new();
    while !frontier.is_empty() {
        frontier.sort();
        out.extend(frontier.iter().cloned());
        // Past this length an irreducible path has a repeated window of
        // length max_lead - 1, so irreducible paths of every length exist.
        if q.longest_path_length().is_none() {
            for p in &frontier {
                if p.len() >= max_lead {
                    seen_words.insert(p.arrows()[p.len() + 1 - max_lead..].to_vec());
                }
            }
            let window_bound = seen_words.len() + max_lead + q.num_arrows() + 1;
            if len > window_bound.max(64) {
                return Err(RewriteError::InfiniteDimensional(len));
            }
        }
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.source != p.target() {
                    continue;
                }
                let mut arrows = p.arrows().to_vec();
                arrows.push(ai);
                let np = q.path_from_traversal(arrows).unwrap();
                // only suffixes ending at the new arrow can be new sites
                let ok = sys.sites(&np).iter().all(|&(pos, r)| {
                    pos + sys.rules()[r].lead.len() != np.len()
                });
                if ok {
                    next.push(np);
                }
            }
        }
        frontier = next;
        len += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;

    /// a: 1->2, b,d: 2->3, c,e: 3->4 with b*a -> d*a and c*b -> e*d; the
    /// overlap c*b*a reduces to e*d*a and c*d*a.
    const CRAFTED: &str = "field rational
quiver { vertices: v1 v2 v3 v4 ; arrows: c: v3 -> v4 ; e: v3 -> v4 ; b: v2 -> v3 ; d: v2 -> v3 ; a: v1 -> v2 }
relations { b*a - d*a ; c*b - e*d ; }";

    #[test]
    fn crafted_overlap_is_not_confluent() {
        let pres = parse_presentation(CRAFTED).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        let report = sys.check_confluence();
        assert!(!report.confluent);
        assert_eq!(report.ambiguities.len(), 1);
        assert_eq!(report.unresolved(), 1);
        let amb = &report.ambiguities[0];
        assert_eq!(sys.quiver().path_name(&amb.word), "c*b*a");
        // by hand: (c*b)*a -> e*d*a and c*(b*a) -> c*d*a
        let q = sys.quiver();
        let mut expect = AlgebraElement::from_path(pres.field, q.path_from_names(&["e", "d", "a"]).unwrap());
        expect.add_term(q.path_from_names(&["c", "d", "a"]).unwrap(), pres.field.from_i64(-1));
        assert!(amb.s_element == expect || amb.s_element == expect.scaled(&pres.field.from_i64(-1)));
    }

    #[test]
    fn completion_adds_one_rule() {
        let pres = parse_presentation(CRAFTED).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        let done = sys.complete(3).unwrap();
        assert_eq!(done.rules().len(), 3);
        assert!(done.check_confluence().confluent);
        // c precedes e, so c*d*a leads
        assert_eq!(done.quiver().path_name(&done.rules()[2].lead), "c*d*a");
        // the ideal is unchanged: original relations still reduce to zero
        for rel in &pres.relations {
            assert!(done.normal_form(&rel.element).is_zero());
        }
    }

    #[test]
    fn completion_respects_bound() {
        let pres = parse_presentation(CRAFTED).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        assert_eq!(
            sys.complete(2).unwrap_err(),
            RewriteError::LengthBoundExceeded { bound: 2, needed: 3 }
        );
    }

    #[test]
    fn irreducible_is_fixed_point() {
        let pres = parse_presentation(CRAFTED).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        let p = sys.quiver().path_from_names(&["e", "d", "a"]).unwrap();
        let e = AlgebraElement::from_path(pres.field, p);
        assert_eq!(sys.normal_form(&e), e);
    }

    #[test]
    fn degenerate_relation_is_dropped() {
        let text = "quiver { vertices: u v w ; arrows: a: u -> v ; b: v -> w ; c: u -> v }
relations { b*a - b*c ; 2*b*a - 2*b*c ; }";
        let pres = parse_presentation(text).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        assert_eq!(sys.rules().len(), 1);
        assert_eq!(sys.warnings().len(), 1);
    }

    #[test]
    fn rewrite_cycle_is_detected() {
        let text = "quiver { vertices: u v w ; arrows: a: u -> v ; b: v -> w ; c: u -> v ; d: u -> v }
relations { b*a = b*c ; b*c = b*a + b*d ; }";
        let pres = parse_presentation(text).unwrap();
        assert!(matches!(
            ReductionSystem::from_presentation(&pres),
            Err(RewriteError::NonTerminating(_))
        ));
    }

    #[test]
    fn infinite_dimensional_is_reported() {
        let text = "quiver { vertices: v ; arrows: x: v -> v ; y: v -> v }
relations { y*x - x*y ; }";
        let pres = parse_presentation(text).unwrap();
        assert!(matches!(
            QuotientAlgebra::new(&pres),
            Err(RewriteError::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn finite_quotient_of_cyclic_quiver() {
        // loop with x^3 = 0: basis e, x, x^2
        let text = "quiver { vertices: v ; arrows: x: v -> v }
relations { x*x*x ; }";
        let pres = parse_presentation(text).unwrap();
        let alg = QuotientAlgebra::new(&pres).unwrap();
        assert_eq!(alg.dim(), 3);
    }
}
