//! Invariant suites over the built-in families and random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::EngineError;
use crate::families::monomial::{a3_radical_square_zero, random_monomial_presentation, MonomialLimits};
use crate::families::sl2::{
    is_feasible, jj_dim, kernel_model_dims, mat2_identity, orbit_conjugate, psi_examples,
    random_psi, random_unimodular, sl2_killing, stab_dim, mat2_mul, SL2Element,
};
use crate::families::{
    incidence_presentation, torus_cubical_complex, torus_simplicial_complex, Family, PsiTensor,
};
use crate::field::FieldDescriptor;
use crate::hochschild::{hh_report, BarComplex, HochschildComputation, DEFAULT_NMAX};
use crate::linalg::{axpy, SparseVec};
use crate::presentation::BoundQuiverPresentation;
use crate::report::psi_row;
use crate::rewrite::QuotientAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Fast,
    Full,
}

impl std::str::FromStr for Scope {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Scope::Fast),
            "full" => Ok(Scope::Full),
            _ => Err(EngineError::Parse(format!("unknown scope `{s}` (expected fast or full)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub scope: Scope,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CheckOutcome>,
    pub checks: Vec<CheckOutcome>,
}

impl CheckSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            out += &format!("{tag} {:<28} {}\n", c.name, c.detail);
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub scope: Scope,
    pub seed: u64,
    /// Corrupt one entry of a bar differential before the `d∘d` suite.
    pub tamper: bool,
}

impl CheckOptions {
    pub fn new(scope: Scope) -> Self {
        CheckOptions {
            scope,
            seed: crate::report::DEFAULT_SEED,
            tamper: false,
        }
    }
}

fn outcome(name: &str, r: Result<String, String>) -> CheckOutcome {
    match r {
        Ok(detail) => CheckOutcome { name: name.into(), passed: true, detail },
        Err(detail) => CheckOutcome { name: name.into(), passed: false, detail },
    }
}

fn f7() -> FieldDescriptor {
    FieldDescriptor::PrimeField(7)
}

fn q() -> FieldDescriptor {
    FieldDescriptor::Rationals
}

fn algebra(p: &BoundQuiverPresentation) -> Result<QuotientAlgebra, String> {
    QuotientAlgebra::new(p).map_err(|e| e.to_string())
}

fn family_alg(fam: Family, field: FieldDescriptor, qv: Option<i64>, psi: Option<&str>) -> Result<QuotientAlgebra, String> {
    let qs = qv.map(|x| field.from_i64(x));
    let psi = psi
        .map(|t| PsiTensor::parse(t, field))
        .transpose()
        .map_err(|e| e.to_string())?;
    let pres = fam
        .presentation(field, qs.as_ref(), psi.as_ref())
        .map_err(|e| e.to_string())?;
    algebra(&pres)
}

/// Named algebras exercised by the structural suites.
fn sample_algebras(scope: Scope) -> Result<Vec<(String, QuotientAlgebra)>, String> {
    let mut out = vec![
        ("kronecker".to_string(), family_alg(Family::Kronecker, q(), None, None)?),
        ("p1p1 psi=0".into(), family_alg(Family::P1P1, q(), None, None)?),
        ("p1p1 psi=ee:1".into(), family_alg(Family::P1P1, q(), None, Some("ee:1"))?),
        ("pi".into(), family_alg(Family::Pi, q(), None, None)?),
        ("torus-c q=2 fp:7".into(), family_alg(Family::TorusC, f7(), Some(2), None)?),
        ("a3 radical square zero".into(), algebra(&a3_radical_square_zero(q()))?),
    ];
    if scope == Scope::Full {
        out.push(("torus-s q=1".into(), family_alg(Family::TorusS, q(), Some(1), None)?));
        out.push(("torus-s q=3 fp:7".into(), family_alg(Family::TorusS, f7(), Some(3), None)?));
    }
    Ok(out)
}

fn random_monomials(n: usize, seed: u64) -> Result<Vec<(String, QuotientAlgebra)>, String> {
    (0..n as u64)
        .map(|k| {
            let s = seed.wrapping_add(k);
            let p = random_monomial_presentation(s, MonomialLimits::default(), q());
            Ok((format!("monomial seed {s}"), algebra(&p)?))
        })
        .collect()
}

fn random_cochain<R: Rng>(rng: &mut R, field: FieldDescriptor, dim: usize) -> SparseVec {
    (0..dim)
        .filter_map(|i| {
            let c = rng.gen_range(-3i64..=3);
            (c != 0).then(|| (i, field.from_i64(c)))
        })
        .collect()
}

/// Names every complex with `d∘d ≠ 0`.
pub fn d_squared(bars: &[(String, BarComplex)]) -> Result<String, String> {
    let bad: Vec<&str> = bars
        .iter()
        .filter(|(_, b)| !b.is_complex())
        .map(|(n, _)| n.as_str())
        .collect();
    if bad.is_empty() {
        Ok(format!("{} complexes", bars.len()))
    } else {
        Err(format!("d∘d ≠ 0 for {}", bad.join(", ")))
    }
}

/// Corrupts `d^0` at an entry that `d^1` sees.
fn tamper(bar: &mut BarComplex) -> bool {
    if bar.nmax() < 1 {
        return false;
    }
    let d1t = bar.d(1).transpose();
    let Some(r) = (0..d1t.rows()).find(|&r| !d1t.row(r).is_empty()) else {
        return false;
    };
    let one = bar.algebra().field().one();
    bar.perturb(0, r, 0, one);
    true
}

/// `d(f∪g) = df∪g + (-1)^p f∪dg` on random cochains in all degree pairs
/// that stay inside the computed range.
pub fn leibniz(bars: &[(String, BarComplex)], seed: u64, trials: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for (name, bar) in bars {
        let field = bar.algebra().field();
        let dims = bar.dims();
        for p in 0..=bar.nmax() {
            for qd in 0..=bar.nmax() - p {
                if p + qd + 1 >= dims.len() {
                    continue;
                }
                for _ in 0..trials {
                    let f = random_cochain(&mut rng, field, dims[p]);
                    let g = random_cochain(&mut rng, field, dims[qd]);
                    let lhs = bar.apply_d(p + qd, &bar.cup(p, &f, qd, &g));
                    let mut rhs = bar.cup(p + 1, &bar.apply_d(p, &f), qd, &g);
                    let sign = if p % 2 == 0 { field.one() } else { -field.one() };
                    rhs = axpy(&rhs, &sign, &bar.cup(p, &f, qd + 1, &bar.apply_d(qd, &g)));
                    if lhs != rhs {
                        return Err(format!("{name}: fails for degrees ({p}, {qd})"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} random pairs"))
}

fn oracles(scope: Scope) -> Result<String, String> {
    let mut cases: Vec<(&str, Result<QuotientAlgebra, String>, Vec<usize>)> = vec![
        ("kronecker", family_alg(Family::Kronecker, q(), None, None), vec![1, 3, 0]),
        ("p1p1 psi=0", family_alg(Family::P1P1, q(), None, None), vec![1, 6, 9]),
        ("pi", family_alg(Family::Pi, q(), None, None), vec![1, 6, 9, 0]),
        ("a3 radical square zero", algebra(&a3_radical_square_zero(q())), vec![1, 0, 0]),
        ("torus-c q=1", family_alg(Family::TorusC, q(), Some(1), None), vec![1, 2, 1]),
    ];
    if scope == Scope::Full {
        cases.push(("torus-s q=1", family_alg(Family::TorusS, q(), Some(1), None), vec![1, 2, 1]));
    }
    for (name, alg, want) in &cases {
        let alg = alg.clone()?;
        let (_, rep) = hh_report(&alg, DEFAULT_NMAX).map_err(|e| format!("{name}: {e}"))?;
        if rep.hh[..want.len()] != want[..] {
            return Err(format!("{name}: got {:?}, expected {:?}", rep.hh, want));
        }
    }
    Ok(format!("{} algebras; small and bar complexes agree where both exist", cases.len()))
}

fn euler(comps: &[(String, HochschildComputation)]) -> Result<String, String> {
    let mut n = 0;
    for (name, c) in comps {
        if let Some(e) = c.euler() {
            if e != c.hh_euler() {
                return Err(format!("{name}: complex {e}, cohomology {}", c.hh_euler()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} complexes"))
}

fn products(comps: &[(String, HochschildComputation)]) -> Result<String, String> {
    let mut n = 0;
    for (name, c) in comps {
        let unit = c.unit().map_err(|e| format!("{name}: unit: {e}"))?;
        for p in 0..=c.nmax() {
            let classes = c.classes(p).map_err(|e| e.to_string())?;
            for x in &classes {
                let u = c.cup(&unit, x).map_err(|e| format!("{name}: {e}"))?;
                if u.coords != x.coords {
                    return Err(format!("{name}: unit law fails in degree {p}"));
                }
            }
            for qd in 0..=c.nmax() - p {
                let others = c.classes(qd).map_err(|e| e.to_string())?;
                for x in &classes {
                    for y in &others {
                        let xy = c.cup(x, y).map_err(|e| format!("{name}: {e}"))?;
                        let yx = c.cup(y, x).map_err(|e| format!("{name}: {e}"))?;
                        let s = if (p * qd) % 2 == 0 { 1 } else { -1 };
                        let field = c.algebra().field();
                        let want = crate::linalg::scale(&yx.coords, &field.from_i64(s));
                        if xy.coords != want {
                            return Err(format!("{name}: graded commutativity fails in ({p}, {qd})"));
                        }
                        if p + qd >= 1 && p + qd <= c.nmax() + 1 {
                            let b1 = c.bracket(x, y).map_err(|e| format!("{name}: {e}"))?;
                            let b2 = c.bracket(y, x).map_err(|e| format!("{name}: {e}"))?;
                            let t = if ((p as i64 - 1) * (qd as i64 - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
                            let want = crate::linalg::scale(&b2.coords, &field.from_i64(-t));
                            if b1.coords != want {
                                return Err(format!("{name}: bracket antisymmetry fails in ({p}, {qd})"));
                            }
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} class pairs"))
}

fn three_way(psis: &[PsiTensor]) -> Result<String, String> {
    let rows: Vec<Result<(), String>> = psis
        .par_iter()
        .map(|psi| {
            let (hh, small, _) = psi_row(psi).map_err(|e| format!("{psi}: {e}"))?;
            let km = kernel_model_dims(psi).map_err(|e| format!("{psi}: {e}"))?;
            let h1 = hh[1];
            if small.map(|s| s[1]) != Some(h1) || km.total != h1 || km.stab + km.jj != h1 {
                return Err(format!(
                    "{psi}: HH {hh:?}, small {small:?}, kernel model {}, stab + J = {} + {}",
                    km.total, km.stab, km.jj
                ));
            }
            if hh[0] != 1 || hh[2] != h1 + 3 {
                return Err(format!("{psi}: HH {hh:?} violates h0 = 1, h2 = h1 + 3"));
            }
            Ok(())
        })
        .collect();
    rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} tensors", psis.len()))
}

fn cayley_hamilton(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = q();
    let mut r = || rng.gen_range(-5i64..=5);
    for _ in 0..samples {
        let a = SL2Element::from_i64(f, r(), r(), r());
        let b = SL2Element::from_i64(f, r(), r(), r());
        let (am, bm) = (a.matrix(), b.matrix());
        let (ab, ba) = (mat2_mul(&am, &bm), mat2_mul(&bm, &am));
        let k = sl2_killing(&a, &b);
        let id = mat2_identity(f);
        for i in 0..2 {
            for j in 0..2 {
                if &ab[i][j] + &ba[i][j] != &k * &id[i][j] {
                    return Err(format!("ab + ba ≠ k(a,b) for a = {a:?}, b = {b:?}"));
                }
            }
        }
    }
    Ok(format!("{samples} pairs"))
}

fn feasibility(samples: usize, seed: u64) -> Result<String, String> {
    let obs = crate::report::sample_stab_jj(q(), samples, seed);
    match obs.iter().find(|(_, s, j)| !is_feasible(*s, *j)) {
        Some((p, s, j)) => Err(format!("{p}: (stab, J) = ({s}, {j}) is not in the feasible set")),
        None => Ok(format!("{samples} tensors")),
    }
}

fn conjugation(psis: usize, conj: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = q();
    let jobs: Vec<(PsiTensor, Vec<PsiTensor>)> = (0..psis)
        .map(|_| {
            let p = random_psi(&mut rng, f, 3);
            let cs = (0..conj)
                .map(|_| {
                    let (g, h) = (random_unimodular(&mut rng, f), random_unimodular(&mut rng, f));
                    orbit_conjugate(&p, &g, &h).expect("unimodular by construction")
                })
                .collect();
            (p, cs)
        })
        .collect();
    let res: Vec<Result<(), String>> = jobs
        .par_iter()
        .map(|(p, cs)| {
            let base = (psi_row(p).map_err(|e| e.to_string())?.0, stab_dim(p), jj_dim(p));
            for c in cs {
                let got = (psi_row(c).map_err(|e| e.to_string())?.0, stab_dim(c), jj_dim(c));
                if got != base {
                    return Err(format!("{p} and its conjugate {c} differ: {base:?} vs {got:?}"));
                }
            }
            Ok(())
        })
        .collect();
    res.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{psis} tensors x {conj} conjugations"))
}

fn monomial_cups(n: usize, seed: u64) -> Result<String, String> {
    let algs = random_monomials(n, seed)?;
    let res: Vec<Result<(), String>> = algs
        .par_iter()
        .map(|(name, alg)| {
            let c = HochschildComputation::new(alg, DEFAULT_NMAX);
            for p in 1..=c.nmax() {
                for qd in 1..=c.nmax() - p {
                    for x in c.classes(p).map_err(|e| e.to_string())? {
                        for y in c.classes(qd).map_err(|e| e.to_string())? {
                            let z = c.cup(&x, &y).map_err(|e| e.to_string())?;
                            if !z.coords.is_empty() {
                                return Err(format!("{name}: nonzero cup in degrees ({p}, {qd})"));
                            }
                        }
                    }
                }
            }
            Ok(())
        })
        .collect();
    res.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{n} algebras"))
}

fn orientation_reversal(scope: Scope) -> Result<String, String> {
    let mut complexes = vec![("torus-c", torus_cubical_complex())];
    if scope == Scope::Full {
        complexes.push(("torus-s", torus_simplicial_complex()));
    }
    for (name, cells) in complexes {
        for qv in [1i64, 3] {
            let field = f7();
            let dims = |c: &crate::families::CellComplexData| -> Result<Vec<usize>, String> {
                let p = incidence_presentation(c, field, &field.from_i64(qv)).map_err(|e| e.to_string())?;
                let a = algebra(&p)?;
                Ok(hh_report(&a, DEFAULT_NMAX).map_err(|e| e.to_string())?.1.hh)
            };
            let (a, b) = (dims(&cells)?, dims(&cells.reversed())?);
            if a != b {
                return Err(format!("{name} q={qv}: {a:?} vs reversed {b:?}"));
            }
        }
    }
    Ok("dims unchanged".into())
}

/// With `q = 1` each `A(t, s)` has dimension at most 1 and basis elements
/// multiply to basis elements with coefficient 1.
fn interval_composition() -> Result<String, String> {
    for (name, fam) in [("torus-s", Family::TorusS), ("torus-c", Family::TorusC)] {
        let alg = family_alg(fam, q(), Some(1), None)?;
        let n = alg.quiver().num_vertices();
        for t in 0..n {
            for s in 0..n {
                if alg.between(t, s).len() > 1 {
                    return Err(format!("{name}: two parallel basis paths"));
                }
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg.mul_basis(i, j);
                let composable = alg.source(i) == alg.target(j);
                let ok = match prod {
                    [] => !composable,
                    [(_, c)] => composable && c.is_one(),
                    _ => false,
                };
                if !ok {
                    return Err(format!("{name}: product of basis elements {i}, {j} is {prod:?}"));
                }
            }
        }
    }
    Ok("both tori".into())
}

fn psi_table_rows() -> Result<String, String> {
    let psis: Vec<PsiTensor> = psi_examples()
        .iter()
        .map(|(lit, _, _)| PsiTensor::parse(lit, q()).expect("table literals parse"))
        .collect();
    three_way(&psis)?;
    for ((lit, sj, dims), psi) in psi_examples().iter().zip(&psis) {
        let (hh, _, _) = psi_row(psi).map_err(|e| e.to_string())?;
        if (stab_dim(psi), jj_dim(psi)) != *sj || hh[..3] != dims[..] {
            return Err(format!("{lit}: got {hh:?}"));
        }
    }
    Ok("9 rows".into())
}

pub fn run_checks(opts: CheckOptions) -> CheckSummary {
    let CheckOptions { scope, seed, tamper: corrupt } = opts;
    let full = scope == Scope::Full;
    let mut checks = Vec::new();
    let algs = sample_algebras(scope).and_then(|mut a| {
        a.extend(random_monomials(if full { 20 } else { 5 }, seed)?);
        Ok(a)
    });
    match algs {
        Err(e) => checks.push(outcome("construction", Err(e))),
        Ok(algs) => {
            let mut bars: Vec<(String, BarComplex)> = algs
                .par_iter()
                .map(|(n, a)| (n.clone(), BarComplex::new(a, DEFAULT_NMAX)))
                .collect();
            if corrupt {
                if let Some((_, b)) = bars.iter_mut().find(|(_, b)| b.nmax() >= 1 && !b.d(1).is_zero()) {
                    tamper(b);
                }
            }
            checks.push(outcome("d_squared_zero", d_squared(&bars)));
            checks.push(outcome("leibniz", leibniz(&bars, seed, if full { 3 } else { 1 })));
            let comps: Vec<(String, HochschildComputation)> = bars
                .into_par_iter()
                .map(|(n, b)| (n, HochschildComputation::from_bar(b)))
                .collect();
            checks.push(outcome("euler_consistency", euler(&comps)));
            let structured: Vec<_> = comps
                .into_iter()
                .filter(|(n, _)| !n.starts_with("monomial"))
                .collect();
            checks.push(outcome("cup_bracket_symmetry", products(&structured)));
        }
    }
    checks.push(outcome("oracle_agreement", oracles(scope)));
    checks.push(outcome("psi_example_table", psi_table_rows()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randoms: Vec<PsiTensor> = (0..if full { 25 } else { 5 })
        .map(|_| random_psi(&mut rng, q(), 3))
        .collect();
    checks.push(outcome("psi_three_way", three_way(&randoms)));
    checks.push(outcome("cayley_hamilton", cayley_hamilton(50, seed)));
    checks.push(outcome("feasibility", feasibility(if full { 200 } else { 50 }, seed)));
    checks.push(outcome(
        "conjugation_invariance",
        if full { conjugation(5, 10, seed) } else { conjugation(2, 3, seed) },
    ));
    checks.push(outcome("monomial_cup_vanishing", monomial_cups(if full { 20 } else { 5 }, seed)));
    checks.push(outcome("orientation_reversal", orientation_reversal(scope)));
    checks.push(outcome("interval_composition", interval_composition()));
    let failures: Vec<CheckOutcome> = checks.iter().filter(|c| !c.passed).cloned().collect();
    CheckSummary {
        scope,
        seed,
        passed: checks.len() - failures.len(),
        failed: failures.len(),
        failures,
        checks,
    }
}

/// `Ok` with the summary when every check passes, otherwise a consistency
/// error listing the failures.
pub fn checks_result(summary: &CheckSummary) -> Result<(), EngineError> {
    if summary.ok() {
        Ok(())
    } else {
        let names: Vec<&str> = summary.failures.iter().map(|c| c.name.as_str()).collect();
        Err(EngineError::Consistency(format!("failed checks: {}", names.join(", "))))
    }
}
