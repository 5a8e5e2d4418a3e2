//! Known values for the built-in algebras and hand-checked small cases.

use quiverhh::dsl::{parse_presentation, serialize_presentation};
use quiverhh::families::incidence::{incidence_quiver, unreduced_d1};
use quiverhh::families::monomial::a3_radical_square_zero;
use quiverhh::families::sl2::{jj_dim, kernel_model_dims, stab_dim};
use quiverhh::families::{
    angle_functional_check, angle_labelling, torus_cubical_complex, torus_simplicial_complex, Family, FamilyError,
    PsiTensor,
};
use quiverhh::field::{primitive_root_of_unity, FieldDescriptor};
use quiverhh::hochschild::{hh_report, HochschildComputation, SmallComplex};
use quiverhh::report::{run_report, run_table, ReportRequest, TableName, TableRequest};
use quiverhh::rewrite::{QuotientAlgebra, ReductionSystem};

const Q: FieldDescriptor = FieldDescriptor::Rationals;

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn alg(fam: Family, field: FieldDescriptor, q: Option<i64>, psi: Option<&str>) -> QuotientAlgebra {
    let q = q.map(|x| field.from_i64(x));
    let psi = psi.map(|t| PsiTensor::parse(t, field).unwrap());
    QuotientAlgebra::new(&fam.presentation(field, q.as_ref(), psi.as_ref()).unwrap()).unwrap()
}

fn hh(a: &QuotientAlgebra) -> Vec<usize> {
    hh_report(a, 3).unwrap().1.hh
}

#[test]
fn roots_of_unity() {
    assert_eq!(primitive_root_of_unity(3, fp(7)), Some(fp(7).from_i64(2)));
    assert_eq!(primitive_root_of_unity(4, fp(13)), Some(fp(13).from_i64(5)));
    assert_eq!(primitive_root_of_unity(5, fp(7)), None);
}

#[test]
fn quotient_dimensions() {
    assert_eq!(alg(Family::Kronecker, Q, None, None).dim(), 4);
    assert_eq!(alg(Family::P1P1, Q, None, None).dim(), 16);
    assert_eq!(alg(Family::Pi, Q, None, None).dim(), 24);
    assert_eq!(alg(Family::TorusS, Q, Some(1), None).dim(), 168);
}

#[test]
fn pi_rules_have_no_ambiguities() {
    let pres = Family::Pi.presentation(Q, None, None).unwrap();
    let sys = ReductionSystem::from_presentation(&pres).unwrap();
    let r = sys.check_confluence();
    assert!(r.confluent);
    assert!(r.ambiguities.is_empty());
}

#[test]
fn bar_complex_dimensions() {
    let d = |a: &QuotientAlgebra| HochschildComputation::new(a, 3).cochain_dims();
    assert_eq!(d(&alg(Family::P1P1, Q, None, None))[..4], [4, 32, 32, 0]);
    assert_eq!(d(&alg(Family::TorusS, fp(7), Some(1), None))[..4], [42, 126, 84, 0]);
    let pi = d(&alg(Family::Pi, Q, None, None));
    assert_eq!(pi[3], 48);
    assert_eq!(pi[4], 0);
}

#[test]
fn small_complex_dimensions() {
    let s = SmallComplex::new(&alg(Family::TorusS, fp(7), Some(1), None)).unwrap();
    assert_eq!(s.dims(), [42, 84, 42]);
    assert_eq!(s.euler(), 0);
    let c = SmallComplex::new(&alg(Family::TorusC, Q, Some(1), None)).unwrap();
    assert_eq!(c.dims(), [16, 32, 16]);
    assert!(SmallComplex::new(&alg(Family::Pi, Q, None, None)).is_none());
}

#[test]
fn known_cohomology() {
    assert_eq!(hh(&alg(Family::Kronecker, Q, None, None))[..3], [1, 3, 0]);
    assert_eq!(hh(&alg(Family::P1P1, Q, None, None))[..3], [1, 6, 9]);
    assert_eq!(hh(&alg(Family::TorusS, Q, Some(1), None))[..3], [1, 2, 1]);
    assert_eq!(hh(&alg(Family::TorusC, Q, Some(1), None))[..3], [1, 2, 1]);
    let a3 = QuotientAlgebra::new(&a3_radical_square_zero(Q)).unwrap();
    assert_eq!(hh(&a3)[..3], [1, 0, 0]);
}

/// The relation at each corner is `m - q n`; the scaling derivation on an
/// arrow maps it to a multiple of `m`, and the whole `d¹` is `q` times its
/// value at `q = 1`, so the cohomology does not depend on `q`.
#[test]
fn deformed_tori_match_undeformed() {
    for q in 1..7 {
        assert_eq!(hh(&alg(Family::TorusS, fp(7), Some(q), None))[..3], [1, 2, 1], "q = {q}");
        assert_eq!(hh(&alg(Family::TorusC, fp(7), Some(q), None))[..3], [1, 2, 1], "q = {q}");
    }
    let f = fp(7);
    let at = |q: i64| {
        let a = alg(Family::TorusS, f, Some(q), None);
        SmallComplex::new(&a).unwrap().d1
    };
    let (d_one, d_three) = (at(1), at(3));
    for r in 0..d_one.rows() {
        for c in 0..d_one.cols() {
            assert_eq!(d_three.get(r, c), &d_one.get(r, c) * &f.from_i64(3));
        }
    }
}

#[test]
fn hh0_is_the_unit() {
    for (fam, q) in [(Family::Kronecker, None), (Family::P1P1, None), (Family::Pi, None), (Family::TorusC, Some(1))] {
        let comp = HochschildComputation::new(&alg(fam, Q, q, None), 3);
        assert_eq!(comp.dims()[0], 1);
        let unit = comp.unit().unwrap();
        assert_eq!(unit.coords.len(), 1);
        for n in 0..=3 {
            for c in comp.classes(n).unwrap() {
                assert_eq!(comp.cup(&unit, &c).unwrap().coords, c.coords, "{fam} degree {n}");
            }
        }
    }
}

#[test]
fn hh2_of_cube_root_deformation_has_one_class() {
    let comp = HochschildComputation::new(&alg(Family::TorusS, fp(7), Some(2), None), 3);
    assert_eq!(comp.classes(2).unwrap().len(), 1);
}

#[test]
fn cup_and_bracket_ranks() {
    let p = HochschildComputation::new(&alg(Family::P1P1, Q, None, None), 2);
    assert_eq!(p.cup_rank().unwrap(), 9);
    assert_eq!(p.hh1_bracket_rank().unwrap(), 6);
    let t = HochschildComputation::new(&alg(Family::TorusS, Q, Some(1), None), 3);
    assert_eq!(t.cup_rank().unwrap(), 1);
    assert_eq!(t.hh1_bracket_rank().unwrap(), 0);
    let ef = HochschildComputation::new(&alg(Family::P1P1, Q, None, Some("ee:1,ff:1")), 2);
    assert_eq!(ef.cup_rank().unwrap(), 0);
    let k = HochschildComputation::new(&alg(Family::Kronecker, Q, None, None), 2);
    assert_eq!(k.hh1_bracket_rank().unwrap(), 3);
}

#[test]
fn psi_invariants() {
    let psi = |t: &str| PsiTensor::parse(t, Q).unwrap();
    assert_eq!(stab_dim(&psi("ee:1")), 3);
    assert_eq!(stab_dim(&psi("ee:1,hh:1,ef:2,fe:2")), 1);
    assert_eq!(jj_dim(&psi("ee:2,ff:2,hh:1")), 3);
    assert_eq!(jj_dim(&psi("ee:1,eh:1,ef:1,he:1,hh:1,hf:1,fe:1,fh:1,ff:1")), 0);
    assert_eq!(kernel_model_dims(&psi("ee:1,ff:1,hh:1")).unwrap().total, 2);
    assert_eq!(kernel_model_dims(&psi("ee:1,hh:2,ef:1,fe:1")).unwrap().total, 0);
    assert_eq!(hh(&alg(Family::P1P1, Q, None, Some("ee:2,ff:2,hh:1")))[..3], [1, 6, 9]);
    assert_eq!(hh(&alg(Family::P1P1, Q, None, Some("ee:1")))[..3], [1, 3, 6]);
}

#[test]
fn bad_psi_literals_are_rejected() {
    assert!(matches!(PsiTensor::parse("ex:1", Q), Err(FamilyError::BadPsi(_))));
    assert!(matches!(PsiTensor::parse("eee:1", Q), Err(FamilyError::BadPsi(_))));
    assert!(matches!(PsiTensor::parse("ee:x", Q), Err(FamilyError::BadPsi(_))));
}

#[test]
fn characteristic_two_is_refused_for_sl2_families() {
    let f2 = fp(2);
    assert!(matches!(
        Family::P1P1.presentation(f2, None, None),
        Err(FamilyError::UnsupportedCharacteristic(2))
    ));
    assert!(Family::TorusC.presentation(f2, None, None).is_ok());
}

#[test]
fn zero_parameter_is_refused() {
    assert!(matches!(
        Family::TorusS.presentation(Q, Some(&Q.zero()), None),
        Err(FamilyError::ZeroParameter)
    ));
}

#[test]
fn q_one_relations_are_differences() {
    let pres = Family::TorusC.presentation(Q, None, None).unwrap();
    assert_eq!(pres.relations.len(), 16);
    for r in &pres.relations {
        let coeffs: Vec<String> = r.element.terms().map(|(_, c)| c.to_string()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, ["-1", "1"]);
    }
}

#[test]
fn incidence_quiver_counts() {
    let iq = incidence_quiver(&torus_simplicial_complex()).unwrap();
    assert_eq!(iq.quiver.num_vertices(), 42);
    assert_eq!(iq.quiver.num_arrows(), 84);
    assert_eq!(iq.corners.len(), 42);
}

#[test]
fn angle_labelling_pattern() {
    for cells in [torus_simplicial_complex(), torus_simplicial_complex().reversed()] {
        let labels = angle_labelling(&cells).unwrap();
        assert_eq!(labels.len(), 42);
        // each triangle carries all three labels
        for f in 0..14 {
            let mut l: Vec<u8> = labels[3 * f..3 * f + 3].to_vec();
            l.sort();
            assert_eq!(l, [0, 1, 2]);
        }
    }
}

/// The functional annihilates the variant of `d¹` that leaves leading
/// paths unreduced; against the reduced `d¹` it does not.
#[test]
fn angle_functional_against_both_differentials() {
    let f7 = fp(7);
    for q in [2, 4] {
        let chk = angle_functional_check(&torus_simplicial_complex(), f7, &f7.from_i64(q)).unwrap();
        assert!(chk.annihilates_unreduced(), "q = {q}");
        assert!(!chk.annihilates_image(), "q = {q}");
    }
    let one = angle_functional_check(&torus_simplicial_complex(), f7, &f7.one()).unwrap();
    assert!(one.annihilates_image() && one.annihilates_unreduced());
    assert!(matches!(
        angle_functional_check(&torus_simplicial_complex(), f7, &f7.from_i64(3)),
        Err(FamilyError::NotCubeRoot(_))
    ));
}

#[test]
fn unreduced_differential_shape() {
    let a = alg(Family::TorusS, fp(7), Some(2), None);
    let s = SmallComplex::new(&a).unwrap();
    let u = unreduced_d1(&s, &a);
    assert_eq!((u.rows(), u.cols()), (s.d1.rows(), s.d1.cols()));
}

#[test]
fn orientation_reversal_keeps_dims() {
    let f = fp(7);
    for cells in [torus_simplicial_complex(), torus_cubical_complex()] {
        for q in [1, 3] {
            let dims = |c| {
                let p = quiverhh::families::incidence_presentation(c, f, &f.from_i64(q)).unwrap();
                hh(&QuotientAlgebra::new(&p).unwrap())
            };
            assert_eq!(dims(&cells), dims(&cells.reversed()));
        }
    }
}

#[test]
fn family_export_roundtrip() {
    for fam in Family::ALL {
        let pres = fam.presentation(Q, None, None).unwrap();
        let text = serialize_presentation(&pres);
        let back = parse_presentation(&text).unwrap();
        let a = QuotientAlgebra::new(&pres).unwrap();
        let b = QuotientAlgebra::new(&back).unwrap();
        assert_eq!(a.dim(), b.dim(), "{fam}");
        assert_eq!(hh(&a), hh(&b), "{fam}");
        assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
    }
    assert!("torus".parse::<Family>().is_err());
}

#[test]
fn report_examples() {
    let doc = run_report(&ReportRequest::family(Family::TorusS, Q).with_q("1")).unwrap();
    assert_eq!(doc.hh[..3], [1, 2, 1]);
    assert_eq!(doc.cup.unwrap().rank, 1);
    let doc = run_report(&ReportRequest::family(Family::P1P1, Q).with_psi("ee:1")).unwrap();
    assert_eq!(doc.hh[..3], [1, 3, 6]);
    let doc = run_report(&ReportRequest::family(Family::TorusC, Q).with_q("-1")).unwrap();
    assert_eq!(doc.hh[..3], [1, 2, 1]);
    assert_eq!(doc.params["q"], "-1");
}

#[test]
fn psi_examples_table() {
    let t = run_table(&TableRequest::new(TableName::PsiExamples)).unwrap();
    assert_eq!(t.rows.len(), 9);
    let (s, j, d) = (t.column("stab").unwrap(), t.column("J").unwrap(), t.column("dim HH").unwrap());
    let first = &t.rows[0];
    assert_eq!((first[s].as_str(), first[j].as_str(), first[d].as_str()), ("3", "3", "(1,6,9)"));
    let last = &t.rows[8];
    assert_eq!((last[s].as_str(), last[j].as_str(), last[d].as_str()), ("0", "0", "(1,0,3)"));
    let m = t.column("matches").unwrap();
    assert!(t.rows.iter().all(|r| r[m] == "yes"));
}

#[test]
fn feasibility_table_is_seeded() {
    let mut req = TableRequest::new(TableName::Feasibility);
    req.samples = 40;
    let a = run_table(&req).unwrap();
    let b = run_table(&req).unwrap();
    assert_eq!(a, b);
    let f = a.column("feasible").unwrap();
    let o = a.column("observed").unwrap();
    let total: usize = a.rows.iter().map(|r| r[o].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 40);
    assert!(a.rows.iter().all(|r| r[f] == "yes"));
}
