use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiverhh::dsl::{parse_presentation, serialize_presentation};
use quiverhh::families::monomial::{random_monomial_presentation, MonomialLimits};
use quiverhh::families::sl2::{
    jj_dim, kernel_model_dims, mat2_identity, mat2_mul, orbit_conjugate, random_unimodular, sl2_bracket,
    sl2_killing, stab_dim, is_feasible, SL2Element,
};
use quiverhh::families::{Family, PsiTensor};
use quiverhh::field::{field_parse, FieldDescriptor, Scalar};
use quiverhh::hochschild::{hh_report, BarComplex, HochschildComputation};
use quiverhh::linalg::{axpy, quotient_coords, rank, scale, SparseMatrix, SubspaceBasis};
use quiverhh::report::psi_row;
use quiverhh::rewrite::{QuotientAlgebra, ReductionSystem};

const Q: FieldDescriptor = FieldDescriptor::Rationals;

fn field_strategy() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(Q),
        Just(FieldDescriptor::PrimeField(7)),
        Just(FieldDescriptor::PrimeField(13)),
        Just(FieldDescriptor::PrimeField(1_000_003)),
    ]
}

fn scalar_in(f: FieldDescriptor) -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
        let num = f.from_i64(n);
        let den = f.from_i64(d);
        if den.is_zero() {
            num
        } else {
            num.checked_div(&den).unwrap()
        }
    })
}

fn triple() -> impl Strategy<Value = (FieldDescriptor, Scalar, Scalar, Scalar)> {
    field_strategy().prop_flat_map(|f| (Just(f), scalar_in(f), scalar_in(f), scalar_in(f)))
}

fn int_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn psi_strategy() -> impl Strategy<Value = PsiTensor> {
    prop::collection::vec(-3i64..=3, 9).prop_map(|v| {
        let a = std::array::from_fn(|i| std::array::from_fn(|j| v[3 * i + j]));
        PsiTensor::from_i64(Q, a)
    })
}

fn cochain(field: FieldDescriptor, dim: usize, seed: &[i64]) -> Vec<(usize, Scalar)> {
    (0..dim)
        .filter_map(|i| {
            let c = seed[i % seed.len()] + (i as i64 % 3) - 1;
            (c != 0).then(|| (i, field.from_i64(c)))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((_f, a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &a.zero_like(), a.clone());
        prop_assert_eq!(&a * &a.one_like(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn scalar_print_parse_roundtrip((f, a, _b, _c) in triple()) {
        prop_assert_eq!(f.parse_scalar(&a.to_string()).unwrap(), a);
        prop_assert_eq!(field_parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rank_of_transpose(m in int_matrix(8, 8), p in prop_oneof![Just(Q), Just(FieldDescriptor::PrimeField(1_000_003))]) {
        let a = SparseMatrix::from_dense(p, &m);
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn prime_and_rational_ranks_agree(m in int_matrix(7, 7)) {
        let q = rank(&SparseMatrix::from_dense(Q, &m));
        let p = rank(&SparseMatrix::from_dense(FieldDescriptor::PrimeField(1_000_003), &m));
        prop_assert_eq!(q, p);
    }

    #[test]
    fn quotient_coords_idempotent_and_linear(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..4),
        v in prop::collection::vec(-3i64..=3, 6),
        w in prop::collection::vec(-3i64..=3, 6),
        c in -3i64..=3,
    ) {
        let to_sparse = |x: &[i64]| -> Vec<(usize, Scalar)> {
            x.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, &a)| (i, Q.from_i64(a))).collect()
        };
        let img = SubspaceBasis::spanned_by(Q, 6, gens.iter().map(|g| to_sparse(g)));
        let (v, w) = (to_sparse(&v), to_sparse(&w));
        let qv = quotient_coords(&v, &img).unwrap();
        prop_assert_eq!(quotient_coords(&qv, &img).unwrap(), qv.clone());
        let qw = quotient_coords(&w, &img).unwrap();
        let c = Q.from_i64(c);
        let lhs = quotient_coords(&axpy(&v, &c, &w), &img).unwrap();
        prop_assert_eq!(lhs, axpy(&qv, &c, &qw));
        for g in &gens {
            prop_assert!(quotient_coords(&to_sparse(g), &img).unwrap().is_empty());
        }
    }

    #[test]
    fn cayley_hamilton(a in prop::array::uniform3(-5i64..=5), b in prop::array::uniform3(-5i64..=5)) {
        let (x, y) = (SL2Element::from_i64(Q, a[0], a[1], a[2]), SL2Element::from_i64(Q, b[0], b[1], b[2]));
        let (xm, ym) = (x.matrix(), y.matrix());
        let (xy, yx) = (mat2_mul(&xm, &ym), mat2_mul(&ym, &xm));
        let k = sl2_killing(&x, &y);
        let id = mat2_identity(Q);
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(&xy[i][j] + &yx[i][j], &k * &id[i][j]);
            }
        }
        // invariance of the pairing
        let z = SL2Element::from_i64(Q, b[2], a[0], b[1]);
        prop_assert_eq!(sl2_killing(&sl2_bracket(&x, &y), &z), sl2_killing(&x, &sl2_bracket(&y, &z)));
    }

    #[test]
    fn psi_literal_roundtrip(psi in psi_strategy()) {
        prop_assert_eq!(PsiTensor::parse(&psi.to_string(), Q).unwrap(), psi);
    }

    #[test]
    fn stab_jj_feasible_and_kernel_model(psi in psi_strategy()) {
        let km = kernel_model_dims(&psi).unwrap();
        prop_assert_eq!(km.total, km.stab + km.jj);
        prop_assert!(is_feasible(km.stab, km.jj));
    }

    #[test]
    fn conjugation_preserves_invariants(psi in psi_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random_unimodular(&mut rng, Q), random_unimodular(&mut rng, Q));
        let c = orbit_conjugate(&psi, &g, &h).unwrap();
        prop_assert_eq!((stab_dim(&c), jj_dim(&c)), (stab_dim(&psi), jj_dim(&psi)));
    }

    #[test]
    fn monomial_dsl_roundtrip(seed in any::<u64>()) {
        let pres = random_monomial_presentation(seed, MonomialLimits::default(), Q);
        let text = serialize_presentation(&pres);
        let back = parse_presentation(&text).unwrap();
        prop_assert_eq!(serialize_presentation(&back), text);
        prop_assert!(pres.relations.iter().all(|r| r.element.len() == 1));
    }

    #[test]
    fn path_composition_associative(seed in any::<u64>()) {
        let pres = random_monomial_presentation(seed, MonomialLimits::default(), Q);
        let q = &pres.quiver;
        let paths = q.enumerate_paths(3);
        for a in paths.iter().take(12) {
            for b in paths.iter().take(12) {
                for c in paths.iter().take(12) {
                    let l = a.compose(b).and_then(|ab| ab.compose(c));
                    let r = b.compose(c).and_then(|bc| a.compose(&bc));
                    prop_assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn monomial_bar_is_a_complex(seed in any::<u64>()) {
        let pres = random_monomial_presentation(seed, MonomialLimits::default(), Q);
        let alg = QuotientAlgebra::new(&pres).unwrap();
        prop_assert!(BarComplex::new(&alg, 3).is_complex());
        let comp = HochschildComputation::new(&alg, 3);
        if let Some(e) = comp.euler() {
            prop_assert_eq!(e, comp.hh_euler());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn normal_form_strategy_independent(psi in psi_strategy(), seed in any::<u64>(), coeffs in prop::collection::vec(-3i64..=3, 8)) {
        let pres = Family::P1P1.presentation(Q, None, Some(&psi)).unwrap();
        let sys = ReductionSystem::from_presentation(&pres).unwrap();
        let sys = sys.complete(sys.default_length_bound()).unwrap();
        let paths: Vec<_> = pres.quiver.enumerate_paths(2).into_iter().filter(|p| p.len() == 2).collect();
        // one parallel class at a time
        for p in &paths {
            let mut e = quiverhh::quiver::AlgebraElement::zero(Q);
            for (k, r) in paths.iter().filter(|r| r.is_parallel(p)).enumerate() {
                e.add_term(r.clone(), Q.from_i64(coeffs[k % coeffs.len()]));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(sys.normal_form_random(&e, &mut rng), sys.normal_form(&e));
        }
    }

    #[test]
    fn leibniz_on_p1p1(psi in psi_strategy(), f in prop::collection::vec(-3i64..=3, 5), g in prop::collection::vec(-3i64..=3, 5)) {
        let pres = Family::P1P1.presentation(Q, None, Some(&psi)).unwrap();
        let alg = QuotientAlgebra::new(&pres).unwrap();
        let bar = BarComplex::new(&alg, 2);
        prop_assert!(bar.is_complex());
        let dims = bar.dims();
        for p in 0..=1usize {
            for q in 0..=(1 - p) {
                let fc = cochain(Q, dims[p], &f);
                let gc = cochain(Q, dims[q], &g);
                let lhs = bar.apply_d(p + q, &bar.cup(p, &fc, q, &gc));
                let sign = Q.from_i64(if p % 2 == 0 { 1 } else { -1 });
                let rhs = axpy(
                    &bar.cup(p + 1, &bar.apply_d(p, &fc), q, &gc),
                    &sign,
                    &bar.cup(p, &fc, q + 1, &bar.apply_d(q, &gc)),
                );
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn graded_commutativity_and_antisymmetry(psi in psi_strategy()) {
        let pres = Family::P1P1.presentation(Q, None, Some(&psi)).unwrap();
        let alg = QuotientAlgebra::new(&pres).unwrap();
        let comp = HochschildComputation::new(&alg, 2);
        let h1 = comp.classes(1).unwrap();
        for x in &h1 {
            for y in &h1 {
                let xy = comp.cup(x, y).unwrap().coords;
                let yx = comp.cup(y, x).unwrap().coords;
                prop_assert_eq!(xy, scale(&yx, &Q.from_i64(-1)));
                let b1 = comp.bracket(x, y).unwrap().coords;
                let b2 = comp.bracket(y, x).unwrap().coords;
                prop_assert_eq!(b1, scale(&b2, &Q.from_i64(-1)));
            }
            prop_assert!(comp.bracket(x, x).unwrap().coords.is_empty());
        }
    }

    #[test]
    fn three_way_agreement(psi in psi_strategy()) {
        let (hh, small, _) = psi_row(&psi).unwrap();
        let km = kernel_model_dims(&psi).unwrap();
        prop_assert_eq!(small.unwrap()[1], hh[1]);
        prop_assert_eq!(km.total, hh[1]);
        prop_assert_eq!(km.stab + km.jj, hh[1]);
        prop_assert_eq!(hh[0], 1);
        prop_assert_eq!(hh[2], hh[1] + 3);
    }

    #[test]
    fn torus_reports_agree_across_complexes(q in 1i64..7) {
        let f = FieldDescriptor::PrimeField(7);
        let pres = Family::TorusC.presentation(f, Some(&f.from_i64(q)), None).unwrap();
        let alg = QuotientAlgebra::new(&pres).unwrap();
        let (_, rep) = hh_report(&alg, 3).unwrap();
        prop_assert_eq!(&rep.small_hh.unwrap()[..], &rep.hh[..3]);
    }
}
