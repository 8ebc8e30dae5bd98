use proptest::prelude::*;

use ncderham::calculus::{parse_selection, Calculus};
use ncderham::derham::{self, DeRhamComplex, HodgeTheory};
use ncderham::exactla::{rat, ratio, Field, Scalar, SparseVec};
use ncderham::exterior::{Form, FormTower, TowerOptions};
use ncderham::functions;
use ncderham::group::FiniteGroup;
use ncderham::metric_hodge;

fn tower(group: &str, sel: &str) -> FormTower {
    let g = FiniteGroup::builtin(group).unwrap();
    let cls = parse_selection(&g, sel).unwrap();
    let c = Calculus::new(g, &cls).unwrap().star_completion();
    FormTower::build(&c, TowerOptions::default())
}

fn volume(t: &FormTower) -> Form {
    let p = t.p().unwrap();
    Form::constant(t, p, &SparseVec::unit(0)).unwrap().scale(t.vol_scale())
}

#[test]
fn invariant_forms_of_the_two_cycle_calculus_are_closed() {
    let t = tower("S3", "ab");
    for label in ["ab", "ba"] {
        let theta = Form::from_labels(&t, &[label]).unwrap();
        assert!(derham::d(&t, &theta).unwrap().is_zero());
    }
    let s3 = tower("S3", "a");
    let theta = Form::from_labels(&s3, &["a"]).unwrap();
    assert!(!derham::d(&s3, &theta).unwrap().is_zero());
}

#[test]
fn differential_of_a_delta_function() {
    let t = tower("S3", "a");
    let c = t.calculus();
    let g = c.group();
    for h in 0..t.n() {
        let df = derham::d_function(&t, &functions::delta(t.n(), h)).unwrap();
        for (i, &gi) in c.gens().iter().enumerate() {
            let expected = functions::sub(&functions::delta(t.n(), g.mul(h, g.inv(gi))), &functions::delta(t.n(), h));
            let j = t.level(1).unwrap().index_of(&[i]).unwrap();
            assert_eq!(df.coeffs[j], expected);
        }
    }
}

#[test]
fn differential_matrices() {
    let t = tower("S3", "a");
    let p = t.p().unwrap();
    let top = derham::d_matrix(&t, p).unwrap();
    assert_eq!((top.rows(), top.cols()), (0, t.n()));
    assert_eq!(derham::d_matrix(&t, 0).unwrap().rank(), t.n() - 1);
    assert!(derham::d_matrix(&t, p + 1).is_err());
}

#[test]
fn betti_numbers() {
    let q = tower("Q", "i,j");
    assert_eq!(DeRhamComplex::new(&q).unwrap().betti()[3], 2);
    let s3 = DeRhamComplex::new(&tower("S3", "a")).unwrap();
    assert_eq!(s3.betti(), [1, 1, 0, 1, 1]);
    assert!(s3.d_squared_vanishes().unwrap());
    assert!(derham::poincare_check(&s3.betti()));
    assert!(!derham::poincare_check(&[1, 2, 0]));
}

#[test]
fn integration_and_biinvariance() {
    for (g, sel) in [("S3", "a"), ("S3", "ab"), ("Q", "i,j"), ("D4", "2,5"), ("Z5", "u")] {
        let t = tower(g, sel);
        let vol = volume(&t);
        let n = t.n() as i64;
        assert_eq!(derham::integrate(&t, &vol).unwrap(), Scalar::int(n), "{g} {sel}");
        for x in 0..t.n() {
            let f = functions::delta(t.n(), x);
            let fv = vol.left_mul_function(&f);
            assert_eq!(derham::integrate(&t, &fv).unwrap(), Scalar::int(1));
            for h in 0..t.n() {
                assert_eq!(derham::integrate(&t, &fv.left_action(&t, h)).unwrap(), Scalar::int(1));
            }
        }
        assert!(derham::integrate(&t, &Form::function(functions::delta(t.n(), 0))).is_err() || t.p().unwrap() == 0);
        let complex = DeRhamComplex::new(&t).unwrap();
        assert!(derham::integration_by_parts_check(&t, &complex).unwrap(), "{g} {sel}");
    }
}

#[test]
fn constant_top_minus_one_forms_are_closed() {
    let t = tower("S3", "a");
    for idx in 0..t.level(3).unwrap().dim() {
        let rho = Form::constant(&t, 3, &SparseVec::unit(idx)).unwrap();
        assert!(derham::d(&t, &rho).unwrap().is_zero());
    }
}

#[test]
fn hodge_theory_of_small_calculi() {
    for (g, sel) in [("S3", "a"), ("S3", "ab"), ("Z6", "u")] {
        let t = tower(g, sel);
        let complex = DeRhamComplex::new(&t).unwrap();
        let theory = HodgeTheory::new(&t, &complex).unwrap();
        assert_eq!(theory.harmonic_dims(), complex.betti(), "{g} {sel}");
        for (k, gram) in theory.gram.iter().enumerate() {
            assert!(gram.conjugate_transpose() == *gram);
            assert_eq!(gram.positive_definite(), Ok(()), "{g} {sel} degree {k}");
            let dec = theory.decomposition(&complex, k).unwrap();
            assert!(dec.ok(), "{g} {sel} {dec:?}");
        }
        let one = functions::constant(t.n(), Scalar::int(1));
        assert!(theory.laplacian[0].mul_vec(&one).unwrap().iter().all(Scalar::is_zero));
        let hodge = metric_hodge::hodge(&t).unwrap();
        assert!(derham::lemma1_check(&t, &complex, &theory, &hodge).unwrap(), "{g} {sel}");
    }
}

#[test]
fn lemma_signs_alternate_on_s3() {
    let t = tower("S3", "a");
    let complex = DeRhamComplex::new(&t).unwrap();
    let theory = HodgeTheory::new(&t, &complex).unwrap();
    let hodge = metric_hodge::hodge(&t).unwrap();
    let signs = derham::lemma1_signs(&t, &complex, &theory, &hodge).unwrap();
    assert_eq!(signs, [Some(-1), Some(1), Some(-1), Some(1)]);
}

#[test]
fn quaternion_middle_degree_splits() {
    let t = tower("Q", "i,j");
    let complex = DeRhamComplex::new(&t).unwrap();
    let theory = HodgeTheory::new(&t, &complex).unwrap();
    let dec = theory.decomposition(&complex, 4).unwrap();
    assert_eq!((dec.total, dec.harmonic), (112, 4));
    assert!(dec.ok());
}

fn scalars(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-5i64..=5, 1i64..=4, -2i64..=2), n)
        .prop_map(|v| v.into_iter().map(|(a, b, c)| Scalar::new(ratio(a, b), rat(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_on_functions_is_the_eta_commutator(f in scalars(8)) {
        let t = tower("D4", "2,5");
        let eta = derham::eta(&t).unwrap();
        let func = Form::function(f.clone());
        let commutator = eta.wedge(&t, &func).unwrap().sub(&func.wedge(&t, &eta).unwrap()).unwrap();
        prop_assert_eq!(derham::d_function(&t, &f).unwrap(), commutator.clone());
        prop_assert_eq!(derham::d(&t, &func).unwrap(), commutator);
    }

    #[test]
    fn routes_agree_and_square_to_zero(v in scalars(6 * 4)) {
        let t = tower("S3", "a");
        let rho = Form::from_vector(&t, 2, &v).unwrap();
        let d1 = derham::d(&t, &rho).unwrap();
        prop_assert_eq!(derham::d_leibniz(&t, &rho).unwrap(), d1.clone());
        prop_assert_eq!(derham::d_matrix(&t, 2).unwrap().mul_vec(&v).unwrap(), d1.to_vector());
        prop_assert!(derham::d(&t, &d1).unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz_rule(a in scalars(6 * 3), b in scalars(6 * 3)) {
        let t = tower("S3", "a");
        let x = Form::from_vector(&t, 1, &a).unwrap();
        let y = Form::from_vector(&t, 1, &b).unwrap();
        let lhs = derham::d(&t, &x.wedge(&t, &y).unwrap()).unwrap();
        let rhs = derham::d(&t, &x).unwrap().wedge(&t, &y).unwrap()
            .sub(&x.wedge(&t, &derham::d(&t, &y).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn codifferential_is_adjoint(a in scalars(6 * 3), b in scalars(6 * 4)) {
        let t = tower("S3", "a");
        let complex = DeRhamComplex::new(&t).unwrap();
        let theory = HodgeTheory::new(&t, &complex).unwrap();
        prop_assert!(theory.adjoint_defect(&complex, 1, &a, &b).unwrap().is_zero());
    }
}
