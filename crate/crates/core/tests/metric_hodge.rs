use proptest::prelude::*;

use ncderham::calculus::{parse_selection, Calculus};
use ncderham::exactla::{linear_combination, rat, ratio, Rational, Scalar, SparseVec};
use ncderham::exterior::{Form, FormTower, TensorVector, TowerOptions};
use ncderham::group::FiniteGroup;
use ncderham::metric_hodge::{self, MetricPairing};

fn calc(group: &str, sel: &str) -> Calculus {
    let g = FiniteGroup::builtin(group).unwrap();
    let cls = parse_selection(&g, sel).unwrap();
    Calculus::new(g, &cls).unwrap().star_completion()
}

fn tower(group: &str, sel: &str) -> FormTower {
    FormTower::build(&calc(group, sel), TowerOptions::default())
}

fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    (0..m.pow(k as u32)).map(|mut x| {
        let mut t = vec![0; k];
        for s in t.iter_mut().rev() {
            *s = x % m;
            x /= m;
        }
        t
    }).collect()
}

#[test]
fn one_form_metric() {
    for (g, sel) in [("S3", "a"), ("Q", "i,j"), ("Z5", "u")] {
        let c = calc(g, sel);
        let metric = MetricPairing::new(&c).unwrap();
        for r in 0..c.m() {
            for s in 0..c.m() {
                let expected = if s == c.inv_pos(r).unwrap() { -1 } else { 0 };
                assert_eq!(metric.upper(r, s), expected);
                assert_eq!(metric.lower(r, s), expected);
            }
        }
    }
    assert!(MetricPairing::new(&{
        let g = FiniteGroup::builtin("Z5").unwrap();
        let cls = parse_selection(&g, "u").unwrap();
        Calculus::new(g, &cls).unwrap()
    })
    .is_err());
}

#[test]
fn dual_tuples_pair_to_a_sign_and_nothing_else() {
    for (g, sel) in [("S3", "a"), ("Q", "i,j"), ("D4", "2,5")] {
        let c = calc(g, sel);
        let metric = MetricPairing::new(&c).unwrap();
        for k in 1..=3 {
            let all = tuples(c.m(), k);
            for i in &all {
                let dual = metric_hodge::dual_tuple(&c, i);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for j in &all {
                    let v = metric_hodge::pair_basis(&c, &metric, i, j);
                    assert_eq!(v, if *j == dual { sign } else { 0 }, "{g} {sel} {i:?} {j:?}");
                    assert_eq!(v, metric_hodge::pair_basis(&c, &metric, j, i));
                }
            }
        }
    }
}

#[test]
fn norms_of_two_forms() {
    let t = tower("S3", "a");
    let c = t.calculus();
    let ab = t.wedge_expand(&[c.gen_by_label("a").unwrap(), c.gen_by_label("b").unwrap()]).unwrap();
    let star = t.star_matrix(2).unwrap();
    let ab_star = linear_combination(ab.iter().map(|(j, x)| (x, &star[*j])));
    assert_eq!(metric_hodge::pair_forms(&t, 2, &ab, &ab_star).unwrap(), rat(2));
    for k in 0..=4 {
        for idx in 0..t.level(k).unwrap().dim() {
            assert!(metric_hodge::norm(&t, k, &SparseVec::unit(idx)).unwrap() > rat(0));
        }
    }
}

#[test]
fn hodge_dual_of_the_ends() {
    for (g, sel) in [("S3", "a"), ("S3", "ab"), ("Q", "i,j"), ("D4", "2,5")] {
        let t = tower(g, sel);
        let p = t.p().unwrap();
        let h = metric_hodge::hodge(&t).unwrap();
        let one = Form::constant(&t, 0, &SparseVec::unit(0)).unwrap();
        let vol = Form::constant(&t, p, &SparseVec::unit(0)).unwrap().scale(t.vol_scale());
        assert_eq!(h.apply(&t, &one).unwrap(), vol, "{g} {sel}");
        let n_vol = metric_hodge::norm(&t, p, &SparseVec::unit(0)).unwrap();
        // the antilinear star makes N(vol) equal to the norm of the top monomial
        let expected = one.scale(&Scalar::real(n_vol));
        assert_eq!(h.apply(&t, &vol).unwrap(), expected, "{g} {sel}");
    }
}

#[test]
fn wedge_with_the_dual_gives_the_norm() {
    for (g, sel) in [("S3", "a"), ("Q", "i,j")] {
        let t = tower(g, sel);
        let p = t.p().unwrap();
        let h = metric_hodge::hodge(&t).unwrap();
        let vol = Form::constant(&t, p, &SparseVec::unit(0)).unwrap().scale(t.vol_scale());
        for k in 0..=p {
            for idx in 0..t.level(k).unwrap().dim() {
                let rho = Form::constant(&t, k, &SparseVec::unit(idx)).unwrap();
                let lhs = rho.star(&t).unwrap().wedge(&t, &h.apply(&t, &rho).unwrap()).unwrap();
                let norm = metric_hodge::norm(&t, k, &SparseVec::unit(idx)).unwrap();
                assert_eq!(lhs, vol.scale(&Scalar::real(norm)), "{g} {sel} degree {k}");
            }
        }
    }
}

#[test]
fn double_dual_on_s3_is_scalar_per_degree() {
    let t = tower("S3", "a");
    let h = metric_hodge::hodge(&t).unwrap();
    let report = metric_hodge::check_conjecture2(&h).unwrap();
    let values: Vec<Scalar> = report.scalars.into_iter().map(Option::unwrap).collect();
    assert_eq!(values, [12, -4, 3, -4, 12].map(Scalar::int));
    assert!(report.normalization.is_none());
}

#[test]
fn epsilon_contraction_matches_the_dual_on_s3() {
    let t = tower("S3", "a");
    let h = metric_hodge::hodge(&t).unwrap();
    let fits = metric_hodge::check_conjecture1(&t, &h).unwrap();
    assert_eq!(fits.len(), 5);
    assert!(fits.iter().all(|f| f.consistent), "{fits:?}");
}

fn star_of(t: &FormTower, k: usize, w: &SparseVec<Rational>) -> SparseVec<Rational> {
    let rows = t.star_matrix(k).unwrap();
    linear_combination(w.iter().map(|(j, x)| (x, &rows[*j])))
}

fn coefficients(len: usize) -> impl Strategy<Value = SparseVec<Rational>> {
    prop::collection::vec((-3i64..=3, 1i64..=3), len)
        .prop_map(|v| SparseVec::from_pairs(v.into_iter().enumerate().filter(|(_, (a, _))| *a != 0).map(|(i, (a, b))| (i, ratio(a, b)))))
}

#[test]
fn pairing_of_tensors_is_symmetric() {
    let c = calc("S3", "a");
    for i in 0..27 {
        for j in 0..27 {
            let x = TensorVector { k: 3, m: 3, coeffs: SparseVec::unit(i) };
            let y = TensorVector { k: 3, m: 3, coeffs: SparseVec::unit(j) };
            assert_eq!(metric_hodge::pair_tensors(&c, &x, &y).unwrap(), metric_hodge::pair_tensors(&c, &y, &x).unwrap());
            let xs = metric_hodge::star_tensor(&c, &x).unwrap();
            assert_eq!(metric_hodge::star_tensor(&c, &xs).unwrap().coeffs, x.coeffs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pairing_reverses_under_star(x in coefficients(12), y in coefficients(12)) {
        let t = tower("Q", "i,j");
        let lhs = metric_hodge::pair_forms(&t, 3, &x, &y).unwrap();
        let rhs = metric_hodge::pair_forms(&t, 3, &star_of(&t, 3, &y), &star_of(&t, 3, &x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
