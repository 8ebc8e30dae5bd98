use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncderham::calculus::{parse_selection, Calculus};
use ncderham::exactla::{ratio, ExactMatrix, Field, Scalar};
use ncderham::functions::{self, FunctionVector};
use ncderham::group::FiniteGroup;

fn calc(group: &str, sel: &str) -> Calculus {
    let g = FiniteGroup::builtin(group).unwrap();
    let cls = parse_selection(&g, sel).unwrap();
    Calculus::new(g, &cls).unwrap()
}

fn labels(c: &Calculus) -> Vec<&str> {
    (0..c.m()).map(|i| c.gen_label(i)).collect()
}

/// Order of a permutation by repeated composition.
fn brute_order(perm: &[usize]) -> usize {
    let mut cur: Vec<usize> = perm.to_vec();
    let mut s = 1;
    while cur.iter().enumerate().any(|(i, &x)| i != x) {
        cur = cur.iter().map(|&x| perm[x]).collect();
        s += 1;
    }
    s
}

fn class_labels(g: &FiniteGroup) -> Vec<Vec<&str>> {
    g.classes().iter().map(|c| c.iter().map(|&x| g.label(x)).collect()).collect()
}

#[test]
fn table_groups_have_the_listed_classes() {
    let d4 = FiniteGroup::builtin("D4").unwrap();
    assert_eq!(class_labels(&d4), vec![vec!["2", "4"], vec!["3"], vec!["5", "6"], vec!["7", "8"]]);
    let s3 = FiniteGroup::builtin("S3").unwrap();
    assert_eq!(class_labels(&s3), vec![vec!["a", "b", "c"], vec!["ab", "ba"]]);
    let q = FiniteGroup::builtin("Q").unwrap();
    assert_eq!(q.ad_group_size(), 4);
    assert_eq!(s3.ad_group_size(), 6);
    assert_eq!(FiniteGroup::builtin("Z7").unwrap().ad_group_size(), 1);
    assert!(FiniteGroup::symmetric(3).unwrap().isomorphism_to(&s3).is_some());
    assert!(FiniteGroup::dihedral(4).unwrap().isomorphism_to(&d4).is_some());
    assert!(q.isomorphism_to(&d4).is_none());
}

#[test]
fn group_axioms_hold_for_every_builtin() {
    for name in FiniteGroup::small_builtins().into_iter().chain(["S4", "D5", "Z3xS3"]) {
        let g = FiniteGroup::builtin(name).unwrap();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.inv(g.inv(a)), a, "{name}");
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{name}");
                }
            }
        }
        for class in g.classes() {
            for h in 0..n {
                let mut image: Vec<usize> = class.iter().map(|&x| g.ad(h, x)).collect();
                image.sort_unstable();
                let mut sorted = class.clone();
                sorted.sort_unstable();
                assert_eq!(image, sorted, "{name}: ad not a bijection on a class");
            }
        }
    }
}

#[test]
fn calculus_counts() {
    let dims: Vec<usize> = Calculus::enumerate(&FiniteGroup::builtin("S3").unwrap()).iter().map(Calculus::m).collect();
    assert_eq!(dims, vec![3, 2, 5]);
    assert_eq!(Calculus::enumerate(&FiniteGroup::builtin("D4").unwrap()).len(), 15);
    assert_eq!(Calculus::enumerate(&FiniteGroup::builtin("Z2").unwrap()).len(), 1);
}

#[test]
fn selected_generators() {
    assert_eq!(labels(&calc("S3", "II")), ["ab", "ba"]);
    assert_eq!(labels(&calc("Q", "i,j")), ["i", "-i", "j", "-j"]);
    let three = calc("D4", "3");
    assert_eq!(three.m(), 1);
    assert!(three.is_star_closed());
}

#[test]
fn braiding_moves_the_left_label_through() {
    let c = calc("S3", "a");
    let pos = |l: &str| c.gen_by_label(l).unwrap();
    assert_eq!(c.lambda(pos("a"), pos("b")), (pos("c"), pos("a")));
    assert!(c.braiding().order() <= 12);
    for n in 3..=8 {
        let z = calc(&format!("Z{n}"), "u").star_completion();
        assert_eq!(z.braiding().order(), 2);
    }
}

#[test]
fn braiding_order_is_the_permutation_order() {
    for name in FiniteGroup::small_builtins() {
        let g = FiniteGroup::builtin(name).unwrap();
        for c in Calculus::enumerate(&g) {
            let br = c.braiding();
            assert_eq!(br.order(), brute_order(br.perm()), "{name} {}", c.describe());
            assert!(br.yang_baxter());
            assert!(br.inverse_ok());
            assert!(br.matrix().mul(&br.inverse_matrix()).unwrap() == ExactMatrix::identity(c.m() * c.m()));
        }
    }
}

#[test]
fn projector_fixes_the_symmetric_ambiguity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, sel) in [("S3", "a"), ("Q", "i,j"), ("D4", "2,5,7")] {
        let br = calc(g, sel).braiding();
        let a = br.two_form_projector();
        let p0 = br.p0();
        assert!(a.mul(&p0).unwrap().is_zero());
        let d = br.perm().len();
        let mut rand_vec = || -> Vec<Scalar> { (0..d).map(|_| Scalar::real(ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)))).collect() };
        let b = rand_vec();
        let c = rand_vec();
        let shifted: Vec<Scalar> = b.iter().zip(p0.mul_vec(&c).unwrap()).map(|(x, y)| x.add_ref(&y)).collect();
        assert_eq!(a.mul_vec(&shifted).unwrap(), a.mul_vec(&b).unwrap());
    }
}

fn t(g: &FiniteGroup, h: usize, f: &[Scalar]) -> FunctionVector {
    functions::sub(&functions::right_translate(g, h, f), f)
}

#[test]
fn tangent_vectors_close_on_the_fusion_algebra() {
    let c = calc("S3", "a");
    let g = c.group();
    for &a in c.gens() {
        for &b in c.gens() {
            for x in 0..g.order() {
                let f = functions::delta(g.order(), x);
                let lhs = c.tangent_apply(a, &c.tangent_apply(b, &f).unwrap()).unwrap();
                let mut rhs = vec![Scalar::int(0); g.order()];
                for h in 0..g.order() {
                    let k = c.fusion_constant(a, b, h);
                    if k != 0 {
                        rhs = functions::add(&rhs, &functions::scale(&Scalar::int(k), &t(g, h, &f)));
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn function_strategy(n: usize) -> impl Strategy<Value = FunctionVector> {
    prop::collection::vec((-6i64..=6, 1i64..=3, -3i64..=3), n)
        .prop_map(|v| v.into_iter().map(|(a, b, c)| Scalar::new(ratio(a, b), ratio(c, 1))).collect())
}

proptest! {
    #[test]
    fn tangent_leibniz_rule(f in function_strategy(6), f2 in function_strategy(6), gen in 0usize..3) {
        let c = calc("S3", "a");
        let g = c.group();
        let h = c.gen(gen);
        let lhs = c.tangent_apply(h, &functions::pointwise_mul(&f, &f2)).unwrap();
        let rhs = functions::add(
            &functions::pointwise_mul(&c.tangent_apply(h, &f).unwrap(), &functions::right_translate(g, h, &f2)),
            &functions::pointwise_mul(&f, &c.tangent_apply(h, &f2).unwrap()),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_translations_compose(f in function_strategy(8), a in 0usize..8, b in 0usize..8) {
        let g = FiniteGroup::builtin("Q").unwrap();
        let lhs = functions::right_translate(&g, a, &functions::right_translate(&g, b, &f));
        let rhs = functions::right_translate(&g, g.mul(a, b), &f);
        prop_assert_eq!(lhs, rhs);
    }
}
