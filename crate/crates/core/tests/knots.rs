use proptest::prelude::*;

use ncderham::calculus::{parse_selection, Calculus};
use ncderham::group::FiniteGroup;
use ncderham::knots::{self, BraidWord, Chirality};

fn calc(group: &str, sel: &str) -> Calculus {
    let g = FiniteGroup::builtin(group).unwrap();
    let cls = parse_selection(&g, sel).unwrap();
    Calculus::new(g, &cls).unwrap().star_completion()
}

#[test]
fn unknot_counts_generators() {
    assert_eq!(knots::kn_unknot(&calc("S3", "a")).unwrap(), 3);
    assert_eq!(knots::kn_unknot(&calc("Z6", "u")).unwrap(), 2);
    assert_eq!(knots::kn_unknot(&calc("Q", "i,j")).unwrap(), 4);
}

#[test]
fn trefoil_values() {
    let right = |g, s| knots::kn_trefoil(&calc(g, s), Chirality::Right).unwrap();
    assert_eq!(right("S3", "a"), 9);
    assert_eq!(right("S3", "ab"), 2);
    assert_eq!(right("Q", "i,j"), 4);
    assert_eq!(right("D4", "2,5"), 4);
    assert_eq!(knots::kn_trefoil(&Calculus::universal(FiniteGroup::builtin("S3").unwrap()).unwrap(), Chirality::Right).unwrap(), 11);
}

#[test]
fn trefoil_has_no_chirality_on_small_groups() {
    for name in FiniteGroup::small_builtins() {
        let g = FiniteGroup::builtin(name).unwrap();
        for c in Calculus::enumerate(&g).into_iter().filter(Calculus::is_star_closed) {
            let r = knots::kn_trefoil(&c, Chirality::Right).unwrap();
            assert_eq!(r, knots::kn_trefoil(&c, Chirality::Left).unwrap(), "{name} {}", c.describe());
            assert_eq!(r, knots::evaluate_braid(&c, &BraidWord::trefoil(Chirality::Right)).unwrap());
        }
    }
}

#[test]
fn closure_of_the_trivial_braid() {
    for (g, s) in [("S3", "a"), ("Q", "i,j"), ("Z5", "u")] {
        let c = calc(g, s);
        let m = c.m() as i64;
        assert_eq!(knots::evaluate_braid(&c, &BraidWord::new(1, vec![]).unwrap()).unwrap(), m);
        assert_eq!(knots::evaluate_braid(&c, &BraidWord::new(2, vec![1]).unwrap()).unwrap(), m);
    }
}

#[test]
fn braid_word_parsing() {
    let w: BraidWord = "1,-2, 1".parse().unwrap();
    assert_eq!((w.strands, w.letters.clone()), (3, vec![1, -2, 1]));
    assert_eq!(w.to_string(), "1,-2,1");
    assert!("1,x".parse::<BraidWord>().is_err());
    assert!("0".parse::<BraidWord>().is_err());
    assert!(BraidWord::parse("3", Some(3)).is_err());
    assert!(BraidWord::new(0, vec![]).is_err());
    assert_eq!(w.braid_relation_at(0), None);
    let r3 = BraidWord::new(3, vec![1, 2, 1]).unwrap().braid_relation_at(0).unwrap();
    assert_eq!(r3.letters, [2, 1, 2]);
}

#[test]
fn reidemeister_identities_hold_for_every_small_calculus() {
    for name in FiniteGroup::small_builtins() {
        let g = FiniteGroup::builtin(name).unwrap();
        for c in Calculus::enumerate(&g).into_iter().filter(Calculus::is_star_closed) {
            assert!(knots::reidemeister_check(&c).unwrap().ok(), "{name} {}", c.describe());
        }
    }
}

fn word() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn second_move_keeps_the_value(letters in word(), pos in 0usize..9, l in prop_oneof![Just(1), Just(-1), Just(2), Just(-2)]) {
        let c = calc("S3", "a");
        let w = BraidWord::new(3, letters).unwrap();
        let w2 = w.insert_cancelling_pair(pos, l).unwrap();
        prop_assert_eq!(knots::evaluate_braid(&c, &w).unwrap(), knots::evaluate_braid(&c, &w2).unwrap());
    }

    #[test]
    fn third_move_keeps_the_value(prefix in word(), sign in prop_oneof![Just(1), Just(-1)], up in any::<bool>()) {
        let c = calc("Q", "i,j");
        let (x, y) = if up { (sign, 2 * sign) } else { (2 * sign, sign) };
        let mut letters = prefix.clone();
        let pos = letters.len();
        letters.extend([x, y, x]);
        let w = BraidWord::new(3, letters).unwrap();
        let moved = w.braid_relation_at(pos).unwrap();
        prop_assert_eq!(knots::evaluate_braid(&c, &w).unwrap(), knots::evaluate_braid(&c, &moved).unwrap());
    }
}
