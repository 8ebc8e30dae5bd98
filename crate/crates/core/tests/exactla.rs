use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncderham::exactla::{rat, ratio, Echelon, ExactMatrix, Field, Insert, Rational, Scalar, SparseVec};

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `Z/p` by plain dense elimination; equals the rational rank of a
/// small-integer matrix unless `p` divides one of its minors.
fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = pow_mod(a[rank][c], P - 2);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % P;
                for k in c..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `rows × inner` times `inner × cols` with entries in `-2..=2`, so the rank is at most `inner`.
fn low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, inner: usize) -> Vec<Vec<i64>> {
    let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..inner).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let b: Vec<Vec<i64>> = (0..inner).map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    (0..rows)
        .map(|i| (0..cols).map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn rational_matrix(rows: &[Vec<i64>]) -> ExactMatrix<Rational> {
    ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn scalar_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix<Scalar> {
    let dense: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        Scalar::int(0)
                    } else {
                        Scalar::new(ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)), rat(rng.gen_range(-2..=2)))
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_dense(&dense)
}

#[test]
fn rank_routes_agree_on_a_dense_20_by_20() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let rows = low_rank(&mut rng, 20, 20, 13);
    let m = rational_matrix(&rows);
    let oracle = rank_mod_p(&rows);
    assert_eq!(oracle, 13);
    assert_eq!(m.rank(), oracle);
    assert_eq!(m.rank_fraction_free(), Some(oracle));
    assert_eq!(m.rank_reduced(), oracle);
}

#[test]
fn complex_rank_uses_the_echelon_route() {
    let i = Scalar::i();
    let one = Scalar::int(1);
    // second row is i times the first
    let m = ExactMatrix::from_dense(&[vec![one.clone(), i.clone()], vec![i.clone(), Scalar::int(-1)]]);
    assert_eq!(m.rank(), 1);
    assert_eq!(m.rank_fraction_free(), None);
    assert_eq!(m.kernel_basis().len(), 1);
}

#[test]
fn singular_inverse_and_inconsistent_solve_are_errors() {
    let m = ExactMatrix::from_dense(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
    assert!(m.inverse().is_err());
    assert!(m.solve(&[rat(1), rat(0)]).is_err());
    let sol = m.solve(&[rat(1), rat(2)]).unwrap();
    assert!(sol.underdetermined);
    assert_eq!(m.mul_vec(&sol.x).unwrap(), vec![rat(1), rat(2)]);
}

#[test]
fn positive_definite_reports_the_failing_minor() {
    let good = ExactMatrix::from_dense(&[vec![Scalar::int(2), Scalar::i()], vec![Scalar::i().neg_ref(), Scalar::int(2)]]);
    assert_eq!(good.positive_definite(), Ok(()));
    let bad = ExactMatrix::from_dense(&[vec![Scalar::int(1), Scalar::int(2)], vec![Scalar::int(2), Scalar::int(1)]]);
    assert_eq!(bad.positive_definite(), Err(2));
    let not_hermitian = ExactMatrix::from_dense(&[vec![Scalar::int(1), Scalar::i()], vec![Scalar::i(), Scalar::int(1)]]);
    assert_eq!(not_hermitian.positive_definite(), Err(0));
}

#[test]
fn echelon_expresses_members_of_its_span() {
    let mut e: Echelon<Rational> = Echelon::tracking();
    let a = SparseVec::from_pairs([(0, rat(1)), (2, rat(3))]);
    let b = SparseVec::from_pairs([(1, rat(2)), (2, rat(-1))]);
    assert!(matches!(e.insert(&a), Insert::Independent(_)));
    assert!(matches!(e.insert(&b), Insert::Independent(_)));
    let c = a.scale(&rat(2)).sub(&b.scale(&ratio(1, 2)));
    assert!(e.contains(&c));
    let coeffs = e.express(&c).expect("in span");
    assert_eq!(coeffs.get(0), Some(&rat(2)));
    assert_eq!(coeffs.get(1), Some(&ratio(-1, 2)));
    assert!(!e.contains(&SparseVec::unit(1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_routes_match_modular_oracle(seed in any::<u64>(), rows in 1usize..12, cols in 1usize..12, inner in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dense = low_rank(&mut rng, rows, cols, inner);
        let m = rational_matrix(&dense);
        let oracle = rank_mod_p(&dense);
        prop_assert_eq!(m.rank(), oracle);
        prop_assert_eq!(m.rank_fraction_free(), Some(oracle));
        prop_assert_eq!(m.rank_reduced(), oracle);
    }

    #[test]
    fn kernel_vectors_are_annihilated(seed in any::<u64>(), rows in 1usize..9, cols in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = scalar_matrix(&mut rng, rows, cols);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), cols);
        for v in &kernel {
            prop_assert!(m.mul_sparse(v).is_zero());
        }
        let reduced = m.reduced_kernel_basis();
        prop_assert_eq!(reduced.len(), kernel.len());
    }

    #[test]
    fn adjoint_reverses_products(seed in any::<u64>(), a in 1usize..6, b in 1usize..6, c in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = scalar_matrix(&mut rng, a, b);
        let y = scalar_matrix(&mut rng, b, c);
        let lhs = x.mul(&y).unwrap().conjugate_transpose();
        let rhs = y.conjugate_transpose().mul(&x.conjugate_transpose()).unwrap();
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn inverse_of_unit_triangular_product(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lower = vec![vec![Scalar::int(0); n]; n];
        let mut upper = vec![vec![Scalar::int(0); n]; n];
        for i in 0..n {
            lower[i][i] = Scalar::int(1);
            upper[i][i] = Scalar::new(rat(rng.gen_range(1..=3)), rat(rng.gen_range(-1..=1)));
            for j in 0..i {
                lower[i][j] = Scalar::int(rng.gen_range(-2..=2));
                upper[j][i] = Scalar::new(ratio(rng.gen_range(-2..=2), 3), rat(0));
            }
        }
        let m = ExactMatrix::from_dense(&lower).mul(&ExactMatrix::from_dense(&upper)).unwrap();
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).unwrap() == ExactMatrix::identity(n));
        prop_assert_eq!(m.rank(), n);
    }

    #[test]
    fn solve_reproduces_the_right_hand_side(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = scalar_matrix(&mut rng, rows, cols);
        let x0: Vec<Scalar> = (0..cols).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect();
        let b = m.mul_vec(&x0).unwrap();
        let sol = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&sol.x).unwrap(), b);
        prop_assert_eq!(sol.underdetermined, m.rank() < cols);
    }
}
