//! Property tests for the exact linear algebra: rank-nullity, determinant
//! multiplicativity, and agreement of the fraction-free elimination with an
//! independent cofactor-expansion oracle.

use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

use ulrich_core::exactla::{rat, ratq, Matrix, Rat};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    vec(-9i64..=9, rows * cols)
        .prop_map(move |ints| Matrix::from_fn(rows, cols, |r, c| rat(ints[r * cols + c])))
}

fn any_shape() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| small_matrix(r, c))
}

/// Cofactor expansion along the first row; exponential but independent of
/// the elimination path it checks.
fn laplace_det(m: &Matrix) -> Rat {
    let n = m.rows();
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = Rat::zero();
    for c in 0..n {
        let a = m.at(0, c);
        if a.is_zero() {
            continue;
        }
        let minor = Matrix::from_fn(n - 1, n - 1, |r2, c2| {
            m.at(r2 + 1, if c2 < c { c2 } else { c2 + 1 }).clone()
        });
        let term = a * laplace_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

proptest! {
    #[test]
    fn rank_nullity(m in any_shape()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn kernel_vectors_map_to_zero(m in any_shape()) {
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn det_of_product_is_product_of_dets(
        n in 1usize..=6,
        ints_a in vec(-9i64..=9, 36),
        ints_b in vec(-9i64..=9, 36),
    ) {
        let a = Matrix::from_fn(n, n, |r, c| rat(ints_a[r * 6 + c]));
        let b = Matrix::from_fn(n, n, |r, c| rat(ints_b[r * 6 + c]));
        prop_assert_eq!(
            a.mul(&b).det().unwrap(),
            a.det().unwrap() * b.det().unwrap()
        );
    }

    #[test]
    fn bareiss_agrees_with_cofactor_oracle(
        n in 1usize..=5,
        ints in vec(-9i64..=9, 25),
    ) {
        let m = Matrix::from_fn(n, n, |r, c| rat(ints[r * 5 + c]));
        prop_assert_eq!(m.det().unwrap(), laplace_det(&m));
    }

    #[test]
    fn solutions_satisfy_the_system(m in any_shape(), ints in vec(-9i64..=9, 5)) {
        let b: Vec<Rat> = (0..m.rows()).map(|i| rat(ints[i])).collect();
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.mul_vec(&x), b);
        } else {
            // inconsistent: b is outside the column span
            prop_assert!(!m.contains_in_column_span(&b));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in any_shape()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

#[test]
fn rational_entries_are_handled_exactly() {
    let m = Matrix::from_rows(vec![
        vec![ratq(1, 3), ratq(-2, 7)],
        vec![ratq(5, 2), ratq(4, 9)],
    ]);
    assert_eq!(
        m.det().unwrap(),
        ratq(1, 3) * ratq(4, 9) - ratq(-2, 7) * ratq(5, 2)
    );
    assert_eq!(m.det().unwrap(), laplace_det(&m));
}
