use hyperphi_core::gfp::{rank_reference, MatGFp};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn matrix() -> impl Strategy<Value = MatGFp> {
    (0usize..PRIMES.len(), 0usize..12, 0usize..12, any::<u64>())
        .prop_map(|(pi, r, c, seed)| MatGFp::random(PRIMES[pi], r, c, seed).unwrap())
}

fn product_pair() -> impl Strategy<Value = (MatGFp, MatGFp)> {
    (0usize..PRIMES.len(), 1usize..10, 1usize..10, 1usize..10, any::<u64>()).prop_map(|(pi, r, m, c, seed)| {
        let p = PRIMES[pi];
        let a = MatGFp::random(p, r, m, seed).unwrap();
        let b = MatGFp::random(p, m, c, seed.wrapping_add(1)).unwrap();
        (a, b)
    })
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn packed_rank_matches_reference(m in matrix()) {
        prop_assert_eq!(m.rank(), rank_reference(&m));
    }

    #[test]
    fn rank_bounded_by_shape(m in matrix()) {
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn product_rank_bounded_by_factors((a, b) in product_pair()) {
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn row_combinations_are_in_span(m in matrix(), seed in any::<u64>()) {
        prop_assume!(m.rows() > 0);
        let c = MatGFp::random(m.p(), 1, m.rows(), seed).unwrap().row(0);
        let v = m.combine_rows(&c);
        let cert = m.in_span(&v).unwrap();
        prop_assert!(cert.is_some());
        prop_assert_eq!(m.combine_rows(&cert.unwrap()), v);
    }

    #[test]
    fn span_membership_matches_rank(m in matrix(), seed in any::<u64>()) {
        let v = MatGFp::random(m.p(), 1, m.cols(), seed).unwrap();
        let joined = m.vstack(&v).unwrap();
        let inside = m.in_span(&v.row(0)).unwrap().is_some();
        prop_assert_eq!(inside, joined.rank() == m.rank());
    }

    #[test]
    fn rref_preserves_row_space(m in matrix()) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert!(m.same_row_space(&r).unwrap());
    }
}

#[test]
fn packed_and_reference_agree_on_seeded_batch() {
    for p in [2, 3, 5] {
        for seed in 0..100 {
            let rows = 8 + (seed as usize % 70);
            let cols = 8 + ((seed as usize * 7) % 90);
            let m = MatGFp::random(p, rows, cols, seed).unwrap();
            assert_eq!(m.rank(), rank_reference(&m), "p={p} seed={seed}");
        }
    }
}

#[test]
fn low_rank_products_are_detected() {
    for p in [2, 3, 5] {
        for seed in 0..20 {
            let a = MatGFp::random(p, 60, 5, seed).unwrap();
            let b = MatGFp::random(p, 5, 70, seed + 1000).unwrap();
            let ab = a.mul(&b).unwrap();
            assert!(ab.rank() <= 5);
            assert_eq!(ab.rank(), rank_reference(&ab));
        }
    }
}

fn sparse(p: u64, rows: usize, cols: usize, density: f64) -> impl Strategy<Value = MatGFp> {
    prop::collection::vec((prop::bool::weighted(density), 1..p), rows * cols).prop_map(move |cells| {
        let v: Vec<u32> = cells.into_iter().map(|(keep, x)| if keep { x as u32 } else { 0 }).collect();
        MatGFp::from_fn(p, rows, cols, |i, j| v[i * cols + j] as u64).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_matches_reference(
        m in prop_oneof![
            sparse(3, 40, 60, 0.08),
            sparse(61, 50, 40, 0.15),
            sparse(251, 30, 30, 0.3),
            sparse(257, 30, 30, 0.1),
        ]
    ) {
        prop_assert_eq!(m.rank(), rank_reference(&m));
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), rank_reference(&m));
        prop_assert!(m.same_row_space(&r).unwrap());
    }
}
