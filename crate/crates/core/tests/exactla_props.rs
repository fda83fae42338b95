use proptest::prelude::*;
use strelkit_core::exactla::matrix::Vector;
use strelkit_core::{Field, Matrix, Poly, Subspace};

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn matrix_strategy(field: Field, max: usize, range: std::ops::Range<i64>) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(range.clone(), r * c).prop_map(move |e| Matrix::from_ints(field, r, c, &e))
    })
}

fn subspace_pair(n: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    let vecs = move || prop::collection::vec(prop::collection::vec(0i64..7, n), 0..=n);
    (vecs(), vecs()).prop_map(move |(a, b)| {
        let f = f7();
        let conv = |vs: &[Vec<i64>]| vs.iter().map(|v| v.iter().map(|&x| f.int(x)).collect()).collect::<Vec<Vector>>();
        (Subspace::span(f, n, &conv(&a)), Subspace::span(f, n, &conv(&b)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rank_nullity(m in matrix_strategy(Field::Rational, 5, -3..4)) {
        prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        for v in m.kernel() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rref_is_canonical(m in matrix_strategy(f7(), 5, 0..7)) {
        let (r, _) = m.rref();
        prop_assert_eq!(&r.rref().0, &r);
        prop_assert_eq!(Subspace::row_space(&m), Subspace::row_space(&r));
    }

    #[test]
    fn inverse_over_q(m in matrix_strategy(Field::Rational, 4, -4..5)) {
        if m.is_square() {
            if let Some(inv) = m.inverse() {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(Field::Rational, m.rows()));
            } else {
                prop_assert!(m.rank() < m.rows());
            }
        }
    }

    #[test]
    fn intersection_agrees_with_annihilators((u, w) in subspace_pair(5)) {
        let meet = u.intersect(&w).unwrap();
        let oracle = u.annihilator().sum(&w.annihilator()).unwrap().annihilator();
        prop_assert_eq!(&meet, &oracle);
        prop_assert_eq!(u.sum(&w).unwrap().dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
    }

    #[test]
    fn complements_are_direct((u, w) in subspace_pair(5)) {
        let inside = u.sum(&w).unwrap();
        let comp = u.complement_in(&inside).unwrap();
        prop_assert!(comp.intersect(&u).unwrap().is_zero());
        prop_assert_eq!(comp.sum(&u).unwrap(), inside);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(0i64..7, 1..7), b in prop::collection::vec(0i64..7, 1..5)) {
        let f = f7();
        let pa = Poly::new(f, a.iter().map(|&x| f.int(x)).collect());
        let pb = Poly::new(f, b.iter().map(|&x| f.int(x)).collect());
        if !pb.is_zero() {
            let (q, r) = pa.div_rem(&pb);
            prop_assert_eq!(q.mul(&pb).add(&r), pa.clone());
            prop_assert!(r.degree().map_or(true, |d| d < pb.degree().unwrap()));
            let g = pa.gcd(&pb);
            prop_assert!(pa.div_rem(&g).1.is_zero() && pb.div_rem(&g).1.is_zero());
        }
    }
}
