use proptest::prelude::*;
use strelkit_core::{Block, Field, KroneckerModule, Matrix};

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn pencil(max: usize) -> impl Strategy<Value = KroneckerModule> {
    (0..=max, 0..=max).prop_flat_map(|(x, y)| {
        (prop::collection::vec(0i64..5, x * y), prop::collection::vec(0i64..5, x * y)).prop_map(move |(p, q)| {
            KroneckerModule::new(Matrix::from_ints(f5(), y, x, &p), Matrix::from_ints(f5(), y, x, &q)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn hom_and_ext_are_additive(a in pencil(3), b in pencil(3), n in pencil(3)) {
        let sum = a.direct_sum(&b);
        prop_assert_eq!(sum.hom_space(&n).dim(), a.hom_space(&n).dim() + b.hom_space(&n).dim());
        prop_assert_eq!(sum.ext_dim(&n), a.ext_dim(&n) + b.ext_dim(&n));
        prop_assert_eq!(n.ext_dim(&sum), n.ext_dim(&a) + n.ext_dim(&b));
        let lhs = sum.hom_space(&n).dim() as i64 - sum.ext_dim(&n) as i64;
        prop_assert_eq!(lhs, sum.euler_form(&n));
    }

    #[test]
    fn decomposition_is_an_isomorphism(m in pencil(5)) {
        let d = m.decompose().unwrap();
        let std = d.reassemble(f5());
        prop_assert!(d.bx.is_invertible() && d.by.is_invertible());
        prop_assert_eq!(m.p.mul(&d.bx), d.by.mul(&std.p));
        prop_assert_eq!(m.q.mul(&d.bx), d.by.mul(&std.q));
    }

    #[test]
    fn duality_swaps_preprojectives_and_preinjectives(m in pencil(4)) {
        let count = |blocks: &[Block], f: fn(&Block) -> Option<usize>| {
            let mut v: Vec<usize> = blocks.iter().filter_map(f).collect();
            v.sort();
            v
        };
        let a = m.decompose().unwrap().blocks;
        let b = m.dual().decompose().unwrap().blocks;
        let pre_p = |b: &Block| if let Block::P(n) = b { Some(*n) } else { None };
        let pre_i = |b: &Block| if let Block::I(n) = b { Some(*n) } else { None };
        prop_assert_eq!(count(&a, pre_p), count(&b, pre_i));
        prop_assert_eq!(count(&a, pre_i), count(&b, pre_p));
    }
}

#[test]
fn standard_blocks_decompose_to_themselves() {
    let f = f5();
    let mut blocks: Vec<Block> = Vec::new();
    for n in 0..=3 {
        blocks.push(Block::P(n));
        blocks.push(Block::I(n));
    }
    for n in 1..=3 {
        blocks.push(Block::Z(n));
        blocks.push(Block::R(n));
    }
    for b in blocks {
        assert_eq!(b.module(f).decompose().unwrap().blocks, vec![b.clone()], "{b}");
    }
}

#[test]
fn known_ext_groups() {
    let f = f5();
    let z1 = Block::Z(1).module(f);
    let p0 = Block::P(0).module(f);
    assert_eq!(z1.hom_space(&p0).dim(), 0);
    assert_eq!(z1.ext_dim(&p0), 1);
    for n in 0..=4 {
        let p = Block::P(n).module(f);
        for other in [Block::I(2), Block::Z(2), Block::R(1)] {
            assert_eq!(p.ext_dim(&other.module(f)), 0);
        }
        for m in 0..=4 {
            let q = Block::P(m).module(f);
            assert_eq!(q.hom_space(&p).dim(), (n + 1).saturating_sub(m), "Hom(P({m}), P({n}))");
            assert_eq!(p.ext_dim(&q), (n + 1).saturating_sub(m + 2), "Ext(P({n}), P({m}))");
        }
    }
}
