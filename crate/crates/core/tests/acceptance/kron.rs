//! Criterion 4: decomposition of random pencils over F₅.

use rand::Rng;
use strelkit_core::{Block, KroneckerModule, Scalar};

use crate::gen;
use crate::Outcome;

pub fn decomposition(seed: u64) -> Outcome {
    let f = gen::f5();
    let mut r = gen::rng(seed, 5);
    let mut bad = Vec::new();
    let mut kinds = [0usize; 5];
    for i in 0..500 {
        let (x, y) = (r.gen_range(0..=6), r.gen_range(0..=6));
        let m = KroneckerModule::new(gen::matrix(&mut r, f, y, x), gen::matrix(&mut r, f, y, x)).unwrap();
        let dec = match m.decompose() {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("pencil {i}: {e}"));
                continue;
            }
        };
        for b in &dec.blocks {
            kinds[match b {
                Block::P(_) => 0,
                Block::I(_) => 1,
                Block::Z(_) => 2,
                Block::R(_) => 3,
                Block::Aut { .. } => 4,
            }] += 1;
        }
        let samples: Vec<(Scalar, Scalar)> =
            (0..=x + y).map(|_| (f.int(r.gen_range(0..5)), f.int(r.gen_range(0..5)))).collect();
        let whole = dec.reassemble(f);
        if whole.x_dim() != x || whole.y_dim() != y || whole.rank_invariants(&samples) != m.rank_invariants(&samples) {
            bad.push(format!("pencil {i}: rank invariants of {dec} differ"));
        }
    }
    for (i, c) in gen::sample_relations(seed, 200).iter().enumerate() {
        match KroneckerModule::from_relation(c).decompose() {
            Ok(d) if d.blocks.contains(&Block::I(0)) => bad.push(format!("relation {i}: module contains I(0)")),
            Ok(_) => {}
            Err(e) => bad.push(format!("relation {i}: {e}")),
        }
    }
    if bad.is_empty() {
        Ok(format!("500 pencils, 200 relation modules; blocks P/I/Z/R/Aut seen {kinds:?}"))
    } else {
        Err(format!("{} violations: {}", bad.len(), bad[..bad.len().min(5)].join(" | ")))
    }
}
