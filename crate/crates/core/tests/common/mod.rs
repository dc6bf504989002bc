#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use transvect::characters::IrrDecomp;
use transvect::omega::binary_table;
use transvect::scalar::ratio;
use transvect::{SparsePoly, VarTable};

pub const SEED: [u8; 32] = *b"transvect property seed 00000001";
pub const SEED_U64: u64 = 20_241_018;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

pub fn table() -> Arc<VarTable> {
    binary_table(&[]).unwrap()
}

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4)
}

/// Small polynomials in `x1, x2, y1, y2`.
pub fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((coeff(), [0u16..3, 0u16..3, 0u16..2, 0u16..2]), 0..5).prop_map(|terms| {
        let t = table();
        let mut p = SparsePoly::zero(&t);
        for ((n, d), [a, b, c, e]) in terms {
            let m = SparsePoly::from_powers(&t, ratio(n, d), &[("x1", a), ("x2", b), ("y1", c), ("y2", e)]).unwrap();
            p = &p + &m;
        }
        p
    })
}

/// A binary form in `x1, x2` of the given order with at least one nonzero coefficient.
pub fn form(order: u16) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(coeff(), order as usize + 1)
        .prop_filter("nonzero", |v| v.iter().any(|&(n, _)| n != 0))
        .prop_map(move |cs| {
            let t = table();
            let mut p = SparsePoly::zero(&t);
            for (i, (n, d)) in cs.into_iter().enumerate() {
                let i = i as u16;
                p = &p + &SparsePoly::from_powers(&t, ratio(n, d), &[("x1", order - i), ("x2", i)]).unwrap();
            }
            p
        })
}

pub fn form_any() -> impl Strategy<Value = (u16, SparsePoly)> {
    (1u16..=5).prop_flat_map(|n| form(n).prop_map(move |f| (n, f)))
}

pub fn irr_decomp() -> impl Strategy<Value = IrrDecomp> {
    prop::collection::btree_map(0u32..14, 1u64..4, 0..6).prop_map(|m: BTreeMap<u32, u64>| IrrDecomp(m))
}
