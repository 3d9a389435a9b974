#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semistar::groups::{HullPoint, OrderedGroup, RankOne};
use semistar::valuation::ValIdeal;
use semistar_oracle::grid::{Factor, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(s: &str) -> OrderedGroup {
    OrderedGroup::parse(s).unwrap()
}

pub fn factors(g: &OrderedGroup) -> Vec<Factor> {
    g.factors()
        .into_iter()
        .map(|f| match f {
            RankOne::Integers => Factor::Integers,
            RankOne::Rationals => Factor::Rationals,
            RankOne::Localized(2) => Factor::Dyadic,
            RankOne::Localized(p) => panic!("grid oracle covers Z[1/2] only, not Z[1/{p}]"),
        })
        .collect()
}

pub fn pred(i: &ValIdeal) -> impl Fn(&[Q]) -> bool + '_ {
    move |x: &[Q]| i.admits(&HullPoint::new(x.to_vec()))
}

/// The five group kinds swept against the grid oracle.
pub const KINDS: [&str; 5] = ["Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)"];
