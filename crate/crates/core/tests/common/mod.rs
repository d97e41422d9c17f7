#![allow(dead_code)]

use std::path::PathBuf;

use cpc::code::{AnyCode, CpcCode, GeneralCpcCode};
use cpc::fixtures;
use cpc::search::{random_code, Dims};
use cpc::Gf2Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn all_fixtures() -> Vec<(String, AnyCode)> {
    let mut out: Vec<(String, AnyCode)> = fixtures::split_fixtures()
        .into_iter()
        .map(|(n, c)| (n.to_string(), c.into()))
        .collect();
    out.extend(
        fixtures::general_fixtures()
            .into_iter()
            .map(|(n, c)| (n.to_string(), c.into())),
    );
    out
}

/// Split code number `i` of a fixed family with k ≤ 4 and n_b, n_p ≤ 5.
pub fn random_split(i: u64) -> CpcCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE_0000 + i);
    let dims = Dims {
        k: rng.gen_range(1..=4),
        n_b: rng.gen_range(0..=5),
        n_p: rng.gen_range(0..=5),
    };
    random_code(dims, &mut rng, false).unwrap()
}

/// General code number `i`: random edges, strictly upper-triangular checks.
pub fn random_general(i: u64) -> GeneralCpcCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6E4E_0000 + i);
    let k = rng.gen_range(1..=4);
    let n_c = rng.gen_range(1..=5);
    let mut mbs = Gf2Matrix::zeros(k, n_c);
    let mut mps = Gf2Matrix::zeros(k, n_c);
    let mut mcs = Gf2Matrix::zeros(n_c, n_c);
    for r in 0..k {
        for c in 0..n_c {
            mbs.set(r, c, rng.gen());
            mps.set(r, c, rng.gen());
        }
    }
    for r in 0..n_c {
        for c in r + 1..n_c {
            mcs.set(r, c, rng.gen());
        }
    }
    GeneralCpcCode::new(mbs, mps, mcs).unwrap()
}

pub fn random_codes(count: u64) -> Vec<(String, AnyCode)> {
    (0..count)
        .map(|i| {
            if i % 4 == 3 {
                (format!("general #{i}"), random_general(i).into())
            } else {
                (format!("split #{i}"), random_split(i).into())
            }
        })
        .collect()
}
