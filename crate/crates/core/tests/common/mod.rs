#![allow(dead_code)]

use std::sync::Arc;

use isocayley::cyclic::CycAlg;
use isocayley::ff::{ExtField, Field, Mat};

pub fn mat5(rows: [[u32; 5]; 5]) -> Mat {
    Mat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Frobenius `x -> x^3` on `F_243 = F_3[t | t^5 = t + 1]`, basis `1, t, .., t^4`.
pub fn phi1() -> Mat {
    mat5([
        [1, 0, 0, 1, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 1, 0, 1],
        [0, 1, 0, 0, 2],
        [0, 0, 0, 1, 1],
    ])
}

/// Multiplication by `t` on `F_243`.
pub fn theta() -> Mat {
    mat5([
        [0, 0, 0, 0, 1],
        [1, 0, 0, 0, 1],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
    ])
}

/// `1 - z^{-1}` specialized for `sigma = Frobenius`, `alpha = 1`.
pub fn b1() -> Mat {
    mat5([
        [2, 1, 2, 0, 1],
        [0, 2, 2, 1, 2],
        [0, 2, 0, 0, 1],
        [0, 2, 1, 1, 2],
        [0, 1, 2, 0, 0],
    ])
}

/// `1 - z^{-1}` specialized for `sigma = Frobenius^2`, `alpha = 1`.
pub fn b2() -> Mat {
    mat5([
        [2, 1, 1, 1, 1],
        [0, 1, 2, 1, 1],
        [0, 1, 2, 2, 2],
        [0, 0, 1, 0, 0],
        [0, 1, 1, 1, 0],
    ])
}

pub fn f243() -> Arc<ExtField> {
    ExtField::new(Field::prime(3).unwrap(), 5).unwrap()
}

pub fn alg(q: u32, d: usize, s: usize) -> Arc<CycAlg> {
    let base = prime_power_field(q);
    CycAlg::new(ExtField::new(base, d).unwrap(), s).unwrap()
}

fn smallest_prime_factor(n: u32) -> u32 {
    (2..=n).find(|p| n % p == 0).unwrap()
}

pub fn prime_power_field(q: u32) -> Arc<Field> {
    let p = smallest_prime_factor(q);
    let mut f = 1;
    let mut x = p;
    while x < q {
        x *= p;
        f += 1;
    }
    assert_eq!(x, q, "{q} is not a prime power");
    Field::new(p, f).unwrap()
}

pub fn fixed_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x15_0ca7),
        failure_persistence: None,
        ..Default::default()
    }
}
