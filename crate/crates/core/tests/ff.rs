mod common;

use std::sync::Arc;

use isocayley::ff::poly::is_irreducible;
use isocayley::ff::*;
use proptest::prelude::*;

use common::fixed_config;

fn towers() -> Vec<Arc<ExtField>> {
    [(3, 1, 5), (5, 1, 3), (3, 2, 2), (7, 1, 3), (2, 1, 4)]
        .into_iter()
        .map(|(p, f, d)| ExtField::new(Field::new(p, f).unwrap(), d).unwrap())
        .collect()
}

/// Monic polynomials of degree `deg` over a field of order `q`.
fn monic(q: u32, deg: usize) -> impl Iterator<Item = Poly> {
    (0..q.pow(deg as u32)).map(move |mut c| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(c % q);
            c /= q;
        }
        coeffs.push(1);
        Poly::from_coeffs(coeffs)
    })
}

/// Trial division by every monic polynomial of degree at most `deg / 2`.
fn irreducible_by_trial(p: &Poly, f: &Field) -> bool {
    let deg = p.degree().unwrap();
    (1..=deg / 2).all(|k| monic(f.q(), k).all(|m| !p.rem(&m, f).is_zero()))
}

fn random_monic(f: &Field, deg: usize, seed: &[u32]) -> Poly {
    let mut c: Vec<u32> = seed[..deg].iter().map(|&x| x % f.q()).collect();
    c.push(1);
    Poly::from_coeffs(c)
}

#[test]
fn irreducibility_agrees_with_trial_division() {
    for f in [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::new(2, 2).unwrap()] {
        for deg in 1..=4 {
            for p in monic(f.q(), deg) {
                assert_eq!(is_irreducible(&p, f.as_ref()), irreducible_by_trial(&p, &f), "{p:?}");
            }
        }
    }
}

#[test]
fn gaussian_binomials_count_subspaces() {
    // q-Pascal recursion as the oracle
    fn pascal(d: u32, i: u32, q: u64) -> u128 {
        if i == 0 || i == d {
            return 1;
        }
        pascal(d - 1, i - 1, q) + (q as u128).pow(i) * pascal(d - 1, i, q)
    }
    for q in [2u64, 3, 4, 5, 7] {
        for d in 1..7 {
            for i in 0..=d {
                assert_eq!(gaussian_binomial(d, i, q).unwrap(), pascal(d, i, q).into());
            }
        }
    }
    let total: num_bigint::BigUint = (1..5).map(|i| gaussian_binomial(5, i, 3).unwrap()).sum();
    assert_eq!(total, 2662u32.into());
    assert_eq!(pgl_order(3, 5), 372_000u32.into());
}

proptest! {
    #![proptest_config(fixed_config(128))]

    #[test]
    fn frobenius_is_a_field_automorphism(which in 0usize..5, a in any::<u32>(), b in any::<u32>(), i in 0usize..8) {
        let e = &towers()[which];
        let n = e.order();
        let (a, b) = (a % n, b % n);
        let d = e.degree();
        let i = i % d;
        prop_assert_eq!(e.frobenius(e.add(a, b), i), e.add(e.frobenius(a, i), e.frobenius(b, i)));
        prop_assert_eq!(e.frobenius(e.mul(a, b), i), e.mul(e.frobenius(a, i), e.frobenius(b, i)));
        prop_assert_eq!(e.frobenius(a, i), e.pow(a, (e.base().q() as u64).pow(i as u32)));
        prop_assert_eq!(e.frobenius(e.frobenius(a, i), d - i), a);
        prop_assert_eq!(e.frobenius(a, 1) == a, e.in_base(a));
        // matrix form acts on coordinates
        let m = e.frobenius_matrix(i).unwrap();
        let coords: Vec<u8> = e.coords(a).iter().map(|&c| c as u8).collect();
        let img: Vec<u32> = e.base().mat_apply(&m, &coords).iter().map(|&c| c as u32).collect();
        prop_assert_eq!(img, e.coords(e.frobenius(a, i)));
    }

    #[test]
    fn regular_representation_is_a_ring_map(which in 0usize..5, a in any::<u32>(), b in any::<u32>()) {
        let e = &towers()[which];
        let n = e.order();
        let (a, b) = (a % n, b % n);
        let f = e.base();
        prop_assert_eq!(e.regular_rep(e.mul(a, b)), f.mat_mul(&e.regular_rep(a), &e.regular_rep(b)));
        prop_assert_eq!(e.regular_rep(e.add(a, b)), f.mat_add(&e.regular_rep(a), &e.regular_rep(b)));
        if a != 0 {
            let ia = e.inv(a).unwrap();
            prop_assert_eq!(e.mul(a, ia), 1);
            prop_assert_eq!(e.pow(a, n as u64 - 1), 1);
        }
    }

    #[test]
    fn product_formula(q_idx in 0usize..3, seed in proptest::collection::vec(any::<u32>(), 40), exps in proptest::collection::vec(-3i64..4, 4)) {
        let f = [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::new(3, 2).unwrap()][q_idx].clone();
        let ff = f.as_ref();
        // distinct monic irreducibles other than t
        let mut places: Vec<Poly> = Vec::new();
        for (k, chunk) in seed.chunks(4).enumerate() {
            let deg = 1 + k % 3;
            let p = random_monic(&f, deg, chunk);
            if p.coeff(0) != 0 && irreducible_by_trial(&p, &f) && !places.contains(&p) {
                places.push(p);
            }
        }
        places.truncate(3);
        let mut x = RatFunc::constant(1 + seed[0] % (f.q() - 1));
        let t_exp = exps[3];
        x = x.mul(&RatFunc::t().pow(t_exp, ff).unwrap(), ff);
        for (p, &e) in places.iter().zip(&exps) {
            x = x.mul(&RatFunc::from_poly(p.clone()).pow(e, ff).unwrap(), ff);
        }
        let mut total = x.valuation(&Place::Zero, ff) + x.valuation(&Place::Infinity, ff);
        prop_assert_eq!(x.valuation(&Place::Zero, ff), t_exp);
        for (p, &e) in places.iter().zip(&exps) {
            let v = x.valuation(&Place::Finite(p.clone()), ff);
            prop_assert_eq!(v, e);
            total += v * p.degree().unwrap() as i64;
        }
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn valuations_are_additive(a in proptest::collection::vec(0u32..5, 1..6), b in proptest::collection::vec(0u32..5, 1..6), c in proptest::collection::vec(0u32..5, 1..6)) {
        let f = Field::prime(5).unwrap();
        let ff = f.as_ref();
        prop_assume!(a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0) && c.iter().any(|&x| x != 0));
        let x = RatFunc::new(Poly::from_coeffs(a), Poly::from_coeffs(c.clone()), ff).unwrap();
        let y = RatFunc::new(Poly::from_coeffs(b), Poly::from_coeffs(c), ff).unwrap();
        for place in [Place::Zero, Place::Infinity, Place::Finite(Poly::linear(1, 1)), Place::Finite(Poly::from_coeffs(vec![2, 0, 1]))] {
            prop_assert_eq!(x.mul(&y, ff).valuation(&place, ff), x.valuation(&place, ff) + y.valuation(&place, ff));
        }
    }
}
