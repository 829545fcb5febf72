mod common;

use std::collections::BTreeSet;

use common::{b1, b2, fixed_config};
use isocayley::cayley::ProjMat;
use isocayley::ff::{FiniteField, Field, Mat};
use isocayley::forge::*;
use proptest::prelude::*;

/// All nonzero proper subspaces of `F_q^d` as reduced echelon row sets,
/// by echelon-reducing every tuple of up to `d - 1` vectors.
fn all_subspaces(f: &Field, d: usize) -> BTreeSet<Vec<Vec<u8>>> {
    let q = f.q() as usize;
    let vectors: Vec<Vec<u8>> = (1..q.pow(d as u32))
        .map(|mut c| {
            (0..d)
                .map(|_| {
                    let x = (c % q) as u8;
                    c /= q;
                    x
                })
                .collect()
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut frontier: BTreeSet<Vec<Vec<u8>>> = vectors
        .iter()
        .map(|v| f.rref(std::slice::from_ref(v), d))
        .collect();
    for _ in 1..d {
        let mut next = BTreeSet::new();
        for s in &frontier {
            found.insert(s.clone());
            for v in &vectors {
                let mut rows = s.clone();
                rows.push(v.clone());
                let r = f.rref(&rows, d);
                if r.len() == s.len() + 1 && r.len() < d {
                    next.insert(r);
                }
            }
        }
        frontier = next;
    }
    found
}

fn brute_family_size(q: u64, d: u64) -> usize {
    (1..=d as usize)
        .find(|&m| {
            let x = (0..m).fold(1u64, |acc, _| acc * q % d);
            x == 1 % d || x == d - 1
        })
        .unwrap()
}

#[test]
fn omega_first_elements_match_printed() {
    let o1 = build_omega(&GenParams::new(3, 5, 1).unwrap()).unwrap();
    let o2 = build_omega(&GenParams::new(3, 5, 2).unwrap()).unwrap();
    assert_eq!(o1.len(), 121);
    assert_eq!(o1.get(0).mat, b1());
    assert_eq!(o2.get(0).mat, b2());
    assert!(o1.generators().iter().all(|g| g.color == 1));
    let o = build_omega(&GenParams::new(5, 3, 1).unwrap()).unwrap();
    assert_eq!(o.len(), (125 - 1) / 4);
}

#[test]
fn omega_conjugates_by_theta() {
    let p = GenParams::new(3, 5, 1).unwrap();
    let o = build_omega(&p).unwrap();
    let f = p.field();
    let theta = common::theta();
    let ti = f.mat_inv(&theta).unwrap();
    let mut m = b1();
    for g in o.generators().iter().take(10) {
        assert_eq!(g.mat, m);
        m = f.mat_mul(&f.mat_mul(&theta, &m), &ti);
    }
}

#[test]
fn parameter_validation() {
    assert!(GenParams::new(2, 3, 1).is_err());
    assert!(GenParams::new(6, 3, 1).is_err());
    assert!(GenParams::new(5, 4, 2).is_err());
    assert!(GenParams::with_alpha(5, 3, 1, 0).is_err());
    assert!(GenParams::with_alpha(5, 3, 1, -1).is_err());
    // over F_5, alpha = -2 gives gamma = (-1)^2 - 1 = 0
    assert!(GenParams::with_alpha(5, 2, 1, -2).is_err());
    let p = GenParams::new(5, 3, 1).unwrap();
    assert_eq!(p.gamma(), p.field().from_int(-2));
    assert!(p.warnings().iter().any(|w| w.contains("4d^2+1")));
    let big = GenParams::new(41, 3, 1).unwrap();
    assert!(big.warnings().is_empty());
    let even = GenParams::with_alpha(5, 2, 1, 1).unwrap();
    assert!(even.warnings().iter().any(|w| w.contains("odd")));
}

#[test]
fn symmetrize_sizes_and_partners() {
    for (q, d, expect) in [(3u32, 5usize, 242usize), (5, 3, 62), (7, 3, 114)] {
        let o = build_omega(&GenParams::new(q, d, 1).unwrap()).unwrap();
        let (bar, coincidences) = symmetrize_report(&o).unwrap();
        assert!(coincidences.is_empty());
        assert_eq!(bar.len(), expect);
        assert_eq!(bar.kind(), Kind::OmegaBar);
        assert!(bar.is_inverse_closed());
        let f = bar.field().clone();
        for (i, g) in bar.generators().iter().enumerate() {
            let k = g.inv.unwrap();
            assert_eq!(bar.get(k).inv, Some(i));
            assert_eq!(bar.get(k).proj, g.proj.inv(&f));
            assert_eq!((g.color + bar.get(k).color) as usize, d);
            assert!(!g.proj.is_identity());
        }
        let again = symmetrize(&bar).unwrap();
        assert_eq!(again.keys(), bar.keys());
    }
}

#[test]
fn inverse_lifts_specialize_to_inverse_matrices() {
    let p = GenParams::new(5, 3, 2).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    let alpha = p.field().elem(p.alpha()).unwrap();
    for g in bar.generators() {
        let lift = g.lift.as_ref().unwrap();
        assert_eq!(lift.specialize(&alpha).unwrap(), g.mat);
        assert_eq!(color_of(g, 3).unwrap(), g.color);
    }
}

/// Identity words of length 3 over Omega for (q, d) = (5, 3), found by
/// exhaustive enumeration and checked globally.
fn brute_force_identity_words(omega: &GenSet) -> Vec<[usize; 3]> {
    let f = omega.field().clone();
    let n = omega.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = f.mat_mul(&omega.get(a).mat, &omega.get(b).mat);
            for c in 0..n {
                let m = f.mat_mul(&ab, &omega.get(c).mat);
                if ProjMat::new(&f, &m).unwrap().is_identity() {
                    let l = |i: usize| omega.get(i).lift.clone().unwrap();
                    let g = l(a).mul(&l(b)).unwrap().mul(&l(c)).unwrap();
                    if g.as_central().is_some() {
                        out.push([a, b, c]);
                    }
                }
            }
        }
    }
    out
}

fn complete_flags(f: &Field, d: usize) -> usize {
    let subs = all_subspaces(f, d);
    // chains V_1 < V_2 < ... < V_{d-1}; count by dynamic programming on dim
    let by_dim = |k: usize| subs.iter().filter(move |s| s.len() == k);
    let contains = |small: &Vec<Vec<u8>>, big: &Vec<Vec<u8>>| {
        let mut rows = big.clone();
        rows.extend(small.iter().cloned());
        f.rref(&rows, d).len() == big.len()
    };
    let mut counts: Vec<(Vec<Vec<u8>>, usize)> = by_dim(1).map(|s| (s.clone(), 1)).collect();
    for k in 2..d {
        counts = by_dim(k)
            .map(|big| {
                let c = counts
                    .iter()
                    .filter(|(small, _)| contains(small, big))
                    .map(|(_, c)| c)
                    .sum();
                (big.clone(), c)
            })
            .collect();
    }
    counts.iter().map(|(_, c)| c).sum()
}

#[test]
fn omega_hat_small_case_matches_brute_force() {
    let p = GenParams::new(5, 3, 1).unwrap();
    let omega = build_omega(&p).unwrap();
    let (hat, report) = build_omega_hat(&omega, 1 << 30).unwrap();
    assert_eq!(hat.len(), 62);
    assert_eq!(hat.color_counts(), vec![0, 31, 31]);

    let words = brute_force_identity_words(&omega);
    assert_eq!(report.verified as usize, words.len());
    assert_eq!(words.len(), complete_flags(p.field(), 3));
    assert_eq!(words.len(), 186);

    let f = p.field().clone();
    let q = p.q();
    let mut brute_keys = BTreeSet::new();
    for w in &words {
        brute_keys.insert(omega.get(w[0]).proj.key(q));
        let ab = f.mat_mul(&omega.get(w[0]).mat, &omega.get(w[1]).mat);
        brute_keys.insert(ProjMat::new(&f, &ab).unwrap().key(q));
    }
    let hat_keys: BTreeSet<u128> = hat.keys().into_iter().collect();
    assert_eq!(hat_keys, brute_keys);

    // for d = 3 Omega-hat and Omega-bar coincide as sets
    let bar: BTreeSet<u128> = symmetrize(&omega).unwrap().keys().into_iter().collect();
    assert_eq!(hat_keys, bar);
}

#[test]
fn omega_hat_equals_omega_bar_for_q7() {
    let p = GenParams::new(7, 3, 2).unwrap();
    let omega = build_omega(&p).unwrap();
    let (hat, _) = build_omega_hat(&omega, 1 << 30).unwrap();
    let bar: BTreeSet<u128> = symmetrize(&omega).unwrap().keys().into_iter().collect();
    assert_eq!(hat.keys().into_iter().collect::<BTreeSet<_>>(), bar);
}

#[test]
fn omega_hat_structure() {
    let p = GenParams::new(5, 3, 2).unwrap();
    let (hat, report) = build_omega_hat(&build_omega(&p).unwrap(), 1 << 30).unwrap();
    assert_eq!(report.rejected + report.verified, report.candidates);
    assert!(hat.is_inverse_closed());
    let alpha = p.field().elem(p.alpha()).unwrap();
    for (i, g) in hat.generators().iter().enumerate() {
        assert_eq!(g.word.len(), g.color as usize);
        assert_eq!(g.j, g.word[0] as usize);
        assert_eq!(g.lift.as_ref().unwrap().specialize(&alpha).unwrap(), g.mat);
        let partner = hat.get(g.inv.unwrap());
        assert_eq!(partner.inv, Some(i));
        assert_eq!(partner.color, 3 - g.color);
    }
    // ordered by color, then witness
    let order: Vec<(u8, Vec<u32>)> = hat
        .generators()
        .iter()
        .map(|g| (g.color, g.word.clone()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn omega_hat_rejects_bad_input() {
    let p = GenParams::new(5, 3, 1).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    assert!(matches!(build_omega_hat(&bar, 1 << 30), Err(isocayley::Error::Precondition(_))));
    let omega = build_omega(&p).unwrap();
    assert!(matches!(
        build_omega_hat(&omega, 1000),
        Err(isocayley::Error::MemoryBudget { .. })
    ));
    let big = build_omega(&GenParams::new(3, 7, 1).unwrap()).unwrap();
    let err = build_omega_hat(&big, 8 << 30).unwrap_err();
    assert!(err.is_resource_abort());
}

#[test]
fn colors_of_products() {
    let p = GenParams::new(3, 5, 1).unwrap();
    let omega = build_omega(&p).unwrap();
    let bar = symmetrize(&omega).unwrap();
    assert!(bar.generators()[..121].iter().all(|g| color_of(g, 5).unwrap() == 1));
    assert!(bar.generators()[121..].iter().all(|g| color_of(g, 5).unwrap() == 4));
    let prod = omega.get(3).lift.as_ref().unwrap().mul(omega.get(40).lift.as_ref().unwrap()).unwrap();
    let g = Generator {
        lift: Some(prod),
        ..omega.get(0).clone()
    };
    assert_eq!(color_of(&g, 5).unwrap(), 2);
    let no_lift = Generator {
        lift: None,
        ..omega.get(0).clone()
    };
    assert!(color_of(&no_lift, 5).is_err());
}

#[test]
fn attached_subspaces_small_cases() {
    for (q, d, alpha) in [(3u32, 3usize, -2i64), (5, 3, -2), (7, 3, -2), (5, 2, 1)] {
        let p = GenParams::with_alpha(q, d, 1, alpha).unwrap();
        let omega = build_omega(&p).unwrap();
        let (hat, _) = build_omega_hat(&omega, 1 << 30).unwrap();
        let mut seen = BTreeSet::new();
        for g in hat.generators() {
            let s = attach_subspace(g).unwrap();
            assert_eq!(s.len(), d - g.color as usize);
            assert!(seen.insert(s), "q={q} d={d}: repeated subspace");
        }
        assert_eq!(seen, all_subspaces(p.field(), d), "q={q} d={d}");
    }
}

#[test]
fn attached_subspace_of_omega_element() {
    let p = GenParams::new(3, 5, 1).unwrap();
    let omega = build_omega(&p).unwrap();
    let s = attach_subspace(omega.get(7)).unwrap();
    assert_eq!(s.len(), 4);
    let id = Generator {
        lift: Some(p.alg().one()),
        ..omega.get(0).clone()
    };
    assert!(matches!(attach_subspace(&id), Err(isocayley::Error::Precondition(_))));
}

#[test]
fn psl_membership_and_index() {
    let p = GenParams::new(3, 5, 1).unwrap();
    assert_eq!(p.gamma(), 1);
    assert_eq!(expected_index(&p), 1);
    let f = p.field().clone();
    assert_eq!(psl_check(&f, &ProjMat::identity(5)), PslStatus::InPsl);
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    assert!(bar.generators().iter().all(|g| psl_check(&f, &g.proj) == PslStatus::InPsl));

    assert_eq!(expected_index(&GenParams::new(5, 3, 1).unwrap()), 1);
    let p2 = GenParams::with_alpha(5, 2, 1, 1).unwrap();
    assert_eq!(expected_index(&p2), 2);
    let f5 = p2.field().clone();
    let m = ProjMat::new(&f5, &Mat::from_rows(&[vec![2, 0], vec![0, 1]])).unwrap();
    assert_eq!(psl_check(&f5, &m), PslStatus::InPglOnly);
    assert_eq!(psl_check(&f5, &m.pow(&f5, 2)), PslStatus::InPsl);
}

#[test]
fn family_sizes_and_power_identity() {
    for (q, d) in [(3u64, 5u64), (3, 7), (5, 3), (7, 3), (4, 5), (7, 5)] {
        assert_eq!(isocayley::ff::family_size(q, d).unwrap(), brute_family_size(q, d));
    }
    let p = GenParams::new(3, 5, 1).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    let fam = family(&bar).unwrap();
    assert_eq!(fam.len(), 2);
    assert_eq!(fam[0].keys(), bar.keys());
    assert_eq!(fam[1].params().s(), 3);
    assert!(fam[1].generators().iter().all(|g| g.lift.is_none()));

    let p7 = GenParams::new(3, 7, 1).unwrap();
    let bar7 = symmetrize(&build_omega(&p7).unwrap()).unwrap();
    assert_eq!(bar7.len(), 2 * 1093);
    let fam7 = family(&bar7).unwrap();
    assert_eq!(fam7.len(), 3);
    assert_eq!(
        fam7.iter().map(|s| s.params().s()).collect::<Vec<_>>(),
        vec![1, 3, 2]
    );

    let p53 = GenParams::new(5, 3, 1).unwrap();
    let one = family(&symmetrize(&build_omega(&p53).unwrap()).unwrap()).unwrap();
    assert_eq!(one.len(), 1);
    assert!(family(&build_omega(&p53).unwrap()).is_err());
}

#[test]
fn genset_file_round_trip() {
    let p = GenParams::new(5, 3, 1).unwrap();
    let omega = build_omega(&p).unwrap();
    let (hat, _) = build_omega_hat(&omega, 1 << 30).unwrap();
    for set in [omega.clone(), symmetrize(&omega).unwrap(), hat] {
        let text = set.to_text();
        let back = GenSet::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.kind(), set.kind());
        assert_eq!(back.keys(), set.keys());
        assert_eq!(back.hash(), set.hash());
    }
    let text = omega.to_text();
    assert!(text.starts_with("version=1 kind=omega q=5 d=3 s=1 alpha=3 mod="));
    assert!(GenSet::from_text(&text.replace("version=1", "version=9")).is_err());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("omega.gens");
    omega.write(&path).unwrap();
    assert_eq!(GenSet::read(&path).unwrap().to_text(), text);
}

#[test]
fn printed_generator_file_entry() {
    let p = GenParams::new(3, 5, 1).unwrap();
    let text = build_omega(&p).unwrap().to_text();
    let line = text.lines().nth(1).unwrap();
    assert!(line.starts_with("idx=0 j=0 color=1 inv=- mat=2;1;2;0;1;0;2;2;1;2;"));
}

proptest! {
    #![proptest_config(fixed_config(32))]

    #[test]
    fn omega_conjugation_route_agrees(j in 0usize..121, s in 1usize..5) {
        let p = GenParams::new(3, 5, s).unwrap();
        let o = build_omega(&p).unwrap();
        let f = p.field();
        let theta = p.ext().regular_rep(p.unit());
        let tj = f.mat_pow(&theta, j as u64);
        let tji = f.mat_inv(&tj).unwrap();
        prop_assert_eq!(&o.get(j).mat, &f.mat_mul(&f.mat_mul(&tj, &o.get(0).mat), &tji));
    }
}
