mod common;

use std::f64::consts::PI;

use isocayley::cayley::{bfs_build, CayleyGraph};
use isocayley::forge::*;
use isocayley::spectra::{Strategy as WalkStrategy, *};
use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, Just, Strategy};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn d2_bar(q: u32, alpha_code: u32) -> GenSet {
    let o = ParamOverrides {
        alpha_code: Some(alpha_code),
        ..Default::default()
    };
    let p = GenParams::build(q, 2, 1, &o).unwrap();
    symmetrize(&build_omega(&p).unwrap()).unwrap()
}

fn d3q5_bar(s: usize) -> GenSet {
    let p = GenParams::new(5, 3, s).unwrap();
    symmetrize(&build_omega(&p).unwrap()).unwrap()
}

/// Closed-walk counts from integer matrix powers.
fn trace_powers(g: &dyn Adjacency, k: usize) -> Vec<i128> {
    let n = g.order();
    let mut a = vec![0i128; n * n];
    for u in 0..n {
        for &v in g.out_neighbors(u) {
            a[u * n + v as usize] += 1;
        }
    }
    let mut p = vec![0i128; n * n];
    for i in 0..n {
        p[i * n + i] = 1;
    }
    let mut out = vec![n as i128];
    for _ in 0..k {
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = p[i * n + l];
                if x != 0 {
                    for j in 0..n {
                        next[i * n + j] += x * a[l * n + j];
                    }
                }
            }
        }
        p = next;
        out.push((0..n).map(|i| p[i * n + i]).sum());
    }
    out
}

/// Shrikhande graph and the 4x4 rook's graph: both Cayley graphs of
/// `Z/4 x Z/4`, strongly regular with the same parameters.
fn z4z4(conn: &[(i64, i64)]) -> AdjList {
    let lists: Vec<Vec<u32>> = (0..16)
        .map(|u| {
            let (x, y) = (u as i64 / 4, u as i64 % 4);
            conn.iter()
                .map(|&(a, b)| ((x + a).rem_euclid(4) * 4 + (y + b).rem_euclid(4)) as u32)
                .collect()
        })
        .collect();
    AdjList::from_lists(&lists)
}

fn shrikhande() -> AdjList {
    z4z4(&[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
}

fn rook() -> AdjList {
    z4z4(&[(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3)])
}

#[test]
fn low_moments_match_pair_enumeration() {
    let bar = d3q5_bar(1);
    let f = bar.field();
    let projs = bar.projs();
    // oracle: generator pairs multiplying to the identity
    let mut pairs = 0u128;
    for a in &projs {
        assert!(!a.is_identity());
        for b in &projs {
            if a.mul(f, b).is_identity() {
                pairs += 1;
            }
        }
    }
    let m = walk_moments(&bar, 2, WalkStrategy::BallMitm, None, &MomentOptions::default()).unwrap();
    assert_eq!(m.counts, vec![1, 0, pairs]);
    assert_eq!(pairs, 62);
}

#[test]
fn strategies_agree_on_small_groups() {
    let opts = MomentOptions::default();
    for (q, a) in [(5, 1), (7, 1), (9, 3)] {
        let bar = d2_bar(q, a);
        let x = walk_moments(&bar, 8, WalkStrategy::GroupDp, None, &opts).unwrap();
        let y = walk_moments(&bar, 8, WalkStrategy::BallMitm, None, &opts).unwrap();
        assert_eq!(x, y, "q={q}");
        assert!(x.counts.iter().skip(2).step_by(2).all(|&n| n > 0));
    }
    let bar = d3q5_bar(1);
    let x = walk_moments(&bar, 6, WalkStrategy::GroupDp, None, &opts).unwrap();
    let y = walk_moments(&bar, 6, WalkStrategy::BallMitm, None, &opts).unwrap();
    assert_eq!(x, y);
}

#[test]
fn moments_match_traces_and_spectra() {
    for (q, a) in [(5, 1), (7, 1), (9, 3)] {
        let bar = d2_bar(q, a);
        let g = bfs_build(&bar, 10_000).unwrap();
        let n = g.n();
        let m = walk_moments(&bar, 6, WalkStrategy::GroupDp, None, &MomentOptions::default()).unwrap();
        let tr = trace_powers(&g, 6);
        let spec = dense_spectrum(&g, None, DEFAULT_DENSE_CAP).unwrap();
        for k in 0..=6 {
            assert_eq!(tr[k], n as i128 * m.counts[k] as i128, "q={q} k={k}");
            let scale: f64 = spec
                .eigenvalues
                .iter()
                .map(|&(l, c)| c as f64 * l.abs().powi(k as i32))
                .sum();
            let exact = tr[k] as f64;
            assert!((spec.power_sum(k as u32) - exact).abs() <= 1e-6 * scale.max(exact.abs()));
        }
        let r = g.r() as f64;
        assert!((spec.eigenvalues[0].0 - r).abs() < 1e-9);
        assert_eq!(spec.eigenvalues[0].1, 1);
        assert!(spec.power_sum(1).abs() < 1e-6);
        assert!((spec.power_sum(2) - (n * g.r()) as f64).abs() < 1e-6);
        assert!(spec.residual <= 1e-8 * r);
        assert_eq!(spec.values().len(), n);
    }
}

#[test]
fn color_decomposition() {
    let bar = d3q5_bar(1);
    let opts = MomentOptions::default();
    let all = walk_moments(&bar, 4, WalkStrategy::GroupDp, None, &opts).unwrap();
    let listed = walk_moments(&bar, 4, WalkStrategy::GroupDp, Some(&[2, 1]), &opts).unwrap();
    assert_eq!(all.counts, listed.counts);
    assert_eq!(listed.colors, Some(vec![1, 2]));

    // color-1 words alone: non-symmetric set, both strategies
    let c1 = walk_moments(&bar, 6, WalkStrategy::GroupDp, Some(&[1]), &opts).unwrap();
    let c1m = walk_moments(&bar, 6, WalkStrategy::BallMitm, Some(&[1]), &opts).unwrap();
    assert_eq!(c1.counts, c1m.counts);
    assert_eq!(c1.counts[1], 0);
    assert_eq!(c1.counts[2], 0);

    let g = bfs_build(&bar, 1_000_000).unwrap();
    for half in 1..=3 {
        let p: Vec<u8> = (0..half).flat_map(|_| [1u8, 2]).collect();
        let sw: Vec<u8> = (0..half).flat_map(|_| [2u8, 1]).collect();
        let x = pattern_moment(&g, &p).unwrap();
        assert_eq!(x, pattern_moment(&g, &sw).unwrap());
        assert!(x > 0);
    }
    assert!(matches!(
        walk_moments(&bar, 2, WalkStrategy::GroupDp, Some(&[4]), &opts),
        Err(isocayley::Error::InvalidParameter(_))
    ));
}

#[test]
fn resource_limits() {
    let bar = d3q5_bar(1);
    let tight = MomentOptions {
        max_vertices: 10_000_000,
        mem_budget: 1 << 20,
    };
    let e = walk_moments(&bar, 4, WalkStrategy::GroupDp, None, &tight).unwrap_err();
    assert!(e.is_resource_abort());
    let e = walk_moments(&bar, 8, WalkStrategy::BallMitm, None, &tight).unwrap_err();
    assert!(e.is_resource_abort());
    let g = bfs_build(&bar, 1_000_000).unwrap();
    assert!(matches!(
        dense_spectrum(&g, None, DEFAULT_DENSE_CAP),
        Err(isocayley::Error::DenseCap { .. })
    ));
    let small = bfs_build(&d2_bar(5, 1), 1000).unwrap();
    let one_color = small.colored_subgraph(&[1]).unwrap();
    if !one_color.is_symmetric() {
        assert!(dense_spectrum_of(&one_color, 5000).is_err());
    }
}

#[test]
fn circulant_spectra_against_fourier_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let n = 64usize;
    let mut pick = || {
        let mut half: Vec<i64> = (1..32).collect();
        half.shuffle(&mut rng);
        let mut c: Vec<i64> = half[..3].iter().flat_map(|&x| [x, -x]).collect();
        c.sort();
        c
    };
    let (ca, cb) = (pick(), pick());
    let oracle = |conn: &[i64]| {
        let mut v: Vec<f64> = (0..n)
            .map(|j| conn.iter().map(|&c| (2.0 * PI * (j as i64 * c) as f64 / n as f64).cos()).sum())
            .collect();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    };
    let (oa, ob) = (oracle(&ca), oracle(&cb));
    let sa = dense_spectrum_of(&AdjList::circulant(n, &ca), 5000).unwrap();
    let sb = dense_spectrum_of(&AdjList::circulant(n, &cb), 5000).unwrap();
    for (x, y) in sa.values().iter().zip(&oa) {
        assert!((x - y).abs() < 1e-8 * 6.0);
    }
    for (x, y) in sb.values().iter().zip(&ob) {
        assert!((x - y).abs() < 1e-8 * 6.0);
    }
    let same = oa.iter().zip(&ob).all(|(x, y)| (x - y).abs() < 1e-8 * 6.0);
    let rep = compare_spectra(&sa, &sb);
    assert_eq!(rep.verdict == Verdict::Equal, same);
}

#[test]
fn cospectral_strongly_regular_pair() {
    let (s, r) = (shrikhande(), rook());
    let budget = IsoBudget::default();
    let spec = compare_graphs(&s, &r, CompareMode::Spectrum, 5000, &budget, true).unwrap();
    assert_eq!(spec.verdict, Verdict::Equal);
    let wl = compare_graphs(&s, &r, CompareMode::Wl, 5000, &budget, true).unwrap();
    assert_eq!(wl.verdict, Verdict::PossiblyIsomorphic);
    let iso = compare_graphs(&s, &r, CompareMode::Iso, 5000, &budget, true).unwrap();
    assert_eq!(iso.verdict, Verdict::NonIsomorphic);
    // without the transitivity shortcut the answer is the same
    assert_eq!(find_isomorphism(&s, &r, false, &budget), IsoOutcome::NonIsomorphic);
    let sp = dense_spectrum_of(&s, 5000).unwrap();
    assert_eq!(sp.multiplicity_near(6.0), 1);
    assert_eq!(sp.multiplicity_near(2.0), 6);
    assert_eq!(sp.multiplicity_near(-2.0), 9);
}

#[test]
fn relabeled_graphs_are_found_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = AdjList::circulant(40, &[1, -1, 5, -5, 12, -12]);
    let mut perm: Vec<u32> = (0..40).collect();
    perm.shuffle(&mut rng);
    let h = g.relabel(&perm);
    match find_isomorphism(&g, &h, false, &IsoBudget::default()) {
        IsoOutcome::Isomorphic(map) => {
            for u in 0..40 {
                let mut x: Vec<u32> = g.out_neighbors(u).iter().map(|&v| map[v as usize]).collect();
                let mut y = h.out_neighbors(map[u] as usize).to_vec();
                x.sort();
                y.sort();
                assert_eq!(x, y);
            }
        }
        other => panic!("expected isomorphism, got {other:?}"),
    }
    let tiny = IsoBudget {
        max_nodes: 1,
        ..Default::default()
    };
    let other = AdjList::circulant(40, &[1, -1, 3, -3, 12, -12]);
    let out = find_isomorphism(&g, &other, false, &tiny);
    assert!(matches!(out, IsoOutcome::Timeout { .. } | IsoOutcome::NonIsomorphic));
}

#[test]
fn self_comparison_is_positive_in_every_mode() {
    let bar = d2_bar(7, 1);
    let g: CayleyGraph = bfs_build(&bar, 1000).unwrap();
    let budget = IsoBudget::default();
    for mode in [CompareMode::Spectrum, CompareMode::Wl, CompareMode::Iso] {
        let rep = compare_graphs(&g, &g, mode, 5000, &budget, true).unwrap();
        assert!(rep.verdict.is_positive(), "{mode:?}");
    }
    let m = walk_moments(&bar, 6, WalkStrategy::BallMitm, None, &MomentOptions::default()).unwrap();
    let rep = compare_moments(&m, &m).unwrap();
    assert_eq!(rep.verdict, Verdict::Equal);
    assert_eq!(rep.detail("evidence"), Some("partial:moments-up-to-K"));

    let mut other = m.clone();
    other.counts[4] += 1;
    let rep = compare_moments(&m, &other).unwrap();
    assert_eq!(rep.verdict, Verdict::Different);
    assert_eq!(rep.detail("first_difference"), Some("4"));
    other.counts.pop();
    assert!(compare_moments(&m, &other).is_err());

    let small = bfs_build(&d2_bar(5, 1), 1000).unwrap();
    let rep = compare_graphs(&g, &small, CompareMode::Wl, 5000, &budget, true).unwrap();
    assert_eq!(rep.verdict, Verdict::NonIsomorphic);
    assert_eq!(rep.detail("reason"), Some("order-or-degree-mismatch"));
}

#[test]
fn report_files_round_trip() {
    let bar = d2_bar(5, 1);
    let g = bfs_build(&bar, 1000).unwrap();
    let m = walk_moments(&bar, 5, WalkStrategy::GroupDp, Some(&[1]), &MomentOptions::default()).unwrap();
    let text = m.to_text();
    assert!(text.starts_with(&format!("version=1 genset={} colors=1 K=5\n0 1\n", bar.hash())));
    assert_eq!(MomentSeq::from_text(&text).unwrap(), m);
    assert!(MomentSeq::from_text(&text.replace("K=5", "K=6")).is_err());

    let s = dense_spectrum(&g, None, 5000).unwrap();
    let back = SpectrumReport::from_text(&s.to_text()).unwrap();
    assert_eq!(compare_spectra(&s, &back).verdict, Verdict::Equal);
    assert_eq!(back.eigenvalues.len(), s.eigenvalues.len());

    let mut rep = compare_graphs(&g, &g, CompareMode::Iso, 5000, &IsoBudget::default(), true).unwrap();
    rep.details.push(("note".into(), "x".into()));
    assert_eq!(ComparisonReport::from_text(&rep.to_text()).unwrap(), rep);
    assert!(rep.to_text().contains("verdict=isomorphic\n"));
}

fn symmetric_circulant() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (5usize..20).prop_flat_map(|n| {
        let max = (n / 2) as i64;
        (Just(n), proptest::collection::vec(1..=max, 1..4))
    })
}

proptest! {
    #![proptest_config(common::fixed_config(100))]

    #[test]
    fn dense_power_sums_match_integer_traces((n, half) in symmetric_circulant()) {
        let conn: Vec<i64> = half.iter().flat_map(|&c| [c, -c]).collect();
        let g = AdjList::circulant(n, &conn);
        let s = dense_spectrum_of(&g, 5000).unwrap();
        let tr = trace_powers(&g, 6);
        for (k, &t) in tr.iter().enumerate() {
            let scale: f64 = s.values().iter().map(|l| l.abs().powi(k as i32)).sum();
            prop_assert!((s.power_sum(k as u32) - t as f64).abs() <= 1e-6 * scale.max(1.0));
        }
    }

    #[test]
    fn wl_certificate_is_relabeling_invariant(seed in any::<u64>(), (n, half) in symmetric_circulant()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn: Vec<i64> = half.iter().flat_map(|&c| [c, -c]).collect();
        // add a pendant-like asymmetry so refinement has work to do
        let base = AdjList::circulant(n, &conn);
        let mut lists: Vec<Vec<u32>> = (0..n).map(|u| base.out_neighbors(u).to_vec()).collect();
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        lists[a].push(b as u32);
        lists[b].push(a as u32);
        let g = AdjList::from_lists(&lists);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut rng);
        prop_assert_eq!(wl_certificate(&g), wl_certificate(&g.relabel(&perm)));
    }
}
