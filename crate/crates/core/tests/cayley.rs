mod common;

use std::sync::OnceLock;

use isocayley::cayley::io::{decode_binary, export_binary, export_text, import_text};
use isocayley::cayley::*;
use isocayley::ff::{pgl_order, ExtField, Field};
use isocayley::forge::*;
use num_bigint::BigUint;

fn d3q5() -> &'static (GenSet, CayleyGraph) {
    static G: OnceLock<(GenSet, CayleyGraph)> = OnceLock::new();
    G.get_or_init(|| {
        let p = GenParams::new(5, 3, 1).unwrap();
        let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
        let g = bfs_build(&bar, 1_000_000).unwrap();
        (bar, g)
    })
}

fn small(q: u32, alpha_code: u32) -> (GenSet, CayleyGraph) {
    let o = ParamOverrides {
        alpha_code: Some(alpha_code),
        ..Default::default()
    };
    let p = GenParams::build(q, 2, 1, &o).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    let g = bfs_build(&bar, 100_000).unwrap();
    (bar, g)
}

/// Triangles as (sum over edges of common neighbors) / 3, using a marker
/// array for adjacency tests.
fn triangle_oracle(g: &CayleyGraph) -> u64 {
    let n = g.n();
    let nbrs: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            let mut v = g.out_neighbors(u).to_vec();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let mut mark = vec![false; n];
    let mut total = 0u64;
    for u in 0..n {
        for &v in &nbrs[u] {
            mark[v as usize] = true;
        }
        for &v in &nbrs[u] {
            if (v as usize) > u {
                total += nbrs[v as usize].iter().filter(|&&w| mark[w as usize]).count() as u64;
            }
        }
        for &v in &nbrs[u] {
            mark[v as usize] = false;
        }
    }
    total / 3
}

#[test]
fn projmat_canonical_form() {
    let f = Field::prime(5).unwrap();
    let m = isocayley::ff::Mat::from_rows(&[vec![0, 2, 1], vec![3, 0, 0], vec![0, 0, 4]]);
    let p = ProjMat::new(&f, &m).unwrap();
    assert_eq!(p.mat().get(0, 1), 1);
    let scaled = ProjMat::new(&f, &f.mat_scale(&m, 3)).unwrap();
    assert_eq!(p, scaled);
    assert_eq!(ProjMat::from_key(p.key(5), 3, 5), p);
    assert!(p.mul(&f, &p.inv(&f)).is_identity());
    let singular = isocayley::ff::Mat::from_rows(&[vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]]);
    assert!(ProjMat::new(&f, &singular).is_err());
}

#[test]
fn toy_cyclic_group() {
    // F_4^x acting on F_4 = F_2^2: closure of tau is a cyclic group of order 3
    let f2 = Field::prime(2).unwrap();
    let f4 = ExtField::new(f2.clone(), 2).unwrap();
    let tau = ProjMat::new(&f2, &f4.regular_rep(f4.tau())).unwrap();
    let g = CayleyGraph::build(&f2, &[tau], &[1], 10).unwrap();
    assert_eq!(g.n(), 3);
    assert_eq!(g.r(), 1);
    assert!(!g.is_symmetric());
    assert_eq!(g.out_neighbors(2), &[0]);
}

#[test]
fn small_groups_close_to_predicted_order() {
    for (q, alpha) in [(5u32, 1u32), (7, 1), (9, 3)] {
        let (bar, g) = small(q, alpha);
        let expect = expected_group_order(bar.params());
        assert_eq!(BigUint::from(g.n()), expect, "q={q}");
        assert_eq!(g.r(), bar.len());
        assert!(g.is_symmetric());
        assert!(g.edges_symmetric());
        // vertex-transitivity: same number of triangles at every vertex
        let (off, nb) = g.undirected_csr();
        let tri_at = |u: usize| {
            let nu = &nb[off[u]..off[u + 1]];
            nu.iter()
                .map(|&v| {
                    let nv = &nb[off[v as usize]..off[v as usize + 1]];
                    nu.iter().filter(|w| nv.binary_search(w).is_ok()).count()
                })
                .sum::<usize>()
        };
        let t0 = tri_at(0);
        assert!((0..g.n()).all(|u| tri_at(u) == t0));
    }
    // index 2: PGL_2(F_5), PGL_2(F_7)
    assert_eq!(small(5, 1).1.n(), 120);
    assert_eq!(small(7, 1).1.n(), 336);
}

#[test]
fn non_symmetric_set_rejected() {
    let p = GenParams::new(5, 3, 1).unwrap();
    let omega = build_omega(&p).unwrap();
    assert!(matches!(
        bfs_build(&omega, 1000),
        Err(isocayley::Error::Precondition(_))
    ));
}

#[test]
fn vertex_cap_aborts() {
    let p = GenParams::new(3, 5, 1).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    let err = bfs_build(&bar, 20_000).unwrap_err();
    assert!(matches!(err, isocayley::Error::MaxVertices(20_000)));
    assert!(err.is_resource_abort());
}

#[test]
fn d3q5_closure_and_cells() {
    let (bar, g) = d3q5();
    assert_eq!(BigUint::from(g.n()), pgl_order(3, 5));
    assert_eq!(g.n(), 372_000);
    assert_eq!(BigUint::from(g.n()), expected_group_order(bar.params()));
    assert_eq!(g.r(), 62);
    assert!(g.is_symmetric());
    assert!(g.is_connected());
    assert!(g.vertex(0).is_identity());

    let cells = clique_cells(g, 3).unwrap();
    assert_eq!(cells.counts[0], 372_000);
    assert_eq!(cells.counts[1], 372_000 * 62 / 2);
    assert_eq!(cells.counts[2], triangle_oracle(g));
    assert_eq!(cells.counts[3], 0);
    assert!(clique_cells(g, 4).is_err());
}

#[test]
fn d3q5_colored_subgraphs() {
    let (_, g) = d3q5();
    let all = g.colored_subgraph(&[1, 2]).unwrap();
    assert_eq!(&all, g);
    let one = g.colored_subgraph(&[1]).unwrap();
    assert_eq!(one.r(), 31);
    assert!(!one.is_symmetric());
    assert!(one.slot_colors().iter().all(|&c| c == 1));
    assert!(g.colored_subgraph(&[]).is_err());
}

#[test]
fn d3q5_binary_round_trip() {
    let (_, g) = d3q5();
    let mut buf = Vec::new();
    export_binary(g, &mut buf).unwrap();
    let back = decode_binary(&buf).unwrap();
    assert_eq!(&back, g);
}

#[test]
fn omega_hat_graph_is_62_regular_after_filtering() {
    let p = GenParams::new(5, 3, 2).unwrap();
    let (hat, _) = build_omega_hat(&build_omega(&p).unwrap(), 1 << 30).unwrap();
    let g = bfs_build(&hat, 1_000_000).unwrap();
    assert_eq!(g.n(), 372_000);
    let sub = g.colored_subgraph(&[1, 2]).unwrap();
    assert_eq!(sub.r(), 62);
    assert!(sub.edges_symmetric());
}

#[test]
fn text_and_binary_agree() {
    let (_, g) = small(7, 1);
    let mut text = Vec::new();
    export_text(&g, &mut text).unwrap();
    let mut bin = Vec::new();
    export_binary(&g, &mut bin).unwrap();
    let a = import_text(text.as_slice()).unwrap();
    let b = decode_binary(&bin).unwrap();
    assert_eq!(a, g);
    assert_eq!(b, g);

    let dir = tempfile::tempdir().unwrap();
    for fmt in [GraphFormat::Text, GraphFormat::Binary] {
        let path = dir.path().join(format!("g.{fmt:?}"));
        io::write_graph(&g, &path, fmt).unwrap();
        assert_eq!(io::read_graph(&path).unwrap(), g);
    }
}

#[test]
fn corrupted_files_rejected() {
    let (_, g) = small(5, 1);
    let mut bin = Vec::new();
    export_binary(&g, &mut bin).unwrap();
    // length field n lives at bytes 8..16
    let mut bad = bin.clone();
    bad[8] ^= 1;
    assert!(matches!(decode_binary(&bad), Err(isocayley::Error::Checksum { .. })));
    assert!(decode_binary(&bin[..bin.len() - 20]).is_err());
    assert!(decode_binary(&bin[..10]).is_err());

    let mut text = Vec::new();
    export_text(&g, &mut text).unwrap();
    let s = String::from_utf8(text).unwrap();
    let cut: String = s.lines().take(s.lines().count() - 3).collect::<Vec<_>>().join("\n");
    assert!(import_text(cut.as_bytes()).is_err());
    assert!(import_text(s.replace("version=1", "version=2").as_bytes()).is_err());
}

#[test]
fn parallel_builds_are_byte_identical() {
    let p = GenParams::new(5, 3, 1).unwrap();
    let bar = symmetrize(&build_omega(&p).unwrap()).unwrap();
    let export = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let g = pool.install(|| bfs_build(&bar, 1_000_000).unwrap());
        let mut buf = Vec::new();
        export_binary(&g, &mut buf).unwrap();
        buf
    };
    assert_eq!(export(1), export(3));
}
