//! Full eigendecomposition of small symmetric adjacency matrices.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};

use super::Adjacency;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::ff::field::{get, get_parsed, parse_kv};
use crate::files::write_string_atomic;

pub const DEFAULT_DENSE_CAP: usize = 5000;

/// Adjacency eigenvalues, descending, with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub n: usize,
    /// Largest out-degree.
    pub r: usize,
    pub method: String,
    /// Largest `|A v - lambda v|` over the returned eigenpairs.
    pub residual: f64,
    pub eigenvalues: Vec<(f64, usize)>,
}

impl SpectrumReport {
    /// Tolerance used for grouping and comparing eigenvalues.
    pub fn tolerance(&self) -> f64 {
        1e-8 * self.r.max(1) as f64
    }

    /// All eigenvalues with repetition, descending.
    pub fn values(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .flat_map(|&(l, m)| std::iter::repeat_n(l, m))
            .collect()
    }

    pub fn power_sum(&self, k: u32) -> f64 {
        self.eigenvalues
            .iter()
            .map(|&(l, m)| m as f64 * l.powi(k as i32))
            .sum()
    }

    pub fn multiplicity_near(&self, x: f64) -> usize {
        self.eigenvalues
            .iter()
            .filter(|(l, _)| (l - x).abs() <= self.tolerance())
            .map(|&(_, m)| m)
            .sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "version=1 n={} r={} method={} residual={:e}\n",
            self.n, self.r, self.method, self.residual
        );
        for &(l, m) in &self.eigenvalues {
            writeln!(s, "{} {m}", sig12(l)).expect("string write");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SpectrumReport> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::format("empty spectrum file"))?;
        let kv = parse_kv(header);
        if get(&kv, "version")? != "1" {
            return Err(Error::format("unsupported spectrum file version"));
        }
        let mut eigenvalues = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(l), Some(m), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::format(format!("bad spectrum line {line:?}")));
            };
            let l: f64 = l.parse().map_err(|_| Error::format(format!("bad eigenvalue {l:?}")))?;
            let m: usize = m.parse().map_err(|_| Error::format(format!("bad multiplicity {m:?}")))?;
            eigenvalues.push((l, m));
        }
        let rep = SpectrumReport {
            n: get_parsed(&kv, "n")?,
            r: get_parsed(&kv, "r")?,
            method: get(&kv, "method")?.to_string(),
            residual: get_parsed(&kv, "residual")?,
            eigenvalues,
        };
        if rep.eigenvalues.iter().map(|e| e.1).sum::<usize>() != rep.n {
            return Err(Error::format("multiplicities do not sum to n"));
        }
        Ok(rep)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string_atomic(path, &self.to_text())
    }

    pub fn read(path: &Path) -> Result<SpectrumReport> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Twelve significant digits, plain notation.
fn sig12(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" { "0".into() } else { s }
}

/// Spectrum of a Cayley graph, optionally restricted to some edge colors.
pub fn dense_spectrum(g: &CayleyGraph, colors: Option<&[u8]>, cap: usize) -> Result<SpectrumReport> {
    match colors {
        Some(c) => dense_spectrum_of(&g.colored_subgraph(c)?, cap),
        None => dense_spectrum_of(g, cap),
    }
}

/// Spectrum of any graph whose adjacency matrix is symmetric.
pub fn dense_spectrum_of(g: &dyn Adjacency, cap: usize) -> Result<SpectrumReport> {
    let n = g.order();
    if n > cap {
        return Err(Error::DenseCap { n, cap });
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut r = 0;
    for u in 0..n {
        let nb = g.out_neighbors(u);
        r = r.max(nb.len());
        for &v in nb {
            a[(u, v as usize)] += 1.0;
        }
    }
    if a != a.transpose() {
        return Err(Error::Precondition(
            "adjacency is not symmetric; compare such operators by exact walk moments".into(),
        ));
    }
    let eig = SymmetricEigen::new(a);

    let mut residual = 0f64;
    let mut av = vec![0f64; n];
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        for (u, x) in av.iter_mut().enumerate() {
            *x = g.out_neighbors(u).iter().map(|&w| v[w as usize]).sum();
        }
        let res = av
            .iter()
            .zip(v.iter())
            .map(|(x, y)| (x - lambda * y).powi(2))
            .sum::<f64>()
            .sqrt();
        residual = residual.max(res);
    }
    let tol = 1e-8 * r.max(1) as f64;
    if residual > tol {
        return Err(Error::Verification(format!(
            "eigenpair residual {residual:e} exceeds {tol:e}"
        )));
    }

    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| y.total_cmp(x));
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || vals[i - 1] - vals[i] > tol {
            if i > start {
                let mean = vals[start..i].iter().sum::<f64>() / (i - start) as f64;
                groups.push((mean, i - start));
            }
            start = i;
        }
    }
    Ok(SpectrumReport {
        n,
        r,
        method: "dense-symmetric".into(),
        residual,
        eigenvalues: groups,
    })
}
