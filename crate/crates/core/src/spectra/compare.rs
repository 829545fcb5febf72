//! Comparison verdicts between moment sequences, spectra and graphs.

use std::fmt::Write as _;
use std::path::Path;

use super::dense::{dense_spectrum_of, SpectrumReport};
use super::iso::{find_isomorphism, IsoBudget, IsoOutcome};
use super::moments::MomentSeq;
use super::wl::wl_certificate;
use super::Adjacency;
use crate::error::{Error, Result};
use crate::ff::field::{get, parse_kv};
use crate::files::write_string_atomic;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareMode {
    Moments,
    Spectrum,
    Wl,
    Iso,
}

impl CompareMode {
    pub fn name(self) -> &'static str {
        match self {
            CompareMode::Moments => "moments",
            CompareMode::Spectrum => "spectrum",
            CompareMode::Wl => "wl",
            CompareMode::Iso => "iso",
        }
    }

    pub fn parse(s: &str) -> Result<CompareMode> {
        match s {
            "moments" => Ok(CompareMode::Moments),
            "spectrum" => Ok(CompareMode::Spectrum),
            "wl" => Ok(CompareMode::Wl),
            "iso" => Ok(CompareMode::Iso),
            _ => Err(Error::invalid(format!("unknown compare mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Different,
    /// Equal WL certificates; says nothing more.
    PossiblyIsomorphic,
    NonIsomorphic,
    Isomorphic,
    Timeout,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Different => "different",
            Verdict::PossiblyIsomorphic => "possibly-isomorphic",
            Verdict::NonIsomorphic => "non-isomorphic",
            Verdict::Isomorphic => "isomorphic",
            Verdict::Timeout => "timeout",
        }
    }

    pub fn parse(s: &str) -> Result<Verdict> {
        [
            Verdict::Equal,
            Verdict::Different,
            Verdict::PossiblyIsomorphic,
            Verdict::NonIsomorphic,
            Verdict::Isomorphic,
            Verdict::Timeout,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| Error::format(format!("unknown verdict {s:?}")))
    }

    /// Whether the two sides agree as far as this comparison can tell.
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Equal | Verdict::PossiblyIsomorphic | Verdict::Isomorphic)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub mode: CompareMode,
    pub verdict: Verdict,
    /// Extra `key=value` facts in insertion order.
    pub details: Vec<(String, String)>,
    pub witness: Option<Vec<u32>>,
}

impl ComparisonReport {
    fn new(mode: CompareMode, verdict: Verdict) -> Self {
        ComparisonReport {
            mode,
            verdict,
            details: Vec::new(),
            witness: None,
        }
    }

    fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.details.push((k.to_string(), v.to_string()));
        self
    }

    pub fn detail(&self, k: &str) -> Option<&str> {
        self.details.iter().find(|(x, _)| x == k).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("version=1\nmode={}\nverdict={}\n", self.mode.name(), self.verdict.name());
        for (k, v) in &self.details {
            writeln!(s, "{k}={v}").expect("string write");
        }
        if let Some(w) = &self.witness {
            let w: Vec<String> = w.iter().map(u32::to_string).collect();
            writeln!(s, "witness={}", w.join(",")).expect("string write");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<ComparisonReport> {
        let kv: Vec<(String, String)> = text.lines().flat_map(parse_kv).collect();
        if get(&kv, "version")? != "1" {
            return Err(Error::format("unsupported comparison file version"));
        }
        let mut rep = ComparisonReport::new(
            CompareMode::parse(get(&kv, "mode")?)?,
            Verdict::parse(get(&kv, "verdict")?)?,
        );
        for (k, v) in kv {
            match k.as_str() {
                "version" | "mode" | "verdict" => {}
                "witness" => {
                    rep.witness = Some(
                        v.split(',')
                            .map(|x| x.parse().map_err(|_| Error::format("bad witness entry")))
                            .collect::<Result<_>>()?,
                    )
                }
                _ => rep.details.push((k, v)),
            }
        }
        Ok(rep)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string_atomic(path, &self.to_text())
    }
}

/// Exact per-`k` comparison. Equal moments up to `K` are partial evidence of
/// isospectrality only.
pub fn compare_moments(a: &MomentSeq, b: &MomentSeq) -> Result<ComparisonReport> {
    if a.k_max() != b.k_max() {
        return Err(Error::Precondition(format!(
            "moment sequences have different K ({} vs {})",
            a.k_max(),
            b.k_max()
        )));
    }
    let first_diff = (0..=a.k_max()).find(|&k| a.counts[k] != b.counts[k]);
    let verdict = if first_diff.is_none() { Verdict::Equal } else { Verdict::Different };
    let mut rep = ComparisonReport::new(CompareMode::Moments, verdict)
        .with("K", a.k_max())
        .with("genset_a", &a.genset)
        .with("genset_b", &b.genset);
    for k in 0..=a.k_max() {
        let v = if a.counts[k] == b.counts[k] { "equal".to_string() } else { format!("{}!={}", a.counts[k], b.counts[k]) };
        rep = rep.with(&format!("k{k}"), v);
    }
    if let Some(k) = first_diff {
        rep = rep.with("first_difference", k);
    } else {
        rep = rep.with("evidence", "partial:moments-up-to-K");
    }
    Ok(rep)
}

/// Multiset comparison of sorted eigenvalues within `1e-8 r`.
pub fn compare_spectra(a: &SpectrumReport, b: &SpectrumReport) -> ComparisonReport {
    let rep = ComparisonReport::new(CompareMode::Spectrum, Verdict::Different);
    if a.n != b.n || a.r != b.r {
        return rep
            .with("reason", "order-or-degree-mismatch")
            .with("n", format!("{},{}", a.n, b.n))
            .with("r", format!("{},{}", a.r, b.r));
    }
    let tol = a.tolerance().max(b.tolerance());
    let (x, y) = (a.values(), b.values());
    let max_dev = x
        .iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs())
        .fold(0f64, f64::max);
    let verdict = if max_dev <= tol { Verdict::Equal } else { Verdict::Different };
    ComparisonReport { verdict, ..rep }
        .with("n", a.n)
        .with("max_deviation", format!("{max_dev:e}"))
        .with("tolerance", format!("{tol:e}"))
}

/// Graph comparison in `Spectrum`, `Wl` or `Iso` mode.
pub fn compare_graphs(
    a: &dyn Adjacency,
    b: &dyn Adjacency,
    mode: CompareMode,
    dense_cap: usize,
    iso: &IsoBudget,
    vertex_transitive: bool,
) -> Result<ComparisonReport> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        let verdict = match mode {
            CompareMode::Spectrum | CompareMode::Moments => Verdict::Different,
            _ => Verdict::NonIsomorphic,
        };
        return Ok(ComparisonReport::new(mode, verdict)
            .with("reason", "order-or-degree-mismatch")
            .with("n", format!("{},{}", a.order(), b.order())));
    }
    match mode {
        CompareMode::Moments => Err(Error::Precondition(
            "moment comparison takes moment sequences, not graphs".into(),
        )),
        CompareMode::Spectrum => {
            let sa = dense_spectrum_of(a, dense_cap)?;
            let sb = dense_spectrum_of(b, dense_cap)?;
            Ok(compare_spectra(&sa, &sb))
        }
        CompareMode::Wl => {
            let ca = wl_certificate(a);
            let cb = wl_certificate(b);
            let verdict = if ca == cb { Verdict::PossiblyIsomorphic } else { Verdict::NonIsomorphic };
            Ok(ComparisonReport::new(mode, verdict)
                .with("rounds", format!("{},{}", ca.rounds, cb.rounds))
                .with("classes", format!("{},{}", ca.histogram.len(), cb.histogram.len())))
        }
        CompareMode::Iso => {
            let out = find_isomorphism(a, b, vertex_transitive, iso);
            Ok(match out {
                IsoOutcome::Isomorphic(m) => {
                    let mut r = ComparisonReport::new(mode, Verdict::Isomorphic);
                    r.witness = Some(m);
                    r
                }
                IsoOutcome::NonIsomorphic => ComparisonReport::new(mode, Verdict::NonIsomorphic),
                IsoOutcome::Timeout { nodes } => {
                    ComparisonReport::new(mode, Verdict::Timeout).with("nodes", nodes)
                }
            })
        }
    }
}

/// Any comparable artifact.
pub enum Comparable<'a> {
    Moments(&'a MomentSeq),
    Spectrum(&'a SpectrumReport),
    Graph(&'a dyn Adjacency),
}

/// Dispatches on the input kinds; spectra of graphs are computed on demand.
pub fn compare(
    a: Comparable,
    b: Comparable,
    mode: CompareMode,
    dense_cap: usize,
    iso: &IsoBudget,
) -> Result<ComparisonReport> {
    use Comparable::*;
    match (a, b, mode) {
        (Moments(x), Moments(y), CompareMode::Moments) => compare_moments(x, y),
        (Spectrum(x), Spectrum(y), CompareMode::Spectrum) => Ok(compare_spectra(x, y)),
        (Spectrum(x), Graph(y), CompareMode::Spectrum) => Ok(compare_spectra(x, &dense_spectrum_of(y, dense_cap)?)),
        (Graph(x), Spectrum(y), CompareMode::Spectrum) => Ok(compare_spectra(&dense_spectrum_of(x, dense_cap)?, y)),
        (Graph(x), Graph(y), m) => compare_graphs(x, y, m, dense_cap, iso, false),
        (_, _, m) => Err(Error::Precondition(format!(
            "inputs cannot be compared in {} mode",
            m.name()
        ))),
    }
}
