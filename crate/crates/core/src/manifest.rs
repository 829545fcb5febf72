//! Run manifests and line-oriented `key=value` configuration files.
//!
//! A manifest lists the parameters of a run in the same `key=value` form a
//! configuration file uses, so `--config <out>.manifest` replays the run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::files::write_string_atomic;

/// Manifest keys that describe a run rather than parameterize it.
const METADATA: &[&str] = &["version", "tool", "command", "wall_clock_ms", "peak_rss_kb", "seed"];
const METADATA_PREFIXES: &[&str] = &["input.", "output."];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    /// Parses `key=value` lines; blank lines and `#` comments are skipped.
    /// Manifest metadata keys are accepted and ignored.
    pub fn parse(text: &str) -> Result<Config> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::format(format!("config line {}: expected key=value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if METADATA.contains(&k) || METADATA_PREFIXES.iter().any(|p| k.starts_with(p)) {
                continue;
            }
            entries.insert(k.to_string(), v.to_string());
        }
        Ok(Config { entries })
    }

    pub fn load(path: &Path) -> Result<Config> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunManifest {
    pub tool: String,
    pub command: String,
    /// Effective parameters after merging defaults, config and flags.
    pub params: Vec<(String, String)>,
    /// `(path, sha256)` of every file read.
    pub inputs: Vec<(String, String)>,
    /// `(path, sha256)` of every file written.
    pub outputs: Vec<(String, String)>,
    pub wall_clock_ms: u128,
    pub peak_rss_kb: Option<u64>,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            tool: format!("isocayley {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("version=1\ntool={}\ncommand={}\n", self.tool, self.command);
        for (k, v) in &self.params {
            writeln!(s, "{k}={v}").expect("string write");
        }
        for (kind, files) in [("input", &self.inputs), ("output", &self.outputs)] {
            for (i, (p, h)) in files.iter().enumerate() {
                writeln!(s, "{kind}.{i}={p} sha256={h}").expect("string write");
            }
        }
        writeln!(s, "wall_clock_ms={}", self.wall_clock_ms).expect("string write");
        if let Some(kb) = self.peak_rss_kb {
            writeln!(s, "peak_rss_kb={kb}").expect("string write");
        }
        if let Some(seed) = self.seed {
            writeln!(s, "seed={seed}").expect("string write");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<RunManifest> {
        let mut m = RunManifest::default();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::format(format!("bad manifest line {line:?}")))?;
            let file = || -> Result<(String, String)> {
                let (p, h) = v
                    .rsplit_once(" sha256=")
                    .ok_or_else(|| Error::format(format!("bad file entry {line:?}")))?;
                Ok((p.to_string(), h.to_string()))
            };
            match k {
                "version" if v != "1" => return Err(Error::format("unsupported manifest version")),
                "version" => {}
                "tool" => m.tool = v.to_string(),
                "command" => m.command = v.to_string(),
                "wall_clock_ms" => m.wall_clock_ms = v.parse().map_err(|_| Error::format("bad wall_clock_ms"))?,
                "peak_rss_kb" => m.peak_rss_kb = Some(v.parse().map_err(|_| Error::format("bad peak_rss_kb"))?),
                "seed" => m.seed = Some(v.parse().map_err(|_| Error::format("bad seed"))?),
                _ if k.starts_with("input.") => m.inputs.push(file()?),
                _ if k.starts_with("output.") => m.outputs.push(file()?),
                _ => m.params.push((k.to_string(), v.to_string())),
            }
        }
        Ok(m)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_string_atomic(path, &self.to_text())
    }
}

/// Hex SHA-256 of a file's contents.
pub fn file_sha256(path: &Path) -> Result<String> {
    let mut f = std::fs::File::open(path)?;
    let mut h = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

/// Peak resident set size of this process, where the platform reports it.
pub fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find(|l| l.starts_with("VmHWM:"))?
        .split_whitespace()
        .nth(1)?
        .parse()
        .ok()
}

/// Parses a byte count with an optional `K`, `M` or `G` suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> Result<u64> {
    let s = s.trim();
    let (num, mult) = match s.chars().last() {
        Some('K' | 'k') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M' | 'm') => (&s[..s.len() - 1], 1 << 20),
        Some('G' | 'g') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    num.trim()
        .parse::<u64>()
        .ok()
        .and_then(|n| n.checked_mul(mult))
        .ok_or_else(|| Error::invalid(format!("bad byte count {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_replays_as_config() {
        let mut m = RunManifest::new("gens");
        m.params = vec![("q".into(), "3".into()), ("d".into(), "5".into())];
        m.outputs.push(("out.gens".into(), "ab".into()));
        m.wall_clock_ms = 12;
        let text = m.to_text();
        assert_eq!(RunManifest::from_text(&text).unwrap().params, m.params);
        let c = Config::parse(&text).unwrap();
        assert_eq!(c.keys().collect::<Vec<_>>(), vec!["d", "q"]);
        assert_eq!(c.get("q"), Some("3"));
    }

    #[test]
    fn config_lines() {
        let c = Config::parse("# comment\nq = 5\n\nd=3 # trailing\n").unwrap();
        assert_eq!(c.get("q"), Some("5"));
        assert_eq!(c.get("d"), Some("3"));
        assert!(Config::parse("q 5").is_err());
    }

    #[test]
    fn byte_counts() {
        assert_eq!(parse_bytes("4G").unwrap(), 4 << 30);
        assert_eq!(parse_bytes("512m").unwrap(), 512 << 20);
        assert_eq!(parse_bytes("1000").unwrap(), 1000);
        assert!(parse_bytes("x").is_err());
    }
}
