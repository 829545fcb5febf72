//! Text and binary graph files.
//!
//! Text: header `version=1 n=<n> r=<r> q=<q> d=<d>`, then `v <hex key>` per
//! vertex in index order, then `e u v gen color` per out-edge in
//! (vertex, slot) order.
//!
//! Binary (little-endian): magic `ICGR`, `u32` version, `u64` n, `u32` r,
//! `u32` q, `u32` d, `n` x `u128` keys, `n*r` edge records
//! (`u32` u, `u32` v, `u32` gen, `u8` color), and a trailing `u64`
//! checksum: the first 8 bytes of the SHA-256 of everything before it.

use std::io::{BufRead, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use super::graph::CayleyGraph;
use crate::error::{Error, Result};
use crate::ff::field::parse_kv;
use crate::files::write_atomic;

const MAGIC: &[u8; 4] = b"ICGR";
const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Text,
    Binary,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(GraphFormat::Text),
            "binary" => Ok(GraphFormat::Binary),
            _ => Err(Error::invalid(format!("unknown format {s:?}"))),
        }
    }
}

pub fn export_text<W: Write>(g: &CayleyGraph, w: &mut W) -> Result<()> {
    writeln!(w, "version={VERSION} n={} r={} q={} d={}", g.n(), g.r, g.q, g.d)?;
    for k in &g.keys {
        writeln!(w, "v {k:x}")?;
    }
    for u in 0..g.n() {
        for (s, &v) in g.out_neighbors(u).iter().enumerate() {
            writeln!(w, "e {u} {v} {} {}", g.gen_ids[s], g.colors[s])?;
        }
    }
    Ok(())
}

pub fn import_text<R: BufRead>(r: R) -> Result<CayleyGraph> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::format("empty graph file"))??;
    let kv = parse_kv(&header);
    let get = |k: &str| -> Result<u64> {
        kv.iter()
            .find(|(key, _)| key == k)
            .ok_or_else(|| Error::format(format!("missing header key {k}")))?
            .1
            .parse()
            .map_err(|_| Error::format(format!("bad header value for {k}")))
    };
    if get("version")? != VERSION as u64 {
        return Err(Error::format("unsupported graph file version"));
    }
    let n = get("n")? as usize;
    let r = get("r")? as usize;
    let q = get("q")? as u32;
    let d = get("d")? as usize;

    let mut keys = Vec::with_capacity(n);
    let mut adj = Vec::with_capacity(n * r);
    let mut gen_ids = vec![0u32; r];
    let mut colors = vec![0u8; r];
    for line in lines {
        let line = line?;
        let mut it = line.split_ascii_whitespace();
        match it.next() {
            Some("v") => {
                if !adj.is_empty() || keys.len() == n {
                    return Err(Error::format("unexpected vertex line"));
                }
                let k = it.next().ok_or_else(|| Error::format("missing vertex key"))?;
                keys.push(
                    u128::from_str_radix(k, 16)
                        .map_err(|_| Error::format(format!("bad vertex key {k:?}")))?,
                );
            }
            Some("e") => {
                let mut f = || -> Result<u64> {
                    it.next()
                        .ok_or_else(|| Error::format("short edge line"))?
                        .parse()
                        .map_err(|_| Error::format("bad edge field"))
                };
                let (u, v, gen, color) = (f()?, f()?, f()?, f()?);
                let idx = adj.len();
                if r == 0 || idx >= n * r || u as usize != idx / r || v as usize >= n || color > 255 {
                    return Err(Error::format(format!("edge line out of order: {line}")));
                }
                check_slot(&mut gen_ids, &mut colors, idx, r, gen as u32, color as u8)?;
                adj.push(v as u32);
            }
            Some(_) => return Err(Error::format(format!("unknown line {line:?}"))),
            None => {}
        }
    }
    if keys.len() != n || adj.len() != n * r {
        return Err(Error::format("truncated graph file"));
    }
    finish(q, d, r, keys, adj, gen_ids, colors)
}

fn check_slot(
    gen_ids: &mut [u32],
    colors: &mut [u8],
    idx: usize,
    r: usize,
    gen: u32,
    color: u8,
) -> Result<()> {
    let s = idx % r;
    if idx < r {
        gen_ids[s] = gen;
        colors[s] = color;
    } else if gen_ids[s] != gen || colors[s] != color {
        return Err(Error::format(format!(
            "slot {s} changes generator or color at edge {idx}"
        )));
    }
    Ok(())
}

fn finish(
    q: u32,
    d: usize,
    r: usize,
    keys: Vec<u128>,
    adj: Vec<u32>,
    gen_ids: Vec<u32>,
    colors: Vec<u8>,
) -> Result<CayleyGraph> {
    let mut g = CayleyGraph {
        q,
        d,
        r,
        keys,
        adj,
        gen_ids,
        colors,
        symmetric: false,
    };
    g.symmetric = g.edges_symmetric();
    Ok(g)
}

struct HashingWriter<'a, W: Write> {
    inner: &'a mut W,
    hash: Sha256,
}

impl<W: Write> Write for HashingWriter<'_, W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let k = self.inner.write(buf)?;
        self.hash.update(&buf[..k]);
        Ok(k)
    }
    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

fn checksum(bytes: &[u8]) -> u64 {
    let h = Sha256::digest(bytes);
    u64::from_le_bytes(h[..8].try_into().expect("8 bytes"))
}

pub fn export_binary<W: Write>(g: &CayleyGraph, w: &mut W) -> Result<()> {
    let mut hw = HashingWriter {
        inner: w,
        hash: Sha256::new(),
    };
    hw.write_all(MAGIC)?;
    hw.write_all(&VERSION.to_le_bytes())?;
    hw.write_all(&(g.n() as u64).to_le_bytes())?;
    hw.write_all(&(g.r as u32).to_le_bytes())?;
    hw.write_all(&g.q.to_le_bytes())?;
    hw.write_all(&(g.d as u32).to_le_bytes())?;
    for k in &g.keys {
        hw.write_all(&k.to_le_bytes())?;
    }
    let mut rec = [0u8; 13];
    for u in 0..g.n() {
        for (s, &v) in g.out_neighbors(u).iter().enumerate() {
            rec[0..4].copy_from_slice(&(u as u32).to_le_bytes());
            rec[4..8].copy_from_slice(&v.to_le_bytes());
            rec[8..12].copy_from_slice(&g.gen_ids[s].to_le_bytes());
            rec[12] = g.colors[s];
            hw.write_all(&rec)?;
        }
    }
    let h = hw.hash.finalize();
    hw.inner.write_all(&h[..8])?;
    Ok(())
}

pub fn import_binary<R: Read>(mut r: R) -> Result<CayleyGraph> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode_binary(&buf)
}

pub fn decode_binary(buf: &[u8]) -> Result<CayleyGraph> {
    const HEAD: usize = 4 + 4 + 8 + 4 + 4 + 4;
    if buf.len() < HEAD + 8 {
        return Err(Error::format("truncated graph file"));
    }
    let (body, tail) = buf.split_at(buf.len() - 8);
    let stored = u64::from_le_bytes(tail.try_into().expect("8 bytes"));
    let computed = checksum(body);
    if stored != computed {
        return Err(Error::Checksum { stored, computed });
    }
    if &body[..4] != MAGIC {
        return Err(Error::format("not a graph file"));
    }
    let u32_at = |o: usize| u32::from_le_bytes(body[o..o + 4].try_into().expect("4 bytes"));
    if u32_at(4) != VERSION {
        return Err(Error::format("unsupported graph file version"));
    }
    let n = u64::from_le_bytes(body[8..16].try_into().expect("8 bytes")) as usize;
    let r = u32_at(16) as usize;
    let q = u32_at(20);
    let d = u32_at(24) as usize;
    let expect = n
        .checked_mul(16)
        .and_then(|a| n.checked_mul(r)?.checked_mul(13)?.checked_add(a))
        .and_then(|a| a.checked_add(HEAD));
    if expect != Some(body.len()) {
        return Err(Error::format("graph file length does not match header"));
    }
    let mut off = HEAD;
    let mut keys = Vec::with_capacity(n);
    for _ in 0..n {
        keys.push(u128::from_le_bytes(body[off..off + 16].try_into().expect("16 bytes")));
        off += 16;
    }
    let mut adj = Vec::with_capacity(n * r);
    let mut gen_ids = vec![0u32; r];
    let mut colors = vec![0u8; r];
    for idx in 0..n * r {
        let u = u32_at(off) as usize;
        let v = u32_at(off + 4);
        let gen = u32_at(off + 8);
        let color = body[off + 12];
        off += 13;
        if u != idx / r || v as usize >= n {
            return Err(Error::format(format!("edge record {idx} out of order")));
        }
        check_slot(&mut gen_ids, &mut colors, idx, r, gen, color)?;
        adj.push(v);
    }
    finish(q, d, r, keys, adj, gen_ids, colors)
}

pub fn write_graph(g: &CayleyGraph, path: &Path, format: GraphFormat) -> Result<()> {
    write_atomic(path, |w| match format {
        GraphFormat::Text => export_text(g, w),
        GraphFormat::Binary => export_binary(g, w),
    })
}

/// Reads either format, detected by the leading magic bytes.
pub fn read_graph(path: &Path) -> Result<CayleyGraph> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        decode_binary(&bytes)
    } else {
        import_text(std::io::Cursor::new(bytes))
    }
}
