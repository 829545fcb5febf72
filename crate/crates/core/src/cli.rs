//! The `isocayley` command line.
//!
//! Exit codes: 0 success, 1 verification failure or negative comparison,
//! 2 resource abort (memory budget, vertex cap, dense cap, search timeout),
//! 64 usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::cayley::io::{read_graph, write_graph};
use crate::cayley::{bfs_build, CayleyGraph, GraphFormat};
use crate::error::{Error, Result};
use crate::forge::*;
use crate::manifest::{file_sha256, parse_bytes, peak_rss_kb, Config, RunManifest};
use crate::spectra::*;
use crate::suite::{run_suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the default memory budget (e.g. `8G`).
pub const MEM_BUDGET_ENV: &str = "ISOCAYLEY_MEM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "isocayley", version, about = "Generator sets, Cayley graphs and spectral fingerprints for PSL_d(F_q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Configuration file of key=value lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker thread cap.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    q: Option<u32>,
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Exponent of the Frobenius power sigma.
    #[arg(long, global = true)]
    s: Option<usize>,
    /// Specialization parameter, an integer read into F_q.
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<i64>,
    /// Generator set kind: omega, omega-bar or omega-hat.
    #[arg(long, global = true)]
    kind: Option<String>,
    /// Read generators from a file instead of building them.
    #[arg(long, global = true)]
    gens: Option<PathBuf>,
    /// Read a graph from a file instead of building it.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    #[arg(long, global = true)]
    kmax: Option<usize>,
    /// group-dp or ball-mitm.
    #[arg(long, global = true)]
    strategy: Option<String>,
    /// Comma-separated edge colors to keep.
    #[arg(long, global = true)]
    colors: Option<String>,
    #[arg(long = "max-vertices", global = true)]
    max_vertices: Option<usize>,
    /// Bytes, with optional K/M/G suffix.
    #[arg(long = "mem-budget", global = true)]
    mem_budget: Option<String>,
    #[arg(long = "dense-cap", global = true)]
    dense_cap: Option<usize>,
    /// text or binary.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Omega or Omega-bar.
    Gens,
    /// Build Omega-hat by meet-in-the-middle search.
    OmegaHat,
    /// Build the Cayley graph by breadth-first search.
    Graph,
    /// Exact walk moments N_0..N_K.
    Moments,
    /// Dense adjacency spectrum.
    Spectrum,
    /// Compare two moment, spectrum or graph files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// moments, spectrum, wl or iso; defaults by file type.
        #[arg(long)]
        mode: Option<String>,
        /// Node budget for iso search.
        #[arg(long = "iso-nodes")]
        iso_nodes: Option<u64>,
    },
    /// The q-power family of Omega-bar.
    Family,
    /// Run a packaged verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

/// Flags merged with the configuration file and environment.
struct Settings {
    flags: Flags,
    config: Config,
    record: Vec<(String, String)>,
}

impl Settings {
    fn value<T: std::str::FromStr + ToString>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>> {
        let v = match flag {
            Some(v) => Some(v),
            None => match self.config.get(key) {
                Some(s) => Some(
                    s.parse()
                        .map_err(|_| Error::invalid(format!("bad value {s:?} for {key}")))?,
                ),
                None => None,
            },
        };
        if let Some(v) = &v {
            self.record.push((key.to_string(), v.to_string()));
        }
        Ok(v)
    }

    fn required<T: std::str::FromStr + ToString>(&mut self, key: &str, flag: Option<T>) -> Result<T> {
        self.value(key, flag)?
            .ok_or_else(|| Error::invalid(format!("--{key} is required")))
    }

    fn params(&mut self) -> Result<GenParams> {
        let q = self.required("q", self.flags.q)?;
        let d = self.required("d", self.flags.d)?;
        let s = self.value("s", self.flags.s)?.unwrap_or(1);
        let alpha = self.value("alpha", self.flags.alpha)?;
        let p = GenParams::build(q, d, s, &ParamOverrides { alpha, ..Default::default() })?;
        for w in p.warnings() {
            eprintln!("warning: {w}");
        }
        Ok(p)
    }

    fn path(&mut self, key: &str, flag: Option<PathBuf>) -> Result<Option<PathBuf>> {
        Ok(self
            .value::<String>(key, flag.map(|p| p.to_string_lossy().into_owned()))?
            .map(PathBuf::from))
    }

    fn out(&mut self) -> Result<PathBuf> {
        let flag = self.flags.out.take();
        self.path("out", flag)?
            .ok_or_else(|| Error::invalid("--out is required"))
    }

    fn mem_budget(&mut self) -> Result<u64> {
        let flag = self.flags.mem_budget.take();
        match self.value::<String>("mem-budget", flag)? {
            Some(s) => parse_bytes(&s),
            None => match std::env::var(MEM_BUDGET_ENV) {
                Ok(s) => parse_bytes(&s),
                Err(_) => Ok(DEFAULT_MEM_BUDGET),
            },
        }
    }

    fn max_vertices(&mut self) -> Result<usize> {
        Ok(self.value("max-vertices", self.flags.max_vertices)?.unwrap_or(10_000_000))
    }

    fn colors(&mut self) -> Result<Option<Vec<u8>>> {
        let flag = self.flags.colors.take();
        self.value::<String>("colors", flag)?
            .map(|s| {
                s.split(',')
                    .map(|c| c.trim().parse::<u8>().map_err(|_| Error::invalid(format!("bad color {c:?}"))))
                    .collect()
            })
            .transpose()
    }

    fn kind(&mut self, default: Kind) -> Result<Kind> {
        let flag = self.flags.kind.take();
        self.value::<String>("kind", flag)?
            .map_or(Ok(default), |k| Kind::parse(&k))
    }
}

struct Run {
    manifest: RunManifest,
    start: Instant,
}

impl Run {
    fn input(&mut self, p: &Path) -> Result<()> {
        self.manifest.inputs.push((p.display().to_string(), file_sha256(p)?));
        Ok(())
    }

    fn output(&mut self, p: &Path) -> Result<()> {
        self.manifest.outputs.push((p.display().to_string(), file_sha256(p)?));
        Ok(())
    }

    /// Writes `<out>.manifest`.
    fn finish(mut self, settings: Settings, out: &Path) -> Result<()> {
        let mut params = settings.record;
        params.sort();
        params.dedup();
        self.manifest.params = params;
        self.manifest.wall_clock_ms = self.start.elapsed().as_millis();
        self.manifest.peak_rss_kb = peak_rss_kb();
        let mut name = out.as_os_str().to_owned();
        name.push(".manifest");
        self.manifest.write(Path::new(&name))
    }
}

/// The generator set named by `--gens`, or built from the parameters.
fn load_gens(st: &mut Settings, run: &mut Run, default: Kind) -> Result<GenSet> {
    let flag = st.flags.gens.take();
    if let Some(p) = st.path("gens", flag)? {
        run.input(&p)?;
        return GenSet::read(&p);
    }
    let params = st.params()?;
    let kind = st.kind(default)?;
    let omega = build_omega(&params)?;
    match kind {
        Kind::Omega => Ok(omega),
        Kind::OmegaBar => symmetrize(&omega),
        Kind::OmegaHat => {
            let budget = st.mem_budget()?;
            Ok(build_omega_hat(&omega, budget)?.0)
        }
    }
}

fn load_graph(st: &mut Settings, run: &mut Run) -> Result<CayleyGraph> {
    let flag = st.flags.graph.take();
    if let Some(p) = st.path("graph", flag)? {
        run.input(&p)?;
        return read_graph(&p);
    }
    let gens = load_gens(st, run, Kind::OmegaBar)?;
    let max = st.max_vertices()?;
    bfs_build(&gens, max)
}

enum Loaded {
    Moments(MomentSeq),
    Spectrum(SpectrumReport),
    Graph(CayleyGraph),
}

impl Loaded {
    fn comparable(&self) -> Comparable<'_> {
        match self {
            Loaded::Moments(m) => Comparable::Moments(m),
            Loaded::Spectrum(s) => Comparable::Spectrum(s),
            Loaded::Graph(g) => Comparable::Graph(g),
        }
    }
}

fn load_any(p: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(p)?;
    if bytes.starts_with(b"ICGR") {
        return Ok(Loaded::Graph(read_graph(p)?));
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::format("file is neither text nor a binary graph"))?;
    let header = text.lines().next().unwrap_or("");
    if header.contains("genset=") {
        Ok(Loaded::Moments(MomentSeq::from_text(&text)?))
    } else if header.contains("method=") {
        Ok(Loaded::Spectrum(SpectrumReport::from_text(&text)?))
    } else if header.contains(" n=") && header.contains(" q=") {
        Ok(Loaded::Graph(read_graph(p)?))
    } else {
        Err(Error::format(format!("{}: unrecognized file type", p.display())))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_abort() => EXIT_RESOURCE,
        Error::InvalidParameter(_) | Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let config = match &cli.flags.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let mut st = Settings {
        flags: cli.flags,
        config,
        record: Vec::new(),
    };
    if let Some(n) = st.value("threads", st.flags.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    }
    let name = match &cli.command {
        Command::Gens => "gens",
        Command::OmegaHat => "omega-hat",
        Command::Graph => "graph",
        Command::Moments => "moments",
        Command::Spectrum => "spectrum",
        Command::Compare { .. } => "compare",
        Command::Family => "family",
        Command::Verify { .. } => "verify",
    };
    let mut run = Run {
        manifest: RunManifest::new(name),
        start: Instant::now(),
    };

    match cli.command {
        Command::Gens => {
            let out = st.out()?;
            let params = st.params()?;
            let omega = build_omega(&params)?;
            let set = match st.kind(Kind::OmegaBar)? {
                Kind::Omega => omega,
                Kind::OmegaBar => symmetrize(&omega)?,
                Kind::OmegaHat => return Err(Error::invalid("use the omega-hat command for Omega-hat")),
            };
            set.write(&out)?;
            println!("{} {} generators, hash {}", set.kind().name(), set.len(), set.hash());
            run.output(&out)?;
            run.finish(st, &out)?;
        }
        Command::OmegaHat => {
            let out = st.out()?;
            let params = st.params()?;
            let budget = st.mem_budget()?;
            let (hat, rep) = build_omega_hat(&build_omega(&params)?, budget)?;
            hat.write(&out)?;
            let classes: Vec<String> = hat.color_counts()[1..].iter().map(usize::to_string).collect();
            println!(
                "omega-hat {} generators, color classes {}, candidates {} verified {} rejected {}",
                hat.len(),
                classes.join("/"),
                rep.candidates,
                rep.verified,
                rep.rejected
            );
            run.output(&out)?;
            run.finish(st, &out)?;
        }
        Command::Graph => {
            let out = st.out()?;
            let format_flag = st.flags.format.take();
            let format: GraphFormat = st.value::<String>("format", format_flag)?.as_deref().unwrap_or("binary").parse()?;
            let gens = load_gens(&mut st, &mut run, Kind::OmegaBar)?;
            let max = st.max_vertices()?;
            let mut g = bfs_build(&gens, max)?;
            if let Some(c) = st.colors()? {
                g = g.colored_subgraph(&c)?;
            }
            write_graph(&g, &out, format)?;
            println!("graph {} vertices, out-degree {}, symmetric {}", g.n(), g.r(), g.is_symmetric());
            run.output(&out)?;
            run.finish(st, &out)?;
        }
        Command::Moments => {
            let out = st.out()?;
            let k = st.value("kmax", st.flags.kmax)?.unwrap_or(6);
            let strategy_flag = st.flags.strategy.take();
            let strategy = Strategy::parse(st.value::<String>("strategy", strategy_flag)?.as_deref().unwrap_or("ball-mitm"))?;
            let colors = st.colors()?;
            let opts = MomentOptions {
                max_vertices: st.max_vertices()?,
                mem_budget: st.mem_budget()?,
            };
            let gens = load_gens(&mut st, &mut run, Kind::OmegaBar)?;
            let m = walk_moments(&gens, k, strategy, colors.as_deref(), &opts)?;
            m.write(&out)?;
            print!("{}", m.to_text());
            run.output(&out)?;
            run.finish(st, &out)?;
        }
        Command::Spectrum => {
            let out = st.out()?;
            let cap = st.value("dense-cap", st.flags.dense_cap)?.unwrap_or(DEFAULT_DENSE_CAP);
            let colors = st.colors()?;
            let g = load_graph(&mut st, &mut run)?;
            let s = dense_spectrum(&g, colors.as_deref(), cap)?;
            s.write(&out)?;
            print!("{}", s.to_text());
            run.output(&out)?;
            run.finish(st, &out)?;
        }
        Command::Compare { a, b, mode, iso_nodes } => {
            run.input(&a)?;
            run.input(&b)?;
            let (x, y) = (load_any(&a)?, load_any(&b)?);
            let default_mode = match (&x, &y) {
                (Loaded::Moments(_), _) => CompareMode::Moments,
                _ => CompareMode::Spectrum,
            };
            let mode = mode.map_or(Ok(default_mode), |m| CompareMode::parse(&m))?;
            let cap = st.value("dense-cap", st.flags.dense_cap)?.unwrap_or(DEFAULT_DENSE_CAP);
            let iso = IsoBudget {
                max_nodes: iso_nodes.unwrap_or(IsoBudget::default().max_nodes),
                ..Default::default()
            };
            let rep = match (&x, &y) {
                (Loaded::Graph(g), Loaded::Graph(h)) => compare_graphs(g, h, mode, cap, &iso, true)?,
                _ => {
                    compare(x.comparable(), y.comparable(), mode, cap, &iso)?
                }
            };
            print!("{}", rep.to_text());
            let flag = st.flags.out.take();
            if let Some(out) = st.path("out", flag)? {
                rep.write(&out)?;
                run.output(&out)?;
                run.finish(st, &out)?;
            }
            return Ok(match rep.verdict {
                Verdict::Timeout => EXIT_RESOURCE,
                v if v.is_positive() => EXIT_OK,
                _ => EXIT_FAILED,
            });
        }
        Command::Family => {
            let out = st.out()?;
            let gens = load_gens(&mut st, &mut run, Kind::OmegaBar)?;
            let fam = family(&gens)?;
            for (i, set) in fam.iter().enumerate() {
                let mut name = out.as_os_str().to_owned();
                name.push(format!(".{i}"));
                let path = PathBuf::from(name);
                set.write(&path)?;
                println!("set {i}: s={} {} generators, hash {}", set.params().s(), set.len(), set.hash());
                run.output(&path)?;
            }
            println!("family size {}", fam.len());
            run.finish(st, &out)?;
        }
        Command::Verify { suite } => {
            let opts = SuiteOptions {
                mem_budget: st.mem_budget()?,
            };
            let report = run_suite(&suite, &opts, |r| println!("{r}"))?;
            let passed = report.passed();
            println!("suite {suite}: {}", if passed { "PASS" } else { "FAIL" });
            return Ok(if passed { EXIT_OK } else { EXIT_FAILED });
        }
    }
    Ok(EXIT_OK)
}
