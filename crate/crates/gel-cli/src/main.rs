//! `gel`: tabular experiments over the geodesic norm spectrum of the
//! modular group and its classical baselines. Every subcommand emits CSV
//! with a `#` metadata header; exit code 2 flags input/validation problems,
//! 1 internal failures.

mod output;
mod parse;

use clap::{Args, Parser, Subcommand};
use gel::baselines::{self, DirichletCharacter, PrimeTable, ZerosDataset};
use gel::counts;
use gel::datastore::{self, Cache, CacheKind};
use gel::euler;
use gel::quadratic::{builder_by_name, BuildLimits, NormSpectrum};
use gel::spectral::{self, SpectralDataset};
use gel::Complex64;
use output::{fmt, fmt_complex_label, Report};
use parse::{parse_complex, parse_grid, GridSpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gel", version, about = "geodesic Euler-product lab")]
struct Cli {
    /// Worker threads for parallel builds (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for built spectra (falls back to GEL_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Coverage bound for the norm spectrum.
    #[arg(long, value_name = "X")]
    x_max: f64,

    /// Enumeration strategy: by-discriminant | by-trace.
    #[arg(long, default_value = "by-discriminant")]
    method: String,
}

#[derive(Args)]
struct GridArg {
    /// Geometric evaluation grid `start,factor,count`.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load from cache) the norm spectrum and list its records.
    Spectrum {
        #[command(flatten)]
        spectrum: SpectrumArgs,
    },
    /// Counting functions theta/psi/pi/Pi and the deviation psi(x) - x.
    Counts {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Deviation table |psi(x) - x| with the trivial-bound scaling and a
    /// fitted growth exponent.
    Pgt {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Renormalized partial Euler products along a checkpoint grid.
    Euler {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        /// Evaluation points, syntax a+bi (repeatable).
        #[arg(long = "s", value_parser = parse_complex, required = true)]
        s_values: Vec<Complex64>,
        #[command(flatten)]
        grid: GridArg,
        /// Renormalizer: case1 | case2 | case3 | ultimate | none.
        #[arg(long, default_value = "ultimate")]
        renorm: String,
    },
    /// Mertens-type constant at the spectral pole s = 1.
    MertensGeo {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Explicit-formula residuals against psi.
    Explicit {
        #[command(flatten)]
        spectrum: SpectrumArgs,
        #[command(flatten)]
        grid: GridArg,
        /// Spectral truncation; defaults to min(max t, sqrt(x)/log x).
        #[arg(long = "T", value_name = "T")]
        t_cap: Option<f64>,
        /// Spectral dataset file (defaults to the bundled modular data).
        #[arg(long)]
        spectral_file: Option<PathBuf>,
    },
    /// Spectral exponential sums with the cancellation envelope.
    Expsum {
        /// Evaluation point x.
        #[arg(long, value_name = "X")]
        x_max: f64,
        /// Geometric grid of truncations T.
        #[command(flatten)]
        grid: GridArg,
        #[arg(long)]
        spectral_file: Option<PathBuf>,
    },
    /// Classical rational-prime baselines.
    Baseline {
        #[command(subcommand)]
        which: BaselineCommand,
    },
    /// Kloosterman sum sweep with the Weil-bound verdict.
    Kloosterman {
        #[arg(long, default_value_t = 100)]
        c_max: u64,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
        /// Character: trivial | chi4 (chi4 only on moduli divisible by 4).
        #[arg(long, default_value = "trivial")]
        chi: String,
    },
    /// Partial sums of the Kloosterman Dirichlet series.
    SkZeta {
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value = "trivial")]
        chi: String,
        /// Geometric grid of cutoffs C.
        #[command(flatten)]
        grid: GridArg,
    },
}

#[derive(Subcommand)]
enum BaselineCommand {
    /// Mertens product against e^gamma log x.
    Mertens {
        #[arg(long, value_name = "X")]
        x_max: f64,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Zero-corrected strip asymptotic for the partial zeta product.
    Ramanujan {
        #[arg(long, value_name = "X")]
        x_max: f64,
        /// Real evaluation point in (1/2, 1).
        #[arg(long, default_value_t = 0.75)]
        s: f64,
        /// Number of zeta zeros folded into the correction.
        #[arg(long, default_value_t = 100)]
        k: usize,
        #[arg(long)]
        zeros_file: Option<PathBuf>,
    },
    /// Central-point product for the character mod 4.
    Drh {
        #[arg(long, value_name = "X")]
        x_max: f64,
        #[command(flatten)]
        grid: GridArg,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Ignore the error if a pool already exists (tests call run twice).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&argv, &cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Default geometric grid: powers of two from 10 up to x_max.
fn default_grid(x_max: f64) -> Vec<f64> {
    let mut v = Vec::new();
    let mut x = 10.0;
    while x <= x_max {
        v.push(x);
        x *= 2.0;
    }
    if v.last() != Some(&x_max) {
        v.push(x_max);
    }
    v
}

fn resolve_grid(grid: &GridArg, x_max: f64, require: bool) -> gel::Result<Vec<f64>> {
    match grid.grid {
        Some(g) => {
            let v = g.values();
            if v.is_empty() && require {
                return Err(gel::Error::domain("empty evaluation grid".to_string()));
            }
            Ok(v)
        }
        None => Ok(default_grid(x_max)),
    }
}

/// Build the spectrum, consulting the cache when one is configured.
fn obtain_spectrum(cli_cache: Option<&PathBuf>, args: &SpectrumArgs) -> gel::Result<(NormSpectrum, Option<u64>)> {
    let builder = builder_by_name(&args.method)
        .ok_or_else(|| gel::Error::domain(format!("unknown build method `{}`", args.method)))?;
    let cache = Cache::resolve(cli_cache.map(|p| p.as_path()));
    let param = fmt(args.x_max);
    if let Some(cache) = &cache {
        if let Some((entry, payload)) = cache.lookup(CacheKind::Spectrum, &param)? {
            let spectrum = datastore::spectrum_from_str(&payload)?;
            return Ok((spectrum, Some(entry.content_hash)));
        }
    }
    let spectrum = builder.build(args.x_max, &BuildLimits::default())?;
    let mut hash = None;
    if let Some(cache) = &cache {
        let payload = datastore::spectrum_to_string(&spectrum);
        let entry = cache.store(CacheKind::Spectrum, &param, &payload)?;
        hash = Some(entry.content_hash);
    }
    Ok((spectrum, hash))
}

fn load_spectral(file: Option<&PathBuf>) -> gel::Result<(SpectralDataset, String, String)> {
    match file {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok((SpectralDataset::parse(&text)?, p.display().to_string(), text))
        }
        None => {
            let text = include_str!("../../gel/data/sl2z_maass.tsv").to_string();
            Ok((SpectralDataset::bundled(), "bundled".to_string(), text))
        }
    }
}

fn load_zeros(file: Option<&PathBuf>) -> gel::Result<(ZerosDataset, String, String)> {
    match file {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok((ZerosDataset::parse(&text)?, p.display().to_string(), text))
        }
        None => {
            let text = include_str!("../../gel/data/riemann_zeros.tsv").to_string();
            Ok((ZerosDataset::bundled(), "bundled".to_string(), text))
        }
    }
}

fn run(argv: &[String], cli: &Cli) -> gel::Result<()> {
    match &cli.command {
        Command::Spectrum { spectrum } => {
            let (sp, hash) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let mut rep = Report::new(argv, "d,t,u,h,log_eps,norm");
            rep.meta(format!("records: {}", sp.len()));
            if let Some(h) = hash {
                rep.meta(format!("cache hash: {h:016x}"));
            }
            for r in sp.entries() {
                rep.row(&[
                    r.d.to_string(),
                    r.t.to_string(),
                    r.u.to_string(),
                    r.h.to_string(),
                    fmt(r.log_eps),
                    fmt(r.norm),
                ]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Counts { spectrum, grid } => {
            let (sp, _) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let xs = resolve_grid(grid, spectrum.x_max, true)?;
            let mut rep = Report::new(argv, "x,theta,psi,pi,Pi,error");
            for &x in &xs {
                let snap = counts::snapshot(&sp, x)?;
                rep.row(&[
                    fmt(x),
                    fmt(snap.theta),
                    fmt(snap.psi),
                    snap.pi_prim.to_string(),
                    fmt(snap.pi_weighted),
                    fmt(snap.pgt_error),
                ]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Pgt { spectrum, grid } => {
            let (sp, _) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let xs = resolve_grid(grid, spectrum.x_max, true)?;
            if xs.is_empty() {
                return Err(gel::Error::domain("empty evaluation grid".to_string()));
            }
            let mut rep = Report::new(argv, "x,psi,error,scaled_error");
            let mut fit_pts = Vec::new();
            for &x in &xs {
                let psi = counts::psi(&sp, x)?;
                let err = psi - x;
                rep.row(&[fmt(x), fmt(psi), fmt(err), fmt(err.abs() / x.powf(0.75))]);
                if err.abs() > 0.0 {
                    fit_pts.push((x.ln(), err.abs().ln()));
                }
            }
            if fit_pts.len() >= 2 {
                let n = fit_pts.len() as f64;
                let sx: f64 = fit_pts.iter().map(|p| p.0).sum();
                let sy: f64 = fit_pts.iter().map(|p| p.1).sum();
                let sxx: f64 = fit_pts.iter().map(|p| p.0 * p.0).sum();
                let sxy: f64 = fit_pts.iter().map(|p| p.0 * p.1).sum();
                let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
                rep.trailer(format!("fitted |psi(x)-x| ~ C x^beta: beta={}", fmt(slope)));
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Euler { spectrum, s_values, grid, renorm } => {
            let tag = euler::renormalizer_by_name(renorm)
                .ok_or_else(|| gel::Error::domain(format!("unknown renormalizer `{renorm}`")))?
                .tag();
            let (sp, _) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let xs = resolve_grid(grid, spectrum.x_max, true)?;
            let mut rep = Report::new(argv, "s,x,log_raw_re,log_raw_im,renorm_re,renorm_im");
            for &s in s_values {
                let trace = euler::renormalized_trace(&sp, s, &xs, tag)?;
                for c in &trace.checkpoints {
                    rep.row(&[
                        fmt_complex_label(s),
                        fmt(c.x),
                        fmt(c.log_raw.re),
                        fmt(c.log_raw.im),
                        fmt(c.renorm.re),
                        fmt(c.renorm.im),
                    ]);
                }
                if trace.checkpoints.len() >= 2 {
                    let est = euler::estimate_limit(&trace, trace.checkpoints.len().min(3))?;
                    rep.trailer(format!(
                        "s={} tail_mean={} {} dispersion={} sign={}",
                        fmt_complex_label(s),
                        fmt(est.value.re),
                        fmt(est.value.im),
                        fmt(est.dispersion),
                        est.sign
                    ));
                }
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::MertensGeo { spectrum, grid } => {
            let (sp, _) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let xs = resolve_grid(grid, spectrum.x_max, true)?;
            let mut rep = Report::new(argv, "x,c_minus_1");
            for &x in &xs {
                let est = euler::mertens_geodesic(&sp, &[x])?;
                rep.row(&[fmt(x), fmt(est.value.re)]);
            }
            let est = euler::mertens_geodesic(&sp, &xs)?;
            rep.trailer(format!(
                "tail_mean={} dispersion={}",
                fmt(est.value.re),
                fmt(est.dispersion)
            ));
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Explicit { spectrum, grid, t_cap, spectral_file } => {
            let (sp, _) = obtain_spectrum(cli.cache_dir.as_ref(), spectrum)?;
            let (ds, src, raw) = load_spectral(spectral_file.as_ref())?;
            let xs = resolve_grid(grid, spectrum.x_max, true)?;
            let mut rep = Report::new(argv, "x,T,psi,explicit,residual,trivial_residual");
            rep.meta(format!("spectral dataset: {src} ({} entries)", ds.t_values.len()));
            rep.dataset_hash("spectral", raw.as_bytes());
            for &x in &xs {
                let t = match t_cap {
                    Some(t) => *t,
                    None => ds.default_truncation(x),
                };
                let psi = counts::psi(&sp, x)?;
                let ex = spectral::explicit_psi(&ds, x, t, true)?;
                rep.row(&[fmt(x), fmt(t), fmt(psi), fmt(ex), fmt(psi - ex), fmt(psi - x)]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Expsum { x_max, grid, spectral_file } => {
            let (ds, src, raw) = load_spectral(spectral_file.as_ref())?;
            let ts = match grid.grid {
                Some(g) => g.values(),
                None => vec![ds.max_t().unwrap_or(1.0)],
            };
            let mut rep = Report::new(argv, "T,sum_re,sum_im,abs,envelope");
            rep.meta(format!("spectral dataset: {src}"));
            rep.dataset_hash("spectral", raw.as_bytes());
            for &t in &ts {
                let es = spectral::spectral_exp_sum(&ds, *x_max, t)?;
                rep.row(&[
                    fmt(t),
                    fmt(es.value.re),
                    fmt(es.value.im),
                    fmt(es.value.norm()),
                    fmt(es.envelope),
                ]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::Baseline { which } => run_baseline(argv, cli, which),
        Command::Kloosterman { c_max, m_max, n_max, chi } => {
            let chi = DirichletCharacter::by_name(chi)
                .ok_or_else(|| gel::Error::domain(format!("unknown character `{chi}`")))?;
            let mut rep = Report::new(argv, "c,m,n,re,im,abs,bound,ok");
            let mut violations = 0u64;
            use rayon::prelude::*;
            let per_c: Vec<gel::Result<Vec<(u64, u64, u64, Complex64, f64, bool)>>> = (1..=*c_max)
                .into_par_iter()
                .map(|c| {
                    let mut rows = Vec::new();
                    if c % chi.modulus() != 0 {
                        return Ok(rows);
                    }
                    let table = baselines::KloostermanTable::new(c)?;
                    for m in 0..=*m_max {
                        for n in 0..=*n_max {
                            let s = table.sum(m, n, chi)?;
                            let bound = baselines::weil_bound(m, n, c);
                            let ok = s.norm() <= bound + 1e-9;
                            rows.push((c, m, n, s, bound, ok));
                        }
                    }
                    Ok(rows)
                })
                .collect();
            for rows in per_c {
                for (c, m, n, s, bound, ok) in rows? {
                    if !ok {
                        violations += 1;
                    }
                    rep.row(&[
                        c.to_string(),
                        m.to_string(),
                        n.to_string(),
                        fmt(s.re),
                        fmt(s.im),
                        fmt(s.norm()),
                        fmt(bound),
                        ok.to_string(),
                    ]);
                }
            }
            rep.trailer(format!("weil violations: {violations}"));
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        Command::SkZeta { m, n, s, q, chi, grid } => {
            let chi = DirichletCharacter::by_name(chi)
                .ok_or_else(|| gel::Error::domain(format!("unknown character `{chi}`")))?;
            let cs: Vec<u64> = match grid.grid {
                Some(g) => g.values().into_iter().map(|v| v as u64).collect(),
                None => vec![1000],
            };
            let mut rep = Report::new(argv, "C,re,im,abs");
            for &c_max in &cs {
                let v = baselines::selberg_kloosterman_partial(*m, *n, *s, *q, chi, c_max)?;
                rep.row(&[c_max.to_string(), fmt(v.re), fmt(v.im), fmt(v.norm())]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
    }
}

fn run_baseline(argv: &[String], cli: &Cli, which: &BaselineCommand) -> gel::Result<()> {
    match which {
        BaselineCommand::Mertens { x_max, grid } => {
            let table = PrimeTable::new(*x_max as u64)?;
            let xs = resolve_grid(grid, *x_max, true)?;
            let mut rep = Report::new(argv, "x,ratio");
            for &x in &xs {
                rep.row(&[fmt(x), fmt(baselines::mertens_ratio(&table, x)?)]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        BaselineCommand::Ramanujan { x_max, s, k, zeros_file } => {
            let table = PrimeTable::new(*x_max as u64)?;
            let (zeros, src, raw) = load_zeros(zeros_file.as_ref())?;
            let mut rep = Report::new(argv, "K,lhs,rhs,rel_err");
            rep.meta(format!("zeros dataset: {src} ({} ordinates)", zeros.len()));
            rep.dataset_hash("zeros", raw.as_bytes());
            for k_run in [0usize, *k] {
                let (lhs, rhs) = baselines::ramanujan_comparison(&table, *s, *x_max, &zeros, k_run)?;
                rep.row(&[k_run.to_string(), fmt(lhs), fmt(rhs), fmt((lhs / rhs - 1.0).abs())]);
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
        BaselineCommand::Drh { x_max, grid } => {
            let table = PrimeTable::new(*x_max as u64)?;
            let xs = resolve_grid(grid, *x_max, true)?;
            let mut rep = Report::new(argv, "x,ratio");
            let mut mean = 0.0;
            for &x in &xs {
                let r = baselines::drh_dirichlet_ratio(&table, x)?;
                mean += r;
                rep.row(&[fmt(x), fmt(r)]);
            }
            if !xs.is_empty() {
                rep.trailer(format!("log-averaged ratio: {}", fmt(mean / xs.len() as f64)));
            }
            rep.write(cli.out.as_deref())?;
            Ok(())
        }
    }
}
