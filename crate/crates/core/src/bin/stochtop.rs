use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stochtop::betti::{betti_number, betti_numbers, BettiOptions};
use stochtop::codec::{read_complex, write_complex};
use stochtop::collapse::{betti_lower_bound, collapse_rounds};
use stochtop::constants::{c_threshold, g, grid, h, h_finite, t_fixed_point, t_iterates, DEFAULT_TOL};
use stochtop::harness::{curve_from_name, emit_curves, run, ExperimentConfig};
use stochtop::poisson_tree::{poisson_pmf, root_degree_after, sample_pt};
use stochtop::sampler::{clique_sample, lm_sample, mp_sample, scaling_for_c, stream_rng, MultiParameter, Preset};
use stochtop::spectra::esd;
use stochtop::traversal::empirical_local_distribution;
use stochtop::{Error, Result};

#[derive(Parser)]
#[command(name = "stochtop", version, about = "Random simplicial complexes and their limit laws")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Lm,
    Clique,
    Mp,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a complex and write it in the text format.
    Sample {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Scalar parameter for lm/clique, or comma-separated p_0..p_D for mp.
        #[arg(long)]
        p: Option<String>,
        /// Set p from n r_k = c instead (lm/clique).
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        dim_cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced Betti numbers.
    Betti {
        #[arg(long)]
        input: PathBuf,
        /// Degree; all degrees when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// ESD of the up-Laplacian as CSV `eigenvalue,mass`.
    Esd {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Law of radius-l neighborhood classes as CSV `class_code,mass`.
    Local {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synchronous (k, k+1) collapses.
    Collapse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rounds: usize,
        /// Write the collapsed complex here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root degree histogram of k-rooted Poisson trees as CSV
    /// `degree,mass,poisson` (the limiting Poisson law after the prunings).
    Pt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        trials: usize,
        /// Count the root degree after this many prunings.
        #[arg(long, default_value_t = 0)]
        prunes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Limiting constants as CSV: `h`, `g`, `t` (iterates with --l, else the
    /// fixed point), `cd` (threshold), or `curve`.
    Constants {
        #[arg(value_parser = ["h", "g", "t", "cd", "curve"])]
        what: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        l: Option<usize>,
        /// Curve name for `curve`: h, g or scaled-clique.
        #[arg(long)]
        which: Option<String>,
        /// `a:b:step` for `curve`.
        #[arg(long)]
        c_range: Option<String>,
    },
    /// Monte Carlo experiments.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run a config file; prints the JSON report.
    Run { config: PathBuf },
    /// Emit a limiting curve as CSV `c,value`.
    Curves {
        #[arg(long)]
        which: String,
        #[arg(long)]
        c_range: String,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("--{name} is required")))
}

fn range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse().map_err(|_| Error::Config(format!("bad range {s:?}"))))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b, step] => grid(a, b, step),
        _ => Err(Error::Config(format!("range {s:?} is not a:b:step"))),
    }
}

fn exec(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Sample { model, n, d, p, c, k, dim_cap, seed, out } => {
            let mut rng = stream_rng(seed, 0);
            let scalar = |preset: Preset| -> Result<f64> {
                match (&p, c) {
                    (Some(p), None) => p.trim().parse().map_err(|_| Error::Config(format!("bad --p {p:?}"))),
                    (None, Some(c)) => scaling_for_c(preset, k.unwrap_or(d.saturating_sub(1)), c, n),
                    _ => Err(Error::Config("give exactly one of --p and --c".into())),
                }
            };
            let x = match model {
                ModelArg::Lm => lm_sample(n, d, scalar(Preset::LinialMeshulam { d })?, &mut rng)?,
                ModelArg::Clique => {
                    let cap = dim_cap.unwrap_or(k.unwrap_or(d.saturating_sub(1)) + 2);
                    clique_sample(n, d, scalar(Preset::Clique { d })?, cap, &mut rng)?
                }
                ModelArg::Mp => {
                    let v: Vec<f64> = need(p, "p")?
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|_| Error::Config(format!("bad probability {s:?}"))))
                        .collect::<Result<_>>()?;
                    let mp = MultiParameter::new(v)?;
                    let cap = dim_cap.unwrap_or(mp.max_dim()).min(mp.max_dim());
                    let x = mp_sample(n, &mp, cap, &mut rng)?;
                    if cap < mp.max_dim() { x.with_cap(Some(cap)) } else { x }
                }
            };
            match out {
                Some(path) => write_complex(&path, &x),
                None => emit(None, &stochtop::codec::emit_complex(&x)),
            }
        }
        Cmd::Betti { input, k } => {
            let x = read_complex(&input)?;
            match k {
                Some(k) => println!("{}", betti_number(&x, k)?),
                None => {
                    let b = betti_numbers(&x, BettiOptions::default())?;
                    println!("k,betti");
                    for (k, b) in b.iter().enumerate() {
                        println!("{k},{b}");
                    }
                }
            }
            Ok(())
        }
        Cmd::Esd { input, k, out } => {
            let mu = esd(&read_complex(&input)?, k)?;
            let mut s = String::from("eigenvalue,mass\n");
            for (v, m) in mu.atoms() {
                s.push_str(&format!("{v},{m}\n"));
            }
            emit(out.as_deref(), &s)
        }
        Cmd::Local { input, k, radius, out } => {
            let hist = empirical_local_distribution(&read_complex(&input)?, k, radius)?;
            let mut s = String::from("class_code,mass\n");
            for (class, m) in &hist {
                s.push_str(&format!("{},{m}\n", class.code));
            }
            emit(out.as_deref(), &s)
        }
        Cmd::Collapse { input, k, rounds, out } => {
            let x = read_complex(&input)?;
            let (y, trace) = collapse_rounds(&x, k, rounds);
            println!("round,removed");
            for (i, r) in trace.removed.iter().enumerate() {
                println!("{},{}", i + 1, r.len());
            }
            eprintln!("f-vector before {:?}, after {:?}", x.f_vector(), y.f_vector());
            eprintln!("betti lower bound {}", betti_lower_bound(&x, k, rounds));
            match out {
                Some(path) => write_complex(&path, &y),
                None => Ok(()),
            }
        }
        Cmd::Pt { k, c, depth, trials, prunes, seed } => {
            if depth < prunes + 1 {
                return Err(Error::InvalidParameter(format!("depth {depth} too shallow for {prunes} prunings")));
            }
            if trials == 0 {
                return Err(Error::InvalidParameter("no trials".into()));
            }
            let mut rng = stream_rng(seed, 0);
            let mut counts: Vec<usize> = Vec::new();
            for _ in 0..trials {
                let t = sample_pt(k, c, depth, &mut rng)?;
                let deg = if prunes == 0 { t.root_degree() } else { root_degree_after(&t, prunes) };
                if counts.len() <= deg {
                    counts.resize(deg + 1, 0);
                }
                counts[deg] += 1;
            }
            // limiting law after `prunes` rounds: Po(c (1 - t^(prunes-1))^(k+1))
            let t = t_iterates(k as u32 + 1, c, prunes)[prunes];
            let po = poisson_pmf(c * (1.0 - t).powi(k as i32 + 1));
            println!("degree,mass,poisson");
            for i in 0..counts.len().max(po.len()) {
                let m = counts.get(i).copied().unwrap_or(0) as f64 / trials as f64;
                println!("{i},{m},{}", po.get(i).copied().unwrap_or(0.0));
            }
            Ok(())
        }
        Cmd::Constants { what, k, d, c, l, which, c_range } => match what.as_str() {
            "h" => {
                let k = need(k.or(d.map(|d| d.saturating_sub(1))), "k")?;
                let c = need(c, "c")?;
                match l {
                    Some(l) => println!("k,c,l,h\n{k},{c},{l},{}", h_finite(k, c, l)),
                    None => println!("k,c,h\n{k},{c},{}", h(k, c)),
                }
                Ok(())
            }
            "g" => {
                let (k, c) = (need(k, "k")?, need(c, "c")?);
                if k == 0 || c <= 0.0 {
                    return Err(Error::InvalidParameter("g needs k >= 1 and c > 0".into()));
                }
                println!("k,c,g\n{k},{c},{}", g(k, c));
                Ok(())
            }
            "t" => {
                let d = need(d.or(k.map(|k| k + 1)), "d")?;
                let c = need(c, "c")?;
                match l {
                    Some(l) => {
                        println!("l,t");
                        for (j, t) in t_iterates(d, c, l).iter().enumerate() {
                            println!("{},{t}", j as isize - 1);
                        }
                    }
                    None => {
                        let r = t_fixed_point(d, c, DEFAULT_TOL)?;
                        println!("d,c,t\n{d},{c},{}", r.value);
                    }
                }
                Ok(())
            }
            "cd" => {
                let d = need(d.or(k.map(|k| k + 1)), "d")?;
                println!("d,c_d\n{d},{}", c_threshold(d)?);
                Ok(())
            }
            _ => {
                let curve = curve_from_name(&need(which, "which")?, d, k)?;
                emit(None, &emit_curves(curve, &range(&need(c_range, "c-range")?)?))
            }
        },
        Cmd::Experiment { cmd } => match cmd {
            ExperimentCmd::Run { config } => {
                let cfg = ExperimentConfig::from_file(&config)?;
                println!("{}", run(&cfg)?.to_json()?);
                Ok(())
            }
            ExperimentCmd::Curves { which, c_range, d, k, out } => {
                let curve = curve_from_name(&which, d, k)?;
                emit(out.as_deref(), &emit_curves(curve, &range(&c_range)?))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match exec(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
