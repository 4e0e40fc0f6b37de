use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gwell::config::{Command, Format, RunConfig, Target};
use gwell::error::CliResult;
use gwell::run::run;

#[derive(Parser)]
#[command(name = "gwell", version, about = "Bound states, critical depths and compact trial states of Gaussian wells")]
struct Cli {
    /// TOML configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Args, Default)]
struct MeshArgs {
    /// Mesh size.
    #[arg(long)]
    nmesh: Option<usize>,
    /// Mesh scale.
    #[arg(long)]
    h: Option<f64>,
}

#[derive(Subcommand)]
enum Sub {
    /// Energies and radial moments of every bound level.
    Solve {
        #[arg(long)]
        v0: Option<f64>,
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Critical depth of one level.
    Critical {
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        mesh: MeshArgs,
        /// Sweep the mesh scale and extrapolate.
        #[arg(long)]
        extrapolate: bool,
    },
    /// Near-threshold expansion coefficients of one level.
    ThresholdFit {
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        v0c: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        mesh: MeshArgs,
    },
    /// Optimized compact superposition for one level.
    Ansatz {
        #[arg(long)]
        v0: Option<f64>,
        #[arg(long)]
        dim: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Deuteron binding energy from the contact interaction.
    Deuteron {
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        singlet: bool,
    },
    /// Two-electron Gaussian dot ground state.
    Qdot {
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        depth: Option<f64>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Recompute a published table and compare.
    Reproduce {
        #[arg(value_enum)]
        target: Option<Target>,
    },
}

fn set<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

fn build(cli: Cli) -> CliResult<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        c.format = f;
    }
    if let Some(o) = cli.out {
        c.output = o;
    }
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    set(&mut c.workers, cli.workers);
    match cli.command {
        None => {}
        Some(Sub::Solve { v0, dim, ell, mesh }) => {
            c.command = Some(Command::Solve);
            set(&mut c.solve.v0, v0);
            set(&mut c.solve.dim, dim);
            set(&mut c.solve.ell, ell);
            if let Some(n) = mesh.nmesh {
                c.mesh.n = n;
            }
            if let Some(h) = mesh.h {
                c.mesh.h = h;
            }
        }
        Some(Sub::Critical { dim, ell, n, mesh, extrapolate }) => {
            c.command = Some(Command::Critical);
            set(&mut c.critical.dim, dim);
            set(&mut c.critical.ell, ell);
            set(&mut c.critical.n, n);
            set(&mut c.critical.nmesh, mesh.nmesh);
            set(&mut c.critical.h, mesh.h);
            c.critical.extrapolate |= extrapolate;
        }
        Some(Sub::ThresholdFit { dim, ell, n, v0c, samples, mesh }) => {
            c.command = Some(Command::ThresholdFit);
            let t = &mut c.threshold;
            set(&mut t.dim, dim);
            set(&mut t.ell, ell);
            set(&mut t.n, n);
            set(&mut t.v0c, v0c);
            set(&mut t.samples, samples);
            set(&mut t.nmesh, mesh.nmesh);
            set(&mut t.h, mesh.h);
        }
        Some(Sub::Ansatz { v0, dim, ell, terms, root, restarts }) => {
            c.command = Some(Command::Ansatz);
            let a = &mut c.ansatz;
            set(&mut a.v0, v0);
            set(&mut a.dim, dim);
            set(&mut a.ell, ell);
            set(&mut a.terms, terms);
            set(&mut a.root, root);
            set(&mut a.restarts, restarts);
        }
        Some(Sub::Deuteron { lambda, c1, c2, terms, singlet }) => {
            c.command = Some(Command::Deuteron);
            let d = &mut c.deuteron;
            set(&mut d.lambda, lambda);
            set(&mut d.c1, c1);
            set(&mut d.c2, c2);
            set(&mut d.terms, terms);
            d.singlet |= singlet;
        }
        Some(Sub::Qdot { lambda, depth, restarts }) => {
            c.command = Some(Command::Qdot);
            set(&mut c.qdot.lambda, lambda);
            set(&mut c.qdot.depth, depth);
            set(&mut c.qdot.restarts, restarts);
        }
        Some(Sub::Reproduce { target }) => {
            c.command = Some(Command::Reproduce);
            set(&mut c.reproduce.target, target);
        }
    }
    Ok(c)
}

fn main() -> ExitCode {
    let result = build(Cli::parse()).and_then(|c| run(&c));
    match result {
        Ok(outcome) => {
            for f in &outcome.manifest.files {
                println!("{}", outcome.manifest.config.output.join(&f.path).display());
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
