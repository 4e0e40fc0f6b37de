//! Command dispatch and output persistence.

use std::path::Path;

use gwell_core::ansatz::{optimize_with, OptimizeOptions};
use gwell_core::deuteron::{binding_energy_threshold_formula, DeuteronModel, SpinChannel};
use gwell_core::qdot::GROUND_CRITICAL_DEPTH;
use gwell_core::mesh::MeshSpec;
use gwell_core::spectrum::{radial_moments, solve_well, WellSpec};
use serde_json::json;

use crate::cache::Cache;
use crate::config::{Command, RunConfig};
use crate::context::{Context, Job};
use crate::error::{CliError, CliResult};
use crate::manifest::{FileDigest, RunManifest, MANIFEST_NAME};
use crate::records::{encode, AnsatzRecord, DeuteronRecord, SolveRecord};
use crate::reference;
use crate::reproduce::{
    deuteron_job, deuteron_records, extrapolation_job, pencil_job, qdot_job, reproduce, threshold_job_with, threshold_mesh, FitOutput,
    QDotOutput, THRESHOLD_SAMPLES,
};

pub const CACHE_NAME: &str = "cache.jsonl";

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// 0 on success, 1 when a reproduced table misses a tolerance.
    pub status: i32,
    pub manifest: RunManifest,
}

/// Validates, computes, then writes `<stem>.<ext>` files, the cache and the manifest.
pub fn run(config: &RunConfig) -> CliResult<RunOutcome> {
    config.validate()?;
    let workers = config.worker_count()?;
    let command = config.command()?;
    let out = config.output.as_path();
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let cache = Cache::open(&out.join(CACHE_NAME))?;
    let mut ctx = Context::new(workers, cache, config.seed)?;
    let (files, passed) = ctx.stage(command.name(), |ctx| dispatch(ctx, config, command))?;
    let mut digests = Vec::new();
    for (stem, data) in &files {
        let name = format!("{stem}.{}", config.format.extension());
        let path = out.join(&name);
        std::fs::write(&path, data).map_err(|e| CliError::io(&path, e))?;
        digests.push(FileDigest::of(out, &name)?);
    }
    if out.join(CACHE_NAME).exists() {
        digests.push(FileDigest::of(out, CACHE_NAME)?);
    }
    let manifest = RunManifest {
        artifact: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        workers,
        stages: ctx.stages.clone(),
        files: digests,
        status: if passed { "ok" } else { "failed" }.into(),
    };
    write_manifest(out, &manifest)?;
    Ok(RunOutcome { status: if passed { 0 } else { 1 }, manifest })
}

fn write_manifest(out: &Path, manifest: &RunManifest) -> CliResult<()> {
    let mut data = serde_json::to_vec_pretty(manifest)?;
    data.push(b'\n');
    let path = out.join(MANIFEST_NAME);
    std::fs::write(&path, data).map_err(|e| CliError::io(&path, e))
}

type Files = Vec<(String, Vec<u8>)>;

fn dispatch(ctx: &mut Context, config: &RunConfig, command: Command) -> CliResult<(Files, bool)> {
    let f = config.format;
    let single = |rows: Vec<u8>| Ok((vec![(command.name().to_string(), rows)], true));
    match command {
        Command::Solve => single(encode(&solve(ctx, config)?, f)?),
        Command::Critical => {
            let c = &config.critical;
            let (d, ell, n) = (c.dim.unwrap_or(3), c.ell.unwrap_or(0), c.n.unwrap_or(1));
            let job = if c.extrapolate {
                ("critical-extrapolated", extrapolation_job(d, ell, n))
            } else {
                ("critical-pencil", pencil_job(d, ell, n, c.nmesh.unwrap_or(1000), c.h.unwrap_or(1.0)))
            };
            single(encode(&ctx.run(job.0, vec![job.1])?, f)?)
        }
        Command::ThresholdFit => {
            let fit = threshold_fit(ctx, config)?;
            single(encode(&[fit.record], f)?)
        }
        Command::Ansatz => single(encode(&ansatz(ctx, config)?, f)?),
        Command::Deuteron => single(encode(&deuteron(ctx, config)?, f)?),
        Command::Qdot => {
            let q = &config.qdot;
            let restarts = q.restarts.unwrap_or(6);
            let rows: Vec<(f64, f64)> = match (q.lambda, q.depth) {
                (Some(l), Some(v)) => vec![(l, v)],
                _ => reference::TABLE5.iter().map(|r| (r.0, r.1)).collect(),
            };
            let jobs = rows.iter().map(|(l, v)| qdot_job(*l, *v, restarts, ctx.seed)).collect();
            let out: Vec<QDotOutput> = ctx.run("qdot", jobs)?;
            let records: Vec<_> = out.into_iter().map(|o| o.record).collect();
            single(encode(&records, f)?)
        }
        Command::Reproduce => {
            let target = config.reproduce.target.ok_or_else(|| CliError::Validation("missing target".into()))?;
            let r = ctx.stage(target.name(), |ctx| reproduce(ctx, target, f))?;
            let passed = r.passed();
            let mut files = vec![(target.name().to_string(), encode(&r.report, f)?)];
            files.extend(r.extra);
            Ok((files, passed))
        }
    }
}

fn solve(ctx: &mut Context, config: &RunConfig) -> CliResult<Vec<SolveRecord>> {
    let s = &config.solve;
    let (v0, dim, ell) = (s.v0.unwrap_or(0.0), s.dim.unwrap_or(3), s.ell.unwrap_or(0));
    let (nmesh, h) = (config.mesh.n, config.mesh.h);
    let job = Job::new(json!({ "v0": v0, "dim": dim, "ell": ell, "nmesh": nmesh, "h": h }), move || {
        let well = WellSpec::new(v0, dim, ell)?;
        let spectrum = solve_well(&well, MeshSpec::for_well(&well, nmesh, h))?;
        spectrum
            .states
            .iter()
            .map(|st| {
                let (mean_r, sigma_r) = radial_moments(st)?;
                Ok(SolveRecord { dim, ell, v0, nmesh, h, n: st.n, energy: st.energy, mean_r, sigma_r })
            })
            .collect::<CliResult<Vec<_>>>()
    });
    Ok(ctx.run("solve-all", vec![job])?.remove(0))
}

fn threshold_fit(ctx: &mut Context, config: &RunConfig) -> CliResult<FitOutput> {
    let t = &config.threshold;
    let (d, ell, n) = (t.dim.unwrap_or(3), t.ell.unwrap_or(0), t.n.unwrap_or(1));
    let v0c = match t.v0c {
        Some(v) => v,
        None if d == 2 && ell == 0 && n == 1 => 0.0,
        None if ell == 0 => ctx.run("critical-extrapolated", vec![extrapolation_job(d, ell, n)])?[0].v0c,
        None => ctx.run("critical-pencil", vec![pencil_job(d, ell, n, 1000, 1.0)])?[0].v0c,
    };
    let (nmesh, h) = threshold_mesh(d, ell);
    let samples = t.samples.unwrap_or(THRESHOLD_SAMPLES);
    let job = threshold_job_with(d, ell, n, v0c, samples, t.nmesh.unwrap_or(nmesh), t.h.unwrap_or(h));
    Ok(ctx.run("threshold-fit", vec![job])?.remove(0))
}

fn ansatz(ctx: &mut Context, config: &RunConfig) -> CliResult<Vec<AnsatzRecord>> {
    let a = &config.ansatz;
    let (v0, dim, ell) = (a.v0.unwrap_or(0.0), a.dim.unwrap_or(3), a.ell.unwrap_or(0));
    let (terms, root, restarts, seed) = (a.terms.unwrap_or(1), a.root.unwrap_or(0), a.restarts.unwrap_or(8), ctx.seed);
    let job = Job::new(
        json!({ "v0": v0, "dim": dim, "ell": ell, "terms": terms, "root": root, "restarts": restarts, "seed": seed }),
        move || {
            let well = WellSpec::new(v0, dim, ell)?;
            let st = optimize_with(&well, terms, &OptimizeOptions { restarts, seed, root, ..Default::default() })?;
            Ok(st
                .configs
                .iter()
                .zip(&st.linear_coeffs)
                .enumerate()
                .map(|(i, (c, w))| AnsatzRecord {
                    dim,
                    ell,
                    v0,
                    terms,
                    root,
                    term: i + 1,
                    a: c.a,
                    b: c.b,
                    s: c.s,
                    coeff: *w,
                    energy: st.energy,
                    flagged: st.flagged,
                })
                .collect())
        },
    );
    Ok(ctx.run("ansatz", vec![job])?.remove(0))
}

fn deuteron(ctx: &mut Context, config: &RunConfig) -> CliResult<Vec<DeuteronRecord>> {
    let d = &config.deuteron;
    let terms = d.terms.unwrap_or(3);
    let custom = d.lambda.is_some() || d.hbar2_over_mu.is_some() || d.singlet;
    let mut records = Vec::new();
    if !custom {
        let mut jobs = Vec::new();
        for row in &reference::TABLE4 {
            jobs.push(deuteron_job(*row, None));
            for k in 1..=terms {
                jobs.push(deuteron_job(*row, Some(k)));
            }
        }
        for r in ctx.run("deuteron", jobs)? {
            records.extend(r);
        }
        for row in &reference::TABLE4 {
            let model = DeuteronModel::new(row.lambda, row.c1, row.c2);
            let f = binding_energy_threshold_formula(&model, &reference::TABLE3_S[0].1, GROUND_CRITICAL_DEPTH)?;
            records.extend(deuteron_records(&f, row.lambda));
        }
        return Ok(records);
    }
    let base = DeuteronModel::lambda4();
    let model = DeuteronModel {
        lambda: d.lambda.unwrap_or(base.lambda),
        c1: d.c1.unwrap_or(base.c1),
        c2: d.c2.unwrap_or(base.c2),
        hbar2_over_mu: d.hbar2_over_mu.unwrap_or(base.hbar2_over_mu),
        channel: if d.singlet { SpinChannel::Singlet } else { SpinChannel::Triplet },
    };
    let inputs = |k: Option<usize>| {
        json!({
            "lambda": model.lambda, "c1": model.c1, "c2": model.c2,
            "hbar2_over_mu": model.hbar2_over_mu, "singlet": d.singlet, "terms": k,
        })
    };
    let mut jobs: Vec<Job<Vec<DeuteronRecord>>> = Vec::new();
    for k in std::iter::once(None).chain((1..=terms).map(Some)) {
        jobs.push(Job::new(inputs(k), move || {
            let r = match k {
                None => gwell_core::deuteron::binding_energy_lmm(&model)?,
                Some(k) => gwell_core::deuteron::binding_energy_ansatz(&model, k)?,
            };
            Ok(deuteron_records(&r, model.lambda))
        }));
    }
    for r in ctx.run("deuteron-model", jobs)? {
        records.extend(r);
    }
    Ok(records)
}

/// Output path of the primary result file.
pub fn primary_output(config: &RunConfig) -> CliResult<std::path::PathBuf> {
    let stem = match config.command()? {
        Command::Reproduce => config.reproduce.target.map(|t| t.name()).unwrap_or("reproduce"),
        c => c.name(),
    };
    Ok(config.output.join(format!("{stem}.{}", config.format.extension())))
}
