use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cyclic_core::catalog::{catalog_info, is_cyclic, is_jointly_cyclic_with, verify_certificate, Status};
use cyclic_core::ideal::SolveOptions;
use cyclic_core::lab::{classify_point, gram_matrix, Classification, QuadratureGrid, WeightedSpace};
use cyclic_core::{parse, MultiPolynomial};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::job::{
    CatalogJob, CheckJob, GramJob, Job, ScanJob, VerdictFile, DEFAULT_DIGITS, DEFAULT_SEED,
};

pub enum Outcome {
    Done,
    Uncertain,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("error[io]: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("error[job]: {0}")]
    Job(String),
    #[error("error[unsupported]: {0}")]
    Unsupported(String),
    #[error("error[engine]: {0}")]
    Engine(cyclic_core::Error),
    #[error("error[certificate]: {0}")]
    Certificate(String),
}

impl From<cyclic_core::Error> for CliError {
    fn from(e: cyclic_core::Error) -> Self {
        use cyclic_core::Error as E;
        match e {
            E::Unsupported(_) | E::NotSymbolic => Self::Unsupported(e.to_string()),
            E::Parse { .. } | E::InvalidInput(_) | E::DimensionMismatch { .. } | E::VariableOutOfRange { .. } => {
                Self::Job(e.to_string())
            }
            e => Self::Engine(e),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact types serialize");
    s.push('\n');
    s
}

pub fn run(job_path: &Path, out: &Path, precision: Option<u32>) -> Result<Outcome> {
    let text = read(job_path)?;
    let job: Job = serde_json::from_str(&text).map_err(|e| CliError::Job(format!("{}: {e}", job_path.display())))?;
    match job {
        Job::CheckCyclic(j) => check_cyclic(j, out),
        Job::ScanMaxdomain(j) => scan_maxdomain(j, out, precision),
        Job::GramDump(j) => gram_dump(j, out, precision),
        Job::CatalogInfo(j) => catalog(j, out),
    }
}

fn check_cyclic(job: CheckJob, out: &Path) -> Result<Outcome> {
    let dim = job.space.dim();
    let family: Vec<MultiPolynomial> =
        job.family.iter().map(|s| parse(s, dim)).collect::<cyclic_core::Result<_>>()?;
    let seed = job.seed.unwrap_or(DEFAULT_SEED);
    let mut opts = SolveOptions { seed, ..SolveOptions::default() };
    if let Some(t) = job.options.tolerance {
        opts.tolerance = t;
    }
    let joint = job.joint || family.len() != 1;
    let verdict = if joint { is_jointly_cyclic_with(&job.space, &family, &opts)? } else { is_cyclic(&job.space, &family[0])? };
    let status = verdict.status;
    let file = VerdictFile {
        space: job.space,
        input: job.family,
        family: family.iter().map(MultiPolynomial::to_canonical).collect(),
        joint,
        seed,
        verdict,
    };
    write(out, "verdict.json", &to_json(&file))?;
    println!("{}", serde_json::to_string(&status).expect("status serializes").trim_matches('"'));
    Ok(if status == Status::Uncertain { Outcome::Uncertain } else { Outcome::Done })
}

pub fn verify(path: &Path) -> Result<Outcome> {
    let text = read(path)?;
    let file: VerdictFile =
        serde_json::from_str(&text).map_err(|e| CliError::Job(format!("{}: {e}", path.display())))?;
    let dim = file.space.dim();
    let family: Vec<MultiPolynomial> = file
        .family
        .iter()
        .map(|terms| MultiPolynomial::from_canonical(dim, terms))
        .collect::<cyclic_core::Result<_>>()?;
    if !verify_certificate(&file.space, &family, &file.verdict)? {
        return Err(CliError::Certificate(format!("{}: witness check failed", path.display())));
    }
    match file.verdict.witness() {
        Some(w) => {
            let coords: Vec<String> = w.point.iter().map(|z| z.to_string()).collect();
            println!("valid: witness ({}) replayed", coords.join(", "));
        }
        None => println!("valid: no witness to replay"),
    }
    Ok(Outcome::Done)
}

fn grid_for(cap: usize, n: u32, precision: Option<u32>, job_precision: Option<u32>) -> QuadratureGrid {
    QuadratureGrid::new(cap, n, precision.or(job_precision).unwrap_or(DEFAULT_DIGITS))
}

fn scan_points(job: &ScanJob) -> Result<Vec<Complex64>> {
    let mut points = job.points.clone();
    if let Some(g) = &job.grid {
        if g.count == 0 || !(g.radius >= 1.0) {
            return Err(CliError::Job("grid needs count ≥ 1 and radius ≥ 1".into()));
        }
        points.extend((0..g.count).map(|k| Complex64::from_polar(g.radius, 2.0 * PI * k as f64 / g.count as f64)));
    }
    if points.is_empty() {
        return Err(CliError::Job("scan needs `points` or `grid`".into()));
    }
    Ok(points)
}

fn scan_maxdomain(job: ScanJob, out: &Path, precision: Option<u32>) -> Result<Outcome> {
    let points = scan_points(&job)?;
    if job.schedule.len() < 2 || job.schedule.windows(2).any(|p| p[0] >= p[1]) {
        return Err(CliError::Job("schedule must hold at least two strictly increasing degrees".into()));
    }
    let cap = *job.schedule.last().expect("checked length");
    let grid = grid_for(cap, job.n, precision, job.precision);
    let space = WeightedSpace { weight: job.weight.clone(), n: job.n };
    let g = gram_matrix(&space, cap, &grid)?;
    let diagnostics = points
        .par_iter()
        .map(|&w| classify_point(&g, w, &job.schedule, job.thresholds))
        .collect::<cyclic_core::Result<Vec<_>>>()?;

    let mut csv = String::from("w_re,w_im,N,lambda,delta,log10_condition\n");
    for d in &diagnostics {
        for ((n, lambda), (_, delta)) in d.samples.iter().zip(&d.distances) {
            writeln!(csv, "{},{},{n},{lambda:e},{delta:e},{:.6}", d.w.re, d.w.im, g.log10_condition_at(*n))
                .expect("string write");
        }
    }
    let uncertain = diagnostics.iter().any(|d| d.classification == Classification::Inconclusive);
    let summary = json!({
        "weight": job.weight,
        "n": job.n,
        "schedule": job.schedule,
        "digits": grid.digits,
        "log10_condition": g.log10_condition,
        "truncation_bound": g.truncation_bound,
        "thresholds": job.thresholds,
        "seed": job.seed.unwrap_or(DEFAULT_SEED),
        "points": diagnostics.iter().map(|d| json!({
            "w": d.w,
            "classification": d.classification,
            "distance_classification": d.distance_classification,
            "slope": d.slope,
            "distance_slope": d.distance_slope,
            "monotone": d.monotone,
            "ill_conditioned": d.ill_conditioned,
        })).collect::<Vec<_>>(),
    });
    write(out, "scan.csv", &csv)?;
    write(out, "summary.json", &to_json(&summary))?;
    let count = |c| diagnostics.iter().filter(|d| d.classification == c).count();
    println!(
        "bounded {} divergent {} inconclusive {}",
        count(Classification::Bounded),
        count(Classification::Divergent),
        count(Classification::Inconclusive)
    );
    Ok(if uncertain { Outcome::Uncertain } else { Outcome::Done })
}

fn gram_dump(job: GramJob, out: &Path, precision: Option<u32>) -> Result<Outcome> {
    let grid = grid_for(job.degree_cap, job.n, precision, job.precision);
    let space = WeightedSpace { weight: job.weight.clone(), n: job.n };
    let g = gram_matrix(&space, job.degree_cap, &grid)?;
    let digits = grid.digits as usize;
    let entries: Vec<Vec<[String; 2]>> = (0..g.size())
        .map(|j| {
            (0..g.size())
                .map(|k| {
                    let (re, im) = g.entry_decimal(j, k, digits);
                    [re, im]
                })
                .collect()
        })
        .collect();
    let dump = json!({
        "weight": job.weight,
        "n": job.n,
        "degree_cap": g.degree_cap,
        "digits": g.digits,
        "hermitian": g.hermitian,
        "log10_condition": g.log10_condition,
        "truncation_bound": g.truncation_bound,
        "quadrature": {
            "radial_nodes": grid.radial.len(),
            "radial_order": grid.radial_order,
            "dyadic_levels": grid.dyadic_levels,
            "angular_order": grid.angular_order,
            "angular_max_width": grid.angular_max_width,
        },
        "seed": job.seed.unwrap_or(DEFAULT_SEED),
        "entries": entries,
    });
    write(out, "gram.json", &to_json(&dump))?;
    println!("{}x{} Gram matrix, condition 1e{:.2}", g.size(), g.size(), g.log10_condition);
    Ok(Outcome::Done)
}

fn catalog(job: CatalogJob, out: &Path) -> Result<Outcome> {
    let info = catalog_info(&job.space)?;
    write(out, "catalog.json", &to_json(&info))?;
    match &info.maximal_domain {
        Some(m) => println!("{}: {:?}", info.label, m.kind),
        None => println!("{}: no symbolic maximal domain", info.label),
    }
    Ok(Outcome::Done)
}
