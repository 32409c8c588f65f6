//! Subcommand implementations.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use fockops::function::{solve_preimage, AffineSymbol, ExpPolyFunction, FunctionRep, TaylorFunction};
use fockops::norms::{fock_norm, hu_norm, paley_norm, Family, FockTypeParams, PNorm, QuadratureConfig};
use fockops::section::{build_matrix, ratio_test, sigma_min, spectral_radius_estimate};
use fockops::symbol::{
    classify_d_focktype, classify_wcd, g_region, sampling_probe, ClassificationReport,
    OperatorSpec, PolarWindow, Verdict,
};
use fockops::verify::{run_verify, VerifyOptions};
use fockops::FockError;

use crate::parse::{parse_complex, parse_complex_list, parse_expo};

/// Exit code signalling a `needs_probe` verdict so scripts can branch.
pub const EXIT_NEEDS_PROBE: i32 = 2;

// ---- operator resolution -------------------------------------------------

#[derive(Debug, Clone, Default)]
pub struct SpecFlags {
    pub u_poly: Option<String>,
    pub u_expo: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub n: usize,
    pub psi_constant: bool,
    pub spec_file: Option<PathBuf>,
}

/// Build the operator from flags, or load it from a JSON spec file
/// (flags are rejected alongside a file to keep requests unambiguous).
pub fn resolve_spec(flags: &SpecFlags) -> Result<OperatorSpec> {
    if let Some(path) = &flags.spec_file {
        if flags.u_poly.is_some() || flags.u_expo.is_some() || flags.a.is_some() || flags.b.is_some()
        {
            bail!("--spec-file excludes the individual symbol flags");
        }
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading spec file {}", path.display()))?;
        let spec: OperatorSpec = serde_json::from_str(&text)
            .with_context(|| format!("parsing spec file {}", path.display()))?;
        return Ok(spec);
    }
    let u_poly = match &flags.u_poly {
        Some(s) => parse_complex_list(s).context("--u-poly")?,
        None => vec![Complex64::new(1.0, 0.0)],
    };
    let u_expo = match &flags.u_expo {
        Some(s) => parse_expo(s).context("--u-expo")?,
        None => [Complex64::new(0.0, 0.0); 3],
    };
    let a = match &flags.a {
        Some(s) => parse_complex(s).context("--a")?,
        None => Complex64::new(1.0, 0.0),
    };
    let b = match &flags.b {
        Some(s) => parse_complex(s).context("--b")?,
        None => Complex64::new(0.0, 0.0),
    };
    let psi = if flags.psi_constant {
        AffineSymbol::constant(b)
    } else {
        AffineSymbol::new(a, b)
    };
    Ok(OperatorSpec::new(ExpPolyFunction::new(u_poly, u_expo), psi, flags.n))
}

fn envelope<R: Serialize>(request: Value, result: &R) -> Result<Value> {
    Ok(json!({
        "request": request,
        "result": serde_json::to_value(result)?,
    }))
}

fn classify_exit(report: &ClassificationReport) -> i32 {
    if report.closed_range == Verdict::NeedsProbe {
        EXIT_NEEDS_PROBE
    } else {
        0
    }
}

// ---- classify -------------------------------------------------------------

pub fn run_classify_classical(spec: &OperatorSpec, p: PNorm, q: PNorm) -> Result<(Value, i32)> {
    let report = classify_wcd(spec, p, q)?;
    let request = json!({
        "subcommand": "classify",
        "space": "classical",
        "spec": serde_json::to_value(spec)?,
        "p": serde_json::to_value(p)?,
        "q": serde_json::to_value(q)?,
    });
    let exit = classify_exit(&report);
    Ok((envelope(request, &report)?, exit))
}

pub fn run_classify_focktype(m: f64, p: PNorm, q: PNorm) -> Result<(Value, i32)> {
    let report = classify_d_focktype(m, p, q);
    let request = json!({
        "subcommand": "classify",
        "space": "focktype",
        "m": m,
        "p": serde_json::to_value(p)?,
        "q": serde_json::to_value(q)?,
    });
    let exit = classify_exit(&report);
    Ok((envelope(request, &report)?, exit))
}

// ---- norm ------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Fock,
    Paley,
    Hu,
}

impl NormKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fock" => Ok(NormKind::Fock),
            "paley" => Ok(NormKind::Paley),
            "hu" => Ok(NormKind::Hu),
            _ => bail!("unknown norm kind {s:?} (fock|paley|hu)"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FunctionFlags {
    pub f_poly: Option<String>,
    pub f_expo: Option<String>,
    pub f_taylor: Option<String>,
    pub fn_file: Option<PathBuf>,
}

pub fn resolve_function(flags: &FunctionFlags) -> Result<FunctionRep> {
    if let Some(path) = &flags.fn_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading function file {}", path.display()))?;
        let f: FunctionRep = serde_json::from_str(&text)
            .with_context(|| format!("parsing function file {}", path.display()))?;
        return Ok(f);
    }
    if let Some(coeffs) = &flags.f_taylor {
        if flags.f_poly.is_some() || flags.f_expo.is_some() {
            bail!("--f-taylor excludes --f-poly/--f-expo");
        }
        return Ok(TaylorFunction::new(parse_complex_list(coeffs)?).into());
    }
    let poly = match &flags.f_poly {
        Some(s) => parse_complex_list(s).context("--f-poly")?,
        None => vec![Complex64::new(1.0, 0.0)],
    };
    let expo = match &flags.f_expo {
        Some(s) => parse_expo(s).context("--f-expo")?,
        None => [Complex64::new(0.0, 0.0); 3],
    };
    Ok(ExpPolyFunction::new(poly, expo).into())
}

#[allow(clippy::too_many_arguments)]
pub fn run_norm(
    f: &FunctionRep,
    kind: NormKind,
    family: Family,
    m: f64,
    p: PNorm,
    n: usize,
    cfg: &QuadratureConfig,
    request: Value,
) -> Result<(Value, i32)> {
    let params = match family {
        Family::ClassicalFock => FockTypeParams::classical(p),
        Family::FockType => FockTypeParams::fock_type(m, p),
    };
    let outcome = match kind {
        NormKind::Fock => fock_norm(f, &params, cfg),
        NormKind::Paley => paley_norm(f, m, p, cfg),
        NormKind::Hu => hu_norm(f, p, n, cfg),
    };
    match outcome {
        Ok(norm) => {
            let mut result = serde_json::to_value(&norm)?;
            result["status"] = json!("ok");
            Ok((json!({ "request": request, "result": result }), 0))
        }
        Err(FockError::Divergent { what }) => {
            let result = json!({ "status": "divergent", "reason": what });
            Ok((json!({ "request": request, "result": result }), 0))
        }
        Err(e) => Err(e.into()),
    }
}

// ---- matrix ----------------------------------------------------------------

pub fn run_matrix_json(spec: &OperatorSpec, n_dim: usize, offset: usize) -> Result<(Value, i32)> {
    let mat = build_matrix(spec, n_dim, offset)?;
    let entries: Vec<Vec<[f64; 2]>> = (0..mat.n_rows)
        .map(|i| (0..n_dim).map(|j| {
            let e = mat.entry(i, j);
            [e.re, e.im]
        }).collect())
        .collect();
    let request = json!({
        "subcommand": "matrix",
        "spec": serde_json::to_value(spec)?,
        "n_dim": n_dim,
        "offset": offset,
    });
    let result = json!({
        "n_dim": mat.n_dim,
        "n_rows": mat.n_rows,
        "offset": mat.offset,
        "basis_note": mat.basis_note,
        "entries": entries,
        "column_norms": mat.column_norms(),
        "column_tails": mat.column_tails,
        "flags": mat.flags,
    });
    Ok((json!({ "request": request, "result": result }), 0))
}

/// Row-major CSV with "re,im" cells (quoted per RFC 4180).
pub fn run_matrix_csv(spec: &OperatorSpec, n_dim: usize, offset: usize) -> Result<String> {
    let mat = build_matrix(spec, n_dim, offset)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for i in 0..mat.n_rows {
        let row: Vec<String> = (0..n_dim)
            .map(|j| {
                let e = mat.entry(i, j);
                format!("{},{}", e.re, e.im)
            })
            .collect();
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

// ---- probes ----------------------------------------------------------------

pub fn run_probe_sigma_min(
    spec: &OperatorSpec,
    sizes: &[usize],
    offset: Option<usize>,
) -> Result<(Value, i32)> {
    let offset = offset.unwrap_or(spec.n);
    let mut rows = Vec::new();
    for &n_dim in sizes {
        let mat = build_matrix(spec, n_dim, offset)?;
        rows.push(json!({ "n_dim": n_dim, "sigma_min": sigma_min(&mat) }));
    }
    let request = json!({
        "subcommand": "probe",
        "probe": "sigma-min",
        "spec": serde_json::to_value(spec)?,
        "sizes": sizes,
        "offset": offset,
    });
    let result = json!({
        "rows": rows,
        "label": "probe",
        "note": "matrix probes run in the square-norm basis only",
    });
    Ok((json!({ "request": request, "result": result }), 0))
}

pub fn run_probe_spectral_radius(
    spec: &OperatorSpec,
    n_dim: usize,
    m_max: usize,
) -> Result<(Value, i32)> {
    let mat = build_matrix(spec, n_dim, 0)?;
    let seq = spectral_radius_estimate(&mat, m_max);
    let request = json!({
        "subcommand": "probe",
        "probe": "spectral-radius",
        "spec": serde_json::to_value(spec)?,
        "n_dim": n_dim,
        "m_max": m_max,
    });
    let result = json!({ "sequence": seq, "label": "probe" });
    Ok((json!({ "request": request, "result": result }), 0))
}

#[allow(clippy::too_many_arguments)]
pub fn run_probe_sampling(
    spec: &OperatorSpec,
    epsilon: f64,
    r_max: f64,
    grid: usize,
    p: PNorm,
    max_degree: usize,
    cfg: &QuadratureConfig,
) -> Result<(Value, i32)> {
    let window = PolarWindow::with_grid(r_max, grid, grid);
    let region = g_region(spec, epsilon, window);
    let k = spec.n;
    let testset: Vec<TaylorFunction> = (k.max(1)..=max_degree.max(k.max(1)))
        .map(TaylorFunction::monomial)
        .collect();
    let probe = sampling_probe(&region, p, k, &testset, cfg)?;
    let request = json!({
        "subcommand": "probe",
        "probe": "sampling",
        "spec": serde_json::to_value(spec)?,
        "epsilon": epsilon,
        "r_max": r_max,
        "grid": grid,
        "p": serde_json::to_value(p)?,
        "k": k,
        "max_degree": max_degree,
    });
    Ok((envelope(request, &probe)?, 0))
}

// ---- sweeps ----------------------------------------------------------------

pub fn run_sweep_ratio_csv(m: f64, p: PNorm, q: PNorm, k_max: usize) -> Result<String> {
    let rt = ratio_test(m, p, q, k_max)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "ratio", "log_ratio"])?;
    for row in &rt.rows {
        w.write_record([row.k.to_string(), row.ratio.to_string(), row.log_ratio.to_string()])?;
    }
    w.write_record([
        "fit_exponent".to_string(),
        rt.fitted_tail_exponent.to_string(),
        String::new(),
    ])?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn run_sweep_ratio_json(m: f64, p: PNorm, q: PNorm, k_max: usize) -> Result<(Value, i32)> {
    let rt = ratio_test(m, p, q, k_max)?;
    let request = json!({
        "subcommand": "sweep",
        "sweep": "ratio",
        "m": m,
        "p": serde_json::to_value(p)?,
        "q": serde_json::to_value(q)?,
        "k_max": k_max,
    });
    Ok((envelope(request, &rt)?, 0))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::NeedsProbe => "needs_probe",
    }
}

/// Boundedness map over an m-grid at fixed exponents. An empty grid
/// yields just the header.
pub fn run_sweep_boundary_csv(
    p: PNorm,
    q: PNorm,
    m_from: f64,
    m_to: f64,
    m_steps: usize,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["m", "bounded", "compact", "closed_range", "surjective"])?;
    for i in 0..m_steps {
        let m = if m_steps == 1 {
            m_from
        } else {
            m_from + (m_to - m_from) * i as f64 / (m_steps as f64 - 1.0)
        };
        let rep = classify_d_focktype(m, p, q);
        w.write_record([
            m.to_string(),
            verdict_str(rep.bounded).to_string(),
            verdict_str(rep.compact).to_string(),
            verdict_str(rep.closed_range).to_string(),
            verdict_str(rep.surjective).to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

// ---- preimage (exposed through `probe solve`) -------------------------------

pub fn run_probe_solve(
    spec: &OperatorSpec,
    target: &FunctionRep,
    degree: usize,
    radius: f64,
) -> Result<(Value, i32)> {
    let h = match target {
        FunctionRep::ExpPoly(h) => h.clone(),
        FunctionRep::Taylor(_) => bail!("the preimage solver takes an exp-poly target"),
    };
    let out = solve_preimage(&spec.u, &spec.psi, spec.n, &h, degree, radius)?;
    let request = json!({
        "subcommand": "probe",
        "probe": "solve",
        "spec": serde_json::to_value(spec)?,
        "target": serde_json::to_value(target)?,
        "degree": degree,
        "radius": radius,
    });
    Ok((envelope(request, &out)?, 0))
}

// ---- verify ----------------------------------------------------------------

pub fn run_verify_cli(only: Option<String>, inject_fault: Option<String>) -> Result<(Value, i32)> {
    let opts = VerifyOptions { only: only.clone(), inject_fault: inject_fault.clone() };
    let manifest = run_verify(&opts);
    let exit = if manifest.passed { 0 } else { 1 };
    let request = json!({
        "subcommand": "verify",
        "only": only,
        "inject_fault": inject_fault,
    });
    Ok((envelope(request, &manifest)?, exit))
}
