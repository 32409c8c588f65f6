//! `fockops`: classifiers and numeric probes for differentiation and
//! weighted composition-differentiation operators on Fock spaces.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use fockops::norms::{Family, PNorm, QuadratureConfig};
use fockops_cli::parse::{parse_pnorm, parse_usize_list};
use fockops_cli::*;

#[derive(Parser)]
#[command(
    name = "fockops",
    about = "Operator classification and numerics on Fock-type spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct SpecArgs {
    /// Weight polynomial coefficients, ascending ("1;0,1" is 1 + i z).
    #[arg(long)]
    u_poly: Option<String>,
    /// Weight exponent triple a0,a1,a2 ("0,-1,0" is e^{-z}).
    #[arg(long)]
    u_expo: Option<String>,
    /// Symbol slope a ("re" or "re,im").
    #[arg(long)]
    a: Option<String>,
    /// Symbol offset b.
    #[arg(long)]
    b: Option<String>,
    /// Derivative order n.
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Force a constant symbol psi == b.
    #[arg(long, default_value_t = false)]
    psi_constant: bool,
    /// JSON operator file (excludes the flags above).
    #[arg(long)]
    spec_file: Option<PathBuf>,
}

impl SpecArgs {
    fn flags(&self) -> SpecFlags {
        SpecFlags {
            u_poly: self.u_poly.clone(),
            u_expo: self.u_expo.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            n: self.n,
            psi_constant: self.psi_constant,
            spec_file: self.spec_file.clone(),
        }
    }
}

#[derive(Args, Clone)]
struct QuadArgs {
    /// Gauss-Legendre nodes per radial panel.
    #[arg(long, default_value_t = 32)]
    radial_nodes: usize,
    /// Fixed angular node count (0 = adaptive).
    #[arg(long, default_value_t = 0)]
    angular_nodes: usize,
    /// Outer radius cap.
    #[arg(long, default_value_t = 2048.0)]
    r_cut_max: f64,
    /// Relative tail target.
    #[arg(long, default_value_t = 1e-12)]
    rel_tail: f64,
}

impl QuadArgs {
    fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            radial_nodes: self.radial_nodes,
            angular_nodes: self.angular_nodes,
            r_cut_max: self.r_cut_max,
            rel_tail_target: self.rel_tail,
            ..QuadratureConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify an operator: bounded / compact / order bounded /
    /// closed range / surjective. Exit code 2 flags `needs_probe`.
    Classify {
        /// "classical" (weighted composition-differentiation) or
        /// "focktype" (the derivative between Fock-type spaces).
        #[arg(long, value_parser = ["classical", "focktype"])]
        space: String,
        /// Growth exponent (focktype space).
        #[arg(long)]
        m: Option<f64>,
        #[arg(long, value_parser = parse_pnorm)]
        p: PNorm,
        #[arg(long, value_parser = parse_pnorm)]
        q: PNorm,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weighted norms of an entire function.
    Norm {
        /// fock | paley | hu.
        #[arg(long, default_value = "fock")]
        kind: String,
        #[arg(long, value_parser = ["classical", "focktype"], default_value = "classical")]
        family: String,
        /// Growth exponent for the Fock-type family (and the paley kind).
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, value_parser = parse_pnorm)]
        p: PNorm,
        /// Derivative order for the hu kind.
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Function polynomial coefficients.
        #[arg(long)]
        f_poly: Option<String>,
        /// Function exponent triple.
        #[arg(long)]
        f_expo: Option<String>,
        /// Taylor coefficients (";"-separated).
        #[arg(long)]
        f_taylor: Option<String>,
        /// JSON function file.
        #[arg(long)]
        fn_file: Option<PathBuf>,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-section matrix export.
    Matrix {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 16)]
        n_dim: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numeric evidence probes.
    Probe {
        #[command(subcommand)]
        probe: ProbeCommand,
    },
    /// Parameter sweeps (CSV for plotting).
    Sweep {
        #[command(subcommand)]
        sweep: SweepCommand,
    },
    /// Run the oracle-vs-module verification suite.
    Verify {
        /// Substring filter on check ids.
        #[arg(long)]
        only: Option<String>,
        /// Test hook: force the named check to fail.
        #[arg(long)]
        inject_fault: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Smallest singular value across section sizes.
    SigmaMin {
        #[command(flatten)]
        spec: SpecArgs,
        /// Section sizes, e.g. "10,20,40,80".
        #[arg(long, default_value = "10,20,40,80")]
        sizes: String,
        /// Domain offset (defaults to the derivative order n).
        #[arg(long)]
        offset: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Power-norm sequence ||T^m||^{1/m}.
    SpectralRadius {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 60)]
        n_dim: usize,
        #[arg(long, default_value_t = 20)]
        m_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Empirical sampling constant of the image super-level region.
    Sampling {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 8.0)]
        r_max: f64,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, value_parser = parse_pnorm)]
        p: PNorm,
        /// Highest monomial degree in the test set.
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve D_{(u,psi,n)} f = h for f and report the residual.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        /// Target polynomial coefficients.
        #[arg(long)]
        h_poly: Option<String>,
        /// Target exponent triple.
        #[arg(long)]
        h_expo: Option<String>,
        #[arg(long, default_value_t = 60)]
        degree: usize,
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Monomial norm ratios k ||z^{k-1}||_(m,q) / ||z^k||_(m,p).
    Ratio {
        #[arg(long)]
        m: f64,
        #[arg(long, value_parser = parse_pnorm)]
        p: PNorm,
        #[arg(long, value_parser = parse_pnorm)]
        q: PNorm,
        #[arg(long, default_value_t = 200)]
        k_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derivative-operator verdicts over an m-grid.
    Boundary {
        #[arg(long, value_parser = parse_pnorm)]
        p: PNorm,
        #[arg(long, value_parser = parse_pnorm)]
        q: PNorm,
        #[arg(long)]
        m_from: f64,
        #[arg(long)]
        m_to: f64,
        #[arg(long)]
        m_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit_text(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

fn emit_json(output: &OutputArgs, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    emit_text(output, &text)
}

fn dispatch() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { space, m, p, q, spec, output } => {
            let (value, exit) = match space.as_str() {
                "focktype" => {
                    let m = m.ok_or_else(|| anyhow::anyhow!("--m is required for focktype"))?;
                    run_classify_focktype(m, p, q)?
                }
                _ => {
                    let op = resolve_spec(&spec.flags())?;
                    run_classify_classical(&op, p, q)?
                }
            };
            emit_json(&output, &value)?;
            Ok(exit)
        }
        Command::Norm {
            kind,
            family,
            m,
            p,
            n,
            f_poly,
            f_expo,
            f_taylor,
            fn_file,
            quad,
            output,
        } => {
            let kind = NormKind::parse(&kind)?;
            let fam = if family == "focktype" { Family::FockType } else { Family::ClassicalFock };
            let flags = FunctionFlags { f_poly, f_expo, f_taylor, fn_file };
            let f = resolve_function(&flags)?;
            let request = serde_json::json!({
                "subcommand": "norm",
                "kind": match kind { NormKind::Fock => "fock", NormKind::Paley => "paley", NormKind::Hu => "hu" },
                "family": family,
                "m": m,
                "p": serde_json::to_value(p)?,
                "n": n,
                "f": serde_json::to_value(&f)?,
                "quadrature": serde_json::to_value(quad.config())?,
            });
            let (value, exit) = run_norm(&f, kind, fam, m, p, n, &quad.config(), request)?;
            emit_json(&output, &value)?;
            Ok(exit)
        }
        Command::Matrix { spec, n_dim, offset, output } => {
            let op = resolve_spec(&spec.flags())?;
            if output.format == "csv" {
                let text = run_matrix_csv(&op, n_dim, offset)?;
                emit_text(&output, &text)?;
            } else {
                let (value, _) = run_matrix_json(&op, n_dim, offset)?;
                emit_json(&output, &value)?;
            }
            Ok(0)
        }
        Command::Probe { probe } => match probe {
            ProbeCommand::SigmaMin { spec, sizes, offset, output } => {
                let op = resolve_spec(&spec.flags())?;
                let sizes = parse_usize_list(&sizes)?;
                let (value, exit) = run_probe_sigma_min(&op, &sizes, offset)?;
                emit_json(&output, &value)?;
                Ok(exit)
            }
            ProbeCommand::SpectralRadius { spec, n_dim, m_max, output } => {
                let op = resolve_spec(&spec.flags())?;
                let (value, exit) = run_probe_spectral_radius(&op, n_dim, m_max)?;
                emit_json(&output, &value)?;
                Ok(exit)
            }
            ProbeCommand::Sampling { spec, epsilon, r_max, grid, p, max_degree, quad, output } => {
                let op = resolve_spec(&spec.flags())?;
                let (value, exit) =
                    run_probe_sampling(&op, epsilon, r_max, grid, p, max_degree, &quad.config())?;
                emit_json(&output, &value)?;
                Ok(exit)
            }
            ProbeCommand::Solve { spec, h_poly, h_expo, degree, radius, output } => {
                let op = resolve_spec(&spec.flags())?;
                let flags = FunctionFlags { f_poly: h_poly, f_expo: h_expo, ..Default::default() };
                let h = resolve_function(&flags)?;
                let (value, exit) = run_probe_solve(&op, &h, degree, radius)?;
                emit_json(&output, &value)?;
                Ok(exit)
            }
        },
        Command::Sweep { sweep } => match sweep {
            SweepCommand::Ratio { m, p, q, k_max, output } => {
                if output.format == "csv" {
                    let text = run_sweep_ratio_csv(m, p, q, k_max)?;
                    emit_text(&output, &text)?;
                } else {
                    let (value, _) = run_sweep_ratio_json(m, p, q, k_max)?;
                    emit_json(&output, &value)?;
                }
                Ok(0)
            }
            SweepCommand::Boundary { p, q, m_from, m_to, m_steps, output } => {
                let text = run_sweep_boundary_csv(p, q, m_from, m_to, m_steps)?;
                emit_text(&output, &text)?;
                Ok(0)
            }
        },
        Command::Verify { only, inject_fault, output } => {
            let (value, exit) = run_verify_cli(only, inject_fault)?;
            emit_json(&output, &value)?;
            Ok(exit)
        }
    }
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
