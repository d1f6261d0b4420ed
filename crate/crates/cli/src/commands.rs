//! Subcommand definitions and dispatch.

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use airytau_core::airy::{airy_jet, verify_parametrix_jumps, ContourConfig};
use airytau_core::kontsevich::{log_gap, log_zn};
use airytau_core::lenard::lenard;
use airytau_core::num::{bits_for_digits, parse_float, XComplex};
use airytau_core::pade::{pade_remainder, pade_zeros, saff_varga_mu, DEFAULT_THETA0};
use airytau_core::painleve::{build_config, ode_residual, stokes_gap, DEFAULT_FD_STEP};
use airytau_core::Error;

use crate::io::{self, NumberFormat};
use crate::manifest::RunManifest;
use crate::suite;

#[derive(Parser)]
#[command(
    name = "airytau",
    version,
    about = "Generalized Kontsevich integrals as Airy determinants, Pade zero configurations, and Painleve-I-hierarchy checks"
)]
pub struct Cli {
    /// Precision tier in decimal digits (32 or 64); AIRYTAU_DIGITS overrides
    /// the default.
    #[arg(long, global = true)]
    pub digits: Option<u32>,

    /// Force JSON output for commands whose default is text or CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Emit numbers as decimal strings instead of doubles.
    #[arg(long, global = true)]
    pub strings: bool,

    /// Write a replayable run manifest to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Complex Airy function values and derivative jets.
    Airy {
        #[command(subcommand)]
        cmd: AiryCmd,
    },
    /// Exponential Pade approximants.
    Pade {
        #[command(subcommand)]
        cmd: PadeCmd,
    },
    /// Generalized Kontsevich integrals.
    Zn {
        #[command(subcommand)]
        cmd: ZnCmd,
    },
    /// Lenard-Magri differential polynomials.
    Lenard {
        #[command(subcommand)]
        cmd: LenardCmd,
    },
    /// Painleve-I-hierarchy configurations and residuals.
    P1 {
        #[command(subcommand)]
        cmd: P1Cmd,
    },
    /// Verification suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand)]
pub enum AiryCmd {
    /// Evaluate Ai_nu(z) and derivatives.
    Eval(AiryEvalArgs),
    /// Max deviation of the parametrix jumps from their constant matrices.
    VerifyJumps(VerifyJumpsArgs),
}

#[derive(Args)]
pub struct AiryEvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub re: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub im: String,
    #[arg(long, default_value_t = 0)]
    pub nu: u8,
    #[arg(long, default_value_t = 0)]
    pub deriv: usize,
}

#[derive(Args)]
pub struct VerifyJumpsArgs {
    #[arg(long)]
    pub rho: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_plus: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_minus: Option<f64>,
}

#[derive(Subcommand)]
pub enum PadeCmd {
    /// Zeros of P_r with the annulus bound report.
    Zeros {
        #[arg(long)]
        r: u32,
    },
    /// Direct vs integral remainder and the sector bound at one point.
    Remainder(PadeRemainderArgs),
}

#[derive(Args)]
pub struct PadeRemainderArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub re: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub im: String,
    /// Sector half-angle theta0 for the bound (radians).
    #[arg(long, default_value_t = DEFAULT_THETA0)]
    pub theta0: f64,
}

#[derive(Subcommand)]
pub enum ZnCmd {
    /// log Z_n for a partition file.
    Eval {
        #[arg(long)]
        input: String,
    },
    /// |log Z_n(A) - log Z_n(B)| mod 2 pi i for two partition files over
    /// the same eigenvalue multiset.
    Gap {
        #[arg(long)]
        input: String,
        #[arg(long)]
        against: String,
    },
}

#[derive(Subcommand)]
pub enum LenardCmd {
    /// Print L_n exactly.
    Show {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        latex: bool,
    },
}

#[derive(Subcommand)]
pub enum P1Cmd {
    /// Build and print an eigenvalue configuration.
    Config(P1ConfigArgs),
    /// ODE residuals |(2N+1) t L_N[u] + u + x| over an x-grid.
    Residual(P1ResidualArgs),
    /// Gap between two binnings of one configuration.
    StokesGap(P1StokesArgs),
}

#[derive(Args)]
pub struct P1ConfigArgs {
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub t_im: String,
    #[arg(long, allow_hyphen_values = true)]
    pub kplus: i32,
    #[arg(long, allow_hyphen_values = true)]
    pub kzero: i32,
    #[arg(long, allow_hyphen_values = true)]
    pub kminus: i32,
}

#[derive(Args)]
pub struct P1ResidualArgs {
    #[command(flatten)]
    pub config: P1ConfigArgs,
    /// Inclusive grid start:end:step.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = DEFAULT_FD_STEP)]
    pub h: f64,
}

#[derive(Args)]
pub struct P1StokesArgs {
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub t_im: String,
    /// First k-triple as "k_plus,k_zero,k_minus".
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Second k-triple.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Subcommand)]
pub enum SuiteCmd {
    /// Run every acceptance criterion and print one pass/fail line each.
    Acceptance,
}

pub struct Output {
    pub stdout: String,
    pub json: Value,
    pub all_passed: bool,
}

fn effective_digits(cli: &Cli) -> Result<u32, Error> {
    let digits = cli
        .digits
        .or_else(|| {
            std::env::var("AIRYTAU_DIGITS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(32);
    bits_for_digits(digits)?;
    Ok(digits)
}

/// Execute a parsed command; the caller handles printing and process exit.
pub fn run(cli: &Cli) -> Result<Output, Error> {
    let digits = effective_digits(cli)?;
    let prec = bits_for_digits(digits)?;
    let fmt = NumberFormat {
        strings: cli.strings,
        digits,
    };
    let started = Instant::now();

    let (out, params, name): (Output, Value, &str) = match &cli.command {
        Command::Airy { cmd } => match cmd {
            AiryCmd::Eval(a) => {
                let z = XComplex::new(parse_float(prec, &a.re)?, parse_float(prec, &a.im)?);
                let jet = airy_jet(&z, a.nu, a.deriv, digits)?;
                let values: Vec<Value> = jet.values.iter().map(|v| fmt.complex(v)).collect();
                let body = json!({
                    "values": values,
                    "precision_loss": jet.precision_loss,
                    "growth_warning": jet.growth_warning,
                });
                (
                    json_output(body),
                    json!({"re": a.re, "im": a.im, "nu": a.nu, "deriv": a.deriv}),
                    "airy eval",
                )
            }
            AiryCmd::VerifyJumps(a) => {
                let mut rays = ContourConfig::default();
                if let Some(v) = a.theta0 {
                    rays.theta0 = v;
                }
                if let Some(v) = a.theta_plus {
                    rays.theta_plus = v;
                }
                if let Some(v) = a.theta_minus {
                    rays.theta_minus = v;
                }
                let worst = verify_parametrix_jumps(a.rho, &rays, digits)?;
                let body = json!({"max_residual": fmt.real(&worst)});
                (
                    json_output(body),
                    json!({"rho": a.rho}),
                    "airy verify-jumps",
                )
            }
        },
        Command::Pade { cmd } => match cmd {
            PadeCmd::Zeros { r } => {
                let pade = pade_zeros(*r, digits)?;
                let mu = saff_varga_mu(digits)?;
                let zeros: Vec<Value> = pade.zeros.iter().map(|z| fmt.complex(z)).collect();
                let body = json!({
                    "r": r,
                    "zeros": zeros,
                    "bounds": {
                        "annulus_lower": 2.0 * (*r as f64) * mu.to_f64(),
                        "annulus_upper": 2.0 * (*r as f64) + 4.0 / 3.0,
                        "min_re": 2.0 * mu.to_f64(),
                        "all_ok": true,
                    },
                });
                (json_output(body), json!({"r": r}), "pade zeros")
            }
            PadeCmd::Remainder(a) => {
                let z = XComplex::new(parse_float(prec, &a.re)?, parse_float(prec, &a.im)?);
                let rem = pade_remainder(a.r, &z, a.theta0, digits)?;
                let body = json!({
                    "direct": fmt.complex(&rem.direct),
                    "integral": fmt.complex(&rem.integral),
                    "bound": fmt.real(&rem.bound),
                });
                (
                    json_output(body),
                    json!({"r": a.r, "re": a.re, "im": a.im, "theta0": a.theta0}),
                    "pade remainder",
                )
            }
        },
        Command::Zn { cmd } => match cmd {
            ZnCmd::Eval { input } => {
                let text = std::fs::read_to_string(input)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {input}: {e}")))?;
                let part = io::load_partition(&text, digits)?;
                let z = log_zn(&part, part.digits)?;
                let body = json!({
                    "log_z": fmt.complex(&z.log_z),
                    "n": z.n,
                    "digits_lost": z.digits_lost_estimate,
                    "digits_used": z.digits_used,
                });
                (json_output(body), json!({"input": input}), "zn eval")
            }
            ZnCmd::Gap { input, against } => {
                let ta = std::fs::read_to_string(input)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {input}: {e}")))?;
                let tb = std::fs::read_to_string(against)
                    .map_err(|e| Error::InvalidInput(format!("cannot read {against}: {e}")))?;
                let pa = io::load_partition(&ta, digits)?;
                let pb = io::load_partition(&tb, digits)?;
                check_same_multiset(&pa, &pb)?;
                let za = log_zn(&pa, pa.digits)?;
                let zb = log_zn(&pb, pb.digits)?;
                let gap = log_gap(&za.log_z, &zb.log_z);
                let body = json!({"gap": fmt.real(&gap)});
                (
                    json_output(body),
                    json!({"input": input, "against": against}),
                    "zn gap",
                )
            }
        },
        Command::Lenard { cmd } => match cmd {
            LenardCmd::Show { n, latex } => {
                let poly = lenard(*n)?;
                let rendered = if *latex {
                    lenard_latex(&poly)
                } else {
                    poly.to_string()
                };
                let body = json!({"n": n, "polynomial": rendered});
                let out = if cli.json {
                    json_output(body)
                } else {
                    Output {
                        stdout: rendered.clone(),
                        json: body,
                        all_passed: true,
                    }
                };
                (out, json!({"n": n, "latex": latex}), "lenard show")
            }
        },
        Command::P1 { cmd } => match cmd {
            P1Cmd::Config(a) => {
                let t = XComplex::new(parse_float(prec, &a.t)?, parse_float(prec, &a.t_im)?);
                let cfg = build_config(a.n, a.r, &t, a.kplus, a.kzero, a.kminus, digits)?;
                let body = json!({
                    "N": cfg.n_hierarchy,
                    "r": cfg.r,
                    "n": cfg.n,
                    "k": [cfg.k_plus, cfg.k_zero, cfg.k_minus],
                    "cluster_sectors": cfg.cluster_sectors,
                    "y0": cfg.y0.iter().map(|v| fmt.complex(v)).collect::<Vec<_>>(),
                    "y1": cfg.y1.iter().map(|v| fmt.complex(v)).collect::<Vec<_>>(),
                    "y2": cfg.y2.iter().map(|v| fmt.complex(v)).collect::<Vec<_>>(),
                    "lambdas": cfg.lambdas.iter().map(|v| fmt.complex(v)).collect::<Vec<_>>(),
                    "mus": cfg.mus.iter().map(|v| fmt.complex(v)).collect::<Vec<_>>(),
                });
                (
                    json_output(body),
                    json!({"N": a.n, "r": a.r, "t": a.t, "k": [a.kplus, a.kzero, a.kminus]}),
                    "p1 config",
                )
            }
            P1Cmd::Residual(a) => {
                let c = &a.config;
                let t = XComplex::new(parse_float(prec, &c.t)?, parse_float(prec, &c.t_im)?);
                let cfg = build_config(c.n, c.r, &t, c.kplus, c.kzero, c.kminus, digits)?;
                let grid = io::parse_grid(&a.grid)?;
                let report = ode_residual(&cfg, &grid, a.h, digits)?;
                let mut csv = String::from("x,u,residual,fd_error\n");
                let mut rows = Vec::new();
                for i in 0..report.x_grid.len() {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        report.x_grid[i],
                        io::format_float(&report.u_values[i], digits),
                        io::format_float(&report.residuals[i], digits),
                        io::format_float(&report.fd_errors[i], digits),
                    ));
                    rows.push(json!({
                        "x": report.x_grid[i],
                        "u": fmt.real(&report.u_values[i]),
                        "residual": fmt.real(&report.residuals[i]),
                        "fd_error": fmt.real(&report.fd_errors[i]),
                    }));
                }
                let body = json!({"fd_step": report.fd_step, "rows": rows});
                let out = if cli.json {
                    json_output(body)
                } else {
                    Output {
                        stdout: csv.trim_end().to_string(),
                        json: body,
                        all_passed: true,
                    }
                };
                (
                    out,
                    json!({"N": c.n, "r": c.r, "t": c.t, "grid": a.grid, "h": a.h}),
                    "p1 residual",
                )
            }
            P1Cmd::StokesGap(a) => {
                let t = XComplex::new(parse_float(prec, &a.t)?, parse_float(prec, &a.t_im)?);
                let ka = io::parse_triple(&a.a)?;
                let kb = io::parse_triple(&a.b)?;
                let gap = stokes_gap(a.n, a.r, &t, ka, kb, digits)?;
                let body = json!({"gap": fmt.real(&gap)});
                (
                    json_output(body),
                    json!({"N": a.n, "r": a.r, "t": a.t, "a": a.a, "b": a.b}),
                    "p1 stokes-gap",
                )
            }
        },
        Command::Suite { cmd } => match cmd {
            SuiteCmd::Acceptance => {
                let results = suite::run_acceptance();
                let mut stdout = String::new();
                for r in &results {
                    stdout.push_str(&r.render());
                    stdout.push('\n');
                }
                let all = results.iter().all(|r| r.passed);
                stdout.push_str(&format!(
                    "{}/{} criteria passed",
                    results.iter().filter(|r| r.passed).count(),
                    results.len()
                ));
                let body = json!({
                    "criteria": results.iter().map(|r| json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    })).collect::<Vec<_>>(),
                    "all_passed": all,
                });
                (
                    Output {
                        stdout: stdout.trim_end().to_string(),
                        json: body,
                        all_passed: all,
                    },
                    json!({}),
                    "suite acceptance",
                )
            }
        },
    };

    if let Some(path) = &cli.manifest {
        let manifest = RunManifest::new(name, params, digits, started.elapsed(), out.json.clone());
        manifest
            .write(path)
            .map_err(|e| Error::InvalidInput(format!("cannot write manifest {path}: {e}")))?;
    }
    Ok(out)
}

fn json_output(body: Value) -> Output {
    Output {
        stdout: serde_json::to_string_pretty(&body).expect("serializable"),
        json: body,
        all_passed: true,
    }
}

fn check_same_multiset(
    a: &airytau_core::kontsevich::SpectrumPartition,
    b: &airytau_core::kontsevich::SpectrumPartition,
) -> Result<(), Error> {
    if a.n() != b.n() {
        return Err(Error::InvalidInput(
            "partitions carry different eigenvalue counts".into(),
        ));
    }
    let mut taken = vec![false; b.n()];
    let bs = b.assigned();
    for (y, _) in a.assigned() {
        let mut found = false;
        for (j, (w, _)) in bs.iter().enumerate() {
            if !taken[j] && (&y - w).abs().to_f64() < 1e-20 {
                taken[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidInput(
                "partitions are not the same eigenvalue multiset".into(),
            ));
        }
    }
    Ok(())
}

fn lenard_latex(p: &airytau_core::lenard::DiffPolynomial) -> String {
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let (num, den) = (c.numer().clone(), c.denom().clone());
        if den == 1 {
            out.push_str(&format!("{num}"));
        } else {
            out.push_str(&format!("\\frac{{{num}}}{{{den}}}"));
        }
        if !m.is_constant() {
            out.push_str(" \\, ");
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = match k {
                    0 => "u".to_string(),
                    1..=3 => format!("u_{{{}}}", "x".repeat(k)),
                    _ => format!("u^{{({k})}}"),
                };
                out.push_str(&var);
                if e > 1 {
                    out.push_str(&format!("^{{{e}}}"));
                }
                out.push(' ');
            }
        }
    }
    out.trim_end().to_string()
}
