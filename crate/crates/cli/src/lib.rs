//! The `cellfill` command line. [`run`] maps an argument vector to an exit code
//! and the text written to stdout, so the binary and the tests share one path.
//!
//! Exit codes: 0 success, 1 domain error (`{"error":{"code",…}}`), 2 malformed
//! invocation.

pub mod caps;
mod report;

use caps::{Caps, CAPS_ENV};
use cellfill::arith::parse_q;
use cellfill::chain::{Chain, ChainJson};
use cellfill::complex::{parse_complex, parse_word, CellComplex2};
use cellfill::covers::{
    build_branched_cover, build_cover, homology_tower, mod_p_homology_rep, CoverTower, PermRep,
};
use cellfill::duality::{dualize, fill_codim2, verify_pd, PdChainMap, Skeleton, Triangulation3};
use cellfill::filling::{check_integral_real_agreement, fill, solve_primitive, FillProblem, Ring};
use cellfill::hyperbolic::{
    boundary_trace_decomposition, build_tube, check_divergence, estimate_delta,
    find_essential_loop, superlinear_certificate, tower_experiment, verify_certificate, MetricBall,
    TowerConfig,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] cellfill::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE_ERROR",
            CliError::Io { .. } => "IO_ERROR",
            CliError::Domain(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "cellfill",
    version,
    about = "Exact filling norms, covers, and duality checks for small cell complexes"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap profile (`quick`, `default`, `thorough`) or a JSON file of caps.
    #[arg(long, global = true)]
    caps: Option<String>,
    #[command(flatten)]
    cap_flags: CapFlags,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Default)]
struct CapFlags {
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    #[arg(long, global = true)]
    support_cap: Option<usize>,
    #[arg(long, global = true)]
    node_cap: Option<usize>,
    #[arg(long, global = true)]
    loop_cap: Option<usize>,
    #[arg(long, global = true)]
    degree_cap: Option<u128>,
    #[arg(long, global = true)]
    step_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology and cohomology of a 2-complex, presentation, or triangulation.
    Homology {
        #[arg(long)]
        complex: PathBuf,
    },
    /// ℓ¹-minimal 2-chain filling of a 1-chain.
    Fill {
        #[arg(long)]
        complex: PathBuf,
        /// Chain JSON, inline or a file path.
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// ℓ¹-minimal 1-cochain primitive of a 2-cochain.
    Primitive {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cochain: String,
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// Homological expansion constants.
    Rho {
        #[arg(long)]
        complex: PathBuf,
        /// `real`, `int`, or `both`.
        #[arg(long, default_value = "both")]
        ring: String,
    },
    /// Integral versus real cochain expansion constants.
    Agree {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Finite cover from a permutation rep or the mod-p homology quotient.
    Cover {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        mod_p: Option<u64>,
        /// Allow branching over 2-cells with non-trivial monodromy.
        #[arg(long)]
        branched: bool,
        /// Also write the cover in complex text format.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Level-by-level expansion experiment on a tower of covers.
    Tower {
        #[arg(long)]
        base: PathBuf,
        /// Comma-separated permrep files, one per level.
        #[arg(long)]
        reps: Option<String>,
        #[arg(long)]
        mod_p: Option<u64>,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value = "1/10")]
        eps: String,
    },
    /// Dual cellulation of a triangulated closed 3-manifold.
    Dualize {
        #[arg(long)]
        tri: PathBuf,
    },
    /// Chain-level Poincaré duality check.
    Pdcheck {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Negate one duality sign, `p:i` (fault injection).
        #[arg(long)]
        flip: Option<String>,
    },
    /// Codimension-2 filling in the primal or dual 2-skeleton.
    Codim2 {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "dual")]
        skeleton: String,
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// Four-point hyperbolicity estimate on a metric ball.
    Delta {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: usize,
        /// Geodesic as space-separated vertex ids; checked against `--path`.
        #[arg(long, requires = "path")]
        geodesic: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// Shortest certified essential loop.
    Systole {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        reps: Option<String>,
    },
    /// Tube around a certified systole.
    Tube {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        reps: Option<String>,
    },
    /// Boundary-trace decomposition and the superlinear inequality.
    Trace {
        #[arg(long)]
        complex: PathBuf,
        /// 2-chain JSON, inline or a file path.
        #[arg(long)]
        filling: String,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: usize,
        /// Edge word of the geodesic segment inside the ball, `u` to `v`.
        #[arg(long, allow_hyphen_values = true)]
        segment: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 0)]
        r0: usize,
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn is_triangulation(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("tri"))
}

fn load_complex(path: &Path) -> CliResult<CellComplex2> {
    Ok(parse_complex(&read(path)?)?)
}

fn load_tri(path: &Path) -> CliResult<Triangulation3> {
    Ok(Triangulation3::parse(&read(path)?)?)
}

fn load_reps(list: &Option<String>) -> CliResult<Vec<PermRep>> {
    let Some(list) = list else {
        return Ok(Vec::new());
    };
    list.split(',')
        .filter(|s| !s.is_empty())
        .map(|p| Ok(PermRep::parse(&read(Path::new(p.trim()))?)?))
        .collect()
}

/// Inline JSON (starting with `{`) or a path to a JSON file.
fn chain_json(arg: &str) -> CliResult<ChainJson> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(cellfill::Error::InvalidInput(format!(
            "bad chain JSON: {e}"
        )))
    })
}

fn chain_on(x: &CellComplex2, arg: &str, degree: usize) -> CliResult<Chain> {
    let cj = chain_json(arg)?;
    if cj.degree != degree {
        return Err(cellfill::Error::InvalidInput(format!(
            "expected a degree-{degree} chain, got degree {}",
            cj.degree
        ))
        .into());
    }
    Ok(cj.to_chain(|n| x.index_of(degree, n))?)
}

fn ring(s: &str) -> CliResult<Ring> {
    s.parse()
        .map_err(|e: cellfill::Error| CliError::Usage(e.to_string()))
}

fn vertex(x: &CellComplex2, name: &str) -> CliResult<usize> {
    x.vertex_id(name).ok_or_else(|| {
        cellfill::Error::DanglingReference {
            kind: "vertex",
            id: name.into(),
        }
        .into()
    })
}

fn vertex_list(x: &CellComplex2, s: &str) -> CliResult<Vec<usize>> {
    s.split_whitespace().map(|n| vertex(x, n)).collect()
}

fn resolve_caps(cli: &Cli) -> CliResult<Caps> {
    let mut caps = match std::env::var(CAPS_ENV) {
        Ok(spec) if !spec.trim().is_empty() => Caps::from_spec(&spec)?,
        _ => Caps::default(),
    };
    if let Some(spec) = &cli.caps {
        caps = if Path::new(spec).is_file() {
            Caps::from_spec(&read(Path::new(spec))?)?
        } else {
            Caps::from_spec(spec)?
        };
    }
    let f = &cli.cap_flags;
    caps.dim_cap = f.dim_cap.unwrap_or(caps.dim_cap);
    caps.support_cap = f.support_cap.unwrap_or(caps.support_cap);
    caps.node_cap = f.node_cap.unwrap_or(caps.node_cap);
    caps.loop_cap = f.loop_cap.unwrap_or(caps.loop_cap);
    caps.degree_cap = f.degree_cap.unwrap_or(caps.degree_cap);
    caps.step_cap = f.step_cap.unwrap_or(caps.step_cap);
    caps.positive()?;
    Ok(caps)
}

fn execute(cli: &Cli, caps: &Caps) -> CliResult<Value> {
    match &cli.cmd {
        Command::Homology { complex } => {
            let text = read(complex)?;
            if is_triangulation(&text) {
                let t = Triangulation3::parse(&text)?;
                let mut v = report::homology_tables(&t.chain_complex());
                v["name"] = json!(t.name);
                v["cells"] = json!(t.counts());
                v["chi"] = json!(t.euler_characteristic());
                Ok(v)
            } else {
                let x = parse_complex(&text)?;
                let mut v = report::homology_tables(&x.chain_complex());
                v["name"] = json!(x.name);
                v["cells"] = json!(x.counts());
                v["chi"] = json!(x.euler_characteristic());
                Ok(v)
            }
        }
        Command::Fill {
            complex,
            target,
            ring: r,
        } => {
            let x = load_complex(complex)?;
            let z = chain_on(&x, target, 1)?;
            let p = FillProblem::new(&x, z, ring(r)?).with_node_cap(caps.node_cap);
            let res = fill(&p)?;
            let mut v = report::fill(&res, |k| x.cell_name(2, k).to_string());
            v["verified"] = json!(res.verify(&p));
            Ok(v)
        }
        Command::Primitive {
            complex,
            cochain,
            ring: r,
        } => {
            let x = load_complex(complex)?;
            let eta = chain_on(&x, cochain, 2)?;
            let p = FillProblem::coboundary(&x, eta, ring(r)?).with_node_cap(caps.node_cap);
            let res = solve_primitive(&p)?;
            let mut v = report::fill(&res, |k| x.cell_name(1, k).to_string());
            v["verified"] = json!(res.verify(&p));
            Ok(v)
        }
        Command::Rho { complex, ring: r } => {
            let x = load_complex(complex)?;
            let mut opts = caps.rho_options(cli.seed);
            match r.as_str() {
                "both" | "int" | "integer" => {}
                "real" => opts.integer = false,
                other => return Err(CliError::Usage(format!("unknown ring {other:?}"))),
            }
            let rep = cellfill::filling::rho(&x, &opts)?;
            Ok(report::expansion(&x, &rep))
        }
        Command::Agree { complex } => {
            let x = load_complex(complex)?;
            let rep = check_integral_real_agreement(&x, &caps.rho_options(cli.seed))?;
            Ok(report::agreement(&x, &rep))
        }
        Command::Cover {
            complex,
            rep,
            mod_p,
            branched,
            emit,
        } => {
            let x = load_complex(complex)?;
            let rep = match (rep, mod_p) {
                (Some(path), None) => PermRep::parse(&read(path)?)?,
                (None, Some(p)) => mod_p_homology_rep(&x, *p, caps.degree_cap)?,
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --rep and --mod-p".into(),
                    ))
                }
            };
            let cover = if *branched {
                build_branched_cover(&x, &rep)?
            } else {
                build_cover(&x, &rep)?
            };
            let y = &cover.complex;
            if let Some(path) = emit {
                std::fs::write(path, y.to_string()).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            let mut v = report::homology_tables(&y.chain_complex());
            v["name"] = json!(y.name);
            v["rep"] = json!(rep.name);
            v["degree"] = json!(cover.degree);
            v["cells"] = json!(y.counts());
            v["chi"] = json!(y.euler_characteristic());
            v["base_chi"] = json!(x.euler_characteristic());
            Ok(v)
        }
        Command::Tower {
            base,
            reps,
            mod_p,
            levels,
            eps,
        } => {
            let x = load_complex(base)?;
            let eps = parse_q(eps).ok_or_else(|| CliError::Usage(format!("bad --eps {eps:?}")))?;
            let (tower, stop) = match (reps, mod_p) {
                (Some(_), None) => {
                    let mut t = CoverTower::new(x);
                    let mut stop = None;
                    for rep in load_reps(reps)? {
                        if let Err(e) = t.extend(rep, false) {
                            stop = Some(e);
                            break;
                        }
                    }
                    (t, stop)
                }
                (None, Some(p)) => homology_tower(x, *p, *levels, caps.degree_cap),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --reps and --mod-p".into(),
                    ))
                }
            };
            let cfg = TowerConfig {
                eps,
                loop_cap: caps.loop_cap,
                rho: caps.rho_options(cli.seed),
                filling_ratio: true,
            };
            let rep = tower_experiment(&tower, &cfg)?;
            let mut v = serde_json::to_value(&rep).expect("plain data");
            v["construction_stopped"] = match stop {
                Some(e) => json!({ "code": e.code(), "message": e.to_string() }),
                None => Value::Null,
            };
            Ok(v)
        }
        Command::Dualize { tri } => {
            let t = load_tri(tri)?;
            let d = dualize(&t)?;
            let boundaries: Vec<Value> = (1..=3)
                .map(|deg| {
                    let m = d.boundary(deg);
                    let mut entries = Vec::new();
                    for j in 0..m.cols() {
                        for i in 0..m.rows() {
                            if m.get(i, j) != 0 {
                                entries.push(json!([
                                    format!("*{}", t.simplex_name(3 - deg, j)),
                                    format!("*{}", t.simplex_name(4 - deg, i)),
                                    m.get(i, j)
                                ]));
                            }
                        }
                    }
                    json!({ "degree": deg, "entries": entries })
                })
                .collect();
            let mut v = report::homology_tables(&d.chain_complex());
            v["name"] = json!(t.name);
            v["primal_cells"] = json!(t.counts());
            v["dual_cells"] = json!(d.counts);
            v["boundaries"] = json!(boundaries);
            Ok(v)
        }
        Command::Pdcheck { tri, samples, flip } => {
            let t = load_tri(tri)?;
            let d = dualize(&t)?;
            let mut phi = PdChainMap::new(&t, &d);
            if let Some(spec) = flip {
                let parsed = spec
                    .split_once(':')
                    .and_then(|(p, i)| Some((p.parse::<usize>().ok()?, i.parse::<usize>().ok()?)));
                match parsed {
                    Some((p, i)) if p < 4 && i < t.count(p) => phi.flip(p, i),
                    _ => return Err(CliError::Usage(format!("bad --flip {spec:?}"))),
                }
            }
            let rep = verify_pd(&t, &d, &phi, *samples, cli.seed.unwrap_or(0));
            let mut v = serde_json::to_value(&rep).expect("plain data");
            v["name"] = json!(t.name);
            Ok(v)
        }
        Command::Codim2 {
            tri,
            target,
            skeleton,
            ring: r,
        } => {
            let t = load_tri(tri)?;
            let skel: Skeleton = skeleton
                .parse()
                .map_err(|e: cellfill::Error| CliError::Usage(e.to_string()))?;
            let x = match skel {
                Skeleton::Primal => t.two_skeleton(),
                Skeleton::Dual => cellfill::duality::dual_two_skeleton(&t, &dualize(&t)?)?,
            };
            let z = chain_on(&x, target, 1)?;
            let res = fill_codim2(&t, skel, z, ring(r)?)?;
            Ok(report::fill(&res, |k| x.cell_name(2, k).to_string()))
        }
        Command::Delta {
            complex,
            center,
            radius,
            geodesic,
            path,
        } => {
            let x = load_complex(complex)?;
            let ball = MetricBall::new(&x, vertex(&x, center)?, *radius);
            let delta = estimate_delta(&x, &ball.sub)?;
            let mut v = json!({
                "center": center,
                "radius": radius,
                "cells": ball.sub.counts(),
                "delta": report::q(&delta),
                "estimate": true,
            });
            if let (Some(g), Some(c)) = (geodesic, path) {
                let holds = check_divergence(
                    &x,
                    &ball.sub,
                    &vertex_list(&x, g)?,
                    &vertex_list(&x, c)?,
                    &delta,
                )?;
                v["divergence_holds"] = json!(holds);
            }
            Ok(v)
        }
        Command::Systole { complex, reps } => {
            let x = load_complex(complex)?;
            let reps = load_reps(reps)?;
            let s = find_essential_loop(&x, &reps, caps.loop_cap)?;
            Ok(report::systole(&x, &s, verify_certificate(&x, &s, &reps)))
        }
        Command::Tube { complex, reps } => {
            let x = load_complex(complex)?;
            let reps = load_reps(reps)?;
            let s = find_essential_loop(&x, &reps, caps.loop_cap)?;
            let tube = build_tube(&x, &s);
            let mut v = report::systole(&x, &s, verify_certificate(&x, &s, &reps));
            v["radius"] = json!(tube.radius);
            v["cells"] = json!(tube.sub.counts());
            Ok(v)
        }
        Command::Trace {
            complex,
            filling,
            m,
            center,
            radius,
            segment,
            u,
            v,
            r0,
            c,
        } => {
            let x = load_complex(complex)?;
            let a = chain_on(&x, filling, 2)?;
            let ball = MetricBall::new(&x, vertex(&x, center)?, *radius);
            let toks: Vec<&str> = segment.split_whitespace().collect();
            let seg = parse_word(&toks, x.edge_index())?;
            let dec = boundary_trace_decomposition(
                &x,
                &ball,
                &a,
                *m,
                &seg,
                vertex(&x, u)?,
                vertex(&x, v)?,
                caps.step_cap,
            )?;
            let delta = estimate_delta(&x, &ball.sub)?;
            let sl = superlinear_certificate(*radius, &a, *m, &delta, *r0, *c, Some(&dec))?;
            Ok(json!({
                "decomposition": report::trace(&x, &dec),
                "paths_at_least_m": dec.paths.len() as u64 >= m.unsigned_abs(),
                "delta": report::q(&delta),
                "superlinear": sl,
            }))
        }
    }
}

/// Runs one invocation. Returns the exit code and the stdout text.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => emit_error(&CliError::Usage(e.to_string())),
            };
        }
    };
    let result = resolve_caps(&cli).and_then(|caps| execute(&cli, &caps));
    match result {
        Ok(v) => {
            let text = format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("plain data")
            );
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (0, String::new()),
                    Err(e) => emit_error(&CliError::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    }),
                },
                None => (0, text),
            }
        }
        Err(e) => emit_error(&e),
    }
}

fn emit_error(e: &CliError) -> (i32, String) {
    let v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
    (
        e.exit_code(),
        format!(
            "{}\n",
            serde_json::to_string_pretty(&v).expect("plain data")
        ),
    )
}
