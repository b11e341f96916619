mod bound;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use curvegenus::hilbert::{genus_upper_bound, ConstraintSet};
use curvegenus::surface::{
    certify_general_projection, certify_not_on_hypersurface, h0_ideal, Arithmetic, ParamSurface, SurfaceSpec,
};
use curvegenus::verify::{self, DEFAULT_SEED, SUITES};
use curvegenus::{Error, Int};
use rayon::prelude::*;
use serde::Serialize;

use bound::{Family, Params};

#[derive(Debug, Parser)]
#[command(
    name = "curvegenus",
    version,
    about = "Genus bounds for projective curves, checked with exact arithmetic"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a genus bound at one degree or over a range.
    Bound {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        r: Option<Int>,
        #[arg(long, conflicts_with = "d_range")]
        d: Option<Int>,
        /// Inclusive degree range `A..B`.
        #[arg(long)]
        d_range: Option<String>,
        #[arg(long)]
        s: Option<Int>,
        /// Ambient dimension for `castelnuovo`.
        #[arg(long)]
        ambient: Option<Int>,
    },
    /// Close a Hilbert function constraint file and bound the genus.
    Search {
        #[arg(long)]
        constraints: PathBuf,
        /// Overrides (or supplies) the degree in the file.
        #[arg(long)]
        d: Option<i64>,
        /// Overrides (or supplies) `N` in the file.
        #[arg(long)]
        ambient: Option<i64>,
    },
    /// Ideal dimensions of parametrized surfaces.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// Run the reproduction checks.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Debug, Subcommand)]
enum SurfaceAction {
    /// `h0(I_S(k))` by sampling.
    H0(SurfaceArgs),
    /// Certify that `S` lies on no hypersurface of degree `k`; exit 1 if not.
    Certify(SurfaceArgs),
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    /// Descriptor JSON, inline or as a path, e.g.
    /// `{"kind": "scroll", "a": 3, "b": 3, "target_dim": 5}`.
    #[arg(long)]
    surface: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// exact, rational, modular or auto.
    #[arg(long, default_value = "auto")]
    arithmetic: Arithmetic,
    /// Projections tried by `certify` before giving up.
    #[arg(long, default_value_t = 8)]
    attempts: usize,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Every check, or one suite.
    Paper {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        only: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the structured report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Infeasible { .. }) => 3,
        Some(Error::Inconclusive { .. }) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Bound {
            family,
            r,
            d,
            d_range,
            s,
            ambient,
        } => {
            let degrees: Vec<Int> = match (d, d_range) {
                (Some(d), _) => vec![d],
                (None, Some(text)) => {
                    let (a, b) = bound::parse_range(&text)?;
                    num_iter(&a, &b)
                }
                (None, None) => bail!("give --d or --d-range"),
            };
            let params = Params { r, s, ambient };
            let rows: Vec<Vec<bound::BoundRow>> = degrees
                .par_iter()
                .map(|d| bound::rows(family, &params, d))
                .collect::<Result<_>>()?;
            let rows: Vec<bound::BoundRow> = rows.into_iter().flatten().collect();
            emit(format, &rows, || bound::render(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            constraints,
            d,
            ambient,
        } => search(format, &constraints, d, ambient),
        Command::Surface { action } => surface(format, action),
        Command::Verify {
            target: VerifyTarget::Paper { only, seed, report },
        } => {
            let result = verify::run(only.as_deref(), seed)?;
            if let Some(path) = report {
                fs::write(&path, result.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Table => print!("{}", result.render_table()),
                Format::Structured => print!("{}", result.to_json()),
            }
            Ok(if result.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn num_iter(a: &Int, b: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut d = a.clone();
    while &d <= b {
        out.push(d.clone());
        d += 1;
    }
    out
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Table => print!("{}", table()),
        Format::Structured => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SearchOutput {
    label: String,
    d: i64,
    #[serde(rename = "N")]
    n: i64,
    profile: Vec<i64>,
    bound: i64,
    strict: bool,
    max_genus: i64,
}

fn read_constraints(path: &Path, d: Option<i64>, n: Option<i64>) -> Result<ConstraintSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: serde_json::Value = if text.trim().is_empty() {
        serde_json::json!({})
    } else {
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    let Some(object) = value.as_object_mut() else {
        return Err(Error::Parse(format!("{}: expected a JSON object", path.display())).into());
    };
    if let Some(d) = d {
        object.insert("d".to_string(), d.into());
    }
    if let Some(n) = n {
        object.insert("N".to_string(), n.into());
    }
    Ok(ConstraintSet::from_json(&value.to_string())?)
}

fn search(format: Format, path: &Path, d: Option<i64>, n: Option<i64>) -> Result<ExitCode> {
    let c = read_constraints(path, d, n)?;
    let estimate = genus_upper_bound(&c)?;
    let out = SearchOutput {
        label: c.label.clone(),
        d: c.d,
        n: c.n,
        profile: estimate.profile.values.clone(),
        bound: estimate.bound,
        strict: estimate.strict,
        max_genus: estimate.max_genus(),
    };
    emit(format, &out, || {
        let mut s = String::new();
        if !out.label.is_empty() {
            s.push_str(&format!("label: {}\n", out.label));
        }
        s.push_str(&format!("d = {}, N = {}\n", out.d, out.n));
        s.push_str(&format!("profile: {:?}\n", out.profile));
        if out.strict {
            s.push_str(&format!("genus < {} (so genus <= {})\n", out.bound, out.max_genus));
        } else {
            s.push_str(&format!("genus <= {}\n", out.bound));
        }
        s
    })?;
    Ok(ExitCode::SUCCESS)
}

fn load_surface(arg: &str) -> Result<SurfaceSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    Ok(SurfaceSpec::from_json(&text)?)
}

fn surface(format: Format, action: SurfaceAction) -> Result<ExitCode> {
    match action {
        SurfaceAction::H0(a) => {
            let spec = load_surface(&a.surface)?;
            let s = spec.build(a.seed)?;
            let h = h0_ideal(&s, a.k, a.seed, a.arithmetic)?;
            emit(format, &h, || {
                format!(
                    "{}: h0(I(k)) = {} for k = {} ({} monomials, {} samples, seed {}, {} arithmetic)\nkernel history: {:?}\n",
                    describe(&s),
                    h.kernel_dim,
                    h.k,
                    h.monomials,
                    h.samples_used,
                    h.seed,
                    format!("{:?}", h.arithmetic).to_lowercase(),
                    h.history
                )
            })?;
            Ok(ExitCode::SUCCESS)
        }
        SurfaceAction::Certify(a) => {
            let spec = load_surface(&a.surface)?;
            let kind = spec.surface_kind()?;
            let (certified, table, json) = match spec.target_dim {
                Some(target) => {
                    let seed = spec.seed.unwrap_or(a.seed);
                    let c = certify_general_projection(kind, target, a.k, seed, a.attempts, a.arithmetic)?;
                    let line = format!(
                        "{} projected to P{target}: kernel {} in degree {} after {} redrawn projection(s), projection seed {}\n",
                        kind.describe(),
                        c.certification.kernel_dim,
                        a.k,
                        c.retries,
                        c.projection_seed
                    );
                    (c.certification.certified, line, serde_json::to_string_pretty(&c)?)
                }
                None => {
                    let s = ParamSurface::new(kind);
                    let c = certify_not_on_hypersurface(&s, a.k, a.seed, a.arithmetic)?;
                    let line = format!("{}: kernel {} in degree {}\n", kind.describe(), c.kernel_dim, a.k);
                    (c.certified, line, serde_json::to_string_pretty(&c)?)
                }
            };
            match format {
                Format::Table => println!(
                    "{table}{}",
                    if certified {
                        "certified: on no hypersurface of this degree"
                    } else {
                        "not certified"
                    }
                ),
                Format::Structured => println!("{json}"),
            }
            Ok(if certified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn describe(s: &ParamSurface) -> String {
    match &s.projection {
        Some(_) => format!("{} projected to P{}", s.kind.describe(), s.ambient_dim()),
        None => s.kind.describe(),
    }
}
