//! Command dispatch for the torfan CLI.
//!
//! Exit codes: 0 on success (and on passing verifications), 1 on a failing
//! verification (the report is still printed), 2 on input errors. The seed
//! for randomized commands comes from `--seed`, falling back to the
//! `TORFAN_SEED` environment variable, then to 0.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use torfan::corpus::{random_instances, CorpusKind, CorpusParams};
use torfan::error::Error;
use torfan::io::{
    complex_to_document, content_hash, document_to_complex, document_to_fan, fan_to_document,
    instance_to_parts, parse_instance, parse_rational, polyhedron_to_document, to_canonical_json,
    ComplexDocument, FanDocument, IoError,
};
use torfan::quotient::{
    chow_fan, fiber_fan, git_chamber_complex, git_quotient_fan, verify_affine_duality,
    verify_fiber_duality, verify_main_theorem, FiberFanRoute,
};
use torfan::svg::{render_complex, render_fan};

#[derive(Parser)]
#[command(
    name = "torfan",
    version,
    about = "Exact fiber fans, GIT chamber complexes and toric Chow quotient fans"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Direct,
    Dual,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Fiberduality,
    Main,
    Affine,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mixed,
    Cones,
    Nonpointed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dual cone of the input cone
    Dual { input: Option<PathBuf> },
    /// Inner normal fan of the input polyhedron
    NormalFan { input: Option<PathBuf> },
    /// Fiber fan of the projection (both routes by default)
    FiberFan {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
    },
    /// GIT chamber decomposition of the projected polyhedron
    Chambers { input: Option<PathBuf> },
    /// Normal fan of the fiber over the linearization v
    QuotientFan {
        input: Option<PathBuf>,
        /// Linearization, comma-separated rationals, e.g. --v 1 or --v 1,1/2
        #[arg(long, value_delimiter = ',', required = true)]
        v: Vec<String>,
    },
    /// Fan of the toric Chow quotient (fiber fan, both routes)
    ChowFan { input: Option<PathBuf> },
    /// Machine-verify one of the duality statements on the instance
    Verify {
        #[arg(value_enum)]
        claim: ClaimArg,
        input: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit a seeded random instance corpus (one JSON document per line)
    RandomCorpus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "mixed")]
        kind: KindArg,
    },
    /// Render a fan or complex document (ambient dimension <= 2) to SVG
    Render {
        input: Option<PathBuf>,
        #[arg(long, required = true)]
        svg: PathBuf,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("TORFAN_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn load_instance(
    path: &Option<PathBuf>,
) -> Result<(torfan::Polyhedron, torfan::ProjectionContext, String), String> {
    let text = read_input(path)?;
    let doc = parse_instance(&text).map_err(|e| e.to_string())?;
    let hash = content_hash(doc.canonical_json().as_bytes());
    let (p, ctx) = instance_to_parts(&doc).map_err(|e| e.to_string())?;
    Ok((p, ctx, hash))
}

pub fn run_command(argv: &[String]) -> i32 {
    let mut full = vec!["torfan".to_string()];
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32, String> {
    match cmd {
        Cmd::Dual { input } => {
            let (p, _ctx, hash) = load_instance(&input)?;
            let dual = p.dual_cone().map_err(|e| e.to_string())?;
            print!(
                "{}",
                to_canonical_json(&polyhedron_to_document(&dual, "dual", &hash))
            );
            Ok(0)
        }
        Cmd::NormalFan { input } => {
            let (p, _ctx, hash) = load_instance(&input)?;
            let fan = torfan::fan::normal_fan(&p).map_err(|e| e.to_string())?;
            print!(
                "{}",
                to_canonical_json(&fan_to_document(&fan, "normal-fan", &hash))
            );
            Ok(0)
        }
        Cmd::FiberFan { input, route } => {
            let (p, ctx, hash) = load_instance(&input)?;
            let route = match route {
                RouteArg::Direct => FiberFanRoute::Direct,
                RouteArg::Dual => FiberFanRoute::Dual,
                RouteArg::Both => FiberFanRoute::Both,
            };
            match fiber_fan(&p, &ctx, route) {
                Ok(fan) => {
                    print!(
                        "{}",
                        to_canonical_json(&fan_to_document(&fan, "fiber-fan", &hash))
                    );
                    Ok(0)
                }
                Err(Error::RouteMismatch { .. }) => {
                    eprintln!("error: fiber fan routes disagree (internal consistency failure)");
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Chambers { input } => {
            let (p, ctx, hash) = load_instance(&input)?;
            let k = git_chamber_complex(&p, &ctx).map_err(|e| e.to_string())?;
            print!(
                "{}",
                to_canonical_json(&complex_to_document(&k, "chambers", &hash))
            );
            Ok(0)
        }
        Cmd::QuotientFan { input, v } => {
            let (p, ctx, hash) = load_instance(&input)?;
            let v: Result<Vec<_>, IoError> = v.iter().map(|s| parse_rational(s)).collect();
            let v = v.map_err(|e| e.to_string())?;
            if v.len() != ctx.d() {
                return Err(format!(
                    "linearization has {} entries, expected {}",
                    v.len(),
                    ctx.d()
                ));
            }
            let fan = git_quotient_fan(&p, &ctx, &v).map_err(|e| e.to_string())?;
            let op = format!(
                "quotient-fan --v {}",
                v.iter()
                    .map(torfan::io::format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            print!("{}", to_canonical_json(&fan_to_document(&fan, &op, &hash)));
            Ok(0)
        }
        Cmd::ChowFan { input } => {
            let (p, ctx, hash) = load_instance(&input)?;
            match chow_fan(&p, &ctx) {
                Ok(fan) => {
                    print!(
                        "{}",
                        to_canonical_json(&fan_to_document(&fan, "chow-fan", &hash))
                    );
                    Ok(0)
                }
                Err(Error::RouteMismatch { .. }) => {
                    eprintln!("error: fiber fan routes disagree (internal consistency failure)");
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Verify {
            claim,
            input,
            samples,
            seed,
        } => {
            let (p, ctx, _hash) = load_instance(&input)?;
            let samples = samples.unwrap_or(25);
            let seed = resolve_seed(seed);
            let report = match claim {
                ClaimArg::Fiberduality => verify_fiber_duality(&p, &ctx, samples, seed),
                ClaimArg::Main => verify_main_theorem(&p, &ctx),
                ClaimArg::Affine => verify_affine_duality(&p, &ctx),
            }
            .map_err(|e| e.to_string())?;
            print!("{}", to_canonical_json(&report));
            Ok(if report.passed() { 0 } else { 1 })
        }
        Cmd::RandomCorpus {
            n,
            d,
            count,
            seed,
            kind,
        } => {
            if n < 2 || d == 0 || d >= n {
                return Err(format!("need n >= 2 and 0 < d < n, got n={n}, d={d}"));
            }
            let seed = resolve_seed(seed);
            let kind = match kind {
                KindArg::Mixed => CorpusKind::Mixed,
                KindArg::Cones => CorpusKind::Cones,
                KindArg::Nonpointed => CorpusKind::NonPointedSliceCones,
            };
            let params = CorpusParams::new(n, d, count, seed).kind(kind);
            for doc in random_instances(&params) {
                print!("{}", doc.canonical_json());
            }
            Ok(0)
        }
        Cmd::Render { input, svg } => {
            let text = read_input(&input)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("parse error: {e}"))?;
            let kind = value
                .get("kind")
                .and_then(|k| k.as_str())
                .ok_or("schema error: document has no \"kind\" field")?;
            let rendered = match kind {
                "fan" => {
                    let doc: FanDocument =
                        serde_json::from_str(&text).map_err(|e| format!("parse error: {e}"))?;
                    let fan = document_to_fan(&doc).map_err(|e| e.to_string())?;
                    render_fan(&fan)
                }
                "complex" => {
                    let doc: ComplexDocument =
                        serde_json::from_str(&text).map_err(|e| format!("parse error: {e}"))?;
                    let k = document_to_complex(&doc).map_err(|e| e.to_string())?;
                    render_complex(&k)
                }
                other => return Err(format!("schema error: cannot render kind {other:?}")),
            }
            .map_err(|e| e.to_string())?;
            std::fs::write(&svg, rendered)
                .map_err(|e| format!("cannot write {}: {e}", svg.display()))?;
            Ok(0)
        }
    }
}
