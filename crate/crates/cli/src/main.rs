use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccp_core::generators::{catalog, generate, Family, FamilyRequest};
use ccp_core::io::{self, read_document, write_mesh};
use ccp_core::surgery::{choose_prism_order, drill_repeat, DrillSpec};
use ccp_core::verify::Verdict;
use ccp_core::{Polyhedron, ToleranceSet};
use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Parser)]
#[command(
    name = "ccp",
    version,
    about = "Build and check polyhedra with constant angular defect"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a mesh from a catalog family.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        genus: Option<u32>,
        /// Family parameter, e.g. --param b=0.3 (repeatable).
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Use the construction with the fewest vertices known for the genus.
        #[arg(long)]
        prefer_fewest: bool,
        /// Output file (.json, .obj or .stl); JSON on stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a mesh and print a verification report.
    Verify {
        file: PathBuf,
        /// Defect tolerance in radians.
        #[arg(long, env = "CCP_TOLERANCE")]
        tolerance: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// List the known families.
    Catalog,
    /// Drill prism tunnels between two parallel faces.
    Drill {
        file: PathBuf,
        #[arg(long)]
        face_a: usize,
        #[arg(long)]
        face_b: usize,
        /// Prism order; defaults to |V| / -chi.
        #[arg(long)]
        n: Option<usize>,
        /// Number of tunnels.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        radius: Option<f64>,
        /// Rotation of the prism about its axis, radians.
        #[arg(long, default_value_t = 0.0, conflicts_with = "seed")]
        phase: f64,
        /// Draw the phase at random from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Allow the tunnel to cross other faces.
        #[arg(long)]
        pass_through: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Convert a mesh to another format.
    Export {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {s}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{v}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path, tol: &ToleranceSet) -> Result<Polyhedron, Failure> {
    Ok(read_document(path)?.to_polyhedron(tol)?)
}

fn save(p: &Polyhedron, path: &Path) -> Result<(), Failure> {
    write_mesh(p, path)?;
    eprintln!(
        "wrote {} ({} vertices, {} edges, {} faces)",
        path.display(),
        p.num_vertices(),
        p.num_edges(),
        p.num_faces()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let tol = ToleranceSet::default();
    match cli.command {
        Command::Generate {
            family,
            genus,
            params,
            prefer_fewest,
            output,
        } => {
            let family: Family = family.parse()?;
            let req = FamilyRequest {
                family,
                genus,
                params: params.into_iter().collect::<BTreeMap<_, _>>(),
                prefer_fewest,
            };
            let p = generate(&req)?;
            match output {
                Some(path) => save(&p, &path)?,
                None => println!("{}", io::to_json(&p)),
            }
        }
        Command::Verify {
            file,
            tolerance,
            json,
        } => {
            let tol = match tolerance {
                Some(t) if t > 0.0 && t.is_finite() => tol.with_defect(t),
                Some(t) => return Err(Failure(format!("tolerance must be positive, got {t}"))),
                None => tol,
            };
            let report = read_document(&file)?.verify(&tol);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            return Ok(match report.verdict {
                Verdict::CcpEmbedded | Verdict::CcpImmersed => ExitCode::SUCCESS,
                Verdict::NotCcp => ExitCode::from(1),
                Verdict::InvalidMesh => ExitCode::from(2),
            });
        }
        Command::Catalog => {
            println!(
                "{:<14} {:<15} {:<9} {:<16} {:<28} description",
                "id", "surface", "embedded", "genus", "vertices"
            );
            for e in catalog() {
                let surface = if e.orientable {
                    "orientable"
                } else {
                    "non-orientable"
                };
                let embedded = if e.embedded { "yes" } else { "no" };
                println!(
                    "{:<14} {:<15} {:<9} {:<16} {:<28} {}",
                    e.id, surface, embedded, e.genus, e.vertices, e.description
                );
            }
        }
        Command::Drill {
            file,
            face_a,
            face_b,
            n,
            k,
            radius,
            phase,
            seed,
            pass_through,
            output,
        } => {
            let p = load(&file, &tol)?;
            let n = match n {
                Some(n) => n,
                None => {
                    choose_prism_order(&p).map_err(|e| Failure(format!("{}: {e}", e.name())))?
                }
            };
            let phase = match seed {
                Some(s) => StdRng::seed_from_u64(s).random_range(0.0..TAU / n.max(1) as f64),
                None => phase,
            };
            let spec = DrillSpec {
                radius,
                phase,
                allow_pass_through: pass_through,
                ..DrillSpec::new(face_a, face_b, n)
            };
            let out = drill_repeat(&p, &spec, k, &tol)
                .map_err(|e| Failure(format!("{}: {e}", e.name())))?;
            save(&out, &output)?;
        }
        Command::Export { input, output } => {
            let p = load(&input, &tol)?;
            save(&p, &output)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
