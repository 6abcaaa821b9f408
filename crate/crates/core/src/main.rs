use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use projtri::complex::ValidationLevel;
use projtri::error::Error;
use projtri::pipeline::{
    exit_code_for, export_obj, render_svg, validate_document, PipelineConfig, PointSetDocument,
    RenderOptions, SeedStrategy, TriangulationDocument,
};
use projtri::scalar::Mode;

/// Triangulations of the real projective plane from homogeneous point sets.
#[derive(Parser)]
#[command(name = "projtri", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arithmetic {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValidateLevel {
    Off,
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Triangulate a point set and write the result document.
    Triangulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        arithmetic: Arithmetic,
        /// relative tolerance for float-mode sign decisions
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        /// comma-separated strategy order: linecover,exhaustive
        #[arg(long, default_value = "linecover,exhaustive")]
        seed_strategy: String,
        /// randomize insertion order with this seed
        #[arg(long)]
        shuffle: Option<u64>,
        #[arg(long, value_enum, default_value = "fast")]
        validate: ValidateLevel,
        /// also write a topology-only OBJ file
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Validate a triangulation document; exit 0 iff all checks pass.
    Validate { file: PathBuf },
    /// Render a triangulation document as an SVG of the hemisphere disk model.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
    /// Run the independent oracle suite against the kernel.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Triangulate {
            input,
            output,
            arithmetic,
            tolerance,
            seed_strategy,
            shuffle,
            validate,
            obj,
        } => {
            let mode = match arithmetic {
                Arithmetic::Exact => Mode::Exact,
                Arithmetic::Float => {
                    if tolerance <= 0.0 || tolerance.is_nan() {
                        return Err(Error::Parse(
                            "float mode requires a positive tolerance".into(),
                        ));
                    }
                    Mode::Float { tol: tolerance }
                }
            };
            let mut strategies = Vec::new();
            for part in seed_strategy.split(',') {
                match part.trim() {
                    "linecover" => strategies.push(SeedStrategy::Linecover),
                    "exhaustive" => strategies.push(SeedStrategy::Exhaustive),
                    other => {
                        return Err(Error::Parse(format!("unknown seed strategy {other:?}")))
                    }
                }
            }
            let config = PipelineConfig {
                mode,
                seed_strategies: strategies,
                shuffle,
                validation: match validate {
                    ValidateLevel::Off => ValidationLevel::Off,
                    ValidateLevel::Fast => ValidationLevel::Fast,
                    ValidateLevel::Full => ValidationLevel::Full,
                },
                ..PipelineConfig::default()
            };
            let text = std::fs::read_to_string(&input)?;
            let doc = PointSetDocument::parse(&text, mode)?;
            let out = projtri::pipeline::triangulate(&doc, &config)?;
            std::fs::write(&output, out.to_json_string())?;
            if let Some(obj_path) = obj {
                std::fs::write(&obj_path, export_obj(&out))?;
            }
            println!(
                "triangulated {} vertices: E = {}, F = {}, chi = {}",
                out.vertex_count(),
                out.edge_count(),
                out.face_count(),
                out.euler()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)?;
            let doc = TriangulationDocument::parse(&text)?;
            let report = validate_document(&doc, 1000, 0);
            for check in &report.checks {
                println!(
                    "{}: {}",
                    check.name,
                    if check.passed { "pass" } else { "FAIL" }
                );
                for d in check.details.iter().take(3) {
                    println!("  {d}");
                }
            }
            println!(
                "V = {}, E = {}, F = {}, chi = {}",
                report.vertex_count, report.edge_count, report.face_count, report.euler
            );
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(5))
            }
        }
        Command::Render { file, output, size } => {
            let text = std::fs::read_to_string(&file)?;
            let doc = TriangulationDocument::parse(&text)?;
            let svg = render_svg(&doc, &RenderOptions { size });
            std::fs::write(&output, svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let mut ok = true;

            let eq = projtri::oracle::classify_oracle_equivalence(20, 10_000, 42);
            let pass = eq.passed();
            ok &= pass;
            println!(
                "classify-vs-oracle equivalence ({} instances): {}",
                eq.instances,
                if pass { "pass" } else { "FAIL" }
            );
            for d in eq.disagreements.iter().take(3) {
                println!("  {d}");
            }

            // tiling of the two base constructions
            let mode = Mode::Exact;
            let pts: Vec<projtri::ProjectivePoint> = [
                (1, 0, 0),
                (0, 1, 0),
                (0, 0, 1),
                (1, 1, 1),
                (1, 2, 4),
                (4, 2, 1),
            ]
            .iter()
            .map(|&(x, y, z)| projtri::ProjectivePoint::from_ints(x, y, z, mode).unwrap())
            .collect();
            let quad = [
                pts[0].clone(),
                pts[1].clone(),
                pts[2].clone(),
                pts[3].clone(),
            ];
            let init = projtri::seed::build_initial(&quad, mode)?;
            let tiling = projtri::oracle::sample_tiling(&init.tri, 10_000, 7);
            let pass = tiling.passed();
            ok &= pass;
            println!(
                "initial-triangulation sphere tiling (10000 samples): {}",
                if pass { "pass" } else { "FAIL" }
            );

            let cs = projtri::seed::CanonicalSet {
                quad: [0, 1, 2, 3],
                extras: [4, 5],
            };
            let built = projtri::seed::build_canonical(&pts, &cs, mode)?;
            let tiling = projtri::oracle::sample_tiling(&built.tri, 10_000, 9);
            let pass = tiling.passed();
            ok &= pass;
            println!(
                "canonical-triangulation sphere tiling (10000 samples): {}",
                if pass { "pass" } else { "FAIL" }
            );

            // general-position enumeration against the greedy strategy
            let gp = projtri::oracle::brute_force_general_position(&pts)?;
            let greedy = projtri::seed::find_seed_exhaustive(&pts).is_ok();
            let pass = !gp.is_empty() == greedy;
            ok &= pass;
            println!(
                "general-position oracle vs greedy seed search: {}",
                if pass { "pass" } else { "FAIL" }
            );

            if ok {
                println!("selftest: all oracle checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("selftest: FAILURES");
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
