//! `vahlen`: verification suites, exhaustive enumeration, single Möbius
//! evaluations and orbit censuses from the command line.
//!
//! Exit status: 0 when every checked property holds, 1 when one fails,
//! 2 for usage or configuration errors.

use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use vahlen::census::orbit_census;
use vahlen::cmatrix::CMatrixJson;
use vahlen::halfspace::PointJson;
use vahlen::quadspace::{vector_to_json, SpaceJson};
use vahlen::vahlen::{vahlen_failure, verify_equivalence_exhaustive};
use vahlen::verify::{run_all, VerifyConfig};
use vahlen::{CMatrix2, CliffordAlgebra, FieldDesc, HalfSpace, QuadraticSpace, Scalar, VahlenKind};

#[derive(Parser)]
#[command(name = "vahlen", version, about = "Exact checks for Clifford algebras, Vahlen groups and Möbius actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded property suites on one space.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Use a deliberately broken product, to check that failures are caught.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare the four Vahlen membership conditions on every matrix over a prime field.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Apply one Vahlen matrix to one point.
    Act {
        #[command(flatten)]
        run: RunArgs,
        /// Matrix JSON {"a","b","c","d"} (inline or a file path).
        #[arg(long)]
        matrix: String,
        /// Point JSON (inline or a file path); defaults to the base point σ_c.
        #[arg(long)]
        point: Option<String>,
        /// Also compute the image through the hyperboloid model and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Orbits of the Vahlen group and its special subgroup over a prime field.
    Orbit {
        #[command(flatten)]
        run: RunArgs,
        /// Perturb the predicted orbit count, to check that mismatches are caught.
        #[arg(long, hide = true)]
        mutate_prediction: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Q, or a prime field such as F3 / GF5.
    #[arg(long)]
    field: Option<String>,
    /// Quadratic space JSON (inline or a file path). Default: qdiag (1, -1).
    #[arg(long)]
    space: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
    #[arg(long, default_value = "vector")]
    kind: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 8)]
    gen_length: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

struct Config {
    space: QuadraticSpace,
    c: Scalar,
    kind: VahlenKind,
    seed: u64,
    samples: usize,
    gen_length: usize,
    json: bool,
}

/// Inline JSON, or the contents of a file.
fn read_json(arg: &str, what: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else if Path::new(arg).exists() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {what} from {arg}"))?
    } else {
        bail!("{what} is neither JSON nor an existing file: {arg}");
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what}"))
}

impl RunArgs {
    fn config(&self) -> Result<Config> {
        let field_flag: Option<FieldDesc> = self.field.as_deref().map(str::parse).transpose()?;
        let space = match &self.space {
            None => QuadraticSpace::diagonal(field_flag.unwrap_or(FieldDesc::Rationals), &[1, -1]),
            Some(arg) => {
                let mut value = read_json(arg, "space")?;
                let obj = value.as_object_mut().ok_or_else(|| anyhow!("space must be a JSON object"))?;
                if !obj.contains_key("field") {
                    let f = field_flag.unwrap_or(FieldDesc::Rationals);
                    obj.insert("field".into(), json!(f.to_string()));
                }
                if !obj.contains_key("dim") {
                    let n = obj.get("qdiag").and_then(Value::as_array).map_or(0, Vec::len);
                    obj.insert("dim".into(), json!(n));
                }
                let parsed: SpaceJson = serde_json::from_value(value).context("space JSON")?;
                let space = QuadraticSpace::from_json(&parsed)?;
                if let Some(f) = field_flag {
                    if f != space.field() {
                        bail!("--field {f} conflicts with the space's field {}", space.field());
                    }
                }
                space
            }
        };
        if self.samples == 0 {
            bail!("--samples must be at least 1");
        }
        Ok(Config {
            c: space.field().parse_scalar(&self.c)?,
            kind: self.kind.parse()?,
            space,
            seed: self.seed,
            samples: self.samples,
            gen_length: self.gen_length,
            json: self.json,
        })
    }
}

fn print_json(v: Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(())
}

fn cmd_verify(cfg: Config, inject_fault: bool) -> Result<bool> {
    let alg = if inject_fault {
        CliffordAlgebra::new_faulty(cfg.space.clone())?
    } else {
        CliffordAlgebra::new(cfg.space.clone())?
    };
    // sample panics become counterexamples; keep stderr quiet about them
    std::panic::set_hook(Box::new(|_| {}));
    let report = run_all(
        &alg,
        &VerifyConfig {
            c: cfg.c.clone(),
            kind: cfg.kind,
            seed: cfg.seed,
            samples: cfg.samples,
            gen_length: cfg.gen_length,
        },
    )?;
    if cfg.json {
        print_json(serde_json::to_value(&report)?)?;
    } else {
        println!(
            "space {:?} over {}, c = {}, {} model, seed {}, {} samples",
            report.space.qdiag, report.field, report.c, report.kind, report.seed, report.samples
        );
        for p in &report.properties {
            let status = if p.passed { "PASS" } else { "FAIL" };
            println!("{status} {}/{} ({} checked)", p.suite, p.name, p.checked);
            if let Some(ce) = &p.counterexample {
                println!("  counterexample: {ce}");
            }
        }
        println!("{}", if report.passed { "all properties hold" } else { "property failure" });
    }
    Ok(report.passed)
}

fn cmd_enumerate(cfg: Config) -> Result<bool> {
    let alg = CliffordAlgebra::new(cfg.space)?;
    let report = verify_equivalence_exhaustive(&alg, cfg.kind)?;
    let ok = report.consistent();
    if cfg.json {
        print_json(serde_json::to_value(&report)?)?;
    } else {
        println!("{} matrices over {}, dim {}, {} kind", report.matrices, report.field, report.dim, report.kind);
        for (name, count) in &report.counts {
            println!("  {name}: {count}");
        }
        println!("  T transposition-invariant: {}", report.t_star_invariant);
        println!("  all four sets coincide: {}", report.condition_sets_equal);
        println!("  conditions 1 and 4 coincide: {}", report.conditions_1_and_4_equal);
        println!("{}", if ok { "consistent" } else { "inconsistent" });
    }
    Ok(ok)
}

fn cmd_act(cfg: Config, matrix: &str, point: Option<&str>, cross_check: bool) -> Result<bool> {
    let alg = CliffordAlgebra::new(cfg.space)?;
    let mj: CMatrixJson = serde_json::from_value(read_json(matrix, "matrix")?).context("matrix JSON")?;
    let m = CMatrix2::from_json(&alg, &mj)?;
    let h = HalfSpace::new(&alg, cfg.c, cfg.kind)?;
    let p = match point {
        Some(arg) => {
            let pj: PointJson = serde_json::from_value(read_json(arg, "point")?).context("point JSON")?;
            h.point_from_json(&pj)?
        }
        None => h.base_point(),
    };
    if let Some(clause) = vahlen_failure(&m, cfg.kind) {
        if cfg.json {
            print_json(json!({ "error": "NotVahlen", "clause": clause }))?;
        }
        eprintln!("not a Vahlen matrix: {clause}");
        return Ok(false);
    }
    let image = h.mobius_apply(&m, &p)?;
    let image_json = h.point_to_json(&image);
    if !cross_check {
        print_json(serde_json::to_value(&image_json)?)?;
        return Ok(true);
    }
    let w = h.to_k(&p)?;
    let w_image = h.orthogonal_apply(&m, &w)?;
    let via_k = h.from_k(&w_image)?;
    let agree = via_k == image;
    print_json(json!({
        "result": image_json,
        "k_vector": vector_to_json(&w),
        "k_image": vector_to_json(&w_image),
        "via_k": h.point_to_json(&via_k),
        "agree": agree,
    }))?;
    Ok(agree)
}

fn cmd_orbit(cfg: Config, mutate: bool) -> Result<bool> {
    let alg: Arc<CliffordAlgebra> = CliffordAlgebra::new(cfg.space)?;
    let h = HalfSpace::new(&alg, cfg.c, cfg.kind)?;
    let mut report = orbit_census(&h)?;
    if mutate {
        report.predicted_special_orbits += 1;
        report.evaluate();
    }
    if cfg.json {
        print_json(serde_json::to_value(&report)?)?;
    } else {
        println!(
            "H^c over {} with qdiag {:?}, c = {}, {} model: {} regular + {} boundary points (K^c has {})",
            report.field,
            report.space.qdiag,
            report.c,
            report.kind,
            report.regular_points,
            report.boundary_points,
            report.k_set_size
        );
        println!("  c represented: {}", report.c_represented);
        println!("  full group orbits: {:?}", report.full.orbit_sizes);
        println!("  special group orbits: {:?}", report.special.orbit_sizes);
        if let Some(s) = &report.norm_subgroup {
            println!("  norm subgroup: {s:?} (index {})", report.norm_subgroup_index.unwrap_or(0));
        }
        for m in &report.mismatches {
            println!("  mismatch: {m}");
        }
        println!("{}", if report.prediction_holds { "matches prediction" } else { "prediction mismatch" });
    }
    Ok(report.prediction_holds)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { run, inject_fault } => cmd_verify(run.config()?, inject_fault),
        Command::Enumerate { run } => cmd_enumerate(run.config()?),
        Command::Act {
            run,
            matrix,
            point,
            cross_check,
        } => cmd_act(run.config()?, &matrix, point.as_deref(), cross_check),
        Command::Orbit { run, mutate_prediction } => cmd_orbit(run.config()?, mutate_prediction),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
