use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use reeb_symm::analysis::{classify, EXACT_TOL, MESH_TOL_FRACTION};
use reeb_symm::config::{Input, RunConfig};
use reeb_symm::contour::build_contour_tree;
use reeb_symm::mesh::{builtin_field, make_icosphere, write_off, FieldSpec};
use reeb_symm::profile::{EvenProfile, DEFAULT_CSV_POINTS};
use reeb_symm::tree::{count_reeb_edges, symmetrize_tree, TreeDocument};
use reeb_symm::verify::{oracle_reports, run_suite};
use reeb_symm::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Reeb trees and symmetrization of scalar fields on triangulated spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the measured Reeb tree of a field and write it as JSON.
    Reeb(Opts),
    /// Symmetrize a field or tree; writes a profile CSV and JSON.
    Symmetrize(Opts),
    /// Classify the growth type of the symmetrization.
    Classify(Opts),
    /// Run the verification suite; exits 1 if any check fails.
    Verify(Opts),
    /// Write a builtin icosphere (OFF) and optionally a builtin field (CSV).
    Gen(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Mesh file (.off or .obj).
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Per-vertex field values for --mesh (`vertex_index,value` lines).
    #[arg(long)]
    field_csv: Option<PathBuf>,
    /// Tree JSON as written by `reeb`.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Use a builtin icosphere with this many subdivisions.
    #[arg(long, value_name = "N")]
    icosphere: Option<u32>,
    /// Builtin field, `NAME[:key=value,...]`.
    #[arg(long, value_name = "NAME[:params]")]
    field: Option<String>,
    /// Classification tolerance (default 0.05·osc for meshes, 1e-9 for trees).
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long = "kmax", default_value_t = reeb_symm::analysis::DEFAULT_K_MAX)]
    k_max: usize,
    #[arg(long = "bgrid", default_value_t = reeb_symm::analysis::DEFAULT_B_GRID)]
    b_grid: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Smaller verification suite.
    #[arg(long)]
    quick: bool,
    /// Test hook: force the named verification check (or `all`) to fail.
    #[arg(long, value_name = "CHECK")]
    inject_fault: Option<String>,
}

impl From<Opts> for RunConfig {
    fn from(o: Opts) -> Self {
        RunConfig {
            mesh: o.mesh,
            field_csv: o.field_csv,
            tree: o.tree,
            icosphere: o.icosphere,
            field: o.field,
            tol: o.tol,
            k_max: o.k_max,
            b_grid: o.b_grid,
            out: o.out,
            seed: o.seed,
            quick: o.quick,
            inject_fault: o.inject_fault,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // usage errors are configuration errors (5); clap's own code 2 means I/O here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 5 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Reeb(o) => reeb(&o.into()),
        Command::Symmetrize(o) => symmetrize(&o.into()),
        Command::Classify(o) => classify_cmd(&o.into()),
        Command::Verify(o) => verify(&o.into()),
        Command::Gen(o) => gen(&o.into()),
    }
}

fn reeb(cfg: &RunConfig) -> Result<u8> {
    let Input::Mesh { mesh, field } = cfg.load_input()? else {
        return Err(Error::Config("reeb needs a mesh input (--mesh or --icosphere)".into()));
    };
    let ct = build_contour_tree(&mesh, &field)?;
    let doc = TreeDocument::new(&ct.tree, &ct.function, Some(&ct.node_kinds));
    let path = cfg.write_json(
        "tree.json",
        json!({
            "edge_count": count_reeb_edges(&ct.tree),
            "critical_points": ct.critical.len(),
            "nodes": doc.nodes,
            "edges": doc.edges,
        }),
    )?;
    println!("{} edges -> {}", ct.tree.edge_count(), path.display());
    Ok(0)
}

/// The symmetrization and the tolerance scale (`osc` of the input).
fn symmetrization(cfg: &RunConfig) -> Result<(EvenProfile, f64, bool, usize)> {
    match cfg.load_input()? {
        Input::Mesh { mesh, field } => {
            let ct = build_contour_tree(&mesh, &field)?;
            Ok((ct.symmetrize()?, field.osc(), true, ct.tree.edge_count()))
        }
        Input::Tree { tree, function } => Ok((symmetrize_tree(&tree, &function)?, function.osc(), false, tree.edge_count())),
    }
}

fn symmetrize(cfg: &RunConfig) -> Result<u8> {
    let (u, osc, _, edges) = symmetrization(cfg)?;
    let csv = cfg.write_text("profile.csv", &u.to_csv(DEFAULT_CSV_POINTS))?;
    cfg.write_json(
        "symmetrization.json",
        json!({
            "edges": edges,
            "input_osc": osc,
            "sup": u.sup_abs(),
            "osc": u.osc(),
            "integral": u.integral(),
            "breakpoints": u.breakpoints(),
        }),
    )?;
    println!("sup |Σ| = {:.6e} -> {}", u.sup_abs(), csv.display());
    Ok(0)
}

fn classify_cmd(cfg: &RunConfig) -> Result<u8> {
    let (u, osc, from_mesh, _) = symmetrization(cfg)?;
    let tau = cfg.tol.unwrap_or(if from_mesh { MESH_TOL_FRACTION * osc } else { EXACT_TOL });
    // a zero input field has zero oscillation; keep the tolerance positive
    let tau = if tau > 0.0 { tau } else { EXACT_TOL };
    let c = classify(&u, tau, cfg.k_max, cfg.b_grid)?;
    cfg.write_json("classification.json", &c)?;
    match c.rho_lower {
        Some(rho) => println!("{:?}: linear growth type, rho >= {rho:.6}", c.verdict),
        None => println!("{:?}: bound {}", c.verdict, c.hofer_bound.unwrap_or_default()),
    }
    Ok(0)
}

fn verify(cfg: &RunConfig) -> Result<u8> {
    cfg.validate()?;
    let suite = run_suite(cfg.quick, cfg.seed, cfg.inject_fault.as_deref());
    let oracles = oracle_reports(cfg.seed, cfg.quick)?;
    let pass = suite.pass && oracles.iter().all(|r| r.pass);
    for c in &suite.checks {
        println!("[{}] {:>2} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.name, c.detail);
    }
    for r in &oracles {
        println!(
            "[{}] oracle {}: {:.6e} vs {:.6e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.quantity,
            r.main_value,
            r.oracle_value
        );
    }
    cfg.write_json("verify.json", json!({ "pass": pass, "checks": suite.checks, "oracles": oracles }))?;
    Ok(if pass { 0 } else { 1 })
}

fn gen(cfg: &RunConfig) -> Result<u8> {
    cfg.validate()?;
    let n = cfg
        .icosphere
        .ok_or_else(|| Error::Config("gen needs --icosphere N".into()))?;
    let mesh = make_icosphere(n)?;
    let off = cfg.write_text(&format!("icosphere_{n}.off"), &write_off(&mesh))?;
    println!("{} vertices -> {}", mesh.vertex_count(), off.display());
    let mut written = vec![off];
    if let Some(spec) = cfg.field_spec()? {
        let field = builtin_field(&mesh, &spec)?;
        let mut csv = String::from("vertex_index,value\n");
        for (i, v) in field.values.iter().enumerate() {
            csv.push_str(&format!("{i},{v}\n"));
        }
        let name = field_file_name(&spec);
        written.push(cfg.write_text(&name, &csv)?);
        println!("field {spec} -> {}", written[1].display());
    }
    cfg.write_json(
        "gen.json",
        json!({
            "vertices": mesh.vertex_count(),
            "triangles": mesh.face_count(),
            "files": written,
        }),
    )?;
    Ok(0)
}

fn field_file_name(spec: &FieldSpec) -> String {
    format!("{}.csv", spec.name)
}
