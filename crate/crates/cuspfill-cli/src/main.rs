//! `cuspfill` command-line front end.
//!
//! Every command builds a JSON value; `--json` prints it as is, otherwise it
//! is rendered as indented text. Exit codes: 0 success, 2 invalid input,
//! 3 internal contract violation or fixture mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cuspfill::blowdown::{
    chain_determinant_p, complement_sphere_classes, filling_homology, find_plumbing_in_complement,
    generate_blowdown_chains, is_linear_blowdownable, ChainWeights,
};
use cuspfill::embedding::{enumerate_embeddings, group_by_n_used, verify_solution, ConfigurationSpec};
use cuspfill::io::{parse_diagram, parse_embedding, parse_plumbing, parse_spec};
use cuspfill::plumbing::{intersection_matrix, neg_continued_fraction, PlumbingGraph};
use cuspfill::registry::{run_fixtures, Family};
use cuspfill::singularity::{
    arithmetic_genus, big_m, delta, ell, fillability_verdict, milnor_number, multiplicity_sequence, CurveData, CuspType,
};
use cuspfill::spin_gamma::{
    characteristic_sublinks, gamma_invariant, gamma_theoretical, is_characteristic, minimize_theta, rho,
    rotation_lattice, ThetaForm,
};
use cuspfill::{lattice, registry};

mod render;

#[derive(Parser)]
#[command(name = "cuspfill", version, about = "Invariants and filling searches for cuspidal contact boundaries")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity sequence and numerical invariants of a (p,q) cusp.
    Singularity { p: i64, q: i64 },
    /// Fillability verdict for a rational curve with the given cusps and self-intersection.
    Fillability(FillabilityArgs),
    /// Gompf Γ-invariant of a surgery diagram.
    Gamma(GammaArgs),
    /// Minimize θ over the rotation lattice of a plumbing.
    Theta(ThetaArgs),
    /// Enumerate homological embeddings of a configuration.
    Embed(EmbedArgs),
    /// Rational blow-down chains and complement searches.
    Blowdown {
        #[command(subcommand)]
        cmd: BlowdownCmd,
    },
    /// Replay the fixture registry.
    Fixtures {
        /// Run every entry (the default).
        #[arg(long)]
        all: bool,
        /// Only entries of this family.
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Args)]
struct FillabilityArgs {
    /// Cusp type as p,q; repeat for several cusps.
    #[arg(long = "cusp", value_parser = parse_pair)]
    cusps: Vec<(i64, i64)>,
    /// Self-intersection of the curve.
    #[arg(long, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, default_value_t = 0)]
    genus: i64,
}

#[derive(Args)]
struct GammaArgs {
    /// Diagram file: {"linking": [[..]], "rot": [..], "zset": [..]}.
    #[arg(long)]
    diagram: PathBuf,
    /// Characteristic sublink as comma-separated component indices, or "none"
    /// for the empty sublink. Without it every characteristic sublink is reported.
    #[arg(long)]
    sublink: Option<String>,
    /// Component whose meridian is used as generator.
    #[arg(long, default_value_t = 0)]
    generator: usize,
    /// Also report (1 − g) mod s for a rational curve with these cusps.
    #[arg(long = "cusp", value_parser = parse_pair)]
    cusps: Vec<(i64, i64)>,
    #[arg(long, allow_hyphen_values = true, requires = "cusps")]
    s: Option<i64>,
}

#[derive(Args)]
struct ThetaArgs {
    /// Plumbing file: {"weights": [..], "edges": [[i, j], ..]}.
    #[arg(long)]
    plumbing: PathBuf,
    /// Also list θ at every lattice point.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct EmbedArgs {
    /// Spec file: {"T": [[..]], "line": i} or {"self_intersections", "intersections", "line"}.
    #[arg(long, conflicts_with = "family")]
    spec: Option<PathBuf>,
    /// Registry family name instead of a spec file.
    #[arg(long)]
    family: Option<String>,
    /// Self-intersection for families indexed by s.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    /// Bound on the number of exceptional classes.
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Subcommand)]
enum BlowdownCmd {
    /// Is a linear chain a 2-expansion of (-4)?
    Chain {
        /// Weights, e.g. --weights=-8,-2,-2,-2,-2
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        weights: Vec<i64>,
    },
    /// All blow-down chains up to a length.
    Generate {
        #[arg(long)]
        max_len: usize,
    },
    /// Sphere classes in the complement of an embedding.
    Complement(EmbeddingArg),
    /// Intersection form of the complement of an embedding.
    Homology(EmbeddingArg),
    /// Embeddings of a plumbing into the complement of an embedding.
    Find {
        #[command(flatten)]
        emb: EmbeddingArg,
        /// Plumbing file for the target.
        #[arg(long, conflicts_with = "chain")]
        target: Option<PathBuf>,
        /// Linear target, e.g. --chain=-6,-2,-2
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        chain: Option<Vec<i64>>,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args)]
struct EmbeddingArg {
    /// Embedding file: {"classes": ["h", ...], "n": N}.
    #[arg(long)]
    embedding: PathBuf,
    /// Override the number of exceptional classes.
    #[arg(long)]
    n: Option<usize>,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let v = parse_list(s)?;
    match v.as_slice() {
        [p, q] => Ok((*p, *q)),
        _ => Err(format!("expected p,q, got {s}")),
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x}: {e}"))).collect()
}

enum Failure {
    Input(String),
    Contract(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cusps_of(pairs: &[(i64, i64)]) -> Result<Vec<CuspType>, Failure> {
    pairs.iter().map(|&(p, q)| CuspType::new(p, q).map_err(Failure::from)).collect()
}

fn cmd_singularity(p: i64, q: i64) -> Res {
    let c = CuspType::new(p, q)?;
    let seq = multiplicity_sequence(c);
    Ok(json!({
        "cusp": [p, q],
        "sequence": seq.entries(),
        "delta": delta(&seq),
        "M": big_m(&seq),
        "ell": ell(&seq),
        "milnor": milnor_number(&seq),
        "seifert_genus": c.seifert_genus(),
    }))
}

fn cmd_fillability(a: &FillabilityArgs) -> Res {
    let curve = CurveData { geometric_genus: a.genus, cusps: cusps_of(&a.cusps)?, self_intersection: a.s };
    let v = fillability_verdict(&curve)?;
    Ok(json!({
        "cusps": a.cusps,
        "s": a.s,
        "arithmetic_genus": arithmetic_genus(&curve),
        "status": format!("{:?}", v.status),
        "bound": v.bound,
        "reason": v.reason.to_string(),
    }))
}

fn parse_sublink(s: &str) -> Result<Vec<usize>, Failure> {
    if s == "none" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| Failure::Input(format!("{x}: {e}")))).collect()
}

fn cmd_gamma(a: &GammaArgs) -> Res {
    let d = parse_diagram(&read(&a.diagram)?)?;
    d.check_legendrian_parity()?;
    let subs = match &a.sublink {
        Some(s) => {
            let s = parse_sublink(s)?;
            if !is_characteristic(d.linking(), &s) {
                return Err(Failure::Input(format!("sublink {s:?} is not characteristic")));
            }
            vec![s]
        }
        None => characteristic_sublinks(d.linking())?,
    };
    let mut rows = Vec::new();
    for s in subs {
        let entry = match (rho(&d, &s), gamma_invariant(&d, &s, a.generator)) {
            (Ok(r), Ok(g)) => json!({
                "sublink": s,
                "rho": r.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "gamma": g.value.to_string(),
                "modulus": g.modulus.to_string(),
            }),
            (_, Err(e)) | (Err(e), _) => json!({ "sublink": s, "error": e.to_string() }),
        };
        rows.push(entry);
    }
    let mut out = json!({ "generator": a.generator, "sublinks": rows });
    if let Some(s) = a.s {
        let th = gamma_theoretical(&CurveData::rational(cusps_of(&a.cusps)?, s))?;
        out["theoretical"] = json!({ "gamma": th.value.to_string(), "modulus": th.modulus.to_string() });
    }
    Ok(out)
}

fn cmd_theta(a: &ThetaArgs) -> Res {
    let g = parse_plumbing(&read(&a.plumbing)?)?;
    let (min, argmin) = minimize_theta(&g)?;
    let q = intersection_matrix(&g);
    let mut out = json!({
        "weights": g.weights,
        "determinant": lattice::determinant(&q)?.to_string(),
        "min": min.to_string(),
        "argmin": argmin,
        "lattice_points": rotation_lattice(&g)?.len(),
    });
    if a.table {
        let form = ThetaForm::new(&g)?;
        let rows: Result<Vec<Value>, Failure> = rotation_lattice(&g)?
            .into_iter()
            .map(|v| Ok(json!({ "rot": v, "theta": form.eval(&v)?.to_string() })))
            .collect();
        out["table"] = Value::Array(rows?);
    }
    Ok(out)
}

fn cmd_embed(a: &EmbedArgs) -> Res {
    let spec: ConfigurationSpec = match (&a.spec, &a.family) {
        (Some(p), _) => parse_spec(&read(p)?)?,
        (None, Some(name)) => {
            let f = Family::from_name(name).ok_or_else(|| Failure::Input(format!("unknown family {name}")))?;
            if f.takes_s() && a.s.is_none() {
                return Err(Failure::Input(format!("family {name} needs --s")));
            }
            f.spec(a.s).ok_or_else(|| Failure::Input(format!("family {name} is not defined at s = {:?}", a.s)))?
        }
        (None, None) => return Err(Failure::Input("give --spec or --family".into())),
    };
    let n_max = a.n_max.unwrap_or_else(|| spec.default_n_max());
    let sols = enumerate_embeddings(&spec, n_max);
    for s in &sols {
        verify_solution(&spec, s).map_err(|v| Failure::Contract(format!("emitted solution fails: {v}")))?;
    }
    let groups: Vec<Value> = group_by_n_used(&sols)
        .into_iter()
        .map(|(n, v)| {
            json!({
                "n_used": n,
                "b2": n as i64 + 1 - spec.len() as i64,
                "solutions": v.iter().map(|s| &s.classes).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "components": spec.labels(),
        "n_max": n_max,
        "count": sols.len(),
        "groups": groups,
    }))
}

fn chain_q(w: &[i64], p: i64) -> Option<i64> {
    let target: Vec<i64> = w.iter().map(|x| -x).collect();
    (1..p).find(|&q| neg_continued_fraction(p * p, p * q - 1).is_ok_and(|c| c == target))
}

fn load_embedding(a: &EmbeddingArg) -> Result<(cuspfill::embedding::EmbeddingSolution, usize), Failure> {
    let (sol, n) = parse_embedding(&read(&a.embedding)?)?;
    let n = a.n.unwrap_or(n);
    if n < sol.n_used {
        return Err(Failure::Input(format!("n = {n} is smaller than the {} indices used", sol.n_used)));
    }
    Ok((sol, n))
}

fn cmd_blowdown(c: &BlowdownCmd) -> Res {
    match c {
        BlowdownCmd::Chain { weights } => {
            let w = ChainWeights::new(weights.clone())?;
            let ok = is_linear_blowdownable(&w);
            let mut out = json!({ "weights": weights, "blowdownable": ok });
            if ok {
                let p = chain_determinant_p(&w)?;
                out["p"] = json!(p);
                out["q"] = json!(chain_q(weights, p));
            }
            Ok(out)
        }
        BlowdownCmd::Generate { max_len } => {
            let all = generate_blowdown_chains(*max_len);
            let chains: Vec<&[i64]> = all.iter().map(|c| c.weights()).collect();
            Ok(json!({ "max_len": max_len, "count": chains.len(), "chains": chains }))
        }
        BlowdownCmd::Complement(a) => {
            let (sol, n) = load_embedding(a)?;
            let c = complement_sphere_classes(&sol, n);
            let groups: Vec<Value> =
                c.by_square.iter().rev().map(|(s, v)| json!({ "square": s, "count": v.len(), "classes": v })).collect();
            Ok(json!({ "n": n, "count": c.len(), "by_square": groups }))
        }
        BlowdownCmd::Homology(a) => {
            let (sol, n) = load_embedding(a)?;
            let fh = filling_homology(&sol, n)?;
            Ok(json!({
                "n": n,
                "b2": fh.b2,
                "basis": fh.basis,
                "gram": fh.gram,
                "determinant": fh.determinant,
                "divisors": fh.divisors,
            }))
        }
        BlowdownCmd::Find { emb, target, chain, limit } => {
            let (sol, n) = load_embedding(emb)?;
            let g: PlumbingGraph = match (target, chain) {
                (Some(p), _) => parse_plumbing(&read(p)?)?,
                (None, Some(w)) => ChainWeights::new(w.clone())?.graph(),
                (None, None) => return Err(Failure::Input("give --target or --chain".into())),
            };
            let found = find_plumbing_in_complement(&sol, n, &g, *limit);
            Ok(json!({ "target": g.weights, "count": found.len(), "solutions": found }))
        }
    }
}

fn cmd_fixtures(family: Option<&str>) -> Res {
    let mut results = run_fixtures();
    if let Some(f) = family {
        if Family::from_name(f).is_none() {
            return Err(Failure::Input(format!("unknown family {f}")));
        }
        results.retain(|r| r.name == f || r.name.starts_with(&format!("{f} ")));
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let value = json!({
        "passed": results.len() - failed,
        "failed": failed,
        "results": results,
        "registry_entries": registry::registry_entries().len(),
    });
    if failed > 0 {
        return Err(Failure::Contract(format!("{failed} fixture(s) failed\n{}", render::text(&value))));
    }
    Ok(value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Singularity { p, q } => cmd_singularity(*p, *q),
        Command::Fillability(a) => cmd_fillability(a),
        Command::Gamma(a) => cmd_gamma(a),
        Command::Theta(a) => cmd_theta(a),
        Command::Embed(a) => cmd_embed(a),
        Command::Blowdown { cmd } => cmd_blowdown(cmd),
        Command::Fixtures { all: _, family } => cmd_fixtures(family.as_deref()),
    };
    match result {
        Ok(v) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n"
            } else {
                render::text(&v)
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contract(msg)) => {
            eprintln!("contract violation: {msg}");
            ExitCode::from(3)
        }
    }
}
