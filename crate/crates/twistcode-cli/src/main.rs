//! `twistcode`: build and analyze surface codes with twist defects from
//! graphs embedded on 2-manifolds.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad user input, 3 golden-table
//! mismatch.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use twistcode::checkerboard;
use twistcode::derived;
use twistcode::families;
use twistcode::logical::{self, ReportOptions, SearchStrategy};
use twistcode::pauli::Pauli;
use twistcode::rotation::{self, RotationSystemDoc};
use twistcode::surface::{self, CodeDoc, SurfaceCode};
use twistcode::tiling;
use twistcode::Error as TwError;

#[derive(Parser)]
#[command(name = "twistcode", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a rotation-system file: orbits, genus, checkerboardability.
    Inspect {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a surface code from a file or a family and emit code JSON.
    Build {
        #[command(subcommand)]
        source: SourceCmd,
    },
    /// Distance report (bounds and, budget permitting, the exact distance).
    Distance {
        #[command(subcommand)]
        source: DistanceSourceCmd,
    },
    /// Checkerboard-color a rotation-system file, optionally with a defect.
    Checkerboard {
        file: PathBuf,
        /// Candidate defect as a comma-separated list of edge ids.
        #[arg(long)]
        defect: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Derive an associated graph (dual, medial, face-vertex, decoding,
    /// doubled) as rotation-system JSON or DOT.
    Derive {
        file: PathBuf,
        #[arg(long)]
        kind: DeriveKind,
        /// Emit DOT of the underlying graph instead of rotation-system JSON.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a family graph as rotation-system JSON.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the [[N,K,D]] table of the two-parameter cyclic family.
    Table {
        /// Table name (only `cyclic2`).
        name: String,
        #[arg(long, default_value_t = 9)]
        max: usize,
        /// Compare against a golden JSON file; mismatches exit with 3.
        #[arg(long)]
        diff: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum SourceCmd {
    /// Build from a rotation-system JSON file.
    File {
        path: PathBuf,
        /// Rotation-system JSON file whose `cals` block overrides CALs.
        #[arg(long)]
        cals: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Build from a named family.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum DistanceSourceCmd {
    /// Analyze a code JSON or rotation-system JSON file.
    File {
        path: PathBuf,
        #[arg(long)]
        exact_budget: Option<u64>,
        #[arg(long)]
        bounds_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Analyze a named family.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        exact_budget: Option<u64>,
        #[arg(long)]
        bounds_only: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, clap::ValueEnum)]
enum DeriveKind {
    Dual,
    Medial,
    Facevertex,
    Decoding,
    Doubled,
}

#[derive(Args)]
struct FamilyArgs {
    /// toric | rotated-toric | cyclic-toric | cyclic2 | cyclic4 | stellated |
    /// rotated-surface | hyperbolic-5-4
    name: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Lattice vector "a,b".
    #[arg(long)]
    l1: Option<String>,
    /// Lattice vector "c,d".
    #[arg(long)]
    l2: Option<String>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

enum FamilySource {
    Graph(rotation::RotationSystem, serde_json::Value),
    /// Plain stabilizer families (no graph): the cyclic shift codes.
    Stabilizers(Vec<Pauli>, serde_json::Value),
}

fn parse_vec(text: &str) -> Result<(i64, i64), TwError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(TwError::Parse(format!("bad lattice vector {text:?}, want \"a,b\"")));
    }
    let x = parts[0].trim().parse().map_err(|_| TwError::Parse(format!("bad integer in {text:?}")))?;
    let y = parts[1].trim().parse().map_err(|_| TwError::Parse(format!("bad integer in {text:?}")))?;
    Ok((x, y))
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, TwError> {
    value.ok_or_else(|| TwError::BadFamilyParams(format!("family {family} needs --{flag}")))
}

fn resolve_family(args: &FamilyArgs) -> Result<FamilySource, TwError> {
    match args.name.as_str() {
        "toric" => {
            let m = need(args.m, "m", "toric")?;
            let n = need(args.n, "n", "toric")?;
            let toric = families::square_toric(m, n)?;
            Ok(FamilySource::Graph(
                toric.system,
                json!({"family": "toric", "m": m, "n": n}),
            ))
        }
        "rotated-toric" => {
            let l1 = parse_vec(args.l1.as_deref().ok_or_else(|| {
                TwError::BadFamilyParams("family rotated-toric needs --l1".into())
            })?)?;
            let l2 = parse_vec(args.l2.as_deref().ok_or_else(|| {
                TwError::BadFamilyParams("family rotated-toric needs --l2".into())
            })?)?;
            let lattice = families::LatticeVectors::new(l1, l2)?;
            let rt = families::rotated_toric(lattice)?;
            Ok(FamilySource::Graph(
                rt.system,
                json!({"family": "rotated-toric", "l1": [l1.0, l1.1], "l2": [l2.0, l2.1]}),
            ))
        }
        "cyclic-toric" => {
            let a = need(args.a, "a", "cyclic-toric")?;
            let b = need(args.b, "b", "cyclic-toric")?;
            let ct = families::cyclic_toric(a, b)?;
            Ok(FamilySource::Graph(
                ct.graph.system,
                json!({"family": "cyclic-toric", "a": a, "b": b}),
            ))
        }
        "cyclic2" => {
            let s = need(args.s, "s", "cyclic2")?;
            let t = need(args.t, "t", "cyclic2")?;
            let (stabs, _) = families::cyclic2_code(s, t)?;
            Ok(FamilySource::Stabilizers(
                stabs,
                json!({"family": "cyclic2", "s": s, "t": t}),
            ))
        }
        "cyclic4" => {
            let n = need(args.big_n, "N", "cyclic4")?;
            let p = need(args.p, "p", "cyclic4")?;
            let q = need(args.q, "q", "cyclic4")?;
            let r = need(args.r, "r", "cyclic4")?;
            let spec = families::CyclicSpec::new(n, p, q, r)?;
            if !families::cyclic4_consistent(&spec) {
                return Err(TwError::BadFamilyParams(format!(
                    "cyclic quadruple (N={n}, p={p}, q={q}, r={r}) is not consistent"
                )));
            }
            Ok(FamilySource::Stabilizers(
                spec.stabilizers(),
                json!({"family": "cyclic4", "N": n, "p": p, "q": q, "r": r}),
            ))
        }
        "stellated" => {
            let s = need(args.s, "s", "stellated")?;
            let t = need(args.t, "t", "stellated")?;
            let r = families::stellated_high_genus(s, t)?;
            Ok(FamilySource::Graph(
                r,
                json!({"family": "stellated", "s": s, "t": t}),
            ))
        }
        "rotated-surface" => {
            let d = need(args.d, "d", "rotated-surface")?;
            let r = families::rotated_surface(d)?;
            Ok(FamilySource::Graph(
                r,
                json!({"family": "rotated-surface", "d": d}),
            ))
        }
        "hyperbolic-5-4" => Ok(FamilySource::Graph(
            tiling::hyperbolic_5_4()?,
            json!({"family": "hyperbolic-5-4"}),
        )),
        other => Err(TwError::BadFamilyParams(format!("unknown family {other:?}"))),
    }
}

fn read_file(path: &Path) -> Result<String, TwError> {
    std::fs::read_to_string(path)
        .map_err(|e| TwError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), TwError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| TwError::Inconsistent(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn budget_from(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("TWISTCODE_EXACT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(logical::DEFAULT_BUDGET)
}

fn load_doc(path: &Path) -> Result<RotationSystemDoc, TwError> {
    rotation::parse_rotation_system(&read_file(path)?)
}

fn cmd_inspect(file: &Path, as_json: bool) -> Result<(), TwError> {
    let doc = load_doc(file)?;
    let summary = doc.system.summary()?;
    let info = checkerboard::analyze(&doc.system)?;
    let defect_edges: Vec<usize> = info.defect.0.iter_ones().collect();
    if as_json {
        let payload = json!({
            "flag_count": doc.system.flag_count(),
            "vertices": summary.vertex_count(),
            "edges": summary.edge_count(),
            "faces": summary.face_count(),
            "euler_characteristic": summary.euler_characteristic,
            "orientable": summary.orientable,
            "genus": summary.genus,
            "odd_degree_vertices": summary.odd_vertex_count,
            "checkerboardable": info.checkerboardable,
            "defect_edges": defect_edges,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("flags:            {}", doc.system.flag_count());
        println!(
            "V / E / F:        {} / {} / {}",
            summary.vertex_count(),
            summary.edge_count(),
            summary.face_count()
        );
        println!("chi:              {}", summary.euler_characteristic);
        println!(
            "surface:          {} genus {}",
            if summary.orientable { "orientable" } else { "non-orientable" },
            summary.genus
        );
        println!("odd vertices (M): {}", summary.odd_vertex_count);
        println!("checkerboardable: {}", info.checkerboardable);
        println!("defect edges:     {defect_edges:?}");
    }
    Ok(())
}

fn build_code_from_doc(doc: &RotationSystemDoc) -> Result<SurfaceCode, TwError> {
    surface::build_from_doc(doc)
}

fn cmd_build(source: &SourceCmd) -> Result<(), TwError> {
    let (code_doc, out, as_json) = match source {
        SourceCmd::File { path, cals, out, json } => {
            let mut doc = load_doc(path)?;
            if let Some(cal_path) = cals {
                let cal_doc = load_doc(cal_path)?;
                if cal_doc.system != doc.system {
                    return Err(TwError::CalSpec(
                        "CAL override file describes a different rotation system".into(),
                    ));
                }
                doc.cals = cal_doc.cals;
            }
            let code = build_code_from_doc(&doc)?;
            let source_json = json!({"file": path.display().to_string()});
            (CodeDoc::from_code(&code, source_json)?, out.clone(), *json)
        }
        SourceCmd::Family { family, out, json } => {
            let doc = build_family_code(family)?;
            (doc, out.clone(), *json)
        }
    };
    let text = code_doc.to_json();
    if as_json && out.is_some() {
        println!("{text}");
    }
    if !as_json && out.is_none() {
        eprintln!("[[{}, {}]] with {} stabilizers", code_doc.n, code_doc.k, code_doc.stabilizers.len());
    }
    write_output(out.as_ref(), &text)?;
    Ok(())
}

/// Code document for a family; cyclic-toric output is relabeled to the
/// cyclic qubit order so the stabilizers read as shift strings.
fn build_family_code(family: &FamilyArgs) -> Result<CodeDoc, TwError> {
    match resolve_family(family)? {
        FamilySource::Stabilizers(stabs, source) => Ok(CodeDoc::from_stabilizers(&stabs, source)),
        FamilySource::Graph(system, source) => {
            if family.name == "cyclic-toric" {
                let a = family.a.unwrap();
                let b = family.b.unwrap();
                let ct = families::cyclic_toric(a, b)?;
                let code = surface::build_default(&ct.graph.system)?;
                let (n, k) = code.params_nk()?;
                let relabel: Vec<usize> = (0..n)
                    .map(|kk| ct.graph.class_of((kk as i64, 0)))
                    .collect();
                let stabilizers: Vec<String> = code
                    .stabilizers
                    .iter()
                    .map(|s| {
                        let text = s.to_string();
                        let bytes = text.as_bytes();
                        (0..n).map(|i| bytes[relabel[i]] as char).collect()
                    })
                    .collect();
                Ok(CodeDoc {
                    n,
                    k,
                    stabilizers,
                    source,
                })
            } else {
                let code = surface::build_default(&system)?;
                CodeDoc::from_code(&code, source)
            }
        }
    }
}

fn cmd_distance(source: &DistanceSourceCmd) -> Result<(), TwError> {
    let (stabs_or_code, budget, bounds_only, as_json): (DistanceInput, u64, bool, bool) =
        match source {
            DistanceSourceCmd::File { path, exact_budget, bounds_only, json } => {
                let text = read_file(path)?;
                let value: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| TwError::Parse(format!("bad JSON: {e}")))?;
                let input = if value.get("stabilizers").is_some() {
                    DistanceInput::Stabilizers(CodeDoc::parse(&text)?.stabilizer_paulis())
                } else {
                    let doc = rotation::parse_rotation_system(&text)?;
                    DistanceInput::Code(Box::new(build_code_from_doc(&doc)?))
                };
                (input, budget_from(*exact_budget), *bounds_only, *json)
            }
            DistanceSourceCmd::Family { family, exact_budget, bounds_only, json } => {
                let input = match resolve_family(family)? {
                    FamilySource::Stabilizers(stabs, _) => DistanceInput::Stabilizers(stabs),
                    FamilySource::Graph(system, _) => {
                        DistanceInput::Code(Box::new(surface::build_default(&system)?))
                    }
                };
                (input, budget_from(*exact_budget), *bounds_only, *json)
            }
        };
    let report = match &stabs_or_code {
        DistanceInput::Code(code) => {
            let options = ReportOptions {
                budget,
                bounds_only: bounds_only || budget == 0,
                ..Default::default()
            };
            logical::distance_report(code, &options)?
        }
        DistanceInput::Stabilizers(stabs) => {
            // Plain stabilizer lists carry no embedding: exact search only.
            let mut report = logical::DistanceReport::default();
            if !(bounds_only || budget == 0) {
                match logical::exact_distance(stabs, budget, SearchStrategy::Auto) {
                    Ok((d, w)) => {
                        report.exact = Some(d);
                        report.witness = Some(w.to_string());
                    }
                    Err(TwError::BudgetExceeded) => {}
                    Err(e) => return Err(e),
                }
            }
            report
        }
    };
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        match report.exact {
            Some(d) => println!("exact distance: {d}"),
            None => println!("exact distance: (not computed)"),
        }
        if let Some(w) = &report.witness {
            println!("witness:        {w}");
        }
        for b in &report.lower_bounds {
            println!("lower bound:    {} ({})", b.value, source_name(b.source));
        }
        for b in &report.upper_bounds {
            println!("upper bound:    {} ({})", b.value, source_name(b.source));
        }
        for b in &report.informational {
            println!("informational:  {} ({})", b.value, source_name(b.source));
        }
    }
    Ok(())
}

enum DistanceInput {
    Code(Box<SurfaceCode>),
    Stabilizers(Vec<Pauli>),
}

fn source_name(source: logical::BoundSource) -> &'static str {
    use logical::BoundSource::*;
    match source {
        FaceWidth => "face-width",
        HalfHsysDecoding => "half-hsys-decoding",
        QuarterHsysDoubled => "quarter-hsys-doubled",
        JPathBasis => "J-path-basis",
        HalfHsysDoubled => "half-hsys-doubled",
        HalfHsysDecoding4Valent => "half-hsys-decoding-4valent",
        WitnessOperator => "witness-operator",
    }
}

fn cmd_checkerboard(file: &Path, defect: Option<&str>, as_json: bool) -> Result<(), TwError> {
    let doc = load_doc(file)?;
    let summary = doc.system.summary()?;
    let phi = checkerboard::face_edge_matrix(&summary);
    let ne = summary.edge_count();
    let mut delta = twistcode::bits::BitVec::zeros(ne);
    if let Some(list) = defect {
        for part in list.split(',').filter(|p| !p.trim().is_empty()) {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| TwError::Parse(format!("bad edge id {part:?}")))?;
            if e >= ne {
                return Err(TwError::Parse(format!("edge id {e} out of range (|E| = {ne})")));
            }
            delta.set(e, true);
        }
    }
    let (black, white, gamma) = checkerboard::checkerboard(&phi, &delta);
    let valid_input = gamma == delta;
    let gamma_edges: Vec<usize> = gamma.iter_ones().collect();
    if as_json {
        let payload = json!({
            "black_faces": black,
            "white_faces": white,
            "defect_edges": gamma_edges,
            "input_defect_valid": valid_input,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        println!("black faces:  {black:?}");
        println!("white faces:  {white:?}");
        println!("defect edges: {gamma_edges:?}");
        println!("input defect was valid: {valid_input}");
    }
    Ok(())
}

fn cmd_derive(file: &Path, kind: &DeriveKind, dot: bool, out: Option<&PathBuf>) -> Result<(), TwError> {
    let doc = load_doc(file)?;
    let r = &doc.system;
    if matches!(kind, DeriveKind::Decoding) {
        let graph = derived::decoding_graph(r)?;
        if !dot {
            return Err(TwError::Parse(
                "the decoding graph is unembedded; use --dot".into(),
            ));
        }
        return write_output(out, &graph.to_dot());
    }
    let derived_system = match kind {
        DeriveKind::Dual => r.dual(),
        DeriveKind::Medial => derived::medial(r),
        DeriveKind::Facevertex => derived::face_vertex(r),
        DeriveKind::Doubled => {
            let summary = r.summary()?;
            let defect = checkerboard::find_defect(&summary);
            derived::doubled(r, &defect)?
        }
        DeriveKind::Decoding => unreachable!(),
    };
    let text = if dot {
        derived::rotation_system_to_dot(&derived_system.summary()?)
    } else {
        rotation::serialize_rotation_system(&RotationSystemDoc {
            system: derived_system,
            cals: None,
        })
    };
    write_output(out, &text)
}

fn cmd_family(family: &FamilyArgs, out: Option<&PathBuf>) -> Result<(), TwError> {
    match resolve_family(family)? {
        FamilySource::Graph(system, _) => {
            let text = rotation::serialize_rotation_system(&RotationSystemDoc {
                system,
                cals: None,
            });
            write_output(out, &text)
        }
        FamilySource::Stabilizers(..) => Err(TwError::BadFamilyParams(format!(
            "family {:?} is a plain stabilizer family; use `build family {}`",
            family.name, family.name
        ))),
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct TableEntry {
    s: usize,
    t: usize,
    n: usize,
    k: usize,
    d: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Cyclic2Table {
    max: usize,
    entries: Vec<TableEntry>,
}

fn cyclic2_table(max: usize, budget: u64) -> Result<Cyclic2Table, TwError> {
    let mut entries = Vec::new();
    for s in 0..=max {
        for t in s..=max {
            let (stabs, k) = families::cyclic2_code(s, t)?;
            let (d, _) = logical::exact_distance(&stabs, budget, SearchStrategy::Auto)?;
            entries.push(TableEntry {
                s,
                t,
                n: s + t + 4,
                k,
                d,
            });
        }
    }
    Ok(Cyclic2Table { max, entries })
}

fn cmd_table(
    name: &str,
    max: usize,
    diff: Option<&PathBuf>,
    as_json: bool,
) -> Result<bool, TwError> {
    if name != "cyclic2" {
        return Err(TwError::Parse(format!("unknown table {name:?} (try cyclic2)")));
    }
    let table = cyclic2_table(max, budget_from(None))?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&table).unwrap());
    } else {
        let mut grid: BTreeMap<(usize, usize), &TableEntry> = BTreeMap::new();
        for e in &table.entries {
            grid.insert((e.s, e.t), e);
        }
        print!("s\\t ");
        for t in 0..=max {
            print!("{t:>9}");
        }
        println!();
        for s in 0..=max {
            print!("{s:>3} ");
            for t in 0..=max {
                match grid.get(&(s, t)) {
                    Some(e) => print!("{:>9}", format!("{},{},{}", e.n, e.k, e.d)),
                    None => print!("{:>9}", "-"),
                }
            }
            println!();
        }
        println!("(t >= s shown; parameters are symmetric in s and t)");
    }
    if let Some(golden_path) = diff {
        let golden: Cyclic2Table = serde_json::from_str(&read_file(golden_path)?)
            .map_err(|e| TwError::Parse(format!("bad golden file: {e}")))?;
        if golden != table {
            eprintln!("table differs from golden {}", golden_path.display());
            return Ok(false);
        }
    }
    Ok(true)
}

fn exit_code_for(err: &TwError) -> u8 {
    match err {
        TwError::Parse(_)
        | TwError::Validation(_)
        | TwError::BadFamilyParams(_)
        | TwError::CalSpec(_)
        | TwError::DegreeTooSmall { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool, TwError> = match &cli.command {
        Command::Inspect { file, json } => cmd_inspect(file, *json).map(|_| true),
        Command::Build { source } => cmd_build(source).map(|_| true),
        Command::Distance { source } => cmd_distance(source).map(|_| true),
        Command::Checkerboard { file, defect, json } => {
            cmd_checkerboard(file, defect.as_deref(), *json).map(|_| true)
        }
        Command::Derive { file, kind, dot, out } => {
            cmd_derive(file, kind, *dot, out.as_ref()).map(|_| true)
        }
        Command::Family { family, out } => cmd_family(family, out.as_ref()).map(|_| true),
        Command::Table { name, max, diff, json } => cmd_table(name, *max, diff.as_ref(), *json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
