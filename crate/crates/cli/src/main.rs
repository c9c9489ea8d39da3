use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use bip_core::classify::{coatoms_closed_form, generate_family, CaseSelector, FamilyKind};
use bip_core::graphs::build_g_u;
use bip_core::polytope::export::{face_lattice_json, to_off};
use bip_core::scan::{run_scan, OutputFormat, ScanConfig, ScanMode};
use bip_core::{classify, classify_combinatorial, BipPolytope, BruhatInterval, ClassificationReport, Error, Permutation};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bip", version, about = "Bruhat interval polytopes in the symmetric group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the interval [V, W] and optionally export it
    Report(ReportArgs),
    /// Run an exhaustive scan over all pairs v ≤ w in S_n
    Scan(ScanArgs),
    /// Print a pair from one of the product families
    Family(FamilyArgs),
    /// Closed-form coatoms of a two-run template interval
    Coatoms(CoatomArgs),
}

#[derive(Args)]
struct ReportArgs {
    v: Permutation,
    w: Permutation,
    /// Hasse diagram and G_v as Graphviz DOT
    #[arg(long)]
    dot: bool,
    /// The polytope as an OFF file (dimension 3 only)
    #[arg(long)]
    off: bool,
    /// The face lattice as JSON
    #[arg(long)]
    faces: bool,
    /// Cross-check the combinatorial verdicts against the exact hull
    #[arg(long)]
    verify: bool,
    /// Print the report as one JSON object
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: ScanMode,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the output here; the checkpoint goes next to it
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow long-running scans
    #[arg(long)]
    force: bool,
    /// Cross-check classifications against the hull
    #[arg(long)]
    verify: bool,
    #[arg(long, conflicts_with = "csv")]
    jsonl: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = parse_kind)]
    kind: FamilyKind,
}

#[derive(Args)]
struct CoatomArgs {
    v: Permutation,
    w: Permutation,
    #[arg(long, default_value = "auto", value_parser = parse_case)]
    case: CaseSelector,
}

fn parse_mode(s: &str) -> Result<ScanMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> Result<CaseSelector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn print_report(r: &ClassificationReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string(r).expect("report serializes"));
        return;
    }
    println!("v           {}", r.v);
    println!("w           {}", r.w);
    println!("length      {}", r.length_diff);
    println!("dim         {}", r.dim);
    println!("toric       {}", r.toric);
    println!("boolean     {}", r.boolean_interval);
    println!("cube        {}", r.cube);
    println!("complexity  {}", r.complexity);
    println!("d_v         {}", r.degree_v);
    println!("d_w         {}", r.degree_w);
    println!("atoms       {}", r.atom_count);
    println!("coatoms     {}", r.coatom_count);
}

fn report(args: ReportArgs) -> anyhow::Result<()> {
    let r = if args.verify {
        classify(args.v, args.w)?
    } else {
        classify_combinatorial(&BruhatInterval::new(args.v, args.w)?)?
    };
    print_report(&r, args.json);
    if args.dot {
        let interval = BruhatInterval::new(args.v, args.w)?;
        print!("{}", interval.to_dot());
        print!("{}", build_g_u(&args.v, &args.w, &args.v)?.to_dot("G_v"));
    }
    if args.off || args.faces {
        let q = BipPolytope::new(args.v, args.w)?;
        if args.faces {
            println!("{}", face_lattice_json(&q.lattice));
        }
        if args.off {
            print!("{}", to_off(&q.lattice)?);
        }
    }
    Ok(())
}

fn scan(args: ScanArgs) -> anyhow::Result<()> {
    let mut cfg = ScanConfig::new(args.mode, args.n);
    cfg.jobs = args.jobs;
    cfg.force = args.force;
    cfg.verify = args.verify;
    cfg.checkpoint = args.out.as_ref().map(|p| {
        let mut s = p.clone().into_os_string();
        s.push(".ckpt");
        PathBuf::from(s)
    });
    let format = if args.jsonl {
        OutputFormat::Jsonl
    } else if args.csv {
        OutputFormat::Csv
    } else {
        OutputFormat::Table
    };
    let report = run_scan(&cfg)?;
    let text = report.render(format);
    match &args.out {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("{}", report.summary());
        }
        None => {
            print!("{text}");
            if format == OutputFormat::Csv {
                eprintln!("{}", report.summary());
            }
        }
    }
    Ok(())
}

fn family(args: FamilyArgs) -> anyhow::Result<()> {
    let (v, w) = generate_family(args.k, args.kind)?;
    let r = classify_combinatorial(&BruhatInterval::new(v, w)?)?;
    print_report(&r, false);
    Ok(())
}

fn coatoms(args: CoatomArgs) -> anyhow::Result<()> {
    if !args.v.bruhat_le(&args.w) {
        bail!(Error::NotBelow { v: args.v, w: args.w });
    }
    let r = coatoms_closed_form(&args.v, &args.w, args.case)?;
    println!("case     {}", r.case);
    println!("mixed    {}", r.mixed_pairs);
    println!("cube     {}", r.cube);
    println!("coatoms  {}", r.coatoms.len());
    for z in &r.coatoms {
        println!("  {z}");
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NotBelow { .. }) => 2,
        Some(Error::CrossCheck { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report(a) => report(a),
        Command::Scan(a) => scan(a),
        Command::Family(a) => family(a),
        Command::Coatoms(a) => coatoms(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
