use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverhh::basis::{compute_basis, AlgebraBasis, DEFAULT_MAX_LEN};
use quiverhh::classify::{classify, gentle_tilted_type_of, TiltedType};
use quiverhh::corpus::{generate_corpus, CorpusSpec};
use quiverhh::equivalence::verify_theorem;
use quiverhh::format::{emit, emit_extension, pair_from_files, parse, PresentationFile};
use quiverhh::hochschild::{hh1_oracle, hh1_schurian};
use quiverhh::monomial::{epsilon_report, hh1_monomial};
use quiverhh::relext::{auto_relext_gentle, relext_quiver, ExtensionPair, SystemOfRelations};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quiverhh",
    version,
    about = "First Hochschild cohomology of bound quiver algebras"
)]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    /// Longest path considered when certifying a basis
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEN)]
    max_path_len: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a presentation
    Check { file: PathBuf },
    /// Print a basis of the algebra
    Basis { file: PathBuf },
    /// Compute dim HH¹
    Hh1 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// Build the relation-extension of a presentation
    Relext {
        file: PathBuf,
        /// Directory for `<stem>.b.q`; prints to stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the HH¹ identities on a C / B pair
    PairVerify {
        c_file: PathBuf,
        b_file: PathBuf,
        #[command(flatten)]
        options: VerifyOptions,
    },
    /// Write fixture pairs as `<name>.c.q` and `<name>.b.q`
    Corpus {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds for the random kinds
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run pair-verify on every `<stem>.c.q` / `<stem>.b.q` in a directory
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        options: VerifyOptions,
    },
}

#[derive(Args, Clone, Copy)]
struct VerifyOptions {
    /// Assert that B is representation-finite
    #[arg(long)]
    assert_rep_finite: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Schurian,
    Monomial,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "kronecker")]
    Kronecker,
    #[value(name = "triangle_bypass")]
    TriangleBypass,
    #[value(name = "cd")]
    Cd,
    #[value(name = "tildeA_example")]
    TildeAExample,
    #[value(name = "random_gentle_tree")]
    RandomGentleTree,
    #[value(name = "random_gentle_cycle")]
    RandomGentleCycle,
}

fn read(path: &Path) -> Result<PresentationFile> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| path.display().to_string())
}

fn certified(file: &PresentationFile, max_len: usize) -> Result<AlgebraBasis> {
    Ok(compute_basis(&file.presentation, max_len)?)
}

fn print(json: bool, value: &Value) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
        return;
    }
    if let Value::Object(map) = value {
        for (k, v) in map {
            match v {
                Value::String(s) => println!("{k}: {s}"),
                _ => println!("{k}: {v}"),
            }
        }
    }
}

fn check(file: &Path, cli: &Cli) -> Result<bool> {
    let f = read(file)?;
    let b = certified(&f, cli.max_path_len)?;
    let report = classify(&b);
    let mut value = serde_json::to_value(&report)?;
    value["tilted_type"] = serde_json::to_value(gentle_tilted_type_of(&b))?;
    value["shape"] = serde_json::to_value(f.presentation.quiver.shape_report())?;
    print(cli.json, &value);
    Ok(true)
}

fn basis(file: &Path, cli: &Cli) -> Result<bool> {
    let f = read(file)?;
    let b = certified(&f, cli.max_path_len)?;
    let q = b.quiver();
    let paths: Vec<String> = b.basis_paths().iter().map(|p| q.display_path(p)).collect();
    print(
        cli.json,
        &json!({
            "dimension": b.dimension(),
            "nilpotency_degree": b.nilpotency_degree(),
            "basis": if cli.json { json!(paths) } else { json!(paths.join(" ")) },
        }),
    );
    Ok(true)
}

fn hh1(file: &Path, method: Method, cli: &Cli) -> Result<bool> {
    let f = read(file)?;
    let b = certified(&f, cli.max_path_len)?;
    let flags = classify(&b);
    let mut methods: BTreeMap<&str, Value> = BTreeMap::new();
    let mut dims = Vec::new();
    let mut main = None;

    if matches!(method, Method::Oracle | Method::All) {
        let r = hh1_oracle(&b);
        dims.push(r.hh1_dim);
        main.get_or_insert((r.dim_der0, r.dim_int0));
        methods.insert("oracle", json!(r.hh1_dim));
    }
    if matches!(method, Method::Schurian) || (matches!(method, Method::All) && flags.schurian && flags.connected) {
        let r = hh1_schurian(&b)?;
        dims.push(r.hh1_dim);
        main.get_or_insert((r.dim_der0, r.dim_int0));
        methods.insert("schurian", json!(r.hh1_dim));
    }
    let mut epsilon = None;
    if matches!(method, Method::Monomial) || (matches!(method, Method::All) && flags.monomial) {
        let dim = hh1_monomial(&b)?;
        dims.push(dim);
        methods.insert("monomial", json!(dim));
        epsilon = Some(epsilon_report(&b, f.new_arrows().len())?);
    }

    let agree = dims.windows(2).all(|w| w[0] == w[1]);
    let mut value = json!({
        "hh1_dim": dims[0],
        "methods": methods,
        "methods_agree": agree,
        "schurian": flags.schurian,
        "gentle": flags.gentle,
        "monomial": flags.monomial,
    });
    if let Some((der, int)) = main {
        value["dim_der0"] = json!(der);
        value["dim_int0"] = json!(int);
    }
    if let Some(e) = epsilon {
        value["epsilon"] = json!(e.epsilon);
        value["epsilon_prime"] = json!(e.epsilon_prime);
    }
    print(cli.json, &value);
    if !agree {
        eprintln!("methods disagree");
    }
    Ok(agree)
}

fn relext(file: &Path, out: Option<&Path>, cli: &Cli) -> Result<bool> {
    let f = read(file)?;
    let b = certified(&f, cli.max_path_len)?;
    let text = match gentle_tilted_type_of(&b) {
        TiltedType::TypeA | TiltedType::TypeATilde => emit_extension(&auto_relext_gentle(&f.presentation)?),
        TiltedType::NotApplicable => {
            let ext = relext_quiver(&f.presentation, &SystemOfRelations::of(&f.presentation))?;
            let pair = ExtensionPair {
                c: f.presentation.clone(),
                b: quiverhh::presentation::Presentation::hereditary(ext.quiver),
                new_arrows: ext.new_arrows.into_iter().collect(),
                correspondence: ext.correspondence,
            };
            format!(
                "# quiver only: the relations of B must be supplied\n{}",
                emit_extension(&pair)
            )
        }
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let stem = file
                .file_name()
                .and_then(|s| s.to_str())
                .map(|s| s.trim_end_matches(".q").trim_end_matches(".c"))
                .ok_or_else(|| anyhow!("bad file name {}", file.display()))?;
            let target = dir.join(format!("{stem}.b.q"));
            fs::write(&target, text)?;
            if !cli.json {
                println!("wrote {}", target.display());
            }
        }
        None => print!("{text}"),
    }
    Ok(true)
}

fn verify_value(pair: &ExtensionPair, options: VerifyOptions, max_len: usize) -> Result<(Value, bool)> {
    let report = verify_theorem(pair, options.assert_rep_finite, max_len)?;
    let bb = compute_basis(&pair.b, max_len)?;
    let flags = classify(&bb);
    let agree = report.check("methods_agree").is_some_and(|c| c.passed);
    let identity = report.check("identity").is_some_and(|c| c.passed);
    let mut value = json!({
        "hh1_dim": report.hh1_b,
        "hh1_c": report.hh1_c,
        "dim_der0": report.dim_der0_b,
        "dim_int0": report.dim_int0_b,
        "n_bc": report.n,
        "n_prime_bc": report.n_prime,
        "relation_count": report.relation_count,
        "representatives": report.representatives,
        "schurian": flags.schurian,
        "gentle": flags.gentle,
        "monomial": flags.monomial,
        "identity_theorem31": identity,
        "methods_agree": agree,
        "checks": report.checks,
    });
    if flags.monomial {
        let e = epsilon_report(&bb, report.relation_count)?;
        value["epsilon"] = json!(e.epsilon);
        value["epsilon_prime"] = json!(e.epsilon_prime);
    }
    if let Some(rank) = report.free_group_rank {
        value["free_group_rank"] = json!(rank);
        value["homology_rank"] = json!(report.homology_rank);
    }
    Ok((value, report.passed()))
}

fn print_verification(json: bool, value: &Value) {
    if json {
        print(true, value);
        return;
    }
    for key in ["hh1_c", "hh1_dim", "n_bc", "n_prime_bc", "relation_count"] {
        println!("{key}: {}", value[key]);
    }
    if let Some(checks) = value["checks"].as_array() {
        for c in checks {
            let mark = if c["passed"].as_bool() == Some(true) {
                "PASS"
            } else {
                "FAIL"
            };
            let name = c["name"].as_str().unwrap_or("");
            match c["detail"].as_str().unwrap_or("") {
                "" => println!("{mark} {name}"),
                detail => println!("{mark} {name}: {detail}"),
            }
        }
    }
}

fn pair_verify(c: &Path, b: &Path, options: VerifyOptions, cli: &Cli) -> Result<bool> {
    let pair = pair_from_files(&read(c)?, &read(b)?)?;
    let (value, passed) = verify_value(&pair, options, cli.max_path_len)?;
    print_verification(cli.json, &value);
    Ok(passed)
}

fn corpus(kind: Kind, d: usize, vertices: usize, seed: u64, count: u64, out: &Path, cli: &Cli) -> Result<bool> {
    let specs: Vec<CorpusSpec> = match kind {
        Kind::Kronecker => vec![CorpusSpec::Kronecker],
        Kind::TriangleBypass => vec![CorpusSpec::TriangleBypass],
        Kind::Cd => vec![CorpusSpec::Cd { d }],
        Kind::TildeAExample => vec![CorpusSpec::TildeAExample],
        Kind::RandomGentleTree => (seed..seed + count)
            .map(|seed| CorpusSpec::RandomGentleTree { vertices, seed })
            .collect(),
        Kind::RandomGentleCycle => (seed..seed + count)
            .map(|seed| CorpusSpec::RandomGentleCycle { vertices, seed })
            .collect(),
    };
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut written = Vec::new();
    for spec in &specs {
        for entry in generate_corpus(spec)? {
            let c = out.join(format!("{}.c.q", entry.name));
            let b = out.join(format!("{}.b.q", entry.name));
            fs::write(&c, emit(&entry.pair.c))?;
            fs::write(&b, emit_extension(&entry.pair))?;
            written.push(entry.name);
        }
    }
    if cli.json {
        print(true, &json!({ "written": written }));
    } else {
        for name in written {
            println!("wrote {name}.c.q {name}.b.q");
        }
    }
    Ok(true)
}

fn batch(dir: &Path, options: VerifyOptions, cli: &Cli) -> Result<bool> {
    let mut stems = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot read {}", dir.display()))? {
        let name = entry?.file_name().to_string_lossy().into_owned();
        if let Some(stem) = name.strip_suffix(".c.q") {
            if dir.join(format!("{stem}.b.q")).exists() {
                stems.push(stem.to_string());
            }
        }
    }
    if stems.is_empty() {
        bail!("no `<stem>.c.q` / `<stem>.b.q` pairs in {}", dir.display());
    }
    stems.sort();

    let files: Vec<(String, PresentationFile, PresentationFile)> = stems
        .into_iter()
        .map(|s| {
            let c = read(&dir.join(format!("{s}.c.q")))?;
            let b = read(&dir.join(format!("{s}.b.q")))?;
            Ok((s, c, b))
        })
        .collect::<Result<_>>()?;
    let results: Vec<(String, std::result::Result<(Value, bool), String>)> = files
        .par_iter()
        .map(|(stem, c, b)| {
            let outcome = pair_from_files(c, b)
                .map_err(anyhow::Error::from)
                .and_then(|pair| verify_value(&pair, options, cli.max_path_len))
                .map_err(|e| format!("{e:#}"));
            (stem.clone(), outcome)
        })
        .collect();

    let mut all_passed = true;
    let mut rows = Vec::new();
    for (stem, outcome) in results {
        match outcome {
            Ok((value, passed)) => {
                all_passed &= passed;
                if !cli.json {
                    let failed: Vec<&str> = value["checks"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .filter(|c| c["passed"].as_bool() != Some(true))
                        .filter_map(|c| c["name"].as_str())
                        .collect();
                    let status = if passed {
                        "PASS".to_string()
                    } else {
                        format!("FAIL {}", failed.join(","))
                    };
                    println!(
                        "{stem}: {status} hh1(C)={} hh1(B)={} n={}",
                        value["hh1_c"], value["hh1_dim"], value["n_bc"]
                    );
                }
                rows.push(json!({ "pair": stem, "passed": passed, "report": value }));
            }
            Err(reason) => {
                if !cli.json {
                    println!("{stem}: SKIP {reason}");
                }
                rows.push(json!({ "pair": stem, "skipped": reason }));
            }
        }
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    }
    Ok(all_passed)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Check { file } => check(file, cli),
        Command::Basis { file } => basis(file, cli),
        Command::Hh1 { file, method } => hh1(file, *method, cli),
        Command::Relext { file, out } => relext(file, out.as_deref(), cli),
        Command::PairVerify {
            c_file,
            b_file,
            options,
        } => pair_verify(c_file, b_file, *options, cli),
        Command::Corpus {
            kind,
            d,
            vertices,
            seed,
            count,
            out,
        } => corpus(*kind, *d, *vertices, *seed, *count, out, cli),
        Command::Batch { dir, options } => batch(dir, *options, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
