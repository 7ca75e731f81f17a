use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bigbracket::bracket::nested;
use bigbracket::geom::oracle_check;
use bigbracket::io::{read_package, read_space, read_triple, write_package, write_triple};
use bigbracket::manin::{double_from_package, package_from_triple, DoubleSpace};
use bigbracket::parse::parse_expr;
use bigbracket::random::random_homogeneous;
use bigbracket::structures::{
    classify, equation_label, iad_square_detector, mc_defect, verify, StructureKind, StructurePackage,
};
use bigbracket::{Element, Error, Grade, GradedSpace, Verdict};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

// Stop quietly when the reader goes away (e.g. `| head`) instead of panicking.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "bigbracket", version, about = "Exact big-bracket algebra and structure verification")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its canonical form and degrees.
    Eval {
        #[arg(short, long)]
        space: PathBuf,
        expr: String,
    },
    /// Verify a structure package as the given kind.
    Check {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        package: PathBuf,
        #[arg(long)]
        kind: String,
    },
    /// Report the smallest governing subalgebra and Maurer-Cartan status.
    Classify {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        package: PathBuf,
    },
    /// Tabulate the n-ary derived bracket on basis words of V ⊕ V*.
    Brackets {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        package: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Build the double of a package and write it as a triple file.
    Double {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        package: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover the package of a triple file.
    TripleToPackage {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check whether the square of the iterated adjoint operator vanishes.
    IadSquare {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        package: PathBuf,
        /// Longest word checked (default: dim V).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Compare the big bracket with the coordinate Poisson bracket on random pairs.
    GeomOracle {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A command failure: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn load(space: &Path, package: &Path) -> std::result::Result<(Arc<GradedSpace>, StructurePackage), Failure> {
    let v = read_space(&read(space)?)?;
    let p = read_package(&read(package)?, &v)?;
    Ok((v, p))
}

fn grade<T: std::fmt::Debug>(g: Grade<T>) -> String {
    match g {
        Grade::Any => "any".into(),
        Grade::Exactly(v) => format!("{v:?}"),
        Grade::Mixed => "mixed".into(),
    }
}

fn verdict_json(v: &Verdict, checked: &[String]) -> Value {
    json!({
        "passed": v.passed(),
        "checked": checked,
        "defects": v.defects.iter().map(|(k, d)| (k.clone(), Value::String(d.to_string()))).collect::<serde_json::Map<_, _>>(),
        "notes": v.notes,
    })
}

fn print_verdict(title: &str, v: &Verdict, checked: &[String], as_json: bool) {
    if as_json {
        println!("{}", verdict_json(v, checked));
        return;
    }
    println!("{title}: {}", if v.passed() { "PASS" } else { "FAIL" });
    for label in checked {
        if !v.defects.contains_key(label) {
            println!("  ok   {label}");
        }
    }
    for (label, d) in &v.defects {
        println!("  FAIL {label}: {d}");
    }
    for n in &v.notes {
        println!("  note: {n}");
    }
}

/// Labels of every equation `verify` looks at for this package.
fn checked_labels(kind: StructureKind, p: &StructurePackage) -> Vec<String> {
    let bds = p.bidegrees();
    let mut labels = BTreeSet::new();
    for &(k, l) in &bds {
        for &(k2, l2) in &bds {
            if k + k2 >= 1 && l + l2 >= 1 {
                labels.insert(equation_label((k + k2 - 1, l + l2 - 1)));
            }
        }
    }
    if kind == StructureKind::Quasi {
        labels.extend((1..=4).map(|i| format!("quasi-{i}")));
    }
    labels.into_iter().collect()
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.command {
        Command::Eval { space, expr } => {
            let v = read_space(&read(&space)?)?;
            let e = parse_expr(&expr, &v)?;
            let d = e.degrees();
            if as_json {
                println!(
                    "{}",
                    json!({
                        "value": e.to_string(),
                        "internal": grade(d.internal),
                        "external": grade(d.external),
                        "total": grade(d.total),
                        "bidegree": grade(d.bidegree),
                    })
                );
            } else {
                println!("{e}");
                println!("internal degree: {}", grade(d.internal));
                println!("external degree: {}", grade(d.external));
                println!("total degree: {}", grade(d.total));
                println!("bidegree: {}", grade(d.bidegree));
            }
            Ok(true)
        }
        Command::Check { space, package, kind } => {
            let kind: StructureKind = kind.parse()?;
            let (_, p) = load(&space, &package)?;
            let v = verify(kind, &p);
            if v.fails("support:") {
                let bad: Vec<&String> = v.defects.keys().filter(|k| k.starts_with("support:")).collect();
                let names: Vec<&str> = bad.iter().map(|k| &k["support:".len()..]).collect();
                return Err(Failure::Input(format!(
                    "components {} are not allowed for kind {kind}",
                    names.join(", ")
                )));
            }
            print_verdict(&format!("check {kind}"), &v, &checked_labels(kind, &p), as_json);
            Ok(v.passed())
        }
        Command::Classify { space, package } => {
            let (_, p) = load(&space, &package)?;
            let c = classify(&p);
            if as_json {
                println!(
                    "{}",
                    json!({
                        "structure": c.name,
                        "governing": c.governing.map(|s| s.to_string()),
                        "total_degree_one": c.total_degree_one,
                        "maurer_cartan": c.maurer_cartan,
                        "strict": c.strict,
                        "ungraded": c.ungraded,
                    })
                );
            } else {
                print!("{c}");
            }
            Ok(true)
        }
        Command::Brackets { space, package, arity } => {
            let (v, p) = load(&space, &package)?;
            let q = p.total();
            let d = DoubleSpace::new(&v);
            let mut rows = Vec::new();
            for w in d.words(&d.basis(), arity) {
                let args: Vec<Element> = w.expanded().iter().map(|&g| d.vector(g)).collect();
                let value = nested(&q, &args)?.project_length(1);
                if !value.is_zero() {
                    let atoms: Vec<String> = w.expanded().iter().map(|&g| v.atom(g)).collect();
                    rows.push((atoms, value.to_string()));
                }
            }
            let mc = mc_defect(&p).is_zero();
            if as_json {
                let entries: Vec<Value> = rows.iter().map(|(a, val)| json!({"args": a, "value": val})).collect();
                println!("{}", json!({"arity": arity, "maurer_cartan": mc, "entries": entries}));
            } else {
                if !mc {
                    println!("note: [Q,Q] != 0, the brackets need not satisfy the L-infinity relations");
                }
                for (atoms, value) in &rows {
                    println!("[{}] = {value}", atoms.join(", "));
                }
                if rows.is_empty() {
                    println!("all values vanish");
                }
            }
            Ok(true)
        }
        Command::Double { space, package, output } => {
            let (_, p) = load(&space, &package)?;
            let t = double_from_package(&p).map_err(|e| Failure::Check(e.to_string()))?;
            write(&output, &write_triple(&t))?;
            if as_json {
                println!("{}", json!({"written": output.display().to_string(), "max_arity": t.max_arity()}));
            } else {
                println!("wrote {} (brackets up to arity {})", output.display(), t.max_arity());
            }
            Ok(true)
        }
        Command::TripleToPackage { input, output } => {
            let t = read_triple(&read(&input)?)?;
            let p = package_from_triple(&t).map_err(|e| Failure::Check(e.to_string()))?;
            write(&output, &write_package(&p))?;
            if as_json {
                println!("{}", json!({"written": output.display().to_string()}));
            } else {
                println!("wrote {}", output.display());
            }
            Ok(true)
        }
        Command::IadSquare { space, package, cap } => {
            let (_, p) = load(&space, &package)?;
            let v = iad_square_detector(&p, cap)?;
            print_verdict("iad-square vanishes", &v, &[], as_json);
            Ok(v.passed())
        }
        Command::GeomOracle { space, samples, seed } => {
            let v = read_space(&read(&space)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut all = Verdict::new();
            for i in 0..samples {
                let a = random_homogeneous(&mut rng, &v, 4, 3);
                let b = random_homogeneous(&mut rng, &v, 4, 3);
                let r = oracle_check(&a, &b)?;
                if !r.passed() {
                    all.merge(&format!("pair {i} ({a}; {b}) "), r);
                }
            }
            all.note(format!("{samples} pairs, seed {seed}, epsilon {}", bigbracket::geom::epsilon()));
            print_verdict("geom-oracle", &all, &[], as_json);
            Ok(all.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
