use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use clausal_clones::algebra::{find_violation, inv_m, pol_k, Budget, Operation, Relation};
use clausal_clones::catalog::{enumerate_class, RelationClass};
use clausal_clones::classify::{classify, inclusion_certificate, refute_inclusion, verify_theorem, Verdict};
use clausal_clones::clausal::{build_clausal, dominating_params, is_complete, ClausalSpec};
use clausal_clones::format::{format_operation, format_relation, read_operation, read_relation};
use clausal_clones::Error;

#[derive(Parser)]
#[command(name = "cclone", version, about = "Clausal clones and the maximal clones above them")]
struct Cli {
    /// Emit JSON envelopes instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search budget in bits (log2 of the candidate count).
    #[arg(long, global = true, default_value_t = 24.0)]
    budget: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clausal relation tools.
    Clausal {
        #[command(subcommand)]
        command: ClausalCommand,
    },
    /// Does an operation preserve a relation?
    Preserves { op: PathBuf, rel: PathBuf },
    /// All k-ary operations preserving every given relation.
    Pol {
        #[arg(short, long)]
        k: usize,
        #[arg(required = true)]
        rels: Vec<PathBuf>,
    },
    /// All m-ary relations preserved by every given operation.
    Inv {
        #[arg(short, long)]
        m: usize,
        #[arg(required = true)]
        ops: Vec<PathBuf>,
    },
    /// List one class of relations on n elements.
    Enumerate { class: RelationClass, n: usize },
    /// The maximal clone above Pol(R^{a,b}).
    Classify { a: usize, b: usize, n: usize },
    /// Inclusion certificate for the designated relation.
    Certify { a: usize, b: usize, n: usize },
    /// Witness that Pol(R^{a,b}) is not contained in Pol(target).
    Refute {
        a: usize,
        b: usize,
        n: usize,
        #[arg(long)]
        target: PathBuf,
    },
    /// Check every parameter pair on n elements against the candidate pool.
    Verify {
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = RelationClass::ALL)]
        classes: Vec<RelationClass>,
    },
    /// Completeness of a set of clausal relations, one spec per line.
    Complete {
        #[arg(long)]
        specs: PathBuf,
    },
}

#[derive(Subcommand)]
enum ClausalCommand {
    /// Build the relation for a spec such as "3 1 1 | 1 | 0".
    Build { spec: ClausalSpec },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::NoWitness(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn relations(rels: &[Relation]) -> String {
    rels.iter().map(format_relation).collect::<Vec<_>>().join("\n")
}

fn compact(rel: &Relation) -> String {
    let tuples: Vec<String> = rel
        .tuples()
        .map(|t| t.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .map(|t| if rel.arity() == 1 { t } else { format!("({t})") })
        .collect();
    format!("{{{}}}", tuples.join(" "))
}

fn run(cli: Cli) -> Outcome {
    let budget = Budget::bits(cli.budget);
    let json = cli.json;
    match cli.command {
        Command::Clausal {
            command: ClausalCommand::Build { spec },
        } => {
            let rel = build_clausal(&spec);
            emit(json, &json!({ "spec": spec, "relation": rel }), || format_relation(&rel));
        }
        Command::Preserves { op, rel } => {
            let f = read_operation(&read(&op)?)?;
            let r = read_relation(&read(&rel)?)?;
            let violation = find_violation(&f, &r)?;
            emit(json, &json!({ "preserves": violation.is_none(), "counterexample": violation }), || {
                match &violation {
                    None => "preserves\n".into(),
                    Some(c) => format!("does not preserve: columns {:?} map to {:?}\n", c.columns, c.image),
                }
            });
        }
        Command::Pol { k, rels } => {
            let rels = rels.iter().map(|p| Ok(read_relation(&read(p)?)?)).collect::<Result<Vec<_>, Failure>>()?;
            let n = rels[0].n();
            let ops = pol_k(n, &rels, k, budget)?;
            emit(json, &ops, || ops.iter().map(format_operation).collect::<Vec<_>>().join("\n"));
        }
        Command::Inv { m, ops } => {
            let ops = ops.iter().map(|p| Ok(read_operation(&read(p)?)?)).collect::<Result<Vec<Operation>, Failure>>()?;
            let rels = inv_m(ops[0].n(), &ops, m, budget)?;
            emit(json, &rels, || relations(&rels));
        }
        Command::Enumerate { class, n } => {
            let rels = enumerate_class(class, n, budget)?;
            emit(json, &rels, || relations(&rels));
        }
        Command::Classify { a, b, n } => {
            let d = classify(a, b, n)?;
            emit(json, &d, || format!("{}: {}\n{}", d.params, d.kind, format_relation(&d.relation)));
        }
        Command::Certify { a, b, n } => {
            let c = inclusion_certificate(a, b, n)?;
            emit(json, &c, || format!("{}: inclusion verified\n{}", c.params, format_relation(&c.constructed)));
        }
        Command::Refute { a, b, n, target } => {
            let target = read_relation(&read(&target)?)?;
            if target.n() != n {
                return Err(Failure::Usage(format!("target is on {} elements, expected {n}", target.n())));
            }
            let c = refute_inclusion(a, b, n, &target, budget)?;
            if !c.recheck() {
                return Err(Failure::Verification(format!("certificate for {} failed recheck", compact(&target))));
            }
            emit(json, &c, || {
                format!(
                    "{}\nwitness:\n{}columns {:?} map to {:?}\n",
                    c.construction,
                    format_operation(&c.witness),
                    c.violation.columns,
                    c.violation.image
                )
            });
        }
        Command::Verify { n, classes } => {
            let report = verify_theorem(n, &classes, budget)?;
            emit(json, &report, || {
                let mut out = format!("n = {n}, {} candidates\n", report.pool_size);
                for row in &report.rows {
                    let same = row
                        .candidates
                        .iter()
                        .filter(|c| matches!(c.verdict, Verdict::SameClone { .. }))
                        .count();
                    out += &format!(
                        "{}: {} {}, {} refuted, {} same clone\n",
                        row.params,
                        row.designated.kind,
                        compact(&row.designated.relation),
                        row.exclusions().count(),
                        same
                    );
                }
                out
            });
            if !report.passed() {
                return Err(Failure::Verification("a certificate failed recheck".into()));
            }
        }
        Command::Complete { specs } => {
            let specs = read(&specs)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::parse)
                .collect::<Result<Vec<ClausalSpec>, _>>()?;
            let complete = is_complete(&specs);
            let dominating = dominating_params(&specs);
            emit(json, &json!({ "complete": complete, "dominating": dominating }), || {
                let mut out = format!("{}\n", if complete { "complete" } else { "not complete" });
                for p in &dominating {
                    out += &format!("contained in Pol({p})\n");
                }
                out
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
