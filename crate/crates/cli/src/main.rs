use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use trigal::classify::{classify_trinomial, matching_clauses, newton_witnesses, TrinomialShape};
use trigal::gf::FieldSpec;
use trigal::identities::verify_all;
use trigal::permgrp::{named_cycle_type_set, GroupName};
use trigal::sampler::{
    identify_group, reproduce_table1, reproduce_table2, sample_sectional, sample_trinomial, PatternStats,
};
use trigal::upoly::Poly;

#[derive(Parser)]
#[command(name = "trigal", version, about = "Galois groups of trinomials over function fields of positive characteristic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the geometric Galois group of x^n + a x^m + b in characteristic p.
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
        /// Include Gauss-map degrees, matching clauses and Newton-polygon witnesses.
        #[arg(long)]
        explain: bool,
    },
    /// Factor a polynomial given by constant-first coefficients.
    Factor {
        #[arg(long)]
        field: FieldSpec,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Factor random specializations of x^n + a x^m + b.
    Sample {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        identify: bool,
    },
    /// Factor random hyperplane sections of t -> (t^e1, ..., t^er).
    Sectional {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        identify: bool,
    },
    /// Reproduce the Mathieu cycle-type table.
    Table1,
    /// Reproduce the trinomial factorization table.
    Table2,
    /// Cycle types of a named group, e.g. M24, PGL(2,5), AGL(1,8).
    Cycletypes {
        #[arg(long)]
        group: GroupName,
    },
    /// Run the symbolic identity checks with their numeric oracles.
    VerifyIdentities {
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    kind: &'static str,
    message: String,
}

fn fail(kind: &'static str, e: impl std::fmt::Display) -> Failure {
    Failure { kind, message: e.to_string() }
}

/// JSON document and whether every requested check passed.
type Outcome = Result<(Value, bool), Failure>;

fn types_json(types: impl IntoIterator<Item = Vec<usize>>) -> Value {
    Value::Array(types.into_iter().map(|t| json!(t)).collect())
}

fn shape(n: u64, m: u64, p: u64) -> Result<TrinomialShape, Failure> {
    TrinomialShape::new(n, m, p).map_err(|e| fail("InvalidShape", e))
}

fn with_identify(stats: &PatternStats, shape: Option<&TrinomialShape>, identify: bool) -> Outcome {
    let mut doc = serde_json::to_value(stats.export()).expect("serializable");
    doc["discarded"] = json!(stats.discarded);
    if identify {
        let report = identify_group(stats, shape).map_err(|e| fail("Identify", e))?;
        doc["identify"] = serde_json::to_value(report).expect("serializable");
    }
    Ok((doc, true))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify { n, m, p, explain } => {
            let s = shape(n, m, p)?;
            let v = classify_trinomial(&s).map_err(|e| fail("Classify", e))?;
            let mut doc = json!({
                "n": n, "m": m, "p": p,
                "group": v.group,
                "clause": v.clause,
                "notes": v.notes,
            });
            if explain {
                doc["gauss"] = json!(v.gauss);
                doc["matching_clauses"] = json!(matching_clauses(&s));
                doc["newton_witnesses"] = json!(newton_witnesses(&s));
            }
            Ok((doc, true))
        }
        Command::Factor { field, poly, seed } => {
            let f = Poly::parse(&field, &poly).map_err(|e| fail("Parse", e))?;
            let fac = f.factor(seed).map_err(|e| fail("Factor", e))?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(|(g, k)| json!({"factor": g.to_string(), "multiplicity": k}))
                .collect();
            Ok((
                json!({
                    "field": field.to_string(),
                    "poly": f.to_string(),
                    "seed": seed,
                    "unit": fac.unit.to_string(),
                    "factors": factors,
                    "pattern": fac.pattern().degrees,
                    "squarefree": fac.is_squarefree(),
                }),
                true,
            ))
        }
        Command::Sample { n, m, field, trials, seed, identify } => {
            let s = shape(n, m, field.characteristic())?;
            let stats = sample_trinomial(&s, &field, trials, seed).map_err(|e| fail("Sample", e))?;
            with_identify(&stats, Some(&s), identify)
        }
        Command::Sectional { exponents, field, trials, seed, identify } => {
            let stats = sample_sectional(&exponents, &field, trials, seed).map_err(|e| fail("Sample", e))?;
            let (mut doc, ok) = with_identify(&stats, None, identify)?;
            doc["exponents"] = json!(exponents);
            Ok((doc, ok))
        }
        Command::Table1 => {
            let rows = reproduce_table1().map_err(|e| fail("Table1", e))?;
            let all = rows.iter().all(|r| r.matches);
            Ok((json!({"rows": rows, "all_match": all}), all))
        }
        Command::Table2 => {
            let rows = reproduce_table2();
            let all = rows.iter().all(|r| r.matches);
            Ok((json!({"rows": rows, "all_match": all, "seed": 0}), all))
        }
        Command::Cycletypes { group } => {
            let set = named_cycle_type_set(group).map_err(|e| fail("CycleTypes", e))?;
            Ok((
                json!({
                    "group": group,
                    "degree": group.degree(),
                    "order": group.order().to_string(),
                    "count": set.len(),
                    "types": types_json(set.iter().map(|t| t.parts().to_vec())),
                }),
                true,
            ))
        }
        Command::VerifyIdentities { trials, seed } => {
            let checks = verify_all(trials, seed);
            let all = checks.iter().all(|c| c.passed());
            Ok((json!({"identities": checks, "all_hold": all, "seed": seed, "trials": trials}), all))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = match run(cli.command) {
        Ok((doc, ok)) => (doc, if ok { 0 } else { 1 }),
        Err(f) => (json!({"error": {"kind": f.kind, "message": f.message}}), 1),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    ExitCode::from(code)
}
