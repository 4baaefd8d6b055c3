mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ldmbqc::compiler::{
    compile_exponential, compile_general_prime, compile_nand, compile_odd_ring, compile_quadratic,
    exponential_table, CompileReport, LinearMap,
};
use ldmbqc::contextuality::{
    degree_witness_table, ncva_search, temporal_degree_bound, NcvaInstance, Witness,
};
use ldmbqc::error::Error;
use ldmbqc::field_poly::{all_inputs, is_prime, min_degree_representation, FunctionTable};
use ldmbqc::mbqc_engine::{extract_output_function, run, MbqcPlan};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ldmbqc",
    version,
    about = "Qudit MBQC with linear side-processing: simulate, compile, analyze"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Compile and analyze one of the worked examples.
    Demo {
        name: DemoName,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        u: Option<u32>,
    },
    /// Compile a single-variable function table into a plan.
    Compile {
        #[arg(long)]
        d: u32,
        /// Comma-separated values m(0),...,m(d-1).
        #[arg(long)]
        table: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the 2d-party construction for odd d.
        #[arg(long)]
        odd_ring: bool,
    },
    /// Report output, degree, temporal bound and witnesses of a plan file.
    Analyze {
        #[arg(long)]
        plan: PathBuf,
    },
    /// Print the exponentials u^{rx} and sigma_p.
    Table {
        #[arg(long, required = true)]
        appendix_b: bool,
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
    /// Run every acceptance check.
    VerifyAll,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Nand,
    Quadratic,
    Exponential,
}

enum Failure {
    Compile(String),
    Verify(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compile(_) => 2,
            Failure::Verify(_) => 3,
            Failure::Parse(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Compile(m) | Failure::Verify(m) | Failure::Parse(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed { .. } => Failure::Verify(e.to_string()),
            Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Compile(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let result = match cli.verb {
        Verb::Demo { name, d, u } => demo(name, d, u, cli.seed),
        Verb::Compile {
            d,
            table,
            out,
            odd_ring,
        } => compile(d, &table, out, odd_ring),
        Verb::Analyze { plan } => analyze(&plan, cli.seed),
        Verb::Table { p, .. } => table(p),
        Verb::VerifyAll => verify_all(cli.seed),
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message(), "exit_code": f.code() }));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}

struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: 0,
        }
    }
}

fn input_label(input: &[u32]) -> String {
    if input.is_empty() {
        "()".into()
    } else {
        input
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn witness_json(w: &Witness) -> Value {
    json!({ "verdict": w.verdict.as_str(), "report": w.to_text(), "search_size": w.search_size.map(|s| s.to_string()) })
}

/// Output table, polynomial, degree, bound and witnesses.
fn describe(plan: &MbqcPlan, seed: u64) -> Result<(String, Value), Failure> {
    let mut text = format!(
        "d: {}\nn: {}\nparties: {}\nflat: {}\n",
        plan.d,
        plan.n,
        plan.n_parties,
        plan.is_flat()
    );
    let mut out =
        json!({ "d": plan.d, "n": plan.n, "parties": plan.n_parties, "flat": plan.is_flat() });
    let bound = temporal_degree_bound(plan)?;
    let table = match extract_output_function(plan) {
        Ok(f) => f.table,
        Err(Error::NonDeterministic(m)) => {
            text.push_str(&format!(
                "output: not deterministic ({m})\ntemporal bound: {bound}\n"
            ));
            out["deterministic"] = json!(false);
            out["temporal_bound"] = json!(bound);
            return Ok((text, out));
        }
        Err(e) => return Err(e.into()),
    };
    out["deterministic"] = json!(true);
    text.push_str(&format!("table: {}\n", table.to_csv()));
    for input in all_inputs(plan.d, plan.n) {
        text.push_str(&format!(
            "  {} -> {}\n",
            input_label(&input),
            table.get(&input)
        ));
    }
    out["table"] = json!(table.values);
    let agree = all_inputs(plan.d, plan.n)
        .map(|i| run(plan, &i, seed).map(|t| t.output == table.get(&i)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|x| x);
    text.push_str(&format!("sampled runs (seed {seed}) agree: {agree}\n"));
    out["sampled_runs_agree"] = json!(agree);
    match polynomial(&table)? {
        Some(p) => {
            let degree = p.combined_degree();
            text.push_str(&format!(
                "polynomial: {}\npretty: {}\ncombined degree: {degree}\n",
                p.to_text(),
                p.pretty()
            ));
            out["polynomial"] = json!(p.to_text());
            out["combined_degree"] = json!(degree);
        }
        None => text.push_str("polynomial: none (not a polynomial over Z_d)\n"),
    }
    text.push_str(&format!("temporal bound: {bound}\n"));
    out["temporal_bound"] = json!(bound);
    match degree_witness_table(&table) {
        Ok(w) => {
            text.push_str(&format!("degree witness: {}\n", w.verdict.as_str()));
            out["degree_witness"] = witness_json(&w);
        }
        Err(e) => text.push_str(&format!("degree witness: unavailable ({e})\n")),
    }
    if plan.is_flat() {
        match NcvaInstance::from_plan(plan).and_then(|i| ncva_search(&i)) {
            Ok(w) => {
                let size = w.search_size.map_or("?".into(), |s| s.to_string());
                text.push_str(&format!(
                    "ncva search: {} (search size {size})\n",
                    w.verdict.as_str()
                ));
                out["ncva_search"] = witness_json(&w);
            }
            Err(Error::SizeGuard(m)) => text.push_str(&format!("ncva search: skipped ({m})\n")),
            Err(e) => return Err(e.into()),
        }
    } else {
        text.push_str("ncva search: skipped (plan is temporally ordered)\n");
    }
    Ok((text, out))
}

fn polynomial(table: &FunctionTable) -> Result<Option<ldmbqc::field_poly::MultiPoly>, Failure> {
    if is_prime(table.d) {
        let m = ldmbqc::field_poly::make_field(table.d)?;
        Ok(Some(ldmbqc::field_poly::interpolate(&m, table)?))
    } else {
        Ok(min_degree_representation(table)?)
    }
}

fn compiled(r: &CompileReport, seed: u64) -> Result<(String, Value), Failure> {
    let (body, mut out) = describe(&r.plan, seed)?;
    let text = format!(
        "construction: {}\nqudits: {}\nverified: {}\n{body}",
        r.construction.as_str(),
        r.qudit_count,
        r.verified
    );
    out["construction"] = json!(r.construction.as_str());
    out["qudits"] = json!(r.qudit_count);
    out["verified"] = json!(r.verified);
    Ok((text, out))
}

fn demo(name: DemoName, d: Option<u32>, u: Option<u32>, seed: u64) -> Result<Report, Failure> {
    let r = match name {
        DemoName::Nand => compile_nand()?,
        DemoName::Quadratic => compile_quadratic(d.unwrap_or(3), &LinearMap::identity())?,
        DemoName::Exponential => {
            compile_exponential(d.unwrap_or(5), u.unwrap_or(2), &LinearMap::identity())?
        }
    };
    let (text, out) = compiled(&r, seed)?;
    Ok(Report::ok(text, out))
}

fn parse_table(d: u32, text: &str) -> Result<FunctionTable, Failure> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Failure::Parse(format!("table entry {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(v) = values.iter().find(|&&v| v >= d) {
        return Err(Failure::Compile(format!("table entry {v} is not in Z_{d}")));
    }
    Ok(FunctionTable::new(d, 1, values)?)
}

fn compile(d: u32, table: &str, out: Option<PathBuf>, odd_ring: bool) -> Result<Report, Failure> {
    let m = parse_table(d, table)?;
    let r = if odd_ring {
        compile_odd_ring(&m)?
    } else {
        compile_general_prime(&m)?
    };
    if !r.verified {
        return Err(Failure::Verify("compiled plan was not verified".into()));
    }
    let mut text = format!(
        "construction: {}\nqudits: {}\nverified: {}\n",
        r.construction.as_str(),
        r.qudit_count,
        r.verified
    );
    let mut j = json!({ "construction": r.construction.as_str(), "qudits": r.qudit_count, "verified": r.verified });
    match out {
        Some(path) => {
            fs::write(&path, r.plan.to_json_pretty() + "\n")
                .map_err(|e| Failure::Compile(format!("cannot write {}: {e}", path.display())))?;
            text.push_str(&format!("plan: {}\n", path.display()));
            j["plan_file"] = json!(path.display().to_string());
        }
        None => {
            j["plan"] = serde_json::from_str(&r.plan.to_json()).expect("plan serializes");
        }
    }
    Ok(Report::ok(text, j))
}

fn analyze(path: &PathBuf, seed: u64) -> Result<Report, Failure> {
    let content = fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    let plan = MbqcPlan::from_json(&content).map_err(|e| match e {
        Error::Parse(m) => Failure::Parse(format!("{}: {m}", path.display())),
        other => Failure::Parse(format!("{}: {other}", path.display())),
    })?;
    let (text, out) = describe(&plan, seed)?;
    Ok(Report::ok(text, out))
}

fn table(p: u32) -> Result<Report, Failure> {
    let text = exponential_table(p)?;
    let rows = ldmbqc::compiler::exponential_rows(p)?;
    let sigma = ldmbqc::compiler::sigma_table(p)?;
    let u = ldmbqc::compiler::primitive_element(p)?;
    Ok(Report::ok(
        text,
        json!({ "p": p, "u": u, "rows": rows, "sigma": sigma }),
    ))
}

fn verify_all(seed: u64) -> Result<Report, Failure> {
    let outcomes = suite::run_all(seed);
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{mark} {:>2} {} [{}] {}\n",
            o.id, o.name, o.tolerance, o.detail
        ));
        rows.push(json!({ "id": o.id, "name": o.name, "tolerance": o.tolerance, "passed": o.passed, "detail": o.detail }));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push_str(&format!(
        "{} passed, {failed} failed\n",
        outcomes.len() - failed
    ));
    Ok(Report {
        text,
        json: json!({ "checks": rows, "failed": failed }),
        code: if failed == 0 { 0 } else { 3 },
    })
}
