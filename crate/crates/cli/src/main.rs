use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqpow_core::betti::{
    betti_table_with, find_linear_quotient_order, has_linear_resolution, is_linearly_related, DegreeFilter,
};
use sqpow_core::families::parse_generator;
use sqpow_core::forest::{good_leaf_order, has_intersection_property};
use sqpow_core::matching::matching_invariants;
use sqpow_core::verify::{probe_conjecture, run_suites, VerifyOptions};
use sqpow_core::{squarefree_power, Complex, Error, Field, Ideal, Limits};

/// Squarefree powers of facet ideals: invariants, Betti tables and checks.
///
/// Inputs are generator specs (`path:n=9,t=3`, `broom:h=3,l=1.0.2,t=2`,
/// `tree:@tree.json,t=3`), inline JSON, or a JSON file holding
/// `{"facets": [...]}` or `{"generators": [...]}`.
#[derive(Parser)]
#[command(name = "sqpow", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matching number, restricted and induced matching numbers.
    Invariants { input: String },
    /// Minimal generators of the k-th squarefree power.
    Sqpower {
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// Graded Betti table of I^[k].
    Betti {
        input: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "gf2")]
        field: Field,
        /// Restrict to one internal degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Castelnuovo-Mumford regularity of I^[k].
    Reg {
        input: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "gf2")]
        field: Field,
    },
    /// Boolean property checks; exit status 1 when the property fails.
    Check {
        property: Property,
        input: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "gf2")]
        field: Field,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fuzz the two-sided regularity bound on trees (informational).
    ProbeConjecture {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Forest,
    Ip,
    Linquot,
    Linrel,
    Linres,
}

enum Input {
    Complex(Complex),
    Ideal(Ideal),
}

fn load(input: &str) -> Result<Input, Error> {
    let kind = input.split(':').next().unwrap_or("");
    if matches!(kind, "path" | "broom" | "tree") {
        return parse_generator(input).map(Input::Complex);
    }
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        let path = input.strip_prefix('@').unwrap_or(input);
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("facets").is_some() {
        Complex::from_json(&v).map(Input::Complex)
    } else if v.get("generators").is_some() {
        Ideal::from_json(&v).map(Input::Ideal)
    } else {
        Err(Error::Parse("expected a `facets` or `generators` array".into()))
    }
}

fn complex_of(input: Input) -> Result<Complex, Error> {
    match input {
        Input::Complex(c) => Ok(c),
        Input::Ideal(i) => i.facet_complex(),
    }
}

/// `I^{[k]}`; an ideal input is read through its facet complex.
fn power_of(input: Input, k: usize) -> Result<Ideal, Error> {
    match input {
        Input::Ideal(i) if k == 1 => Ok(i),
        other => squarefree_power(&complex_of(other)?, k),
    }
}

fn print(json_mode: bool, v: Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let limits = Limits::global();
    let js = cli.json;
    match cli.cmd {
        Cmd::Invariants { input } => {
            let c = complex_of(load(&input)?)?;
            let (nu, nu0, nu1) = matching_invariants(&c)?;
            let show = |m: &sqpow_core::matching::Witnessed| -> Vec<String> {
                m.witness.facets.iter().map(|&f| c.show(f)).collect()
            };
            let v = json!({
                "nu": nu.value, "nu0": nu0.value, "nu1": nu1.value,
                "witnesses": {"nu": show(&nu), "nu0": show(&nu0), "nu1": show(&nu1)},
            });
            // Invariants are always reported as JSON.
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            Ok(true)
        }
        Cmd::Sqpower { input, k } => {
            let ideal = power_of(load(&input)?, k)?;
            print(js, ideal.to_json(), || format!("{ideal}\n{} generators\n", ideal.num_generators()));
            Ok(true)
        }
        Cmd::Betti { input, k, field, degree } => {
            let ideal = power_of(load(&input)?, k)?;
            let filter = degree.map(DegreeFilter::only).unwrap_or_default();
            let table = betti_table_with(&ideal, field, filter, limits)?;
            print(js, table.to_json(), || table.to_string());
            Ok(true)
        }
        Cmd::Reg { input, k, field } => {
            let ideal = power_of(load(&input)?, k)?;
            let table = betti_table_with(&ideal, field, DegreeFilter::default(), limits)?;
            let reg = table.regularity().ok_or(Error::ZeroIdeal)?;
            print(js, json!({"reg_ideal": reg, "reg_quotient": reg - 1, "field": field.to_string()}), || format!("{reg}\n"));
            Ok(true)
        }
        Cmd::Check { property, input, k, field } => {
            let input = load(&input)?;
            let (holds, detail) = match property {
                Property::Forest => {
                    let c = complex_of(input)?;
                    match good_leaf_order(&c) {
                        Some(o) => (true, json!(o.order.iter().map(|&i| c.show(c.facets()[i])).collect::<Vec<_>>())),
                        None => (false, Value::Null),
                    }
                }
                Property::Ip => (has_intersection_property(&complex_of(input)?)?, Value::Null),
                Property::Linquot => {
                    let ideal = power_of(input, k)?;
                    match find_linear_quotient_order(&ideal, &[], limits)? {
                        Some(o) => (true, json!(o.iter().map(|&m| ideal.show(m)).collect::<Vec<_>>())),
                        None => (false, Value::Null),
                    }
                }
                Property::Linrel => {
                    let ideal = power_of(input, k)?;
                    let r = is_linearly_related(&ideal)?;
                    (r.related, r.witness.map_or(Value::Null, |(a, b)| json!([ideal.show(a), ideal.show(b)])))
                }
                Property::Linres => (has_linear_resolution(&power_of(input, k)?, field)?, Value::Null),
            };
            print(js, json!({"holds": holds, "witness": detail}), || format!("{holds}\n"));
            Ok(holds)
        }
        Cmd::Verify { suite, extended, seed } => {
            let mut opts = VerifyOptions { extended, ..VerifyOptions::default() };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let reports = run_suites(&suite, &opts)?;
            let ok = reports.iter().all(|r| r.passed());
            print(js, Value::Array(reports.iter().map(|r| r.to_json()).collect()), || {
                reports.iter().map(|r| r.to_string()).collect()
            });
            Ok(ok)
        }
        Cmd::ProbeConjecture { trials, seed } => {
            let report = probe_conjecture(trials, seed, limits);
            print(js, report.to_json(), || report.to_string());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}
