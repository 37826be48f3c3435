//! Batch command-line front end for ulat-core.
//!
//! Every subcommand is deterministic: identical invocation and inputs produce
//! identical bytes.  Exit codes: 0 success (all PASS/NA), 1 a verification
//! FAILed, 2 I/O or schema error.

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use ulat_core::freealg::{load_table_fixtures, verify_all_tables, Verdict};
use ulat_core::hermlat::load_lattice;
use ulat_core::qseries::named_form;
use ulat_core::reflections::scan_reflections;
use ulat_core::taylorforms::{jacobian, TaylorForm};
use ulat_core::RationalTaylorForm;

#[derive(Parser)]
#[command(name = "ulat", version, about = "Hermitian lattices, unitary reflections and modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a lattice fixture.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Reflection scans.
    Reflect {
        #[command(subcommand)]
        command: ReflectCommand,
    },
    /// Evaluate named q-series.
    Qseries {
        #[command(subcommand)]
        command: QseriesCommand,
    },
    /// Modular Jacobian of named forms.
    Jacobian(JacobianArgs),
    /// Verify machine-readable tables.
    Tables {
        #[command(subcommand)]
        command: TablesCommand,
    },
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Print rank, trace form, discriminant group and integrality verdicts.
    Info {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ReflectCommand {
    /// Scan primitive vectors in a box and classify all reflections.
    Scan {
        #[arg(long)]
        lattice: PathBuf,
        /// Upper bound on the Hermitian norm (rational, e.g. 4 or 7/2).
        #[arg(long, default_value = "4")]
        norm_max: String,
        /// Coordinate box radius.
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum QseriesCommand {
    /// Print exponent/coefficient pairs of a named form.
    Eval {
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 50)]
        order: u32,
    },
}

#[derive(Args)]
struct JacobianArgs {
    /// Comma-separated list of named forms, e.g. E4,E6.
    #[arg(long)]
    forms: String,
    #[arg(long, default_value_t = 50)]
    order: u32,
    /// Degree budget in the z-variables.
    #[arg(long, default_value_t = 12)]
    degree: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TablesCommand {
    /// Run every table check and report one line per verdict.
    Verify {
        #[arg(long, default_value = "fixtures/tables")]
        fixture_dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Lattice {
            command: LatticeCommand::Info { path, json },
        } => cmd_lattice_info(&path, json),
        Command::Reflect {
            command:
                ReflectCommand::Scan {
                    lattice,
                    norm_max,
                    radius,
                    json,
                },
        } => cmd_reflect_scan(&lattice, &norm_max, radius, json),
        Command::Qseries {
            command: QseriesCommand::Eval { form, order },
        } => cmd_qseries_eval(&form, order),
        Command::Jacobian(args) => cmd_jacobian(&args),
        Command::Tables {
            command: TablesCommand::Verify { fixture_dir, json },
        } => cmd_tables_verify(&fixture_dir, json),
    }
}

fn cmd_lattice_info(path: &PathBuf, json: bool) -> Result<ExitCode, String> {
    let l = load_lattice(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    let tf = l.trace_form();
    let dg = l.discriminant_group().map_err(|e| e.to_string())?;
    if json {
        let doc = serde_json::json!({
            "name": l.name(),
            "d": l.field().d(),
            "hermitian_rank": l.rank(),
            "signature": [tf.signature.0, tf.signature.1],
            "trace_det": tf.det.to_string(),
            "trace_parity": if tf.parity_even { "even" } else { "odd" },
            "integral": l.is_integral(),
            "even": l.is_even(),
            "discriminant_group": {
                "order": dg.order.to_string(),
                "elementary_divisors":
                    dg.elementary_divisors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "h_values": dg.h_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            },
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        if let Some(name) = l.name() {
            println!("name: {}", name);
        }
        println!("d: {}", l.field().d());
        println!("hermitian rank: {} (signature ({},1))", l.rank(), l.n());
        println!("integral: {}   even: {}", l.is_integral(), l.is_even());
        println!(
            "trace form: det {}, {}, signature ({},{})",
            tf.det,
            if tf.parity_even { "even" } else { "odd" },
            tf.signature.0,
            tf.signature.1
        );
        let divs: Vec<String> = dg.elementary_divisors.iter().map(|x| x.to_string()).collect();
        println!(
            "discriminant group: order {}, invariants [{}]",
            dg.order,
            divs.join(", ")
        );
        for (g, h) in dg.generators.iter().zip(&dg.h_values) {
            let coords: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            println!("  generator ({})   h = {} mod 1", coords.join(", "), h);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reflect_scan(
    path: &PathBuf,
    norm_max: &str,
    radius: i64,
    json: bool,
) -> Result<ExitCode, String> {
    let l = load_lattice(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    let bound = BigRational::from_str(norm_max).map_err(|e| format!("--norm-max: {}", e))?;
    let records = scan_reflections(&l, &bound, radius).map_err(|e| e.to_string())?;
    let mut disagreements = 0usize;
    if json {
        let mut docs = Vec::new();
        for rec in &records {
            if !rec.agree() {
                disagreements += 1;
            }
            docs.push(serde_json::json!({
                "r": rec.r.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "norm": rec.norm.to_string(),
                "orders_present": rec.orders_present(),
                "in_kernel": rec.in_kernel(),
                "lemma_clause": rec.lemma_clauses().join("; "),
                "agree": rec.agree(),
            }));
        }
        println!("{}", serde_json::to_string_pretty(&docs).unwrap());
    } else {
        for rec in &records {
            if !rec.agree() {
                disagreements += 1;
            }
            let coords: Vec<String> = rec.r.iter().map(|x| x.to_string()).collect();
            let orders: Vec<String> =
                rec.orders_present().iter().map(|o| o.to_string()).collect();
            println!(
                "r=({})  norm={}  orders=[{}]  kernel={}  agree={}",
                coords.join(", "),
                rec.norm,
                orders.join(","),
                rec.in_kernel(),
                rec.agree()
            );
        }
        println!(
            "{} mirror classes, {} lemma/brute-force disagreements",
            records.len(),
            disagreements
        );
    }
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_qseries_eval(form: &str, order: u32) -> Result<ExitCode, String> {
    let f = named_form(form, order).ok_or_else(|| format!("unknown form: {}", form))?;
    for (e, c) in f.series.terms() {
        println!("{} {}", e, c);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_jacobian(args: &JacobianArgs) -> Result<ExitCode, String> {
    let names: Vec<&str> = args.forms.split(',').filter(|s| !s.is_empty()).collect();
    if names.len() < 2 {
        return Err("--forms needs at least two comma-separated names".into());
    }
    let num_z = names.len() - 2;
    let mut forms: Vec<RationalTaylorForm> = Vec::new();
    let mut weights = Vec::new();
    for name in &names {
        let f = named_form(name, args.order).ok_or_else(|| format!("unknown form: {}", name))?;
        weights.push(f.weight.clone());
        forms.push(TaylorForm::constant_in_z(
            f.series,
            f.weight,
            num_z,
            args.degree,
        ));
    }
    let result = jacobian(&forms).map_err(|e| e.to_string())?;
    let weight = result.value.weight().clone();
    // the degenerate two-form Jacobian of weight 12 is tested against Delta
    let mut delta_line = None;
    if num_z == 0 && weight == BigRational::from_integer(12.into()) {
        let d = ulat_core::qseries::delta(args.order);
        let dform = TaylorForm::constant_in_z(d, weight.clone(), 0, args.degree);
        match result.value.proportional_scalar(&dform) {
            Some(c) => delta_line = Some(format!("proportional to Delta: yes, scalar {}", c)),
            None => delta_line = Some("proportional to Delta: no".to_string()),
        }
    }
    if args.json {
        let mut terms = Vec::new();
        for (alpha, series) in result.value.terms() {
            terms.push(serde_json::json!({
                "alpha": alpha,
                "series": series
                    .terms()
                    .iter()
                    .map(|(e, c)| vec![e.to_string(), c.to_string()])
                    .collect::<Vec<_>>(),
            }));
        }
        let doc = serde_json::json!({
            "forms": names,
            "input_weights": weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "weight": weight.to_string(),
            "terms": terms,
            "delta_proportionality": delta_line,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("jacobian({}) has weight {}", args.forms, weight);
        for (alpha, series) in result.value.terms() {
            let a: Vec<String> = alpha.iter().map(|x| x.to_string()).collect();
            println!("z^({}): {}", a.join(","), series);
        }
        if let Some(line) = &delta_line {
            println!("{}", line);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tables_verify(dir: &PathBuf, json: bool) -> Result<ExitCode, String> {
    let fixtures = load_table_fixtures(dir).map_err(|e| e.to_string())?;
    let report = verify_all_tables(&fixtures).map_err(|e| e.to_string())?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report.lines).unwrap());
    } else {
        for line in &report.lines {
            println!(
                "[{}] {} / {}: {} vs {} ({})",
                line.verdict, line.record, line.check, line.lhs, line.rhs, line.source
            );
        }
        let counts = report.counts();
        let summary: Vec<String> =
            counts.iter().map(|(k, v)| format!("{} {}", v, k)).collect();
        println!("summary: {}", summary.join(", "));
    }
    let failed = report
        .lines
        .iter()
        .any(|l| l.verdict == Verdict::Fail);
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
