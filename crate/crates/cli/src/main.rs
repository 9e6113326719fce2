use clap::{Parser as ClapParser, Subcommand};
use voa_cli::eval::{eval, Value};
use voa_cli::parser;
use std::path::PathBuf;
use std::process::ExitCode;
use voa_core::algebra::{build_algebra, context_from_name, EngineConfig};
use voa_core::registry::{
    coset_registry, limit_registry, limit_target_registry, wsuper_n1_registry, wsuper_registry,
    Registry,
};
use voa_core::scalar::parse_scalar;
use voa_core::screening::{apply_screening, graded_kernel_dimension, screening_charge};
use voa_core::suites::{run_suite, SuiteOptions, SUITE_NAMES};

#[derive(ClapParser)]
#[command(
    name = "voa",
    about = "Exact vertex superalgebra calculator and verification suite"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the singular OPE of two expressions
    Ope {
        expr1: String,
        expr2: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "wsuper")]
        registry: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the full lambda bracket of two expressions
    Bracket {
        expr1: String,
        expr2: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "wsuper")]
        registry: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply the i-th screening charge (1-based) to an expression
    Screen {
        index: usize,
        expr: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "wsuper")]
        registry: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite
    Suite {
        /// one of: kernel-sl32, ope-table, coset-membership, ope-match,
        /// virasoro, n2-family, limit, kernel-dims, axioms, all
        name: String,
        /// write the machine-readable report to this file
        #[arg(long)]
        json: Option<PathBuf>,
        /// include wall times (reports stop being byte-identical)
        #[arg(long)]
        timings: bool,
        /// cap for kernel-dimension strata, in conformal-weight units
        #[arg(long)]
        max_weight: Option<i64>,
    },
    /// Graded kernel dimensions of the screening system
    Dims {
        #[arg(long)]
        max_weight: Option<i64>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn max_weight_from_env() -> i64 {
    std::env::var("VOA_MAX_WEIGHT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(3)
}

fn load_registry(config: &Option<PathBuf>, registry: &str) -> Result<Registry, String> {
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
        let cfg: EngineConfig = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let ctx = context_from_name(&cfg.context).map_err(|e| e.to_string())?;
        let algebra = build_algebra(&cfg.algebra, &ctx).map_err(|e| e.to_string())?;
        let mut screenings = Vec::new();
        for (i, sc) in cfg.screenings.iter().enumerate() {
            let mu = sc
                .mu
                .iter()
                .map(|s| parse_scalar(s, &ctx).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            screenings.push(
                screening_charge(&algebra, mu, &sc.dressing, i + 1).map_err(|e| e.to_string())?,
            );
        }
        return Ok(Registry {
            name: "config".to_string(),
            algebra,
            screenings,
            fields: Vec::new(),
        });
    }
    match registry {
        "wsuper" => wsuper_registry(),
        "n1" => wsuper_n1_registry(),
        "coset" => coset_registry(),
        "limit" => limit_registry(),
        "limit-targets" => limit_target_registry(),
        other => {
            return Err(format!(
                "unknown registry `{}`; available: wsuper, n1, coset, limit, limit-targets",
                other
            ))
        }
    }
    .map_err(|e| e.to_string())
}

fn parse_expr(text: &str, reg: &Registry) -> Result<parser::Expr, String> {
    let mut names: Vec<String> = reg.fields.iter().map(|(n, _)| n.clone()).collect();
    for g in &reg.algebra.generators {
        names.push(g.name.clone());
    }
    names.push("vac".to_string());
    let mut symbols = vec![reg.algebra.context.param_name().to_string()];
    for s in ["k", "l"] {
        if reg.algebra.context.lookup(s).is_ok() {
            symbols.push(s.to_string());
        }
    }
    parser::Parser::new(text, &names, &symbols)
        .parse()
        .map_err(|e| e.to_string())
}

fn eval_state(text: &str, reg: &Registry) -> Result<voa_core::state::State, String> {
    match eval(&parse_expr(text, reg)?, reg)? {
        Value::State(s) => Ok(s),
        _ => Err(format!("`{}` does not evaluate to a state", text)),
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Ope {
            expr1,
            expr2,
            config,
            registry,
            json,
        } => {
            let reg = load_registry(&config, &registry)?;
            let a = eval_state(&expr1, &reg)?;
            let b = eval_state(&expr2, &reg)?;
            let rendered = reg.algebra.ope_singular(&a, &b).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "expr1": expr1, "expr2": expr2, "ope": rendered })
                );
            } else {
                println!("{}", rendered);
            }
            Ok(true)
        }
        Cmd::Bracket {
            expr1,
            expr2,
            config,
            registry,
            json,
        } => {
            let reg = load_registry(&config, &registry)?;
            let a = eval_state(&expr1, &reg)?;
            let b = eval_state(&expr2, &reg)?;
            let p = reg.algebra.bracket(&a, &b).map_err(|e| e.to_string())?;
            if json {
                let coeffs: Vec<serde_json::Value> = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(n, s)| {
                        serde_json::json!({ "n": n, "state": reg.algebra.render_state(s) })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({ "expr1": expr1, "expr2": expr2, "bracket": coeffs })
                );
            } else if p.is_zero() {
                println!("0");
            } else {
                for (n, s) in p.coeffs.iter().enumerate() {
                    if !s.is_zero() {
                        println!("l^({}): {}", n, reg.algebra.render_state(s));
                    }
                }
            }
            Ok(true)
        }
        Cmd::Screen {
            index,
            expr,
            config,
            registry,
            json,
        } => {
            let reg = load_registry(&config, &registry)?;
            if index == 0 || index > reg.screenings.len() {
                return Err(format!(
                    "screening index {} out of range 1..={}",
                    index,
                    reg.screenings.len()
                ));
            }
            let a = eval_state(&expr, &reg)?;
            let image = apply_screening(&reg.algebra, &reg.screenings[index - 1], &a)
                .map_err(|e| e.to_string())?;
            let rendered = reg.algebra.render_state(&image);
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "screening": index, "expr": expr, "image": rendered })
                );
            } else {
                println!("{}", rendered);
            }
            Ok(true)
        }
        Cmd::Suite {
            name,
            json,
            timings,
            max_weight,
        } => {
            let opts = SuiteOptions {
                max_weight2: 2 * max_weight.unwrap_or_else(max_weight_from_env),
                timings,
            };
            let names: Vec<&str> = if name == "all" {
                SUITE_NAMES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for n in names {
                let report = run_suite(n, &opts).map_err(|e| e.to_string())?;
                for check in &report.checks {
                    let mark = match check.status.as_str() {
                        "pass" => "pass",
                        "fail" => "FAIL",
                        _ => "ERROR",
                    };
                    let timing = check
                        .wall_ms
                        .map(|ms| format!(" [{} ms]", ms))
                        .unwrap_or_default();
                    println!("[{}] {}: {}{}", mark, report.suite, check.id, timing);
                    if check.status != "pass" {
                        println!("       expected: {}", check.expected);
                        println!("       computed: {}", check.computed);
                    }
                }
                println!(
                    "suite {}: {} pass, {} fail, {} error",
                    report.suite, report.summary.pass, report.summary.fail, report.summary.error
                );
                all_pass &= report.all_pass();
                reports.push(report);
            }
            if let Some(path) = json {
                let body = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0]).unwrap()
                } else {
                    serde_json::to_string_pretty(&reports).unwrap()
                };
                std::fs::write(&path, body + "\n").map_err(|e| e.to_string())?;
                println!("report written to {}", path.display());
            }
            Ok(all_pass)
        }
        Cmd::Dims {
            max_weight,
            config,
            json,
        } => {
            let reg = load_registry(&config, &"wsuper".to_string())?;
            let cap2 = 2 * max_weight.unwrap_or_else(max_weight_from_env);
            let mut rows = Vec::new();
            for w2 in 0..=cap2 {
                let dim = graded_kernel_dimension(&reg.algebra, &reg.screenings, w2, cap2)
                    .map_err(|e| e.to_string())?;
                let weight = if w2 % 2 == 0 {
                    format!("{}", w2 / 2)
                } else {
                    format!("{}/2", w2)
                };
                rows.push((weight, dim));
            }
            if json {
                let body: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(w, d)| serde_json::json!({ "weight": w, "dimension": d }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            } else {
                for (w, d) in rows {
                    println!("weight {:>4}: dimension {}", w, d);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
