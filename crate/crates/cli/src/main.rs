use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kplethory::evenops::{act, op_coadd, op_comult, EvenOp, EvenTensor};
use kplethory::loopgrade::{loop_even, loop_odd};
use kplethory::models::model_by_name;
use kplethory::setzz::Window;
use kplethory::symmetric::{left_linearise, newton_psi, universal_pij, universal_pk};
use kplethory::syntax::{compose_operands, parse_factors, parse_operand, Operand};
use kplethory::verify::{self, CheckConfig, Suite};
use kplethory::IntPoly;

#[derive(Parser)]
#[command(name = "kpleth", version, about = "Exact computations with K-theory operations and their looping")]
struct Cli {
    /// Truncation level N: λᵏι with k > N is dropped.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    trunc: u32,
    /// Window W: functions on ℤ are tracked on [-W, W].
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    window: u32,
    /// λ-ring model used by `act`, e.g. integers, sphere, cp:3, split:4, susp:2.
    #[arg(long, global = true, default_value = "integers")]
    model: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized check corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Upoly {
    /// P_k(x; y), one index.
    Pk,
    /// P_{i,j}(λ), two indices.
    Pij,
    /// Left linearisation of P_k, one index.
    Plin,
    /// The Adams operation ψᵏ in terms of the λ's, one index.
    Psi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coproduct {
    Add,
    Mult,
}

#[derive(Subcommand)]
enum Command {
    /// Print a universal polynomial.
    Upoly {
        #[arg(value_enum)]
        kind: Upoly,
        indices: Vec<u32>,
    },
    /// Compose operations: `compose LHS RHS`, or one argument containing `∘`.
    Compose {
        #[arg(required = true, num_args = 1..=2)]
        operands: Vec<String>,
    },
    /// Apply an even operation to an element of the selected model.
    Act { op: String, element: String },
    /// Loop an operation once.
    Loop { op: String },
    /// Co-addition or co-multiplication of an even operation.
    Coprod {
        op: String,
        #[arg(long, value_enum, default_value_t = Coproduct::Add)]
        kind: Coproduct,
    },
    /// Run a verification suite; exits 1 if any property fails.
    Check {
        #[arg(default_value = "all")]
        suite: String,
    },
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, passed: true }
    }
}

fn operand_json(op: &Operand) -> anyhow::Result<Value> {
    Ok(match op {
        Operand::Even(r) => json!({ "parity": "even", "text": r.to_string(), "op": serde_json::to_value(r.to_json())? }),
        Operand::Odd(x) => json!({ "parity": "odd", "text": x.to_string(), "op": serde_json::to_value(x.to_json())? }),
    })
}

fn even_operand(s: &str, cli: &Cli, window: Window) -> anyhow::Result<EvenOp> {
    match parse_operand(s, cli.trunc, window)? {
        Operand::Even(r) => Ok(r),
        Operand::Odd(_) => bail!("`{s}` is an odd operation; an even one is needed here"),
    }
}

fn tensor_json(t: &EvenTensor) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|((d, x, e, y), c)| {
            json!({
                "coeff": c.to_string(),
                "left": { "point": d, "kbu": IntPoly::monomial(x.clone(), 1).to_string() },
                "right": { "point": e, "kbu": IntPoly::monomial(y.clone(), 1).to_string() },
            })
        })
        .collect();
    json!({ "trunc": t.trunc(), "window": t.window().width(), "text": t.to_string(), "terms": terms })
}

fn upoly(kind: Upoly, indices: &[u32]) -> anyhow::Result<Output> {
    let arity = if matches!(kind, Upoly::Pij) { 2 } else { 1 };
    if indices.len() != arity {
        bail!("expected {arity} index argument(s), got {}", indices.len());
    }
    let p = match kind {
        Upoly::Pk => (*universal_pk(indices[0])?).clone(),
        Upoly::Pij => (*universal_pij(indices[0], indices[1])?).clone(),
        Upoly::Plin => left_linearise(&*universal_pk(indices[0])?),
        Upoly::Psi => newton_psi(indices[0])?,
    };
    Ok(Output::ok(p.to_string(), json!({ "text": p.to_string(), "poly": serde_json::to_value(p.to_json())? })))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let window = Window::new(cli.window)?;
    let cfg = || json!({ "trunc": cli.trunc, "window": cli.window });
    match &cli.command {
        Command::Upoly { kind, indices } => upoly(*kind, indices),
        Command::Compose { operands } => {
            let mut factors = Vec::new();
            for s in operands {
                factors.extend(parse_factors(s, cli.trunc, window).with_context(|| format!("parsing `{s}`"))?);
            }
            if factors.len() < 2 {
                bail!("compose needs at least two operands");
            }
            let mut acc = factors.pop().expect("non-empty");
            while let Some(f) = factors.pop() {
                acc = compose_operands(&f, &acc)?;
            }
            let text = acc.to_string();
            Ok(Output::ok(text, json!({ "config": cfg(), "result": operand_json(&acc)? })))
        }
        Command::Act { op, element } => {
            let model = model_by_name(&cli.model)?;
            let r = even_operand(op, cli, window)?;
            let alpha: IntPoly = element.parse().with_context(|| format!("parsing element `{element}`"))?;
            let out = act(&r, &model, &alpha)?;
            Ok(Output::ok(
                out.to_string(),
                json!({ "config": cfg(), "model": model.name(), "result": out.to_string(), "poly": serde_json::to_value(out.to_json())? }),
            ))
        }
        Command::Loop { op } => {
            let looped = match parse_operand(op, cli.trunc, window)? {
                Operand::Even(r) => Operand::Odd(loop_even(&r)?),
                Operand::Odd(x) => Operand::Even(loop_odd(&x, window)?),
            };
            Ok(Output::ok(looped.to_string(), json!({ "config": cfg(), "result": operand_json(&looped)? })))
        }
        Command::Coprod { op, kind } => {
            let r = even_operand(op, cli, window)?;
            let t = match kind {
                Coproduct::Add => op_coadd(&r),
                Coproduct::Mult => op_comult(&r)?,
            };
            Ok(Output::ok(t.to_string(), json!({ "config": cfg(), "result": tensor_json(&t) })))
        }
        Command::Check { suite } => {
            let suite: Suite = suite.parse()?;
            let config = CheckConfig::new(cli.trunc, window, cli.seed);
            let reports = verify::run(suite, &config)?;
            let passed = verify::all_passed(&reports);
            let text: String = reports.iter().map(|r| r.render_text()).collect();
            let json = json!({
                "suite": suite.name(),
                "config": { "trunc": cli.trunc, "window": cli.window, "seed": cli.seed },
                "passed": passed,
                "reports": serde_json::to_value(&reports)?,
            });
            Ok(Output { text: text.trim_end().to_string(), json, passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serialisable"),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e:#}"),
                Format::Json => println!("{}", json!({ "error": format!("{e:#}") })),
            }
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
