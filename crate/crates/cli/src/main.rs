use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use idemforge::codes::{code_summary, DEFAULT_CODEWORD_BUDGET};
use idemforge::document::OutputDocument;
use idemforge::idempotent::dispatch_method;
use idemforge::structure::{cyclotomic_cosets, factor_xn_minus_1, instance_parameters};
use idemforge::verify::verify_system;
use idemforge::{dispatch_with_method, Choices, Limits, Method, ProblemInstance};

/// Primitive idempotents of F_q[x]/(x^(p^k) - 1).
#[derive(Parser)]
#[command(name = "idemforge", version)]
struct Cli {
    /// Largest accepted n = p^k.
    #[arg(long, global = true, env = "IDEMFORGE_MAX_N", default_value_t = 10_000)]
    max_n: u64,

    /// Largest accepted degree of the splitting field of x^n - 1.
    #[arg(
        long,
        global = true,
        env = "IDEMFORGE_MAX_SPLITTING_DEGREE",
        default_value_t = 512
    )]
    max_splitting_degree: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct InstanceArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Euclid,
    Tap1,
    Tap2,
    SplitCase,
    GeneralCase,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Euclid,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the primitive idempotents.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Attach a verification report.
        #[arg(long)]
        verify: bool,
        /// Attach the minimal code of every idempotent.
        #[arg(long)]
        codes: bool,
    },
    /// Check a system: either a document (`--input`, `-` for stdin) or the
    /// one generated for `--q --p --k`. Exits 2 when a check fails.
    Verify {
        #[arg(long, requires_all = ["p", "k"], required_unless_present = "input")]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, conflicts_with = "q")]
        input: Option<String>,
        /// Also compare with an independently computed set.
        #[arg(long, value_enum)]
        against: Option<Oracle>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the irreducible factors of x^n - 1.
    Factors {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Show t, m, the coset census and the idempotent count.
    Params {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Minimal cyclic codes generated by the idempotents.
    Code {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Only the idempotent with this label.
        #[arg(long)]
        label: Option<String>,
        /// Compute the exact minimum distance.
        #[arg(long)]
        min_distance: bool,
        /// Maximum number of codewords to enumerate.
        #[arg(long, default_value_t = DEFAULT_CODEWORD_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Input(anyhow::Error),
    Verification(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let limits = Limits {
        max_n: cli.max_n,
        max_splitting_degree: cli.max_splitting_degree,
        ..Limits::default()
    };
    let build = |a: &InstanceArgs| instance_parameters(a.q, a.p, a.k, &limits);

    match &cli.command {
        Command::Gen {
            instance,
            method,
            format,
            out,
            verify,
            codes,
        } => {
            let inst = build(instance)?;
            let method = resolve(*method, &inst);
            let records = dispatch_with_method(&inst, method, &Choices::default())?;
            let mut doc = OutputDocument::new(&inst, method, &records);
            if *verify {
                let values: Vec<_> = records.iter().map(|r| r.value.clone()).collect();
                doc.verification = Some(verify_system(&inst, &values, true)?);
            }
            if *codes {
                let summaries = records
                    .iter()
                    .map(|r| code_summary(r, None))
                    .collect::<Result<Vec<_>, _>>()?;
                doc.codes = Some(summaries);
            }
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            emit(out.as_ref(), &text)?;
        }
        Command::Verify {
            q,
            p,
            k,
            input,
            against,
            format,
        } => {
            let (inst, values) = match input {
                Some(src) => {
                    let doc = OutputDocument::from_json(&read_input(src)?)?;
                    let inst = doc.instance(&limits)?;
                    let values = doc.records(&inst)?.into_iter().map(|r| r.value).collect();
                    (inst, values)
                }
                None => {
                    let (q, p, k) = (q.unwrap(), p.unwrap(), k.unwrap());
                    let inst = instance_parameters(q, p, k, &limits)?;
                    let records =
                        dispatch_with_method(&inst, dispatch_method(&inst), &Choices::default())?;
                    (
                        inst,
                        records.into_iter().map(|r| r.value).collect::<Vec<_>>(),
                    )
                }
            };
            let report = verify_system(&inst, &values, against.is_some())?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => println!("{report}"),
            }
            if let Some(fail) = report.first_failure() {
                let detail = fail.diagnostic.clone().unwrap_or_default();
                return Err(Failure::Verification(format!("{}: {detail}", fail.name)));
            }
        }
        Command::Factors { instance } => {
            let inst = build(instance)?;
            let factors = factor_xn_minus_1(&inst)?;
            println!(
                "x^{} - 1 over F_{}: {} irreducible factors",
                inst.n(),
                inst.q(),
                factors.len()
            );
            for f in factors {
                let deg = f.poly.degree().unwrap_or(0);
                println!("d={} rep={} deg={}  {}", f.divisor, f.rep, deg, f.poly);
            }
        }
        Command::Params { instance } => {
            let inst = build(instance)?;
            let cosets = cyclotomic_cosets(inst.q(), inst.n())?;
            println!("t={} m={} count={}", inst.t(), inst.m(), cosets.len());
            println!(
                "n={} splitting_degree={}",
                inst.n(),
                inst.splitting_degree()
            );
            for (d, (size, count)) in cosets.census() {
                println!("d={d}: {count} coset(s) of size {size}");
            }
        }
        Command::Code {
            instance,
            label,
            min_distance,
            budget,
            format,
        } => {
            let inst = build(instance)?;
            let records = dispatch_with_method(&inst, dispatch_method(&inst), &Choices::default())?;
            let selected: Vec<_> = match label {
                Some(l) => {
                    let r = records.iter().find(|r| &r.label == l).ok_or_else(|| {
                        let known: Vec<_> = records.iter().map(|r| r.label.as_str()).collect();
                        anyhow!(
                            "no idempotent labelled {l:?}; available: {}",
                            known.join(", ")
                        )
                    })?;
                    vec![r]
                }
                None => records.iter().collect(),
            };
            let budget = min_distance.then_some(*budget);
            let summaries = selected
                .into_iter()
                .map(|r| code_summary(r, budget))
                .collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summaries)?),
                Format::Text if label.is_some() => println!("{}", summaries[0].parameters()),
                Format::Text => {
                    for s in &summaries {
                        println!("{} {}", s.label, s.parameters());
                    }
                }
            }
        }
    }
    Ok(())
}

fn resolve(method: MethodArg, inst: &ProblemInstance) -> Method {
    match method {
        MethodArg::Auto => dispatch_method(inst),
        MethodArg::Euclid => Method::Euclid,
        MethodArg::Tap1 => Method::Tap1,
        MethodArg::Tap2 => Method::Tap2,
        MethodArg::SplitCase => Method::SplitCase,
        MethodArg::GeneralCase => Method::GeneralCase,
    }
}

fn read_input(src: &str) -> anyhow::Result<String> {
    if src == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = stdout.write_all(text.as_bytes()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    bail!(e);
                }
            }
            Ok(())
        }
    }
}
