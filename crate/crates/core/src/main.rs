use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use akizuki::parse::{self, FieldSpec, InstanceConfig};
use akizuki::selftest::{self, SUITES};
use akizuki::{AkizukiInstance, CoeffField, Error, PrimeField, Rationals};

#[derive(Parser)]
#[command(name = "akizuki", version, about = "Exact arithmetic in Akizuki's local domain C_M")]
struct Cli {
    /// Instance configuration file (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Coefficient field: `q` or `fp:<prime>`. Overrides the config file.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Working precision N. Overrides the config file.
    #[arg(long, global = true)]
    prec: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Pretty)]
    output: Output,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    count: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Pretty,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form (X, Y) of an expression in t, w, g0, g1, ...
    Nf {
        expr: String,
        /// Level m <= N (defaults to N).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Residue res_{σ,ρ}(ω) of a class, e.g. `res "pair(1;1+t)" "gf(t;1;2)"`.
    Res { pair: String, class: String },
    /// The duality map Φ_{σ,ρ} or its inverse.
    Duality {
        #[command(subcommand)]
        direction: Direction,
    },
    /// Evaluate a continuous homomorphism at an expression.
    HomEval { hom: String, expr: String },
    /// Operations on local cohomology classes.
    H1 {
        #[command(subcommand)]
        op: H1Op,
    },
    /// Arithmetic in the completion Â[X]/(X + t(z - a_0))^2.
    Complete {
        #[command(subcommand)]
        op: CompleteOp,
    },
    /// Recover (σ, ρ) mod t^n by probing the map ω ↦ Φ_{σ,ρ}(ω).
    Extract {
        pair: String,
        /// Level n (defaults to N).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Run a seeded property suite (`all` runs every suite).
    Selftest { suite: String },
}

#[derive(Subcommand)]
enum Direction {
    Forward { pair: String, class: String },
    Inverse { pair: String, hom: String },
}

#[derive(Subcommand)]
enum H1Op {
    Eq {
        a: String,
        b: String,
    },
    Zero {
        class: String,
    },
    /// f · ω
    Act {
        expr: String,
        class: String,
    },
}

#[derive(Subcommand)]
enum CompleteOp {
    Add {
        u: String,
        v: String,
    },
    Mul {
        u: String,
        v: String,
        /// Unit element used for the composition product; defaults to comp(1;0).
        #[arg(long)]
        unit: Option<String>,
    },
    Embed {
        expr: String,
    },
}

enum Failure {
    Domain(Error),
    Parse(Error),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e)
        } else {
            Failure::Domain(e)
        }
    }
}

/// Ordered `key = value` results of a command.
#[derive(Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn print(&self, mode: Output) {
        match (mode, self.0.as_slice()) {
            (Output::Pretty, [(_, v)]) => println!("{v}"),
            (Output::Pretty, rows) => {
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in rows {
                    println!("{k:<width$} = {v}");
                }
            }
            (Output::Machine, rows) => {
                for (k, v) in rows {
                    println!("{k} = {v}");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Suite) => ExitCode::from(3),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            InstanceConfig::parse(&text)?
        }
        None => InstanceConfig::default(),
    };
    if let Some(f) = &cli.field {
        cfg.field = f.parse()?;
    }
    if let Some(n) = cli.prec {
        cfg.precision = n;
    }
    match cfg.field {
        FieldSpec::Rationals => dispatch(cli, &cfg.build(Rationals)?),
        FieldSpec::Prime(p) => dispatch(cli, &cfg.build(PrimeField::new(p)?)?),
    }
}

fn dispatch<F: CoeffField>(cli: &Cli, inst: &AkizukiInstance<F>) -> Result<(), Failure> {
    let field = inst.field();
    let big_n = inst.precision();
    let mut out = Report::default();
    match &cli.command {
        Command::Nf { expr, level } => {
            let m = level.unwrap_or(big_n);
            let f = inst.eval_expression(&parse::parse_expr(expr)?, m)?;
            out.put("X", f.x()).put("Y", f.y()).put("level", m);
        }
        Command::Res { pair, class } => {
            let pair = parse::parse_pair(field, pair, big_n)?;
            let omega = parse::parse_h1(field, class)?;
            out.put("residue", inst.residue(&pair, &omega)?);
        }
        Command::Duality { direction: Direction::Forward { pair, class } } => {
            let pair = parse::parse_pair(field, pair, big_n)?;
            let omega = parse::parse_h1(field, class)?;
            out.put("hom", inst.phi(&pair, &omega)?);
        }
        Command::Duality { direction: Direction::Inverse { pair, hom } } => {
            let pair = parse::parse_pair(field, pair, big_n)?;
            let hom = parse::parse_hom(field, hom)?;
            out.put("class", inst.phi_inverse(&pair, &hom)?);
        }
        Command::HomEval { hom, expr } => {
            let hom = parse::parse_hom(field, hom)?;
            let f = inst.eval_expression(&parse::parse_expr(expr)?, hom.level())?;
            out.put("value", hom.eval(&f)?);
        }
        Command::H1 { op: H1Op::Eq { a, b } } => {
            let (a, b) = (parse::parse_h1(field, a)?, parse::parse_h1(field, b)?);
            out.put("equal", a.equals(&b));
        }
        Command::H1 { op: H1Op::Zero { class } } => {
            out.put("zero", parse::parse_h1(field, class)?.is_zero());
        }
        Command::H1 { op: H1Op::Act { expr, class } } => {
            let omega = parse::parse_h1(field, class)?;
            let f = inst.eval_expression(&parse::parse_expr(expr)?, omega.exponent())?;
            out.put("class", inst.h1_act(&f, &omega)?);
        }
        Command::Complete { op: CompleteOp::Add { u, v } } => {
            let u = parse::parse_comp(field, u, big_n)?;
            let v = parse::parse_comp(field, v, big_n)?;
            out.put("element", u.add(&v)?);
        }
        Command::Complete { op: CompleteOp::Mul { u, v, unit } } => {
            let u = parse::parse_comp(field, u, big_n)?;
            let v = parse::parse_comp(field, v, big_n)?;
            let prod = match unit {
                None => inst.comp_mul(&u, &v)?,
                Some(unit) => inst.comp_mul_general(&u, &v, &parse::parse_comp(field, unit, big_n)?)?,
            };
            out.put("element", prod);
        }
        Command::Complete { op: CompleteOp::Embed { expr } } => {
            let f = inst.eval_expression(&parse::parse_expr(expr)?, big_n)?;
            out.put("element", inst.comp_embed(&f)?);
        }
        Command::Extract { pair, level } => {
            let n = level.unwrap_or(big_n);
            let pair = parse::parse_pair(field, pair, big_n)?;
            let extracted = inst.endo_extract(|omega| inst.phi(&pair, omega), n)?;
            out.put("sigma", extracted.sigma()).put("rho", extracted.rho()).put("level", n);
        }
        Command::Selftest { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut passed = true;
            for name in names {
                let report = selftest::run_suite(inst, name, cli.seed, cli.count)?;
                passed &= report.passed();
                match cli.output {
                    Output::Pretty => print!("{report}"),
                    Output::Machine => {
                        for o in &report.outcomes {
                            let status = match &o.failure {
                                None => format!("pass {}", o.cases),
                                Some((case, msg)) => format!("fail case {case}: {msg}"),
                            };
                            println!("{}.{} = {status}", report.suite, o.name);
                        }
                    }
                }
            }
            return if passed { Ok(()) } else { Err(Failure::Suite) };
        }
    }
    out.print(cli.output);
    Ok(())
}
