use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadnorm::catalog;
use quadnorm::classifier::{check_domino, check_weak_domino, minimal_class, normalize, Strategy};
use quadnorm::factorability::{check_local_factorability, check_stable212};
use quadnorm::rewriting::{derive_rules, rewrite_trace, Mode, RewriteStrategy, TraceEnd};
use quadnorm::{format, CheckReport, Error, MonoidModel, QuadMap};

mod search;

const HEADER: &str = "# quadnorm-report v1";

#[derive(Parser)]
#[command(name = "quadnorm", version, about = "Quadratic normalisation maps: classes, checks, rewriting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormStrategy {
    LeftAlt,
    RightAlt,
    LeftmostReducible,
    Recipe43,
}

impl From<NormStrategy> for Strategy {
    fn from(s: NormStrategy) -> Self {
        match s {
            NormStrategy::LeftAlt => Strategy::LeftAlt,
            NormStrategy::RightAlt => Strategy::RightAlt,
            NormStrategy::LeftmostReducible => Strategy::LeftmostReducible,
            NormStrategy::Recipe43 => Strategy::Recipe43,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RewStrategy {
    Leftmost,
    Rightmost,
    AllMaximal,
}

impl From<RewStrategy> for RewriteStrategy {
    fn from(s: RewStrategy) -> Self {
        match s {
            RewStrategy::Leftmost => RewriteStrategy::Leftmost,
            RewStrategy::Rightmost => RewriteStrategy::Rightmost,
            RewStrategy::AllMaximal => RewriteStrategy::AllMaximal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal class (m,n) with witnesses.
    Class { file: PathBuf },
    /// Normalise a word (space-separated letters, `^` for empty).
    Normalize {
        file: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value = "leftmost-reducible")]
        strategy: NormStrategy,
        #[arg(long)]
        trace: bool,
    },
    /// Run checks; all of them when no flag is given.
    Check {
        file: PathBuf,
        #[arg(long)]
        idempotent: bool,
        #[arg(long)]
        neutral: bool,
        #[arg(long)]
        domino: bool,
        #[arg(long)]
        weak_domino: bool,
        #[arg(long)]
        local_factorability: bool,
        #[arg(long)]
        stable212: bool,
        #[arg(long)]
        all: bool,
    },
    /// List the derived rewriting rules.
    Rules {
        file: PathBuf,
        #[arg(long)]
        mod_e: bool,
    },
    /// Rewrite a word with the derived rules.
    Rewrite {
        file: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: RewStrategy,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        trace: bool,
    },
    /// Element counts and semantic checks of the monoid model.
    Monoid {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        check_stronger: bool,
        #[arg(long)]
        check_left_weighted: bool,
        #[arg(long)]
        check_greedy: bool,
        #[arg(long)]
        elements: bool,
    },
    /// Describe a built-in example, or run its expectations.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        run: bool,
    },
    /// Classify small idempotent maps with a neutral letter.
    Search(search::SearchArgs),
}

/// Printed lines and the exit status they imply.
pub struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn new() -> Self {
        Report { lines: vec![HEADER.to_string()], failed: false }
    }

    pub fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, r: &CheckReport, map: &QuadMap) {
        self.failed |= !r.passed;
        self.push(r.line(map.alphabet()));
    }
}

pub enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// A check could not be met: exit code 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotIdempotent | Error::InfiniteClass | Error::Precondition(_) | Error::NonNormalising { .. } => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<QuadMap, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let mut out = Report::new();
    match cli.command {
        Command::Class { file } => {
            let f = load(&file)?;
            let c = minimal_class(&f)?;
            out.push(format!("CLASS left={} right={}", c.left, c.right));
            let a = f.alphabet();
            if let Some(w) = &c.left_witness {
                out.push(format!("WITNESS left {}", a.render(w)));
            }
            if let Some(w) = &c.right_witness {
                out.push(format!("WITNESS right {}", a.render(w)));
            }
            if let Some(w) = &c.orbit_cycle {
                out.push(format!("CYCLE {}", a.render(w)));
            }
        }
        Command::Normalize { file, word, strategy, trace } => {
            let f = load(&file)?;
            let w = f.alphabet().parse_word(&word)?;
            match normalize(&f, &w, strategy.into()) {
                Ok((n, used)) => {
                    out.push(f.alphabet().render(&n));
                    if trace {
                        out.push(format!("POSITIONS {used}"));
                    }
                }
                Err(Error::NonNormalising { reached, reason }) => {
                    out.failed = true;
                    out.push(format!("NONNORMALISING {reason} reached={}", f.alphabet().render(&reached)));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Check { file, idempotent, neutral, domino, weak_domino, local_factorability, stable212, all } => {
            let f = load(&file)?;
            let none = !(idempotent || neutral || domino || weak_domino || local_factorability || stable212);
            let all = all || none;
            if all || idempotent {
                out.check(&f.check_idempotent(), &f);
            }
            if all || neutral {
                out.check(&f.check_neutral()?, &f);
            }
            if all || domino {
                out.check(&check_domino(&f), &f);
            }
            if all || weak_domino {
                out.check(&check_weak_domino(&f)?, &f);
            }
            if all || local_factorability {
                let r = check_local_factorability(&f, None)?;
                for part in r.reports() {
                    out.check(part, &f);
                }
                let summary = match r.first_failure() {
                    None => CheckReport::pass("local-factorability", ""),
                    Some(bad) => CheckReport::fail("local-factorability", bad.witness.clone().unwrap_or_default(), ""),
                };
                out.check(&summary, &f);
            }
            if all || stable212 {
                out.check(&check_stable212(&f), &f);
            }
        }
        Command::Rules { file, mod_e } => {
            let f = load(&file)?;
            let r = derive_rules(&f, if mod_e { Mode::ModE } else { Mode::Plain })?;
            for line in r.render_rules() {
                out.push(line);
            }
        }
        Command::Rewrite { file, word, strategy, budget, trace } => {
            let f = load(&file)?;
            let a = f.alphabet();
            let mut w = a.parse_word(&word)?;
            let mode = if a.neutral().is_some() {
                w = a.strip_neutral(&w)?;
                Mode::ModE
            } else {
                Mode::Plain
            };
            let r = derive_rules(&f, mode)?;
            let t = rewrite_trace(&r, &w, strategy.into(), budget);
            if trace {
                for line in t.lines(a) {
                    out.push(line);
                }
            }
            let end = match t.end {
                TraceEnd::Irreducible => "irreducible",
                TraceEnd::BudgetExhausted => "budget",
                TraceEnd::Cycle => "cycle",
            };
            out.failed = t.end != TraceEnd::Irreducible;
            out.push(format!("RESULT {} steps={} end={end}", a.render(t.final_word()), t.steps.len()));
        }
        Command::Monoid { file, max_len, check_stronger, check_left_weighted, check_greedy, elements } => {
            let f = load(&file)?;
            let m = MonoidModel::new(f.clone())?;
            let els = m.enumerate_elements(max_len);
            out.push(format!("ELEMENTS {}", els.len()));
            if elements {
                for e in &els {
                    out.push(format!("ELEMENT {}", f.alphabet().render(e.canonical())));
                }
            }
            if check_stronger {
                out.check(&m.check_stronger_assumption(max_len), &f);
            }
            if check_left_weighted {
                out.check(&m.check_left_weighted(max_len), &f);
            }
            if check_greedy {
                out.check(&m.check_greedy(max_len, max_len + 1), &f);
            }
        }
        Command::Catalog { name, run } => match name {
            None => {
                for n in catalog::NAMES {
                    out.push(format!("ENTRY {n}"));
                }
            }
            Some(name) => {
                let entry = catalog::load(&name)?;
                if run {
                    for r in catalog::run_all(&entry) {
                        out.failed |= !r.met;
                        out.push(r.line(entry.map.alphabet()));
                    }
                } else {
                    for line in catalog::describe(&entry).lines() {
                        out.push(line);
                    }
                }
            }
        },
        Command::Search(args) => search::run(&args, &mut out)?,
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            for line in &report.lines {
                println!("{line}");
            }
            ExitCode::from(u8::from(report.failed))
        }
        Err(Failure::Check(msg)) => {
            println!("{HEADER}");
            println!("ERROR {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
