use clap::{Args, ValueEnum};
use quadnorm::classifier::{check_class_equalities, check_domino, check_weak_domino, minimal_class};
use quadnorm::factorability::{check_axioms, check_stable212};
use quadnorm::rewriting::check_convergent;
use quadnorm::{format, sampling, QuadMap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{Failure, Report};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Domino,
    WeakDomino,
    LocalFactorability,
    Stable212,
    Convergent,
    Class43,
    Class54,
    FiniteClass,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Domino => "domino",
            Property::WeakDomino => "weak-domino",
            Property::LocalFactorability => "local-factorability",
            Property::Stable212 => "stable212",
            Property::Convergent => "convergent",
            Property::Class43 => "class43",
            Property::Class54 => "class54",
            Property::FiniteClass => "finite-class",
        }
    }

    fn holds(self, f: &QuadMap) -> bool {
        match self {
            Property::Domino => check_domino(f).passed,
            Property::WeakDomino => check_weak_domino(f).map(|r| r.passed).unwrap_or(false),
            Property::LocalFactorability => {
                check_axioms(f).map(|rs| rs.iter().all(|r| r.passed)).unwrap_or(false)
            }
            Property::Stable212 => check_stable212(f).passed,
            Property::Convergent => check_convergent(f, 5).passed,
            Property::Class43 => check_class_equalities(f, 4, 3).passed,
            Property::Class54 => check_class_equalities(f, 5, 4).passed,
            Property::FiniteClass => minimal_class(f).map(|c| c.is_finite()).unwrap_or(false),
        }
    }
}

#[derive(Args)]
pub struct SearchArgs {
    /// Number of non-neutral letters.
    #[arg(long)]
    letters: usize,
    /// Candidates carry a neutral letter (the only supported shape).
    #[arg(long)]
    neutral: bool,
    /// Number of sampled candidates when enumeration is too large.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest candidate space enumerated exhaustively.
    #[arg(long, default_value_t = 100_000)]
    ceiling: u128,
    #[arg(long, value_enum)]
    require: Vec<Property>,
    #[arg(long, value_enum)]
    forbid: Vec<Property>,
    /// Print the table of each match.
    #[arg(long)]
    show: bool,
}

fn workers() -> Option<usize> {
    std::env::var("QUADNORM_WORKERS").ok()?.parse().ok().filter(|&n| n > 0)
}

pub fn run(args: &SearchArgs, out: &mut Report) -> Result<(), Failure> {
    if !args.neutral {
        return Err(Failure::Input("search only generates maps with a neutral letter; pass --neutral".into()));
    }
    if args.letters == 0 || args.letters > sampling::MAX_LETTERS {
        return Err(Failure::Input(format!("--letters must be between 1 and {}", sampling::MAX_LETTERS)));
    }
    let total = sampling::count(args.letters);
    let exhaustive = total <= args.ceiling;
    let candidates: Vec<QuadMap> = if exhaustive {
        sampling::enumerate(args.letters).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        (0..args.count).map(|_| sampling::sample(args.letters, &mut rng)).collect()
    };
    out.push(format!(
        "SEARCH letters={} space={total} mode={} candidates={}",
        args.letters,
        if exhaustive { "exhaustive" } else { "sampled" },
        candidates.len()
    ));

    let classify = |(i, f): (usize, &QuadMap)| -> Option<Vec<String>> {
        if !args.require.iter().all(|p| p.holds(f)) || args.forbid.iter().any(|p| p.holds(f)) {
            return None;
        }
        let class = match minimal_class(f) {
            Ok(c) => format!("left={} right={}", c.left, c.right),
            Err(_) => "left=inf right=inf".to_string(),
        };
        let mut lines = vec![format!("MATCH {i} {class}")];
        if args.show {
            lines.extend(format::print(f).lines().map(|l| format!("  {l}")));
        }
        Some(lines)
    };
    let run_all = || -> Vec<Option<Vec<String>>> { candidates.par_iter().enumerate().map(classify).collect() };
    let results = match workers() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Input(e.to_string()))?
            .install(run_all),
        None => run_all(),
    };

    let mut matched = 0;
    for lines in results.into_iter().flatten() {
        matched += 1;
        for l in lines {
            out.push(l);
        }
    }
    let filters: Vec<String> = args
        .require
        .iter()
        .map(|p| format!("+{}", p.name()))
        .chain(args.forbid.iter().map(|p| format!("-{}", p.name())))
        .collect();
    out.push(format!("MATCHED {matched} of {} {}", candidates.len(), filters.join(" ")).trim_end().to_string());
    Ok(())
}
