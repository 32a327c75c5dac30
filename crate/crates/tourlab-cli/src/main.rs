//! Command-line front end: one subcommand per library operation, TRN1 and
//! JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 verification failure or nothing found, 2 usage
//! error (bad flags, unreadable or malformed input).
//!
//! Anywhere a TRN1 file is accepted, `--named <name>` (or the positional
//! token `named:<name>`) substitutes one of the built-in tournaments
//! k6, c5, l1, l2 and their reversals k6c, c5c, l1c, l2c.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

use tourlab::dot::export_dot;
use tourlab::embedding::{
    default_sizes, plant_instance, random_tournament, replay, PlantCase, ReplayPattern,
};
use tourlab::enumeration::{canonical_form, enumerate_classes_jobs, find_embedding, is_isomorphic};
use tourlab::patterns::{named, PatternName};
use tourlab::regularity::{
    backward_matching, epsilon_thresholds, find_structure, is_epsilon_critical, merge_transitive,
    smooth_refine, verify_structure, ChainStructure, ChainStructureJson, CriticalityResult,
    MatchingOutcome, StructureSpec,
};
use tourlab::structure::{
    classify6, count_forest_orderings, find_galaxy_ordering, find_homogeneous, witnesses_hold,
};
use tourlab::transitive::max_transitive;
use tourlab::{Frac, Ordering, Tournament, VertexSet};

#[derive(Parser)]
#[command(name = "tourlab", version, about = "Exact tournament toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A tournament argument: a TRN1 file path or `named:<name>`.
#[derive(Clone, Debug)]
struct Source(String);

impl std::str::FromStr for Source {
    type Err = String;
    fn from_str(s: &str) -> Result<Source, String> {
        Ok(Source(s.to_string()))
    }
}

#[derive(Args, Clone, Debug)]
struct TournamentInput {
    /// TRN1 file, or `named:<name>`.
    input: Option<Source>,
    /// Use a built-in tournament instead of a file.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumFormat {
    Trn1,
    Jsonl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PatternArg {
    L1,
    L2,
}

impl From<PatternArg> for ReplayPattern {
    fn from(p: PatternArg) -> ReplayPattern {
        match p {
            PatternArg::L1 => ReplayPattern::L1,
            PatternArg::L2 => ReplayPattern::L2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    Both,
    MirrorU,
    MirrorV,
}

impl From<CaseArg> for PlantCase {
    fn from(c: CaseArg) -> PlantCase {
        match c {
            CaseArg::Both => PlantCase::Both,
            CaseArg::MirrorU => PlantCase::MirrorU,
            CaseArg::MirrorV => PlantCase::MirrorV,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all isomorphism classes on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "trn1")]
        format: EnumFormat,
        /// Worker threads for the labeled sweep (output is identical).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Canonical form (lexicographically minimal TRN1).
    Canon(TournamentInput),
    /// Isomorphism test with witness permutation.
    Iso { a: Source, b: Source },
    /// Find a pattern copy inside a host.
    Contains { host: Source, pattern: Source },
    /// Maximum transitive subtournament.
    Tr(TournamentInput),
    /// First nontrivial homogeneous set, if any.
    Homog(TournamentInput),
    /// First galaxy ordering, if any.
    Galaxy(TournamentInput),
    /// Census of orderings with acyclic backward-edge graph.
    ForestCount(TournamentInput),
    /// Five-outcome classification of six-vertex tournaments.
    Classify6 {
        #[command(flatten)]
        input: TournamentInput,
        /// Classify every six-vertex isomorphism class.
        #[arg(long)]
        all: bool,
        /// Also write the JSON-lines report to a file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check that every six-vertex class satisfies at least one outcome.
    VerifyLemma22 {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact directed density between two disjoint vertex sets.
    Density {
        #[command(flatten)]
        input: TournamentInput,
        /// Comma-separated 1-based vertices.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Exact criticality test for a rational exponent.
    Critical {
        #[command(flatten)]
        input: TournamentInput,
        /// Exponent as p/q.
        #[arg(long)]
        epsilon: String,
    },
    /// Verify a chain structure (optionally the smooth, per-vertex form).
    VerifyStructure {
        #[command(flatten)]
        input: TournamentInput,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        smooth: bool,
    },
    /// Bad-set smoothing of a verified chain structure.
    Refine {
        #[command(flatten)]
        input: TournamentInput,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Backward matching between two sets, with König fallback.
    Match {
        #[command(flatten)]
        input: TournamentInput,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        m: usize,
    },
    /// Merge two transitive sets, one complete to the other.
    Merge {
        #[command(flatten)]
        input: TournamentInput,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Heuristic search for a chain structure.
    FindStructure {
        #[command(flatten)]
        input: TournamentInput,
        /// Comma-separated 0/1 tags, e.g. 0,0,1,0,0,0.
        #[arg(long)]
        w: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        lambda: String,
    },
    /// Execute the constructive case analysis on a smooth chain.
    Replay {
        #[command(flatten)]
        input: TournamentInput,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long, value_enum)]
        pattern: PatternArg,
    },
    /// Build a deterministic instance forcing one replay case.
    Plant {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        seed: u64,
        /// Comma-separated per-set sizes (defaults depend on the case).
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        tournament_out: Option<PathBuf>,
        #[arg(long)]
        chain_out: Option<PathBuf>,
    },
    /// Uniform random tournament from an explicit seed.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Graphviz export, optionally under a fixed ordering.
    ExportDot {
        #[command(flatten)]
        input: TournamentInput,
        /// Comma-separated 1-based vertex sequence.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Replace a vertex by a whole tournament.
    Substitute {
        a: Source,
        b: Source,
        /// 1-based vertex of the outer tournament to replace.
        #[arg(long)]
        vertex: usize,
    },
    /// The three advisory threshold formulas.
    Thresholds {
        #[arg(long)]
        c: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

type CmdResult = Result<u8, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn check<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

fn load_source(src: &Source, large_host: bool) -> Result<Tournament, Failure> {
    if let Some(name) = src.0.strip_prefix("named:") {
        let name: PatternName = name.parse().map_err(usage)?;
        return Ok(named(name));
    }
    let text = std::fs::read_to_string(&src.0)
        .map_err(|e| usage(format!("cannot read {}: {e}", src.0)))?;
    if large_host {
        Tournament::parse_host(&text).map_err(usage)
    } else {
        Tournament::parse(&text).map_err(usage)
    }
}

impl TournamentInput {
    fn load(&self) -> Result<Tournament, Failure> {
        self.load_with(false)
    }

    /// The density-structure commands accept hosts beyond the interchange
    /// cap of 24 vertices (planted replay instances and smoothing beds).
    fn load_host(&self) -> Result<Tournament, Failure> {
        self.load_with(true)
    }

    fn load_with(&self, large_host: bool) -> Result<Tournament, Failure> {
        match (&self.input, &self.named) {
            (Some(_), Some(_)) => Err(Failure::Usage(
                "give either a file or --named, not both".into(),
            )),
            (Some(src), None) => load_source(src, large_host),
            (None, Some(name)) => {
                let name: PatternName = name.parse().map_err(usage)?;
                Ok(named(name))
            }
            (None, None) => Err(Failure::Usage("missing tournament input".into())),
        }
    }
}

fn parse_vertex_list(t: &Tournament, s: &str) -> Result<VertexSet, Failure> {
    let mut members = Vec::new();
    for part in s.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad vertex {part:?}")))?;
        members.push(v);
    }
    VertexSet::from_one_based(t.n(), &members).map_err(usage)
}

fn parse_frac(s: &str) -> Result<Frac, Failure> {
    s.parse().map_err(usage)
}

fn load_chain(t: &Tournament, path: &PathBuf) -> Result<ChainStructure, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed: ChainStructureJson = serde_json::from_str(&text).map_err(usage)?;
    ChainStructure::from_json(&parsed, t.n()).map_err(usage)
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn classify_all(jobs: usize) -> Result<Vec<tourlab::structure::ClassificationRecord>, Failure> {
    let classes = enumerate_classes_jobs(6, jobs.max(1)).map_err(usage)?;
    let jobs = jobs.clamp(1, 64);
    let chunk = classes.len().div_ceil(jobs);
    let mut records = Vec::with_capacity(classes.len());
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for piece in classes.chunks(chunk.max(1)) {
            handles.push(scope.spawn(move || {
                piece
                    .iter()
                    .map(|class| {
                        let t = Tournament::parse(&format!("6\n{}", class.bits))
                            .expect("canonical bits are valid");
                        classify6(&t).expect("six vertices")
                    })
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            records.extend(h.join().expect("classification worker"));
        }
    });
    Ok(records)
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Enumerate { n, format, jobs } => {
            let classes = enumerate_classes_jobs(n, jobs).map_err(usage)?;
            match format {
                EnumFormat::Trn1 => {
                    for class in &classes {
                        print!("{}\n{}\n", class.n, class.bits);
                    }
                }
                EnumFormat::Jsonl => {
                    for (index, class) in classes.iter().enumerate() {
                        emit(json!({"n": class.n, "bits": class.bits, "index": index}));
                    }
                }
            }
            Ok(0)
        }
        Command::Canon(input) => {
            let t = input.load()?;
            let form = canonical_form(&t).map_err(usage)?;
            print!("{}\n{}\n", form.n, form.bits);
            Ok(0)
        }
        Command::Iso { a, b } => {
            let ta = load_source(&a, false)?;
            let tb = load_source(&b, false)?;
            match is_isomorphic(&ta, &tb).map_err(usage)? {
                Some(witness) => {
                    emit(json!({"isomorphic": true, "witness": witness.to_one_based()}));
                    Ok(0)
                }
                None => {
                    emit(json!({"isomorphic": false, "witness": null}));
                    Ok(1)
                }
            }
        }
        Command::Contains { host, pattern } => {
            let h = load_source(&host, true)?;
            let p = load_source(&pattern, false)?;
            match find_embedding(&h, &p).map_err(usage)? {
                Some(emb) => {
                    let map: Vec<usize> = emb.map.iter().map(|&v| v + 1).collect();
                    emit(json!({"embedding": map}));
                    Ok(0)
                }
                None => {
                    emit(json!({"embedding": null}));
                    Ok(1)
                }
            }
        }
        Command::Tr(input) => {
            let t = input.load()?;
            let (tr, witness) = max_transitive(&t).map_err(usage)?;
            emit(json!({"tr": tr, "witness": witness.to_one_based()}));
            Ok(0)
        }
        Command::Homog(input) => {
            let t = input.load()?;
            match find_homogeneous(&t) {
                Some(set) => {
                    emit(json!({"set": set.to_one_based()}));
                    Ok(0)
                }
                None => {
                    emit(json!({"set": null}));
                    Ok(1)
                }
            }
        }
        Command::Galaxy(input) => {
            let t = input.load()?;
            match find_galaxy_ordering(&t).map_err(usage)? {
                Some(ordering) => {
                    emit(json!({"ordering": ordering.to_one_based()}));
                    Ok(0)
                }
                None => {
                    emit(json!({"ordering": null}));
                    Ok(1)
                }
            }
        }
        Command::ForestCount(input) => {
            let t = input.load()?;
            let (count, orderings) = count_forest_orderings(&t).map_err(usage)?;
            let lists: Vec<Vec<usize>> = orderings.iter().map(|o| o.to_one_based()).collect();
            emit(json!({"count": count, "orderings": lists}));
            Ok(0)
        }
        Command::Classify6 {
            input,
            all,
            report,
            jobs,
        } => {
            let records = if all {
                classify_all(jobs)?
            } else {
                vec![classify6(&input.load()?).map_err(usage)?]
            };
            let mut lines = String::new();
            for record in &records {
                lines.push_str(&serde_json::to_string(record).map_err(check)?);
                lines.push('\n');
            }
            match report {
                Some(path) => {
                    std::fs::write(&path, &lines)
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    let nonempty = records.iter().all(|r| !r.outcomes.is_empty());
                    emit(json!({"classes": records.len(), "all_nonempty": nonempty}));
                }
                None => print!("{lines}"),
            }
            Ok(0)
        }
        Command::VerifyLemma22 { jobs } => {
            let records = classify_all(jobs)?;
            let mut verified = true;
            for record in &records {
                let t = Tournament::parse(&format!("6\n{}", record.bits)).expect("valid bits");
                if record.outcomes.is_empty() || !witnesses_hold(&t, record) {
                    verified = false;
                    eprintln!(
                        "class {} fails: outcomes {:?}",
                        record.bits, record.outcomes
                    );
                }
            }
            emit(json!({"classes": records.len(), "all_nonempty": verified}));
            if verified {
                Ok(0)
            } else {
                Ok(1)
            }
        }
        Command::Density { input, x, y } => {
            let t = input.load_host()?;
            let xs = parse_vertex_list(&t, &x)?;
            let ys = parse_vertex_list(&t, &y)?;
            let d = t.density(&xs, &ys).map_err(usage)?;
            emit(json!({"num": d.num(), "den": d.den(), "value": d.to_f64()}));
            Ok(0)
        }
        Command::Critical { input, epsilon } => {
            let t = input.load()?;
            let eps = parse_frac(&epsilon)?;
            match is_epsilon_critical(&t, eps).map_err(usage)? {
                CriticalityResult::Critical => {
                    emit(json!({"critical": true, "violating": null}));
                    Ok(0)
                }
                CriticalityResult::NotCritical { violating } => {
                    emit(json!({"critical": false, "violating": violating.to_one_based()}));
                    Ok(1)
                }
            }
        }
        Command::VerifyStructure {
            input,
            chain,
            smooth,
        } => {
            let t = input.load_host()?;
            let chain = load_chain(&t, &chain)?;
            match verify_structure(&t, &chain, smooth).map_err(usage)? {
                None => {
                    emit(json!({"ok": true, "violation": null}));
                    Ok(0)
                }
                Some(violation) => {
                    emit(json!({"ok": false, "violation": violation.to_string()}));
                    Ok(1)
                }
            }
        }
        Command::Refine { input, chain } => {
            let t = input.load_host()?;
            let chain = load_chain(&t, &chain)?;
            let refined = smooth_refine(&t, &chain).map_err(check)?;
            emit(serde_json::to_value(refined.to_json()).map_err(check)?);
            Ok(0)
        }
        Command::Match { input, x, y, m } => {
            let t = input.load_host()?;
            let xs = parse_vertex_list(&t, &x)?;
            let ys = parse_vertex_list(&t, &y)?;
            match backward_matching(&t, &xs, &ys, m).map_err(usage)? {
                MatchingOutcome::Pairs(pairs) => {
                    let list: Vec<serde_json::Value> = pairs
                        .iter()
                        .map(|&(x, y)| json!({"x": x + 1, "y": y + 1}))
                        .collect();
                    emit(json!({"pairs": list, "complete_pair": null}));
                    Ok(0)
                }
                MatchingOutcome::CompletePair {
                    x_side,
                    y_side,
                    cover_x,
                    cover_y,
                } => {
                    emit(json!({
                        "pairs": null,
                        "complete_pair": {
                            "x_side": x_side.to_one_based(),
                            "y_side": y_side.to_one_based(),
                            "cover_x": cover_x.to_one_based(),
                            "cover_y": cover_y.to_one_based(),
                        }
                    }));
                    Ok(0)
                }
            }
        }
        Command::Merge { input, a, b } => {
            let t = input.load_host()?;
            let sa = parse_vertex_list(&t, &a)?;
            let sb = parse_vertex_list(&t, &b)?;
            let (merged, order) = merge_transitive(&t, &sa, &sb).map_err(check)?;
            let order1: Vec<usize> = order.iter().map(|&v| v + 1).collect();
            emit(json!({"merged": merged.to_one_based(), "order": order1}));
            Ok(0)
        }
        Command::FindStructure {
            input,
            w,
            c,
            lambda,
        } => {
            let t = input.load_host()?;
            let w: Vec<u8> = w
                .split(',')
                .map(|p| p.trim().parse::<u8>())
                .collect::<Result<_, _>>()
                .map_err(|_| usage("w must be comma-separated 0/1"))?;
            let spec =
                StructureSpec::new(w, parse_frac(&c)?, parse_frac(&lambda)?).map_err(usage)?;
            match find_structure(&t, &spec) {
                Some(chain) => {
                    emit(serde_json::to_value(chain.to_json()).map_err(check)?);
                    Ok(0)
                }
                None => {
                    emit(json!(null));
                    Ok(1)
                }
            }
        }
        Command::Replay {
            input,
            chain,
            pattern,
        } => {
            let t = input.load_host()?;
            let chain = load_chain(&t, &chain)?;
            let outcome = replay(&t, &chain, pattern.into()).map_err(check)?;
            emit(serde_json::to_value(outcome.report()).map_err(check)?);
            Ok(0)
        }
        Command::Plant {
            pattern,
            case,
            seed,
            sizes,
            tournament_out,
            chain_out,
        } => {
            let pattern: ReplayPattern = pattern.into();
            let case: PlantCase = case.into();
            let sizes: Vec<usize> = match sizes {
                Some(s) => s
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| usage("sizes must be comma-separated integers"))?,
                None => default_sizes(pattern, case),
            };
            let (t, chain) = plant_instance(pattern, case, &sizes, seed).map_err(usage)?;
            let trn1 = format!("{}\n{}\n", t.n(), t.orientation_bits());
            let chain_json = serde_json::to_value(chain.to_json()).map_err(check)?;
            if let Some(path) = &tournament_out {
                std::fs::write(path, &trn1)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if let Some(path) = &chain_out {
                std::fs::write(path, chain_json.to_string())
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            emit(json!({"tournament": trn1, "chain": chain_json}));
            Ok(0)
        }
        Command::Random { n, seed } => {
            let t = random_tournament(n, seed).map_err(usage)?;
            print!("{}", t.serialize().map_err(usage)?);
            Ok(0)
        }
        Command::ExportDot { input, ordering } => {
            let t = input.load_host()?;
            let ordering = match ordering {
                Some(s) => {
                    let labels: Vec<usize> = s
                        .split(',')
                        .map(|p| p.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| usage("ordering must be comma-separated 1-based vertices"))?;
                    Some(Ordering::from_one_based(&labels).map_err(usage)?)
                }
                None => None,
            };
            print!("{}", export_dot(&t, ordering.as_ref()));
            Ok(0)
        }
        Command::Substitute { a, b, vertex } => {
            let ta = load_source(&a, false)?;
            let tb = load_source(&b, false)?;
            if vertex == 0 {
                return Err(usage("vertex labels are 1-based"));
            }
            let result = ta.substitute(vertex - 1, &tb).map_err(usage)?;
            print!("{}", result.serialize().map_err(usage)?);
            Ok(0)
        }
        Command::Thresholds { c, f, n } => {
            let th = epsilon_thresholds(parse_frac(&c)?, parse_frac(&f)?, n).map_err(usage)?;
            emit(json!({
                "merge_bound": th.merge_bound,
                "matching_bound": th.matching_bound,
                "size_bound": th.size_bound,
            }));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
