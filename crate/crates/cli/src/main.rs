use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ssc_core::composer::{OrderPolicy, TieBreak, DEFAULT_AUDIT_BUDGET};
use ssc_core::document::{parse_document, NetworkDocument, PlacementReport};
use ssc_core::dot::{export_dot, Annotation};
use ssc_core::forcing::{is_ssc_by_forcing, ssc_nodes_by_forcing};
use ssc_core::oracle::{sample_verdict, WeightRanges};
use ssc_core::pactus::check_pactus_ssc;
use ssc_core::ssc::{DEFAULT_EXACT_LIMIT, MAX_EXACT_LIMIT};
use ssc_core::{
    decompose, evaluate_ssc, min_inputs, minimality_audit, verify_placement, ComposerConfig,
    PactusDecomposition, PactusError, StructuredNetwork,
};

/// Strong structural controllability of diffusively coupled networks.
#[derive(Parser)]
#[command(name = "ssc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide SSC exactly by subset enumeration.
    Check {
        path: PathBuf,
        /// Refuse networks with more state nodes than this.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Place the fewest external inputs on a pactus state graph.
    MinInputs {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Smallest)]
        tie_break: TieBreakArg,
        #[arg(long, value_enum, default_value_t = OrderArg::First)]
        order: OrderArg,
        /// Verify the placement and search exhaustively for a smaller one.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sample weighted realizations and test controllability numerically.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the network as Graphviz DOT.
    ExportDot {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = AnnotateArg::None)]
        annotate: AnnotateArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreakArg {
    Smallest,
    Largest,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    /// Breadth-first from the first component.
    First,
    /// Breadth-first from every component, keep the best.
    BestRoot,
    /// Every component order (at most 8 components).
    AllOrders,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnnotateArg {
    None,
    SscNodes,
    Components,
}

/// Exit status 2 with a message on stderr.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<(NetworkDocument, StructuredNetwork), Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let net = doc
        .to_network()
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok((doc, net))
}

fn decomposition(
    doc: &NetworkDocument,
    net: &StructuredNetwork,
) -> Result<PactusDecomposition, PactusError> {
    decompose(net, doc.decomposition.as_deref())
}

fn label_set(labels: &[u32]) -> String {
    let parts: Vec<String> = labels.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn check(path: &Path, exact_limit: usize, as_json: bool) -> Result<u8, Failure> {
    if exact_limit > MAX_EXACT_LIMIT {
        return Err(Failure(format!(
            "--exact-limit {exact_limit} exceeds the maximum of {MAX_EXACT_LIMIT}"
        )));
    }
    let (doc, net) = load(path)?;
    let report = evaluate_ssc(&net, exact_limit)?;
    let witness = report.witness.map(|a| net.subset_labels(a));
    let shortcut = match decomposition(&doc, &net).and_then(|d| check_pactus_ssc(&net, &d)) {
        Ok(true) => "holds",
        Ok(false) => "inconclusive",
        Err(_) => "not-applicable",
    };
    if as_json {
        print_json(&json!({
            "ssc": report.is_ssc,
            "witness": witness,
            "subsets_examined": report.subsets_examined,
            "pactus_shortcut": shortcut,
        }));
    } else {
        match &witness {
            None => println!("SSC: yes"),
            Some(w) => println!("SSC: no, witness {}", label_set(w)),
        }
        println!("subsets examined: {}", report.subsets_examined);
        println!("pactus shortcut: {shortcut}");
    }
    Ok(if report.is_ssc { 0 } else { 1 })
}

fn min_inputs_cmd(
    path: &Path,
    tie_break: TieBreakArg,
    order: OrderArg,
    audit: bool,
    as_json: bool,
) -> Result<u8, Failure> {
    let (doc, net) = load(path)?;
    let dec = decomposition(&doc, &net)?;
    let config = ComposerConfig {
        tie_break: match tie_break {
            TieBreakArg::Smallest => TieBreak::Smallest,
            TieBreakArg::Largest => TieBreak::Largest,
        },
        order: match order {
            OrderArg::First => OrderPolicy::FirstComponent,
            OrderArg::BestRoot => OrderPolicy::BestRoot,
            OrderArg::AllOrders => OrderPolicy::AllOrders,
        },
    };
    let placement = min_inputs(&net, &dec, &config)?;
    let mut report = PlacementReport::new(&net, &dec, &placement);
    let mut code = 0;
    if audit {
        // past the enumeration limit, the forcing closure gives the same verdict
        let verified = if net.n() <= DEFAULT_EXACT_LIMIT {
            verify_placement(&net, &placement, DEFAULT_EXACT_LIMIT)?.is_ssc
        } else {
            is_ssc_by_forcing(&placement.apply(&net))
        };
        report.verified_ssc = Some(verified);
        if net.n() <= DEFAULT_AUDIT_BUDGET {
            report.minimal = Some(minimality_audit(&net, &placement, DEFAULT_AUDIT_BUDGET)?);
        } else if !as_json {
            eprintln!(
                "note: minimality audit skipped, {} nodes exceeds the budget of {DEFAULT_AUDIT_BUDGET}",
                net.n()
            );
        }
        if !verified || report.minimal == Some(false) {
            code = 1;
        }
    }
    if as_json {
        print_json(&report);
        return Ok(code);
    }
    let placed: Vec<String> = report
        .external_inputs
        .iter()
        .map(|s| format!("{}->{}", s.id, s.target))
        .collect();
    println!("external inputs: {} [{}]", report.count, placed.join(", "));
    for s in &report.stages {
        println!(
            "stage G{} {}: component inputs {}, added {}, SSC nodes {}",
            s.component,
            s.graph_type,
            label_set(&s.component_inputs),
            label_set(&s.externals_added),
            label_set(&s.cumulative_ssc_nodes),
        );
    }
    if let Some(v) = report.verified_ssc {
        println!("verified SSC: {}", if v { "yes" } else { "no" });
    }
    if let Some(m) = report.minimal {
        println!("minimal: {}", if m { "yes" } else { "no" });
    }
    Ok(code)
}

fn oracle(path: &Path, trials: u64, seed: u64) -> Result<u8, Failure> {
    let (_, net) = load(path)?;
    let summary = sample_verdict(&net, trials as usize, seed, &WeightRanges::default());
    let structural = is_ssc_by_forcing(&net);
    println!(
        "controllable fraction: {:.3} ({}/{} trials, seed {seed})",
        summary.fraction(),
        summary.controllable,
        summary.trials
    );
    if summary.method_disagreements > 0 {
        println!(
            "warning: rank methods disagree on {} trials",
            summary.method_disagreements
        );
    }
    if !structural {
        println!("non-SSC: sampling cannot certify");
        Ok(0)
    } else if summary.controllable == summary.trials {
        println!("consistent");
        Ok(0)
    } else {
        println!("inconsistent: SSC network with an uncontrollable realization");
        Ok(1)
    }
}

fn export(path: &Path, annotate: AnnotateArg) -> Result<u8, Failure> {
    let (doc, net) = load(path)?;
    let text = match annotate {
        AnnotateArg::None => export_dot(&net, &Annotation::Plain),
        AnnotateArg::SscNodes => {
            export_dot(&net, &Annotation::SscNodes(&ssc_nodes_by_forcing(&net)))
        }
        AnnotateArg::Components => {
            let dec = decomposition(&doc, &net)?;
            export_dot(&net, &Annotation::Components(&dec))
        }
    };
    print!("{text}");
    Ok(0)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SSC_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure(format!(
            "SSC_THREADS must be a positive integer, got {value:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Check {
            path,
            exact_limit,
            json,
        } => check(&path, exact_limit, json),
        Command::MinInputs {
            path,
            tie_break,
            order,
            audit,
            json,
        } => min_inputs_cmd(&path, tie_break, order, audit, json),
        Command::Oracle { path, trials, seed } => oracle(&path, trials, seed),
        Command::ExportDot { path, annotate } => export(&path, annotate),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
