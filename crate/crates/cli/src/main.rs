//! Command-line frontend: generate random graphs, extract
//! strong-confluence graphs, run the makesw pipeline, measure
//! small-world structure, and drive the sweep and confluence-curve
//! experiments. All graphs use the edge-list text format; experiment
//! outputs are plot-ready CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use smallworld::io::{read_edge_list_file, write_edge_list_file};
use smallworld::pipeline::{write_experiment_csv, write_sweep_csv};
use smallworld::{
    confluence_experiment, makesw, small_world_check, sweep, MakeswParams, ScgStats,
    SmallWorldReport, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "smallworld",
    version,
    about = "Small-world graph synthesis via random-walk confluence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a reflexive symmetric ER random graph with an exact arc count.
    GenerateEr {
        #[arg(long)]
        nodes: usize,
        /// Arc count: nodes + 2 * (number of undirected edges).
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract the strong-confluence graph of an input graph.
    Scg {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        walk_length: usize,
        /// Target arc count of the output graph.
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        out: PathBuf,
        /// Write a `u,v,score` CSV of all ranked pairs for audit.
        #[arg(long)]
        dump_scores: Option<PathBuf>,
    },
    /// ER generation, confluence extraction, largest-component selection.
    Makesw {
        #[arg(long)]
        nodes: usize,
        /// Arc count of the intermediate ER graph.
        #[arg(long)]
        arcs_in: usize,
        #[arg(long)]
        walk_length: usize,
        /// Arc count of the extracted graph before component selection.
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the extracted graph before component selection.
        #[arg(long)]
        keep_full: Option<PathBuf>,
        /// Write the small-world report (CSV and JSON) for the output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate the small-world criteria on a graph's largest component.
    Metrics {
        #[arg(long = "in")]
        input: PathBuf,
        /// Report path; both `.csv` and `.json` forms are written.
        #[arg(long)]
        report: PathBuf,
    },
    /// Sweep makesw over a walk-length range, one report row per (t, seed).
    Sweep {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs_in: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long)]
        t_min: usize,
        #[arg(long)]
        t_max: usize,
        /// Comma-separated seed list.
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Track walk probabilities from one source toward two targets.
    ConfluenceCurve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        t_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenerateEr {
            nodes,
            arcs,
            seed,
            out,
        } => {
            let graph = smallworld::er_graph(nodes, arcs, seed)?;
            write_edge_list_file(&graph, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote ER graph: {} nodes, {} arcs -> {}",
                graph.node_count(),
                graph.arc_count(),
                out.display()
            );
            Ok(())
        }
        Command::Scg {
            input,
            walk_length,
            arcs,
            out,
            dump_scores,
        } => {
            let graph = read_edge_list_file(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let matrix = smallworld::all_pairs_walk_matrix(&graph, walk_length)?;
            let ranked = smallworld::rank_pairs(&matrix, &Default::default());
            if let Some(path) = &dump_scores {
                let mut writer = BufWriter::new(File::create(path)?);
                smallworld::scg::write_scores_csv(&ranked, &mut writer)?;
                writer.flush()?;
            }
            let (extracted, stats) =
                smallworld::select_top_pairs(graph.node_count(), &ranked, arcs)?;
            warn_zero_scores(&stats);
            write_edge_list_file(&extracted, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote SCG: {} nodes, {} arcs -> {}",
                extracted.node_count(),
                extracted.arc_count(),
                out.display()
            );
            Ok(())
        }
        Command::Makesw {
            nodes,
            arcs_in,
            walk_length,
            arcs,
            seed,
            out,
            keep_full,
            report,
        } => {
            let params = MakeswParams {
                nodes,
                arcs_in,
                walk_length,
                arcs_out: arcs,
                seed,
            };
            let result = makesw(&params)?;
            warn_zero_scores(&result.scg_stats);
            write_edge_list_file(&result.graph, &out)
                .with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = &keep_full {
                write_edge_list_file(&result.full_graph, path)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = &report {
                let check = small_world_check(&result.graph, result.provenance.lcc_fraction)?;
                write_report(&check, path)?;
            }
            println!(
                "makesw: kept {} of {} nodes (lcc fraction {:.3}), {} arcs -> {}",
                result.graph.node_count(),
                nodes,
                result.provenance.lcc_fraction,
                result.graph.arc_count(),
                out.display()
            );
            Ok(())
        }
        Command::Metrics { input, report } => {
            let graph = read_edge_list_file(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let (lcc, _) = graph.largest_component_subgraph();
            let fraction = lcc.node_count() as f64 / graph.node_count() as f64;
            let check = small_world_check(&lcc, fraction)?;
            write_report(&check, &report)?;
            println!(
                "metrics: n={} m={} diameter={} clustering={:.4} verdict={}",
                check.node_count, check.arc_count, check.diameter, check.clustering, check.verdict
            );
            Ok(())
        }
        Command::Sweep {
            nodes,
            arcs_in,
            arcs,
            t_min,
            t_max,
            seeds,
            out,
        } => {
            if t_min > t_max {
                bail!("--t-min {t_min} exceeds --t-max {t_max}");
            }
            let config = SweepConfig {
                nodes,
                arcs_in,
                arcs_out: arcs,
                t_values: (t_min..=t_max).collect(),
                seeds,
            };
            let records = sweep(&config)?;
            let mut writer = BufWriter::new(File::create(&out)?);
            write_sweep_csv(&records, &mut writer)?;
            writer.flush()?;
            let hits = records.iter().filter(|r| r.report.verdict).count();
            println!(
                "sweep: {} records ({} small-world) -> {}",
                records.len(),
                hits,
                out.display()
            );
            Ok(())
        }
        Command::ConfluenceCurve {
            input,
            u,
            v1,
            v2,
            t_max,
            out,
        } => {
            let graph = read_edge_list_file(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let experiment = confluence_experiment(&graph, u, v1, v2, t_max)?;
            if !experiment.degrees_match {
                eprintln!(
                    "warning: deg({u}) targets differ: deg({v1}) = {}, deg({v2}) = {}; the two series have different asymptotes",
                    graph.degree(v1),
                    graph.degree(v2)
                );
            }
            let mut writer = BufWriter::new(File::create(&out)?);
            write_experiment_csv(&experiment, &mut writer)?;
            writer.flush()?;
            println!(
                "wrote confluence curves for {t_max} steps -> {}",
                out.display()
            );
            Ok(())
        }
    }
}

fn warn_zero_scores(stats: &ScgStats) {
    if stats.zero_score_selected > 0 {
        eprintln!(
            "warning: {} of {} selected pairs had zero confluence; increase --walk-length or the input density",
            stats.zero_score_selected, stats.selected_pairs
        );
    }
}

/// Write the report as CSV and JSON siblings: `--report r.csv` also
/// writes `r.json` (and vice versa); any other extension gets both
/// appended.
fn write_report(report: &SmallWorldReport, path: &Path) -> Result<()> {
    let (csv_path, json_path) = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => (path.to_path_buf(), path.with_extension("json")),
        Some("json") => (path.with_extension("csv"), path.to_path_buf()),
        _ => {
            let mut csv = path.as_os_str().to_owned();
            csv.push(".csv");
            let mut json = path.as_os_str().to_owned();
            json.push(".json");
            (PathBuf::from(csv), PathBuf::from(json))
        }
    };
    let mut writer = BufWriter::new(
        File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?,
    );
    report.write_csv(&mut writer)?;
    writer.flush()?;
    let mut writer = BufWriter::new(
        File::create(&json_path).with_context(|| format!("writing {}", json_path.display()))?,
    );
    report.write_json(&mut writer)?;
    writer.flush()?;
    Ok(())
}
