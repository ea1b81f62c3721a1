//! Command-line interface: construction, orientation generation, pivot
//! runs, structural certificates, the lower-bound family, and batch suites.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use dcp_analysis::certificate::assemble_certificate;
use dcp_analysis::lowerbound::{lower_bound_reports, verify_quadratic_growth};
use dcp_cli::{
    build_with_realization, emit_plot_data, generate_orientations, rows_to_csv, run_suite,
    ExperimentConfig, ResultRow,
};
use dcp_core::orientation::Orientation;
use dcp_core::pivot::{
    directed_height, random_edge_all_starts, random_edge_expected, random_edge_monte_carlo,
    random_facet_expected, random_facet_min_steps, random_facet_monte_carlo,
};
use dcp_core::polytope::face_lattice;

#[derive(Parser)]
#[command(name = "dcp", about = "Pivot-rule laboratory for dual cyclic 4-polytopes and polygon products")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a polytope and dump its graph as JSON.
    Build {
        /// dual-cyclic:<n> or product:<k>x<l>
        polytope: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate seeded random linear AUSOs and write them as JSON files.
    Orient {
        #[arg(long)]
        polytope: String,
        #[arg(long, default_value = "linear")]
        method: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact, Monte Carlo and height runs of random edge.
    RunEdge {
        #[arg(long, name = "in")]
        input: PathBuf,
        /// source | sink | id:<k> | all
        #[arg(long, default_value = "source")]
        start: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact, best-case and Monte Carlo runs of random facet.
    RunFacet {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long, default_value = "source")]
        start: String,
        /// exact | min | mc
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Structural certificate of an orientation.
    Analyze {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and evaluate the random-facet-hard family.
    Lowerbound {
        #[arg(long, default_value_t = 5)]
        max_k: u16,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a full experiment suite from a JSON config.
    Suite {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Convert a results CSV into tidy plot series.
    PlotData {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_orientation(path: &PathBuf) -> Result<Orientation, dcp_cli::AnyError> {
    let txt = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&txt)?;
    let spec = value["polytope"]
        .as_str()
        .ok_or("orientation file lacks a polytope field")?;
    let (graph, _) = build_with_realization(spec)?;
    Ok(Orientation::from_json(Arc::clone(&graph), &value)?)
}

fn resolve_start(o: &Orientation, start: &str) -> Result<Vec<usize>, dcp_cli::AnyError> {
    Ok(match start {
        "source" => vec![o.global_source()?],
        "sink" => vec![o.global_sink()?],
        "all" => (0..o.graph.vertex_count()).collect(),
        s => {
            let id: usize = s
                .strip_prefix("id:")
                .ok_or("start must be source|sink|all|id:<k>")?
                .parse()?;
            vec![id]
        }
    })
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<(), dcp_cli::AnyError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run() -> Result<bool, dcp_cli::AnyError> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Build { polytope, out } => {
            let (graph, _) = build_with_realization(&polytope)?;
            let text = serde_json::to_string_pretty(&graph.to_json())?;
            emit(&out, &text)?;
            Ok(true)
        }
        Cmd::Orient {
            polytope,
            method,
            seed,
            count,
            out,
        } => {
            std::fs::create_dir_all(&out)?;
            for (i, (s, o)) in generate_orientations(&polytope, &method, seed, count)?
                .into_iter()
                .enumerate()
            {
                let path = out.join(format!("orientation_{i:04}.json"));
                std::fs::write(
                    path,
                    serde_json::to_string(&o.to_json(&method, Some(s)))?,
                )?;
            }
            Ok(true)
        }
        Cmd::RunEdge {
            input,
            start,
            exact,
            mc,
            seed,
        } => {
            let o = load_orientation(&input)?;
            let starts = resolve_start(&o, &start)?;
            let all = random_edge_all_starts(&o)?;
            for v in starts {
                if exact || mc.is_none() {
                    let flow = random_edge_expected(&o, v)?;
                    println!(
                        "start={v} exact={} float={} height={}",
                        flow.expected_length,
                        all[v].to_string(),
                        directed_height(&o, v)?
                    );
                }
                if let Some(samples) = mc {
                    let stats = random_edge_monte_carlo(&o, v, samples, seed)?;
                    println!(
                        "start={v} mc mean={} var={} min={} max={} samples={}",
                        stats.mean, stats.variance, stats.min, stats.max, stats.samples
                    );
                }
            }
            Ok(true)
        }
        Cmd::RunFacet {
            input,
            start,
            mode,
            samples,
            seed,
        } => {
            let o = load_orientation(&input)?;
            let lat = face_lattice(&o.graph)?;
            for v in resolve_start(&o, &start)? {
                match mode.as_str() {
                    "exact" => {
                        let e = random_facet_expected(&o, &lat, v)?;
                        println!("start={v} exact={e}");
                    }
                    "min" => {
                        let msteps = random_facet_min_steps(&o, &lat, v)?;
                        println!("start={v} min={msteps}");
                    }
                    "mc" => {
                        let stats = random_facet_monte_carlo(&o, &lat, v, samples, seed)?;
                        println!(
                            "start={v} mc mean={} var={} min={} max={}",
                            stats.mean, stats.variance, stats.min, stats.max
                        );
                    }
                    other => return Err(format!("unknown mode {other}").into()),
                }
            }
            Ok(true)
        }
        Cmd::Analyze { input, report } => {
            let o = load_orientation(&input)?;
            let cert = assemble_certificate(&o)?;
            let text = serde_json::to_string_pretty(&cert.to_json())?;
            emit(&report, &text)?;
            Ok(cert.pass())
        }
        Cmd::Lowerbound { max_k, out } => {
            let reports = lower_bound_reports(max_k)?;
            let pts: Vec<(u16, u64)> = reports.iter().map(|r| (r.k, r.min_facet_steps)).collect();
            let fit = verify_quadratic_growth(&pts)?;
            let doc = serde_json::json!({ "reports": reports, "fit": fit });
            let text = serde_json::to_string_pretty(&doc)?;
            emit(&out, &text)?;
            Ok(fit.pass)
        }
        Cmd::Suite { config, out_dir } => {
            let cfg: ExperimentConfig = serde_json::from_str(&std::fs::read_to_string(config)?)?;
            let output = run_suite(&cfg)?;
            std::fs::create_dir_all(&out_dir)?;
            std::fs::write(out_dir.join("results.csv"), rows_to_csv(&output.rows))?;
            let cert_dir = out_dir.join("certificates");
            std::fs::create_dir_all(&cert_dir)?;
            for (stem, value) in &output.certificates {
                std::fs::write(
                    cert_dir.join(format!("{stem}.json")),
                    serde_json::to_string_pretty(value)?,
                )?;
            }
            std::fs::write(
                out_dir.join("summary.json"),
                serde_json::to_string_pretty(&output.summary)?,
            )?;
            println!("{}", serde_json::to_string_pretty(&output.summary)?);
            Ok(output.all_pass)
        }
        Cmd::PlotData { input, out } => {
            let txt = std::fs::read_to_string(input)?;
            let rows = parse_csv(&txt)?;
            let text = emit_plot_data(&rows)?;
            emit(&out, &text)?;
            Ok(true)
        }
    }
}

fn parse_csv(text: &str) -> Result<Vec<ResultRow>, dcp_cli::AnyError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 14 {
            return Err(format!("line {i}: expected 14 fields, got {}", f.len()).into());
        }
        rows.push(ResultRow {
            polytope: f[1].into(),
            n: f[2].parse()?,
            m: if f[3].is_empty() { None } else { Some(f[3].parse()?) },
            generator: f[4].into(),
            seed: f[5].parse()?,
            start: f[6].into(),
            rule: f[7].into(),
            mode: f[8].into(),
            value_num: f[9].into(),
            value_den: f[10].into(),
            float_value: f[11].parse()?,
            certificate_bound: if f[12].is_empty() { None } else { Some(f[12].parse()?) },
            pass: if f[13].is_empty() { None } else { Some(f[13].parse()?) },
        });
    }
    Ok(rows)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more assertions failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
