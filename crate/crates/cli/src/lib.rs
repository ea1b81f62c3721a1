//! Batch experiment orchestration: deterministic seeded generation of AUSO
//! instances, exact and Monte Carlo pivot runs, certificates, and CSV/JSON
//! result emission.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use dcp_analysis::certificate::assemble_certificate;
use dcp_analysis::lowerbound::{lower_bound_reports, verify_quadratic_growth};
use dcp_core::orientation::{random_generic_orientation, Orientation};
use dcp_core::pivot::{
    random_edge_all_starts, random_edge_monte_carlo, random_facet_expected,
    random_facet_min_steps,
};
use dcp_core::polytope::{
    build_dual_cyclic, build_polygon_product, face_lattice, parse_polytope_spec,
    realize_dual_cyclic, realize_polygon_product, PolytopeGraph, PolytopeKind, Rat, Realization,
};

pub type AnyError = Box<dyn std::error::Error + Send + Sync>;
pub type Result<T> = std::result::Result<T, AnyError>;

/// Versioned CSV header for result rows.
pub const CSV_HEADER: &str =
    "schema,polytope,n,m,generator,seed,start,rule,mode,value_num,value_den,float_value,certificate_bound,pass";
pub const CSV_SCHEMA: &str = "dcp-v1";

/// One emitted measurement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub polytope: String,
    pub n: u16,
    pub m: Option<u16>,
    pub generator: String,
    pub seed: u64,
    pub start: String,
    pub rule: String,
    pub mode: String,
    pub value_num: String,
    pub value_den: String,
    pub float_value: f64,
    pub certificate_bound: Option<i64>,
    pub pass: Option<bool>,
}

impl ResultRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            CSV_SCHEMA,
            self.polytope,
            self.n,
            self.m.map(|m| m.to_string()).unwrap_or_default(),
            self.generator,
            self.seed,
            self.start,
            self.rule,
            self.mode,
            self.value_num,
            self.value_den,
            self.float_value,
            self.certificate_bound
                .map(|b| b.to_string())
                .unwrap_or_default(),
            self.pass.map(|p| p.to_string()).unwrap_or_default(),
        )
    }
}

pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn rat_row(r: &Rat) -> (String, String, f64) {
    (
        r.numer().to_string(),
        r.denom().to_string(),
        r.to_f64().unwrap_or(f64::NAN),
    )
}

/// Experiment configuration; the master seed and the config fully determine
/// every emitted byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub polytopes: Vec<String>,
    #[serde(default = "default_generator")]
    pub generator: String,
    pub count: u32,
    pub master_seed: u64,
    #[serde(default)]
    pub edge_exact: bool,
    #[serde(default)]
    pub edge_mc_samples: Option<u64>,
    #[serde(default)]
    pub facet_exact: bool,
    #[serde(default)]
    pub facet_min: bool,
    #[serde(default)]
    pub certificate: bool,
    #[serde(default)]
    pub lowerbound_max_k: Option<u16>,
}

fn default_generator() -> String {
    "linear".into()
}

/// Build a polytope graph plus a rational realization for linear AUSOs.
pub fn build_with_realization(spec: &str) -> Result<(Arc<PolytopeGraph>, Realization)> {
    let kind = parse_polytope_spec(spec)?;
    let graph = Arc::new(match kind {
        PolytopeKind::DualCyclic { n } => build_dual_cyclic(n)?,
        PolytopeKind::PolygonProduct { k, l } => build_polygon_product(k, l)?,
    });
    let real = match kind {
        PolytopeKind::DualCyclic { .. } => realize_dual_cyclic(&graph)?,
        PolytopeKind::PolygonProduct { .. } => realize_polygon_product(&graph)?,
    };
    Ok((graph, real))
}

/// Stream-derived instance seed: master seed selects the generator,
/// the task index selects the stream.
pub fn instance_seed(master: u64, task_index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(task_index);
    rng.random()
}

pub struct SuiteOutput {
    pub rows: Vec<ResultRow>,
    /// file-name stem -> certificate JSON
    pub certificates: Vec<(String, serde_json::Value)>,
    pub summary: serde_json::Value,
    pub all_pass: bool,
}

/// Run the whole suite described by the config. Work is parallelized over
/// (polytope, instance) tasks; results are assembled in task order, so the
/// output is byte-identical across worker counts.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<SuiteOutput> {
    struct Task {
        polytope: String,
        n: u16,
        m: Option<u16>,
        graph: Arc<PolytopeGraph>,
        real: Arc<Realization>,
        seed: u64,
        index: u64,
    }
    let mut tasks = Vec::new();
    let mut index = 0u64;
    for spec in &cfg.polytopes {
        let (graph, real) = build_with_realization(spec)?;
        let real = Arc::new(real);
        let (n, m) = match graph.kind {
            PolytopeKind::DualCyclic { n } => (n, None),
            PolytopeKind::PolygonProduct { k, l } => (k, Some(l)),
        };
        for _ in 0..cfg.count {
            tasks.push(Task {
                polytope: spec.clone(),
                n,
                m,
                graph: Arc::clone(&graph),
                real: Arc::clone(&real),
                seed: instance_seed(cfg.master_seed, index),
                index,
            });
            index += 1;
        }
    }

    let results: Vec<Result<(Vec<ResultRow>, Option<(String, serde_json::Value)>)>> = tasks
        .par_iter()
        .map(|t| run_task(cfg, t.polytope.clone(), t.n, t.m, &t.graph, &t.real, t.seed, t.index))
        .collect();

    let mut rows = Vec::new();
    let mut certificates = Vec::new();
    let mut errors = Vec::new();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok((mut rs, cert)) => {
                rows.append(&mut rs);
                if let Some(c) = cert {
                    certificates.push(c);
                }
            }
            Err(e) => errors.push(format!("task {i}: {e}")),
        }
    }

    // lower-bound family
    let mut lb_fit = serde_json::Value::Null;
    if let Some(k_max) = cfg.lowerbound_max_k {
        let reports = lower_bound_reports(k_max)?;
        for r in &reports {
            rows.push(ResultRow {
                polytope: format!("dual-cyclic:{}", r.n),
                n: r.n,
                m: None,
                generator: "hard-family".into(),
                seed: 0,
                start: "source".into(),
                rule: "random-facet".into(),
                mode: "min".into(),
                value_num: r.min_facet_steps.to_string(),
                value_den: "1".into(),
                float_value: r.min_facet_steps as f64,
                certificate_bound: None,
                pass: Some(r.auso_valid),
            });
        }
        let pts: Vec<(u16, u64)> = reports.iter().map(|r| (r.k, r.min_facet_steps)).collect();
        let fit = verify_quadratic_growth(&pts)?;
        lb_fit = serde_json::to_value(&fit)?;
    }

    // summary: max expectation ratios per polytope, certificate pass rate
    let mut max_ratio: BTreeMap<String, f64> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.rule == "random-edge" && r.mode == "exact-max") {
        let denom = (r.n + r.m.unwrap_or(0)) as f64;
        let ratio = r.float_value / denom;
        let e = max_ratio.entry(r.polytope.clone()).or_insert(ratio);
        if ratio > *e {
            *e = ratio;
        }
    }
    let cert_rows: Vec<&ResultRow> = rows.iter().filter(|r| r.rule == "certificate").collect();
    let cert_pass = cert_rows.iter().filter(|r| r.pass == Some(true)).count();
    let all_pass = errors.is_empty()
        && rows
            .iter()
            .all(|r| r.pass.unwrap_or(true))
        && lb_fit
            .get("pass")
            .map_or(true, |p| p.as_bool().unwrap_or(false));
    let summary = serde_json::json!({
        "max_expectation_ratio": max_ratio,
        "certificates": { "total": cert_rows.len(), "passed": cert_pass },
        "lowerbound_fit": lb_fit,
        "errors": errors,
    });
    Ok(SuiteOutput {
        rows,
        certificates,
        summary,
        all_pass,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_task(
    cfg: &ExperimentConfig,
    polytope: String,
    n: u16,
    m: Option<u16>,
    graph: &Arc<PolytopeGraph>,
    real: &Realization,
    seed: u64,
    index: u64,
) -> Result<(Vec<ResultRow>, Option<(String, serde_json::Value)>)> {
    if cfg.generator != "linear" {
        return Err(format!("unknown generator {}", cfg.generator).into());
    }
    let (o, _functional) = random_generic_orientation(graph, real, seed)?;
    let mut rows = Vec::new();
    let mut cert_out = None;
    let mk_row = |start: &str, rule: &str, mode: &str, num: String, den: String, f: f64,
                  bound: Option<i64>, pass: Option<bool>| ResultRow {
        polytope: polytope.clone(),
        n,
        m,
        generator: cfg.generator.clone(),
        seed,
        start: start.into(),
        rule: rule.into(),
        mode: mode.into(),
        value_num: num,
        value_den: den,
        float_value: f,
        certificate_bound: bound,
        pass,
    };

    let mut bound = None;
    if cfg.certificate {
        let cert = assemble_certificate(&o)?;
        bound = Some(cert.bound);
        let pass = cert.pass();
        rows.push(mk_row(
            "-",
            "certificate",
            "assertions",
            cert.checks.assertions.len().to_string(),
            "1".into(),
            cert.checks.failures().len() as f64,
            Some(cert.bound),
            Some(pass),
        ));
        cert_out = Some((format!("{}_{}", polytope.replace(':', "_"), index), cert.to_json()));
    }

    if cfg.edge_exact {
        let all = random_edge_all_starts(&o)?;
        let source = o.global_source()?;
        let max = all.iter().max().unwrap().clone();
        let (num, den, f) = rat_row(&max);
        let limit = 48 * (n as i64 + m.unwrap_or(0) as i64);
        let sound = bound.map_or(true, |b| f <= b as f64);
        rows.push(mk_row(
            "max-over-starts",
            "random-edge",
            "exact-max",
            num,
            den,
            f,
            bound,
            Some(f <= limit as f64 && sound),
        ));
        let (num, den, f) = rat_row(&all[source]);
        rows.push(mk_row("source", "random-edge", "exact", num, den, f, bound, None));
    }
    if let Some(samples) = cfg.edge_mc_samples {
        let source = o.global_source()?;
        let stats = random_edge_monte_carlo(&o, source, samples, seed ^ 0x9e3779b97f4a7c15)?;
        rows.push(mk_row(
            "source",
            "random-edge",
            "monte-carlo",
            format!("{}", stats.mean),
            "1".into(),
            stats.mean,
            None,
            None,
        ));
    }
    if cfg.facet_exact || cfg.facet_min {
        let lat = face_lattice(graph)?;
        let source = o.global_source()?;
        if cfg.facet_exact {
            let e = random_facet_expected(&o, &lat, source)?;
            let (num, den, f) = rat_row(&e);
            rows.push(mk_row("source", "random-facet", "exact", num, den, f, None, None));
        }
        if cfg.facet_min {
            let ms = random_facet_min_steps(&o, &lat, source)?;
            rows.push(mk_row(
                "source",
                "random-facet",
                "min",
                ms.to_string(),
                "1".into(),
                ms as f64,
                None,
                None,
            ));
        }
    }
    Ok((rows, cert_out))
}

/// Tidy long-format series for plotting: random-edge rows yield
/// (n, max_E, 48n) points, lower-bound rows yield (k, min_steps) points with
/// the fit appended as comment lines.
pub fn emit_plot_data(rows: &[ResultRow]) -> Result<String> {
    let mut out = String::from("series,x,y\n");
    let mut lb_points: Vec<(u16, u64)> = Vec::new();
    for r in rows {
        match (r.rule.as_str(), r.mode.as_str()) {
            ("random-edge", "exact-max") => {
                let n = r.n + r.m.unwrap_or(0);
                out.push_str(&format!("max_expected_steps,{},{}\n", n, r.float_value));
                out.push_str(&format!("bound_48n,{},{}\n", n, 48 * n as i64));
            }
            ("random-facet", "min") if r.generator == "hard-family" => {
                let k = (r.n - 1) / 12;
                out.push_str(&format!("min_facet_steps,{},{}\n", k, r.value_num));
                lb_points.push((k, r.value_num.parse().unwrap_or(0)));
            }
            _ => {}
        }
    }
    if lb_points.len() >= 3 {
        let fit = verify_quadratic_growth(&lb_points)?;
        out.push_str(&format!(
            "# quadratic_fit a={} b={} c={} pass={}\n",
            fit.a, fit.b, fit.c, fit.pass
        ));
    }
    Ok(out)
}

/// Orientation generation for the `orient` subcommand.
pub fn generate_orientations(
    spec: &str,
    method: &str,
    seed: u64,
    count: u32,
) -> Result<Vec<(u64, Orientation)>> {
    let (graph, real) = build_with_realization(spec)?;
    if method != "linear" {
        return Err(format!("unknown method {method}").into());
    }
    let mut out = Vec::new();
    for i in 0..count {
        let s = instance_seed(seed, i as u64);
        let (o, _) = random_generic_orientation(&graph, &real, s)?;
        out.push((s, o));
    }
    Ok(out)
}
