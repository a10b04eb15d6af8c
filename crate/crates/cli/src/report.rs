//! Running tasks on diagrams and rendering the results.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use khlab::complex::{build_dr_complex, DEFAULT_DR_CAP, SIGN_CONVENTION};
use khlab::corpus::CorpusEntry;
use khlab::diagram::PD_CONVENTION;
use khlab::homology::khovanov_homology;
use khlab::quantum::quantum_report;
use khlab::{bracket_q, jones, lee_homology, rasmussen_s, Coefficients, KnotDiagram};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "khlab-report/1";

/// Default evaluation point of the quantum task, `e^(i pi / 5)`.
pub fn default_q() -> Complex64 {
    Complex64::from_polar(1.0, PI / 5.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Bracket,
    Jones,
    Khovanov,
    Lee,
    Rasmussen,
    Quantum,
    Dr,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Bracket => "bracket",
            Task::Jones => "jones",
            Task::Khovanov => "khovanov",
            Task::Lee => "lee",
            Task::Rasmussen => "rasmussen",
            Task::Quantum => "quantum",
            Task::Dr => "dr",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Task::Bracket => &["bracket"],
            Task::Jones => &["jones"],
            Task::Khovanov => &["khovanov_rank", "khovanov_poincare", "khovanov_torsion"],
            Task::Lee => &["lee_dimension"],
            Task::Rasmussen => &["s", "s_min", "s_max"],
            Task::Quantum => &["trace_re", "trace_im", "jones_at_q_re", "jones_at_q_im", "residual"],
            Task::Dr => &["dr_generators"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tasks: Vec<Task>,
    pub coeff: Coefficients,
    pub cap: usize,
    pub format: Format,
    pub seed: u64,
    pub q_samples: Option<usize>,
}

/// Result of one task: JSON value, CSV cells in [`Task::columns`] order and
/// a plain-text block.
struct Outcome {
    json: Value,
    cells: Vec<String>,
    plain: String,
}

pub struct DiagramReport {
    pub name: String,
    pub diagram: KnotDiagram,
    results: BTreeMap<Task, Outcome>,
    pub errors: BTreeMap<Task, String>,
}

fn execute(cfg: &RunConfig, task: Task, d: &KnotDiagram) -> khlab::Result<Outcome> {
    let cap = cfg.cap;
    Ok(match task {
        Task::Bracket | Task::Jones => {
            let p = if task == Task::Bracket { bracket_q(d, cap)? } else { jones(d, cap)? };
            Outcome {
                json: json!({"polynomial": p.to_string(), "coefficients": p.to_json()}),
                cells: vec![p.to_string()],
                plain: format!("{}: {p}", task.name()),
            }
        }
        Task::Khovanov => {
            let t = khovanov_homology(d, cfg.coeff, cap)?;
            let torsion: Vec<String> = t
                .entries()
                .iter()
                .flat_map(|(&(i, j), e)| e.torsion.iter().map(move |o| format!("({i},{j}):{o}")))
                .collect();
            Outcome {
                json: t.to_json(),
                cells: vec![t.total_rank().to_string(), t.poincare().to_string(), torsion.join(";")],
                plain: format!("khovanov over {}:\n{t}P = {}", cfg.coeff, t.poincare()),
            }
        }
        Task::Lee => {
            let h = lee_homology(d, cap)?;
            let dims: BTreeMap<String, usize> = h.dims.iter().map(|(i, n)| (i.to_string(), *n)).collect();
            Outcome {
                json: json!({"dimension": h.dimension(), "by_degree": dims}),
                cells: vec![h.dimension().to_string()],
                plain: format!("lee: dimension {} {:?}", h.dimension(), h.dims),
            }
        }
        Task::Rasmussen => {
            let r = rasmussen_s(d, cap)?;
            Outcome {
                json: r.to_json(),
                cells: vec![r.s.to_string(), r.s_min.to_string(), r.s_max.to_string()],
                plain: format!(
                    "rasmussen: s = {} (s_min {}, s_max {}), slice genus >= {}",
                    r.s, r.s_min, r.s_max, r.slice_genus_lower_bound
                ),
            }
        }
        Task::Quantum => {
            let q = default_q();
            let r = quantum_report(d, q, cfg.q_samples, cfg.seed, cap)?;
            let mut plain = format!(
                "quantum: q = {:.6}{:+.6}i, trace = {:.12}{:+.12}i, J(q) = {:.12}{:+.12}i, residual {:e}",
                r.q_re, r.q_im, r.trace_re, r.trace_im, r.jones_at_q_re, r.jones_at_q_im, r.residual
            );
            if let Some(h) = &r.hadamard {
                let _ = write!(
                    plain,
                    "\n  hadamard ({} samples): {:.6}{:+.6}i +- {:.6}",
                    h.samples, h.estimate_re, h.estimate_im, h.stderr
                );
            }
            Outcome {
                json: serde_json::to_value(&r).expect("plain struct"),
                cells: [r.trace_re, r.trace_im, r.jones_at_q_re, r.jones_at_q_im, r.residual]
                    .iter()
                    .map(f64::to_string)
                    .collect(),
                plain,
            }
        }
        Task::Dr => {
            let cx = build_dr_complex::<i64>(d, cap.min(DEFAULT_DR_CAP))?;
            cx.check_d_squared()?;
            let by_degree: Vec<usize> = (0..cx.len()).map(|i| cx.generators(i).len()).collect();
            Outcome {
                json: json!({"generators": cx.generator_count(), "by_degree": by_degree, "d_squared_zero": true}),
                cells: vec![cx.generator_count().to_string()],
                plain: format!("dr: {} generators {by_degree:?}, d^2 = 0", cx.generator_count()),
            }
        }
    })
}

/// Runs every task on every entry in parallel; output order follows input
/// order.
pub fn run(cfg: &RunConfig, entries: &[CorpusEntry]) -> Vec<DiagramReport> {
    entries
        .par_iter()
        .map(|e| {
            let mut results = BTreeMap::new();
            let mut errors = BTreeMap::new();
            for &task in &cfg.tasks {
                match execute(cfg, task, &e.diagram) {
                    Ok(o) => {
                        results.insert(task, o);
                    }
                    Err(err) => {
                        errors.insert(task, err.to_string());
                    }
                }
            }
            DiagramReport { name: e.name.clone(), diagram: e.diagram.clone(), results, errors }
        })
        .collect()
}

fn header(cfg: &RunConfig) -> Value {
    json!({
        "schema": SCHEMA,
        "version": khlab::VERSION,
        "conventions": {"pd": PD_CONVENTION, "sign": SIGN_CONVENTION},
        "config": {
            "tasks": cfg.tasks,
            "coeff": cfg.coeff.tag(),
            "cap": cfg.cap,
            "seed": cfg.seed,
            "q_samples": cfg.q_samples,
        },
    })
}

fn render_json(cfg: &RunConfig, reports: &[DiagramReport]) -> anyhow::Result<String> {
    let diagrams: Vec<Value> = reports
        .iter()
        .map(|r| {
            let d = &r.diagram;
            let results: serde_json::Map<String, Value> =
                r.results.iter().map(|(t, o)| (t.name().to_string(), o.json.clone())).collect();
            let errors: serde_json::Map<String, Value> =
                r.errors.iter().map(|(t, m)| (t.name().to_string(), Value::from(m.clone()))).collect();
            json!({
                "name": r.name,
                "pd": d.to_pd(),
                "crossings": d.crossing_count(),
                "components": d.component_count(),
                "writhe": d.writhe(),
                "results": results,
                "errors": errors,
            })
        })
        .collect();
    let mut doc = header(cfg);
    doc["diagrams"] = Value::from(diagrams);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn render_csv(cfg: &RunConfig, reports: &[DiagramReport]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    let mut head = vec!["name", "crossings", "components", "writhe"];
    for t in &cfg.tasks {
        head.extend(t.columns());
    }
    head.extend(["error", "version", "conventions"]);
    w.write_record(&head)?;
    let conventions = format!("{PD_CONVENTION} | {SIGN_CONVENTION}");
    for r in reports {
        let d = &r.diagram;
        let mut row =
            vec![r.name.clone(), d.crossing_count().to_string(), d.component_count().to_string(), d.writhe().to_string()];
        for t in &cfg.tasks {
            match r.results.get(t) {
                Some(o) => row.extend(o.cells.iter().cloned()),
                None => row.extend(t.columns().iter().map(|_| String::new())),
            }
        }
        let errs: Vec<String> = r.errors.iter().map(|(t, m)| format!("{}: {m}", t.name())).collect();
        row.push(errs.join("; "));
        row.push(khlab::VERSION.to_string());
        row.push(conventions.clone());
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render_plain(reports: &[DiagramReport]) -> String {
    let mut out = format!("khlab {}\nPD convention: {PD_CONVENTION}\nsign rule: {SIGN_CONVENTION}\n", khlab::VERSION);
    for r in reports {
        let d = &r.diagram;
        let _ = writeln!(
            out,
            "\n== {} ({} crossings, {} components, writhe {})",
            r.name,
            d.crossing_count(),
            d.component_count(),
            d.writhe()
        );
        let _ = writeln!(out, "{}", d.to_pd());
        for o in r.results.values() {
            let _ = writeln!(out, "{}", o.plain);
        }
        for (t, m) in &r.errors {
            let _ = writeln!(out, "{}: error: {m}", t.name());
        }
    }
    out
}

pub fn render(cfg: &RunConfig, reports: &[DiagramReport]) -> anyhow::Result<String> {
    match cfg.format {
        Format::Json => render_json(cfg, reports),
        Format::Csv => render_csv(cfg, reports),
        Format::Plain => Ok(render_plain(reports)),
    }
}
