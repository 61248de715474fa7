use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use qwl_core::embedding::wirelength_by_distance;
use qwl_core::formulas::{records_to_csv, wl_formula};
use qwl_core::qcube::{pow3, DEFAULT_ISO_BRUTE_FORCE_BUDGET};
use qwl_core::search::{counterexample, DEFAULT_EXHAUSTIVE_BUDGET};
use qwl_core::{
    brute_force_iso, build_host, build_qcube, cross_check, exhaustive_search, iso_closed_form,
    lex_embedding, lex_prefix_induced, local_search, verify_cut_family, wirelength_by_cuts,
    AnnealSchedule, ExportFormat, HostKind, LabeledGraph, LocalSearchConfig,
};

use crate::args::{GenArgs, GraphFormat, Method, ReportArgs, ReportFormat, SearchArgs, VerifyArgs, WlArgs};

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A check failed or engines disagreed.
    Failure,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut headers.iter().copied(), &mut out);
    for row in rows {
        line(&mut row.iter().map(String::as_str), &mut out);
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn gen(args: &GenArgs) -> Result<Outcome> {
    let format = match args.format {
        GraphFormat::Json => ExportFormat::JsonEdgeList,
        GraphFormat::Dot => ExportFormat::Dot,
    };
    let (graph, family) = match args.host {
        Some(kind) => {
            let host = build_host(kind.into(), args.n)?;
            (host.graph, Some(host.cut_family))
        }
        None => (build_qcube(args.n)?.graph().clone(), None),
    };
    let mut text = qwl_core::graph::export(&graph, format);
    if args.cuts {
        let Some(family) = family else {
            bail!("--cuts requires --host");
        };
        match &args.cuts_out {
            Some(path) => emit(Some(path), &family.to_json())?,
            None => text.push_str(&family.to_json()),
        }
    }
    emit(args.out.as_deref(), &text)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct WlRow {
    host: HostKind,
    n: u32,
    method: &'static str,
    wirelength: u64,
    agree: bool,
    runtime_ms: Option<u128>,
}

pub fn wl(args: &WlArgs) -> Result<Outcome> {
    let kinds: Vec<HostKind> = match args.host {
        Some(h) => vec![h.into()],
        None => HostKind::ALL.to_vec(),
    };
    let guest = build_qcube(args.n)?;
    let mut rows = Vec::new();
    let mut all_agree = true;
    for kind in kinds {
        let host = build_host(kind, args.n)?;
        let embedding = lex_embedding(&guest, &host)?;
        let methods: &[Method] = match args.method {
            Method::All => &[Method::Formula, Method::Cuts, Method::Distance],
            Method::Formula => &[Method::Formula],
            Method::Cuts => &[Method::Cuts],
            Method::Distance => &[Method::Distance],
        };
        let mut values = Vec::new();
        for &method in methods {
            let started = Instant::now();
            let (name, value) = match method {
                Method::Formula => ("formula", wl_formula(kind, args.n)?),
                Method::Cuts => match wirelength_by_cuts(&embedding, &host.cut_family) {
                    Ok(v) => ("cuts", v),
                    Err(err) => {
                        eprintln!("{kind} n={}: cut engine refused: {err}", args.n);
                        all_agree = false;
                        continue;
                    }
                },
                Method::Distance => ("distance", wirelength_by_distance(&embedding)?),
                Method::All => unreachable!(),
            };
            let elapsed = started.elapsed().as_millis();
            values.push((name, value, elapsed));
        }
        let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
        all_agree &= agree;
        for (method, wirelength, ms) in values {
            rows.push(WlRow {
                host: kind,
                n: args.n,
                method,
                wirelength,
                agree,
                runtime_ms: args.timing.then_some(ms),
            });
        }
    }

    let text = match args.format {
        ReportFormat::Json => to_json(&rows),
        ReportFormat::Csv => {
            let mut out = String::from("host,n,method,wirelength,agree,runtime_ms\n");
            for r in &rows {
                let ms = r.runtime_ms.map(|m| m.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{},{},{}", r.host, r.n, r.method, r.wirelength, r.agree, ms);
            }
            out
        }
        ReportFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.host.to_string(),
                        r.n.to_string(),
                        r.method.to_string(),
                        r.wirelength.to_string(),
                        r.agree.to_string(),
                    ];
                    if let Some(ms) = r.runtime_ms {
                        row.push(ms.to_string());
                    }
                    row
                })
                .collect();
            let mut headers = vec!["host", "n", "method", "wirelength", "agree"];
            if args.timing {
                headers.push("runtime_ms");
            }
            table(&headers, &cells)
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(if all_agree { Outcome::Success } else { Outcome::Failure })
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn iso_checks(n: u32, brute_force: bool, budget: usize, checks: &mut Vec<Check>) -> Result<()> {
    let q = build_qcube(n)?;
    let size = q.vertex_count();
    let regular = (0..size).all(|v| q.graph().degree(v) == 2 * n as usize)
        && q.graph().edge_count() as u64 == n as u64 * pow3(n);
    checks.push(Check::new(format!("n={n} cube regularity"), regular, format!("{size} vertices, {} edges", q.graph().edge_count())));

    let mismatch = (1..=size).find(|&k| {
        lex_prefix_induced(&q, k).ok() != iso_closed_form(k as u64, n).ok()
    });
    checks.push(Check::new(
        format!("n={n} lex prefix = closed form"),
        mismatch.is_none(),
        mismatch.map(|k| format!("first mismatch at k={k}")).unwrap_or_else(|| format!("k=1..{size}")),
    ));

    if brute_force {
        if size <= budget {
            let mismatch = (1..=size).find(|&k| {
                brute_force_iso(&q, k, budget).ok() != iso_closed_form(k as u64, n).ok()
            });
            checks.push(Check::new(
                format!("n={n} brute force = closed form"),
                mismatch.is_none(),
                mismatch.map(|k| format!("first mismatch at k={k}")).unwrap_or_else(|| format!("k=1..{size}")),
            ));
        } else {
            checks.push(Check::new(
                format!("n={n} brute force = closed form"),
                true,
                format!("skipped: {size} vertices over budget {budget}"),
            ));
        }
    }
    Ok(())
}

fn host_checks(n: u32, checks: &mut Vec<Check>) -> Result<()> {
    let q = build_qcube(n)?;
    for kind in HostKind::ALL {
        let host = build_host(kind, n)?;
        let e = lex_embedding(&q, &host)?;
        let report = verify_cut_family(&e, &host.cut_family);
        checks.push(Check::new(
            format!("n={n} {kind} cut family"),
            report.passed(),
            format!("{} cuts, k={}: {}", report.cuts.len(), report.multiplicity, report.summary()),
        ));
    }
    for record in cross_check(n, &HostKind::ALL) {
        let show = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        let mut detail = format!(
            "formula={} cuts={} distance={}",
            show(record.formula_value),
            show(record.cut_value),
            show(record.distance_value)
        );
        if let Some(err) = &record.error {
            let _ = write!(detail, " ({err})");
        }
        checks.push(Check::new(format!("n={n} {} engine agreement", record.host), record.agree, detail));
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    if args.n_min == 0 || args.n_min > args.n_max {
        bail!("need 1 <= --n-min <= --n-max");
    }
    let budget = args.budget.unwrap_or(DEFAULT_ISO_BRUTE_FORCE_BUDGET);
    let mut checks = Vec::new();

    if let (Some(path), Some(kind), Some(n)) = (&args.host_file, args.host, args.n) {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let supplied = LabeledGraph::from_json(&text).with_context(|| format!("cannot parse {}", path.display()))?;
        let kind: HostKind = kind.into();
        let host = build_host(kind, n)?;
        let same = supplied.vertex_count() == host.graph.vertex_count() && supplied.edges() == host.graph.edges();
        checks.push(Check::new(
            format!("host file matches {kind} n={n}"),
            same,
            format!("{} vertices, {} edges", supplied.vertex_count(), supplied.edge_count()),
        ));
        if same {
            let q = build_qcube(n)?;
            let e = lex_embedding(&q, &host)?;
            let got = wirelength_by_distance(&e)?;
            let want = wl_formula(kind, n)?;
            checks.push(Check::new(
                format!("host file {kind} n={n} wirelength"),
                got == want,
                format!("distance={got} formula={want}"),
            ));
        }
    }

    for n in args.n_min..=args.n_max {
        iso_checks(n, args.brute_force, budget, &mut checks)?;
        if n >= 2 {
            host_checks(n, &mut checks)?;
        }
    }

    let text = match args.format {
        ReportFormat::Json => to_json(&checks),
        ReportFormat::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &checks {
                let _ = writeln!(out, "{},{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'"));
            }
            out
        }
        ReportFormat::Table => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
            out
        }
    };
    print!("{text}");
    Ok(if checks.iter().all(|c| c.passed) {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

pub fn search(args: &SearchArgs) -> Result<Outcome> {
    let kind: HostKind = args.host.into();
    let guest = build_qcube(args.n)?;
    let host = build_host(kind, args.n)?;
    let result = if args.exhaustive {
        let budget = args.budget.unwrap_or(DEFAULT_EXHAUSTIVE_BUDGET);
        exhaustive_search(&guest, &host.graph, budget)?
    } else {
        let config = LocalSearchConfig {
            restarts: args.restarts,
            steps: args.steps,
            seed: args.seed,
            anneal: args.anneal.then_some(AnnealSchedule {
                initial_temperature: args.t0,
                cooling: args.cooling,
            }),
        };
        local_search(&guest, &host.graph, &config)?
    };
    let formula = wl_formula(kind, args.n)?;

    if let Some(path) = &args.out {
        emit(Some(path), &result.to_json())?;
    }
    let text = match args.format {
        ReportFormat::Json => result.to_json(),
        ReportFormat::Csv => format!(
            "host,n,method,best_wirelength,formula,evaluated,seed\n{},{},{},{},{},{},{}\n",
            kind,
            args.n,
            serde_json::to_value(result.method)?.as_str().unwrap_or_default(),
            result.best_wirelength,
            formula,
            result.evaluated,
            result.seed
        ),
        ReportFormat::Table => table(
            &["host", "n", "method", "best", "formula", "evaluated", "seed"],
            &[vec![
                kind.to_string(),
                args.n.to_string(),
                serde_json::to_value(result.method)?.as_str().unwrap_or_default().to_string(),
                result.best_wirelength.to_string(),
                formula.to_string(),
                result.evaluated.to_string(),
                result.seed.to_string(),
            ]],
        ),
    };
    print!("{text}");

    match counterexample(&guest, &host, formula, &result)? {
        None => Ok(Outcome::Success),
        Some(report) => {
            let json = to_json(&report);
            match &args.counterexample_out {
                Some(path) => emit(Some(path), &json)?,
                None => eprint!("{json}"),
            }
            eprintln!(
                "counterexample: {kind} n={} wirelength {} below formula {formula}",
                args.n, result.best_wirelength
            );
            Ok(Outcome::Failure)
        }
    }
}

pub fn report(args: &ReportArgs) -> Result<Outcome> {
    if args.n_min > args.n_max {
        bail!("need --n-min <= --n-max");
    }
    let kinds: Vec<HostKind> = if args.hosts.is_empty() {
        HostKind::ALL.to_vec()
    } else {
        args.hosts.iter().map(|&h| h.into()).collect()
    };
    let records: Vec<_> = (args.n_min..=args.n_max)
        .flat_map(|n| cross_check(n, &kinds))
        .collect();
    let text = match args.format {
        ReportFormat::Csv => records_to_csv(&records),
        ReportFormat::Json => to_json(&records),
        ReportFormat::Table => {
            let show = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.host.to_string(),
                        r.n.to_string(),
                        show(r.formula_value),
                        show(r.cut_value),
                        show(r.distance_value),
                        r.agree.to_string(),
                    ]
                })
                .collect();
            table(&["host", "n", "formula", "cuts", "distance", "agree"], &rows)
        }
    };
    emit(args.out.as_deref(), &text)?;
    for r in records.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} n={}: {}", r.host, r.n, r.error.as_deref().unwrap_or_default());
    }
    Ok(if records.iter().all(|r| r.agree) {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}
