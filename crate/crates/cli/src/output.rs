//! Table and CSV rendering of reports.

use std::io::Write;

use swb_core::bounds::BoundKind;
use swb_core::Report;

pub const CSV_HEADER: [&str; 15] = [
    "graph",
    "family",
    "n",
    "e",
    "bound",
    "measure",
    "s",
    "k",
    "J",
    "value",
    "rho",
    "gap",
    "applicable",
    "oracle_assisted",
    "ms",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Shortest round-tripping form, in exponent notation when very small or
/// large.
fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Slack on the correct side of `ρ`: `ρ − value` for lower bounds,
/// `value − ρ` for upper bounds.
fn gap(value: Option<f64>, kind: BoundKind, rho: f64) -> Option<f64> {
    value.map(|v| match kind {
        BoundKind::Lower => rho - v,
        BoundKind::Upper => v - rho,
    })
}

/// One CSV record per bound, in report order.
pub fn csv_records(report: &Report) -> Vec<[String; 15]> {
    let g = &report.graph;
    let rho = report.rho_exact;
    report
        .bounds
        .iter()
        .map(|t| {
            let b = &t.bound;
            [
                g.source.clone(),
                g.family.clone(),
                g.n.to_string(),
                g.e.to_string(),
                b.name.to_string(),
                opt(&b.params.measure),
                opt(&b.params.s),
                opt(&b.params.k),
                opt(&b.params.j),
                b.value.map(num).unwrap_or_default(),
                num(rho),
                gap(b.value, b.kind, rho).map(num).unwrap_or_default(),
                b.applicable().to_string(),
                b.oracle_assisted.to_string(),
                num(t.ms),
            ]
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, reports: &[Report]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        for rec in csv_records(r) {
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn render_table(report: &Report) -> String {
    let g = &report.graph;
    let mut out = format!(
        "graph {} ({}): n={} e={} max_degree={} triangles={} clique_number={} bipartite={} connected={}\n",
        g.source, g.family, g.n, g.e, g.max_degree, g.triangles, g.clique_number, g.bipartite, g.connected
    );
    out += &format!("rho = {}\n\n", report.rho_exact);
    let mut rows = vec![[
        "bound".to_string(),
        "kind".into(),
        "params".into(),
        "value".into(),
        "gap".into(),
        "status".into(),
    ]];
    for t in &report.bounds {
        let b = &t.bound;
        let mut status = format!("{:?}", b.status).to_lowercase();
        if b.oracle_assisted {
            status += "*";
        }
        rows.push([
            b.name.to_string(),
            format!("{:?}", b.kind).to_lowercase(),
            b.params.to_string(),
            b.value.map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into()),
            gap(b.value, b.kind, report.rho_exact)
                .map(|v| format!("{v:.3e}"))
                .unwrap_or_else(|| "-".into()),
            status,
        ]);
    }
    let widths: Vec<usize> = (0..6).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    for r in &rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out += "\n* atom weight taken from the eigendecomposition\n";
    if report.violations.is_empty() {
        out += "violations: none\n";
    } else {
        out += &format!("violations: {}\n", report.violations.len());
        for v in &report.violations {
            out += &format!("  {} [{}] = {} vs rho = {} (excess {:e})\n", v.name, v.params, v.value, v.rho, v.excess);
        }
    }
    out
}
