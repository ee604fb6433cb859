//! Report serialization: text tables, JSON, and flat CSV.

use std::fmt::Write as _;

use cyfib::enumerate::{EnumerationReport, PairStatus};

pub fn json(report: &EnumerationReport) -> anyhow::Result<String> {
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

/// One pair per row; provenance tags joined with ';' so the row stays flat.
pub fn csv(report: &EnumerationReport) -> String {
    let mut out = String::from("a,b,status,euler,residual,provenance\n");
    for r in &report.pairs {
        let euler = r.euler.map(|e| e.to_string()).unwrap_or_default();
        let provenance = r
            .provenance
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.pair.a, r.pair.b, r.status, euler, r.residual, provenance
        );
    }
    out
}

pub fn text(report: &EnumerationReport) -> String {
    let s = &report.surface;
    let mut out = String::new();
    let _ = writeln!(out, "surface: {}", s.name);
    let _ = write!(
        out,
        "profile: L2 = {}, c1L = {}, c1sq = {}, c2 = {}, n0 = {}",
        s.l2, s.c1l, s.c1sq, s.c2, s.n0
    );
    if let Some(p) = s.proportionality {
        let _ = write!(out, ", rL = s c1(B) with (r, s) = ({}, {})", p.r, p.s);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "hodge discriminant: D = {}", report.hodge_discriminant);
    let _ = writeln!(out, "conic branch: {}", report.branch);
    let _ = writeln!(out);

    let row = |pair: &str, status: &str, residual: &str, euler: &str, provenance: &str| {
        format!("  {pair:<8} {status:<26} {residual:>8} {euler:>8}  {provenance}\n")
    };
    out.push_str(&row(
        "(a, b)",
        "status",
        "residual",
        "chi_top",
        "provenance",
    ));
    for r in &report.pairs {
        let euler = r.euler.map(|e| e.to_string()).unwrap_or_default();
        let provenance = r
            .provenance
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&row(
            &r.pair.to_string(),
            &r.status.to_string(),
            &r.residual.to_string(),
            &euler,
            &provenance,
        ));
    }
    let _ = writeln!(out);

    let count_of = |status: PairStatus| report.pairs.iter().filter(|r| r.status == status).count();
    let _ = writeln!(out, "status summary:");
    let _ = writeln!(
        out,
        "  {:<26} {:>3}  (2a - b < n0: section existence undecided)",
        "unknown-section",
        count_of(PairStatus::UnknownSection)
    );
    let _ = writeln!(
        out,
        "  {:<26} {:>3}  (section guaranteed, necessary condition holds)",
        "candidate-calabi-yau",
        count_of(PairStatus::CandidateCalabiYau)
    );
    let _ = writeln!(
        out,
        "  {:<26} {:>3}  (section guaranteed, condition fails)",
        "fails-necessary-condition",
        count_of(PairStatus::FailsNecessaryCondition)
    );
    let _ = writeln!(
        out,
        "  {:<26} {:>3}  (cubic forced to factor: no smooth member)",
        "certified-reducible",
        count_of(PairStatus::CertifiedReducible)
    );
    let _ = writeln!(out);

    let c = &report.counts;
    let _ = write!(
        out,
        "counts: small region {} (closed form {}), conic points {}",
        c.small_region_exact, c.closed_form_small_bound, c.conic_points
    );
    if let Some(bound) = c.closed_form_conic_bound {
        let _ = write!(out, " (closed form {bound})");
    }
    let _ = writeln!(out, ", total {}", c.total);

    if !report.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for note in &report.notes {
            let _ = writeln!(out, "  - {note}");
        }
    }
    out
}
