//! Static SVG of the (a, b) octant: shaded small region, the conic (hyperbola
//! branches or the two lines), and the enumerated lattice points colored by
//! status. Floating point is used for layout only; the report itself is
//! untouched.

use std::fmt::Write as _;

use cyfib::enumerate::{Branch, EnumerationReport, PairStatus};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 56.0;

fn status_color(status: PairStatus) -> &'static str {
    match status {
        PairStatus::UnknownSection => "#8d8d8d",
        PairStatus::CandidateCalabiYau => "#2e7d32",
        PairStatus::FailsNecessaryCondition => "#ef6c00",
        PairStatus::CertifiedReducible => "#c62828",
    }
}

struct Frame {
    window: f64,
}

impl Frame {
    fn x(&self, a: f64) -> f64 {
        MARGIN + a / self.window * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, b: f64) -> f64 {
        SIZE - MARGIN - b / self.window * (SIZE - 2.0 * MARGIN)
    }
}

/// Sample b(a) on the hyperbola (L2 a - c1L)(L2 (a - b) - c1L) = D and emit
/// one polyline per branch, clipped to the frame.
fn hyperbola_paths(report: &EnumerationReport, frame: &Frame) -> String {
    let s = &report.surface;
    let (l2, c1l) = (s.l2 as f64, s.c1l as f64);
    let d = report.hodge_discriminant as f64;
    let asymptote = c1l / l2;
    let mut out = String::new();
    for (lo, hi) in [
        (-1.0, asymptote - 1e-6),
        (asymptote + 1e-6, frame.window + 1.0),
    ] {
        let mut points = Vec::new();
        let steps = 600;
        for i in 0..=steps {
            let a = lo + (hi - lo) * i as f64 / steps as f64;
            let denom = l2 * a - c1l;
            if denom.abs() < 1e-9 {
                continue;
            }
            let b = a - (d / denom + c1l) / l2;
            if (-1.0..=frame.window + 1.0).contains(&b) && (-1.0..=frame.window + 1.0).contains(&a)
            {
                points.push(format!("{:.2},{:.2}", frame.x(a), frame.y(b)));
            }
        }
        if points.len() > 1 {
            let _ = writeln!(
                out,
                r##"  <polyline points="{}" fill="none" stroke="#1565c0" stroke-width="1.5"/>"##,
                points.join(" ")
            );
        }
    }
    out
}

fn line_paths(m: i64, frame: &Frame) -> String {
    let m = m as f64;
    let mut out = String::new();
    // a = m
    let _ = writeln!(
        out,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1565c0" stroke-width="1.5"/>"##,
        frame.x(m),
        frame.y(0.0),
        frame.x(m),
        frame.y(frame.window)
    );
    // b = a - m
    let _ = writeln!(
        out,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1565c0" stroke-width="1.5"/>"##,
        frame.x(m),
        frame.y(0.0),
        frame.x(frame.window),
        frame.y(frame.window - m)
    );
    out
}

pub fn render(report: &EnumerationReport) -> String {
    let s = &report.surface;
    let max_a = report.pairs.iter().map(|r| r.pair.a).max().unwrap_or(0);
    let asymptote = (s.c1l as f64 / s.l2 as f64).ceil() as i64;
    let window = (max_a.max(s.n0).max(asymptote).max(4) + 2) as f64;
    let frame = Frame { window };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"##
    );
    let _ = writeln!(
        svg,
        r##"  <rect width="100%" height="100%" fill="white"/>"##
    );
    let _ = writeln!(svg, "  <title>{}</title>", s.name);

    // octant: region between the a-axis and the diagonal b = a
    let _ = writeln!(
        svg,
        r##"  <polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#f4f4f4"/>"##,
        frame.x(0.0),
        frame.y(0.0),
        frame.x(window),
        frame.y(0.0),
        frame.x(window),
        frame.y(window)
    );
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##,
        frame.x(0.0),
        frame.y(0.0),
        frame.x(window),
        frame.y(window)
    );

    // small region 2a - b < n0 inside the octant
    let n0 = s.n0 as f64;
    let _ = writeln!(
        svg,
        r##"  <polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#8d8d8d" fill-opacity="0.18"/>"##,
        frame.x(0.0),
        frame.y(0.0),
        frame.x(n0 / 2.0),
        frame.y(0.0),
        frame.x(n0),
        frame.y(n0)
    );

    // the conic
    match report.branch {
        Branch::Irreducible => svg.push_str(&hyperbola_paths(report, &frame)),
        Branch::ReducibleIntegral { m } => svg.push_str(&line_paths(m, &frame)),
        Branch::ReducibleNonIntegral => {}
    }

    // axes with integer ticks
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"##,
        frame.x(0.0),
        frame.y(0.0),
        frame.x(window),
        frame.y(0.0)
    );
    let _ = writeln!(
        svg,
        r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"##,
        frame.x(0.0),
        frame.y(0.0),
        frame.x(0.0),
        frame.y(window)
    );
    let step = ((window / 14.0).ceil() as i64).max(1);
    let mut t = 0;
    while (t as f64) <= window {
        let _ = writeln!(
            svg,
            r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"##,
            frame.x(t as f64),
            frame.y(0.0),
            frame.x(t as f64),
            frame.y(0.0) + 4.0
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{t}</text>"##,
            frame.x(t as f64),
            frame.y(0.0) + 16.0
        );
        let _ = writeln!(
            svg,
            r##"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"##,
            frame.x(0.0) - 4.0,
            frame.y(t as f64),
            frame.x(0.0),
            frame.y(t as f64)
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{t}</text>"##,
            frame.x(0.0) - 7.0,
            frame.y(t as f64) + 4.0
        );
        t += step;
    }
    let _ = writeln!(
        svg,
        r##"  <text x="{:.2}" y="{:.2}" font-size="13">a</text>"##,
        frame.x(window) + 8.0,
        frame.y(0.0) + 4.0
    );
    let _ = writeln!(
        svg,
        r##"  <text x="{:.2}" y="{:.2}" font-size="13">b</text>"##,
        frame.x(0.0) - 4.0,
        frame.y(window) - 8.0
    );

    // classified lattice points
    for r in &report.pairs {
        let _ = writeln!(
            svg,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="5" fill="{}" stroke="black" stroke-width="0.6"><title>({}, {}): {}</title></circle>"##,
            frame.x(r.pair.a as f64),
            frame.y(r.pair.b as f64),
            status_color(r.status),
            r.pair.a,
            r.pair.b,
            r.status
        );
    }

    // legend
    let legend = [
        (PairStatus::UnknownSection, "unknown-section"),
        (PairStatus::CandidateCalabiYau, "candidate-calabi-yau"),
        (
            PairStatus::FailsNecessaryCondition,
            "fails-necessary-condition",
        ),
        (PairStatus::CertifiedReducible, "certified-reducible"),
    ];
    for (i, (status, label)) in legend.iter().enumerate() {
        let y = MARGIN + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="5" fill="{}" stroke="black" stroke-width="0.6"/>"##,
            MARGIN + 14.0,
            y,
            status_color(*status)
        );
        let _ = writeln!(
            svg,
            r##"  <text x="{:.2}" y="{:.2}" font-size="12">{label}</text>"##,
            MARGIN + 26.0,
            y + 4.0
        );
    }

    svg.push_str("</svg>\n");
    svg
}
