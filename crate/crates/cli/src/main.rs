//! Command-line front end: build a surface from a preset, a descriptor file
//! or inline flags, run the enumeration, and emit text/JSON/CSV reports plus
//! an optional SVG of the classified octant.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid surface data,
//! 3 internal defect (the brute-force cross-check disagreed).

mod emit;
mod figure;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use cyfib::enumerate::{enumerate_all, verify_report, EnumerateError};
use cyfib::surface::{
    preset_del_pezzo_submultiple, preset_projective_plane, BaseSurface, Proportionality,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    P2,
    Delpezzo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Enumerate the bundle exponents (a, b) for which the generic anticanonical
/// hypersurface of P(L^a + L^b + O_B) can be a Calabi-Yau elliptic fibration
/// over the polarized surface (B, L).
#[derive(Parser, Debug)]
#[command(name = "cyfib", version)]
struct Cli {
    /// Built-in surface family: p2 (needs --d) or delpezzo (needs --k, --m).
    #[arg(long, value_enum)]
    preset: Option<Preset>,

    /// P^2 preset: polarization L = d * (line class), d >= 1.
    #[arg(long)]
    d: Option<i64>,

    /// del Pezzo preset: degree k = K^2, 1 <= k <= 9.
    #[arg(long)]
    k: Option<i64>,

    /// del Pezzo preset: L = (1/m)(-K); requires m^2 | k.
    #[arg(long)]
    m: Option<i64>,

    /// Surface descriptor file (JSON with keys name, L2, c1L, c1sq, c2, n0
    /// and optional proportionality = [r, s]).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Inline profile: L^2.
    #[arg(long)]
    l2: Option<i64>,

    /// Inline profile: c1(B) . L.
    #[arg(long)]
    c1l: Option<i64>,

    /// Inline profile: c1(B)^2.
    #[arg(long)]
    c1sq: Option<i64>,

    /// Inline profile: deg c2(B).
    #[arg(long)]
    c2: Option<i64>,

    /// Inline profile: least n with nL + K_B ample for all n >= n0.
    #[arg(long)]
    n0: Option<i64>,

    /// Inline proportionality rL = s c1(B): numerator r (use with --s).
    #[arg(long)]
    r: Option<i64>,

    /// Inline proportionality rL = s c1(B): denominator s (use with --r).
    #[arg(long)]
    s: Option<i64>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write an SVG of the (a, b) octant with the conic and classified points.
    #[arg(long)]
    figure: Option<PathBuf>,

    /// Cross-check the candidate set against a brute-force lattice scan.
    #[arg(long)]
    verify: bool,

    /// Scan box for --verify: all pairs with 0 <= b <= a <= N are tested.
    #[arg(long, default_value_t = 200)]
    scan_box: i64,
}

impl Cli {
    fn inline_flags(&self) -> [(&'static str, Option<i64>); 7] {
        [
            ("--l2", self.l2),
            ("--c1l", self.c1l),
            ("--c1sq", self.c1sq),
            ("--c2", self.c2),
            ("--n0", self.n0),
            ("--r", self.r),
            ("--s", self.s),
        ]
    }
}

fn resolve_surface(cli: &Cli) -> Result<BaseSurface> {
    let inline_given = cli.inline_flags().iter().any(|(_, v)| v.is_some());
    let sources = [cli.preset.is_some(), cli.input.is_some(), inline_given];
    match sources.iter().filter(|&&s| s).count() {
        0 => bail!("no input: give --preset, --input or an inline profile (--l2 ... --n0)"),
        1 => {}
        _ => bail!("give exactly one input source: --preset, --input or inline flags"),
    }

    if let Some(preset) = cli.preset {
        return match preset {
            Preset::P2 => {
                if cli.k.is_some() || cli.m.is_some() {
                    bail!("--k/--m only apply to --preset delpezzo");
                }
                let d = cli.d.context("--preset p2 requires --d")?;
                Ok(preset_projective_plane(d)?)
            }
            Preset::Delpezzo => {
                if cli.d.is_some() {
                    bail!("--d only applies to --preset p2");
                }
                let k = cli.k.context("--preset delpezzo requires --k")?;
                let m = cli.m.context("--preset delpezzo requires --m")?;
                Ok(preset_del_pezzo_submultiple(k, m)?)
            }
        };
    }
    if cli.d.is_some() || cli.k.is_some() || cli.m.is_some() {
        bail!("--d/--k/--m require --preset");
    }

    if let Some(path) = &cli.input {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read descriptor {}", path.display()))?;
        let surface = BaseSurface::from_json_str(&text)
            .with_context(|| format!("malformed descriptor {}", path.display()))?;
        return Ok(surface);
    }

    let missing: Vec<&str> = cli
        .inline_flags()
        .iter()
        .take(5)
        .filter(|(_, v)| v.is_none())
        .map(|(name, _)| *name)
        .collect();
    if !missing.is_empty() {
        bail!("inline profile incomplete: missing {}", missing.join(", "));
    }
    let proportionality = match (cli.r, cli.s) {
        (Some(r), Some(s)) => Some(Proportionality { r, s }),
        (None, None) => None,
        _ => bail!("--r and --s must be given together"),
    };
    Ok(BaseSurface::new(
        "custom",
        cli.l2.unwrap(),
        cli.c1l.unwrap(),
        cli.c1sq.unwrap(),
        cli.c2.unwrap(),
        cli.n0.unwrap(),
        proportionality,
    ))
}

fn run(cli: &Cli) -> Result<u8> {
    let surface = match resolve_surface(cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(1);
        }
    };

    let mut report = match enumerate_all(&surface) {
        Ok(r) => r,
        Err(EnumerateError::InvalidSurface(violations)) => {
            eprintln!("invalid surface data:");
            for v in violations {
                eprintln!("  - {v}");
            }
            return Ok(2);
        }
    };

    let mut defect = false;
    if cli.verify {
        let verification = verify_report(&report, cli.scan_box);
        if !verification.ok {
            defect = true;
            eprintln!("{}", verification.summary());
        }
        report.notes.push(verification.summary());
    }

    if let Some(path) = &cli.figure {
        std::fs::write(path, figure::render(&report))
            .with_context(|| format!("cannot write figure {}", path.display()))?;
    }

    match cli.format {
        Format::Text => print!("{}", emit::text(&report)),
        Format::Json => print!("{}", emit::json(&report)?),
        Format::Csv => print!("{}", emit::csv(&report)),
    }

    Ok(if defect { 3 } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
