//! The finiteness algorithm: small-region enumeration, discriminant
//! branching, integral points on the conic, classification, and counting
//! cross-checks.
//!
//! Exact lattice counts are authoritative throughout; the closed-form bounds
//! are evaluated verbatim alongside them and a note is emitted whenever the
//! two disagree.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::chow::{euler_characteristic, friedman_residual, friedman_residual_closed, BundlePair};
use crate::cubic::{reducibility_certified, section_guaranteed, weight_table, WeightEntry};
use crate::surface::{BaseSurface, Violation};

/// Classification of a pair (a, b).
///
/// The four statuses are mutually exclusive and cover every enumerated pair:
/// `UnknownSection` when 2a - b < n0 (the vanishing argument cannot certify a
/// section, so nothing further can be concluded), `CertifiedReducible` when
/// the cubic provably factors, `CandidateCalabiYau` when a section is
/// guaranteed and the necessary intersection condition holds, and
/// `FailsNecessaryCondition` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    UnknownSection,
    CandidateCalabiYau,
    FailsNecessaryCondition,
    CertifiedReducible,
}

impl fmt::Display for PairStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairStatus::UnknownSection => "unknown-section",
            PairStatus::CandidateCalabiYau => "candidate-calabi-yau",
            PairStatus::FailsNecessaryCondition => "fails-necessary-condition",
            PairStatus::CertifiedReducible => "certified-reducible",
        })
    }
}

/// Which branch of the enumeration produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// 2a - b < n0.
    SmallRegion,
    /// Integral point of the irreducible conic from the divisor d of D.
    Divisor(i64),
    /// Point on the line a = m of the reducible conic.
    LineA,
    /// Point on the line b = a - m of the reducible conic.
    LineShifted,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::SmallRegion => f.write_str("small-region"),
            Provenance::Divisor(d) => write!(f, "divisor({d})"),
            Provenance::LineA => f.write_str("line(a=m)"),
            Provenance::LineShifted => f.write_str("line(b=a-m)"),
        }
    }
}

/// One enumerated pair with its classification and invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    #[serde(flatten)]
    pub pair: BundlePair,
    pub status: PairStatus,
    /// chi_top of the generic anticanonical hypersurface; reported for
    /// candidates only.
    pub euler: Option<i64>,
    pub residual: i64,
    pub provenance: Vec<Provenance>,
    pub weights: Vec<WeightEntry>,
}

/// Which case of the conic the surface falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// D > 0: the conic is an irreducible hyperbola.
    Irreducible,
    /// D = 0 and c1L / L2 is a nonnegative integer m: two lines of integral
    /// points.
    ReducibleIntegral { m: i64 },
    /// D = 0 but the ratio is not a nonnegative integer: the lines carry no
    /// octant points.
    ReducibleNonIntegral,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Irreducible => f.write_str("irreducible"),
            Branch::ReducibleIntegral { m } => write!(f, "reducible, integral ratio m = {m}"),
            Branch::ReducibleNonIntegral => f.write_str("reducible, non-integral ratio"),
        }
    }
}

/// Exact and closed-form counts for one enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub small_region_exact: i64,
    pub closed_form_small_bound: i64,
    pub conic_points: i64,
    pub closed_form_conic_bound: Option<i64>,
    pub total: i64,
}

/// Full output of `enumerate_all`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub surface: BaseSurface,
    pub hodge_discriminant: i64,
    pub branch: Branch,
    pub pairs: Vec<PairRecord>,
    pub counts: Counts,
    pub notes: Vec<String>,
}

impl EnumerationReport {
    pub fn candidates(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs
            .iter()
            .filter(|r| r.status == PairStatus::CandidateCalabiYau)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("invalid surface data: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSurface(Vec<Violation>),
}

/// (c1L)^2 - c1sq * L2. Nonnegative for consistent surface data; zero exactly
/// when the conic degenerates to two lines.
pub fn hodge_discriminant(surface: &BaseSurface) -> i64 {
    surface.hodge_discriminant()
}

/// All octant pairs with 2a - b < n0.
pub fn small_region_for_n0(n0: i64) -> Vec<BundlePair> {
    assert!(n0 >= 1, "n0 must be >= 1");
    let mut out = Vec::new();
    for a in 0..n0 {
        for b in (2 * a - n0 + 1).max(0)..=a {
            out.push(BundlePair::new(a, b));
        }
    }
    out.sort();
    out
}

/// Pairs where the vanishing argument cannot certify a section.
pub fn small_region(surface: &BaseSurface) -> Vec<BundlePair> {
    small_region_for_n0(surface.n0)
}

/// Exact cardinality of the small region: n0(n0+2)/4 for even n0 and
/// ((n0+1)/2)^2 for odd n0.
pub fn count_small_exact(n0: i64) -> i64 {
    assert!(n0 >= 1, "n0 must be >= 1");
    if n0 % 2 == 0 {
        n0 * (n0 + 2) / 4
    } else {
        let h = (n0 + 1) / 2;
        h * h
    }
}

/// The closed-form bounds evaluated verbatim: `small` is the small-region
/// bound at n0 = n (exact for even n, one-off high for odd n >= 3), and
/// `total_delpezzo` the bound on all cases at integral ratio m = n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedFormBounds {
    pub small: i64,
    pub total_delpezzo: i64,
}

pub fn closed_form_bounds(n: i64) -> ClosedFormBounds {
    assert!(n >= 1, "argument must be >= 1");
    let small = if n % 2 == 0 {
        n * (n + 2) / 4
    } else {
        (n * n + 4 * n - 1) / 4
    };
    let total_delpezzo = if n % 2 == 0 {
        (n * n + 18 * n + 4) / 4
    } else {
        (n * n + 16 * n + 3) / 4
    };
    ClosedFormBounds {
        small,
        total_delpezzo,
    }
}

fn positive_divisors(n: i64) -> Vec<i64> {
    assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i <= n / i {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Integral octant points of the irreducible conic, via the factorization
/// (L2 a - c1L)(L2 (a - b) - c1L) = D: run d through all divisors of D,
/// positive and negative, and keep the pairs a = (d + c1L)/L2,
/// b = (d - D/d)/L2 that are integral and satisfy a >= b >= 0.
pub fn conic_points_irreducible(surface: &BaseSurface) -> Vec<BundlePair> {
    let d_total = hodge_discriminant(surface);
    assert!(d_total > 0, "irreducible branch requires D > 0");
    let l2 = surface.l2;
    let mut out = Vec::new();
    for d in positive_divisors(d_total).into_iter().flat_map(|d| [d, -d]) {
        let d_prime = d_total / d;
        if (d + surface.c1l) % l2 != 0 || (d - d_prime) % l2 != 0 {
            continue;
        }
        let a = (d + surface.c1l) / l2;
        let b = (d - d_prime) / l2;
        if a >= b && b >= 0 {
            let pair = BundlePair::new(a, b);
            assert_eq!(
                friedman_residual_closed(pair, surface),
                0,
                "conic point off the conic"
            );
            out.push(pair);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The integral ratio m = c1L / L2 when it is a nonnegative integer.
fn integral_ratio(surface: &BaseSurface) -> Option<i64> {
    (surface.c1l % surface.l2 == 0 && surface.c1l >= 0).then(|| surface.c1l / surface.l2)
}

/// Integral octant points of the reducible conic (D = 0). When the ratio
/// m = r/s is a nonnegative integer these are the points (m, b) for
/// 0 <= b <= m and (m + b, b) for 0 <= b <= 2m, deduplicated at (m, 0);
/// points with b > 2m on the shifted line are excluded because the cubic is
/// forced to factor there. A non-integral (or negative) ratio admits no
/// octant points at all.
pub fn conic_points_reducible(surface: &BaseSurface) -> Vec<BundlePair> {
    debug_assert_eq!(
        hodge_discriminant(surface),
        0,
        "reducible branch requires D = 0"
    );
    let Some(m) = integral_ratio(surface) else {
        return Vec::new();
    };
    let mut out: Vec<BundlePair> = (0..=m)
        .map(|b| BundlePair::new(m, b))
        .chain((0..=2 * m).map(|b| BundlePair::new(m + b, b)))
        .collect();
    out.sort();
    out.dedup();
    for pair in &out {
        assert_eq!(
            friedman_residual_closed(*pair, surface),
            0,
            "conic point off the conic"
        );
    }
    out
}

/// Classify one octant pair.
pub fn classify_pair(pair: BundlePair, surface: &BaseSurface) -> PairStatus {
    if !section_guaranteed(pair, surface) {
        PairStatus::UnknownSection
    } else if reducibility_certified(pair, surface) {
        PairStatus::CertifiedReducible
    } else if friedman_residual(pair, surface) == 0 {
        PairStatus::CandidateCalabiYau
    } else {
        PairStatus::FailsNecessaryCondition
    }
}

/// Run the full algorithm: small region plus the applicable conic branch,
/// deduplicated, classified, counted, and annotated.
pub fn enumerate_all(surface: &BaseSurface) -> Result<EnumerationReport, EnumerateError> {
    let violations = surface.validate();
    if !violations.is_empty() {
        return Err(EnumerateError::InvalidSurface(violations));
    }
    let surface = surface.normalized();
    let d = hodge_discriminant(&surface);

    let (branch, conic) = if d > 0 {
        (Branch::Irreducible, conic_points_irreducible(&surface))
    } else {
        match integral_ratio(&surface) {
            Some(m) => (
                Branch::ReducibleIntegral { m },
                conic_points_reducible(&surface),
            ),
            None => (Branch::ReducibleNonIntegral, Vec::new()),
        }
    };

    let small = small_region(&surface);
    let mut origin: BTreeMap<BundlePair, Vec<Provenance>> = BTreeMap::new();
    for &pair in &small {
        origin
            .entry(pair)
            .or_default()
            .push(Provenance::SmallRegion);
    }
    for &pair in &conic {
        let tags = origin.entry(pair).or_default();
        match branch {
            Branch::Irreducible => {
                tags.push(Provenance::Divisor(pair.a * surface.l2 - surface.c1l))
            }
            Branch::ReducibleIntegral { m } => {
                if pair.a == m {
                    tags.push(Provenance::LineA);
                }
                if pair.b == pair.a - m {
                    tags.push(Provenance::LineShifted);
                }
            }
            Branch::ReducibleNonIntegral => unreachable!("no conic points on this branch"),
        }
    }

    let pairs: Vec<PairRecord> = origin
        .into_iter()
        .map(|(pair, provenance)| {
            let status = classify_pair(pair, &surface);
            PairRecord {
                pair,
                status,
                euler: (status == PairStatus::CandidateCalabiYau)
                    .then(|| euler_characteristic(pair, &surface)),
                residual: friedman_residual(pair, &surface),
                provenance,
                weights: weight_table(pair, &surface),
            }
        })
        .collect();

    let closed_form_small_bound = closed_form_bounds(surface.n0).small;
    let counts = Counts {
        small_region_exact: small.len() as i64,
        closed_form_small_bound,
        conic_points: conic.len() as i64,
        closed_form_conic_bound: match branch {
            Branch::ReducibleIntegral { m } => Some(3 * m + 1),
            _ => None,
        },
        total: pairs.len() as i64,
    };

    let mut notes = Vec::new();
    if closed_form_small_bound != counts.small_region_exact {
        notes.push(format!(
            "closed-form small-region bound {} differs from the exact lattice count {} \
             (odd n0 = {}; off by {})",
            closed_form_small_bound,
            counts.small_region_exact,
            surface.n0,
            closed_form_small_bound - counts.small_region_exact,
        ));
    }
    if let Branch::ReducibleIntegral { m } = branch {
        if m >= 1 {
            let w = BundlePair::new(3 * m, 2 * m);
            assert!(
                pairs.iter().any(|r| r.pair == w),
                "Weierstrass pair {w} missing"
            );
            notes.push(format!(
                "Weierstrass model pair (3m, 2m) = {w} lies on the shifted line"
            ));
        }
        if m >= 1 && surface.n0 == m + 1 {
            let bound = closed_form_bounds(m).total_delpezzo;
            if bound != counts.total {
                notes.push(format!(
                    "closed-form total bound {} differs from the exact count {} \
                     (even m = {}; off by {})",
                    bound,
                    counts.total,
                    m,
                    bound - counts.total,
                ));
            }
        }
    }

    Ok(EnumerationReport {
        surface,
        hodge_discriminant: d,
        branch,
        pairs,
        counts,
        notes,
    })
}

/// All octant pairs inside the scan box with residual zero. Independent of
/// the divisor parametrization: the closed-form residual is evaluated on
/// every lattice point.
pub fn brute_force_conic_scan(surface: &BaseSurface, box_max: i64) -> Vec<BundlePair> {
    let mut out = Vec::new();
    for a in 0..=box_max {
        for b in 0..=a {
            let pair = BundlePair::new(a, b);
            if friedman_residual_closed(pair, surface) == 0 {
                out.push(pair);
            }
        }
    }
    out
}

/// Outcome of cross-checking a report against the brute-force scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    /// Box actually scanned (extended to cover every reported candidate).
    pub scan_box: i64,
    /// Candidates found by the scan but absent from the report.
    pub missing_from_report: Vec<BundlePair>,
    /// Report candidates the scan does not confirm.
    pub unconfirmed_in_report: Vec<BundlePair>,
}

impl Verification {
    pub fn summary(&self) -> String {
        if self.ok {
            format!(
                "verification: brute-force scan over 0 <= b <= a <= {} confirms the candidate set",
                self.scan_box
            )
        } else {
            format!(
                "verification FAILED: scan box {}, missing from report: {:?}, unconfirmed: {:?}",
                self.scan_box, self.missing_from_report, self.unconfirmed_in_report
            )
        }
    }
}

/// Compare the report's candidate set against the scan: every residual-zero,
/// section-guaranteed, non-reducible pair in the box must be reported as a
/// candidate, and conversely.
pub fn verify_report(report: &EnumerationReport, box_max: i64) -> Verification {
    let surface = &report.surface;
    let reported: Vec<BundlePair> = report.candidates().map(|r| r.pair).collect();
    let scan_box = box_max.max(reported.iter().map(|p| p.a).max().unwrap_or(0));
    let scanned: Vec<BundlePair> = brute_force_conic_scan(surface, scan_box)
        .into_iter()
        .filter(|&p| section_guaranteed(p, surface) && !reducibility_certified(p, surface))
        .collect();
    let missing_from_report: Vec<BundlePair> = scanned
        .iter()
        .copied()
        .filter(|p| !reported.contains(p))
        .collect();
    let unconfirmed_in_report: Vec<BundlePair> = reported
        .iter()
        .copied()
        .filter(|p| !scanned.contains(p))
        .collect();
    Verification {
        ok: missing_from_report.is_empty() && unconfirmed_in_report.is_empty(),
        scan_box,
        missing_from_report,
        unconfirmed_in_report,
    }
}
