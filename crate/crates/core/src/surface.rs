//! Input data model for a polarized surface (B, L).
//!
//! A surface enters the pipeline as a handful of intersection numbers plus
//! the ampleness threshold `n0` (the least n such that nL + K_B is ample for
//! all n >= n0). The threshold is geometric information the numbers alone
//! cannot determine, so it is taken on trust; the presets hard-code the
//! standard values.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Numerical proportionality rL = s c1(B), with r, s positive coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Proportionality {
    pub r: i64,
    pub s: i64,
}

impl Proportionality {
    /// Lowest-terms reduction of the ratio numer/denom; requires numer, denom > 0.
    pub fn reduced(numer: i64, denom: i64) -> Self {
        assert!(
            numer > 0 && denom > 0,
            "proportionality ratio must be positive"
        );
        let g = numer.gcd(&denom);
        Proportionality {
            r: numer / g,
            s: denom / g,
        }
    }

    /// The ratio r/s as an integer, when it is one.
    pub fn integer_ratio(&self) -> Option<i64> {
        (self.s == 1).then_some(self.r)
    }
}

impl From<(i64, i64)> for Proportionality {
    fn from((r, s): (i64, i64)) -> Self {
        Proportionality { r, s }
    }
}

impl From<Proportionality> for (i64, i64) {
    fn from(p: Proportionality) -> Self {
        (p.r, p.s)
    }
}

/// Intersection-theoretic profile of a polarized surface (B, L).
///
/// Immutable value type: construct once, share freely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSurface {
    pub name: String,
    /// L^2 (self-intersection of the polarization; positive since L is ample).
    #[serde(rename = "L2")]
    pub l2: i64,
    /// c1(B) . L
    #[serde(rename = "c1L")]
    pub c1l: i64,
    /// c1(B)^2 = K_B^2
    pub c1sq: i64,
    /// deg c2(B) = chi_top(B)
    pub c2: i64,
    /// Least n such that nL + K_B is ample for all n >= n0.
    pub n0: i64,
    /// Optional assertion rL = s c1(B) (numerical equivalence).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportionality: Option<Proportionality>,
}

/// A failed surface invariant. Violations are data, not failures: `validate`
/// reports all of them at once.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("L is not ample: L2 = {0} must be >= 1")]
    NonPositiveL2(i64),
    #[error("ampleness threshold n0 = {0} must be >= 1")]
    NonPositiveN0(i64),
    #[error("Hodge index violation: (c1L)^2 = {lhs} < {rhs} = c1sq * L2")]
    HodgeIndex { lhs: i64, rhs: i64 },
    #[error("Noether integrality violation: c1sq + c2 = {0} is not divisible by 12")]
    NoetherIntegrality(i64),
    #[error("proportionality ({r}, {s}) must be a positive coprime pair")]
    MalformedProportionality { r: i64, s: i64 },
    #[error("proportionality ({r}, {s}) inconsistent: needs s*c1L = r*L2 and r*c1L = s*c1sq")]
    ProportionalityInconsistent { r: i64, s: i64 },
    #[error(
        "n0 = {n0} contradicts the proportional profile: c1(B) = (c1L/L2) L numerically, \
         so nL + K_B is ample exactly for n > c1L/L2 and the least threshold is {expected}"
    )]
    AmplenessThresholdInconsistent { n0: i64, expected: i64 },
}

impl BaseSurface {
    pub fn new(
        name: impl Into<String>,
        l2: i64,
        c1l: i64,
        c1sq: i64,
        c2: i64,
        n0: i64,
        proportionality: Option<Proportionality>,
    ) -> Self {
        BaseSurface {
            name: name.into(),
            l2,
            c1l,
            c1sq,
            c2,
            n0,
            proportionality,
        }
    }

    /// (c1L)^2 - c1sq * L2; nonnegative by the Hodge index theorem, zero
    /// exactly when L and c1(B) are numerically proportional.
    pub fn hodge_discriminant(&self) -> i64 {
        let d = self.c1l as i128 * self.c1l as i128 - self.c1sq as i128 * self.l2 as i128;
        i64::try_from(d).expect("hodge discriminant overflows i64")
    }

    /// Check every surface invariant; empty result means the data is consistent.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.l2 < 1 {
            violations.push(Violation::NonPositiveL2(self.l2));
        }
        if self.n0 < 1 {
            violations.push(Violation::NonPositiveN0(self.n0));
        }
        let lhs = self.c1l as i128 * self.c1l as i128;
        let rhs = self.c1sq as i128 * self.l2 as i128;
        if lhs < rhs {
            violations.push(Violation::HodgeIndex {
                lhs: lhs as i64,
                rhs: rhs as i64,
            });
        }
        if (self.c1sq + self.c2).rem_euclid(12) != 0 {
            violations.push(Violation::NoetherIntegrality(self.c1sq + self.c2));
        }
        if let Some(Proportionality { r, s }) = self.proportionality {
            if r < 1 || s < 1 || r.gcd(&s) != 1 {
                violations.push(Violation::MalformedProportionality { r, s });
            } else if s * self.c1l != r * self.l2 || r * self.c1l != s * self.c1sq {
                violations.push(Violation::ProportionalityInconsistent { r, s });
            }
        }
        // Hodge equality makes c1(B) numerically proportional to L, and
        // ampleness is a numerical property, so n0 is determined there.
        if self.l2 >= 1 && lhs == rhs {
            let expected = (self.c1l.div_euclid(self.l2) + 1).max(1);
            if self.n0 != expected {
                violations.push(Violation::AmplenessThresholdInconsistent {
                    n0: self.n0,
                    expected,
                });
            }
        }
        violations
    }

    /// Stored proportionality, or the one forced by Hodge-index equality when
    /// (c1L)^2 = c1sq * L2 and c1L > 0 (then rL = s c1(B) with r/s = c1L/L2 in
    /// lowest terms). For c1L <= 0 no positive pair exists and None is returned.
    pub fn proportionality_or_derived(&self) -> Option<Proportionality> {
        if self.proportionality.is_some() {
            return self.proportionality;
        }
        (self.hodge_discriminant() == 0 && self.c1l > 0 && self.l2 > 0)
            .then(|| Proportionality::reduced(self.c1l, self.l2))
    }

    /// Copy of the surface with derivable proportionality filled in.
    pub fn normalized(&self) -> BaseSurface {
        let mut s = self.clone();
        s.proportionality = self.proportionality_or_derived();
        s
    }

    /// Parse a surface descriptor (JSON object with keys name, L2, c1L, c1sq,
    /// c2, n0 and optional proportionality = [r, s]; unknown keys rejected).
    pub fn from_json_str(text: &str) -> Result<BaseSurface, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Errors rejecting preset parameters.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("multiplier d = {0} must be >= 1")]
    InvalidMultiplier(i64),
    #[error("del Pezzo degree k = {0} must lie in 1..=9")]
    InvalidDelPezzoDegree(i64),
    #[error("m^2 = {msq} does not divide k = {k}, so L2 = k/m^2 is not an integer")]
    NotSubmultiple { k: i64, msq: i64 },
}

/// B = P^2 with L = d * (line class).
pub fn preset_projective_plane(d: i64) -> Result<BaseSurface, PresetError> {
    if d < 1 {
        return Err(PresetError::InvalidMultiplier(d));
    }
    let n0 = match d {
        1 => 4,
        2 | 3 => 2,
        _ => 1,
    };
    Ok(BaseSurface::new(
        format!("P^2, L = {d}l"),
        d * d,
        3 * d,
        9,
        3,
        n0,
        Some(Proportionality::reduced(3, d)),
    ))
}

/// B a del Pezzo surface of degree k = K_B^2, with L = (1/m)(-K_B).
/// Requires m^2 | k so that L2 = k/m^2 is an integer.
pub fn preset_del_pezzo_submultiple(k: i64, m: i64) -> Result<BaseSurface, PresetError> {
    if !(1..=9).contains(&k) {
        return Err(PresetError::InvalidDelPezzoDegree(k));
    }
    if m < 1 || k % (m * m) != 0 {
        return Err(PresetError::NotSubmultiple {
            k,
            msq: m.checked_mul(m).unwrap_or(i64::MAX),
        });
    }
    Ok(BaseSurface::new(
        format!("del Pezzo deg {k}, L = -(1/{m})K"),
        k / (m * m),
        k / m,
        k,
        12 - k,
        m + 1,
        Some(Proportionality { r: m, s: 1 }),
    ))
}
