//! Weights of the cubic-equation coefficients and the vanishing certificates
//! derived from them.
//!
//! The generic anticanonical hypersurface of Z is cut out by a cubic
//! F = sum alpha_ijk x^i y^j z^k in the relative coordinates (x : y : z),
//! and alpha_ijk is a section of the line bundle c1(B) + ((a+b) - ia - jb) L.
//! Vanishing is certified one way only: when the negative of the weight is
//! ample (equivalently -wL >= n0), the coefficient has no global sections.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::chow::{BaseClass, BundlePair};
use crate::surface::BaseSurface;

/// The ten cubic monomials x^i y^j z^k, in table order.
pub const MONOMIALS: [(u32, u32, u32); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (1, 2, 0),
    (0, 3, 0),
    (2, 0, 1),
    (1, 1, 1),
    (0, 2, 1),
    (1, 0, 2),
    (0, 1, 2),
    (0, 0, 3),
];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid monomial exponents ({i}, {j}, {k}): need i + j + k = 3")]
pub struct InvalidExponents {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

/// Divisor class of the coefficient alpha_ijk: c1(B) + wL * L.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialWeight {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    #[serde(rename = "wL")]
    pub w_l: i64,
}

impl MonomialWeight {
    /// The weight as a divisor class on B (the c1(B) part is always 1).
    pub fn class(&self) -> BaseClass {
        BaseClass { l: self.w_l, c1: 1 }
    }

    /// Human-readable monomial, e.g. "x^2 y".
    pub fn monomial(&self) -> String {
        let mut out = String::new();
        for (var, e) in [("x", self.i), ("y", self.j), ("z", self.k)] {
            match e {
                0 => {}
                1 => {
                    if !out.is_empty() {
                        out.push(' ');
                    }
                    out.push_str(var);
                }
                _ => {
                    if !out.is_empty() {
                        out.push(' ');
                    }
                    out.push_str(&format!("{var}^{e}"));
                }
            }
        }
        out
    }
}

/// Weight of the coefficient of x^i y^j z^k: the L-multiple is
/// wL = (a + b) - i a - j b.
pub fn weight(
    i: u32,
    j: u32,
    k: u32,
    pair: BundlePair,
) -> Result<MonomialWeight, InvalidExponents> {
    if i + j + k != 3 {
        return Err(InvalidExponents { i, j, k });
    }
    let w_l = (pair.a + pair.b) - i as i64 * pair.a - j as i64 * pair.b;
    Ok(MonomialWeight { i, j, k, w_l })
}

/// Whether a coefficient is provably zero. `CertifiedZero` holds only when
/// -(weight) = K_B + (-wL) L is ample, i.e. -wL >= n0; no claim of
/// nonvanishing is ever made.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientStatus {
    CertifiedZero,
    PossiblyNonzero,
}

impl fmt::Display for CoefficientStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientStatus::CertifiedZero => "certified-zero",
            CoefficientStatus::PossiblyNonzero => "possibly-nonzero",
        })
    }
}

pub fn coefficient_status(
    i: u32,
    j: u32,
    k: u32,
    pair: BundlePair,
    surface: &BaseSurface,
) -> Result<CoefficientStatus, InvalidExponents> {
    let w = weight(i, j, k, pair)?;
    Ok(if -w.w_l >= surface.n0 {
        CoefficientStatus::CertifiedZero
    } else {
        CoefficientStatus::PossiblyNonzero
    })
}

/// One row of the weight table: a monomial weight with its vanishing status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub monomial: String,
    #[serde(flatten)]
    pub weight: MonomialWeight,
    pub status: CoefficientStatus,
}

/// All ten coefficient weights with statuses, in table order.
pub fn weight_table(pair: BundlePair, surface: &BaseSurface) -> Vec<WeightEntry> {
    MONOMIALS
        .iter()
        .map(|&(i, j, k)| {
            let weight = weight(i, j, k, pair).expect("table exponents are valid");
            let status =
                coefficient_status(i, j, k, pair, surface).expect("table exponents are valid");
            WeightEntry {
                monomial: weight.monomial(),
                weight,
                status,
            }
        })
        .collect()
}

/// The x^3 coefficient is certified zero iff 2a - b >= n0; then (1 : 0 : 0)
/// is a section of the fibration.
pub fn section_guaranteed(pair: BundlePair, surface: &BaseSurface) -> bool {
    2 * pair.a - pair.b >= surface.n0
}

/// All four z-free coefficients (x^3, x^2 y, x y^2, y^3) certified zero, i.e.
/// min(2a - b, a, b, 2b - a) >= n0. The cubic then factors as z * f(x, y, z)
/// and cannot cut out a smooth Calabi-Yau.
pub fn reducibility_certified(pair: BundlePair, surface: &BaseSurface) -> bool {
    let (a, b) = (pair.a, pair.b);
    [2 * a - b, a, b, 2 * b - a].into_iter().min().unwrap() >= surface.n0
}

/// Divisor class of the Weierstrass discriminant curve for a Calabi-Yau
/// elliptic fibration over B: 12 c1(F) with c1(F) = c1(B).
pub fn weierstrass_discriminant_weight(_surface: &BaseSurface) -> BaseClass {
    BaseClass { l: 0, c1: 12 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{preset_del_pezzo_submultiple, preset_projective_plane};

    fn p2() -> BaseSurface {
        preset_projective_plane(1).unwrap()
    }

    #[test]
    fn table_rows() {
        // weights from the table, as (i, j, k) -> (L-multiple in a, b)
        let pair = BundlePair::new(5, 2);
        let (a, b) = (pair.a, pair.b);
        let expected = [
            ((3, 0, 0), b - 2 * a),
            ((2, 1, 0), -a),
            ((1, 2, 0), -b),
            ((0, 3, 0), a - 2 * b),
            ((2, 0, 1), b - a),
            ((1, 1, 1), 0),
            ((0, 2, 1), a - b),
            ((1, 0, 2), b),
            ((0, 1, 2), a),
            ((0, 0, 3), a + b),
        ];
        for ((i, j, k), w_l) in expected {
            let w = weight(i, j, k, pair).unwrap();
            assert_eq!(w.w_l, w_l, "monomial ({i}, {j}, {k})");
            assert_eq!(w.class(), BaseClass { l: w_l, c1: 1 });
        }
        assert_eq!(
            weight(1, 1, 1, pair).unwrap().class(),
            BaseClass { l: 0, c1: 1 }
        );
        assert!(weight(2, 2, 0, pair).is_err());
        assert!(weight(1, 1, 0, pair).is_err());
    }

    #[test]
    fn sum_rule() {
        // i a + j b + wL = a + b for every monomial and pair
        for a in 0..=12 {
            for b in 0..=a {
                let pair = BundlePair::new(a, b);
                for &(i, j, k) in &MONOMIALS {
                    let w = weight(i, j, k, pair).unwrap();
                    assert_eq!(i as i64 * a + j as i64 * b + w.w_l, a + b);
                }
            }
        }
    }

    #[test]
    fn weights_on_the_proportional_line() {
        // on b = a - m, substituting c1(B) = m L turns the z-free weights into
        // the multiples -(b+m), -b, m-b, 2m-b of L
        for m in 1..=6 {
            for b in 0..=(3 * m) {
                let pair = BundlePair::new(b + m, b);
                let effective: Vec<i64> = [(3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0)]
                    .iter()
                    .map(|&(i, j, k)| m + weight(i, j, k, pair).unwrap().w_l)
                    .collect();
                assert_eq!(effective, vec![-(b + m), -b, m - b, 2 * m - b]);
            }
        }
    }

    #[test]
    fn status_examples() {
        let s = p2();
        assert_eq!(
            coefficient_status(3, 0, 0, BundlePair::new(9, 6), &s).unwrap(),
            CoefficientStatus::CertifiedZero
        );
        assert_eq!(
            coefficient_status(1, 1, 1, BundlePair::new(9, 6), &s).unwrap(),
            CoefficientStatus::PossiblyNonzero
        );
        assert_eq!(
            coefficient_status(3, 0, 0, BundlePair::new(1, 1), &s).unwrap(),
            CoefficientStatus::PossiblyNonzero
        );
    }

    #[test]
    fn section_examples() {
        let s = p2();
        assert!(section_guaranteed(BundlePair::new(3, 0), &s));
        assert!(!section_guaranteed(BundlePair::new(3, 3), &s));
        let dp = preset_del_pezzo_submultiple(9, 1).unwrap();
        assert_eq!(dp.n0, 2);
        let mut s1 = dp;
        s1.n0 = 1;
        assert!(section_guaranteed(BundlePair::new(1, 0), &s1));
    }

    #[test]
    fn reducibility_examples() {
        let s = p2();
        assert!(reducibility_certified(BundlePair::new(10, 7), &s));
        assert!(!reducibility_certified(BundlePair::new(9, 6), &s));
        for a in 0..=20 {
            assert!(
                !reducibility_certified(BundlePair::new(a, 0), &s),
                "b = 0 never certifies"
            );
        }
    }

    #[test]
    fn reducibility_monotone_along_line() {
        let s = p2();
        for m in 0..=5 {
            for b in 0..=(4 * s.n0 + 2 * m) {
                let pair = BundlePair::new(b + m, b);
                if reducibility_certified(pair, &s) {
                    assert!(reducibility_certified(
                        BundlePair::new(pair.a + 1, pair.b + 1),
                        &s
                    ));
                }
            }
        }
    }

    #[test]
    fn reducibility_implies_section() {
        for n0 in 1..=6 {
            let mut s = p2();
            s.n0 = n0;
            for a in 0..=25 {
                for b in 0..=a {
                    let pair = BundlePair::new(a, b);
                    if reducibility_certified(pair, &s) {
                        assert!(section_guaranteed(pair, &s));
                    }
                }
            }
        }
    }

    #[test]
    fn discriminant_weight() {
        let s = p2();
        let w = weierstrass_discriminant_weight(&s);
        // over P^2 with L = l this is a degree-36 curve
        assert_eq!(w.dot(&BaseClass { l: 1, c1: 0 }, &s), 36);
        let dp8 = preset_del_pezzo_submultiple(8, 1).unwrap();
        assert_eq!(
            weierstrass_discriminant_weight(&dp8).self_intersection(&dp8),
            144 * 8
        );
        // numerically trivial canonical class: the discriminant class pairs to zero
        let k3ish = BaseSurface::new("k3-like", 2, 0, 0, 24, 1, None);
        let w = weierstrass_discriminant_weight(&k3ish);
        assert_eq!(w.self_intersection(&k3ish), 0);
        assert_eq!(w.dot(&BaseClass { l: 1, c1: 0 }, &k3ish), 0);
    }

    #[test]
    fn weight_table_shape() {
        let s = p2();
        let table = weight_table(BundlePair::new(9, 6), &s);
        assert_eq!(table.len(), 10);
        assert_eq!(table[0].monomial, "x^3");
        assert_eq!(table[0].weight.w_l, -12);
        assert_eq!(table[0].status, CoefficientStatus::CertifiedZero);
        assert_eq!(table[5].monomial, "x y z");
        assert_eq!(table[5].status, CoefficientStatus::PossiblyNonzero);
        assert_eq!(table[9].monomial, "z^3");
        assert_eq!(table[9].weight.w_l, 15);
    }
}
