//! Exact arithmetic in the Chow ring of Z = P(L^a + L^b + O_B).
//!
//! Classes are stored per pure codimension on the module basis {1, xi, xi^2}
//! over base classes, where xi = c1(O_Z(1)). Base classes of codimension 1
//! live on the span of L and c1(B); base classes of codimension 2 collapse to
//! their degree, evaluated through the intersection matrix
//! [[L2, c1L], [c1L, c1sq]] and the number c2(B). The Grothendieck relation
//! for the rank-3 bundle L^a + L^b + O_B (third Chern class zero) reads
//! xi^3 = -(a+b) L xi^2 - ab L^2 xi, with the sign convention pinned by
//! c1(T_{Z|B}) = 3 xi + (a+b) L.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::surface::BaseSurface;

/// Exact rational scalar used for all Chow-ring coefficients.
pub type Rational = BigRational;

type Q = Rational;

/// Shorthand for an integer as a [`Rational`].
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exponents (a, b) of the split bundle L^a + L^b + O_B, normalized to the
/// octant a >= b >= 0 (twisting and permuting summands makes this lossless).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BundlePair {
    pub a: i64,
    pub b: i64,
}

impl BundlePair {
    pub fn new(a: i64, b: i64) -> Self {
        assert!(
            a >= b && b >= 0,
            "bundle pair ({a}, {b}) outside the octant a >= b >= 0"
        );
        BundlePair { a, b }
    }
}

impl fmt::Display for BundlePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// An integer divisor class on the base, spanned by L and c1(B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseClass {
    pub l: i64,
    pub c1: i64,
}

impl BaseClass {
    /// Intersection number with another base class.
    pub fn dot(&self, other: &BaseClass, surface: &BaseSurface) -> i64 {
        let v = self.l as i128 * other.l as i128 * surface.l2 as i128
            + (self.l as i128 * other.c1 as i128 + self.c1 as i128 * other.l as i128)
                * surface.c1l as i128
            + self.c1 as i128 * other.c1 as i128 * surface.c1sq as i128;
        i64::try_from(v).expect("intersection number overflows i64")
    }

    pub fn self_intersection(&self, surface: &BaseSurface) -> i64 {
        self.dot(self, surface)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("codimension overflow: {0} + {1} > 4")]
    CodimOverflow(u8, u8),
    #[error("degree is defined for codimension-4 classes, got codimension {0}")]
    WrongCodim(u8),
}

/// A pure-codimension class on Z, fully reduced by the xi^3 relation.
///
/// Slots (zero when the codimension leaves no room for them):
/// `xi` is the coefficient of xi^codim, `l`/`c1` the base-codimension-1 part
/// against xi^(codim-1), and `deg` the collapsed degree of the
/// base-codimension-2 part against xi^(codim-2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    codim: u8,
    xi: Q,
    l: Q,
    c1: Q,
    deg: Q,
}

impl ChowClass {
    pub fn new(codim: u8, xi: Q, l: Q, c1: Q, deg: Q) -> Self {
        assert!(codim <= 4, "codimension {codim} exceeds dim Z = 4");
        assert!(
            codim <= 2 || xi.is_zero(),
            "no xi^{codim} slot after reduction"
        );
        assert!(
            (1..=3).contains(&codim) || (l.is_zero() && c1.is_zero()),
            "no base-codim-1 slot at codimension {codim}"
        );
        assert!(
            codim >= 2 || deg.is_zero(),
            "no base-codim-2 slot at codimension {codim}"
        );
        ChowClass {
            codim,
            xi,
            l,
            c1,
            deg,
        }
    }

    pub fn from_i64(codim: u8, xi: i64, l: i64, c1: i64, deg: i64) -> Self {
        ChowClass::new(codim, q(xi), q(l), q(c1), q(deg))
    }

    pub fn zero(codim: u8) -> Self {
        ChowClass::new(codim, Q::zero(), Q::zero(), Q::zero(), Q::zero())
    }

    /// The unit of the ring.
    pub fn one() -> Self {
        ChowClass::from_i64(0, 1, 0, 0, 0)
    }

    /// xi = c1(O_Z(1)).
    pub fn xi() -> Self {
        ChowClass::from_i64(1, 1, 0, 0, 0)
    }

    /// Pullback of the polarization class L.
    pub fn base_l() -> Self {
        ChowClass::from_i64(1, 0, 1, 0, 0)
    }

    /// Pullback of c1(B).
    pub fn base_c1() -> Self {
        ChowClass::from_i64(1, 0, 0, 1, 0)
    }

    /// Pullback of a base class of codimension 2, recorded by its degree.
    pub fn base_degree(d: i64) -> Self {
        ChowClass::from_i64(2, 0, 0, 0, d)
    }

    pub fn codim(&self) -> u8 {
        self.codim
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.l.is_zero() && self.c1.is_zero() && self.deg.is_zero()
    }

    /// Coefficient of xi^codim.
    pub fn xi_coeff(&self) -> &Q {
        &self.xi
    }

    /// Coefficient of xi^(codim-1) * L.
    pub fn l_coeff(&self) -> &Q {
        &self.l
    }

    /// Coefficient of xi^(codim-1) * c1(B).
    pub fn c1_coeff(&self) -> &Q {
        &self.c1
    }

    /// Collapsed degree of the xi^(codim-2) part.
    pub fn collapsed_degree(&self) -> &Q {
        &self.deg
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.codim as i32;
        let mut terms = Vec::new();
        if !self.xi.is_zero() {
            terms.push(format!("{} xi^{}", self.xi, c));
        }
        if !self.l.is_zero() || !self.c1.is_zero() {
            terms.push(format!("({} L + {} c1) xi^{}", self.l, self.c1, c - 1));
        }
        if !self.deg.is_zero() {
            terms.push(format!("[deg {}] xi^{}", self.deg, c - 2));
        }
        if terms.is_empty() {
            write!(f, "0 (codim {})", self.codim)
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl std::ops::Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        assert_eq!(
            self.codim, rhs.codim,
            "cannot add classes of different codimension"
        );
        ChowClass::new(
            self.codim,
            &self.xi + &rhs.xi,
            &self.l + &rhs.l,
            &self.c1 + &rhs.c1,
            &self.deg + &rhs.deg,
        )
    }
}

impl std::ops::Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        assert_eq!(
            self.codim, rhs.codim,
            "cannot subtract classes of different codimension"
        );
        ChowClass::new(
            self.codim,
            &self.xi - &rhs.xi,
            &self.l - &rhs.l,
            &self.c1 - &rhs.c1,
            &self.deg - &rhs.deg,
        )
    }
}

impl ChowClass {
    pub fn scale(&self, t: &Q) -> ChowClass {
        ChowClass::new(
            self.codim,
            &self.xi * t,
            &self.l * t,
            &self.c1 * t,
            &self.deg * t,
        )
    }
}

// ---- internal graded representation ----
//
// A grid entry at xi-power k holds a base polynomial; the `one` slot has total
// codimension k, `l`/`c1` have k+1, and `deg` (a collapsed codim-2 base class)
// has k+2. Multiplication of base polynomials collapses codim-1 x codim-1
// products through the intersection matrix and kills anything of base
// codimension > 2.

#[derive(Clone, Debug, PartialEq)]
struct BasePoly {
    one: Q,
    l: Q,
    c1: Q,
    deg: Q,
}

impl BasePoly {
    fn zero() -> Self {
        BasePoly {
            one: Q::zero(),
            l: Q::zero(),
            c1: Q::zero(),
            deg: Q::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.one.is_zero() && self.l.is_zero() && self.c1.is_zero() && self.deg.is_zero()
    }

    fn add_assign(&mut self, rhs: &BasePoly) {
        self.one += &rhs.one;
        self.l += &rhs.l;
        self.c1 += &rhs.c1;
        self.deg += &rhs.deg;
    }

    fn mul(&self, rhs: &BasePoly, surface: &BaseSurface) -> BasePoly {
        let l2 = q(surface.l2);
        let c1l = q(surface.c1l);
        let c1sq = q(surface.c1sq);
        BasePoly {
            one: &self.one * &rhs.one,
            l: &self.one * &rhs.l + &self.l * &rhs.one,
            c1: &self.one * &rhs.c1 + &self.c1 * &rhs.one,
            deg: &self.one * &rhs.deg
                + &self.deg * &rhs.one
                + &self.l * &rhs.l * l2
                + (&self.l * &rhs.c1 + &self.c1 * &rhs.l) * c1l
                + &self.c1 * &rhs.c1 * c1sq,
        }
    }
}

type Grid = [BasePoly; 5];

fn grid_zero() -> Grid {
    std::array::from_fn(|_| BasePoly::zero())
}

fn grid_mul(x: &Grid, y: &Grid, surface: &BaseSurface) -> Grid {
    let mut out = grid_zero();
    for (i, xi_part) in x.iter().enumerate() {
        if xi_part.is_zero() {
            continue;
        }
        for (j, yj_part) in y.iter().enumerate() {
            if yj_part.is_zero() || i + j > 4 {
                continue;
            }
            out[i + j].add_assign(&xi_part.mul(yj_part, surface));
        }
    }
    out
}

/// Substitute xi^3 = -(a+b) L xi^2 - ab L^2 xi until only xi-powers <= 2 remain.
fn grid_reduce(grid: &mut Grid, pair: BundlePair, surface: &BaseSurface) {
    let lin = BasePoly {
        one: Q::zero(),
        l: -(q(pair.a) + q(pair.b)),
        c1: Q::zero(),
        deg: Q::zero(),
    };
    let quad = BasePoly {
        one: Q::zero(),
        l: Q::zero(),
        c1: Q::zero(),
        deg: -(q(pair.a) * q(pair.b) * q(surface.l2)),
    };
    for k in (3..=4).rev() {
        if grid[k].is_zero() {
            continue;
        }
        let p = std::mem::replace(&mut grid[k], BasePoly::zero());
        grid[k - 1].add_assign(&p.mul(&lin, surface));
        grid[k - 2].add_assign(&p.mul(&quad, surface));
    }
}

fn pure_to_grid(x: &ChowClass) -> Grid {
    let mut grid = grid_zero();
    let c = x.codim as usize;
    if c <= 2 {
        grid[c].one = x.xi.clone();
    }
    if (1..=3).contains(&c) {
        grid[c - 1].l = x.l.clone();
        grid[c - 1].c1 = x.c1.clone();
    }
    if c >= 2 {
        grid[c - 2].deg = x.deg.clone();
    }
    grid
}

fn grid_extract_pure(grid: &Grid, codim: u8) -> ChowClass {
    let c = codim as usize;
    let mut out = ChowClass::zero(codim);
    for (k, p) in grid.iter().enumerate() {
        for (slot_codim, value) in [(k, &p.one), (k + 1, &p.l), (k + 1, &p.c1), (k + 2, &p.deg)] {
            if slot_codim != c {
                assert!(
                    value.is_zero(),
                    "impure product: codim-{slot_codim} residue in a codim-{c} class"
                );
            }
        }
        if k == c {
            out.xi = p.one.clone();
        }
        if k + 1 == c {
            out.l = p.l.clone();
            out.c1 = p.c1.clone();
        }
        if k + 2 == c {
            out.deg = p.deg.clone();
        }
    }
    out
}

/// Product in the Chow ring of Z, fully reduced by the xi^3 relation.
pub fn mul(
    x: &ChowClass,
    y: &ChowClass,
    pair: BundlePair,
    surface: &BaseSurface,
) -> Result<ChowClass, ChowError> {
    let codim = x.codim + y.codim;
    if codim > 4 {
        return Err(ChowError::CodimOverflow(x.codim, y.codim));
    }
    let mut grid = grid_mul(&pure_to_grid(x), &pure_to_grid(y), surface);
    grid_reduce(&mut grid, pair, surface);
    Ok(grid_extract_pure(&grid, codim))
}

/// Degree of a codimension-4 class, via the pushforward rules
/// p_*(xi^2 beta) = beta, p_*(xi beta) = 0, p_*(beta) = 0.
pub fn degree(x: &ChowClass) -> Result<Q, ChowError> {
    if x.codim != 4 {
        return Err(ChowError::WrongCodim(x.codim));
    }
    Ok(x.deg.clone())
}

/// A full (mixed-degree) class, stored as its pure-codimension parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalClass {
    parts: [ChowClass; 5],
}

impl TotalClass {
    pub fn zero() -> Self {
        TotalClass {
            parts: std::array::from_fn(|c| ChowClass::zero(c as u8)),
        }
    }

    pub fn one() -> Self {
        let mut t = TotalClass::zero();
        t.parts[0] = ChowClass::one();
        t
    }

    pub fn from_parts(parts: Vec<ChowClass>) -> Self {
        let mut t = TotalClass::zero();
        for p in parts {
            t.parts[p.codim as usize] = &t.parts[p.codim as usize] + &p;
        }
        t
    }

    pub fn part(&self, codim: u8) -> &ChowClass {
        &self.parts[codim as usize]
    }

    fn to_grid(&self) -> Grid {
        let mut grid = grid_zero();
        for p in &self.parts {
            let g = pure_to_grid(p);
            for (slot, v) in grid.iter_mut().zip(g.iter()) {
                slot.add_assign(v);
            }
        }
        grid
    }

    fn from_grid(grid: &Grid) -> Self {
        let mut parts: [ChowClass; 5] = std::array::from_fn(|c| ChowClass::zero(c as u8));
        for (k, p) in grid.iter().enumerate() {
            parts[k].xi = p.one.clone();
            if k < 4 {
                parts[k + 1].l = p.l.clone();
                parts[k + 1].c1 = p.c1.clone();
            }
            if k + 2 <= 4 {
                parts[k + 2].deg = p.deg.clone();
            }
        }
        // classes of codim 3, 4 carry no xi^3, xi^4 slot; reduction guarantees this
        for (c, part) in parts.iter().enumerate() {
            assert!(c <= 2 || part.xi.is_zero(), "unreduced xi^{c} survived");
        }
        TotalClass { parts }
    }

    /// Product truncated at codimension 4 (higher parts vanish on Z).
    pub fn mul(&self, rhs: &TotalClass, pair: BundlePair, surface: &BaseSurface) -> TotalClass {
        let mut grid = grid_mul(&self.to_grid(), &rhs.to_grid(), surface);
        grid_reduce(&mut grid, pair, surface);
        TotalClass::from_grid(&grid)
    }

    pub fn add(&self, rhs: &TotalClass) -> TotalClass {
        TotalClass {
            parts: std::array::from_fn(|c| &self.parts[c] + &rhs.parts[c]),
        }
    }

    pub fn scale(&self, t: &Q) -> TotalClass {
        TotalClass {
            parts: std::array::from_fn(|c| self.parts[c].scale(t)),
        }
    }
}

/// Total Chern class of Z by ring expansion: c(T_{Z|B}) p^* c(B) with
/// c(T_{Z|B}) = (1 + xi + aL)(1 + xi + bL)(1 + xi) reduced by the relation.
fn total_chern_ambient(pair: BundlePair, surface: &BaseSurface) -> TotalClass {
    let factor =
        |t: i64| TotalClass::from_parts(vec![ChowClass::one(), ChowClass::from_i64(1, 1, t, 0, 0)]);
    let c_rel = factor(pair.a)
        .mul(&factor(pair.b), pair, surface)
        .mul(&factor(0), pair, surface);
    // the codim-3 part of the split product is the defining relation itself
    assert!(
        c_rel.part(3).is_zero(),
        "xi^3 relation failed to annihilate c(T_Z|B)"
    );
    assert!(c_rel.part(4).is_zero());
    let c_base = TotalClass::from_parts(vec![
        ChowClass::one(),
        ChowClass::base_c1(),
        ChowClass::base_degree(surface.c2),
    ]);
    c_rel.mul(&c_base, pair, surface)
}

/// Chern classes c1(Z), ..., c4(Z), computed by ring expansion.
pub fn chern_ambient(pair: BundlePair, surface: &BaseSurface) -> [ChowClass; 4] {
    let total = total_chern_ambient(pair, surface);
    std::array::from_fn(|i| total.part(i as u8 + 1).clone())
}

/// The same four classes written directly in closed form.
pub fn chern_ambient_closed(pair: BundlePair, surface: &BaseSurface) -> [ChowClass; 4] {
    let (a, b) = (q(pair.a), q(pair.b));
    let (l2, c1l, c2) = (q(surface.l2), q(surface.c1l), q(surface.c2));
    let ab_sum = &a + &b;
    [
        // c1 = 3 xi + ((a+b) L + c1(B))
        ChowClass::new(1, q(3), ab_sum.clone(), q(1), Q::zero()),
        // c2 = 3 xi^2 + (2(a+b) L + 3 c1(B)) xi + (ab L^2 + (a+b) L c1(B) + c2(B))
        ChowClass::new(
            2,
            q(3),
            q(2) * &ab_sum,
            q(3),
            &a * &b * &l2 + &ab_sum * &c1l + &c2,
        ),
        // c3 = 3 c1(B) xi^2 + (2(a+b) c1(B) L + 3 c2(B)) xi
        ChowClass::new(
            3,
            Q::zero(),
            Q::zero(),
            q(3),
            q(2) * &ab_sum * &c1l + q(3) * &c2,
        ),
        // c4 = 3 c2(B) xi^2
        ChowClass::new(4, Q::zero(), Q::zero(), Q::zero(), q(3) * &c2),
    ]
}

/// Ambient representatives (psi2, psi3) of c2(X), c3(X) for the anticanonical
/// hypersurface X, obtained by dividing c(Z) by 1 + c1(Z) in the truncated
/// ring. The codimension-1 part of the quotient vanishes: c1(X) = 0.
pub fn chern_cy(pair: BundlePair, surface: &BaseSurface) -> (ChowClass, ChowClass) {
    let c_z = total_chern_ambient(pair, surface);
    let n = TotalClass::from_parts(vec![c_z.part(1).clone()]);
    // (1 + n)^{-1} = 1 - n + n^2 - n^3 + n^4 in the truncated ring
    let mut inv = TotalClass::one();
    let mut power = TotalClass::one();
    let mut sign = Q::one();
    for _ in 1..=4 {
        power = power.mul(&n, pair, surface);
        sign = -sign;
        inv = inv.add(&power.scale(&sign));
    }
    let c_x = c_z.mul(&inv, pair, surface);
    assert!(
        c_x.part(1).is_zero(),
        "c1 of the anticanonical hypersurface must vanish"
    );
    (c_x.part(2).clone(), c_x.part(3).clone())
}

/// Closed forms of the ambient representatives of c2(X) and c3(X).
pub fn chern_cy_closed(pair: BundlePair, surface: &BaseSurface) -> (ChowClass, ChowClass) {
    let (a, b) = (q(pair.a), q(pair.b));
    let (l2, c1l, c1sq, c2) = (
        q(surface.l2),
        q(surface.c1l),
        q(surface.c1sq),
        q(surface.c2),
    );
    let ab_sum = &a + &b;
    let psi2 = ChowClass::new(
        2,
        q(3),
        q(2) * &ab_sum,
        q(3),
        &ab_sum * &c1l + &a * &b * &l2 + &c2,
    );
    let quadratic = &a * &a - &a * &b + &b * &b;
    let psi3 = ChowClass::new(
        3,
        Q::zero(),
        Q::zero(),
        q(-9),
        -(q(2) * &quadratic * &l2 + q(6) * &ab_sum * &c1l + q(3) * &c1sq),
    );
    (psi2, psi3)
}

fn q_to_i64(v: &Q, what: &str) -> i64 {
    assert!(v.is_integer(), "{what} is not an integer: {v}");
    let n = v.to_integer();
    i64::try_from(&n).unwrap_or_else(|_| panic!("{what} overflows i64: {n}"))
}

/// Topological Euler characteristic of the generic anticanonical hypersurface:
/// -6(a^2 - ab + b^2) L2 - 18 c1sq, verified against the ring-computed
/// degree of c3(X).
pub fn euler_characteristic(pair: BundlePair, surface: &BaseSurface) -> i64 {
    let (a, b) = (pair.a as i128, pair.b as i128);
    let closed = -6 * (a * a - a * b + b * b) * surface.l2 as i128 - 18 * surface.c1sq as i128;
    let closed = i64::try_from(closed).expect("euler characteristic overflows i64");

    // deg c3(X) = deg(psi3 . [X]) with [X] = -K_Z = c1(Z)
    let (_, psi3) = chern_cy(pair, surface);
    let c1z = chern_ambient(pair, surface)[0].clone();
    let ring = q_to_i64(
        &degree(&mul(&psi3, &c1z, pair, surface).expect("codim 3 + 1")).expect("codim 4"),
        "deg c3(X)",
    );
    assert_eq!(
        ring, closed,
        "fatal defect: euler characteristic ring/closed-form mismatch at {pair}"
    );
    closed
}

/// Class of the distinguished section S = {y = z = 0} pushed to Z:
/// xi^2 + b L xi.
pub fn section_class(pair: BundlePair) -> ChowClass {
    ChowClass::from_i64(2, 1, pair.b, 0, 0)
}

/// The conic residual a(a-b) L2 + (b-2a) c1L + c1sq, written in closed form.
/// Zero is the necessary condition for the section to sit inside a smooth
/// Calabi-Yau hypersurface.
pub fn friedman_residual_closed(pair: BundlePair, surface: &BaseSurface) -> i64 {
    let (a, b) = (pair.a as i128, pair.b as i128);
    let v =
        a * (a - b) * surface.l2 as i128 + (b - 2 * a) * surface.c1l as i128 + surface.c1sq as i128;
    i64::try_from(v).expect("friedman residual overflows i64")
}

/// deg(psi2 . [S]) - (c2 - c1sq), computed both through ring multiplication
/// and through the closed form; the two routes must agree.
pub fn friedman_residual(pair: BundlePair, surface: &BaseSurface) -> i64 {
    let (psi2, _) = chern_cy(pair, surface);
    let s = section_class(pair);
    let lhs = q_to_i64(
        &degree(&mul(&psi2, &s, pair, surface).expect("codim 2 + 2")).expect("codim 4"),
        "deg c2(X).[S]",
    );
    let ring = lhs - (surface.c2 - surface.c1sq);
    let closed = friedman_residual_closed(pair, surface);
    assert_eq!(
        ring, closed,
        "fatal defect: friedman residual ring/closed-form mismatch at {pair}"
    );
    closed
}

/// Intersection data of the distinguished section S inside X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionInvariants {
    /// c1 of the normal bundle of S in X; equals K_B by adjunction.
    pub c1_normal: BaseClass,
    /// [S]^3 = K_S^2 = K_B^2.
    pub s_cubed: i64,
    /// deg c2(X).[S]; equals c2 - c1sq exactly when the conic residual is 0.
    pub c2x_dot_s: i64,
    /// c1 of the fundamental line bundle of the fibration: always c1(B).
    pub fundamental_class: BaseClass,
}

pub fn section_invariants(pair: BundlePair, surface: &BaseSurface) -> SectionInvariants {
    SectionInvariants {
        c1_normal: BaseClass { l: 0, c1: -1 },
        s_cubed: surface.c1sq,
        c2x_dot_s: surface.c2 - surface.c1sq + friedman_residual(pair, surface),
        fundamental_class: BaseClass { l: 0, c1: 1 },
    }
}
