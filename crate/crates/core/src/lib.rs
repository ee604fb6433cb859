//! Exact enumeration of Calabi-Yau elliptic fibration candidates.
//!
//! Given the intersection-theoretic profile of a polarized surface (B, L),
//! this crate decides for which bundle exponents (a, b), with a >= b >= 0,
//! the generic anticanonical hypersurface of P(L^a + L^b + O_B) can be a
//! smooth Calabi-Yau elliptic fibration over B. All arithmetic is exact:
//! the Chow-ring layer works over arbitrary-precision rationals and the
//! enumeration layer over integers.
//!
//! ```
//! use cyfib::enumerate::enumerate_all;
//! use cyfib::surface::preset_projective_plane;
//!
//! let report = enumerate_all(&preset_projective_plane(1).unwrap()).unwrap();
//! assert_eq!(report.counts.total, 15);
//! assert_eq!(report.candidates().count(), 9);
//! ```

pub mod chow;
pub mod cubic;
pub mod enumerate;
pub mod surface;

pub use chow::{BaseClass, BundlePair, ChowClass};
pub use enumerate::{Branch, EnumerationReport, PairRecord, PairStatus};
pub use surface::{BaseSurface, Proportionality, Violation};
