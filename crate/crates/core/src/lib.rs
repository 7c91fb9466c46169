//! Exact-arithmetic chain-level algebra for operads and cooperads.
//!
//! The crate provides a small stack of layers:
//!
//! * [`ring`], [`formal`], [`hom`], [`complex`] — exact scalars, sparse formal
//!   sums over canonical basis labels, graded homomorphisms, finite chain
//!   complexes with homology-rank computation over a field.
//! * [`simplicial`] — normalized chains of standard simplices,
//!   Alexander-Whitney and Eilenberg-MacLane maps, pushforward along the
//!   min/max maps of the square.
//! * [`barratt_eccles`] — the chain Barratt-Eccles operad: differential,
//!   compositions, diagonal, table reduction to surjections, interval cuts,
//!   and the induced coalgebra action on simplicial chains.
//! * [`einf`] — truncated free algebras over the Barratt-Eccles operad with
//!   the explicit AW/EM comparison maps and the chain homotopy between them.
//! * [`cubical`] — the interval cochain algebras `I^k` with faces,
//!   degeneracies and min/max connections.
//! * [`trees`] — reduced leaf-labeled trees, contractions, decompositions,
//!   grafting along pointed shuffles.
//! * [`segal`] — strict and homotopy Segal dg cooperads over trees, top
//!   components, operator generation and verification, example cooperads.
//! * [`cobar`] — the cobar construction producing shuffle dg operads, and
//!   morphisms induced by homotopy morphisms.
//! * [`wcons`] — the W-construction, its decomposed variant, the comparison
//!   zigzag, and the cubically enriched tree category.

pub mod barratt_eccles;
pub mod cobar;
pub mod complex;
pub mod cubical;
pub mod einf;
pub mod formal;
pub mod hom;
pub mod report;
pub mod ring;
pub mod segal;
pub mod simplicial;
pub mod trees;
pub mod wcons;

pub use complex::Complex;
pub use formal::FormalSum;
pub use hom::GradedHom;
pub use report::{CheckItem, Report};
pub use ring::{Ring, Scalar};
