//! Exact-arithmetic verification toolkit for the derived geometry of the
//! degree-42 Calabi–Yau threefold linear sections of the Grassmannian G(2,7)
//! and of the dual Pfaffian cubic.
//!
//! Everything in this crate is computed over the integers (or exact rationals
//! realised through Smith normal forms): there are no floating-point numbers
//! anywhere.  The major pieces are:
//!
//! * [`matrix`] — dense `BigInt` matrices with Bareiss determinants, Smith
//!   normal form with transform tracking, and exact linear solving.
//! * [`weights`] — GL(2) plethysm bookkeeping: Clebsch–Gordan products of
//!   twisted symmetric powers of the tautological subbundle, Cauchy
//!   decompositions, Weyl dimension formula, Koszul multiplicities.
//! * [`bwb`] — Borel–Weil–Bott cohomology of irreducible homogeneous bundles
//!   on G(k,n), with the dotted Weyl-group action made explicit and memoised.
//! * [`extcalc`] — Ext computations between window generators: on the
//!   Grassmannian itself, on the total space of `O(-1)^7` over G(2,7), and on
//!   the dual graded side where a rank-one locus pushes down to `P^6`.
//!   Vanishing results come with finite, certified scan ranges.
//! * [`windows`] — grade-restriction windows: generator enumeration,
//!   exceptionality checks with ordered digraph certificates, and the mutation
//!   chain between neighbouring windows.
//! * [`klattice`] — the rank-21 K-theory lattice of G(2,7): Euler pairings,
//!   basis-change certificates against the Kapranov collection, the numerical
//!   Calabi–Yau lattice obtained as the quotient by the radical of the
//!   asymmetric hypersurface pairing, spherical-twist transvections, and
//!   window-transfer operators.
//! * [`skms`] — a five-punctured-sphere monodromy model: loop words in the
//!   puncture generators act on the Calabi–Yau lattice, and path words woven
//!   between two basepoints reduce to loop words through a ladder of window
//!   equivalences.
//! * [`verify`] — the named end-to-end checks (calibration anchors, vanishing
//!   sweeps, lattice certificates, monodromy relations) used by the
//!   command-line `verify` subcommand and the acceptance suite.

pub mod bwb;
pub mod error;
pub mod extcalc;
pub mod klattice;
pub mod matrix;
pub mod skms;
pub mod verify;
pub mod weights;
pub mod windows;

pub use error::Error;

/// Version tag for the convention constants baked into this crate (weight
/// ordering, duality normalisations, pairing signs, word grammar).  Cache keys
/// incorporate this value so that stale artifacts are never reused across a
/// convention change.
pub const CONVENTION_VERSION: &str = "1";
