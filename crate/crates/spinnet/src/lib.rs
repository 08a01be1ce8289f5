//! Exact recoupling engine for the balanced two-parameter deformation of
//! Spin(4) = SU(2) × SU(2).
//!
//! Everything is computed symbolically over a single indeterminate `A` with
//! arbitrary-precision rational coefficients; there is no floating point
//! anywhere. The balanced deformation pairs each SU(2) factor with the
//! opposite deformation parameter, so a closed diagram evaluates to
//! `s(A) · s(A⁻¹)` for a single-factor value `s` — the [`diagram`] module
//! calls this the balanced pair evaluation.
//!
//! The crate is organized bottom-up:
//!
//! * [`qpoly`] — Laurent polynomials and canonical rational functions in `A`;
//!   quantum integers `[n]` and factorials.
//! * [`tl`] — the Temperley–Lieb category on planar matchings, Jones–Wenzl
//!   projectors, and a brute-force network evaluator that expands every cable
//!   and projector into elementary cups, caps, and crossings. This is the
//!   slow, obviously-correct oracle the rest of the crate is tested against.
//! * [`recoupling`] — closed forms: loop values `Δ_n`, theta networks,
//!   tetrahedral networks, six-j recoupling coefficients, braiding phases
//!   `λ`, and twists.
//! * [`diagram`] — sliced (Morse-word) diagrams and colored networks; the
//!   fast evaluator (`eval_planar` by graph rewriting, `eval_single` /
//!   `eval_pair` for crossings via channel fusion).
//! * [`vertices`] — intertwiner constructions: generalized n-vertices over
//!   internal trees, the Barrett–Crane 4-vertex, turning, extension, and
//!   pairing of a vertex against dual trees.
//! * [`invariant`] — the embedded-graph invariants `G_j`, the Kauffman
//!   bracket (an independent skein-recursion route), and diagram surgery
//!   (disjoint union, wedge, mirror).
//! * [`verify`] — self-check suites used by the CLI and the acceptance tests;
//!   deterministic output, seeded generators.
//!
//! Conventions, fixed once and used everywhere: edge labels (colors) are
//! nonnegative integers counting the strands in a cable, the same label for
//! both SU(2) factors; `δ = −A² − A⁻²`;
//! `[n] = (A^{2n} − A^{−2n})/(A² − A^{−2})`; a positive curl on a single
//! strand contributes `−A³`; `twist(n) = (−1)ⁿ A^{n(n+2)}`.

pub mod diagram;
pub mod error;
pub mod invariant;
pub mod qpoly;
pub mod recoupling;
pub mod tl;
pub mod verify;
pub mod vertices;

pub use error::{Error, Result};
pub use qpoly::{LaurentPoly, RatFunc};
pub use recoupling::Caches;
