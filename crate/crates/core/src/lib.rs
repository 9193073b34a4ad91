//! Exact computational machinery for reflection groups acting on
//! Lorentzian lattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] implements arithmetic in the class of finite sums
//!   `Σ rᵢ·√sᵢ` with rational `rᵢ` and square-free integer `sᵢ`,
//!   together with exact vectors and matrices over that class.
//! * [`qspace`] models quadratic spaces of signature `(n, 1)`, their
//!   root vectors, reflections and acute-angled polyhedra.
//! * [`diagram`] builds the edge-labelled graph of a polyhedron from
//!   the pairwise angles of its walls and classifies subdiagrams.
//! * [`arith`] decides quasi-arithmeticity and arithmeticity of the
//!   generated reflection group from cyclic products of Gram entries.
//! * [`vinberg`] enumerates the walls of a fundamental chamber of the
//!   reflection subgroup of an integral Lorentzian lattice in order of
//!   increasing distance from a basepoint.
//! * [`doubling`] folds a polyhedron across a wall and iterates the
//!   construction until a distinguished wall meets nothing at an
//!   angle below `π/2`.
//! * [`packing`] converts isolated walls into sphere packings in
//!   inversive coordinates, enumerates orbits, bends and congruence
//!   certificates, and renders planar packings to SVG.
//! * [`fixtures`] ships the worked lattices used across the test
//!   suite and the command-line `fixtures` audit.

#![forbid(unsafe_code)]

pub mod arith;
pub mod diagram;
pub mod doubling;
pub mod exact;
pub mod fixtures;
pub mod packing;
pub mod qspace;
pub mod vinberg;
