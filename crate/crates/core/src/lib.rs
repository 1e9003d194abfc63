//! Verification toolkit for coset properties of involution centralizers and
//! Sylow subgroups in alternating groups.
//!
//! The library is organized around a few exact questions about finite
//! permutation groups:
//!
//! * [`perm`] — arithmetic on permutations of `{1..N}` (right-to-left
//!   composition, canonical cycle decompositions, cycle types, parity).
//! * [`centralizer`] — the centralizer `Z(x)` of an involution, described
//!   structurally as signed block permutations times a fixed-point action;
//!   streaming enumeration, uniform sampling, and a brute-force oracle.
//! * [`census`] — mergeable cycle-type censuses over cosets `y·Z`, the
//!   all-even-cycles predicate, and odd-order witness searches.
//! * [`conjectures`] — claim-level verdicts: the degree-`8n` family of
//!   cosets with even-order elements only, and exhaustive odd-order-element
//!   scans over centralizer cosets in small alternating groups.
//! * [`sylow`] — Sylow `p`-subgroups of `A_n` for `p ≤ n ≤ 3p−1`,
//!   constructive procedures breaking all-`p`-power cosets, and exhaustive
//!   whole-group scans.
//! * [`report`] — serializable report schemas with deterministic layout.
//!
//! Everything is deterministic given a seed: parallel work is split into a
//! fixed shard layout with per-shard RNG streams, so results never depend
//! on thread count.

pub mod census;
pub mod centralizer;
pub mod conjectures;
pub mod perm;
pub mod report;
pub mod sylow;
mod util;

pub use census::{CycleTypeCensus, Witness, WitnessKind};
pub use centralizer::{Ambient, BlockPartition, CentralizerDesc, WreathParam};
pub use conjectures::{Status, Verdict, VerifyMode};
pub use perm::{CycleType, Parity, PermError, Permutation};
pub use sylow::{ScanTarget, SylowDesc, TauEffect};

/// Default RNG seed used by every seeded command when none is given.
pub const DEFAULT_SEED: u64 = 788_997;

/// Default cap on permutation degrees accepted at configuration
/// boundaries. Element orders stay far below 2^64 up to this degree; the
/// order computation carries an explicit overflow guard regardless, so the
/// cap may be raised by configuration.
pub const DEFAULT_DEGREE_CAP: u32 = 64;
