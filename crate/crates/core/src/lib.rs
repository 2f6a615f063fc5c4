//! Virtual knots as Gauss diagrams: forbidden-move calculus, odd-writhe
//! invariants, forbidden-number bounds, and certified unknotting search.
//!
//! A virtual knot is represented by its Gauss diagram: a cyclic sequence of
//! signed, directed chord endpoints ([`GaussDiagram`]). Arrows point from the
//! over-passage (tail) to the under-passage (head). The extended Reidemeister
//! moves and the two forbidden moves (`FO` swaps adjacent tails, `FU` swaps
//! adjacent heads) are implemented as rewrites on diagrams; the minimum number
//! of forbidden moves needed to reach the unknot is the forbidden number.
//!
//! The crate computes the odd writhe and odd writhe polynomial, evaluates the
//! known closed-form lower/upper bounds on the forbidden number, generates the
//! standard knot families used to exercise those bounds, and searches for
//! replay-verifiable unknotting certificates.
//!
//! ```
//! use vknot_core::{certify_forbidden_number, odd_writhe, odd_writhe_polynomial};
//! use vknot_core::{GaussDiagram, SearchConfig};
//!
//! let k = GaussDiagram::parse("O1+O2+U1+U2+")?; // the virtual trefoil
//! assert_eq!(odd_writhe(&k), 2);
//! assert_eq!(odd_writhe_polynomial(&k).to_string(), "t^2 + 1");
//!
//! let report = certify_forbidden_number(&k, &SearchConfig::default());
//! assert_eq!(report.exact, Some(1));
//! # Ok::<(), vknot_core::diagram::ParseError>(())
//! ```

pub mod bounds;
pub mod census;
pub mod diagram;
pub mod families;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod search;

pub use bounds::{best_bounds, best_bounds_with_family, BoundItem, BoundReport};
pub use census::{load_census, load_expected, report, verify_table3, CensusEntry, ExpectedRow};
pub use diagram::{ChordId, Endpoint, GaussDiagram, Parity, Role, Sign};
pub use families::FamilySpec;
pub use invariants::{arc_labels, chord_index, odd_writhe, odd_writhe_polynomial, ArcLabeling};
pub use moves::{
    apply_move, apply_sequence, enumerate_moves, simplify, Move, MoveKind, MoveSequence,
};
pub use poly::LaurentPoly;
pub use search::{
    certify_forbidden_number, unknotting_search, verify_sequence, SearchConfig, SearchOutcome,
    SearchStatus, VerifyOutcome,
};
