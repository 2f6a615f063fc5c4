//! Extended Reidemeister moves and forbidden moves as rewrites on Gauss
//! diagrams.
//!
//! Forbidden moves act on cyclically adjacent endpoints of distinct chords:
//! `FO` swaps two adjacent tails, `FU` two adjacent heads. The forbidden
//! detour swaps an adjacent head/tail pair and costs two forbidden moves.
//! `R1`/`R2` removals delete the familiar kink and clasp patterns, the
//! addition moves insert them, and `R3` performs the triangle rewrite on
//! three disjoint adjacent endpoint pairs.
//!
//! Move sequences use the text notation `FO(a,b), FU(a,b), FD(a,b), R1(a),
//! R2(a,b), R3(a,b,c)`, with labels referring to the current diagram's chord
//! ids at each step.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};

/// A single rewrite with its site. Sites reference the diagram the move is
/// applied to: chord ids for removals and forbidden moves, insertion slots
/// for additions, pair positions for `R3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Delete a chord whose two endpoints are cyclically adjacent.
    R1Remove { chord: ChordId },
    /// Delete two opposite-sign chords with adjacent tails and adjacent heads.
    R2Remove { a: ChordId, b: ChordId },
    /// Insert an isolated chord at `slot` (the position before endpoint
    /// `slot`), head before tail when `head_first`.
    R1Add {
        slot: usize,
        sign: Sign,
        head_first: bool,
    },
    /// Insert two chords in an `R2` pattern: tails at `tails_slot`, heads at
    /// `heads_slot` (second chord's head first when `reversed`); `sign` is
    /// the first chord's sign, the second gets the opposite.
    R2Add {
        tails_slot: usize,
        heads_slot: usize,
        reversed: bool,
        sign: Sign,
    },
    /// Triangle rewrite: swap three disjoint adjacent endpoint pairs of three
    /// chords in an admissible configuration. `pair_starts` pins the
    /// configuration; `None` resolves to the first applicable one on the
    /// named chords.
    R3 {
        chords: [ChordId; 3],
        pair_starts: Option<[usize; 3]>,
    },
    /// Forbidden over move: swap the adjacent tails of two distinct chords.
    Fo { a: ChordId, b: ChordId },
    /// Forbidden under move: swap the adjacent heads of two distinct chords.
    Fu { a: ChordId, b: ChordId },
    /// Forbidden detour: swap the head of `head` with the adjacent tail of
    /// `tail`. Counts as two forbidden moves.
    Detour { head: ChordId, tail: ChordId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    R1Remove,
    R2Remove,
    R1Add,
    R2Add,
    R3,
    Fo,
    Fu,
    Detour,
}

/// The removal/rewrite kinds: everything except the addition moves.
pub const NON_ADDITION_KINDS: [MoveKind; 6] = [
    MoveKind::R1Remove,
    MoveKind::R2Remove,
    MoveKind::R3,
    MoveKind::Fo,
    MoveKind::Fu,
    MoveKind::Detour,
];

impl Move {
    pub fn fo(a: ChordId, b: ChordId) -> Move {
        Move::Fo {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn fu(a: ChordId, b: ChordId) -> Move {
        Move::Fu {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn r2(a: ChordId, b: ChordId) -> Move {
        Move::R2Remove {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R3 { .. } => MoveKind::R3,
            Move::Fo { .. } => MoveKind::Fo,
            Move::Fu { .. } => MoveKind::Fu,
            Move::Detour { .. } => MoveKind::Detour,
        }
    }

    /// Forbidden-move cost: 1 for `FO`/`FU`, 2 for the detour, 0 otherwise.
    pub fn forbidden_cost(&self) -> u32 {
        match self {
            Move::Fo { .. } | Move::Fu { .. } => 1,
            Move::Detour { .. } => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("{kind:?} not applicable: {reason}")]
    Inapplicable {
        kind: MoveKind,
        reason: &'static str,
    },
}

fn inapplicable(kind: MoveKind, reason: &'static str) -> MoveError {
    MoveError::Inapplicable { kind, reason }
}

/// Replay failure: the first inapplicable move and its index.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("move {index} ({mv}) failed: {source}")]
pub struct SequenceError {
    pub index: usize,
    pub mv: Move,
    #[source]
    pub source: MoveError,
}

/// An ordered certificate of rewrites. The forbidden cost is derived from
/// the moves: each `FO`/`FU` counts 1, each detour counts 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveSequence(Vec<Move>);

impl MoveSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn forbidden_cost(&self) -> u32 {
        self.0.iter().map(Move::forbidden_cost).sum()
    }

    pub fn push(&mut self, m: Move) {
        self.0.push(m);
    }
}

impl From<Vec<Move>> for MoveSequence {
    fn from(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }
}

fn cyc_adjacent(n2: usize, i: usize, j: usize) -> bool {
    n2 >= 2 && ((i + 1) % n2 == j || (j + 1) % n2 == i)
}

fn swap_endpoints(d: &GaussDiagram, i: usize, j: usize) -> GaussDiagram {
    let mut out = d.clone();
    out.endpoints_mut().swap(i, j);
    out
}

fn remove_chords(d: &GaussDiagram, ids: &[ChordId]) -> GaussDiagram {
    let mut out = d.clone();
    out.endpoints_mut().retain(|e| !ids.contains(&e.chord));
    for id in ids {
        out.signs_mut().remove(id);
    }
    out
}

fn positions(d: &GaussDiagram, chord: ChordId) -> Result<(usize, usize), MoveError> {
    d.chord_positions(chord)
        .ok_or(MoveError::UnknownChord(chord))
}

/// True iff chords `a`, `b` form an `R2` removal pattern: opposite signs,
/// tails cyclically adjacent, and heads cyclically adjacent (either of the
/// two standard interleavings).
pub fn r2_pattern(d: &GaussDiagram, a: ChordId, b: ChordId) -> bool {
    if a == b {
        return false;
    }
    let (sa, sb) = match (d.sign(a), d.sign(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    if sa == sb {
        return false;
    }
    let (ta, ha) = d.chord_positions(a).unwrap();
    let (tb, hb) = d.chord_positions(b).unwrap();
    let n2 = d.endpoints().len();
    cyc_adjacent(n2, ta, tb) && cyc_adjacent(n2, ha, hb)
}

// --- R3 admissibility -------------------------------------------------------
//
// An R3 site is three disjoint cyclically adjacent endpoint pairs whose six
// endpoints belong to three distinct chords, one pair of each type:
//   tail/tail (the top strand), head/head (bottom), head/tail (middle).
// Writing TM for the chord with its head in the mixed pair, MB for the chord
// with its tail there, and TB for the third, the configuration is admissible
// exactly when the signs satisfy
//   sign(TM) * sign(TB) = +1  iff  b_m == b_h
//   sign(TB) * sign(MB) = +1  iff  b_t == b_m
// where b_t / b_m / b_h record which chord comes first (in circle order)
// inside the tail/mixed/head pair. This is the full set of triangle
// configurations realizable by three stratified strands in the plane; it is
// closed under the rewrite itself, so R3 is self-inverse at its site.

#[derive(Clone, Copy, Debug)]
struct R3Site {
    pair_starts: [usize; 3],
    tm: ChordId,
    tb: ChordId,
    mb: ChordId,
}

impl R3Site {
    fn chord_triple(&self) -> [ChordId; 3] {
        let mut t = [self.tm, self.tb, self.mb];
        t.sort_unstable();
        t
    }
}

fn r3_site_at(d: &GaussDiagram, starts: [usize; 3]) -> Option<R3Site> {
    let eps = d.endpoints();
    let n2 = eps.len();
    if n2 < 6 {
        return None;
    }
    let mut occupied = Vec::with_capacity(6);
    let mut pairs: Vec<(Endpoint, Endpoint)> = Vec::with_capacity(3);
    for &s in &starts {
        if s >= n2 {
            return None;
        }
        let t = (s + 1) % n2;
        occupied.push(s);
        occupied.push(t);
        pairs.push((eps[s], eps[t]));
    }
    occupied.sort_unstable();
    occupied.dedup();
    if occupied.len() != 6 {
        return None;
    }
    let mut chords: Vec<ChordId> = pairs.iter().flat_map(|(x, y)| [x.chord, y.chord]).collect();
    chords.sort_unstable();
    chords.dedup();
    if chords.len() != 3 {
        return None;
    }
    let mut tail_pair = None;
    let mut head_pair = None;
    let mut mixed_pair = None;
    for (i, (x, y)) in pairs.iter().enumerate() {
        if x.chord == y.chord {
            return None;
        }
        match (x.role, y.role) {
            (Role::Tail, Role::Tail) => tail_pair = Some(i),
            (Role::Head, Role::Head) => head_pair = Some(i),
            _ => mixed_pair = Some(i),
        }
    }
    let (ti, hi, mi) = (tail_pair?, head_pair?, mixed_pair?);
    let (m1, m2) = pairs[mi];
    let (mixed_head, mixed_tail) = if m1.role == Role::Head {
        (m1, m2)
    } else {
        (m2, m1)
    };
    let tm = mixed_head.chord;
    let mb = mixed_tail.chord;
    if tm == mb {
        return None;
    }
    let tb = *chords.iter().find(|&&c| c != tm && c != mb)?;
    let (t1, t2) = pairs[ti];
    if !(t1.chord == tm && t2.chord == tb || t1.chord == tb && t2.chord == tm) {
        return None;
    }
    let (h1, h2) = pairs[hi];
    if !(h1.chord == tb && h2.chord == mb || h1.chord == mb && h2.chord == tb) {
        return None;
    }
    let b_t = t1.chord == tm;
    let b_m = m1.role == Role::Head;
    let b_h = h1.chord == tb;
    let s = |c: ChordId| d.sign(c).unwrap().value();
    if (s(tm) * s(tb) == 1) != (b_m == b_h) {
        return None;
    }
    if (s(tb) * s(mb) == 1) != (b_t == b_m) {
        return None;
    }
    Some(R3Site {
        pair_starts: starts,
        tm,
        tb,
        mb,
    })
}

fn r3_sites(d: &GaussDiagram) -> Vec<R3Site> {
    let eps = d.endpoints();
    let n2 = eps.len();
    if n2 < 6 {
        return Vec::new();
    }
    let candidates: Vec<usize> = (0..n2)
        .filter(|&p| eps[p].chord != eps[(p + 1) % n2].chord)
        .collect();
    let mut sites = Vec::new();
    for (i, &p) in candidates.iter().enumerate() {
        for (j, &q) in candidates.iter().enumerate().skip(i + 1) {
            for &r in candidates.iter().skip(j + 1) {
                if let Some(site) = r3_site_at(d, [p, q, r]) {
                    sites.push(site);
                }
            }
        }
    }
    sites
}

fn apply_r3(d: &GaussDiagram, site: &R3Site) -> GaussDiagram {
    let n2 = d.endpoints().len();
    let mut out = d.clone();
    for &s in &site.pair_starts {
        let t = (s + 1) % n2;
        out.endpoints_mut().swap(s, t);
    }
    out
}

// --- application -------------------------------------------------------------

/// Applies a single move, returning the rewritten diagram. The input is
/// never mutated.
pub fn apply_move(d: &GaussDiagram, m: &Move) -> Result<GaussDiagram, MoveError> {
    let n2 = d.endpoints().len();
    match m {
        Move::R1Remove { chord } => {
            let (t, h) = positions(d, *chord)?;
            if !cyc_adjacent(n2, t, h) {
                return Err(inapplicable(MoveKind::R1Remove, "endpoints not adjacent"));
            }
            Ok(remove_chords(d, &[*chord]))
        }
        Move::R2Remove { a, b } => {
            positions(d, *a)?;
            positions(d, *b)?;
            if !r2_pattern(d, *a, *b) {
                return Err(inapplicable(MoveKind::R2Remove, "pattern mismatch"));
            }
            Ok(remove_chords(d, &[*a, *b]))
        }
        Move::R1Add {
            slot,
            sign,
            head_first,
        } => {
            if *slot >= n2.max(1) {
                return Err(inapplicable(MoveKind::R1Add, "slot out of range"));
            }
            let id = d.max_chord_id() + 1;
            let head = Endpoint {
                chord: id,
                role: Role::Head,
            };
            let tail = Endpoint {
                chord: id,
                role: Role::Tail,
            };
            let pair = if *head_first {
                [head, tail]
            } else {
                [tail, head]
            };
            let mut out = d.clone();
            out.endpoints_mut().splice(*slot..*slot, pair);
            out.signs_mut().insert(id, *sign);
            Ok(out)
        }
        Move::R2Add {
            tails_slot,
            heads_slot,
            reversed,
            sign,
        } => {
            let limit = n2.max(1);
            if *tails_slot >= limit || *heads_slot >= limit {
                return Err(inapplicable(MoveKind::R2Add, "slot out of range"));
            }
            let a = d.max_chord_id() + 1;
            let b = a + 1;
            let ep = |chord, role| Endpoint { chord, role };
            let tails = [ep(a, Role::Tail), ep(b, Role::Tail)];
            let heads = if *reversed {
                [ep(b, Role::Head), ep(a, Role::Head)]
            } else {
                [ep(a, Role::Head), ep(b, Role::Head)]
            };
            let mut out = d.clone();
            if tails_slot == heads_slot {
                let mut block = tails.to_vec();
                block.extend_from_slice(&heads);
                out.endpoints_mut().splice(*tails_slot..*tails_slot, block);
            } else {
                // insert at the higher index first so the lower slot stays valid
                let (first, second) = if tails_slot > heads_slot {
                    ((*tails_slot, tails), (*heads_slot, heads))
                } else {
                    ((*heads_slot, heads), (*tails_slot, tails))
                };
                out.endpoints_mut().splice(first.0..first.0, first.1);
                out.endpoints_mut().splice(second.0..second.0, second.1);
            }
            out.signs_mut().insert(a, *sign);
            out.signs_mut().insert(b, sign.flip());
            Ok(out)
        }
        Move::R3 {
            chords,
            pair_starts,
        } => {
            for c in chords {
                positions(d, *c)?;
            }
            let site = match pair_starts {
                Some(starts) => {
                    let site = r3_site_at(d, *starts)
                        .ok_or(inapplicable(MoveKind::R3, "configuration mismatch"))?;
                    if site.chord_triple() != *chords {
                        return Err(inapplicable(MoveKind::R3, "chords do not match site"));
                    }
                    site
                }
                None => {
                    let mut sorted = *chords;
                    sorted.sort_unstable();
                    r3_sites(d)
                        .into_iter()
                        .find(|s| s.chord_triple() == sorted)
                        .ok_or(inapplicable(MoveKind::R3, "no admissible configuration"))?
                }
            };
            Ok(apply_r3(d, &site))
        }
        Move::Fo { a, b } => {
            if a == b {
                return Err(inapplicable(MoveKind::Fo, "chords must be distinct"));
            }
            let (ta, _) = positions(d, *a)?;
            let (tb, _) = positions(d, *b)?;
            if !cyc_adjacent(n2, ta, tb) {
                return Err(inapplicable(MoveKind::Fo, "tails not adjacent"));
            }
            Ok(swap_endpoints(d, ta, tb))
        }
        Move::Fu { a, b } => {
            if a == b {
                return Err(inapplicable(MoveKind::Fu, "chords must be distinct"));
            }
            let (_, ha) = positions(d, *a)?;
            let (_, hb) = positions(d, *b)?;
            if !cyc_adjacent(n2, ha, hb) {
                return Err(inapplicable(MoveKind::Fu, "heads not adjacent"));
            }
            Ok(swap_endpoints(d, ha, hb))
        }
        Move::Detour { head, tail } => {
            if head == tail {
                return Err(inapplicable(MoveKind::Detour, "chords must be distinct"));
            }
            let (_, h) = positions(d, *head)?;
            let (t, _) = positions(d, *tail)?;
            if !cyc_adjacent(n2, h, t) {
                return Err(inapplicable(MoveKind::Detour, "head and tail not adjacent"));
            }
            Ok(swap_endpoints(d, h, t))
        }
    }
}

/// Enumerates every applicable move of the allowed kinds, in a fixed
/// deterministic order. Addition moves are enumerated only when their kinds
/// are explicitly allowed; callers bound repeated additions with a crossing
/// ceiling.
pub fn enumerate_moves(d: &GaussDiagram, allow: &[MoveKind]) -> Vec<Move> {
    let eps = d.endpoints();
    let n2 = eps.len();
    let mut out = Vec::new();
    let allowed = |k: MoveKind| allow.contains(&k);

    if allowed(MoveKind::R1Remove) {
        for c in d.chord_ids() {
            let (t, h) = d.chord_positions(c).unwrap();
            if cyc_adjacent(n2, t, h) {
                out.push(Move::R1Remove { chord: c });
            }
        }
    }
    if allowed(MoveKind::R2Remove) {
        let ids: Vec<ChordId> = d.chord_ids().collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if r2_pattern(d, a, b) {
                    out.push(Move::r2(a, b));
                }
            }
        }
    }
    if allowed(MoveKind::R3) {
        for site in r3_sites(d) {
            out.push(Move::R3 {
                chords: site.chord_triple(),
                pair_starts: Some(site.pair_starts),
            });
        }
    }
    if allowed(MoveKind::Fo) || allowed(MoveKind::Fu) || allowed(MoveKind::Detour) {
        for p in 0..n2 {
            let q = (p + 1) % n2;
            let (x, y) = (eps[p], eps[q]);
            if x.chord == y.chord {
                continue;
            }
            match (x.role, y.role) {
                (Role::Tail, Role::Tail) if allowed(MoveKind::Fo) => {
                    out.push(Move::fo(x.chord, y.chord));
                }
                (Role::Head, Role::Head) if allowed(MoveKind::Fu) => {
                    out.push(Move::fu(x.chord, y.chord));
                }
                (Role::Head, Role::Tail) if allowed(MoveKind::Detour) => {
                    out.push(Move::Detour {
                        head: x.chord,
                        tail: y.chord,
                    });
                }
                (Role::Tail, Role::Head) if allowed(MoveKind::Detour) => {
                    out.push(Move::Detour {
                        head: y.chord,
                        tail: x.chord,
                    });
                }
                _ => {}
            }
        }
    }
    if allowed(MoveKind::R1Add) {
        for slot in 0..n2.max(1) {
            for sign in [Sign::Plus, Sign::Minus] {
                for head_first in [false, true] {
                    out.push(Move::R1Add {
                        slot,
                        sign,
                        head_first,
                    });
                }
            }
        }
    }
    if allowed(MoveKind::R2Add) {
        for tails_slot in 0..n2.max(1) {
            for heads_slot in 0..n2.max(1) {
                for reversed in [false, true] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        out.push(Move::R2Add {
                            tails_slot,
                            heads_slot,
                            reversed,
                            sign,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Left-fold of [`apply_move`]; returns the final diagram and the total
/// forbidden cost. Fails with the index of the first inapplicable move.
pub fn apply_sequence(
    d: &GaussDiagram,
    seq: &MoveSequence,
) -> Result<(GaussDiagram, u32), SequenceError> {
    let mut current = d.clone();
    let mut cost = 0;
    for (index, mv) in seq.moves().iter().enumerate() {
        current = apply_move(&current, mv).map_err(|source| SequenceError {
            index,
            mv: mv.clone(),
            source,
        })?;
        cost += mv.forbidden_cost();
    }
    Ok((current, cost))
}

/// Greedy closure of the `R1`/`R2` removals: repeatedly applies the first
/// applicable removal until none applies. The chord count never increases.
pub fn simplify(d: &GaussDiagram) -> GaussDiagram {
    let mut current = d.clone();
    loop {
        let moves = enumerate_moves(&current, &[MoveKind::R1Remove, MoveKind::R2Remove]);
        match moves.first() {
            Some(m) => current = apply_move(&current, m).unwrap(),
            None => return current,
        }
    }
}

// --- notation ----------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad move notation in term {index} ({term:?}): {reason}")]
pub struct NotationError {
    pub index: usize,
    pub term: String,
    pub reason: &'static str,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::R1Remove { chord } => write!(f, "R1({chord})"),
            Move::R2Remove { a, b } => write!(f, "R2({a},{b})"),
            Move::R1Add {
                slot,
                sign,
                head_first,
            } => {
                let order = if *head_first { "UO" } else { "OU" };
                write!(f, "R1ADD({slot},{sign},{order})")
            }
            Move::R2Add {
                tails_slot,
                heads_slot,
                reversed,
                sign,
            } => {
                let order = if *reversed { "RE" } else { "AL" };
                write!(f, "R2ADD({tails_slot},{heads_slot},{sign},{order})")
            }
            Move::R3 { chords, .. } => write!(f, "R3({},{},{})", chords[0], chords[1], chords[2]),
            Move::Fo { a, b } => write!(f, "FO({a},{b})"),
            Move::Fu { a, b } => write!(f, "FU({a},{b})"),
            Move::Detour { head, tail } => write!(f, "FD({head},{tail})"),
        }
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn parse_term(index: usize, term: &str) -> Result<Move, NotationError> {
    let err = |reason| NotationError {
        index,
        term: term.to_string(),
        reason,
    };
    let open = term.find('(').ok_or_else(|| err("missing '('"))?;
    if !term.ends_with(')') {
        return Err(err("missing ')'"));
    }
    let name = &term[..open];
    let args: Vec<&str> = term[open + 1..term.len() - 1]
        .split(',')
        .map(str::trim)
        .collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| err("expected a number"));
    let chord = |s: &str| -> Result<ChordId, NotationError> {
        let v = num(s)?;
        u32::try_from(v).map_err(|_| err("label out of range"))
    };
    let sign = |s: &str| match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(err("expected + or -")),
    };
    match name {
        "FO" if args.len() == 2 => Ok(Move::fo(chord(args[0])?, chord(args[1])?)),
        "FU" if args.len() == 2 => Ok(Move::fu(chord(args[0])?, chord(args[1])?)),
        "FD" if args.len() == 2 => Ok(Move::Detour {
            head: chord(args[0])?,
            tail: chord(args[1])?,
        }),
        "R1" if args.len() == 1 => Ok(Move::R1Remove {
            chord: chord(args[0])?,
        }),
        "R2" if args.len() == 2 => Ok(Move::r2(chord(args[0])?, chord(args[1])?)),
        "R3" if args.len() == 3 => {
            let mut chords = [chord(args[0])?, chord(args[1])?, chord(args[2])?];
            chords.sort_unstable();
            Ok(Move::R3 {
                chords,
                pair_starts: None,
            })
        }
        "R1ADD" if args.len() == 3 => Ok(Move::R1Add {
            slot: num(args[0])? as usize,
            sign: sign(args[1])?,
            head_first: match args[2] {
                "UO" => true,
                "OU" => false,
                _ => return Err(err("expected UO or OU")),
            },
        }),
        "R2ADD" if args.len() == 4 => Ok(Move::R2Add {
            tails_slot: num(args[0])? as usize,
            heads_slot: num(args[1])? as usize,
            sign: sign(args[2])?,
            reversed: match args[3] {
                "RE" => true,
                "AL" => false,
                _ => return Err(err("expected AL or RE")),
            },
        }),
        _ => Err(err("unknown move or wrong arity")),
    }
}

impl FromStr for MoveSequence {
    type Err = NotationError;

    /// Parses comma-separated terms like `FO(1,2), FU(2,4), R1(1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut moves = Vec::new();
        let mut term = String::new();
        let mut depth = 0usize;
        let mut index = 0usize;
        let mut flush = |term: &mut String, index: &mut usize| -> Result<(), NotationError> {
            let t = term.trim();
            if !t.is_empty() {
                moves.push(parse_term(*index, t)?);
                *index += 1;
            }
            term.clear();
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    term.push(ch);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    term.push(ch);
                }
                ',' if depth == 0 => flush(&mut term, &mut index)?,
                _ => term.push(ch),
            }
        }
        flush(&mut term, &mut index)?;
        Ok(MoveSequence(moves))
    }
}
