//! Gauss diagrams as immutable values: signed Gauss code parsing and
//! serialization, and the structural queries the rest of the crate builds on.
//!
//! A diagram with `n` chords is a cyclic sequence of `2n` endpoints. Each
//! chord occurs exactly twice: once as a [`Role::Tail`] (the over-passage)
//! and once as a [`Role::Head`] (the under-passage), and carries a sign.
//! The empty diagram is the unknot.
//!
//! The text interchange format is the signed Gauss code: `2n` tokens
//! `(O|U)<label>(+|-)`, read from an arbitrary basepoint. `O` marks the tail
//! and `U` the head of the labelled chord.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Chord label. Labels are arbitrary positive integers on input; all
/// algorithms are label-agnostic.
pub type ChordId = u32;

/// Crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Endpoint role: `Head` is the under-crossing passage (`U` token), `Tail`
/// the over-crossing passage (`O` token). Arrows point tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Role {
    Head,
    Tail,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Role::Head => 'U',
            Role::Tail => 'O',
        }
    }
}

/// One chord passage on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

/// Chord parity: `Odd` iff an odd number of endpoints lie strictly between
/// the chord's two endpoints (both arcs have the same parity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed token at byte {offset}")]
    MalformedToken { offset: usize },
    #[error("label {label} appears {count} times, expected exactly 2")]
    LabelCount { label: ChordId, count: usize },
    #[error("label {label} appears twice with the same role")]
    DuplicateRole { label: ChordId },
    #[error("label {label} carries conflicting signs")]
    SignConflict { label: ChordId },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("chord {0} does not occur exactly once as head and once as tail")]
    BadChordOccurrence(ChordId),
    #[error("chord {0} has no sign entry")]
    MissingSign(ChordId),
    #[error("sign map names chord {0} absent from the endpoint sequence")]
    ExtraSign(ChordId),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
}

/// An immutable Gauss diagram: the universal representation of a virtual
/// knot. All operations are pure and return new values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
    signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    /// The empty diagram, the unique data-level representation of the unknot.
    pub fn empty() -> Self {
        GaussDiagram {
            endpoints: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    /// Builds a diagram from raw parts, checking every structural invariant.
    pub fn from_parts(
        endpoints: Vec<Endpoint>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<ChordId, (usize, usize)> = BTreeMap::new();
        for e in &endpoints {
            let entry = seen.entry(e.chord).or_insert((0, 0));
            match e.role {
                Role::Tail => entry.0 += 1,
                Role::Head => entry.1 += 1,
            }
        }
        for (&chord, &(tails, heads)) in &seen {
            if tails != 1 || heads != 1 {
                return Err(DiagramError::BadChordOccurrence(chord));
            }
            if !signs.contains_key(&chord) {
                return Err(DiagramError::MissingSign(chord));
            }
        }
        for &chord in signs.keys() {
            if !seen.contains_key(&chord) {
                return Err(DiagramError::ExtraSign(chord));
            }
        }
        Ok(GaussDiagram { endpoints, signs })
    }

    /// Parses a signed Gauss code. `O` maps to `Tail`, `U` to `Head`; the
    /// endpoint sequence follows token order.
    pub fn parse(code: &str) -> Result<Self, ParseError> {
        let bytes = code.as_bytes();
        let mut endpoints = Vec::new();
        let mut signs: BTreeMap<ChordId, Sign> = BTreeMap::new();
        let mut counts: BTreeMap<ChordId, (usize, usize)> = BTreeMap::new();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let role = match bytes[i] {
                b'O' => Role::Tail,
                b'U' => Role::Head,
                _ => return Err(ParseError::MalformedToken { offset: start }),
            };
            i += 1;
            let digit_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == digit_start {
                return Err(ParseError::MalformedToken { offset: start });
            }
            let label: ChordId = code[digit_start..i]
                .parse()
                .map_err(|_| ParseError::MalformedToken { offset: start })?;
            if label == 0 {
                return Err(ParseError::MalformedToken { offset: start });
            }
            if i >= bytes.len() {
                return Err(ParseError::MalformedToken { offset: start });
            }
            let sign = match bytes[i] {
                b'+' => Sign::Plus,
                b'-' => Sign::Minus,
                _ => return Err(ParseError::MalformedToken { offset: start }),
            };
            i += 1;
            if let Some(&prev) = signs.get(&label) {
                if prev != sign {
                    return Err(ParseError::SignConflict { label });
                }
            } else {
                signs.insert(label, sign);
            }
            let entry = counts.entry(label).or_insert((0, 0));
            match role {
                Role::Tail => entry.0 += 1,
                Role::Head => entry.1 += 1,
            }
            endpoints.push(Endpoint { chord: label, role });
        }
        for (&label, &(tails, heads)) in &counts {
            if tails + heads != 2 {
                return Err(ParseError::LabelCount {
                    label,
                    count: tails + heads,
                });
            }
            if tails != 1 {
                return Err(ParseError::DuplicateRole { label });
            }
        }
        Ok(GaussDiagram { endpoints, signs })
    }

    /// Number of chords.
    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    /// Endpoint sequence in cyclic order.
    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    /// Chord ids in increasing order.
    pub fn chord_ids(&self) -> impl Iterator<Item = ChordId> + '_ {
        self.signs.keys().copied()
    }

    pub fn sign(&self, chord: ChordId) -> Option<Sign> {
        self.signs.get(&chord).copied()
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    pub fn contains_chord(&self, chord: ChordId) -> bool {
        self.signs.contains_key(&chord)
    }

    /// `(tail position, head position)` of a chord.
    pub fn chord_positions(&self, chord: ChordId) -> Option<(usize, usize)> {
        let mut tail = None;
        let mut head = None;
        for (i, e) in self.endpoints.iter().enumerate() {
            if e.chord == chord {
                match e.role {
                    Role::Tail => tail = Some(i),
                    Role::Head => head = Some(i),
                }
            }
        }
        Some((tail?, head?))
    }

    /// Serializes from the given basepoint without relabeling. The basepoint
    /// is reduced modulo the endpoint count.
    pub fn serialize(&self, basepoint: usize) -> String {
        let n2 = self.endpoints.len();
        if n2 == 0 {
            return String::new();
        }
        let b = basepoint % n2;
        let mut out = String::new();
        for k in 0..n2 {
            let e = &self.endpoints[(b + k) % n2];
            out.push(e.role.symbol());
            out.push_str(&e.chord.to_string());
            out.push(self.signs[&e.chord].symbol());
        }
        out
    }

    /// Lexicographically least serialization over all basepoints, with chord
    /// labels renumbered `1..n` in order of first appearance. Constant on the
    /// orbit of a diagram under rotation and relabeling; reflections are not
    /// quotiented.
    pub fn canonical_form(&self) -> String {
        let n2 = self.endpoints.len();
        if n2 == 0 {
            return String::new();
        }
        let mut best: Option<String> = None;
        for rot in 0..n2 {
            let mut renumber: BTreeMap<ChordId, ChordId> = BTreeMap::new();
            let mut next: ChordId = 1;
            let mut out = String::new();
            for k in 0..n2 {
                let e = &self.endpoints[(rot + k) % n2];
                let label = *renumber.entry(e.chord).or_insert_with(|| {
                    let l = next;
                    next += 1;
                    l
                });
                out.push(e.role.symbol());
                out.push_str(&label.to_string());
                out.push(self.signs[&e.chord].symbol());
            }
            if best.as_ref().is_none_or(|b| out < *b) {
                best = Some(out);
            }
        }
        best.unwrap()
    }

    /// Parity of a chord: `Odd` iff the endpoint count strictly between its
    /// two endpoints is odd.
    pub fn parity(&self, chord: ChordId) -> Result<Parity, DiagramError> {
        let (tail, head) = self
            .chord_positions(chord)
            .ok_or(DiagramError::UnknownChord(chord))?;
        let (lo, hi) = if tail < head {
            (tail, head)
        } else {
            (head, tail)
        };
        if (hi - lo - 1) % 2 == 1 {
            Ok(Parity::Odd)
        } else {
            Ok(Parity::Even)
        }
    }

    /// Mirror image: every chord's head/tail roles are exchanged and every
    /// sign is negated (the crossing-switch convention).
    pub fn mirror(&self) -> GaussDiagram {
        GaussDiagram {
            endpoints: self
                .endpoints
                .iter()
                .map(|e| Endpoint {
                    chord: e.chord,
                    role: e.role.flip(),
                })
                .collect(),
            signs: self.signs.iter().map(|(&c, &s)| (c, s.flip())).collect(),
        }
    }

    /// Inverse: the circle traversed in the opposite direction. Roles and
    /// signs are unchanged.
    pub fn inverse(&self) -> GaussDiagram {
        GaussDiagram {
            endpoints: self.endpoints.iter().rev().copied().collect(),
            signs: self.signs.clone(),
        }
    }

    /// True iff every pair of chords interleaves around the circle.
    /// Vacuously true for fewer than two chords.
    pub fn is_complete(&self) -> bool {
        let ids: Vec<ChordId> = self.chord_ids().collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if !self.interleave(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the endpoints of the two chords alternate around the circle.
    pub fn interleave(&self, a: ChordId, b: ChordId) -> bool {
        let (ta, ha) = match self.chord_positions(a) {
            Some(p) => p,
            None => return false,
        };
        let (tb, hb) = match self.chord_positions(b) {
            Some(p) => p,
            None => return false,
        };
        let (lo, hi) = if ta < ha { (ta, ha) } else { (ha, ta) };
        let inside = (lo < tb && tb < hi) as u8 + (lo < hb && hb < hi) as u8;
        inside == 1
    }

    /// Length of the longest cyclic run of consecutive head endpoints.
    pub fn longest_head_run(&self) -> usize {
        let n2 = self.endpoints.len();
        if n2 == 0 {
            return 0;
        }
        // every chord has a tail, so a full-circle head run is impossible
        let mut best = 0;
        let mut run = 0;
        for k in 0..2 * n2 {
            if self.endpoints[k % n2].role == Role::Head {
                run += 1;
                best = best.max(run.min(n2));
            } else {
                run = 0;
            }
        }
        best
    }

    /// Largest chord label present, 0 for the empty diagram. New chords
    /// created by addition moves are labelled above this.
    pub fn max_chord_id(&self) -> ChordId {
        self.signs.keys().next_back().copied().unwrap_or(0)
    }

    pub(crate) fn endpoints_mut(&mut self) -> &mut Vec<Endpoint> {
        &mut self.endpoints
    }

    pub(crate) fn signs_mut(&mut self) -> &mut BTreeMap<ChordId, Sign> {
        &mut self.signs
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize(0))
    }
}

impl FromStr for GaussDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussDiagram::parse(s)
    }
}
