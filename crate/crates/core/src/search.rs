//! Certified unknotting search: finds move sequences reaching the empty
//! diagram and counts their forbidden moves.
//!
//! The search explores forbidden-move counts 0, 1, 2, … in order. Within a
//! level it computes the closure under the free moves (`R1`/`R2` removals
//! always; `R3` and the addition moves only when enabled, additions bounded
//! by the crossing ceiling), deduplicating states by canonical form; the
//! forbidden moves `FO`/`FU` generate the next level. The detour is never
//! chosen atomically, so reported costs are exact.
//!
//! Free moves are unlimited in principle but not finitely explorable, so
//! completeness is relative to the configured ceiling: exhaustion bounds
//! nothing, while every `Unknotted` outcome replays to the empty diagram
//! with the reported cost.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::bounds::{best_bounds, BoundItem, BoundReport};
use crate::diagram::GaussDiagram;
use crate::moves::{apply_move, apply_sequence, enumerate_moves, Move, MoveKind, MoveSequence};

pub use crate::moves::simplify;

/// Search budget and exploration limits.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of forbidden moves to spend.
    pub max_forbidden: u32,
    /// Maximum chords in intermediate diagrams; `None` means the initial
    /// chord count plus two. Only consulted when additions are enabled.
    pub crossing_ceiling: Option<usize>,
    /// Cap on the visited set.
    pub max_states: usize,
    /// Enables `R3` and the addition moves in the free closure.
    pub allow_additions: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_forbidden: 8,
            crossing_ceiling: None,
            max_states: 1_000_000,
            allow_additions: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    /// A certificate was found; replaying it yields the empty diagram with
    /// forbidden cost equal to `forbidden_used`.
    Unknotted(#[serde(serialize_with = "crate::search::serialize_sequence")] MoveSequence),
    /// Every state within the budget (and ceiling) was explored.
    ExhaustedBudget,
    /// The visited-set cap was hit first.
    ExhaustedStates,
}

pub(crate) fn serialize_sequence<S: serde::Serializer>(
    seq: &MoveSequence,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&seq.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub forbidden_used: u32,
    pub states_visited: usize,
}

struct Node {
    diagram: GaussDiagram,
    parent: Option<(String, Move)>,
}

struct Explorer {
    nodes: HashMap<String, Node>,
    free_kinds: Vec<MoveKind>,
    ceiling: usize,
    max_states: usize,
    allow_additions: bool,
    dedup: bool,
    serial: u64,
}

impl Explorer {
    fn key(&mut self, d: &GaussDiagram) -> String {
        if self.dedup {
            d.canonical_form()
        } else {
            // distinct key per insertion: revisits cost work, never correctness
            self.serial += 1;
            format!("{}#{}", d.canonical_form(), self.serial)
        }
    }

    fn free_moves(&self, d: &GaussDiagram) -> Vec<Move> {
        let mut moves = enumerate_moves(d, &self.free_kinds);
        if self.allow_additions && d.chord_count() < self.ceiling {
            moves.extend(enumerate_moves(d, &[MoveKind::R1Add, MoveKind::R2Add]));
        }
        moves
    }

    fn reconstruct(&self, key: &str) -> MoveSequence {
        let mut moves = Vec::new();
        let mut current = key.to_string();
        while let Some((parent, mv)) = self.nodes[&current].parent.clone() {
            moves.push(mv);
            current = parent;
        }
        moves.reverse();
        MoveSequence::new(moves)
    }
}

pub(crate) fn search_with_dedup(
    d: &GaussDiagram,
    cfg: &SearchConfig,
    dedup: bool,
) -> SearchOutcome {
    let ceiling = cfg
        .crossing_ceiling
        .unwrap_or(d.chord_count() + 2)
        .max(d.chord_count());
    let mut free_kinds = vec![MoveKind::R1Remove, MoveKind::R2Remove];
    if cfg.allow_additions {
        free_kinds.push(MoveKind::R3);
    }
    let mut ex = Explorer {
        nodes: HashMap::new(),
        free_kinds,
        ceiling,
        max_states: cfg.max_states,
        allow_additions: cfg.allow_additions,
        dedup,
        serial: 0,
    };

    let root_key = ex.key(d);
    ex.nodes.insert(
        root_key.clone(),
        Node {
            diagram: d.clone(),
            parent: None,
        },
    );
    let mut frontier = vec![root_key];

    for level in 0..=cfg.max_forbidden {
        // closure under free moves, breadth-first
        let mut queue: VecDeque<String> = frontier.iter().cloned().collect();
        let mut level_states: Vec<String> = frontier.clone();
        while let Some(key) = queue.pop_front() {
            if ex.nodes[&key].diagram.is_empty() {
                let seq = ex.reconstruct(&key);
                return SearchOutcome {
                    status: SearchStatus::Unknotted(seq),
                    forbidden_used: level,
                    states_visited: ex.nodes.len(),
                };
            }
            let diagram = ex.nodes[&key].diagram.clone();
            for mv in ex.free_moves(&diagram) {
                let child = apply_move(&diagram, &mv).expect("enumerated move applies");
                let child_key = ex.key(&child);
                if let Entry::Vacant(slot) = ex.nodes.entry(child_key.clone()) {
                    slot.insert(Node {
                        diagram: child,
                        parent: Some((key.clone(), mv)),
                    });
                    queue.push_back(child_key.clone());
                    level_states.push(child_key);
                }
            }
            if ex.nodes.len() > ex.max_states {
                return SearchOutcome {
                    status: SearchStatus::ExhaustedStates,
                    forbidden_used: level,
                    states_visited: ex.nodes.len(),
                };
            }
        }
        if level == cfg.max_forbidden {
            break;
        }
        // forbidden moves generate the next level
        let mut next = Vec::new();
        for key in &level_states {
            let diagram = ex.nodes[key].diagram.clone();
            for mv in enumerate_moves(&diagram, &[MoveKind::Fo, MoveKind::Fu]) {
                let child = apply_move(&diagram, &mv).expect("enumerated move applies");
                let child_key = ex.key(&child);
                if let Entry::Vacant(slot) = ex.nodes.entry(child_key.clone()) {
                    slot.insert(Node {
                        diagram: child,
                        parent: Some((key.clone(), mv)),
                    });
                    next.push(child_key);
                }
            }
            if ex.nodes.len() > ex.max_states {
                return SearchOutcome {
                    status: SearchStatus::ExhaustedStates,
                    forbidden_used: level,
                    states_visited: ex.nodes.len(),
                };
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    SearchOutcome {
        status: SearchStatus::ExhaustedBudget,
        forbidden_used: cfg.max_forbidden,
        states_visited: ex.nodes.len(),
    }
}

/// Explores forbidden-move counts `0..=max_forbidden` and returns the first
/// certificate whose replay ends at the empty diagram. Exhaustion is a
/// status, not an error, and is always relative to the crossing ceiling.
pub fn unknotting_search(d: &GaussDiagram, cfg: &SearchConfig) -> SearchOutcome {
    search_with_dedup(d, cfg, true)
}

/// Runs the search with canonical-form deduplication disabled; revisits
/// change the work done but never the found cost.
#[doc(hidden)]
pub fn search_without_dedup_for_tests(d: &GaussDiagram, cfg: &SearchConfig) -> SearchOutcome {
    search_with_dedup(d, cfg, false)
}

/// Replay report for a notated sequence.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    /// True iff every move applied and the final diagram is empty.
    pub valid_unknotting: bool,
    /// Forbidden moves consumed by the prefix that applied.
    pub forbidden_cost: u32,
    /// The final diagram reached (the last valid state on failure).
    #[serde(serialize_with = "serialize_diagram")]
    pub final_diagram: GaussDiagram,
    /// Index of the first inapplicable move, if any.
    pub failed_at: Option<usize>,
}

fn serialize_diagram<S: serde::Serializer>(d: &GaussDiagram, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&d.serialize(0))
}

/// Replays `seq` against `d` without mutating it.
pub fn verify_sequence(d: &GaussDiagram, seq: &MoveSequence) -> VerifyOutcome {
    match apply_sequence(d, seq) {
        Ok((final_diagram, forbidden_cost)) => VerifyOutcome {
            valid_unknotting: final_diagram.is_empty(),
            forbidden_cost,
            final_diagram,
            failed_at: None,
        },
        Err(err) => {
            let prefix = MoveSequence::new(seq.moves()[..err.index].to_vec());
            let (final_diagram, forbidden_cost) =
                apply_sequence(d, &prefix).expect("prefix replays");
            VerifyOutcome {
                valid_unknotting: false,
                forbidden_cost,
                final_diagram,
                failed_at: Some(err.index),
            }
        }
    }
}

/// Runs [`best_bounds`], then searches with budget equal to the upper bound.
/// A certificate matching the lower bound pins the forbidden number exactly;
/// otherwise a cheaper certificate tightens the upper bound.
pub fn certify_forbidden_number(d: &GaussDiagram, cfg: &SearchConfig) -> BoundReport {
    let mut report = best_bounds(d);
    if report.exact == Some(0) {
        return report;
    }
    let search_cfg = SearchConfig {
        max_forbidden: report.upper as u32,
        ..cfg.clone()
    };
    let outcome = unknotting_search(d, &search_cfg);
    if let SearchStatus::Unknotted(seq) = outcome.status {
        let cost = u64::from(seq.forbidden_cost());
        report.upper_items.push(BoundItem {
            name: "search-certificate".to_string(),
            value: cost,
            diagram_relative: false,
        });
        if cost <= report.lower {
            report.lower = cost;
            report.upper = cost;
            report.exact = Some(cost);
        } else if cost < report.upper {
            report.upper = cost;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::trefoil_ring;

    fn d(code: &str) -> GaussDiagram {
        GaussDiagram::parse(code).unwrap()
    }

    fn cfg(budget: u32) -> SearchConfig {
        SearchConfig {
            max_forbidden: budget,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn empty_diagram_unknots_for_free() {
        let out = unknotting_search(&d(""), &cfg(0));
        match out.status {
            SearchStatus::Unknotted(seq) => {
                assert!(seq.is_empty());
                assert_eq!(out.forbidden_used, 0);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn virtual_trefoil_unknots_with_one_forbidden_move() {
        let t = d("O1+O2+U1+U2+");
        let out = unknotting_search(&t, &cfg(1));
        match out.status {
            SearchStatus::Unknotted(seq) => {
                assert_eq!(seq.forbidden_cost(), 1);
                let (fin, cost) = apply_sequence(&t, &seq).unwrap();
                assert!(fin.is_empty());
                assert_eq!(cost, 1);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        // budget 0 cannot reach the unknot
        assert_eq!(
            unknotting_search(&t, &cfg(0)).status,
            SearchStatus::ExhaustedBudget
        );
    }

    #[test]
    fn trefoil_ring_two_needs_two() {
        let r2 = trefoil_ring(2).unwrap();
        assert_eq!(
            unknotting_search(&r2, &cfg(1)).status,
            SearchStatus::ExhaustedBudget
        );
        let out = unknotting_search(&r2, &cfg(2));
        match out.status {
            SearchStatus::Unknotted(seq) => assert_eq!(seq.forbidden_cost(), 2),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn state_cap_reports_exhaustion() {
        let r2 = trefoil_ring(2).unwrap();
        let out = unknotting_search(
            &r2,
            &SearchConfig {
                max_forbidden: 2,
                max_states: 3,
                ..SearchConfig::default()
            },
        );
        assert_eq!(out.status, SearchStatus::ExhaustedStates);
    }

    #[test]
    fn verify_sequence_reports_failures() {
        let t = d("O1+O2+U1+U2+");
        let ok: MoveSequence = "FU(1,2), R1(2), R1(1)".parse().unwrap();
        let v = verify_sequence(&t, &ok);
        assert!(v.valid_unknotting);
        assert_eq!(v.forbidden_cost, 1);

        let empty = verify_sequence(&t, &MoveSequence::default());
        assert!(!empty.valid_unknotting);
        assert_eq!(empty.forbidden_cost, 0);

        // R2 needs opposite signs, so the second move cannot apply
        let bad: MoveSequence = "FU(1,2), R2(1,2)".parse().unwrap();
        let v = verify_sequence(&t, &bad);
        assert!(!v.valid_unknotting);
        assert_eq!(v.failed_at, Some(1));
        assert_eq!(v.forbidden_cost, 1);
    }

    #[test]
    fn certify_virtual_trefoil() {
        let r = certify_forbidden_number(&d("O1+O2+U1+U2+"), &SearchConfig::default());
        assert_eq!(r.exact, Some(1));
    }

    #[test]
    fn certify_unknot() {
        let r = certify_forbidden_number(&d(""), &SearchConfig::default());
        assert_eq!(r.exact, Some(0));
    }

    #[test]
    fn dedup_changes_work_not_answers() {
        for code in ["O1+O2+U1+U2+", "O1+U1+O2+U2+"] {
            let k = d(code);
            let with = search_with_dedup(&k, &cfg(2), true);
            let without = search_with_dedup(&k, &cfg(2), false);
            let cost = |o: &SearchOutcome| match &o.status {
                SearchStatus::Unknotted(s) => Some(s.forbidden_cost()),
                _ => None,
            };
            assert_eq!(cost(&with), cost(&without), "{code}");
        }
    }

    #[test]
    fn additions_do_not_change_small_certificates() {
        let t = d("O1+O2+U1+U2+");
        let out = unknotting_search(
            &t,
            &SearchConfig {
                max_forbidden: 1,
                allow_additions: true,
                max_states: 50_000,
                ..SearchConfig::default()
            },
        );
        match out.status {
            SearchStatus::Unknotted(seq) => assert_eq!(seq.forbidden_cost(), 1),
            other => panic!("{other:?}"),
        }
    }
}
