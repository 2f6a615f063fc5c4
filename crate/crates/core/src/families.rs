//! Generators for the knot families whose forbidden numbers have closed-form
//! bounds: `(p,2)`-torus knots in minimal and 2-bridge presentations, twist
//! knots and their virtualized variants, rings of virtual trefoils, and the
//! complete diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bounds;
use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};

/// Ceiling for [`enumerate_complete`]; the state space grows superexponentially.
pub const COMPLETE_ENUM_CEILING: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter p = {0} must be odd and at least 3")]
    BadTorusParameter(u64),
    #[error("parameter n = {0} must be at least 1")]
    BadParameter(u64),
    #[error("complete enumeration is limited to {max} chords, got {c}")]
    AboveCeiling { c: usize, max: usize },
    #[error("unrecognized family spec {0:?}")]
    BadSpec(String),
}

/// A named family instance, parsed from specs like `torus2-min:5`,
/// `torus2-bridge:5`, `twist:3`, `vtwist:4`, `ring:2`, `complete:5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Torus2Minimal { p: u64 },
    Torus2Bridge { p: u64 },
    Twist { n: u64 },
    VirtualTwist { n: u64 },
    TrefoilRing { n: u64 },
    CompleteEnum { c: usize },
}

impl FamilySpec {
    /// The diagrams of this family instance: a single diagram for the
    /// parametric families, the full enumeration for `complete:c`.
    pub fn diagrams(&self) -> Result<Vec<GaussDiagram>, FamilyError> {
        match *self {
            FamilySpec::Torus2Minimal { p } => Ok(vec![torus2_minimal(p)?]),
            FamilySpec::Torus2Bridge { p } => Ok(vec![torus2_bridge(p)?]),
            FamilySpec::Twist { n } => Ok(vec![twist_knot(n)?]),
            FamilySpec::VirtualTwist { n } => Ok(vec![virtual_twist_knot(n)?]),
            FamilySpec::TrefoilRing { n } => Ok(vec![trefoil_ring(n)?]),
            FamilySpec::CompleteEnum { c } => enumerate_complete(c, false),
        }
    }

    /// Knot-level upper bounds contributed by family membership.
    pub fn upper_bounds(&self) -> Vec<(String, u64)> {
        match *self {
            FamilySpec::Torus2Minimal { p } | FamilySpec::Torus2Bridge { p } => {
                let mut out = Vec::new();
                if let Ok(v) = bounds::torus2_upper_bound(p) {
                    out.push(("torus2-2bridge".to_string(), v));
                }
                if let Ok(v) = bounds::torus2_minimal_diagram_bound(p) {
                    out.push(("torus2-minimal-diagram".to_string(), v));
                }
                out
            }
            FamilySpec::Twist { n } => bounds::twist_upper_bound(n)
                .map(|v| vec![("twist-knot".to_string(), v)])
                .unwrap_or_default(),
            FamilySpec::VirtualTwist { n } => bounds::virtual_twist_bounds(n)
                .map(|(_, u)| vec![("virtual-twist".to_string(), u)])
                .unwrap_or_default(),
            FamilySpec::TrefoilRing { n } => vec![("trefoil-ring".to_string(), n)],
            FamilySpec::CompleteEnum { .. } => Vec::new(),
        }
    }

    /// Knot-level lower bound contributed by family membership, if any.
    pub fn lower_bound(&self) -> Option<(String, u64)> {
        match *self {
            FamilySpec::VirtualTwist { n } => bounds::virtual_twist_bounds(n)
                .ok()
                .map(|(l, _)| ("virtual-twist".to_string(), l)),
            FamilySpec::TrefoilRing { n } => Some(("trefoil-ring".to_string(), n)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Torus2Minimal { p } => write!(f, "torus2-min:{p}"),
            FamilySpec::Torus2Bridge { p } => write!(f, "torus2-bridge:{p}"),
            FamilySpec::Twist { n } => write!(f, "twist:{n}"),
            FamilySpec::VirtualTwist { n } => write!(f, "vtwist:{n}"),
            FamilySpec::TrefoilRing { n } => write!(f, "ring:{n}"),
            FamilySpec::CompleteEnum { c } => write!(f, "complete:{c}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::BadSpec(s.to_string());
        let (name, param) = s.split_once(':').ok_or_else(bad)?;
        let value: u64 = param.parse().map_err(|_| bad())?;
        match name {
            "torus2-min" => Ok(FamilySpec::Torus2Minimal { p: value }),
            "torus2-bridge" => Ok(FamilySpec::Torus2Bridge { p: value }),
            "twist" => Ok(FamilySpec::Twist { n: value }),
            "vtwist" => Ok(FamilySpec::VirtualTwist { n: value }),
            "ring" => Ok(FamilySpec::TrefoilRing { n: value }),
            "complete" => Ok(FamilySpec::CompleteEnum { c: value as usize }),
            _ => Err(bad()),
        }
    }
}

fn check_odd_p(p: u64) -> Result<(), FamilyError> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(FamilyError::BadTorusParameter(p));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<(), FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParameter(n));
    }
    Ok(())
}

fn build(endpoints: Vec<Endpoint>, signs: BTreeMap<ChordId, Sign>) -> GaussDiagram {
    GaussDiagram::from_parts(endpoints, signs).expect("generator produced a valid diagram")
}

/// Minimal diagram of the `(p,2)`-torus knot: `p` positive chords with heads
/// and tails alternating around the circle. Complete, head run 1, all
/// chords even.
pub fn torus2_minimal(p: u64) -> Result<GaussDiagram, FamilyError> {
    check_odd_p(p)?;
    let p = p as usize;
    let mut endpoints = vec![
        Endpoint {
            chord: 0,
            role: Role::Tail,
        };
        2 * p
    ];
    for i in 0..p {
        let chord = (i + 1) as ChordId;
        endpoints[2 * i] = Endpoint {
            chord,
            role: Role::Tail,
        };
        endpoints[(2 * i + p) % (2 * p)] = Endpoint {
            chord,
            role: Role::Head,
        };
    }
    let signs = (1..=p as ChordId).map(|c| (c, Sign::Plus)).collect();
    Ok(build(endpoints, signs))
}

/// 2-bridge presentation of the `(p,2)`-torus knot with `2(p−1)` crossings:
/// one overpass carries chords `1..p−1`, the other `p..2(p−1)`, and the two
/// underpasses weave so that each even chord `2k` is isolated by `2k`
/// forbidden moves. All signs positive, all chords even.
pub fn torus2_bridge(p: u64) -> Result<GaussDiagram, FamilyError> {
    check_odd_p(p)?;
    let p = p as u32;
    let m = p - 1;
    let mut endpoints = Vec::with_capacity(4 * m as usize);
    let tail = |chord| Endpoint {
        chord,
        role: Role::Tail,
    };
    let head = |chord| Endpoint {
        chord,
        role: Role::Head,
    };
    for c in 1..=m {
        endpoints.push(tail(c));
    }
    // first underpass: bridge-2 evens descending interleaved with bridge-1 odds descending
    let b2_evens: Vec<ChordId> = (p + 1..=2 * m).rev().step_by(2).collect();
    let b1_odds: Vec<ChordId> = (1..=p - 2).rev().step_by(2).collect();
    for i in 0..m as usize {
        let c = if i % 2 == 0 {
            b2_evens[i / 2]
        } else {
            b1_odds[i / 2]
        };
        endpoints.push(head(c));
    }
    for c in p..=2 * m {
        endpoints.push(tail(c));
    }
    // second underpass: bridge-1 evens descending interleaved with bridge-2 odds descending
    let b1_evens: Vec<ChordId> = (2..=m).rev().step_by(2).collect();
    let b2_odds: Vec<ChordId> = (p..=2 * m - 1).rev().step_by(2).collect();
    for i in 0..m as usize {
        let c = if i % 2 == 0 {
            b1_evens[i / 2]
        } else {
            b2_odds[i / 2]
        };
        endpoints.push(head(c));
    }
    let signs = (1..=2 * m).map(|c| (c, Sign::Plus)).collect();
    Ok(build(endpoints, signs))
}

fn twist_endpoints(n: u64) -> (Vec<Endpoint>, BTreeMap<ChordId, Sign>) {
    let n = n as u32;
    let ep = |chord, role| Endpoint { chord, role };
    let mut endpoints = Vec::with_capacity(2 * (n as usize + 2));
    // up through the twist region
    for i in 1..=n {
        endpoints.push(ep(i, if i % 2 == 1 { Role::Tail } else { Role::Head }));
    }
    // first clasp passage
    if n % 2 == 1 {
        endpoints.push(ep(n + 1, Role::Head));
        endpoints.push(ep(n + 2, Role::Tail));
    } else {
        endpoints.push(ep(n + 1, Role::Tail));
        endpoints.push(ep(n + 2, Role::Head));
    }
    // back down the twist region
    for i in (1..=n).rev() {
        endpoints.push(ep(i, if i % 2 == 1 { Role::Head } else { Role::Tail }));
    }
    // second clasp passage
    if n % 2 == 1 {
        endpoints.push(ep(n + 1, Role::Tail));
        endpoints.push(ep(n + 2, Role::Head));
    } else {
        endpoints.push(ep(n + 2, Role::Tail));
        endpoints.push(ep(n + 1, Role::Head));
    }
    let clasp_sign = if n % 2 == 1 { Sign::Plus } else { Sign::Minus };
    let mut signs: BTreeMap<ChordId, Sign> = (1..=n).map(|c| (c, Sign::Plus)).collect();
    signs.insert(n + 1, clasp_sign);
    signs.insert(n + 2, clasp_sign);
    (endpoints, signs)
}

/// The twist knot `T_n`: `n` half-twist chords plus two clasp chords, in the
/// standard alternating presentation (`T_1` is the trefoil, `T_2` the
/// figure-eight). Classical, so every chord is even.
pub fn twist_knot(n: u64) -> Result<GaussDiagram, FamilyError> {
    check_n(n)?;
    let (endpoints, signs) = twist_endpoints(n);
    Ok(build(endpoints, signs))
}

/// `VT_n`: the twist knot with the top clasp crossing made virtual, i.e.
/// that chord deleted. Odd writhe `n + 1` for odd `n`, `n` for even `n`.
pub fn virtual_twist_knot(n: u64) -> Result<GaussDiagram, FamilyError> {
    check_n(n)?;
    let (endpoints, mut signs) = twist_endpoints(n);
    let dropped = n as u32 + 2;
    signs.remove(&dropped);
    let endpoints = endpoints
        .into_iter()
        .filter(|e| e.chord != dropped)
        .collect();
    Ok(build(endpoints, signs))
}

/// A ring of `n` virtual trefoils: blocks `O(2k−1) O(2k) U(2k−1) U(2k)`,
/// all signs positive. Every chord is odd, so the odd writhe is `2n`.
pub fn trefoil_ring(n: u64) -> Result<GaussDiagram, FamilyError> {
    check_n(n)?;
    let n = n as u32;
    let ep = |chord, role| Endpoint { chord, role };
    let mut endpoints = Vec::with_capacity(4 * n as usize);
    for k in 1..=n {
        let (a, b) = (2 * k - 1, 2 * k);
        endpoints.push(ep(a, Role::Tail));
        endpoints.push(ep(b, Role::Tail));
        endpoints.push(ep(a, Role::Head));
        endpoints.push(ep(b, Role::Head));
    }
    let signs = (1..=2 * n).map(|c| (c, Sign::Plus)).collect();
    Ok(build(endpoints, signs))
}

/// All complete diagrams with `c` chords up to rotation and relabeling,
/// in canonical-form order. Signs are all positive unless `enumerate_signs`
/// is set, in which case every sign assignment is enumerated too.
pub fn enumerate_complete(
    c: usize,
    enumerate_signs: bool,
) -> Result<Vec<GaussDiagram>, FamilyError> {
    if c < 1 {
        return Err(FamilyError::BadParameter(c as u64));
    }
    if c > COMPLETE_ENUM_CEILING {
        return Err(FamilyError::AboveCeiling {
            c,
            max: COMPLETE_ENUM_CEILING,
        });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(c);
    let mut used = vec![false; 2 * c];
    let mut out: BTreeMap<String, GaussDiagram> = BTreeMap::new();
    enumerate_pairings(c, &mut pairs, &mut used, enumerate_signs, &mut out);
    Ok(out.into_values().collect())
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    ((lo < b.0 && b.0 < hi) as u8 + (lo < b.1 && b.1 < hi) as u8) == 1
}

fn enumerate_pairings(
    c: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
    enumerate_signs: bool,
    out: &mut BTreeMap<String, GaussDiagram>,
) {
    if pairs.len() == c {
        emit_role_assignments(c, pairs, enumerate_signs, out);
        return;
    }
    let p = (0..2 * c).find(|&i| !used[i]).unwrap();
    used[p] = true;
    for q in p + 1..2 * c {
        if used[q] {
            continue;
        }
        if !pairs.iter().all(|&prev| interleaved(prev, (p, q))) {
            continue;
        }
        used[q] = true;
        pairs.push((p, q));
        enumerate_pairings(c, pairs, used, enumerate_signs, out);
        pairs.pop();
        used[q] = false;
    }
    used[p] = false;
}

fn emit_role_assignments(
    c: usize,
    pairs: &[(usize, usize)],
    enumerate_signs: bool,
    out: &mut BTreeMap<String, GaussDiagram>,
) {
    let sign_masks = if enumerate_signs { 1u32 << c } else { 1 };
    for role_mask in 0u32..(1 << c) {
        for sign_mask in 0..sign_masks {
            let mut endpoints = vec![
                Endpoint {
                    chord: 0,
                    role: Role::Tail,
                };
                2 * c
            ];
            let mut signs = BTreeMap::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let chord = (i + 1) as ChordId;
                let (tail_pos, head_pos) = if role_mask >> i & 1 == 0 {
                    (a, b)
                } else {
                    (b, a)
                };
                endpoints[tail_pos] = Endpoint {
                    chord,
                    role: Role::Tail,
                };
                endpoints[head_pos] = Endpoint {
                    chord,
                    role: Role::Head,
                };
                let sign = if sign_mask >> i & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                signs.insert(chord, sign);
            }
            let d = build(endpoints, signs);
            debug_assert!(d.is_complete());
            out.entry(d.canonical_form()).or_insert(d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Parity;
    use crate::invariants::{odd_writhe, odd_writhe_polynomial};

    #[test]
    fn torus2_minimal_structure() {
        let t3 = torus2_minimal(3).unwrap();
        assert_eq!(t3.chord_count(), 3);
        assert_eq!(odd_writhe(&t3), 0);
        for p in (3..=15).step_by(2) {
            let t = torus2_minimal(p).unwrap();
            assert!(t.is_complete(), "p = {p}");
            assert_eq!(t.longest_head_run(), 1, "p = {p}");
            assert!(t.chord_ids().all(|c| t.parity(c) == Ok(Parity::Even)));
            assert!(odd_writhe_polynomial(&t).is_zero());
        }
        assert!(torus2_minimal(4).is_err());
        assert!(torus2_minimal(1).is_err());
    }

    #[test]
    fn torus2_bridge_structure() {
        let b5 = torus2_bridge(5).unwrap();
        assert_eq!(b5.chord_count(), 8);
        assert_eq!(
            b5.serialize(0),
            "O1+O2+O3+O4+U8+U3+U6+U1+O5+O6+O7+O8+U4+U7+U2+U5+"
        );
        for p in (3..=11).step_by(2) {
            let b = torus2_bridge(p).unwrap();
            assert_eq!(b.chord_count() as u64, 2 * (p - 1));
            assert_eq!(odd_writhe(&b), 0, "p = {p}");
            assert!(b.chord_ids().all(|c| b.parity(c) == Ok(Parity::Even)));
        }
        assert!(torus2_bridge(2).is_err());
    }

    #[test]
    fn twist_knot_structure() {
        let fig8 = twist_knot(2).unwrap();
        assert_eq!(fig8.serialize(0), "O1+U2+O3-U4-O2+U1+O4-U3-");
        assert_eq!(odd_writhe(&fig8), 0);
        let trefoil = twist_knot(1).unwrap();
        assert_eq!(trefoil.chord_count(), 3);
        for n in 1..=12 {
            let t = twist_knot(n).unwrap();
            assert!(
                t.chord_ids().all(|c| t.parity(c) == Ok(Parity::Even)),
                "n = {n}"
            );
        }
        assert!(twist_knot(0).is_err());
    }

    #[test]
    fn virtual_twist_odd_writhe() {
        for n in 1..=12u64 {
            let v = virtual_twist_knot(n).unwrap();
            let want = if n % 2 == 1 { n + 1 } else { n } as i64;
            assert_eq!(odd_writhe(&v), want, "n = {n}");
        }
        // VT_1 is the virtual trefoil
        assert_eq!(
            virtual_twist_knot(1).unwrap().canonical_form(),
            GaussDiagram::parse("O1+O2+U1+U2+")
                .unwrap()
                .canonical_form()
        );
    }

    #[test]
    fn trefoil_ring_structure() {
        let r1 = trefoil_ring(1).unwrap();
        assert_eq!(r1.serialize(0), "O1+O2+U1+U2+");
        for n in 1..=20u64 {
            let r = trefoil_ring(n).unwrap();
            assert_eq!(odd_writhe(&r), 2 * n as i64, "n = {n}");
            assert!(r.chord_ids().all(|c| r.parity(c) == Ok(Parity::Odd)));
        }
        assert!(trefoil_ring(0).is_err());
    }

    #[test]
    fn complete_enumeration_small_counts() {
        assert_eq!(enumerate_complete(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_complete(2, false).unwrap().len(), 1);
        assert_eq!(enumerate_complete(3, false).unwrap().len(), 2);
        let five = enumerate_complete(5, false).unwrap();
        let torus = torus2_minimal(5).unwrap().canonical_form();
        assert!(five.iter().any(|d| d.canonical_form() == torus));
        for d in &five {
            assert!(d.is_complete());
        }
        // pairwise distinct canonical forms
        let mut forms: Vec<_> = five.iter().map(|d| d.canonical_form()).collect();
        forms.dedup();
        assert_eq!(forms.len(), five.len());
        assert!(enumerate_complete(0, false).is_err());
        assert!(enumerate_complete(8, false).is_err());
    }

    #[test]
    fn family_spec_round_trip() {
        for s in [
            "torus2-min:5",
            "torus2-bridge:7",
            "twist:3",
            "vtwist:4",
            "ring:2",
            "complete:5",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert!(!spec.diagrams().unwrap().is_empty());
        }
        assert!("torus:5".parse::<FamilySpec>().is_err());
        assert!("twist:x".parse::<FamilySpec>().is_err());
    }
}
