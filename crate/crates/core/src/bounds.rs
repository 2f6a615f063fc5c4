//! Closed-form lower and upper bounds on the forbidden number, and their
//! aggregation into a per-diagram interval.
//!
//! Upper bounds come from isolating chords with forbidden moves and detours
//! and removing them with `R1`; lower bounds come from the odd writhe and
//! the odd writhe polynomial, which a forbidden move can change only by a
//! bounded amount. Only the unknot has forbidden number zero.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::GaussDiagram;
use crate::families::FamilySpec;
use crate::invariants::{odd_writhe, odd_writhe_polynomial};
use crate::moves::simplify;
use crate::poly::LaurentPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("head run {h} out of range for {c} crossings")]
    HeadRunOutOfRange { c: u64, h: u64 },
    #[error("parameter p = {0} must be odd and at least 3")]
    BadTorusParameter(u64),
    #[error("parameter n = {0} must be at least 1")]
    BadTwistParameter(u64),
}

/// `c(c−1)/2 + ⌊(c−1)²/4⌋`: isolate each chord in turn, paying one forbidden
/// move per same-type end passed and a detour per opposite-type end.
pub fn generic_upper_bound(c: u64) -> u64 {
    if c == 0 {
        return 0;
    }
    c * (c - 1) / 2 + (c - 1) * (c - 1) / 4
}

/// `c(c−1)/2 + ⌊(c−h)²/4⌋` for a complete diagram with `c` crossings whose
/// longest run of consecutive undercrossings has length `h`, `1 ≤ h ≤ c`.
pub fn complete_upper_bound(c: u64, h: u64) -> Result<u64, BoundError> {
    if h < 1 || h > c {
        return Err(BoundError::HeadRunOutOfRange { c, h });
    }
    Ok(c * (c - 1) / 2 + (c - h) * (c - h) / 4)
}

/// `⌊(3c² − 6c + 7)/4⌋` for any diagram with `c ≥ 2` crossings; 0 below that.
pub fn global_upper_bound(c: u64) -> u64 {
    if c <= 1 {
        return 0;
    }
    (3 * c * c - 6 * c + 7) / 4
}

/// `(p² − 1)/2`: eliminating the even chords of the `2(p−1)`-crossing
/// 2-bridge presentation of the `(p,2)`-torus knot, `p` odd, `p ≥ 3`.
pub fn torus2_upper_bound(p: u64) -> Result<u64, BoundError> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(BoundError::BadTorusParameter(p));
    }
    Ok((p * p - 1) / 2)
}

/// `(5p² − 4p − 1)/8`: the same knot attacked from its minimal `p`-crossing
/// diagram. Strictly worse than [`torus2_upper_bound`] for `p ≥ 5`.
pub fn torus2_minimal_diagram_bound(p: u64) -> Result<u64, BoundError> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(BoundError::BadTorusParameter(p));
    }
    Ok((5 * p * p - 4 * p - 1) / 8)
}

/// Twist knot `T_n`: `3n + 1` when `n` is odd, `5n/2 − 1` when `n` is even.
pub fn twist_upper_bound(n: u64) -> Result<u64, BoundError> {
    if n < 1 {
        return Err(BoundError::BadTwistParameter(n));
    }
    Ok(if n % 2 == 1 { 3 * n + 1 } else { 5 * n / 2 - 1 })
}

/// Virtual twist knot `VT_n`: `((n+1)/2, n)` for odd `n`, `(n/2, n−1)` for
/// even `n`.
pub fn virtual_twist_bounds(n: u64) -> Result<(u64, u64), BoundError> {
    if n < 1 {
        return Err(BoundError::BadTwistParameter(n));
    }
    Ok(if n % 2 == 1 {
        (n.div_ceil(2), n)
    } else {
        (n / 2, n - 1)
    })
}

/// `⌈|w_o|/2⌉`: a forbidden move changes the odd writhe by 0 or ±2.
pub fn ow_lower_bound(d: &GaussDiagram) -> u64 {
    let w = odd_writhe(d).unsigned_abs();
    w.div_ceil(2)
}

/// `⌈Σ|b_i|/2⌉` over the odd writhe polynomial coefficients: a forbidden
/// move changes the polynomial by `±t^m ± t^n`.
pub fn owp_lower_bound(d: &GaussDiagram) -> u64 {
    odd_writhe_polynomial(d).abs_coeff_sum().div_ceil(2)
}

/// One itemized bound contribution. `diagram_relative` marks bounds whose
/// hypotheses were checked on the given diagram rather than on a certified
/// minimal one.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundItem {
    pub name: String,
    pub value: u64,
    pub diagram_relative: bool,
}

impl BoundItem {
    fn new(name: &str, value: u64) -> Self {
        BoundItem {
            name: name.to_string(),
            value,
            diagram_relative: false,
        }
    }

    fn diagram_relative(name: &str, value: u64) -> Self {
        BoundItem {
            name: name.to_string(),
            value,
            diagram_relative: true,
        }
    }
}

/// Per-diagram record of every applicable bound and the resulting interval
/// for the forbidden number.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub crossings: usize,
    pub head_run: usize,
    pub is_complete: bool,
    pub odd_writhe: i64,
    pub owp: LaurentPoly,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub lower_items: Vec<BoundItem>,
    pub upper_items: Vec<BoundItem>,
    pub warnings: Vec<String>,
}

/// Evaluates every applicable bound for the diagram as given. The diagram
/// is recognized as the unknot when greedy `R1`/`R2` simplification empties
/// it; otherwise the forbidden number is at least 1.
pub fn best_bounds(d: &GaussDiagram) -> BoundReport {
    best_bounds_with_family(d, None)
}

/// [`best_bounds`] plus the family-specific bounds when the diagram is known
/// to be an instance of one of the generated families.
pub fn best_bounds_with_family(d: &GaussDiagram, family: Option<&FamilySpec>) -> BoundReport {
    let c = d.chord_count();
    let head_run = d.longest_head_run();
    let complete = d.is_complete();
    let w_o = odd_writhe(d);
    let owp = odd_writhe_polynomial(d);
    let recognized_unknot = simplify(d).is_empty();

    let mut warnings = Vec::new();
    if w_o.rem_euclid(2) != 0 {
        warnings.push(format!(
            "odd writhe {w_o} is not even; the code may not describe a knot"
        ));
    }
    if !owp.abs_coeff_sum().is_multiple_of(2) {
        warnings.push("odd writhe polynomial has odd coefficient mass".to_string());
    }

    let mut lower_items = vec![
        BoundItem::new("odd-writhe", ow_lower_bound(d)),
        BoundItem::new("odd-writhe-polynomial", owp_lower_bound(d)),
        BoundItem::new(
            if recognized_unknot {
                "recognized-unknot"
            } else {
                "not-recognized-unknot"
            },
            u64::from(!recognized_unknot),
        ),
    ];
    let mut upper_items = Vec::new();
    if recognized_unknot {
        upper_items.push(BoundItem::new("recognized-unknot", 0));
    } else {
        upper_items.push(BoundItem::new(
            "crossing-number",
            global_upper_bound(c as u64),
        ));
        if complete && c >= 1 {
            upper_items.push(BoundItem::diagram_relative(
                "complete-diagram",
                complete_upper_bound(c as u64, head_run as u64).unwrap(),
            ));
        }
        if let Some(spec) = family {
            for (name, value) in spec.upper_bounds() {
                upper_items.push(BoundItem::new(&name, value));
            }
            if let Some((name, value)) = spec.lower_bound() {
                lower_items.push(BoundItem::new(&name, value));
            }
        }
    }

    let lower = if recognized_unknot {
        0
    } else {
        lower_items.iter().map(|i| i.value).max().unwrap_or(0)
    };
    let upper = upper_items.iter().map(|i| i.value).min().unwrap_or(0);
    let exact = (lower == upper).then_some(lower);

    BoundReport {
        crossings: c,
        head_run,
        is_complete: complete,
        odd_writhe: w_o,
        owp,
        lower,
        upper,
        exact,
        lower_items,
        upper_items,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn d(code: &str) -> GaussDiagram {
        GaussDiagram::parse(code).unwrap()
    }

    #[test]
    fn generic_bound_values() {
        assert_eq!(generic_upper_bound(3), 4);
        assert_eq!(generic_upper_bound(10), 65);
        assert_eq!(generic_upper_bound(0), 0);
        assert_eq!(generic_upper_bound(1), 0);
    }

    #[test]
    fn complete_bound_values() {
        assert_eq!(complete_upper_bound(5, 2).unwrap(), 12);
        assert_eq!(complete_upper_bound(7, 4).unwrap(), 23);
        for c in 1..=12 {
            assert_eq!(complete_upper_bound(c, c).unwrap(), c * (c - 1) / 2);
        }
        assert!(complete_upper_bound(5, 0).is_err());
        assert!(complete_upper_bound(5, 6).is_err());
    }

    #[test]
    fn global_bound_values() {
        assert_eq!(global_upper_bound(2), 1);
        assert_eq!(global_upper_bound(5), 13);
        assert_eq!(global_upper_bound(12), 91);
        assert_eq!(global_upper_bound(0), 0);
        assert_eq!(global_upper_bound(1), 0);
    }

    #[test]
    fn torus_bound_values() {
        assert_eq!(torus2_upper_bound(5).unwrap(), 12);
        assert_eq!(torus2_upper_bound(3).unwrap(), 4);
        assert_eq!(torus2_upper_bound(11).unwrap(), 60);
        assert_eq!(torus2_minimal_diagram_bound(11).unwrap(), 70);
        assert_eq!(torus2_minimal_diagram_bound(5).unwrap(), 13);
        assert_eq!(torus2_minimal_diagram_bound(3).unwrap(), 4);
        assert!(torus2_upper_bound(4).is_err());
        assert!(torus2_minimal_diagram_bound(1).is_err());
    }

    #[test]
    fn twist_bound_values() {
        assert_eq!(twist_upper_bound(2).unwrap(), 4);
        assert_eq!(twist_upper_bound(1).unwrap(), 4);
        assert_eq!(twist_upper_bound(4).unwrap(), 9);
        assert!(twist_upper_bound(0).is_err());
    }

    #[test]
    fn virtual_twist_bound_values() {
        assert_eq!(virtual_twist_bounds(3).unwrap(), (2, 3));
        assert_eq!(virtual_twist_bounds(2).unwrap(), (1, 1));
        assert_eq!(virtual_twist_bounds(1).unwrap(), (1, 1));
        assert!(virtual_twist_bounds(0).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(ow_lower_bound(&d("O1+O2+U1+U2+")), 1);
        assert_eq!(ow_lower_bound(&d("O1+U2+O3+U1+O2+U3+")), 0);
        let ring3 = families::trefoil_ring(3).unwrap();
        assert_eq!(ow_lower_bound(&ring3), 3);
        assert_eq!(owp_lower_bound(&d("")), 0);
    }

    #[test]
    fn best_bounds_virtual_trefoil_is_exact_one() {
        let r = best_bounds(&d("O1+O2+U1+U2+"));
        assert_eq!((r.lower, r.upper, r.exact), (1, 1, Some(1)));
        assert_eq!(r.odd_writhe, 2);
    }

    #[test]
    fn best_bounds_unknot_is_exact_zero() {
        let r = best_bounds(&d(""));
        assert_eq!((r.lower, r.upper, r.exact), (0, 0, Some(0)));
        // an unknot presented with crossings is still recognized
        let r2 = best_bounds(&d("O1+O2+U2+U1+"));
        assert_eq!((r2.lower, r2.upper, r2.exact), (0, 0, Some(0)));
    }

    #[test]
    fn global_never_exceeds_generic() {
        // the two formulas agree at c = 2 and c = 3 (both tables print 1 and 4)
        for c in 2..=40 {
            assert!(global_upper_bound(c) <= generic_upper_bound(c));
            if c >= 4 {
                assert!(global_upper_bound(c) < generic_upper_bound(c));
            }
        }
        assert_eq!(global_upper_bound(3), generic_upper_bound(3));
    }

    #[test]
    fn bridge_presentation_beats_minimal_diagram_from_five() {
        for p in (5..=21).step_by(2) {
            assert!(torus2_upper_bound(p).unwrap() < torus2_minimal_diagram_bound(p).unwrap());
        }
        assert_eq!(
            torus2_upper_bound(3).unwrap(),
            torus2_minimal_diagram_bound(3).unwrap()
        );
    }

    #[test]
    fn family_bounds_attach_to_report() {
        let spec: FamilySpec = "twist:2".parse().unwrap();
        let k = spec.diagrams().unwrap().remove(0);
        let r = best_bounds_with_family(&k, Some(&spec));
        assert!(r
            .upper_items
            .iter()
            .any(|i| i.name == "twist-knot" && i.value == 4));
        assert!(r.upper <= 4);
    }

    #[test]
    fn virtual_twist_two_interval_collapses() {
        // (lower, upper) = (1, 1) pins F(VT_2) = 1 without any search
        let spec: FamilySpec = "vtwist:2".parse().unwrap();
        let k = spec.diagrams().unwrap().remove(0);
        let r = best_bounds_with_family(&k, Some(&spec));
        assert_eq!((r.lower, r.upper, r.exact), (1, 1, Some(1)));
    }
}
