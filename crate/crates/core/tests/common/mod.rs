//! Shared helpers for the integration test suites.
#![allow(dead_code)] // each test target uses a different subset

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vknot_core::{ChordId, Endpoint, GaussDiagram, Role, Sign};

/// Uniform-ish random diagram: random chord pairing, roles, and signs.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_chords: usize) -> GaussDiagram {
    let n = rng.gen_range(0..=max_chords);
    random_diagram_exact(rng, n)
}

pub fn random_diagram_exact(rng: &mut ChaCha8Rng, n: usize) -> GaussDiagram {
    let mut positions: Vec<usize> = (0..2 * n).collect();
    positions.shuffle(rng);
    let mut endpoints = vec![
        Endpoint {
            chord: 1,
            role: Role::Tail,
        };
        2 * n
    ];
    let mut signs = BTreeMap::new();
    for c in 0..n {
        let chord = (c + 1) as ChordId;
        let (mut a, mut b) = (positions[2 * c], positions[2 * c + 1]);
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut a, &mut b);
        }
        endpoints[a] = Endpoint {
            chord,
            role: Role::Tail,
        };
        endpoints[b] = Endpoint {
            chord,
            role: Role::Head,
        };
        signs.insert(
            chord,
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            },
        );
    }
    GaussDiagram::from_parts(endpoints, signs).expect("random diagram is valid")
}

/// Least serialization over all basepoints, labels kept. Diagrams equal as
/// cyclic sequences (no relabeling) compare equal under this.
pub fn rotation_min(d: &GaussDiagram) -> String {
    let n2 = d.endpoints().len();
    (0..n2.max(1)).map(|b| d.serialize(b)).min().unwrap()
}

/// Re-validates every structural invariant of a diagram.
pub fn check_invariants(d: &GaussDiagram) {
    GaussDiagram::from_parts(d.endpoints().to_vec(), d.signs().clone())
        .expect("diagram invariants hold");
}
