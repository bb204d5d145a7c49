//! Shared fixtures for the criterion benches.

use ccp_core::generators::{
    gen_minimal, gen_nonorientable, gen_orientable, gen_p2_24, P2_24_DEFAULT,
};
use ccp_core::Polyhedron;

pub fn p2_24() -> Polyhedron {
    gen_p2_24(P2_24_DEFAULT.0, P2_24_DEFAULT.1).expect("default parameters are admissible")
}

/// Genus-10 meshes from the largest families, with a label.
pub fn genus_ten() -> Vec<(&'static str, Polyhedron)> {
    vec![
        ("orientable", gen_orientable(10).expect("orientable g=10")),
        (
            "nonorientable",
            gen_nonorientable(10, false).expect("nonorientable g=10"),
        ),
        ("minimal", gen_minimal(10).expect("minimal g=10")),
    ]
}
