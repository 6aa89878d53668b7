//! Shared fixtures for the criterion benches.

use tcone_core::{parse_cycles, Ideal, Permutation, VariableTable};

/// Elements whose cones exercise the pipeline at increasing cost.
pub fn sample_elements() -> Vec<(usize, Permutation)> {
    [(3, "(13)(24)"), (3, "(14)"), (4, "(15)"), (4, "(13)(25)"), (4, "(1524)")]
        .into_iter()
        .map(|(rank, w)| (rank, parse_cycles(w, rank).expect("valid fixture")))
        .collect()
}

/// Three random-looking generators in three variables whose lex basis is
/// costly to reach.
pub fn lex_stress_ideal() -> Ideal {
    let t = VariableTable::new(["a", "b", "c"]).expect("distinct names");
    Ideal::parse(
        &t,
        &[
            "c^2*b*a^2 - c^2*a - 3*c",
            "3*c*b^2 + 3*b*a",
            "3*c^2*b^2*a^2 + c^2 - b*a",
        ],
    )
    .expect("valid fixture")
}
