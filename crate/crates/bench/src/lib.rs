//! Fixtures shared by the benchmarks.

use cdlat_core::{parse_spec, Group, Limits};

/// Groups of increasing lattice size.
pub const FIXTURES: [&str; 6] = ["D60", "A5", "S3 x D10", "SD64", "Ab(2,2,2,2,2)", "Jp(3,3)"];

pub fn group(spec: &str) -> Group {
    parse_spec(spec).and_then(|s| s.build(&Limits::default())).expect("fixture builds")
}
