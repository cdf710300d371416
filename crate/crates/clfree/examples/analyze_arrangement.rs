//! Full analysis of one arrangement: members, singular points with their
//! local invariants, freeness, and complement combinatorics, rendered as
//! the same text report the CLI prints.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::report::{analyze, ReportOptions};

fn main() {
    let arr = Arrangement::from_forms(&[
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "x - y"),
        (CurveKind::Line, "x - 2y"),
        (CurveKind::Conic, "x^2 - xz + y^2 - yz"),
    ])
    .unwrap()
    .with_name("four concurrent lines and a circle");

    let report = analyze(&arr, &ReportOptions::default()).unwrap();
    print!("{}", report.to_text());

    // The same report serializes to JSON with a versioned schema.
    let deepest = report
        .singular_points
        .iter()
        .max_by_key(|r| r.milnor)
        .unwrap();
    println!();
    println!("schema version {}", report.schema);
    println!(
        "deepest point {}: milnor {}, tjurina {}",
        deepest.cluster, deepest.milnor, deepest.tjurina
    );
}
