//! Freeness of conic-line arrangements is not combinatorial: these two
//! arrangements have the same intersection data (same curve kinds, same
//! clusters, same pairwise contact orders), yet one is free and the
//! other is not.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::report::{compare, ReportOptions};

fn main() {
    let free_one = Arrangement::from_forms(&[
        (CurveKind::Conic, "y^2 + xz"),
        (CurveKind::Conic, "y^2 + x^2 + 2xz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
    ])
    .unwrap()
    .with_name("tangent conics with the line y");

    let non_free = Arrangement::from_forms(&[
        (CurveKind::Conic, "y^2 + xz"),
        (CurveKind::Conic, "y^2 + x^2 + 2xz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "x - 13y"),
    ])
    .unwrap()
    .with_name("tangent conics with the line x - 13y");

    let report = compare(&free_one, &non_free, &ReportOptions::default()).unwrap();
    print!("{}", report.to_text());

    println!();
    println!(
        "equal combinatorics with different freeness: {}",
        report.freeness_not_combinatorial
    );
}
