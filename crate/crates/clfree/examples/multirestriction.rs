//! Restricting an arrangement to one of its lines yields a
//! multiarrangement: the points where the other members meet the line,
//! each weighted by its contact order. The derivation module of such a
//! multiarrangement on a projective line is free of rank 2, and its
//! exponents witness freeness of the ambient arrangement.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::multirestrict::{multi_exponents, multirestrict};

fn show(title: &str, arr: &Arrangement, line: usize) {
    let multi = multirestrict(arr, line).unwrap();
    println!("{title}");
    for (point, m) in multi.points() {
        println!("  point {point} with multiplicity {m}");
    }
    let (d1, d2) = multi_exponents(&multi).unwrap();
    println!(
        "  total multiplicity {}, exponents ({d1}, {d2})",
        multi.total_multiplicity()
    );
    println!();
}

fn main() {
    let base = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
        (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "x + y - z"),
    ])
    .unwrap();
    for line in 2..5 {
        show(
            &format!("restriction to {}", base.curves()[line].label),
            &base,
            line,
        );
    }

    // The restricted exponents depend on where an added line sits: both
    // seven-member arrangements below are free, but their restrictions
    // to x + y - z differ.
    for (title, extra) in [
        ("added line through the triple point", "x + y - 2z"),
        ("added line in general position", "x - 3y + 2z"),
    ] {
        let arr = Arrangement::from_forms(&[
            (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
            (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "x + y - z"),
            (CurveKind::Line, "x - y"),
            (CurveKind::Line, extra),
        ])
        .unwrap();
        show(title, &arr, 4);
    }
}
