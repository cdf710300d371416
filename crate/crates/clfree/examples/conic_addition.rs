//! Exponent transfer across a conic: deleting a conic that meets the
//! rest of the arrangement in k points relates the exponents of the two
//! arrangements. Even k shifts one exponent by two; odd k is rigid and
//! can even certify non-freeness.

use clfree::addel::{infer, make_triple, quasihomogeneous_triple, Inference, Side};
use clfree::arrangement::{Arrangement, CurveKind};
use clfree::clusters::ShearStream;
use clfree::freeness::analyze_freeness;

fn report(inference: &Inference) -> String {
    match inference {
        Inference::Free(e) => format!("free with exponents {e:?}"),
        Inference::NotFree => "not free".to_string(),
        Inference::Inconclusive => "inconclusive".to_string(),
    }
}

fn main() {
    let mut shear = ShearStream::deterministic();

    // Odd case: the conic meets the triangle in k = 3 points (m = 1).
    // The triangle is free with {1, 1, 1}, so the union is free with
    // {1, m+1, m+1} = {1, 2, 2}.
    let odd = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 - xz + 2y^2 - 2yz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "x + y - z"),
    ])
    .unwrap();
    let t = make_triple(&odd, 0, &mut shear).unwrap();
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    println!(
        "conic meets a triangle in k = {} points (quasihomogeneous: {})",
        t.k, qh
    );
    println!(
        "  triangle {{1, 1, 1}} pushes to: {}",
        report(&infer(&t, qh, Side::Deleted, &[1, 1, 1]))
    );
    println!(
        "  union {{1, 2, 2}} pulls back to: {}",
        report(&infer(&t, qh, Side::Full, &[1, 2, 2]))
    );

    // Odd case blocking freeness: the braid arrangement is free with
    // {1, 2, 3}; a conic meeting it in k = 7 points (m = 3) would need
    // the deleted exponents to contain m twice.
    let braid_conic = Arrangement::from_forms(&[
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "z"),
        (CurveKind::Line, "x - z"),
        (CurveKind::Line, "y - z"),
        (CurveKind::Line, "x + y - z"),
        (CurveKind::Conic, "xy + 7xz + 13yz"),
    ])
    .unwrap();
    let t = make_triple(&braid_conic, 6, &mut shear).unwrap();
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    println!();
    println!(
        "conic meets the braid arrangement in k = {} points (quasihomogeneous: {})",
        t.k, qh
    );
    println!(
        "  braid {{1, 2, 3}} pushes to: {}",
        report(&infer(&t, qh, Side::Deleted, &[1, 2, 3]))
    );
    let (_, verdict) = analyze_freeness(&braid_conic);
    println!("  direct resolution agrees: free = {}", verdict.free);

    // Even case: deleting this conic leaves k = 4 points (m = 2), and
    // the shift is by two.
    let even = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
        (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "x + y - z"),
        (CurveKind::Line, "x - y"),
    ])
    .unwrap();
    let t = make_triple(&even, 0, &mut shear).unwrap();
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    println!();
    println!(
        "deleting one conic of a six-member arrangement leaves k = {} points",
        t.k
    );
    println!(
        "  smaller arrangement {{1, 2, 3}} pushes to: {}",
        report(&infer(&t, qh, Side::Deleted, &[1, 2, 3]))
    );
}
