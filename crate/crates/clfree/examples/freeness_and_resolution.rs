//! Freeness is decided from the syzygy module D0 of the Jacobian ideal:
//! no relations among the minimal generators means free, and then the
//! exponents are 1 together with the generator degrees. Otherwise the
//! minimal free resolution of D0 is reported.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::freeness::analyze_freeness;

fn describe(title: &str, arr: &Arrangement) {
    let (module, verdict) = analyze_freeness(arr);
    let r = &module.resolution;
    println!("{title}");
    println!("  D0 generator degrees: {:?}", r.generator_degrees);
    if verdict.free {
        println!("  free, exponents {:?}", verdict.exponents.unwrap());
    } else {
        println!(
            "  not free: minimal relations in degrees {:?}",
            r.relation_degrees
        );
    }
    println!("  Hilbert numerator of D0: {:?}", verdict.hilbert_numerator);
    println!();
}

fn main() {
    let triangle = Arrangement::from_forms(&[
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "z"),
    ])
    .unwrap();
    describe("coordinate triangle", &triangle);

    let conic = Arrangement::from_forms(&[(CurveKind::Conic, "y^2 - xz")]).unwrap();
    describe("a single smooth conic (never free)", &conic);

    // Two conics meeting a common tangent line with high contact: free
    // with unbalanced exponents.
    let tangent = Arrangement::from_forms(&[
        (CurveKind::Conic, "y^2 + xz"),
        (CurveKind::Conic, "y^2 + x^2 + 2xz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
    ])
    .unwrap();
    describe("two conics with a common tangent and two lines", &tangent);
}
