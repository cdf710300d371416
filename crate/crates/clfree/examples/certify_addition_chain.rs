//! Certifying freeness constructively: the certifier peels off lines and
//! conics whose deletion keeps the triple quasihomogeneous, reaches a
//! small base case directly, and replays the addition steps with the
//! exponent bookkeeping of each rule.

use clfree::addel::{certified_verdict, certify};
use clfree::arrangement::{Arrangement, CurveKind};
use clfree::clusters::ShearStream;
use clfree::freeness::analyze_freeness;

fn main() {
    let arr = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
        (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "x + y - z"),
        (CurveKind::Line, "x - y"),
    ])
    .unwrap();

    let mut shear = ShearStream::deterministic();
    let cert = certify(&arr, &mut shear).unwrap();

    println!("certificate with {} steps:", cert.steps.len());
    for (i, step) in cert.steps.iter().enumerate() {
        let claim = match &step.exponents {
            Some(e) => format!("free with exponents {e:?}"),
            None => "not free".to_string(),
        };
        match (&step.added, step.k) {
            (Some(added), Some(k)) => println!(
                "  {}. [{}] add {} meeting the rest in {} points: {}",
                i + 1,
                step.rule.tag(),
                added,
                k,
                claim
            ),
            _ => println!("  {}. [{}] base case: {}", i + 1, step.rule.tag(), claim),
        }
    }

    let (_, direct) = analyze_freeness(&arr);
    println!();
    println!(
        "certificate agrees with the direct resolution: {}",
        certified_verdict(&cert, &direct)
    );
}
