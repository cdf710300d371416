//! Everything runs over Q: singular points that are only defined over an
//! extension field are kept together as clusters (one prime ideal, one
//! residue degree), and a Galois-stable pair of conjugate lines enters as
//! a single rank-2 member of kind line_pair.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::clusters::{geometric_point_count, singular_clusters, ShearStream};
use clfree::combinatorics::{combinatorially_equal, combinatorics, EqualityMode};
use clfree::local::local_invariants;

fn main() {
    // The line x - 2z meets the circle in two conjugate points with
    // irrational coordinates; they form one cluster of residue degree 2.
    let arr = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 + y^2 - z^2"),
        (CurveKind::Line, "x - 2z"),
    ])
    .unwrap();
    let f = arr.defining_polynomial();
    let mut shear = ShearStream::deterministic();
    let clusters = singular_clusters(&arr, &mut shear).unwrap();
    for cl in &clusters {
        let inv = local_invariants(&f, cl).unwrap();
        println!(
            "cluster {}: residue degree {}, milnor {} per point",
            cl.describe(),
            cl.residue_degree(),
            inv.milnor_point
        );
    }
    println!(
        "{} geometric points in {} clusters",
        geometric_point_count(&clusters),
        clusters.len()
    );

    // x^2 + y^2 splits as (x + iy)(x - iy): a Galois-stable pair of
    // lines. As a member it counts as two geometric curves, so the pair
    // with z has the combinatorics of a triangle of honest lines.
    let pair = Arrangement::from_forms(&[
        (CurveKind::LinePair, "x^2 + y^2"),
        (CurveKind::Line, "z"),
    ])
    .unwrap();
    let triangle = Arrangement::from_forms(&[
        (CurveKind::Line, "x"),
        (CurveKind::Line, "y"),
        (CurveKind::Line, "z"),
    ])
    .unwrap();

    let mut shear = ShearStream::deterministic();
    let pair_clusters = singular_clusters(&pair, &mut shear).unwrap();
    let comb = combinatorics(&pair, &pair_clusters);
    println!();
    println!(
        "pair of conjugate lines with z: {} components, h1 = {}, h2 = {}",
        comb.component_count, comb.h1, comb.h2
    );
    println!(
        "combinatorially a triangle: {}",
        combinatorially_equal(&pair, &triangle, EqualityMode::Strict, &mut shear).unwrap()
    );
}
