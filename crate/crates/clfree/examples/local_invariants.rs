//! Local singularity data at the clusters of an arrangement: Milnor and
//! Tjurina numbers per geometric point, intersection multiplicities, and
//! the two independent ways of computing a local colength.

use clfree::arrangement::{Arrangement, CurveKind};
use clfree::clusters::{singular_clusters, ShearStream};
use clfree::local::{
    cluster_colength, cluster_colength_m_adic, intersection_multiplicity_cluster,
    local_invariants,
};

fn main() {
    // The line z is tangent to the conic at (1:0:0); the union has a
    // tacnode there. The line x - 2z misses the tangency and meets the
    // conic in two conjugate points.
    let arr = Arrangement::from_forms(&[
        (CurveKind::Conic, "x^2 + y^2 - z^2"),
        (CurveKind::Line, "y - z"),
        (CurveKind::Line, "x - 2z"),
    ])
    .unwrap();
    let f = arr.defining_polynomial();

    let mut shear = ShearStream::deterministic();
    let clusters = singular_clusters(&arr, &mut shear).unwrap();
    println!("{} singular clusters", clusters.len());

    for cl in &clusters {
        let inv = local_invariants(&f, cl).unwrap();
        println!();
        println!(
            "cluster {} ({} conjugate point{})",
            cl.describe(),
            cl.residue_degree(),
            if cl.residue_degree() == 1 { "" } else { "s" }
        );
        println!(
            "  milnor {} per point (cluster total {})",
            inv.milnor_point, inv.milnor_cluster
        );
        println!(
            "  tjurina {} per point (cluster total {})",
            inv.tjurina_point, inv.tjurina_cluster
        );

        let conic = &arr.curves()[0].form;
        let line = &arr.curves()[1].form;
        if cl.contains_form(conic) && cl.contains_form(line) {
            let m = intersection_multiplicity_cluster(conic, line, cl).unwrap();
            println!("  conic meets the tangent line here with multiplicity {m}");
        }

        // The same number two ways: saturate the other clusters away, or
        // add powers of the cluster prime until the quotient stabilizes.
        let fc = cl.chart().dehomogenize(&f);
        let tjurina_gens = vec![fc.partial(0), fc.partial(1), fc];
        let by_saturation = cluster_colength(&tjurina_gens, cl).unwrap();
        let by_adic = cluster_colength_m_adic(&tjurina_gens, cl).unwrap();
        println!("  tjurina by saturation {by_saturation}, by prime powers {by_adic}");
    }
}
