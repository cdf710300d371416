//! Local invariants at singular clusters: Milnor and Tjurina numbers and
//! pairwise intersection multiplicities.
//!
//! The local contribution of a cluster with prime P to a zero-dimensional
//! ideal I is dim S/I - dim S/(I : P^inf): the colength that survives
//! after saturating the other points away. The Milnor ideal (f_u, f_v)
//! need not be zero-dimensional globally (parallel asymptotes produce
//! critical curves), so it is cut down with a power of f first; once
//! f^K lies in the local ideal the answer is stable, which the doubling
//! check certifies exactly.

use crate::clusters::Cluster;
use crate::error::Error;
use crate::groebner::{buchberger, colength, saturate_by_ideal};
use crate::poly::Poly;
use crate::ring::Order;

/// Cluster-total colength of a zero-dimensional ideal at the cluster.
pub fn cluster_colength(gens: &[Poly], cluster: &Cluster) -> Result<u64, Error> {
    let gb = buchberger(gens, Order::GrevLex);
    let total = colength(&gb, Order::GrevLex).ok_or_else(|| {
        Error::Unsupported("local colength of a positive-dimensional ideal".into())
    })?;
    if total == 0 {
        return Ok(0);
    }
    let sat = saturate_by_ideal(&gb, cluster.prime());
    let rest = colength(&sat, Order::GrevLex).ok_or_else(|| {
        Error::Internal("saturation of a zero-dimensional ideal stays zero-dimensional".into())
    })?;
    Ok(total - rest)
}

/// Cluster-total colength through powers of the cluster prime:
/// dim S/(I + P^N) for doubling N until two consecutive values agree.
/// Slower than cluster_colength but independent of it; nested ideals of
/// equal colength coincide, so agreement certifies the limit.
pub fn cluster_colength_m_adic(gens: &[Poly], cluster: &Cluster) -> Result<u64, Error> {
    let mut power = cluster.prime().to_vec();
    let mut n = 1u32;
    let mut prev: Option<u64> = None;
    while n <= 64 {
        let mut prods = Vec::new();
        for i in 0..power.len() {
            for j in i..power.len() {
                prods.push(&power[i] * &power[j]);
            }
        }
        power = buchberger(&prods, Order::GrevLex);
        n *= 2;
        let mut all = gens.to_vec();
        all.extend(power.iter().cloned());
        let gb = buchberger(&all, Order::GrevLex);
        let c = colength(&gb, Order::GrevLex).ok_or_else(|| {
            Error::Internal("an ideal containing a power of a maximal ideal is artinian".into())
        })?;
        if prev == Some(c) {
            return Ok(c);
        }
        prev = Some(c);
    }
    Err(Error::Internal(
        "local colength did not stabilize within 64 steps".into(),
    ))
}

/// Tjurina number of V(f) summed over the points of the cluster;
/// f is the homogeneous defining polynomial.
pub fn tjurina_cluster(f: &Poly, cluster: &Cluster) -> Result<u64, Error> {
    let fc = cluster.chart().dehomogenize(f);
    let gens = vec![fc.partial(0), fc.partial(1), fc];
    cluster_colength(&gens, cluster)
}

/// Milnor number of V(f) summed over the points of the cluster.
pub fn milnor_cluster(f: &Poly, cluster: &Cluster) -> Result<u64, Error> {
    let fc = cluster.chart().dehomogenize(f);
    let fu = fc.partial(0);
    let fv = fc.partial(1);
    let mut k = 2u32;
    let at = |k: u32| -> Result<u64, Error> {
        let gens = vec![fu.clone(), fv.clone(), fc.pow(k)];
        cluster_colength(&gens, cluster)
    };
    let mut c = at(k)?;
    while k <= 32 {
        let c2 = at(2 * k)?;
        if c == c2 {
            return Ok(c);
        }
        c = c2;
        k *= 2;
    }
    Err(Error::Internal(
        "Milnor number did not stabilize; the singularity may not be isolated".into(),
    ))
}

/// Per-point value from a cluster total; conjugate points share it.
pub fn per_point(total: u64, cluster: &Cluster) -> Result<u64, Error> {
    let r = cluster.residue_degree() as u64;
    if total % r != 0 {
        return Err(Error::Internal(format!(
            "cluster total {total} not divisible by residue degree {r}"
        )));
    }
    Ok(total / r)
}

/// Intersection multiplicity of V(g) and V(h) summed over the cluster.
/// The forms must not share a component.
pub fn intersection_multiplicity_cluster(
    g: &Poly,
    h: &Poly,
    cluster: &Cluster,
) -> Result<u64, Error> {
    let gc = cluster.chart().dehomogenize(g);
    let hc = cluster.chart().dehomogenize(h);
    cluster_colength(&[gc, hc], cluster)
}

/// Milnor and Tjurina per point and per cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalInvariants {
    pub milnor_cluster: u64,
    pub tjurina_cluster: u64,
    pub milnor_point: u64,
    pub tjurina_point: u64,
}

pub fn local_invariants(f: &Poly, cluster: &Cluster) -> Result<LocalInvariants, Error> {
    let milnor_cluster_total = milnor_cluster(f, cluster)?;
    let tjurina_cluster_total = tjurina_cluster(f, cluster)?;
    Ok(LocalInvariants {
        milnor_cluster: milnor_cluster_total,
        tjurina_cluster: tjurina_cluster_total,
        milnor_point: per_point(milnor_cluster_total, cluster)?,
        tjurina_point: per_point(tjurina_cluster_total, cluster)?,
    })
}

/// One row of the singular-locus table: a cluster with its branch count
/// and local invariants.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub cluster: Cluster,
    /// Number of branches through each point of the cluster.
    pub branches: u32,
    pub invariants: LocalInvariants,
    /// Ordinary: the branches meet pairwise transversally, detected by
    /// milnor = (branches - 1)^2.
    pub ordinary: bool,
    /// Quasihomogeneous singularity: tjurina = milnor.
    pub quasihomogeneous: bool,
}

pub fn singular_table(
    arr: &crate::arrangement::Arrangement,
    clusters: &[Cluster],
) -> Result<Vec<SingularPoint>, Error> {
    let f = arr.defining_polynomial();
    let mut rows = Vec::with_capacity(clusters.len());
    for cl in clusters {
        let branches = crate::clusters::curves_through(cl, arr);
        let invariants = local_invariants(&f, cl)?;
        let r = u64::from(branches);
        rows.push(SingularPoint {
            cluster: cl.clone(),
            branches,
            ordinary: invariants.milnor_point == (r - 1) * (r - 1),
            quasihomogeneous: invariants.milnor_point == invariants.tjurina_point,
            invariants,
        });
    }
    Ok(rows)
}

/// Every singular point of the arrangement has equal Milnor and Tjurina
/// numbers.
pub fn quasihomogeneous_arrangement(
    arr: &crate::arrangement::Arrangement,
    clusters: &[Cluster],
) -> Result<bool, Error> {
    let f = arr.defining_polynomial();
    for cl in clusters {
        let inv = local_invariants(&f, cl)?;
        if inv.milnor_cluster != inv.tjurina_cluster {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Arrangement, CurveKind};
    use crate::clusters::{singular_clusters, ShearStream};

    fn arr(forms: &[(CurveKind, &str)]) -> Arrangement {
        Arrangement::from_forms(forms).unwrap()
    }

    fn clusters_of(a: &Arrangement) -> Vec<Cluster> {
        let mut shear = ShearStream::deterministic();
        singular_clusters(a, &mut shear).unwrap()
    }

    #[test]
    fn node_has_milnor_one() {
        let a = arr(&[(CurveKind::Line, "x"), (CurveKind::Line, "y")]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        assert_eq!(cl.len(), 1);
        let inv = local_invariants(&f, &cl[0]).unwrap();
        assert_eq!(inv.milnor_point, 1);
        assert_eq!(inv.tjurina_point, 1);
    }

    #[test]
    fn ordinary_triple_point() {
        let a = arr(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "x + y"),
        ]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        assert_eq!(cl.len(), 1);
        let inv = local_invariants(&f, &cl[0]).unwrap();
        // Ordinary r-fold point: milnor = (r-1)^2, quasihomogeneous.
        assert_eq!(inv.milnor_point, 4);
        assert_eq!(inv.tjurina_point, 4);
    }

    #[test]
    fn tangent_line_gives_tacnode() {
        // z is the tangent to y^2 - xz at (1:0:0); the union has an A_3
        // singularity there.
        let a = arr(&[(CurveKind::Conic, "y^2 - xz"), (CurveKind::Line, "z")]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].describe(), "(1:0:0)");
        let inv = local_invariants(&f, &cl[0]).unwrap();
        assert_eq!(inv.milnor_point, 3);
        assert_eq!(inv.tjurina_point, 3);
        // The intersection multiplicity of a conic and its tangent is 2.
        let m = intersection_multiplicity_cluster(
            &a.curves()[0].form,
            &a.curves()[1].form,
            &cl[0],
        )
        .unwrap();
        assert_eq!(m, 2);
    }

    #[test]
    fn conjugate_nodes_split_evenly() {
        let a = arr(&[
            (CurveKind::Conic, "x^2 + y^2 - z^2"),
            (CurveKind::Line, "x - 2z"),
        ]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].residue_degree(), 2);
        let inv = local_invariants(&f, &cl[0]).unwrap();
        assert_eq!(inv.milnor_cluster, 2);
        assert_eq!(inv.milnor_point, 1);
        assert_eq!(inv.tjurina_point, 1);
    }

    #[test]
    fn parallel_lines_critical_curve_handled() {
        // x and x - z are parallel in the z = 1 chart; the Milnor ideal
        // there is not zero-dimensional, which the f-power cutoff works
        // around. The singular point at infinity is an ordinary node.
        let a = arr(&[(CurveKind::Line, "x"), (CurveKind::Line, "x - z")]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].describe(), "(0:1:0)");
        let inv = local_invariants(&f, &cl[0]).unwrap();
        assert_eq!(inv.milnor_point, 1);
        assert_eq!(inv.tjurina_point, 1);
    }

    #[test]
    fn m_adic_and_saturation_agree() {
        let a = arr(&[(CurveKind::Conic, "y^2 - xz"), (CurveKind::Line, "z")]);
        let f = a.defining_polynomial();
        let cl = clusters_of(&a);
        let fc = cl[0].chart().dehomogenize(&f);
        let tjurina_gens = vec![fc.partial(0), fc.partial(1), fc];
        let by_sat = cluster_colength(&tjurina_gens, &cl[0]).unwrap();
        let by_madic = cluster_colength_m_adic(&tjurina_gens, &cl[0]).unwrap();
        assert_eq!(by_sat, by_madic);
        assert_eq!(by_sat, 3);
    }

    #[test]
    fn transverse_conics_meet_with_multiplicity_one_per_point() {
        let a = arr(&[
            (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
            (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
        ]);
        let cl = clusters_of(&a);
        // The two conics meet at (0:0:1) and elsewhere; total intersection
        // multiplicity over all clusters is 4 by Bezout.
        let mut total = 0;
        for c in &cl {
            total += intersection_multiplicity_cluster(
                &a.curves()[0].form,
                &a.curves()[1].form,
                c,
            )
            .unwrap();
        }
        assert_eq!(total, 4);
    }
}
