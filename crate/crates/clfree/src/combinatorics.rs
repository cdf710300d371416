//! Combinatorial data of an arrangement: Betti numbers of the complement,
//! a tangency-aware incidence matrix, and equality of combinatorial types.
//!
//! The matrix describes the arrangement over the algebraic closure: one
//! row per geometric singular point (a cluster of residue degree e
//! contributes e rows) and one column per geometric component (a line
//! pair splits into its two branches). In strict mode the entry is the
//! local intersection multiplicity of the component with the union of
//! the remaining components, so tangencies are visible. In incidence
//! mode entries record membership only. Types are compared up to
//! permutations of columns with matching kind; which conjugate branch is
//! which is not rationally visible, so the rows of a cluster split
//! evenly between the two branch columns.

use crate::arrangement::{pair_vertex, Arrangement, CurveKind};
use crate::clusters::{curves_through, singular_clusters, Cluster, ShearStream};
use crate::error::Error;
use crate::local::{intersection_multiplicity_cluster, per_point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    Strict,
    Incidence,
}

impl std::str::FromStr for EqualityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(EqualityMode::Strict),
            "incidence" => Ok(EqualityMode::Incidence),
            other => Err(Error::Validation(format!(
                "unknown equality mode {other:?}; expected strict or incidence"
            ))),
        }
    }
}

/// Canonical labeled incidence structure over the algebraic closure.
/// Rows are sorted; the column order is the lexicographically least over
/// kind-preserving permutations. A pair contributes two line columns, so
/// rationality of points and branches does not affect equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    kinds: Vec<CurveKind>,
    degrees: Vec<u32>,
    rows: Vec<Vec<u64>>,
}

/// One singular cluster as seen by the combinatorics: how many geometric
/// components pass through each of its points.
#[derive(Debug, Clone)]
pub struct ClusterBranches {
    pub description: String,
    pub residue_degree: u32,
    pub branch_count: u32,
}

#[derive(Debug, Clone)]
pub struct Combinatorics {
    pub component_count: usize,
    pub h1: u64,
    pub h2: u64,
    pub clusters: Vec<ClusterBranches>,
    /// Coefficients 1, h1, h2 when every member is a line, else None.
    pub poincare: Option<[u64; 3]>,
}

/// Betti numbers of the complement and per-cluster branch counts.
pub fn combinatorics(arr: &Arrangement, clusters: &[Cluster]) -> Combinatorics {
    let n = arr.geometric_curve_count() as u64;
    let mut h2 = 1i64 - n as i64;
    let mut rows = Vec::new();
    for cl in clusters {
        let r = curves_through(cl, arr);
        h2 += cl.residue_degree() as i64 * (r as i64 - 1);
        rows.push(ClusterBranches {
            description: cl.describe(),
            residue_degree: cl.residue_degree(),
            branch_count: r,
        });
    }
    let h2 = u64::try_from(h2.max(0)).unwrap();
    let line_only = arr
        .curves()
        .iter()
        .all(|c| matches!(c.kind, CurveKind::Line));
    Combinatorics {
        component_count: n as usize,
        h1: n - 1,
        h2,
        clusters: rows,
        poincare: line_only.then_some([1, n - 1, h2]),
    }
}

/// Whether the complement Poincaré polynomial splits over the non-trivial
/// exponents, as it must for a free line arrangement.
pub fn poincare_matches_exponents(comb: &Combinatorics, exponents: &[i64]) -> bool {
    let mut non_euler: Vec<i64> = exponents.to_vec();
    if let Some(pos) = non_euler.iter().position(|&e| e == 1) {
        non_euler.remove(pos);
    } else {
        return false;
    }
    if non_euler.len() != 2 {
        return false;
    }
    let (a, b) = (non_euler[0], non_euler[1]);
    comb.h1 as i64 == a + b && comb.h2 as i64 == a * b
}

/// Per-point intersection multiplicity of one member with the union of
/// the others (both branches of a pair member counted together).
fn member_entry(arr: &Arrangement, cluster: &Cluster, index: usize) -> Result<u64, Error> {
    let curve = &arr.curves()[index];
    if cluster.components_through(curve) == 0 {
        return Ok(0);
    }
    let mut total = 0u64;
    for (j, other) in arr.curves().iter().enumerate() {
        if j == index {
            continue;
        }
        let m = intersection_multiplicity_cluster(&curve.form, &other.form, cluster)?;
        total += per_point(m, cluster)?;
    }
    Ok(total)
}

fn kind_rank(k: CurveKind) -> u8 {
    match k {
        CurveKind::Line => 0,
        CurveKind::Conic => 1,
        CurveKind::LinePair => 2,
    }
}

fn canonicalize(
    kinds: Vec<CurveKind>,
    degrees: Vec<u32>,
    raw_rows: Vec<Vec<u64>>,
) -> CombinatorialType {
    // Group the columns by kind, then search the kind-preserving column
    // permutations for the least sorted row list.
    let mut order: Vec<usize> = (0..kinds.len()).collect();
    order.sort_by_key(|&i| (kind_rank(kinds[i]), i));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last() {
            Some(g) if kinds[g[0]] == kinds[i] => groups.last_mut().unwrap().push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut best: Option<Vec<Vec<u64>>> = None;
    let mut best_perm: Vec<usize> = Vec::new();
    permute_groups(&groups, 0, &mut Vec::new(), &mut |perm| {
        let mut rows: Vec<Vec<u64>> = raw_rows
            .iter()
            .map(|row| perm.iter().map(|&i| row[i]).collect())
            .collect();
        rows.sort();
        if best.as_ref().map_or(true, |b| rows < *b) {
            best = Some(rows);
            best_perm = perm.to_vec();
        }
    });
    let perm = if best_perm.is_empty() {
        order
    } else {
        best_perm
    };
    CombinatorialType {
        kinds: perm.iter().map(|&i| kinds[i]).collect(),
        degrees: perm.iter().map(|&i| degrees[i]).collect(),
        rows: best.unwrap_or_default(),
    }
}

fn permute_groups(
    groups: &[Vec<usize>],
    at: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if at == groups.len() {
        visit(prefix);
        return;
    }
    let mut g = groups[at].clone();
    heap_permute(&mut g, prefix, &groups[at + 1..], visit);
}

fn heap_permute(
    g: &mut Vec<usize>,
    prefix: &mut Vec<usize>,
    rest: &[Vec<usize>],
    visit: &mut impl FnMut(&[usize]),
) {
    // Recursive generation over one group, then recurse into the rest.
    fn go(
        g: &mut Vec<usize>,
        k: usize,
        prefix: &mut Vec<usize>,
        rest: &[Vec<usize>],
        visit: &mut impl FnMut(&[usize]),
    ) {
        if k == g.len() {
            let start = prefix.len();
            prefix.extend_from_slice(g);
            permute_groups(rest, 0, prefix, visit);
            prefix.truncate(start);
            return;
        }
        for i in k..g.len() {
            g.swap(k, i);
            go(g, k + 1, prefix, rest, visit);
            g.swap(k, i);
        }
    }
    go(g, 0, prefix, rest, visit);
}

/// The canonical combinatorial type of an arrangement.
pub fn combinatorial_type(
    arr: &Arrangement,
    clusters: &[Cluster],
    mode: EqualityMode,
) -> Result<CombinatorialType, Error> {
    let pair_indices: Vec<usize> = arr
        .curves()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind == CurveKind::LinePair)
        .map(|(i, _)| i)
        .collect();
    if pair_indices.len() > 1 {
        return Err(Error::Unsupported(
            "combinatorial types with more than one line pair".into(),
        ));
    }
    let pair = pair_indices.first().copied();
    let vertex = pair.map(|i| {
        pair_vertex(&arr.curves()[i].form)
            .expect("a rank-2 rational quadratic has a rational vertex")
    });
    // One column per geometric component: the pair becomes two line
    // branches at its position.
    let mut kinds: Vec<CurveKind> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    for c in arr.curves() {
        match c.kind {
            CurveKind::LinePair => {
                kinds.extend([CurveKind::Line, CurveKind::Line]);
                degrees.extend([1, 1]);
            }
            k => {
                kinds.push(k);
                degrees.push(k.expected_degree());
            }
        }
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for cl in clusters {
        // Entries of the rational member columns, equal at every point
        // of the cluster.
        let mut base: Vec<u64> = Vec::with_capacity(kinds.len());
        let mut branch_slot = None;
        for (i, c) in arr.curves().iter().enumerate() {
            if c.kind == CurveKind::LinePair {
                branch_slot = Some(base.len());
                base.extend([0, 0]);
                continue;
            }
            let entry = match mode {
                EqualityMode::Strict => member_entry(arr, cl, i)?,
                EqualityMode::Incidence => u64::from(cl.components_through(c) > 0),
            };
            base.push(entry);
        }
        let e = cl.residue_degree();
        let pair_state = match (pair, &vertex) {
            (Some(i), Some(v)) if cl.is_point(v) => Some((i, true)),
            (Some(i), _) if cl.components_through(&arr.curves()[i]) > 0 => Some((i, false)),
            _ => None,
        };
        match pair_state {
            Some((i, true)) => {
                // Both branches pass through the vertex and cross each
                // other there once; conjugation splits the multiplicity
                // with the other members evenly.
                let slot = branch_slot.unwrap();
                let entry = match mode {
                    EqualityMode::Strict => {
                        let total = member_entry(arr, cl, i)?;
                        if total % 2 != 0 {
                            return Err(Error::Internal(format!(
                                "odd pair multiplicity {total} at the vertex"
                            )));
                        }
                        total / 2 + 1
                    }
                    EqualityMode::Incidence => 1,
                };
                base[slot] = entry;
                base[slot + 1] = entry;
                for _ in 0..e {
                    rows.push(base.clone());
                }
            }
            Some((i, false)) => {
                // Away from the vertex each point of the cluster lies on
                // exactly one branch, half of them on each.
                if e % 2 != 0 {
                    return Err(Error::Internal(format!(
                        "cluster of odd residue degree {e} on a line pair"
                    )));
                }
                let slot = branch_slot.unwrap();
                let m = match mode {
                    EqualityMode::Strict => member_entry(arr, cl, i)?,
                    EqualityMode::Incidence => 1,
                };
                for j in 0..e {
                    let mut row = base.clone();
                    if j < e / 2 {
                        row[slot] = m;
                    } else {
                        row[slot + 1] = m;
                    }
                    rows.push(row);
                }
            }
            None => {
                for _ in 0..e {
                    rows.push(base.clone());
                }
            }
        }
    }
    Ok(canonicalize(kinds, degrees, rows))
}

/// Equality of combinatorial types under the chosen mode.
pub fn combinatorially_equal(
    a: &Arrangement,
    b: &Arrangement,
    mode: EqualityMode,
    shear: &mut ShearStream,
) -> Result<bool, Error> {
    let ca = singular_clusters(a, shear)?;
    let cb = singular_clusters(b, shear)?;
    let ta = combinatorial_type(a, &ca, mode)?;
    let tb = combinatorial_type(b, &cb, mode)?;
    Ok(ta == tb)
}
