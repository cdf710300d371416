//! Addition and deletion of a single curve: triples, quasihomogeneity
//! of triples, exponent inference, and inductive freeness certificates.
//!
//! Removing a curve C from an arrangement gives the triple
//! (deleted, full, restriction of the rest to C). When every
//! singularity of both arrangements is quasihomogeneous, freeness with
//! matching exponent patterns transfers between the two: across a line
//! meeting the rest in k points the non-pattern exponent moves by one,
//! across a conic by two when k is even, and the odd conic case decides
//! freeness both ways. The certificate search deletes curves until a
//! small base, then replays the theorems upward, re-verifying every
//! hypothesis and cross-checking the final claim directly.

use std::collections::HashMap;

use crate::arrangement::{Arrangement, Curve, CurveKind};
use crate::clusters::{singular_clusters, Cluster, ShearStream};
use crate::error::Error;
use crate::factor::distinct_root_count;
use crate::freeness::{analyze_freeness, FreenessVerdict};
use crate::local::quasihomogeneous_arrangement;
use crate::restrict::{conic_param, line_chart, psi, restrict_form_to_line};
use crate::ring::Ring;

/// A deletion triple: the full arrangement, the removed member, and the
/// count k of distinct points in which the removed member meets the
/// rest.
#[derive(Debug, Clone)]
pub struct Triple {
    pub full: Arrangement,
    pub removed_index: usize,
    pub removed: Curve,
    pub deleted: Arrangement,
    pub k: u32,
    /// Clusters of the full arrangement lying on the removed curve.
    pub restriction_clusters: Vec<Cluster>,
}

/// k from the restriction polynomial: distinct roots of the rest
/// restricted to the removed line or pulled back to the conic's
/// parameter line.
fn restriction_point_count(full: &Arrangement, removed: usize) -> Result<u32, Error> {
    let curve = &full.curves()[removed];
    let rest = full.without(removed)?.defining_polynomial();
    match curve.kind {
        CurveKind::Line => {
            let chart = line_chart(&curve.form)?;
            let uv = Ring::uv();
            let b = restrict_form_to_line(&rest, &chart, &uv);
            distinct_root_count(&b)
        }
        CurveKind::Conic => {
            let param = conic_param(&curve.form)?;
            distinct_root_count(&psi(&param, &rest))
        }
        CurveKind::LinePair => Err(Error::Unsupported(
            "deleting a line pair (its branches are irrational)".into(),
        )),
    }
}

pub fn make_triple(
    full: &Arrangement,
    removed: usize,
    shear: &mut ShearStream,
) -> Result<Triple, Error> {
    if full.curves().len() < 2 {
        return Err(Error::Validation(
            "a triple needs at least two curves".into(),
        ));
    }
    if removed >= full.curves().len() {
        return Err(Error::Validation("curve index out of range".into()));
    }
    let k_roots = restriction_point_count(full, removed)?;
    let curve = full.curves()[removed].clone();
    let deleted = full.without(removed)?;
    let clusters = singular_clusters(full, shear)?;
    let restriction_clusters: Vec<Cluster> = clusters
        .into_iter()
        .filter(|cl| cl.contains_form(&curve.form))
        .collect();
    let k_clusters: u32 = restriction_clusters
        .iter()
        .map(|cl| cl.residue_degree())
        .sum();
    if k_roots != k_clusters {
        return Err(Error::Internal(format!(
            "restriction point counts disagree: {k_roots} roots vs {k_clusters} cluster degrees"
        )));
    }
    Ok(Triple {
        full: full.clone(),
        removed_index: removed,
        removed: curve,
        deleted,
        k: k_roots,
    restriction_clusters,
    })
}

/// Both arrangements of the triple have tjurina = milnor at every
/// singular point.
pub fn quasihomogeneous_triple(t: &Triple, shear: &mut ShearStream) -> Result<bool, Error> {
    let deleted_clusters = singular_clusters(&t.deleted, shear)?;
    if !quasihomogeneous_arrangement(&t.deleted, &deleted_clusters)? {
        return Ok(false);
    }
    let full_clusters = singular_clusters(&t.full, shear)?;
    quasihomogeneous_arrangement(&t.full, &full_clusters)
}

/// Which side of a triple a known verdict describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Deleted,
    Full,
}

/// Outcome of a theorem application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inference {
    Free(Vec<i64>),
    NotFree,
    Inconclusive,
}

/// Removes one occurrence of each listed value; None if any is missing.
fn strip(exps: &[i64], take: &[i64]) -> Option<Vec<i64>> {
    let mut rest = exps.to_vec();
    for t in take {
        let pos = rest.iter().position(|e| e == t)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// Exponent transfer across a line meeting the rest in k points: free
/// with {1, k-1, a} on the deleted side matches {1, k-1, a+1} on the
/// full side. Requires a quasihomogeneous triple; anything outside the
/// pattern is inconclusive.
pub fn infer_line(
    t: &Triple,
    quasihomogeneous: bool,
    known_side: Side,
    known_exponents: &[i64],
) -> Inference {
    if !quasihomogeneous || t.removed.kind != CurveKind::Line {
        return Inference::Inconclusive;
    }
    let km1 = i64::from(t.k) - 1;
    let Some(rest) = strip(known_exponents, &[1, km1]) else {
        return Inference::Inconclusive;
    };
    let [a] = rest[..] else {
        return Inference::Inconclusive;
    };
    let shifted = match known_side {
        Side::Deleted => a + 1,
        Side::Full => a - 1,
    };
    if shifted < 0 {
        return Inference::Inconclusive;
    }
    let mut exps = vec![1, km1, shifted];
    exps.sort_unstable();
    Inference::Free(exps)
}

/// Exponent transfer across a conic meeting the rest in k points.
/// Even k = 2m: {1, m, a} on the deleted side matches {1, m, a+2} on
/// the full side. Odd k = 2m+1: {1, m, m} matches {1, m+1, m+1}, and a
/// mismatched middle exponent decides non-freeness of the other side.
pub fn infer_conic(
    t: &Triple,
    quasihomogeneous: bool,
    known_side: Side,
    known_exponents: &[i64],
) -> Inference {
    if !quasihomogeneous || t.removed.kind != CurveKind::Conic {
        return Inference::Inconclusive;
    }
    let k = i64::from(t.k);
    let m = k / 2;
    if k % 2 == 0 {
        let Some(rest) = strip(known_exponents, &[1, m]) else {
            return Inference::Inconclusive;
        };
        let [a] = rest[..] else {
            return Inference::Inconclusive;
        };
        let shifted = match known_side {
            Side::Deleted => a + 2,
            Side::Full => a - 2,
        };
        if shifted < 0 {
            return Inference::Inconclusive;
        }
        let mut exps = vec![1, m, shifted];
        exps.sort_unstable();
        return Inference::Free(exps);
    }
    match known_side {
        Side::Deleted => {
            // Known exponents {1, m, a}: a = m continues the chain,
            // a != m blocks freeness of the full arrangement.
            let Some(rest) = strip(known_exponents, &[1, m]) else {
                return Inference::Inconclusive;
            };
            let [a] = rest[..] else {
                return Inference::Inconclusive;
            };
            if a == m {
                Inference::Free(vec![1, m + 1, m + 1])
            } else {
                Inference::NotFree
            }
        }
        Side::Full => {
            let Some(rest) = strip(known_exponents, &[1, m + 1]) else {
                return Inference::Inconclusive;
            };
            let [b] = rest[..] else {
                return Inference::Inconclusive;
            };
            if b == m + 1 {
                Inference::Free(vec![1, m, m])
            } else {
                Inference::NotFree
            }
        }
    }
}

pub fn infer(
    t: &Triple,
    quasihomogeneous: bool,
    known_side: Side,
    known_exponents: &[i64],
) -> Inference {
    match t.removed.kind {
        CurveKind::Line => infer_line(t, quasihomogeneous, known_side, known_exponents),
        CurveKind::Conic => infer_conic(t, quasihomogeneous, known_side, known_exponents),
        CurveKind::LinePair => Inference::Inconclusive,
    }
}

/// Rule used by one certificate step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    LineAddition,
    ConicAdditionEven,
    ConicAdditionOdd,
    Direct,
}

impl StepRule {
    pub fn tag(self) -> &'static str {
        match self {
            StepRule::LineAddition => "line-addition",
            StepRule::ConicAdditionEven => "conic-addition-even",
            StepRule::ConicAdditionOdd => "conic-addition-odd",
            StepRule::Direct => "direct",
        }
    }
}

/// One step of a certificate: what is claimed about an arrangement and
/// which hypotheses were verified to claim it.
#[derive(Debug, Clone)]
pub struct CertificateStep {
    /// Canonical key of the arrangement the claim is about.
    pub arrangement: String,
    pub name: Option<String>,
    pub rule: StepRule,
    /// The added curve (the removed member of the triple), for
    /// non-direct steps.
    pub added: Option<String>,
    pub k: Option<u32>,
    pub quasihomogeneous: Option<bool>,
    /// Exponents of the smaller arrangement the step builds on.
    pub from_exponents: Option<Vec<i64>>,
    pub free: bool,
    pub exponents: Option<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct FreenessCertificate {
    /// Base first; the last step concludes about the certified
    /// arrangement.
    pub steps: Vec<CertificateStep>,
    pub free: bool,
    pub exponents: Option<Vec<i64>>,
}

fn direct_step(arr: &Arrangement) -> (CertificateStep, bool, Option<Vec<i64>>) {
    let (_, verdict) = analyze_freeness(arr);
    let step = CertificateStep {
        arrangement: arr.key(),
        name: arr.name().map(str::to_owned),
        rule: StepRule::Direct,
        added: None,
        k: None,
        quasihomogeneous: None,
        from_exponents: None,
        free: verdict.free,
        exponents: verdict.exponents.clone(),
    };
    (step, verdict.free, verdict.exponents)
}

struct Memo {
    chains: HashMap<String, (Vec<CertificateStep>, bool, Option<Vec<i64>>)>,
}

fn certify_inner(
    arr: &Arrangement,
    shear: &mut ShearStream,
    memo: &mut Memo,
) -> (Vec<CertificateStep>, bool, Option<Vec<i64>>) {
    let key = arr.key();
    if let Some(hit) = memo.chains.get(&key) {
        return hit.clone();
    }
    let mut candidates: Vec<(u8, u32, usize)> = Vec::new();
    if arr.curves().len() >= 2 {
        for (i, c) in arr.curves().iter().enumerate() {
            let rank = match c.kind {
                CurveKind::Line => 0u8,
                CurveKind::Conic => 1,
                CurveKind::LinePair => continue,
            };
            if let Ok(k) = restriction_point_count(arr, i) {
                candidates.push((rank, k, i));
            }
        }
    }
    // Lines before conics, small k first, later curves preferred on
    // ties for a deterministic chain.
    candidates.sort_by(|a, b| (a.0, a.1, std::cmp::Reverse(a.2)).cmp(&(b.0, b.1, std::cmp::Reverse(b.2))));
    for (_, _, i) in candidates {
        let Ok(triple) = make_triple(arr, i, shear) else {
            continue;
        };
        let Ok(qh) = quasihomogeneous_triple(&triple, shear) else {
            continue;
        };
        if !qh {
            continue;
        }
        let (chain, sub_free, sub_exps) = certify_inner(&triple.deleted, shear, memo);
        if !sub_free {
            continue;
        }
        let Some(known) = sub_exps.as_deref() else {
            continue;
        };
        let inference = infer(&triple, qh, Side::Deleted, known);
        let rule = match triple.removed.kind {
            CurveKind::Line => StepRule::LineAddition,
            CurveKind::Conic if triple.k % 2 == 0 => StepRule::ConicAdditionEven,
            CurveKind::Conic => StepRule::ConicAdditionOdd,
            CurveKind::LinePair => unreachable!("pairs are never candidates"),
        };
        let (free, exponents) = match inference {
            Inference::Free(e) => (true, Some(e)),
            Inference::NotFree => (false, None),
            Inference::Inconclusive => continue,
        };
        let mut steps = chain;
        steps.push(CertificateStep {
            arrangement: key.clone(),
            name: arr.name().map(str::to_owned),
            rule,
            added: Some(triple.removed.label.clone()),
            k: Some(triple.k),
            quasihomogeneous: Some(qh),
            from_exponents: Some(known.to_vec()),
            free,
            exponents: exponents.clone(),
        });
        let out = (steps, free, exponents);
        memo.chains.insert(key, out.clone());
        return out;
    }
    let (step, free, exps) = direct_step(arr);
    let out = (vec![step], free, exps);
    memo.chains.insert(key, out.clone());
    out
}

/// Inductive freeness certificate: a chain of verified theorem steps
/// from a directly-checked base, cross-checked against the direct
/// verdict of the target.
pub fn certify(arr: &Arrangement, shear: &mut ShearStream) -> Result<FreenessCertificate, Error> {
    let mut memo = Memo {
        chains: HashMap::new(),
    };
    let (steps, free, exponents) = certify_inner(arr, shear, &mut memo);
    let (_, direct) = analyze_freeness(arr);
    if direct.free != free || (free && direct.exponents != exponents) {
        return Err(Error::Internal(format!(
            "certificate claims free={free} {exponents:?} but direct computation says free={} {:?}",
            direct.free, direct.exponents
        )));
    }
    Ok(FreenessCertificate {
        steps,
        free,
        exponents,
    })
}

/// The verdict a certificate claims, in the same shape as the direct
/// analysis produces.
pub fn certified_verdict(cert: &FreenessCertificate, direct: &FreenessVerdict) -> bool {
    cert.free == direct.free && (!cert.free || cert.exponents == direct.exponents)
}
