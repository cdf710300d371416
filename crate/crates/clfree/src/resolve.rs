//! Graded submodules of free modules over Q[x_1..x_n]: Groebner bases,
//! syzygies, minimal generators, and length-one resolutions.
//!
//! Syzygies are computed with tag components: each generator v_i of a
//! submodule of S^m is augmented to (v_i | e_i) in S^(m+k), a basis is
//! computed for a block order in which the first m components dominate,
//! and the basis elements supported entirely on the tags form a basis of
//! the syzygy module.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::poly::Poly;
use crate::q::{Q, Z};
use crate::ring::{Mono, Order, Ring};

/// Element of a free module S^ncomp, terms sorted by (component, grevlex
/// descending) for canonical storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vect {
    ring: Ring,
    ncomp: usize,
    terms: Vec<(usize, Mono, Q)>,
}

/// Module term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MOrder {
    /// Position over term: lower components dominate, grevlex inside.
    Pot,
    /// Two blocks of components; anything in a component below the split
    /// dominates anything at or above it. Pot within each block.
    Block(usize),
}

impl MOrder {
    fn cmp(self, a: (usize, &Mono), b: (usize, &Mono)) -> Ordering {
        let block = |c: usize| match self {
            MOrder::Pot => 0,
            MOrder::Block(split) => usize::from(c >= split),
        };
        // Earlier block is greater; within a block, lower component is
        // greater; within a component, grevlex.
        block(b.0)
            .cmp(&block(a.0))
            .then_with(|| b.0.cmp(&a.0))
            .then_with(|| Order::GrevLex.cmp(a.1, b.1))
    }
}

fn structural_cmp(a: &(usize, Mono, Q), b: &(usize, Mono, Q)) -> Ordering {
    a.0.cmp(&b.0)
        .then_with(|| Order::GrevLex.cmp(&b.1, &a.1))
}

impl Vect {
    pub fn zero(ring: &Ring, ncomp: usize) -> Vect {
        Vect {
            ring: ring.clone(),
            ncomp,
            terms: Vec::new(),
        }
    }

    pub fn unit(ring: &Ring, ncomp: usize, comp: usize) -> Vect {
        Vect {
            ring: ring.clone(),
            ncomp,
            terms: vec![(comp, Mono::one(ring.nvars()), Q::one())],
        }
    }

    pub fn from_polys(polys: &[Poly]) -> Vect {
        let ring = polys
            .first()
            .map(|p| p.ring().clone())
            .expect("nonempty column");
        let mut terms = Vec::new();
        for (c, p) in polys.iter().enumerate() {
            for (m, q) in p.terms() {
                terms.push((c, m.clone(), q.clone()));
            }
        }
        terms.sort_by(structural_cmp);
        Vect {
            ring,
            ncomp: polys.len(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, c: usize) -> Poly {
        Poly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|(tc, _, _)| *tc == c)
                .map(|(_, m, q)| (m.clone(), q.clone()))
                .collect(),
        )
    }

    pub fn components(&self) -> Vec<Poly> {
        (0..self.ncomp).map(|c| self.component(c)).collect()
    }

    /// Degree with component weights; None for zero. Checks nothing.
    pub fn degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms
            .iter()
            .map(|(c, m, _)| m.deg() as i64 + weights[*c])
            .max()
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        match self.terms.first() {
            None => true,
            Some((c0, m0, _)) => {
                let d = m0.deg() as i64 + weights[*c0];
                self.terms
                    .iter()
                    .all(|(c, m, _)| m.deg() as i64 + weights[*c] == d)
            }
        }
    }

    pub fn lead(&self, ord: MOrder) -> Option<(usize, &Mono, &Q)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp((a.0, &a.1), (b.0, &b.1)))
            .map(|(c, m, q)| (*c, m, q))
    }

    fn combine(&self, other: &Vect, negate: bool) -> Vect {
        debug_assert_eq!(self.ncomp, other.ncomp);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => match structural_cmp(a, b) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        let (c, m, qa) = a;
                        let qb = &b.2;
                        let q = if negate { qa - qb } else { qa + qb };
                        if !q.is_zero() {
                            terms.push((*c, m.clone(), q));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                },
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                terms.push(self.terms[i].clone());
                i += 1;
            } else {
                let (c, m, q) = &other.terms[j];
                let q = if negate { -q.clone() } else { q.clone() };
                terms.push((*c, m.clone(), q));
                j += 1;
            }
        }
        Vect {
            ring: self.ring.clone(),
            ncomp: self.ncomp,
            terms,
        }
    }

    pub fn add(&self, other: &Vect) -> Vect {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Vect) -> Vect {
        self.combine(other, true)
    }

    pub fn mul_term(&self, mono: &Mono, c: &Q) -> Vect {
        if c.is_zero() {
            return Vect::zero(&self.ring, self.ncomp);
        }
        let mut terms: Vec<(usize, Mono, Q)> = self
            .terms
            .iter()
            .map(|(tc, m, q)| (*tc, m.mul(mono), q * c))
            .collect();
        terms.sort_by(structural_cmp);
        Vect {
            ring: self.ring.clone(),
            ncomp: self.ncomp,
            terms,
        }
    }

    pub fn scale(&self, c: &Q) -> Vect {
        self.mul_term(&Mono::one(self.ring.nvars()), c)
    }

    /// Integer-primitive form with positive leading coefficient under Pot.
    pub fn primitive(&self) -> Vect {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = Z::zero();
        let mut den_lcm = Z::one();
        for (_, _, q) in &self.terms {
            num_gcd = num_integer::Integer::gcd(&num_gcd, q.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, q.denom());
        }
        let mut scale = Q::new(den_lcm, num_gcd);
        let lead = self.lead(MOrder::Pot).unwrap().2;
        if (lead * &scale).is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Appends zero components on the right.
    pub fn extended(&self, extra: usize) -> Vect {
        Vect {
            ring: self.ring.clone(),
            ncomp: self.ncomp + extra,
            terms: self.terms.clone(),
        }
    }

    /// Keeps components from `from` on, renumbered to start at zero.
    pub fn projected(&self, from: usize) -> Vect {
        Vect {
            ring: self.ring.clone(),
            ncomp: self.ncomp - from,
            terms: self
                .terms
                .iter()
                .filter(|(c, _, _)| *c >= from)
                .map(|(c, m, q)| (c - from, m.clone(), q.clone()))
                .collect(),
        }
    }

    /// Whether all terms live in components >= from.
    pub fn supported_from(&self, from: usize) -> bool {
        self.terms.iter().all(|(c, _, _)| *c >= from)
    }
}

/// Full normal form of v against basis under ord.
pub fn module_normal_form(v: &Vect, basis: &[Vect], ord: MOrder) -> Vect {
    let leads: Vec<(usize, Mono, Q)> = basis
        .iter()
        .map(|g| {
            let (c, m, q) = g.lead(ord).expect("basis elements are nonzero");
            (c, m.clone(), q.clone())
        })
        .collect();
    let mut rem = Vect::zero(&v.ring, v.ncomp);
    let mut cur = v.clone();
    while let Some((c, m, q)) = cur.lead(ord).map(|(c, m, q)| (c, m.clone(), q.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lc, lm, _))| {
                if *lc == c {
                    m.try_div(lm).map(|quot| (i, quot))
                } else {
                    None
                }
            });
        if let Some((i, quot)) = hit {
            let scale = &q / &leads[i].2;
            cur = cur.sub(&basis[i].mul_term(&quot, &scale));
        } else {
            let mut t = Vect::zero(&v.ring, v.ncomp);
            t.terms.push((c, m.clone(), q.clone()));
            rem = rem.add(&t);
            cur = cur.sub(&t);
        }
    }
    rem
}

/// Reduced Groebner basis of the submodule generated by gens.
pub fn module_buchberger(gens: &[Vect], ord: MOrder) -> Vec<Vect> {
    let mut basis: Vec<Vect> = gens
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.primitive())
        .collect();
    if basis.is_empty() {
        return Vec::new();
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some(pos) = select_pair(&basis, &pairs, ord) {
        let (i, j) = pairs.swap_remove(pos);
        let (ci, mi, qi) = basis[i].lead(ord).unwrap();
        let (cj, mj, qj) = basis[j].lead(ord).unwrap();
        if ci != cj {
            continue;
        }
        let l = mi.lcm(mj);
        let a = basis[i].mul_term(&l.try_div(mi).unwrap(), &(&Q::one() / qi));
        let b = basis[j].mul_term(&l.try_div(mj).unwrap(), &(&Q::one() / qj));
        let s = a.sub(&b);
        let nf = module_normal_form(&s, &basis, ord);
        if !nf.is_zero() {
            let nf = nf.primitive();
            basis.push(nf);
            let k = basis.len() - 1;
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    module_interreduce(basis, ord)
}

fn select_pair(basis: &[Vect], pairs: &[(usize, usize)], ord: MOrder) -> Option<usize> {
    // Same-component pairs only, smallest lcm degree first.
    let mut best: Option<(u32, usize)> = None;
    for (pos, (i, j)) in pairs.iter().enumerate() {
        let (ci, mi, _) = basis[*i].lead(ord).unwrap();
        let (cj, mj, _) = basis[*j].lead(ord).unwrap();
        if ci != cj {
            continue;
        }
        let d = mi.lcm(mj).deg();
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, pos));
        }
    }
    match best {
        Some((_, pos)) => Some(pos),
        None => {
            // Only cross-component pairs remain; they reduce to nothing.
            if pairs.is_empty() {
                None
            } else {
                Some(0)
            }
        }
    }
}

fn module_interreduce(basis: Vec<Vect>, ord: MOrder) -> Vec<Vect> {
    let mut keep: Vec<Vect> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        let (ca, ma, _) = a.lead(ord).unwrap();
        let (cb, mb, _) = b.lead(ord).unwrap();
        ord.cmp((ca, ma), (cb, mb))
    });
    for g in &sorted {
        let (c, m, _) = g.lead(ord).unwrap();
        let redundant = keep.iter().any(|h| {
            let (hc, hm, _) = h.lead(ord).unwrap();
            hc == c && hm.divides(m)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let snapshot = keep.clone();
    let mut out = Vec::new();
    for (i, g) in snapshot.iter().enumerate() {
        let others: Vec<Vect> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = module_normal_form(g, &others, ord);
        if !r.is_zero() {
            out.push(r.primitive());
        }
    }
    out.sort_by(|a, b| {
        let (ca, ma, _) = a.lead(MOrder::Pot).unwrap();
        let (cb, mb, _) = b.lead(MOrder::Pot).unwrap();
        MOrder::Pot.cmp((cb, mb), (ca, ma))
    });
    out
}

/// Whether v lies in the submodule with Groebner basis gb.
pub fn in_submodule(v: &Vect, gb: &[Vect], ord: MOrder) -> bool {
    if gb.is_empty() {
        return v.is_zero();
    }
    module_normal_form(v, gb, ord).is_zero()
}

/// Groebner basis (for Pot) of the syzygy module of vs inside S^len(vs).
pub fn syzygies(vs: &[Vect]) -> Vec<Vect> {
    let k = vs.len();
    if k == 0 {
        return Vec::new();
    }
    let ring = vs[0].ring().clone();
    let m = vs[0].ncomp();
    let mut aug: Vec<Vect> = Vec::with_capacity(k);
    for (i, v) in vs.iter().enumerate() {
        debug_assert_eq!(v.ncomp(), m);
        let mut a = v.extended(k);
        let tag = Vect::unit(&ring, m + k, m + i);
        a = a.add(&tag);
        aug.push(a);
    }
    let gb = module_buchberger(&aug, MOrder::Block(m));
    let mut out: Vec<Vect> = gb
        .into_iter()
        .filter(|g| g.supported_from(m))
        .map(|g| g.projected(m))
        .collect();
    out.sort_by(|a, b| {
        let (ca, ma, _) = a.lead(MOrder::Pot).unwrap();
        let (cb, mb, _) = b.lead(MOrder::Pot).unwrap();
        MOrder::Pot.cmp((cb, mb), (ca, ma))
    });
    out
}

/// Minimal homogeneous generating set, greedily pruned in degree order.
pub fn minimal_generators(gens: &[Vect], weights: &[i64]) -> Vec<Vect> {
    let mut nonzero: Vec<Vect> = gens
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.primitive())
        .collect();
    for v in &nonzero {
        assert!(
            v.is_homogeneous(weights),
            "minimal generators need homogeneous input"
        );
    }
    nonzero.sort_by(|a, b| {
        a.degree(weights)
            .cmp(&b.degree(weights))
            .then_with(|| a.terms.len().cmp(&b.terms.len()))
            .then_with(|| {
                let (ca, ma, _) = a.lead(MOrder::Pot).unwrap();
                let (cb, mb, _) = b.lead(MOrder::Pot).unwrap();
                MOrder::Pot.cmp((cb, mb), (ca, ma))
            })
    });
    let mut kept: Vec<Vect> = Vec::new();
    let mut kept_gb: Vec<Vect> = Vec::new();
    for v in nonzero {
        if !in_submodule(&v, &kept_gb, MOrder::Pot) {
            kept.push(v.clone());
            kept_gb = module_buchberger(&kept, MOrder::Pot);
        }
    }
    kept
}

/// Start of a minimal graded free resolution of the span of gens:
/// generator degrees and, one step further, relation degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedResolution {
    pub generator_degrees: Vec<i64>,
    pub relation_degrees: Vec<i64>,
}

impl GradedResolution {
    pub fn is_free(&self) -> bool {
        self.relation_degrees.is_empty()
    }
}

/// Resolves the submodule generated by gens (homogeneous for weights).
pub fn resolve_submodule(gens: &[Vect], weights: &[i64]) -> (GradedResolution, Vec<Vect>) {
    let minimal = minimal_generators(gens, weights);
    let mut generator_degrees: Vec<i64> = minimal
        .iter()
        .map(|v| v.degree(weights).expect("nonzero"))
        .collect();
    generator_degrees.sort_unstable();
    if minimal.is_empty() {
        return (
            GradedResolution {
                generator_degrees,
                relation_degrees: Vec::new(),
            },
            minimal,
        );
    }
    let rel_gb = syzygies(&minimal);
    let tag_weights: Vec<i64> = minimal
        .iter()
        .map(|v| v.degree(weights).expect("nonzero"))
        .collect();
    let rel_min = minimal_generators(&rel_gb, &tag_weights);
    let mut relation_degrees: Vec<i64> = rel_min
        .iter()
        .map(|v| v.degree(&tag_weights).expect("nonzero"))
        .collect();
    relation_degrees.sort_unstable();
    (
        GradedResolution {
            generator_degrees,
            relation_degrees,
        },
        minimal,
    )
}

/// Hilbert series of the submodule of ⊕ S(-w_c) spanned by a Groebner
/// basis, as a numerator over (1-t)^nvars. Weights must be nonnegative.
pub fn submodule_hilbert(
    gb: &[Vect],
    ncomp: usize,
    weights: &[i64],
    nvars: usize,
) -> crate::hilbert::HilbertSeries {
    use crate::hilbert::HilbertSeries;
    let mut numerator: Vec<i64> = Vec::new();
    for c in 0..ncomp {
        let leads: Vec<Mono> = gb
            .iter()
            .filter_map(|g| {
                let (lc, lm, _) = g.lead(MOrder::Pot)?;
                if lc == c {
                    Some(lm.clone())
                } else {
                    None
                }
            })
            .collect();
        // HS of the monomial ideal L_c is (1 - N_c)/(1-t)^n.
        let quotient = HilbertSeries::from_leading_terms(&leads, nvars);
        let mut ideal_num = vec![0i64; quotient.numerator().len().max(1)];
        ideal_num[0] = 1;
        for (i, &x) in quotient.numerator().iter().enumerate() {
            ideal_num[i] -= x;
        }
        let w = usize::try_from(weights[c]).expect("nonnegative weights");
        if numerator.len() < ideal_num.len() + w {
            numerator.resize(ideal_num.len() + w, 0);
        }
        for (i, &x) in ideal_num.iter().enumerate() {
            numerator[i + w] += x;
        }
    }
    crate::hilbert::HilbertSeries::from_numerator(numerator, nvars)
}
