//! Freeness of the derivation module.
//!
//! D0 is the syzygy module of the three partials of the defining
//! polynomial, sitting inside S^3 with the entry degree as grading. The
//! full derivation module splits off the Euler derivation, so verdicts
//! report the exponent 1 alongside the degrees of a minimal generating
//! set of D0; the arrangement is free exactly when D0 has no relations.

use crate::arrangement::Arrangement;
use crate::groebner::buchberger;
use crate::hilbert::HilbertSeries;
use crate::poly::Poly;
use crate::resolve::{
    module_buchberger, resolve_submodule, submodule_hilbert, syzygies, GradedResolution,
    MOrder, Vect,
};
use crate::ring::Order;

pub fn jacobian_ideal(f: &Poly) -> Vec<Poly> {
    (0..3).map(|i| f.partial(i)).collect()
}

/// Degree of the Jacobian scheme: the sum of Tjurina numbers over all
/// singular points, and zero for a smooth curve.
pub fn jacobian_degree(f: &Poly) -> u64 {
    let gb = buchberger(&jacobian_ideal(f), Order::GrevLex);
    let hs = HilbertSeries::of_quotient(&gb, Order::GrevLex, 3);
    if hs.krull_dim() == 0 {
        0
    } else {
        u64::try_from(hs.multiplicity()).expect("positive degree")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub free: bool,
    /// All exponents including the Euler 1, sorted, when free.
    pub exponents: Option<Vec<i64>>,
    /// Start of the minimal resolution of D0 when not free.
    pub betti: Option<GradedResolution>,
    /// Numerator of the Hilbert series of D0 over (1-t)^3.
    pub hilbert_numerator: Vec<i64>,
}

/// D0 and everything the reports need alongside the verdict.
#[derive(Debug, Clone)]
pub struct DerivationModule {
    pub resolution: GradedResolution,
    /// Minimal generators of D0 as vectors (a, b, c) in S^3.
    pub generators: Vec<Vect>,
    pub hilbert: HilbertSeries,
}

/// Syzygies of the Jacobian partials, resolved and with Hilbert data.
pub fn derivation_module(f: &Poly) -> DerivationModule {
    let columns: Vec<Vect> = jacobian_ideal(f)
        .iter()
        .map(|p| Vect::from_polys(std::slice::from_ref(p)))
        .collect();
    let syz = syzygies(&columns);
    let weights = [0i64, 0, 0];
    let (resolution, generators) = resolve_submodule(&syz, &weights);
    let gb = module_buchberger(&generators, MOrder::Pot);
    let hilbert = submodule_hilbert(&gb, 3, &weights, 3);
    DerivationModule {
        resolution,
        generators,
        hilbert,
    }
}

pub fn freeness_verdict(module: &DerivationModule, f: &Poly) -> FreenessVerdict {
    let free = module.resolution.is_free();
    let exponents = free.then(|| {
        let mut e: Vec<i64> = module.resolution.generator_degrees.clone();
        e.push(1);
        e.sort_unstable();
        debug_assert_eq!(
            e.iter().sum::<i64>(),
            i64::from(f.degree().expect("nonzero form")),
            "exponents of a free arrangement sum to the degree"
        );
        e
    });
    FreenessVerdict {
        free,
        exponents,
        betti: (!free).then(|| module.resolution.clone()),
        hilbert_numerator: module.hilbert.numerator().to_vec(),
    }
}

/// Convenience wrapper producing the verdict straight from an arrangement.
pub fn analyze_freeness(arr: &Arrangement) -> (DerivationModule, FreenessVerdict) {
    let f = arr.defining_polynomial();
    let module = derivation_module(&f);
    let verdict = freeness_verdict(&module, &f);
    (module, verdict)
}

pub fn euler_derivation(f: &Poly) -> Vect {
    let ring = f.ring();
    let polys: Vec<Poly> = (0..3).map(|i| Poly::var_idx(ring, i)).collect();
    Vect::from_polys(&polys)
}

fn apply(theta: &Vect, g: &Poly) -> Poly {
    let mut out = Poly::zero(g.ring());
    for (i, a) in theta.components().iter().enumerate() {
        out = &out + &(a * &g.partial(i));
    }
    out
}

/// Whether theta is tangent to every member of the arrangement. The
/// per-curve test and the product test agree for reduced arrangements;
/// both are computed and checked against each other.
pub fn is_derivation(theta: &Vect, arr: &Arrangement) -> bool {
    assert_eq!(theta.ncomp(), 3, "derivations live in S^3");
    let per_curve = arr
        .curves()
        .iter()
        .all(|c| apply(theta, &c.form).exact_div(&c.form).is_some());
    let f = arr.defining_polynomial();
    let on_product = apply(theta, &f).exact_div(&f).is_some();
    assert_eq!(
        per_curve, on_product,
        "tangency to each member must match tangency to the product"
    );
    per_curve
}

fn det3(m: &[Vec<Poly>]) -> Poly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Saito's criterion: three derivations whose coefficient determinant is
/// a nonzero constant multiple of the defining polynomial form a basis
/// of the derivation module. A degree mismatch fails without expanding
/// the determinant.
pub fn saito_check(thetas: &[Vect; 3], arr: &Arrangement) -> bool {
    let f = arr.defining_polynomial();
    let weights = [0i64, 0, 0];
    let mut degree_sum = 0i64;
    for theta in thetas.iter() {
        match theta.degree(&weights) {
            Some(d) if theta.is_homogeneous(&weights) => degree_sum += d,
            _ => return false,
        }
    }
    if degree_sum != i64::from(f.degree().expect("nonzero form")) {
        return false;
    }
    let rows: Vec<Vec<Poly>> = thetas.iter().map(|t| t.components()).collect();
    let det = det3(&rows);
    !det.is_zero() && det.proportional_to(&f)
}

/// The free basis read off a verdict: Euler plus the two generators.
pub fn saito_basis(module: &DerivationModule, f: &Poly) -> Option<[Vect; 3]> {
    if !module.resolution.is_free() || module.generators.len() != 2 {
        return None;
    }
    Some([
        euler_derivation(f),
        module.generators[0].clone(),
        module.generators[1].clone(),
    ])
}
