//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept sorted in descending grevlex order with nonzero
//! coefficients; all arithmetic maintains this invariant. Leading terms
//! under other orders are found by scanning, which is cheap at the sizes
//! arising from plane curves of degree <= 13.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::q::{Q, Z};
use crate::ring::{Mono, Order, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Mono, Q)>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Mono::one(ring.nvars()), c)],
        }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Q::one())
    }

    pub fn var(ring: &Ring, name: &str) -> Option<Poly> {
        let idx = ring.var_index(name)?;
        Some(Poly::var_idx(ring, idx))
    }

    pub fn var_idx(ring: &Ring, idx: usize) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: vec![(Mono::var(ring.nvars(), idx), Q::one())],
        }
    }

    pub fn term(ring: &Ring, mono: Mono, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(mono, c)],
        }
    }

    /// Builds from unsorted (mono, coeff) pairs, combining duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Mono, Q)>) -> Poly {
        terms.sort_by(|a, b| Order::GrevLex.cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.deg();
                self.terms.iter().all(|(m, _)| m.deg() == d)
            }
        }
    }

    pub fn coeff(&self, mono: &Mono) -> Q {
        match self
            .terms
            .binary_search_by(|(m, _)| Order::GrevLex.cmp(mono, m))
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Leading term under the given order.
    pub fn leading(&self, ord: Order) -> Option<(&Mono, &Q)> {
        if self.terms.is_empty() {
            return None;
        }
        if ord == Order::GrevLex {
            let (m, c) = &self.terms[0];
            return Some((m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn leading_mono(&self, ord: Order) -> Option<Mono> {
        self.leading(ord).map(|(m, _)| m.clone())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        // Multiplying by a fixed monomial preserves grevlex order.
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match Order::GrevLex.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate_other { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate_other { -c } else { c.clone() }));
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable idx.
    pub fn partial(&self, idx: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            if e > 0 {
                let mut exps = m.exps().to_vec();
                exps[idx] = e - 1;
                terms.push((Mono::from_exps(exps), c * Q::from_integer(Z::from(e))));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }

    /// Ring map determined by images of the variables. All images must live
    /// in `target`.
    pub fn substitute(&self, target: &Ring, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        // Precompute powers of each image up to the needed exponent.
        let mut maxes = vec![0u32; images.len()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                maxes[i] = maxes[i].max(e);
            }
        }
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let mut p = vec![Poly::one(target)];
            for e in 1..=maxes[i] {
                let next = &p[(e - 1) as usize] * img;
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets variable idx to 1 and drops it from the ring.
    pub fn dehomogenize(&self, idx: usize) -> Poly {
        let target = self.ring.without_var(idx);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.remove(idx);
            terms.push((Mono::from_exps(exps), c.clone()));
        }
        Poly::from_terms(&target, terms)
    }

    /// Inserts a new variable at position idx and multiplies every term by
    /// the power of it that makes the result homogeneous of degree
    /// max(deg, self.degree()).
    pub fn homogenize(&self, target: &Ring, idx: usize) -> Poly {
        assert_eq!(target.nvars(), self.ring.nvars() + 1);
        let d = self.degree().unwrap_or(0);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.insert(idx, d - m.deg());
            terms.push((Mono::from_exps(exps), c.clone()));
        }
        Poly::from_terms(target, terms)
    }

    /// Applies a variable permutation: output variable i carries the
    /// exponent of input variable perm[i].
    pub fn permute_vars(&self, target: &Ring, perm: &[usize]) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let exps: Vec<u32> = perm.iter().map(|&i| m.exps()[i]).collect();
            terms.push((Mono::from_exps(exps), c.clone()));
        }
        Poly::from_terms(target, terms)
    }

    /// Integer content times sign of the leading coefficient: the rational
    /// c such that self/c has coprime integer coefficients and positive
    /// leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Q {
        if self.is_zero() {
            return Q::zero();
        }
        let mut num_gcd = Z::zero();
        let mut den_lcm = Z::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        content
    }

    /// Divides out the content: primitive integer coefficients, positive
    /// leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Exact division; None if other does not divide self.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        assert_eq!(self.ring, other.ring);
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(&self.ring));
        }
        let (lm, lc) = other.leading(Order::GrevLex).unwrap();
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo_terms = Vec::new();
        while let Some((m, c)) = rem.leading(Order::GrevLex) {
            let qm = m.try_div(&lm)?;
            let qc = c / &lc;
            rem = rem.merge(&other.mul_term(&qm, &qc), true);
            quo_terms.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, quo_terms))
    }

    /// True when self = c * other for some nonzero rational c.
    pub fn proportional_to(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.primitive() == other.primitive()
    }

    /// Collects the coefficient of each power of variable idx, as
    /// polynomials in the remaining variables (which stay in this ring).
    pub fn coeffs_in_var(&self, idx: usize) -> Vec<Poly> {
        let d = self
            .terms
            .iter()
            .map(|(m, _)| m.exps()[idx])
            .max()
            .unwrap_or(0);
        let mut out = vec![Poly::zero(&self.ring); (d + 1) as usize];
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            let mut exps = m.exps().to_vec();
            exps[idx] = 0;
            out[e as usize] =
                &out[e as usize] + &Poly::term(&self.ring, Mono::from_exps(exps), c.clone());
        }
        out
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps()[idx])
            .max()
            .unwrap_or(0)
    }

    /// True if the polynomial involves no variable except possibly idx.
    pub fn is_univariate_in(&self, idx: usize) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| i == idx || e == 0))
    }

    /// Dense coefficient list (constant first) of a univariate polynomial.
    pub fn univariate_coeffs(&self, idx: usize) -> Vec<Q> {
        assert!(self.is_univariate_in(idx));
        let d = self.degree_in(idx);
        let mut out = vec![Q::zero(); (d + 1) as usize];
        for (m, c) in &self.terms {
            out[m.exps()[idx] as usize] = c.clone();
        }
        out
    }

    /// Builds a univariate polynomial from dense coefficients.
    pub fn from_univariate(ring: &Ring, idx: usize, coeffs: &[Q]) -> Poly {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut exps = vec![0u32; ring.nvars()];
                exps[idx] = e as u32;
                (Mono::from_exps(exps), c.clone())
            })
            .collect();
        Poly::from_terms(ring, terms)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        self.merge(other, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self.merge(other, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::q::qi;

    fn p(s: &str) -> Poly {
        parse_poly(&Ring::xyz(), s).unwrap()
    }

    #[test]
    fn arithmetic_roundtrip() {
        let a = p("x^2 - x*z + 5y^2 - 5yz");
        let b = p("x + y - z");
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&p("x + y")), None);
    }

    #[test]
    fn degree_and_homogeneity() {
        assert!(p("x^2-xz+5y^2-5yz").is_homogeneous());
        assert!(!p("x^2-x").is_homogeneous());
        assert_eq!(p("x^3+y").degree(), Some(3));
        assert_eq!(Poly::zero(&Ring::xyz()).degree(), None);
    }

    #[test]
    fn partials_and_euler_identity() {
        // x*Fx + y*Fy + z*Fz = deg(F) * F for homogeneous F.
        let f = p("x^2y - 3xyz + z^3");
        let e = &(&(&p("x") * &f.partial(0)) + &(&p("y") * &f.partial(1)))
            + &(&p("z") * &f.partial(2));
        assert_eq!(e, f.scale(&qi(3)));
    }

    #[test]
    fn substitution_and_eval() {
        let f = p("y^2 - xz");
        let st = Ring::st();
        let images = vec![
            parse_poly(&st, "s^2").unwrap(),
            parse_poly(&st, "st").unwrap(),
            parse_poly(&st, "t^2").unwrap(),
        ];
        assert!(f.substitute(&st, &images).is_zero());
        assert_eq!(f.eval(&[qi(1), qi(2), qi(4)]), qi(0));
        assert_eq!(f.eval(&[qi(1), qi(3), qi(4)]), qi(5));
    }

    #[test]
    fn dehomogenize_homogenize() {
        let f = p("x^2 - xz + 5y^2 - 5yz");
        let g = f.dehomogenize(2);
        assert_eq!(g.ring().vars(), &["x".to_string(), "y".to_string()]);
        let back = g.homogenize(&Ring::xyz(), 2);
        assert_eq!(back, f);
    }

    #[test]
    fn content_and_primitive() {
        let f = p("4x^2 - 6yz").scale(&crate::q::qr(1, 3));
        let prim = f.primitive();
        assert_eq!(prim, p("2x^2 - 3yz"));
        let g = p("x").scale(&qi(-2));
        assert_eq!(g.primitive(), p("x"));
    }

    #[test]
    fn univariate_bridge() {
        let r = Ring::new(&["x", "y"]);
        let f = parse_poly(&r, "3x^2 - x + 7").unwrap();
        let coeffs = f.univariate_coeffs(0);
        assert_eq!(coeffs, vec![qi(7), qi(-1), qi(3)]);
        assert_eq!(Poly::from_univariate(&r, 0, &coeffs), f);
    }
}
