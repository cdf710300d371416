//! Hilbert series of graded quotients, computed from leading term ideals.
//!
//! A series is stored as an integer numerator N(t) with the convention
//! HS = N(t) / (1-t)^nvars. The numerator of a monomial quotient is found
//! by the standard pivot recursion
//! N(S/L) = N(S/(L + x)) + t * N(S/(L : x)).

use crate::groebner::leading_monomials;
use crate::poly::Poly;
use crate::ring::{Mono, Order};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    nvars: usize,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Minimal generators among a set of monomials.
fn minimalize(mut gens: Vec<Mono>) -> Vec<Mono> {
    gens.sort_by_key(|m| m.deg());
    let mut out: Vec<Mono> = Vec::new();
    for m in gens {
        if !out.iter().any(|p| p.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator_of_monomial_ideal(gens: &[Mono], nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    // Pivot variable: most frequent among the generators. When every
    // variable shows up at most once the generators are pairwise coprime,
    // a regular sequence, and the numerator is a product.
    let mut freq = vec![0usize; nvars];
    for m in gens {
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                freq[i] += 1;
            }
        }
    }
    let (pivot, best) = freq
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .map(|(i, &c)| (i, c))
        .unwrap();
    if best <= 1 {
        let mut num = vec![1];
        for m in gens {
            let d = m.deg() as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] = -1;
            num = poly_mul(&num, &f);
        }
        return num;
    }
    // L + (x_pivot): keep generators free of the pivot, plus the pivot.
    let mut plus: Vec<Mono> = gens
        .iter()
        .filter(|m| m.exps()[pivot] == 0)
        .cloned()
        .collect();
    plus.push(Mono::var(nvars, pivot));
    // L : x_pivot: lower the pivot exponent by one everywhere.
    let colon: Vec<Mono> = gens
        .iter()
        .map(|m| {
            let mut e = m.exps().to_vec();
            if e[pivot] > 0 {
                e[pivot] -= 1;
            }
            Mono::from_exps(e)
        })
        .collect();
    let mut num = numerator_of_monomial_ideal(&minimalize(plus), nvars);
    let colon_num = numerator_of_monomial_ideal(&minimalize(colon), nvars);
    poly_add_shifted(&mut num, &colon_num, 1);
    trim(num)
}

impl HilbertSeries {
    /// Series of S / (monomial ideal generated by leads).
    pub fn from_leading_terms(leads: &[Mono], nvars: usize) -> HilbertSeries {
        let numerator = numerator_of_monomial_ideal(&minimalize(leads.to_vec()), nvars);
        HilbertSeries { numerator, nvars }
    }

    /// Series of S / I for a homogeneous ideal given by a Groebner basis.
    pub fn of_quotient(gb: &[Poly], ord: Order, nvars: usize) -> HilbertSeries {
        if gb.is_empty() {
            return HilbertSeries {
                numerator: vec![1],
                nvars,
            };
        }
        let leads = leading_monomials(gb, ord);
        HilbertSeries::from_leading_terms(&leads, nvars)
    }

    pub fn from_numerator(numerator: Vec<i64>, nvars: usize) -> HilbertSeries {
        HilbertSeries {
            numerator: trim(numerator),
            nvars,
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator with all (1-t) factors removed, and how many were removed.
    fn reduced(&self) -> (Vec<i64>, usize) {
        let mut n = self.numerator.clone();
        let mut k = 0;
        loop {
            if n.is_empty() || n.iter().sum::<i64>() != 0 {
                return (n, k);
            }
            // Divide by (1 - t): q_i = sum_{j<=i} n_j.
            let mut q = vec![0i64; n.len() - 1];
            let mut acc = 0;
            for i in 0..n.len() - 1 {
                acc += n[i];
                q[i] = acc;
            }
            n = trim(q);
            k += 1;
        }
    }

    /// Krull dimension of the quotient (dimension of the affine cone).
    pub fn krull_dim(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let (_, k) = self.reduced();
        self.nvars - k
    }

    /// Multiplicity: value of the fully reduced numerator at t = 1.
    pub fn multiplicity(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let (n, _) = self.reduced();
        n.iter().sum()
    }

    /// Value of the Hilbert function at degree d.
    pub fn dim_at(&self, d: i64) -> i64 {
        let mut total = 0;
        for (j, &c) in self.numerator.iter().enumerate() {
            let m = d - j as i64;
            if m >= 0 {
                total += c * monomial_count(m, self.nvars);
            }
        }
        total
    }

    /// Smallest degree from which the Hilbert function of a
    /// one-dimensional quotient is constant.
    pub fn stable_degree(&self) -> i64 {
        self.numerator.len() as i64
    }
}

/// Number of monomials of degree d in n variables: C(d + n - 1, n - 1).
pub fn monomial_count(d: i64, n: usize) -> i64 {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    binomial(d + n as i64 - 1, n as i64 - 1)
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
