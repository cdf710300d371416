//! Exact factorization over Q of univariate polynomials and binary forms.
//!
//! The pipeline is classical: Yun squarefree decomposition, reduction mod a
//! small prime where the image stays squarefree, Berlekamp splitting over
//! F_p (deterministic, the primes are tiny), multifactor Hensel lifting to
//! beat the Mignotte bound, and subset recombination with leading
//! coefficient correction.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::Poly;
use crate::q::{Q, Z};

/// Dense integer polynomial, constant term first, no trailing zeros.
type ZPoly = Vec<Z>;

fn ztrim(mut f: ZPoly) -> ZPoly {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
    f
}

fn zdeg(f: &ZPoly) -> isize {
    f.len() as isize - 1
}

fn zlc(f: &ZPoly) -> Z {
    f.last().cloned().unwrap_or_else(Z::zero)
}

fn zmul(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Z::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    ztrim(out)
}

fn zsub(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let mut out = vec![Z::zero(); f.len().max(g.len())];
    for (i, a) in f.iter().enumerate() {
        out[i] += a;
    }
    for (i, b) in g.iter().enumerate() {
        out[i] -= b;
    }
    ztrim(out)
}

fn zderiv(f: &ZPoly) -> ZPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    ztrim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Z::from(i))
            .collect(),
    )
}

fn zcontent(f: &ZPoly) -> Z {
    let mut g = Z::zero();
    for c in f {
        g = g.gcd(c);
    }
    g
}

/// Primitive part with positive leading coefficient.
fn zprimitive(f: &ZPoly) -> ZPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let mut c = zcontent(f);
    if zlc(f).is_negative() {
        c = -c;
    }
    f.iter().map(|a| a / &c).collect()
}

/// Exact division over Q. Returns the quotient when g divides f with an
/// integer quotient (always the case for a primitive divisor), else None.
fn zdivides(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    if f.is_empty() {
        return Some(Vec::new());
    }
    if g.is_empty() || zdeg(f) < zdeg(g) {
        return None;
    }
    let mut rem: Vec<Q> = f.iter().map(|c| Q::from_integer(c.clone())).collect();
    let glc = Q::from_integer(zlc(g));
    let dg = g.len() - 1;
    let mut quo = vec![Q::zero(); rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = &rem[k] / &glc;
        if !c.is_zero() {
            quo[k - dg] = c.clone();
            for (j, b) in g.iter().enumerate() {
                let s = &c * &Q::from_integer(b.clone());
                rem[k - dg + j] -= s;
            }
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    if quo.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(ztrim(quo.iter().map(|c| c.numer().clone()).collect()))
}

/// Gcd of primitive integer polynomials (monic Euclid over Q, then
/// primitive part).
fn zgcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    let mut a: Vec<Q> = f.iter().map(|c| Q::from_integer(c.clone())).collect();
    let mut b: Vec<Q> = g.iter().map(|c| Q::from_integer(c.clone())).collect();
    let trim_q = |v: &mut Vec<Q>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    };
    trim_q(&mut a);
    trim_q(&mut b);
    while !b.is_empty() {
        // a mod b
        let blc = b.last().unwrap().clone();
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.len() - b.len();
            let c = a.last().unwrap() / &blc;
            for (j, bc) in b.iter().enumerate() {
                let s = &c * bc;
                a[k + j] -= s;
            }
            trim_q(&mut a);
            if a.len() < b.len() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return Vec::new();
    }
    let mut den = Z::one();
    for c in &a {
        den = den.lcm(c.denom());
    }
    let z: ZPoly = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    zprimitive(&ztrim(z))
}

/// Yun's squarefree decomposition of a primitive polynomial. Returns
/// squarefree primitive factors with multiplicities; their product with
/// multiplicities is f up to sign.
fn yun(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    if zdeg(f) < 1 {
        return Vec::new();
    }
    let fp = zderiv(f);
    let a0 = zgcd(f, &fp);
    if zdeg(&a0) == 0 {
        return vec![(zprimitive(f), 1)];
    }
    let mut out = Vec::new();
    let mut b = zdivides(f, &a0).expect("gcd divides");
    let mut c = zdivides(&fp, &a0).expect("gcd divides derivative");
    let mut d = zsub(&c, &zderiv(&b));
    let mut i = 1u32;
    while zdeg(&b) > 0 {
        let ai = zgcd(&b, &d);
        if zdeg(&ai) > 0 {
            out.push((ai.clone(), i));
        }
        b = zdivides(&b, &ai).expect("factor divides");
        c = zdivides(&d, &ai).expect("factor divides");
        d = zsub(&c, &zderiv(&b));
        i += 1;
    }
    out
}

// -------- arithmetic mod a small prime --------

type PPoly = Vec<u64>;

fn ptrim(mut f: PPoly) -> PPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pinv(a: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and a != 0 mod p.
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    ((t % p as i128 + p as i128) % p as i128) as u64
}

fn pmulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn psub(f: &[u64], g: &[u64], p: u64) -> PPoly {
    let mut out = vec![0u64; f.len().max(g.len())];
    for (i, a) in f.iter().enumerate() {
        out[i] = (out[i] + a) % p;
    }
    for (i, b) in g.iter().enumerate() {
        out[i] = (out[i] + p - (b % p)) % p;
    }
    ptrim(out)
}

fn pmul(f: &PPoly, g: &PPoly, p: u64) -> PPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + pmulmod(a, b, p)) % p;
        }
    }
    ptrim(out)
}

fn pdivrem(f: &PPoly, g: &PPoly, p: u64) -> (PPoly, PPoly) {
    let mut rem = f.clone();
    if g.is_empty() {
        panic!("division by zero polynomial");
    }
    let dg = g.len() - 1;
    if rem.len() <= dg {
        return (Vec::new(), ptrim(rem));
    }
    let inv = pinv(*g.last().unwrap(), p);
    let mut quo = vec![0u64; rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = pmulmod(rem[k], inv, p);
        if c != 0 {
            quo[k - dg] = c;
            for (j, &b) in g.iter().enumerate() {
                rem[k - dg + j] = (rem[k - dg + j] + p - pmulmod(c, b, p)) % p;
            }
        }
    }
    (ptrim(quo), ptrim(rem))
}

fn pgcd(f: &PPoly, g: &PPoly, p: u64) -> PPoly {
    let (mut a, mut b) = (ptrim(f.clone()), ptrim(g.clone()));
    while !b.is_empty() {
        let (_, r) = pdivrem(&a, &b, p);
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

fn pmonic(f: &PPoly, p: u64) -> PPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let inv = pinv(*f.last().unwrap(), p);
    f.iter().map(|&c| pmulmod(c, inv, p)).collect()
}

fn pderiv(f: &PPoly, p: u64) -> PPoly {
    if f.len() <= 1 {
        return Vec::new();
    }
    ptrim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| pmulmod(c, (i as u64) % p, p))
            .collect(),
    )
}

fn ppowmod(base: &PPoly, mut e: u64, modulus: &PPoly, p: u64) -> PPoly {
    let mut result = vec![1u64];
    let mut b = pdivrem(base, modulus, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = pdivrem(&pmul(&result, &b, p), modulus, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), modulus, p).1;
        e >>= 1;
    }
    result
}

/// Berlekamp factorization of a squarefree monic polynomial over F_p.
fn berlekamp(f: &PPoly, p: u64) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Rows of the Frobenius matrix: x^(p*i) mod f.
    let xp = ppowmod(&vec![0, 1], p, f, p);
    let mut rows: Vec<PPoly> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        rows.push(cur.clone());
        cur = pdivrem(&pmul(&cur, &xp, p), f, p).1;
    }
    // Build (Q - I)^T and compute its null space: vectors v with v(x)^p = v(x) mod f.
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            let v = row.get(j).copied().unwrap_or(0);
            mat[j][i] = v;
        }
    }
    for i in 0..n {
        mat[i][i] = (mat[i][i] + p - 1) % p;
    }
    // Gaussian elimination to find the null space basis.
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        if let Some(r) = (rank..n).find(|&r| mat[r][col] != 0) {
            mat.swap(rank, r);
            let inv = pinv(mat[rank][col], p);
            for c in 0..n {
                mat[rank][c] = pmulmod(mat[rank][c], inv, p);
            }
            for r in 0..n {
                if r != rank && mat[r][col] != 0 {
                    let factor = mat[r][col];
                    for c in 0..n {
                        mat[r][c] = (mat[r][c] + p - pmulmod(factor, mat[rank][c], p)) % p;
                    }
                }
            }
            pivots[col] = Some(rank);
            rank += 1;
        }
    }
    let nullity = n - rank;
    if nullity == 1 {
        return vec![pmonic(f, p)];
    }
    let mut basis: Vec<PPoly> = Vec::new();
    for col in 0..n {
        if pivots[col].is_none() {
            let mut v = vec![0u64; n];
            v[col] = 1;
            for c in 0..n {
                if let Some(r) = pivots[c] {
                    v[c] = (p - mat[r][col]) % p;
                }
            }
            basis.push(ptrim(v));
        }
    }
    let mut factors = vec![pmonic(f, p)];
    for v in &basis {
        if factors.len() == nullity {
            break;
        }
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut parts = Vec::new();
            let mut rest = u.clone();
            for c in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                let shifted = psub(v, &[c], p);
                let g = pgcd(&rest, &shifted, p);
                if g.len() > 1 && g.len() < rest.len() {
                    rest = pdivrem(&rest, &g, p).0;
                    parts.push(g);
                }
            }
            parts.push(rest);
            next.extend(parts.into_iter().filter(|q| q.len() > 1));
        }
        factors = next;
    }
    factors.into_iter().map(|f| pmonic(&f, p)).collect()
}

// -------- arithmetic mod p^e (BigInt coefficients) --------

type MPolyZ = Vec<Z>;

fn mnorm(f: &MPolyZ, m: &Z) -> MPolyZ {
    ztrim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn mmul(f: &MPolyZ, g: &MPolyZ, m: &Z) -> MPolyZ {
    mnorm(&zmul(f, g), m)
}

fn msub(f: &MPolyZ, g: &MPolyZ, m: &Z) -> MPolyZ {
    mnorm(&zsub(f, g), m)
}

fn madd(f: &MPolyZ, g: &MPolyZ, m: &Z) -> MPolyZ {
    let mut out = vec![Z::zero(); f.len().max(g.len())];
    for (i, a) in f.iter().enumerate() {
        out[i] += a;
    }
    for (i, b) in g.iter().enumerate() {
        out[i] += b;
    }
    mnorm(&out, m)
}

/// Division with remainder mod m by a monic divisor.
fn mdivrem_monic(f: &MPolyZ, g: &MPolyZ, m: &Z) -> (MPolyZ, MPolyZ) {
    assert!(g.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let mut rem = f.clone();
    let dg = g.len() - 1;
    if rem.len() <= dg {
        return (Vec::new(), mnorm(&rem, m));
    }
    let mut quo = vec![Z::zero(); rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = rem[k].mod_floor(m);
        if !c.is_zero() {
            quo[k - dg] = c.clone();
            for (j, b) in g.iter().enumerate() {
                rem[k - dg + j] = (&rem[k - dg + j] - &c * b).mod_floor(m);
            }
        }
    }
    (mnorm(&quo, m), mnorm(&rem, m))
}

fn to_mod(f: &ZPoly, m: &Z) -> MPolyZ {
    mnorm(f, m)
}

fn from_p(f: &PPoly) -> MPolyZ {
    f.iter().map(|&c| Z::from(c)).collect()
}

/// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
/// to the same congruences mod m^2. h stays monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &MPolyZ,
    h: &MPolyZ,
    s: &MPolyZ,
    t: &MPolyZ,
    m: &Z,
) -> (MPolyZ, MPolyZ, MPolyZ, MPolyZ) {
    let m2 = m * m;
    let e = msub(&to_mod(f, &m2), &mmul(g, h, &m2), &m2);
    let (q, r) = mdivrem_monic(&mmul(s, &e, &m2), h, &m2);
    let g1 = madd(&madd(g, &mmul(t, &e, &m2), &m2), &mmul(&q, g, &m2), &m2);
    let h1 = madd(h, &r, &m2);
    let b = msub(
        &madd(&mmul(s, &g1, &m2), &mmul(t, &h1, &m2), &m2),
        &vec![Z::one()],
        &m2,
    );
    let (c, d) = mdivrem_monic(&mmul(s, &b, &m2), &h1, &m2);
    let s1 = msub(s, &d, &m2);
    let t1 = msub(t, &madd(&mmul(t, &b, &m2), &mmul(&c, &g1, &m2), &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lifts f = lc(f) * prod(factors) (mod p), factors monic, to the same
/// congruence mod p^e with monic factors. Recursive pairwise tree.
fn hensel_lift(f: &ZPoly, factors: &[PPoly], p: u64, target: &Z) -> Vec<MPolyZ> {
    if factors.len() == 1 {
        // Make f monic mod target: multiply by lc^-1.
        let m = target.clone();
        let lc = zlc(f).mod_floor(&m);
        let (g, _, _) = extended_gcd_z(&lc, &m);
        let inv = g.mod_floor(&m);
        return vec![mnorm(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    // g0 = lc(f) * prod(left), h0 = prod(right) (monic), all mod p.
    let pz = Z::from(p);
    let lc_p = u64::try_from(zlc(f).mod_floor(&pz)).expect("reduced lc fits");
    assert_ne!(lc_p, 0, "leading coefficient vanished mod p");
    let mut g0: PPoly = vec![lc_p];
    for u in left {
        g0 = pmul(&g0, u, p);
    }
    let mut h0: PPoly = vec![1];
    for u in right {
        h0 = pmul(&h0, u, p);
    }
    // Bezout: s*g0 + t*h0 = 1 mod p.
    let (s0, t0) = pbezout(&g0, &h0, p);
    let mut m = pz.clone();
    let mut g = from_p(&g0);
    let mut h = from_p(&h0);
    let mut s = from_p(&s0);
    let mut t = from_p(&t0);
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    // Recurse. g has lc = lc(f) mod m, h is monic.
    let gz = ztrim(g.iter().map(|c| symmetric(c, &m)).collect());
    let hz = ztrim(h.iter().map(|c| symmetric(c, &m)).collect());
    let mut out = hensel_lift(&gz, left, p, target);
    out.extend(hensel_lift(&hz, right, p, target));
    out
}

fn pbezout(g: &PPoly, h: &PPoly, p: u64) -> (PPoly, PPoly) {
    // Extended Euclid over F_p[x]: s*g + t*h = 1.
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let news = psub(&s0, &pmul(&q, &s1, p), p);
        let newt = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = news;
        t0 = t1;
        t1 = newt;
    }
    assert_eq!(r0.len(), 1, "inputs are coprime mod p");
    let inv = pinv(r0[0], p);
    let s: PPoly = s0.iter().map(|&c| pmulmod(c, inv, p)).collect();
    let t: PPoly = t0.iter().map(|&c| pmulmod(c, inv, p)).collect();
    (ptrim(s), ptrim(t))
}

fn extended_gcd_z(a: &Z, m: &Z) -> (Z, Z, Z) {
    // Returns (a^-1 mod m, _, _) packaged as the Bezout coefficient of a.
    let e = a.extended_gcd(m);
    (e.x, e.y, e.gcd)
}

fn symmetric(c: &Z, m: &Z) -> Z {
    let c = c.mod_floor(m);
    if &c + &c > *m {
        c - m
    } else {
        c
    }
}

/// Coefficient bound: any irreducible factor of f (times lc) has
/// coefficients bounded by sqrt(n+1) * 2^n * max|f_i| * |lc|.
fn mignotte_bound(f: &ZPoly) -> Z {
    let n = zdeg(f) as u32;
    let height = f.iter().map(|c| c.abs()).max().unwrap_or_else(Z::zero);
    let sqrt_part = Z::from(n + 2).sqrt() + 1;
    sqrt_part * (Z::one() << n) * height * zlc(f).abs()
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211,
];

/// Factorization of a primitive squarefree integer polynomial of degree >= 1
/// into primitive irreducible integer polynomials.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    if zdeg(f) == 1 {
        return vec![zprimitive(f)];
    }
    // Pick a prime where f stays squarefree; among the first few candidates
    // keep the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        if (zlc(f).mod_floor(&Z::from(p))).is_zero() {
            continue;
        }
        let fp: PPoly = ptrim(
            f.iter()
                .map(|c| {
                    let r = c.mod_floor(&Z::from(p));
                    u64::try_from(r).expect("reduced coefficient fits")
                })
                .collect(),
        );
        let g = pgcd(&fp, &pderiv(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        let factors = berlekamp(&pmonic(&fp, p), p);
        if factors.len() == 1 {
            return vec![zprimitive(f)];
        }
        match &best {
            Some((_, bf)) if bf.len() <= factors.len() => {}
            _ => best = Some((p, factors)),
        }
        tried += 1;
        if tried >= 3 {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime keeps f squarefree");
    let bound = mignotte_bound(f) * Z::from(2);
    let mut target = Z::from(p);
    while target <= bound {
        target = &target * &target;
    }
    let lifted = hensel_lift(f, &modular, p, &target);

    // Subset recombination.
    let mut remaining: Vec<MPolyZ> = lifted;
    let mut fcur = zprimitive(f);
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut prod: MPolyZ = vec![zlc(&fcur).mod_floor(&target)];
            for &i in &combo {
                prod = mmul(&prod, &remaining[i], &target);
            }
            let cand = zprimitive(&ztrim(
                prod.iter().map(|c| symmetric(c, &target)).collect(),
            ));
            if cand.is_empty() {
                continue;
            }
            if let Some(quot) = zdivides(&fcur, &cand) {
                out.push(cand);
                fcur = quot;
                let keep: Vec<MPolyZ> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, u)| u.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if zdeg(&fcur) > 0 {
        out.push(fcur);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items.iter().copied().combinations(k).collect()
}

/// Full factorization of a primitive integer polynomial.
fn factor_zpoly(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    for (g, mult) in yun(f) {
        for irr in zassenhaus(&g) {
            out.push((irr, mult));
        }
    }
    out
}

/// Factors a polynomial that is univariate in variable `var` of its ring.
/// Returns (unit, factors): each factor is primitive with positive leading
/// coefficient and irreducible over Q, and
/// f = unit * prod factor_i ^ mult_i.
pub fn factor_univariate(f: &Poly, var: usize) -> Result<(Q, Vec<(Poly, u32)>), Error> {
    if f.is_zero() {
        return Err(Error::Internal("cannot factor zero".into()));
    }
    if !f.is_univariate_in(var) {
        return Err(Error::Internal(format!(
            "factor_univariate: {f} is not univariate in variable {var}"
        )));
    }
    let ring = f.ring().clone();
    let qcoeffs = f.univariate_coeffs(var);
    let mut den = Z::one();
    for c in &qcoeffs {
        den = den.lcm(c.denom());
    }
    let zc: ZPoly = ztrim(
        qcoeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect(),
    );
    let prim = zprimitive(&zc);
    if zdeg(&prim) < 1 {
        return Ok((f.coeff(&crate::ring::Mono::one(ring.nvars())), Vec::new()));
    }
    let factors = factor_zpoly(&prim);
    let mut polys = Vec::new();
    let mut prod = Poly::one(&ring);
    for (g, mult) in &factors {
        let qcs: Vec<Q> = g.iter().map(|c| Q::from_integer(c.clone())).collect();
        let p = Poly::from_univariate(&ring, var, &qcs);
        for _ in 0..*mult {
            prod = &prod * &p;
        }
        polys.push((p, *mult));
    }
    let unit = leading_ratio(f, &prod)?;
    polys.sort_by(|a, b| {
        (a.0.degree(), a.0.to_string()).cmp(&(b.0.degree(), b.0.to_string()))
    });
    Ok((unit, polys))
}

/// Factors a nonzero homogeneous binary form over Q into irreducible
/// homogeneous factors. The second ring variable is extracted first as a
/// factor (the point at infinity of the first variable), and the rest is
/// the homogenization of the dehomogenized factorization.
pub fn factor_binary_form(f: &Poly) -> Result<(Q, Vec<(Poly, u32)>), Error> {
    let ring = f.ring().clone();
    if ring.nvars() != 2 {
        return Err(Error::Internal("factor_binary_form needs a 2-variable ring".into()));
    }
    if f.is_zero() {
        return Err(Error::Internal("cannot factor zero".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::Internal(format!("{f} is not homogeneous")));
    }
    let beta = f
        .terms()
        .iter()
        .map(|(m, _)| m.exps()[1])
        .min()
        .unwrap_or(0);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    if beta > 0 {
        factors.push((Poly::var_idx(&ring, 1), beta));
    }
    // Dehomogenize: g(s) = f(s, 1); the t^beta factor drops out.
    let g = {
        let images = vec![Poly::var_idx(&ring, 0), Poly::one(&ring)];
        f.substitute(&ring, &images)
    };
    let (_, uni) = factor_univariate(&g, 0)?;
    let d_total = f.degree().unwrap();
    let mut prod = Poly::term(
        &ring,
        crate::ring::Mono::var(2, 1).pow(beta),
        Q::one(),
    );
    for (u, mult) in uni {
        // Rehomogenize u in (s, t).
        let du = u.degree_in(0);
        let terms: Vec<(crate::ring::Mono, Q)> = u
            .terms()
            .iter()
            .map(|(m, c)| {
                let e = m.exps()[0];
                (
                    crate::ring::Mono::from_exps(vec![e, du - e]),
                    c.clone(),
                )
            })
            .collect();
        let uh = Poly::from_terms(&ring, terms);
        for _ in 0..mult {
            prod = &prod * &uh;
        }
        factors.push((uh, mult));
    }
    let unit = leading_ratio(f, &prod)?;
    debug_assert_eq!(
        prod.scale(&unit),
        *f,
        "factorization reassembles the input"
    );
    let check: u32 = factors.iter().map(|(p, m)| p.degree().unwrap() * m).sum();
    if check != d_total {
        return Err(Error::Internal("binary factor degrees do not add up".into()));
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.to_string()).cmp(&(b.0.degree(), b.0.to_string()))
    });
    Ok((unit, factors))
}

fn leading_ratio(f: &Poly, prod: &Poly) -> Result<Q, Error> {
    let (m, c) = prod
        .leading(crate::ring::Order::GrevLex)
        .ok_or_else(|| Error::Internal("empty product".into()))?;
    let fc = f.coeff(m);
    if fc.is_zero() {
        return Err(Error::Internal("factor product does not match input".into()));
    }
    Ok(&fc / c)
}

/// Number of distinct roots of a binary form over the algebraic closure:
/// the sum of the degrees of its distinct irreducible factors.
pub fn distinct_root_count(f: &Poly) -> Result<u32, Error> {
    let (_, factors) = factor_binary_form(f)?;
    Ok(factors.iter().map(|(p, _)| p.degree().unwrap()).sum())
}

/// Product of the distinct irreducible factors of a polynomial that is
/// univariate in var, primitive with positive leading coefficient.
pub fn squarefree_part(f: &Poly, var: usize) -> Result<Poly, Error> {
    let (_, factors) = factor_univariate(f, var)?;
    let mut out = Poly::one(f.ring());
    for (g, _) in &factors {
        out = &out * g;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::q::qi;
    use crate::ring::Ring;

    fn upoly(s: &str) -> Poly {
        parse_poly(&Ring::new(&["x"]), s).unwrap()
    }

    fn reassemble(f: &Poly, unit: &Q, factors: &[(Poly, u32)]) -> bool {
        let mut prod = Poly::constant(f.ring(), unit.clone());
        for (g, m) in factors {
            for _ in 0..*m {
                prod = &prod * g;
            }
        }
        prod == *f
    }

    #[test]
    fn factors_simple_products() {
        let f = upoly("x^2 - 1");
        let (unit, fs) = factor_univariate(&f, 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(reassemble(&f, &unit, &fs));

        let f = upoly("6x^2 + 5x + 1");
        let (unit, fs) = factor_univariate(&f, 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(reassemble(&f, &unit, &fs));
    }

    #[test]
    fn keeps_irreducibles_whole() {
        for s in ["x^2 + 1", "x^2 - 2", "x^3 - 2", "x^2 + x + 1", "7x^2 + 21x + 13"] {
            let f = upoly(s);
            let (unit, fs) = factor_univariate(&f, 0).unwrap();
            assert_eq!(fs.len(), 1, "{s} is irreducible");
            assert_eq!(fs[0].1, 1);
            assert!(reassemble(&f, &unit, &fs));
        }
    }

    #[test]
    fn recombination_stress_x4_plus_1() {
        // x^4+1 factors into quadratics mod every prime but is irreducible.
        let f = upoly("x^4 + 1");
        let (_, fs) = factor_univariate(&f, 0).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, f);
    }

    #[test]
    fn multiplicities_via_yun() {
        let f = upoly("(x-1)^3(x+2)^2(x^2+1)");
        let (unit, fs) = factor_univariate(&f, 0).unwrap();
        assert!(reassemble(&f, &unit, &fs));
        let mut mults: Vec<(u32, u32)> = fs
            .iter()
            .map(|(p, m)| (p.degree().unwrap(), *m))
            .collect();
        mults.sort();
        assert_eq!(mults, vec![(1, 2), (1, 3), (2, 1)]);
    }

    #[test]
    fn rational_leading_unit() {
        let f = upoly("1/2x^2 - 1/2");
        let (unit, fs) = factor_univariate(&f, 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(unit, crate::q::qr(1, 2));
        assert!(reassemble(&f, &unit, &fs));
    }

    #[test]
    fn binary_form_with_infinity_factor() {
        let r = Ring::st();
        // s^3 t^2 (s - t) (s^2 + t^2)
        let f = parse_poly(&r, "s^3t^2(s-t)(s^2+t^2)").unwrap();
        let (unit, fs) = factor_binary_form(&f).unwrap();
        assert!(reassemble(&f, &unit, &fs));
        assert_eq!(distinct_root_count(&f).unwrap(), 5);
        let mut sig: Vec<(u32, u32)> = fs
            .iter()
            .map(|(p, m)| (p.degree().unwrap(), *m))
            .collect();
        sig.sort();
        assert_eq!(sig, vec![(1, 1), (1, 2), (1, 3), (2, 1)]);
    }

    #[test]
    fn binary_form_conic_pullback_shape() {
        // The restriction of the braid conic: distinct roots count as the
        // points of a 7-point intersection.
        let r = Ring::st();
        let f = parse_poly(&r, "st(s-t)(7s^2+21st+13t^2)(s+2t)(3s+t)").unwrap();
        assert_eq!(distinct_root_count(&f).unwrap(), 7);
    }

    #[test]
    fn factors_in_bigger_ring_variable() {
        let r = Ring::new(&["x", "y"]);
        let f = parse_poly(&r, "y^4 - 5y^2 + 6").unwrap();
        let (unit, fs) = factor_univariate(&f, 1).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(unit, qi(1));
        for (p, _) in &fs {
            assert_eq!(p.degree(), Some(2));
            assert!(p.is_univariate_in(1));
        }
    }

    #[test]
    fn larger_recombination() {
        // Product of two degree-4 irreducibles.
        let f = upoly("(x^4 + x + 1)(x^4 - 10x^2 + 1)");
        let (unit, fs) = factor_univariate(&f, 0).unwrap();
        assert_eq!(unit, qi(1));
        assert_eq!(fs.len(), 2);
        assert!(reassemble(&f, &unit, &fs));
    }
}
