//! Polynomial rings over Q, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// A polynomial ring over Q, identified by its ordered variable list.
/// Variables are single letters so that juxtaposition like `xz` parses.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new(vars: &[&str]) -> Ring {
        assert!(!vars.is_empty());
        Ring {
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The standard coordinate ring Q[x,y,z] of the projective plane.
    pub fn xyz() -> Ring {
        Ring::new(&["x", "y", "z"])
    }

    /// Q[s,t], used for pullbacks to a conic.
    pub fn st() -> Ring {
        Ring::new(&["s", "t"])
    }

    /// Q[u,v], used for restrictions to a line.
    pub fn uv() -> Ring {
        Ring::new(&["u", "v"])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with one variable removed (for dehomogenization).
    pub fn without_var(&self, idx: usize) -> Ring {
        let mut vars = self.vars.clone();
        vars.remove(idx);
        Ring { vars }
    }

    /// The ring with the variable order permuted: new var i = old var perm[i].
    pub fn permuted(&self, perm: &[usize]) -> Ring {
        Ring {
            vars: perm.iter().map(|&i| self.vars[i].clone()).collect(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

/// An exponent vector. The length always matches the ring's variable count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Mono {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Mono(e)
    }

    pub fn from_exps(exps: Vec<u32>) -> Mono {
        Mono(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// self / other, when other divides self.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    /// True if self divides other.
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Mono {
        Mono(self.0.iter().map(|a| a * e).collect())
    }
}

/// A global monomial order.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Order {
    /// Graded reverse lexicographic (the workhorse order).
    GrevLex,
    /// Lexicographic with the first ring variable largest.
    Lex,
    /// Block elimination order: the first `k` variables are compared
    /// grevlex first, ties fall through to grevlex on the rest. A Groebner
    /// basis under this order intersected with the subring in the trailing
    /// variables is a basis of the elimination ideal.
    Elim(usize),
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Rightmost difference: the smaller exponent wins.
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl Order {
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            Order::GrevLex => grevlex_cmp(&a.0, &b.0),
            Order::Lex => lex_cmp(&a.0, &b.0),
            Order::Elim(k) => {
                grevlex_cmp(&a.0[..k], &b.0[..k]).then_with(|| grevlex_cmp(&a.0[k..], &b.0[k..]))
            }
        }
    }
}
