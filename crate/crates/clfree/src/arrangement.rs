//! Arrangements of curves in the projective plane and their validation.
//!
//! Supported members: lines, smooth conics, and rational pairs of conjugate
//! lines (`line_pair`): rank-2 quadratic forms that do not factor over Q,
//! such as x^2+y^2. A pair counts as two geometric curves throughout.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::q::{is_square, Q};
use crate::ring::Ring;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Line,
    Conic,
    LinePair,
}

impl CurveKind {
    pub fn expected_degree(self) -> u32 {
        match self {
            CurveKind::Line => 1,
            CurveKind::Conic | CurveKind::LinePair => 2,
        }
    }

    /// Number of irreducible curves over the algebraic closure.
    pub fn geometric_count(self) -> u32 {
        match self {
            CurveKind::Line | CurveKind::Conic => 1,
            CurveKind::LinePair => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub kind: CurveKind,
    pub form: Poly,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    ring: Ring,
    curves: Vec<Curve>,
    name: Option<String>,
}

/// JSON shape for one curve: {"kind": "line"|"conic"|"line_pair",
/// "form": "<expression>", "label": optional}.
#[derive(Serialize, Deserialize)]
struct CurveJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<CurveKind>,
    form: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    curves: Vec<CurveJson>,
}

/// The symmetric matrix of a quadratic form, doubled to stay integral:
/// M[i][j] = coefficient of x_i x_j for i != j, M[i][i] = 2 * coefficient
/// of x_i^2. Rank and kernel of M match the form's.
pub fn quadric_matrix(form: &Poly) -> [[Q; 3]; 3] {
    let n = form.ring().nvars();
    assert_eq!(n, 3);
    let mut m: [[Q; 3]; 3] = Default::default();
    for (mono, c) in form.terms() {
        let e = mono.exps();
        let mut idx = Vec::new();
        for (i, &ei) in e.iter().enumerate() {
            for _ in 0..ei {
                idx.push(i);
            }
        }
        assert_eq!(idx.len(), 2, "quadric_matrix needs a quadratic form");
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][j] += c + c;
        } else {
            m[i][j] += c;
            m[j][i] += c;
        }
    }
    m
}

fn det3(m: &[[Q; 3]; 3]) -> Q {
    let a = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let b = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let c = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&a - &b) + &c
}

fn rank3(m: &[[Q; 3]; 3]) -> usize {
    use num_traits::Zero;
    let mut rows: Vec<Vec<Q>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        if let Some(p) = (rank..3).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            for r in 0..3 {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = &rows[r][col] / &pivot;
                    for c in 0..3 {
                        let s = &rows[rank][c] * &factor;
                        rows[r][c] = &rows[r][c] - &s;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Kernel vector of a rank-2 symmetric 3x3 matrix, scaled to integers.
/// Intersection point of the two lines making up a rank-2 pair form.
pub fn pair_vertex(form: &Poly) -> Option<[Q; 3]> {
    kernel_vector(&quadric_matrix(form))
}

pub fn kernel_vector(m: &[[Q; 3]; 3]) -> Option<[Q; 3]> {
    use num_traits::Zero;
    // Cross products of two independent rows span the row space's
    // complement; take the first nonzero one.
    for i in 0..3 {
        for j in (i + 1)..3 {
            let u = &m[i];
            let v = &m[j];
            let c = [
                &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
                &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
                &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
            ];
            if c.iter().any(|x| !x.is_zero()) {
                return Some(c);
            }
        }
    }
    None
}

/// For a rank-2 form: the discriminant of the induced binary quadratic
/// form on a complement of the kernel. The form splits into two rational
/// lines exactly when this is a nonzero rational square.
fn pair_discriminant(form: &Poly, m: &[[Q; 3]; 3]) -> Result<Q, Error> {
    use num_traits::Zero;
    let v = kernel_vector(m)
        .ok_or_else(|| Error::Validation("rank-2 form has no kernel vector".into()))?;
    // Basis vectors e_i, e_j independent from v: drop the coordinate where
    // v is nonzero.
    let drop = (0..3)
        .find(|&i| !v[i].is_zero())
        .expect("kernel vector is nonzero");
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let eval_bilinear = |i: usize, j: usize| -> Q {
        // Q(e_i, e_j) via the doubled matrix: B(e_i,e_j) = m[i][j] / 2.
        &m[i][j] / &crate::q::qi(2)
    };
    let a = eval_bilinear(keep[0], keep[0]);
    let b = &eval_bilinear(keep[0], keep[1]) * &crate::q::qi(2);
    let c = eval_bilinear(keep[1], keep[1]);
    let disc = &(&b * &b) - &(&(&a * &c) * &crate::q::qi(4));
    let _ = form;
    Ok(disc)
}

impl Arrangement {
    pub fn new(curves: Vec<Curve>) -> Result<Arrangement, Error> {
        let ring = Ring::xyz();
        let arr = Arrangement {
            ring,
            curves,
            name: None,
        };
        arr.validate()?;
        Ok(arr)
    }

    pub fn with_name(mut self, name: &str) -> Arrangement {
        self.name = Some(name.to_string());
        self
    }

    /// Builds from (kind, expression) pairs with default labels.
    pub fn from_forms(specs: &[(CurveKind, &str)]) -> Result<Arrangement, Error> {
        let ring = Ring::xyz();
        let mut curves = Vec::new();
        let (mut nl, mut nc, mut np) = (0, 0, 0);
        for (kind, s) in specs {
            let form = parse_poly(&ring, s)?;
            let label = match kind {
                CurveKind::Line => {
                    nl += 1;
                    format!("L{nl}")
                }
                CurveKind::Conic => {
                    nc += 1;
                    format!("C{nc}")
                }
                CurveKind::LinePair => {
                    np += 1;
                    format!("P{np}")
                }
            };
            curves.push(Curve {
                kind: *kind,
                form,
                label,
            });
        }
        Arrangement::new(curves)
    }

    pub fn from_json_str(s: &str) -> Result<Arrangement, Error> {
        let json: ArrangementJson = serde_json::from_str(s)?;
        let ring = Ring::xyz();
        let mut curves = Vec::new();
        let (mut nl, mut nc, mut np) = (0, 0, 0);
        for cj in json.curves {
            let form = parse_poly(&ring, &cj.form)?;
            let kind = match cj.kind {
                Some(k) => k,
                None => infer_kind(&form)?,
            };
            let label = match cj.label {
                Some(l) => l,
                None => match kind {
                    CurveKind::Line => {
                        nl += 1;
                        format!("L{nl}")
                    }
                    CurveKind::Conic => {
                        nc += 1;
                        format!("C{nc}")
                    }
                    CurveKind::LinePair => {
                        np += 1;
                        format!("P{np}")
                    }
                },
            };
            curves.push(Curve { kind, form, label });
        }
        let mut arr = Arrangement::new(curves)?;
        arr.name = json.name;
        Ok(arr)
    }

    pub fn to_json_string(&self) -> String {
        let json = ArrangementJson {
            name: self.name.clone(),
            curves: self
                .curves
                .iter()
                .map(|c| CurveJson {
                    kind: Some(c.kind),
                    form: c.form.to_string(),
                    label: Some(c.label.clone()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("arrangement serializes")
    }

    pub fn load(path: &std::path::Path) -> Result<Arrangement, Error> {
        let s = std::fs::read_to_string(path)?;
        Arrangement::from_json_str(&s)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.curves.is_empty() {
            return Err(Error::Validation("arrangement has no curves".into()));
        }
        for c in &self.curves {
            if c.form.is_zero() {
                return Err(Error::Validation(format!("curve {} is zero", c.label)));
            }
            if !c.form.is_homogeneous() {
                return Err(Error::Validation(format!(
                    "curve {} is not homogeneous",
                    c.label
                )));
            }
            let d = c.form.degree().unwrap();
            if d != c.kind.expected_degree() {
                return Err(Error::Validation(format!(
                    "curve {} has degree {d}, expected {} for its kind",
                    c.label,
                    c.kind.expected_degree()
                )));
            }
            if d == 2 {
                let m = quadric_matrix(&c.form);
                let rank = rank3(&m);
                match c.kind {
                    CurveKind::Conic => {
                        if rank != 3 {
                            return Err(Error::Validation(format!(
                                "conic {} is singular (rank {rank}); smooth conics have rank 3",
                                c.label
                            )));
                        }
                        debug_assert!(!num_traits::Zero::is_zero(&det3(&m)));
                    }
                    CurveKind::LinePair => {
                        if rank == 1 {
                            return Err(Error::Validation(format!(
                                "{} is a double line, not a pair of distinct lines",
                                c.label
                            )));
                        }
                        if rank != 2 {
                            return Err(Error::Validation(format!(
                                "line pair {} must have rank 2, found rank {rank}",
                                c.label
                            )));
                        }
                        let disc = pair_discriminant(&c.form, &m)?;
                        if is_square(&disc) {
                            return Err(Error::Validation(format!(
                                "{} splits into two rational lines; list them as separate lines",
                                c.label
                            )));
                        }
                    }
                    CurveKind::Line => unreachable!(),
                }
            }
        }
        for i in 0..self.curves.len() {
            for j in (i + 1)..self.curves.len() {
                if self.curves[i].form.proportional_to(&self.curves[j].form) {
                    return Err(Error::Validation(format!(
                        "curves {} and {} coincide",
                        self.curves[i].label, self.curves[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Product of all member forms (reduced by validation).
    pub fn defining_polynomial(&self) -> Poly {
        let mut f = Poly::one(&self.ring);
        for c in &self.curves {
            f = &f * &c.form;
        }
        f
    }

    pub fn degree(&self) -> u32 {
        self.curves
            .iter()
            .map(|c| c.kind.expected_degree())
            .sum()
    }

    /// Number of irreducible member curves over the algebraic closure
    /// (a pair counts twice).
    pub fn geometric_curve_count(&self) -> u32 {
        self.curves.iter().map(|c| c.kind.geometric_count()).sum()
    }

    /// The arrangement with one curve removed.
    pub fn without(&self, idx: usize) -> Result<Arrangement, Error> {
        let mut curves = self.curves.clone();
        curves.remove(idx);
        Arrangement::new(curves)
    }

    /// Canonical identity string (label-independent): sorted primitive forms.
    pub fn key(&self) -> String {
        let mut forms: Vec<String> = self
            .curves
            .iter()
            .map(|c| c.form.primitive().to_string())
            .collect();
        forms.sort();
        forms.join(" | ")
    }
}

/// Infers the curve kind from the form alone.
pub fn infer_kind(form: &Poly) -> Result<CurveKind, Error> {
    match form.degree() {
        Some(1) => Ok(CurveKind::Line),
        Some(2) => {
            let m = quadric_matrix(form);
            match rank3(&m) {
                3 => Ok(CurveKind::Conic),
                2 => Ok(CurveKind::LinePair),
                r => Err(Error::Validation(format!(
                    "quadratic form of rank {r} is not a valid curve"
                ))),
            }
        }
        d => Err(Error::Validation(format!(
            "curve degree {d:?} is not supported (only 1 and 2)"
        ))),
    }
}
