//! Restriction of derivations to a member curve.
//!
//! A line is moved to x = 0 by an invertible change of coordinates; the
//! restriction keeps the last two components with x set to zero. A conic
//! is parametrized by P^1 through a rational point, giving quadrics
//! x = M(s^2, st, t^2); a derivation tangent to the conic pulls back to
//! Q1 d/ds + Q2 d/dt on the parameter line.

use crate::error::Error;
use crate::factor::factor_binary_form;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::q::{qi, Q};
use crate::resolve::Vect;
use crate::ring::Ring;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    pub rows: [[Q; 3]; 3],
}

impl Mat3 {
    pub fn identity() -> Mat3 {
        let mut rows: [[Q; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Q::one();
        }
        Mat3 { rows }
    }

    pub fn det(&self) -> Q {
        let m = &self.rows;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
        };
        &(&(&m[0][0] * &minor(1, 2, 1, 2)) - &(&m[0][1] * &minor(1, 2, 0, 2)))
            + &(&m[0][2] * &minor(1, 2, 0, 1))
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.rows;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
        };
        let mut rows: [[Q; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let (r1, r2) = match j {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (c1, c2) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let sign = if (i + j) % 2 == 0 { Q::one() } else { -Q::one() };
                rows[i][j] = &(&sign * &minor(r1, r2, c1, c2)) / &d;
            }
        }
        Some(Mat3 { rows })
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut rows: [[Q; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Q::zero();
                for (k, ok) in other.rows.iter().enumerate() {
                    acc += &self.rows[i][k] * &ok[j];
                }
                rows[i][j] = acc;
            }
        }
        Mat3 { rows }
    }

    pub fn apply_point(&self, p: &[Q; 3]) -> [Q; 3] {
        let mut out: [Q; 3] = Default::default();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, pk) in p.iter().enumerate() {
                out[i] += &row[k] * pk;
            }
        }
        out
    }

    /// f(Mx): each variable x_i is replaced by the linear form given by
    /// row i.
    pub fn substitute_into(&self, f: &Poly) -> Poly {
        let ring = f.ring();
        let images: Vec<Poly> = self
            .rows
            .iter()
            .map(|row| {
                let mut img = Poly::zero(ring);
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let term = Poly::var_idx(ring, j).scale(c);
                        img = &img + &term;
                    }
                }
                img
            })
            .collect();
        f.substitute(ring, &images)
    }
}

/// The change of coordinates x = A x~ carrying a line to {x~_1 = 0}.
#[derive(Debug, Clone)]
pub struct LineChart {
    /// A: new coordinates to old.
    pub to_old: Mat3,
    /// A^{-1}: old coordinates to new; its first row is the line.
    pub to_new: Mat3,
}

pub fn line_chart(line: &Poly) -> Result<LineChart, Error> {
    if line.degree() != Some(1) {
        return Err(Error::Validation("line chart needs a linear form".into()));
    }
    let ring = line.ring();
    let mut coeffs: [Q; 3] = Default::default();
    for (i, c) in coeffs.iter_mut().enumerate() {
        *c = line.coeff(&crate::ring::Mono::var(3, i));
    }
    let k = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero line");
    let mut rows: [[Q; 3]; 3] = Default::default();
    rows[0] = coeffs;
    let mut r = 1;
    for i in 0..3 {
        if i != k {
            rows[r][i] = Q::one();
            r += 1;
        }
    }
    let to_new = Mat3 { rows };
    let to_old = to_new
        .inverse()
        .ok_or_else(|| Error::Internal("line chart matrix is invertible".into()))?;
    debug_assert!(to_old
        .substitute_into(line)
        .proportional_to(&Poly::var_idx(ring, 0)));
    Ok(LineChart { to_old, to_new })
}

/// Rewrites theta under x = A x~: the new components are
/// R a(A x~) with R = A^{-1}.
pub fn transform_derivation(theta: &Vect, to_old: &Mat3, to_new: &Mat3) -> Vect {
    let moved: Vec<Poly> = theta
        .components()
        .iter()
        .map(|a| to_old.substitute_into(a))
        .collect();
    let ring = moved[0].ring().clone();
    let new: Vec<Poly> = to_new
        .rows
        .iter()
        .map(|row| {
            let mut acc = Poly::zero(&ring);
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &moved[i].scale(c);
                }
            }
            acc
        })
        .collect();
    Vect::from_polys(&new)
}

/// A derivation of an arrangement of points on a line or on a conic,
/// written in the coordinates of the restricted curve.
#[derive(Debug, Clone, PartialEq)]
pub enum RestrictedDerivation {
    /// b d/du + c d/dv on the line {x = 0} with (u, v) the last two
    /// coordinates.
    Line { b: Poly, c: Poly },
    /// Q1 d/ds + Q2 d/dt on the parameter line of the conic.
    Conic { q1: Poly, q2: Poly },
}

impl RestrictedDerivation {
    pub fn components(&self) -> (&Poly, &Poly) {
        match self {
            RestrictedDerivation::Line { b, c } => (b, c),
            RestrictedDerivation::Conic { q1, q2 } => (q1, q2),
        }
    }

    pub fn is_zero(&self) -> bool {
        let (a, b) = self.components();
        a.is_zero() && b.is_zero()
    }

    /// Tangency to a reduced binary form: applying the derivation to it
    /// must land in the ideal it generates.
    pub fn is_tangent_to(&self, form: &Poly) -> bool {
        let (a, b) = self.components();
        let applied = &(a * &form.partial(0)) + &(b * &form.partial(1));
        applied.exact_div(form).is_some()
    }
}

/// Restriction of a form on P^2 to the line {x~_1 = 0}, in coordinates
/// (u, v).
pub fn restrict_form_to_line(form: &Poly, chart: &LineChart, uv: &Ring) -> Poly {
    let moved = chart.to_old.substitute_into(form);
    let images = [
        Poly::zero(uv),
        Poly::var_idx(uv, 0),
        Poly::var_idx(uv, 1),
    ];
    moved.substitute(uv, &images)
}

/// q(theta) = b(0,u,v) d/du + c(0,u,v) d/dv in the line's coordinates.
pub fn restrict_to_line(theta: &Vect, chart: &LineChart, uv: &Ring) -> RestrictedDerivation {
    let moved = transform_derivation(theta, &chart.to_old, &chart.to_new);
    let comps = moved.components();
    let images = [
        Poly::zero(uv),
        Poly::var_idx(uv, 0),
        Poly::var_idx(uv, 1),
    ];
    RestrictedDerivation::Line {
        b: comps[1].substitute(uv, &images),
        c: comps[2].substitute(uv, &images),
    }
}

/// Parametrization x = M (s^2, st, t^2) of a smooth conic with a
/// rational point.
#[derive(Debug, Clone)]
pub struct ConicParam {
    pub matrix: Mat3,
    pub inverse: Mat3,
    /// The three quadrics in (s, t).
    images: [Poly; 3],
    st: Ring,
}

/// Searches points of small height; every conic in scope has one.
pub fn rational_point_on_conic(q: &Poly) -> Result<[Q; 3], Error> {
    for h in 1..=20i64 {
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if a.abs().max(b.abs()).max(c.abs()) != h {
                        continue;
                    }
                    let p = [qi(a), qi(b), qi(c)];
                    if q.eval(&p).is_zero() {
                        return Ok(p);
                    }
                }
            }
        }
    }
    Err(Error::Unsupported(
        "no rational point of height at most 20 on the conic".into(),
    ))
}

fn bilinear(m: &[[Q; 3]; 3], a: &[Q; 3], b: &[Q; 3]) -> Q {
    let mut acc = Q::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, mij) in row.iter().enumerate() {
            acc += &(&a[i] * mij) * &b[j];
        }
    }
    acc
}

pub fn conic_param(conic: &Poly) -> Result<ConicParam, Error> {
    let p0 = rational_point_on_conic(conic)?;
    let m2 = crate::arrangement::quadric_matrix(conic);
    let k = p0.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let mut basis: Vec<[Q; 3]> = Vec::new();
    for i in 0..3 {
        if i != k {
            let mut e: [Q; 3] = Default::default();
            e[i] = Q::one();
            basis.push(e);
        }
    }
    let (d1, d2) = (basis[0].clone(), basis[1].clone());
    // Second intersection of the line through p0 with direction
    // d = s d1 + t d2: x = (d^T M d) p0 - 2 (p0^T M d) d.
    let q11 = bilinear(&m2, &d1, &d1);
    let q12 = bilinear(&m2, &d1, &d2);
    let q22 = bilinear(&m2, &d2, &d2);
    let b1 = bilinear(&m2, &p0, &d1);
    let b2 = bilinear(&m2, &p0, &d2);
    let two = qi(2);
    let mut rows: [[Q; 3]; 3] = Default::default();
    for i in 0..3 {
        rows[i][0] = &(&q11 * &p0[i]) - &(&(&two * &b1) * &d1[i]);
        rows[i][1] = &(&(&two * &q12) * &p0[i])
            - &(&(&(&two * &b1) * &d2[i]) + &(&(&two * &b2) * &d1[i]));
        rows[i][2] = &(&q22 * &p0[i]) - &(&(&two * &b2) * &d2[i]);
    }
    let matrix = Mat3 { rows };
    let inverse = matrix.inverse().ok_or_else(|| {
        Error::Internal("conic parametrization has independent quadrics".into())
    })?;
    let st = Ring::st();
    let s = Poly::var_idx(&st, 0);
    let t = Poly::var_idx(&st, 1);
    let basis_st = [&s * &s, &s * &t, &t * &t];
    let mut images: [Poly; 3] = [
        Poly::zero(&st),
        Poly::zero(&st),
        Poly::zero(&st),
    ];
    for (i, img) in images.iter_mut().enumerate() {
        for (j, b) in basis_st.iter().enumerate() {
            if !matrix.rows[i][j].is_zero() {
                *img = &*img + &b.scale(&matrix.rows[i][j]);
            }
        }
    }
    let param = ConicParam {
        matrix,
        inverse,
        images,
        st,
    };
    // The parametrization lands on the conic, and the recorded change of
    // coordinates moves the conic to y^2 - xz.
    debug_assert!(psi(&param, conic).is_zero());
    debug_assert!({
        let moved = param.matrix.substitute_into(conic);
        let normal = parse_poly(conic.ring(), "y^2 - xz").unwrap();
        moved.proportional_to(&normal)
    });
    Ok(param)
}

impl ConicParam {
    pub fn st_ring(&self) -> &Ring {
        &self.st
    }
}

/// Pullback along the parametrization: psi(g) = g(M(s^2, st, t^2)).
pub fn psi(param: &ConicParam, g: &Poly) -> Poly {
    g.substitute(&param.st, &param.images)
}

/// rho(theta) = Q1 d/ds + Q2 d/dt where psi of the normalized first and
/// third components splits off s and t. The middle component is forced
/// by tangency to the conic and is checked.
pub fn restrict_to_conic(theta: &Vect, param: &ConicParam) -> Result<RestrictedDerivation, Error> {
    let comps = theta.components();
    let pulled: Vec<Poly> = comps.iter().map(|a| psi(param, a)).collect();
    let normalized: Vec<Poly> = param
        .inverse
        .rows
        .iter()
        .map(|row| {
            let mut acc = Poly::zero(&param.st);
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &pulled[j].scale(c);
                }
            }
            acc
        })
        .collect();
    let s = Poly::var_idx(&param.st, 0);
    let t = Poly::var_idx(&param.st, 1);
    let q1 = if normalized[0].is_zero() {
        Poly::zero(&param.st)
    } else {
        normalized[0].exact_div(&s).ok_or_else(|| {
            Error::Validation("derivation is not tangent to the conic".into())
        })?
    };
    let q2 = if normalized[2].is_zero() {
        Poly::zero(&param.st)
    } else {
        normalized[2].exact_div(&t).ok_or_else(|| {
            Error::Validation("derivation is not tangent to the conic".into())
        })?
    };
    let mid = &normalized[1].scale(&qi(2));
    let forced = &(&t * &q1) + &(&s * &q2);
    if *mid != forced {
        return Err(Error::Internal(
            "tangency forces the middle pullback component".into(),
        ));
    }
    Ok(RestrictedDerivation::Conic { q1, q2 })
}

/// Product of the distinct irreducible factors of a binary form.
pub fn squarefree_binary(f: &Poly) -> Result<Poly, Error> {
    let (_, factors) = factor_binary_form(f)?;
    let mut out = Poly::one(f.ring());
    for (g, _) in &factors {
        out = &out * g;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::euler_derivation;
    use crate::parse::parse_poly;
    use crate::ring::Ring;

    fn xyz_poly(s: &str) -> Poly {
        parse_poly(&Ring::xyz(), s).unwrap()
    }

    #[test]
    fn line_chart_moves_line_to_first_coordinate() {
        let l = xyz_poly("x + y - z");
        let chart = line_chart(&l).unwrap();
        let moved = chart.to_old.substitute_into(&l);
        assert!(moved.proportional_to(&xyz_poly("x")));
    }

    #[test]
    fn euler_restricts_to_euler_on_a_line() {
        let uv = Ring::uv();
        let l = xyz_poly("x");
        let chart = line_chart(&l).unwrap();
        let e = euler_derivation(&xyz_poly("x"));
        let r = restrict_to_line(&e, &chart, &uv);
        let (b, c) = r.components();
        assert_eq!(*b, Poly::var_idx(&uv, 0));
        assert_eq!(*c, Poly::var_idx(&uv, 1));
    }

    #[test]
    fn conic_parametrization_lies_on_conic() {
        for form in ["y^2 - xz", "x^2 + y^2 - z^2", "x^2 - xz + 5y^2 - 5yz"] {
            let conic = xyz_poly(form);
            let param = conic_param(&conic).unwrap();
            assert!(psi(&param, &conic).is_zero());
        }
    }

    #[test]
    fn euler_restricts_to_euler_on_a_conic() {
        let conic = xyz_poly("x^2 - xz + 5y^2 - 5yz");
        let param = conic_param(&conic).unwrap();
        let e = euler_derivation(&conic);
        let r = restrict_to_conic(&e, &param).unwrap();
        let st = param.st_ring().clone();
        assert_eq!(
            r,
            RestrictedDerivation::Conic {
                q1: Poly::var_idx(&st, 0),
                q2: Poly::var_idx(&st, 1),
            }
        );
    }

    #[test]
    fn multiples_of_the_conic_restrict_to_zero() {
        let conic = xyz_poly("y^2 - xz");
        let param = conic_param(&conic).unwrap();
        let scaled = Vect::from_polys(&[
            &conic * &xyz_poly("x"),
            &conic * &xyz_poly("y"),
            &conic * &xyz_poly("z"),
        ]);
        let r = restrict_to_conic(&scaled, &param).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn psi_of_a_secant_has_two_roots() {
        let conic = xyz_poly("y^2 - xz");
        let param = conic_param(&conic).unwrap();
        let pulled = psi(&param, &xyz_poly("x - z"));
        assert_eq!(pulled.degree(), Some(2));
        assert_eq!(crate::factor::distinct_root_count(&pulled).unwrap(), 2);
    }

    #[test]
    fn psi_of_a_tangent_has_one_double_root() {
        // z is tangent to y^2 - xz at (1:0:0).
        let conic = xyz_poly("y^2 - xz");
        let param = conic_param(&conic).unwrap();
        let pulled = psi(&param, &xyz_poly("z"));
        assert_eq!(pulled.degree(), Some(2));
        assert_eq!(crate::factor::distinct_root_count(&pulled).unwrap(), 1);
    }

    #[test]
    fn restricted_generator_is_tangent_to_restricted_points() {
        let a = crate::arrangement::Arrangement::from_forms(&[
            (crate::arrangement::CurveKind::Conic, "y^2 - xz"),
            (crate::arrangement::CurveKind::Line, "x"),
            (crate::arrangement::CurveKind::Line, "z"),
        ])
        .unwrap();
        let f = a.defining_polynomial();
        let module = crate::freeness::derivation_module(&f);
        let conic = &a.curves()[0].form;
        let param = conic_param(conic).unwrap();
        let rest = &xyz_poly("xz");
        let points = squarefree_binary(&psi(&param, rest)).unwrap();
        for g in &module.generators {
            let r = restrict_to_conic(g, &param).unwrap();
            assert!(r.is_tangent_to(&points));
        }
    }
}
