//! Restriction of an arrangement to a member line as a multiarrangement
//! of points, and the exponents of its derivation module.
//!
//! Restricting the other members to the line leaves a binary form whose
//! irreducible factors are the restriction points and whose exponents
//! are the intersection multiplicities. Derivations of the
//! multiarrangement must vanish to the prescribed order at each point;
//! rank-2 multiarrangements are free, so two generator degrees describe
//! the module and their sum is the total multiplicity.

use crate::arrangement::{Arrangement, CurveKind};
use crate::error::Error;
use crate::factor::factor_binary_form;
use crate::poly::Poly;
use crate::q::Q;
use crate::restrict::{line_chart, restrict_form_to_line};
use crate::ring::Ring;
use num_traits::Zero;

/// Points on a line with multiplicities: irreducible binary forms over
/// the coordinates (u, v), pairwise non-proportional, multiplicity >= 1.
/// A form of degree e stands for its e conjugate geometric points, all
/// carrying the same multiplicity.
#[derive(Debug, Clone)]
pub struct Multiarrangement2 {
    ring: Ring,
    points: Vec<(Poly, u32)>,
}

impl Multiarrangement2 {
    pub fn from_points(points: Vec<(Poly, u32)>) -> Result<Multiarrangement2, Error> {
        let ring = points
            .first()
            .map(|(p, _)| p.ring().clone())
            .ok_or_else(|| Error::Validation("multiarrangement needs a point".into()))?;
        for (p, m) in &points {
            if *m == 0 {
                return Err(Error::Validation("multiplicities must be positive".into()));
            }
            if p.degree().is_none() || p.degree() == Some(0) {
                return Err(Error::Validation("points are nonconstant binary forms".into()));
            }
            let (_, factors) = factor_binary_form(p)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::Validation(
                    "points are irreducible binary forms".into(),
                ));
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i].0.proportional_to(&points[j].0) {
                    return Err(Error::Validation("repeated point in multiarrangement".into()));
                }
            }
        }
        Ok(Multiarrangement2 { ring, points })
    }

    pub fn points(&self) -> &[(Poly, u32)] {
        &self.points
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Total multiplicity counted geometrically: residue degree times
    /// assigned multiplicity, summed.
    pub fn total_multiplicity(&self) -> u32 {
        self.points
            .iter()
            .map(|(p, m)| p.degree().unwrap() * m)
            .sum()
    }

    /// Defining polynomial: the product of the points to their
    /// multiplicities.
    pub fn defining_form(&self) -> Poly {
        let mut out = Poly::one(&self.ring);
        for (p, m) in &self.points {
            out = &out * &p.pow(*m);
        }
        out
    }

    /// Geometric point count (sum of residue degrees, each once).
    pub fn point_count(&self) -> u32 {
        self.points.iter().map(|(p, _)| p.degree().unwrap()).sum()
    }
}

/// Restriction of every other member to the chosen line. Multiplicities
/// are the intersection multiplicities, read off as factor exponents.
pub fn multirestrict(arr: &Arrangement, line: usize) -> Result<Multiarrangement2, Error> {
    let curve = arr
        .curves()
        .get(line)
        .ok_or_else(|| Error::Validation("line index out of range".into()))?;
    if curve.kind != CurveKind::Line {
        return Err(Error::Validation(
            "multirestriction needs a line to restrict to".into(),
        ));
    }
    let chart = line_chart(&curve.form)?;
    let uv = Ring::uv();
    let mut points: Vec<(Poly, u32)> = Vec::new();
    for (i, other) in arr.curves().iter().enumerate() {
        if i == line {
            continue;
        }
        let restricted = restrict_form_to_line(&other.form, &chart, &uv);
        if restricted.degree() != Some(other.form.degree().unwrap()) {
            return Err(Error::Internal(
                "restriction of a member to a non-component line keeps its degree".into(),
            ));
        }
        let (_, factors) = factor_binary_form(&restricted)?;
        for (p, e) in factors {
            match points.iter_mut().find(|(q, _)| q.proportional_to(&p)) {
                Some((_, m)) => *m += e,
                None => points.push((p, e)),
            }
        }
    }
    let multi = Multiarrangement2::from_points(points)?;
    debug_assert_eq!(
        multi.total_multiplicity(),
        arr.defining_polynomial().degree().unwrap() - 1
    );
    Ok(multi)
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r: Vec<Q> = a.to_vec();
    while r.last().is_some_and(|x| x.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    let lead = &b[db];
    while r.len() > db {
        let c = &r[r.len() - 1] / lead;
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            let idx = shift + i;
            let v = &r[idx] - &(&c * bi);
            r[idx] = v;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &inv;
            for c in col..width {
                let v = &rows[r][c] - &(&factor * &rows[rank][c]);
                rows[r][c] = v;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn derivative(coeffs: &[Q]) -> Vec<Q> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &crate::q::qi(i as i64))
        .collect()
}

/// Dimension of the degree-d part of the derivation module of the
/// multiarrangement.
///
/// A derivation (t1, t2) belongs to the module when every root r of
/// every point satisfies (u - rv)^m | t1 - r t2. Gathering the
/// conjugate roots of a point l into one rational statement: for every
/// j below m the polynomial d^j/du^j t1 - u d^j/du^j t2 lies in the
/// ideal of l after setting v = 1. For the point at infinity the second
/// component must vanish to order m in v instead.
fn derivation_dimension(multi: &Multiarrangement2, d: u32) -> usize {
    let unknowns = 2 * (d as usize + 1);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (l, m) in multi.points() {
        let e = l.degree().unwrap() as usize;
        let u_coeff = l.coeff(&crate::ring::Mono::from_exps(vec![1, 0]));
        if e == 1 && u_coeff.is_zero() {
            // Coefficient of v^j in the second component, one row per
            // order. Orders past the degree leave an empty row, which
            // is the right condition: a nonzero form of degree d has no
            // factor v^m with m > d unless it is zero.
            for j in 0..*m {
                let mut row = vec![Q::zero(); unknowns];
                if j <= d {
                    row[(d + 1 + j) as usize] = crate::q::qi(1);
                }
                rows.push(row);
            }
            continue;
        }
        let q = l.dehomogenize(1).univariate_coeffs(0);
        // Coefficient vectors of the basis monomials u^{d-i} at v = 1,
        // differentiated in place once per multiplicity round.
        let mut bases: Vec<Vec<Q>> = (0..=d as usize)
            .map(|i| {
                let mut b = vec![Q::zero(); d as usize - i + 1];
                b[d as usize - i] = crate::q::qi(1);
                b
            })
            .collect();
        for _ in 0..*m {
            let mut cols: Vec<Vec<Q>> = Vec::with_capacity(unknowns);
            for comp in 0..2 {
                for base in &bases {
                    // First component contributes its j-th derivative,
                    // second contributes minus u times its derivative.
                    let h: Vec<Q> = if comp == 0 {
                        base.clone()
                    } else {
                        std::iter::once(Q::zero())
                            .chain(base.iter().map(|c| &Q::zero() - c))
                            .collect()
                    };
                    let r = poly_rem(&h, &q);
                    cols.push(
                        (0..e)
                            .map(|k| r.get(k).cloned().unwrap_or_else(Q::zero))
                            .collect(),
                    );
                }
            }
            for k in 0..e {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
            for b in bases.iter_mut() {
                *b = derivative(b);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    // rank() eliminates by columns of the row list; transpose so the
    // unknowns index the columns.
    let cols: Vec<Vec<Q>> = (0..unknowns)
        .map(|i| rows.iter().map(|r| r[i].clone()).collect())
        .collect();
    unknowns - rank(cols)
}

/// Generator degrees of the rank-2 derivation module, sorted; their sum
/// is the total multiplicity.
pub fn multi_exponents(multi: &Multiarrangement2) -> Result<(u32, u32), Error> {
    let total = multi.total_multiplicity();
    let mut d1: Option<u32> = None;
    for d in 0..=total {
        let dim = derivation_dimension(multi, d);
        match d1 {
            None => match dim {
                0 => {}
                1 => d1 = Some(d),
                2 if 2 * d == total => return Ok((d, d)),
                _ => {
                    return Err(Error::Internal(format!(
                        "unexpected derivation dimension {dim} in first degree {d}"
                    )))
                }
            },
            Some(e1) => {
                let one_generator = (d - e1 + 1) as usize;
                if dim > one_generator {
                    if e1 + d != total {
                        return Err(Error::Internal(format!(
                            "multiarrangement exponents {e1}+{d} must sum to {total}"
                        )));
                    }
                    return Ok((e1, d));
                }
                if dim < one_generator {
                    return Err(Error::Internal(
                        "derivation dimensions cannot drop below one generator's".into(),
                    ));
                }
            }
        }
    }
    Err(Error::Internal(
        "derivation module of a rank-2 multiarrangement is free".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn uv_poly(s: &str) -> Poly {
        parse_poly(&Ring::uv(), s).unwrap()
    }

    fn multi(points: &[(&str, u32)]) -> Multiarrangement2 {
        Multiarrangement2::from_points(
            points
                .iter()
                .map(|(s, m)| (uv_poly(s), *m))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_point_cubed() {
        let m = multi(&[("u", 3)]);
        assert_eq!(multi_exponents(&m).unwrap(), (0, 3));
    }

    #[test]
    fn simple_points_split_evenly() {
        let m = multi(&[("u", 1), ("v", 1), ("u - v", 1)]);
        assert_eq!(multi_exponents(&m).unwrap(), (1, 2));
    }

    #[test]
    fn ziegler_multiplicities_alpha_minus_one() {
        let m = multi(&[("u", 3), ("v", 3), ("u - v", 1), ("-u - v", 1)]);
        assert_eq!(multi_exponents(&m).unwrap(), (3, 5));
    }

    #[test]
    fn ziegler_multiplicities_alpha_three() {
        let m = multi(&[("u", 3), ("v", 3), ("u - v", 1), ("3u - v", 1)]);
        assert_eq!(multi_exponents(&m).unwrap(), (4, 4));
    }

    #[test]
    fn irrational_point_pair() {
        // u^2 + v^2 is a conjugate pair of points, each with
        // multiplicity 2: exponents {2, 2}.
        let m = multi(&[("u^2 + v^2", 2)]);
        assert_eq!(m.total_multiplicity(), 4);
        assert_eq!(multi_exponents(&m).unwrap(), (2, 2));
    }

    #[test]
    fn restriction_of_two_transverse_lines() {
        let a = Arrangement::from_forms(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
        ])
        .unwrap();
        let m = multirestrict(&a, 0).unwrap();
        assert_eq!(m.point_count(), 1);
        assert_eq!(m.total_multiplicity(), 1);
        assert_eq!(multi_exponents(&m).unwrap(), (0, 1));
    }

    #[test]
    fn conic_meets_line_in_two_points_of_multiplicity_three() {
        let a = Arrangement::from_forms(&[
            (CurveKind::Conic, "x^2 - xz + 5y^2 - 5yz"),
            (CurveKind::Conic, "x^2 + 2y^2 - xz - 2yz"),
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "x + y - z"),
        ])
        .unwrap();
        let m = multirestrict(&a, 2).unwrap();
        assert_eq!(m.point_count(), 2);
        let mut mults: Vec<u32> = m.points().iter().map(|(_, e)| *e).collect();
        mults.sort_unstable();
        assert_eq!(mults, vec![3, 3]);
        assert_eq!(multi_exponents(&m).unwrap(), (3, 3));
    }
}
