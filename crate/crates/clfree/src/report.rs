//! Report assembly for the analyze, certify, and compare commands:
//! versioned JSON (schema 1) and a plain-text rendering of the same
//! content. Field order is fixed so serialized reports are byte-stable.

use serde::Serialize;

use crate::addel::{certify, FreenessCertificate};
use crate::arrangement::{Arrangement, CurveKind};
use crate::clusters::{singular_clusters, ShearStream};
use crate::combinatorics::{combinatorial_type, combinatorics, EqualityMode};
use crate::error::Error;
use crate::freeness::{analyze_freeness, jacobian_degree, FreenessVerdict};
use crate::local::singular_table;
use crate::resolve::GradedResolution;

pub const SCHEMA: u32 = 1;

/// Options shared by the report builders.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Attach an addition-deletion certificate to analysis reports.
    pub certificate: bool,
    /// Seed for the shearing moves used to split singular clusters.
    pub chart_seed: Option<u64>,
    /// Which combinatorial matrix decides equality in compare reports.
    pub equality: EqualityMode,
}

impl Default for ReportOptions {
    fn default() -> ReportOptions {
        ReportOptions {
            certificate: true,
            chart_seed: None,
            equality: EqualityMode::Strict,
        }
    }
}

impl ReportOptions {
    fn shear(&self) -> ShearStream {
        ShearStream::from_seed(self.chart_seed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub label: String,
    pub kind: CurveKind,
    pub form: String,
    pub degree: u32,
}

/// One singular cluster of the arrangement. Milnor and tjurina numbers
/// are per geometric point; a cluster of residue degree e carries e
/// conjugate copies.
#[derive(Debug, Clone, Serialize)]
pub struct SingularRow {
    pub cluster: String,
    pub residue_degree: u32,
    pub branches: u32,
    pub milnor: u64,
    pub tjurina: u64,
    pub ordinary: bool,
    pub quasihomogeneous: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionJson {
    pub generator_degrees: Vec<i64>,
    pub relation_degrees: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreenessJson {
    pub free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<ResolutionJson>,
    pub hilbert_numerator: Vec<i64>,
}

impl FreenessJson {
    fn from_verdict(v: &FreenessVerdict) -> FreenessJson {
        FreenessJson {
            free: v.free,
            exponents: v.exponents.clone(),
            betti: v.betti.as_ref().map(|b| ResolutionJson {
                generator_degrees: b.generator_degrees.clone(),
                relation_degrees: b.relation_degrees.clone(),
            }),
            hilbert_numerator: v.hilbert_numerator.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CombinatoricsJson {
    pub components: usize,
    pub h1: u64,
    pub h2: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare: Option<[u64; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateStepJson {
    pub rule: &'static str,
    pub arrangement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub added: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasihomogeneous: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_exponents: Option<Vec<i64>>,
    pub free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    pub steps: Vec<CertificateStepJson>,
}

impl CertificateJson {
    fn from_certificate(c: &FreenessCertificate) -> CertificateJson {
        CertificateJson {
            free: c.free,
            exponents: c.exponents.clone(),
            steps: c
                .steps
                .iter()
                .map(|s| CertificateStepJson {
                    rule: s.rule.tag(),
                    arrangement: s.arrangement.clone(),
                    added: s.added.clone(),
                    k: s.k,
                    quasihomogeneous: s.quasihomogeneous,
                    from_exponents: s.from_exponents.clone(),
                    free: s.free,
                    exponents: s.exponents.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub curve_count: usize,
    pub degree: u32,
    pub curves: Vec<CurveSummary>,
    pub singular_points: Vec<SingularRow>,
    pub jacobian_degree: u64,
    /// Sums over clusters of the cluster totals (per-point value times
    /// residue degree); the tjurina sum always equals jacobian_degree.
    pub milnor_sum: u64,
    pub tjurina_sum: u64,
    pub quasihomogeneous: bool,
    pub freeness: FreenessJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    pub combinatorics: CombinatoricsJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareSide {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub curve_count: usize,
    pub degree: u32,
    pub freeness: FreenessJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub schema: u32,
    pub first: CompareSide,
    pub second: CompareSide,
    pub equal_strict: bool,
    pub equal_incidence: bool,
    /// Equality under the mode selected by the options.
    pub equal: bool,
    pub same_freeness: bool,
    /// Equal combinatorics with different freeness: freeness is not
    /// determined by the intersection lattice.
    pub freeness_not_combinatorial: bool,
}

pub fn analyze(arr: &Arrangement, opts: &ReportOptions) -> Result<AnalysisReport, Error> {
    let mut shear = opts.shear();
    let f = arr.defining_polynomial();
    let clusters = singular_clusters(arr, &mut shear)?;
    let table = singular_table(arr, &clusters)?;
    let comb = combinatorics(arr, &clusters);
    let (_, verdict) = analyze_freeness(arr);
    let deg_j = jacobian_degree(&f);
    let milnor_sum: u64 = table.iter().map(|p| p.invariants.milnor_cluster).sum();
    let tjurina_sum: u64 = table.iter().map(|p| p.invariants.tjurina_cluster).sum();
    debug_assert_eq!(tjurina_sum, deg_j);
    let quasihomogeneous = table.iter().all(|p| p.quasihomogeneous);
    let certificate = if opts.certificate {
        Some(CertificateJson::from_certificate(&certify(arr, &mut shear)?))
    } else {
        None
    };
    Ok(AnalysisReport {
        schema: SCHEMA,
        name: arr.name().map(str::to_owned),
        curve_count: arr.curves().len(),
        degree: arr.degree(),
        curves: arr
            .curves()
            .iter()
            .map(|c| CurveSummary {
                label: c.label.clone(),
                kind: c.kind,
                form: c.form.to_string(),
                degree: c.kind.expected_degree(),
            })
            .collect(),
        singular_points: table
            .iter()
            .map(|p| SingularRow {
                cluster: p.cluster.describe(),
                residue_degree: p.cluster.residue_degree(),
                branches: p.branches,
                milnor: p.invariants.milnor_point,
                tjurina: p.invariants.tjurina_point,
                ordinary: p.ordinary,
                quasihomogeneous: p.quasihomogeneous,
            })
            .collect(),
        jacobian_degree: deg_j,
        milnor_sum,
        tjurina_sum,
        quasihomogeneous,
        freeness: FreenessJson::from_verdict(&verdict),
        certificate,
        combinatorics: CombinatoricsJson {
            components: comb.component_count,
            h1: comb.h1,
            h2: comb.h2,
            poincare: comb.poincare,
        },
    })
}

pub fn certify_report(arr: &Arrangement, opts: &ReportOptions) -> Result<CertifyReport, Error> {
    let mut shear = opts.shear();
    let cert = certify(arr, &mut shear)?;
    Ok(CertifyReport {
        schema: SCHEMA,
        name: arr.name().map(str::to_owned),
        certificate: CertificateJson::from_certificate(&cert),
    })
}

pub fn compare(
    a: &Arrangement,
    b: &Arrangement,
    opts: &ReportOptions,
) -> Result<CompareReport, Error> {
    let mut shear = opts.shear();
    let clusters_a = singular_clusters(a, &mut shear)?;
    let clusters_b = singular_clusters(b, &mut shear)?;
    let equal_strict = combinatorial_type(a, &clusters_a, EqualityMode::Strict)?
        == combinatorial_type(b, &clusters_b, EqualityMode::Strict)?;
    let equal_incidence = combinatorial_type(a, &clusters_a, EqualityMode::Incidence)?
        == combinatorial_type(b, &clusters_b, EqualityMode::Incidence)?;
    let equal = match opts.equality {
        EqualityMode::Strict => equal_strict,
        EqualityMode::Incidence => equal_incidence,
    };
    let (_, va) = analyze_freeness(a);
    let (_, vb) = analyze_freeness(b);
    let same_freeness = va.free == vb.free && va.exponents == vb.exponents;
    Ok(CompareReport {
        schema: SCHEMA,
        first: CompareSide {
            name: a.name().map(str::to_owned),
            curve_count: a.curves().len(),
            degree: a.degree(),
            freeness: FreenessJson::from_verdict(&va),
        },
        second: CompareSide {
            name: b.name().map(str::to_owned),
            curve_count: b.curves().len(),
            degree: b.degree(),
            freeness: FreenessJson::from_verdict(&vb),
        },
        equal_strict,
        equal_incidence,
        equal,
        same_freeness,
        freeness_not_combinatorial: equal && !same_freeness,
    })
}

fn exponent_list(exps: &[i64]) -> String {
    let parts: Vec<String> = exps.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Grouped twist notation for a graded free module, e.g. "S(-7)^4".
fn twists(degrees: &[i64]) -> String {
    if degrees.is_empty() {
        return "0".into();
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let d = sorted[i];
        let mut count = 0;
        while i < sorted.len() && sorted[i] == d {
            count += 1;
            i += 1;
        }
        if count == 1 {
            parts.push(format!("S({})", -d));
        } else {
            parts.push(format!("S({})^{}", -d, count));
        }
    }
    parts.join(" + ")
}

fn resolution_text(r: &ResolutionJson) -> String {
    if r.relation_degrees.is_empty() {
        twists(&r.generator_degrees)
    } else {
        format!(
            "0 -> {} -> {}",
            twists(&r.relation_degrees),
            twists(&r.generator_degrees)
        )
    }
}

pub fn resolution_json(r: &GradedResolution) -> ResolutionJson {
    ResolutionJson {
        generator_degrees: r.generator_degrees.clone(),
        relation_degrees: r.relation_degrees.clone(),
    }
}

fn freeness_text(f: &FreenessJson) -> String {
    match (&f.exponents, &f.betti) {
        (Some(e), _) => format!("free, exponents {}", exponent_list(e)),
        (None, Some(b)) => format!("not free, resolution {}", resolution_text(b)),
        (None, None) => "not free".into(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certificate_text(cert: &CertificateJson, out: &mut String) {
    for (i, s) in cert.steps.iter().enumerate() {
        let claim = match &s.exponents {
            Some(e) => format!("free, exponents {}", exponent_list(e)),
            None if s.free => "free".into(),
            None => "not free".into(),
        };
        let detail = match s.rule {
            "direct" => String::new(),
            _ => {
                let from = s
                    .from_exponents
                    .as_deref()
                    .map(exponent_list)
                    .unwrap_or_default();
                format!(
                    " adding {} (k = {}, from {})",
                    s.added.as_deref().unwrap_or("?"),
                    s.k.map(|k| k.to_string()).unwrap_or_default(),
                    from
                )
            }
        };
        out.push_str(&format!(
            "  {}. [{}]{} {} for {}\n",
            i + 1,
            s.rule,
            detail,
            claim,
            s.arrangement
        ));
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.name.as_deref().unwrap_or("arrangement");
        out.push_str(&format!(
            "{name}: {} curves, defining polynomial of degree {}\n",
            self.curve_count, self.degree
        ));
        for c in &self.curves {
            out.push_str(&format!("  {} ({:?}): {}\n", c.label, c.kind, c.form));
        }
        out.push_str("singular points:\n");
        if self.singular_points.is_empty() {
            out.push_str("  none (smooth)\n");
        }
        for row in &self.singular_points {
            let mut flags = Vec::new();
            if row.residue_degree > 1 {
                flags.push(format!("degree {} cluster", row.residue_degree));
            }
            flags.push(format!("branches {}", row.branches));
            flags.push(format!("milnor {}", row.milnor));
            flags.push(format!("tjurina {}", row.tjurina));
            if row.ordinary {
                flags.push("ordinary".into());
            }
            if !row.quasihomogeneous {
                flags.push("not quasihomogeneous".into());
            }
            out.push_str(&format!("  {}: {}\n", row.cluster, flags.join(", ")));
        }
        out.push_str(&format!(
            "jacobian ideal degree {}, milnor sum {}, tjurina sum {}, quasihomogeneous {}\n",
            self.jacobian_degree,
            self.milnor_sum,
            self.tjurina_sum,
            yes_no(self.quasihomogeneous)
        ));
        out.push_str(&format!("freeness: {}\n", freeness_text(&self.freeness)));
        out.push_str(&format!(
            "combinatorics: {} components, h1 = {}, h2 = {}",
            self.combinatorics.components, self.combinatorics.h1, self.combinatorics.h2
        ));
        if let Some([p0, p1, p2]) = self.combinatorics.poincare {
            out.push_str(&format!(", poincare [{p0}, {p1}, {p2}]"));
        }
        out.push('\n');
        if let Some(cert) = &self.certificate {
            out.push_str("certificate:\n");
            certificate_text(cert, &mut out);
        }
        out
    }
}

impl CertifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.name.as_deref().unwrap_or("arrangement");
        let claim = match &self.certificate.exponents {
            Some(e) => format!("free, exponents {}", exponent_list(e)),
            None => "not free".into(),
        };
        out.push_str(&format!("{name}: {claim}\n"));
        certificate_text(&self.certificate, &mut out);
        out
    }
}

impl CompareReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let a = self.first.name.as_deref().unwrap_or("first");
        let b = self.second.name.as_deref().unwrap_or("second");
        out.push_str(&format!(
            "combinatorially equal: {} (strict {}, incidence {})\n",
            yes_no(self.equal),
            yes_no(self.equal_strict),
            yes_no(self.equal_incidence)
        ));
        out.push_str(&format!("{a}: {}\n", freeness_text(&self.first.freeness)));
        out.push_str(&format!("{b}: {}\n", freeness_text(&self.second.freeness)));
        if self.freeness_not_combinatorial {
            out.push_str(
                "same combinatorics, different freeness: freeness is not combinatorial here\n",
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(forms: &[(CurveKind, &str)]) -> Arrangement {
        Arrangement::from_forms(forms).unwrap()
    }

    #[test]
    fn analysis_report_is_consistent_and_stable() {
        let a = arr(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "z"),
        ]);
        let opts = ReportOptions::default();
        let r1 = analyze(&a, &opts).unwrap();
        let r2 = analyze(&a, &opts).unwrap();
        assert_eq!(r1.to_json(), r2.to_json());
        assert_eq!(r1.tjurina_sum, r1.jacobian_degree);
        assert!(r1.freeness.free);
        assert_eq!(r1.freeness.exponents, Some(vec![1, 1, 1]));
        assert_eq!(r1.singular_points.len(), 3);
        let parsed: serde_json::Value = serde_json::from_str(&r1.to_json()).unwrap();
        assert_eq!(parsed["schema"], 1);
    }

    #[test]
    fn text_report_names_the_resolution_when_not_free() {
        let a = arr(&[(CurveKind::Conic, "y^2 - xz")]);
        let opts = ReportOptions {
            certificate: false,
            ..ReportOptions::default()
        };
        let r = analyze(&a, &opts).unwrap();
        assert!(!r.freeness.free);
        let text = r.to_text();
        assert!(text.contains("not free, resolution"), "{text}");
        assert!(text.contains("S(-1)^3"), "{text}");
    }

    #[test]
    fn compare_detects_equal_and_unequal() {
        let pencil = arr(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "x - y"),
        ]);
        let triangle = arr(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "z"),
        ]);
        let opts = ReportOptions::default();
        let same = compare(&pencil, &pencil, &opts).unwrap();
        assert!(same.equal_strict && same.equal_incidence && same.same_freeness);
        assert!(!same.freeness_not_combinatorial);
        let diff = compare(&pencil, &triangle, &opts).unwrap();
        assert!(!diff.equal_strict && !diff.equal_incidence);
    }

    #[test]
    fn certify_report_lists_steps_in_order() {
        let a = arr(&[
            (CurveKind::Line, "x"),
            (CurveKind::Line, "y"),
            (CurveKind::Line, "z"),
            (CurveKind::Line, "x - y"),
        ]);
        let r = certify_report(&a, &ReportOptions::default()).unwrap();
        assert!(r.certificate.free);
        assert_eq!(r.certificate.exponents, Some(vec![1, 1, 2]));
        assert_eq!(r.certificate.steps.first().unwrap().rule, "direct");
        assert_eq!(r.certificate.steps.last().unwrap().rule, "line-addition");
        let text = r.to_text();
        assert!(text.contains("line-addition"), "{text}");
    }
}
