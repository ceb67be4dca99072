//! The output document and its text rendering.

use std::fmt::Write;

use serde::Serialize;
use zpr_fsr::{CoefficientDomain, Enumeration, ParamDescriptor, Poly, StepTrace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyDoc {
    /// Ascending coefficients.
    pub coeffs: Vec<u64>,
    pub text: String,
}

impl From<&Poly> for PolyDoc {
    fn from(f: &Poly) -> Self {
        PolyDoc {
            coeffs: f.coeffs().to_vec(),
            text: f.to_string(),
        }
    }
}

fn polys(fs: &[Poly]) -> Vec<PolyDoc> {
    fs.iter().map(PolyDoc::from).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulusDoc {
    pub p: u64,
    pub r: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermDoc {
    /// 1-based row index.
    pub row: usize,
    pub poly: PolyDoc,
    pub degree_bound: i64,
    pub domain: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamDoc {
    /// 1-based row index.
    pub pivot: usize,
    pub pivot_poly: PolyDoc,
    pub scalar_domain: &'static str,
    pub terms: Vec<TermDoc>,
    pub count: u128,
}

fn domain_name(d: CoefficientDomain) -> &'static str {
    match d {
        CoefficientDomain::FullField => "field",
        CoefficientDomain::Digits => "digits",
    }
}

impl ParamDoc {
    pub fn new(desc: &ParamDescriptor, count: u128) -> Self {
        ParamDoc {
            pivot: desc.pivot_row + 1,
            pivot_poly: (&desc.pivot_poly).into(),
            scalar_domain: match desc.scalar_domain {
                CoefficientDomain::FullField => "nonzero field elements",
                CoefficientDomain::Digits => "nonzero digits",
            },
            terms: desc
                .free_terms
                .iter()
                .map(|t| TermDoc {
                    row: t.row + 1,
                    poly: (&t.poly).into(),
                    degree_bound: t.degree_bound,
                    domain: domain_name(t.domain),
                })
                .collect(),
            count,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumDoc {
    pub polys: Vec<PolyDoc>,
    pub visited: u128,
    pub total: u128,
    pub truncated: bool,
}

impl From<&Enumeration> for EnumDoc {
    fn from(e: &Enumeration) -> Self {
        EnumDoc {
            polys: polys(&e.polys),
            visited: e.visited,
            total: e.total,
            truncated: e.truncated,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocalDoc {
    pub complexity: usize,
    pub min_char_poly: PolyDoc,
    pub bidirectional_pivot: bool,
    pub parametrization: ParamDoc,
    pub enumeration: EnumDoc,
    /// Members with a unit constant term.
    pub bidirectional: Vec<PolyDoc>,
    /// Members with constant term 1.
    pub bidirectional_normalized: Vec<PolyDoc>,
}

impl ReciprocalDoc {
    pub fn new(
        complexity: usize,
        min_char: &Poly,
        bidirectional_pivot: bool,
        parametrization: ParamDoc,
        enumeration: &Enumeration,
    ) -> Self {
        ReciprocalDoc {
            complexity,
            min_char_poly: min_char.into(),
            bidirectional_pivot,
            parametrization,
            enumeration: enumeration.into(),
            bidirectional: polys(&zpr_fsr::bidirectional_filter(&enumeration.polys)),
            bidirectional_normalized: polys(&zpr_fsr::param::bidirectional_normalized(
                &enumeration.polys,
            )),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceDoc {
    pub k: usize,
    pub delta: Vec<u64>,
    /// `P_0` first; 1-based row indices.
    pub partitions: Vec<Vec<usize>>,
    /// 1-based row indices.
    pub pivots: Vec<usize>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<PolyDoc>>,
}

impl From<&StepTrace> for TraceDoc {
    fn from(t: &StepTrace) -> Self {
        TraceDoc {
            k: t.k,
            delta: t.delta.iter().map(|d| d.value()).collect(),
            partitions: t
                .partitions
                .iter()
                .map(|p| p.iter().map(|i| i + 1).collect())
                .collect(),
            pivots: t.pivots.iter().map(|i| i + 1).collect(),
            e: t.update.entries().iter().map(|row| polys(row)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetDiff {
    pub engine_complexity: usize,
    pub oracle_complexity: usize,
    pub engine_count: usize,
    pub oracle_count: usize,
    /// Found by the oracle only.
    pub missing: Vec<PolyDoc>,
    /// Produced by the engine only.
    pub extra: Vec<PolyDoc>,
}

impl SetDiff {
    pub fn new(engine: (usize, &[Poly]), oracle: (usize, &[Poly])) -> Self {
        let only = |a: &[Poly], b: &[Poly]| -> Vec<PolyDoc> {
            a.iter().filter(|f| !b.contains(f)).map(PolyDoc::from).collect()
        };
        SetDiff {
            engine_complexity: engine.0,
            oracle_complexity: oracle.0,
            engine_count: engine.1.len(),
            oracle_count: oracle.1.len(),
            missing: only(oracle.1, engine.1),
            extra: only(engine.1, oracle.1),
        }
    }

    pub fn agrees(&self) -> bool {
        self.engine_complexity == self.oracle_complexity
            && self.missing.is_empty()
            && self.extra.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDoc {
    pub agree: bool,
    pub forward: SetDiff,
    pub reciprocal: SetDiff,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub modulus: ModulusDoc,
    pub mode: &'static str,
    pub sequence: Vec<u64>,
    /// Set when some input value was outside `0..p^r` and got reduced.
    pub reduced: bool,
    pub complexity: usize,
    pub feedback_poly: PolyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParamDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reciprocal: Option<ReciprocalDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

impl Report {
    pub fn truncated(&self) -> bool {
        self.enumeration.as_ref().is_some_and(|e| e.truncated)
            || self.reciprocal.as_ref().is_some_and(|r| r.enumeration.truncated)
    }
}

fn texts(fs: &[PolyDoc]) -> String {
    if fs.is_empty() {
        "(none)".into()
    } else {
        fs.iter().map(|f| f.text.as_str()).collect::<Vec<_>>().join(", ")
    }
}

fn write_param(out: &mut String, label: &str, p: &ParamDoc) {
    let _ = writeln!(
        out,
        "{label}: a*({}) [row {}, a in {}]",
        p.pivot_poly.text, p.pivot, p.scalar_domain
    );
    for t in &p.terms {
        if t.degree_bound < 0 {
            let _ = writeln!(out, "  row {}: {} (absent)", t.row, t.poly.text);
        } else {
            let _ = writeln!(
                out,
                "  + a_{}(x)*({}), deg a_{} <= {}, coefficients: {}",
                t.row, t.poly.text, t.row, t.degree_bound, t.domain
            );
        }
    }
    let _ = writeln!(out, "  parameter tuples: {}", p.count);
}

fn write_enum(out: &mut String, label: &str, e: &EnumDoc) {
    let _ = writeln!(
        out,
        "{label} ({} distinct, {}/{} tuples{}): {}",
        e.polys.len(),
        e.visited,
        e.total,
        if e.truncated { ", truncated" } else { "" },
        texts(&e.polys)
    );
}

fn write_diff(out: &mut String, label: &str, d: &SetDiff) {
    let _ = writeln!(
        out,
        "{label}: engine L={} ({} polys), oracle L={} ({} polys){}",
        d.engine_complexity,
        d.engine_count,
        d.oracle_complexity,
        d.oracle_count,
        if d.agrees() { ", agree" } else { ", MISMATCH" }
    );
    if !d.missing.is_empty() {
        let _ = writeln!(out, "  oracle only: {}", texts(&d.missing));
    }
    if !d.extra.is_empty() {
        let _ = writeln!(out, "  engine only: {}", texts(&d.extra));
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let modulus = if r.modulus.r == 1 {
        format!("Z_{}", r.modulus.p)
    } else {
        format!("Z_{}^{}", r.modulus.p, r.modulus.r)
    };
    let seq = r.sequence.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "modulus: {modulus}");
    let _ = writeln!(out, "mode: {}", r.mode);
    let _ = writeln!(out, "sequence: {seq}{}", if r.reduced { " (reduced)" } else { "" });
    let _ = writeln!(out, "complexity: {}", r.complexity);
    let _ = writeln!(out, "feedback polynomial: {}", r.feedback_poly.text);
    if let Some(p) = &r.parametrization {
        write_param(&mut out, "parametrization", p);
    }
    if let Some(e) = &r.enumeration {
        write_enum(&mut out, "feedback polynomials", e);
    }
    if let Some(rec) = &r.reciprocal {
        let _ = writeln!(out, "reciprocal complexity: {}", rec.complexity);
        let _ = writeln!(out, "minimal characteristic polynomial: {}", rec.min_char_poly.text);
        write_param(&mut out, "reciprocal parametrization", &rec.parametrization);
        write_enum(&mut out, "characteristic polynomials", &rec.enumeration);
        let _ = writeln!(out, "bidirectional (unit constant term): {}", texts(&rec.bidirectional));
        let _ = writeln!(
            out,
            "bidirectional (constant term 1): {}",
            texts(&rec.bidirectional_normalized)
        );
    }
    if let Some(p) = &r.profile {
        let p = p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "profile: {p}");
    }
    if let Some(trace) = &r.trace {
        for t in trace {
            let e = t
                .e
                .iter()
                .map(|row| format!("[{}]", row.iter().map(|f| f.text.as_str()).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                "step {}: delta {:?} partitions {:?} pivots {:?} E {e}",
                t.k, t.delta, t.partitions, t.pivots
            );
        }
    }
    if let Some(o) = &r.oracle {
        write_diff(&mut out, "oracle, feedback", &o.forward);
        write_diff(&mut out, "oracle, reciprocal", &o.reciprocal);
    }
    out
}
