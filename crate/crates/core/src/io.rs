//! JSON input formats for graphs and local systems, and report
//! serialization for the CLI.
//!
//! Graph file: {"vertices": n, "edges": [[u, v], ...]} with 0-based
//! indices. Local system file: {"dim": r, "generators": {"<edge>":
//! [[[re, im], ...], ...]}} where each entry is a [re, im] pair; entries
//! given as "p/q" strings select exact arithmetic (rational when every
//! imaginary part vanishes, Gaussian rational otherwise), entries given
//! as numbers select complex floats.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{GraphMode, Multigraph};
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::poly::ExactPoly;
use crate::scalar::{
    format_rational, parse_rational, CoefficientKind, GaussianRational, Rational, Scalar,
};
use crate::series::FormalSeries;

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: u64,
    edges: Vec<(u64, u64)>,
}

pub fn graph_from_json(text: &str, mode: GraphMode) -> Result<Multigraph> {
    let parsed: GraphJson = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = parsed
        .edges
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    Multigraph::from_edge_list(parsed.vertices as usize, &edges, mode)
}

pub fn graph_to_json(g: &Multigraph) -> String {
    let doc = GraphJson {
        vertices: g.vertex_count() as u64,
        edges: g
            .edge_list()
            .into_iter()
            .map(|(u, v)| (u as u64, v as u64))
            .collect(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

/// A local system over whichever coefficient field its input selected.
pub enum AnyLocalSystem {
    Rational(LocalSystem<Rational>),
    Gaussian(LocalSystem<GaussianRational>),
    Float(LocalSystem<Complex64>),
}

impl AnyLocalSystem {
    pub fn kind(&self) -> CoefficientKind {
        match self {
            AnyLocalSystem::Rational(_) => CoefficientKind::Rational,
            AnyLocalSystem::Gaussian(_) => CoefficientKind::GaussianRational,
            AnyLocalSystem::Float(_) => CoefficientKind::ComplexFloat,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyLocalSystem::Rational(ls) => ls.dim(),
            AnyLocalSystem::Gaussian(ls) => ls.dim(),
            AnyLocalSystem::Float(ls) => ls.dim(),
        }
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        match self {
            AnyLocalSystem::Rational(ls) => ls.graph(),
            AnyLocalSystem::Gaussian(ls) => ls.graph(),
            AnyLocalSystem::Float(ls) => ls.graph(),
        }
    }
}

/// Runs a generic closure on whichever field the system carries,
/// converting the result to a common type.
#[macro_export]
macro_rules! with_local_system {
    ($any:expr, $ls:ident => $body:expr) => {
        match $any {
            $crate::io::AnyLocalSystem::Rational($ls) => $body,
            $crate::io::AnyLocalSystem::Gaussian($ls) => $body,
            $crate::io::AnyLocalSystem::Float($ls) => $body,
        }
    };
}

#[derive(Debug, Deserialize)]
struct LocalSystemJson {
    dim: usize,
    #[serde(default)]
    generators: BTreeMap<String, Vec<Vec<(Value, Value)>>>,
}

enum EntryValue {
    Exact(Rational, Rational),
    Float(f64, f64),
}

fn parse_entry(re: &Value, im: &Value) -> Result<EntryValue> {
    let part = |v: &Value| -> Result<std::result::Result<Rational, f64>> {
        match v {
            Value::String(s) => Ok(Ok(parse_rational(s)?)),
            Value::Number(n) => {
                let f = n.as_f64().ok_or_else(|| {
                    Error::Parse(format!("entry {n} is not a finite number"))
                })?;
                if !f.is_finite() {
                    return Err(Error::Parse("non-finite entry".into()));
                }
                Ok(Err(f))
            }
            other => Err(Error::Parse(format!("bad matrix entry {other}"))),
        }
    };
    match (part(re)?, part(im)?) {
        (Ok(a), Ok(b)) => Ok(EntryValue::Exact(a, b)),
        (a, b) => {
            let to_f = |x: std::result::Result<Rational, f64>| match x {
                Ok(r) => crate::scalar::rational_to_f64(&r),
                Err(f) => f,
            };
            Ok(EntryValue::Float(to_f(a), to_f(b)))
        }
    }
}

/// Parses a local system file against a graph, selecting the coefficient
/// field from the entries.
pub fn local_system_from_json(graph: Arc<Multigraph>, text: &str) -> Result<AnyLocalSystem> {
    let parsed: LocalSystemJson = serde_json::from_str(text)?;
    let r = parsed.dim;
    let mut entries: BTreeMap<usize, Vec<Vec<EntryValue>>> = BTreeMap::new();
    let mut any_float = false;
    let mut any_imag = false;
    for (key, rows) in &parsed.generators {
        let edge: usize = key
            .parse()
            .map_err(|_| Error::Parse(format!("generator key {key:?} is not an edge index")))?;
        if rows.len() != r || rows.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                rows: rows.len(),
                cols: rows.first().map_or(0, |row| row.len()),
            });
        }
        let mut mat_entries = Vec::with_capacity(r);
        for row in rows {
            let mut out_row = Vec::with_capacity(r);
            for (re, im) in row {
                let entry = parse_entry(re, im)?;
                match &entry {
                    EntryValue::Exact(_, b) => {
                        if !b.is_zero() {
                            any_imag = true;
                        }
                    }
                    EntryValue::Float(..) => any_float = true,
                }
                out_row.push(entry);
            }
            mat_entries.push(out_row);
        }
        entries.insert(edge, mat_entries);
    }

    fn build<S: Scalar>(
        graph: Arc<Multigraph>,
        r: usize,
        entries: &BTreeMap<usize, Vec<Vec<EntryValue>>>,
        convert: impl Fn(&EntryValue) -> S,
    ) -> Result<LocalSystem<S>> {
        let generators: BTreeMap<usize, Mat<S>> = entries
            .iter()
            .map(|(&edge, rows)| {
                let mat = Mat::from_rows(
                    rows.iter()
                        .map(|row| row.iter().map(&convert).collect())
                        .collect(),
                );
                (edge, mat)
            })
            .collect();
        LocalSystem::from_generators(graph, r, &generators)
    }

    if any_float {
        let ls = build(graph, r, &entries, |e| match e {
            EntryValue::Exact(a, b) => Complex64::new(
                crate::scalar::rational_to_f64(a),
                crate::scalar::rational_to_f64(b),
            ),
            EntryValue::Float(a, b) => Complex64::new(*a, *b),
        })?;
        Ok(AnyLocalSystem::Float(ls))
    } else if any_imag {
        let ls = build(graph, r, &entries, |e| match e {
            EntryValue::Exact(a, b) => GaussianRational::new(a.clone(), b.clone()),
            EntryValue::Float(..) => unreachable!(),
        })?;
        Ok(AnyLocalSystem::Gaussian(ls))
    } else {
        let ls = build(graph, r, &entries, |e| match e {
            EntryValue::Exact(a, _) => a.clone(),
            EntryValue::Float(..) => unreachable!(),
        })?;
        Ok(AnyLocalSystem::Rational(ls))
    }
}

/// Floats print with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Coefficient as a string: "p/q" for exact real values, "a+bi" for exact
/// complex values, scientific notation for floats.
pub fn scalar_to_string<S: Scalar>(c: &S) -> String {
    if let Some(r) = c.as_rational() {
        return format_rational(&r);
    }
    match S::KIND {
        CoefficientKind::ComplexFloat => {
            let z = c.to_c64();
            if z.im == 0.0 {
                format_f64(z.re)
            } else {
                format!("{}{:+}i", format_f64(z.re), z.im)
            }
        }
        _ => format!("{c}"),
    }
}

pub fn poly_to_strings<S: Scalar>(p: &ExactPoly<S>) -> Vec<String> {
    let top = p.degree().map_or(0, |d| d);
    (0..=top).map(|k| scalar_to_string(&p.coeff(k))).collect()
}

pub fn series_to_strings<S: Scalar>(s: &FormalSeries<S>) -> Vec<String> {
    (0..=s.truncation())
        .map(|k| scalar_to_string(&s.coeff(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4_JSON: &str = r#"{"vertices": 4, "edges": [[0,1],[1,2],[2,0],[0,3],[1,3],[2,3]]}"#;

    #[test]
    fn graph_round_trip() {
        let g = graph_from_json(K4_JSON, GraphMode::Regular).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        let text = graph_to_json(&g);
        let g2 = graph_from_json(&text, GraphMode::Regular).unwrap();
        assert_eq!(g.edge_list(), g2.edge_list());
    }

    #[test]
    fn graph_json_rejects_bad_input() {
        assert!(graph_from_json("{", GraphMode::General).is_err());
        // Negative and fractional indices are rejected by typed parsing.
        assert!(graph_from_json(
            r#"{"vertices": 2, "edges": [[-1, 0]]}"#,
            GraphMode::General
        )
        .is_err());
        assert!(graph_from_json(
            r#"{"vertices": 2, "edges": [[0.5, 1]]}"#,
            GraphMode::General
        )
        .is_err());
        assert!(graph_from_json(
            r#"{"vertices": 2, "edges": [[0, 7]]}"#,
            GraphMode::General
        )
        .is_err());
    }

    #[test]
    fn local_system_kind_selection() {
        let g = Arc::new(graph_from_json(K4_JSON, GraphMode::Regular).unwrap());
        // Sign character: rational.
        let sign = r#"{"dim": 1, "generators": {"1": [[["-1", "0"]]], "4": [[["-1", "0"]]], "5": [[["-1", "0"]]]}}"#;
        let ls = local_system_from_json(g.clone(), sign).unwrap();
        assert_eq!(ls.kind(), CoefficientKind::Rational);
        assert_eq!(ls.dim(), 1);

        let gauss = r#"{"dim": 1, "generators": {"1": [[["0", "1"]]]}}"#;
        let ls = local_system_from_json(g.clone(), gauss).unwrap();
        assert_eq!(ls.kind(), CoefficientKind::GaussianRational);

        let float = r#"{"dim": 1, "generators": {"1": [[[0.6, 0.8]]]}}"#;
        let ls = local_system_from_json(g.clone(), float).unwrap();
        assert_eq!(ls.kind(), CoefficientKind::ComplexFloat);

        // Trivial: no generators at all.
        let trivial = r#"{"dim": 2}"#;
        let ls = local_system_from_json(g.clone(), trivial).unwrap();
        assert_eq!(ls.kind(), CoefficientKind::Rational);
        assert_eq!(ls.dim(), 2);

        // Non-unitary float matrix is rejected.
        let bad = r#"{"dim": 1, "generators": {"1": [[[2.0, 0.0]]]}}"#;
        assert!(local_system_from_json(g, bad).is_err());
    }

    #[test]
    fn coefficient_strings() {
        let p = ExactPoly::from_coeffs(vec![
            Rational::from_i64(1),
            parse_rational("-3/2").unwrap(),
        ]);
        assert_eq!(poly_to_strings(&p), vec!["1", "-3/2"]);
        let z = Complex64::new(0.5, 0.0);
        assert_eq!(scalar_to_string(&z), "5.0000000000000000e-1");
    }
}
