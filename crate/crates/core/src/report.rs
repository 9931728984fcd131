//! Code-spec files and JSON analysis reports.
//!
//! A code spec file is JSON:
//!
//! ```json
//! {
//!   "ring": "Z/25",
//!   "n": 25,
//!   "generators": ["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"],
//!   "field_poly": null
//! }
//! ```
//!
//! Generators are either expression strings or raw coefficient-code lists.
//! `field_poly` optionally overrides the field modulus for `F<q>[u]/u^<v>`
//! rings (coefficients over `F_p`, ascending, monic).

use serde::{Deserialize, Serialize};

use crate::codes::CyclicCode;
use crate::error::Result;
use crate::metrics::{self, DistanceResult};
use crate::parse;
use crate::poly::Poly;
use crate::reversibility;
use crate::Caps;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpecFile {
    pub ring: String,
    #[serde(default)]
    pub field_poly: Option<Vec<u64>>,
    pub n: usize,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Expression(String),
    Coefficients(Vec<u64>),
}

impl CodeSpecFile {
    pub fn build(&self) -> Result<CyclicCode> {
        let ring = parse::parse_ring_spec(&self.ring, self.field_poly.as_deref())?;
        let mut gens = Vec::new();
        for g in &self.generators {
            let poly = match g {
                GeneratorSpec::Expression(text) => parse::parse_poly_expr(&ring, text)?,
                GeneratorSpec::Coefficients(codes) => {
                    for &c in codes {
                        if c >= ring.order() {
                            return Err(crate::error::Error::Parse {
                                pos: 0,
                                msg: format!(
                                    "coefficient {c} outside ring {ring} (codes run 0..{})",
                                    ring.order()
                                ),
                            });
                        }
                    }
                    Poly::from_codes(&ring, codes.clone())
                }
            };
            gens.push(poly);
        }
        CyclicCode::new(&ring, self.n, gens)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StdGenReport {
    pub coefficients: Vec<u64>,
    pub display: String,
    pub lead_valuation: u32,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub level: usize,
    pub generator: Vec<u64>,
    pub display: String,
    pub degree: usize,
    pub reversible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CardinalityReport {
    pub p: u64,
    pub exponent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub d: u64,
    pub method: String,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorCheckReport {
    pub generator: String,
    pub reciprocal: String,
    pub member: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReversibleReport {
    pub verdict: bool,
    pub per_generator: Vec<GeneratorCheckReport>,
}

/// Full analysis of one code.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub ring: String,
    pub n: usize,
    pub zero_code: bool,
    pub standard_generators: Vec<StdGenReport>,
    pub torsion: Vec<TorsionReport>,
    pub cardinality: CardinalityReport,
    pub distance: Option<DistanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_note: Option<String>,
    pub reversible: ReversibleReport,
    pub mds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mds_note: Option<String>,
}

pub fn analyze(code: &CyclicCode, caps: &Caps) -> AnalysisReport {
    let std = code.standard_generators();
    let profile = code.torsion_profile();
    let torsion_ok = reversibility::torsion_reversibility(code);
    let rev = reversibility::is_reversible(code);
    let card = code.cardinality();

    let distance = metrics::hamming_distance(code, caps);
    let (distance, distance_note) = match distance {
        Ok(d) => (Some(d), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let (mds, mds_note) = match &distance {
        Some(_) => match metrics::is_mds(code, caps) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        },
        None => (None, Some("distance unavailable".into())),
    };

    AnalysisReport {
        ring: code.ring().to_string(),
        n: code.len(),
        zero_code: code.is_zero_code(),
        standard_generators: std
            .entries
            .iter()
            .map(|e| StdGenReport {
                coefficients: e.poly.coeffs().to_vec(),
                display: e.poly.to_string(),
                lead_valuation: e.lead_val,
                degree: e.degree,
            })
            .collect(),
        torsion: profile
            .levels
            .iter()
            .zip(&torsion_ok)
            .enumerate()
            .map(|(level, (l, &reversible))| TorsionReport {
                level,
                generator: l.generator.coeffs().to_vec(),
                display: l.generator.to_string(),
                degree: l.degree,
                reversible,
            })
            .collect(),
        cardinality: CardinalityReport {
            p: card.p,
            exponent: card.p_exponent,
        },
        distance: distance.as_ref().map(distance_report),
        distance_note,
        reversible: ReversibleReport {
            verdict: rev.verdict,
            per_generator: rev
                .per_generator
                .iter()
                .map(|g| GeneratorCheckReport {
                    generator: g.generator.to_string(),
                    reciprocal: g.reciprocal.to_string(),
                    member: g.member,
                })
                .collect(),
        },
        mds,
        mds_note,
    }
}

pub fn distance_report(d: &DistanceResult) -> DistanceReport {
    DistanceReport {
        d: d.d,
        method: d.method.as_str().to_string(),
        witness: d.witness.coeffs().to_vec(),
    }
}
