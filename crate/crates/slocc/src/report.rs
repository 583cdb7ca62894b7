//! Serializable classification reports: the JSON wire format emitted by
//! the command-line tool (`"schema": 1`).

use crate::pencil::PencilStructure;
use crate::quad::QuadReport;
use crate::tripartite::TriReport;
use crate::Confidence;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// JSON form of a complex number: `[re, im]`.
pub type Cx = [f64; 2];

fn cx(z: &crate::C64) -> Cx {
    [z.re, z.im]
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonPoint {
    pub alpha: Cx,
    pub beta: Cx,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonSpecialPoint {
    pub point: JsonPoint,
    pub class: String,
    pub state: Vec<Cx>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct JsonPencil {
    pub product_points: Vec<JsonSpecialPoint>,
    pub zero_psi_points: Vec<JsonSpecialPoint>,
    pub generic_class: String,
    pub discriminant_identically_zero: bool,
    pub w_points: Vec<JsonPoint>,
}

/// The full four-qubit classification report.
#[derive(Debug, Serialize, Deserialize)]
pub struct JsonQuadReport {
    pub schema: u32,
    pub n_qubits: usize,
    pub structural: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    pub confidence: Confidence,
    pub single_ranks: [u8; 4],
    pub pair_ranks: [u8; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil: Option<JsonPencil>,
}

/// The three-qubit classification report.
#[derive(Debug, Serialize, Deserialize)]
pub struct JsonTriReport {
    pub schema: u32,
    pub n_qubits: usize,
    pub class: String,
    pub ranks: [u8; 3],
    pub w_ranks: [u8; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc_degenerate: Option<bool>,
    pub confidence: Confidence,
    pub hyperdeterminant: f64,
}

fn json_pencil(p: &PencilStructure) -> JsonPencil {
    let special = |sp: &crate::pencil::SpecialPoint| JsonSpecialPoint {
        point: JsonPoint {
            alpha: cx(&sp.point.alpha),
            beta: cx(&sp.point.beta),
        },
        class: sp.class.to_string(),
        state: sp.state.amps().iter().map(cx).collect(),
    };
    JsonPencil {
        product_points: p.product_points.iter().map(special).collect(),
        zero_psi_points: p.zero_psi_points.iter().map(special).collect(),
        generic_class: p.generic_class.to_string(),
        discriminant_identically_zero: p.discriminant_zero,
        w_points: p
            .w_points
            .points()
            .map(|pt| JsonPoint {
                alpha: cx(&pt.alpha),
                beta: cx(&pt.beta),
            })
            .collect(),
    }
}

impl JsonQuadReport {
    pub fn from_report(r: &QuadReport) -> JsonQuadReport {
        JsonQuadReport {
            schema: SCHEMA_VERSION,
            n_qubits: 4,
            structural: r.label.to_string(),
            family: r.family.to_string(),
            subcase: r.subcase.map(|s| s.to_string()),
            confidence: r.confidence,
            single_ranks: r.single_ranks,
            pair_ranks: r.pair_ranks,
            pencil: r.pencil.as_ref().map(json_pencil),
        }
    }
}

impl JsonTriReport {
    pub fn from_report(r: &TriReport, hyperdet: f64) -> JsonTriReport {
        JsonTriReport {
            schema: SCHEMA_VERSION,
            n_qubits: 3,
            class: r.class.to_string(),
            ranks: r.ranks,
            w_ranks: r.w_ranks,
            disc_degenerate: r.disc_degenerate,
            confidence: r.confidence,
            hyperdeterminant: hyperdet,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::classify4;
    use crate::state::StateVector;
    use crate::{Tolerances, C64};

    #[test]
    fn json_round_trip_preserves_label_fields() {
        let one = C64::new(1.0, 0.0);
        let s = StateVector::from_terms(4, &[(0, one), (15, one)])
            .unwrap()
            .normalize();
        let report = classify4(&s, &Tolerances::default()).unwrap();
        let json = JsonQuadReport::from_report(&report);
        let text = serde_json::to_string(&json).unwrap();
        let back: JsonQuadReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.schema, SCHEMA_VERSION);
        assert_eq!(back.structural, report.label.to_string());
        assert_eq!(back.family, report.family.to_string());
        assert_eq!(back.single_ranks, report.single_ranks);
    }
}
