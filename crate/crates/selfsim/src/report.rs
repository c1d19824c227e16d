//! Rendering verdicts and portraits.

use std::fmt::Write as _;

use serde::Serialize;
use selfsim_core::{GroupDef, TruncatedAut, Verdict};

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub property: String,
    pub status: String,
    pub depth_checked: usize,
    pub certificate: CertificateJson,
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub kind: String,
    pub witnesses: Vec<WitnessJson>,
    pub proper_image: Option<ProperImageJson>,
    pub description: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub word: String,
    pub vertex: String,
    pub target: String,
}

#[derive(Debug, Serialize)]
pub struct ProperImageJson {
    pub depth: usize,
    pub vertex: String,
    pub level: usize,
    pub excluded_generator: Option<String>,
    pub image_order: u128,
    pub quotient_order: u128,
}

impl VerdictJson {
    pub fn new(def: &GroupDef, v: &Verdict) -> Self {
        let c = &v.certificate;
        VerdictJson {
            property: v.property.as_str().to_string(),
            status: v.status.as_str().to_string(),
            depth_checked: v.depth_checked,
            certificate: CertificateJson {
                kind: c.kind.as_str().to_string(),
                witnesses: c
                    .witnesses
                    .iter()
                    .map(|w| WitnessJson {
                        word: def.display_word(&w.word),
                        vertex: w.vertex.to_string(),
                        target: def.display_word(&w.target),
                    })
                    .collect(),
                proper_image: c.proper_image.as_ref().map(|p| ProperImageJson {
                    depth: p.depth,
                    vertex: p.vertex.to_string(),
                    level: p.level,
                    excluded_generator: p.excluded_generator.map(|g| def.names()[g].clone()),
                    image_order: p.image_order,
                    quotient_order: p.quotient_order,
                }),
                description: c.description.clone(),
            },
        }
    }
}

pub fn verdict_json(def: &GroupDef, v: &Verdict) -> String {
    serde_json::to_string_pretty(&VerdictJson::new(def, v)).expect("verdict serializes")
}

pub fn verdict_text(def: &GroupDef, v: &Verdict) -> String {
    let j = VerdictJson::new(def, v);
    let c = &j.certificate;
    let mut out = String::new();
    let _ = writeln!(out, "property: {}", j.property);
    let _ = writeln!(out, "status: {}", j.status);
    let _ = writeln!(out, "depth checked: {}", j.depth_checked);
    let _ = writeln!(out, "certificate: {}", c.kind);
    for w in &c.witnesses {
        let _ = writeln!(out, "  witness: {} at {} has section {}", w.word, w.vertex, w.target);
    }
    if let Some(p) = &c.proper_image {
        let excluded = p.excluded_generator.as_deref().unwrap_or("-");
        let _ = writeln!(
            out,
            "  proper image at depth {}: vertex {}, level {}, excluded generator {}, order {} of {}",
            p.depth, p.vertex, p.level, excluded, p.image_order, p.quotient_order
        );
    }
    if let Some(d) = &c.description {
        let _ = writeln!(out, "  {}", d);
    }
    out
}

/// One `vertex: label` line per vertex of levels `0..depth`, BFS order.
pub fn portrait(f: &TruncatedAut) -> String {
    let mut out = String::new();
    for (v, label) in f.portrait() {
        let _ = writeln!(out, "{}: {}", v, label);
    }
    out
}
