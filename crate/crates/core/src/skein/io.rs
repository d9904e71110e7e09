//! JSON diagram files.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Coupon, Dart, Label, SkeinDiagram, SkeinError, Slot};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CouponFile {
    id: usize,
    label: Label,
    #[serde(default)]
    offset: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    legs: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    coupons: Vec<CouponFile>,
    #[serde(default)]
    edges: Vec<[[usize; 2]; 2]>,
    #[serde(default)]
    free_loops: u32,
    #[serde(default)]
    boundary: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<usize>,
}

/// Parses a diagram from its JSON text.
pub fn parse(text: &str) -> Result<SkeinDiagram, SkeinError> {
    let f: DiagramFile = serde_json::from_str(text).map_err(|e| SkeinError::Parse(e.to_string()))?;
    let mut index = HashMap::new();
    let mut coupons = Vec::with_capacity(f.coupons.len());
    for (i, c) in f.coupons.iter().enumerate() {
        if let Some(l) = c.legs {
            if l != 4 {
                return Err(SkeinError::Invalid(format!("coupon {} has {l} legs, expected 4", c.id)));
            }
        }
        if c.offset > 1 {
            return Err(SkeinError::Invalid(format!("coupon {} has offset {}, expected 0 or 1", c.id, c.offset)));
        }
        if index.insert(c.id, i).is_some() {
            return Err(SkeinError::Invalid(format!("duplicate coupon id {}", c.id)));
        }
        coupons.push(Coupon::new(c.label, c.offset));
    }
    let leg = |r: [usize; 2]| -> Result<Dart, SkeinError> {
        let c = *index.get(&r[0]).ok_or_else(|| SkeinError::Invalid(format!("unknown coupon id {}", r[0])))?;
        if r[1] >= 4 {
            return Err(SkeinError::Invalid(format!("leg index {} out of range", r[1])));
        }
        Ok((c, r[1] as u8))
    };
    let edges = f.edges.iter().map(|&[a, b]| Ok((leg(a)?, leg(b)?))).collect::<Result<Vec<_>, SkeinError>>()?;
    let boundary = f.boundary.iter().map(|&r| leg(r)).collect::<Result<Vec<_>, _>>()?;
    SkeinDiagram::new(coupons, &edges, f.free_loops, boundary, f.source)
}

/// Renders a diagram as JSON text; coupon ids are their positions.
pub fn serialize(d: &SkeinDiagram) -> String {
    let coupons = d
        .coupons
        .iter()
        .enumerate()
        .map(|(id, c)| CouponFile { id, label: c.label, offset: c.offset, legs: None })
        .collect();
    let mut edges = Vec::new();
    for (c, l) in d.link.iter().enumerate() {
        for (j, s) in l.iter().enumerate() {
            if let Slot::Leg(c2, j2) = *s {
                if (c, j) < (c2, j2 as usize) {
                    edges.push([[c, j], [c2, j2 as usize]]);
                }
            }
        }
    }
    let boundary = d.boundary.iter().map(|&(c, j)| [c, j as usize]).collect();
    let source = (d.source != d.boundary.len() / 2).then_some(d.source);
    let f = DiagramFile { coupons, edges, free_loops: d.free_loops, boundary, source };
    serde_json::to_string(&f).expect("serializable")
}
