//! JSON serialization of pole records.

use crate::locate::PoleRecord;
use ddreal::{CDd, Cx, Dd};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct PoleDoc {
    z: [f64; 2],
    x: [f64; 2],
    c4: [f64; 2],
    order: u32,
    err: f64,
    #[serde(rename = "C")]
    c_param: [f64; 2],
}

fn pair(c: CDd) -> [f64; 2] {
    [c.re.to_f64(), c.im.to_f64()]
}

fn unpair(p: [f64; 2]) -> CDd {
    Cx::new(Dd::from_f64(p[0]), Dd::from_f64(p[1]))
}

pub fn pole_to_json(rec: &PoleRecord) -> String {
    let doc = PoleDoc {
        z: pair(rec.z),
        x: pair(rec.x),
        c4: pair(rec.c4),
        order: rec.order,
        err: rec.err,
        c_param: pair(rec.c_param),
    };
    serde_json::to_string_pretty(&doc).expect("plain struct serializes")
}

pub fn pole_from_json(text: &str) -> Result<PoleRecord, serde_json::Error> {
    let doc: PoleDoc = serde_json::from_str(text)?;
    Ok(PoleRecord {
        z: unpair(doc.z),
        x: unpair(doc.x),
        c4: unpair(doc.c4),
        order: doc.order,
        err: doc.err,
        c_param: unpair(doc.c_param),
    })
}
