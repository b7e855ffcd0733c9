use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};
use tricat_core::butterflies::Butterfly;
use tricat_core::complexes::{ChainMap, Complex2, Complex3};
use tricat_core::doc::Document;
use tricat_core::fractions::{Diamond, Fraction, Roof};
use tricat_core::{Error, FGAbelianGroup, GroupHom, IntegerMatrix, Invariants};

/// A failed command, by exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_domain_violation() {
            Failure::Domain(msg)
        } else if matches!(e, Error::Internal(_)) {
            Failure::Internal(msg)
        } else {
            Failure::Input(msg)
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

pub fn read_doc(path: &Path) -> Outcome<Document> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    Document::from_json(&text).map_err(|e| {
        let f = Failure::from(e);
        match f {
            Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    })
}

fn wrong_kind(path: &Path, want: &str, got: &Document) -> Failure {
    Failure::Input(format!("{}: expected a {want} document, found {}", path.display(), got.kind()))
}

macro_rules! reader {
    ($name:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $name(path: &Path) -> Outcome<$ty> {
            match read_doc(path)? {
                Document::$variant(x) => Ok(x),
                other => Err(wrong_kind(path, $kind, &other)),
            }
        }
    };
}

reader!(read_group, Group, FGAbelianGroup, "group");
reader!(read_hom, Hom, GroupHom, "hom");
reader!(read_complex2, Complex2, Complex2, "complex2");
reader!(read_complex3, Complex3, Complex3, "complex3");
reader!(read_chain_map, ChainMap, ChainMap, "chainmap");
reader!(read_fraction, Fraction, Fraction, "fraction");
reader!(read_roof, Roof, Roof, "roof");
reader!(read_diamond, Diamond, Diamond, "diamond");
reader!(read_butterfly, Butterfly, Butterfly, "butterfly");

/// Payload of a document, for embedding in a report.
pub fn payload(d: Document) -> Value {
    d.to_value()["payload"].take()
}

pub fn number(x: &num_bigint::BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are JSON numbers")
}

pub fn matrix(m: &IntegerMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(number).collect())).collect())
}

pub fn invariants(inv: &Invariants) -> Value {
    json!({
        "torsion": inv.torsion.iter().map(number).collect::<Vec<_>>(),
        "free_rank": inv.free_rank,
        "display": inv.to_string(),
    })
}

pub fn group_summary(g: &FGAbelianGroup) -> Value {
    json!({
        "invariants": invariants(&g.invariants()),
        "group": payload(Document::Group(g.clone())),
    })
}

pub fn report(command: &str, mut body: Value) -> Document {
    body["command"] = json!(command);
    Document::Report(body)
}
