use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{LaurentPoly, Shape};

#[derive(Serialize, Deserialize)]
struct PolyJson {
    m: usize,
    n: usize,
    denom: i64,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    e: Vec<i64>,
    d: Vec<i64>,
}

impl LaurentPoly {
    pub fn to_json_value(&self) -> serde_json::Value {
        let shape = self.shape();
        let doc = PolyJson {
            m: shape.m,
            n: shape.n,
            denom: shape.denom,
            terms: self
                .terms()
                .rev()
                .map(|(e, c)| TermJson {
                    coef: c.to_string(),
                    e: e[..shape.m].to_vec(),
                    d: e[shape.m..].to_vec(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("polynomial serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let doc: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let shape = Shape::new(doc.m, doc.n, doc.denom)?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| {
                if t.e.len() != shape.m || t.d.len() != shape.n {
                    return Err(Error::Parse("term has the wrong number of exponents".into()));
                }
                let c: BigInt =
                    t.coef.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coef)))?;
                Ok(([t.e, t.d].concat(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(shape, terms)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        LaurentPoly::from_json_value(&v)
    }
}
