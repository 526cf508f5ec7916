use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{make_derivation, Derivation, DerivationError, Ring};
use crate::grading::QuotientRing;
use crate::polyring::{parse_polynomial, MonomialOrder, VarSet};

/// Monomial order on the wire: `"lex"`, `"grlex"` or `{"weighted": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderJson {
    Lex,
    Grlex,
    Weighted(Vec<i64>),
}

impl From<&MonomialOrder> for OrderJson {
    fn from(o: &MonomialOrder) -> Self {
        match o {
            MonomialOrder::Lex => OrderJson::Lex,
            MonomialOrder::GradedLex => OrderJson::Grlex,
            MonomialOrder::Weighted(w) => OrderJson::Weighted(w.clone()),
        }
    }
}

impl From<&OrderJson> for MonomialOrder {
    fn from(o: &OrderJson) -> Self {
        match o {
            OrderJson::Lex => MonomialOrder::Lex,
            OrderJson::Grlex => MonomialOrder::GradedLex,
            OrderJson::Weighted(w) => MonomialOrder::Weighted(w.clone()),
        }
    }
}

/// `{"vars": [...], "relation": "x + x^2*y + z^2 + t^3", "order": ...}`;
/// without a relation the ring is the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderJson>,
}

/// `{"ring": {...}, "images": {"x": "...", ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub ring: RingJson,
    pub images: BTreeMap<String, String>,
}

impl RingJson {
    pub fn to_ring(&self) -> Result<Ring, DerivationError> {
        let vars = VarSet::new(self.vars.iter().cloned())?;
        match &self.relation {
            None => Ok(Ring::Polynomial(vars)),
            Some(src) => {
                let rel = parse_polynomial(src, &vars)?;
                let order = self
                    .order
                    .as_ref()
                    .map(MonomialOrder::from)
                    .unwrap_or_default();
                Ok(Ring::Quotient(QuotientRing::new(rel, order)?))
            }
        }
    }
}

impl From<&Ring> for RingJson {
    fn from(r: &Ring) -> Self {
        match r {
            Ring::Polynomial(v) => RingJson {
                vars: v.names().to_vec(),
                relation: None,
                order: None,
            },
            Ring::Quotient(q) => RingJson {
                vars: q.vars().names().to_vec(),
                relation: Some(q.relation().to_string()),
                order: Some(q.order().into()),
            },
        }
    }
}

impl DerivationJson {
    pub fn to_derivation(&self) -> Result<Derivation, DerivationError> {
        let ring = self.ring.to_ring()?;
        let vars = ring.vars().clone();
        let images = self
            .images
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_polynomial(v, &vars)?)))
            .collect::<Result<BTreeMap<_, _>, DerivationError>>()?;
        make_derivation(ring, &images)
    }
}

impl Derivation {
    pub fn to_json(&self) -> DerivationJson {
        DerivationJson {
            ring: self.ring().into(),
            images: self
                .vars()
                .names()
                .iter()
                .zip(self.images())
                .map(|(n, p)| (n.clone(), p.to_string()))
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Derivation, DerivationError> {
        let j: DerivationJson =
            serde_json::from_str(s).map_err(|e| DerivationError::Json(e.to_string()))?;
        j.to_derivation()
    }
}
