use serde::{Deserialize, Serialize};

use super::{parse_rational, PolyError, Polynomial, VarSet};

/// Wire form `{"vars": [...], "terms": [{"c": "3/2", "e": [2, 1]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            vars: p.vars().names().to_vec(),
            // highest graded-lex term first
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolynomialJson> for Polynomial {
    type Error = PolyError;
    fn try_from(j: &PolynomialJson) -> Result<Self, PolyError> {
        let vars = VarSet::new(j.vars.iter().cloned())?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.e.len() != vars.len() {
                return Err(PolyError::ExponentLength {
                    expected: vars.len(),
                    found: t.e.len(),
                });
            }
            terms.push((t.e.clone(), parse_rational(&t.c)?));
        }
        Polynomial::from_terms(&vars, terms)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Polynomial, PolyError> {
        let j: PolynomialJson =
            serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        Polynomial::try_from(&j)
    }
}
