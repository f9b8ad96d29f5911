//! The JSON algebra file format.
//!
//! ```json
//! {
//!   "name": "cp2",
//!   "dimension": 4,
//!   "generators": [{"name": "e", "degree": 2}, {"name": "w", "degree": 4}],
//!   "products": [{"left": "e", "right": "e", "result": [{"coeff": 1, "name": "w"}]}],
//!   "orientation": {"top_class": "w"}
//! }
//! ```
//!
//! Coefficients are integers or `"num/den"` strings. Products that are not
//! listed are zero, and the unit is implicit. The orientation functional
//! takes the value 1 on `top_class`.

use std::collections::{HashMap, HashSet};

use cechss::{BasisElement, PoincareAlgebra, PoincareError, Rational};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dimension: usize,
    pub generators: Vec<Generator>,
    pub products: Vec<Product>,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Coefficient,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Integer(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Orientation {
    pub top_class: String,
}

#[derive(Debug, Error)]
pub enum AlgebraFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Content(String),
    #[error(transparent)]
    Algebra(#[from] PoincareError),
}

impl Coefficient {
    fn to_rational(&self) -> Result<Rational, AlgebraFileError> {
        match self {
            Coefficient::Integer(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            Coefficient::Text(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| AlgebraFileError::Content(format!("coefficient `{s}` is not an integer or `num/den`"))),
        }
    }

    fn from_rational(c: &Rational) -> Coefficient {
        if c.is_integer() {
            if let Ok(v) = i64::try_from(c.to_integer()) {
                return Coefficient::Integer(v);
            }
        }
        Coefficient::Text(c.to_string())
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, AlgebraFileError> {
        serde_json::from_str(text).map_err(|e| AlgebraFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("algebra files always serialize");
        s.push('\n');
        s
    }

    /// Builds the algebra; Poincaré duality itself is checked by
    /// [`PoincareAlgebra::validate`].
    pub fn to_algebra(&self) -> Result<PoincareAlgebra, AlgebraFileError> {
        let content = |m: String| AlgebraFileError::Content(m);
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if index.insert(g.name.as_str(), i + 1).is_some() {
                return Err(content(format!("generator `{}` is listed twice", g.name)));
            }
        }
        let lookup = |name: &str, role: &str| -> Result<usize, AlgebraFileError> {
            if name == "1" {
                return Err(content(format!("{role} `1`: products with the unit are implicit")));
            }
            index
                .get(name)
                .copied()
                .ok_or_else(|| content(format!("{role} `{name}` is not a generator")))
        };
        let mut seen = HashSet::new();
        let mut products = Vec::with_capacity(self.products.len());
        for p in &self.products {
            let i = lookup(&p.left, "left factor")?;
            let j = lookup(&p.right, "right factor")?;
            if !seen.insert((i, j)) {
                return Err(content(format!("product {}·{} is listed twice", p.left, p.right)));
            }
            let mut comb = Vec::with_capacity(p.result.len());
            for t in &p.result {
                comb.push((lookup(&t.name, "product term")?, t.coeff.to_rational()?));
            }
            products.push((i, j, comb));
        }
        let top = lookup(&self.orientation.top_class, "top class")?;
        let generators = self
            .generators
            .iter()
            .map(|g| BasisElement {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect();
        Ok(PoincareAlgebra::new(
            self.name.clone(),
            self.dimension,
            generators,
            products,
            top,
            Rational::one(),
        )?)
    }

    pub fn from_algebra(alg: &PoincareAlgebra) -> AlgebraFile {
        let names: Vec<&str> = alg.basis().iter().map(|b| b.name.as_str()).collect();
        AlgebraFile {
            name: alg.name().to_string(),
            dimension: alg.dim(),
            generators: alg.basis()[1..]
                .iter()
                .map(|b| Generator {
                    name: b.name.clone(),
                    degree: b.degree,
                })
                .collect(),
            products: alg
                .nonzero_products()
                .into_iter()
                .map(|(i, j, comb)| Product {
                    left: names[i].to_string(),
                    right: names[j].to_string(),
                    result: comb
                        .iter()
                        .map(|(k, c)| Term {
                            coeff: Coefficient::from_rational(c),
                            name: names[*k].to_string(),
                        })
                        .collect(),
                })
                .collect(),
            orientation: Orientation {
                top_class: names[alg.top()].to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP2: &str = r#"{
      "name": "cp2",
      "dimension": 4,
      "generators": [{"name": "e", "degree": 2}, {"name": "w", "degree": 4}],
      "products": [{"left": "e", "right": "e", "result": [{"coeff": "1/1", "name": "w"}]}],
      "orientation": {"top_class": "w"}
    }"#;

    #[test]
    fn reads_a_small_file() {
        let alg = AlgebraFile::parse(CP2).unwrap().to_algebra().unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.len(), 3);
        assert_eq!(alg.euler_characteristic(), 3);
    }

    #[test]
    fn unknown_keys_are_rejected_with_a_position() {
        let text = CP2.replace("\"dimension\"", "\"dim\"");
        match AlgebraFile::parse(&text) {
            Err(AlgebraFileError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_orientation_is_an_error() {
        let text = CP2.replace(",\n      \"orientation\": {\"top_class\": \"w\"}", "");
        let err = AlgebraFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("orientation"), "{err}");
    }

    #[test]
    fn content_errors_name_the_culprit() {
        let text = CP2.replace("\"name\": \"w\"}]}", "\"name\": \"v\"}]}");
        let err = AlgebraFile::parse(&text).unwrap().to_algebra().unwrap_err();
        assert!(err.to_string().contains("`v`"), "{err}");
        let text = CP2.replace("\"1/1\"", "\"1/0\"");
        assert!(AlgebraFile::parse(&text).unwrap().to_algebra().is_err());
    }

    #[test]
    fn fractions_render_as_text() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(Coefficient::from_rational(&half), Coefficient::Text("1/2".into()));
        assert_eq!(Coefficient::from_rational(&Rational::one()), Coefficient::Integer(1));
    }
}
