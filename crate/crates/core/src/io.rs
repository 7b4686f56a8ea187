//! JSON and text formats for ideals, complexes, graphs and certificates.
//!
//! Vertices and variables are 1-based in every external format.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complexes::{sr_ideal, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graphs::{edge_ideal, Graph};
use crate::monomials::{Exponent, MonomialIdeal};
use crate::regularity::{RegularityCertificate, Witness};

/// A generator given either as an exponent vector or as text like `x1^2*x3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Exponents(Vec<u32>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TaggedInput {
    Ideal {
        n: usize,
        generators: Vec<GeneratorSpec>,
    },
    Complex {
        n: usize,
        facets: Vec<Vec<usize>>,
    },
    Graph {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Any accepted input document; an untagged object is read as an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    Tagged(TaggedInput),
    Ideal {
        n: usize,
        generators: Vec<GeneratorSpec>,
    },
}

/// A decoded input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Ideal(MonomialIdeal),
    Complex(SimplicialComplex),
    Graph(Graph),
}

impl Object {
    /// The ideal the object stands for: itself, `I_Δ`, or `I(G)`.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        match self {
            Object::Ideal(i) => Ok(i.clone()),
            Object::Complex(d) => sr_ideal(d),
            Object::Graph(g) => edge_ideal(g),
        }
    }

    /// The complex the object stands for: itself, `Δ(I)`, or the independence complex.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        match self {
            Object::Ideal(i) => crate::complexes::sr_complex(i),
            Object::Complex(d) => Ok(d.clone()),
            Object::Graph(g) => Ok(crate::graphs::independence_complex(g)),
        }
    }
}

/// Parses `1`, `x3`, `x1^2*x3` or `x1^2 x3` into an exponent vector of length `n`.
pub fn parse_monomial(n: usize, text: &str) -> Result<Exponent> {
    let mut coords = vec![0u32; n];
    let text = text.trim();
    if text == "1" {
        return Ok(Exponent::new(coords));
    }
    for factor in text
        .split(|c: char| c == '*' || c.is_whitespace())
        .filter(|f| !f.is_empty())
    {
        let bad = || Error::Parse(format!("bad factor `{factor}` in `{text}`"));
        let body = factor.strip_prefix('x').ok_or_else(bad)?;
        let (var, exp) = match body.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let var: usize = var.parse().map_err(|_| bad())?;
        if var == 0 || var > n {
            return Err(Error::VertexOutOfRange { vertex: var, n });
        }
        coords[var - 1] += exp;
    }
    Ok(Exponent::new(coords))
}

fn ideal_from_specs(n: usize, generators: &[GeneratorSpec]) -> Result<MonomialIdeal> {
    let gens = generators
        .iter()
        .map(|g| match g {
            GeneratorSpec::Exponents(v) => {
                if v.len() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                Ok(Exponent::new(v.clone()))
            }
            GeneratorSpec::Text(t) => parse_monomial(n, t),
        })
        .collect::<Result<Vec<_>>>()?;
    crate::monomials::minimalize(n, gens)
}

impl Input {
    pub fn decode(&self) -> Result<Object> {
        match self {
            Input::Ideal { n, generators }
            | Input::Tagged(TaggedInput::Ideal { n, generators }) => {
                Ok(Object::Ideal(ideal_from_specs(*n, generators)?))
            }
            Input::Tagged(TaggedInput::Complex { n, facets }) => {
                Ok(Object::Complex(SimplicialComplex::from_labels(*n, facets)?))
            }
            Input::Tagged(TaggedInput::Graph { n, edges }) => {
                Ok(Object::Graph(Graph::from_labels(*n, edges)?))
            }
        }
    }
}

/// Reads a JSON document, or a plain-text complex with one facet of 1-based
/// labels per line (blank lines and `#` comments ignored).
pub fn parse_object(text: &str) -> Result<Object> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let input: Input = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        return input.decode();
    }
    let mut facets = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let facet = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    let n = facets.iter().flatten().copied().max().unwrap_or(0);
    Ok(Object::Complex(SimplicialComplex::from_labels(n, &facets)?))
}

pub fn ideal_to_json(i: &MonomialIdeal) -> Value {
    json!({
        "type": "ideal",
        "n": i.n(),
        "generators": i.gens().iter().map(|g| g.coords().to_vec()).collect::<Vec<_>>(),
        "text": i.to_string(),
    })
}

pub fn complex_to_json(d: &SimplicialComplex) -> Value {
    json!({
        "type": "complex",
        "n": d.n(),
        "facets": d.facet_labels(),
        "kind": format!("{:?}", d.kind()).to_lowercase(),
    })
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "type": "graph",
        "n": g.n(),
        "edges": g.edge_labels(),
    })
}

pub fn witness_to_json(w: &Witness) -> Value {
    json!({ "a": w.a.coords(), "i": w.i, "F": w.face.to_labels() })
}

pub fn certificate_to_json(c: &RegularityCertificate) -> Value {
    json!({
        "reg_ideal": c.reg_ideal,
        "reg_module": c.reg_module,
        "field": c.field,
        "gamma_box": c.gamma_box,
        "witnesses": c.witnesses.iter().map(witness_to_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_text() {
        assert_eq!(parse_monomial(3, "x1^2*x3").unwrap().coords(), &[2, 0, 1]);
        assert_eq!(parse_monomial(3, "x2 x2").unwrap().coords(), &[0, 2, 0]);
        assert_eq!(parse_monomial(2, "1").unwrap().coords(), &[0, 0]);
        assert!(parse_monomial(2, "x3").is_err());
        assert!(parse_monomial(2, "y1").is_err());
    }

    #[test]
    fn documents() {
        let i = parse_object(r#"{"n":3,"generators":[[1,1,0],"x2*x3"]}"#)
            .unwrap()
            .to_ideal()
            .unwrap();
        assert_eq!(i.to_string(), "(x1*x2, x2*x3)");
        let tagged = parse_object(r#"{"type":"ideal","n":2,"generators":["x1^2"]}"#).unwrap();
        assert!(matches!(tagged, Object::Ideal(_)));
        let d =
            parse_object(r#"{"type":"complex","n":4,"facets":[[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
        assert_eq!(d.to_ideal().unwrap().gens().len(), 2);
        let g = parse_object(r#"{"type":"graph","n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(g.to_ideal().unwrap().to_string(), "(x1*x2, x2*x3)");
        assert_eq!(g.to_complex().unwrap().facets().len(), 2);
        let text = parse_object("# square\n1 2\n2 3\n3 4\n4 1\n").unwrap();
        assert_eq!(text, d);
        assert!(parse_object("{\"n\":2}").is_err());
    }

    #[test]
    fn round_trips() {
        let d = parse_object(r#"{"type":"complex","n":3,"facets":[[1,2],[3]]}"#).unwrap();
        let Object::Complex(d) = d else { panic!() };
        let back = parse_object(&complex_to_json(&d).to_string()).unwrap();
        assert_eq!(back, Object::Complex(d));
        let i = MonomialIdeal::from_coords(2, [vec![2, 1]]).unwrap();
        let back = parse_object(&ideal_to_json(&i).to_string()).unwrap();
        assert_eq!(back, Object::Ideal(i));
    }
}
