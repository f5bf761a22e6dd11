//! JSON documents for complexes, chain maps and groups.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::complex::{ChainMap, GradedComplex, Homotopy};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// An integer in a JSON document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                if v.fract() == 0.0 && v.abs() < 9.0e15 {
                    Ok(JsonInt((v as i64).into()))
                } else {
                    Err(E::custom(format!("{v} is not an integer")))
                }
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

pub mod bigint_vec {
    use super::JsonInt;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| JsonInt(x.clone()))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<JsonInt>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

/// Row-major matrix; `[]` stands for any matrix with no rows.
pub type MatrixDoc = Vec<Vec<JsonInt>>;

pub fn matrix_doc(m: &IntMatrix) -> MatrixDoc {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonInt).collect())
        .collect()
}

/// Reads a matrix of known shape. `[]` is accepted whenever `rows` or `cols` is zero.
pub fn matrix_from_doc(doc: &MatrixDoc, rows: usize, cols: usize, what: &str) -> Result<IntMatrix> {
    if doc.is_empty() && (rows == 0 || cols == 0) {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        let got_cols = doc.first().map_or(0, Vec::len);
        return Err(Error::DimensionMismatch(format!(
            "{what}: expected {rows}x{cols} matrix, found {}x{got_cols}",
            doc.len()
        )));
    }
    let data = doc.iter().flatten().map(|x| x.0.clone()).collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// Matrix whose shape is read from the document itself.
pub fn matrix_from_doc_any(doc: &MatrixDoc, what: &str) -> Result<IntMatrix> {
    let rows = doc.len();
    let cols = doc.first().map_or(0, Vec::len);
    matrix_from_doc(doc, rows, cols, what)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<MatrixDoc>,
}

impl ComplexDoc {
    pub fn from_complex(x: &GradedComplex) -> Self {
        ComplexDoc {
            min_degree: x.min_degree(),
            ranks: x.ranks().to_vec(),
            differentials: x.differentials().iter().map(matrix_doc).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<GradedComplex> {
        let expected = self.ranks.len().saturating_sub(1);
        if self.differentials.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} degrees",
                self.differentials.len(),
                self.ranks.len()
            )));
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let what = format!("differential from degree {}", self.min_degree + i as i64 + 1);
                matrix_from_doc(d, self.ranks[i], self.ranks[i + 1], &what)
            })
            .collect::<Result<Vec<_>>>()?;
        GradedComplex::new(self.min_degree, self.ranks.clone(), diffs)
    }
}

/// `components[i]` is `f` in degree `min_degree + i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub min_degree: i64,
    pub components: Vec<MatrixDoc>,
}

impl ChainMapDoc {
    pub fn from_map(f: &ChainMap) -> Self {
        let s = f.source();
        let t = f.target();
        let lo = s.min_degree().min(t.min_degree());
        let hi = s.max_degree().max(t.max_degree());
        ChainMapDoc {
            source: ComplexDoc::from_complex(s),
            target: ComplexDoc::from_complex(t),
            min_degree: lo,
            components: (lo..=hi).map(|n| matrix_doc(&f.component(n))).collect(),
        }
    }

    pub fn to_map(&self) -> Result<ChainMap> {
        let source = self.source.to_complex()?;
        let target = self.target.to_complex()?;
        let mut comps = BTreeMap::new();
        for (i, doc) in self.components.iter().enumerate() {
            let n = self.min_degree + i as i64;
            let m = matrix_from_doc(
                doc,
                target.rank(n),
                source.rank(n),
                &format!("component in degree {n}"),
            )?;
            comps.insert(n, m);
        }
        ChainMap::new(source, target, comps)
    }
}

/// `components` maps a degree `n` to `h_n: S_n -> T_{n+1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyDoc {
    pub components: BTreeMap<i64, MatrixDoc>,
}

impl HomotopyDoc {
    pub fn from_homotopy(h: &Homotopy) -> Self {
        HomotopyDoc {
            components: h.components.iter().map(|(n, m)| (*n, matrix_doc(m))).collect(),
        }
    }

    pub fn to_homotopy(&self) -> Result<Homotopy> {
        let components = self
            .components
            .iter()
            .map(|(n, m)| Ok((*n, matrix_from_doc_any(m, &format!("homotopy in degree {n}"))?)))
            .collect::<Result<_>>()?;
        Ok(Homotopy { components })
    }
}

/// Parses `text` into `T`, reporting failures with a byte offset and the
/// path of the offending field.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        located(text, &path, e.into_inner())
    })?;
    de.end().map_err(|e| located(text, ".", e))?;
    Ok(value)
}

fn located(text: &str, path: &str, e: serde_json::Error) -> Error {
    let offset = byte_offset(text, e.line(), e.column());
    Error::Parse(format!("at byte {offset}, field `{path}`: {e}"))
}

/// Converts serde_json's 1-based line and column into a byte offset.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub fn parse_complex(text: &str) -> Result<GradedComplex> {
    parse_json::<ComplexDoc>(text)?.to_complex()
}

pub fn parse_chain_map(text: &str) -> Result<ChainMap> {
    parse_json::<ChainMapDoc>(text)?.to_map()
}

pub fn complex_to_value(x: &GradedComplex) -> Value {
    serde_json::to_value(ComplexDoc::from_complex(x)).expect("complex documents serialize")
}

pub fn chain_map_to_value(f: &ChainMap) -> Value {
    serde_json::to_value(ChainMapDoc::from_map(f)).expect("chain map documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zcomplex::complex::moore_ghost;

    #[test]
    fn moore_round_trip() {
        let text = r#"{"min_degree": 0, "ranks": [1, 1], "differentials": [[[2]]]}"#;
        let x = parse_complex(text).unwrap();
        assert_eq!(x, GradedComplex::moore(2));
        let back: ComplexDoc = serde_json::from_value(complex_to_value(&x)).unwrap();
        assert_eq!(back.to_complex().unwrap(), x);
    }

    #[test]
    fn empty_shapes() {
        let text = r#"{"min_degree": -1, "ranks": [0, 2, 0], "differentials": [[], [[], []]]}"#;
        let x = parse_complex(text).unwrap();
        assert_eq!(x.rank(0), 2);
        let zero = parse_complex(r#"{"min_degree": 0, "ranks": [], "differentials": []}"#).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn big_entries_as_strings() {
        let text = r#"{"min_degree": 0, "ranks": [1, 1], "differentials": [[["123456789012345678901234567890"]]]}"#;
        let x = parse_complex(text).unwrap();
        let v = complex_to_value(&x);
        assert_eq!(v["differentials"][0][0][0], Value::from("123456789012345678901234567890"));
    }

    #[test]
    fn parse_errors_locate_the_field() {
        let text = "{\"min_degree\": 0,\n \"ranks\": [1, \"x\"], \"differentials\": []}";
        let Err(Error::Parse(msg)) = parse_complex(text) else {
            panic!()
        };
        assert!(msg.contains("ranks[1]"), "{msg}");
        let offset = text.find("\"x\"").unwrap();
        assert!(msg.contains(&format!("byte {}", offset + 3)) || msg.contains(&format!("byte {}", offset + 2)), "{msg}");
    }

    #[test]
    fn invariant_errors_name_degree() {
        let text = r#"{"min_degree": 0, "ranks": [1, 1, 1], "differentials": [[[1]], [[1]]]}"#;
        assert!(matches!(parse_complex(text), Err(Error::NotAComplex { degree: 2 })));
    }

    #[test]
    fn chain_map_round_trip() {
        let g = moore_ghost(2);
        let v = chain_map_to_value(&g);
        let back = parse_chain_map(&v.to_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn trailing_garbage_rejected() {
        assert!(parse_complex(r#"{"min_degree": 0, "ranks": [], "differentials": []} x"#).is_err());
    }
}
