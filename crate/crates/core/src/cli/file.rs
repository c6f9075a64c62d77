//! JSON input formats: algebras with a filtration, and codifferentials.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Matrix, Rational, Subspace, Vector};
use crate::liealg::{FilteredLieAlgebra, LieAlgebra, Terms};
use crate::normcond::Codifferential;

/// An integer written either as a JSON number or, when large, a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Small(i64),
    Big(String),
}

impl IntLit {
    fn of(n: &BigInt) -> IntLit {
        match n.to_i64() {
            Some(x) => IntLit::Small(x),
            None => IntLit::Big(n.to_string()),
        }
    }

    fn value(&self, field: &str) -> Result<BigInt> {
        match self {
            IntLit::Small(x) => Ok(BigInt::from(*x)),
            IntLit::Big(s) => s.trim().parse().map_err(|_| Error::Parse {
                field: field.to_string(),
                message: format!("'{s}' is not an integer"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    /// Filtration index; for a graded algebra this is the degree.
    #[serde(alias = "degree")]
    pub index: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub k: usize,
    pub num: IntLit,
    pub den: IntLit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

/// A filtered Lie algebra in an adapted basis, with optional subspaces of
/// `L(Lambda^2(g/p), g)` given as coordinate vectors of `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    pub brackets: Vec<BracketEntry>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<Vec<String>>>,
    #[serde(rename = "Ntilde", default, skip_serializing_if = "Option::is_none")]
    pub ntilde: Option<Vec<Vec<String>>>,
}

/// A parsed file: the algebra plus the optional designated subspaces.
#[derive(Clone, Debug)]
pub struct ParsedAlgebra {
    pub name: String,
    pub alg: FilteredLieAlgebra,
    pub n: Option<Vec<Vector>>,
    pub ntilde: Option<Vec<Vector>>,
}

fn parse_err(field: String, message: impl Into<String>) -> Error {
    Error::Parse {
        field,
        message: message.into(),
    }
}

fn parse_vectors(field: &str, rows: &[Vec<String>]) -> Result<Vec<Vector>> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| {
                    parse_rational(s).map_err(|e| match e {
                        Error::Parse { message, .. } => parse_err(format!("{field}[{r}][{c}]"), message),
                        other => other,
                    })
                })
                .collect()
        })
        .collect()
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text).map_err(|e| parse_err("json".into(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<AlgebraFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        AlgebraFile::from_json(&text)
    }

    /// Serializes an algebra; each nonzero bracket is written once with `i < j`.
    pub fn from_algebra(name: &str, f: &FilteredLieAlgebra) -> AlgebraFile {
        let basis = (0..f.dim())
            .map(|i| BasisEntry {
                label: f.alg.label(i).to_string(),
                index: f.index_of(i),
            })
            .collect();
        let brackets = f
            .alg
            .nonzero_brackets()
            .map(|(i, j, t)| BracketEntry {
                i,
                j,
                terms: t
                    .iter()
                    .map(|(k, c)| TermEntry {
                        k: *k,
                        num: IntLit::of(c.numer()),
                        den: IntLit::of(c.denom()),
                    })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: name.to_string(),
            basis,
            brackets,
            n: None,
            ntilde: None,
        }
    }

    pub fn with_subspaces(mut self, n: Option<&Subspace>, ntilde: Option<&Subspace>) -> AlgebraFile {
        let rows = |s: &Subspace| {
            s.basis()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect()
        };
        self.n = n.map(rows);
        self.ntilde = ntilde.map(rows);
        self
    }

    /// Builds the algebra without checking the Jacobi identity.
    pub fn parse_unchecked(&self) -> Result<ParsedAlgebra> {
        let dim = self.basis.len();
        let mut brackets: Vec<(usize, usize, Terms)> = Vec::new();
        for (b, entry) in self.brackets.iter().enumerate() {
            if entry.i >= dim {
                return Err(parse_err(format!("brackets[{b}].i"), format!("index {} out of range", entry.i)));
            }
            if entry.j >= dim {
                return Err(parse_err(format!("brackets[{b}].j"), format!("index {} out of range", entry.j)));
            }
            if entry.i >= entry.j {
                return Err(parse_err(format!("brackets[{b}]"), "entries must have i < j"));
            }
            let mut terms = Terms::new();
            for (t, term) in entry.terms.iter().enumerate() {
                let field = |name: &str| format!("brackets[{b}].terms[{t}].{name}");
                if term.k >= dim {
                    return Err(parse_err(field("k"), format!("index {} out of range", term.k)));
                }
                let num = term.num.value(&field("num"))?;
                let den = term.den.value(&field("den"))?;
                if den.is_zero() {
                    return Err(parse_err(field("den"), "zero denominator"));
                }
                terms.push((term.k, Rational::new(num, den)));
            }
            brackets.push((entry.i, entry.j, terms));
        }
        let labels = self.basis.iter().map(|e| e.label.clone()).collect();
        let alg = LieAlgebra::new(labels, brackets).map_err(|e| parse_err("brackets".into(), e.to_string()))?;
        let index = self.basis.iter().map(|e| e.index).collect();
        let alg = FilteredLieAlgebra::new(alg, index)?;
        let n = self.n.as_deref().map(|r| parse_vectors("N", r)).transpose()?;
        let ntilde = self.ntilde.as_deref().map(|r| parse_vectors("Ntilde", r)).transpose()?;
        Ok(ParsedAlgebra {
            name: self.name.clone(),
            alg,
            n,
            ntilde,
        })
    }

    /// Builds the algebra and checks the Jacobi identity.
    pub fn parse(&self) -> Result<ParsedAlgebra> {
        let parsed = self.parse_unchecked()?;
        if let Some((i, j, k)) = parsed.alg.alg.jacobi_violation() {
            return Err(Error::Jacobi { i, j, k });
        }
        Ok(parsed)
    }
}

/// Matrices of `d2` and `d3` as rows of `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodiffFile {
    pub d2: Vec<Vec<String>>,
    pub d3: Vec<Vec<String>>,
}

impl CodiffFile {
    pub fn read(path: &Path) -> Result<CodiffFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| parse_err("json".into(), e.to_string()))
    }

    pub fn from_codifferential(c: &Codifferential) -> CodiffFile {
        let rows = |m: &Matrix| {
            (0..m.rows())
                .map(|r| m.row(r).iter().map(format_rational).collect())
                .collect()
        };
        CodiffFile {
            d2: rows(c.matrix(2)),
            d3: rows(c.matrix(3)),
        }
    }

    pub fn to_codifferential(&self) -> Result<Codifferential> {
        let matrix = |field: &str, rows: &[Vec<String>]| -> Result<Matrix> {
            let rows = parse_vectors(field, rows)?;
            if let Some(w) = rows.first().map(|r| r.len()) {
                if let Some(r) = rows.iter().position(|r| r.len() != w) {
                    return Err(parse_err(format!("{field}[{r}]"), "rows have different lengths"));
                }
            }
            Ok(Matrix::from_rows(rows))
        };
        Ok(Codifferential {
            d2: matrix("d2", &self.d2)?,
            d3: matrix("d3", &self.d3)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::heisenberg;

    #[test]
    fn heisenberg_round_trips() {
        let h = FilteredLieAlgebra::from_graded(&heisenberg(3).unwrap());
        let file = AlgebraFile::from_algebra("heisenberg", &h);
        let back = AlgebraFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.parse().unwrap().alg, h);
    }

    #[test]
    fn malformed_fraction_names_the_field() {
        let text = r#"{"name":"x","basis":[{"label":"a","index":-1},{"label":"b","index":-1}],
            "brackets":[],"N":[["1/0","2"]]}"#;
        let err = AlgebraFile::from_json(text).unwrap().parse().unwrap_err();
        match err {
            Error::Parse { field, .. } => assert_eq!(field, "N[0][0]"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"name":"x","basis":[{"label":"a","index":-1},{"label":"b","index":-1}],
            "brackets":[{"i":0,"j":1,"terms":[{"k":1,"num":1,"den":"zero"}]}]}"#;
        let err = AlgebraFile::from_json(text).unwrap().parse().unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "brackets[0].terms[0].den"), "{err:?}");
    }

    #[test]
    fn bracket_order_is_enforced() {
        let text = r#"{"name":"x","basis":[{"label":"a","degree":-1},{"label":"b","degree":-1}],
            "brackets":[{"i":1,"j":0,"terms":[]}]}"#;
        let err = AlgebraFile::from_json(text).unwrap().parse().unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "brackets[0]"));
    }

    #[test]
    fn jacobi_violation_is_reported_with_a_triple() {
        // sl2 with [h, e] = 3e instead of 2e
        let mut file = AlgebraFile::from_algebra(
            "sl2",
            &FilteredLieAlgebra::from_graded(
                &crate::models::parabolic_grading(crate::models::SimpleType::Sl(2), &[1]).unwrap(),
            ),
        );
        let entry = file.brackets.iter_mut().find(|b| b.terms[0].num == IntLit::Small(-2)).unwrap();
        entry.terms[0].num = IntLit::Small(-3);
        assert!(file.parse_unchecked().is_ok());
        assert!(matches!(file.parse().unwrap_err(), Error::Jacobi { .. }));
    }
}
