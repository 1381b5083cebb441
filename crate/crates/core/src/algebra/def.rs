//! TOML descriptions of algebras.
//!
//! ```toml
//! name = "hyperbolic"
//! dim = 2
//! labels = ["1", "j"]
//! unity = [1, 0]
//! table = [
//!   [[1, 0], [0, 1]],
//!   [[0, 1], [1, 0]],
//! ]
//! ```
//!
//! Instead of `table`, a one-generator algebra can give
//! `relations = { cyclic = [a0, ..., a(dim-1)] }`, meaning
//! `g^dim = sum_k a_k g^k` over the basis `1, g, ..., g^(dim-1)`.
//! Numbers may be integers, floats or strings such as `"1/3"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{fixtures, Algebra, AlgebraError};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum DefError {
    #[error("malformed TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad number {0:?}")]
    BadLiteral(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A number as written in a definition file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Literal {
    /// Parses `"3"`, `"-2.5"`, `"1e-3"` or `"p/q"`.
    pub fn parse_str(s: &str) -> Result<Literal, DefError> {
        let t = s.trim();
        if let Ok(i) = t.parse::<i64>() {
            return Ok(Literal::Int(i));
        }
        if t.contains('/') {
            return Ok(Literal::Str(t.to_string()));
        }
        t.parse::<f64>().map(Literal::Float).map_err(|_| DefError::BadLiteral(s.to_string()))
    }

    pub fn to_scalar<T: Scalar>(&self) -> Result<T, DefError> {
        match self {
            Literal::Int(i) => Ok(T::from_int(*i)),
            Literal::Float(f) if f.is_finite() => Ok(T::from_f64_lossy(*f)),
            Literal::Float(f) => Err(DefError::BadLiteral(f.to_string())),
            Literal::Str(s) => {
                let bad = || DefError::BadLiteral(s.clone());
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: i64 = p.trim().parse().map_err(|_| bad())?;
                        let q: i64 = q.trim().parse().map_err(|_| bad())?;
                        if q == 0 {
                            return Err(bad());
                        }
                        Ok(T::from_ratio(p, q))
                    }
                    None => match Literal::parse_str(s)? {
                        Literal::Str(_) => Err(bad()),
                        lit => lit.to_scalar(),
                    },
                }
            }
        }
    }

    pub fn from_scalar<T: Scalar>(x: &T) -> Literal {
        if T::EXACT {
            let s = x.to_string();
            match s.parse::<i64>() {
                Ok(i) => Literal::Int(i),
                Err(_) => Literal::Str(s),
            }
        } else {
            Literal::Float(x.to_f64())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Relations {
    pub cyclic: Vec<Literal>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDef {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unity: Option<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Vec<Literal>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Relations>,
}

fn lits<T: Scalar>(v: &[Literal]) -> Result<Vec<T>, DefError> {
    v.iter().map(Literal::to_scalar).collect()
}

impl AlgebraDef {
    pub fn from_toml(src: &str) -> Result<Self, DefError> {
        Ok(toml::from_str(src)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("definitions always serialize")
    }

    pub fn build<T: Scalar>(&self) -> Result<Algebra<T>, DefError> {
        let n = self.dim;
        let alg = match (&self.table, &self.relations) {
            (Some(_), Some(_)) => return Err(DefError::Invalid("give either `table` or `relations`, not both".into())),
            (None, None) => return Err(DefError::Invalid("missing `table` or `relations`".into())),
            (Some(table), None) => {
                if table.len() != n {
                    return Err(DefError::Invalid(format!("table has {} rows but dim is {n}", table.len())));
                }
                let table = table
                    .iter()
                    .map(|row| row.iter().map(|e| lits(e)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let unity = match &self.unity {
                    Some(u) => lits(u)?,
                    None => return Err(DefError::Invalid("`unity` is required with `table`".into())),
                };
                Algebra::new(self.name.clone(), self.labels.clone(), table, unity)?
            }
            (None, Some(rel)) => {
                if rel.cyclic.len() != n {
                    return Err(DefError::Invalid(format!(
                        "cyclic relation needs {n} coefficients, found {}",
                        rel.cyclic.len()
                    )));
                }
                let alg = fixtures::cyclic(&self.name, &lits::<T>(&rel.cyclic)?, self.labels.clone())?;
                if let Some(u) = &self.unity {
                    let u = lits::<T>(u)?;
                    if u != alg.one().into_coords() {
                        return Err(AlgebraError::UnityViolation { basis: 0 }.into());
                    }
                }
                alg
            }
        };
        Ok(alg)
    }
}

impl<T: Scalar> Algebra<T> {
    pub fn to_def(&self) -> AlgebraDef {
        let table = self
            .table()
            .iter()
            .map(|row| row.iter().map(|e| e.iter().map(Literal::from_scalar).collect()).collect())
            .collect();
        AlgebraDef {
            name: self.name().to_string(),
            dim: self.dim(),
            labels: Some(self.labels().to_vec()),
            unity: Some(self.one().coords().iter().map(Literal::from_scalar).collect()),
            table: Some(table),
            relations: None,
        }
    }

    pub fn from_toml(src: &str) -> Result<Self, DefError> {
        AlgebraDef::from_toml(src)?.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn literals() {
        assert_eq!(Literal::Str("1/3".into()).to_scalar::<Rational64>().unwrap(), Rational64::new(1, 3));
        assert_eq!(Literal::Int(-2).to_scalar::<f64>().unwrap(), -2.0);
        assert_eq!(Literal::Str("0.25".into()).to_scalar::<f64>().unwrap(), 0.25);
        assert!(Literal::Str("1/0".into()).to_scalar::<f64>().is_err());
        assert!(Literal::Str("abc".into()).to_scalar::<f64>().is_err());
    }

    #[test]
    fn table_file() {
        let src = r#"
            name = "hyperbolic"
            dim = 2
            labels = ["1", "j"]
            unity = [1, 0]
            table = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
        "#;
        let h = Algebra::<Rational64>::from_toml(src).unwrap();
        assert_eq!(h.basis_product(1, 1), vec![Rational64::from_int(1), Rational64::from_int(0)]);
    }

    #[test]
    fn relations_file() {
        let src = "name = \"wave\"\ndim = 2\nrelations = { cyclic = [\"9/4\", 0] }\n";
        let w = Algebra::<f64>::from_toml(src).unwrap();
        assert_eq!(w.basis_product(1, 1), vec![2.25, 0.0]);
    }

    #[test]
    fn round_trip() {
        let q = fixtures::quaternions::<Rational64>();
        let back = Algebra::<Rational64>::from_toml(&q.to_def().to_toml()).unwrap();
        assert_eq!(back.table(), q.table());
        let w = fixtures::wave(Rational64::new(1, 2)).unwrap();
        let back = Algebra::<Rational64>::from_toml(&w.to_def().to_toml()).unwrap();
        assert_eq!(back.table(), w.table());
    }

    #[test]
    fn non_associative_file() {
        let src = r#"
            name = "broken"
            dim = 3
            unity = [1, 0, 0]
            table = [
              [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
              [[0, 1, 0], [0, 0, 1], [0, 1, 0]],
              [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
            ]
        "#;
        let err = Algebra::<f64>::from_toml(src).unwrap_err();
        assert!(matches!(err, DefError::Algebra(AlgebraError::AssociativityViolation { .. })));
    }
}
