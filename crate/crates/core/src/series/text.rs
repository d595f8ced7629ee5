//! Canonical text and JSON forms.
//!
//! Text: terms in graded order, e.g. `1 - 3/2*z1*z2^2`.
//! JSON: `{"nvars":n,"degree":D,"terms":[{"exps":[..],"coeff":..}, ..]}`.

use serde_json::{json, Value};

use super::{MapTuple, Series};
use crate::coeff::Coeff;
use crate::error::{JetError, Result};

fn monomial_text(exps: &[u32], names: &[String]) -> String {
    exps.iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, name)| match k {
            1 => name.clone(),
            _ => format!("{name}^{k}"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text with caller-supplied variable names.
pub fn format_with_names<C: Coeff>(s: &Series<C>, names: &[String]) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in s.terms().enumerate() {
        let r = c.render();
        let mono = monomial_text(e.exps(), names);
        let body = if mono.is_empty() {
            if r.compound {
                format!("({})", r.body)
            } else {
                r.body
            }
        } else if r.body == "1" && !r.compound {
            mono
        } else if r.compound {
            format!("({})*{mono}", r.body)
        } else {
            format!("{}*{mono}", r.body)
        };
        match (i, r.negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

pub fn series_to_json<C: Coeff>(s: &Series<C>) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({"exps": e.exps(), "coeff": c.to_json()}))
        .collect();
    json!({"nvars": s.nvars(), "degree": s.degree(), "terms": terms})
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| JetError::Json(format!("missing field {key:?}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| JetError::Json(format!("{what} must be a non-negative integer")))
}

pub fn series_from_json<C: Coeff>(v: &Value) -> Result<Series<C>> {
    let nvars = as_u64(field(v, "nvars")?, "nvars")? as usize;
    let degree = as_u64(field(v, "degree")?, "degree")? as u32;
    if nvars == 0 {
        return Err(JetError::Json("nvars must be positive".into()));
    }
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| JetError::Json("terms must be an array".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let exps = field(t, "exps")?
            .as_array()
            .ok_or_else(|| JetError::Json("exps must be an array".into()))?
            .iter()
            .map(|x| as_u64(x, "exponent").map(|k| k as u32))
            .collect::<Result<Vec<u32>>>()?;
        if exps.iter().sum::<u32>() > degree {
            return Err(JetError::Json(format!(
                "term {exps:?} exceeds the truncation degree {degree}"
            )));
        }
        parsed.push((exps, C::from_json(field(t, "coeff")?)?));
    }
    Series::from_terms(nvars, degree, parsed)
}

impl<C: Coeff> Series<C> {
    pub fn to_json(&self) -> Value {
        series_to_json(self)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        series_from_json(v)
    }
}

impl<C: Coeff> MapTuple<C> {
    /// A JSON array of component series.
    pub fn to_json(&self) -> Value {
        Value::Array(self.components().iter().map(series_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| JetError::Json("a map must be an array of series".into()))?;
        MapTuple::new(items.iter().map(series_from_json).collect::<Result<_>>()?)
    }

    /// One `F<k> = ...` line per component, in the map file grammar.
    pub fn to_map_file(&self, names: &[String]) -> String {
        let mut out = format!("vars: {}\n", names.join(" "));
        for (k, s) in self.components().iter().enumerate() {
            out.push_str(&format!("F{} = {}\n", k + 1, format_with_names(s, names)));
        }
        out
    }

    /// Canonical text, one component per line.
    pub fn to_text(&self) -> String {
        self.components()
            .iter()
            .enumerate()
            .map(|(k, s)| format!("F{} = {}", k + 1, s))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat, Rational, TPoly};

    #[test]
    fn canonical_text() {
        let s = Series::from_terms(
            2,
            4,
            [(vec![0, 0], int(1)), (vec![1, 2], rat(-3, 2))],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 - 3/2*z1*z2^2");
        let t = Series::from_terms(2, 4, [(vec![1, 0], int(-1)), (vec![0, 2], int(2))]).unwrap();
        assert_eq!(t.to_string(), "-z1 + 2*z2^2");
        assert_eq!(Series::<Rational>::zero(3, 2).to_string(), "0");
    }

    #[test]
    fn text_over_t_polynomials() {
        let t = TPoly::t();
        let s = Series::from_terms(
            1,
            3,
            [
                (vec![1], TPoly::one()),
                (vec![2], t.clone()),
                (vec![3], TPoly::new(vec![int(1), int(-2)])),
            ],
        )
        .unwrap();
        assert_eq!(s.to_string(), "z1 + t*z1^2 + (1 - 2*t)*z1^3");
    }

    #[test]
    fn json_shape() {
        let s = Series::from_terms(2, 3, [(vec![1, 1], rat(5, 3))]).unwrap();
        let v = s.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"nvars":2,"degree":3,"terms":[{"exps":[1,1],"coeff":"5/3"}]}"#
        );
        assert_eq!(Series::<Rational>::from_json(&v).unwrap(), s);
    }

    #[test]
    fn json_rejects_terms_above_degree() {
        let v = serde_json::json!({"nvars":1,"degree":1,"terms":[{"exps":[2],"coeff":"1"}]});
        assert!(Series::<Rational>::from_json(&v).is_err());
    }
}
