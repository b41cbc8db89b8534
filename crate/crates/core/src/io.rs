//! Shared wire formats: series JSON (arrays of `[re, im]` pairs, with bare
//! numbers tolerated as reals), the inline polynomial shorthand, and the
//! compact operator strings.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::{CoeffMatrix, OperatorSpec};
use crate::series::TruncatedSeries;

fn complex_from_value(v: &Value, index: usize) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(
            n.as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number at index {index}")))?,
            0.0,
        )),
        Value::Array(parts) if parts.len() == 1 || parts.len() == 2 => {
            let get = |i: usize| -> Result<f64> {
                parts
                    .get(i)
                    .map_or(Some(0.0), Value::as_f64)
                    .ok_or_else(|| Error::Parse(format!("bad pair at index {index}")))
            };
            Ok(Complex64::new(get(0)?, get(1)?))
        }
        _ => Err(Error::Parse(format!(
            "expected number or [re, im] at index {index}"
        ))),
    }
}

/// Reads a series from its JSON form: an array whose entry `k` is either
/// `[re, im]` or a bare real, holding the coefficient of `z^k`.
pub fn series_from_json(v: &Value) -> Result<TruncatedSeries> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("series JSON must be an array".into()))?;
    let coeffs = arr
        .iter()
        .enumerate()
        .map(|(i, v)| complex_from_value(v, i))
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::new(coeffs)
}

pub fn series_from_json_str(s: &str) -> Result<TruncatedSeries> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    series_from_json(&v)
}

/// Canonical JSON form: every coefficient as an `[re, im]` pair.
pub fn series_to_json(f: &TruncatedSeries) -> Value {
    Value::Array(
        f.coeffs()
            .iter()
            .map(|c| json!([c.re, c.im]))
            .collect(),
    )
}

/// Human-facing JSON: trailing zeros trimmed, and plain reals when the
/// series has no imaginary part.
pub fn series_to_compact_json(f: &TruncatedSeries) -> Value {
    let last = f.effective_degree();
    let coeffs = &f.coeffs()[..=last];
    if coeffs.iter().all(|c| c.im == 0.0) {
        Value::Array(coeffs.iter().map(|c| json!(c.re)).collect())
    } else {
        Value::Array(coeffs.iter().map(|c| json!([c.re, c.im])).collect())
    }
}

/// Parses a complex literal: `re`, `re,im`, or `(re,im)`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .unwrap_or(trimmed);
    let mut parts = inner.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad complex literal `{s}`")))?;
    let im: f64 = match parts.next() {
        Some(p) => p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad complex literal `{s}`")))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

/// Splits a polynomial expression into signed terms, keeping signs that
/// belong to exponents (`1e-3`) or sit inside parentheses.
fn split_terms(s: &str) -> Result<Vec<String>> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{s}`")))?;
                current.push(ch);
            }
            '+' | '-' if depth == 0 && i > 0 => {
                let prev = s[..i].chars().next_back().unwrap_or(' ');
                if prev == 'e' || prev == 'E' || prev == '^' {
                    current.push(ch);
                } else {
                    terms.push(current.clone());
                    current.clear();
                    if ch == '-' {
                        current.push('-');
                    }
                }
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    terms.push(current);
    Ok(terms.into_iter().filter(|t| !t.trim().is_empty()).collect())
}

fn parse_term(term: &str) -> Result<(Complex64, usize)> {
    let t = term.trim().replace(' ', "");
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff_str, power) = match t.find('z') {
        None => (t.as_str(), 0usize),
        Some(pos) => {
            let after = &t[pos + 1..];
            let power = if let Some(exp) = after.strip_prefix('^') {
                exp.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
            } else if after.is_empty() {
                1
            } else {
                return Err(Error::Parse(format!("unexpected trailing `{after}` in `{term}`")));
            };
            (t[..pos].trim_end_matches('*'), power)
        }
    };
    let coeff = match coeff_str {
        "" | "+" => Complex64::ONE,
        "-" => -Complex64::ONE,
        other => {
            let (sign, body) = match other.strip_prefix('-') {
                // A leading sign outside parentheses applies to the term.
                Some(rest) if rest.starts_with('(') => (-1.0, rest),
                _ => (1.0, other),
            };
            parse_complex(body)? * sign
        }
    };
    Ok((coeff, power))
}

/// Parses the inline shorthand: sums of `a*z^k` terms where `a` is a real
/// or `re,im` complex literal (parenthesized when joined with other
/// terms). The result is padded to at least `min_degree`.
pub fn series_from_shorthand(s: &str, min_degree: usize) -> Result<TruncatedSeries> {
    let terms = split_terms(s)?;
    if terms.is_empty() {
        return Err(Error::Parse("empty series expression".into()));
    }
    let parsed = terms
        .iter()
        .map(|t| parse_term(t))
        .collect::<Result<Vec<_>>>()?;
    let degree = parsed
        .iter()
        .map(|&(_, k)| k)
        .max()
        .unwrap_or(0)
        .max(min_degree);
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    for (c, k) in parsed {
        coeffs[k] += c;
    }
    TruncatedSeries::new(coeffs)
}

/// Resolves a series argument: inline JSON (leading `[`), a file path
/// holding JSON, or the inline shorthand. Shorthand results are padded to
/// the working degree.
pub fn parse_series_input(input: &str, working_degree: usize) -> Result<TruncatedSeries> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        return series_from_json_str(trimmed);
    }
    if Path::new(trimmed).is_file() {
        return series_from_json_str(&std::fs::read_to_string(trimmed)?);
    }
    series_from_shorthand(trimmed, working_degree)
}

/// Reads a coefficient matrix from JSON rows of `[re, im]` pairs (or bare
/// reals).
pub fn matrix_from_json_str(s: &str) -> Result<CoeffMatrix> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix JSON must be an array of rows".into()))?;
    let dim = rows.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if row.len() != dim {
            return Err(Error::Parse(format!(
                "matrix must be square: row of length {} in a {dim}-row matrix",
                row.len()
            )));
        }
        for (i, v) in row.iter().enumerate() {
            entries.push(complex_from_value(v, i)?);
        }
    }
    CoeffMatrix::new(dim, entries)
}

/// Parses the compact operator strings: `comp:<series>`, `mult:<series>`,
/// `bdry-eval:c=<re,im>`, `point-eval:a=<re,im>`, `matrix:<file>`, where
/// `<series>` is a file, inline JSON, or shorthand.
pub fn parse_operator(input: &str, working_degree: usize) -> Result<OperatorSpec> {
    let trimmed = input.trim();
    let (kind, rest) = trimmed
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("operator `{trimmed}` needs a kind prefix")))?;
    match kind.trim() {
        "comp" => OperatorSpec::composition(parse_series_input(rest, working_degree)?),
        "mult" => Ok(OperatorSpec::multiplication(parse_series_input(
            rest,
            working_degree,
        )?)),
        "bdry-eval" => {
            let value = rest.trim().strip_prefix("c=").unwrap_or(rest.trim());
            OperatorSpec::boundary_eval(parse_complex(value)?)
        }
        "point-eval" => {
            let value = rest.trim().strip_prefix("a=").unwrap_or(rest.trim());
            OperatorSpec::point_eval(parse_complex(value)?)
        }
        "matrix" => {
            let path = rest.trim();
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read matrix file `{path}`: {e}")))?;
            Ok(OperatorSpec::matrix(matrix_from_json_str(&text)?))
        }
        other => Err(Error::Parse(format!("unknown operator kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_tolerates_bare_reals() {
        let f = series_from_json_str("[[0,0],[1,0]]").unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.coeff(1), Complex64::ONE);

        let g = series_from_json_str("[0, 0, 0.5]").unwrap();
        assert_eq!(g.coeff(2), Complex64::new(0.5, 0.0));

        let back = series_from_json(&series_to_json(&g)).unwrap();
        assert_eq!(back, g);

        assert!(series_from_json_str("{}").is_err());
        assert!(series_from_json_str("[[1,2,3]]").is_err());
        assert!(series_from_json_str("[\"x\"]").is_err());
    }

    #[test]
    fn compact_json_trims_and_realifies() {
        let f = TruncatedSeries::monomial(2, 10).scale(Complex64::new(0.5, 0.0));
        assert_eq!(series_to_compact_json(&f).to_string(), "[0.0,0.0,0.5]");

        let g = TruncatedSeries::constant(Complex64::new(0.0, 1.0), 3);
        assert_eq!(series_to_compact_json(&g).to_string(), "[[0.0,1.0]]");
    }

    #[test]
    fn shorthand_terms() {
        let f = series_from_shorthand("z^7", 0).unwrap();
        assert_eq!(f.degree(), 7);
        assert_eq!(f.coeff(7), Complex64::ONE);

        let g = series_from_shorthand("0.5z", 4).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.coeff(1), Complex64::new(0.5, 0.0));

        let h = series_from_shorthand("1 + z - 0.25*z^2", 0).unwrap();
        assert_eq!(h.coeff(0), Complex64::ONE);
        assert_eq!(h.coeff(1), Complex64::ONE);
        assert_eq!(h.coeff(2), Complex64::new(-0.25, 0.0));

        let cplx = series_from_shorthand("(0,1)*z^2 + 0.5", 0).unwrap();
        assert_eq!(cplx.coeff(2), Complex64::new(0.0, 1.0));
        assert_eq!(cplx.coeff(0), Complex64::new(0.5, 0.0));

        let bare = series_from_shorthand("0.5,0.25", 0).unwrap();
        assert_eq!(bare.coeff(0), Complex64::new(0.5, 0.25));

        let sci = series_from_shorthand("1e-3*z - 2E+1", 0).unwrap();
        assert_eq!(sci.coeff(1), Complex64::new(1e-3, 0.0));
        assert_eq!(sci.coeff(0), Complex64::new(-20.0, 0.0));

        let neg = series_from_shorthand("-(0.5,0.1)*z^3", 0).unwrap();
        assert_eq!(neg.coeff(3), Complex64::new(-0.5, -0.1));

        assert!(series_from_shorthand("z^x", 0).is_err());
        assert!(series_from_shorthand("((", 0).is_err());
        assert!(series_from_shorthand("", 0).is_err());
        assert!(series_from_shorthand("zq", 0).is_err());
    }

    #[test]
    fn operator_strings() {
        let op = parse_operator("comp:0.5z", 8).unwrap();
        assert!(matches!(op, OperatorSpec::Composition(_)));
        assert_eq!(op.natural_degree(), 8);

        let op = parse_operator("mult:1+z", 8).unwrap();
        assert!(matches!(op, OperatorSpec::Multiplication(_)));

        let op = parse_operator("bdry-eval:c=1,0", 8).unwrap();
        assert!(matches!(op, OperatorSpec::BoundaryEval(_)));

        let op = parse_operator("point-eval:a=0.3,-0.2", 8).unwrap();
        assert!(matches!(op, OperatorSpec::PointEval(_)));

        assert!(parse_operator("comp:2z", 8).is_err());
        assert!(parse_operator("bdry-eval:c=0.5,0", 8).is_err());
        assert!(parse_operator("spin:z", 8).is_err());
        assert!(parse_operator("plain", 8).is_err());
    }

    #[test]
    fn matrix_json() {
        let m = matrix_from_json_str("[[1, 0], [0, [0, 1]]]").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(1, 1), Complex64::new(0.0, 1.0));
        assert!(matrix_from_json_str("[[1, 0], [0]]").is_err());
        assert!(matrix_from_json_str("[]").is_err());
    }
}
