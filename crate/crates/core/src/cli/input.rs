//! Reading JSON inputs and command-line values, with field paths in errors.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use super::CliError;
use crate::exact::Rational;

/// Parses a JSON file into `T`; the raw value is kept for the cache key.
pub fn load<T: DeserializeOwned>(path: &Path, what: &str) -> Result<(T, Value), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{what}: cannot read {}: {e}", path.display())))?;
    parse(&text, &format!("{what} ({})", path.display()))
}

pub fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<(T, Value), CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("{what}: malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    let parsed = serde_path_to_error::deserialize(&value).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("{what}: field {path}: {}", e.into_inner()))
    })?;
    Ok((parsed, value))
}

/// `1,0,2` into integers.
pub fn int_list(s: &str, flag: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Input(format!("{flag}: bad entry {x:?}"))))
        .collect()
}

/// `x`, `2*x`, `1/2*x, -1*e1` into `(coefficient, basis name)` pairs.
pub fn combination(s: &str, flag: &str) -> Result<Vec<(Rational, String)>, CliError> {
    s.split(',')
        .map(|term| {
            let term = term.trim();
            match term.split_once('*') {
                Some((c, name)) => {
                    let c: Rational = c.trim().parse().map_err(|_| CliError::Input(format!("{flag}: bad coefficient in {term:?}")))?;
                    Ok((c, name.trim().to_string()))
                }
                None if !term.is_empty() => Ok((Rational::ONE, term.to_string())),
                None => Err(CliError::Input(format!("{flag}: empty term"))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    #[test]
    fn field_path_in_errors() {
        let bad = r#"{"vertices": ["1"], "arrows": [{"src": "1", "dst": 2, "name": "x"}]}"#;
        let Err(CliError::Input(msg)) = parse::<AlgebraSpec>(bad, "algebra") else { panic!() };
        assert!(msg.contains("arrows[0].dst"), "{msg}");
        let Err(CliError::Input(msg)) = parse::<AlgebraSpec>("{", "algebra") else { panic!() };
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn combinations() {
        let c = combination("x, 1/2*e1", "--element").unwrap();
        assert_eq!(c, vec![(Rational::ONE, "x".to_string()), (Rational::frac(1, 2), "e1".to_string())]);
        assert!(combination("a*x", "--element").is_err());
        assert_eq!(int_list("1, -2", "--weight").unwrap(), vec![1, -2]);
    }
}
