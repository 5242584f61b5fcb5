//! Exact coefficient series and the OEIS b-file interchange format.
//!
//! A b-file holds one `n value` pair per line, ascending `n`, LF terminated.
//! Lines whose value starts with `~` are approximate (predicted) terms; they
//! carry a trailing agreed-digit count and are kept apart from exact terms so
//! they can never be fed back into approximant fitting.

use std::fmt::Write as _;
use std::str::FromStr;

use rug::Integer;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("no terms found")]
    Empty,
}

/// Exact integer counts indexed by length, `values[i]` being the count at
/// `first_index + i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientSeries {
    pub first_index: usize,
    pub values: Vec<Integer>,
}

impl CoefficientSeries {
    pub fn new(first_index: usize, values: Vec<Integer>) -> Self {
        Self { first_index, values }
    }

    pub fn from_u64s(first_index: usize, values: &[u64]) -> Self {
        Self::new(first_index, values.iter().map(|&v| Integer::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index one past the last stored term.
    pub fn end_index(&self) -> usize {
        self.first_index + self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&Integer> {
        n.checked_sub(self.first_index).and_then(|i| self.values.get(i))
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.first_index..self.end_index()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Integer)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.first_index + i, v))
    }

    /// Keep only terms with index `< end`.
    pub fn truncated(&self, end: usize) -> Self {
        let keep = end.saturating_sub(self.first_index).min(self.values.len());
        Self::new(self.first_index, self.values[..keep].to_vec())
    }

    /// Re-base a series starting at index 1 onto index 0 by supplying the
    /// constant term. Series already starting at 0 are returned unchanged.
    pub fn with_constant_term(&self, c0: Integer) -> Self {
        if self.first_index == 0 {
            return self.clone();
        }
        assert_eq!(self.first_index, 1, "constant term can only be prepended to a series starting at 1");
        let mut values = Vec::with_capacity(self.values.len() + 1);
        values.push(c0);
        values.extend(self.values.iter().cloned());
        Self::new(0, values)
    }

    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        for (n, v) in self.iter() {
            writeln!(out, "{n} {v}").expect("writing to a String cannot fail");
        }
        out
    }
}

/// One predicted (approximate) term as stored in an extended b-file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxTerm {
    pub index: usize,
    /// Decimal rendering of the predicted value, without the `~` marker.
    pub value: String,
    pub agreed_digits: u32,
}

/// Contents of a b-file: an exact prefix followed by optional predicted terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub exact: CoefficientSeries,
    pub approx: Vec<ApproxTerm>,
}

impl BFile {
    pub fn exact_only(series: CoefficientSeries) -> Self {
        Self { exact: series, approx: Vec::new() }
    }

    pub fn render(&self) -> String {
        let mut out = self.exact.to_bfile();
        for t in &self.approx {
            writeln!(out, "{} ~{} {}", t.index, t.value, t.agreed_digits).expect("writing to a String cannot fail");
        }
        out
    }
}

impl FromStr for BFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut first_index = None;
        let mut expected = 0usize;
        let mut values = Vec::new();
        let mut approx = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |msg: String| ParseError::Line { line, msg };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let idx: usize = fields
                .next()
                .unwrap_or_default()
                .parse()
                .map_err(|e| err(format!("bad index: {e}")))?;
            let value = fields.next().ok_or_else(|| err("missing value".into()))?;
            match first_index {
                None => {
                    first_index = Some(idx);
                    expected = idx;
                }
                Some(_) if idx != expected => {
                    return Err(err(format!("expected index {expected}, found {idx}")));
                }
                Some(_) => {}
            }
            expected += 1;
            if let Some(pred) = value.strip_prefix('~') {
                let digits = fields
                    .next()
                    .ok_or_else(|| err("predicted term without agreed-digit count".into()))?
                    .parse()
                    .map_err(|e| err(format!("bad agreed-digit count: {e}")))?;
                rug::Float::parse(pred).map_err(|e| err(format!("bad predicted value: {e}")))?;
                approx.push(ApproxTerm { index: idx, value: pred.to_string(), agreed_digits: digits });
            } else {
                if !approx.is_empty() {
                    return Err(err("exact term after a predicted term".into()));
                }
                let v = Integer::from_str(value).map_err(|e| err(format!("bad value: {e}")))?;
                values.push(v);
            }
            if fields.next().is_some() {
                return Err(err("trailing fields".into()));
            }
        }
        let first_index = first_index.ok_or(ParseError::Empty)?;
        Ok(Self { exact: CoefficientSeries::new(first_index, values), approx })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfile_lines_are_plain() {
        let s = CoefficientSeries::from_u64s(1, &[1, 2, 4]);
        assert_eq!(s.to_bfile(), "1 1\n2 2\n3 4\n");
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = "1 1\n2 x\n".parse::<BFile>().unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, ref msg } if msg.starts_with("bad value")));
        let err = "1 1\n3 4\n".parse::<BFile>().unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
        assert_eq!("".parse::<BFile>().unwrap_err(), ParseError::Empty);
    }

    #[test]
    fn predicted_terms_stay_separate() {
        let text = "1 1\n2 2\n3 ~5.000 7\n";
        let b: BFile = text.parse().unwrap();
        assert_eq!(b.exact.len(), 2);
        assert_eq!(b.approx, vec![ApproxTerm { index: 3, value: "5.000".into(), agreed_digits: 7 }]);
        assert_eq!(b.render(), text);
        assert!("1 ~1 3\n2 2\n".parse::<BFile>().is_err());
    }

    #[test]
    fn constant_term_rebases() {
        let s = CoefficientSeries::from_u64s(1, &[1, 2]).with_constant_term(Integer::from(1));
        assert_eq!(s.first_index, 0);
        assert_eq!(s.values, vec![1, 1, 2]);
    }
}
