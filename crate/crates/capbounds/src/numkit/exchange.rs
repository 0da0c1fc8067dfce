//! Dense matrix text exchange format: a `rows cols` header line followed by
//! row-major entries, whitespace separated. Rational entries are `p/q` or
//! plain integers; float entries are decimal. `#` starts a comment.
//!
//! Exact parsers reject floating literals: a certificate that arrives in
//! floating point cannot be verified exactly and is refused at parse time.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{Field, Gf};
use crate::Rat;

/// Tokenize, stripping comments; returns (line_no, token) pairs.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        for tok in line.split_whitespace() {
            out.push((idx + 1, tok));
        }
    }
    out
}

fn parse_header(toks: &[(usize, &str)]) -> Result<(usize, usize)> {
    if toks.len() < 2 {
        return Err(Error::parse(1, "expected `rows cols` matrix header"));
    }
    let rows: usize = toks[0]
        .1
        .parse()
        .map_err(|_| Error::parse(toks[0].0, format!("bad row count {:?}", toks[0].1)))?;
    let cols: usize = toks[1]
        .1
        .parse()
        .map_err(|_| Error::parse(toks[1].0, format!("bad column count {:?}", toks[1].1)))?;
    Ok((rows, cols))
}

fn parse_body<T>(
    toks: &[(usize, &str)],
    rows: usize,
    cols: usize,
    mut parse: impl FnMut(usize, &str) -> Result<T>,
) -> Result<Mat<T>> {
    let body = &toks[2..];
    if body.len() != rows * cols {
        let line = toks.first().map_or(1, |t| t.0);
        return Err(Error::parse(
            line,
            format!("expected {} entries, found {}", rows * cols, body.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for &(line, tok) in body {
        data.push(parse(line, tok)?);
    }
    Ok(Mat::from_vec(rows, cols, data))
}

pub fn parse_rat_entry(line: usize, tok: &str) -> Result<Rat> {
    let make = |s: &str| -> Option<num_bigint::BigInt> { s.parse().ok() };
    if let Some((num, den)) = tok.split_once('/') {
        let n = make(num).ok_or_else(|| Error::parse(line, format!("bad rational {tok:?}")))?;
        let d = make(den).ok_or_else(|| Error::parse(line, format!("bad rational {tok:?}")))?;
        if d.is_zero() {
            return Err(Error::parse(line, format!("zero denominator in {tok:?}")));
        }
        Ok(Rat::new(n, d))
    } else if let Some(n) = make(tok) {
        Ok(Rat::from_integer(n))
    } else {
        Err(Error::parse(
            line,
            format!("bad exact entry {tok:?} (floating certificates are rejected; use p/q)"),
        ))
    }
}

pub fn parse_rat_matrix(text: &str) -> Result<Mat<Rat>> {
    let toks = tokens(text);
    let (rows, cols) = parse_header(&toks)?;
    parse_body(&toks, rows, cols, parse_rat_entry)
}

pub fn parse_gf_matrix<const P: u64>(text: &str) -> Result<Mat<Gf<P>>> {
    let toks = tokens(text);
    let (rows, cols) = parse_header(&toks)?;
    parse_body(&toks, rows, cols, |line, tok| {
        let v: i64 = tok
            .parse()
            .map_err(|_| Error::parse(line, format!("bad GF({P}) entry {tok:?}")))?;
        Ok(Gf::new(v))
    })
}

pub fn parse_f64_matrix(text: &str) -> Result<Mat<f64>> {
    let toks = tokens(text);
    let (rows, cols) = parse_header(&toks)?;
    parse_body(&toks, rows, cols, |line, tok| {
        tok.parse::<f64>()
            .map_err(|_| Error::parse(line, format!("bad float entry {tok:?}")))
    })
}

pub fn format_matrix<T: Field>(m: &Mat<T>) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn format_f64_matrix(m: &Mat<f64>) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rational_roundtrip() {
        let m = Mat::from_vec(2, 2, vec![rat(1, 2), rat(-3, 4), rat(5, 1), rat(0, 1)]);
        let text = format_matrix(&m);
        assert_eq!(parse_rat_matrix(&text).unwrap(), m);
    }

    #[test]
    fn rejects_floats_in_exact_mode() {
        let err = parse_rat_matrix("1 1\n0.5\n").unwrap_err();
        assert!(err.to_string().contains("rejected"), "{err}");
    }

    #[test]
    fn float_and_gf_parsing() {
        let f = parse_f64_matrix("1 2 # comment\n0.5 -2e3\n").unwrap();
        assert_eq!(f[(0, 0)], 0.5);
        assert_eq!(f[(0, 1)], -2000.0);
        let g = parse_gf_matrix::<3>("2 1\n5\n-1\n").unwrap();
        assert_eq!(g[(0, 0)].value(), 2);
        assert_eq!(g[(1, 0)].value(), 2);
    }

    #[test]
    fn entry_count_errors() {
        assert!(parse_rat_matrix("2 2\n1 2 3\n").is_err());
        assert!(parse_f64_matrix("").is_err());
    }
}
