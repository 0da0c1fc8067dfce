//! Text format for certificates: a header `kind field ...` line followed by
//! named sections, one matrix each, in the dense exchange format. Exact
//! kinds (everything here) reject floating entries at parse time.
//!
//! ```text
//! subspace-rep rational 5 2
//! vertex 0
//! 5 2
//! 1 0
//! 0 1
//! 0 0
//! 0 0
//! 0 0
//! ...
//! ```

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::inertia::PackingFamily;
use crate::mat::Mat;
use crate::numkit::exchange;
use crate::reps::{
    verify_fitting, verify_pair_rep, verify_subspace_rep, FittingMatrix, PairRep, ProjRankCert,
    QHomCert, SubspaceRep, Verdict,
};
use crate::scalar::Gf;
use crate::{Rat, RatMat};

/// Field tag as written in certificate headers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Rational,
    Gf(u64),
}

impl FieldTag {
    fn parse(tok: &str) -> Result<FieldTag> {
        match tok {
            "rational" => Ok(FieldTag::Rational),
            "gf2" => Ok(FieldTag::Gf(2)),
            "gf3" => Ok(FieldTag::Gf(3)),
            "gf5" => Ok(FieldTag::Gf(5)),
            "gf7" => Ok(FieldTag::Gf(7)),
            other => Err(Error::parse(1, format!("unknown field tag {other:?}"))),
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "rational"),
            FieldTag::Gf(p) => write!(f, "gf{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnySubspaceRep {
    Rational(SubspaceRep<Rat>),
    Gf2(SubspaceRep<Gf<2>>),
    Gf3(SubspaceRep<Gf<3>>),
    Gf5(SubspaceRep<Gf<5>>),
    Gf7(SubspaceRep<Gf<7>>),
}

impl AnySubspaceRep {
    pub fn verify(&self, g: &Graph) -> Result<Verdict<Rat>> {
        match self {
            AnySubspaceRep::Rational(r) => verify_subspace_rep(g, r),
            AnySubspaceRep::Gf2(r) => verify_subspace_rep(g, r),
            AnySubspaceRep::Gf3(r) => verify_subspace_rep(g, r),
            AnySubspaceRep::Gf5(r) => verify_subspace_rep(g, r),
            AnySubspaceRep::Gf7(r) => verify_subspace_rep(g, r),
        }
    }

    pub fn value(&self) -> Rat {
        match self {
            AnySubspaceRep::Rational(r) => r.value(),
            AnySubspaceRep::Gf2(r) => r.value(),
            AnySubspaceRep::Gf3(r) => r.value(),
            AnySubspaceRep::Gf5(r) => r.value(),
            AnySubspaceRep::Gf7(r) => r.value(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnyPairRep {
    Rational(PairRep<Rat>),
    Gf2(PairRep<Gf<2>>),
    Gf3(PairRep<Gf<3>>),
    Gf5(PairRep<Gf<5>>),
    Gf7(PairRep<Gf<7>>),
}

impl AnyPairRep {
    pub fn verify(&self, g: &Graph, r: usize) -> Result<Verdict<()>> {
        match self {
            AnyPairRep::Rational(p) => verify_pair_rep(g, p, r),
            AnyPairRep::Gf2(p) => verify_pair_rep(g, p, r),
            AnyPairRep::Gf3(p) => verify_pair_rep(g, p, r),
            AnyPairRep::Gf5(p) => verify_pair_rep(g, p, r),
            AnyPairRep::Gf7(p) => verify_pair_rep(g, p, r),
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnyFitting {
    Rational(FittingMatrix<Rat>),
    Gf2(FittingMatrix<Gf<2>>),
    Gf3(FittingMatrix<Gf<3>>),
    Gf5(FittingMatrix<Gf<5>>),
    Gf7(FittingMatrix<Gf<7>>),
}

impl AnyFitting {
    pub fn verify(&self, g: &Graph) -> Result<Verdict<usize>> {
        match self {
            AnyFitting::Rational(m) => verify_fitting(g, m),
            AnyFitting::Gf2(m) => verify_fitting(g, m),
            AnyFitting::Gf3(m) => verify_fitting(g, m),
            AnyFitting::Gf5(m) => verify_fitting(g, m),
            AnyFitting::Gf7(m) => verify_fitting(g, m),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Subspace(AnySubspaceRep),
    Pair { rep: AnyPairRep, r: usize },
    Fitting(AnyFitting),
    QHom(QHomCert),
    ProjRank(ProjRankCert),
    Packing(PackingFamily),
    Isotropic(RatMat),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Subspace(_) => "subspace-rep",
            Certificate::Pair { .. } => "pair-rep",
            Certificate::Fitting(_) => "fitting",
            Certificate::QHom(_) => "qhom",
            Certificate::ProjRank(_) => "projrank",
            Certificate::Packing(_) => "packing",
            Certificate::Isotropic(_) => "isotropic",
        }
    }
}

struct Section {
    line: usize,
    name: Vec<String>,
    body: String,
}

/// Split into header tokens plus named sections. A section starts at a line
/// whose first token is not a number.
fn split_sections(text: &str) -> Result<(Vec<String>, Vec<Section>)> {
    let mut header: Option<Vec<String>> = None;
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let first = trimmed.split_whitespace().next().unwrap();
        let is_data = first
            .chars()
            .next()
            .map(|c| c.is_ascii_digit() || c == '-' || c == '+')
            .unwrap_or(false);
        if header.is_none() {
            header = Some(trimmed.split_whitespace().map(String::from).collect());
        } else if is_data {
            match sections.last_mut() {
                Some(s) => {
                    s.body.push_str(trimmed);
                    s.body.push('\n');
                }
                None => return Err(Error::parse(idx + 1, "data before any section header")),
            }
        } else {
            sections.push(Section {
                line: idx + 1,
                name: trimmed.split_whitespace().map(String::from).collect(),
                body: String::new(),
            });
        }
    }
    let header = header.ok_or_else(|| Error::parse(1, "empty certificate"))?;
    Ok((header, sections))
}

fn header_usize(header: &[String], i: usize, what: &str) -> Result<usize> {
    header
        .get(i)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(1, format!("certificate header missing {what}")))
}

fn header_field(header: &[String]) -> Result<FieldTag> {
    let tok = header
        .get(1)
        .ok_or_else(|| Error::parse(1, "certificate header missing field tag"))?;
    FieldTag::parse(tok)
}

fn expect_vertex_sections(sections: &[Section]) -> Result<Vec<&Section>> {
    let mut out = Vec::new();
    for (i, s) in sections.iter().enumerate() {
        if s.name.len() != 2 || s.name[0] != "vertex" || s.name[1] != i.to_string() {
            return Err(Error::parse(
                s.line,
                format!("expected section `vertex {i}`, found {:?}", s.name.join(" "))),
            );
        }
        out.push(s);
    }
    if out.is_empty() {
        return Err(Error::parse(1, "certificate has no vertex sections"));
    }
    Ok(out)
}

macro_rules! parse_rep_for_field {
    ($field:expr, $sections:expr, $d:expr, $r:expr) => {{
        let secs = expect_vertex_sections($sections)?;
        match $field {
            FieldTag::Rational => {
                let bases = secs
                    .iter()
                    .map(|s| exchange::parse_rat_matrix(&s.body))
                    .collect::<Result<Vec<_>>>()?;
                AnySubspaceRep::Rational(SubspaceRep { d: $d, r: $r, bases })
            }
            FieldTag::Gf(2) => AnySubspaceRep::Gf2(SubspaceRep {
                d: $d,
                r: $r,
                bases: secs
                    .iter()
                    .map(|s| exchange::parse_gf_matrix::<2>(&s.body))
                    .collect::<Result<Vec<_>>>()?,
            }),
            FieldTag::Gf(3) => AnySubspaceRep::Gf3(SubspaceRep {
                d: $d,
                r: $r,
                bases: secs
                    .iter()
                    .map(|s| exchange::parse_gf_matrix::<3>(&s.body))
                    .collect::<Result<Vec<_>>>()?,
            }),
            FieldTag::Gf(5) => AnySubspaceRep::Gf5(SubspaceRep {
                d: $d,
                r: $r,
                bases: secs
                    .iter()
                    .map(|s| exchange::parse_gf_matrix::<5>(&s.body))
                    .collect::<Result<Vec<_>>>()?,
            }),
            FieldTag::Gf(7) => AnySubspaceRep::Gf7(SubspaceRep {
                d: $d,
                r: $r,
                bases: secs
                    .iter()
                    .map(|s| exchange::parse_gf_matrix::<7>(&s.body))
                    .collect::<Result<Vec<_>>>()?,
            }),
            FieldTag::Gf(p) => return Err(Error::parse(1, format!("unsupported field gf{p}"))),
        }
    }};
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let (header, sections) = split_sections(text)?;
    let kind = header
        .first()
        .ok_or_else(|| Error::parse(1, "missing certificate kind"))?
        .as_str();
    match kind {
        "subspace-rep" => {
            let field = header_field(&header)?;
            let d = header_usize(&header, 2, "ambient dimension d")?;
            let r = header_usize(&header, 3, "target dimension r")?;
            Ok(Certificate::Subspace(parse_rep_for_field!(field, &sections, d, r)))
        }
        "pair-rep" => {
            let field = header_field(&header)?;
            let d = header_usize(&header, 2, "ambient dimension d")?;
            let r = header_usize(&header, 3, "target dimension r")?;
            let rep = parse_pair(field, &sections, d)?;
            Ok(Certificate::Pair { rep, r })
        }
        "fitting" => {
            let field = header_field(&header)?;
            let _n = header_usize(&header, 2, "matrix size n")?;
            let body = single_section(&sections, "matrix")?;
            let fit = match field {
                FieldTag::Rational => {
                    AnyFitting::Rational(FittingMatrix { mat: exchange::parse_rat_matrix(body)? })
                }
                FieldTag::Gf(2) => {
                    AnyFitting::Gf2(FittingMatrix { mat: exchange::parse_gf_matrix::<2>(body)? })
                }
                FieldTag::Gf(3) => {
                    AnyFitting::Gf3(FittingMatrix { mat: exchange::parse_gf_matrix::<3>(body)? })
                }
                FieldTag::Gf(5) => {
                    AnyFitting::Gf5(FittingMatrix { mat: exchange::parse_gf_matrix::<5>(body)? })
                }
                FieldTag::Gf(7) => {
                    AnyFitting::Gf7(FittingMatrix { mat: exchange::parse_gf_matrix::<7>(body)? })
                }
                FieldTag::Gf(p) => {
                    return Err(Error::parse(1, format!("unsupported field gf{p}")));
                }
            };
            Ok(Certificate::Fitting(fit))
        }
        "qhom" => {
            require_rational(&header, kind)?;
            let d = header_usize(&header, 2, "projection dimension d")?;
            let mut grid: Vec<(usize, usize, RatMat)> = Vec::new();
            for s in &sections {
                if s.name.len() != 3 || s.name[0] != "projection" {
                    return Err(Error::parse(s.line, "expected `projection <g> <h>` sections"));
                }
                let g: usize = s.name[1]
                    .parse()
                    .map_err(|_| Error::parse(s.line, "bad source vertex index"))?;
                let h: usize = s.name[2]
                    .parse()
                    .map_err(|_| Error::parse(s.line, "bad target vertex index"))?;
                grid.push((g, h, exchange::parse_rat_matrix(&s.body)?));
            }
            if grid.is_empty() {
                return Err(Error::parse(1, "qhom certificate has no projections"));
            }
            let ng = grid.iter().map(|&(g, _, _)| g).max().unwrap() + 1;
            let nh = grid.iter().map(|&(_, h, _)| h).max().unwrap() + 1;
            let mut projections =
                vec![vec![Mat::<Rat>::zeros(0, 0); nh]; ng];
            let mut seen = vec![vec![false; nh]; ng];
            for (g, h, m) in grid {
                if seen[g][h] {
                    return Err(Error::parse(1, format!("duplicate projection ({g},{h})")));
                }
                seen[g][h] = true;
                projections[g][h] = m;
            }
            for (g, row) in seen.iter().enumerate() {
                for (h, &ok) in row.iter().enumerate() {
                    if !ok {
                        return Err(Error::parse(1, format!("missing projection ({g},{h})")));
                    }
                }
            }
            Ok(Certificate::QHom(QHomCert { d, projections }))
        }
        "projrank" => {
            require_rational(&header, kind)?;
            let d = header_usize(&header, 2, "dimension d")?;
            let lambda = exchange::parse_rat_entry(
                1,
                header
                    .get(3)
                    .ok_or_else(|| Error::parse(1, "projrank header missing λ"))?,
            )?;
            let secs = expect_vertex_sections(&sections)?;
            let projections = secs
                .iter()
                .map(|s| exchange::parse_rat_matrix(&s.body))
                .collect::<Result<Vec<_>>>()?;
            Ok(Certificate::ProjRank(ProjRankCert { d, lambda, projections }))
        }
        "packing" => {
            require_rational(&header, kind)?;
            let d = header_usize(&header, 2, "dimension d")?;
            let secs = expect_vertex_sections(&sections)?;
            let projections = secs
                .iter()
                .map(|s| exchange::parse_rat_matrix(&s.body))
                .collect::<Result<Vec<_>>>()?;
            Ok(Certificate::Packing(PackingFamily { d, projections }))
        }
        "isotropic" => {
            require_rational(&header, kind)?;
            let _d = header_usize(&header, 2, "dimension d")?;
            let body = single_section(&sections, "basis")?;
            Ok(Certificate::Isotropic(exchange::parse_rat_matrix(body)?))
        }
        other => Err(Error::parse(1, format!("unknown certificate kind {other:?}"))),
    }
}

fn require_rational(header: &[String], kind: &str) -> Result<()> {
    match header.get(1).map(String::as_str) {
        Some("rational") => Ok(()),
        _ => Err(Error::parse(
            1,
            format!("{kind} certificates must be rational (exact projections)"),
        )),
    }
}

fn single_section<'a>(sections: &'a [Section], name: &str) -> Result<&'a str> {
    match sections {
        [s] if s.name.len() == 1 && s.name[0] == name => Ok(&s.body),
        _ => Err(Error::parse(1, format!("expected exactly one `{name}` section"))),
    }
}

fn parse_pair(field: FieldTag, sections: &[Section], d: usize) -> Result<AnyPairRep> {
    // Sections: vertex <g> s / vertex <g> t, in vertex order.
    let n2 = sections.len();
    if n2 == 0 || !n2.is_multiple_of(2) {
        return Err(Error::parse(1, "pair-rep needs an s and a t section per vertex"));
    }
    let n = n2 / 2;
    let mut s_bodies = Vec::with_capacity(n);
    let mut t_bodies = Vec::with_capacity(n);
    for (i, sec) in sections.iter().enumerate() {
        let v = i / 2;
        let tag = if i % 2 == 0 { "s" } else { "t" };
        if sec.name.len() != 3
            || sec.name[0] != "vertex"
            || sec.name[1] != v.to_string()
            || sec.name[2] != tag
        {
            return Err(Error::parse(
                sec.line,
                format!("expected section `vertex {v} {tag}`, found {:?}", sec.name.join(" ")),
            ));
        }
        if i % 2 == 0 {
            s_bodies.push(sec.body.clone());
        } else {
            t_bodies.push(sec.body.clone());
        }
    }
    macro_rules! build {
        ($variant:ident, $parse:path) => {{
            let s_bases =
                s_bodies.iter().map(|b| $parse(b)).collect::<Result<Vec<_>>>()?;
            let t_bases =
                t_bodies.iter().map(|b| $parse(b)).collect::<Result<Vec<_>>>()?;
            AnyPairRep::$variant(PairRep { d, s_bases, t_bases })
        }};
    }
    Ok(match field {
        FieldTag::Rational => build!(Rational, exchange::parse_rat_matrix),
        FieldTag::Gf(2) => build!(Gf2, exchange::parse_gf_matrix::<2>),
        FieldTag::Gf(3) => build!(Gf3, exchange::parse_gf_matrix::<3>),
        FieldTag::Gf(5) => build!(Gf5, exchange::parse_gf_matrix::<5>),
        FieldTag::Gf(7) => build!(Gf7, exchange::parse_gf_matrix::<7>),
        FieldTag::Gf(p) => return Err(Error::parse(1, format!("unsupported field gf{p}"))),
    })
}

/// Emit a rational subspace representation in the certificate format.
pub fn format_subspace_rep(rep: &SubspaceRep<Rat>) -> String {
    let mut out = format!("subspace-rep rational {} {}\n", rep.d, rep.r);
    for (v, b) in rep.bases.iter().enumerate() {
        out.push_str(&format!("vertex {v}\n"));
        out.push_str(&exchange::format_matrix(b));
    }
    out
}

pub fn format_projrank(cert: &ProjRankCert) -> String {
    let mut out = format!("projrank rational {} {}\n", cert.d, cert.lambda);
    for (v, e) in cert.projections.iter().enumerate() {
        out.push_str(&format!("vertex {v}\n"));
        out.push_str(&exchange::format_matrix(e));
    }
    out
}

pub fn format_packing(fam: &PackingFamily) -> String {
    let mut out = format!("packing rational {}\n", fam.d);
    for (v, e) in fam.projections.iter().enumerate() {
        out.push_str(&format!("vertex {v}\n"));
        out.push_str(&exchange::format_matrix(e));
    }
    out
}

pub fn format_qhom(cert: &QHomCert) -> String {
    let mut out = format!("qhom rational {}\n", cert.d);
    for (g, row) in cert.projections.iter().enumerate() {
        for (h, e) in row.iter().enumerate() {
            out.push_str(&format!("projection {g} {h}\n"));
            out.push_str(&exchange::format_matrix(e));
        }
    }
    out
}

pub fn format_pair_rep(rep: &PairRep<Rat>, r: usize) -> String {
    let mut out = format!("pair-rep rational {} {r}\n", rep.d);
    for v in 0..rep.s_bases.len() {
        out.push_str(&format!("vertex {v} s\n"));
        out.push_str(&exchange::format_matrix(&rep.s_bases[v]));
        out.push_str(&format!("vertex {v} t\n"));
        out.push_str(&exchange::format_matrix(&rep.t_bases[v]));
    }
    out
}

pub fn format_fitting(fit: &FittingMatrix<Rat>) -> String {
    format!("fitting rational {}\nmatrix\n{}", fit.mat.rows(), exchange::format_matrix(&fit.mat))
}

pub fn format_fitting_gf<const P: u64>(fit: &FittingMatrix<Gf<P>>) -> String {
    format!("fitting gf{P} {}\nmatrix\n{}", fit.mat.rows(), exchange::format_matrix(&fit.mat))
}

pub fn format_isotropic(basis: &RatMat) -> String {
    format!("isotropic rational {}\nbasis\n{}", basis.rows(), exchange::format_matrix(basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{chifrac, dr_cover_from_fractional, generate, Family};
    use crate::reps::cover_to_rep;

    #[test]
    fn subspace_roundtrip() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let (_, cover) = chifrac(&g, 1000).unwrap();
        let dr = dr_cover_from_fractional(&g, &cover).unwrap();
        let rep = cover_to_rep(&g, &dr).unwrap();
        let text = format_subspace_rep(&rep);
        let parsed = parse_certificate(&text).unwrap();
        let Certificate::Subspace(any) = parsed else { panic!("wrong kind") };
        assert!(any.verify(&g).unwrap().is_accept());
        assert_eq!(any.value(), rep.value());
    }

    #[test]
    fn rejects_float_entries() {
        let text = "subspace-rep rational 2 1\nvertex 0\n2 1\n1.5\n0\n";
        assert!(parse_certificate(text).is_err());
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(parse_certificate("widget rational 3\n").is_err());
    }

    #[test]
    fn qhom_needs_complete_grid() {
        let text = "qhom rational 1\nprojection 0 0\n1 1\n1\nprojection 1 1\n1 1\n1\n";
        let err = parse_certificate(text).unwrap_err();
        assert!(err.to_string().contains("missing projection"), "{err}");
    }
}
