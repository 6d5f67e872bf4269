//! Human-readable and JSON scheme formats.
//!
//! Human format:
//!
//! ```text
//! scheme n=2 m=7
//! 1: (a11 + a22)(b11 + b22)(c11 + c22)
//! 2: (a21 + a22)(b11)(c12 + c22)
//! ...
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment. An all-zero factor
//! is written `(0)`. The header may carry `convention=application` when the
//! gamma factors are written in the application convention; the default is
//! the flipped convention used internally.

use serde::{Deserialize, Serialize};

use super::{verify, BitMat, GammaConvention, Scheme, Summand, MAX_DIM};
use crate::error::{parse_err, Error, Result};

const LETTERS: [char; 3] = ['a', 'b', 'c'];

pub fn render_scheme(s: &Scheme) -> String {
    let mut out = format!("scheme n={} m={}\n", s.n(), s.m());
    for (l, sm) in s.summands().iter().enumerate() {
        out.push_str(&format!("{}: ", l + 1));
        for (role, letter) in LETTERS.iter().enumerate() {
            let entries: Vec<String> = sm
                .matrix(role)
                .ones()
                .map(|(r, c)| format!("{letter}{}{}", r + 1, c + 1))
                .collect();
            if entries.is_empty() {
                out.push_str("(0)");
            } else {
                out.push('(');
                out.push_str(&entries.join(" + "));
                out.push(')');
            }
        }
        out.push('\n');
    }
    out
}

struct RawScheme {
    n: usize,
    declared: Option<GammaConvention>,
    summands: Vec<Summand>,
}

fn parse_raw(text: &str) -> Result<RawScheme> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty scheme text"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("scheme") {
        return Err(parse_err(hline, "expected header `scheme n=<n> m=<m>`"));
    }
    let (mut n, mut m, mut declared) = (None, None, None);
    for tok in tokens {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(hline, format!("bad header token `{tok}`")))?;
        match key {
            "n" => {
                n = Some(
                    val.parse::<usize>()
                        .map_err(|e| parse_err(hline, e.to_string()))?,
                )
            }
            "m" => {
                m = Some(
                    val.parse::<usize>()
                        .map_err(|e| parse_err(hline, e.to_string()))?,
                )
            }
            "convention" => {
                declared = Some(
                    val.parse()
                        .map_err(|e: Error| parse_err(hline, e.to_string()))?,
                )
            }
            _ => return Err(parse_err(hline, format!("unknown header key `{key}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(hline, "header lacks n="))?;
    let m = m.ok_or_else(|| parse_err(hline, "header lacks m="))?;
    if !(1..=MAX_DIM).contains(&n) {
        return Err(parse_err(hline, format!("n={n} outside 1..={MAX_DIM}")));
    }

    let mut summands = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        let (label, body) = compact
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `<index>: (...)(...)(...)`"))?;
        let idx: usize = label
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad summand index `{label}`")))?;
        if idx != summands.len() + 1 {
            return Err(parse_err(
                lineno,
                format!("summand index {idx}, expected {}", summands.len() + 1),
            ));
        }
        summands.push(parse_summand(n, body, lineno)?);
    }
    if summands.len() != m {
        return Err(parse_err(
            last_line,
            format!("header says m={m} but {} summands follow", summands.len()),
        ));
    }
    Ok(RawScheme {
        n,
        declared,
        summands,
    })
}

fn parse_summand(n: usize, body: &str, lineno: usize) -> Result<Summand> {
    let mut sm = Summand::zero(n);
    let mut rest = body;
    for (role, letter) in LETTERS.iter().enumerate() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| parse_err(lineno, format!("missing `({letter}..)` factor")))?;
        rest = inner.1;
        let factor = inner.0;
        if factor == "0" {
            continue;
        }
        for entry in factor.split('+') {
            let (r, c) = parse_entry(n, *letter, entry)
                .ok_or_else(|| parse_err(lineno, format!("malformed factor entry `{entry}`")))?;
            let mat = sm.matrix_mut(role);
            if mat.get(r, c) {
                return Err(parse_err(lineno, format!("duplicate entry `{entry}`")));
            }
            mat.set(r, c, true);
        }
    }
    if !rest.is_empty() {
        return Err(parse_err(lineno, format!("trailing text `{rest}`")));
    }
    Ok(sm)
}

fn parse_entry(n: usize, letter: char, entry: &str) -> Option<(usize, usize)> {
    let mut chars = entry.chars();
    if chars.next()? != letter {
        return None;
    }
    let r = chars.next()?.to_digit(10)? as usize;
    let c = chars.next()?.to_digit(10)? as usize;
    if chars.next().is_some() || r == 0 || c == 0 || r > n || c > n {
        return None;
    }
    Some((r - 1, c - 1))
}

/// Parses the human format. Gamma is converted to the flipped convention
/// when the header declares `convention=application`.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let raw = parse_raw(text)?;
    let s = Scheme::new(raw.n, raw.summands)?;
    Ok(match raw.declared {
        Some(GammaConvention::Application) => s.transpose_gamma(),
        _ => s,
    })
}

/// Parses the human format and determines the gamma convention.
///
/// A declared convention is honored. Otherwise the scheme is read as
/// flipped if it verifies that way, as application if it verifies after
/// transposing gamma, and as flipped (unverified) if neither holds.
pub fn parse_scheme_detect(text: &str) -> Result<(Scheme, GammaConvention)> {
    let raw = parse_raw(text)?;
    let s = Scheme::new(raw.n, raw.summands)?;
    if let Some(conv) = raw.declared {
        let s = match conv {
            GammaConvention::Application => s.transpose_gamma(),
            GammaConvention::Flipped => s,
        };
        return Ok((s, conv));
    }
    if verify(&s) {
        return Ok((s, GammaConvention::Flipped));
    }
    let t = s.transpose_gamma();
    if verify(&t) {
        return Ok((t, GammaConvention::Application));
    }
    Ok((s, GammaConvention::Flipped))
}

/// Machine-readable scheme record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeRecord {
    pub n: usize,
    pub m: usize,
    pub gamma_convention: GammaConvention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub summands: Vec<SummandRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    pub gamma: Vec<u8>,
}

impl From<&Scheme> for SchemeRecord {
    fn from(s: &Scheme) -> Self {
        let cells = s.n() * s.n();
        let flat = |m: &BitMat| (0..cells).map(|i| (m.bits() >> i & 1) as u8).collect();
        SchemeRecord {
            n: s.n(),
            m: s.m(),
            gamma_convention: GammaConvention::Flipped,
            label: s.label.clone(),
            summands: s
                .summands()
                .iter()
                .map(|sm| SummandRecord {
                    alpha: flat(&sm.alpha),
                    beta: flat(&sm.beta),
                    gamma: flat(&sm.gamma),
                })
                .collect(),
        }
    }
}

impl TryFrom<&SchemeRecord> for Scheme {
    type Error = Error;

    fn try_from(rec: &SchemeRecord) -> Result<Scheme> {
        let n = rec.n;
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Domain(format!("n={n} outside 1..={MAX_DIM}")));
        }
        if rec.summands.len() != rec.m {
            return Err(Error::Dimension(format!(
                "m={} but {} summands",
                rec.m,
                rec.summands.len()
            )));
        }
        let unflat = |v: &[u8], l: usize| -> Result<BitMat> {
            if v.len() != n * n {
                return Err(Error::Dimension(format!(
                    "summand {}: expected {} entries, got {}",
                    l + 1,
                    n * n,
                    v.len()
                )));
            }
            let mut bits = 0u64;
            for (i, &b) in v.iter().enumerate() {
                match b {
                    0 => {}
                    1 => bits |= 1 << i,
                    _ => {
                        return Err(Error::Domain(format!(
                            "summand {}: entry {b} not 0/1",
                            l + 1
                        )))
                    }
                }
            }
            BitMat::from_bits(n, bits)
        };
        let summands = rec
            .summands
            .iter()
            .enumerate()
            .map(|(l, r)| {
                Ok(Summand {
                    alpha: unflat(&r.alpha, l)?,
                    beta: unflat(&r.beta, l)?,
                    gamma: unflat(&r.gamma, l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut s = Scheme::new(n, summands)?;
        if rec.gamma_convention == GammaConvention::Application {
            s = s.transpose_gamma();
        }
        s.label = rec.label.clone();
        Ok(s)
    }
}

pub fn to_json(s: &Scheme) -> String {
    serde_json::to_string_pretty(&SchemeRecord::from(s)).expect("scheme record serializes")
}

pub fn from_json(text: &str) -> Result<Scheme> {
    let rec: SchemeRecord = serde_json::from_str(text)?;
    Scheme::try_from(&rec)
}
