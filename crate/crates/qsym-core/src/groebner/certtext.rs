//! Text serialization of Gröbner certificates.
//!
//! ```text
//! target: <polynomial>
//! summand: <coeff> ; <left word or 1> ; <generator index> ; <right word or 1>
//! ```

use super::{CertSummand, GroebnerCertificate, GroebnerError};
use crate::algebra::{parse_polynomial, Coefficient, Monomial, Polynomial, Size};
use num::One;
use std::str::FromStr;

fn word_text(m: &Monomial, n: Size) -> String {
    Polynomial::monomial(n, m.clone()).to_string()
}

pub fn write_certificate(cert: &GroebnerCertificate) -> String {
    let n = cert.target.size();
    let mut out = format!("target: {}\n", cert.target);
    for s in &cert.summands {
        out.push_str(&format!(
            "summand: {} ; {} ; {} ; {}\n",
            s.coeff,
            word_text(&s.left, n),
            s.generator_index,
            word_text(&s.right, n),
        ));
    }
    out
}

fn parse_word(text: &str, n: Size, line: usize) -> Result<Monomial, GroebnerError> {
    let p = parse_polynomial(text, n)?;
    match p.terms() {
        [(c, m)] if c.is_one() => Ok(m.clone()),
        _ => Err(GroebnerError::Certificate {
            line,
            msg: format!("not a word: {text:?}"),
        }),
    }
}

pub fn parse_certificate(text: &str, n: Size) -> Result<GroebnerCertificate, GroebnerError> {
    let mut target = None;
    let mut summands = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("target:") {
            if target.is_some() {
                return Err(GroebnerError::Certificate {
                    line,
                    msg: "duplicate target".into(),
                });
            }
            target = Some(parse_polynomial(rest, n)?);
        } else if let Some(rest) = trimmed.strip_prefix("summand:") {
            let fields: Vec<&str> = rest.split(';').map(str::trim).collect();
            let [coeff, left, index, right] = fields.as_slice() else {
                return Err(GroebnerError::Certificate {
                    line,
                    msg: "expected 4 ';'-separated fields".into(),
                });
            };
            let coeff = Coefficient::from_str(coeff).map_err(|e| GroebnerError::Certificate {
                line,
                msg: format!("bad coefficient: {e}"),
            })?;
            let generator_index =
                usize::from_str(index).map_err(|e| GroebnerError::Certificate {
                    line,
                    msg: format!("bad generator index: {e}"),
                })?;
            summands.push(CertSummand {
                coeff,
                left: parse_word(left, n, line)?,
                generator_index,
                right: parse_word(right, n, line)?,
            });
        } else {
            return Err(GroebnerError::Certificate {
                line,
                msg: format!("unrecognized line: {trimmed:?}"),
            });
        }
    }
    let target = target.ok_or(GroebnerError::Certificate {
        line: 0,
        msg: "missing target".into(),
    })?;
    Ok(GroebnerCertificate { target, summands })
}
