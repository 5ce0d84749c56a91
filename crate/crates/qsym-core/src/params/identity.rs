//! Graded two-sided identities between predicate elements, their text
//! format, and the verification pipeline (family independence, coefficient
//! comparison, and concrete Φ-expansion at sample sizes).

use super::{check_independence, phi_expand, Conjunction, ParamCoefficient, ParamError, PredicateElement};
use crate::algebra::Size;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// One homogeneous grade: predicate elements of a fixed (even) arity 2d,
/// corresponding to the degree-d part of the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityGrade {
    pub arity: u8,
    pub lhs: PredicateElement,
    pub rhs: PredicateElement,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    pub name: String,
    pub grades: Vec<IdentityGrade>,
}

#[derive(Debug, Default)]
pub struct IdentityReport {
    pub independence_checked: usize,
    pub grades_compared: usize,
    pub expansions_compared: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies an identity: for every grade the union family of conjunctions is
/// indicator-independent (so coefficient comparison is meaningful), the two
/// sides agree coefficient-by-coefficient in ℤ[n], and Φ-expansion of both
/// sides agrees at every sample size.
pub fn verify_parametric_identity(
    identity: &Identity,
    samples: &[u16],
) -> Result<IdentityReport, ParamError> {
    let mut report = IdentityReport::default();
    for (gi, grade) in identity.grades.iter().enumerate() {
        if grade.lhs.arity() != grade.arity || grade.rhs.arity() != grade.arity {
            return Err(ParamError::ArityMismatch(grade.lhs.arity(), grade.arity));
        }
        let family: Vec<Conjunction> = {
            let mut set: BTreeSet<Conjunction> = grade.lhs.support().into_iter().collect();
            set.extend(grade.rhs.support());
            set.into_iter().collect()
        };
        if !family.is_empty() {
            let max_const = family.iter().map(Conjunction::max_const).max().unwrap_or(1);
            let big_n = max_const + u16::from(grade.arity) + 2;
            report.independence_checked += 1;
            if !check_independence(&family, big_n)? {
                report.failures.push(format!(
                    "grade {gi} (arity {}): conjunction family is linearly dependent",
                    grade.arity
                ));
                continue;
            }
        }
        report.grades_compared += 1;
        let diff = grade.lhs.sub(&grade.rhs)?;
        if !diff.is_zero() {
            for (conj, coeff) in diff.terms() {
                report.failures.push(format!(
                    "grade {gi} (arity {}): coefficient mismatch {coeff} at [{conj}]",
                    grade.arity
                ));
            }
        }
    }
    for &nn in samples {
        let n = Size::new(nn)?;
        for (gi, grade) in identity.grades.iter().enumerate() {
            report.expansions_compared += 1;
            let lhs = phi_expand(&grade.lhs, n)?;
            let rhs = phi_expand(&grade.rhs, n)?;
            if lhs != rhs {
                report.failures.push(format!(
                    "grade {gi}: expansions differ at n={nn}: ({}) vs ({})",
                    lhs, rhs
                ));
            }
        }
    }
    Ok(report)
}

fn write_side(out: &mut String, label: &str, side: &PredicateElement) {
    for (conj, coeff) in side.terms() {
        writeln!(out, "{label} {coeff} | {conj}").unwrap();
    }
}

/// Serializes an identity in the line-based text format read back by
/// [`parse_identity`].
pub fn write_identity(identity: &Identity) -> String {
    let mut out = String::new();
    writeln!(out, "identity {}", identity.name).unwrap();
    for grade in &identity.grades {
        writeln!(out, "grade {}", grade.arity).unwrap();
        write_side(&mut out, "lhs", &grade.lhs);
        write_side(&mut out, "rhs", &grade.rhs);
    }
    out
}

/// Parses the identity text format:
///
/// ```text
/// identity <name>
/// grade <arity>
/// lhs <coefficient> | <atom & atom & ...>
/// rhs <coefficient> | any
/// ...
/// ```
///
/// Coefficients are integer polynomials in n (`n^2 - 2*n + 1`); the
/// conjunction `any` is unconstrained. Blank lines and `#` comments are
/// ignored.
pub fn parse_identity(text: &str) -> Result<Identity, ParamError> {
    let mut name = None;
    let mut grades: Vec<IdentityGrade> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| ParamError::Parse {
            line: ln + 1,
            msg: msg.to_string(),
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("identity ") {
            if name.is_some() {
                return Err(err("duplicate identity header"));
            }
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("grade ") {
            let arity: u8 = rest.trim().parse().map_err(|_| err("bad arity"))?;
            grades.push(IdentityGrade {
                arity,
                lhs: PredicateElement::zero(arity),
                rhs: PredicateElement::zero(arity),
            });
        } else if line.starts_with("lhs ") || line.starts_with("rhs ") {
            let grade = grades.last_mut().ok_or_else(|| err("term before any grade line"))?;
            let (coeff_text, conj_text) = line[4..]
                .split_once('|')
                .ok_or_else(|| err("expected '<coefficient> | <conjunction>'"))?;
            let coeff: ParamCoefficient = coeff_text.trim().parse().map_err(|e| ParamError::Parse {
                line: ln + 1,
                msg: format!("{e}"),
            })?;
            let conj = Conjunction::parse(conj_text, grade.arity).map_err(|e| ParamError::Parse {
                line: ln + 1,
                msg: format!("{e}"),
            })?;
            let side = if line.starts_with("lhs") {
                &mut grade.lhs
            } else {
                &mut grade.rhs
            };
            side.add_term(coeff, conj)?;
        } else {
            return Err(err("unrecognized line"));
        }
    }
    Ok(Identity {
        name: name.ok_or(ParamError::Parse {
            line: 0,
            msg: "missing identity header".into(),
        })?,
        grades,
    })
}
