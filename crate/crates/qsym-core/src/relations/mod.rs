//! The relation families of the quantum symmetric group: row/column sums,
//! idempotents, orthogonality, the reduced orthogonal relations, the
//! fourteen overlap families bg1..bg14, the helper sums, the named
//! generating sets F″_n ⊇ F′_n ⊇ F_n, the overlap set B_n, the closed-form
//! Gröbner basis G_n = F_n ⊔ B_n, and the word-problem decision procedure.

mod sets;
mod suite;

pub use sets::*;
pub use suite::*;

use crate::algebra::{AlgebraError, Coefficient, Monomial, Polynomial, Size};
use num::One;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RelationError {
    #[error("family {family} expects {expected} indices, got {got}")]
    Arity {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid indices {indices:?} for family {family}: {reason}")]
    InvalidIndices {
        family: &'static str,
        indices: Vec<u16>,
        reason: String,
    },
    #[error("family {family} requires n >= {min}, got {n}")]
    SizeTooSmall {
        family: &'static str,
        min: u16,
        n: u16,
    },
    #[error("named sets require n >= 4, got {0}")]
    SetSizeTooSmall(u16),
    #[error("the word problem is decided via G_n, which requires n >= 4 (got {0})")]
    Unsupported(u16),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    Rs,
    Cs,
    Ip,
    Inj,
    Wel,
    Rinj,
    Rwel,
    Bg1,
    Bg2,
    Bg3,
    Bg4,
    Bg5,
    Bg6,
    Bg7,
    Bg8,
    Bg9,
    Bg10,
    Bg11,
    Bg12,
    Bg13,
    Bg14,
    Rrs,
    Rcs,
    Rinjcs,
    Rwelcs,
}

impl Family {
    pub const ALL: [Family; 25] = [
        Family::Rs,
        Family::Cs,
        Family::Ip,
        Family::Inj,
        Family::Wel,
        Family::Rinj,
        Family::Rwel,
        Family::Bg1,
        Family::Bg2,
        Family::Bg3,
        Family::Bg4,
        Family::Bg5,
        Family::Bg6,
        Family::Bg7,
        Family::Bg8,
        Family::Bg9,
        Family::Bg10,
        Family::Bg11,
        Family::Bg12,
        Family::Bg13,
        Family::Bg14,
        Family::Rrs,
        Family::Rcs,
        Family::Rinjcs,
        Family::Rwelcs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rs => "rs",
            Family::Cs => "cs",
            Family::Ip => "ip",
            Family::Inj => "inj",
            Family::Wel => "wel",
            Family::Rinj => "rinj",
            Family::Rwel => "rwel",
            Family::Bg1 => "bg1",
            Family::Bg2 => "bg2",
            Family::Bg3 => "bg3",
            Family::Bg4 => "bg4",
            Family::Bg5 => "bg5",
            Family::Bg6 => "bg6",
            Family::Bg7 => "bg7",
            Family::Bg8 => "bg8",
            Family::Bg9 => "bg9",
            Family::Bg10 => "bg10",
            Family::Bg11 => "bg11",
            Family::Bg12 => "bg12",
            Family::Bg13 => "bg13",
            Family::Bg14 => "bg14",
            Family::Rrs => "rrs",
            Family::Rcs => "rcs",
            Family::Rinjcs => "rinjcs",
            Family::Rwelcs => "rwelcs",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Rs | Family::Cs | Family::Rinjcs | Family::Rwelcs => 1,
            Family::Ip
            | Family::Rinj
            | Family::Rwel
            | Family::Bg3
            | Family::Bg4
            | Family::Bg5
            | Family::Bg6
            | Family::Bg9
            | Family::Bg10
            | Family::Rrs
            | Family::Rcs => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown relation family {s:?}"))
    }
}

fn var(n: Size, row: u16, col: u16) -> Polynomial {
    Polynomial::variable(n, row, col).expect("validated index")
}

fn word(n: Size, letters: &[(u16, u16)]) -> Polynomial {
    Polynomial::monomial(n, Monomial::from_vars(letters, n).expect("validated index"))
}

fn invalid(family: Family, indices: &[u16], reason: &str) -> RelationError {
    RelationError::InvalidIndices {
        family: family.name(),
        indices: indices.to_vec(),
        reason: reason.to_string(),
    }
}

fn check_range(family: Family, indices: &[u16], lo: u16, n: Size) -> Result<(), RelationError> {
    for &i in indices {
        if i < lo || i > n.get() {
            return Err(invalid(
                family,
                indices,
                &format!("indices must lie in [{lo},{}]", n.get()),
            ));
        }
    }
    Ok(())
}

fn require_n(family: Family, min: u16, n: Size) -> Result<(), RelationError> {
    if n.get() < min {
        Err(RelationError::SizeTooSmall {
            family: family.name(),
            min,
            n: n.get(),
        })
    } else {
        Ok(())
    }
}

fn rs(n: Size, i: u16) -> Polynomial {
    let mut terms: Vec<(Coefficient, Monomial)> = (1..=n.get())
        .map(|a| {
            (
                Coefficient::one(),
                Monomial::from_vars(&[(i, a)], n).unwrap(),
            )
        })
        .collect();
    terms.push((-Coefficient::one(), Monomial::one()));
    Polynomial::from_terms(n, terms)
}

fn cs(n: Size, i: u16) -> Polynomial {
    rs(n, i).transpose()
}

fn ip(n: Size, i: u16, j: u16) -> Polynomial {
    &word(n, &[(i, j), (i, j)]) - &var(n, i, j)
}

/// inj(a,b,c) = u[a,b]·u[c,b], valid for a ≠ c.
fn inj(n: Size, a: u16, b: u16, c: u16) -> Polynomial {
    word(n, &[(a, b), (c, b)])
}

/// wel(a,b,c) = u[a,b]·u[a,c], valid for b ≠ c.
fn wel(n: Size, a: u16, b: u16, c: u16) -> Polynomial {
    word(n, &[(a, b), (a, c)])
}

/// rinj(j,k) = Σ_{α≥3} u[j,2]u[k,α] − Σ_{α≥3} u[j,α]u[k,1] + u[k,1] − u[j,2];
/// lm = u[j,2]u[k,3].
fn rinj(n: Size, j: u16, k: u16) -> Polynomial {
    let mut terms = Vec::new();
    for a in 3..=n.get() {
        terms.push((
            Coefficient::one(),
            Monomial::from_vars(&[(j, 2), (k, a)], n).unwrap(),
        ));
        terms.push((
            -Coefficient::one(),
            Monomial::from_vars(&[(j, a), (k, 1)], n).unwrap(),
        ));
    }
    terms.push((Coefficient::one(), Monomial::from_vars(&[(k, 1)], n).unwrap()));
    terms.push((
        -Coefficient::one(),
        Monomial::from_vars(&[(j, 2)], n).unwrap(),
    ));
    Polynomial::from_terms(n, terms)
}

/// rwel(j,k) = rinj(j,k)^×; lm = u[2,j]u[3,k].
fn rwel(n: Size, j: u16, k: u16) -> Polynomial {
    rinj(n, j, k).transpose()
}

fn rrs(n: Size, i: u16, j: u16) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for k in 2..=n.get() {
        if k == i {
            continue;
        }
        acc = &acc + &(&(&var(n, i, j) * &rs(n, k)) - &inj(n, i, j, k));
    }
    acc
}

fn rcs(n: Size, i: u16, j: u16) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for k in 2..=n.get() {
        if k == j {
            continue;
        }
        acc = &acc + &(&(&var(n, i, j) * &cs(n, k)) - &wel(n, i, j, k));
    }
    acc
}

fn rinjcs(n: Size, i: u16) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for a in 2..=n.get() {
        if a != i {
            acc = &acc + &rinj(n, a, i);
        }
    }
    acc
}

fn rwelcs(n: Size, i: u16) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for a in 2..=n.get() {
        if a != i {
            acc = &acc + &rwel(n, a, i);
        }
    }
    acc
}

/// Builds the exact polynomial of a family member after validating the
/// index tuple against the family's validity predicate.
pub fn make_relation(family: Family, indices: &[u16], n: Size) -> Result<Polynomial, RelationError> {
    if indices.len() != family.arity() {
        return Err(RelationError::Arity {
            family: family.name(),
            expected: family.arity(),
            got: indices.len(),
        });
    }
    let neq = |x: u16, y: u16, what: &str| -> Result<(), RelationError> {
        if x == y {
            Err(invalid(family, indices, what))
        } else {
            Ok(())
        }
    };
    match (family, indices) {
        (Family::Rs, &[i]) => {
            check_range(family, indices, 1, n)?;
            Ok(rs(n, i))
        }
        (Family::Cs, &[i]) => {
            check_range(family, indices, 1, n)?;
            Ok(cs(n, i))
        }
        (Family::Ip, &[i, j]) => {
            check_range(family, indices, 1, n)?;
            Ok(ip(n, i, j))
        }
        (Family::Inj, &[a, b, c]) => {
            check_range(family, indices, 1, n)?;
            neq(a, c, "first and third index must differ")?;
            Ok(inj(n, a, b, c))
        }
        (Family::Wel, &[a, b, c]) => {
            check_range(family, indices, 1, n)?;
            neq(b, c, "second and third index must differ")?;
            Ok(wel(n, a, b, c))
        }
        (Family::Rinj, &[j, k]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(j, k, "indices must differ")?;
            Ok(rinj(n, j, k))
        }
        (Family::Rwel, &[j, k]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(j, k, "indices must differ")?;
            Ok(rwel(n, j, k))
        }
        (Family::Bg1, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(b, c, "second and third index must differ")?;
            Ok(&(&inj(n, a, 2, b) * &var(n, c, 3)) - &(&var(n, a, 2) * &rinj(n, b, c)))
        }
        (Family::Bg2, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(b, c, "second and third index must differ")?;
            Ok(&(&var(n, a, 2) * &inj(n, b, 3, c)) - &(&rinj(n, a, b) * &var(n, c, 3)))
        }
        (Family::Bg3, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, 2, "first index must differ from 2")?;
            neq(a, b, "indices must differ")?;
            Ok(&(&ip(n, 2, a) * &var(n, 3, b)) - &(&var(n, 2, a) * &rwel(n, a, b)))
        }
        (Family::Bg4, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(b, 3, "second index must differ from 3")?;
            neq(a, b, "indices must differ")?;
            Ok(&(&var(n, 2, a) * &ip(n, 3, b)) - &(&rwel(n, a, b) * &var(n, 3, b)))
        }
        (Family::Bg5, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, 2, "first index must differ from 2")?;
            neq(a, b, "indices must differ")?;
            Ok(&(&ip(n, a, 2) * &var(n, b, 3)) - &(&var(n, a, 2) * &rinj(n, a, b)))
        }
        (Family::Bg6, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(b, 3, "second index must differ from 3")?;
            neq(a, b, "indices must differ")?;
            Ok(&(&var(n, a, 2) * &ip(n, b, 3)) - &(&rinj(n, a, b) * &var(n, b, 3)))
        }
        (Family::Bg7, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(b, c, "second and third index must differ")?;
            Ok(&(&wel(n, 2, a, b) * &var(n, 3, c)) - &(&var(n, 2, a) * &rwel(n, b, c)))
        }
        (Family::Bg8, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(b, c, "second and third index must differ")?;
            Ok(&(&var(n, 2, a) * &wel(n, 3, b, c)) - &(&rwel(n, a, b) * &var(n, 3, c)))
        }
        (Family::Bg9, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, 2, "first index must differ from 2")?;
            neq(b, 3, "second index must differ from 3")?;
            Ok(&(&rinj(n, a, 2) * &var(n, 3, b)) - &(&var(n, a, 2) * &rwel(n, 3, b)))
        }
        (Family::Bg10, &[a, b]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, 2, "first index must differ from 2")?;
            neq(b, 3, "second index must differ from 3")?;
            Ok(&(&var(n, 2, a) * &rinj(n, 3, b)) - &(&rwel(n, a, 2) * &var(n, b, 3)))
        }
        (Family::Bg11, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, 2, "first index must differ from 2")?;
            neq(b, c, "second and third index must differ")?;
            Ok(&(&inj(n, a, b, 2) * &var(n, 3, c)) - &(&word(n, &[(a, b)]) * &rwel(n, b, c)))
        }
        (Family::Bg12, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(c, 3, "third index must differ from 3")?;
            Ok(&(&var(n, 2, a) * &inj(n, 3, b, c)) - &(&rwel(n, a, b) * &var(n, c, b)))
        }
        (Family::Bg13, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(b, 2, "second index must differ from 2")?;
            neq(a, c, "first and third index must differ")?;
            Ok(&(&wel(n, a, b, 2) * &var(n, c, 3)) - &(&var(n, a, b) * &rinj(n, a, c)))
        }
        (Family::Bg14, &[a, b, c]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(a, b, "first and second index must differ")?;
            neq(c, 3, "third index must differ from 3")?;
            Ok(&(&var(n, a, 2) * &wel(n, b, 3, c)) - &(&rinj(n, a, b) * &var(n, b, c)))
        }
        (Family::Rrs, &[i, j]) => {
            check_range(family, indices, 2, n)?;
            Ok(rrs(n, i, j))
        }
        (Family::Rcs, &[i, j]) => {
            check_range(family, indices, 2, n)?;
            Ok(rcs(n, i, j))
        }
        (Family::Rinjcs, &[i]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            Ok(rinjcs(n, i))
        }
        (Family::Rwelcs, &[i]) => {
            require_n(family, 4, n)?;
            check_range(family, indices, 2, n)?;
            neq(i, 3, "index must differ from 3")?;
            Ok(rwelcs(n, i))
        }
        _ => unreachable!("arity checked above"),
    }
}
