//! The named generating sets and the closed-form Gröbner basis.
//!
//! Raw enumerations follow the defining index conditions verbatim; the
//! canonical sets are their interreduced (monic, tail-reduced) forms, which
//! keep the same leading monomials and cardinalities because the raw sets
//! have pairwise indivisible leading monomials.

use super::{cs, inj, ip, rinj, rs, rwel, wel, RelationError};
use crate::algebra::{AlgebraError, Polynomial, Size};
use crate::groebner::{interreduce, normal_form, Basis};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NamedSet {
    /// F″_n: the 2n(n²+1) inhomogeneous generators of I_n.
    Fpp,
    /// F′_n: the reduced generating set before dropping rwel₂₃.
    Fp,
    /// F_n = F′_n ∖ {rwel₂₃}.
    F,
    /// B_n: the bg2/bg8 overlap relations that stay irreducible.
    B,
    /// G_n = F_n ⊔ B_n, the finite Gröbner basis.
    G,
}

impl NamedSet {
    pub const ALL: [NamedSet; 5] = [
        NamedSet::Fpp,
        NamedSet::Fp,
        NamedSet::F,
        NamedSet::B,
        NamedSet::G,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSet::Fpp => "Fpp",
            NamedSet::Fp => "Fp",
            NamedSet::F => "F",
            NamedSet::B => "B",
            NamedSet::G => "G",
        }
    }
}

impl fmt::Display for NamedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedSet::ALL
            .iter()
            .copied()
            .find(|w| w.name() == s)
            .ok_or_else(|| format!("unknown named set {s:?} (expected Fpp, Fp, F, B or G)"))
    }
}

fn require_set_size(n: Size) -> Result<(), RelationError> {
    if n.get() < 4 {
        Err(RelationError::SetSizeTooSmall(n.get()))
    } else {
        Ok(())
    }
}

/// F″_n as the indexed generator list: row/column sums plus, for every
/// (a,b,c) ∈ [n]³, the orthogonality relations u[a,b]u[c,b] − δ_{ac}u[a,b]
/// and u[a,b]u[a,c] − δ_{bc}u[a,b] (the degenerate entries are the
/// idempotent relations). 2n + 2n³ = 2n(n²+1) entries.
fn fpp_raw(n: Size) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for i in 1..=n.get() {
        out.push(rs(n, i));
        out.push(cs(n, i));
    }
    for a in 1..=n.get() {
        for b in 1..=n.get() {
            for c in 1..=n.get() {
                out.push(if a == c { ip(n, a, b) } else { inj(n, a, b, c) });
                out.push(if b == c { ip(n, a, b) } else { wel(n, a, b, c) });
            }
        }
    }
    out
}

/// F′_n, with `keep_rwel23 = false` giving F_n.
fn fp_raw(n: Size, keep_rwel23: bool) -> Vec<Polynomial> {
    let m = n.get();
    let mut out = vec![cs(n, 1)];
    for i in 2..=m {
        out.push(rs(n, i));
        out.push(cs(n, i));
    }
    for i in 2..=m {
        for j in 2..=m {
            out.push(ip(n, i, j));
        }
    }
    for a in 2..=m {
        for b in 2..=m {
            for c in 2..=m {
                if a != c {
                    out.push(inj(n, a, b, c));
                }
                if b != c {
                    out.push(wel(n, a, b, c));
                }
            }
        }
    }
    for j in 2..=m {
        for k in 2..=m {
            if j != k {
                out.push(rinj(n, j, k));
                if keep_rwel23 || (j, k) != (2, 3) {
                    out.push(rwel(n, j, k));
                }
            }
        }
    }
    out
}

/// B_n raw: bg2 and bg8 over (k,j,i) ∈ [2,n]³ with k≠j, j≠i, excluding
/// (k,j) = (2,3), (j,i) = (2,3), and for bg8 additionally (2,4,3).
fn b_raw(n: Size) -> Vec<Polynomial> {
    let m = n.get();
    let mut out = Vec::new();
    let valid = |a: u16, b: u16, c: u16| a != b && b != c && (a, b) != (2, 3) && (b, c) != (2, 3);
    for a in 2..=m {
        for b in 2..=m {
            for c in 2..=m {
                if valid(a, b, c) {
                    out.push(bg2_raw(n, a, b, c));
                }
            }
        }
    }
    for a in 2..=m {
        for b in 2..=m {
            for c in 2..=m {
                if valid(a, b, c) && (a, b, c) != (2, 4, 3) {
                    out.push(bg8_raw(n, a, b, c));
                }
            }
        }
    }
    out
}

fn bg2_raw(n: Size, a: u16, b: u16, c: u16) -> Polynomial {
    let ua2 = Polynomial::variable(n, a, 2).unwrap();
    let uc3 = Polynomial::variable(n, c, 3).unwrap();
    &(&ua2 * &inj(n, b, 3, c)) - &(&rinj(n, a, b) * &uc3)
}

fn bg8_raw(n: Size, a: u16, b: u16, c: u16) -> Polynomial {
    let u2a = Polynomial::variable(n, 2, a).unwrap();
    let u3c = Polynomial::variable(n, 3, c).unwrap();
    &(&u2a * &wel(n, 3, b, c)) - &(&rwel(n, a, b) * &u3c)
}

/// The raw (non-interreduced) enumeration of a named set, in a fixed
/// deterministic order. F″_n is a generator list and contains the two
/// idempotent copies per (a,b); the other sets are duplicate-free.
pub fn named_set_raw(which: NamedSet, n: Size) -> Result<Vec<Polynomial>, RelationError> {
    require_set_size(n)?;
    Ok(match which {
        NamedSet::Fpp => fpp_raw(n),
        NamedSet::Fp => fp_raw(n, true),
        NamedSet::F => fp_raw(n, false),
        NamedSet::B => b_raw(n),
        NamedSet::G => {
            let mut out = fp_raw(n, false);
            out.extend(b_raw(n));
            out
        }
    })
}

type SetCache = Mutex<HashMap<(u16, NamedSet), Arc<Basis>>>;

fn cache() -> &'static SetCache {
    static CACHE: OnceLock<SetCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn canonical(which: NamedSet, n: Size) -> Result<Arc<Basis>, RelationError> {
    require_set_size(n)?;
    if let Some(b) = cache().lock().unwrap().get(&(n.get(), which)) {
        return Ok(Arc::clone(b));
    }
    let basis = match which {
        NamedSet::Fpp | NamedSet::Fp => Basis::new(n, named_set_raw(which, n)?),
        NamedSet::F => interreduce(&Basis::new(n, named_set_raw(NamedSet::F, n)?)),
        NamedSet::G => interreduce(&Basis::new(n, named_set_raw(NamedSet::G, n)?)),
        NamedSet::B => {
            let g = canonical(NamedSet::G, n)?;
            let b_lms: HashSet<Vec<u32>> = b_raw(n)
                .iter()
                .map(|p| p.lm().unwrap().ranks().to_vec())
                .collect();
            Basis::new(
                n,
                g.elements()
                    .iter()
                    .filter(|p| b_lms.contains(p.lm().unwrap().ranks()))
                    .cloned()
                    .collect(),
            )
        }
    };
    let arc = Arc::new(basis);
    cache()
        .lock()
        .unwrap()
        .insert((n.get(), which), Arc::clone(&arc));
    Ok(arc)
}

/// The canonical (interreduced, monic) Basis of a named set. F″_n and F′_n
/// are returned as-is up to basis ordering and scalar deduplication.
pub fn named_set(which: NamedSet, n: Size) -> Result<Basis, RelationError> {
    canonical(which, n).map(|b| (*b).clone())
}

/// Cached handle to the canonical G_n.
pub fn groebner_basis(n: Size) -> Result<Arc<Basis>, RelationError> {
    canonical(NamedSet::G, n)
}

/// Cached handle to the canonical F_n.
pub fn reduced_generating_set(n: Size) -> Result<Arc<Basis>, RelationError> {
    canonical(NamedSet::F, n)
}

#[derive(Clone, Debug)]
pub struct WordProblemResult {
    pub equivalent: bool,
    pub lhs_nf: Polynomial,
    pub rhs_nf: Polynomial,
}

/// Decides equality of f and g in the quotient algebra via their normal
/// forms modulo G_n.
pub fn word_problem(
    f: &Polynomial,
    g: &Polynomial,
    n: Size,
) -> Result<WordProblemResult, RelationError> {
    if n.get() < 4 {
        return Err(RelationError::Unsupported(n.get()));
    }
    if f.size() != n {
        return Err(AlgebraError::SizeMismatch(f.size().get(), n.get()).into());
    }
    if g.size() != n {
        return Err(AlgebraError::SizeMismatch(g.size().get(), n.get()).into());
    }
    let basis = groebner_basis(n)?;
    let (lhs_nf, _) = normal_form(f, &basis, false);
    let (rhs_nf, _) = normal_form(g, &basis, false);
    let (diff_nf, _) = normal_form(&(f - g), &basis, false);
    debug_assert_eq!(diff_nf.is_zero(), lhs_nf == rhs_nf);
    Ok(WordProblemResult {
        equivalent: diff_nf.is_zero(),
        lhs_nf,
        rhs_nf,
    })
}

/// Verifies the defining identity of the reduced orthogonal relations,
/// rinj_{jk} = inj_{j1k} − rs_j·u[k,1] + u[j,2]·rs_k − inj_{j2k},
/// together with its transpose (the rwel identity), by exact arithmetic.
pub fn reduced_orthogonal_identity_check(j: u16, k: u16, n: Size) -> Result<bool, RelationError> {
    let lhs = super::make_relation(super::Family::Rinj, &[j, k], n)?;
    let uk1 = Polynomial::variable(n, k, 1)?;
    let uj2 = Polynomial::variable(n, j, 2)?;
    let rhs = &(&(&inj(n, j, 1, k) - &(&rs(n, j) * &uk1)) + &(&uj2 * &rs(n, k))) - &inj(n, j, 2, k);
    let ok_rinj = lhs == rhs;
    let ok_rwel = rwel(n, j, k) == lhs.transpose() && rwel(n, j, k) == rhs.transpose();
    Ok(ok_rinj && ok_rwel)
}
