//! The predicate-module framework for n-parametric identities: index
//! predicates over [n]^k, formal ℤ[n]-combinations, the expansion map Φ to
//! concrete polynomials, indicator-independence checking, symbolic tuple
//! counting, and range-sum decomposition.

mod fixtures;
mod identity;
mod linalg;

pub use fixtures::*;
pub use identity::*;

use crate::algebra::{Coefficient, Monomial, Polynomial, Size};
use num::BigInt;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("coordinate {coord} out of range for arity {arity}")]
    BadCoord { coord: u8, arity: u8 },
    #[error("invalid atom: {0}")]
    BadAtom(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(u8, u8),
    #[error("Φ expansion requires even arity, got {0}")]
    OddArity(u8),
    #[error("test size {got} too small, need at least {required}")]
    NTooSmall { required: u16, got: u16 },
    #[error("range not representable over the given family: {0}")]
    NotRepresentable(String),
    #[error("too many inequality links for inclusion-exclusion: {0}")]
    TooManyLinks(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// One predicate atom on an index tuple: i_t = c, i_t ≥ c or i_t ≠ i_s.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IndexAtom {
    EqConst { coord: u8, value: u16 },
    GeConst { coord: u8, value: u16 },
    NeqCoord { coord: u8, other: u8 },
}

impl IndexAtom {
    fn check(&self, arity: u8) -> Result<(), ParamError> {
        let bad = |coord| ParamError::BadCoord { coord, arity };
        match *self {
            IndexAtom::EqConst { coord, value } | IndexAtom::GeConst { coord, value } => {
                if coord == 0 || coord > arity {
                    return Err(bad(coord));
                }
                if value == 0 {
                    return Err(ParamError::BadAtom("constants must be >= 1".into()));
                }
            }
            IndexAtom::NeqCoord { coord, other } => {
                if coord == 0 || coord > arity {
                    return Err(bad(coord));
                }
                if other == 0 || other > arity {
                    return Err(bad(other));
                }
                if coord == other {
                    return Err(ParamError::BadAtom("i != i is unsatisfiable".into()));
                }
            }
        }
        Ok(())
    }

    fn satisfied(&self, x: &[u16]) -> bool {
        match *self {
            IndexAtom::EqConst { coord, value } => x[usize::from(coord) - 1] == value,
            IndexAtom::GeConst { coord, value } => x[usize::from(coord) - 1] >= value,
            IndexAtom::NeqCoord { coord, other } => {
                x[usize::from(coord) - 1] != x[usize::from(other) - 1]
            }
        }
    }

    fn max_const(&self) -> u16 {
        match *self {
            IndexAtom::EqConst { value, .. } | IndexAtom::GeConst { value, .. } => value,
            IndexAtom::NeqCoord { .. } => 1,
        }
    }
}

impl fmt::Display for IndexAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IndexAtom::EqConst { coord, value } => write!(f, "i{coord}={value}"),
            IndexAtom::GeConst { coord, value } => write!(f, "i{coord}>={value}"),
            IndexAtom::NeqCoord { coord, other } => write!(f, "i{coord}!=i{other}"),
        }
    }
}

impl FromStr for IndexAtom {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParamError::BadAtom(s.to_string());
        let rest = s.trim().strip_prefix('i').ok_or_else(bad)?;
        if let Some((c, v)) = rest.split_once(">=") {
            return Ok(IndexAtom::GeConst {
                coord: c.trim().parse().map_err(|_| bad())?,
                value: v.trim().parse().map_err(|_| bad())?,
            });
        }
        if let Some((c, v)) = rest.split_once("!=") {
            let other = v.trim().strip_prefix('i').ok_or_else(bad)?;
            return Ok(IndexAtom::NeqCoord {
                coord: c.trim().parse().map_err(|_| bad())?,
                other: other.trim().parse().map_err(|_| bad())?,
            });
        }
        if let Some((c, v)) = rest.split_once('=') {
            return Ok(IndexAtom::EqConst {
                coord: c.trim().parse().map_err(|_| bad())?,
                value: v.trim().parse().map_err(|_| bad())?,
            });
        }
        Err(bad())
    }
}

/// A conjunction of atoms over index tuples of a fixed arity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Conjunction {
    arity: u8,
    atoms: BTreeSet<IndexAtom>,
}

impl Conjunction {
    pub fn new(arity: u8, atoms: impl IntoIterator<Item = IndexAtom>) -> Result<Self, ParamError> {
        let atoms: BTreeSet<IndexAtom> = atoms.into_iter().collect();
        for a in &atoms {
            a.check(arity)?;
        }
        Ok(Conjunction { arity, atoms })
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn atoms(&self) -> impl Iterator<Item = &IndexAtom> {
        self.atoms.iter()
    }

    pub fn satisfied(&self, x: &[u16]) -> bool {
        debug_assert_eq!(x.len(), usize::from(self.arity));
        self.atoms.iter().all(|a| a.satisfied(x))
    }

    pub fn max_const(&self) -> u16 {
        self.atoms.iter().map(IndexAtom::max_const).max().unwrap_or(1)
    }

    /// Conjunction of two conjunctions over disjoint-or-shared coordinates.
    pub fn and(&self, other: &Conjunction) -> Result<Conjunction, ParamError> {
        if self.arity != other.arity {
            return Err(ParamError::ArityMismatch(self.arity, other.arity));
        }
        Conjunction::new(self.arity, self.atoms.iter().chain(&other.atoms).copied())
    }

    pub fn parse(text: &str, arity: u8) -> Result<Self, ParamError> {
        let text = text.trim();
        if text.is_empty() || text == "any" {
            return Conjunction::new(arity, []);
        }
        let atoms: Result<Vec<IndexAtom>, ParamError> =
            text.split('&').map(|a| a.trim().parse()).collect();
        Conjunction::new(arity, atoms?)
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("any");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// An exact integer polynomial in the size parameter n (coefficients
/// ascending by power).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ParamCoefficient(Vec<i64>);

impl ParamCoefficient {
    pub fn zero() -> Self {
        ParamCoefficient(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        ParamCoefficient(vec![c]).normalized()
    }

    pub fn n() -> Self {
        ParamCoefficient(vec![0, 1])
    }

    pub fn from_coeffs(ascending: Vec<i64>) -> Self {
        ParamCoefficient(ascending).normalized()
    }

    fn normalized(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, n: i64) -> i64 {
        self.0.iter().rev().fold(0i64, |acc, &c| acc * n + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![0i64; len];
        for (i, v) in out.iter_mut().enumerate() {
            *v = self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0);
        }
        ParamCoefficient(out).normalized()
    }

    pub fn neg(&self) -> Self {
        ParamCoefficient(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ParamCoefficient(out).normalized()
    }
}

impl fmt::Display for ParamCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (pow, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match pow {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if pow == 1 {
                        f.write_str("n")?;
                    } else {
                        write!(f, "n^{pow}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ParamCoefficient {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ParamError::BadAtom(format!("bad coefficient {s:?}: {msg}"));
        let mut out = ParamCoefficient::zero();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            // term := [int '*'] 'n' ['^' int] | int
            let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let mut coeff = 1i64;
            let mut have_digits = false;
            if digits_end > 0 {
                coeff = rest[..digits_end].parse().map_err(|_| bad("bad integer"))?;
                have_digits = true;
                rest = rest[digits_end..].trim_start();
                if let Some(r) = rest.strip_prefix('*') {
                    rest = r.trim_start();
                }
            }
            let mut pow = 0usize;
            if let Some(r) = rest.strip_prefix('n') {
                rest = r.trim_start();
                pow = 1;
                if let Some(r) = rest.strip_prefix('^') {
                    let r = r.trim_start();
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    if end == 0 {
                        return Err(bad("missing exponent"));
                    }
                    pow = r[..end].parse().map_err(|_| bad("bad exponent"))?;
                    rest = r[end..].trim_start();
                }
            } else if !have_digits {
                return Err(bad("expected a term"));
            }
            let mut coeffs = vec![0i64; pow + 1];
            coeffs[pow] = sign * coeff;
            out = out.add(&ParamCoefficient::from_coeffs(coeffs));
            if rest.is_empty() {
                return Ok(out);
            }
            if let Some(r) = rest.strip_prefix('+') {
                sign = 1;
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r.trim_start();
            } else {
                return Err(bad("expected '+' or '-'"));
            }
        }
    }
}

/// A formal ℤ[n]-linear combination of predicate conjunctions of one arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredicateElement {
    arity: u8,
    terms: BTreeMap<Conjunction, ParamCoefficient>,
}

impl PredicateElement {
    pub fn zero(arity: u8) -> Self {
        PredicateElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Conjunction, &ParamCoefficient)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(
        &mut self,
        coeff: ParamCoefficient,
        conj: Conjunction,
    ) -> Result<(), ParamError> {
        if conj.arity() != self.arity {
            return Err(ParamError::ArityMismatch(conj.arity(), self.arity));
        }
        let entry = self.terms.entry(conj).or_default();
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            // remove the now-cancelled conjunction
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ParamError> {
        if self.arity != other.arity {
            return Err(ParamError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (conj, coeff) in &other.terms {
            out.add_term(coeff.clone(), conj.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ParamError> {
        self.add(&other.scale(&ParamCoefficient::constant(-1)))
    }

    pub fn scale(&self, c: &ParamCoefficient) -> Self {
        if c.is_zero() {
            return PredicateElement::zero(self.arity);
        }
        PredicateElement {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(p, d)| (p.clone(), c.mul(d)))
                .collect(),
        }
    }

    /// The conjunctions appearing with nonzero coefficient.
    pub fn support(&self) -> Vec<Conjunction> {
        self.terms.keys().cloned().collect()
    }
}

/// Iterates over all tuples in [n]^k.
fn for_each_tuple(n: u16, k: usize, mut f: impl FnMut(&[u16])) {
    let mut x = vec![1u16; k];
    loop {
        f(&x);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if x[pos] < n {
                x[pos] += 1;
                break;
            }
            x[pos] = 1;
        }
        if k == 0 {
            return;
        }
    }
}

/// Expands a predicate element at a concrete n: the sum over satisfying
/// tuples (i₁,…,i₂d) of c(n)·u[i₁,i₂]···u[i₂d₋₁,i₂d].
pub fn phi_expand(e: &PredicateElement, n: Size) -> Result<Polynomial, ParamError> {
    if e.arity % 2 != 0 {
        return Err(ParamError::OddArity(e.arity));
    }
    let k = usize::from(e.arity);
    let mut terms: Vec<(Coefficient, Monomial)> = Vec::new();
    for_each_tuple(n.get(), k, |x| {
        let mut total = 0i64;
        for (conj, coeff) in &e.terms {
            if conj.satisfied(x) {
                total += coeff.eval(i64::from(n.get()));
            }
        }
        if total != 0 {
            let vars: Vec<(u16, u16)> = x.chunks(2).map(|c| (c[0], c[1])).collect();
            let m = Monomial::from_vars(&vars, n).expect("tuple in range");
            terms.push((Coefficient::from(BigInt::from(total)), m));
        }
    });
    Ok(Polynomial::from_terms(n, terms))
}

fn family_arity(family: &[Conjunction]) -> Result<u8, ParamError> {
    let arity = family.first().map(|c| c.arity()).unwrap_or(0);
    for c in family {
        if c.arity() != arity {
            return Err(ParamError::ArityMismatch(c.arity(), arity));
        }
    }
    Ok(arity)
}

/// The distinct satisfaction patterns of the family over [big_n]^k, with an
/// optional extra indicator tracked per pattern.
fn indicator_patterns(
    family: &[Conjunction],
    big_n: u16,
    extra: Option<&dyn Fn(&[u16]) -> bool>,
) -> Result<Vec<(Vec<bool>, bool)>, ParamError> {
    let arity = family_arity(family)?;
    let mut seen: HashMap<Vec<bool>, bool> = HashMap::new();
    let mut order: Vec<Vec<bool>> = Vec::new();
    let mut conflict = None;
    for_each_tuple(big_n, usize::from(arity), |x| {
        let pattern: Vec<bool> = family.iter().map(|c| c.satisfied(x)).collect();
        let target = extra.map(|f| f(x)).unwrap_or(false);
        match seen.get(&pattern) {
            Some(&t) => {
                if t != target {
                    conflict = Some(x.to_vec());
                }
            }
            None => {
                seen.insert(pattern.clone(), target);
                order.push(pattern);
            }
        }
    });
    if let Some(x) = conflict {
        return Err(ParamError::NotRepresentable(format!(
            "tuples with equal family pattern disagree on the target (e.g. {x:?})"
        )));
    }
    Ok(order
        .into_iter()
        .map(|p| {
            let t = seen[&p];
            (p, t)
        })
        .collect())
}

/// True iff the indicator vectors of the conjunctions over [big_n]^k are
/// linearly independent over the rationals.
pub fn check_independence(family: &[Conjunction], big_n: u16) -> Result<bool, ParamError> {
    let arity = family_arity(family)?;
    let max_const = family.iter().map(Conjunction::max_const).max().unwrap_or(1);
    let required = max_const + u16::from(arity) + 2;
    if big_n < required {
        return Err(ParamError::NTooSmall {
            required,
            got: big_n,
        });
    }
    let patterns = indicator_patterns(family, big_n, None)?;
    let rows: Vec<Vec<u64>> = patterns
        .iter()
        .map(|(p, _)| p.iter().map(|&b| u64::from(b)).collect())
        .collect();
    // Indicator entries are 0/1, so any rational dependency is visible over
    // a large prime; two primes make a false dependency verdict vanishing.
    Ok(linalg::rank(&rows, linalg::P1) == family.len()
        || linalg::rank(&rows, linalg::P2) == family.len())
}

/// One coordinate range [lo, hi] where hi is a constant or n itself.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RangeBound {
    Const(u16),
    N,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoordRange {
    pub lo: u16,
    pub hi: RangeBound,
}

impl CoordRange {
    pub fn exactly(v: u16) -> Self {
        CoordRange {
            lo: v,
            hi: RangeBound::Const(v),
        }
    }

    pub fn from_to_n(lo: u16) -> Self {
        CoordRange {
            lo,
            hi: RangeBound::N,
        }
    }

    fn contains(&self, v: u16, n: u16) -> bool {
        v >= self.lo
            && match self.hi {
                RangeBound::Const(c) => v <= c,
                RangeBound::N => v <= n,
            }
    }

    fn max_const(&self) -> u16 {
        match self.hi {
            RangeBound::Const(c) => self.lo.max(c),
            RangeBound::N => self.lo,
        }
    }
}

/// A product of per-coordinate intervals with optional ≠-links between
/// coordinates; the shape in which bounded index sums naturally arrive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RangeSpec {
    pub ranges: Vec<CoordRange>,
    pub links: Vec<(u8, u8)>,
}

impl RangeSpec {
    pub fn new(ranges: Vec<CoordRange>, links: Vec<(u8, u8)>) -> Self {
        RangeSpec { ranges, links }
    }

    pub fn arity(&self) -> u8 {
        self.ranges.len() as u8
    }

    pub fn satisfied(&self, x: &[u16], n: u16) -> bool {
        self.ranges
            .iter()
            .zip(x)
            .all(|(r, &v)| r.contains(v, n))
            && self
                .links
                .iter()
                .all(|&(a, b)| x[usize::from(a) - 1] != x[usize::from(b) - 1])
    }

    fn max_const(&self) -> u16 {
        self.ranges
            .iter()
            .map(CoordRange::max_const)
            .max()
            .unwrap_or(1)
    }
}

/// Writes the indicator of a RangeSpec as an integer combination of family
/// conjunctions, verified exhaustively at the test size; errors if no exact
/// representation exists.
pub fn decompose(r: &RangeSpec, family: &[Conjunction]) -> Result<PredicateElement, ParamError> {
    let arity = family_arity(family)?;
    if r.arity() != arity {
        return Err(ParamError::ArityMismatch(r.arity(), arity));
    }
    let max_const = r
        .max_const()
        .max(family.iter().map(Conjunction::max_const).max().unwrap_or(1));
    let big_n = max_const + u16::from(arity) + 2;
    let target = |x: &[u16]| r.satisfied(x, big_n);
    let patterns = indicator_patterns(family, big_n, Some(&target))?;
    let rows: Vec<Vec<u64>> = patterns
        .iter()
        .map(|(p, _)| p.iter().map(|&b| u64::from(b)).collect())
        .collect();
    let rhs: Vec<u64> = patterns.iter().map(|(_, t)| u64::from(*t)).collect();
    let sol = linalg::solve(&rows, &rhs, linalg::P1)
        .ok_or_else(|| ParamError::NotRepresentable("no solution over the family".into()))?;
    let coeffs: Vec<i64> = sol.iter().map(|&c| linalg::lift(c, linalg::P1)).collect();
    // Exact integer verification of the lifted solution on every pattern.
    for (pattern, t) in &patterns {
        let sum: i64 = pattern
            .iter()
            .zip(&coeffs)
            .map(|(&b, &c)| if b { c } else { 0 })
            .sum();
        if sum != i64::from(*t) {
            return Err(ParamError::NotRepresentable(
                "lifted solution fails exact verification".into(),
            ));
        }
    }
    let mut out = PredicateElement::zero(arity);
    for (conj, &c) in family.iter().zip(&coeffs) {
        if c != 0 {
            out.add_term(ParamCoefficient::constant(c), conj.clone())?;
        }
    }
    Ok(out)
}

/// |{x ∈ [n]^k : p(x)}| as an exact polynomial in n, valid for all n ≥ n₀
/// (returned alongside), by inclusion-exclusion over the ≠-links.
pub fn count_satisfying(p: &Conjunction) -> Result<(ParamCoefficient, u16), ParamError> {
    let k = usize::from(p.arity());
    let mut eq: Vec<Option<u16>> = vec![None; k];
    let mut lo: Vec<u16> = vec![1; k];
    let mut links: Vec<(usize, usize)> = Vec::new();
    for atom in p.atoms() {
        match *atom {
            IndexAtom::EqConst { coord, value } => {
                let c = usize::from(coord) - 1;
                match eq[c] {
                    Some(v) if v != value => return Ok((ParamCoefficient::zero(), 1)),
                    _ => eq[c] = Some(value),
                }
            }
            IndexAtom::GeConst { coord, value } => {
                let c = usize::from(coord) - 1;
                lo[c] = lo[c].max(value);
            }
            IndexAtom::NeqCoord { coord, other } => {
                let (a, b) = (usize::from(coord) - 1, usize::from(other) - 1);
                let link = (a.min(b), a.max(b));
                if !links.contains(&link) {
                    links.push(link);
                }
            }
        }
    }
    if links.len() > 20 {
        return Err(ParamError::TooManyLinks(links.len()));
    }
    let n0 = p.max_const();
    let mut total = ParamCoefficient::zero();
    for subset in 0u32..(1 << links.len()) {
        // Merge the coordinates equated by this inclusion-exclusion term.
        let mut root: Vec<usize> = (0..k).collect();
        fn find(root: &mut Vec<usize>, mut a: usize) -> usize {
            while root[a] != a {
                root[a] = root[root[a]];
                a = root[a];
            }
            a
        }
        for (bit, &(a, b)) in links.iter().enumerate() {
            if subset & (1 << bit) != 0 {
                let (ra, rb) = (find(&mut root, a), find(&mut root, b));
                root[ra] = rb;
            }
        }
        let mut class_eq: HashMap<usize, Option<u16>> = HashMap::new();
        let mut class_lo: HashMap<usize, u16> = HashMap::new();
        let mut empty = false;
        for c in 0..k {
            let r = find(&mut root, c);
            let e = class_eq.entry(r).or_insert(None);
            if let Some(v) = eq[c] {
                match *e {
                    Some(w) if w != v => {
                        empty = true;
                    }
                    _ => *e = Some(v),
                }
            }
            let l = class_lo.entry(r).or_insert(1);
            *l = (*l).max(lo[c]);
        }
        if empty {
            continue;
        }
        let mut product = ParamCoefficient::constant(1);
        for (&r, &e) in &class_eq {
            let l = class_lo[&r];
            let factor = match e {
                Some(v) if v >= l => ParamCoefficient::constant(1),
                Some(_) => ParamCoefficient::zero(),
                // |[l, n]| = n − l + 1
                None => ParamCoefficient::from_coeffs(vec![1 - i64::from(l), 1]),
            };
            product = product.mul(&factor);
        }
        let sign = if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        total = total.add(&product.mul(&ParamCoefficient::constant(sign)));
    }
    Ok((total, n0.max(1)))
}
