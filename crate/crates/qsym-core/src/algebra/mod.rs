//! Variables, monomials, the degree-lex order of the row-wise variable
//! ranking, exact rational polynomial arithmetic, the two involutions
//! (transpose and star) and the text format.

mod text;

pub use text::parse_polynomial;

use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Exact rational coefficient.
pub type Coefficient = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("size must be a positive integer")]
    InvalidSize,
    #[error("variable u[{row},{col}] out of range for n={n}")]
    IndexOutOfRange { row: u32, col: u32, n: u16 },
    #[error("mismatched sizes: n={0} vs n={1}")]
    SizeMismatch(u16, u16),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// Matrix dimension n of the magic unitary; the algebra has n² generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Size(u16);

impl Size {
    pub fn new(n: u16) -> Result<Self, AlgebraError> {
        if n == 0 {
            Err(AlgebraError::InvalidSize)
        } else {
            Ok(Size(n))
        }
    }

    pub fn get(self) -> u16 {
        self.0
    }

    pub fn var_count(self) -> u32 {
        u32::from(self.0) * u32::from(self.0)
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A single generator u[row,col], 1 ≤ row,col ≤ n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Variable {
    pub row: u16,
    pub col: u16,
}

impl Variable {
    pub fn new(row: u16, col: u16, n: Size) -> Result<Self, AlgebraError> {
        if row == 0 || col == 0 || row > n.get() || col > n.get() {
            Err(AlgebraError::IndexOutOfRange {
                row: u32::from(row),
                col: u32::from(col),
                n: n.get(),
            })
        } else {
            Ok(Variable { row, col })
        }
    }

    /// Row-wise rank in [1, n²]; a smaller rank is a greater variable.
    pub fn rank(self, n: Size) -> u32 {
        u32::from(self.row - 1) * u32::from(n.get()) + u32::from(self.col)
    }

    pub fn from_rank(rank: u32, n: Size) -> Self {
        debug_assert!(rank >= 1 && rank <= n.var_count());
        let n = u32::from(n.get());
        Variable {
            row: ((rank - 1) / n + 1) as u16,
            col: ((rank - 1) % n + 1) as u16,
        }
    }

    pub fn transpose(self) -> Self {
        Variable {
            row: self.col,
            col: self.row,
        }
    }
}

/// A word over the generators, stored as the sequence of variable ranks.
/// The empty word is the multiplicative unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_ranks(ranks: Vec<u32>) -> Self {
        Monomial(ranks)
    }

    pub fn from_vars(vars: &[(u16, u16)], n: Size) -> Result<Self, AlgebraError> {
        let mut ranks = Vec::with_capacity(vars.len());
        for &(row, col) in vars {
            ranks.push(Variable::new(row, col, n)?.rank(n));
        }
        Ok(Monomial(ranks))
    }

    pub fn ranks(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self, n: Size) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(move |&r| Variable::from_rank(r, n))
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut ranks = Vec::with_capacity(self.0.len() + other.0.len());
        ranks.extend_from_slice(&self.0);
        ranks.extend_from_slice(&other.0);
        Monomial(ranks)
    }

    pub fn transpose(&self, n: Size) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&r| Variable::from_rank(r, n).transpose().rank(n))
                .collect(),
        )
    }

    /// Word reversal (the monomial part of the star involution).
    pub fn reversed(&self) -> Monomial {
        let mut ranks = self.0.clone();
        ranks.reverse();
        Monomial(ranks)
    }
}

/// Degree first (longer is greater), then positionwise by rank with the
/// smaller rank winning. Total and multiplicative.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.0.len().cmp(&other.0.len()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().zip(other.0.iter()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn compare_monomials(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

/// Leftmost factorization w = a·v·b if v divides w; `None` otherwise.
pub fn find_division(v: &Monomial, w: &Monomial) -> Option<(Monomial, Monomial)> {
    let lv = v.0.len();
    if lv > w.0.len() {
        return None;
    }
    if lv == 0 {
        return Some((Monomial::one(), w.clone()));
    }
    let at = w.0.windows(lv).position(|win| win == v.0.as_slice())?;
    Some((
        Monomial(w.0[..at].to_vec()),
        Monomial(w.0[at + lv..].to_vec()),
    ))
}

/// Canonical sum of (nonzero coefficient, monomial) terms, strictly
/// descending in the monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: Size,
    terms: Vec<(Coefficient, Monomial)>,
}

impl Polynomial {
    pub fn zero(n: Size) -> Self {
        Polynomial {
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(n: Size, c: Coefficient) -> Self {
        Polynomial::from_terms(n, vec![(c, Monomial::one())])
    }

    pub fn one(n: Size) -> Self {
        Polynomial::constant(n, Coefficient::one())
    }

    pub fn monomial(n: Size, m: Monomial) -> Self {
        Polynomial {
            n,
            terms: vec![(Coefficient::one(), m)],
        }
    }

    pub fn variable(n: Size, row: u16, col: u16) -> Result<Self, AlgebraError> {
        Ok(Polynomial::monomial(n, Monomial::from_vars(&[(row, col)], n)?))
    }

    pub fn from_terms(n: Size, terms: Vec<(Coefficient, Monomial)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut canon: Vec<(Coefficient, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match canon.last_mut() {
                Some(last) if last.1 == m => last.0 += c,
                _ => canon.push((c, m)),
            }
        }
        canon.retain(|(c, _)| !c.is_zero());
        Polynomial { n, terms: canon }
    }

    pub fn size(&self) -> Size {
        self.n
    }

    pub fn terms(&self) -> &[(Coefficient, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn lc(&self) -> Option<&Coefficient> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn lt(&self) -> Option<(&Coefficient, &Monomial)> {
        self.terms.first().map(|(c, m)| (c, m))
    }

    fn check_size(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(AlgebraError::SizeMismatch(self.n.get(), other.n.get()))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_size(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].1.cmp(&other.terms[j].1) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].0 + &other.terms[j].0;
                    if !c.is_zero() {
                        terms.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_size(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                terms.push((c1 * c2, m1.concat(m2)));
            }
        }
        Ok(Polynomial::from_terms(self.n, terms))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(d, m)| (c * d, m.clone())).collect(),
        }
    }

    /// a·self·b. The order is multiplicative, so term order is preserved.
    pub fn bimul(&self, a: &Monomial, b: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (c.clone(), a.concat(m).concat(b)))
                .collect(),
        }
    }

    /// The polynomial without its leading term.
    pub fn without_leading(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    /// Scaled by 1/lc, so the leading coefficient becomes 1.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Applies the transposition involution u[i,j] ↦ u[j,i] letterwise.
    pub fn transpose(&self) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.transpose(self.n)))
                .collect(),
        )
    }

    /// The star involution: reverses every word, fixes letters and
    /// (rational) coefficients.
    pub fn star(&self) -> Polynomial {
        Polynomial::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.reversed()))
                .collect(),
        )
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("size mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("size mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("size mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, m: &Monomial, n: Size) -> fmt::Result {
    for (i, v) in m.vars(n).enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        write!(f, "u[{},{}]", v.row, v.col)?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write_word(f, m, self.n)?;
            } else {
                write!(f, "{}*", mag)?;
                write_word(f, m, self.n)?;
            }
        }
        Ok(())
    }
}

/// Canonical text form (the parseable grammar).
pub fn print_polynomial(p: &Polynomial) -> String {
    p.to_string()
}
