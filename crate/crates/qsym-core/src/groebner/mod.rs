//! Reduction to normal form, interreduction, overlap/division enumeration,
//! the Gröbner-basis checker and Buchberger completion, with certificate
//! logging and independent re-verification.

mod certtext;

pub use certtext::{parse_certificate, write_certificate};

use crate::algebra::{Coefficient, Monomial, Polynomial, Size};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("malformed certificate at line {line}: {msg}")]
    Certificate { line: usize, msg: String },
}

/// A deterministically ordered set of nonzero polynomials over one Size.
/// Elements are sorted by (leading monomial ascending, canonical text) and
/// deduplicated up to scalar multiples.
#[derive(Clone, Debug)]
pub struct Basis {
    n: Size,
    elements: Vec<Polynomial>,
    /// Leading-monomial word -> ascending element indices carrying that lm.
    lm_index: HashMap<Vec<u32>, Vec<usize>>,
    min_lm_len: usize,
    max_lm_len: usize,
}

impl Basis {
    pub fn new(n: Size, elements: Vec<Polynomial>) -> Basis {
        let mut elems: Vec<Polynomial> = elements.into_iter().filter(|p| !p.is_zero()).collect();
        for p in &elems {
            assert_eq!(p.size(), n, "basis element over wrong size");
        }
        elems.sort_by_cached_key(|p| (p.lm().unwrap().clone(), p.to_string()));
        // Scalar-multiple duplicates share a leading monomial, hence are
        // adjacent as a group after sorting.
        let mut kept: Vec<Polynomial> = Vec::with_capacity(elems.len());
        let mut group: Vec<Polynomial> = Vec::new();
        let mut group_lm: Option<Monomial> = None;
        for p in elems {
            let lm = p.lm().unwrap().clone();
            if group_lm.as_ref() != Some(&lm) {
                kept.append(&mut group);
                group_lm = Some(lm);
            }
            let monic = p.monic();
            if !group.iter().any(|q| q.monic() == monic) {
                group.push(p);
            }
        }
        kept.append(&mut group);
        let mut basis = Basis {
            n,
            elements: kept,
            lm_index: HashMap::new(),
            min_lm_len: usize::MAX,
            max_lm_len: 0,
        };
        for (i, p) in basis.elements.iter().enumerate() {
            let word = p.lm().unwrap().ranks().to_vec();
            basis.min_lm_len = basis.min_lm_len.min(word.len());
            basis.max_lm_len = basis.max_lm_len.max(word.len());
            basis.lm_index.entry(word).or_default().push(i);
        }
        basis
    }

    pub fn size(&self) -> Size {
        self.n
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    /// The first element (in basis order) whose lm divides `m`, together
    /// with the leftmost division position; `skip` excludes one element.
    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<(usize, usize)> {
        let word = m.ranks();
        if word.len() < self.min_lm_len {
            return None;
        }
        let mut best: Option<usize> = None;
        let max_len = self.max_lm_len.min(word.len());
        for len in self.min_lm_len..=max_len {
            for start in 0..=word.len() - len {
                if let Some(indices) = self.lm_index.get(&word[start..start + len]) {
                    for &i in indices {
                        if Some(i) != skip {
                            best = Some(best.map_or(i, |b: usize| b.min(i)));
                            break;
                        }
                    }
                }
            }
        }
        let gi = best?;
        let lm = self.elements[gi].lm().unwrap();
        let pos = word
            .windows(lm.degree())
            .position(|w| w == lm.ranks())
            .unwrap();
        Some((gi, pos))
    }

    /// The reducer at the leftmost division position, preferring the longest
    /// lm there (then basis order); the choice hand reductions typically make.
    fn find_reducer_leftmost(&self, m: &Monomial, skip: Option<usize>) -> Option<(usize, usize)> {
        let word = m.ranks();
        if word.len() < self.min_lm_len {
            return None;
        }
        let max_len = self.max_lm_len.min(word.len());
        for start in 0..word.len() {
            for len in (self.min_lm_len..=max_len.min(word.len() - start)).rev() {
                if let Some(indices) = self.lm_index.get(&word[start..start + len]) {
                    for &i in indices {
                        if Some(i) != skip {
                            return Some((i, start));
                        }
                    }
                }
            }
        }
        None
    }

    /// All (element, position) reduction candidates for `m`, excluding `skip`.
    fn all_reducers(&self, m: &Monomial, skip: Option<usize>) -> Vec<(usize, usize)> {
        let word = m.ranks();
        let mut out = Vec::new();
        if word.len() < self.min_lm_len {
            return out;
        }
        let max_len = self.max_lm_len.min(word.len());
        for len in self.min_lm_len..=max_len {
            for start in 0..=word.len() - len {
                if let Some(indices) = self.lm_index.get(&word[start..start + len]) {
                    for &i in indices {
                        if Some(i) != skip {
                            out.push((i, start));
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether any monomial of `p` is divisible by the lm of an element
    /// other than `skip`.
    fn reduces(&self, p: &Polynomial, skip: Option<usize>) -> bool {
        p.terms()
            .iter()
            .any(|(_, m)| self.find_reducer(m, skip).is_some())
    }
}

/// One summand of a Gröbner representation: coefficient · left · g · right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertSummand {
    pub coeff: Coefficient,
    pub left: Monomial,
    pub generator_index: usize,
    pub right: Monomial,
}

/// A logged Gröbner representation target = Σ cᵢ·aᵢ·gᵢ·bᵢ with the
/// leading-monomial bound lm(target) ≥ lm(aᵢ·lm(gᵢ)·bᵢ) per summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerCertificate {
    pub target: Polynomial,
    pub summands: Vec<CertSummand>,
}

/// Reduces `f` to its unique normal form modulo `g` (head reduction with
/// recursive tail reduction). The divisor is always the first basis element
/// whose lm divides, at the leftmost position. With `log`, the certificate
/// for f − result is returned.
pub fn normal_form(
    f: &Polynomial,
    g: &Basis,
    log: bool,
) -> (Polynomial, Option<GroebnerCertificate>) {
    normal_form_excluding(f, g, None, log, ReductionStrategy::BasisOrder)
}

/// Divisor-selection rule for the reduction loop. On a Gröbner basis both
/// strategies yield the same normal form; on a general basis they may reach
/// different irreducible results.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReductionStrategy {
    /// First basis element whose lm divides, at its leftmost position.
    BasisOrder,
    /// Leftmost division position, preferring the longest lm there.
    LeftmostLongest,
}

pub fn normal_form_with_strategy(
    f: &Polynomial,
    g: &Basis,
    strategy: ReductionStrategy,
    log: bool,
) -> (Polynomial, Option<GroebnerCertificate>) {
    normal_form_excluding(f, g, None, log, strategy)
}

fn normal_form_excluding(
    f: &Polynomial,
    g: &Basis,
    skip: Option<usize>,
    log: bool,
    strategy: ReductionStrategy,
) -> (Polynomial, Option<GroebnerCertificate>) {
    assert_eq!(f.size(), g.size(), "size mismatch");
    let mut done: Vec<(Coefficient, Monomial)> = Vec::new();
    let mut rest = f.clone();
    let mut summands = Vec::new();
    while let Some((c, m)) = rest.lt() {
        let reducer = match strategy {
            ReductionStrategy::BasisOrder => g.find_reducer(m, skip),
            ReductionStrategy::LeftmostLongest => g.find_reducer_leftmost(m, skip),
        };
        match reducer {
            Some((gi, pos)) => {
                let gp = &g.elements[gi];
                let glen = gp.lm().unwrap().degree();
                let a = Monomial::from_ranks(m.ranks()[..pos].to_vec());
                let b = Monomial::from_ranks(m.ranks()[pos + glen..].to_vec());
                let coeff = c / gp.lc().unwrap();
                let step = gp.bimul(&a, &b).scale(&coeff);
                if log {
                    summands.push(CertSummand {
                        coeff,
                        left: a,
                        generator_index: gi,
                        right: b,
                    });
                }
                rest = &rest - &step;
            }
            None => {
                done.push((c.clone(), m.clone()));
                rest = rest.without_leading();
            }
        }
    }
    let result = Polynomial::from_terms(f.size(), done);
    let cert = log.then(|| GroebnerCertificate {
        target: f - &result,
        summands,
    });
    (result, cert)
}

/// A reducer that picks a uniformly random divisor and position at every
/// step. On a Gröbner basis it must agree with `normal_form` (diamond
/// lemma); elsewhere it can exhibit distinct normal forms.
pub fn normal_form_randomized(f: &Polynomial, g: &Basis, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done: Vec<(Coefficient, Monomial)> = Vec::new();
    let mut rest = f.clone();
    while let Some((c, m)) = rest.lt() {
        let candidates = g.all_reducers(m, None);
        if candidates.is_empty() {
            done.push((c.clone(), m.clone()));
            rest = rest.without_leading();
            continue;
        }
        let (gi, pos) = candidates[rng.gen_range(0..candidates.len())];
        let gp = &g.elements[gi];
        let glen = gp.lm().unwrap().degree();
        let a = Monomial::from_ranks(m.ranks()[..pos].to_vec());
        let b = Monomial::from_ranks(m.ranks()[pos + glen..].to_vec());
        let step = gp.bimul(&a, &b).scale(&(c / gp.lc().unwrap()));
        rest = &rest - &step;
    }
    Polynomial::from_terms(f.size(), done)
}

/// Checks sum reconstruction and the per-summand leading-monomial bound.
pub fn verify_certificate(cert: &GroebnerCertificate, g: &Basis) -> bool {
    let n = g.size();
    if cert.target.size() != n {
        return false;
    }
    let mut sum = Polynomial::zero(n);
    for s in &cert.summands {
        let Some(gp) = g.elements.get(s.generator_index) else {
            return false;
        };
        let prod = gp.bimul(&s.left, &s.right).scale(&s.coeff);
        if !prod.is_zero() {
            let word = s.left.concat(gp.lm().unwrap()).concat(&s.right);
            match cert.target.lm() {
                Some(lm) if *lm >= word => {}
                _ => return false,
            }
        }
        sum = &sum + &prod;
    }
    sum == cert.target
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OverlapKind {
    /// lm(f)·a = b·lm(g) with 0 < len(a) ≤ len(lm(g)), 0 < len(b) ≤ len(lm(f)).
    OverlapLeft,
    /// a·lm(f) = lm(g)·b with the mirrored bounds.
    OverlapRight,
    /// a·lm(f)·b = lm(g), f ≠ g.
    Division,
}

#[derive(Clone, Debug)]
pub struct OverlapTask {
    pub kind: OverlapKind,
    pub f_index: usize,
    pub g_index: usize,
    pub a: Monomial,
    pub b: Monomial,
    /// Pure-concatenation boundary case whose relation is already a Gröbner
    /// representation; skipped by the checker unless strict checking is on.
    pub discharged: bool,
}

impl OverlapTask {
    /// The common word both halves of the relation rewrite.
    pub fn overlap_word(&self, g: &Basis) -> Monomial {
        let lm_g = g.elements[self.g_index].lm().unwrap();
        match self.kind {
            OverlapKind::OverlapLeft => self.b.concat(lm_g),
            OverlapKind::OverlapRight => lm_g.concat(&self.b),
            OverlapKind::Division => lm_g.clone(),
        }
    }
}

/// All overlap and division tasks of the ordered pair (i, j), including
/// self-overlaps when i = j. Concatenation-boundary tasks are returned with
/// `discharged = true`.
pub fn enumerate_overlaps(g: &Basis, i: usize, j: usize) -> Vec<OverlapTask> {
    let mut out = enumerate_left_and_divisions(g, i, j);
    // Right overlaps of (i, j) are the left overlaps of (j, i) with the
    // witnesses swapped.
    let lm_f = g.elements[i].lm().unwrap().ranks();
    let lm_g = g.elements[j].lm().unwrap().ranks();
    for shared in 0..lm_f.len().min(lm_g.len()) {
        if lm_g[lm_g.len() - shared..] == lm_f[..shared] {
            out.push(OverlapTask {
                kind: OverlapKind::OverlapRight,
                f_index: i,
                g_index: j,
                a: Monomial::from_ranks(lm_g[..lm_g.len() - shared].to_vec()),
                b: Monomial::from_ranks(lm_f[shared..].to_vec()),
                discharged: shared == 0,
            });
        }
    }
    out
}

/// Left overlaps and divisions of the ordered pair (i, j); over all ordered
/// pairs these cover every ambiguity exactly once.
fn enumerate_left_and_divisions(g: &Basis, i: usize, j: usize) -> Vec<OverlapTask> {
    let lm_f = g.elements[i].lm().unwrap().ranks();
    let lm_g = g.elements[j].lm().unwrap().ranks();
    let mut out = Vec::new();
    for shared in 0..lm_f.len().min(lm_g.len()) {
        if lm_f[lm_f.len() - shared..] == lm_g[..shared] {
            out.push(OverlapTask {
                kind: OverlapKind::OverlapLeft,
                f_index: i,
                g_index: j,
                a: Monomial::from_ranks(lm_g[shared..].to_vec()),
                b: Monomial::from_ranks(lm_f[..lm_f.len() - shared].to_vec()),
                discharged: shared == 0,
            });
        }
    }
    if i != j && lm_f.len() <= lm_g.len() {
        for start in 0..=lm_g.len() - lm_f.len() {
            if lm_g[start..start + lm_f.len()] == *lm_f {
                out.push(OverlapTask {
                    kind: OverlapKind::Division,
                    f_index: i,
                    g_index: j,
                    a: Monomial::from_ranks(lm_g[..start].to_vec()),
                    b: Monomial::from_ranks(lm_g[start + lm_f.len()..].to_vec()),
                    discharged: false,
                });
            }
        }
    }
    out
}

/// The S-polynomial analogue of a task: both sides rewrite the overlap word.
pub fn overlap_relation(task: &OverlapTask, g: &Basis) -> Polynomial {
    let f = &g.elements[task.f_index];
    let gp = &g.elements[task.g_index];
    let fm = f.scale(&f.lc().unwrap().recip());
    let gm = gp.scale(&gp.lc().unwrap().recip());
    let one = Monomial::one();
    match task.kind {
        OverlapKind::OverlapLeft => &fm.bimul(&one, &task.a) - &gm.bimul(&task.b, &one),
        OverlapKind::OverlapRight => &fm.bimul(&task.a, &one) - &gm.bimul(&one, &task.b),
        OverlapKind::Division => &fm.bimul(&task.a, &task.b) - &gm,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Check pure-concatenation boundary tasks as well.
    pub strict_concat: bool,
    /// Log a certificate for every reduction and re-verify it on the spot.
    pub verify_certificates: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            strict_concat: false,
            verify_certificates: false,
        }
    }
}

#[derive(Debug, Default)]
pub struct CheckReport {
    pub failures: Vec<OverlapTask>,
    pub tasks_checked: usize,
    pub certificates_verified: usize,
    pub certificate_failures: usize,
}

/// Runs the Buchberger criterion: every non-discharged overlap and division
/// relation must reduce to zero. Task reductions run concurrently.
pub fn check_basis(g: &Basis, cfg: &CheckConfig) -> CheckReport {
    let pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|i| (0..g.len()).map(move |j| (i, j)))
        .collect();
    let per_pair: Vec<(Vec<OverlapTask>, usize, usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut failures = Vec::new();
            let mut checked = 0;
            let mut verified = 0;
            let mut cert_failures = 0;
            for task in enumerate_left_and_divisions(g, i, j) {
                if task.discharged && !cfg.strict_concat {
                    continue;
                }
                let rel = overlap_relation(&task, g);
                if rel.is_zero() {
                    checked += 1;
                    continue;
                }
                let (nf, cert) = normal_form(&rel, g, cfg.verify_certificates);
                checked += 1;
                if let Some(cert) = cert {
                    verified += 1;
                    if !verify_certificate(&cert, g) {
                        cert_failures += 1;
                    }
                }
                if !nf.is_zero() {
                    failures.push(task);
                }
            }
            (failures, checked, verified, cert_failures)
        })
        .collect();
    let mut report = CheckReport::default();
    for (failures, checked, verified, cert_failures) in per_pair {
        report.failures.extend(failures);
        report.tasks_checked += checked;
        report.certificates_verified += verified;
        report.certificate_failures += cert_failures;
    }
    report
}

/// True iff `g` passes the Buchberger criterion; with `report`, the failing
/// tasks are returned as witnesses.
pub fn is_groebner(g: &Basis, report: bool) -> (bool, Vec<OverlapTask>) {
    let r = check_basis(g, &CheckConfig::default());
    let ok = r.failures.is_empty();
    (ok, if report { r.failures } else { Vec::new() })
}

/// Interreduction: replaces elements by their normal forms modulo the rest,
/// restarting after each replacement, until the set is tail-reduced; the
/// output is monic.
pub fn interreduce(f: &Basis) -> Basis {
    let n = f.size();
    let mut elems = f.elements.clone();
    loop {
        let b = Basis::new(n, elems);
        let mut replaced = None;
        for idx in 0..b.len() {
            if b.reduces(&b.elements[idx], Some(idx)) {
                let (nf, _) = normal_form_excluding(
                    &b.elements[idx],
                    &b,
                    Some(idx),
                    false,
                    ReductionStrategy::BasisOrder,
                );
                replaced = Some((idx, nf));
                break;
            }
        }
        match replaced {
            Some((idx, nf)) => {
                elems = b.into_elements();
                elems.swap_remove(idx);
                if !nf.is_zero() {
                    elems.push(nf);
                }
            }
            None => {
                return Basis::new(n, b.into_elements().iter().map(|p| p.monic()).collect());
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionConfig {
    /// Cap on the lm degree of admitted new elements.
    pub max_degree: Option<usize>,
    pub max_rounds: Option<usize>,
    pub discharge_concatenation_overlaps: bool,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_degree: None,
            max_rounds: None,
            discharge_concatenation_overlaps: true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompletionStatus {
    Completed,
    Capped,
}

/// Buchberger completion. On `Completed` the output is the unique monic
/// tail-reduced Gröbner basis of the input ideal. Tasks are processed in
/// ascending order of their overlap word; each round reduces against the
/// frozen round-start basis and interreduces the enlarged set.
pub fn buchberger(f: &Basis, cfg: &CompletionConfig) -> (Basis, CompletionStatus) {
    let n = f.size();
    let mut basis = interreduce(f);
    let mut capped = false;
    let mut round = 0;
    loop {
        round += 1;
        if let Some(max) = cfg.max_rounds {
            if round > max {
                return (basis, CompletionStatus::Capped);
            }
        }
        let mut tasks: Vec<OverlapTask> = (0..basis.len())
            .flat_map(|i| {
                (0..basis.len()).flat_map({
                    let basis = &basis;
                    move |j| enumerate_left_and_divisions(basis, i, j)
                })
            })
            .filter(|t| !(t.discharged && cfg.discharge_concatenation_overlaps))
            .collect();
        tasks.sort_by_cached_key(|t| {
            (
                t.overlap_word(&basis),
                t.f_index,
                t.g_index,
                t.kind as usize,
            )
        });
        let mut new_elems: Vec<Polynomial> = tasks
            .par_iter()
            .filter_map(|t| {
                let rel = overlap_relation(t, &basis);
                if rel.is_zero() {
                    return None;
                }
                let (nf, _) = normal_form(&rel, &basis, false);
                (!nf.is_zero()).then_some(nf)
            })
            .collect();
        if let Some(max_deg) = cfg.max_degree {
            let before = new_elems.len();
            new_elems.retain(|p| p.lm().unwrap().degree() <= max_deg);
            if new_elems.len() < before {
                capped = true;
            }
        }
        if new_elems.is_empty() {
            let status = if capped {
                CompletionStatus::Capped
            } else {
                CompletionStatus::Completed
            };
            return (basis, status);
        }
        let mut all = basis.into_elements();
        all.append(&mut new_elems);
        basis = interreduce(&Basis::new(n, all));
    }
}
