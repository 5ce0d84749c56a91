//! The lemma battery: the overlap-reduction claims behind the closed-form
//! basis, checked by running the reduction engine.

use super::{make_relation, named_set, Family, NamedSet, RelationError};
use crate::algebra::{Polynomial, Size};
use crate::groebner::{
    enumerate_overlaps, normal_form, normal_form_with_strategy, overlap_relation,
    verify_certificate, Basis, OverlapKind, ReductionStrategy,
};
use rayon::prelude::*;
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct LemmaViolation {
    pub family: Family,
    pub indices: Vec<u16>,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct LemmaReport {
    pub n: u16,
    pub reductions_checked: usize,
    pub certificates_verified: usize,
    pub certificate_failures: usize,
    pub structural_failures: Vec<String>,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
            && self.structural_failures.is_empty()
            && self.certificate_failures == 0
    }
}

struct Outcome {
    violation: Option<LemmaViolation>,
    cert_ok: bool,
}

/// Checks that a reduction of the instance to zero exists: first with the
/// leftmost-longest divisor choice, then with the engine's basis-order
/// choice. (F_n is not itself a Gröbner
/// basis, so reaching zero can depend on the strategy.)
fn reduce_expect_zero(
    family: Family,
    indices: &[u16],
    basis: &Basis,
    basis_name: &str,
    n: Size,
) -> Outcome {
    let rel = make_relation(family, indices, n).expect("valid enumeration");
    let (nf, cert) = normal_form_with_strategy(&rel, basis, ReductionStrategy::LeftmostLongest, true);
    let (nf, cert) = if nf.is_zero() {
        (nf, cert)
    } else {
        normal_form(&rel, basis, true)
    };
    let cert_ok = verify_certificate(&cert.unwrap(), basis);
    let violation = (!nf.is_zero()).then(|| LemmaViolation {
        family,
        indices: indices.to_vec(),
        detail: format!("no reduction to zero modulo {basis_name} found; remainder {nf}"),
    });
    Outcome { violation, cert_ok }
}

/// All index tuples of the overlap families that reduce to zero modulo F_n.
/// Tuples whose construction references rwel₂₃ (absent from F_n) are not
/// overlaps within F_n and are skipped.
fn zero_family_tuples(n: Size) -> Vec<(Family, Vec<u16>)> {
    let m = n.get();
    let r = || 2..=m;
    let mut out: Vec<(Family, Vec<u16>)> = Vec::new();
    for a in r() {
        for b in r() {
            for c in r() {
                if a != b && b != c {
                    out.push((Family::Bg1, vec![a, b, c]));
                    if (b, c) != (2, 3) {
                        out.push((Family::Bg7, vec![a, b, c]));
                    }
                }
                if a != 2 && b != c && (b, c) != (2, 3) {
                    out.push((Family::Bg11, vec![a, b, c]));
                }
                if a != b && c != 3 && (a, b) != (2, 3) {
                    out.push((Family::Bg12, vec![a, b, c]));
                }
                if b != 2 && a != c {
                    out.push((Family::Bg13, vec![a, b, c]));
                }
                if a != b && c != 3 {
                    out.push((Family::Bg14, vec![a, b, c]));
                }
            }
        }
    }
    for a in r() {
        for b in r() {
            if a != 2 && a != b {
                out.push((Family::Bg3, vec![a, b]));
                out.push((Family::Bg5, vec![a, b]));
            }
            if b != 3 && a != b {
                out.push((Family::Bg4, vec![a, b]));
                out.push((Family::Bg6, vec![a, b]));
            }
            if a != 2 && b != 3 {
                out.push((Family::Bg9, vec![a, b]));
                out.push((Family::Bg10, vec![a, b]));
            }
        }
    }
    out
}

/// The instances excluded from B_n; they lie in I_n and must reduce to zero
/// modulo the full G_n.
fn deferred_tuples(n: Size) -> Vec<(Family, Vec<u16>)> {
    let m = n.get();
    let mut out: Vec<(Family, Vec<u16>)> = Vec::new();
    for i in 2..=m {
        if i != 3 {
            out.push((Family::Bg2, vec![2, 3, i]));
            out.push((Family::Bg8, vec![2, 3, i]));
        }
        if i != 2 {
            out.push((Family::Bg2, vec![i, 2, 3]));
            out.push((Family::Bg8, vec![i, 2, 3]));
        }
    }
    out.push((Family::Bg8, vec![2, 4, 3]));
    out
}

fn lm_word(p: &Polynomial) -> Vec<u32> {
    p.lm().unwrap().ranks().to_vec()
}

/// Runs the full overlap battery for one n: the zero families modulo F_n, the
/// reducedness of B_n modulo F_n, the deferred reductions modulo G_n, the
/// bg2/bg8 mutual overlaps, and the structural no-overlap claims.
pub fn lemma_reduction_suite(n: Size) -> Result<LemmaReport, RelationError> {
    let f_basis = super::reduced_generating_set(n)?;
    let g_basis = super::groebner_basis(n)?;
    let b_basis = named_set(NamedSet::B, n)?;
    let mut report = LemmaReport {
        n: n.get(),
        ..LemmaReport::default()
    };

    let zero_outcomes: Vec<Outcome> = zero_family_tuples(n)
        .par_iter()
        .map(|(fam, idx)| reduce_expect_zero(*fam, idx, &f_basis, "F_n", n))
        .collect();
    let deferred_outcomes: Vec<Outcome> = deferred_tuples(n)
        .par_iter()
        .map(|(fam, idx)| reduce_expect_zero(*fam, idx, &g_basis, "G_n", n))
        .collect();
    for o in zero_outcomes.into_iter().chain(deferred_outcomes) {
        report.reductions_checked += 1;
        report.certificates_verified += 1;
        if !o.cert_ok {
            report.certificate_failures += 1;
        }
        if let Some(v) = o.violation {
            report.violations.push(v);
        }
    }

    // Every B_n member is its own normal form modulo F_n.
    for p in b_basis.elements() {
        report.reductions_checked += 1;
        let (nf, _) = normal_form(p, &f_basis, false);
        if nf != *p {
            report
                .structural_failures
                .push(format!("B_n element with lm {} not in normal form modulo F_n", {
                    Polynomial::monomial(n, p.lm().unwrap().clone())
                }));
        }
    }

    // Classify the degree-3 elements of G_n by their raw leading monomials.
    let b_lms: HashSet<Vec<u32>> = b_basis.elements().iter().map(lm_word).collect();
    let bg2_lms: HashSet<Vec<u32>> = {
        let mut set = HashSet::new();
        for (fam, idx) in deferred_and_kept_bg2(n) {
            let _ = fam;
            set.insert(lm_word(&make_relation(Family::Bg2, &idx, n).unwrap().monic()));
        }
        set
    };
    let bg2_idx: Vec<usize> = (0..g_basis.len())
        .filter(|&i| bg2_lms.contains(&lm_word(&g_basis.elements()[i])))
        .collect();
    let bg8_idx: Vec<usize> = (0..g_basis.len())
        .filter(|&i| {
            let w = lm_word(&g_basis.elements()[i]);
            b_lms.contains(&w) && !bg2_lms.contains(&w)
        })
        .collect();
    let rwel_idx: Vec<usize> = (0..g_basis.len())
        .filter(|&i| {
            let p = &g_basis.elements()[i];
            let lm = p.lm().unwrap();
            lm.degree() == 2 && {
                let mut vars = lm.vars(n);
                let (x, y) = (vars.next().unwrap(), vars.next().unwrap());
                x.row == 2 && y.row == 3 && x.col >= 2 && y.col >= 2
            }
        })
        .collect();

    // Mutual overlaps among the degree-3 elements reduce to zero modulo G_n.
    let deg3: Vec<usize> = bg2_idx.iter().chain(&bg8_idx).copied().collect();
    let mutual: Vec<(usize, usize)> = deg3
        .iter()
        .flat_map(|&i| deg3.iter().map(move |&j| (i, j)))
        .collect();
    let mutual_outcomes: Vec<(usize, bool, Option<String>)> = mutual
        .par_iter()
        .map(|&(i, j)| {
            let mut checked = 0;
            let mut certs_ok = true;
            let mut failure = None;
            for task in enumerate_overlaps(&g_basis, i, j) {
                if task.discharged || task.kind == OverlapKind::OverlapRight {
                    continue;
                }
                checked += 1;
                let rel = overlap_relation(&task, &g_basis);
                if rel.is_zero() {
                    continue;
                }
                let (nf, cert) = normal_form(&rel, &g_basis, true);
                if !verify_certificate(&cert.unwrap(), &g_basis) {
                    certs_ok = false;
                }
                if !nf.is_zero() {
                    failure = Some(format!(
                        "bg2/bg8 mutual overlap ({i},{j}) fails to reduce modulo G_n"
                    ));
                }
            }
            (checked, certs_ok, failure)
        })
        .collect();
    for (checked, certs_ok, failure) in mutual_outcomes {
        report.reductions_checked += checked;
        report.certificates_verified += checked;
        if !certs_ok {
            report.certificate_failures += 1;
        }
        if let Some(f) = failure {
            report.structural_failures.push(f);
        }
    }

    // No proper self-overlaps within the bg2 type or within the bg8 type,
    // and none between bg8 and the rwel block.
    let expect_empty = |left: &[usize], right: &[usize], label: &str| -> Option<String> {
        for &i in left {
            for &j in right {
                let proper = enumerate_overlaps(&g_basis, i, j)
                    .into_iter()
                    .filter(|t| !t.discharged && t.kind != OverlapKind::OverlapRight)
                    .count();
                if proper > 0 {
                    return Some(format!("unexpected {label} overlap between {i} and {j}"));
                }
            }
        }
        None
    };
    for failure in [
        expect_empty(&bg2_idx, &bg2_idx, "bg2/bg2"),
        expect_empty(&bg8_idx, &bg8_idx, "bg8/bg8"),
        expect_empty(&bg8_idx, &rwel_idx, "bg8/rwel"),
        expect_empty(&rwel_idx, &bg8_idx, "rwel/bg8"),
    ]
    .into_iter()
    .flatten()
    {
        report.structural_failures.push(failure);
    }

    Ok(report)
}

/// The bg2 index tuples present in B_n (used to split B_n by type).
fn deferred_and_kept_bg2(n: Size) -> Vec<(Family, Vec<u16>)> {
    let m = n.get();
    let mut out = Vec::new();
    for a in 2..=m {
        for b in 2..=m {
            for c in 2..=m {
                if a != b && b != c && (a, b) != (2, 3) && (b, c) != (2, 3) {
                    out.push((Family::Bg2, vec![a, b, c]));
                }
            }
        }
    }
    out
}
