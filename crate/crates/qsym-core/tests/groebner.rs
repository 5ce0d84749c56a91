use num::BigRational;
use proptest::prelude::*;
use qsym_core::algebra::{parse_polynomial, Coefficient, Monomial, Polynomial, Size};
use qsym_core::groebner::{
    buchberger, enumerate_overlaps, interreduce, is_groebner, normal_form, normal_form_randomized,
    parse_certificate, verify_certificate, write_certificate, Basis, CompletionConfig,
    CompletionStatus, OverlapKind,
};
use qsym_core::relations::{make_relation, named_set, Family, NamedSet};

fn n4() -> Size {
    Size::new(4).unwrap()
}

fn poly(text: &str) -> Polynomial {
    parse_polynomial(text, n4()).unwrap()
}

fn basis(texts: &[&str]) -> Basis {
    Basis::new(n4(), texts.iter().map(|t| poly(t)).collect())
}

#[test]
fn normal_form_examples() {
    // idempotent relation rewrites the square
    let g = basis(&["u[2,2]*u[2,2] - u[2,2]"]);
    let (nf, _) = normal_form(&poly("u[2,2]*u[2,2]"), &g, false);
    assert_eq!(nf, poly("u[2,2]"));
    // powers collapse in one basis
    let (nf, _) = normal_form(&poly("u[2,2]*u[2,2]*u[2,2]*u[2,2]"), &g, false);
    assert_eq!(nf, poly("u[2,2]"));
    // irreducible input is untouched
    let (nf, _) = normal_form(&poly("u[3,3]*u[2,2] + 5"), &g, false);
    assert_eq!(nf, poly("u[3,3]*u[2,2] + 5"));
    // zero reduces to zero
    let (nf, _) = normal_form(&Polynomial::zero(n4()), &g, false);
    assert!(nf.is_zero());
}

#[test]
fn normal_form_is_idempotent_mod_g4() {
    let g = named_set(NamedSet::G, n4()).unwrap();
    for text in [
        "u[2,2]*u[3,3]*u[4,4]",
        "u[1,1]*u[1,1] - 3*u[2,3]",
        "u[4,2]*u[4,3] + u[2,4]*u[3,1] - 1/2",
    ] {
        let (nf, _) = normal_form(&poly(text), &g, false);
        let (nf2, _) = normal_form(&nf, &g, false);
        assert_eq!(nf, nf2);
    }
}

#[test]
fn certificates_round_trip_and_verify() {
    let g = named_set(NamedSet::G, n4()).unwrap();
    let f = poly("u[2,2]*u[3,3]*u[2,2] - u[4,1]");
    let (nf, cert) = normal_form(&f, &g, true);
    let cert = cert.unwrap();
    assert!(verify_certificate(&cert, &g));
    assert_eq!(&f - &nf, cert.target);
    // byte-exact round trip through the text format
    let text = write_certificate(&cert);
    let parsed = parse_certificate(&text, n4()).unwrap();
    assert_eq!(parsed, cert);
    assert_eq!(write_certificate(&parsed), text);
}

#[test]
fn tampered_certificates_fail() {
    let g = named_set(NamedSet::G, n4()).unwrap();
    let f = poly("u[2,2]*u[2,3] + u[3,2]*u[3,2]");
    let (_, cert) = normal_form(&f, &g, true);
    let cert = cert.unwrap();
    assert!(verify_certificate(&cert, &g));

    let mut bad = cert.clone();
    bad.summands[0].coeff = &bad.summands[0].coeff + &Coefficient::from_integer(1.into());
    assert!(!verify_certificate(&bad, &g));

    let mut bad = cert.clone();
    bad.summands[0].generator_index = (bad.summands[0].generator_index + 1) % g.len();
    assert!(!verify_certificate(&bad, &g));

    let mut bad = cert.clone();
    bad.target = &bad.target + &poly("u[1,1]");
    assert!(!verify_certificate(&bad, &g));

    // violating the lm bound must fail even when the sum still reconstructs:
    // append a cancelling pair whose words exceed lm(target)
    let mut bad = cert.clone();
    let big = Monomial::from_vars(&[(1, 1), (1, 1), (1, 1), (1, 1)], n4()).unwrap();
    for sign in [1i64, -1] {
        bad.summands.push(qsym_core::groebner::CertSummand {
            coeff: Coefficient::from_integer(sign.into()),
            left: big.clone(),
            generator_index: 0,
            right: Monomial::one(),
        });
    }
    assert!(!verify_certificate(&bad, &g));
}

#[test]
fn interreduce_examples() {
    // scalar multiples collapse
    let out = interreduce(&basis(&["u[1,1]", "2*u[1,1]"]));
    assert_eq!(out.len(), 1);
    assert_eq!(out.elements()[0], poly("u[1,1]"));
    // ip(2,2) tail-reduces against u22 to u22^2, then head-reduces to zero?
    // no: u22 divides the lm u22^2, so ip is dropped entirely
    let out = interreduce(&basis(&["u[2,2]*u[2,2] - u[2,2]", "u[2,2]"]));
    assert_eq!(out.len(), 1);
    assert_eq!(out.elements()[0], poly("u[2,2]"));
    // output is monic
    let out = interreduce(&basis(&["3*u[1,2] - 6"]));
    assert_eq!(out.elements()[0], poly("u[1,2] - 2"));
    // tail reduction rewrites lower monomials
    let out = interreduce(&basis(&["u[1,2]*u[1,2] + u[2,1]", "u[2,1] - 1"]));
    assert_eq!(
        out.elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        vec!["u[2,1] - 1".to_string(), "u[1,2]*u[1,2] + 1".to_string()]
    );
}

#[test]
fn overlap_enumeration() {
    // u12*u21 and u21*u12 overlap in both directions
    let g = basis(&["u[1,2]*u[2,1]", "u[2,1]*u[1,2]"]);
    let tasks = enumerate_overlaps(&g, 0, 1);
    let proper: Vec<_> = tasks.iter().filter(|t| !t.discharged).collect();
    assert!(proper.iter().any(|t| t.kind == OverlapKind::OverlapLeft));
    assert!(proper.iter().any(|t| t.kind == OverlapKind::OverlapRight));
    // a word containing another as a factor yields a division task
    let g = basis(&["u[1,1]*u[2,2]*u[3,3]", "u[2,2]"]);
    let tasks = enumerate_overlaps(&g, 0, 1);
    assert!(tasks.iter().any(|t| t.kind == OverlapKind::Division && !t.discharged));
}

#[test]
fn monomial_ideal_is_groebner() {
    // pairwise-overlap-free monomials always form a Gröbner basis
    let g = basis(&["u[1,2]*u[3,4]", "u[2,1]*u[4,3]"]);
    assert!(is_groebner(&g, false).0);
    // overlapping monomials still reduce (S-polynomials vanish for monomials)
    let g = basis(&["u[1,2]*u[2,1]", "u[2,1]*u[1,2]"]);
    assert!(is_groebner(&g, false).0);
}

#[test]
fn commutator_pair_is_not_groebner() {
    // {xy - yx} in two noncommuting letters is famously non-confluent
    // within one degree cap but its overlaps do reduce; use instead a basis
    // with a genuinely irreducible overlap relation:
    let g = basis(&["u[1,2]*u[2,1] - u[1,1]", "u[2,1]*u[1,2] - u[2,2]"]);
    let (ok, failures) = is_groebner(&g, true);
    assert!(!ok);
    assert!(!failures.is_empty());
}

#[test]
fn buchberger_on_empty_and_trivial_inputs() {
    let (out, status) = buchberger(&Basis::new(n4(), vec![]), &CompletionConfig::default());
    assert_eq!(status, CompletionStatus::Completed);
    assert!(out.is_empty());
    let (out, status) = buchberger(&basis(&["u[1,1]"]), &CompletionConfig::default());
    assert_eq!(status, CompletionStatus::Completed);
    assert_eq!(out.len(), 1);
}

#[test]
fn buchberger_closes_an_inverse_pair() {
    // u12·u21 = 1 = u21·u12: the only overlap relation is already zero
    let input = basis(&["u[1,2]*u[2,1] - 1", "u[2,1]*u[1,2] - 1"]);
    let (out, status) = buchberger(&input, &CompletionConfig::default());
    assert_eq!(status, CompletionStatus::Completed);
    assert!(is_groebner(&out, false).0);
    assert_eq!(out.len(), 2);
}

#[test]
fn buchberger_caps_report_capped_status() {
    // {u12·u21 − u11, u21·u12 − u22} does not close at low degree: the cap
    // must be reported instead of looping
    let input = basis(&["u[1,2]*u[2,1] - u[1,1]", "u[2,1]*u[1,2] - u[2,2]"]);
    let cfg = CompletionConfig {
        max_rounds: Some(3),
        max_degree: Some(4),
        ..CompletionConfig::default()
    };
    let (_, status) = buchberger(&input, &cfg);
    assert_eq!(status, CompletionStatus::Capped);
}

#[test]
fn row_and_column_sums_complete_quickly() {
    let n = n4();
    let mut gens = Vec::new();
    for i in 1..=4 {
        gens.push(make_relation(Family::Rs, &[i], n).unwrap());
        gens.push(make_relation(Family::Cs, &[i], n).unwrap());
    }
    let (out, status) = buchberger(&Basis::new(n, gens), &CompletionConfig::default());
    assert_eq!(status, CompletionStatus::Completed);
    assert!(is_groebner(&out, false).0);
    // the sum relations alone stay degree 1
    assert!(out.elements().iter().all(|p| p.lm().unwrap().degree() == 1));
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (
            (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
            prop::collection::vec((1u16..=4, 1u16..=4), 0..=4),
        ),
        1..6,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            Size::new(4).unwrap(),
            terms
                .into_iter()
                .map(|(c, vars)| {
                    (
                        Coefficient::from(BigRational::from_integer(c.into())),
                        Monomial::from_vars(&vars, Size::new(4).unwrap()).unwrap(),
                    )
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn randomized_reduction_agrees_on_g4(f in arb_poly(), seed in any::<u64>()) {
        // G4 is a Gröbner basis, so the normal form is strategy-independent
        let g = named_set(NamedSet::G, Size::new(4).unwrap()).unwrap();
        let (det, _) = normal_form(&f, &g, false);
        let rand = normal_form_randomized(&f, &g, seed);
        prop_assert_eq!(det, rand);
    }

    #[test]
    fn normal_form_is_linear_mod_g4(f in arb_poly(), h in arb_poly()) {
        let g = named_set(NamedSet::G, Size::new(4).unwrap()).unwrap();
        let (nf_sum, _) = normal_form(&(&f + &h), &g, false);
        let (nf_f, _) = normal_form(&f, &g, false);
        let (nf_h, _) = normal_form(&h, &g, false);
        prop_assert_eq!(nf_sum, &nf_f + &nf_h);
    }
}
