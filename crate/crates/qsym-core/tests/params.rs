use proptest::prelude::*;
use qsym_core::algebra::{Coefficient, Monomial, Polynomial, Size};
use qsym_core::params::{
    check_independence, coarse_pair_family, count_satisfying, decompose, linked_quad_family,
    linked_quad_products,
    parse_identity, phi_expand, quad_pair_family, row_column_sum_identity, row_column_sum_sides,
    rwel23_combination_identity, rwel23_combination_sides, verify_parametric_identity,
    write_identity, Conjunction, CoordRange, ParamCoefficient, PredicateElement, RangeSpec,
};

fn conj(text: &str, arity: u8) -> Conjunction {
    Conjunction::parse(text, arity).unwrap()
}

/// Brute-force |{x in [n]^k : p(x)}|.
fn brute_count(p: &Conjunction, n: u16) -> i64 {
    let k = usize::from(p.arity());
    let mut count = 0i64;
    let mut x = vec![1u16; k];
    loop {
        if p.satisfied(&x) {
            count += 1;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            if x[pos] < n {
                x[pos] += 1;
                break;
            }
            x[pos] = 1;
        }
        if k == 0 {
            return count;
        }
    }
}

/// Brute-force Φ-expansion, written independently of the library loop.
fn brute_expand(e: &PredicateElement, n: Size) -> Polynomial {
    let k = usize::from(e.arity());
    assert_eq!(k % 2, 0);
    let mut terms = Vec::new();
    let mut x = vec![1u16; k];
    'outer: loop {
        for (p, c) in e.terms() {
            if p.satisfied(&x) {
                let vars: Vec<(u16, u16)> = x.chunks(2).map(|w| (w[0], w[1])).collect();
                terms.push((
                    Coefficient::from_integer(c.eval(i64::from(n.get())).into()),
                    Monomial::from_vars(&vars, n).unwrap(),
                ));
            }
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            if x[pos] < n.get() {
                x[pos] += 1;
                break;
            }
            x[pos] = 1;
        }
        if k == 0 {
            break;
        }
    }
    Polynomial::from_terms(n, terms)
}

#[test]
fn atom_and_conjunction_parsing() {
    assert_eq!(conj("i1=2 & i3>=4 & i3!=i1", 4).to_string(), "i1=2 & i3>=4 & i3!=i1");
    assert_eq!(conj("any", 2).to_string(), "any");
    assert_eq!(conj("", 0).to_string(), "any");
    assert!(Conjunction::parse("i5=1", 4).is_err()); // coord out of range
    assert!(Conjunction::parse("i1!=i1", 2).is_err());
    assert!(Conjunction::parse("i1=0", 2).is_err()); // constants start at 1
    assert!(Conjunction::parse("i1<3", 2).is_err()); // vocabulary is =, >=, !=
}

#[test]
fn param_coefficient_arithmetic_and_text() {
    let p: ParamCoefficient = "n^2 - 2*n + 1".parse().unwrap();
    assert_eq!(p.eval(5), 16);
    assert_eq!(p.to_string(), "n^2 - 2*n + 1");
    assert_eq!(p.to_string().parse::<ParamCoefficient>().unwrap(), p);
    let q: ParamCoefficient = "-n".parse().unwrap();
    assert_eq!(p.mul(&q).to_string(), "-n^3 + 2*n^2 - n");
    assert_eq!(p.sub(&p), ParamCoefficient::zero());
    assert_eq!(ParamCoefficient::zero().to_string(), "0");
    assert!("n + + 1".parse::<ParamCoefficient>().is_err());
    assert!("".parse::<ParamCoefficient>().is_err());
}

#[test]
fn counting_matches_brute_force() {
    let cases = [
        ("i1>=2", 1u8),
        ("i1>=2 & i2>=2 & i1!=i2", 2),
        ("i1=3 & i2>=2 & i1!=i2", 2),
        ("i1>=4 & i3>=4 & i3!=i1 & i2=2", 4),
        ("i1>=2 & i2>=3 & i3>=2 & i1!=i2 & i2!=i3 & i1!=i3", 3),
        ("any", 3),
        ("i1=2 & i1>=3", 1), // unsatisfiable
    ];
    for (text, arity) in cases {
        let p = conj(text, arity);
        let (poly, n0) = count_satisfying(&p).unwrap();
        for n in n0..=n0 + 4 {
            assert_eq!(poly.eval(i64::from(n)), brute_count(&p, n), "{text} at n={n}");
        }
    }
    // every conjunction used by the shipped fixtures
    let identities = [rwel23_combination_identity().unwrap(), row_column_sum_identity().unwrap()];
    for identity in &identities {
        for grade in &identity.grades {
            for side in [&grade.lhs, &grade.rhs] {
                for p in side.support() {
                    let (poly, n0) = count_satisfying(&p).unwrap();
                    for n in n0..=n0 + 4 {
                        assert_eq!(poly.eval(i64::from(n)), brute_count(&p, n));
                    }
                }
            }
        }
    }
}

#[test]
fn independence_examples() {
    // disjoint value classes are independent
    assert!(check_independence(&coarse_pair_family(), 6).unwrap());
    assert!(check_independence(&quad_pair_family(), 8).unwrap());
    // the full product construction yields 400 conjunctions, but the linked
    // ≥4 classes duplicate the plain ones whenever the partner coordinate is
    // pinned below 4; only the 289 distinct predicates are independent
    let products = linked_quad_products();
    assert_eq!(products.len(), 400);
    assert!(!check_independence(&products, 10).unwrap());
    let quad = linked_quad_family();
    assert_eq!(quad.len(), 289);
    assert!(check_independence(&quad, 10).unwrap());
    // duplicates are dependent
    let mut dup = coarse_pair_family();
    dup.push(dup[0].clone());
    assert!(!check_independence(&dup, 6).unwrap());
    // the all-classes sum equals the unconstrained predicate
    let mut padded = quad_pair_family();
    padded.push(conj("any", 2));
    assert!(!check_independence(&padded, 8).unwrap());
    // too-small test size is rejected
    assert!(check_independence(&quad, 5).is_err());
}

#[test]
fn decompose_examples() {
    let quad = linked_quad_family();
    // the full cube is the sum of the 256 plain product classes
    let cube = RangeSpec::new(vec![CoordRange::from_to_n(1); 4], vec![]);
    let e = decompose(&cube, &quad).unwrap();
    assert_eq!(e.terms().count(), 256);
    assert!(e.terms().all(|(p, c)| {
        c == &ParamCoefficient::constant(1) && p.atoms().count() == 4
    }));
    // a constant beyond the family's granularity is not representable
    let fine = RangeSpec::new(
        vec![
            CoordRange::from_to_n(5),
            CoordRange::from_to_n(1),
            CoordRange::from_to_n(1),
            CoordRange::from_to_n(1),
        ],
        vec![],
    );
    assert!(decompose(&fine, &quad).is_err());
    // decompositions reproduce the range indicator after expansion
    let spec = RangeSpec::new(
        vec![
            CoordRange::from_to_n(2),
            CoordRange::exactly(2),
            CoordRange::from_to_n(2),
            CoordRange::from_to_n(3),
        ],
        vec![(3, 1)],
    );
    let e = decompose(&spec, &quad).unwrap();
    for nn in 4u16..=7 {
        let n = Size::new(nn).unwrap();
        let direct: Vec<_> = {
            let mut terms = Vec::new();
            for i1 in 2..=nn {
                for i3 in 2..=nn {
                    if i3 == i1 {
                        continue;
                    }
                    for i4 in 3..=nn {
                        terms.push((
                            Coefficient::from_integer(1.into()),
                            Monomial::from_vars(&[(i1, 2), (i3, i4)], n).unwrap(),
                        ));
                    }
                }
            }
            terms
        };
        assert_eq!(phi_expand(&e, n).unwrap(), Polynomial::from_terms(n, direct));
    }
}

#[test]
fn expansion_matches_brute_force_and_is_linear() {
    let identities = [rwel23_combination_identity().unwrap(), row_column_sum_identity().unwrap()];
    for identity in &identities {
        for grade in &identity.grades {
            for side in [&grade.lhs, &grade.rhs] {
                for nn in 4u16..=8 {
                    let n = Size::new(nn).unwrap();
                    assert_eq!(phi_expand(side, n).unwrap(), brute_expand(side, n));
                }
            }
        }
    }
}

fn arb_element() -> impl Strategy<Value = PredicateElement> {
    // combinations over the 16-class pair family with small ℤ[n] coefficients
    prop::collection::vec((0usize..16, prop::collection::vec(-3i64..=3, 1..3)), 0..5).prop_map(
        |terms| {
            let family = quad_pair_family();
            let mut e = PredicateElement::zero(2);
            for (idx, coeffs) in terms {
                e.add_term(ParamCoefficient::from_coeffs(coeffs), family[idx].clone())
                    .unwrap();
            }
            e
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phi_is_a_module_map(e in arb_element(), f in arb_element(), l in -3i64..=3, m in -3i64..=3) {
        let lam = ParamCoefficient::from_coeffs(vec![l, 1]); // l + n
        let mu = ParamCoefficient::constant(m);
        let combo = e.scale(&lam).add(&f.scale(&mu)).unwrap();
        for nn in 4u16..=6 {
            let n = Size::new(nn).unwrap();
            let lhs = phi_expand(&combo, n).unwrap();
            let le = phi_expand(&e, n).unwrap()
                .scale(&Coefficient::from_integer(lam.eval(i64::from(nn)).into()));
            let mf = phi_expand(&f, n).unwrap()
                .scale(&Coefficient::from_integer(mu.eval(i64::from(nn)).into()));
            prop_assert_eq!(lhs, &le + &mf);
        }
    }

    #[test]
    fn phi_is_injective_at_test_scale(e in arb_element()) {
        // over an independence-checked family, expansion at the test size
        // vanishes only for the zero element
        let n = Size::new(8).unwrap();
        let expanded = phi_expand(&e, n).unwrap();
        prop_assert_eq!(expanded.is_zero(), e.is_zero());
    }
}

#[test]
fn fixture_identities_verify_and_round_trip() {
    for (identity, samples) in [
        (rwel23_combination_identity().unwrap(), vec![4u16, 5, 6, 7, 8]),
        (row_column_sum_identity().unwrap(), vec![4, 5, 6]),
    ] {
        let report = verify_parametric_identity(&identity, &samples).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        let text = write_identity(&identity);
        assert_eq!(parse_identity(&text).unwrap(), identity);
    }
}

#[test]
fn shipped_fixture_files_match_the_generators() {
    let generated = [
        ("rwel23_combination.ident", write_identity(&rwel23_combination_identity().unwrap())),
        ("row_column_sums.ident", write_identity(&row_column_sum_identity().unwrap())),
    ];
    for (name, text) in generated {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(on_disk, text, "{name} is stale; regenerate it");
        let parsed = parse_identity(&on_disk).unwrap();
        assert!(verify_parametric_identity(&parsed, &[4, 5]).unwrap().ok());
    }
}

#[test]
fn perturbed_identities_fail_with_the_offender_named() {
    let mut identity = rwel23_combination_identity().unwrap();
    let grade = identity.grades.iter_mut().find(|g| g.arity == 4).unwrap();
    let victim = grade.lhs.support()[0].clone();
    grade
        .lhs
        .add_term(ParamCoefficient::constant(1), victim.clone())
        .unwrap();
    let report = verify_parametric_identity(&identity, &[4]).unwrap();
    assert!(!report.ok());
    assert!(report.failures.iter().any(|f| f.contains(&victim.to_string())));
}

#[test]
fn identities_match_direct_polynomial_construction() {
    for nn in 4u16..=7 {
        let n = Size::new(nn).unwrap();
        let (lhs, rhs) = rwel23_combination_sides(n).unwrap();
        assert_eq!(lhs, rhs);
        // the graded expansions reassemble the relation itself
        let identity = rwel23_combination_identity().unwrap();
        let mut total = Polynomial::zero(n);
        for grade in &identity.grades {
            total = &total + &phi_expand(&grade.lhs, n).unwrap();
        }
        assert_eq!(total, lhs);
        let (lhs, rhs) = row_column_sum_sides(n).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_parser_rejects_malformed_input() {
    assert!(parse_identity("grade 2\nlhs 1 | any\n").is_err()); // missing header
    assert!(parse_identity("identity x\nlhs 1 | any\n").is_err()); // term before grade
    assert!(parse_identity("identity x\ngrade 2\nlhs 1 & any\n").is_err()); // missing '|'
    assert!(parse_identity("identity x\ngrade 2\nlhs q | any\n").is_err()); // bad coefficient
    assert!(parse_identity("identity x\ngrade 2\nlhs 1 | i9=1\n").is_err()); // bad coord
    assert!(parse_identity("identity x\nnonsense\n").is_err());
}

#[test]
fn odd_arity_is_rejected_by_expansion() {
    let mut e = PredicateElement::zero(3);
    e.add_term(ParamCoefficient::constant(1), conj("any", 3)).unwrap();
    assert!(phi_expand(&e, Size::new(4).unwrap()).is_err());
}
