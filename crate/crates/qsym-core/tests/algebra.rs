use num::BigRational;
use proptest::prelude::*;
use qsym_core::algebra::{
    compare_monomials, find_division, parse_polynomial, Coefficient, Monomial, Polynomial, Size,
    Variable,
};
use std::cmp::Ordering;

fn n4() -> Size {
    Size::new(4).unwrap()
}

fn mono(vars: &[(u16, u16)]) -> Monomial {
    Monomial::from_vars(vars, n4()).unwrap()
}

fn poly(text: &str) -> Polynomial {
    parse_polynomial(text, n4()).unwrap()
}

#[test]
fn variable_rank_round_trip() {
    let n = n4();
    for row in 1..=4 {
        for col in 1..=4 {
            let v = Variable::new(row, col, n).unwrap();
            assert_eq!(Variable::from_rank(v.rank(n), n), v);
            assert_eq!(v.transpose(), Variable::new(col, row, n).unwrap());
        }
    }
    assert!(Variable::new(5, 1, n4()).is_err());
    assert!(Variable::new(0, 1, n4()).is_err());
}

#[test]
fn order_examples() {
    // longer words are greater
    assert_eq!(
        compare_monomials(&mono(&[(4, 4), (4, 4)]), &mono(&[(1, 1)])),
        Ordering::Greater
    );
    // same degree: the first position with a lower rank wins
    assert_eq!(
        compare_monomials(&mono(&[(1, 1), (4, 4)]), &mono(&[(1, 2), (1, 1)])),
        Ordering::Greater
    );
    // u11 is the greatest variable
    for row in 1..=4u16 {
        for col in 1..=4u16 {
            if (row, col) != (1, 1) {
                assert_eq!(
                    compare_monomials(&mono(&[(1, 1)]), &mono(&[(row, col)])),
                    Ordering::Greater
                );
            }
        }
    }
    assert_eq!(compare_monomials(&Monomial::one(), &Monomial::one()), Ordering::Equal);
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((1u16..=4, 1u16..=4), 0..5)
        .prop_map(|vars| Monomial::from_vars(&vars, Size::new(4).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn order_is_total_and_antisymmetric(a in arb_monomial(), b in arb_monomial()) {
        let ab = compare_monomials(&a, &b);
        let ba = compare_monomials(&b, &a);
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn order_is_transitive(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        let mut v = vec![a, b, c];
        v.sort_by(compare_monomials);
        prop_assert!(compare_monomials(&v[0], &v[1]) != Ordering::Greater);
        prop_assert!(compare_monomials(&v[1], &v[2]) != Ordering::Greater);
        prop_assert!(compare_monomials(&v[0], &v[2]) != Ordering::Greater);
    }

    #[test]
    fn order_is_multiplicative(a in arb_monomial(), b in arb_monomial(), l in arb_monomial(), r in arb_monomial()) {
        // v < w implies a·v·b < a·w·b: the admissibility the diamond lemma needs
        let ab = compare_monomials(&a, &b);
        let lar = l.concat(&a).concat(&r);
        let lbr = l.concat(&b).concat(&r);
        prop_assert_eq!(compare_monomials(&lar, &lbr), ab);
    }

    #[test]
    fn one_is_minimal(a in arb_monomial()) {
        prop_assert!(compare_monomials(&a, &Monomial::one()) != Ordering::Less);
    }

    #[test]
    fn division_is_leftmost_and_sound(v in arb_monomial(), w in arb_monomial()) {
        // find_division(v, w) factors w = a·v·b at the leftmost occurrence
        if let Some((a, b)) = find_division(&v, &w) {
            prop_assert_eq!(a.concat(&v).concat(&b), w.clone());
            for earlier in 0..a.degree() {
                let slice = &w.ranks()[earlier..earlier + v.degree()];
                prop_assert_ne!(slice, v.ranks());
            }
        } else {
            prop_assert!(w.degree() < v.degree() || (0..=w.degree() - v.degree())
                .all(|i| &w.ranks()[i..i + v.degree()] != v.ranks()));
        }
    }

    #[test]
    fn lm_of_product_is_product_of_lms(a in arb_monomial(), b in arb_monomial()) {
        let pa = Polynomial::monomial(Size::new(4).unwrap(), a.clone());
        let pb = Polynomial::monomial(Size::new(4).unwrap(), b.clone());
        let prod = pa.try_mul(&pb).unwrap();
        prop_assert_eq!(prod.lm().unwrap(), &a.concat(&b));
    }
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, arb_monomial()), 0..6).prop_map(|terms| {
        Polynomial::from_terms(
            Size::new(4).unwrap(),
            terms
                .into_iter()
                .map(|(c, m)| (Coefficient::from_integer(c.into()), m))
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero(p.size()));
    }

    #[test]
    fn involutions(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.star().star(), p.clone());
        // transpose is an algebra homomorphism; star is an anti-homomorphism
        prop_assert_eq!((&p * &q).transpose(), &p.transpose() * &q.transpose());
        prop_assert_eq!((&p * &q).star(), &q.star() * &p.star());
        prop_assert_eq!((&p + &q).star(), &p.star() + &q.star());
    }

    #[test]
    fn display_parse_round_trip(p in arb_poly()) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text, p.size()).unwrap(), p);
    }

    #[test]
    fn leading_term_dominates(p in arb_poly(), q in arb_poly()) {
        // lm(p·q) = lm(p)·lm(q) for nonzero p, q (no zero divisors)
        if !p.is_zero() && !q.is_zero() {
            let prod = &p * &q;
            prop_assert!(!prod.is_zero());
            prop_assert_eq!(prod.lm().unwrap(), &p.lm().unwrap().concat(q.lm().unwrap()));
        }
    }
}

#[test]
fn transpose_does_not_always_commute_with_lm() {
    // the standard counterexample: lm(u12 + u31) = u12 but
    // lm(transpose) = u13, not u21
    let p = poly("u[1,2] + u[3,1]");
    assert_eq!(p.lm().unwrap(), &mono(&[(1, 2)]));
    let t = p.transpose();
    assert_eq!(t.lm().unwrap(), &mono(&[(1, 3)]));
    assert_ne!(t.lm().unwrap(), &p.lm().unwrap().transpose(n4()));
}

#[test]
fn parser_fixtures() {
    assert_eq!(poly("0"), Polynomial::zero(n4()));
    assert_eq!(poly("-u[1,1]").to_string(), "-u[1,1]");
    assert_eq!(poly("2*u[1,1] - u[1,1]").to_string(), "u[1,1]");
    assert_eq!(poly("1/2 * u[2,3]*u[3,2] + 1/2*u[2,3]*u[3,2]").to_string(), "u[2,3]*u[3,2]");
    assert_eq!(poly("3 - 1 - 2").to_string(), "0");
    assert_eq!(
        poly(" u[1,2] \t* u[2,1]\n - 5/3 ").to_string(),
        "u[1,2]*u[2,1] - 5/3"
    );
    // coefficient 1 is suppressed, -1 folds into the sign
    assert_eq!(poly("-1*u[4,4] - 2*u[1,1]").to_string(), "-2*u[1,1] - u[4,4]");
}

#[test]
fn parser_rejects_bad_input() {
    for bad in [
        "u[5,1]",
        "u[0,2]",
        "u[1]",
        "u[1,2",
        "u[1,2]*",
        "+ + u[1,1]",
        "3//2",
        "x[1,1]",
        "",
    ] {
        assert!(parse_polynomial(bad, n4()).is_err(), "accepted {bad:?}");
    }
}

#[test]
fn display_orders_terms_descending() {
    let p = poly("u[4,4] + u[1,1]*u[1,1] + 7 + u[2,1]");
    assert_eq!(p.to_string(), "u[1,1]*u[1,1] + u[2,1] + u[4,4] + 7");
}

#[test]
fn scale_and_monic() {
    let p = poly("2*u[1,2] - 4");
    assert_eq!(p.monic().to_string(), "u[1,2] - 2");
    let half = Coefficient::from(BigRational::new(1.into(), 2.into()));
    assert_eq!(p.scale(&half).to_string(), "u[1,2] - 2");
}

#[test]
fn size_mismatch_is_rejected() {
    let p = poly("u[1,1]");
    let q = parse_polynomial("u[1,1]", Size::new(5).unwrap()).unwrap();
    assert!(p.try_add(&q).is_err());
    assert!(p.try_mul(&q).is_err());
}
