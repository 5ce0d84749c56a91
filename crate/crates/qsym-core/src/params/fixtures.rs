//! Built-in parametric identities: the rwel₂₃ linear combination over the
//! helper relations, and the row-sum/column-sum dependency. Both are
//! generated by decomposing range sums over a fixed product family of
//! predicates, so the coefficients are derived, not transcribed.

use super::{
    decompose, Conjunction, CoordRange, Identity, IdentityGrade, IndexAtom, ParamCoefficient,
    ParamError, PredicateElement, RangeSpec,
};
use crate::algebra::{Polynomial, Size};
use crate::relations::{make_relation, Family, RelationError};

fn eq(coord: u8, value: u16) -> IndexAtom {
    IndexAtom::EqConst { coord, value }
}

fn ge(coord: u8, value: u16) -> IndexAtom {
    IndexAtom::GeConst { coord, value }
}

fn neq(coord: u8, other: u8) -> IndexAtom {
    IndexAtom::NeqCoord { coord, other }
}

/// All conjunctions Λ p_t with one predicate per coordinate.
fn product_family(arity: u8, per_coord: &[Vec<Vec<IndexAtom>>]) -> Vec<Conjunction> {
    let mut out = vec![Vec::new()];
    for options in per_coord {
        out = out
            .iter()
            .flat_map(|prefix: &Vec<IndexAtom>| {
                options.iter().map(move |opt| {
                    let mut next = prefix.clone();
                    next.extend(opt.iter().copied());
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|atoms| Conjunction::new(arity, atoms).expect("valid product atoms"))
        .collect()
}

/// The full product family on [n]^4: value classes {1, 2, 3, ≥4} per
/// coordinate plus the linked classes i₃≥4 ∧ i₃≠i₁ and i₄≥4 ∧ i₄≠i₂,
/// 4·4·5·5 = 400 conjunctions. Not indicator-independent: whenever the
/// partner coordinate is pinned below 4 the ≠-link is implied, so the linked
/// class duplicates the plain ≥4 class (e.g. i₁=1 ∧ i₃≥4 ∧ i₃≠i₁ equals
/// i₁=1 ∧ i₃≥4 as a predicate).
pub fn linked_quad_products() -> Vec<Conjunction> {
    let base = |t: u8| -> Vec<Vec<IndexAtom>> {
        vec![vec![eq(t, 1)], vec![eq(t, 2)], vec![eq(t, 3)], vec![ge(t, 4)]]
    };
    let mut third = base(3);
    third.push(vec![ge(3, 4), neq(3, 1)]);
    let mut fourth = base(4);
    fourth.push(vec![ge(4, 4), neq(4, 2)]);
    product_family(4, &[base(1), base(2), third, fourth])
}

/// The distinct-indicator subfamily of [`linked_quad_products`]: the linked
/// ≥4 classes are kept only when the partner coordinate is itself in its ≥4
/// class, leaving 17·17 = 289 pairwise-distinct predicates that span the
/// same space. This is the family the degree-2 decompositions run over.
pub fn linked_quad_family() -> Vec<Conjunction> {
    let mut out = Vec::new();
    for o1 in 0..4u16 {
        for o2 in 0..4u16 {
            for o3 in 0..=if o1 == 3 { 4 } else { 3 } {
                for o4 in 0..=if o2 == 3 { 4 } else { 3 } {
                    let mut atoms = Vec::new();
                    for (coord, opt) in [(1u8, o1), (2, o2), (3, o3), (4, o4)] {
                        match opt {
                            0..=2 => atoms.push(eq(coord, opt + 1)),
                            3 => atoms.push(ge(coord, 4)),
                            _ => {
                                atoms.push(ge(coord, 4));
                                atoms.push(neq(coord, coord - 2));
                            }
                        }
                    }
                    out.push(Conjunction::new(4, atoms).expect("valid product atoms"));
                }
            }
        }
    }
    out
}

/// The 16-element product family on [n]^2 with value classes {1, 2, 3, ≥4}.
pub fn quad_pair_family() -> Vec<Conjunction> {
    let base = |t: u8| -> Vec<Vec<IndexAtom>> {
        vec![vec![eq(t, 1)], vec![eq(t, 2)], vec![eq(t, 3)], vec![ge(t, 4)]]
    };
    product_family(2, &[base(1), base(2)])
}

/// The 4-element product family on [n]^2 with value classes {1, ≥2}.
pub fn coarse_pair_family() -> Vec<Conjunction> {
    let base = |t: u8| -> Vec<Vec<IndexAtom>> { vec![vec![eq(t, 1)], vec![ge(t, 2)]] };
    product_family(2, &[base(1), base(2)])
}

fn at(v: u16) -> CoordRange {
    CoordRange::exactly(v)
}

fn from(lo: u16) -> CoordRange {
    CoordRange::from_to_n(lo)
}

fn r2(a: CoordRange, b: CoordRange) -> RangeSpec {
    RangeSpec::new(vec![a, b], vec![])
}

fn r4(a: CoordRange, b: CoordRange, c: CoordRange, d: CoordRange, links: &[(u8, u8)]) -> RangeSpec {
    RangeSpec::new(vec![a, b, c, d], links.to_vec())
}

fn combine(
    family: &[Conjunction],
    arity: u8,
    parts: &[(ParamCoefficient, RangeSpec)],
) -> Result<PredicateElement, ParamError> {
    let mut out = PredicateElement::zero(arity);
    for (coeff, spec) in parts {
        out = out.add(&decompose(spec, family)?.scale(coeff))?;
    }
    Ok(out)
}

fn constant_element(c: ParamCoefficient) -> PredicateElement {
    let mut e = PredicateElement::zero(0);
    if !c.is_zero() {
        e.add_term(c, Conjunction::new(0, []).unwrap()).unwrap();
    }
    e
}

/// The identity expressing rwel₂₃ as a combination of the other reduced
/// generators and the helper sums, grade by grade. The degree-2 grade lives
/// on [n]^4 over [`linked_quad_family`], the degree-1 grade on [n]^2 over
/// [`quad_pair_family`], and the degree-0 grade is scalar.
pub fn rwel23_combination_identity() -> Result<Identity, ParamError> {
    let one = ParamCoefficient::constant(1);
    let minus = ParamCoefficient::constant(-1);
    let nm2 = ParamCoefficient::from_coeffs(vec![-2, 1]);
    let nm3 = ParamCoefficient::from_coeffs(vec![-3, 1]);
    let nm1 = ParamCoefficient::from_coeffs(vec![-1, 1]);

    let quad = linked_quad_family();
    // Degree-2 part of rwel₂₃ itself.
    let lhs2 = combine(
        &quad,
        4,
        &[
            (one.clone(), r4(at(2), at(2), from(3), at(3), &[])),
            (minus.clone(), r4(from(3), at(2), at(1), at(3), &[])),
        ],
    )?;
    // Degree-2 parts of the right-hand summands, index sums rewritten as
    // range sums over (i₁,i₂,i₃,i₄) with the ≠-links made explicit.
    let l31 = [(3u8, 1u8)];
    let l42 = [(4u8, 2u8)];
    let l3142 = [(3u8, 1u8), (4u8, 2u8)];
    let rhs2 = combine(
        &quad,
        4,
        &[
            // + Σ rinjcs_i
            (one.clone(), r4(from(2), at(2), from(2), from(3), &l31)),
            (minus.clone(), r4(from(2), from(3), from(2), at(1), &l31)),
            // − Σ_{i≠3} rwelcs_i
            (minus.clone(), r4(at(2), from(2), from(3), at(2), &l42)),
            (minus.clone(), r4(at(2), from(2), from(3), from(4), &l42)),
            (one.clone(), r4(from(3), from(2), at(1), at(2), &l42)),
            (one.clone(), r4(from(3), from(2), at(1), from(4), &l42)),
            // − Σ_{i≥3} rcs_{i2}
            (minus.clone(), r4(from(3), at(2), from(1), from(3), &l31)),
            // + Σ_{j≥3} rrs_{2j}
            (one.clone(), r4(at(2), from(3), from(3), from(1), &l42)),
            // + Σ_{i,j≥3} (rrs_{ij} − rcs_{ij})
            (one.clone(), r4(from(3), from(3), from(2), from(1), &l3142)),
            (minus.clone(), r4(from(3), from(3), from(1), from(2), &l3142)),
            // − Σ_{i≥4} rwel_{i3}
            (minus.clone(), r4(at(2), from(4), from(3), at(3), &[])),
            (one.clone(), r4(from(3), from(4), at(1), at(3), &[])),
        ],
    )?;

    let pair = quad_pair_family();
    let lhs1 = combine(
        &pair,
        2,
        &[
            (one.clone(), r2(at(1), at(3))),
            (minus.clone(), r2(at(2), at(2))),
        ],
    )?;
    let rhs1 = combine(
        &pair,
        2,
        &[
            // + Σ rinjcs_i
            (nm2.clone(), r2(from(2), at(1))),
            (nm2.neg(), r2(from(2), at(2))),
            // − Σ_{i≠3} rwelcs_i
            (nm2.neg(), r2(at(1), at(2))),
            (nm2.neg(), r2(at(1), from(4))),
            (nm3.clone(), r2(at(2), at(2))),
            (nm3.clone(), r2(at(2), from(4))),
            (nm2.clone(), r2(at(2), at(3))),
            // − Σ_{i≥3} rcs_{i2}
            (nm2.clone(), r2(from(3), at(2))),
            // + Σ_{j≥3} rrs_{2j}
            (nm2.neg(), r2(at(2), from(3))),
            // − Σ_{i≥4} rwel_{i3}
            (nm3.neg(), r2(at(1), at(3))),
            (one.clone(), r2(at(2), from(4))),
            // − (n−2) Σ rs_i + (n−2) Σ cs_i
            (nm2.neg(), r2(from(2), from(1))),
            (nm2.clone(), r2(from(1), from(2))),
        ],
    )?;

    // Degree-0: only the scalar multiples of the sum relations contribute,
    // each Σ over i ∈ [2,n] carrying the constant −(n−1).
    let rhs0 = nm2.neg().mul(&nm1.neg()).add(&nm2.mul(&nm1.neg()));

    Ok(Identity {
        name: "rwel23-combination".into(),
        grades: vec![
            IdentityGrade {
                arity: 0,
                lhs: constant_element(ParamCoefficient::zero()),
                rhs: constant_element(rhs0),
            },
            IdentityGrade {
                arity: 2,
                lhs: lhs1,
                rhs: rhs1,
            },
            IdentityGrade {
                arity: 4,
                lhs: lhs2,
                rhs: rhs2,
            },
        ],
    })
}

/// The identity Σ_j cs_j − Σ_{i≥2} rs_i = rs₁, over the coarse {1, ≥2}
/// value-class family.
pub fn row_column_sum_identity() -> Result<Identity, ParamError> {
    let one = ParamCoefficient::constant(1);
    let minus = ParamCoefficient::constant(-1);
    let pair = coarse_pair_family();
    let lhs1 = combine(
        &pair,
        2,
        &[
            (one.clone(), r2(from(1), from(1))),
            (minus.clone(), r2(from(2), from(1))),
        ],
    )?;
    let rhs1 = combine(&pair, 2, &[(one.clone(), r2(at(1), from(1)))])?;
    // Constants: Σ_j cs_j gives −n, −Σ_{i≥2} rs_i gives n−1, rs₁ gives −1.
    let lhs0 = ParamCoefficient::from_coeffs(vec![0, -1])
        .add(&ParamCoefficient::from_coeffs(vec![-1, 1]));
    Ok(Identity {
        name: "row-column-sums".into(),
        grades: vec![
            IdentityGrade {
                arity: 0,
                lhs: constant_element(lhs0),
                rhs: constant_element(ParamCoefficient::constant(-1)),
            },
            IdentityGrade {
                arity: 2,
                lhs: lhs1,
                rhs: rhs1,
            },
        ],
    })
}

/// Both sides of the rwel₂₃ combination as concrete polynomials at a given
/// size, built directly from the relation constructors.
pub fn rwel23_combination_sides(n: Size) -> Result<(Polynomial, Polynomial), RelationError> {
    let m = n.get();
    let rel = |family, indices: &[u16]| make_relation(family, indices, n);
    let lhs = rel(Family::Rwel, &[2, 3])?;
    let mut rhs = Polynomial::zero(n);
    for i in 2..=m {
        rhs = &rhs + &rel(Family::Rinjcs, &[i])?;
        if i != 3 {
            rhs = &rhs - &rel(Family::Rwelcs, &[i])?;
        }
    }
    for i in 3..=m {
        rhs = &rhs - &rel(Family::Rcs, &[i, 2])?;
        rhs = &rhs + &rel(Family::Rrs, &[2, i])?;
    }
    for i in 3..=m {
        for j in 3..=m {
            rhs = &rhs + &rel(Family::Rrs, &[i, j])?;
            rhs = &rhs - &rel(Family::Rcs, &[i, j])?;
        }
    }
    for i in 4..=m {
        rhs = &rhs - &rel(Family::Rwel, &[i, 3])?;
    }
    let scale = Polynomial::constant(n, crate::algebra::Coefficient::from_integer((i64::from(m) - 2).into()));
    let mut sums = Polynomial::zero(n);
    for i in 2..=m {
        sums = &sums - &rel(Family::Rs, &[i])?;
        sums = &sums + &rel(Family::Cs, &[i])?;
    }
    rhs = &rhs + &(&scale * &sums);
    Ok((lhs, rhs))
}

/// Both sides of the row/column sum identity as concrete polynomials.
pub fn row_column_sum_sides(n: Size) -> Result<(Polynomial, Polynomial), RelationError> {
    let m = n.get();
    let mut lhs = Polynomial::zero(n);
    for j in 1..=m {
        lhs = &lhs + &make_relation(Family::Cs, &[j], n)?;
    }
    for i in 2..=m {
        lhs = &lhs - &make_relation(Family::Rs, &[i], n)?;
    }
    Ok((lhs, make_relation(Family::Rs, &[1], n)?))
}
