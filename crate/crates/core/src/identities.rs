//! Explicit (non-recursive) polynomial solution families and their symbolic
//! verification.
//!
//! Sixteen families are built in: two for the 2x5-block square equation, six
//! for the curve `A x(x+d)(x+2d) = y(y+d)` over `Z[A, d]`, four for
//! `x(x+1)y(y+1) = z(z+1)(z+2)`, and four extra families of
//! `x(x+1)y(y+1)(y+2) = z(z+1)` that fall outside the recursive chain.
//! Negative-valued families are kept verbatim; a solution in the ring does
//! not require positivity.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::mpoly::MPoly;
use crate::pellfam::{verify_equation, Assignment, EquationId, PellError};

/// One hard-coded solution family of `equation`, given as polynomials over
/// the declared symbols (`t`, or `A` and `d` for the curve families).
#[derive(Clone, Debug)]
pub struct ExplicitFamily {
    pub equation: EquationId,
    pub assignment: Assignment,
}

impl ExplicitFamily {
    fn new(equation: EquationId, vars: Vec<(&str, MPoly)>) -> Self {
        ExplicitFamily {
            equation,
            assignment: Assignment::new(
                vars.into_iter().map(|(v, p)| (v.to_string(), p)).collect(),
            ),
        }
    }
}

/// The built-in families for one equation.
///
/// Supported ids: `eq25square` (2 families), `curveC` (6), `remark223` (4)
/// and `eq23triangle` (4 extras). Anything else is `UnknownEquation`.
pub fn explicit_families(eq: EquationId) -> Result<Vec<ExplicitFamily>, PellError> {
    let t = MPoly::var("t");
    match eq {
        EquationId::Eq25Square => {
            // x = 2t(t+1)(2t-1)(2t+3),  y = 4t^2+4t-3,
            // z = 2x(y+2)(2t+1)(2t^2+2t-1)
            let x1 = 2
                * &t
                * (&t + 1)
                * MPoly::univar("t", &[(1, 2), (0, -1)])
                * MPoly::univar("t", &[(1, 2), (0, 3)]);
            let y1 = MPoly::univar("t", &[(2, 4), (1, 4), (0, -3)]);
            let z1 = 2
                * &x1
                * (&y1 + 2)
                * MPoly::univar("t", &[(1, 2), (0, 1)])
                * MPoly::univar("t", &[(2, 2), (1, 2), (0, -1)]);

            // x = (2t^2+2t+1)(4t^2+4t+5),  y = (2t+1)^2,
            // z = 4x(y+2)(2t+1)(t^2+t+1)
            let x2 = MPoly::univar("t", &[(2, 2), (1, 2), (0, 1)])
                * MPoly::univar("t", &[(2, 4), (1, 4), (0, 5)]);
            let y2 = MPoly::univar("t", &[(1, 2), (0, 1)]).pow(2);
            let z2 = 4
                * &x2
                * (&y2 + 2)
                * MPoly::univar("t", &[(1, 2), (0, 1)])
                * MPoly::univar("t", &[(2, 1), (1, 1), (0, 1)]);

            Ok(vec![
                ExplicitFamily::new(eq, vec![("x", x1), ("y", y1), ("z", z1)]),
                ExplicitFamily::new(eq, vec![("x", x2), ("y", y2), ("z", z2)]),
            ])
        }
        EquationId::CurveC => {
            let a = MPoly::var("A");
            let d = MPoly::var("d");
            let ad2 = &a * &d * &d; // A d^2
            let a2d3 = &a * &a * &d.pow(3); // A^2 d^3
            let ad2_6 = 6 * &a * &d * &d; // 6 A d^2
            let rows: Vec<(MPoly, MPoly)> = vec![
                (&ad2 - &d, -&a2d3),
                (&ad2 - &d, &a2d3 - &d),
                (4 * &ad2 + &d, 8 * &a2d3 + &ad2_6),
                (4 * &ad2 + &d, -(8 * &a2d3) - &ad2_6 - &d),
                (4 * &ad2 - 3 * &d, 8 * &a2d3 - &ad2_6),
                (4 * &ad2 - 3 * &d, -(8 * &a2d3) + &ad2_6 - &d),
            ];
            Ok(rows
                .into_iter()
                .map(|(x, y)| ExplicitFamily::new(eq, vec![("x", x), ("y", y)]))
                .collect())
        }
        EquationId::Remark223 => {
            let rows: Vec<(MPoly, MPoly, MPoly)> = vec![
                (
                    t.clone(),
                    MPoly::univar("t", &[(2, 1), (1, 1), (0, -2)]),
                    (&t - 1) * (&t + 2),
                ),
                (
                    t.clone(),
                    MPoly::univar("t", &[(2, 1), (1, 1), (0, 1)]),
                    &t * (&t + 1),
                ),
                (
                    MPoly::univar("t", &[(1, 8), (0, 3)]),
                    MPoly::univar("t", &[(2, 8), (1, 7), (0, 1)]),
                    2 * MPoly::univar("t", &[(2, 8), (1, 7), (0, 1)]),
                ),
                (
                    MPoly::univar("t", &[(1, 8), (0, 4)]),
                    MPoly::univar("t", &[(2, 8), (1, 9), (0, 2)]),
                    2 * MPoly::univar("t", &[(2, 8), (1, 9), (0, 2)]),
                ),
            ];
            Ok(rows
                .into_iter()
                .map(|(x, y, z)| ExplicitFamily::new(eq, vec![("x", x), ("y", y), ("z", z)]))
                .collect())
        }
        EquationId::Eq23Triangle => {
            // Solutions not contained in the recursive family.
            let tt1 = &t * (&t + 1); // t(t+1)
            let rows: Vec<(MPoly, MPoly, MPoly)> = vec![
                (
                    t.clone(),
                    MPoly::univar("t", &[(2, 1), (1, 1), (0, -1)]),
                    MPoly::univar("t", &[(2, 1), (1, 1), (0, -1)])
                        * MPoly::univar("t", &[(2, 1), (1, 1), (0, 1)]),
                ),
                (
                    t.clone(),
                    MPoly::univar("t", &[(1, 2), (0, 1)]).pow(2) - 4,
                    2 * &tt1
                        * MPoly::univar("t", &[(1, 2), (0, -1)])
                        * MPoly::univar("t", &[(1, 2), (0, 3)]),
                ),
                (
                    t.clone(),
                    MPoly::univar("t", &[(1, 2), (0, 1)]).pow(2),
                    2 * &tt1 * MPoly::univar("t", &[(2, 4), (1, 4), (0, 3)]),
                ),
                (
                    &t * MPoly::univar("t", &[(3, 8), (1, -6), (0, -1)]),
                    MPoly::univar("t", &[(2, 4), (0, -3)]),
                    MPoly::univar("t", &[(1, 2), (0, -1)])
                        * MPoly::univar("t", &[(1, 2), (0, 1)])
                        * MPoly::univar("t", &[(2, 2), (0, -1)])
                        * MPoly::univar("t", &[(3, 8), (1, -6), (0, -1)]),
                ),
            ];
            Ok(rows
                .into_iter()
                .map(|(x, y, z)| ExplicitFamily::new(eq, vec![("x", x), ("y", y), ("z", z)]))
                .collect())
        }
        other => Err(PellError::UnknownEquation(other.as_str().to_string())),
    }
}

/// Every built-in explicit family, flattened.
pub fn all_explicit_families() -> Vec<ExplicitFamily> {
    let mut out = Vec::new();
    for eq in [
        EquationId::Eq25Square,
        EquationId::CurveC,
        EquationId::Remark223,
        EquationId::Eq23Triangle,
    ] {
        out.extend(explicit_families(eq).expect("built-in equation"));
    }
    out
}

/// Symbolic verification: true iff `lhs - rhs` vanishes identically.
pub fn verify_family(fam: &ExplicitFamily) -> bool {
    verify_equation(fam.equation, &fam.assignment)
}

/// Integer spot check: evaluate the family at concrete symbol values and
/// test the equation in plain integer arithmetic. The symbolic and numeric
/// routes must agree.
pub fn spot_check(fam: &ExplicitFamily, values: &[(&str, i64)]) -> bool {
    let vals: Vec<(&str, BigInt)> = values.iter().map(|(v, c)| (*v, BigInt::from(*c))).collect();
    let refs: Vec<(&str, &BigInt)> = vals.iter().map(|(v, c)| (*v, c)).collect();
    let eval_vars: Vec<(alloc::string::String, MPoly)> = fam
        .assignment
        .0
        .iter()
        .map(|(v, p)| {
            (
                v.clone(),
                MPoly::constant(p.eval(&refs).expect("all symbols assigned")),
            )
        })
        .collect();
    let mut numeric = Assignment::new(eval_vars);
    // equation symbols (A, d for the curve) also become numbers
    for (v, c) in &vals {
        if numeric.get(v).is_none() {
            numeric
                .0
                .push((v.to_string(), MPoly::constant((*c).clone())));
        }
    }
    verify_equation(fam.equation, &numeric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_equation() {
        assert_eq!(explicit_families(EquationId::Eq25Square).unwrap().len(), 2);
        assert_eq!(explicit_families(EquationId::CurveC).unwrap().len(), 6);
        assert_eq!(explicit_families(EquationId::Remark223).unwrap().len(), 4);
        assert_eq!(
            explicit_families(EquationId::Eq23Triangle).unwrap().len(),
            4
        );
        assert_eq!(all_explicit_families().len(), 16);
        assert!(matches!(
            explicit_families(EquationId::Z2),
            Err(PellError::UnknownEquation(_))
        ));
    }

    #[test]
    fn all_sixteen_verify() {
        for fam in all_explicit_families() {
            assert!(
                verify_family(&fam),
                "family of {} failed: {}",
                fam.equation,
                fam.assignment
            );
        }
    }

    #[test]
    fn curve_family_one_expands_as_expected() {
        // A d(Ad-1) * Ad^2 * d(Ad+1) = A^2 d^4 (A^2 d^2 - 1) = y(y+d)
        let fams = explicit_families(EquationId::CurveC).unwrap();
        let f = &fams[0];
        let a = MPoly::var("A");
        let d = MPoly::var("d");
        assert_eq!(f.assignment.get("x").unwrap(), &(&a * &d * &d - &d));
        assert_eq!(f.assignment.get("y").unwrap(), &-(&a * &a * &d.pow(3)));
        assert!(verify_family(f));
    }

    #[test]
    fn remark223_family_one_both_sides() {
        // x = t, y = t^2+t-2, z = (t-1)(t+2): both sides t(t+1)(t+2)(t-1)(t^2+t-1)
        let fams = explicit_families(EquationId::Remark223).unwrap();
        assert!(verify_family(&fams[0]));
        let t = MPoly::var("t");
        let both =
            &t * (&t + 1) * (&t + 2) * (&t - 1) * MPoly::univar("t", &[(2, 1), (1, 1), (0, -1)]);
        let x = fams[0].assignment.get("x").unwrap();
        let y = fams[0].assignment.get("y").unwrap();
        let lhs = x * (x + 1) * y * (y + 1);
        assert_eq!(lhs, both);
    }

    #[test]
    fn corrupted_family_fails() {
        let fams = explicit_families(EquationId::Remark223).unwrap();
        let mut bad = fams[1].clone();
        let z = bad.assignment.get("z").unwrap().clone();
        bad.assignment = Assignment::new(
            bad.assignment
                .0
                .iter()
                .map(|(v, p)| {
                    if v == "z" {
                        (v.clone(), &z + 1)
                    } else {
                        (v.clone(), p.clone())
                    }
                })
                .collect(),
        );
        assert!(!verify_family(&bad));
    }

    #[test]
    fn integer_spot_checks_agree() {
        for fam in all_explicit_families() {
            let over_t = fam
                .assignment
                .0
                .iter()
                .any(|(_, p)| p.variables().iter().any(|v| v == "t"));
            if over_t {
                for v in -3..=3 {
                    assert!(spot_check(&fam, &[("t", v)]), "t = {v}: {}", fam.assignment);
                }
            } else {
                for a in 1..=3 {
                    for d in 1..=3 {
                        assert!(
                            spot_check(&fam, &[("A", a), ("d", d)]),
                            "(A, d) = ({a}, {d}): {}",
                            fam.assignment
                        );
                    }
                }
            }
        }
    }
}
