//! Cross-module behaviour: symbolic families evaluated into integers, the
//! search engines finding reference solutions, and both verification routes
//! agreeing.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use blockprod_core::mpoly::{falling_block, MPoly};
use blockprod_core::pellfam::{apply_transform, family, FamilyId};
use blockprod_core::search::z2::{scan_pair, SquareTables, Z2Options};
use blockprod_core::search::{invert_shape, Shape};
use blockprod_core::{verify_equation, Assignment, EquationId};

/// The symbolic family specialised at t = 1 gives an integer solution, and
/// the symbolic and numeric verification routes agree.
#[test]
fn eq23square_at_t1_matches_numeric_evaluation() {
    let fam = family(FamilyId::Eq23Square);
    let asg = apply_transform(&fam, &fam.base, 0).unwrap();

    let one = BigInt::from(1);
    let x = asg.get("x").unwrap().eval(&[("t", &one)]).unwrap();
    let y = asg.get("y").unwrap().eval(&[("t", &one)]).unwrap();
    let z = asg.get("z").unwrap().eval(&[("t", &one)]).unwrap();
    assert_eq!(
        (x.clone(), y.clone(), z.clone()),
        (14.into(), 5.into(), 210.into())
    );

    // product x(x+1) y(y+1)(y+2) evaluated as a polynomial equals z^2
    let product = falling_block(&MPoly::var("x"), 2) * falling_block(&MPoly::var("y"), 3);
    let value = product.eval(&[("x", &x), ("y", &y)]).unwrap();
    assert_eq!(value, &z * &z);
    assert_eq!(
        invert_shape(Shape::Square, &value).unwrap(),
        Some(z.clone())
    );

    let numeric = Assignment::new(vec![
        ("x".into(), MPoly::constant(x)),
        ("y".into(), MPoly::constant(y)),
        ("z".into(), MPoly::constant(z)),
    ]);
    assert!(verify_equation(EquationId::Eq23Square, &numeric));
}

/// The square search digs out the deep reference row at (b, k) = (5, 98).
#[test]
fn z2_scan_finds_the_deep_row() {
    let tables = SquareTables::new();
    let recs = scan_pair(5, 98, &tables, &Z2Options::default());
    assert!(recs.iter().any(|r| {
        r.x.to_u64() == Some(3605)
            && r.y.to_u64() == Some(3703)
            && r.z.to_u64() == Some(48_773_919_600)
    }));
}

/// Every integer family solution up to index 6 satisfies its equation after
/// conversion to plain integers.
#[test]
fn integer_families_verify_numerically() {
    for id in [FamilyId::T224C1, FamilyId::T224C2] {
        let fam = family(id);
        let pairs = blockprod_core::pellfam::pell_generate(&fam, 7).unwrap();
        for (n, pair) in pairs.iter().enumerate() {
            let asg = apply_transform(&fam, pair, n as u32).unwrap();
            assert!(verify_equation(EquationId::Eq224, &asg), "{id} n={n}");
            // values stay constant polynomials
            for (_, v) in &asg.0 {
                assert!(v.as_constant().is_some());
            }
        }
    }
}
