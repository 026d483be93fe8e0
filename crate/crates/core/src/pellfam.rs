//! Data-driven Pell recurrence engine.
//!
//! Every recursive solution family here has the same shape: a Pell-type
//! equation `Z^2 - A*X^2 = B` over some ring, a base solution `(Z', X')`, a
//! unit `(Z, X)` with `Z^2 - A*X^2 = 1`, and an affine output transform that
//! turns the pairs into solutions of a target equation. Composing the base
//! with the unit,
//!
//! ```text
//! Z_n = Z*Z_{n-1} + A*X*X_{n-1},    X_n = X*Z_{n-1} + Z*X_{n-1}
//! ```
//!
//! yields a new `B`-solution at every step. Families are descriptors, not
//! code: the engine is single-sourced and the catalog lists seven of them,
//! five over `Z[t]` and two over the integers (represented as constant
//! polynomials).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::mpoly::{falling_block, MPoly};

/// Identifier of a target Diophantine equation. Each id carries its defining
/// equation as a symbolic evaluator ([`EquationId::equations`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationId {
    /// `x(x+1) y(y+1)(y+2) = z^2`
    Eq23Square,
    /// `x(x+1) y(y+1)(y+2)(y+3) = z^2`
    Eq24Square,
    /// `x(x+1) y(y+1)(y+2)(y+3)(y+4) = z^2`
    Eq25Square,
    /// `x(x+1) y(y+1)(y+2) = z(z+1)`
    Eq23Triangle,
    /// `x(x+1) y(y+1)(y+2)(y+3) = z(z+1)`
    Eq24Triangle,
    /// `x(x+1) y(y+1) = z(z+1)(z+2)(z+3)`
    Eq224,
    /// The multiplicative system `x(x+1)y(y+1) = p(p+1)`,
    /// `y(y+1)z(z+1) = q(q+1)`, `z(z+1)x(x+1) = r(r+1)`.
    MultSys,
    /// `A x(x+d)(x+2d) = y(y+d)` over `Z[A, d]`
    CurveC,
    /// `(x-b) x (x+b) (y-b) y (y+b) = z^2`
    Z2,
    /// `(x-b) x (x+b) (y-b) y (y+b) = (z-b) z (z+b)`
    Z3,
    /// `x(x+1) y(y+1) = z(z+1)(z+2)`
    Remark223,
    /// `x(x+1)(x+2) = z^2 * y(y+1)(y+2)`
    Ratio,
    /// `x(x+1) y(y+1) = z^3`
    PairCube,
    /// `x(x+1) y(y+1) z(z+1) = t^3`
    TripleCube,
}

impl EquationId {
    pub const ALL: [EquationId; 14] = [
        EquationId::Eq23Square,
        EquationId::Eq24Square,
        EquationId::Eq25Square,
        EquationId::Eq23Triangle,
        EquationId::Eq24Triangle,
        EquationId::Eq224,
        EquationId::MultSys,
        EquationId::CurveC,
        EquationId::Z2,
        EquationId::Z3,
        EquationId::Remark223,
        EquationId::Ratio,
        EquationId::PairCube,
        EquationId::TripleCube,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EquationId::Eq23Square => "eq23square",
            EquationId::Eq24Square => "eq24square",
            EquationId::Eq25Square => "eq25square",
            EquationId::Eq23Triangle => "eq23triangle",
            EquationId::Eq24Triangle => "eq24triangle",
            EquationId::Eq224 => "eq224",
            EquationId::MultSys => "multsys",
            EquationId::CurveC => "curveC",
            EquationId::Z2 => "z2",
            EquationId::Z3 => "z3",
            EquationId::Remark223 => "remark223",
            EquationId::Ratio => "ratio",
            EquationId::PairCube => "paircube",
            EquationId::TripleCube => "triplecube",
        }
    }

    /// `(lhs, rhs)` pairs of the defining equation(s), as polynomials in the
    /// equation's named variables.
    pub fn equations(&self) -> Vec<(MPoly, MPoly)> {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let z = MPoly::var("z");
        match self {
            EquationId::Eq23Square => vec![(falling_block(&x, 2) * falling_block(&y, 3), z.pow(2))],
            EquationId::Eq24Square => vec![(falling_block(&x, 2) * falling_block(&y, 4), z.pow(2))],
            EquationId::Eq25Square => vec![(falling_block(&x, 2) * falling_block(&y, 5), z.pow(2))],
            EquationId::Eq23Triangle => vec![(
                falling_block(&x, 2) * falling_block(&y, 3),
                falling_block(&z, 2),
            )],
            EquationId::Eq24Triangle => vec![(
                falling_block(&x, 2) * falling_block(&y, 4),
                falling_block(&z, 2),
            )],
            EquationId::Eq224 => vec![(
                falling_block(&x, 2) * falling_block(&y, 2),
                falling_block(&z, 4),
            )],
            EquationId::MultSys => {
                let p = MPoly::var("p");
                let q = MPoly::var("q");
                let r = MPoly::var("r");
                vec![
                    (
                        falling_block(&x, 2) * falling_block(&y, 2),
                        falling_block(&p, 2),
                    ),
                    (
                        falling_block(&y, 2) * falling_block(&z, 2),
                        falling_block(&q, 2),
                    ),
                    (
                        falling_block(&z, 2) * falling_block(&x, 2),
                        falling_block(&r, 2),
                    ),
                ]
            }
            EquationId::CurveC => {
                let a = MPoly::var("A");
                let d = MPoly::var("d");
                vec![(&a * &x * (&x + &d) * (&x + &d + &d), &y * (&y + &d))]
            }
            EquationId::Z2 => {
                let b = MPoly::var("b");
                vec![(
                    (&x - &b) * &x * (&x + &b) * (&y - &b) * &y * (&y + &b),
                    z.pow(2),
                )]
            }
            EquationId::Z3 => {
                let b = MPoly::var("b");
                vec![(
                    (&x - &b) * &x * (&x + &b) * (&y - &b) * &y * (&y + &b),
                    (&z - &b) * &z * (&z + &b),
                )]
            }
            EquationId::Remark223 => vec![(
                falling_block(&x, 2) * falling_block(&y, 2),
                falling_block(&z, 3),
            )],
            EquationId::Ratio => vec![(falling_block(&x, 3), z.pow(2) * falling_block(&y, 3))],
            EquationId::PairCube => vec![(falling_block(&x, 2) * falling_block(&y, 2), z.pow(3))],
            EquationId::TripleCube => vec![(
                falling_block(&x, 2) * falling_block(&y, 2) * falling_block(&z, 2),
                MPoly::var("t").pow(3),
            )],
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquationId {
    type Err = PellError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EquationId::ALL
            .iter()
            .copied()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| PellError::UnknownEquation(s.to_string()))
    }
}

/// A named assignment of solution variables to ring elements, kept in the
/// conventional variable order `x, y, z, p, q, r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<(String, MPoly)>);

const VAR_ORDER: [&str; 6] = ["x", "y", "z", "p", "q", "r"];

impl Assignment {
    pub fn new(mut pairs: Vec<(String, MPoly)>) -> Self {
        pairs.sort_by_key(|(v, _)| {
            VAR_ORDER
                .iter()
                .position(|w| w == v)
                .unwrap_or(VAR_ORDER.len())
        });
        Assignment(pairs)
    }

    pub fn get(&self, var: &str) -> Option<&MPoly> {
        self.0.iter().find(|(v, _)| v == var).map(|(_, p)| p)
    }

    fn as_subst(&self) -> Vec<(&str, &MPoly)> {
        self.0.iter().map(|(v, p)| (v.as_str(), p)).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, p) in &self.0 {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{v} = {p}")?;
        }
        Ok(())
    }
}

/// True iff the assignment satisfies the equation: after substituting every
/// assigned variable, each `lhs - rhs` is identically zero. Works for
/// symbolic assignments (polynomials in free symbols) and integer ones
/// (constant polynomials) alike. `false` is a report, not an error.
pub fn verify_equation(eq: EquationId, assignment: &Assignment) -> bool {
    let subst = assignment.as_subst();
    eq.equations().iter().all(|(lhs, rhs)| {
        let l = lhs.substitute_all(&subst);
        let r = rhs.substitute_all(&subst);
        (&l - &r).is_zero()
    })
}

/// True iff every equation of `eq` degenerates to `0 = 0` under the
/// assignment. Used to tag solutions where a factor vanishes.
pub fn equation_degenerate(eq: EquationId, assignment: &Assignment) -> bool {
    let subst = assignment.as_subst();
    eq.equations().iter().all(|(lhs, rhs)| {
        lhs.substitute_all(&subst).is_zero() && rhs.substitute_all(&subst).is_zero()
    })
}

/// Errors from the recurrence engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PellError {
    /// A generated pair failed `Z^2 - A*X^2 = B`; the family data is corrupt.
    InvariantViolation {
        family: FamilyId,
        index: u32,
    },
    /// A coefficient that the output transform must halve is odd, falsifying
    /// the family's parity lemma at this index.
    ParityViolation {
        family: FamilyId,
        index: u32,
        var: String,
    },
    /// The index does not pass the family's index filter.
    IndexFiltered {
        family: FamilyId,
        index: u32,
    },
    /// `pell_generate` requires `count >= 1`.
    EmptyCount,
    /// A claimed exact division failed at this chain index.
    NotDivisible {
        index: u32,
    },
    /// A chain row does not satisfy its system equation.
    EquationMismatch {
        index: u32,
    },
    UnknownFamily(String),
    UnknownEquation(String),
}

impl fmt::Display for PellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PellError::InvariantViolation { family, index } => {
                write!(f, "family {family}: pair {index} violates Z^2 - A*X^2 = B")
            }
            PellError::ParityViolation { family, index, var } => write!(
                f,
                "family {family}: output {var} at index {index} has an odd coefficient to halve"
            ),
            PellError::IndexFiltered { family, index } => {
                write!(f, "family {family}: index {index} is filtered out")
            }
            PellError::EmptyCount => write!(f, "count must be at least 1"),
            PellError::NotDivisible { index } => {
                write!(f, "claimed exact division failed at chain index {index}")
            }
            PellError::EquationMismatch { index } => {
                write!(f, "chain row {index} does not satisfy its equation")
            }
            PellError::UnknownFamily(s) => write!(f, "unknown family `{s}`"),
            PellError::UnknownEquation(s) => write!(f, "unknown equation `{s}`"),
        }
    }
}

impl core::error::Error for PellError {}

/// One Pell pair `(Z, X)`. For a family with data `(A, B)` the invariant is
/// `Z^2 - A*X^2 = B` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellPair {
    pub z: MPoly,
    pub x: MPoly,
}

/// One output variable of a transform: `(cz*Z + cx*X + offset) / 2`, with the
/// halving required to be exact.
#[derive(Clone, Debug)]
pub struct OutputVar {
    pub var: &'static str,
    pub coef_z: i64,
    pub coef_x: i64,
    pub offset: i64,
}

/// How generated pairs become solutions of the target equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// Emit the affine outputs plus the family's fixed polynomials.
    Standard,
    /// The multiplicative chain: a row uses both pair `n` and pair `n + 1`
    /// and carries the exact-division construction of `q`.
    MultRow,
}

#[derive(Clone, Debug)]
pub struct OutputTransform {
    /// Only indices with `n % step == offset` are emitted.
    pub index_step: u32,
    pub index_offset: u32,
    /// Applied to `Z_n`, `X_n` and the fixed polynomials before the affine
    /// maps, e.g. `t -> 2t` or `t -> 2t + 1`.
    pub pre_subst: Option<(&'static str, MPoly)>,
    pub outputs: Vec<OutputVar>,
    /// Fixed solution variables, e.g. the family's `y` polynomial.
    pub fixed: Vec<(&'static str, MPoly)>,
    pub kind: TransformKind,
}

/// Ring a family lives in. Integer families are represented with constant
/// polynomials so one engine serves both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Integer,
    Polynomial(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Eq23Square,
    Eq24Square,
    Eq23Triangle,
    Eq24Triangle,
    MultFirst,
    T224C1,
    T224C2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Eq23Square,
        FamilyId::Eq24Square,
        FamilyId::Eq23Triangle,
        FamilyId::Eq24Triangle,
        FamilyId::MultFirst,
        FamilyId::T224C1,
        FamilyId::T224C2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::Eq23Square => "eq23square",
            FamilyId::Eq24Square => "eq24square",
            FamilyId::Eq23Triangle => "eq23triangle",
            FamilyId::Eq24Triangle => "eq24triangle",
            FamilyId::MultFirst => "mult_first",
            FamilyId::T224C1 => "t224_C1",
            FamilyId::T224C2 => "t224_C2",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = PellError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| PellError::UnknownFamily(s.to_string()))
    }
}

/// Declarative descriptor of one recurrence family.
#[derive(Clone, Debug)]
pub struct PellFamily {
    pub id: FamilyId,
    pub ring: Ring,
    pub a: MPoly,
    pub b: MPoly,
    pub base: PellPair,
    pub unit: PellPair,
    pub transform: OutputTransform,
    pub equation: EquationId,
}

impl PellFamily {
    /// `Z^2 - A*X^2` for a pair.
    fn pell_form(&self, pair: &PellPair) -> MPoly {
        pair.z.pow(2) - &self.a * pair.x.pow(2)
    }

    fn check_data(&self) {
        assert_eq!(
            self.pell_form(&self.base),
            self.b,
            "family {}: base pair does not satisfy Z^2 - A*X^2 = B",
            self.id
        );
        assert_eq!(
            self.pell_form(&self.unit),
            MPoly::one(),
            "family {}: unit pair does not satisfy Z^2 - A*X^2 = 1",
            self.id
        );
        assert!(
            !self.unit.x.is_zero(),
            "family {}: unit must have X != 0",
            self.id
        );
    }
}

fn standard_transform(
    pre_subst: Option<(&'static str, MPoly)>,
    outputs: Vec<OutputVar>,
    fixed: Vec<(&'static str, MPoly)>,
) -> OutputTransform {
    OutputTransform {
        index_step: 1,
        index_offset: 0,
        pre_subst,
        outputs,
        fixed,
        kind: TransformKind::Standard,
    }
}

fn out(var: &'static str, coef_z: i64, coef_x: i64, offset: i64) -> OutputVar {
    OutputVar {
        var,
        coef_z,
        coef_x,
        offset,
    }
}

/// Build one family descriptor.
pub fn family(id: FamilyId) -> PellFamily {
    let t = MPoly::var("t");
    let two_t = MPoly::univar("t", &[(1, 2)]);
    let two_t_plus_1 = MPoly::univar("t", &[(1, 2), (0, 1)]);
    let fam = match id {
        FamilyId::Eq23Square => {
            // y = t^2 + 1; Z = 2z, X = 2x + 1; solutions read off at t -> 2t.
            let y0 = MPoly::univar("t", &[(2, 1), (0, 1)]);
            let a = falling_block(&y0, 3);
            let x0 = MPoly::univar("t", &[(4, 1), (2, 3), (0, 1)]);
            PellFamily {
                id,
                ring: Ring::Polynomial(&["t"]),
                b: -&a,
                base: PellPair {
                    z: &t * &a,
                    x: x0.clone(),
                },
                unit: PellPair {
                    z: x0,
                    x: t.clone(),
                },
                a,
                transform: standard_transform(
                    Some(("t", two_t)),
                    vec![out("x", 0, 1, -1), out("z", 1, 0, 0)],
                    vec![("y", y0)],
                ),
                equation: EquationId::Eq23Square,
            }
        }
        FamilyId::Eq24Square => {
            // y = t; Z = 2z, X = 2x + 1; solutions read off at t -> 2t.
            let a = falling_block(&t, 4);
            let w = MPoly::univar("t", &[(2, 1), (1, 3), (0, 1)]);
            PellFamily {
                id,
                ring: Ring::Polynomial(&["t"]),
                b: -&a,
                base: PellPair {
                    z: a.clone(),
                    x: w.clone(),
                },
                unit: PellPair {
                    z: w,
                    x: MPoly::one(),
                },
                a,
                transform: standard_transform(
                    Some(("t", two_t)),
                    vec![out("x", 0, 1, -1), out("z", 1, 0, 0)],
                    vec![("y", t.clone())],
                ),
                equation: EquationId::Eq24Square,
            }
        }
        FamilyId::Eq23Triangle => {
            // y = 4t^2 + 1; Z = 2z + 1, X = 2x + 1.
            let y0 = MPoly::univar("t", &[(2, 4), (0, 1)]);
            let a = falling_block(&y0, 3);
            PellFamily {
                id,
                ring: Ring::Polynomial(&["t"]),
                b: 1 - &a,
                base: PellPair {
                    z: MPoly::univar(
                        "t",
                        &[
                            (7, 128),
                            (5, 192),
                            (4, -16),
                            (3, 88),
                            (2, -12),
                            (1, 12),
                            (0, -1),
                        ],
                    ),
                    x: MPoly::univar("t", &[(4, 16), (2, 12), (1, -2), (0, 1)]),
                },
                unit: PellPair {
                    z: MPoly::univar("t", &[(4, 16), (2, 12), (0, 1)]),
                    x: MPoly::univar("t", &[(1, 2)]),
                },
                a,
                transform: standard_transform(
                    None,
                    vec![out("x", 0, 1, -1), out("z", 1, 0, -1)],
                    vec![("y", y0)],
                ),
                equation: EquationId::Eq23Triangle,
            }
        }
        FamilyId::Eq24Triangle => {
            // y = t; Z = 2z + 1, X = 2x + 1; even indices, read off at t -> 2t + 1.
            let a = falling_block(&t, 4);
            PellFamily {
                id,
                ring: Ring::Polynomial(&["t"]),
                b: 1 - &a,
                base: PellPair {
                    z: MPoly::univar("t", &[(6, 2), (5, 18), (4, 58), (3, 78), (2, 36), (0, -1)]),
                    x: MPoly::univar("t", &[(4, 2), (3, 12), (2, 20), (1, 6), (0, -1)]),
                },
                unit: PellPair {
                    z: MPoly::univar("t", &[(2, 1), (1, 3), (0, 1)]),
                    x: MPoly::one(),
                },
                a,
                transform: OutputTransform {
                    index_step: 2,
                    index_offset: 0,
                    pre_subst: Some(("t", two_t_plus_1)),
                    outputs: vec![out("x", 0, 1, -1), out("z", 1, 0, -1)],
                    fixed: vec![("y", t.clone())],
                    kind: TransformKind::Standard,
                },
                equation: EquationId::Eq24Triangle,
            }
        }
        FamilyId::MultFirst => {
            // x = t; P = 2p + 1, Y = 2y + 1; rows use pairs n and n + 1.
            let a = falling_block(&t, 2);
            PellFamily {
                id,
                ring: Ring::Polynomial(&["t"]),
                b: 1 - &a,
                base: PellPair {
                    z: MPoly::one(),
                    x: MPoly::one(),
                },
                unit: PellPair {
                    z: MPoly::univar("t", &[(1, 2), (0, 1)]),
                    x: MPoly::from(2),
                },
                a,
                transform: OutputTransform {
                    index_step: 1,
                    index_offset: 0,
                    pre_subst: None,
                    outputs: Vec::new(),
                    fixed: vec![("x", t.clone())],
                    kind: TransformKind::MultRow,
                },
                equation: EquationId::MultSys,
            }
        }
        FamilyId::T224C1 => PellFamily {
            // U^2 - 3V^2 = -2; x = (V-1)/2, y = (4U+7V-1)/2, z = (U+2V-3)/2.
            id,
            ring: Ring::Integer,
            a: MPoly::from(3),
            b: MPoly::from(-2),
            base: PellPair {
                z: MPoly::one(),
                x: MPoly::one(),
            },
            unit: PellPair {
                z: MPoly::from(2),
                x: MPoly::one(),
            },
            transform: standard_transform(
                None,
                vec![out("x", 0, 1, -1), out("y", 4, 7, -1), out("z", 1, 2, -3)],
                Vec::new(),
            ),
            equation: EquationId::Eq224,
        },
        FamilyId::T224C2 => PellFamily {
            // U'^2 - 5V'^2 = -4; x = (V'-1)/2, y = (9V'-4U'-1)/2, z = (U'-2V'-3)/2.
            id,
            ring: Ring::Integer,
            a: MPoly::from(5),
            b: MPoly::from(-4),
            base: PellPair {
                z: MPoly::one(),
                x: MPoly::one(),
            },
            unit: PellPair {
                z: MPoly::from(9),
                x: MPoly::from(4),
            },
            transform: standard_transform(
                None,
                vec![out("x", 0, 1, -1), out("y", -4, 9, -1), out("z", 1, -2, -3)],
                Vec::new(),
            ),
            equation: EquationId::Eq224,
        },
    };
    fam.check_data();
    fam
}

/// Exactly the built-in families, in catalog order.
pub fn family_catalog() -> Vec<PellFamily> {
    FamilyId::ALL.iter().map(|&id| family(id)).collect()
}

/// One application of the composition rule. The result is checked against
/// `Z^2 - A*X^2 = B`; failure means the family data is corrupted.
pub fn pell_step(prev: &PellPair, fam: &PellFamily) -> Result<PellPair, PellError> {
    let next = PellPair {
        z: &fam.unit.z * &prev.z + &fam.a * &fam.unit.x * &prev.x,
        x: &fam.unit.x * &prev.z + &fam.unit.z * &prev.x,
    };
    if fam.pell_form(&next) != fam.b {
        return Err(PellError::InvariantViolation {
            family: fam.id,
            index: u32::MAX,
        });
    }
    Ok(next)
}

/// The first `count` pairs of the family, starting at the base.
pub fn pell_generate(fam: &PellFamily, count: u32) -> Result<Vec<PellPair>, PellError> {
    if count == 0 {
        return Err(PellError::EmptyCount);
    }
    if fam.pell_form(&fam.base) != fam.b {
        return Err(PellError::InvariantViolation {
            family: fam.id,
            index: 0,
        });
    }
    let mut pairs = Vec::with_capacity(count as usize);
    pairs.push(fam.base.clone());
    for i in 1..count {
        let next =
            pell_step(pairs.last().unwrap(), fam).map_err(|_| PellError::InvariantViolation {
                family: fam.id,
                index: i,
            })?;
        pairs.push(next);
    }
    Ok(pairs)
}

/// `value / 2` with the parity of every coefficient checked first.
fn halved(fam: &PellFamily, n: u32, var: &str, value: MPoly) -> Result<MPoly, PellError> {
    if !value.all_even() {
        return Err(PellError::ParityViolation {
            family: fam.id,
            index: n,
            var: var.to_string(),
        });
    }
    Ok(value.halve().expect("checked even"))
}

/// Turn pair `n` of a family into a named solution assignment of the target
/// equation. `n` must pass the family's index filter; every halving is
/// verified exact.
pub fn apply_transform(fam: &PellFamily, pair: &PellPair, n: u32) -> Result<Assignment, PellError> {
    let tr = &fam.transform;
    if n % tr.index_step != tr.index_offset {
        return Err(PellError::IndexFiltered {
            family: fam.id,
            index: n,
        });
    }
    match tr.kind {
        TransformKind::Standard => {
            let (zz, xx) = match &tr.pre_subst {
                None => (pair.z.clone(), pair.x.clone()),
                Some((v, s)) => (pair.z.substitute(v, s), pair.x.substitute(v, s)),
            };
            let mut pairs: Vec<(String, MPoly)> = Vec::new();
            for o in &tr.outputs {
                let value = &zz * o.coef_z + &xx * o.coef_x + MPoly::from(o.offset);
                pairs.push((o.var.to_string(), halved(fam, n, o.var, value)?));
            }
            for (v, p) in &tr.fixed {
                let p = match &tr.pre_subst {
                    None => p.clone(),
                    Some((sv, s)) => p.substitute(sv, s),
                };
                pairs.push((v.to_string(), p));
            }
            Ok(Assignment::new(pairs))
        }
        TransformKind::MultRow => mult_row(fam, pair, n).map(|r| r.into_assignment()),
    }
}

/// One row of the multiplicative chain: `x = t` and
/// `x(x+1)y(y+1) = p(p+1)`, `y(y+1)z(z+1) = q(q+1)`, `z(z+1)x(x+1) = r(r+1)`.
#[derive(Clone, Debug)]
pub struct MultChainRow {
    pub index: u32,
    pub x: MPoly,
    pub y: MPoly,
    pub z: MPoly,
    pub p: MPoly,
    pub q: MPoly,
    pub r: MPoly,
}

impl MultChainRow {
    pub fn into_assignment(self) -> Assignment {
        Assignment::new(vec![
            ("x".to_string(), self.x),
            ("y".to_string(), self.y),
            ("z".to_string(), self.z),
            ("p".to_string(), self.p),
            ("q".to_string(), self.q),
            ("r".to_string(), self.r),
        ])
    }
}

/// Builds row `n` from pair `n` (stepping once for the `n + 1` entries).
///
/// Writing `(P, Y)` for the pair, the row is `y = (Y-1)/2`, `p = (P-1)/2`,
/// `z, r` the same at `n + 1`, and
/// `q = (P - Y) * ((2t^2+4t+1) Y + (2t+3) P) / (4 (t^2+t-1))`,
/// after asserting that `2(t^2+t-1)` divides `P - Y`. Either division
/// failing would falsify the construction, so both surface as
/// `NotDivisible`.
fn mult_row(fam: &PellFamily, pair: &PellPair, n: u32) -> Result<MultChainRow, PellError> {
    let next = pell_step(pair, fam)?;
    let (p_pair, y_pair) = (&pair.z, &pair.x);

    let y = halved(fam, n, "y", y_pair - 1)?;
    let p = halved(fam, n, "p", p_pair - 1)?;
    let z = halved(fam, n, "z", &next.x - 1)?;
    let r = halved(fam, n, "r", &next.z - 1)?;

    let diff = p_pair - y_pair;
    let half_modulus = MPoly::univar("t", &[(2, 2), (1, 2), (0, -2)]); // 2(t^2+t-1)
    diff.exact_div(&half_modulus)
        .map_err(|_| PellError::NotDivisible { index: n })?;

    let weight = MPoly::univar("t", &[(2, 2), (1, 4), (0, 1)]) * y_pair
        + MPoly::univar("t", &[(1, 2), (0, 3)]) * p_pair;
    let denom = MPoly::univar("t", &[(2, 4), (1, 4), (0, -4)]); // 4(t^2+t-1)
    let q = (&diff * &weight)
        .exact_div(&denom)
        .map_err(|_| PellError::NotDivisible { index: n })?;

    Ok(MultChainRow {
        index: n,
        x: MPoly::var("t"),
        y,
        z,
        p,
        q,
        r,
    })
}

/// The first `count` rows of the multiplicative chain, each verified against
/// all three system equations.
pub fn mult_chain(count: u32) -> Result<Vec<MultChainRow>, PellError> {
    if count == 0 {
        return Err(PellError::EmptyCount);
    }
    let fam = family(FamilyId::MultFirst);
    let pairs = pell_generate(&fam, count)?;
    let mut rows = Vec::with_capacity(count as usize);
    for (i, pair) in pairs.iter().enumerate() {
        let row = mult_row(&fam, pair, i as u32)?;
        if !verify_equation(EquationId::MultSys, &row.clone().into_assignment()) {
            return Err(PellError::EquationMismatch { index: i as u32 });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The first `count` transformed solutions of a family together with their
/// pair indices (indices run through the family's filter).
pub fn family_solutions(fam: &PellFamily, count: u32) -> Result<Vec<(u32, Assignment)>, PellError> {
    if count == 0 {
        return Err(PellError::EmptyCount);
    }
    let tr = &fam.transform;
    let last_index = tr.index_offset + (count - 1) * tr.index_step;
    let pairs = pell_generate(fam, last_index + 1)?;
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..count {
        let idx = tr.index_offset + i * tr.index_step;
        out.push((idx, apply_transform(fam, &pairs[idx as usize], idx)?));
    }
    Ok(out)
}

/// Per-index verification result for one family, as used by the symbolic
/// suite and the `family verify` command.
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub family: FamilyId,
    pub index: u32,
    pub pell_invariant: bool,
    pub parity: bool,
    pub equation: bool,
    pub degree_growth: bool,
}

impl FamilyCheck {
    pub fn ok(&self) -> bool {
        self.pell_invariant && self.parity && self.equation && self.degree_growth
    }
}

/// The family's parity lemma at one index.
///
/// * square families: `X_n(2t) == 1` and `Z_n(2t) == 0` mod 2;
/// * `eq23triangle`: `X_n * Z_n == 1` mod 2;
/// * `eq24triangle`: `X_n(2t+1) * Z_n(2t+1) == 1` mod 2 for even `n`;
/// * integer families: both components odd;
/// * `mult_first`: `Y_n * P_n == 1` mod 2 and `2(t^2+t-1) | P_n - Y_n`.
pub fn parity_lemma_holds(fam: &PellFamily, pair: &PellPair, n: u32) -> bool {
    let two_t = MPoly::univar("t", &[(1, 2)]);
    let two_t_plus_1 = MPoly::univar("t", &[(1, 2), (0, 1)]);
    match fam.id {
        FamilyId::Eq23Square | FamilyId::Eq24Square => {
            pair.x.substitute("t", &two_t).parity_reduce() == MPoly::one()
                && pair.z.substitute("t", &two_t).parity_reduce().is_zero()
        }
        FamilyId::Eq23Triangle => (&pair.x * &pair.z).parity_reduce() == MPoly::one(),
        FamilyId::Eq24Triangle => {
            if !n.is_multiple_of(2) {
                return true; // no claim at odd indices
            }
            let x = pair.x.substitute("t", &two_t_plus_1);
            let z = pair.z.substitute("t", &two_t_plus_1);
            (&x * &z).parity_reduce() == MPoly::one()
        }
        FamilyId::MultFirst => {
            let half_modulus = MPoly::univar("t", &[(2, 2), (1, 2), (0, -2)]);
            (&pair.x * &pair.z).parity_reduce() == MPoly::one()
                && (&pair.z - &pair.x).exact_div(&half_modulus).is_ok()
        }
        FamilyId::T224C1 | FamilyId::T224C2 => {
            pair.z.parity_reduce() == MPoly::one() && pair.x.parity_reduce() == MPoly::one()
        }
    }
}

/// Run the full per-index verification of one family down the chain:
/// Pell invariant, parity lemma, target-equation membership of the
/// transformed solutions, and degree growth for polynomial families.
pub fn verify_family_depth(fam: &PellFamily, depth: u32) -> Result<Vec<FamilyCheck>, PellError> {
    let pairs = pell_generate(fam, depth + 1)?;
    let (uz_deg, ux_deg) = (fam.unit.z.total_degree(), fam.unit.x.total_degree());
    let a_deg = fam.a.total_degree();
    let mut checks = Vec::new();
    for (n, pair) in pairs.iter().enumerate() {
        let n = n as u32;
        let pell_invariant = fam.pell_form(pair) == fam.b;
        let parity = parity_lemma_holds(fam, pair, n);
        let filtered = n % fam.transform.index_step != fam.transform.index_offset;
        let equation = if filtered {
            true
        } else {
            match apply_transform(fam, pair, n) {
                Ok(asg) => verify_equation(fam.equation, &asg),
                Err(_) => false,
            }
        };
        // No cancellation at the top: the degree follows the larger of the
        // two composition branches, which is deg Z_n + deg(unit Z) once the
        // degrees have stabilised.
        let degree_growth = match fam.ring {
            Ring::Integer => true,
            Ring::Polynomial(_) => {
                if (n as usize) + 1 < pairs.len() {
                    let expected = core::cmp::max(
                        uz_deg + pair.z.total_degree(),
                        a_deg + ux_deg + pair.x.total_degree(),
                    );
                    pairs[n as usize + 1].z.total_degree() == expected
                } else {
                    true
                }
            }
        };
        checks.push(FamilyCheck {
            family: fam.id,
            index: n,
            pell_invariant,
            parity,
            equation,
            degree_growth,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::falling_block;

    fn int(v: i64) -> MPoly {
        MPoly::from(v)
    }

    fn int_assignment(vals: &[(&str, i64)]) -> Assignment {
        Assignment::new(vals.iter().map(|(v, c)| (v.to_string(), int(*c))).collect())
    }

    #[test]
    fn catalog_has_seven_validated_families() {
        let cat = family_catalog();
        assert_eq!(cat.len(), 7);
        // eq24triangle base as printed
        let f = family(FamilyId::Eq24Triangle);
        assert_eq!(
            f.base.z,
            MPoly::univar("t", &[(6, 2), (5, 18), (4, 58), (3, 78), (2, 36), (0, -1)])
        );
        // t224_C2 composes U' -> 9U' + 20V'
        let f = family(FamilyId::T224C2);
        let next = pell_step(&f.base, &f).unwrap();
        assert_eq!(next.z, int(29));
        assert_eq!(next.x, int(13));
    }

    #[test]
    fn eq23square_base_is_first_generated_pair() {
        let f = family(FamilyId::Eq23Square);
        let pairs = pell_generate(&f, 1).unwrap();
        let y0 = MPoly::univar("t", &[(2, 1), (0, 1)]);
        assert_eq!(pairs[0].z, MPoly::var("t") * falling_block(&y0, 3));
        assert_eq!(pairs[0].x, MPoly::univar("t", &[(4, 1), (2, 3), (0, 1)]));
    }

    #[test]
    fn eq24square_first_step() {
        let f = family(FamilyId::Eq24Square);
        let next = pell_step(&f.base, &f).unwrap();
        // X_1 = f4(t) + (t^2 + 3t + 1)^2
        let expected = falling_block(&MPoly::var("t"), 4)
            + MPoly::univar("t", &[(2, 1), (1, 3), (0, 1)]).pow(2);
        assert_eq!(next.x, expected);
    }

    #[test]
    fn t224_c1_integer_steps() {
        let f = family(FamilyId::T224C1);
        let pairs = pell_generate(&f, 3).unwrap();
        let got: Vec<(MPoly, MPoly)> = pairs.iter().map(|p| (p.z.clone(), p.x.clone())).collect();
        assert_eq!(
            got,
            vec![(int(1), int(1)), (int(5), int(3)), (int(19), int(11))]
        );
    }

    #[test]
    fn generate_count_zero_is_error() {
        let f = family(FamilyId::T224C1);
        assert_eq!(pell_generate(&f, 0), Err(PellError::EmptyCount));
    }

    #[test]
    fn eq23square_transform_n0() {
        let f = family(FamilyId::Eq23Square);
        let asg = apply_transform(&f, &f.base, 0).unwrap();
        assert_eq!(
            asg.get("x").unwrap(),
            &MPoly::univar("t", &[(4, 8), (2, 6)])
        );
        assert_eq!(
            asg.get("y").unwrap(),
            &MPoly::univar("t", &[(2, 4), (0, 1)])
        );
        // z = t (4t^2+1)(4t^2+2)(4t^2+3)
        let y = MPoly::univar("t", &[(2, 4), (0, 1)]);
        let z = MPoly::var("t") * falling_block(&y, 3);
        assert_eq!(asg.get("z").unwrap(), &z);
        assert!(verify_equation(EquationId::Eq23Square, &asg));
    }

    #[test]
    fn t224_c1_transform_n1() {
        let f = family(FamilyId::T224C1);
        let pairs = pell_generate(&f, 2).unwrap();
        let asg = apply_transform(&f, &pairs[1], 1).unwrap();
        assert_eq!(asg.get("x").unwrap(), &int(1));
        assert_eq!(asg.get("y").unwrap(), &int(20));
        assert_eq!(asg.get("z").unwrap(), &int(4));
        assert!(verify_equation(EquationId::Eq224, &asg));
    }

    #[test]
    fn t224_c2_transform_n2() {
        let f = family(FamilyId::T224C2);
        let pairs = pell_generate(&f, 3).unwrap();
        assert_eq!(pairs[2].z, int(521));
        assert_eq!(pairs[2].x, int(233));
        let asg = apply_transform(&f, &pairs[2], 2).unwrap();
        assert_eq!(asg.get("x").unwrap(), &int(116));
        assert_eq!(asg.get("y").unwrap(), &int(6));
        assert_eq!(asg.get("z").unwrap(), &int(26));
        assert!(verify_equation(EquationId::Eq224, &asg));
    }

    #[test]
    fn t224_degenerate_early_indices() {
        let f = family(FamilyId::T224C2);
        let pairs = pell_generate(&f, 2).unwrap();
        for (n, pair) in pairs.iter().enumerate() {
            let asg = apply_transform(&f, pair, n as u32).unwrap();
            assert!(verify_equation(EquationId::Eq224, &asg));
            assert!(equation_degenerate(EquationId::Eq224, &asg));
        }
        let f1 = family(FamilyId::T224C1);
        let asg = apply_transform(&f1, &f1.base, 0).unwrap();
        assert!(equation_degenerate(EquationId::Eq224, &asg));
    }

    #[test]
    fn verify_equation_examples() {
        assert!(verify_equation(
            EquationId::Eq224,
            &int_assignment(&[("x", 1), ("y", 20), ("z", 4)])
        ));
        assert!(!verify_equation(
            EquationId::Eq224,
            &int_assignment(&[("x", 1), ("y", 20), ("z", 5)])
        ));
        // eq23triangle family solution at n = 0 verifies symbolically
        let f = family(FamilyId::Eq23Triangle);
        let asg = apply_transform(&f, &f.base, 0).unwrap();
        assert!(verify_equation(EquationId::Eq23Triangle, &asg));
    }

    #[test]
    fn eq24triangle_filter_and_substitution() {
        let f = family(FamilyId::Eq24Triangle);
        let pairs = pell_generate(&f, 3).unwrap();
        assert!(matches!(
            apply_transform(&f, &pairs[1], 1),
            Err(PellError::IndexFiltered { .. })
        ));
        let asg = apply_transform(&f, &pairs[0], 0).unwrap();
        assert_eq!(
            asg.get("y").unwrap(),
            &MPoly::univar("t", &[(1, 2), (0, 1)])
        );
        assert!(verify_equation(EquationId::Eq24Triangle, &asg));
        let asg2 = apply_transform(&f, &pairs[2], 2).unwrap();
        assert!(verify_equation(EquationId::Eq24Triangle, &asg2));
    }

    #[test]
    fn mult_chain_first_rows() {
        let rows = mult_chain(3).unwrap();

        // base row degenerates to 0 = 0 in its first equation
        assert!(rows[0].y.is_zero());
        assert!(rows[0].p.is_zero());

        // row 1: y = t + 1, z = 4t^2 + 8t + 2, q = (2t+3)(2t^2+4t+1)
        assert_eq!(rows[1].y, MPoly::univar("t", &[(1, 1), (0, 1)]));
        assert_eq!(rows[1].z, MPoly::univar("t", &[(2, 4), (1, 8), (0, 2)]));
        assert_eq!(
            rows[1].q,
            MPoly::univar("t", &[(3, 4), (2, 14), (1, 14), (0, 3)])
        );
        // r_1 = p_2 with P_2 = 8t^3 + 20t^2 + 12t + 1
        assert_eq!(rows[1].r, MPoly::univar("t", &[(3, 4), (2, 10), (1, 6)]));
    }

    #[test]
    fn mult_chain_q1_from_exact_division() {
        // q_1 = (P_1 - Y_1)((2t^2+4t+1)Y_1 + (2t+3)P_1) / (4(t^2+t-1)),
        // recomputed here directly from the printed pairs.
        let p1 = MPoly::univar("t", &[(2, 2), (1, 4), (0, 1)]);
        let y1 = MPoly::univar("t", &[(1, 2), (0, 3)]);
        let num = (&p1 - &y1)
            * (MPoly::univar("t", &[(2, 2), (1, 4), (0, 1)]) * &y1
                + MPoly::univar("t", &[(1, 2), (0, 3)]) * &p1);
        let q1 = num
            .exact_div(&MPoly::univar("t", &[(2, 4), (1, 4), (0, -4)]))
            .unwrap();
        assert_eq!(q1, MPoly::univar("t", &[(3, 4), (2, 14), (1, 14), (0, 3)]));
    }

    #[test]
    fn family_verify_depth_small() {
        for fam in family_catalog() {
            let checks = verify_family_depth(&fam, 4).unwrap();
            for c in &checks {
                assert!(c.ok(), "family {} index {} failed", c.family, c.index);
            }
        }
    }

    #[test]
    fn eq24triangle_base_parity_under_odd_substitution() {
        // X_0(2t+1) reduces to 1 mod 2: only the constant -1 survives.
        let f = family(FamilyId::Eq24Triangle);
        let sub = MPoly::univar("t", &[(1, 2), (0, 1)]);
        assert_eq!(f.base.x.substitute("t", &sub).parity_reduce(), MPoly::one());
        assert_eq!(
            f.base.x.parity_reduce(),
            MPoly::one(),
            "all non-constant coefficients of X_0 are even"
        );
    }

    #[test]
    fn corrupted_base_is_an_invariant_violation() {
        let mut f = family(FamilyId::T224C1);
        f.base.z = int(2); // 4 - 3 = 1 != -2
        assert!(matches!(
            pell_generate(&f, 2),
            Err(PellError::InvariantViolation { .. })
        ));
    }

    #[test]
    fn odd_halving_is_a_parity_violation() {
        let mut f = family(FamilyId::T224C1);
        // shift the x output so the halved value becomes odd
        f.transform.outputs[0].offset = 0;
        let err = apply_transform(&f, &f.base, 0);
        assert!(matches!(err, Err(PellError::ParityViolation { .. })));
    }

    #[test]
    fn equation_id_strings_roundtrip() {
        for eq in EquationId::ALL {
            assert_eq!(eq.as_str().parse::<EquationId>().unwrap(), eq);
        }
        for id in FamilyId::ALL {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
        }
        assert!("nope".parse::<EquationId>().is_err());
    }
}
