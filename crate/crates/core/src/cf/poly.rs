use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::enclosure::cylinder;
use super::surd::{is_square, QuadraticSurd};
use super::{CfError, ConvergentTable, Enclosure};

/// `A X² + B X + C` over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticPoly {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadraticPoly {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let c = BigRational::from_integer(self.c.clone());
        (a * x + b) * x + c
    }

    /// `P(x) = (u + v√D)/Q²` for `x = (P + √D)/Q`; returns `(u, v)`.
    pub fn eval_surd_parts(&self, x: &QuadraticSurd) -> (BigInt, BigInt) {
        let (p, q, d) = (x.p(), x.q(), x.d());
        let u = &self.a * (p * p + d) + &self.b * q * p + &self.c * q * q;
        let v = BigInt::from(2) * &self.a * p + &self.b * q;
        (u, v)
    }

    pub fn has_root(&self, x: &QuadraticSurd) -> bool {
        let (u, v) = self.eval_surd_parts(x);
        u.is_zero() && v.is_zero()
    }

    /// The abscissa `−B/(2A)` of the vertex, if `A ≠ 0`.
    pub fn vertex(&self) -> Option<BigRational> {
        if self.a.is_zero() {
            None
        } else {
            Some(BigRational::new(-&self.b, BigInt::from(2) * &self.a))
        }
    }
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coef, mono) in [(&self.a, "X^2"), (&self.b, "X"), (&self.c, "")] {
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { "-" } else { "+" };
            if first {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = coef.abs();
            if mag.is_one() && !mono.is_empty() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON shape: `{"A": "…", "B": "…", "C": "…"}`.
impl Serialize for QuadraticPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticPoly", 3)?;
        st.serialize_field("A", &self.a.to_string())?;
        st.serialize_field("B", &self.b.to_string())?;
        st.serialize_field("C", &self.c.to_string())?;
        st.end()
    }
}

/// Ways an approximant can fail to have an irrational quadratic root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    /// `A = 0`; the root of the remaining linear part, if any.
    ZeroLeading { linear_root: Option<BigRational> },
    /// `B² − 4AC` is a perfect square or negative.
    RationalOrComplexRoots { discriminant: BigInt },
    /// Neither root lies in the expected cylinder.
    NoRootInCylinder,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::ZeroLeading {
                linear_root: Some(r),
            } => write!(f, "leading coefficient is 0, linear root {r}"),
            Degeneracy::ZeroLeading { linear_root: None } => {
                write!(f, "leading coefficient is 0, no linear root")
            }
            Degeneracy::RationalOrComplexRoots { discriminant } => {
                write!(f, "discriminant {discriminant} has no irrational square root")
            }
            Degeneracy::NoRootInCylinder => write!(f, "no root matches the leading digits"),
        }
    }
}

/// `P_n` together with its root `α_n`, the number whose expansion is
/// `[0; a_1 … a_r, (a_{r+1} … a_{r+s}) repeated]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticApproximant {
    pub poly: QuadraticPoly,
    pub root: QuadraticSurd,
    pub r: usize,
    pub s: usize,
}

fn select_root(
    poly: QuadraticPoly,
    table: &ConvergentTable,
    depth: usize,
) -> Result<QuadraticSurd, CfError> {
    if poly.a.is_zero() {
        let linear_root = if poly.b.is_zero() {
            None
        } else {
            Some(BigRational::new(-&poly.c, poly.b.clone()))
        };
        return Err(CfError::Degenerate {
            poly: Box::new(poly),
            kind: Box::new(Degeneracy::ZeroLeading { linear_root }),
        });
    }
    let disc = poly.discriminant();
    if !disc.is_positive() || is_square(&disc) {
        return Err(CfError::Degenerate {
            poly: Box::new(poly),
            kind: Box::new(Degeneracy::RationalOrComplexRoots { discriminant: disc }),
        });
    }
    // the conjugate root never lies in the cylinder of the defining digits
    let cyl = cylinder(table, depth)?;
    for plus in [true, false] {
        let root = QuadraticSurd::quadratic_root(&poly.a, &poly.b, &poly.c, plus)?;
        if root.strictly_between(&cyl.lo, &cyl.hi) {
            return Ok(root);
        }
    }
    Err(CfError::Degenerate {
        poly: Box::new(poly),
        kind: Box::new(Degeneracy::NoRootInCylinder),
    })
}

/// `P_n(X) = q_{s−1} X² + (q_s − p_{s−1}) X − p_s`, whose root in `(0, 1)`
/// is `[0; (a_1 … a_s) repeated]`.
pub fn build_pn_pure(table: &ConvergentTable, s: usize) -> Result<QuadraticApproximant, CfError> {
    if s == 0 {
        return Err(CfError::ZeroLength("period length s"));
    }
    let poly = QuadraticPoly {
        a: table.q(s - 1)?.clone(),
        b: table.q(s)? - table.p(s - 1)?,
        c: -(table.p(s)?.clone()),
    };
    let root = select_root(poly.clone(), table, s)?;
    Ok(QuadraticApproximant { poly, root, r: 0, s })
}

/// The preperiodic approximant with preperiod `a_1 … a_r` and period
/// `a_{r+1} … a_{r+s}`; requires `r ≥ 1`.
pub fn build_pn_preperiodic(
    table: &ConvergentTable,
    r: usize,
    s: usize,
) -> Result<QuadraticApproximant, CfError> {
    if r == 0 {
        return Err(CfError::ZeroLength("preperiod length r"));
    }
    if s == 0 {
        return Err(CfError::ZeroLength("period length s"));
    }
    let p = |i: usize| table.p(i);
    let q = |i: usize| table.q(i);
    let (p0, p1, p2, p3) = (p(r - 1)?, p(r)?, p(r + s - 1)?, p(r + s)?);
    let (q0, q1, q2, q3) = (q(r - 1)?, q(r)?, q(r + s - 1)?, q(r + s)?);
    let poly = QuadraticPoly {
        a: q0 * q3 - q1 * q2,
        b: -(q0 * p3 - q1 * p2 + p0 * q3 - p1 * q2),
        c: p0 * p3 - p1 * p2,
    };
    let root = select_root(poly.clone(), table, r + s)?;
    Ok(QuadraticApproximant { poly, root, r, s })
}

/// Range of `P` over `e`, exact: endpoints plus the vertex when it is inside.
pub fn evaluate_poly_enclosure(poly: &QuadraticPoly, e: &Enclosure) -> Enclosure {
    let mut vals = vec![poly.eval(&e.lo), poly.eval(&e.hi)];
    if let Some(v) = poly.vertex() {
        if e.contains(&v) {
            vals.push(poly.eval(&v));
        }
    }
    let lo = vals.iter().min().unwrap().clone();
    let hi = vals.iter().max().unwrap().clone();
    Enclosure { lo, hi }
}

impl QuadraticApproximant {
    /// Exact `P_n(α_n)` check in surd arithmetic.
    pub fn root_checks(&self) -> bool {
        self.poly.has_root(&self.root)
    }
}
