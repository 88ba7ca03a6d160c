//! Rational points on `E_d: y² = x³ − d²x` and three-term progressions of
//! rational squares with common difference `d`.
//!
//! A point `(x, y)` with `y ≠ 0` gives roots
//!
//! ```text
//! a = (x² − 2dx − d²) / 2y,   b = (x² + d²) / 2y,   c = (−x² − 2dx + d²) / 2y
//! ```
//!
//! with `b² − a² = c² − b² = d`, and a progression `a², b², c²` gives back the
//! point `(d(c − b)/(a − b), d²(2b − a − c)/(a − b)²)`. Doubling a point
//! produces a new point whose `x` is the square `b²` of the middle root, which
//! is what makes iterated doubling generate fresh progressions.

use alloc::string::ToString;
use core::fmt;

use num_traits::Signed;

use crate::{Error, Integer, Rational, Result};

/// The curve parameter `d ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveParam {
    d: Rational,
}

impl CurveParam {
    pub fn new(d: Integer) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::BadCurveParam(d.to_string()));
        }
        Ok(CurveParam { d: d.into() })
    }

    pub fn d(&self) -> &Integer {
        self.d.numer()
    }

    fn rational(&self) -> &Rational {
        &self.d
    }

    /// `y² = x³ − d²x`, exactly.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let d2 = self.d.square();
        y.square() == &(&x.square() * x) - &(&d2 * x)
    }
}

impl From<u32> for CurveParam {
    fn from(d: u32) -> Self {
        CurveParam::new(Integer::from(d.max(1))).expect("positive")
    }
}

impl fmt::Debug for CurveParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.d)
    }
}

/// A rational point of `E_d`, checked on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    x: Rational,
    y: Rational,
    param: CurveParam,
}

/// Whether `point` lies on the curve for `param` (which need not be the
/// parameter the point was built with).
pub fn on_curve(point: &CurvePoint, param: &CurveParam) -> bool {
    param.contains(&point.x, &point.y)
}

impl CurvePoint {
    pub fn new(x: Rational, y: Rational, param: &CurveParam) -> Result<Self> {
        if !param.contains(&x, &y) {
            return Err(Error::NotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
                d: param.d().to_string(),
            });
        }
        Ok(CurvePoint {
            x,
            y,
            param: param.clone(),
        })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn param(&self) -> &CurveParam {
        &self.param
    }

    /// The progression of squares associated with this point.
    pub fn to_ap(&self) -> Result<ApTriple> {
        point_to_ap(self)
    }

    /// Tangent-line doubling.
    pub fn double(&self) -> Result<CurvePoint> {
        double(self)
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on {:?}", self.x, self.y, self.param)
    }
}

/// Roots `a, b, c` whose squares form a progression with difference `d`.
/// Signs are kept as computed; only the squares carry meaning.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ApTriple {
    a: Rational,
    b: Rational,
    c: Rational,
    param: CurveParam,
}

impl ApTriple {
    pub fn new(a: Rational, b: Rational, c: Rational, param: &CurveParam) -> Result<Self> {
        let (a2, b2, c2) = (a.square(), b.square(), c.square());
        if &b2 - &a2 != *param.rational() || &c2 - &b2 != *param.rational() {
            return Err(Error::NotProgression(alloc::format!("{a2}, {b2}, {c2}")));
        }
        Ok(ApTriple {
            a,
            b,
            c,
            param: param.clone(),
        })
    }

    pub fn roots(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn param(&self) -> &CurveParam {
        &self.param
    }

    /// `[a², b², c²]`, ascending.
    pub fn squares(&self) -> [Rational; 3] {
        [self.a.square(), self.b.square(), self.c.square()]
    }
}

impl fmt::Debug for ApTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; {:?})", self.a, self.b, self.c, self.param)
    }
}

pub fn point_to_ap(point: &CurvePoint) -> Result<ApTriple> {
    let CurvePoint { x, y, param } = point;
    if y.is_zero() {
        return Err(Error::TwoTorsion);
    }
    let d = param.rational();
    let two_y = y + y;
    let x2 = x.square();
    let d2 = d.square();
    let two_dx = &(d + d) * x;

    let a = (&(&x2 - &two_dx) - &d2) / &two_y;
    let b = &(&x2 + &d2) / &two_y;
    let c = (&(&d2 - &x2) - &two_dx) / &two_y;
    ApTriple::new(a, b, c, param)
}

pub fn ap_to_point(t: &ApTriple) -> Result<CurvePoint> {
    let ApTriple { a, b, c, param } = t;
    let a_minus_b = a - b;
    if a_minus_b.is_zero() {
        return Err(Error::DegenerateProgression);
    }
    let d = param.rational();
    let x = (d * &(c - b)) / &a_minus_b;
    let y = (&d.square() * &(&(b + b) - &(a + c))) / a_minus_b.square();
    CurvePoint::new(x, y, param)
}

pub fn double(point: &CurvePoint) -> Result<CurvePoint> {
    let CurvePoint { x, y, param } = point;
    if y.is_zero() {
        return Err(Error::TwoTorsion);
    }
    let d2 = param.rational().square();
    let two_y = y + y;
    let x2 = x.square();
    let slope = (&(&x2 + &(&x2 + &x2)) - &d2) / &two_y;
    let new_x = &slope.square() - &(x + x);
    let new_y = &(&slope * &(x - &new_x)) - y;

    let expected_x = (&(&x2 + &d2) / &two_y).square();
    assert_eq!(new_x, expected_x, "doubling x-coordinate identity");
    CurvePoint::new(new_x, new_y, param)
}
