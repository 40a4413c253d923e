//! Exact orientation, intersection and containment predicates over integer points.
//!
//! `left(u, v, w)` holds when `w` lies strictly to the left of the oriented line
//! through `u` and `v`, or on the ray that starts in `u` and passes through `v`
//! (excluding `u` itself). Every other predicate is built from it.

mod axioms;

pub use axioms::{axiom_ids, check_axioms, check_axioms_with, AxiomReport, AxiomResult, DEFAULT_BUDGET};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of the integer plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// An exact point with reduced rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x_num: BigInt,
    pub x_den: BigInt,
    pub y_num: BigInt,
    pub y_den: BigInt,
}

impl RationalPoint {
    pub fn from_ratios(x: BigRational, y: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        let (x_num, x_den) = x.into_raw();
        let (y_num, y_den) = y.into_raw();
        RationalPoint { x_num, x_den, y_num, y_den }
    }

    pub fn from_point(p: Point) -> Self {
        RationalPoint { x_num: BigInt::from(p.x), x_den: BigInt::one(), y_num: BigInt::from(p.y), y_den: BigInt::one() }
    }

    pub fn x(&self) -> BigRational {
        BigRational::new(self.x_num.clone(), self.x_den.clone())
    }

    pub fn y(&self) -> BigRational {
        BigRational::new(self.y_num.clone(), self.y_den.clone())
    }

    /// True when the point coincides with the integer point `p`.
    pub fn equals_point(&self, p: Point) -> bool {
        self.x_den.is_one() && self.y_den.is_one() && self.x_num == BigInt::from(p.x) && self.y_num == BigInt::from(p.y)
    }

    /// Squared euclidean distance to an integer point, exactly.
    pub fn dist2_to(&self, p: Point) -> BigRational {
        let dx = self.x() - BigRational::from_integer(BigInt::from(p.x));
        let dy = self.y() - BigRational::from_integer(BigInt::from(p.y));
        &dx * &dx + &dy * &dy
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, {}/{})", self.x_num, self.x_den, self.y_num, self.y_den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segments do not intersect")]
    NotIntersecting,
    #[error("segments overlap along a common subsegment")]
    CollinearOverlap,
    #[error("unknown axiom id `{0}`")]
    UnknownAxiomId(String),
}

/// Sign of `a*d - b*c`, exact for any 64-bit inputs.
fn det_sign(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    match (a.checked_mul(d), b.checked_mul(c)) {
        (Some(ad), Some(bc)) => match ad.checked_sub(bc) {
            Some(r) => r.cmp(&0),
            None => ad.cmp(&bc),
        },
        _ => {
            let r = BigInt::from(a) * BigInt::from(d) - BigInt::from(b) * BigInt::from(c);
            r.sign_cmp()
        }
    }
}

/// Sign of `a*c + b*d`, exact for any 64-bit inputs.
fn dot_sign(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    match (a.checked_mul(c), b.checked_mul(d)) {
        (Some(ac), Some(bd)) => match ac.checked_add(bd) {
            Some(r) => r.cmp(&0),
            None => ac.cmp(&-bd),
        },
        _ => {
            let r = BigInt::from(a) * BigInt::from(c) + BigInt::from(b) * BigInt::from(d);
            r.sign_cmp()
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn diff(a: Point, b: Point) -> (i128, i128) {
    (a.x as i128 - b.x as i128, a.y as i128 - b.y as i128)
}

/// Orientation of `w` with respect to the directed line `u -> v`:
/// `Greater` for counter-clockwise, `Less` for clockwise, `Equal` for collinear.
pub fn orient(u: Point, v: Point, w: Point) -> Ordering {
    let (ax, ay) = diff(v, u);
    let (bx, by) = diff(w, u);
    det_sign(ax, ay, bx, by)
}

/// Sign of the dot product `(v - u) . (w - u)`.
pub fn dot(u: Point, v: Point, w: Point) -> Ordering {
    let (ax, ay) = diff(v, u);
    let (bx, by) = diff(w, u);
    dot_sign(ax, ay, bx, by)
}

/// Predicates derived from an orientation relation.
///
/// Only `left` is primitive; the derived predicates follow the closure
/// rules for intersection and the three-sided definition of inside.
pub trait LeftModel {
    fn left(&self, u: Point, v: Point, w: Point) -> bool;

    fn between(&self, u: Point, v: Point, w: Point) -> bool {
        self.left(u, v, w) && self.left(v, u, w)
    }

    fn intersects(&self, u: Point, v: Point, w: Point, x: Point) -> bool {
        let l = |a, b, c| self.left(a, b, c);
        let (luvw, luvx) = (l(u, v, w), l(u, v, x));
        let (lvuw, lvux) = (l(v, u, w), l(v, u, x));
        let (lwxu, lwxv) = (l(w, x, u), l(w, x, v));
        let (lxwu, lxwv) = (l(x, w, u), l(x, w, v));
        (luvw && lvux && lwxu && lxwv && !(u == x && v == w))
            || (luvw && lvux && lwxv && lxwu)
            || (luvx && lvuw && lwxu && lxwv)
            || (luvx && lvuw && lwxv && lxwu && !(u == w && v == x))
    }

    fn inside(&self, u: Point, v: Point, w: Point, x: Point) -> bool {
        self.left(u, v, x) && self.left(v, w, x) && self.left(w, u, x)
    }
}

/// The concrete cross-product model with the collinear-ray tie rule.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl LeftModel for Exact {
    fn left(&self, u: Point, v: Point, w: Point) -> bool {
        left(u, v, w)
    }
}

pub fn left(u: Point, v: Point, w: Point) -> bool {
    if u == v || u == w {
        return false;
    }
    match orient(u, v, w) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => dot(u, v, w) == Ordering::Greater,
    }
}

/// Strict betweenness: `w` lies in the open segment `uv`.
pub fn between(u: Point, v: Point, w: Point) -> bool {
    Exact.between(u, v, w)
}

/// Segments `uv` and `wx` share a point that is not an end vertex of both.
pub fn intersects(u: Point, v: Point, w: Point, x: Point) -> bool {
    Exact.intersects(u, v, w, x)
}

/// `x` lies in the closed oriented triangle `uvw`, corners excluded.
pub fn inside(u: Point, v: Point, w: Point, x: Point) -> bool {
    Exact.inside(u, v, w, x)
}

/// The exact crossing point of two intersecting, non-overlapping segments.
pub fn intersection_point(u: Point, v: Point, w: Point, x: Point) -> Result<RationalPoint, GeometryError> {
    if !intersects(u, v, w, x) {
        return Err(GeometryError::NotIntersecting);
    }
    let (rx, ry) = diff(v, u);
    let (sx, sy) = diff(x, w);
    let denom = BigInt::from(rx) * BigInt::from(sy) - BigInt::from(ry) * BigInt::from(sx);
    if denom.is_zero() {
        return Err(GeometryError::CollinearOverlap);
    }
    let (qx, qy) = diff(w, u);
    let num = BigInt::from(qx) * BigInt::from(sy) - BigInt::from(qy) * BigInt::from(sx);
    let t = BigRational::new(num, denom);
    let px = BigRational::from_integer(BigInt::from(u.x)) + &t * BigRational::from_integer(BigInt::from(rx));
    let py = BigRational::from_integer(BigInt::from(u.y)) + &t * BigRational::from_integer(BigInt::from(ry));
    Ok(RationalPoint::from_ratios(px, py))
}
