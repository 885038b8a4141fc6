//! Torsion points of an elliptic curve and sign-translation automorphisms
//! of a product of two curves.

use std::cmp::Ordering;
use std::fmt;

use num_integer::lcm;

use crate::rat::Rat1;

/// A torsion point of one elliptic curve, i.e. an element of `(Q/Z)^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionPoint {
    pub u: Rat1,
    pub v: Rat1,
}

impl TorsionPoint {
    pub fn new(u: Rat1, v: Rat1) -> Self {
        TorsionPoint { u, v }
    }

    /// Convenience constructor from two `num/den` pairs.
    pub fn from_fracs(un: i64, ud: i64, vn: i64, vd: i64) -> Self {
        TorsionPoint::new(Rat1::new(un, ud), Rat1::new(vn, vd))
    }

    pub fn zero() -> Self {
        TorsionPoint::new(Rat1::zero(), Rat1::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Order of the point in `(Q/Z)^2`: the lcm of the coordinate orders.
    pub fn order(&self) -> i64 {
        lcm(self.u.order(), self.v.order())
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        TorsionPoint::new(self.u + other.u, self.v + other.v)
    }

    pub fn sub(&self, other: &TorsionPoint) -> TorsionPoint {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint::new(-self.u, -self.v)
    }

    pub fn double(&self) -> TorsionPoint {
        self.add(self)
    }

    /// One solution of `2x = self`; all four differ by 2-torsion.
    pub fn halve(&self) -> TorsionPoint {
        TorsionPoint::new(self.u.halve(), self.v.halve())
    }

    /// The four points of order dividing 2, in canonical order.
    pub fn two_torsion() -> [TorsionPoint; 4] {
        let z = Rat1::zero();
        let h = Rat1::half();
        [
            TorsionPoint::new(z, z),
            TorsionPoint::new(z, h),
            TorsionPoint::new(h, z),
            TorsionPoint::new(h, h),
        ]
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The linear part of a curve automorphism: multiplication by +1 or -1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, p: &TorsionPoint) -> TorsionPoint {
        match self {
            Sign::Plus => *p,
            Sign::Minus => p.neg(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// An automorphism `x -> sign*x + t` of one elliptic curve.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CurveAuto {
    pub sign: Sign,
    pub t: TorsionPoint,
}

impl CurveAuto {
    pub fn new(sign: Sign, t: TorsionPoint) -> Self {
        CurveAuto { sign, t }
    }

    pub fn identity() -> Self {
        CurveAuto::new(Sign::Plus, TorsionPoint::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.t.is_zero()
    }

    pub fn apply(&self, x: &TorsionPoint) -> TorsionPoint {
        self.sign.apply(x).add(&self.t)
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    /// `(e1,t1)(e2,t2) = (e1 e2, e1 t2 + t1)`.
    pub fn compose(&self, other: &CurveAuto) -> CurveAuto {
        CurveAuto::new(
            self.sign * other.sign,
            self.sign.apply(&other.t).add(&self.t),
        )
    }

    /// `(e,t)^(-1) = (e, -e t)`.
    pub fn inverse(&self) -> CurveAuto {
        CurveAuto::new(self.sign, self.sign.apply(&self.t).neg())
    }

    /// Points of the curve fixed by this automorphism.
    ///
    /// * `(+1, 0)` fixes the whole curve;
    /// * `(+1, t)` with `t != 0` is a free translation;
    /// * `(-1, t)` fixes the four solutions of `2x = t`.
    pub fn fixed_locus(&self) -> FixedLocus1D {
        match self.sign {
            Sign::Plus => {
                if self.t.is_zero() {
                    FixedLocus1D::WholeCurve
                } else {
                    FixedLocus1D::Empty
                }
            }
            Sign::Minus => {
                let x0 = self.t.halve();
                let mut pts: Vec<TorsionPoint> = TorsionPoint::two_torsion()
                    .iter()
                    .map(|tau| x0.add(tau))
                    .collect();
                pts.sort();
                pts.dedup();
                FixedLocus1D::Points(pts)
            }
        }
    }

    /// Conjugation by the translation `x -> x + s`:
    /// `(e,t) -> (e, t + (e-1) s)`.  Components with `sign = -1` absorb
    /// `2s`; components with `sign = +1` are unchanged.
    pub fn conjugate_by_shift(&self, s: &TorsionPoint) -> CurveAuto {
        match self.sign {
            Sign::Plus => *self,
            Sign::Minus => CurveAuto::new(self.sign, self.t.sub(&s.double())),
        }
    }
}

impl fmt::Display for CurveAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sign, self.t.u, self.t.v)
    }
}

/// Fixed locus of a curve automorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixedLocus1D {
    Empty,
    WholeCurve,
    Points(Vec<TorsionPoint>),
}

impl FixedLocus1D {
    pub fn is_empty(&self) -> bool {
        matches!(self, FixedLocus1D::Empty)
    }

    pub fn contains(&self, x: &TorsionPoint) -> bool {
        match self {
            FixedLocus1D::Empty => false,
            FixedLocus1D::WholeCurve => true,
            FixedLocus1D::Points(pts) => pts.contains(x),
        }
    }
}

/// A pair of curve automorphisms acting diagonally on `D1 x D2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProductAuto {
    pub first: CurveAuto,
    pub second: CurveAuto,
}

impl ProductAuto {
    pub fn new(first: CurveAuto, second: CurveAuto) -> Self {
        ProductAuto { first, second }
    }

    pub fn identity() -> Self {
        ProductAuto::new(CurveAuto::identity(), CurveAuto::identity())
    }

    pub fn is_identity(&self) -> bool {
        self.first.is_identity() && self.second.is_identity()
    }

    pub fn signs(&self) -> (Sign, Sign) {
        (self.first.sign, self.second.sign)
    }

    /// True when the linear part is trivial, i.e. the map is a translation.
    pub fn is_translation(&self) -> bool {
        self.signs() == (Sign::Plus, Sign::Plus)
    }

    pub fn apply(&self, p: &(TorsionPoint, TorsionPoint)) -> (TorsionPoint, TorsionPoint) {
        (self.first.apply(&p.0), self.second.apply(&p.1))
    }

    pub fn compose(&self, other: &ProductAuto) -> ProductAuto {
        ProductAuto::new(
            self.first.compose(&other.first),
            self.second.compose(&other.second),
        )
    }

    pub fn inverse(&self) -> ProductAuto {
        ProductAuto::new(self.first.inverse(), self.second.inverse())
    }

    pub fn fixed_locus(&self) -> ProductFixedLocus {
        ProductFixedLocus {
            first: self.first.fixed_locus(),
            second: self.second.fixed_locus(),
        }
    }

    pub fn swap_factors(&self) -> ProductAuto {
        ProductAuto::new(self.second, self.first)
    }

    pub fn conjugate_by_shift(&self, s1: &TorsionPoint, s2: &TorsionPoint) -> ProductAuto {
        ProductAuto::new(
            self.first.conjugate_by_shift(s1),
            self.second.conjugate_by_shift(s2),
        )
    }

    /// Canonical ordering key: `(sign1, sign2, t1.u, t1.v, t2.u, t2.v)`.
    fn key(&self) -> (Sign, Sign, Rat1, Rat1, Rat1, Rat1) {
        (
            self.first.sign,
            self.second.sign,
            self.first.t.u,
            self.first.t.v,
            self.second.t.u,
            self.second.t.v,
        )
    }
}

impl PartialOrd for ProductAuto {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProductAuto {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for ProductAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.first, self.second)
    }
}

/// Fixed locus of a product automorphism, componentwise.  An `Empty`
/// component makes the whole locus empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductFixedLocus {
    pub first: FixedLocus1D,
    pub second: FixedLocus1D,
}

impl ProductFixedLocus {
    pub fn is_empty(&self) -> bool {
        self.first.is_empty() || self.second.is_empty()
    }

    /// Dimension of the locus; `None` when it is empty.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let dim = |l: &FixedLocus1D| usize::from(matches!(l, FixedLocus1D::WholeCurve));
        Some(dim(&self.first) + dim(&self.second))
    }

    /// The fixed points when the locus is finite; `None` otherwise.
    pub fn isolated_points(&self) -> Option<Vec<(TorsionPoint, TorsionPoint)>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        match (&self.first, &self.second) {
            (FixedLocus1D::Points(a), FixedLocus1D::Points(b)) => {
                let mut pts = Vec::with_capacity(a.len() * b.len());
                for x in a {
                    for y in b {
                        pts.push((*x, *y));
                    }
                }
                pts.sort();
                Some(pts)
            }
            _ => None,
        }
    }

    pub fn contains(&self, p: &(TorsionPoint, TorsionPoint)) -> bool {
        self.first.contains(&p.0) && self.second.contains(&p.1)
    }
}

/// The quotient isogeny `D -> D/<b>` for a point `b` of order 2, written on
/// torsion coordinates.  The target is again `(Q/Z)^2` via an explicit
/// basis change of the lattice.
#[derive(Clone, Copy, Debug)]
pub struct TwoTorsionQuotient {
    b: TorsionPoint,
}

impl TwoTorsionQuotient {
    pub fn new(b: TorsionPoint) -> Self {
        assert_eq!(b.order(), 2, "quotient point must have order exactly 2");
        TwoTorsionQuotient { b }
    }

    pub fn kernel_generator(&self) -> TorsionPoint {
        self.b
    }

    pub fn apply(&self, p: &TorsionPoint) -> TorsionPoint {
        let half = Rat1::half();
        match (self.b.u == half, self.b.v == half) {
            (true, false) => TorsionPoint::new(p.u.double(), p.v),
            (false, true) => TorsionPoint::new(p.u, p.v.double()),
            (true, true) => TorsionPoint::new(p.u.double(), p.v - p.u),
            (false, false) => unreachable!("kernel generator has order 2"),
        }
    }

    /// Descend a curve automorphism along the isogeny.
    pub fn descend(&self, a: &CurveAuto) -> CurveAuto {
        CurveAuto::new(a.sign, self.apply(&a.t))
    }
}
