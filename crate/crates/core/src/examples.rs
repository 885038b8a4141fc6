//! The two canonical quotient constructions, instantiated with a fixed
//! choice of 2-torsion points.

use crate::group::ActionGroup;
use crate::torus::{CurveAuto, ProductAuto, Sign, TorsionPoint};

/// `a = b = (1/2, 0)`: the order-4 action
/// `e1 = (-x1, x2 + b)`, `e2 = (x1 + a, -x2)`.
///
/// The quotient is an Enriques surface with 8 nodes.
pub fn example_1() -> ActionGroup {
    let a = TorsionPoint::from_fracs(1, 2, 0, 1);
    let b = TorsionPoint::from_fracs(1, 2, 0, 1);
    example_1_with(a, b).expect("canonical data is valid")
}

/// Example-1 action for arbitrary nonzero order-2 points `a`, `b`.
pub fn example_1_with(a: TorsionPoint, b: TorsionPoint) -> Option<ActionGroup> {
    if a.order() != 2 || b.order() != 2 {
        return None;
    }
    let e1 = ProductAuto::new(
        CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
        CurveAuto::new(Sign::Plus, b),
    );
    let e2 = ProductAuto::new(
        CurveAuto::new(Sign::Plus, a),
        CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
    );
    Some(ActionGroup::generate_default(&[e1, e2]).expect("order-4 closure"))
}

/// `a1 = b1 = (1/2, 0)`, `a2 = b3 = (0, 1/2)`: the order-8 action
/// `e1 = (x1 + a1, x2 + b1)`, `e2 = (x1 + a2, -x2)`, `e3 = (-x1, x2 + b3)`.
///
/// The quotient is again an Enriques surface with 8 nodes.
pub fn example_2() -> ActionGroup {
    let a1 = TorsionPoint::from_fracs(1, 2, 0, 1);
    let a2 = TorsionPoint::from_fracs(0, 1, 1, 2);
    let b1 = TorsionPoint::from_fracs(1, 2, 0, 1);
    let b3 = TorsionPoint::from_fracs(0, 1, 1, 2);
    example_2_with(a1, a2, b1, b3).expect("canonical data is valid")
}

/// Example-2 action for order-2 points with `a1 != a2` and `b1 != b3`.
pub fn example_2_with(
    a1: TorsionPoint,
    a2: TorsionPoint,
    b1: TorsionPoint,
    b3: TorsionPoint,
) -> Option<ActionGroup> {
    if [a1, a2, b1, b3].iter().any(|p| p.order() != 2) || a1 == a2 || b1 == b3 {
        return None;
    }
    let e1 = ProductAuto::new(
        CurveAuto::new(Sign::Plus, a1),
        CurveAuto::new(Sign::Plus, b1),
    );
    let e2 = ProductAuto::new(
        CurveAuto::new(Sign::Plus, a2),
        CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
    );
    let e3 = ProductAuto::new(
        CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
        CurveAuto::new(Sign::Plus, b3),
    );
    Some(ActionGroup::generate_default(&[e1, e2, e3]).expect("order-8 closure"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(example_1().order(), 4);
        assert_eq!(example_2().order(), 8);
    }

    #[test]
    fn invalid_data_is_rejected() {
        let zero = TorsionPoint::zero();
        let h = TorsionPoint::from_fracs(1, 2, 0, 1);
        let k = TorsionPoint::from_fracs(0, 1, 1, 2);
        assert!(example_1_with(zero, h).is_none());
        assert!(example_2_with(h, h, h, k).is_none());
        assert!(example_2_with(h, k, h, TorsionPoint::from_fracs(1, 4, 0, 1)).is_none());
    }
}
