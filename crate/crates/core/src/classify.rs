//! Normalization of actions up to origin change and factor swap, matching
//! against the two quotient templates, and the bicanonical-degree
//! arithmetic for `p_g = 0` surfaces of general type.

use std::fmt;

use crate::fibration::Factor;
use crate::group::ActionGroup;
use crate::quotient::{self, SurfaceType};
use crate::rat::Rat1;
use crate::torus::{ProductAuto, Sign, TorsionPoint, TwoTorsionQuotient};
use crate::{Error, Result};

/// An action brought to its canonical position: the lexicographically least
/// element list over all origin shifts and the optional factor swap.
#[derive(Clone, Debug)]
pub struct NormalizedAction {
    pub group: ActionGroup,
    /// Shift applied to each factor: conjugating the (possibly swapped)
    /// input by this shift yields `group`.
    pub origin_shift: (TorsionPoint, TorsionPoint),
    pub factors_swapped: bool,
}

/// Candidate origin shifts: conjugation moves the translation of a
/// sign-minus component by `-2s`, so it suffices to let `2s` range over the
/// grid of denominators dividing the lcm of denominators in the group.
fn shift_grid(denominator_lcm: i64) -> Vec<TorsionPoint> {
    let l = denominator_lcm;
    let mut grid = Vec::with_capacity((l * l) as usize);
    for a in 0..l {
        for b in 0..l {
            grid.push(TorsionPoint::new(Rat1::new(a, l), Rat1::new(b, l)));
        }
    }
    grid
}

/// Search all origin shifts (bounded as above) and the factor swap for the
/// canonical form of the action.
pub fn normalize_action(group: &ActionGroup) -> NormalizedAction {
    let lcm = group.translation_denominator_lcm();
    let grid = shift_grid(lcm);

    let mut best: Option<NormalizedAction> = None;
    for swapped in [false, true] {
        let base = if swapped {
            group.swap_factors()
        } else {
            group.clone()
        };
        for delta1 in &grid {
            // s with 2s = -delta, so conjugation adds delta to minus-parts.
            let s1 = delta1.neg().halve();
            for delta2 in &grid {
                let s2 = delta2.neg().halve();
                let candidate = base.conjugate_by_shift(&s1, &s2);
                let better = match &best {
                    None => true,
                    Some(b) => candidate.elements() < b.group.elements(),
                };
                if better {
                    best = Some(NormalizedAction {
                        group: candidate,
                        origin_shift: (s1, s2),
                        factors_swapped: swapped,
                    });
                }
            }
        }
    }
    best.expect("grid is nonempty")
}

/// One 2-isogeny step applied to a factor before template matching.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FactorReduction {
    pub factor: Factor,
    /// Generator of the kernel of the isogeny on that factor.
    pub kernel: TorsionPoint,
}

/// Outcome of matching an action against the two templates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TemplateVerdict {
    /// Order-4 template `e1 = (-x1, x2 + b)`, `e2 = (x1 + a, -x2)` with
    /// `a`, `b` nonzero of order 2.
    Example1 { a: TorsionPoint, b: TorsionPoint },
    /// Order-8 template `e1 = (x1 + a1, x2 + b1)`, `e2 = (x1 + a2, -x2)`,
    /// `e3 = (-x1, x2 + b3)` with `a1 != a2` and `b1 != b3` of order 2.
    Example2 {
        a1: TorsionPoint,
        a2: TorsionPoint,
        b1: TorsionPoint,
        b3: TorsionPoint,
    },
    NotEnriques8Nodal { reason: String },
}

impl TemplateVerdict {
    pub fn is_match(&self) -> bool {
        !matches!(self, TemplateVerdict::NotEnriques8Nodal { .. })
    }
}

impl fmt::Display for TemplateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateVerdict::Example1 { a, b } => write!(f, "Example1(a = {a}, b = {b})"),
            TemplateVerdict::Example2 { a1, a2, b1, b3 } => {
                write!(f, "Example2(a1 = {a1}, a2 = {a2}, b1 = {b1}, b3 = {b3})")
            }
            TemplateVerdict::NotEnriques8Nodal { reason } => {
                write!(f, "NotEnriques8Nodal({reason})")
            }
        }
    }
}

/// Verdict plus the isogeny reductions that were needed to reach it.
///
/// A reduction arises when an order-8 action has a pure translation whose
/// first or second coordinate vanishes: the quotient of that factor by the
/// nonzero coordinate is again an elliptic curve, and the induced order-4
/// action is an Example-1 action on the isogenous product.  The quotient
/// surface is unchanged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TemplateMatch {
    pub verdict: TemplateVerdict,
    pub reductions: Vec<FactorReduction>,
}

fn not_enriques(reason: String) -> TemplateMatch {
    TemplateMatch {
        verdict: TemplateVerdict::NotEnriques8Nodal { reason },
        reductions: Vec::new(),
    }
}

/// Full verification gate: free in codimension 1, eight nodes, `p_g = q = 0`
/// and `chi = 1`.  Returns a human- and machine-readable reason on failure.
fn verify_enriques_8_nodal(group: &ActionGroup) -> std::result::Result<(), String> {
    if !quotient::codim1_free(group) {
        let witness = group
            .non_identity()
            .find(|g| matches!(g.fixed_locus().dimension(), Some(d) if d > 0))
            .expect("witness exists");
        return Err(format!("not free in codimension 1: {witness} fixes a curve"));
    }
    let census = match quotient::fixed_point_census(group) {
        Ok(c) => c,
        Err(e) => return Err(e.to_string()),
    };
    let inv = match quotient::quotient_invariants_with_census(group, &census) {
        Ok(i) => i,
        Err(e) => return Err(e.to_string()),
    };
    let mut failures = Vec::new();
    if inv.node_count != 8 {
        failures.push(format!("{} nodes", inv.node_count));
    }
    if inv.chi != 1 {
        failures.push(format!("chi={}", inv.chi));
    }
    if (inv.pg, inv.q) != (0, 0) {
        failures.push(format!("(pg,q)=({},{})", inv.pg, inv.q));
    }
    debug_assert!(
        !failures.is_empty() || inv.surface_type == SurfaceType::NodalEnriques,
        "verification and classification must agree"
    );
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join(", "))
    }
}

/// Match a verified action of order 4 against the Example-1 shape.
fn match_order_4(group: &ActionGroup) -> std::result::Result<TemplateVerdict, String> {
    let find_unique = |signs: (Sign, Sign)| -> std::result::Result<ProductAuto, String> {
        let hits: Vec<&ProductAuto> = group
            .elements()
            .iter()
            .filter(|g| g.signs() == signs)
            .collect();
        match hits.as_slice() {
            [g] => Ok(**g),
            _ => Err(format!(
                "expected one element with signs ({}, {}), found {}",
                signs.0,
                signs.1,
                hits.len()
            )),
        }
    };
    let e1_like = find_unique((Sign::Minus, Sign::Plus))?;
    let e2_like = find_unique((Sign::Plus, Sign::Minus))?;
    let b = e1_like.second.t;
    let a = e2_like.first.t;
    if a.order() != 2 || b.order() != 2 {
        return Err(format!(
            "template translations must have order 2, got a = {a}, b = {b}"
        ));
    }
    Ok(TemplateVerdict::Example1 { a, b })
}

/// Match a verified action of order 8 against the Example-2 shape, reducing
/// along a factor isogeny when the pure translation has a zero coordinate.
fn match_order_8(group: &ActionGroup) -> std::result::Result<TemplateMatch, String> {
    let translations: Vec<&ProductAuto> = group
        .non_identity()
        .filter(|g| g.is_translation())
        .collect();
    let [tau] = translations.as_slice() else {
        return Err(format!(
            "expected exactly one nonzero pure translation, found {}",
            translations.len()
        ));
    };
    let a1 = tau.first.t;
    let b1 = tau.second.t;

    if a1.is_zero() || b1.is_zero() {
        // The translation moves only one factor; quotient it away and match
        // the induced order-4 action.
        let (reduced, reduction) = if a1.is_zero() {
            let iso = TwoTorsionQuotient::new(b1);
            (
                group.descend_second_factor(&iso),
                FactorReduction {
                    factor: Factor::Two,
                    kernel: b1,
                },
            )
        } else {
            let iso = TwoTorsionQuotient::new(a1);
            (
                group.descend_first_factor(&iso),
                FactorReduction {
                    factor: Factor::One,
                    kernel: a1,
                },
            )
        };
        if reduced.order() != 4 {
            return Err(format!(
                "isogeny reduction produced order {}, expected 4",
                reduced.order()
            ));
        }
        verify_enriques_8_nodal(&reduced)
            .map_err(|r| format!("reduced action fails verification: {r}"))?;
        let verdict = match_order_4(&reduced)?;
        return Ok(TemplateMatch {
            verdict,
            reductions: vec![reduction],
        });
    }

    // Genuine order-8 shape.  Either lift of each sign pattern is a valid
    // assignment; take the lexicographically smaller translation.
    let lift_translation = |signs: (Sign, Sign), factor: Factor| {
        group
            .elements()
            .iter()
            .filter(|g| g.signs() == signs)
            .map(|g| factor.component(g).t)
            .min()
            .ok_or_else(|| format!("no element with signs ({}, {})", signs.0, signs.1))
    };
    let a2 = lift_translation((Sign::Plus, Sign::Minus), Factor::One)?;
    let b3 = lift_translation((Sign::Minus, Sign::Plus), Factor::Two)?;

    for (name, p) in [("a1", a1), ("a2", a2), ("b1", b1), ("b3", b3)] {
        if p.order() != 2 {
            return Err(format!("{name} = {p} does not have order 2"));
        }
    }
    if a2 == a1 || b3 == b1 {
        return Err(format!(
            "template requires a1 != a2 and b1 != b3, got a1 = {a1}, a2 = {a2}, b1 = {b1}, b3 = {b3}"
        ));
    }
    Ok(TemplateMatch {
        verdict: TemplateVerdict::Example2 { a1, a2, b1, b3 },
        reductions: Vec::new(),
    })
}

/// Verify the quotient is an 8-nodal Enriques surface and match the action
/// against the two templates.
pub fn match_template(group: &ActionGroup) -> TemplateMatch {
    if let Err(reason) = verify_enriques_8_nodal(group) {
        return not_enriques(reason);
    }
    match group.order() {
        4 => match match_order_4(group) {
            Ok(verdict) => TemplateMatch {
                verdict,
                reductions: Vec::new(),
            },
            Err(reason) => not_enriques(reason),
        },
        8 => match match_order_8(group) {
            Ok(m) => m,
            Err(reason) => not_enriques(reason),
        },
        n => not_enriques(format!(
            "verified quotient, but group order {n} is outside the order-4 and order-8 templates"
        )),
    }
}

/// Largest degree `d >= 2` of a non-birational bicanonical map onto a
/// non-rational surface: `d (2 K^2 - 1) <= 4 K^2`.  Defined for `K^2 >= 3`;
/// the bound is always 2 there.
pub fn degree_bound(k2: i64) -> Result<i64> {
    if k2 < 3 {
        return Err(Error::OutOfScope {
            detail: format!("degree bound requires K^2 >= 3, got {k2}"),
        });
    }
    let d = (4 * k2) / (2 * k2 - 1);
    debug_assert!(d >= 2);
    Ok(d)
}

/// A solution of the bicanonical intersection constraints for `K^2 = 4`:
/// `B^2 = 2 K^2 = 2 lambda1 lambda2 d` with `lambda1`, `lambda2` even and
/// `d = A1 A2` in `{1, 2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BicanonicalSolution {
    pub lambda1: i64,
    pub lambda2: i64,
    pub d: i64,
}

/// The `K^2` value to which the bicanonical enumeration applies.
pub const BICANONICAL_K2: i64 = 4;

/// Exhaustive enumeration of `lambda1 lambda2 d = 4` over even
/// `lambda_i >= 2` and `d` in `{1, 2}`, optionally restricted.
pub fn bicanonical_solutions_restricted(
    d_filter: Option<i64>,
    lambda1_filter: Option<i64>,
) -> Vec<BicanonicalSolution> {
    let target = BICANONICAL_K2; // lambda1 * lambda2 * d = K^2
    let mut out = Vec::new();
    for d in [1i64, 2] {
        if d_filter.is_some_and(|v| v != d) {
            continue;
        }
        let mut lambda1 = 2;
        while lambda1 * 2 * d <= target * 2 {
            if !lambda1_filter.is_some_and(|v| v != lambda1) {
                let mut lambda2 = 2;
                while lambda1 * lambda2 * d <= target {
                    if lambda1 * lambda2 * d == target {
                        out.push(BicanonicalSolution {
                            lambda1,
                            lambda2,
                            d,
                        });
                    }
                    lambda2 += 2;
                }
            }
            lambda1 += 2;
        }
    }
    out.sort_by_key(|s| (s.d, s.lambda1, s.lambda2));
    out
}

pub fn bicanonical_solutions() -> Vec<BicanonicalSolution> {
    bicanonical_solutions_restricted(None, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::group::ActionGroup;
    use crate::torus::CurveAuto;

    fn pt(un: i64, ud: i64, vn: i64, vd: i64) -> TorsionPoint {
        TorsionPoint::from_fracs(un, ud, vn, vd)
    }

    #[test]
    fn normalize_zeroes_minus_translations() {
        // A single sign-flip with translation (1/2, 1/2) normalizes to the
        // flip at the origin via the shift (1/4, 1/4).
        let g = ActionGroup::generate_default(&[ProductAuto::new(
            CurveAuto::new(Sign::Minus, pt(1, 2, 1, 2)),
            CurveAuto::identity(),
        )])
        .unwrap();
        let n = normalize_action(&g);
        // The shift absorbs the translation entirely; the canonical form
        // also prefers the factor order that sorts the sign pattern first.
        let non_id: Vec<_> = n.group.non_identity().collect();
        assert_eq!(non_id.len(), 1);
        assert!(non_id[0].first.t.is_zero() && non_id[0].second.t.is_zero());
        assert_eq!(non_id[0].signs(), (Sign::Plus, Sign::Minus));
        assert!(n.factors_swapped);
        // Conjugating the (possibly swapped) input by the recorded shift
        // reproduces the normalized group.
        let base = if n.factors_swapped {
            g.swap_factors()
        } else {
            g.clone()
        };
        let redone = base.conjugate_by_shift(&n.origin_shift.0, &n.origin_shift.1);
        assert_eq!(redone.elements(), n.group.elements());
    }

    #[test]
    fn normalize_is_idempotent_on_canonical_input() {
        // The built-in order-4 action is already in canonical position.
        let g = examples::example_1();
        let n = normalize_action(&g);
        assert_eq!(n.group.elements(), g.elements());
        assert!(!n.factors_swapped);
        assert!(n.origin_shift.0.is_zero() && n.origin_shift.1.is_zero());
        let again = normalize_action(&n.group);
        assert_eq!(n.group.elements(), again.group.elements());
    }

    #[test]
    fn swap_recovery_with_asymmetric_data() {
        // a != b, so exactly one factor order is canonical and the other
        // normalizes through a swap.
        let g = crate::examples::example_1_with(pt(1, 2, 0, 1), pt(0, 1, 1, 2)).unwrap();
        let n = normalize_action(&g);
        let n_swapped = normalize_action(&g.swap_factors());
        assert_eq!(n.group.elements(), n_swapped.group.elements());
        assert_ne!(n.factors_swapped, n_swapped.factors_swapped);
    }

    #[test]
    fn normalization_identifies_swapped_and_shifted_copies() {
        let g = examples::example_2();
        let shifted = g.conjugate_by_shift(&pt(1, 4, 3, 4), &pt(0, 1, 1, 4));
        let swapped = g.swap_factors();
        let key = normalize_action(&g).group;
        assert_eq!(normalize_action(&shifted).group.elements(), key.elements());
        assert_eq!(normalize_action(&swapped).group.elements(), key.elements());
    }

    #[test]
    fn example_1_matches_with_canonical_data() {
        let m = match_template(&examples::example_1());
        assert!(m.reductions.is_empty());
        assert_eq!(
            m.verdict,
            TemplateVerdict::Example1 {
                a: pt(1, 2, 0, 1),
                b: pt(1, 2, 0, 1),
            }
        );
    }

    #[test]
    fn example_2_matches_with_canonical_data() {
        let m = match_template(&examples::example_2());
        assert!(m.reductions.is_empty());
        assert_eq!(
            m.verdict,
            TemplateVerdict::Example2 {
                a1: pt(1, 2, 0, 1),
                a2: pt(0, 1, 1, 2),
                b1: pt(1, 2, 0, 1),
                b3: pt(0, 1, 1, 2),
            }
        );
    }

    #[test]
    fn kummer_involution_is_rejected_with_counts() {
        let kum = ActionGroup::generate_default(&[ProductAuto::new(
            CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
            CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
        )])
        .unwrap();
        match match_template(&kum).verdict {
            TemplateVerdict::NotEnriques8Nodal { reason } => {
                assert!(reason.contains("16 nodes"), "reason was: {reason}");
                assert!(reason.contains("chi=2"), "reason was: {reason}");
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn matching_is_invariant_under_shift_and_swap() {
        let g = examples::example_1();
        let m0 = match_template(&g);
        let conj = g
            .conjugate_by_shift(&pt(1, 4, 1, 4), &pt(3, 4, 0, 1))
            .swap_factors();
        let m1 = match_template(&conj);
        match (m0.verdict, m1.verdict) {
            (TemplateVerdict::Example1 { a: a0, b: b0 }, TemplateVerdict::Example1 { a, b }) => {
                // The swap exchanges the roles of a and b.
                assert_eq!((a, b), (b0, a0));
            }
            other => panic!("expected two Example1 verdicts, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_translation_reduces_to_order_4_template() {
        // Order-8 action whose pure translation moves only the second
        // factor: (x1, x2 + b1).  The quotient is an Example-1 surface on
        // D1 x (D2 / <b1>).
        let e1 = ProductAuto::new(
            CurveAuto::identity(),
            CurveAuto::new(Sign::Plus, pt(1, 2, 0, 1)),
        );
        let e2 = ProductAuto::new(
            CurveAuto::new(Sign::Plus, pt(1, 2, 0, 1)),
            CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
        );
        let e3 = ProductAuto::new(
            CurveAuto::new(Sign::Minus, TorsionPoint::zero()),
            CurveAuto::new(Sign::Plus, pt(0, 1, 1, 2)),
        );
        let g = ActionGroup::generate_default(&[e1, e2, e3]).unwrap();
        assert_eq!(g.order(), 8);
        // It verifies as an 8-nodal Enriques quotient...
        assert!(verify_enriques_8_nodal(&g).is_ok());
        // ...and matches through one isogeny reduction.
        let m = match_template(&g);
        assert_eq!(
            m.reductions,
            vec![FactorReduction {
                factor: Factor::Two,
                kernel: pt(1, 2, 0, 1),
            }]
        );
        match m.verdict {
            TemplateVerdict::Example1 { a, b } => {
                assert_eq!(a, pt(1, 2, 0, 1));
                assert_eq!(b.order(), 2);
            }
            other => panic!("expected Example1 after reduction, got {other:?}"),
        }
    }

    #[test]
    fn degree_bound_values() {
        assert_eq!(degree_bound(3).unwrap(), 2);
        assert_eq!(degree_bound(4).unwrap(), 2);
        assert_eq!(degree_bound(9).unwrap(), 2);
        assert!(matches!(degree_bound(2), Err(Error::OutOfScope { .. })));
    }

    #[test]
    fn degree_bound_is_extremal() {
        for k2 in 3..40 {
            let d = degree_bound(k2).unwrap();
            assert!(d * (2 * k2 - 1) <= 4 * k2);
            assert!((d + 1) * (2 * k2 - 1) > 4 * k2);
        }
    }

    #[test]
    fn bicanonical_enumeration() {
        assert_eq!(
            bicanonical_solutions(),
            vec![BicanonicalSolution {
                lambda1: 2,
                lambda2: 2,
                d: 1,
            }]
        );
        assert!(bicanonical_solutions_restricted(Some(2), None).is_empty());
        assert_eq!(
            bicanonical_solutions_restricted(Some(1), Some(2)),
            vec![BicanonicalSolution {
                lambda1: 2,
                lambda2: 2,
                d: 1,
            }]
        );
    }

    #[test]
    fn bicanonical_brute_force_oracle() {
        let mut brute = Vec::new();
        for lambda1 in [2i64, 4, 6, 8] {
            for lambda2 in [2i64, 4, 6, 8] {
                for d in [1i64, 2] {
                    // B^2 = 2 K^2 = 8 and B^2 = 2 lambda1 lambda2 d.
                    if 2 * lambda1 * lambda2 * d == 2 * BICANONICAL_K2 {
                        brute.push(BicanonicalSolution {
                            lambda1,
                            lambda2,
                            d,
                        });
                    }
                }
            }
        }
        assert_eq!(bicanonical_solutions(), brute);
    }
}
