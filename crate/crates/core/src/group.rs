//! Finite groups of product automorphisms, generated by closure.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::lcm;

use crate::torus::{ProductAuto, TorsionPoint, TwoTorsionQuotient};
use crate::{Error, Result};

/// Default cap on the closure size.  The groups of interest here have order
/// at most 8; the cap guards against malformed input.
pub const DEFAULT_GROUP_BOUND: usize = 64;

/// Largest group for which exhaustive subgroup enumeration is supported.
const MAX_SUBGROUP_ORDER: usize = 16;

/// A finite group of product automorphisms: the closure of its generators
/// under composition, with a canonical (lexicographic) element order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionGroup {
    generators: Vec<ProductAuto>,
    elements: Vec<ProductAuto>,
}

impl ActionGroup {
    /// Close `generators` under composition.  Fails with
    /// [`Error::ClosureExceedsBound`] if the closure grows past `bound`.
    ///
    /// All translations are torsion, so the closure is always finite; the
    /// bound only decides how long we keep multiplying before giving up.
    pub fn generate(generators: &[ProductAuto], bound: usize) -> Result<ActionGroup> {
        let mut elements: BTreeSet<ProductAuto> = BTreeSet::new();
        elements.insert(ProductAuto::identity());
        let mut frontier: Vec<ProductAuto> = vec![ProductAuto::identity()];

        while let Some(g) = frontier.pop() {
            for gen in generators {
                let h = gen.compose(&g);
                if elements.insert(h) {
                    if elements.len() > bound {
                        return Err(Error::ClosureExceedsBound {
                            bound,
                            reached: elements.len(),
                        });
                    }
                    frontier.push(h);
                }
            }
        }

        // Left multiplication by generators reaches every product of
        // generators; inverses come for free because each element has
        // finite order inside the (already complete) closure.
        Ok(ActionGroup {
            generators: generators.to_vec(),
            elements: elements.into_iter().collect(),
        })
    }

    pub fn generate_default(generators: &[ProductAuto]) -> Result<ActionGroup> {
        Self::generate(generators, DEFAULT_GROUP_BOUND)
    }

    /// Rebuild a group from a full element list (used for subgroups and
    /// homomorphic images).  Debug-asserts closure.
    fn from_elements(generators: Vec<ProductAuto>, mut elements: Vec<ProductAuto>) -> ActionGroup {
        elements.sort();
        elements.dedup();
        let g = ActionGroup {
            generators,
            elements,
        };
        debug_assert!(g.is_closed());
        g
    }

    fn is_closed(&self) -> bool {
        self.elements.contains(&ProductAuto::identity())
            && self.elements.iter().all(|a| {
                self.elements.contains(&a.inverse())
                    && self
                        .elements
                        .iter()
                        .all(|b| self.elements.contains(&a.compose(b)))
            })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Elements in canonical order (identity first).
    pub fn elements(&self) -> &[ProductAuto] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProductAuto] {
        &self.generators
    }

    pub fn non_identity(&self) -> impl Iterator<Item = &ProductAuto> {
        self.elements.iter().filter(|g| !g.is_identity())
    }

    pub fn contains(&self, g: &ProductAuto) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Orbit of a point of the product under the group.
    pub fn orbit(&self, p: &(TorsionPoint, TorsionPoint)) -> Vec<(TorsionPoint, TorsionPoint)> {
        let mut orbit: Vec<_> = self.elements.iter().map(|g| g.apply(p)).collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    /// Stabilizer of a point, as a sorted element list (a subgroup).
    pub fn stabilizer(&self, p: &(TorsionPoint, TorsionPoint)) -> Vec<ProductAuto> {
        self.elements
            .iter()
            .filter(|g| g.apply(p) == *p)
            .copied()
            .collect()
    }

    /// Greedy minimal generating set, scanning elements in canonical order.
    pub fn minimal_generating_set(&self) -> Vec<ProductAuto> {
        let mut gens: Vec<ProductAuto> = Vec::new();
        let mut span = vec![ProductAuto::identity()];
        for g in &self.elements {
            if span.contains(g) {
                continue;
            }
            gens.push(*g);
            span = ActionGroup::generate(&gens, self.order())
                .expect("closure stays inside the group")
                .elements;
            if span.len() == self.elements.len() {
                break;
            }
        }
        gens
    }

    /// lcm of all translation-coordinate denominators appearing in the group.
    pub fn translation_denominator_lcm(&self) -> i64 {
        self.elements.iter().fold(1i64, |acc, g| {
            let d = lcm(
                lcm(g.first.t.u.denom(), g.first.t.v.denom()),
                lcm(g.second.t.u.denom(), g.second.t.v.denom()),
            );
            lcm(acc, d)
        })
    }

    /// Conjugate the whole action by the origin shift `(s1, s2)`.
    pub fn conjugate_by_shift(&self, s1: &TorsionPoint, s2: &TorsionPoint) -> ActionGroup {
        ActionGroup::from_elements(
            self.generators
                .iter()
                .map(|g| g.conjugate_by_shift(s1, s2))
                .collect(),
            self.elements
                .iter()
                .map(|g| g.conjugate_by_shift(s1, s2))
                .collect(),
        )
    }

    /// The same action with the two factors exchanged.
    pub fn swap_factors(&self) -> ActionGroup {
        ActionGroup::from_elements(
            self.generators.iter().map(|g| g.swap_factors()).collect(),
            self.elements.iter().map(|g| g.swap_factors()).collect(),
        )
    }

    /// Image of the action on `D1 x (D2 / <b>)` under the 2-torsion quotient
    /// isogeny of the second factor.  The kernel generator must lie in the
    /// group as a pure translation for the image to act on the quotient.
    pub fn descend_second_factor(&self, q: &TwoTorsionQuotient) -> ActionGroup {
        ActionGroup::from_elements(
            self.generators
                .iter()
                .map(|g| ProductAuto::new(g.first, q.descend(&g.second)))
                .collect(),
            self.elements
                .iter()
                .map(|g| ProductAuto::new(g.first, q.descend(&g.second)))
                .collect(),
        )
    }

    /// Image of the action on `(D1 / <b>) x D2`.
    pub fn descend_first_factor(&self, q: &TwoTorsionQuotient) -> ActionGroup {
        ActionGroup::from_elements(
            self.generators
                .iter()
                .map(|g| ProductAuto::new(q.descend(&g.first), g.second))
                .collect(),
            self.elements
                .iter()
                .map(|g| ProductAuto::new(q.descend(&g.first), g.second))
                .collect(),
        )
    }

    /// All subgroups, sorted by order and then canonically.  Supported for
    /// groups of order at most 16.
    pub fn subgroups(&self) -> Vec<ActionGroup> {
        let n = self.order();
        assert!(
            n <= MAX_SUBGROUP_ORDER,
            "subgroup enumeration is supported for order <= {MAX_SUBGROUP_ORDER}, got {n}"
        );

        // Composition table over element indices.
        let idx = |g: &ProductAuto| self.elements.binary_search(g).expect("closed group");
        let mut table = vec![vec![0usize; n]; n];
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                table[i][j] = idx(&a.compose(b));
            }
        }
        let id = idx(&ProductAuto::identity());

        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << id) == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let closed = members
                .iter()
                .all(|&i| members.iter().all(|&j| mask & (1 << table[i][j]) != 0));
            if !closed {
                continue;
            }
            let elems: Vec<ProductAuto> = members.iter().map(|&i| self.elements[i]).collect();
            let sub = ActionGroup::from_elements(elems.clone(), elems);
            let gens = sub.minimal_generating_set();
            out.push(ActionGroup::from_elements(gens, sub.elements));
        }
        out.sort_by(|a, b| {
            (a.order(), a.elements())
                .cmp(&(b.order(), b.elements()))
        });
        out
    }

    /// Subgroups other than the trivial group and the whole group.
    pub fn proper_nontrivial_subgroups(&self) -> Vec<ActionGroup> {
        self.subgroups()
            .into_iter()
            .filter(|h| h.order() > 1 && h.order() < self.order())
            .collect()
    }
}

impl fmt::Display for ActionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}
