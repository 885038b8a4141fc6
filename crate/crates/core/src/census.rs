//! Exhaustive enumeration of small sign-translation actions, grouped up to
//! origin change and factor swap, with their quotient verdicts.

use std::collections::{BTreeMap, BTreeSet};

use crate::classify::{match_template, normalize_action, TemplateMatch};
use crate::group::ActionGroup;
use crate::quotient::{self, SurfaceType};
use crate::torus::{CurveAuto, ProductAuto, Sign, TorsionPoint};
use crate::{Error, Result};

/// Enumeration is supported for translation denominators 1 and 2.  Every
/// elementary-abelian sign-translation action is conjugate, by an origin
/// shift, to one with 2-torsion translations, so larger bounds add raw
/// members to existing classes but no new classes.
pub const MAX_DENOMINATOR_BOUND: i64 = 2;

/// Largest group order the census enumerates.
pub const MAX_CENSUS_ORDER: usize = 8;

/// The involutions-and-identity pool from which census groups are built:
/// all product automorphisms with translation denominators dividing the
/// bound.  For bounds 1 and 2 this pool is itself an elementary abelian
/// group.
pub fn ambient_elements(denom_bound: i64) -> Result<Vec<ProductAuto>> {
    if !(1..=MAX_DENOMINATOR_BOUND).contains(&denom_bound) {
        return Err(Error::OutOfScope {
            detail: format!(
                "census denominator bound must be 1 or {MAX_DENOMINATOR_BOUND}, got {denom_bound}"
            ),
        });
    }
    let translations: Vec<TorsionPoint> = if denom_bound == 1 {
        vec![TorsionPoint::zero()]
    } else {
        TorsionPoint::two_torsion().to_vec()
    };
    let mut out = Vec::new();
    for s1 in [Sign::Plus, Sign::Minus] {
        for t1 in &translations {
            for s2 in [Sign::Plus, Sign::Minus] {
                for t2 in &translations {
                    out.push(ProductAuto::new(
                        CurveAuto::new(s1, *t1),
                        CurveAuto::new(s2, *t2),
                    ));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All subgroups of the ambient pool of order at most [`MAX_CENSUS_ORDER`],
/// i.e. every elementary-abelian 2-group of sign-translation automorphisms
/// within the denominator bound.
pub fn enumerate_groups(denom_bound: i64) -> Result<Vec<ActionGroup>> {
    let ambient = ambient_elements(denom_bound)?;

    // Walk the subgroup lattice: extend each subgroup by one commuting
    // involution at a time.  The ambient pool is abelian with exponent 2,
    // so closure(S, x) is just S union xS.
    let trivial = vec![ProductAuto::identity()];
    let mut seen: BTreeSet<Vec<ProductAuto>> = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];

    while let Some(current) = frontier.pop() {
        if current.len() * 2 > MAX_CENSUS_ORDER {
            continue;
        }
        for x in &ambient {
            if x.is_identity() || current.contains(x) {
                continue;
            }
            let mut extended: Vec<ProductAuto> = current.clone();
            extended.extend(current.iter().map(|g| x.compose(g)));
            extended.sort();
            extended.dedup();
            debug_assert_eq!(extended.len(), current.len() * 2);
            if seen.insert(extended.clone()) {
                frontier.push(extended);
            }
        }
    }

    Ok(seen
        .into_iter()
        .map(|elements| {
            // The pool has exponent 2, so the lexicographically first
            // elements past the identity generate greedily.
            let seed = ActionGroup::generate_default(&elements)
                .expect("closed element list regenerates");
            let g = ActionGroup::generate_default(&seed.minimal_generating_set())
                .expect("closure of a subgroup");
            debug_assert_eq!(g.order(), elements.len());
            g
        })
        .collect())
}

/// Verdict attached to one conjugacy class of the census.
#[derive(Clone, Debug)]
pub enum CensusOutcome {
    /// Some non-identity element fixes a curve; no isolated census exists.
    NotCodimOneFree,
    /// The quotient analysis ran; for verified 8-nodal Enriques quotients
    /// the template verdict is attached.
    Analyzed {
        surface_type: SurfaceType,
        node_count: usize,
        chi: i64,
        template: Option<TemplateMatch>,
    },
}

impl CensusOutcome {
    /// True when the quotient verified as an 8-nodal Enriques surface but
    /// matched neither template.
    pub fn is_unmatched_enriques(&self) -> bool {
        match self {
            CensusOutcome::Analyzed {
                surface_type: SurfaceType::NodalEnriques,
                node_count: 8,
                template,
                ..
            } => template
                .as_ref()
                .map(|t| !t.verdict.is_match())
                .unwrap_or(true),
            _ => false,
        }
    }
}

/// One class of actions, up to origin change and factor swap.
#[derive(Clone, Debug)]
pub struct CensusClass {
    /// Normalized representative (canonical position).
    pub representative: ActionGroup,
    pub order: usize,
    /// Raw subgroups in the class at this denominator bound.
    pub members: usize,
    pub outcome: CensusOutcome,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub denominator_bound: i64,
    pub total_groups: usize,
    pub classes: Vec<CensusClass>,
}

impl CensusReport {
    pub fn unmatched_enriques(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.outcome.is_unmatched_enriques())
            .count()
    }

    pub fn enriques_classes(&self) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(|c| {
            matches!(
                c.outcome,
                CensusOutcome::Analyzed {
                    surface_type: SurfaceType::NodalEnriques,
                    node_count: 8,
                    ..
                }
            )
        })
    }
}

fn classify_group(group: &ActionGroup) -> CensusOutcome {
    if !quotient::codim1_free(group) {
        return CensusOutcome::NotCodimOneFree;
    }
    let invariants = quotient::quotient_invariants(group)
        .expect("codimension-1-free census action analyzes cleanly");
    let template = if invariants.surface_type == SurfaceType::NodalEnriques
        && invariants.node_count == 8
    {
        Some(match_template(group))
    } else {
        None
    };
    CensusOutcome::Analyzed {
        surface_type: invariants.surface_type,
        node_count: invariants.node_count,
        chi: invariants.chi,
        template,
    }
}

/// Enumerate, deduplicate by normalization, classify, and tabulate.
pub fn run_census(denom_bound: i64) -> Result<CensusReport> {
    let groups = enumerate_groups(denom_bound)?;
    let total_groups = groups.len();

    let mut classes: BTreeMap<Vec<ProductAuto>, (ActionGroup, usize)> = BTreeMap::new();
    for g in groups {
        let normalized = normalize_action(&g).group;
        let key = normalized.elements().to_vec();
        classes
            .entry(key)
            .and_modify(|(_, count)| *count += 1)
            .or_insert((normalized, 1));
    }

    let mut out = Vec::new();
    for (_, (representative, members)) in classes {
        let outcome = classify_group(&representative);
        out.push(CensusClass {
            order: representative.order(),
            representative,
            members,
            outcome,
        });
    }
    out.sort_by(|a, b| {
        (a.order, a.representative.elements()).cmp(&(b.order, b.representative.elements()))
    });

    Ok(CensusReport {
        denominator_bound: denom_bound,
        total_groups,
        classes: out,
    })
}
