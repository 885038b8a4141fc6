//! End-to-end analysis of one action: census, invariants, pencils,
//! incidence, codes, lattice bracket and template verdict in one pass.

use std::collections::BTreeMap;

use crate::classify::{match_template, TemplateMatch};
use crate::codes::{
    check_weight_divisibility, even_sets_from_geometry, span_and_weights, BinaryCode, BinaryWord,
};
use crate::fibration::{
    fibre_product_number, induced_pencil, node_fibre_incidence, Factor, FibreNumbers,
    IncidenceTable, InducedPencil,
};
use crate::group::ActionGroup;
use crate::lattice::{cover_invariants, dim_vnum_from_discriminant, gram_discriminant, CoverData};
use crate::quotient::{
    fixed_point_census, quotient_invariants_with_census, QuotientInvariants, SingularityCensus,
    SurfaceType,
};
use crate::{Error, Result};

/// Everything the analysis computes for one action.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: ActionGroup,
    pub census: SingularityCensus,
    pub invariants: QuotientInvariants,
    pub pencils: (InducedPencil, InducedPencil),
    pub incidence: IncidenceTable,
    pub fibre_numbers: FibreNumbers,
    /// Generators of the geometric code, one per singular double fibre plus
    /// the all-ones word, deduplicated.
    pub geometric_words: Vec<BinaryWord>,
    pub geometric_code: BinaryCode,
    pub weight_enumerator: BTreeMap<u32, u64>,
    pub weights_divisible_by_4: bool,
    /// Dimension of the numerically-even code, from the discriminant
    /// relation; only defined for 8-nodal Enriques quotients.
    pub dim_vnum: Option<u32>,
    /// `[dim of the geometric code, dim_vnum]` when the latter is defined.
    pub dim_v_bracket: Option<(u32, u32)>,
    pub template: TemplateMatch,
}

/// Run the full pipeline.  Fails on actions that are not free in
/// codimension 1 or otherwise outside scope.
pub fn analyze(group: &ActionGroup) -> Result<Analysis> {
    let census = fixed_point_census(group)?;
    let invariants = quotient_invariants_with_census(group, &census)?;
    let p1 = induced_pencil(group, &census, Factor::One);
    let p2 = induced_pencil(group, &census, Factor::Two);
    let incidence = node_fibre_incidence(&census, &p1, &p2);
    let fibre_numbers = fibre_product_number(group)?;

    let geometric_words = even_sets_from_geometry(&census, &incidence);
    let (geometric_code, weight_enumerator) =
        span_and_weights(census.node_count(), &geometric_words)?;
    let weights_divisible_by_4 = check_weight_divisibility(&geometric_code)?;

    let dim_vnum = if invariants.surface_type == SurfaceType::NodalEnriques
        && census.node_count() == 8
        && fibre_numbers.a1a2_integral()
    {
        let delta = gram_discriminant(fibre_numbers.a1a2.to_integer());
        dim_vnum_from_discriminant(census.node_count() as u32, delta).ok()
    } else {
        None
    };
    let dim_v_bracket = dim_vnum.map(|hi| (geometric_code.dim() as u32, hi));

    let template = match_template(group);

    Ok(Analysis {
        group: group.clone(),
        census,
        invariants,
        pencils: (p1, p2),
        incidence,
        fibre_numbers,
        geometric_words,
        geometric_code,
        weight_enumerator,
        weights_divisible_by_4,
        dim_vnum,
        dim_v_bracket,
        template,
    })
}

/// Which subgroups a subquotient scan visits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupSelection {
    All,
    ProperNontrivial,
}

/// One intermediate quotient `A/H` of the ambient product, with its directly
/// computed invariants and the cover-formula cross-check for the induced
/// cover `A/H -> A/G`.
#[derive(Clone, Debug)]
pub struct SubquotientRow {
    pub subgroup: ActionGroup,
    pub invariants: QuotientInvariants,
    /// `(r, m)` of the cover `A/H -> A/G`: `2^r` is its degree, `m` the
    /// number of nodes of the base it is branched on.
    pub cover: CoverData,
    pub chi_from_cover: i64,
    pub k2_from_cover: i64,
}

impl SubquotientRow {
    /// The direct computation and the cover formula must agree.
    pub fn agrees(&self) -> bool {
        self.chi_from_cover == self.invariants.chi
    }
}

/// Analyze the quotient by every selected subgroup and cross-check its
/// `chi` against the cover-invariant formula applied to the cover
/// `A/H -> A/G`.
///
/// A node of the base lifts unbranched exactly when its stabilizer
/// generator lies in `H`; hence `m` counts the node orbits whose stabilizer
/// generator is outside `H`.
pub fn subquotient_analysis(
    group: &ActionGroup,
    selection: SubgroupSelection,
) -> Result<Vec<SubquotientRow>> {
    let base_census = fixed_point_census(group)?;
    let base_invariants = quotient_invariants_with_census(group, &base_census)?;

    let subgroups = match selection {
        SubgroupSelection::All => group.subgroups(),
        SubgroupSelection::ProperNontrivial => group.proper_nontrivial_subgroups(),
    };

    let mut rows = Vec::new();
    for h in subgroups {
        let index = group.order() / h.order();
        if !index.is_power_of_two() {
            return Err(Error::OutOfScope {
                detail: format!("cover degree {index} is not a power of two"),
            });
        }
        let r = index.trailing_zeros();
        let m = base_census
            .orbits
            .iter()
            .filter(|orbit| !h.contains(&orbit.stabilizer_generator))
            .count() as u32;
        let cover = CoverData {
            chi_base: base_invariants.chi,
            k2_base: base_invariants.k2,
            r,
            m,
        };
        let (chi_from_cover, k2_from_cover) = cover_invariants(&cover)?;
        let invariants = crate::quotient::quotient_invariants(&h)?;
        rows.push(SubquotientRow {
            subgroup: h,
            invariants,
            cover,
            chi_from_cover,
            k2_from_cover,
        });
    }
    Ok(rows)
}
