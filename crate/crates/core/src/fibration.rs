//! The two elliptic pencils induced on the quotient by the projections of
//! the product, their multiple fibres, and node/fibre incidence.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::group::ActionGroup;
use crate::quotient::SingularityCensus;
use crate::torus::{CurveAuto, Sign, TorsionPoint};
use crate::{Error, Result};

/// Which projection of the product the pencil comes from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Factor {
    One,
    Two,
}

impl Factor {
    pub fn component(self, g: &crate::torus::ProductAuto) -> CurveAuto {
        match self {
            Factor::One => g.first,
            Factor::Two => g.second,
        }
    }

    pub fn coordinate(self, p: &(TorsionPoint, TorsionPoint)) -> TorsionPoint {
        match self {
            Factor::One => p.0,
            Factor::Two => p.1,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::One => write!(f, "1"),
            Factor::Two => write!(f, "2"),
        }
    }
}

/// A base point of the induced pencil with a multiple fibre over it.
#[derive(Clone, Debug)]
pub struct SpecialFibre {
    /// Lexicographically least point of the base orbit.
    pub representative: TorsionPoint,
    /// Points of the curve lying in the orbit.
    pub orbit: Vec<TorsionPoint>,
    /// Stabilizer order in the induced action = multiplicity of the fibre.
    pub multiplicity: usize,
    /// True when some node of the quotient lies on this fibre.
    pub is_singular: bool,
}

/// The elliptic pencil induced by one projection.
#[derive(Clone, Debug)]
pub struct InducedPencil {
    pub factor: Factor,
    /// The induced automorphisms of the chosen factor (a quotient group of
    /// the action).
    pub induced: Vec<CurveAuto>,
    pub base_special_points: Vec<SpecialFibre>,
    /// Orbit size of a general point = index of the projection kernel.
    pub general_orbit_size: usize,
}

impl InducedPencil {
    pub fn singular_fibres(&self) -> impl Iterator<Item = (usize, &SpecialFibre)> {
        self.base_special_points
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_singular)
    }

    pub fn smooth_double_fibres(&self) -> usize {
        self.base_special_points
            .iter()
            .filter(|f| !f.is_singular)
            .count()
    }
}

/// Compute the induced action on one factor and its multiple fibres.
pub fn induced_pencil(
    group: &ActionGroup,
    census: &SingularityCensus,
    factor: Factor,
) -> InducedPencil {
    let mut induced: Vec<CurveAuto> = group
        .elements()
        .iter()
        .map(|g| factor.component(g))
        .collect();
    induced.sort_by_key(|a| (a.sign, a.t));
    induced.dedup();

    // Points of the factor curve with nontrivial stabilizer: fixed points of
    // the sign-flip elements of the induced action.
    let mut special: Vec<TorsionPoint> = Vec::new();
    for a in &induced {
        if a.sign == Sign::Minus {
            if let crate::torus::FixedLocus1D::Points(pts) = a.fixed_locus() {
                special.extend(pts);
            }
        }
    }
    special.sort();
    special.dedup();

    // Partition the special points into orbits of the induced action.
    let mut orbit_map: BTreeMap<TorsionPoint, Vec<TorsionPoint>> = BTreeMap::new();
    for x in &special {
        let mut orbit: Vec<TorsionPoint> = induced.iter().map(|a| a.apply(x)).collect();
        orbit.sort();
        orbit.dedup();
        orbit_map.entry(orbit[0]).or_insert(orbit);
    }

    let node_coords: Vec<TorsionPoint> = census
        .orbits
        .iter()
        .flat_map(|o| o.points.iter().map(|p| factor.coordinate(p)))
        .collect();

    let base_special_points = orbit_map
        .into_iter()
        .map(|(rep, orbit)| {
            let stab = induced.iter().filter(|a| a.apply(&rep) == rep).count();
            let is_singular = node_coords.iter().any(|c| orbit.contains(c));
            SpecialFibre {
                representative: rep,
                orbit,
                multiplicity: stab,
                is_singular,
            }
        })
        .collect();

    InducedPencil {
        factor,
        general_orbit_size: induced.len(),
        induced,
        base_special_points,
    }
}

/// Node membership on the singular fibres of the two pencils.
#[derive(Clone, Debug)]
pub struct IncidenceTable {
    pub node_count: usize,
    /// Columns: `(factor, index into that pencil's base_special_points)`,
    /// singular fibres only.
    pub columns: Vec<(Factor, usize)>,
    /// `membership[node][column]`.
    pub membership: Vec<Vec<bool>>,
}

impl IncidenceTable {
    pub fn nodes_on_column(&self, col: usize) -> Vec<usize> {
        (0..self.node_count)
            .filter(|&n| self.membership[n][col])
            .collect()
    }

    pub fn nodes_per_fibre(&self) -> Vec<usize> {
        (0..self.columns.len())
            .map(|c| self.nodes_on_column(c).len())
            .collect()
    }

    pub fn columns_of_factor(&self, factor: Factor) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, (f, _))| *f == factor)
            .map(|(i, _)| i)
            .collect()
    }

    /// Node counts on all (factor-1 fibre, factor-2 fibre) pairs.
    pub fn cross_counts(&self) -> Vec<Vec<usize>> {
        let cols1 = self.columns_of_factor(Factor::One);
        let cols2 = self.columns_of_factor(Factor::Two);
        cols1
            .iter()
            .map(|&c1| {
                cols2
                    .iter()
                    .map(|&c2| {
                        (0..self.node_count)
                            .filter(|&n| self.membership[n][c1] && self.membership[n][c2])
                            .count()
                    })
                    .collect()
            })
            .collect()
    }

    /// Node sets of the nonempty (fibre, fibre) intersection cells.
    pub fn intersection_cells(&self) -> Vec<Vec<usize>> {
        let cols1 = self.columns_of_factor(Factor::One);
        let cols2 = self.columns_of_factor(Factor::Two);
        let mut cells = Vec::new();
        for &c1 in &cols1 {
            for &c2 in &cols2 {
                let cell: Vec<usize> = (0..self.node_count)
                    .filter(|&n| self.membership[n][c1] && self.membership[n][c2])
                    .collect();
                if !cell.is_empty() {
                    cells.push(cell);
                }
            }
        }
        cells
    }
}

/// Build the node/fibre membership table from the census and both pencils.
pub fn node_fibre_incidence(
    census: &SingularityCensus,
    pencil1: &InducedPencil,
    pencil2: &InducedPencil,
) -> IncidenceTable {
    let mut columns = Vec::new();
    for (i, _) in pencil1.singular_fibres() {
        columns.push((Factor::One, i));
    }
    for (i, _) in pencil2.singular_fibres() {
        columns.push((Factor::Two, i));
    }

    let membership = census
        .orbits
        .iter()
        .map(|orbit| {
            columns
                .iter()
                .map(|(factor, idx)| {
                    let pencil = match factor {
                        Factor::One => pencil1,
                        Factor::Two => pencil2,
                    };
                    let fibre = &pencil.base_special_points[*idx];
                    orbit
                        .points
                        .iter()
                        .any(|p| fibre.orbit.contains(&factor.coordinate(p)))
                })
                .collect()
        })
        .collect();

    IncidenceTable {
        node_count: census.node_count(),
        columns,
        membership,
    }
}

/// The intersection numbers of the two induced pencils.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FibreNumbers {
    /// `f1 * f2` on the quotient: `n1 * n2 / |G|`, where `n_i` is the
    /// general orbit size on factor `i`.
    pub f1f2: i64,
    /// `A1 * A2 = f1 f2 / 4` for the half-fibres `f_i = 2 A_i`.
    pub a1a2: Ratio<i64>,
}

impl FibreNumbers {
    /// False when `f1 f2 / 4` is not an integer, i.e. the fibres do not
    /// halve consistently.
    pub fn a1a2_integral(&self) -> bool {
        self.a1a2.is_integer()
    }
}

pub fn fibre_product_number(group: &ActionGroup) -> Result<FibreNumbers> {
    let orbit_size = |factor: Factor| {
        let mut induced: Vec<CurveAuto> = group
            .elements()
            .iter()
            .map(|g| factor.component(g))
            .collect();
        induced.sort_by_key(|a| (a.sign, a.t));
        induced.dedup();
        induced.len()
    };
    let n1 = orbit_size(Factor::One);
    let n2 = orbit_size(Factor::Two);
    let order = group.order();
    if (n1 * n2) % order != 0 {
        return Err(Error::NonIntegralIntersection { n1, n2, order });
    }
    let f1f2 = ((n1 * n2) / order) as i64;
    Ok(FibreNumbers {
        f1f2,
        a1a2: Ratio::new(f1f2, 4),
    })
}
