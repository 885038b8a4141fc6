//! Fixed-point census of an action, singularity classification of the
//! quotient surface, and its numerical invariants.

use std::collections::BTreeMap;
use std::fmt;

use crate::group::ActionGroup;
use crate::torus::{ProductAuto, Sign, TorsionPoint};
use crate::{Error, Result};

/// A point of the product fixed by some non-identity element, together with
/// its stabilizer and the linearization of each stabilizer element there.
///
/// An affine map `(e1 x1 + t1, e2 x2 + t2)` acts on the tangent space of a
/// fixed point by `diag(e1, e2)`, so the local signs are just the signs.
#[derive(Clone, Debug)]
pub struct FixedPointRecord {
    pub point: (TorsionPoint, TorsionPoint),
    pub stabilizer: Vec<ProductAuto>,
    pub local_signs: Vec<(Sign, Sign)>,
}

/// Tag for the singularity type of a quotient point.  Everything this crate
/// accepts is an ordinary node.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingularityType {
    A1,
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::A1 => write!(f, "A1"),
        }
    }
}

/// One orbit of fixed points, i.e. one singular point of the quotient.
#[derive(Clone, Debug)]
pub struct NodeOrbit {
    /// Lexicographically least point of the orbit; fixes the node index.
    pub representative: (TorsionPoint, TorsionPoint),
    pub points: Vec<(TorsionPoint, TorsionPoint)>,
    /// The non-identity stabilizer element shared by the orbit.
    pub stabilizer_generator: ProductAuto,
    pub singularity: SingularityType,
}

impl NodeOrbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

/// Full fixed-point census of an action that is free in codimension 1.
#[derive(Clone, Debug)]
pub struct SingularityCensus {
    /// Number of isolated fixed points of each non-identity element.
    pub fixed_counts: Vec<(ProductAuto, usize)>,
    pub records: Vec<FixedPointRecord>,
    /// Orbits sorted by representative; index = node index.
    pub orbits: Vec<NodeOrbit>,
}

impl SingularityCensus {
    pub fn node_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn total_fixed_points(&self) -> usize {
        self.records.len()
    }

    pub fn fixed_count_of(&self, g: &ProductAuto) -> usize {
        self.fixed_counts
            .iter()
            .find(|(h, _)| h == g)
            .map(|(_, n)| *n)
            .unwrap_or(0)
    }
}

/// True when no non-identity element fixes a curve: every fixed locus is
/// empty or zero-dimensional.
pub fn codim1_free(group: &ActionGroup) -> bool {
    group
        .non_identity()
        .all(|g| !matches!(g.fixed_locus().dimension(), Some(d) if d > 0))
}

/// Enumerate the fixed points of all non-identity elements, partition them
/// into orbits, and classify each orbit.
///
/// Requires the action to be free in codimension 1; a fixed curve is
/// reported as [`Error::NotCodimOneFree`].  An isolated point whose
/// stabilizer is bigger than `{1, g}` or whose linearization is not
/// `(-1, -1)` is not a node and is reported as
/// [`Error::NonNodeSingularity`].
pub fn fixed_point_census(group: &ActionGroup) -> Result<SingularityCensus> {
    let mut fixed_counts = Vec::new();
    let mut all_points: Vec<(TorsionPoint, TorsionPoint)> = Vec::new();

    for g in group.non_identity() {
        let locus = g.fixed_locus();
        if matches!(locus.dimension(), Some(d) if d > 0) {
            return Err(Error::NotCodimOneFree {
                element: g.to_string(),
            });
        }
        let pts = locus.isolated_points().expect("dimension <= 0");
        fixed_counts.push((*g, pts.len()));
        all_points.extend(pts);
    }
    all_points.sort();
    all_points.dedup();

    let records: Vec<FixedPointRecord> = all_points
        .iter()
        .map(|p| {
            let stabilizer = group.stabilizer(p);
            let local_signs = stabilizer.iter().map(|g| g.signs()).collect();
            FixedPointRecord {
                point: *p,
                stabilizer,
                local_signs,
            }
        })
        .collect();

    // Partition into orbits keyed by the least orbit element.
    let mut orbit_map: BTreeMap<(TorsionPoint, TorsionPoint), Vec<(TorsionPoint, TorsionPoint)>> =
        BTreeMap::new();
    for rec in &records {
        let orbit = group.orbit(&rec.point);
        orbit_map.entry(orbit[0]).or_insert(orbit);
    }

    let mut orbits = Vec::new();
    for (rep, points) in orbit_map {
        let stab = group.stabilizer(&rep);
        if stab.len() * points.len() != group.order() {
            return Err(Error::NonNodeSingularity {
                point: format!("({}, {})", rep.0, rep.1),
                detail: format!(
                    "orbit size {} with stabilizer order {} in a group of order {}",
                    points.len(),
                    stab.len(),
                    group.order()
                ),
            });
        }
        let generator = classify_node_stabilizer(&rep, &stab)?;
        orbits.push(NodeOrbit {
            representative: rep,
            points,
            stabilizer_generator: generator,
            singularity: SingularityType::A1,
        });
    }

    Ok(SingularityCensus {
        fixed_counts,
        records,
        orbits,
    })
}

/// A node has stabilizer `{1, g}` with `g` acting by `(-1, -1)`.
fn classify_node_stabilizer(
    point: &(TorsionPoint, TorsionPoint),
    stabilizer: &[ProductAuto],
) -> Result<ProductAuto> {
    let non_id: Vec<&ProductAuto> = stabilizer.iter().filter(|g| !g.is_identity()).collect();
    if non_id.len() != 1 {
        return Err(Error::NonNodeSingularity {
            point: format!("({}, {})", point.0, point.1),
            detail: format!("stabilizer order {} exceeds 2", stabilizer.len()),
        });
    }
    let g = non_id[0];
    if g.signs() != (Sign::Minus, Sign::Minus) {
        return Err(Error::NonNodeSingularity {
            point: format!("({}, {})", point.0, point.1),
            detail: format!("stabilizer acts with signs ({}, {})", g.signs().0, g.signs().1),
        });
    }
    Ok(*g)
}

/// Hodge numbers `(p_g, q)` of the quotient.
///
/// The group acts on the two holomorphic 1-forms by the per-factor signs and
/// on the 2-form by their product; the invariants survive on the quotient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HodgeNumbers {
    pub pg: u32,
    pub q: u32,
}

pub fn hodge_invariants(group: &ActionGroup) -> HodgeNumbers {
    let q1 = group.elements().iter().all(|g| g.first.sign == Sign::Plus);
    let q2 = group.elements().iter().all(|g| g.second.sign == Sign::Plus);
    let pg_invariant = group
        .elements()
        .iter()
        .all(|g| g.first.sign * g.second.sign == Sign::Plus);
    HodgeNumbers {
        pg: u32::from(pg_invariant),
        q: u32::from(q1) + u32::from(q2),
    }
}

/// Coarse type of a quotient surface with numerically trivial canonical
/// class, read off the triple `(chi, q, p_g)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurfaceType {
    Abelian,
    Bielliptic,
    K3Kummer,
    NodalEnriques,
    Unknown,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SurfaceType::Abelian => "Abelian",
            SurfaceType::Bielliptic => "Bielliptic",
            SurfaceType::K3Kummer => "K3Kummer",
            SurfaceType::NodalEnriques => "NodalEnriques",
            SurfaceType::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

pub fn classify_surface(chi: i64, q: u32, pg: u32) -> SurfaceType {
    match (chi, q, pg) {
        (0, 2, 1) => SurfaceType::Abelian,
        (0, 1, 0) => SurfaceType::Bielliptic,
        (2, 0, 1) => SurfaceType::K3Kummer,
        (1, 0, 0) => SurfaceType::NodalEnriques,
        _ => SurfaceType::Unknown,
    }
}

/// Numerical invariants of the quotient and of its minimal resolution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuotientInvariants {
    /// Topological Euler number of the quotient surface.
    pub euler_quotient: i64,
    /// Euler number of the minimal resolution: one -2-curve per node.
    pub euler_resolution: i64,
    /// Holomorphic Euler characteristic, from Noether with `K^2 = 0`.
    pub chi: i64,
    pub pg: u32,
    pub q: u32,
    pub k2: i64,
    pub node_count: usize,
    pub surface_type: SurfaceType,
}

/// Euler number of the quotient by the fixed-point formula
/// `e * |G| = sum over g of e(Fix(g))`, then `chi = e(resolution) / 12`.
pub fn euler_and_chi(group: &ActionGroup, census: &SingularityCensus) -> Result<(i64, i64, i64)> {
    let total: usize = census.fixed_counts.iter().map(|(_, n)| n).sum();
    let order = group.order();
    if total % order != 0 {
        return Err(Error::NonIntegralChi {
            detail: format!("{total} fixed points are not divisible by the group order {order}"),
        });
    }
    let euler_quotient = (total / order) as i64;
    let euler_resolution = euler_quotient + census.node_count() as i64;
    if euler_resolution % 12 != 0 {
        return Err(Error::NonIntegralChi {
            detail: format!("resolution Euler number {euler_resolution} is not divisible by 12"),
        });
    }
    Ok((euler_quotient, euler_resolution, euler_resolution / 12))
}

/// Run census, Hodge theory and the Euler computation, and classify.
pub fn quotient_invariants(group: &ActionGroup) -> Result<QuotientInvariants> {
    let census = fixed_point_census(group)?;
    quotient_invariants_with_census(group, &census)
}

pub fn quotient_invariants_with_census(
    group: &ActionGroup,
    census: &SingularityCensus,
) -> Result<QuotientInvariants> {
    let hodge = hodge_invariants(group);
    let (euler_quotient, euler_resolution, chi) = euler_and_chi(group, census)?;
    Ok(QuotientInvariants {
        euler_quotient,
        euler_resolution,
        chi,
        pg: hodge.pg,
        q: hodge.q,
        k2: 0,
        node_count: census.node_count(),
        surface_type: classify_surface(chi, hodge.q, hodge.pg),
    })
}
