//! Structured run reports: a single key/value document per run, identical
//! bytes for identical inputs, plus a plain-text rendering.
//!
//! Code words serialize as 0/1 strings with node 0 first; torsion points
//! and automorphisms serialize in the same notation the action files use,
//! so generator strings can be pasted back into a file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use enriques_core::census::{CensusOutcome, CensusReport};
use enriques_core::classify::{
    normalize_action, BicanonicalSolution, TemplateMatch, TemplateVerdict,
};
use enriques_core::fibration::Factor;
use enriques_core::group::ActionGroup;
use enriques_core::pipeline::{Analysis, SubquotientRow};

/// Full analysis report for one action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub label: Option<String>,
    pub generators: Vec<String>,
    pub group_order: usize,
    pub codim1_free: bool,
    pub census: CensusSection,
    pub invariants: InvariantsSection,
    pub pencils: Vec<PencilSection>,
    pub incidence: IncidenceSection,
    pub fibre_numbers: FibreNumbersSection,
    pub codes: CodesSection,
    pub template: TemplateSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusSection {
    pub total_fixed_points: usize,
    /// Fixed-point count per non-identity element, in canonical element
    /// order; elements acting freely report 0.
    pub fixed_counts: Vec<ElementCount>,
    pub node_count: usize,
    pub nodes: Vec<NodeLine>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementCount {
    pub element: String,
    pub fixed_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeLine {
    pub index: usize,
    pub representative: String,
    pub orbit_size: usize,
    pub stabilizer_generator: String,
    pub singularity: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsSection {
    pub euler_quotient: i64,
    pub euler_resolution: i64,
    pub chi: i64,
    pub pg: u32,
    pub q: u32,
    pub k2: i64,
    pub node_count: usize,
    pub surface_type: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilSection {
    pub factor: String,
    pub general_orbit_size: usize,
    pub special_fibres: Vec<FibreLine>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FibreLine {
    pub base_point: String,
    pub multiplicity: usize,
    pub is_singular: bool,
    pub nodes: Vec<usize>,
    /// Resolution fibre type annotation for singular double fibres that
    /// carry four nodes.
    pub resolution_type: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidenceSection {
    /// Column labels `p<factor> fibre over <point>`, singular fibres only.
    pub columns: Vec<String>,
    pub nodes_per_fibre: Vec<usize>,
    pub cross_counts: Vec<Vec<usize>>,
    /// Node sets of the nonempty pairwise fibre intersections.
    pub intersection_cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FibreNumbersSection {
    pub f1f2: i64,
    pub a1a2: String,
    pub a1a2_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodesSection {
    pub length: usize,
    pub generator_words: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub weight_enumerator: BTreeMap<u32, u64>,
    pub weights_divisible_by_4: bool,
    pub dim_vnum: Option<u32>,
    pub dim_v_bracket: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateSection {
    pub verdict: String,
    /// `Example1`, `Example2` or `NotEnriques8Nodal`.
    pub kind: String,
    /// Template data (`a`, `b` or `a1`, `a2`, `b1`, `b3`) when matched.
    pub data: BTreeMap<String, String>,
    pub reason: Option<String>,
    /// Isogeny reductions applied before matching, e.g.
    /// `factor 2 by (1/2, 0/1)`.
    pub reductions: Vec<String>,
}

fn template_section(m: &TemplateMatch) -> TemplateSection {
    let mut data = BTreeMap::new();
    let (kind, reason) = match &m.verdict {
        TemplateVerdict::Example1 { a, b } => {
            data.insert("a".to_string(), a.to_string());
            data.insert("b".to_string(), b.to_string());
            ("Example1", None)
        }
        TemplateVerdict::Example2 { a1, a2, b1, b3 } => {
            data.insert("a1".to_string(), a1.to_string());
            data.insert("a2".to_string(), a2.to_string());
            data.insert("b1".to_string(), b1.to_string());
            data.insert("b3".to_string(), b3.to_string());
            ("Example2", None)
        }
        TemplateVerdict::NotEnriques8Nodal { reason } => {
            ("NotEnriques8Nodal", Some(reason.clone()))
        }
    };
    TemplateSection {
        verdict: m.verdict.to_string(),
        kind: kind.to_string(),
        data,
        reason,
        reductions: m
            .reductions
            .iter()
            .map(|r| format!("factor {} by {}", r.factor, r.kernel))
            .collect(),
    }
}

/// Assemble the full report from an analysis.
pub fn build_report(label: Option<String>, analysis: &Analysis) -> Report {
    let group = &analysis.group;
    let census = &analysis.census;

    let fixed_counts = group
        .non_identity()
        .map(|g| ElementCount {
            element: g.to_string(),
            fixed_points: census.fixed_count_of(g),
        })
        .collect();

    let nodes = census
        .orbits
        .iter()
        .enumerate()
        .map(|(index, o)| NodeLine {
            index,
            representative: format!("({}, {})", o.representative.0, o.representative.1),
            orbit_size: o.size(),
            stabilizer_generator: o.stabilizer_generator.to_string(),
            singularity: o.singularity.to_string(),
        })
        .collect();

    let inv = &analysis.invariants;
    let invariants = InvariantsSection {
        euler_quotient: inv.euler_quotient,
        euler_resolution: inv.euler_resolution,
        chi: inv.chi,
        pg: inv.pg,
        q: inv.q,
        k2: inv.k2,
        node_count: inv.node_count,
        surface_type: inv.surface_type.to_string(),
    };

    let incidence_nodes = |factor: Factor, idx: usize| -> Vec<usize> {
        let col = analysis
            .incidence
            .columns
            .iter()
            .position(|&(f, i)| f == factor && i == idx);
        match col {
            Some(c) => analysis.incidence.nodes_on_column(c),
            None => Vec::new(),
        }
    };

    let pencils = [&analysis.pencils.0, &analysis.pencils.1]
        .into_iter()
        .map(|p| PencilSection {
            factor: p.factor.to_string(),
            general_orbit_size: p.general_orbit_size,
            special_fibres: p
                .base_special_points
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let nodes = if f.is_singular {
                        incidence_nodes(p.factor, i)
                    } else {
                        Vec::new()
                    };
                    let resolution_type =
                        (f.is_singular && f.multiplicity == 2 && nodes.len() == 4)
                            .then(|| "I0*".to_string());
                    FibreLine {
                        base_point: f.representative.to_string(),
                        multiplicity: f.multiplicity,
                        is_singular: f.is_singular,
                        nodes,
                        resolution_type,
                    }
                })
                .collect(),
        })
        .collect();

    let incidence = IncidenceSection {
        columns: analysis
            .incidence
            .columns
            .iter()
            .map(|&(factor, idx)| {
                let pencil = match factor {
                    Factor::One => &analysis.pencils.0,
                    Factor::Two => &analysis.pencils.1,
                };
                format!(
                    "p{factor} fibre over {}",
                    pencil.base_special_points[idx].representative
                )
            })
            .collect(),
        nodes_per_fibre: analysis.incidence.nodes_per_fibre(),
        cross_counts: analysis.incidence.cross_counts(),
        intersection_cells: analysis.incidence.intersection_cells(),
    };

    let fibre_numbers = FibreNumbersSection {
        f1f2: analysis.fibre_numbers.f1f2,
        a1a2: format!(
            "{}/{}",
            analysis.fibre_numbers.a1a2.numer(),
            analysis.fibre_numbers.a1a2.denom()
        ),
        a1a2_integral: analysis.fibre_numbers.a1a2_integral(),
    };

    let codes = CodesSection {
        length: analysis.geometric_code.len(),
        generator_words: analysis
            .geometric_words
            .iter()
            .map(|w| w.to_string())
            .collect(),
        dim: analysis.geometric_code.dim(),
        basis: analysis
            .geometric_code
            .basis()
            .iter()
            .map(|w| w.to_string())
            .collect(),
        weight_enumerator: analysis.weight_enumerator.clone(),
        weights_divisible_by_4: analysis.weights_divisible_by_4,
        dim_vnum: analysis.dim_vnum,
        dim_v_bracket: analysis.dim_v_bracket,
    };

    Report {
        label,
        generators: group.generators().iter().map(|g| g.to_string()).collect(),
        group_order: group.order(),
        codim1_free: true,
        census: CensusSection {
            total_fixed_points: census.total_fixed_points(),
            fixed_counts,
            node_count: census.node_count(),
            nodes,
        },
        invariants,
        pencils,
        incidence,
        fibre_numbers,
        codes,
        template: template_section(&analysis.template),
    }
}

pub fn render_report_text(r: &Report) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "action: {label}");
    }
    let _ = writeln!(s, "group order: {}", r.group_order);
    for g in &r.generators {
        let _ = writeln!(s, "  gen {g}");
    }
    let _ = writeln!(s, "free in codimension 1: {}", r.codim1_free);
    let _ = writeln!(s, "\nfixed points ({} total):", r.census.total_fixed_points);
    for c in &r.census.fixed_counts {
        let _ = writeln!(s, "  {}  -> {}", c.element, c.fixed_points);
    }
    let _ = writeln!(s, "\nnodes: {}", r.census.node_count);
    for n in &r.census.nodes {
        let _ = writeln!(
            s,
            "  node {}: orbit of {} (size {}), stabilized by {}, type {}",
            n.index, n.representative, n.orbit_size, n.stabilizer_generator, n.singularity
        );
    }
    let i = &r.invariants;
    let _ = writeln!(
        s,
        "\ninvariants: e(quotient) = {}, e(resolution) = {}, chi = {}, pg = {}, q = {}, K^2 = {}",
        i.euler_quotient, i.euler_resolution, i.chi, i.pg, i.q, i.k2
    );
    let _ = writeln!(s, "surface type: {}", i.surface_type);
    for p in &r.pencils {
        let _ = writeln!(
            s,
            "\npencil p{} (general orbit size {}):",
            p.factor, p.general_orbit_size
        );
        for f in &p.special_fibres {
            let kind = if f.is_singular { "singular" } else { "smooth" };
            let annot = f
                .resolution_type
                .as_ref()
                .map(|t| format!(" [{t}]"))
                .unwrap_or_default();
            let nodes = if f.nodes.is_empty() {
                String::new()
            } else {
                format!(
                    ", nodes {}",
                    f.nodes
                        .iter()
                        .map(|n| n.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            let _ = writeln!(
                s,
                "  over {}: multiplicity {}, {kind}{annot}{nodes}",
                f.base_point, f.multiplicity
            );
        }
    }
    let _ = writeln!(s, "\nincidence (nodes per singular fibre): {:?}", r.incidence.nodes_per_fibre);
    let _ = writeln!(s, "cross counts p1 x p2: {:?}", r.incidence.cross_counts);
    let _ = writeln!(s, "intersection cells: {:?}", r.incidence.intersection_cells);
    let f = &r.fibre_numbers;
    let _ = writeln!(
        s,
        "\nf1 f2 = {}, A1 A2 = {}{}",
        f.f1f2,
        f.a1a2,
        if f.a1a2_integral { "" } else { " (not integral)" }
    );
    let c = &r.codes;
    let _ = writeln!(s, "\ngeometric code (length {}):", c.length);
    let _ = writeln!(s, "  generators: {}", c.generator_words.join(" "));
    let _ = writeln!(s, "  dim = {}, basis: {}", c.dim, c.basis.join(" "));
    let weights: Vec<String> = c
        .weight_enumerator
        .iter()
        .map(|(w, n)| format!("{w}:{n}"))
        .collect();
    let _ = writeln!(s, "  weight enumerator: {}", weights.join(" "));
    let _ = writeln!(s, "  weights divisible by 4: {}", c.weights_divisible_by_4);
    if let Some(d) = c.dim_vnum {
        let _ = writeln!(s, "  dim V_num = {d} (from the discriminant relation)");
    }
    if let Some((lo, hi)) = c.dim_v_bracket {
        let _ = writeln!(s, "  dim V bracket: [{lo}, {hi}]");
    }
    let _ = writeln!(s, "\ntemplate verdict: {}", r.template.verdict);
    for red in &r.template.reductions {
        let _ = writeln!(s, "  after isogeny reduction: {red}");
    }
    s
}

/// Report for the classification command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub label: Option<String>,
    pub group_order: usize,
    pub template: TemplateSection,
    pub normalized_generators: Vec<String>,
    pub origin_shift: (String, String),
    pub factors_swapped: bool,
}

pub fn build_classify_report(
    label: Option<String>,
    group: &ActionGroup,
    template: &TemplateMatch,
) -> ClassifyReport {
    let normalized = normalize_action(group);
    ClassifyReport {
        label,
        group_order: group.order(),
        template: template_section(template),
        normalized_generators: normalized
            .group
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect(),
        origin_shift: (
            normalized.origin_shift.0.to_string(),
            normalized.origin_shift.1.to_string(),
        ),
        factors_swapped: normalized.factors_swapped,
    }
}

pub fn render_classify_text(r: &ClassifyReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "action: {label}");
    }
    let _ = writeln!(s, "group order: {}", r.group_order);
    let _ = writeln!(s, "verdict: {}", r.template.verdict);
    for red in &r.template.reductions {
        let _ = writeln!(s, "  after isogeny reduction: {red}");
    }
    let _ = writeln!(
        s,
        "normalized form (origin shift {} x {}, factors swapped: {}):",
        r.origin_shift.0, r.origin_shift.1, r.factors_swapped
    );
    for g in &r.normalized_generators {
        let _ = writeln!(s, "  gen {g}");
    }
    s
}

/// Report for the subquotient scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub label: Option<String>,
    pub group_order: usize,
    pub rows: Vec<CoverRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverRow {
    pub subgroup: Vec<String>,
    pub order: usize,
    pub chi: i64,
    pub pg: u32,
    pub q: u32,
    pub node_count: usize,
    pub surface_type: String,
    pub cover_r: u32,
    pub cover_m: u32,
    pub chi_from_cover: i64,
    pub agrees: bool,
}

pub fn build_cover_report(
    label: Option<String>,
    group_order: usize,
    rows: &[SubquotientRow],
) -> CoverReport {
    CoverReport {
        label,
        group_order,
        rows: rows
            .iter()
            .map(|r| CoverRow {
                subgroup: r
                    .subgroup
                    .generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect(),
                order: r.subgroup.order(),
                chi: r.invariants.chi,
                pg: r.invariants.pg,
                q: r.invariants.q,
                node_count: r.invariants.node_count,
                surface_type: r.invariants.surface_type.to_string(),
                cover_r: r.cover.r,
                cover_m: r.cover.m,
                chi_from_cover: r.chi_from_cover,
                agrees: r.agrees(),
            })
            .collect(),
    }
}

pub fn render_cover_text(r: &CoverReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "action: {label}");
    }
    let _ = writeln!(
        s,
        "subquotients of a group of order {} ({} rows):",
        r.group_order,
        r.rows.len()
    );
    for row in &r.rows {
        let _ = writeln!(
            s,
            "  |H| = {}: chi = {}, (pg, q) = ({}, {}), {} nodes, {}; cover (r = {}, m = {}) predicts chi = {} -> {}",
            row.order,
            row.chi,
            row.pg,
            row.q,
            row.node_count,
            row.surface_type,
            row.cover_r,
            row.cover_m,
            row.chi_from_cover,
            if row.agrees { "agrees" } else { "MISMATCH" }
        );
        for g in &row.subgroup {
            let _ = writeln!(s, "      gen {g}");
        }
    }
    s
}

/// Report for the bicanonical arithmetic command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicanonicalReport {
    pub k2: i64,
    pub degree_bound: i64,
    /// Solutions of `lambda1 lambda2 d = 4`; populated for `k2 = 4`.
    pub solutions: Vec<(i64, i64, i64)>,
}

pub fn build_bicanonical_report(
    k2: i64,
    degree_bound: i64,
    solutions: &[BicanonicalSolution],
) -> BicanonicalReport {
    BicanonicalReport {
        k2,
        degree_bound,
        solutions: solutions
            .iter()
            .map(|s| (s.lambda1, s.lambda2, s.d))
            .collect(),
    }
}

pub fn render_bicanonical_text(r: &BicanonicalReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "K^2 = {}: non-birational bicanonical degree onto a non-rational image <= {}",
        r.k2, r.degree_bound
    );
    if r.k2 == 4 {
        if r.solutions.is_empty() {
            let _ = writeln!(s, "no (lambda1, lambda2, d) solutions");
        } else {
            for (l1, l2, d) in &r.solutions {
                let _ = writeln!(s, "solution: lambda1 = {l1}, lambda2 = {l2}, A1 A2 = {d}");
            }
        }
    }
    s
}

/// Report for the census command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusTable {
    pub denominator_bound: i64,
    pub total_groups: usize,
    pub classes: Vec<CensusRow>,
    pub enriques_classes: usize,
    pub unmatched_enriques: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub order: usize,
    pub generators: Vec<String>,
    pub members: usize,
    pub outcome: String,
    pub verdict: Option<String>,
}

pub fn build_census_table(report: &CensusReport) -> CensusTable {
    let classes: Vec<CensusRow> = report
        .classes
        .iter()
        .map(|c| {
            let (outcome, verdict) = match &c.outcome {
                CensusOutcome::NotCodimOneFree => ("not free in codimension 1".to_string(), None),
                CensusOutcome::Analyzed {
                    surface_type,
                    node_count,
                    chi,
                    template,
                } => (
                    format!("{surface_type} ({node_count} nodes, chi = {chi})"),
                    template.as_ref().map(|t| t.verdict.to_string()),
                ),
            };
            CensusRow {
                order: c.order,
                generators: c
                    .representative
                    .generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect(),
                members: c.members,
                outcome,
                verdict,
            }
        })
        .collect();
    CensusTable {
        denominator_bound: report.denominator_bound,
        total_groups: report.total_groups,
        enriques_classes: report.enriques_classes().count(),
        unmatched_enriques: report.unmatched_enriques(),
        classes,
    }
}

pub fn render_census_text(t: &CensusTable) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "census with translation denominators <= {}: {} groups in {} classes",
        t.denominator_bound,
        t.total_groups,
        t.classes.len()
    );
    for row in &t.classes {
        let verdict = row
            .verdict
            .as_ref()
            .map(|v| format!("  verdict {v}"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "  order {:>2} x{:<3} {}{}",
            row.order, row.members, row.outcome, verdict
        );
        for g in &row.generators {
            let _ = writeln!(s, "      gen {g}");
        }
    }
    let _ = writeln!(
        s,
        "verified 8-nodal Enriques classes: {}; unmatched: {}",
        t.enriques_classes, t.unmatched_enriques
    );
    s
}

/// Report for the codes command: the code data plus the incidence it came
/// from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodesReport {
    pub label: Option<String>,
    pub group_order: usize,
    pub node_count: usize,
    pub incidence: IncidenceSection,
    pub codes: CodesSection,
}

pub fn build_codes_report(label: Option<String>, analysis: &Analysis) -> CodesReport {
    let full = build_report(label, analysis);
    CodesReport {
        label: full.label,
        group_order: full.group_order,
        node_count: full.census.node_count,
        incidence: full.incidence,
        codes: full.codes,
    }
}

pub fn render_codes_text(r: &CodesReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "action: {label}");
    }
    let _ = writeln!(s, "group order: {}, nodes: {}", r.group_order, r.node_count);
    let _ = writeln!(s, "singular fibres: {}", r.incidence.columns.join(" | "));
    let c = &r.codes;
    let _ = writeln!(s, "code generators: {}", c.generator_words.join(" "));
    let _ = writeln!(s, "dim = {}, basis: {}", c.dim, c.basis.join(" "));
    let weights: Vec<String> = c
        .weight_enumerator
        .iter()
        .map(|(w, n)| format!("{w}:{n}"))
        .collect();
    let _ = writeln!(s, "weight enumerator: {}", weights.join(" "));
    let _ = writeln!(s, "weights divisible by 4: {}", c.weights_divisible_by_4);
    if let Some(d) = c.dim_vnum {
        let _ = writeln!(s, "dim V_num = {d}");
    }
    if let Some((lo, hi)) = c.dim_v_bracket {
        let _ = writeln!(s, "dim V bracket: [{lo}, {hi}]");
    }
    s
}

/// Machine-readable error envelope, written to standard error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

impl ErrorObject {
    pub fn new(code: &str, message: String) -> Self {
        ErrorObject {
            error: ErrorBody {
                code: code.to_string(),
                message,
            },
        }
    }
}
