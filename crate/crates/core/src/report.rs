//! Closed-form invariants of closed graphs and the harness that compares
//! them with the Gröbner/Hilbert oracle.

use serde::{Deserialize, Serialize};

use crate::config::{FieldChoice, RunConfig};
use crate::error::{Certificate, Error, Result};
use crate::graph::{
    build_h, clique_number, closed_violation, connected_components, decompose_indecomposable, find_closed_labeling,
    longest_induced_path, matching_data, Graph, Labeling,
};
use crate::hilbert::{regularity_from_presentation, CmAssumption, RegularityValue};
use crate::poly::{buchberger, initial_ideal, Ideal, ScreeningField, TermOrder};
use crate::rees::{
    binomial_edge_ideal, edge_t_names, fiber_from_rees, fiber_kernel, rees_kernel, rees_presentation, OracleBundle,
    RelationProfile,
};

/// Provenance anchors for values that come from closed-form statements.
pub mod anchors {
    pub const REES_REGULARITY: &str = "theorem:rees-regularity";
    pub const REES_LOWER_BOUND: &str = "theorem:rees-regularity-lower-bound";
    pub const PERFECT_MATCHING: &str = "theorem:perfect-matching";
    pub const ANALYTIC_SPREAD: &str = "theorem:analytic-spread";
    pub const SPREAD_EQUALS_EDGES: &str = "theorem:spread-equals-edges";
    pub const FIBER_UPPER: &str = "theorem:fiber-regularity-upper";
    pub const FIBER_LOWER: &str = "theorem:fiber-regularity-lower";
    pub const LINEAR_TYPE: &str = "theorem:linear-type";
    pub const RELATION_TYPE: &str = "theorem:relation-type";
    pub const REES_CM: &str = "theorem:rees-cm-normal-domain";
    pub const FIBER_KOSZUL: &str = "theorem:fiber-koszul";
    pub const FIBER_CM: &str = "theorem:fiber-cm-normal-domain";
    pub const ORACLE: &str = "oracle";
}

/// A value together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sourced<T> {
    pub value: T,
    pub source: String,
}

fn theorem<T>(value: T, anchor: &str) -> Sourced<T> {
    Sourced { value, source: anchor.to_string() }
}

fn computed<T>(value: T) -> Sourced<T> {
    Sourced { value, source: anchors::ORACLE.to_string() }
}

/// Properties granted by cited theorems; never computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedFlags {
    pub rees_cm_normal_domain: Sourced<bool>,
    pub fiber_koszul: Sourced<bool>,
    pub fiber_cm_normal_domain: Sourced<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    /// The analyzed graph in its input labels, isolated vertices removed.
    pub graph: Graph,
    /// Closed labeling used for the closed-form values.
    pub labeling: Labeling,
    pub removed_isolated: Vec<usize>,
    pub n: Sourced<usize>,
    pub edges: Sourced<usize>,
    pub c: Sourced<usize>,
    pub r: Sourced<usize>,
    pub omega: Sourced<usize>,
    pub mat_h: Sourced<usize>,
    /// `None` when the graph exceeds the induced-path enumeration cap.
    pub ell_path: Option<Sourced<usize>>,
    pub reg_rees: Sourced<usize>,
    pub analytic_spread: Sourced<usize>,
    pub ell_equals_edges: Sourced<bool>,
    pub fiber_reg_upper: Sourced<usize>,
    pub fiber_reg_lower: Option<Sourced<usize>>,
    pub linear_type: Sourced<bool>,
    pub reltype_bound: Sourced<u32>,
    pub certified_flags: CertifiedFlags,
    /// Some component admitted maximal decompositions with different parts.
    pub decomposition_ambiguous: bool,
    pub warnings: Vec<String>,
}

/// Strips isolated vertices, returning the graph, the removed vertices and warnings.
fn prepare(g: &Graph) -> Result<(Graph, Vec<usize>, Vec<String>)> {
    if g.num_edges() == 0 {
        return Err(Error::InvalidGraph("graph has no edges".into()));
    }
    let (h, removed) = g.strip_isolated();
    let warnings = if removed.is_empty() {
        Vec::new()
    } else {
        vec![format!("removed isolated vertices {removed:?}; n and c refer to the remaining graph")]
    };
    Ok((h, removed, warnings))
}

fn closed_labeling_or_certificate(g: &Graph) -> Result<Labeling> {
    match find_closed_labeling(g)? {
        Some(l) => Ok(l),
        None => Err(Error::NotClosed(Certificate::NoClosedLabeling {
            n: g.n(),
            identity_violation: Box::new(closed_violation(g).expect("identity is not closed")),
        })),
    }
}

/// Closed-form invariants for a closed graph. Disconnected graphs are
/// evaluated per component and summed (maximum for `ω` and `ℓ(G)`).
pub fn closed_invariant_report(g: &Graph, cfg: &RunConfig) -> Result<InvariantReport> {
    let (graph, removed, mut warnings) = prepare(g)?;
    let labeling = closed_labeling_or_certificate(&graph)?;
    let relabeled = graph.relabel(&labeling)?;

    let n = graph.n();
    let comps = connected_components(&relabeled);
    let c = comps.len();
    let (mut r, mut reg, mut spread, mut upper, mut mat) = (0, 0, 0, 0, 0);
    let mut ambiguous = false;
    for comp in &comps {
        let (sub, _) = relabeled.induced(comp);
        let d = decompose_indecomposable(&sub, cfg.brute_force_cap)?;
        ambiguous |= d.ambiguous;
        let ni = sub.n();
        r += d.r;
        reg += ni - 1;
        spread += 2 * ni - d.r - 2;
        upper += ni - 2;
        mat += ni - 1;
    }
    if ambiguous {
        warnings.push("maximal decompositions disagree; r uses the first one found".into());
    }
    let omega = clique_number(&graph);
    let ell_path = match longest_induced_path(&graph, cfg.brute_force_cap) {
        Ok(l) => Some(computed(l)),
        Err(e) if e.is_resource() => {
            warnings.push(format!("ell_path omitted: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let m = graph.num_edges();

    Ok(InvariantReport {
        graph,
        labeling,
        removed_isolated: removed,
        n: computed(n),
        edges: computed(m),
        c: computed(c),
        r: computed(r),
        omega: computed(omega),
        mat_h: theorem(mat, anchors::PERFECT_MATCHING),
        ell_path,
        reg_rees: theorem(reg, anchors::REES_REGULARITY),
        analytic_spread: theorem(spread, anchors::ANALYTIC_SPREAD),
        ell_equals_edges: theorem(omega <= 3, anchors::SPREAD_EQUALS_EDGES),
        fiber_reg_upper: theorem(upper, anchors::FIBER_UPPER),
        fiber_reg_lower: (omega >= 4).then(|| theorem(omega - 2, anchors::FIBER_LOWER)),
        linear_type: theorem(omega <= 3, anchors::LINEAR_TYPE),
        reltype_bound: theorem(2, anchors::RELATION_TYPE),
        certified_flags: CertifiedFlags {
            rees_cm_normal_domain: theorem(true, anchors::REES_CM),
            fiber_koszul: theorem(true, anchors::FIBER_KOSZUL),
            fiber_cm_normal_domain: theorem(true, anchors::FIBER_CM),
        },
        decomposition_ambiguous: ambiguous,
        warnings,
    })
}

/// Bounds valid for every graph, closed or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBounds {
    pub rees_reg_lb: Sourced<usize>,
    /// `ω - 2`, present when `ω ≥ 4`.
    pub fiber_reg_lb: Option<Sourced<usize>>,
}

pub fn general_lower_bounds(g: &Graph, cfg: &RunConfig) -> Result<LowerBounds> {
    let omega = clique_number(g);
    Ok(LowerBounds {
        rees_reg_lb: theorem(longest_induced_path(g, cfg.brute_force_cap)?, anchors::REES_LOWER_BOUND),
        fiber_reg_lb: (omega >= 4).then(|| theorem(omega - 2, anchors::FIBER_LOWER)),
    })
}

/// Result of `analyze`: full report, or bounds plus the reason the graph is not closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Analysis {
    Closed { report: Box<InvariantReport> },
    NotClosed { graph: Graph, certificate: Certificate, bounds: LowerBounds },
}

pub fn analyze(g: &Graph, cfg: &RunConfig) -> Result<Analysis> {
    match closed_invariant_report(g, cfg) {
        Ok(report) => Ok(Analysis::Closed { report: Box::new(report) }),
        Err(Error::NotClosed(certificate)) => {
            let (graph, _, _) = prepare(g)?;
            let bounds = general_lower_bounds(&graph, cfg)?;
            Ok(Analysis::NotClosed { graph, certificate, bounds })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Report field or property that failed.
    pub invariant: String,
    pub expected: String,
    pub observed: String,
    pub source: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingValue {
    pub size: usize,
    pub perfect: bool,
}

/// Oracle-side values; `None` where a check was not run or was cut off.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleValues {
    pub rees: Option<RegularityValue>,
    pub fiber: Option<RegularityValue>,
    pub relation_profile: Option<RelationProfile>,
    pub matching: Option<MatchingValue>,
    pub sagbi: Option<bool>,
    pub initial_powers: Option<bool>,
    pub initial_matches_edges: Option<bool>,
    pub fiber_is_rees_mod_m: Option<bool>,
    /// `"quadratic Gröbner basis (<order>)"` or `"no certificate"`.
    pub koszul_certificate: Option<String>,
    /// Rees h-degree and fiber dimension agree under a second labeling.
    pub labeling_invariant: Option<bool>,
    /// Prime-field screening produced the same initial ideals.
    pub screening_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub report: InvariantReport,
    pub oracle: OracleValues,
    pub discrepancies: Vec<Discrepancy>,
    /// Checks cut off by a resource limit.
    pub incomplete: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty() && self.incomplete.is_empty()
    }
}

fn check_scale(g: &Graph, cfg: &RunConfig) -> Result<()> {
    if g.n() > cfg.oracle_max_vertices {
        return Err(Error::ScaleExceeded {
            what: "vertex count for oracle verification",
            limit: cfg.oracle_max_vertices,
            actual: g.n(),
        });
    }
    Ok(())
}

struct Recorder {
    discrepancies: Vec<Discrepancy>,
    incomplete: Vec<String>,
}

impl Recorder {
    fn expect(&mut self, ok: bool, invariant: &str, expected: impl ToString, observed: impl ToString, source: &str) {
        if !ok {
            self.discrepancies.push(Discrepancy {
                invariant: invariant.into(),
                expected: expected.to_string(),
                observed: observed.to_string(),
                source: source.into(),
            });
        }
    }

    /// Resource errors mark `name` incomplete; other errors propagate.
    fn attempt<T>(&mut self, name: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_resource() => {
                self.incomplete.push(format!("{name}: {e}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Looks for a quadratic reduced Gröbner basis of the fiber relations under
/// lex in both variable directions.
fn koszul_certificate(bundle: &OracleBundle, cfg: &RunConfig) -> Result<String> {
    let f = &bundle.fiber;
    let quadratic = |gb: &[crate::poly::Polynomial]| gb.iter().all(|g| g.degree().unwrap_or(0) <= 2);
    if quadratic(&f.defining) {
        return Ok("quadratic Gröbner basis (lex)".into());
    }
    let m = f.nvars();
    let reversed = TermOrder::Lex { precedence: (0..m).rev().collect() };
    let gb = buchberger(&f.defining, &reversed, m, &cfg.gb())?;
    Ok(if quadratic(&gb) { "quadratic Gröbner basis (reverse lex precedence)".into() } else { "no certificate".into() })
}

/// Rees h-degree and fiber dimension under the input labels (or, when the
/// input labels are already closed, under the reversed labels).
fn alternate_labeling_values(report: &InvariantReport, cfg: &RunConfig) -> Result<(usize, usize)> {
    let graph = if report.labeling.is_identity() {
        let n = report.graph.n();
        report.graph.relabel(&Labeling::new((1..=n).rev().collect())?)?
    } else {
        report.graph.clone()
    };
    let ideal = binomial_edge_ideal(&graph);
    let names = edge_t_names(&graph);
    let rees = rees_presentation(&ideal, &names, &cfg.gb())?;
    let fiber = crate::rees::fiber_presentation(&ideal, &names, &cfg.gb())?;
    Ok((regularity_from_presentation(&rees, CmAssumption::None)?.value, fiber.hilbert_data()?.dim))
}

/// Initial ideals of both kernels over the screening prime agree with the
/// rational ones.
fn screening_agrees(bundle: &OracleBundle, cfg: &RunConfig) -> Result<bool> {
    let ideal = &bundle.ideal;
    let modp = Ideal::new(ideal.vars.clone(), ideal.gens.iter().map(|g| g.to_prime_field()).collect::<Vec<_>>());
    let names = edge_t_names(&bundle.graph);
    let (rv, rgb) = rees_kernel::<ScreeningField>(&modp, &names, &cfg.gb())?;
    let (fv, fgb) = fiber_kernel::<ScreeningField>(&modp, &names, &cfg.gb())?;
    Ok(initial_ideal(&rgb, &TermOrder::lex(), rv.len()) == bundle.rees.initial_ideal()
        && initial_ideal(&fgb, &TermOrder::lex(), fv.len()) == bundle.fiber.initial_ideal())
}

/// Compares every closed-form field with the oracle. Empty discrepancy list
/// and no incomplete checks means full agreement.
pub fn crosscheck(g: &Graph, cfg: &RunConfig) -> Result<CrossCheck> {
    cfg.validate()?;
    let report = closed_invariant_report(g, cfg)?;
    check_scale(&report.graph, cfg)?;
    let gb = cfg.gb();
    let mut rec = Recorder { discrepancies: Vec::new(), incomplete: Vec::new() };
    let mut oracle = OracleValues::default();

    // matching in H needs no algebra
    let h = build_h(&report.graph, &report.labeling)?;
    let (size, perfect) = matching_data(&h);
    rec.expect(
        size == report.mat_h.value && perfect,
        "mat_h",
        format!("{} (perfect)", report.mat_h.value),
        format!("{size}{}", if perfect { " (perfect)" } else { "" }),
        &report.mat_h.source,
    );
    oracle.matching = Some(MatchingValue { size, perfect });

    let Some(bundle) = rec.attempt("presentations", OracleBundle::new(&report.graph, &report.labeling, &gb))? else {
        return Ok(CrossCheck { report, oracle, discrepancies: rec.discrepancies, incomplete: rec.incomplete });
    };

    let n = report.n.value;
    let rees = regularity_from_presentation(&bundle.rees, CmAssumption::Cited(anchors::REES_CM.into()))?;
    let fiber = regularity_from_presentation(&bundle.fiber, CmAssumption::Cited(anchors::FIBER_CM.into()))?;

    rec.expect(rees.value == report.reg_rees.value, "reg_rees", report.reg_rees.value, rees.value, &report.reg_rees.source);
    if let Some(ell) = &report.ell_path {
        rec.expect(ell.value <= rees.value, "ell_path_bound", format!("<= {}", rees.value), ell.value, anchors::REES_LOWER_BOUND);
    }
    rec.expect(rees.hilbert.dim == 2 * n + 1, "rees_dimension", 2 * n + 1, rees.hilbert.dim, anchors::ORACLE);
    let fdim = fiber.hilbert.dim;
    rec.expect(
        fdim == report.analytic_spread.value,
        "analytic_spread",
        report.analytic_spread.value,
        fdim,
        &report.analytic_spread.source,
    );
    let m = report.edges.value;
    rec.expect(
        (fdim == m) == report.ell_equals_edges.value,
        "ell_equals_edges",
        report.ell_equals_edges.value,
        format!("{} (dim {fdim}, |E| = {m})", fdim == m),
        &report.ell_equals_edges.source,
    );
    rec.expect(
        fiber.value <= report.fiber_reg_upper.value,
        "fiber_reg_upper",
        format!("<= {}", report.fiber_reg_upper.value),
        fiber.value,
        &report.fiber_reg_upper.source,
    );
    if let Some(lower) = &report.fiber_reg_lower {
        rec.expect(fiber.value >= lower.value, "fiber_reg_lower", format!(">= {}", lower.value), fiber.value, &lower.source);
    }
    for (name, v) in [("rees_multiplicity", &rees), ("fiber_multiplicity", &fiber)] {
        rec.expect(v.hilbert.multiplicity() > 0, name, "> 0", v.hilbert.multiplicity(), anchors::ORACLE);
    }
    oracle.rees = Some(rees);
    oracle.fiber = Some(fiber);

    if let Some(profile) = rec.attempt("relation_profile", bundle.relation_profile(&gb))? {
        rec.expect(
            profile.reltype <= report.reltype_bound.value,
            "reltype_bound",
            format!("<= {}", report.reltype_bound.value),
            profile.reltype,
            &report.reltype_bound.source,
        );
        rec.expect(
            profile.linear_type == report.linear_type.value,
            "linear_type",
            report.linear_type.value,
            profile.linear_type,
            &report.linear_type.source,
        );
        oracle.relation_profile = Some(profile);
    }

    let matches = bundle.initial_matches_edges();
    rec.expect(matches, "closed_initial_gens", "in(J_G) = (x_i y_j)", "differs", anchors::ORACLE);
    oracle.initial_matches_edges = Some(matches);

    if let Some(ok) = rec.attempt("sagbi", bundle.sagbi_check(cfg.degree_bound))? {
        rec.expect(ok, "sagbi", format!("equal Hilbert functions through degree {}", cfg.degree_bound), "differ", anchors::ORACLE);
        oracle.sagbi = Some(ok);
    }
    if let Some(ok) = rec.attempt("initial_powers", bundle.initial_powers_check(cfg.smax, &gb))? {
        rec.expect(ok, "initial_powers", format!("in(J^s) = in(J)^s for s <= {}", cfg.smax), "differ", anchors::ORACLE);
        oracle.initial_powers = Some(ok);
    }
    if let Some(f) = rec.attempt("fiber_quotient", fiber_from_rees(&bundle.rees, bundle.ideal.nvars(), &gb))? {
        let ok = f == bundle.fiber.defining;
        rec.expect(ok, "fiber_quotient", "ker φ = (ker ψ + m) ∩ K[T]", "differ", anchors::ORACLE);
        oracle.fiber_is_rees_mod_m = Some(ok);
    }
    oracle.koszul_certificate = rec.attempt("koszul_certificate", koszul_certificate(&bundle, cfg))?;

    if let Some((h, d)) = rec.attempt("labeling_invariance", alternate_labeling_values(&report, cfg))? {
        let (h0, d0) = (oracle.rees.as_ref().unwrap().value, fdim);
        let ok = h == h0 && d == d0;
        rec.expect(ok, "labeling_invariance", format!("h-degree {h0}, fiber dim {d0}"), format!("h-degree {h}, fiber dim {d}"), anchors::ORACLE);
        oracle.labeling_invariant = Some(ok);
    }
    if let FieldChoice::Prime(p) = cfg.field {
        if let Some(ok) = rec.attempt("screening", screening_agrees(&bundle, cfg))? {
            rec.expect(ok, "screening_field", format!("same initial ideals mod {p}"), "differ", anchors::ORACLE);
            oracle.screening_agrees = Some(ok);
        }
    }

    Ok(CrossCheck { report, oracle, discrepancies: rec.discrepancies, incomplete: rec.incomplete })
}
