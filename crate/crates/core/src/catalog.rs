//! Exhaustive catalogs of labeled graphs that are closed for the identity
//! labeling, and per-graph verification records.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::graph::{is_closed, Graph};
use crate::hilbert::{regularity_from_presentation, CmAssumption};
use crate::rees::{binomial_edge_ideal, edge_t_names, fiber_presentation, rees_presentation, relation_profile_of};
use crate::report::{anchors, closed_invariant_report, crosscheck, Discrepancy};

/// Largest `n` accepted for enumeration; `check all` is limited further.
pub const ENUMERATION_CAP: usize = 7;
pub const FULL_VERIFY_CAP: usize = 6;

/// Which graphs of `[n]` to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isolated {
    /// At least one edge; isolated vertices allowed.
    Allowed,
    /// Every vertex on an edge.
    Excluded,
}

/// Identity-closed graphs on `[n]` with at least one edge, by increasing encoding.
pub fn identity_closed_graphs(n: usize, isolated: Isolated) -> Result<Vec<Graph>> {
    if n > ENUMERATION_CAP {
        return Err(Error::ScaleExceeded { what: "vertex count for catalog enumeration", limit: ENUMERATION_CAP, actual: n });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let pairs = n * (n - 1) / 2;
    Ok((1u128..1 << pairs)
        .map(|code| Graph::from_encoding(n, code))
        .filter(|g| is_closed(g) && (isolated == Isolated::Allowed || g.isolated_vertices().is_empty()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogCheck {
    All,
    Reltype,
    Spread,
    Reg,
}

impl std::str::FromStr for CatalogCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CatalogCheck::All),
            "reltype" => Ok(CatalogCheck::Reltype),
            "spread" => Ok(CatalogCheck::Spread),
            "reg" => Ok(CatalogCheck::Reg),
            _ => Err(Error::Config(format!("unknown check {s:?}"))),
        }
    }
}

/// One JSON line of catalog output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub encoding: u64,
    pub graph: Graph,
    pub removed_isolated: Vec<usize>,
    pub omega: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reltype: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fiber_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rees_h_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fiber_h_degree: Option<usize>,
    pub discrepancies: Vec<Discrepancy>,
    pub incomplete: Vec<String>,
}

impl CatalogEntry {
    pub fn verified(&self) -> bool {
        self.discrepancies.is_empty() && self.incomplete.is_empty()
    }
}

fn mismatch(invariant: &str, expected: impl ToString, observed: impl ToString, source: &str) -> Discrepancy {
    Discrepancy { invariant: invariant.into(), expected: expected.to_string(), observed: observed.to_string(), source: source.into() }
}

/// Runs one check on one graph. Resource limits are recorded in
/// `incomplete` rather than returned.
pub fn check_graph(g: &Graph, check: CatalogCheck, cfg: &RunConfig) -> Result<CatalogEntry> {
    let report = closed_invariant_report(g, cfg)?;
    let mut entry = CatalogEntry {
        encoding: g.encoding() as u64,
        graph: g.clone(),
        removed_isolated: report.removed_isolated.clone(),
        omega: report.omega.value,
        reltype: None,
        fiber_dim: None,
        rees_h_degree: None,
        fiber_h_degree: None,
        discrepancies: Vec::new(),
        incomplete: Vec::new(),
    };
    let outcome = (|| -> Result<()> {
        if check == CatalogCheck::All {
            let x = crosscheck(g, cfg)?;
            entry.reltype = x.oracle.relation_profile.map(|p| p.reltype);
            entry.fiber_dim = x.oracle.fiber.as_ref().map(|f| f.hilbert.dim);
            entry.rees_h_degree = x.oracle.rees.as_ref().map(|r| r.value);
            entry.fiber_h_degree = x.oracle.fiber.as_ref().map(|f| f.value);
            entry.discrepancies = x.discrepancies;
            entry.incomplete = x.incomplete;
            return Ok(());
        }
        let h = report.graph.relabel(&report.labeling)?;
        let ideal = binomial_edge_ideal(&h);
        let names = edge_t_names(&h);
        let gb = cfg.gb();
        match check {
            CatalogCheck::Reltype => {
                let rees = rees_presentation(&ideal, &names, &gb)?;
                let fiber = fiber_presentation(&ideal, &names, &gb)?;
                let p = relation_profile_of(&rees, &fiber, &gb)?;
                entry.reltype = Some(p.reltype);
                if p.reltype > report.reltype_bound.value {
                    entry.discrepancies.push(mismatch("reltype_bound", "<= 2", p.reltype, anchors::RELATION_TYPE));
                }
                if p.linear_type != report.linear_type.value {
                    entry.discrepancies.push(mismatch("linear_type", report.linear_type.value, p.linear_type, anchors::LINEAR_TYPE));
                }
            }
            CatalogCheck::Spread => {
                let d = fiber_presentation(&ideal, &names, &gb)?.hilbert_data()?.dim;
                entry.fiber_dim = Some(d);
                if d != report.analytic_spread.value {
                    entry.discrepancies.push(mismatch("analytic_spread", report.analytic_spread.value, d, anchors::ANALYTIC_SPREAD));
                }
                let m = report.edges.value;
                if (d == m) != report.ell_equals_edges.value {
                    entry.discrepancies.push(mismatch("ell_equals_edges", report.ell_equals_edges.value, d == m, anchors::SPREAD_EQUALS_EDGES));
                }
            }
            CatalogCheck::Reg => {
                let rees = rees_presentation(&ideal, &names, &gb)?;
                let v = regularity_from_presentation(&rees, CmAssumption::Cited(anchors::REES_CM.into()))?.value;
                entry.rees_h_degree = Some(v);
                if v != report.reg_rees.value {
                    entry.discrepancies.push(mismatch("reg_rees", report.reg_rees.value, v, anchors::REES_REGULARITY));
                }
                if let Some(ell) = &report.ell_path {
                    if ell.value > v {
                        entry.discrepancies.push(mismatch("ell_path_bound", format!("<= {v}"), ell.value, anchors::REES_LOWER_BOUND));
                    }
                }
            }
            CatalogCheck::All => unreachable!(),
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => Ok(entry),
        Err(e) if e.is_resource() => {
            entry.incomplete.push(e.to_string());
            Ok(entry)
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub n: usize,
    pub check: CatalogCheck,
    pub graphs: usize,
    pub verified: usize,
    /// Graphs with at least one discrepancy.
    pub discrepancies: usize,
    pub incomplete: usize,
    /// Failing invariant names with the number of graphs failing each.
    pub failing_invariants: Vec<(String, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_reltype: Option<u32>,
    /// Whether every graph attaining `max_reltype` (when 2) contains `K_4`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_reltype_only_with_k4: Option<bool>,
}

impl CatalogSummary {
    pub fn from_entries(n: usize, check: CatalogCheck, entries: &[CatalogEntry]) -> Self {
        let mut failing: std::collections::BTreeMap<String, usize> = Default::default();
        for e in entries {
            let names: std::collections::BTreeSet<&str> = e.discrepancies.iter().map(|d| d.invariant.as_str()).collect();
            for name in names {
                *failing.entry(name.to_string()).or_default() += 1;
            }
        }
        let max_reltype = entries.iter().filter_map(|e| e.reltype).max();
        let only_k4 = max_reltype
            .filter(|&m| m >= 2)
            .map(|m| entries.iter().filter(|e| e.reltype == Some(m)).all(|e| e.omega >= 4));
        CatalogSummary {
            n,
            check,
            graphs: entries.len(),
            verified: entries.iter().filter(|e| e.verified()).count(),
            discrepancies: entries.iter().filter(|e| !e.discrepancies.is_empty()).count(),
            incomplete: entries.iter().filter(|e| !e.incomplete.is_empty()).count(),
            failing_invariants: failing.into_iter().collect(),
            max_reltype,
            max_reltype_only_with_k4: only_k4,
        }
    }
}

/// Catalog graphs for `check`, with the size limit for that check applied.
pub fn catalog_graphs(n: usize, check: CatalogCheck) -> Result<Vec<Graph>> {
    if check == CatalogCheck::All && n > FULL_VERIFY_CAP {
        return Err(Error::ScaleExceeded { what: "vertex count for full catalog verification", limit: FULL_VERIFY_CAP, actual: n });
    }
    identity_closed_graphs(n, Isolated::Allowed)
}

/// Sequential catalog run.
pub fn run_catalog(n: usize, check: CatalogCheck, cfg: &RunConfig) -> Result<(Vec<CatalogEntry>, CatalogSummary)> {
    cfg.validate()?;
    let entries = catalog_graphs(n, check)?.iter().map(|g| check_graph(g, check, cfg)).collect::<Result<Vec<_>>>()?;
    let summary = CatalogSummary::from_entries(n, check, &entries);
    Ok((entries, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::clique_number;

    #[test]
    fn catalog_sizes() {
        let excl: Vec<usize> = (2..=6).map(|n| identity_closed_graphs(n, Isolated::Excluded).unwrap().len()).collect();
        assert_eq!(excl, vec![1, 2, 8, 34, 172]);
        let all: Vec<usize> = (2..=4).map(|n| identity_closed_graphs(n, Isolated::Allowed).unwrap().len()).collect();
        assert_eq!(all, vec![1, 5, 22]);
    }

    #[test]
    fn clique_sanity_on_catalog() {
        for g in identity_closed_graphs(4, Isolated::Excluded).unwrap() {
            assert!(clique_number(&g) <= 4);
        }
    }

    #[test]
    fn n3_reg_catalog() {
        let (entries, s) = run_catalog(3, CatalogCheck::Reg, &RunConfig::default()).unwrap();
        assert_eq!(s.graphs, 5);
        // single edges have a polynomial-ring Rees algebra
        let single: Vec<_> = entries.iter().filter(|e| e.graph.num_edges() == 1).collect();
        assert!(single.iter().all(|e| e.rees_h_degree == Some(0)));
    }

    #[test]
    fn n4_reltype_catalog() {
        let (_, s) = run_catalog(4, CatalogCheck::Reltype, &RunConfig::default()).unwrap();
        assert_eq!(s.max_reltype, Some(2));
        assert_eq!(s.max_reltype_only_with_k4, Some(true));
        assert_eq!(s.discrepancies, 0);
    }

    #[test]
    fn scale_refusals() {
        assert!(catalog_graphs(7, CatalogCheck::All).unwrap_err().is_resource());
        assert!(identity_closed_graphs(8, Isolated::Allowed).unwrap_err().is_resource());
    }
}
