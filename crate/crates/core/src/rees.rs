//! Binomial edge ideals and presentations of their Rees algebras and
//! special fibers as quotients of polynomial rings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{closed_violation, Graph, Labeling};
use crate::hilbert::HilbertData;
use crate::poly::{
    buchberger, eliminate, initial_ideal, minimal_generators, parse_polynomial, Field, GbConfig, Ideal, Monomial,
    MonomialIdeal, PolyError, Polynomial, Rational, TermOrder, VariableSet,
};

/// `K[x_1..x_n, y_1..y_n]`; `x_i` is variable `i-1`, `y_i` is `n+i-1`.
pub fn xy_ring(n: usize) -> VariableSet {
    let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}")));
    VariableSet::new(names).expect("distinct names")
}

pub fn x_var(i: usize) -> usize {
    i - 1
}

pub fn y_var(n: usize, i: usize) -> usize {
    n + i - 1
}

/// One `T` name per edge, in edge order: `T1_2`, `T1_3`, ...
pub fn edge_t_names(g: &Graph) -> Vec<String> {
    g.edges().iter().map(|(i, j)| format!("T{i}_{j}")).collect()
}

fn edge_binomial(n: usize, i: usize, j: usize) -> Polynomial {
    let xi_yj = Monomial::var(x_var(i)).mul(&Monomial::var(y_var(n, j)));
    let xj_yi = Monomial::var(x_var(j)).mul(&Monomial::var(y_var(n, i)));
    Polynomial::from_terms(vec![(xi_yj, Rational::from(1)), (xj_yi, Rational::from(-1))])
}

/// `J_G = (x_i y_j - x_j y_i : {i,j} ∈ E, i < j)`, one generator per edge.
pub fn binomial_edge_ideal(g: &Graph) -> Ideal {
    let n = g.n();
    Ideal::new(xy_ring(n), g.edges().iter().map(|&(i, j)| edge_binomial(n, i, j)).collect())
}

/// `(x_i y_j : {i,j} ∈ E, i < j)` for the graph relabeled by `l`.
pub fn closed_initial_gens(g: &Graph, l: &Labeling) -> Result<MonomialIdeal> {
    let h = g.relabel(l)?;
    if let Some(cert) = closed_violation(&h) {
        return Err(Error::NotClosed(cert));
    }
    Ok(edge_initial_monomials(&h))
}

fn edge_initial_monomials(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    MonomialIdeal::new(
        2 * n,
        g.edges().iter().map(|&(i, j)| Monomial::var(x_var(i)).mul(&Monomial::var(y_var(n, j)))),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Rees,
    Fiber,
}

/// `K[vars] / defining`. The defining ideal is stored as its reduced Gröbner
/// basis for lex in listing order; every variable has degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct PresentedAlgebra {
    pub kind: AlgebraKind,
    pub vars: VariableSet,
    pub defining: Vec<Polynomial>,
    pub grading: Vec<u32>,
    /// `T`-degree; Rees presentations only.
    pub tgrading: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    kind: AlgebraKind,
    variables: Vec<String>,
    generators: Vec<String>,
    grading: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tgrading: Option<Vec<u32>>,
}

impl TryFrom<PresentationJson> for PresentedAlgebra {
    type Error = PolyError;
    fn try_from(j: PresentationJson) -> Result<Self, PolyError> {
        let vars = VariableSet::new(j.variables)?;
        let defining = j.generators.iter().map(|g| parse_polynomial(g, &vars)).collect::<Result<_, _>>()?;
        Ok(PresentedAlgebra { kind: j.kind, vars, defining, grading: j.grading, tgrading: j.tgrading })
    }
}

impl From<PresentedAlgebra> for PresentationJson {
    fn from(a: PresentedAlgebra) -> Self {
        PresentationJson {
            kind: a.kind,
            generators: a.defining.iter().map(|g| g.display(&a.vars).to_string()).collect(),
            variables: a.vars.names().to_vec(),
            grading: a.grading,
            tgrading: a.tgrading,
        }
    }
}

impl PresentedAlgebra {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn defining_ideal(&self) -> Ideal {
        Ideal::new(self.vars.clone(), self.defining.clone())
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining.is_empty()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        initial_ideal(&self.defining, &TermOrder::lex(), self.nvars())
    }

    pub fn hilbert_data(&self) -> Result<HilbertData> {
        HilbertData::from_monomial_ideal(&self.initial_ideal())
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.defining.iter().map(|g| g.display(&self.vars).to_string()).collect()
    }
}

/// Common degree of the generators; errors unless all are homogeneous of one degree.
fn equigenerated_degree<F: Field>(ideal: &Ideal<F>) -> Result<u32> {
    let mut deg = None;
    for g in &ideal.gens {
        if !g.is_standard_homogeneous() {
            return Err(PolyError::NonHomogeneous.into());
        }
        let d = g.degree().unwrap_or(0);
        if deg.is_some_and(|e| e != d) {
            return Err(PolyError::NotEquigenerated.into());
        }
        deg = Some(d);
    }
    Ok(deg.unwrap_or(1))
}

fn check_t_names<F: Field>(ideal: &Ideal<F>, t_names: &[String]) -> Result<()> {
    if t_names.len() != ideal.gens.len() {
        return Err(Error::Config(format!("{} T-names for {} generators", t_names.len(), ideal.gens.len())));
    }
    Ok(())
}

/// `ker ψ` for `ψ: K[S-vars, T_e] → S[t]`, `T_e ↦ f_e t`, by eliminating
/// `t` from `(T_e - f_e t)`.
pub fn rees_presentation(ideal: &Ideal, t_names: &[String], cfg: &GbConfig) -> Result<PresentedAlgebra> {
    let (vars, defining) = rees_kernel(ideal, t_names, cfg)?;
    let ns = ideal.nvars();
    Ok(PresentedAlgebra {
        kind: AlgebraKind::Rees,
        grading: vec![1; vars.len()],
        tgrading: Some((0..vars.len()).map(|k| u32::from(k >= ns)).collect()),
        vars,
        defining,
    })
}

/// `ker φ` for `φ: K[T_e] → S`, `T_e ↦ f_e`, by eliminating the ring
/// variables from `(T_e - f_e)`.
pub fn fiber_presentation(ideal: &Ideal, t_names: &[String], cfg: &GbConfig) -> Result<PresentedAlgebra> {
    let (vars, defining) = fiber_kernel(ideal, t_names, cfg)?;
    Ok(PresentedAlgebra { kind: AlgebraKind::Fiber, grading: vec![1; vars.len()], tgrading: None, vars, defining })
}

/// Reduced lex basis of `ker ψ` over any coefficient field, with its ring
/// `K[S-vars, T_e]`.
pub fn rees_kernel<F: Field>(
    ideal: &Ideal<F>,
    t_names: &[String],
    cfg: &GbConfig,
) -> Result<(VariableSet, Vec<Polynomial<F>>)> {
    check_t_names(ideal, t_names)?;
    let d = equigenerated_degree(ideal)?;
    let ns = ideal.nvars();
    let m = t_names.len();
    let names = std::iter::once("t".to_string())
        .chain(ideal.vars.names().iter().cloned())
        .chain(t_names.iter().cloned());
    let vars = VariableSet::new(names)?;
    let shift: Vec<usize> = (1..=ns).collect();
    let t = Monomial::var(0);
    let gens = ideal
        .gens
        .iter()
        .enumerate()
        .map(|(e, f)| Polynomial::var(1 + ns + e).sub(&f.rename(&shift).mul_monomial(&t)))
        .collect();
    // t has weight 0 so that T_e - f_e t is homogeneous
    let weights: Vec<u32> = std::iter::once(0)
        .chain(std::iter::repeat_n(1, ns))
        .chain(std::iter::repeat_n(d, m))
        .collect();
    let keep: Vec<usize> = (1..1 + ns + m).collect();
    let kernel = eliminate(&Ideal::new(vars.clone(), gens), &keep, &cfg.with_weights(weights))?;
    let back: Vec<usize> = (0..1 + ns + m).map(|k| k.saturating_sub(1)).collect();
    Ok((vars.restrict(&keep), kernel.gens.iter().map(|g| g.rename(&back)).collect()))
}

/// Reduced lex basis of `ker φ` over any coefficient field, with its ring `K[T_e]`.
pub fn fiber_kernel<F: Field>(
    ideal: &Ideal<F>,
    t_names: &[String],
    cfg: &GbConfig,
) -> Result<(VariableSet, Vec<Polynomial<F>>)> {
    check_t_names(ideal, t_names)?;
    let d = equigenerated_degree(ideal)?;
    let ns = ideal.nvars();
    let m = t_names.len();
    let vars = VariableSet::new(ideal.vars.names().iter().cloned().chain(t_names.iter().cloned()))?;
    let gens = ideal.gens.iter().enumerate().map(|(e, f)| Polynomial::var(ns + e).sub(f)).collect();
    let weights: Vec<u32> = std::iter::repeat_n(1, ns).chain(std::iter::repeat_n(d, m)).collect();
    let keep: Vec<usize> = (ns..ns + m).collect();
    let kernel = eliminate(&Ideal::new(vars.clone(), gens), &keep, &cfg.with_weights(weights))?;
    let back: Vec<usize> = (0..ns + m).map(|k| k.saturating_sub(ns)).collect();
    Ok((vars.restrict(&keep), kernel.gens.iter().map(|g| g.rename(&back)).collect()))
}

/// `T_e ↦ f_e t` applied to every defining generator of a Rees presentation
/// of `ideal`; all must vanish.
pub fn rees_substitution_vanishes(rees: &PresentedAlgebra, ideal: &Ideal) -> bool {
    let ns = ideal.nvars();
    // images live in K[S-vars, T..., t] with t last
    let t_index = rees.nvars();
    let images: Vec<Polynomial> = (0..rees.nvars())
        .map(|v| if v < ns { Polynomial::var(v) } else { ideal.gens[v - ns].mul_monomial(&Monomial::var(t_index)) })
        .collect();
    rees.defining.iter().all(|g| g.substitute(&images).is_zero())
}

/// `ker ψ` generators with `x, y ↦ 0`, reduced to a lex basis of `K[T]`:
/// the defining ideal of `R(I)/mR(I)`.
pub fn fiber_from_rees(rees: &PresentedAlgebra, ns: usize, cfg: &GbConfig) -> Result<Vec<Polynomial>> {
    let vanish: Vec<bool> = (0..rees.nvars()).map(|v| v < ns).collect();
    let back: Vec<usize> = (0..rees.nvars()).map(|k| k.saturating_sub(ns)).collect();
    let gens: Vec<Polynomial> = rees
        .defining
        .iter()
        .map(|g| g.kill_variables(&vanish))
        .filter(|g| !g.is_zero())
        .map(|g| g.rename(&back))
        .collect();
    Ok(buchberger(&gens, &TermOrder::lex(), rees.nvars() - ns, cfg)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationProfile {
    /// Largest `T`-degree of a minimal generator of `ker ψ`; 0 for a zero kernel.
    pub reltype: u32,
    pub linear_type: bool,
    pub fiber_type: bool,
}

/// Relation type and fiber type from a Rees presentation and the matching
/// fiber presentation. `ns` is the number of ring variables.
pub fn relation_profile_of(
    rees: &PresentedAlgebra,
    fiber: &PresentedAlgebra,
    cfg: &GbConfig,
) -> Result<RelationProfile> {
    let tgrading = rees.tgrading.as_deref().ok_or_else(|| Error::Config("not a Rees presentation".into()))?;
    let ns = tgrading.iter().filter(|&&w| w == 0).count();
    let standard = vec![1; rees.nvars()];
    let minimal = minimal_generators(&rees.defining_ideal(), &standard, Some(tgrading), cfg)?;
    let tdeg = |g: &Polynomial| g.weighted_degree(tgrading).unwrap_or(0);
    let reltype = minimal.iter().map(tdeg).max().unwrap_or(0);

    let lift: Vec<usize> = (0..fiber.nvars()).map(|k| ns + k).collect();
    let mut sym_plus_fiber: Vec<Polynomial> = minimal.iter().filter(|g| tdeg(g) == 1).cloned().collect();
    sym_plus_fiber.extend(fiber.defining.iter().map(|g| g.rename(&lift)));
    let gb = buchberger(&sym_plus_fiber, &TermOrder::lex(), rees.nvars(), cfg)?;
    Ok(RelationProfile { reltype, linear_type: reltype <= 1, fiber_type: gb == rees.defining })
}

/// Everything the oracle computes for one graph under a closed labeling.
#[derive(Clone, Debug)]
pub struct OracleBundle {
    /// The graph in its closed labels.
    pub graph: Graph,
    pub ideal: Ideal,
    pub gb: Vec<Polynomial>,
    pub initial: MonomialIdeal,
    pub rees: PresentedAlgebra,
    pub fiber: PresentedAlgebra,
    pub rees_initial: PresentedAlgebra,
    pub fiber_initial: PresentedAlgebra,
}

impl OracleBundle {
    pub fn new(g: &Graph, l: &Labeling, cfg: &GbConfig) -> Result<Self> {
        let graph = g.relabel(l)?;
        if let Some(cert) = closed_violation(&graph) {
            return Err(Error::NotClosed(cert));
        }
        let ideal = binomial_edge_ideal(&graph);
        let names = edge_t_names(&graph);
        let gb = ideal.groebner_basis(&TermOrder::lex(), cfg)?;
        let initial = initial_ideal(&gb, &TermOrder::lex(), ideal.nvars());
        let in_ideal = Ideal::new(ideal.vars.clone(), monomial_generators(&graph));
        Ok(OracleBundle {
            rees: rees_presentation(&ideal, &names, cfg)?,
            fiber: fiber_presentation(&ideal, &names, cfg)?,
            rees_initial: rees_presentation(&in_ideal, &names, cfg)?,
            fiber_initial: fiber_presentation(&in_ideal, &names, cfg)?,
            graph,
            ideal,
            gb,
            initial,
        })
    }

    pub fn relation_profile(&self, cfg: &GbConfig) -> Result<RelationProfile> {
        relation_profile_of(&self.rees, &self.fiber, cfg)
    }

    /// Hilbert functions of `R`, `F` for `J_G` and `in(J_G)` agree through degree `bound`.
    pub fn sagbi_check(&self, bound: u32) -> Result<bool> {
        let d = bound as usize;
        let r = self.rees.hilbert_data()?.series(d) == self.rees_initial.hilbert_data()?.series(d);
        let f = self.fiber.hilbert_data()?.series(d) == self.fiber_initial.hilbert_data()?.series(d);
        Ok(r && f)
    }

    /// `in(J^s) = in(J)^s` for `s = 1..=s_max`.
    pub fn initial_powers_check(&self, s_max: u32, cfg: &GbConfig) -> Result<bool> {
        powers_match(&self.ideal, &self.initial, s_max, cfg)
    }

    /// Buchberger's initial ideal equals the edge monomials `x_i y_j`.
    pub fn initial_matches_edges(&self) -> bool {
        self.initial == edge_initial_monomials(&self.graph)
    }
}

fn monomial_generators(g: &Graph) -> Vec<Polynomial> {
    let n = g.n();
    g.edges()
        .iter()
        .map(|&(i, j)| Polynomial::monomial(Monomial::var(x_var(i)).mul(&Monomial::var(y_var(n, j)))))
        .collect()
}

pub fn relation_profile(g: &Graph, l: &Labeling, cfg: &GbConfig) -> Result<RelationProfile> {
    let h = g.relabel(l)?;
    if let Some(cert) = closed_violation(&h) {
        return Err(Error::NotClosed(cert));
    }
    let ideal = binomial_edge_ideal(&h);
    let names = edge_t_names(&h);
    relation_profile_of(&rees_presentation(&ideal, &names, cfg)?, &fiber_presentation(&ideal, &names, cfg)?, cfg)
}

pub fn sagbi_check(g: &Graph, l: &Labeling, bound: u32, cfg: &GbConfig) -> Result<bool> {
    if bound < 2 {
        return Err(Error::Config("degree bound must be at least 2".into()));
    }
    OracleBundle::new(g, l, cfg)?.sagbi_check(bound)
}

pub fn initial_powers_check(g: &Graph, l: &Labeling, s_max: u32, cfg: &GbConfig) -> Result<bool> {
    let h = g.relabel(l)?;
    if let Some(cert) = closed_violation(&h) {
        return Err(Error::NotClosed(cert));
    }
    let ideal = binomial_edge_ideal(&h);
    let gb = ideal.groebner_basis(&TermOrder::lex(), cfg)?;
    let initial = initial_ideal(&gb, &TermOrder::lex(), ideal.nvars());
    if initial != edge_initial_monomials(&h) {
        return Ok(false);
    }
    powers_match(&ideal, &initial, s_max, cfg)
}

fn powers_match(ideal: &Ideal, initial: &MonomialIdeal, s_max: u32, cfg: &GbConfig) -> Result<bool> {
    let nv = ideal.nvars();
    // products f_{i1} ... f_{is} with i1 <= ... <= is, tagged with the last index
    let mut layer: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one())];
    for s in 1..=s_max {
        let mut next = Vec::new();
        for (last, p) in &layer {
            for (k, f) in ideal.gens.iter().enumerate().skip(*last) {
                next.push((k, p.mul(f)));
            }
        }
        layer = next;
        let power: Vec<Polynomial> = layer.iter().map(|(_, p)| p.clone()).collect();
        let gb = buchberger(&power, &TermOrder::lex(), nv, cfg)?;
        if initial_ideal(&gb, &TermOrder::lex(), nv) != initial.power(s) {
            return Ok(false);
        }
    }
    Ok(true)
}
