use std::collections::BTreeMap;

use super::groebner::{buchberger, normal_form, GbConfig};
use super::{Field, Monomial, PolyError, Polynomial, Rational, TermOrder, VariableSet};

/// Generators over a named variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<F: Field = Rational> {
    pub vars: VariableSet,
    pub gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(vars: VariableSet, gens: Vec<Polynomial<F>>) -> Self {
        Ideal { vars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner_basis(&self, ord: &TermOrder, cfg: &GbConfig) -> Result<Vec<Polynomial<F>>, PolyError> {
        buchberger(&self.gens, ord, self.nvars(), cfg)
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous(weights))
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.display(&self.vars).to_string()).collect()
    }
}

/// A monomial ideal kept in minimal form: no generator divides another,
/// generators sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    pub nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal { nvars, gens: minimalize(gens.into_iter().collect()) }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self^s`, minimalized.
    pub fn power(&self, s: u32) -> MonomialIdeal {
        let mut acc = vec![Monomial::ONE];
        for _ in 0..s {
            let mut next = Vec::with_capacity(acc.len() * self.gens.len());
            for a in &acc {
                for g in &self.gens {
                    next.push(a.mul(g));
                }
            }
            acc = minimalize(next);
        }
        MonomialIdeal::new(self.nvars, acc)
    }

    pub fn to_ideal(&self, vars: VariableSet) -> Ideal<Rational> {
        Ideal::new(vars, self.gens.iter().map(|m| Polynomial::monomial(*m)).collect())
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|m| m.degree()).max().unwrap_or(0)
    }
}

pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Leading-term ideal of a Gröbner basis, minimalized.
pub fn initial_ideal<F: Field>(gb: &[Polynomial<F>], ord: &TermOrder, nvars: usize) -> MonomialIdeal {
    MonomialIdeal::new(nvars, gb.iter().filter_map(|g| g.leading_monomial(ord, nvars)))
}

/// `I ∩ K[keep]` via a block-lex Gröbner basis with the discarded variables
/// on top. The result lives in the same variable set; its generators form a
/// reduced Gröbner basis for lex restricted to `keep`.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, keep: &[usize], cfg: &GbConfig) -> Result<Ideal<F>, PolyError> {
    let n = ideal.nvars();
    let mut kept = vec![false; n];
    for &k in keep {
        kept[k] = true;
    }
    let ord = TermOrder::elimination((0..n).filter(|&v| !kept[v]));
    let gb = ideal.groebner_basis(&ord, cfg)?;
    let gens = gb.into_iter().filter(|g| g.uses_only(&kept)).collect();
    Ok(Ideal::new(ideal.vars.clone(), gens))
}

/// A minimal homogeneous generating set, built degree by degree: an element
/// of degree `d` is kept iff it is independent of the kept lower-degree part
/// modulo `(lower part) · ambient`.
///
/// `grading` must be a positive grading for which the ideal is homogeneous.
/// When `secondary` is given the ideal must also be homogeneous for it, and
/// independence is tested per bidegree. Returned generators are sorted by
/// degree.
pub fn minimal_generators<F: Field>(
    ideal: &Ideal<F>,
    grading: &[u32],
    secondary: Option<&[u32]>,
    cfg: &GbConfig,
) -> Result<Vec<Polynomial<F>>, PolyError> {
    let n = ideal.nvars();
    if grading.contains(&0) {
        return Err(PolyError::NonPositiveGrading);
    }
    if !ideal.is_homogeneous(grading) || secondary.is_some_and(|s| !ideal.is_homogeneous(s)) {
        return Err(PolyError::NonHomogeneous);
    }
    let ord = TermOrder::lex();
    let weighted = cfg.with_weights(grading.to_vec());
    let gb = buchberger(&ideal.gens, &ord, n, &weighted)?;

    let mut by_degree: BTreeMap<(u32, u32), Vec<Polynomial<F>>> = BTreeMap::new();
    for g in gb {
        let d = g.weighted_degree(grading).unwrap_or(0);
        let e = secondary.map_or(0, |s| g.weighted_degree(s).unwrap_or(0));
        by_degree.entry((d, e)).or_default().push(g);
    }

    let mut accepted: Vec<Polynomial<F>> = Vec::new();
    let mut lower_gb: Vec<Polynomial<F>> = Vec::new();
    let mut lower_degree = None;
    for ((d, _), cands) in by_degree {
        if lower_degree != Some(d) {
            lower_gb = if accepted.is_empty() {
                Vec::new()
            } else {
                buchberger(&accepted, &ord, n, &weighted.with_degree_cap(d))?
            };
            lower_degree = Some(d);
        }
        let reduced: Vec<Polynomial<F>> = cands.iter().map(|c| normal_form(c, &lower_gb, &ord, n)).collect();
        for k in independent_subset(&reduced, &ord, n) {
            accepted.push(cands[k].clone());
        }
    }
    Ok(accepted)
}

/// Degrees (under `grading`) of a minimal generating set computed with
/// respect to total degree. The ideal must be homogeneous for both.
pub fn minimal_generator_degrees<F: Field>(
    ideal: &Ideal<F>,
    grading: &[u32],
    cfg: &GbConfig,
) -> Result<Vec<u32>, PolyError> {
    let standard = vec![1; ideal.nvars()];
    let positive = grading.iter().all(|&w| w > 0);
    let gens = if positive {
        minimal_generators(ideal, grading, None, cfg)?
    } else {
        minimal_generators(ideal, &standard, Some(grading), cfg)?
    };
    let mut degs: Vec<u32> = gens.iter().map(|g| g.weighted_degree(grading).unwrap_or(0)).collect();
    degs.sort_unstable();
    Ok(degs)
}

/// Indices of a maximal linearly independent subfamily, scanning in order.
fn independent_subset<F: Field>(polys: &[Polynomial<F>], ord: &TermOrder, nvars: usize) -> Vec<usize> {
    // echelon rows keyed by pivot monomial
    let mut rows: Vec<Polynomial<F>> = Vec::new();
    let mut picked = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let mut r = p.clone();
        loop {
            let Some((lm, lc)) = r.leading_term(ord, nvars).cloned() else { break };
            match rows.iter().find(|row| row.leading_monomial(ord, nvars) == Some(lm)) {
                Some(row) => {
                    let rc = row.leading_term(ord, nvars).unwrap().1.clone();
                    r = r.merge(row, &lc.div(&rc).neg(), &Monomial::ONE);
                }
                None => break,
            }
        }
        if !r.is_zero() {
            rows.push(r);
            picked.push(k);
        }
    }
    picked
}
