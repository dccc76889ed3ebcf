//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the sugar
//! selection strategy.
//!
//! Polynomials are moved into an engine layout where the requested term order
//! is plain lex, so every comparison is a word compare.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::order::Layout;
use super::{Field, Monomial, PolyError, Polynomial, TermOrder};

/// Resource limits for one Gröbner computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbConfig {
    /// Upper bound on processed pairs plus reduction steps.
    pub step_budget: u64,
    /// Drop pairs above this sugar degree. Only meaningful for ideals that
    /// are homogeneous for `weights`; yields a truncated basis.
    pub degree_cap: Option<u32>,
    /// Per-variable weights (ring layout) for sugar. `None` means total degree.
    pub weights: Option<Vec<u32>>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { step_budget: 200_000_000, degree_cap: None, weights: None }
    }
}

impl GbConfig {
    pub fn with_weights(&self, weights: Vec<u32>) -> Self {
        GbConfig { weights: Some(weights), ..self.clone() }
    }

    pub fn with_degree_cap(&self, cap: u32) -> Self {
        GbConfig { degree_cap: Some(cap), ..self.clone() }
    }
}

type Terms<F> = Vec<(Monomial, F)>;

/// `a - c * m * b`, where the leading terms are known to cancel and have
/// already been stripped from both slices. Trailing terms of `b` may carry
/// larger exponents than its leading term, so the products are checked.
fn sub_mul<F: Field>(a: &[(Monomial, F)], b: &[(Monomial, F)], c: &F, m: &Monomial) -> Result<Terms<F>, PolyError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let mb = b[j].0.checked_mul(m).ok_or(PolyError::ExponentOverflow)?;
        match a[i].0.cmp(&mb) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((mb, c.mul(&b[j].1).neg()));
                j += 1;
            }
            Ordering::Equal => {
                let s = a[i].1.sub(&c.mul(&b[j].1));
                if !s.is_zero() {
                    out.push((mb, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.checked_mul(m).ok_or(PolyError::ExponentOverflow)?, c.mul(&t.1).neg()));
    }
    Ok(out)
}

fn make_monic<F: Field>(terms: &mut Terms<F>) {
    if let Some((_, lc)) = terms.first() {
        if !lc.is_one() {
            let inv = lc.inv();
            for t in terms.iter_mut() {
                t.1 = t.1.mul(&inv);
            }
        }
    }
}

fn sort_terms<F: Field>(mut terms: Terms<F>) -> Terms<F> {
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    terms
}

/// Fully reduces `p` by `reducers`, taking the first reducer (by index) whose
/// leading monomial divides the current term.
fn reduce_terms<F: Field>(
    mut cur: Terms<F>,
    reducers: &[&[(Monomial, F)]],
    steps: &mut u64,
    budget: u64,
) -> Result<Terms<F>, PolyError> {
    let mut rem = Vec::new();
    let mut pos = 0;
    while pos < cur.len() {
        let m = cur[pos].0;
        match reducers.iter().find(|g| g[0].0.divides(&m)) {
            Some(g) => {
                *steps += 1;
                if *steps > budget {
                    return Err(PolyError::BudgetExhausted { budget });
                }
                let q = m.div(&g[0].0);
                let c = cur[pos].1.div(&g[0].1);
                cur = sub_mul(&cur[pos + 1..], &g[1..], &c, &q)?;
                pos = 0;
            }
            None => {
                rem.push(cur[pos].clone());
                pos += 1;
            }
        }
    }
    Ok(rem)
}

/// Normal form of `f` with respect to `basis` under `ord`.
///
/// The result has no term divisible by a leading term of `basis`, and
/// `f - result` lies in the ideal generated by `basis`. Panics if an
/// intermediate exponent exceeds [`MAX_EXPONENT`](super::MAX_EXPONENT).
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    ord: &TermOrder,
    nvars: usize,
) -> Polynomial<F> {
    let layout = Layout::new(ord, nvars);
    let engine_basis: Vec<Terms<F>> =
        basis.iter().filter(|b| !b.is_zero()).map(|b| to_engine(b, &layout)).collect();
    let reducers: Vec<&[(Monomial, F)]> = engine_basis.iter().map(|b| b.as_slice()).collect();
    let mut steps = 0;
    let rem = reduce_terms(to_engine(f, &layout), &reducers, &mut steps, u64::MAX)
        .expect("monomial exponent overflow");
    from_engine(rem, &layout)
}

fn to_engine<F: Field>(p: &Polynomial<F>, layout: &Layout) -> Terms<F> {
    sort_terms(p.terms().iter().map(|(m, c)| (layout.to_engine(m), c.clone())).collect())
}

fn from_engine<F: Field>(terms: Terms<F>, layout: &Layout) -> Polynomial<F> {
    Polynomial::from_terms(terms.into_iter().map(|(m, c)| (layout.to_ring(&m), c)).collect())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: u32,
    j: u32,
}

struct Entry<F> {
    terms: Terms<F>,
    sugar: u32,
}

/// Counters from one run, for logging and budget tuning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: u64,
    pub pairs_skipped_by_cap: u64,
    pub reductions_to_zero: u64,
    pub steps: u64,
    pub basis_size: usize,
}

struct Engine<F: Field> {
    polys: Vec<Entry<F>>,
    active: Vec<bool>,
    pairs: BinaryHeap<Reverse<Pair>>,
    weights: Vec<u32>,
    stats: GbStats,
    budget: u64,
}

impl<F: Field> Engine<F> {
    fn weighted(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    fn sugar_of(&self, terms: &Terms<F>) -> u32 {
        terms.iter().map(|(m, _)| self.weighted(m)).max().unwrap_or(0)
    }

    fn reduce(&mut self, terms: Terms<F>) -> Result<Terms<F>, PolyError> {
        let reducers: Vec<&[(Monomial, F)]> = self.polys.iter().map(|e| e.terms.as_slice()).collect();
        reduce_terms(terms, &reducers, &mut self.stats.steps, self.budget)
    }

    fn lm(&self, i: usize) -> Monomial {
        self.polys[i].terms[0].0
    }

    /// Gebauer–Möller update for the newly inserted polynomial `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h);
        let mut cand: Vec<(Monomial, usize, bool)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.lm(g);
                (lg.lcm(&lm_h), g, lg.is_coprime(&lm_h))
            })
            .collect();

        let mut kept: Vec<(Monomial, usize, bool)> = Vec::new();
        while let Some(p) = cand.pop() {
            let (l, _, coprime) = p;
            let dominated = cand.iter().any(|q| q.0.divides(&l)) || kept.iter().any(|q| q.0.divides(&l));
            if coprime || !dominated {
                kept.push(p);
            }
        }

        let old = std::mem::take(&mut self.pairs).into_vec();
        let polys = &self.polys;
        let lm = |i: u32| polys[i as usize].terms[0].0;
        let filtered: Vec<Reverse<Pair>> = old
            .into_iter()
            .filter(|Reverse(p)| {
                !(lm_h.divides(&p.lcm) && lm(p.i).lcm(&lm_h) != p.lcm && lm(p.j).lcm(&lm_h) != p.lcm)
            })
            .collect();
        self.pairs = BinaryHeap::from(filtered);

        let sugar_h = self.polys[h].sugar;
        let wh = self.weighted(&lm_h);
        for (l, g, coprime) in kept {
            if coprime {
                continue;
            }
            let wl = self.weighted(&l);
            let sg = self.polys[g].sugar + wl - self.weighted(&self.lm(g));
            let sh = sugar_h + wl - wh;
            self.pairs.push(Reverse(Pair { sugar: sg.max(sh), lcm: l, i: g as u32, j: h as u32 }));
        }

        for g in 0..h {
            if self.active[g] && lm_h.divides(&self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn insert(&mut self, mut terms: Terms<F>, sugar: u32) {
        make_monic(&mut terms);
        self.polys.push(Entry { terms, sugar });
        self.active.push(true);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn s_poly(&self, p: &Pair) -> Result<Terms<F>, PolyError> {
        let a = &self.polys[p.i as usize].terms;
        let b = &self.polys[p.j as usize].terms;
        let qa = p.lcm.div(&a[0].0);
        let qb = p.lcm.div(&b[0].0);
        // both monic: S = qa*a - qb*b
        let a_tail: Terms<F> = a[1..]
            .iter()
            .map(|(m, c)| m.checked_mul(&qa).map(|mm| (mm, c.clone())).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<_, _>>()?;
        for (m, _) in &b[1..] {
            m.checked_mul(&qb).ok_or(PolyError::ExponentOverflow)?;
        }
        sub_mul(&a_tail, &b[1..], &F::one(), &qb)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// Output is monic, inter-reduced, and sorted by leading monomial descending.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    ord: &TermOrder,
    nvars: usize,
    cfg: &GbConfig,
) -> Result<Vec<Polynomial<F>>, PolyError> {
    buchberger_with_stats(gens, ord, nvars, cfg).map(|(gb, _)| gb)
}

pub fn buchberger_with_stats<F: Field>(
    gens: &[Polynomial<F>],
    ord: &TermOrder,
    nvars: usize,
    cfg: &GbConfig,
) -> Result<(Vec<Polynomial<F>>, GbStats), PolyError> {
    let layout = Layout::new(ord, nvars);
    let weights = match &cfg.weights {
        Some(w) => {
            assert_eq!(w.len(), nvars, "weight vector length");
            layout.weights_to_engine(w)
        }
        None => vec![1; nvars],
    };
    let mut eng = Engine::<F> {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BinaryHeap::new(),
        weights,
        stats: GbStats::default(),
        budget: cfg.step_budget,
    };

    let mut inputs: Vec<Terms<F>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| to_engine(g, &layout)).collect();
    inputs.sort_by(|a, b| (eng.sugar_of(a), a[0].0).cmp(&(eng.sugar_of(b), b[0].0)));
    for g in inputs {
        let sugar = eng.sugar_of(&g);
        let r = eng.reduce(g)?;
        if !r.is_empty() {
            eng.insert(r, sugar);
        }
    }

    while let Some(Reverse(pair)) = eng.pairs.pop() {
        if let Some(cap) = cfg.degree_cap {
            if pair.sugar > cap {
                eng.stats.pairs_skipped_by_cap += 1;
                continue;
            }
        }
        eng.stats.pairs_processed += 1;
        eng.stats.steps += 1;
        if eng.stats.steps > eng.budget {
            return Err(PolyError::BudgetExhausted { budget: eng.budget });
        }
        let s = eng.s_poly(&pair)?;
        let r = eng.reduce(s)?;
        if r.is_empty() {
            eng.stats.reductions_to_zero += 1;
        } else {
            eng.insert(r, pair.sugar);
        }
    }

    // the active set is a minimal basis; inter-reduce tails against it
    let minimal: Vec<usize> = (0..eng.polys.len()).filter(|&i| eng.active[i]).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for &i in &minimal {
        let others: Vec<&[(Monomial, F)]> =
            minimal.iter().filter(|&&j| j != i).map(|&j| eng.polys[j].terms.as_slice()).collect();
        let p = &eng.polys[i].terms;
        let tail = reduce_terms(p[1..].to_vec(), &others, &mut eng.stats.steps, u64::MAX)?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(p[0].clone());
        terms.extend(tail);
        reduced.push(terms);
    }
    reduced.sort_by(|a, b| b[0].0.cmp(&a[0].0));
    eng.stats.basis_size = reduced.len();
    let out = reduced.into_iter().map(|t| from_engine(t, &layout)).collect();
    Ok((out, eng.stats))
}

/// S-polynomial of `f` and `g` under `ord`.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, ord: &TermOrder, nvars: usize) -> Polynomial<F> {
    let (mf, cf) = f.leading_term(ord, nvars).expect("nonzero").clone();
    let (mg, cg) = g.leading_term(ord, nvars).expect("nonzero").clone();
    let l = mf.lcm(&mg);
    let a = Polynomial::term(l.div(&mf), cf.inv()).mul(f);
    let b = Polynomial::term(l.div(&mg), cg.inv()).mul(g);
    a.sub(&b)
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(basis: &[Polynomial<F>], ord: &TermOrder, nvars: usize) -> bool {
    let basis: Vec<Polynomial<F>> = basis.iter().filter(|b| !b.is_zero()).cloned().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], ord, nvars);
            if !normal_form(&s, &basis, ord, nvars).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Rational, ScreeningField, VariableSet};
    use proptest::prelude::*;

    fn ring() -> VariableSet {
        VariableSet::new(["x1", "x2", "x3", "y1", "y2", "y3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn normal_form_self_reduction() {
        let f = p("x1*y2 - x2*y1");
        assert!(normal_form(&f, std::slice::from_ref(&f), &TermOrder::lex(), 6).is_zero());
    }

    #[test]
    fn normal_form_single_step() {
        let f = p("x1*y2");
        let g = p("x1*y2 - x2*y1");
        assert_eq!(normal_form(&f, &[g], &TermOrder::lex(), 6), p("x2*y1"));
    }

    #[test]
    fn normal_form_of_irreducible_cubic() {
        let f = p("x1*x3*y2 - x2*x3*y1");
        let b = [p("x1*y3 - x3*y1"), p("x2*y3 - x3*y2")];
        assert_eq!(normal_form(&f, &b, &TermOrder::lex(), 6), f);
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let f = p("x1*y2 - x2*y1");
        let gb = buchberger(std::slice::from_ref(&f), &TermOrder::lex(), 6, &GbConfig::default()).unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn path_generators_are_already_a_basis() {
        let gens = [p("x1*y2 - x2*y1"), p("x2*y3 - x3*y2")];
        let gb = buchberger(&gens, &TermOrder::lex(), 6, &GbConfig::default()).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gens.iter().all(|g| gb.contains(g)));
    }

    #[test]
    fn non_closed_path_gains_a_cubic() {
        // the S-pair of the two generators leaves x1*x3*y2 - x2*x3*y1 behind
        let gens = [p("x1*y3 - x3*y1"), p("x2*y3 - x3*y2")];
        let gb = buchberger(&gens, &TermOrder::lex(), 6, &GbConfig::default()).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(gb.contains(&p("x1*x3*y2 - x2*x3*y1")));
        assert!(is_groebner_basis(&gb, &TermOrder::lex(), 6));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let gens = [p("x1*y3 - x3*y1"), p("x2*y3 - x3*y2"), p("x1*y2 - x2*y1 + x3^2")];
        let cfg = GbConfig { step_budget: 2, ..GbConfig::default() };
        assert!(matches!(
            buchberger(&gens, &TermOrder::lex(), 6, &cfg),
            Err(PolyError::BudgetExhausted { .. })
        ));
    }

    const PROPTEST_BUDGET: u64 = 20_000;

    fn small_poly_over<F: Field>() -> impl Strategy<Value = Polynomial<F>> {
        prop::collection::vec((prop::collection::vec(0u32..3, 6), -3i64..4), 1..4).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), F::from_i64(c))).collect(),
            )
        })
    }

    fn small_poly() -> impl Strategy<Value = Polynomial<Rational>> {
        small_poly_over()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_is_additive_modulo_the_ideal(f in small_poly(), g in small_poly(), b in prop::collection::vec(small_poly(), 1..3)) {
            let ord = TermOrder::lex();
            let gb = buchberger(&b, &ord, 6, &GbConfig { step_budget: PROPTEST_BUDGET, ..GbConfig::default() });
            prop_assume!(gb.is_ok());
            let gb = gb.unwrap();
            let lhs = normal_form(&f.add(&g), &gb, &ord, 6);
            let rhs = normal_form(&f, &gb, &ord, 6).add(&normal_form(&g, &gb, &ord, 6));
            prop_assert!(normal_form(&lhs.sub(&rhs), &gb, &ord, 6).is_zero());
        }

        #[test]
        // over F_p: random rational inputs can blow up coefficients inside the budget
        fn reduced_basis_is_unique_and_satisfies_criterion(b in prop::collection::vec(small_poly_over::<ScreeningField>(), 1..4)) {
            let ord = TermOrder::Lex { precedence: vec![3, 0, 4, 1, 5, 2] };
            // random inhomogeneous lex bases can explode; skip those inputs
            let cfg = GbConfig { step_budget: PROPTEST_BUDGET, ..GbConfig::default() };
            let gb = buchberger(&b, &ord, 6, &cfg);
            prop_assume!(gb.is_ok());
            let gb = gb.unwrap();
            prop_assert!(is_groebner_basis(&gb, &ord, 6));
            let mut rev = b.clone();
            rev.reverse();
            let again = buchberger(&rev, &ord, 6, &cfg);
            prop_assume!(again.is_ok());
            prop_assert_eq!(again.unwrap(), gb.clone());
            for g in &b {
                prop_assert!(normal_form(g, &gb, &ord, 6).is_zero());
            }
        }
    }
}
