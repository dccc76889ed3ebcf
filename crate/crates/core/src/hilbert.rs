//! Hilbert series, Krull dimension and h-polynomials of standard graded
//! quotients `K[v_1..v_N]/I`, read off a monomial initial ideal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{initial_ideal, Field, GbConfig, Ideal, Monomial, MonomialIdeal, TermOrder};
use crate::rees::PresentedAlgebra;

/// Largest degree accepted by the enumeration oracle.
pub const BRUTE_FORCE_DEGREE_CAP: u32 = 10;

/// `HS(λ) = numerator / (1-λ)^N = hpoly / (1-λ)^dim`. Polynomials are
/// coefficient arrays, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub ambient_vars: usize,
    pub dim: usize,
    pub hpoly: Vec<i64>,
}

impl HilbertData {
    pub fn from_monomial_ideal(m: &MonomialIdeal) -> Result<Self> {
        let numerator = hilbert_numerator(m);
        let dim = krull_dim_monomial(m);
        let hpoly = h_polynomial(&numerator, m.nvars, dim)?;
        Ok(HilbertData { numerator, ambient_vars: m.nvars, dim, hpoly })
    }

    pub fn h_degree(&self) -> usize {
        self.hpoly.len().saturating_sub(1)
    }

    /// `hpoly(1)`, the multiplicity.
    pub fn multiplicity(&self) -> i64 {
        self.hpoly.iter().sum()
    }

    /// Hilbert function values in degrees `0..=max_degree`.
    pub fn series(&self, max_degree: usize) -> Vec<i64> {
        let mut s = vec![0i64; max_degree + 1];
        for (k, &c) in self.hpoly.iter().enumerate().take(max_degree + 1) {
            s[k] = c;
        }
        for _ in 0..self.dim {
            for k in 1..s.len() {
                s[k] += s[k - 1];
            }
        }
        s
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + shift] += c;
    }
}

/// Multiplies by `1 - λ^d`.
fn times_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = p.to_vec();
    out.resize(p.len() + d, 0);
    for (k, &c) in p.iter().enumerate() {
        out[k + d] -= c;
    }
    out
}

/// K-polynomial of `S/M` over `S = K[v_1..v_N]` (the numerator of the
/// Hilbert series over `(1-λ)^N`), by recursion on a pivot variable.
pub fn hilbert_numerator(m: &MonomialIdeal) -> Vec<i64> {
    trim(numerator_rec(m.gens().to_vec(), m.nvars))
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    // pairwise coprime generators: product of (1 - λ^deg)
    let mut acc = Monomial::ONE;
    let mut coprime = true;
    for g in &gens {
        if !acc.is_coprime(g) {
            coprime = false;
            break;
        }
        acc = acc.lcm(g);
    }
    if coprime {
        return gens.iter().fold(vec![1], |p, g| times_one_minus(&p, g.degree() as usize));
    }

    let mut counts = vec![0u32; nvars];
    for g in &gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let pivot = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    let xv = Monomial::var(pivot);

    // M + (x_v) = M' + (x_v) with x_v coprime to M' = gens free of x_v
    let without: Vec<Monomial> = gens.iter().filter(|g| g.exponent(pivot) == 0).copied().collect();
    let sum_part = times_one_minus(&numerator_rec(without, nvars), 1);

    let quotient: Vec<Monomial> =
        gens.iter().map(|g| if g.exponent(pivot) > 0 { g.div(&xv) } else { *g }).collect();
    let quotient = crate::poly::minimalize_monomials(quotient);
    let mut out = sum_part;
    add_shifted(&mut out, &numerator_rec(quotient, nvars), 1);
    out
}

/// `N` minus the size of a minimum set of variables meeting every generator's
/// support, found by branch and bound.
pub fn krull_dim_monomial(m: &MonomialIdeal) -> usize {
    if m.gens().iter().any(|g| g.is_one()) {
        return 0;
    }
    let supports: Vec<u64> = m
        .gens()
        .iter()
        .map(|g| g.support().iter().fold(0u64, |s, &v| s | 1 << v))
        .collect();
    let mut best = m.nvars;
    min_cover(&supports, 0, &mut best);
    m.nvars - best
}

fn min_cover(supports: &[u64], chosen: usize, best: &mut usize) {
    if supports.is_empty() {
        *best = (*best).min(chosen);
        return;
    }
    // disjoint supports each need their own variable
    let mut used = 0u64;
    let mut packing = 0;
    let mut sorted: Vec<u64> = supports.to_vec();
    sorted.sort_by_key(|s| s.count_ones());
    for &s in &sorted {
        if s & used == 0 {
            used |= s;
            packing += 1;
        }
    }
    if chosen + packing >= *best {
        return;
    }
    let smallest = sorted[0];
    let mut bits = smallest;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        let rest: Vec<u64> = supports.iter().copied().filter(|s| s >> v & 1 == 0).collect();
        min_cover(&rest, chosen + 1, best);
    }
}

/// Divides a K-polynomial by `(1-λ)^(N-d)`. A non-zero remainder means the
/// dimension was wrong.
pub fn h_polynomial(numerator: &[i64], nvars: usize, dim: usize) -> Result<Vec<i64>> {
    if dim > nvars {
        return Err(Error::Invariant(format!("dimension {dim} exceeds {nvars} variables")));
    }
    let mut q = numerator.to_vec();
    for step in 0..nvars - dim {
        let rem: i64 = q.iter().sum();
        if rem != 0 {
            return Err(Error::Invariant(format!(
                "(1-λ)^{} does not divide the Hilbert numerator (failed at power {})",
                nvars - dim,
                step + 1
            )));
        }
        for k in 1..q.len() {
            q[k] += q[k - 1];
        }
        q.pop();
        if q.is_empty() {
            q.push(0);
        }
    }
    Ok(trim(q))
}

/// Standard monomials (outside `m`) counted by degree, `0..=max_degree`,
/// by direct enumeration.
pub fn standard_monomial_counts(m: &MonomialIdeal, max_degree: u32) -> Result<Vec<u64>> {
    if max_degree > BRUTE_FORCE_DEGREE_CAP {
        return Err(Error::ScaleExceeded {
            what: "degree for standard-monomial enumeration",
            limit: BRUTE_FORCE_DEGREE_CAP as usize,
            actual: max_degree as usize,
        });
    }
    let mut counts = vec![0u64; max_degree as usize + 1];
    if !m.contains(&Monomial::ONE) {
        enumerate(m, Monomial::ONE, 0, 0, max_degree, &mut counts);
    }
    Ok(counts)
}

fn enumerate(m: &MonomialIdeal, mono: Monomial, deg: u32, from: usize, max: u32, counts: &mut [u64]) {
    counts[deg as usize] += 1;
    if deg == max {
        return;
    }
    for v in from..m.nvars {
        let next = mono.mul(&Monomial::var(v));
        // multiples of ideal members stay in the ideal
        if !m.contains(&next) {
            enumerate(m, next, deg + 1, v, max, counts);
        }
    }
}

/// Dimension of `(S/I)_d`: Gröbner basis, initial ideal, then enumeration.
pub fn hilbert_function_bruteforce<F: Field>(
    ideal: &Ideal<F>,
    ord: &TermOrder,
    degree: u32,
    cfg: &GbConfig,
) -> Result<u64> {
    let gb = ideal.groebner_basis(ord, cfg)?;
    let ini = initial_ideal(&gb, ord, ideal.nvars());
    Ok(standard_monomial_counts(&ini, degree)?[degree as usize])
}

/// Why `deg h` may be read as a regularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmAssumption {
    /// Cohen–Macaulayness granted by a cited theorem.
    Cited(String),
    /// Nothing known; the value is only an h-degree.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityValue {
    pub value: usize,
    /// `"regularity"` under a cited CM theorem, `"h-degree"` otherwise.
    pub label: String,
    pub cm_source: Option<String>,
    pub hilbert: HilbertData,
}

/// `deg h` of a presented algebra, via its initial ideal.
pub fn regularity_from_presentation(a: &PresentedAlgebra, assume_cm: CmAssumption) -> Result<RegularityValue> {
    let hilbert = a.hilbert_data()?;
    let (label, cm_source) = match assume_cm {
        CmAssumption::Cited(src) => ("regularity", Some(src)),
        CmAssumption::None => ("h-degree", None),
    };
    Ok(RegularityValue { value: hilbert.h_degree(), label: label.into(), cm_source, hilbert })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn p3_initial() -> MonomialIdeal {
        // x1 x2 x3 y1 y2 y3: x1*y2, x2*y3
        MonomialIdeal::new(6, [mono(&[1, 0, 0, 0, 1, 0]), mono(&[0, 1, 0, 0, 0, 1])])
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(hilbert_numerator(&MonomialIdeal::new(2, [mono(&[1, 1])])), vec![1, 0, -1]);
        assert_eq!(hilbert_numerator(&p3_initial()), vec![1, 0, -2, 0, 1]);
        assert_eq!(hilbert_numerator(&MonomialIdeal::new(3, [])), vec![1]);
    }

    #[test]
    fn numerator_with_shared_variables() {
        // (x^2, xy) in K[x,y]: HS = (1 - 2λ^2 + λ^3)/(1-λ)^2
        let m = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1])]);
        assert_eq!(hilbert_numerator(&m), vec![1, 0, -2, 1]);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(krull_dim_monomial(&MonomialIdeal::new(2, [mono(&[1, 1])])), 1);
        let plucker_lead = MonomialIdeal::new(6, [mono(&[1, 0, 0, 0, 0, 1])]);
        assert_eq!(krull_dim_monomial(&plucker_lead), 5);
        assert_eq!(krull_dim_monomial(&MonomialIdeal::new(4, [])), 4);
        assert_eq!(krull_dim_monomial(&p3_initial()), 4);
    }

    #[test]
    fn h_polynomial_examples() {
        assert_eq!(h_polynomial(&[1, 0, -1], 2, 1).unwrap(), vec![1, 1]);
        assert_eq!(h_polynomial(&[1], 3, 3).unwrap(), vec![1]);
        assert!(matches!(h_polynomial(&[1, 0, -1], 2, 0), Err(Error::Invariant(_))));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(standard_monomial_counts(&MonomialIdeal::new(2, [mono(&[1, 1])]), 2).unwrap()[2], 2);
        let c = standard_monomial_counts(&p3_initial(), 2).unwrap();
        assert_eq!((c[1], c[2]), (6, 19));
        assert!(standard_monomial_counts(&p3_initial(), BRUTE_FORCE_DEGREE_CAP + 1).is_err());
    }

    #[test]
    fn series_matches_enumeration() {
        let ideals = [
            p3_initial(),
            MonomialIdeal::new(3, [mono(&[2, 1, 0]), mono(&[0, 2, 2]), mono(&[1, 0, 3]), mono(&[1, 1, 1])]),
            MonomialIdeal::new(4, [mono(&[1, 1, 0, 0]), mono(&[0, 1, 1, 0]), mono(&[0, 0, 1, 1]), mono(&[1, 0, 0, 1])]),
        ];
        for m in ideals {
            let h = HilbertData::from_monomial_ideal(&m).unwrap();
            let brute: Vec<i64> = standard_monomial_counts(&m, 6).unwrap().into_iter().map(|c| c as i64).collect();
            assert_eq!(h.series(6), brute, "{m:?}");
            assert!(h.multiplicity() > 0);
        }
    }

    #[test]
    fn hilbert_data_json_is_integer_arrays() {
        let h = HilbertData::from_monomial_ideal(&MonomialIdeal::new(2, [mono(&[1, 1])])).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"numerator":[1,0,-1],"ambient_vars":2,"dim":1,"hpoly":[1,1]}"#);
    }
}
