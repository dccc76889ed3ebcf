//! Term orders.
//!
//! Every order used here is lexicographic for some precedence of the
//! variables: block-lex elimination orders list the eliminated block first,
//! and the Rees order compares the `t`-degree before falling back to its base
//! order. [`TermOrder::precedence`] computes that list, and the Gröbner engine
//! stores monomials permuted by it so comparisons become word compares.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TermOrder {
    /// Lexicographic; `precedence[0]` is the largest variable. Variables not
    /// listed follow in index order.
    Lex { precedence: Vec<usize> },
    /// Block-lex with the `eliminate` block above the rest, lex in index
    /// order inside each block.
    Elimination { eliminate: Vec<usize> },
    /// `u t^i < v t^j` iff `i < j`, or `i = j` and `u < v` under `base`.
    ReesTau { t: usize, base: Box<TermOrder> },
}

impl TermOrder {
    /// Lex with variable 0 largest.
    pub fn lex() -> Self {
        TermOrder::Lex { precedence: Vec::new() }
    }

    pub fn elimination(eliminate: impl IntoIterator<Item = usize>) -> Self {
        TermOrder::Elimination { eliminate: eliminate.into_iter().collect() }
    }

    pub fn rees_tau(t: usize, base: TermOrder) -> Self {
        TermOrder::ReesTau { t, base: Box::new(base) }
    }

    /// Variables from largest to smallest; always a permutation of `0..nvars`.
    pub fn precedence(&self, nvars: usize) -> Vec<usize> {
        let head: Vec<usize> = match self {
            TermOrder::Lex { precedence } => precedence.clone(),
            TermOrder::Elimination { eliminate } => {
                let mut e = eliminate.clone();
                e.sort_unstable();
                e
            }
            TermOrder::ReesTau { t, base } => {
                let mut p = vec![*t];
                p.extend(base.precedence(nvars).into_iter().filter(|v| v != t));
                p
            }
        };
        let mut seen = vec![false; nvars];
        let mut out = Vec::with_capacity(nvars);
        for v in head {
            assert!(v < nvars, "variable {v} outside ring of {nvars} variables");
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
        out.extend((0..nvars).filter(|&v| !seen[v]));
        out
    }

    /// Reference comparison on unpacked exponents; the engine uses the
    /// permuted word compare instead.
    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        for v in self.precedence(nvars) {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

/// A precomputed precedence; converts between ring layout and the engine's
/// lex layout.
#[derive(Clone, Debug)]
pub struct Layout {
    perm: Vec<usize>,
    identity: bool,
}

impl Layout {
    pub fn new(order: &TermOrder, nvars: usize) -> Self {
        let perm = order.precedence(nvars);
        let identity = perm.iter().enumerate().all(|(i, &v)| i == v);
        Layout { perm, identity }
    }

    #[inline]
    pub fn to_engine(&self, m: &Monomial) -> Monomial {
        if self.identity {
            *m
        } else {
            m.permute(&self.perm)
        }
    }

    #[inline]
    pub fn to_ring(&self, m: &Monomial) -> Monomial {
        if self.identity {
            *m
        } else {
            m.unpermute(&self.perm)
        }
    }

    /// Engine-layout weights for ring-layout weights.
    pub fn weights_to_engine(&self, w: &[u32]) -> Vec<u32> {
        self.perm.iter().map(|&v| w[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn elimination_block_dominates() {
        // vars: a b c, eliminate c
        let ord = TermOrder::elimination([2]);
        assert_eq!(ord.compare(&mono(&[0, 0, 1]), &mono(&[5, 5, 0]), 3), Ordering::Greater);
        assert_eq!(ord.compare(&mono(&[1, 0, 1]), &mono(&[0, 5, 1]), 3), Ordering::Greater);
    }

    #[test]
    fn rees_tau_compares_t_first() {
        // vars: x0 x1 t
        let ord = TermOrder::rees_tau(2, TermOrder::lex());
        assert_eq!(ord.precedence(3), vec![2, 0, 1]);
        assert_eq!(ord.compare(&mono(&[9, 9, 0]), &mono(&[0, 0, 1]), 3), Ordering::Less);
    }

    fn triple() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>)> {
        let v = || prop::collection::vec(0u32..4, 5);
        (v(), v(), v())
    }

    fn orders() -> Vec<TermOrder> {
        vec![
            TermOrder::lex(),
            TermOrder::Lex { precedence: vec![3, 1, 4, 0, 2] },
            TermOrder::elimination([1, 3]),
            TermOrder::rees_tau(4, TermOrder::lex()),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_and_well_founded((a, b, c) in triple()) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            for ord in orders() {
                let ab = ord.compare(&a, &b, 5);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ab, ord.compare(&b, &a, 5).reverse());
                prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c), 5), ab);
                prop_assert_ne!(ord.compare(&Monomial::ONE, &a, 5), Ordering::Greater);
                // engine layout agrees with the reference compare
                let lay = Layout::new(&ord, 5);
                prop_assert_eq!(lay.to_engine(&a).cmp(&lay.to_engine(&b)), ab);
                prop_assert_eq!(lay.to_ring(&lay.to_engine(&a)), a);
            }
        }

        #[test]
        fn rees_tau_lower_t_degree_is_smaller(u in prop::collection::vec(0u32..4, 4), v in prop::collection::vec(0u32..4, 4), i in 0u32..3, gap in 1u32..3) {
            let ord = TermOrder::rees_tau(4, TermOrder::lex());
            let mut ue = u.clone(); ue.push(i);
            let mut ve = v.clone(); ve.push(i + gap);
            prop_assert_eq!(ord.compare(&mono(&ue), &mono(&ve), 5), Ordering::Less);
        }
    }
}
