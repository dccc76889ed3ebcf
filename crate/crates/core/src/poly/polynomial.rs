use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Field, Monomial, PolyError, Rational, TermOrder, MAX_VARS};

/// Ordered, distinct variable names. Listing order is the default lex
/// precedence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables { requested: names.len(), limit: MAX_VARS });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PolyError::DuplicateVariable(a.clone()));
            }
        }
        Ok(VariableSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sub-list of the variables at `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> VariableSet {
        VariableSet { names: keep.iter().map(|&i| self.names[i].clone()).collect() }
    }
}

/// Sparse polynomial with nonzero coefficients, terms sorted descending in
/// plain lex (variable 0 largest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field = Rational> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    /// Sorts, merges like terms and drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_standard_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: &TermOrder, nvars: usize) -> Option<&(Monomial, F)> {
        self.terms.iter().max_by(|a, b| ord.compare(&a.0, &b.0, nvars))
    }

    pub fn leading_monomial(&self, ord: &TermOrder, nvars: usize) -> Option<Monomial> {
        self.leading_term(ord, nvars).map(|t| t.0)
    }

    /// True when every variable appearing lies in `allowed`.
    pub fn uses_only(&self, allowed: &[bool]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.support().into_iter().all(|v| allowed.get(v).copied().unwrap_or(false)))
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut all = Monomial::ONE;
        for (m, _) in &self.terms {
            all = all.lcm(m);
        }
        all.support()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, &F::one(), &Monomial::ONE)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, &F::one().neg(), &Monomial::ONE)
    }

    /// `self + c * m * other` in one pass.
    pub fn merge(&self, other: &Self, c: &F, m: &Monomial) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let bm = b.get(j).map(|t| t.0.mul(m));
            match (a.get(i), bm) {
                (Some(ta), Some(mb)) if ta.0 == mb => {
                    let s = ta.1.add(&c.mul(&b[j].1));
                    if !s.is_zero() {
                        out.push((mb, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(ta), Some(mb)) if ta.0 > mb => {
                    out.push(ta.clone());
                    i += 1;
                }
                (_, Some(mb)) => {
                    out.push((mb, c.mul(&b[j].1)));
                    j += 1;
                }
                (Some(ta), None) => {
                    out.push(ta.clone());
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, d)| (*m, d.mul(c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &TermOrder, nvars: usize) -> Self {
        match self.leading_term(ord, nvars) {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for v in m.support() {
                t = t.mul(&images[v].pow(m.exponent(v)));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Renames variable `i` to `map[i]` (target ring may be larger).
    pub fn rename(&self, map: &[usize]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(map), c.clone())).collect())
    }

    /// Sets the variables flagged in `vanish` to zero.
    pub fn kill_variables(&self, vanish: &[bool]) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.support().into_iter().all(|v| !vanish.get(v).copied().unwrap_or(false)))
            .cloned()
            .collect();
        Polynomial { terms }
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, vars }
    }
}

impl Polynomial<Rational> {
    /// Reduction into a prime field; panics if a denominator vanishes mod p.
    pub fn to_prime_field<const P: u64>(&self) -> Polynomial<super::Fp<P>> {
        self.map_coefficients(|c| match c {
            Rational::Small(n, d) => super::Fp::<P>::from_i64(*n).div(&super::Fp::<P>::from_i64(*d)),
            Rational::Big(r) => {
                use num::ToPrimitive;
                let p = num::BigInt::from(P);
                let n = (r.numer() % &p).to_i64().unwrap();
                let d = (r.denom() % &p).to_i64().unwrap();
                super::Fp::<P>::from_i64(n).div(&super::Fp::<P>::from_i64(d))
            }
        })
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Polynomial<F>,
    vars: &'a VariableSet,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for v in m.support() {
                let name = &self.vars.names()[v];
                match m.exponent(v) {
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses the printed form: terms `c*v^e*...` joined by `+`/`-`.
/// Coefficients may be integers or fractions `p/q`.
pub fn parse_polynomial(text: &str, vars: &VariableSet) -> Result<Polynomial<Rational>, PolyError> {
    let bad = |msg: &str| PolyError::Syntax(format!("{msg} in {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    if s == "0" {
        return Ok(Polynomial::zero());
    }
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut pieces = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'-' => (-1i64, &piece[1..]),
            b'+' => (1, &piece[1..]),
            _ => (1, piece),
        };
        if body.is_empty() {
            return Err(bad("dangling sign"));
        }
        let mut coeff = Rational::from_i64(sign);
        let mut exps = vec![0u32; vars.len()];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let c = match factor.split_once('/') {
                    Some((p, q)) => {
                        let p: i64 = p.parse().map_err(|_| bad("bad coefficient"))?;
                        let q: i64 = q.parse().map_err(|_| bad("bad coefficient"))?;
                        if q == 0 {
                            return Err(bad("zero denominator"));
                        }
                        Rational::new(p, q)
                    }
                    None => Rational::from_i64(factor.parse().map_err(|_| bad("bad coefficient"))?),
                };
                coeff = coeff.mul(&c);
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let v = vars.index_of(name).ok_or_else(|| bad(&format!("unknown variable {name}")))?;
                exps[v] += e;
            }
        }
        terms.push((Monomial::from_exponents(&exps)?, coeff));
    }
    Ok(Polynomial::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> VariableSet {
        VariableSet::new(["x1", "x2", "y1", "y2"]).unwrap()
    }

    #[test]
    fn print_and_parse_round_trip() {
        let v = vs();
        let p = parse_polynomial("x1*y2 - x2*y1 + 3/2*x1^2 - 4", &v).unwrap();
        let text = p.display(&v).to_string();
        assert_eq!(text, "3/2*x1^2 + x1*y2 - x2*y1 - 4");
        assert_eq!(parse_polynomial(&text, &v).unwrap(), p);
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        assert!(parse_polynomial("x1*z", &vs()).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let v = vs();
        let p = parse_polynomial("x1*y2 - x2*y1", &v).unwrap();
        assert!(p.sub(&p).is_zero());
        let sq = p.mul(&p);
        assert_eq!(sq.len(), 3);
        assert!(sq.is_standard_homogeneous());
    }

    #[test]
    fn substitution() {
        let v = vs();
        let p = parse_polynomial("x1*y2 - x2*y1", &v).unwrap();
        // swap the columns: determinant changes sign
        let images = vec![Polynomial::var(1), Polynomial::var(0), Polynomial::var(3), Polynomial::var(2)];
        assert_eq!(p.substitute(&images), p.neg());
    }
}
