//! Packed exponent vectors.
//!
//! A monomial holds up to [`MAX_VARS`] exponents of at most [`MAX_EXPONENT`],
//! one byte per variable, eight per word. Variable 0 sits in the most
//! significant byte of word 0, so the derived `Ord` is lexicographic order with
//! variable 0 largest. Byte-parallel arithmetic keeps divisibility tests and
//! lcm computations branch-free.

use std::fmt;

use super::PolyError;

pub const MAX_VARS: usize = 64;
pub const MAX_EXPONENT: u32 = 127;

const WORDS: usize = MAX_VARS / 8;
const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    words: [u64; WORDS],
}

#[inline]
fn shift(var: usize) -> u32 {
    (8 * (7 - (var & 7))) as u32
}

/// High bit of each byte set where the byte is nonzero (bytes < 128).
#[inline]
fn nonzero_bytes(x: u64) -> u64 {
    (((x & LOW7) + LOW7) | x) & HIGH
}

/// High bit of each byte set where `b >= a` bytewise (bytes < 128).
#[inline]
fn ge_bytes(b: u64, a: u64) -> u64 {
    ((b | HIGH) - a) & HIGH
}

impl Monomial {
    pub const ONE: Monomial = Monomial { words: [0; WORDS] };

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables { requested: exps.len(), limit: MAX_VARS });
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(PolyError::ExponentOverflow);
            }
            m.set(i, e);
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        let mut m = Monomial::ONE;
        m.set(i, 1);
        m
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        ((self.words[var >> 3] >> shift(var)) & 0xff) as u32
    }

    #[inline]
    pub fn set(&mut self, var: usize, e: u32) {
        debug_assert!(e <= MAX_EXPONENT);
        let w = &mut self.words[var >> 3];
        let s = shift(var);
        *w = (*w & !(0xffu64 << s)) | ((e as u64) << s);
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.words
            .iter()
            .map(|&w| {
                let pairs = (w & 0x00ff_00ff_00ff_00ff) + ((w >> 8) & 0x00ff_00ff_00ff_00ff);
                (pairs.wrapping_mul(0x0001_0001_0001_0001) >> 48) as u32
            })
            .sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        weights.iter().enumerate().map(|(i, w)| w * self.exponent(i)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Variables with a nonzero exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for j in 0..8 {
                if (w >> (8 * (7 - j))) & 0xff != 0 {
                    out.push(8 * k + j);
                }
            }
        }
        out
    }

    /// Highest variable index with nonzero exponent.
    pub fn last_var(&self) -> Option<usize> {
        for k in (0..WORDS).rev() {
            let w = self.words[k];
            if w != 0 {
                return Some(8 * k + 7 - (w.trailing_zeros() as usize / 8));
            }
        }
        None
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(&a, &b)| ge_bytes(b, a) == HIGH)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for k in 0..WORDS {
            let s = self.words[k] + other.words[k];
            if s & HIGH != 0 {
                return None;
            }
            out.words[k] = s;
        }
        Some(out)
    }

    /// Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    /// `self / other`; caller guarantees `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut out = Monomial::ONE;
        for k in 0..WORDS {
            out.words[k] = self.words[k] - other.words[k];
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for k in 0..WORDS {
            let (a, b) = (self.words[k], other.words[k]);
            let mask = (ge_bytes(b, a) >> 7).wrapping_mul(0xff);
            out.words[k] = (b & mask) | (a & !mask);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for k in 0..WORDS {
            let (a, b) = (self.words[k], other.words[k]);
            let mask = (ge_bytes(b, a) >> 7).wrapping_mul(0xff);
            out.words[k] = (a & mask) | (b & !mask);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| nonzero_bytes(a) & nonzero_bytes(b) == 0)
    }

    pub fn pow(&self, e: u32) -> Option<Monomial> {
        let mut acc = Monomial::ONE;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    /// Reorders variables: position `k` of the result holds variable `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (k, &src) in perm.iter().enumerate() {
            let e = self.exponent(src);
            if e != 0 {
                out.set(k, e);
            }
        }
        out
    }

    /// Inverse of [`Monomial::permute`].
    pub fn unpermute(&self, perm: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (k, &dst) in perm.iter().enumerate() {
            let e = self.exponent(k);
            if e != 0 {
                out.set(dst, e);
            }
        }
        out
    }

    /// Renames variable `i` to `map[i]`.
    pub fn rename(&self, map: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for v in self.support() {
            out.set(map[v], self.exponent(v));
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.last_var().map_or(0, |v| v + 1);
        write!(f, "{:?}", self.exponents(n))
    }
}
