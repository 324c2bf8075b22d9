//! The simplex category: finite ordinals `[n] = {0, .., n}` and weakly
//! increasing maps between them.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A weakly increasing map `[n] -> [m]`, stored as its value sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    codomain: usize,
    values: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.domain(), self.codomain, self.values)
    }
}

impl MonotoneMap {
    /// Builds a map from its values; `values` must be non-empty, weakly
    /// increasing and bounded by `codomain`.
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("a monotone map needs a non-empty domain"));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("value sequence is not weakly increasing"));
        }
        if let Some(&v) = values.iter().find(|&&v| v > codomain) {
            return Err(Error::IndexOutOfRange { index: v, bound: codomain });
        }
        Ok(Self { codomain, values })
    }

    pub(crate) fn from_values_unchecked(codomain: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(codomain, values.clone()).is_ok());
        Self { codomain, values }
    }

    pub fn identity(n: usize) -> Self {
        Self { codomain: n, values: (0..=n).collect() }
    }

    /// The face inclusion `[n-1] -> [n]` that misses `i`.
    pub fn coface(i: usize, n: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let values = (0..n).map(|x| if x < i { x } else { x + 1 }).collect();
        Ok(Self { codomain: n, values })
    }

    /// The surjection `[n+1] -> [n]` that hits `i` twice.
    pub fn codegeneracy(i: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let values = (0..=n + 1).map(|x| if x <= i { x } else { x - 1 }).collect();
        Ok(Self { codomain: n, values })
    }

    pub fn domain(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn is_identity(&self) -> bool {
        self.codomain == self.domain() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.values.len() - 1] == self.codomain
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ inner`, i.e. first `inner`, then `self`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<Self> {
        if inner.codomain != self.domain() {
            return Err(Error::OrdinalMismatch { expected: self.domain(), found: inner.codomain });
        }
        let values = inner.values.iter().map(|&x| self.values[x]).collect();
        Ok(Self { codomain: self.codomain, values })
    }

    /// Unique factorization `self = mono ∘ epi` with `epi` surjective and
    /// `mono` injective. Returns `(epi, mono)`.
    pub fn epi_mono_factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = Vec::with_capacity(self.values.len());
        let mut epi = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push(image.len() - 1);
        }
        let top = image.len() - 1;
        (
            MonotoneMap { codomain: top, values: epi },
            MonotoneMap { codomain: self.codomain, values: image },
        )
    }

    /// Elements of the codomain that are not hit, in increasing order.
    pub fn missed(&self) -> Vec<usize> {
        (0..=self.codomain).filter(|x| self.values.binary_search(x).is_err()).collect()
    }

    /// Positions `p` with `values[p] == values[p + 1]`, in increasing order.
    pub fn repeats(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(p, _)| p)
            .collect()
    }
}

/// All monotone maps `[domain] -> [codomain]`, in lexicographic order of
/// their value sequences.
pub fn monotone_maps(domain: usize, codomain: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(domain + 1);
    fn rec(pos: usize, len: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if pos == len {
            out.push(MonotoneMap { codomain: hi, values: cur.clone() });
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            rec(pos + 1, len, v, hi, cur, out);
            cur.pop();
        }
    }
    rec(0, domain + 1, 0, codomain, &mut cur, &mut out);
    out
}

/// All surjections `[domain] ->> [codomain]`, lexicographically ordered.
pub fn surjections(domain: usize, codomain: usize) -> Vec<MonotoneMap> {
    if codomain > domain {
        return Vec::new();
    }
    // A surjection is determined by which of the `domain` steps go up.
    monotone_maps(domain, codomain).into_iter().filter(MonotoneMap::is_surjective).collect()
}

/// Number of monotone maps `[domain] -> [codomain]`: `C(domain + codomain + 1, domain + 1)`.
pub fn count_monotone(domain: usize, codomain: usize) -> u128 {
    binomial((domain + codomain + 1) as u64, (domain + 1) as u64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
