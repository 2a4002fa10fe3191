use std::collections::BTreeSet;

use super::BiIndex;
use crate::error::{Error, Result};

/// 1-based `(i, j, k, l)` for `x_i x_j y_k y_l`, as listed in the reference appendix:
/// x₃²y₃², x₃²y₂y₃, x₃²y₂², … ending with x₁²y₁².
const BUILTIN36: [(usize, usize, usize, usize); 36] = [
    (3, 3, 3, 3), (3, 3, 2, 3), (3, 3, 2, 2), (3, 3, 1, 3), (3, 3, 1, 2), (3, 3, 1, 1),
    (2, 3, 3, 3), (2, 3, 2, 3), (2, 3, 2, 2), (2, 3, 1, 3), (2, 3, 1, 2), (2, 3, 1, 1),
    (2, 2, 3, 3), (2, 2, 2, 3), (2, 2, 2, 2), (2, 2, 1, 3), (2, 2, 1, 2), (2, 2, 1, 1),
    (1, 3, 3, 3), (1, 3, 2, 3), (1, 3, 2, 2), (1, 3, 1, 3), (1, 3, 1, 2), (1, 3, 1, 1),
    (1, 2, 3, 3), (1, 2, 2, 3), (1, 2, 2, 2), (1, 2, 1, 3), (1, 2, 1, 2), (1, 2, 1, 1),
    (1, 1, 3, 3), (1, 1, 2, 3), (1, 1, 2, 2), (1, 1, 1, 3), (1, 1, 1, 2), (1, 1, 1, 1),
];

/// An ordered list of all biquadratic monomials for block size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrdering {
    n: usize,
    name: &'static str,
    entries: Vec<BiIndex>,
}

impl MonomialOrdering {
    /// The fixed 36-entry ordering for `n = 3` used by the appendix vectors.
    pub fn builtin36() -> Self {
        Self {
            n: 3,
            name: "builtin36",
            entries: BUILTIN36
                .iter()
                .map(|&(i, j, k, l)| BiIndex::new(i - 1, j - 1, k - 1, l - 1))
                .collect(),
        }
    }

    /// Graded lexicographic with the x-block first: x₁²y₁², x₁²y₁y₂, …
    pub fn lex(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let entries = pairs
            .iter()
            .flat_map(|&x| pairs.iter().map(move |&y| BiIndex { x, y }))
            .collect();
        Self {
            n,
            name: "lex",
            entries,
        }
    }

    /// Looks up an ordering by its file-format name.
    pub fn by_name(name: &str, n: usize) -> Result<Self> {
        match name {
            "builtin36" if n == 3 => Ok(Self::builtin36()),
            "builtin36" => Err(Error::DimensionMismatch {
                what: "block size of builtin36",
                expected: 3,
                found: n,
            }),
            "lex" => Ok(Self::lex(n)),
            other => Err(Error::parse(1, format!("unknown ordering `{other}`"))),
        }
    }

    /// Builds a custom ordering; it must list every biquadratic monomial exactly once.
    pub fn from_entries(n: usize, entries: Vec<BiIndex>) -> Result<Self> {
        let expected = Self::lex(n).entries.into_iter().collect::<BTreeSet<_>>();
        let got = entries.iter().copied().collect::<BTreeSet<_>>();
        if got.len() != entries.len() || got != expected {
            return Err(Error::DimensionMismatch {
                what: "distinct biquadratic monomials in ordering",
                expected: expected.len(),
                found: got.intersection(&expected).count(),
            });
        }
        Ok(Self {
            n,
            name: "custom",
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BiIndex] {
        &self.entries
    }

    pub fn position(&self, idx: BiIndex) -> Option<usize> {
        self.entries.iter().position(|e| *e == idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_is_a_permutation() {
        let b = MonomialOrdering::builtin36();
        assert_eq!(b.len(), 36);
        assert!(MonomialOrdering::from_entries(3, b.entries().to_vec()).is_ok());
        assert_eq!(b.entries()[0], BiIndex::new(2, 2, 2, 2));
        assert_eq!(b.entries()[35], BiIndex::new(0, 0, 0, 0));
    }

    #[test]
    fn lex_sizes() {
        for n in 1..5 {
            let t = n * (n + 1) / 2;
            assert_eq!(MonomialOrdering::lex(n).len(), t * t);
        }
        assert_eq!(MonomialOrdering::lex(2).entries()[1], BiIndex::new(0, 0, 0, 1));
    }

    #[test]
    fn duplicates_rejected() {
        let mut e = MonomialOrdering::lex(2).entries().to_vec();
        e[1] = e[0];
        assert!(MonomialOrdering::from_entries(2, e).is_err());
        assert!(MonomialOrdering::by_name("builtin36", 2).is_err());
        assert!(MonomialOrdering::by_name("grevlex", 2).is_err());
    }
}
